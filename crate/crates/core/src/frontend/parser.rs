//! Tokenizer and recursive-descent parser for the input grammar:
//!
//!   expr   := ["+"|"-"] term (("+"|"-") term)*
//!   term   := factor ("*" factor)*
//!   factor := base ("^" nat)?
//!   base   := nat | nat "/" nat | var | "(" expr ")"
//!   var    := "x" | "x"digits | "y" | "t"
//!
//! Rationals appear only as literals a/b; exponents are nonnegative
//! integer literals. The ODE surface adds the symbol f with primes.

use crate::error::{Error, Result};
use crate::Integer;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Int(Integer),
    Ident(String),
    FDeriv(usize), // f with that many primes
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Equals,
}

pub struct Lexer {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl Lexer {
    pub fn new(text: &str) -> Result<Self> {
        let bytes: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                }
                '+' => {
                    tokens.push((start, Token::Plus));
                    i += 1;
                }
                '-' | '\u{2212}' => {
                    tokens.push((start, Token::Minus));
                    i += 1;
                }
                '*' => {
                    tokens.push((start, Token::Star));
                    i += 1;
                }
                '^' => {
                    tokens.push((start, Token::Caret));
                    i += 1;
                }
                '/' => {
                    tokens.push((start, Token::Slash));
                    i += 1;
                }
                '(' => {
                    tokens.push((start, Token::LParen));
                    i += 1;
                }
                ')' => {
                    tokens.push((start, Token::RParen));
                    i += 1;
                }
                '=' => {
                    tokens.push((start, Token::Equals));
                    i += 1;
                }
                '0'..='9' => {
                    let mut s = String::new();
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        s.push(bytes[i]);
                        i += 1;
                    }
                    tokens.push((start, Token::Int(s.parse().expect("digits"))));
                }
                'f' => {
                    i += 1;
                    let mut primes = 0;
                    while i < bytes.len() && bytes[i] == '\'' {
                        primes += 1;
                        i += 1;
                    }
                    tokens.push((start, Token::FDeriv(primes)));
                }
                'a'..='z' | 'A'..='Z' => {
                    let mut s = String::new();
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                        s.push(bytes[i]);
                        i += 1;
                    }
                    tokens.push((start, Token::Ident(s)));
                }
                _ => return Err(err(start, format!("unexpected character '{c}'"))),
            }
        }
        Ok(Lexer {
            tokens,
            pos: 0,
            end: text.chars().count(),
        })
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    pub fn peek_pos(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    pub fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    pub fn expect(&mut self, want: &Token, what: &str) -> Result<()> {
        match self.next() {
            Some((_, t)) if &t == want => Ok(()),
            Some((p, t)) => Err(err(p, format!("expected {what}, found {t:?}"))),
            None => Err(err(self.end, format!("expected {what}, found end of input"))),
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }
}

/// Parse tree of the expression grammar.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(Integer),
    Rat(Integer, Integer),
    Var(String),
    FDeriv(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.collect_vars(out),
            _ => {}
        }
    }

    pub fn max_f_order(&self) -> Option<usize> {
        match self {
            Expr::FDeriv(k) => Some(*k),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                match (a.max_f_order(), b.max_f_order()) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (Some(x), None) | (None, Some(x)) => Some(x),
                    (None, None) => None,
                }
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.max_f_order(),
            _ => None,
        }
    }
}

pub fn parse_expr(lex: &mut Lexer, allow_f: bool) -> Result<Expr> {
    let mut acc = match lex.peek() {
        Some(Token::Plus) => {
            lex.next();
            parse_term(lex, allow_f)?
        }
        Some(Token::Minus) => {
            lex.next();
            Expr::Neg(Box::new(parse_term(lex, allow_f)?))
        }
        _ => parse_term(lex, allow_f)?,
    };
    loop {
        match lex.peek() {
            Some(Token::Plus) => {
                lex.next();
                let rhs = parse_term(lex, allow_f)?;
                acc = Expr::Add(Box::new(acc), Box::new(rhs));
            }
            Some(Token::Minus) => {
                lex.next();
                let rhs = parse_term(lex, allow_f)?;
                acc = Expr::Sub(Box::new(acc), Box::new(rhs));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_term(lex: &mut Lexer, allow_f: bool) -> Result<Expr> {
    let mut acc = parse_factor(lex, allow_f)?;
    while lex.peek() == Some(&Token::Star) {
        lex.next();
        let rhs = parse_factor(lex, allow_f)?;
        acc = Expr::Mul(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn parse_factor(lex: &mut Lexer, allow_f: bool) -> Result<Expr> {
    let base = parse_base(lex, allow_f)?;
    if lex.peek() == Some(&Token::Caret) {
        lex.next();
        let pos = lex.peek_pos();
        match lex.next() {
            Some((_, Token::Int(n))) => {
                let exp = u32::try_from(&n)
                    .map_err(|_| err(pos, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            Some((p, Token::Minus)) => Err(err(p, "negative exponents are not allowed")),
            Some((p, Token::LParen)) => {
                // diagnose x^(1/2) with a precise message
                Err(err(p, "fractional exponents are not allowed; exponents must be nonnegative integers"))
            }
            Some((p, t)) => Err(err(p, format!("expected integer exponent, found {t:?}"))),
            None => Err(err(pos, "expected integer exponent, found end of input")),
        }
    } else {
        Ok(base)
    }
}

fn parse_base(lex: &mut Lexer, allow_f: bool) -> Result<Expr> {
    let pos = lex.peek_pos();
    match lex.next() {
        Some((_, Token::Int(n))) => {
            if lex.peek() == Some(&Token::Slash) {
                lex.next();
                let dpos = lex.peek_pos();
                match lex.next() {
                    Some((_, Token::Int(d))) => {
                        if d.is_zero() {
                            Err(err(dpos, "zero denominator"))
                        } else {
                            Ok(Expr::Rat(n, d))
                        }
                    }
                    Some((p, t)) => Err(err(p, format!("expected denominator, found {t:?}"))),
                    None => Err(err(dpos, "expected denominator, found end of input")),
                }
            } else {
                Ok(Expr::Int(n))
            }
        }
        Some((p, Token::Ident(name))) => {
            let valid = name == "y"
                || name == "t"
                || (name.starts_with('x')
                    && (name.len() == 1 || name[1..].chars().all(|c| c.is_ascii_digit())));
            if !valid {
                return Err(err(p, format!("unknown variable '{name}'")));
            }
            if name.len() > 1 && name != "y" && name != "t" && name[1..] == *"0" {
                return Err(err(p, "variables are numbered from x1"));
            }
            Ok(Expr::Var(name))
        }
        Some((p, Token::FDeriv(k))) => {
            if allow_f {
                Ok(Expr::FDeriv(k))
            } else {
                Err(err(p, "the symbol f is only allowed in differential equations"))
            }
        }
        Some((_, Token::LParen)) => {
            let inner = parse_expr(lex, allow_f)?;
            lex.expect(&Token::RParen, "')'")?;
            Ok(inner)
        }
        Some((p, t)) => Err(err(p, format!("expected a value, found {t:?}"))),
        None => Err(err(pos, "expected a value, found end of input")),
    }
}
