//! Text input grammar and the JSON output schema.

mod json;
mod parser;

pub use json::{
    certificate_from_json, certificate_to_json, cone_from_json, cone_to_json, graded_from_json,
    graded_to_json, growth_to_json, ode_to_json, precurrence_from_json, precurrence_to_json,
    puiseux_from_json, puiseux_to_json, rational_from_str, rational_to_string, to_stable_string,
    tseries_from_json, tseries_to_json, SCHEMA_TAG,
};
pub use parser::{Expr, Lexer};

use crate::dfinite::{IntPoly, LinearODE};
use crate::error::{Error, Result};
use crate::series::{MPoly, YPoly};
use crate::{Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Zero};

/// A parsed polynomial: either a plain multivariate polynomial or a
/// polynomial in the distinguished variable y with polynomial
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedPoly {
    Plain(MPoly),
    InY(YPoly),
}

impl ParsedPoly {
    pub fn into_ypoly(self) -> YPoly {
        match self {
            ParsedPoly::Plain(p) => YPoly::new(vec![p]),
            ParsedPoly::InY(p) => p,
        }
    }

    pub fn nvars_x(&self) -> usize {
        match self {
            ParsedPoly::Plain(p) => p.nvars(),
            ParsedPoly::InY(p) => p.nvars_x(),
        }
    }
}

/// Map a variable name to its zero-based index. "x" and "t" are aliases
/// for the first variable.
fn var_index(name: &str) -> Result<usize> {
    match name {
        "x" | "t" => Ok(0),
        _ => {
            let k: usize = name[1..]
                .parse()
                .map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("unknown variable '{name}'"),
                })?;
            Ok(k - 1)
        }
    }
}

fn eval_to_ypoly(e: &Expr) -> Result<YPoly> {
    Ok(match e {
        Expr::Int(n) => YPoly::new(vec![MPoly::constant(Rational::from_integer(n.clone()))]),
        Expr::Rat(n, d) => YPoly::new(vec![MPoly::constant(Rational::new(n.clone(), d.clone()))]),
        Expr::Var(v) if v == "y" => YPoly::new(vec![MPoly::zero(), MPoly::one()]),
        Expr::Var(v) => YPoly::new(vec![MPoly::var(var_index(v)?)]),
        Expr::FDeriv(_) => {
            return Err(Error::Parse {
                pos: 0,
                msg: "f is not a polynomial symbol".into(),
            })
        }
        Expr::Add(a, b) => eval_to_ypoly(a)?.add(&eval_to_ypoly(b)?),
        Expr::Sub(a, b) => {
            eval_to_ypoly(a)?.add(&eval_to_ypoly(b)?.scalar_mul(&-Rational::one()))
        }
        Expr::Mul(a, b) => eval_to_ypoly(a)?.mul(&eval_to_ypoly(b)?),
        Expr::Neg(a) => eval_to_ypoly(a)?.scalar_mul(&-Rational::one()),
        Expr::Pow(a, k) => {
            let base = eval_to_ypoly(a)?;
            let mut acc = YPoly::new(vec![MPoly::one()]);
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

/// Parse a polynomial expression. When y occurs it becomes the
/// distinguished last variable; `expected_vars`, when given, restricts
/// the variable set.
pub fn parse_poly(text: &str, expected_vars: Option<&[String]>) -> Result<ParsedPoly> {
    let mut lex = Lexer::new(text)?;
    let expr = parser::parse_expr(&mut lex, false)?;
    if !lex.at_end() {
        return Err(Error::Parse {
            pos: lex.peek_pos(),
            msg: "trailing input after expression".into(),
        });
    }
    let mut vars = Vec::new();
    expr.collect_vars(&mut vars);
    if vars.contains(&"x".to_string()) && vars.iter().any(|v| v.starts_with('x') && v.len() > 1) {
        return Err(Error::Parse {
            pos: 0,
            msg: "mixing 'x' with numbered variables is ambiguous".into(),
        });
    }
    if let Some(allowed) = expected_vars {
        for v in &vars {
            if !allowed.contains(v) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown variable '{v}' (expected one of {allowed:?})"),
                });
            }
        }
    }
    let has_y = vars.iter().any(|v| v == "y");
    let p = eval_to_ypoly(&expr)?;
    Ok(if has_y {
        ParsedPoly::InY(p)
    } else {
        ParsedPoly::Plain(p.coeff(0))
    })
}

/// Parse a rational constant or a univariate seed expression (a
/// polynomial in x on the (1/1) grid is enough for every seed the
/// pipelines accept).
pub fn parse_seed(text: &str) -> Result<MPoly> {
    match parse_poly(text, None)? {
        ParsedPoly::Plain(p) => Ok(p),
        ParsedPoly::InY(_) => Err(Error::Parse {
            pos: 0,
            msg: "a seed cannot involve y".into(),
        }),
    }
}

/// Parse a homogeneous linear ODE like "f'' + 2*(1+x)*f' - f = 0": each
/// additive term carries exactly one f-symbol, the right-hand side (when
/// present) must be zero.
pub fn parse_ode(text: &str) -> Result<LinearODE> {
    let mut lex = Lexer::new(text)?;
    let lhs = parser::parse_expr(&mut lex, true)?;
    if lex.peek() == Some(&parser::Token::Equals) {
        lex.next();
        let rhs = parser::parse_expr(&mut lex, true)?;
        match rhs {
            Expr::Int(n) if n.is_zero() => {}
            _ => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "the right-hand side of an equation must be 0".into(),
                })
            }
        }
    }
    if !lex.at_end() {
        return Err(Error::Parse {
            pos: lex.peek_pos(),
            msg: "trailing input after equation".into(),
        });
    }
    let order = lhs.max_f_order().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "a differential equation needs the symbol f".into(),
    })?;
    // collect the coefficient of each derivative
    let mut coeffs: Vec<MPoly> = vec![MPoly::zero(); order + 1];
    collect_ode_terms(&lhs, &MPoly::one(), false, &mut coeffs)?;
    // align to Z[x], clearing the common denominator jointly
    let mut den = Integer::one();
    for c in &coeffs {
        for (_, v) in c.terms() {
            den = den.lcm(v.denom());
        }
    }
    let dr = Rational::from_integer(den);
    let ints: Vec<IntPoly> = coeffs
        .iter()
        .map(|c| {
            if c.nvars() > 1 {
                return Err(Error::NotUnivariate);
            }
            let scaled = c.scalar_mul(&dr);
            let deg = scaled
                .terms()
                .map(|(e, _)| e.first().copied().unwrap_or(0))
                .max()
                .unwrap_or(0);
            let mut v = vec![Integer::from(0); deg as usize + 1];
            for (e, cf) in scaled.terms() {
                v[e.first().copied().unwrap_or(0) as usize] = cf.numer().clone();
            }
            Ok(IntPoly::new(v))
        })
        .collect::<Result<_>>()?;
    LinearODE::new(ints)
}

/// Distribute products over sums, requiring each final term to be linear
/// in f. `poly` accumulates the polynomial cofactor along the way.
fn collect_ode_terms(
    e: &Expr,
    poly: &MPoly,
    negate: bool,
    coeffs: &mut Vec<MPoly>,
) -> Result<()> {
    match e {
        Expr::Add(a, b) => {
            collect_ode_terms(a, poly, negate, coeffs)?;
            collect_ode_terms(b, poly, negate, coeffs)
        }
        Expr::Sub(a, b) => {
            collect_ode_terms(a, poly, negate, coeffs)?;
            collect_ode_terms(b, poly, !negate, coeffs)
        }
        Expr::Neg(a) => collect_ode_terms(a, poly, !negate, coeffs),
        Expr::Mul(a, b) => {
            // exactly one side may contain f
            let fa = a.max_f_order().is_some();
            let fb = b.max_f_order().is_some();
            match (fa, fb) {
                (true, true) => Err(Error::Parse {
                    pos: 0,
                    msg: "nonlinear term: f appears twice in a product".into(),
                }),
                (true, false) => {
                    let factor = eval_plain(b)?;
                    collect_ode_terms(a, &(poly * &factor), negate, coeffs)
                }
                (false, true) => {
                    let factor = eval_plain(a)?;
                    collect_ode_terms(b, &(poly * &factor), negate, coeffs)
                }
                (false, false) => Err(Error::Parse {
                    pos: 0,
                    msg: "every term of the equation must contain f".into(),
                }),
            }
        }
        Expr::FDeriv(k) => {
            let signed = if negate {
                poly.scalar_mul(&-Rational::one())
            } else {
                poly.clone()
            };
            coeffs[*k] = &coeffs[*k] + &signed;
            Ok(())
        }
        Expr::Pow(a, 1) => collect_ode_terms(a, poly, negate, coeffs),
        Expr::Pow(_, _) | Expr::Int(_) | Expr::Rat(_, _) | Expr::Var(_) => Err(Error::Parse {
            pos: 0,
            msg: "every term of the equation must contain f linearly".into(),
        }),
    }
}

fn eval_plain(e: &Expr) -> Result<MPoly> {
    match eval_to_ypoly(e) {
        Ok(p) if p.deg_y() == 0 => Ok(p.coeff(0)),
        Ok(_) => Err(Error::Parse {
            pos: 0,
            msg: "y cannot appear in a differential equation".into(),
        }),
        Err(e) => Err(e),
    }
}

/// Canonical printed form: graded lexicographic term order, explicit '*'.
pub fn print_canonical(p: &ParsedPoly) -> String {
    match p {
        ParsedPoly::Plain(m) => m.to_string(),
        ParsedPoly::InY(y) => y.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn parse_quadratic() {
        // y^2 - (1+x)
        let p = parse_poly("y^2 - (1+x)", None).unwrap();
        let expect = YPoly::new(vec![
            &MPoly::from_int(-1) - &x(0),
            MPoly::zero(),
            MPoly::one(),
        ]);
        assert_eq!(p, ParsedPoly::InY(expect));
    }

    #[test]
    fn parse_thm5_demo() {
        let p = parse_poly("(x1+x2)*y^2 + (x1+x2)*y - x1^2", None).unwrap();
        let s = &x(0) + &x(1);
        let expect = YPoly::new(vec![-x(0).pow(2), s.clone(), s]);
        assert_eq!(p, ParsedPoly::InY(expect));
    }

    #[test]
    fn fractional_exponent_rejected() {
        let e = parse_poly("x^(1/2)", None).unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("fractional"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_poly("x^-2", None).unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("negative"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_literals_and_signs() {
        let p = parse_poly("-1/2 + 3*x1*x2", None).unwrap();
        match p {
            ParsedPoly::Plain(m) => {
                assert_eq!(m.coefficient(&[0, 0]), rat(-1, 2));
                assert_eq!(m.coefficient(&[1, 1]), rat_int(3));
            }
            _ => panic!("no y here"),
        }
    }

    #[test]
    fn position_annotated_errors() {
        let e = parse_poly("x1 + $", None).unwrap_err();
        match e {
            Error::Parse { pos, .. } => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_poly("x1 + zz", None).unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("unknown variable"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn expected_vars_enforced() {
        let allowed = vec!["x1".to_string(), "y".to_string()];
        assert!(parse_poly("y - x1", Some(&allowed)).is_ok());
        assert!(parse_poly("y - x2", Some(&allowed)).is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "1 + x1*x2 + x2^3",
            "-1/2*x1 + 2*x2",
            "(x1^2)*y + (3 + x2)*y^2",
        ] {
            let p = parse_poly(text, None).unwrap();
            let printed = print_canonical(&p);
            let q = parse_poly(&printed, None).unwrap();
            assert_eq!(p, q, "round trip through {printed}");
        }
    }

    #[test]
    fn parse_ode_examples() {
        let ode = parse_ode("f' - f = 0").unwrap();
        assert_eq!(ode.order(), 1);
        assert_eq!(ode.coeffs()[0], IntPoly::constant(-1));
        assert_eq!(ode.coeffs()[1], IntPoly::constant(1));

        let ode = parse_ode("2*(1+x)*f' - f = 0").unwrap();
        assert_eq!(ode.coeffs()[1], IntPoly::from_i64(&[2, 2]));

        let ode = parse_ode("(1+x)*f'' + f'").unwrap();
        assert_eq!(ode.order(), 2);

        assert!(parse_ode("f*f' = 0").is_err());
        assert!(parse_ode("f' + 1 = 0").is_err());
        assert!(parse_ode("f' = f").is_err());
    }
}
