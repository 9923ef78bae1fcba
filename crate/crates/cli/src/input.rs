//! Shared input handling: polynomial/seed parsing, size guards, and the
//! factorization-cap environment override.

use eisenbox::error::{Error, Result};
use eisenbox::exactnum::DEFAULT_FACTOR_CAP;
use eisenbox::frontend::{self, ParsedPoly};
use eisenbox::series::{MPoly, PuiseuxSeries, WeightVector, YPoly};
use eisenbox::{Integer, Rational};

pub const MAX_CAP: u32 = 2000;
pub const MAX_VARS: usize = 6;

pub fn guard_cap(cap: u32, force: bool) -> Result<u32> {
    if cap > MAX_CAP && !force {
        return Err(Error::SizeGuard(format!("cap {cap} exceeds {MAX_CAP}")));
    }
    Ok(cap)
}

pub fn guard_nvars(n: usize, force: bool) -> Result<usize> {
    if n > MAX_VARS && !force {
        return Err(Error::SizeGuard(format!(
            "{n} variables exceed the limit of {MAX_VARS}"
        )));
    }
    Ok(n)
}

/// Factorization cap, overridable through EISENBOX_FACTOR_CAP.
pub fn factor_cap() -> Result<u64> {
    match std::env::var("EISENBOX_FACTOR_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("EISENBOX_FACTOR_CAP is not an integer: {v}"))
        }),
        Err(_) => Ok(DEFAULT_FACTOR_CAP),
    }
}

/// A defining polynomial P(x, y); must involve y.
pub fn parse_defining(text: &str, force: bool) -> Result<YPoly> {
    match frontend::parse_poly(text, None)? {
        ParsedPoly::InY(p) => {
            guard_nvars(p.nvars_x(), force)?;
            Ok(p)
        }
        ParsedPoly::Plain(_) => Err(Error::InvalidArgument(
            "the defining polynomial must involve y".into(),
        )),
    }
}

/// A univariate seed for branch-pinning operations, as a Puiseux segment
/// on the integer grid.
pub fn parse_univariate_seed(text: &str) -> Result<PuiseuxSeries> {
    let p = frontend::parse_seed(text)?;
    if p.nvars() > 1 {
        return Err(Error::InvalidArgument(
            "a univariate seed may only involve x".into(),
        ));
    }
    let cap = p
        .terms()
        .map(|(e, _)| e.first().copied().unwrap_or(0) as i64)
        .max()
        .unwrap_or(0);
    Ok(PuiseuxSeries::new(
        1,
        p.terms()
            .map(|(e, c)| (e.first().copied().unwrap_or(0) as i64, c.clone())),
        cap,
    ))
}

/// A constant seed (multivariate certification).
pub fn parse_constant_seed(text: &str) -> Result<Rational> {
    let p = frontend::parse_seed(text)?;
    if !p.is_constant() {
        return Err(Error::InvalidArgument(
            "this operation needs a constant seed".into(),
        ));
    }
    Ok(p.constant_term())
}

/// A polynomial seed for the graded lift.
pub fn parse_poly_seed(text: &str) -> Result<MPoly> {
    frontend::parse_seed(text)
}

/// Comma-separated weights "1,3/2,..." with the given certification cap.
pub fn parse_omega(text: &str, cap: u32) -> Result<WeightVector> {
    let omega = text
        .split(',')
        .map(|t| frontend::rational_from_str(t.trim(), "--omega"))
        .collect::<Result<Vec<Rational>>>()?;
    WeightVector::new(omega, cap)
}

/// Comma-separated rational coefficients.
pub fn parse_coeff_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|t| frontend::rational_from_str(t.trim(), "--coeffs"))
        .collect()
}

/// Comma-separated naturals ("1,0" for a beta vector).
pub fn parse_nat_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("not a natural number: {t}")))
        })
        .collect()
}

/// An expansion direction like "x1,x2" (a permutation of the variables).
pub fn parse_direction(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let idx = t
                .strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .and_then(|k| k.checked_sub(1));
            idx.ok_or_else(|| Error::InvalidArgument(format!("not a variable name: {t}")))
        })
        .collect()
}

pub fn parse_integer(text: &str) -> Result<Integer> {
    text.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("not an integer: {text}")))
}
