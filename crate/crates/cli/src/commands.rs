//! Verb dispatch.

use crate::input::*;
use crate::render;
use crate::{Cli, Format};
use clap::Subcommand;
use eisenbox::dfinite::{self, LinearODE, PRecurrence};
use eisenbox::eisenstein::{self, DenominatorProfile, VerifyOutcome};
use eisenbox::error::{Error, Result};
use eisenbox::frontend::{self, ParsedPoly};
use eisenbox::graded;
use eisenbox::puiseux;
use eisenbox::series::TSeries;
use eisenbox::weierstrass;
use eisenbox::Rational;
use serde_json::{json, Value};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand the branch pinned by a seed into a coefficient stream.
    Expand {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 20)]
        order: u32,
    },
    /// All Puiseux branches of a defining polynomial.
    Puiseux {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 20)]
        order: u32,
    },
    /// Eisenstein certificates and denominator diagnostics.
    Eisenstein {
        #[command(subcommand)]
        action: EisensteinAction,
    },
    /// Weighted graded lifting, support cones and monomial maps.
    Graded {
        #[command(subcommand)]
        action: GradedAction,
    },
    /// P-recursive and D-finite diagnostics.
    Dfinite {
        #[command(subcommand)]
        action: DfiniteAction,
    },
    /// Weierstrass preparation and division.
    Weierstrass {
        #[command(subcommand)]
        action: WeierstrassAction,
    },
    /// Parse an expression and echo its canonical form.
    Parse {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum EisensteinAction {
    /// Run the constructive certification pipeline.
    Certify {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 20)]
        order: u32,
    },
    /// Check a^{l+1} f_l integrality for a candidate constant.
    Verify {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 20)]
        order: u32,
        /// Direct coefficient list, bypassing the expansion.
        #[arg(long, conflicts_with = "poly")]
        coeffs: Option<String>,
        #[arg(long)]
        a: String,
    },
    /// Smallest constant below a bound clearing the observed denominators.
    Search {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 20)]
        order: u32,
        #[arg(long, conflicts_with = "poly")]
        coeffs: Option<String>,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Weak-Eisenstein diagnostics of the denominator stream.
    Weakly {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 20)]
        order: u32,
        #[arg(long, conflicts_with = "poly")]
        coeffs: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GradedAction {
    /// Lift a branch to its weighted graded representation.
    Lift {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        omega: String,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value = "20")]
        cap: String,
    },
    /// Support cone of the lifted branch.
    Cone {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        omega: String,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value = "20")]
        cap: String,
        /// Expansion variable order for tie-breaking, e.g. "x1,x2".
        #[arg(long)]
        direction: Option<String>,
        /// Also report the normalizing lambda and psi matrix.
        #[arg(long)]
        psi: bool,
    },
    /// The monomial map psi_lambda and its chi determinant.
    Psi {
        #[arg(long)]
        omega: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        lambda: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DfiniteAction {
    /// Expand a recurrence (from an ODE) into coefficients.
    Expand {
        #[arg(long)]
        ode: String,
        #[arg(long)]
        init: String,
        #[arg(long, default_value_t = 20)]
        count: u32,
    },
    /// Convert an ODE to the recurrence on Taylor coefficients.
    Ode2rec {
        #[arg(long)]
        ode: String,
        #[arg(long)]
        init: String,
    },
    /// The linear ODE annihilating an algebraic branch.
    Alg2ode {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "0")]
        seed: String,
    },
    /// Prime-count growth profile s_l of the coefficient denominators.
    Primes {
        #[arg(long)]
        ode: Option<String>,
        #[arg(long)]
        init: Option<String>,
        #[arg(long, conflicts_with = "ode")]
        poly: Option<String>,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 100)]
        count: u32,
    },
    /// p-adic valuations with the linear lower envelope.
    Padic {
        #[arg(long)]
        ode: Option<String>,
        #[arg(long)]
        init: Option<String>,
        #[arg(long, conflicts_with = "ode")]
        poly: Option<String>,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long, default_value_t = 100)]
        count: u32,
        #[arg(long)]
        p: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum WeierstrassAction {
    /// f = (distinguished polynomial) * unit.
    Prepare {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 20)]
        cap: u32,
    },
    /// g = f q + r with deg r < d in the last variable.
    Divide {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 20)]
        cap: u32,
    },
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Expand { poly, seed, order } => {
            let order = guard_cap(*order, cli.force)?;
            let p = parse_defining(poly, cli.force)?;
            if p.nvars_x() >= 2 {
                let s = parse_constant_seed(seed)?;
                let f = eisenstein::expand_root_multi(&p, &s, order)?;
                emit(cli, frontend::tseries_to_json(&f), || {
                    render::tseries_table(&f)
                });
            } else {
                let s = parse_univariate_seed(seed)?;
                let xi = puiseux::hensel_lift(&p, &s, order as i64)?;
                emit(cli, frontend::puiseux_to_json(&xi), || {
                    render::puiseux_table(&xi)
                });
            }
            Ok(())
        }
        Command::Puiseux { poly, order } => {
            let order = guard_cap(*order, cli.force)?;
            let p = parse_defining(poly, cli.force)?;
            let expansion = puiseux::puiseux_expand(&p, order as i64)?;
            let branches: Vec<Value> = expansion
                .branches
                .iter()
                .map(frontend::puiseux_to_json)
                .collect();
            let extensions: Vec<Value> = expansion
                .extensions
                .iter()
                .map(|e| {
                    json!({
                        "degree": e.degree,
                        "min_poly": e.min_poly.iter()
                            .map(frontend::rational_to_string).collect::<Vec<_>>(),
                        "is_minimal": e.is_minimal,
                        "prefix": frontend::puiseux_to_json(&e.prefix),
                    })
                })
                .collect();
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "puiseux_expansion",
                "branches": branches,
                "extensions": extensions,
            });
            emit(cli, v, || render::expansion_table(&expansion));
            if !expansion.extensions.is_empty() {
                let d = expansion.extensions[0].degree;
                return Err(Error::ExtensionRequired { degree: d });
            }
            Ok(())
        }
        Command::Eisenstein { action } => run_eisenstein(cli, action),
        Command::Graded { action } => run_graded(cli, action),
        Command::Dfinite { action } => run_dfinite(cli, action),
        Command::Weierstrass { action } => run_weierstrass(cli, action),
        Command::Parse { poly } => {
            let p = frontend::parse_poly(poly, None)?;
            let canonical = frontend::print_canonical(&p);
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "parsed",
                "canonical": canonical,
                "nvars": p.nvars_x(),
                "in_y": matches!(p, ParsedPoly::InY(_)),
            });
            emit(cli, v, || canonical.clone());
            Ok(())
        }
    }
}

/// Coefficient stream for the verify/search/weakly verbs: either a
/// literal list or an expansion of the pinned branch.
fn coefficient_stream(
    cli: &Cli,
    poly: &Option<String>,
    seed: &str,
    order: u32,
    coeffs: &Option<String>,
) -> Result<Vec<Rational>> {
    match (poly, coeffs) {
        (_, Some(list)) => parse_coeff_list(list),
        (Some(ptext), None) => {
            let order = guard_cap(order, cli.force)?;
            let p = parse_defining(ptext, cli.force)?;
            if p.nvars_x() >= 2 {
                return Err(Error::InvalidArgument(
                    "coefficient streams are univariate; use certify for several variables".into(),
                ));
            }
            let s = parse_univariate_seed(seed)?;
            eisenstein::expand_branch(&p, &s, order)
        }
        (None, None) => Err(Error::InvalidArgument(
            "supply either --poly or --coeffs".into(),
        )),
    }
}

fn run_eisenstein(cli: &Cli, action: &EisensteinAction) -> Result<()> {
    match action {
        EisensteinAction::Certify { poly, seed, order } => {
            let order = guard_cap(*order, cli.force)?;
            let p = parse_defining(poly, cli.force)?;
            let cert = if p.nvars_x() >= 2 {
                let s = parse_constant_seed(seed)?;
                eisenstein::certify_multi(&p, &s, order)?
            } else {
                let s = parse_univariate_seed(seed)?;
                eisenstein::certify(&p, &s, order)?
            };
            emit(cli, frontend::certificate_to_json(&cert), || {
                render::certificate_table(&cert)
            });
            Ok(())
        }
        EisensteinAction::Verify {
            poly,
            seed,
            order,
            coeffs,
            a,
        } => {
            let stream = coefficient_stream(cli, poly, seed, *order, coeffs)?;
            let a = parse_integer(a)?;
            let outcome = eisenstein::verify(&stream, &a)?;
            let v = match &outcome {
                VerifyOutcome::Pass => json!({
                    "schema": frontend::SCHEMA_TAG,
                    "type": "verify_outcome",
                    "pass": true,
                    "checked": stream.len(),
                }),
                VerifyOutcome::FailAt { index, witness } => json!({
                    "schema": frontend::SCHEMA_TAG,
                    "type": "verify_outcome",
                    "pass": false,
                    "index": index,
                    "witness": frontend::rational_to_string(witness),
                }),
            };
            emit(cli, v, || render::verify_table(&outcome));
            Ok(())
        }
        EisensteinAction::Search {
            poly,
            seed,
            order,
            coeffs,
            bound,
        } => {
            let stream = coefficient_stream(cli, poly, seed, *order, coeffs)?;
            let profile = DenominatorProfile::from_coeffs_with_cap(&stream, factor_cap()?)?;
            let found = eisenstein::search(&profile, *bound);
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "search_outcome",
                "bound": bound,
                "found": found.as_ref().map(|a| a.to_string()),
                "note": "evidence only: failure up to a bound does not prove transcendence",
            });
            emit(cli, v, || render::search_table(&found, *bound));
            Ok(())
        }
        EisensteinAction::Weakly {
            poly,
            seed,
            order,
            coeffs,
        } => {
            let stream = coefficient_stream(cli, poly, seed, *order, coeffs)?;
            let profile = DenominatorProfile::from_coeffs_with_cap(&stream, factor_cap()?)?;
            let report = eisenstein::weakly_eisenstein_check(&profile);
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "weakly_eisenstein",
                "prime_support": report.prime_support.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "support_stable_from": report.support_stable_from,
                "is_finite_observed": report.is_finite_observed,
                "beta": report.beta,
                "linear_fit": report.linear_fit.map(|(l, m)| json!({"lambda": l, "mu": m})),
            });
            emit(cli, v, || render::weakly_table(&report));
            Ok(())
        }
    }
}

fn run_graded(cli: &Cli, action: &GradedAction) -> Result<()> {
    match action {
        GradedAction::Lift {
            poly,
            omega,
            seed,
            cap,
        } => {
            let g = lift_common(cli, poly, omega, seed, cap)?;
            emit(cli, frontend::graded_to_json(&g), || {
                render::graded_table(&g)
            });
            Ok(())
        }
        GradedAction::Cone {
            poly,
            omega,
            seed,
            cap,
            direction,
            psi,
        } => {
            let g = lift_common(cli, poly, omega, seed, cap)?;
            let dir = direction.as_deref().map(parse_direction).transpose()?;
            let report = graded::support_cone_report(&g, dir.as_deref())?;
            let cone = report.cone.clone();
            let base = frontend::cone_to_json(&cone);
            let v = if *psi {
                json!({
                    "schema": frontend::SCHEMA_TAG,
                    "type": "support_cone",
                    "cone": base,
                    "normalizing_lambda": report.normalizing.as_ref().map(|(l, _)| l),
                    "psi_matrix": report.normalizing.as_ref().map(|(_, m)| {
                        m.matrix.iter().map(|row| {
                            row.iter().map(frontend::rational_to_string).collect::<Vec<_>>()
                        }).collect::<Vec<_>>()
                    }),
                })
            } else {
                base
            };
            emit(cli, v, || render::cone_table(&cone));
            Ok(())
        }
        GradedAction::Psi {
            omega,
            beta,
            lambda,
        } => {
            let b = parse_nat_list(beta)?;
            let w = parse_omega(omega, 8)?;
            let map = graded::psi_lambda(*lambda, &w, &b)?;
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "monomial_map",
                "lambda": lambda,
                "matrix": map.matrix.iter().map(|row| {
                    row.iter().map(frontend::rational_to_string).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "chi": frontend::rational_to_string(&map.chi()),
                "inverse": map.inverse().iter().map(|row| {
                    row.iter().map(frontend::rational_to_string).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            });
            emit(cli, v, || render::psi_table(&map));
            Ok(())
        }
    }
}

fn lift_common(
    cli: &Cli,
    poly: &str,
    omega: &str,
    seed: &str,
    cap: &str,
) -> Result<graded::GradedSeries> {
    let p = parse_defining(poly, cli.force)?;
    let cap_rat = frontend::rational_from_str(cap, "--cap")?;
    let cap_ceil = cap_rat.ceil().to_integer();
    let cap_u: u32 = cap_ceil
        .try_into()
        .map_err(|_| Error::InvalidArgument("cap must be a nonnegative rational".into()))?;
    guard_cap(cap_u, cli.force)?;
    let w = parse_omega(omega, cap_u.max(1))?;
    let s = parse_poly_seed(seed)?;
    graded::graded_root_lift(&p, &w, &s, &cap_rat)
}

fn ode_stream(ode: &str, init: &str, count: u32) -> Result<Vec<Rational>> {
    let ode = frontend::parse_ode(ode)?;
    let init = parse_coeff_list(init)?;
    let rec = dfinite::ode_to_recurrence(&ode, &init)?;
    rec.expand(count as usize)
}

fn dfinite_stream(
    cli: &Cli,
    ode: &Option<String>,
    init: &Option<String>,
    poly: &Option<String>,
    seed: &str,
    count: u32,
) -> Result<Vec<Rational>> {
    let count = guard_cap(count, cli.force)?;
    match (ode, poly) {
        (Some(o), None) => {
            let init = init.as_deref().ok_or_else(|| {
                Error::InvalidArgument("--ode needs --init with the initial values".into())
            })?;
            ode_stream(o, init, count)
        }
        (None, Some(ptext)) => {
            let p = parse_defining(ptext, cli.force)?;
            let s = parse_univariate_seed(seed)?;
            eisenstein::expand_branch(&p, &s, count)
        }
        _ => Err(Error::InvalidArgument(
            "supply exactly one of --ode or --poly".into(),
        )),
    }
}

fn run_dfinite(cli: &Cli, action: &DfiniteAction) -> Result<()> {
    match action {
        DfiniteAction::Expand { ode, init, count } => {
            let count = guard_cap(*count, cli.force)?;
            let coeffs = ode_stream(ode, init, count)?;
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "coefficients",
                "coeffs": coeffs.iter().map(frontend::rational_to_string).collect::<Vec<_>>(),
            });
            emit(cli, v, || render::coeffs_table(&coeffs));
            Ok(())
        }
        DfiniteAction::Ode2rec { ode, init } => {
            let parsed: LinearODE = frontend::parse_ode(ode)?;
            let init = parse_coeff_list(init)?;
            let rec: PRecurrence = dfinite::ode_to_recurrence(&parsed, &init)?;
            emit(cli, frontend::precurrence_to_json(&rec), || {
                format!("{rec}")
            });
            Ok(())
        }
        DfiniteAction::Alg2ode { poly, seed } => {
            let p = parse_defining(poly, cli.force)?;
            let s = parse_univariate_seed(seed)?;
            let ode = dfinite::algebraic_to_ode(&p, &s)?;
            emit(cli, frontend::ode_to_json(&ode), || format!("{ode}"));
            Ok(())
        }
        DfiniteAction::Primes {
            ode,
            init,
            poly,
            seed,
            count,
        } => {
            let coeffs = dfinite_stream(cli, ode, init, poly, seed, *count)?;
            let report = dfinite::prime_count_profile_with_cap(&coeffs, factor_cap()?)?;
            emit(cli, frontend::growth_to_json(&report), || {
                render::growth_table(&report)
            });
            Ok(())
        }
        DfiniteAction::Padic {
            ode,
            init,
            poly,
            seed,
            count,
            p,
        } => {
            let coeffs = dfinite_stream(cli, ode, init, poly, seed, *count)?;
            let prime = parse_integer(p)?;
            let prof = dfinite::padic_profile(&coeffs, &prime)?;
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "padic_profile",
                "p": prime.to_string(),
                "valuations": prof.valuations,
                "slope": frontend::rational_to_string(&prof.slope),
            });
            emit(cli, v, || render::padic_table(&prof, &prime));
            Ok(())
        }
    }
}

fn run_weierstrass(cli: &Cli, action: &WeierstrassAction) -> Result<()> {
    match action {
        WeierstrassAction::Prepare { f, cap } => {
            let cap = guard_cap(*cap, cli.force)?;
            let (fs, _) = parse_regular_series(cli, f, cap)?;
            let (w, u) = weierstrass::prepare(&fs, cap)?;
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "weierstrass_preparation",
                "degree": w.degree(),
                "distinguished": w.coeffs().iter().map(frontend::tseries_to_json).collect::<Vec<_>>(),
                "unit": frontend::tseries_to_json(&u),
            });
            emit(cli, v, || render::prepare_table(&w, &u));
            Ok(())
        }
        WeierstrassAction::Divide { g, f, cap } => {
            let cap = guard_cap(*cap, cli.force)?;
            let (fs, n) = parse_regular_series(cli, f, cap)?;
            let gp = frontend::parse_seed(g)?;
            let gs = TSeries::from_mpoly(&gp, n, fs.cap())?;
            let (q, r) = weierstrass::divide(&gs, &fs, cap)?;
            let v = json!({
                "schema": frontend::SCHEMA_TAG,
                "type": "weierstrass_division",
                "q": frontend::tseries_to_json(&q),
                "r": frontend::tseries_to_json(&r),
            });
            emit(cli, v, || render::divide_table(&q, &r));
            Ok(())
        }
    }
}

/// Parse a polynomial f regular in its last variable and pad its
/// truncation so the division has the cap + d precision it needs.
fn parse_regular_series(cli: &Cli, text: &str, cap: u32) -> Result<(TSeries, usize)> {
    let p = frontend::parse_seed(text)?;
    let n = guard_nvars(p.nvars().max(1), cli.force)?;
    // order in the last variable along the axis
    let d = p
        .terms()
        .filter(|(e, _)| e[..n - 1].iter().all(|&k| k == 0))
        .map(|(e, _)| e.get(n - 1).copied().unwrap_or(0))
        .min()
        .ok_or(Error::NotRegular)?;
    let f = TSeries::from_mpoly(&p, n, cap + d)?;
    Ok((f, n))
}

fn emit(cli: &Cli, v: Value, table: impl Fn() -> String) {
    match cli.format {
        Format::Json => println!("{}", frontend::to_stable_string(&v)),
        Format::Table => println!("{}", table()),
    }
}
