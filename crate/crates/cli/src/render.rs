//! Human-readable table rendering for --format table.

use eisenbox::dfinite::{GrowthReport, PadicProfile};
use eisenbox::eisenstein::{EisensteinCertificate, VerifyOutcome, WeaklyEisensteinReport};
use eisenbox::frontend::rational_to_string;
use eisenbox::graded::{Cone, GradedSeries, MonomialMap};
use eisenbox::puiseux::Expansion;
use eisenbox::series::{PuiseuxSeries, TSeries};
use eisenbox::weierstrass::DistinguishedPolynomial;
use eisenbox::{Integer, Rational};

pub fn puiseux_table(s: &PuiseuxSeries) -> String {
    format!("{s}")
}

pub fn tseries_table(s: &TSeries) -> String {
    format!("{s}")
}

pub fn expansion_table(e: &Expansion) -> String {
    let mut out = String::new();
    for (i, b) in e.branches.iter().enumerate() {
        out.push_str(&format!("branch {}: {b}\n", i + 1));
    }
    for ext in &e.extensions {
        let poly: Vec<String> = ext.min_poly.iter().map(rational_to_string).collect();
        out.push_str(&format!(
            "extension required: degree {}, annihilator coefficients [{}]{}\n",
            ext.degree,
            poly.join(", "),
            if ext.is_minimal { " (minimal)" } else { "" },
        ));
    }
    if out.is_empty() {
        out.push_str("no branches\n");
    }
    out.trim_end().to_string()
}

pub fn certificate_table(c: &EisensteinCertificate) -> String {
    let s_min = c
        .s_min
        .as_ref()
        .map(rational_to_string)
        .unwrap_or_else(|| "inf".into());
    [
        format!("a_raw       {}", c.a_raw),
        format!("e           {}", rational_to_string(&c.e)),
        format!("s_min       {s_min}"),
        format!("lambda      {}", rational_to_string(&c.lambda)),
        format!("a_final     {}", c.a_final),
        format!("verified_to {}", c.verified_to),
    ]
    .join("\n")
}

pub fn verify_table(o: &VerifyOutcome) -> String {
    match o {
        VerifyOutcome::Pass => "pass".into(),
        VerifyOutcome::FailAt { index, witness } => format!(
            "fail at l = {index}: a^(l+1) f_l = {} is not an integer",
            rational_to_string(witness)
        ),
    }
}

pub fn search_table(found: &Option<Integer>, bound: u64) -> String {
    match found {
        Some(a) => format!("smallest passing constant <= {bound}: {a}"),
        None => format!(
            "no constant <= {bound} clears the denominators (evidence of transcendence, not proof)"
        ),
    }
}

pub fn weakly_table(r: &WeaklyEisensteinReport) -> String {
    let support: Vec<String> = r.prime_support.iter().map(|p| p.to_string()).collect();
    let fit = match r.linear_fit {
        Some((l, m)) => format!("beta(l) <= {l} l + {m}"),
        None => "rejected on the observed range".into(),
    };
    [
        format!("prime support      {{{}}}", support.join(", ")),
        format!("stable from index  {}", r.support_stable_from),
        format!("finite (observed)  {}", r.is_finite_observed),
        format!("linear fit         {fit}"),
    ]
    .join("\n")
}

pub fn graded_table(g: &GradedSeries) -> String {
    let mut out = vec![format!("base a = {}", g.base())];
    for (w, p) in g.pieces() {
        out.push(format!(
            "weight {}: ({}) / a^{}",
            rational_to_string(&w),
            p.num,
            p.den_pow
        ));
    }
    out.join("\n")
}

pub fn cone_table(c: &Cone) -> String {
    let gens: Vec<String> = c
        .generators()
        .iter()
        .map(|g| format!("{g:?}"))
        .collect();
    format!(
        "translate gamma = {:?}\ngenerators      = {}",
        c.translate(),
        if gens.is_empty() {
            "(trivial cone)".to_string()
        } else {
            gens.join(", ")
        }
    )
}

pub fn psi_table(m: &MonomialMap) -> String {
    let rows: Vec<String> = m
        .matrix
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(rational_to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!(
        "matrix = {}\nchi    = {}",
        rows.join(" "),
        rational_to_string(&m.chi())
    )
}

pub fn coeffs_table(coeffs: &[Rational]) -> String {
    coeffs
        .iter()
        .enumerate()
        .map(|(l, c)| format!("{l:>5}  {}", rational_to_string(c)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn growth_table(r: &GrowthReport) -> String {
    let mut out = vec![format!("{:>5}  {:>8}  {:>10}", "l", "s_l", "ratio")];
    for e in &r.entries {
        out.push(format!("{:>5}  {:>8}  {:>10.6}", e.l, e.s, e.ratio));
    }
    out.push(format!(
        "fitted K = {:.6} attained at l = {}",
        r.fitted_k, r.argmax
    ));
    if !r.prime_slopes.is_empty() {
        let slopes: Vec<String> = r
            .prime_slopes
            .iter()
            .map(|(p, s)| format!("{p}: {}", rational_to_string(s)))
            .collect();
        out.push(format!("valuation envelope slopes: {}", slopes.join(", ")));
    }
    out.join("\n")
}

pub fn padic_table(p: &PadicProfile, prime: &Integer) -> String {
    let mut out = vec![format!("p = {prime}")];
    for (l, v) in p.valuations.iter().enumerate() {
        let s = v.map(|v| v.to_string()).unwrap_or_else(|| "inf".into());
        out.push(format!("{l:>5}  {s}"));
    }
    out.push(format!(
        "lower envelope slope >= {}",
        rational_to_string(&p.slope)
    ));
    out.join("\n")
}

pub fn prepare_table(w: &DistinguishedPolynomial, u: &TSeries) -> String {
    let mut out = vec![format!("degree {}", w.degree())];
    for (i, a) in w.coeffs().iter().enumerate() {
        out.push(format!("a_{} = {a}", i + 1));
    }
    out.push(format!("unit = {u}"));
    out.join("\n")
}

pub fn divide_table(q: &TSeries, r: &TSeries) -> String {
    format!("q = {q}\nr = {r}")
}
