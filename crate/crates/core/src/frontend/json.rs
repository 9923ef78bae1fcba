//! Stable JSON schema for every result type, versioned with a
//! "schema": "eisenbox/1" tag. Rationals are serialized as strings
//! "num" or "num/den" so nothing is lost; term order is graded
//! lexicographic so fixtures are byte-stable. Deserialization reports
//! violations with a JSON-path diagnostic.

use crate::dfinite::{GrowthReport, IntPoly, LinearODE, PRecurrence};
use crate::eisenstein::EisensteinCertificate;
use crate::error::{Error, Result};
use crate::graded::{Cone, GradedSeries};
use crate::series::{MPoly, PuiseuxSeries, TSeries, WeightVector};
use crate::{Integer, Rational};
use num_traits::One;
use serde_json::{json, Map, Value};

pub const SCHEMA_TAG: &str = "eisenbox/1";

fn jerr(path: &str, msg: impl Into<String>) -> Error {
    Error::Json {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| jerr(&format!("{path}.{key}"), "missing field"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| jerr(path, "expected a nonnegative integer"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| jerr(path, "expected an integer"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| jerr(path, "expected a string"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| jerr(path, "expected an array"))
}

fn check_type(v: &Value, want: &str, path: &str) -> Result<()> {
    let t = as_str(get(v, "type", path)?, &format!("{path}.type"))?;
    if t != want {
        return Err(jerr(
            &format!("{path}.type"),
            format!("expected \"{want}\", found \"{t}\""),
        ));
    }
    let s = as_str(get(v, "schema", path)?, &format!("{path}.schema"))?;
    if s != SCHEMA_TAG {
        return Err(jerr(
            &format!("{path}.schema"),
            format!("unsupported schema \"{s}\""),
        ));
    }
    Ok(())
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_from_str(s: &str, path: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<Integer> {
        t.trim()
            .parse()
            .map_err(|_| jerr(path, format!("not an integer: \"{t}\"")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den == Integer::from(0) {
                return Err(jerr(path, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

fn rational_field(v: &Value, path: &str) -> Result<Rational> {
    rational_from_str(as_str(v, path)?, path)
}

fn integer_field(v: &Value, path: &str) -> Result<Integer> {
    as_str(v, path)?
        .trim()
        .parse()
        .map_err(|_| jerr(path, "not an integer"))
}

// -- MPoly (embedded object, no schema tag of its own) --

fn mpoly_to_value(p: &MPoly) -> Value {
    let terms: Vec<Value> = p
        .sorted_terms()
        .into_iter()
        .map(|(e, c)| json!({ "e": e, "c": rational_to_string(&c) }))
        .collect();
    json!({ "nvars": p.nvars(), "terms": terms })
}

fn mpoly_from_value(v: &Value, path: &str) -> Result<MPoly> {
    let nvars = as_u64(get(v, "nvars", path)?, &format!("{path}.nvars"))? as usize;
    let terms = as_array(get(v, "terms", path)?, &format!("{path}.terms"))?;
    let mut pairs = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let tp = format!("{path}.terms[{i}]");
        let e_arr = as_array(get(t, "e", &tp)?, &format!("{tp}.e"))?;
        if e_arr.len() != nvars {
            return Err(jerr(&format!("{tp}.e"), "exponent length differs from nvars"));
        }
        let mut e = Vec::with_capacity(e_arr.len());
        for (j, x) in e_arr.iter().enumerate() {
            e.push(as_u64(x, &format!("{tp}.e[{j}]"))? as u32);
        }
        let c = rational_field(get(t, "c", &tp)?, &format!("{tp}.c"))?;
        pairs.push((e, c));
    }
    Ok(MPoly::from_terms(pairs))
}

// -- TSeries --

pub fn tseries_to_json(s: &TSeries) -> Value {
    let terms: Vec<Value> = s
        .sorted_terms()
        .into_iter()
        .map(|(e, c)| json!({ "e": e, "c": rational_to_string(&c) }))
        .collect();
    json!({
        "schema": SCHEMA_TAG,
        "type": "tseries",
        "nvars": s.nvars(),
        "cap": s.cap(),
        "terms": terms,
    })
}

pub fn tseries_from_json(v: &Value) -> Result<TSeries> {
    let path = "$";
    check_type(v, "tseries", path)?;
    let nvars = as_u64(get(v, "nvars", path)?, "$.nvars")? as usize;
    let cap = as_u64(get(v, "cap", path)?, "$.cap")? as u32;
    let terms = as_array(get(v, "terms", path)?, "$.terms")?;
    let mut out = TSeries::zero(nvars, cap);
    for (i, t) in terms.iter().enumerate() {
        let tp = format!("$.terms[{i}]");
        let e_arr = as_array(get(t, "e", &tp)?, &format!("{tp}.e"))?;
        if e_arr.len() != nvars {
            return Err(jerr(&format!("{tp}.e"), "exponent length differs from nvars"));
        }
        let mut e = Vec::with_capacity(nvars);
        for (j, x) in e_arr.iter().enumerate() {
            e.push(as_u64(x, &format!("{tp}.e[{j}]"))? as u32);
        }
        if e.iter().sum::<u32>() > cap {
            return Err(jerr(&tp, "term beyond the cap"));
        }
        let c = rational_field(get(t, "c", &tp)?, &format!("{tp}.c"))?;
        out.set_coefficient(e, c);
    }
    Ok(out)
}

// -- PuiseuxSeries --

pub fn puiseux_to_json(s: &PuiseuxSeries) -> Value {
    let coeffs: Vec<Value> = s
        .coeffs()
        .map(|(&l, c)| json!({ "k": l, "c": rational_to_string(c) }))
        .collect();
    json!({
        "schema": SCHEMA_TAG,
        "type": "puiseux",
        "ram": s.ram(),
        "cap": s.cap(),
        "coeffs": coeffs,
    })
}

pub fn puiseux_from_json(v: &Value) -> Result<PuiseuxSeries> {
    let path = "$";
    check_type(v, "puiseux", path)?;
    let ram = as_u64(get(v, "ram", path)?, "$.ram")? as u32;
    if ram == 0 {
        return Err(jerr("$.ram", "ramification must be positive"));
    }
    let cap = as_i64(get(v, "cap", path)?, "$.cap")?;
    let arr = as_array(get(v, "coeffs", path)?, "$.coeffs")?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for (i, t) in arr.iter().enumerate() {
        let tp = format!("$.coeffs[{i}]");
        let k = as_i64(get(t, "k", &tp)?, &format!("{tp}.k"))?;
        let c = rational_field(get(t, "c", &tp)?, &format!("{tp}.c"))?;
        coeffs.push((k, c));
    }
    Ok(PuiseuxSeries::new(ram, coeffs, cap))
}

// -- EisensteinCertificate --

pub fn certificate_to_json(c: &EisensteinCertificate) -> Value {
    json!({
        "schema": SCHEMA_TAG,
        "type": "eisenstein_certificate",
        "a_raw": c.a_raw.to_string(),
        "e": rational_to_string(&c.e),
        "s_min": match &c.s_min {
            Some(s) => rational_to_string(s),
            None => "inf".to_string(),
        },
        "lambda": rational_to_string(&c.lambda),
        "a_final": c.a_final.to_string(),
        "verified_to": c.verified_to,
    })
}

pub fn certificate_from_json(v: &Value) -> Result<EisensteinCertificate> {
    let path = "$";
    check_type(v, "eisenstein_certificate", path)?;
    let s_min_raw = as_str(get(v, "s_min", path)?, "$.s_min")?;
    let s_min = if s_min_raw == "inf" {
        None
    } else {
        Some(rational_from_str(s_min_raw, "$.s_min")?)
    };
    Ok(EisensteinCertificate {
        a_raw: integer_field(get(v, "a_raw", path)?, "$.a_raw")?,
        e: rational_field(get(v, "e", path)?, "$.e")?,
        s_min,
        lambda: rational_field(get(v, "lambda", path)?, "$.lambda")?,
        a_final: integer_field(get(v, "a_final", path)?, "$.a_final")?,
        verified_to: as_u64(get(v, "verified_to", path)?, "$.verified_to")? as u32,
    })
}

// -- PRecurrence --

fn intpoly_to_value(p: &IntPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn intpoly_from_value(v: &Value, path: &str) -> Result<IntPoly> {
    let arr = as_array(v, path)?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for (i, c) in arr.iter().enumerate() {
        coeffs.push(integer_field(c, &format!("{path}[{i}]"))?);
    }
    Ok(IntPoly::new(coeffs))
}

pub fn precurrence_to_json(r: &PRecurrence) -> Value {
    json!({
        "schema": SCHEMA_TAG,
        "type": "precurrence",
        "order": r.order(),
        "coeffs": r.coeffs().iter().map(intpoly_to_value).collect::<Vec<_>>(),
        "offset": r.offset(),
        "initial": r.initial().iter().map(rational_to_string).collect::<Vec<_>>(),
    })
}

pub fn precurrence_from_json(v: &Value) -> Result<PRecurrence> {
    let path = "$";
    check_type(v, "precurrence", path)?;
    let coeff_arr = as_array(get(v, "coeffs", path)?, "$.coeffs")?;
    let mut coeffs = Vec::with_capacity(coeff_arr.len());
    for (i, c) in coeff_arr.iter().enumerate() {
        coeffs.push(intpoly_from_value(c, &format!("$.coeffs[{i}]"))?);
    }
    let offset = as_i64(get(v, "offset", path)?, "$.offset")?;
    let init_arr = as_array(get(v, "initial", path)?, "$.initial")?;
    let mut initial = Vec::with_capacity(init_arr.len());
    for (i, c) in init_arr.iter().enumerate() {
        initial.push(rational_field(c, &format!("$.initial[{i}]"))?);
    }
    PRecurrence::new(coeffs, offset, initial)
}

// -- LinearODE --

pub fn ode_to_json(o: &LinearODE) -> Value {
    json!({
        "schema": SCHEMA_TAG,
        "type": "linear_ode",
        "order": o.order(),
        "coeffs": o.coeffs().iter().map(intpoly_to_value).collect::<Vec<_>>(),
    })
}

// -- Cone --

pub fn cone_to_json(c: &Cone) -> Value {
    json!({
        "schema": SCHEMA_TAG,
        "type": "cone",
        "generators": c.generators(),
        "translate": c.translate(),
    })
}

pub fn cone_from_json(v: &Value) -> Result<Cone> {
    let path = "$";
    check_type(v, "cone", path)?;
    let gen_arr = as_array(get(v, "generators", path)?, "$.generators")?;
    let mut generators = Vec::with_capacity(gen_arr.len());
    for (i, g) in gen_arr.iter().enumerate() {
        let gp = format!("$.generators[{i}]");
        let arr = as_array(g, &gp)?;
        let mut vec = Vec::with_capacity(arr.len());
        for (j, x) in arr.iter().enumerate() {
            vec.push(as_i64(x, &format!("{gp}[{j}]"))?);
        }
        generators.push(vec);
    }
    let t_arr = as_array(get(v, "translate", path)?, "$.translate")?;
    let mut translate = Vec::with_capacity(t_arr.len());
    for (j, x) in t_arr.iter().enumerate() {
        translate.push(as_i64(x, &format!("$.translate[{j}]"))?);
    }
    Cone::new(generators, translate)
}

// -- GradedSeries --

pub fn graded_to_json(g: &GradedSeries) -> Value {
    let pieces: Vec<Value> = g
        .pieces()
        .map(|(w, p)| {
            json!({
                "weight": rational_to_string(&w),
                "num": mpoly_to_value(&p.num),
                "den_pow": p.den_pow,
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_TAG,
        "type": "graded_series",
        "omega": g.omega().omega().iter().map(rational_to_string).collect::<Vec<_>>(),
        "omega_cap": g.omega().cap(),
        "ram": g.ram(),
        "cap": rational_to_string(&g.cap()),
        "base": mpoly_to_value(g.base()),
        "pieces": pieces,
    })
}

pub fn graded_from_json(v: &Value) -> Result<GradedSeries> {
    let path = "$";
    check_type(v, "graded_series", path)?;
    let omega_arr = as_array(get(v, "omega", path)?, "$.omega")?;
    let mut omega = Vec::with_capacity(omega_arr.len());
    for (i, w) in omega_arr.iter().enumerate() {
        omega.push(rational_field(w, &format!("$.omega[{i}]"))?);
    }
    let omega_cap = as_u64(get(v, "omega_cap", path)?, "$.omega_cap")? as u32;
    let w = WeightVector::new(omega, omega_cap)
        .map_err(|e| jerr("$.omega", e.to_string()))?;
    let ram = as_u64(get(v, "ram", path)?, "$.ram")? as u32;
    let cap = rational_field(get(v, "cap", path)?, "$.cap")?;
    let base = mpoly_from_value(get(v, "base", path)?, "$.base")?;
    let arr = as_array(get(v, "pieces", path)?, "$.pieces")?;
    let mut pieces = Vec::with_capacity(arr.len());
    for (i, p) in arr.iter().enumerate() {
        let pp = format!("$.pieces[{i}]");
        let weight = rational_field(get(p, "weight", &pp)?, &format!("{pp}.weight"))?;
        let num = mpoly_from_value(get(p, "num", &pp)?, &format!("{pp}.num"))?;
        let den_pow = as_u64(get(p, "den_pow", &pp)?, &format!("{pp}.den_pow"))? as u32;
        pieces.push((weight, num, den_pow));
    }
    GradedSeries::from_parts(w, ram, base, pieces, &cap)
        .map_err(|e| jerr("$.pieces", e.to_string()))
}

// -- GrowthReport (diagnostic output; one-way) --

pub fn growth_to_json(r: &GrowthReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| json!({ "l": e.l, "s": e.s, "ratio": e.ratio }))
        .collect();
    let slopes: Vec<Value> = r
        .prime_slopes
        .iter()
        .map(|(p, s)| json!([p.to_string(), rational_to_string(s)]))
        .collect();
    json!({
        "schema": SCHEMA_TAG,
        "type": "growth_report",
        "entries": entries,
        "fitted_k": r.fitted_k,
        "argmax": r.argmax,
        "prime_slopes": slopes,
    })
}

/// Deterministic rendering with sorted keys at the top level, so test
/// fixtures are byte-stable.
pub fn to_stable_string(v: &Value) -> String {
    fn sort(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let mut sorted = Map::new();
                let mut keys: Vec<&String> = m.keys().collect();
                keys.sort();
                for k in keys {
                    sorted.insert(k.clone(), sort(&m[k]));
                }
                Value::Object(sorted)
            }
            Value::Array(a) => Value::Array(a.iter().map(sort).collect()),
            other => other.clone(),
        }
    }
    serde_json::to_string_pretty(&sort(v)).expect("serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn tseries_schema_example() {
        let mut s = TSeries::zero(1, 6);
        s.set_coefficient(vec![0], rat_int(1));
        s.set_coefficient(vec![1], rat(1, 2));
        let v = tseries_to_json(&s);
        assert_eq!(v["nvars"], 1);
        assert_eq!(v["cap"], 6);
        assert_eq!(v["terms"][0]["e"][0], 0);
        assert_eq!(v["terms"][0]["c"], "1");
        assert_eq!(v["terms"][1]["c"], "1/2");
        assert_eq!(tseries_from_json(&v).unwrap(), s);
    }

    #[test]
    fn certificate_round_trip() {
        let cert = EisensteinCertificate {
            a_raw: int(2),
            e: rat_int(0),
            s_min: Some(rat(1, 2)),
            lambda: rat_int(2),
            a_final: int(4),
            verified_to: 50,
        };
        let v = certificate_to_json(&cert);
        assert_eq!(v["s_min"], "1/2");
        assert_eq!(v["lambda"], "2");
        assert_eq!(v["a_final"], "4");
        assert_eq!(certificate_from_json(&v).unwrap(), cert);
        // infinite s_min serializes as "inf"
        let poly_cert = EisensteinCertificate {
            s_min: None,
            lambda: rat_int(0),
            ..cert
        };
        let v = certificate_to_json(&poly_cert);
        assert_eq!(v["s_min"], "inf");
        assert_eq!(certificate_from_json(&v).unwrap(), poly_cert);
    }

    #[test]
    fn large_numerators_survive() {
        let big: Integer = "123456789012345678901234567890123".parse().unwrap();
        let r = Rational::new(big.clone(), int(7));
        let s = rational_to_string(&r);
        assert_eq!(rational_from_str(&s, "$").unwrap(), r);
    }

    #[test]
    fn path_diagnostics() {
        let v = json!({ "schema": SCHEMA_TAG, "type": "tseries", "nvars": 1, "cap": 3,
                         "terms": [ { "e": [1], "c": "not-a-number" } ] });
        match tseries_from_json(&v) {
            Err(Error::Json { path, .. }) => assert_eq!(path, "$.terms[0].c"),
            other => panic!("unexpected {other:?}"),
        }
        let v = json!({ "schema": "eisenbox/0", "type": "tseries" });
        match tseries_from_json(&v) {
            Err(Error::Json { path, .. }) => assert_eq!(path, "$.schema"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn puiseux_and_cone_round_trips() {
        let s = PuiseuxSeries::new(2, [(3, rat_int(1)), (5, rat(-7, 3))], 9);
        assert_eq!(puiseux_from_json(&puiseux_to_json(&s)).unwrap(), s);
        let c = Cone::new(vec![vec![1, 0], vec![-1, 1]], vec![1, 0]).unwrap();
        assert_eq!(cone_from_json(&cone_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn precurrence_round_trip() {
        let rec = PRecurrence::new(
            vec![IntPoly::from_i64(&[-1]), IntPoly::from_i64(&[1, 1])],
            0,
            vec![rat_int(1)],
        )
        .unwrap();
        assert_eq!(precurrence_from_json(&precurrence_to_json(&rec)).unwrap(), rec);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn tseries_round_trip_randomized(
            terms in proptest::collection::vec(
                (proptest::collection::vec(0u32..4, 2), -30i64..30, 1i64..12),
                0..10,
            )
        ) {
            let mut s = TSeries::zero(2, 6);
            for (e, n, d) in terms {
                if e.iter().sum::<u32>() <= 6 {
                    let c = s.coefficient(&e) + rat(n, d);
                    s.set_coefficient(e, c);
                }
            }
            let v = tseries_to_json(&s);
            prop_assert_eq!(tseries_from_json(&v).unwrap(), s);
        }
    }
}
