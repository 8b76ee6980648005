//! JSON forms of the data types.
//!
//! * group-ring element: `[{"coeff": c, "lamps": [[pos, val], ...], "shift": n}, ...]`
//!   in canonical order, coefficients as exact JSON integers,
//! * module vector: `{"basis": "generators" | "relators", "components": {"i": element}}`,
//! * certificate: `{"d", "k", "N", "z", "u", "gamma", "product", "verified"}`
//!   where `k` is the coefficient modulus and `0` means the integers,
//! * search report: `{"d", "p", "window", "extended_window_size",
//!   "nullspace_dim", "solutions", "verdict"}`,
//! * `B (x) k` vector: `[[pos, coeff], ...]`.
//!
//! Readers take the ring and group from the caller where the document does
//! not carry them, and fail with [`Error::Schema`] on malformed input.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::certificates::{Certificate, ModB2Vector, ZVector};
use crate::error::{Error, Result};
use crate::foxwords::{Basis, ModuleVector};
use crate::groupring::GroupRingElement;
use crate::oresearch::{Annihilator, SearchReport, Solution, Verdict, Window};
use crate::ring::ScalarRing;
use crate::wreath::{GroupParams, WreathElement};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn int(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"))
}

fn read_bigint(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| schema(format!("{what}: expected an integer, got {n}"))),
        other => Err(schema(format!("{what}: expected an integer, got {other}"))),
    }
}

fn read_i64(v: &Value, what: &str) -> Result<i64> {
    i64::try_from(read_bigint(v, what)?).map_err(|_| schema(format!("{what}: out of range")))
}

fn read_u64(v: &Value, what: &str) -> Result<u64> {
    u64::try_from(read_bigint(v, what)?).map_err(|_| schema(format!("{what}: out of range")))
}

fn read_bool(v: &Value, what: &str) -> Result<bool> {
    v.as_bool()
        .ok_or_else(|| schema(format!("{what}: expected a boolean")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{what}: missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(format!("{what}: expected an array")))
}

/// `k` as written in documents: the modulus, `0` for the integers.
pub fn ring_code(ring: ScalarRing) -> u64 {
    match ring {
        ScalarRing::Integers => 0,
        ScalarRing::IntegersMod(m) => m,
    }
}

pub fn element_to_json(g: &WreathElement) -> Value {
    json!({
        "lamps": g.base().entries().iter().map(|&(p, v)| json!([p, v])).collect::<Vec<_>>(),
        "shift": g.shift(),
    })
}

pub fn element_from_json(v: &Value, params: GroupParams) -> Result<WreathElement> {
    let obj = object(v, "group element")?;
    let lamps = array(field(obj, "lamps", "group element")?, "lamps")?
        .iter()
        .map(|pair| {
            let pair = array(pair, "lamp")?;
            if pair.len() != 2 {
                return Err(schema("lamp: expected [position, value]"));
            }
            Ok((
                read_i64(&pair[0], "lamp position")?,
                read_i64(&pair[1], "lamp value")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let shift = read_i64(field(obj, "shift", "group element")?, "shift")?;
    Ok(WreathElement::from_lamps(params, lamps, shift))
}

pub fn group_ring_to_json(x: &GroupRingElement) -> Value {
    Value::Array(
        x.terms()
            .map(|(g, c)| {
                let mut term = element_to_json(g);
                term.as_object_mut()
                    .expect("element JSON is an object")
                    .insert("coeff".into(), int(c));
                term
            })
            .collect(),
    )
}

pub fn group_ring_from_json(
    v: &Value,
    ring: ScalarRing,
    params: GroupParams,
) -> Result<GroupRingElement> {
    let terms = array(v, "group ring element")?
        .iter()
        .map(|t| {
            let obj = object(t, "term")?;
            let c = read_bigint(field(obj, "coeff", "term")?, "coeff")?;
            Ok((element_from_json(t, params)?, c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupRingElement::from_terms(ring, params, terms))
}

pub fn module_vector_to_json(v: &ModuleVector) -> Value {
    let basis = match v.basis() {
        Basis::Generators => "generators",
        Basis::Relators => "relators",
    };
    let components: Map<String, Value> = v
        .components()
        .map(|(i, c)| (i.to_string(), group_ring_to_json(c)))
        .collect();
    json!({"basis": basis, "components": components})
}

pub fn module_vector_from_json(
    v: &Value,
    ring: ScalarRing,
    params: GroupParams,
) -> Result<ModuleVector> {
    let obj = object(v, "module vector")?;
    let basis = match field(obj, "basis", "module vector")?.as_str() {
        Some("generators") => Basis::Generators,
        Some("relators") => Basis::Relators,
        _ => return Err(schema("basis: expected \"generators\" or \"relators\"")),
    };
    let mut out = ModuleVector::zero(ring, params, basis);
    for (key, c) in object(field(obj, "components", "module vector")?, "components")? {
        let index: usize = key
            .parse()
            .map_err(|_| schema(format!("component index {key:?} is not a number")))?;
        out.set(index, group_ring_from_json(c, ring, params)?)?;
    }
    Ok(out)
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    json!({
        "d": c.params().d(),
        "k": ring_code(c.ring()),
        "N": c.max_index(),
        "z": c.z.entries().iter().map(group_ring_to_json).collect::<Vec<_>>(),
        "u": group_ring_to_json(&c.u),
        "gamma": group_ring_to_json(&c.gamma),
        "product": group_ring_to_json(&c.product),
        "verified": c.verified,
    })
}

/// Reads a certificate as written; use [`Certificate::recheck`] to verify it.
pub fn certificate_from_json(v: &Value) -> Result<Certificate> {
    let obj = object(v, "certificate")?;
    let d = u32::try_from(read_u64(field(obj, "d", "certificate")?, "d")?)
        .map_err(|_| schema("d: out of range"))?;
    let params = GroupParams::new(d)?;
    let ring = ScalarRing::from_modulus(read_u64(field(obj, "k", "certificate")?, "k")?)?;
    let n = read_u64(field(obj, "N", "certificate")?, "N")?;
    let z = array(field(obj, "z", "certificate")?, "z")?
        .iter()
        .map(|e| group_ring_from_json(e, ring, params))
        .collect::<Result<Vec<_>>>()?;
    if z.len() as u64 != n + 1 {
        return Err(schema(format!(
            "z: expected {} entries for N = {n}, got {}",
            n + 1,
            z.len()
        )));
    }
    let z = ZVector::new(z)?;
    let elem = |key: &str| group_ring_from_json(field(obj, key, "certificate")?, ring, params);
    Ok(Certificate {
        u: elem("u")?,
        gamma: elem("gamma")?,
        product: elem("product")?,
        verified: read_bool(field(obj, "verified", "certificate")?, "verified")?,
        z,
    })
}

pub fn window_to_json(w: &Window) -> Value {
    json!({"lamps": [w.lamps.0, w.lamps.1], "shifts": [w.shifts.0, w.shifts.1]})
}

pub fn window_from_json(v: &Value) -> Result<Window> {
    let obj = object(v, "window")?;
    let interval = |key: &str| -> Result<(i64, i64)> {
        let pair = array(field(obj, key, "window")?, key)?;
        if pair.len() != 2 {
            return Err(schema(format!("{key}: expected [lo, hi]")));
        }
        Ok((read_i64(&pair[0], key)?, read_i64(&pair[1], key)?))
    };
    Ok(Window {
        lamps: interval("lamps")?,
        shifts: interval("shifts")?,
    })
}

fn solution_to_json(s: &Solution) -> Value {
    let annihilator = match &s.annihilator {
        None => Value::Null,
        Some(Annihilator::NotFound) => Value::String("not-found".into()),
        Some(Annihilator::Found(w)) => group_ring_to_json(w),
    };
    json!({
        "sigma": group_ring_to_json(&s.sigma),
        "alpha": group_ring_to_json(&s.alpha),
        "in_bkG": s.in_bkg,
        "annihilator": annihilator,
        "satisfies_equation": s.satisfies_equation,
    })
}

fn solution_from_json(v: &Value, ring: ScalarRing, params: GroupParams) -> Result<Solution> {
    let obj = object(v, "solution")?;
    let annihilator = match field(obj, "annihilator", "solution")? {
        Value::Null => None,
        Value::String(s) if s == "not-found" => Some(Annihilator::NotFound),
        other => Some(Annihilator::Found(group_ring_from_json(
            other, ring, params,
        )?)),
    };
    Ok(Solution {
        sigma: group_ring_from_json(field(obj, "sigma", "solution")?, ring, params)?,
        alpha: group_ring_from_json(field(obj, "alpha", "solution")?, ring, params)?,
        in_bkg: read_bool(field(obj, "in_bkG", "solution")?, "in_bkG")?,
        annihilator,
        satisfies_equation: read_bool(
            field(obj, "satisfies_equation", "solution")?,
            "satisfies_equation",
        )?,
    })
}

pub fn report_to_json(r: &SearchReport) -> Value {
    json!({
        "d": r.d,
        "p": r.p,
        "window": window_to_json(&r.window),
        "extended_window_size": r.extended_window_size,
        "nullspace_dim": r.nullspace_dim,
        "solutions": r.solutions.iter().map(solution_to_json).collect::<Vec<_>>(),
        "verdict": r.verdict.as_str(),
    })
}

pub fn report_from_json(v: &Value) -> Result<SearchReport> {
    let obj = object(v, "report")?;
    let small = |key: &str| -> Result<u32> {
        u32::try_from(read_u64(field(obj, key, "report")?, key)?)
            .map_err(|_| schema(format!("{key}: out of range")))
    };
    let (d, p) = (small("d")?, small("p")?);
    let params = GroupParams::new(d)?;
    let ring = ScalarRing::integers_mod(p as u64)?;
    let size = |key: &str| -> Result<usize> {
        usize::try_from(read_u64(field(obj, key, "report")?, key)?)
            .map_err(|_| schema(format!("{key}: out of range")))
    };
    let verdict = field(obj, "verdict", "report")?
        .as_str()
        .and_then(Verdict::parse)
        .ok_or_else(|| schema("verdict: unknown value"))?;
    Ok(SearchReport {
        d,
        p,
        window: window_from_json(field(obj, "window", "report")?)?,
        extended_window_size: size("extended_window_size")?,
        nullspace_dim: size("nullspace_dim")?,
        solutions: array(field(obj, "solutions", "report")?, "solutions")?
            .iter()
            .map(|s| solution_from_json(s, ring, params))
            .collect::<Result<Vec<_>>>()?,
        verdict,
    })
}

pub fn mod_b2_to_json(v: &ModB2Vector) -> Value {
    Value::Array(v.entries().map(|(p, c)| json!([p, int(c)])).collect())
}

pub fn mod_b2_from_json(v: &Value, ring: ScalarRing) -> Result<ModB2Vector> {
    let entries = array(v, "vector")?
        .iter()
        .map(|pair| {
            let pair = array(pair, "entry")?;
            if pair.len() != 2 {
                return Err(schema("entry: expected [position, coefficient]"));
            }
            Ok((
                read_i64(&pair[0], "position")?,
                read_bigint(&pair[1], "coefficient")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModB2Vector::from_entries(ring, entries))
}
