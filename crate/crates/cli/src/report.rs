//! JSON report fragments. User-facing angles are in degrees.

use auxetolam_core::auxeticity::{classify_sampled, AuxeticityReport};
use auxetolam_core::polar::{classify_symmetry, compliance_polar_partial, SymmetryClass};
use auxetolam_core::{classify, PolarStiffness};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

pub const SIGNIFICANT_DIGITS: usize = 6;

/// Rounds every float in `v` to [`SIGNIFICANT_DIGITS`].
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x);
            // keep -0 out of reports
            let r = if r == 0.0 { 0.0 } else { r };
            if let Some(m) = serde_json::Number::from_f64(r) {
                *n = m;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

pub fn polar(p: &PolarStiffness) -> Value {
    json!({
        "t0": p.t0,
        "t1": p.t1,
        "r0": p.r0,
        "r1": p.r1,
        "phi0_deg": p.phi0.to_degrees(),
        "phi1_deg": p.phi1.to_degrees(),
    })
}

fn auxeticity_fields(r: &AuxeticityReport) -> Value {
    json!({
        "classification": r.classification,
        "nu_min": r.nu_min,
        "theta_min_deg": r.theta_min.to_degrees(),
        "delta_alpha_deg": r.delta_alpha.to_degrees(),
        "method": r.method,
    })
}

/// Analytic report plus a sampled cross-check with `samples` directions.
pub fn auxeticity(p: &PolarStiffness, samples: usize) -> Result<(AuxeticityReport, Value)> {
    let rep = classify(p)?;
    let mut v = auxeticity_fields(&rep);
    let sampled = classify_sampled(p, samples)?;
    v["sampled"] = auxeticity_fields(&sampled);
    v["sampled"]["samples"] = json!(samples);
    Ok((rep, v))
}

pub fn symmetry(p: &PolarStiffness, tol: f64) -> (SymmetryClass, Value) {
    let s = classify_symmetry(p, tol);
    (s, to_value(&s))
}

/// Closed-form compliance invariants `t0, t1, r0, phi0`.
pub fn compliance(p: &PolarStiffness) -> Result<Value> {
    let c = compliance_polar_partial(p)?;
    Ok(json!({
        "t0": c.t0c,
        "t1": c.t1c,
        "r0": c.r0c,
        "phi0_deg": c.phi0c.to_degrees(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_six_digits() {
        let mut v = json!({"a": 0.123456789, "b": [1234567.891, -0.0], "c": 3, "d": "x"});
        round_floats(&mut v);
        assert_eq!(v["a"], json!(0.123457));
        assert_eq!(v["b"][0], json!(1234570.0));
        assert_eq!(v["b"][1], json!(0.0));
        assert_eq!(v["c"], json!(3));
    }
}
