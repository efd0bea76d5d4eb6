//! Stack specifications: `0,45,-45,90`, `angleply:<deg>`, `quasiiso`, `xi:(a,b,c,d)`.

use auxetolam_core::laminate::{
    check_feasible, lamination_parameters, make_angle_ply, make_quasi_isotropic, LaminationPoint,
};
use auxetolam_core::StackingSequence;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum StackSpec {
    Sequence(StackingSequence),
    Point(LaminationPoint),
}

impl StackSpec {
    pub fn point(&self) -> LaminationPoint {
        match self {
            StackSpec::Sequence(s) => lamination_parameters(s),
            StackSpec::Point(p) => *p,
        }
    }

    pub fn sequence(&self) -> Option<&StackingSequence> {
        match self {
            StackSpec::Sequence(s) => Some(s),
            StackSpec::Point(_) => None,
        }
    }
}

fn bad(spec: &str, msg: impl Into<String>) -> CliError {
    CliError::Stack {
        spec: spec.to_owned(),
        msg: msg.into(),
    }
}

fn numbers(spec: &str, list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad(spec, format!("`{t}` is not a number")))
        })
        .collect()
}

/// Parses a stack spec. Explicit lamination points must be feasible.
pub fn parse(spec: &str) -> Result<StackSpec> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("quasiiso") {
        return Ok(StackSpec::Sequence(make_quasi_isotropic()));
    }
    if let Some(rest) = s.strip_prefix("angleply:") {
        let d = numbers(spec, rest)?;
        let [delta] = d[..] else {
            return Err(bad(spec, "angleply takes a single angle"));
        };
        return Ok(StackSpec::Sequence(make_angle_ply(delta.to_radians())));
    }
    if let Some(rest) = s.strip_prefix("xi:") {
        let inner = rest.trim().trim_start_matches('(').trim_end_matches(')');
        let v = numbers(spec, inner)?;
        let [a, b, c, d] = v[..] else {
            return Err(bad(spec, "expected four lamination parameters"));
        };
        let point = LaminationPoint::new(a, b, c, d);
        check_feasible(&point)?;
        return Ok(StackSpec::Point(point));
    }
    let inner = s.trim_start_matches('[').trim_end_matches(']');
    if inner.is_empty() {
        return Err(bad(spec, "empty stack"));
    }
    let degrees = numbers(spec, inner)?;
    Ok(StackSpec::Sequence(StackingSequence::from_degrees(&degrees)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_ply_gives_cos_4_delta() {
        let x = parse("angleply:15").unwrap().point();
        assert!((x.xi1 - 0.5).abs() < 1e-12);
        assert!(x.xi2.abs() < 1e-12 && x.xi4.abs() < 1e-12);
    }

    #[test]
    fn angle_list_and_brackets() {
        let a = parse("[0, 60, -60]").unwrap();
        assert_eq!(a.sequence().unwrap().len(), 3);
        let x = parse("quasiiso").unwrap().point();
        assert!(x.xi1.abs() < 1e-12 && x.xi3.abs() < 1e-12);
    }

    #[test]
    fn explicit_point() {
        let x = parse("xi:(0.7056,0,0.84,0)").unwrap().point();
        assert_eq!(x.xi3, 0.84);
    }

    #[test]
    fn infeasible_point_exits_four() {
        let e = parse("xi:(-1,0,0.9,0)").unwrap_err();
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn garbage_is_a_parse_error() {
        for s in ["", "xi:(1,2)", "angleply:", "0,a", "angleply:1,2"] {
            assert_eq!(parse(s).unwrap_err().exit_code(), 2, "{s}");
        }
    }
}
