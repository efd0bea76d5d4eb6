//! Stacking sequences, lamination parameters and extension-stiffness
//! homogenization of laminates made of identical plies.
//!
//! Extension-bending uncoupling is assumed: a stack is treated as the
//! multiset of its in-plane orientations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polar::{classify_symmetry, PolarStiffness, SymmetryClass};

/// Absolute slack on the Miki bounds, absorbing rounding of trigonometric sums.
pub const MIKI_SLACK: f64 = 1e-12;

/// Default tolerance of the `xi1 = xi3^2` test.
pub const PARABOLA_TOL: f64 = 1e-9;

/// Ordered ply orientations, radians, interpreted modulo `pi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StackingSequence {
    angles: Vec<f64>,
}

impl StackingSequence {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::InvalidInput("a stack needs at least one ply".into()));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidInput("ply angles must be finite".into()));
        }
        Ok(Self { angles })
    }

    pub fn from_degrees(degrees: &[f64]) -> Result<Self> {
        Self::new(degrees.iter().map(|d| d.to_radians()).collect())
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Every ply turned by `delta`.
    pub fn rotated(&self, delta: f64) -> Self {
        Self {
            angles: self.angles.iter().map(|a| a + delta).collect(),
        }
    }
}

/// Balanced angle-ply `[+delta, -delta]`.
pub fn make_angle_ply(delta: f64) -> StackingSequence {
    StackingSequence {
        angles: vec![delta, -delta],
    }
}

/// Symmetric `[0, 60, -60]_s` stack, isotropic in extension.
pub fn make_quasi_isotropic() -> StackingSequence {
    let a = PI / 3.0;
    StackingSequence {
        angles: vec![0.0, a, -a, -a, a, 0.0],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaminationPoint {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub xi4: f64,
}

/// A lamination point expressed in a rotated laminate frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameNormalization {
    pub point: LaminationPoint,
    /// Frame rotation (radians) that was applied.
    pub rotation: f64,
}

impl LaminationPoint {
    pub fn new(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> Self {
        Self { xi1, xi2, xi3, xi4 }
    }

    /// Orthotropic point with `xi2 = xi4 = 0`.
    pub fn orthotropic(xi1: f64, xi3: f64) -> Self {
        Self::new(xi1, 0.0, xi3, 0.0)
    }

    /// Parameters seen from a laminate frame rotated by `psi`.
    pub fn rotated(&self, psi: f64) -> Self {
        let (s4, c4) = (4.0 * psi).sin_cos();
        let (s2, c2) = (2.0 * psi).sin_cos();
        Self {
            xi1: self.xi1 * c4 + self.xi2 * s4,
            xi2: self.xi2 * c4 - self.xi1 * s4,
            xi3: self.xi3 * c2 + self.xi4 * s2,
            xi4: self.xi4 * c2 - self.xi3 * s2,
        }
    }

    /// Rotates the frame so that `xi2 = 0` and `xi1 >= 0`.
    pub fn normalize_xi2(&self) -> FrameNormalization {
        let psi = self.xi2.atan2(self.xi1) / 4.0;
        let mut point = self.rotated(psi);
        point.xi2 = 0.0;
        FrameNormalization { point, rotation: psi }
    }

    /// Rotates the frame so that `xi4 = 0` and `xi3 >= 0`.
    pub fn normalize_xi4(&self) -> FrameNormalization {
        let psi = self.xi4.atan2(self.xi3) / 2.0;
        let mut point = self.rotated(psi);
        point.xi4 = 0.0;
        FrameNormalization { point, rotation: psi }
    }

    pub fn fourth_modulus(&self) -> f64 {
        self.xi1.hypot(self.xi2)
    }

    pub fn second_modulus(&self) -> f64 {
        self.xi3.hypot(self.xi4)
    }
}

/// `xi1 + i xi2 = mean(e^{4i delta})`, `xi3 + i xi4 = mean(e^{2i delta})`.
pub fn lamination_parameters(s: &StackingSequence) -> LaminationPoint {
    let n = s.len() as f64;
    let mut p = LaminationPoint::new(0.0, 0.0, 0.0, 0.0);
    for &d in s.angles() {
        let (s4, c4) = (4.0 * d).sin_cos();
        let (s2, c2) = (2.0 * d).sin_cos();
        p.xi1 += c4;
        p.xi2 += s4;
        p.xi3 += c2;
        p.xi4 += s2;
    }
    p.xi1 /= n;
    p.xi2 /= n;
    p.xi3 /= n;
    p.xi4 /= n;
    p
}

/// Polar parameters of the extension stiffness of a stack of identical plies.
pub fn homogenize(ply: &PolarStiffness, s: &StackingSequence) -> PolarStiffness {
    homogenize_point(ply, &lamination_parameters(s))
}

/// Homogenization driven directly by lamination parameters.
pub fn homogenize_point(ply: &PolarStiffness, point: &LaminationPoint) -> PolarStiffness {
    let (s0, c0) = (4.0 * ply.phi0).sin_cos();
    let re0 = ply.r0 * (c0 * point.xi1 - s0 * point.xi2);
    let im0 = ply.r0 * (s0 * point.xi1 + c0 * point.xi2);
    let (s1, c1) = (2.0 * ply.phi1).sin_cos();
    let re1 = ply.r1 * (c1 * point.xi3 - s1 * point.xi4);
    let im1 = ply.r1 * (s1 * point.xi3 + c1 * point.xi4);
    let r0 = re0.hypot(im0);
    let r1 = re1.hypot(im1);
    PolarStiffness {
        t0: ply.t0,
        t1: ply.t1,
        r0,
        r1,
        phi0: if r0 > 0.0 { im0.atan2(re0) / 4.0 } else { 0.0 },
        phi1: if r1 > 0.0 { im1.atan2(re1) / 2.0 } else { 0.0 },
    }
}

/// Symmetry class of the laminate built from `ply` at `point`.
pub fn preserves_special_symmetry(ply: &PolarStiffness, point: &LaminationPoint, tol: f64) -> SymmetryClass {
    classify_symmetry(&homogenize_point(ply, point), tol)
}

/// `|xi1 - xi3^2| < tol`: together with an `r0 = 0` ply this keeps `r0 = 0`
/// on the laminate. Expects a frame with `xi2 = xi4 = 0`.
pub fn r0_preserving_constraint(point: &LaminationPoint, tol: f64) -> bool {
    (point.xi1 - point.xi3 * point.xi3).abs() < tol
}

/// Miki domain `2 xi3^2 - 1 <= xi1 <= 1`, for a frame with `xi2 = xi4 = 0`.
pub fn miki_feasible(point: &LaminationPoint) -> bool {
    let lower = 2.0 * point.xi3 * point.xi3 - 1.0;
    point.xi1 >= lower - MIKI_SLACK && point.xi1 <= 1.0 + MIKI_SLACK && point.xi3.abs() <= 1.0 + MIKI_SLACK
}

/// Feasibility of a general lamination point:
/// `|(xi1 + i xi2) - (xi3 + i xi4)^2| <= 1 - |xi3 + i xi4|^2`.
///
/// Frame invariant; with `xi2 = xi4 = 0` it reduces to the Miki domain.
pub fn check_feasible(point: &LaminationPoint) -> Result<()> {
    let (x1, x2, x3, x4) = (point.xi1, point.xi2, point.xi3, point.xi4);
    let m2 = x3 * x3 + x4 * x4;
    let gap = (x1 - (x3 * x3 - x4 * x4)).hypot(x2 - 2.0 * x3 * x4);
    if m2 > 1.0 + MIKI_SLACK || gap > 1.0 - m2 + MIKI_SLACK {
        return Err(Error::InfeasibleLaminationPoint(if x2 == 0.0 && x4 == 0.0 {
            format!("xi1 = {x1} is outside [2 xi3^2 - 1, 1] = [{}, 1]", 2.0 * x3 * x3 - 1.0)
        } else {
            format!(
                "|(xi1 + i xi2) - (xi3 + i xi4)^2| = {gap:.6} exceeds 1 - |xi3 + i xi4|^2 = {:.6}",
                1.0 - m2
            )
        }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{SymmetryKind, DEFAULT_SYMMETRY_TOL};
    use approx::assert_relative_eq;

    #[test]
    fn lamination_parameter_examples() {
        let p = lamination_parameters(&StackingSequence::from_degrees(&[0.0, 60.0, -60.0]).unwrap());
        for v in [p.xi1, p.xi2, p.xi3, p.xi4] {
            assert!(v.abs() < 1e-15);
        }
        let p = lamination_parameters(&make_quasi_isotropic());
        for v in [p.xi1, p.xi2, p.xi3, p.xi4] {
            assert!(v.abs() < 1e-15);
        }

        let p = lamination_parameters(&make_angle_ply(15f64.to_radians()));
        assert_relative_eq!(p.xi1, 0.5, epsilon = 1e-15);
        assert!(p.xi2.abs() < 1e-15 && p.xi4.abs() < 1e-15);

        let p = lamination_parameters(&make_angle_ply(22.5f64.to_radians()));
        assert_relative_eq!(p.xi3, 0.5f64.sqrt(), epsilon = 1e-15);
        assert!(p.xi1.abs() < 1e-15);

        let p = lamination_parameters(&make_angle_ply(12.7f64.to_radians()));
        assert_relative_eq!(p.xi1, 0.632, epsilon = 1e-3);

        let p = lamination_parameters(&make_angle_ply(0.0));
        assert_eq!(p, LaminationPoint::new(1.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn empty_stack_rejected() {
        assert!(StackingSequence::new(vec![]).is_err());
    }

    #[test]
    fn single_ply_at_zero_is_the_ply() {
        let ply = PolarStiffness::new(10.0, 4.0, 2.0, 1.5, 0.0, 0.0).unwrap();
        let a = homogenize(&ply, &StackingSequence::new(vec![0.0]).unwrap());
        assert_eq!(a, ply);
    }

    #[test]
    fn special_symmetries_preserved() {
        let r1 = PolarStiffness::new(10.0, 3.0, 2.0, 0.0, 0.0, 0.0).unwrap();
        let r0 = PolarStiffness::new(10.0, 6.0, 0.0, 4.0, 0.0, 0.0).unwrap();
        let point = LaminationPoint::new(0.3, 0.2, -0.4, 0.1);
        let c = preserves_special_symmetry(&r1, &point, DEFAULT_SYMMETRY_TOL);
        assert!(c.r1_zero);
        let c = preserves_special_symmetry(&r0, &point, DEFAULT_SYMMETRY_TOL);
        assert!(c.r0_zero);

        // r0 = 0 ply off the parabola loses r0 = 0
        let rc = crate::ply::r0compliance_ply(0.7, 0.6, 10.0).unwrap();
        let c = preserves_special_symmetry(&rc, &LaminationPoint::orthotropic(0.5, 0.866), DEFAULT_SYMMETRY_TOL);
        assert!(!c.compliance_r0_zero);
        let c = preserves_special_symmetry(&rc, &LaminationPoint::orthotropic(0.7056, 0.84), DEFAULT_SYMMETRY_TOL);
        assert!(c.compliance_r0_zero);
        assert_eq!(c.kind, SymmetryKind::ComplianceR0Zero);
    }

    #[test]
    fn parabola_constraint() {
        assert!(r0_preserving_constraint(
            &LaminationPoint::orthotropic(0.7056, 0.84),
            PARABOLA_TOL
        ));
        assert!(r0_preserving_constraint(
            &LaminationPoint::orthotropic(0.0, 0.0),
            PARABOLA_TOL
        ));
        assert!(!r0_preserving_constraint(
            &LaminationPoint::orthotropic(0.5, 0.866),
            PARABOLA_TOL
        ));
    }

    #[test]
    fn miki_examples() {
        assert!(miki_feasible(&LaminationPoint::orthotropic(1.0, 1.0)));
        assert!(miki_feasible(&LaminationPoint::orthotropic(-1.0, 0.0)));
        assert!(!miki_feasible(&LaminationPoint::orthotropic(-1.0, 0.9)));
        assert!(matches!(
            check_feasible(&LaminationPoint::orthotropic(-1.0, 0.9)),
            Err(Error::InfeasibleLaminationPoint(_))
        ));
        assert!(check_feasible(&LaminationPoint::orthotropic(1.2, 1.0)).is_err());
        let s = StackingSequence::from_degrees(&[10.0, 35.0, -20.0, 80.0, 5.0]).unwrap();
        assert!(check_feasible(&lamination_parameters(&s)).is_ok());
        assert!(check_feasible(&LaminationPoint::new(0.0, 1.0, 0.0, 0.0)).is_ok());
        assert!(check_feasible(&LaminationPoint::new(0.0, 1.0, 0.5, 0.0)).is_err());
    }

    #[test]
    fn frame_normalization() {
        let s = StackingSequence::from_degrees(&[10.0, 35.0, -20.0, 80.0]).unwrap();
        let p = lamination_parameters(&s);
        let n = p.normalize_xi2();
        assert_relative_eq!(n.point.xi1, p.fourth_modulus(), epsilon = 1e-14);
        // rotating the stack by -rotation yields the same normalized point
        let q = lamination_parameters(&s.rotated(-n.rotation));
        assert_relative_eq!(q.xi1, n.point.xi1, epsilon = 1e-14);
        assert!(q.xi2.abs() < 1e-14);

        let n = p.normalize_xi4();
        assert_relative_eq!(n.point.xi3, p.second_modulus(), epsilon = 1e-14);
        let q = lamination_parameters(&s.rotated(-n.rotation));
        assert!(q.xi4.abs() < 1e-14);
    }
}
