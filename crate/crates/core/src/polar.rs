//! Plane elasticity tensors in Cartesian (Kelvin) and polar form.
//!
//! A reduced stiffness tensor is described either by its six Kelvin
//! components or by the polar invariants `T0, T1, R0, R1` and the two
//! angles `Phi0, Phi1`. In a frame rotated by `theta`:
//!
//! ```text
//! Q11 = T0 + 2 T1 + R0 cos4(Phi0 - theta) + 4 R1 cos2(Phi1 - theta)
//! Q12 = -T0 + 2 T1 - R0 cos4(Phi0 - theta)
//! Q16 = sqrt2 [ R0 sin4(Phi0 - theta) + 2 R1 sin2(Phi1 - theta)]
//! Q22 = T0 + 2 T1 + R0 cos4(Phi0 - theta) - 4 R1 cos2(Phi1 - theta)
//! Q26 = sqrt2 [-R0 sin4(Phi0 - theta) + 2 R1 sin2(Phi1 - theta)]
//! Q66 = 2 [T0 - R0 cos4(Phi0 - theta)]
//! ```
//!
//! Kelvin notation is used throughout: `Q66 = 2 G12` and `Q16 = sqrt2 Q1112`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance used to detect special symmetries.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-9;

/// Relative tolerance on `|q16| + |q26|` for a ply declared in its orthotropy frame.
pub const ORTHOTROPY_FRAME_TOL: f64 = 1e-9;

/// Reduced stiffness components in Kelvin notation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianStiffness {
    pub q11: f64,
    pub q12: f64,
    pub q16: f64,
    pub q22: f64,
    pub q26: f64,
    pub q66: f64,
}

/// Compliance components in Kelvin notation (`s66 = 1 / (2 G12)`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplianceComponents {
    pub s11: f64,
    pub s12: f64,
    pub s16: f64,
    pub s22: f64,
    pub s26: f64,
    pub s66: f64,
}

impl ComplianceComponents {
    /// Poisson's ratio `-s12 / s11` in the current frame.
    pub fn nu12(&self) -> f64 {
        -self.s12 / self.s11
    }

    pub fn young_modulus(&self) -> f64 {
        1.0 / self.s11
    }

    pub fn shear_modulus(&self) -> f64 {
        1.0 / (2.0 * self.s66)
    }
}

impl CartesianStiffness {
    /// Orthotropic stiffness given in its symmetry frame.
    pub fn orthotropic(q11: f64, q12: f64, q22: f64, q66: f64) -> Self {
        Self {
            q11,
            q12,
            q16: 0.0,
            q22,
            q26: 0.0,
            q66,
        }
    }

    /// Builds Kelvin components from Voigt ones (`q66 = G12`, engineering shear).
    pub fn from_voigt(q11: f64, q12: f64, q16: f64, q22: f64, q26: f64, q66: f64) -> Self {
        Self {
            q11,
            q12,
            q16: SQRT_2 * q16,
            q22,
            q26: SQRT_2 * q26,
            q66: 2.0 * q66,
        }
    }

    /// Voigt components `[q11, q12, q16, q22, q26, q66]`.
    pub fn to_voigt(&self) -> [f64; 6] {
        [
            self.q11,
            self.q12,
            self.q16 / SQRT_2,
            self.q22,
            self.q26 / SQRT_2,
            self.q66 / 2.0,
        ]
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.q11, self.q12, self.q16],
            [self.q12, self.q22, self.q26],
            [self.q16, self.q26, self.q66],
        ]
    }

    pub fn determinant(&self) -> f64 {
        det3(&self.matrix())
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let m1 = self.q11;
        let m2 = self.q11 * self.q22 - self.q12 * self.q12;
        m1 > 0.0 && m2 > 0.0 && self.determinant() > 0.0
    }

    pub fn check_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    /// `|q16| + |q26|` relative to the diagonal scale.
    fn coupling_ratio(&self) -> f64 {
        let scale = self.q11.abs() + self.q22.abs() + self.q66.abs();
        if scale == 0.0 {
            return 0.0;
        }
        (self.q16.abs() + self.q26.abs()) / scale
    }

    /// Components in a frame rotated by `theta`, computed with the orthogonal
    /// Kelvin rotation `R Q R^T`.
    pub fn rotated(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let cs = SQRT_2 * c * s;
        let r = [[c * c, s * s, cs], [s * s, c * c, -cs], [-cs, cs, c * c - s * s]];
        let q = self.matrix();
        let mut rq = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rq[i][j] = (0..3).map(|k| r[i][k] * q[k][j]).sum();
            }
        }
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| rq[i][k] * r[j][k]).sum();
            }
        }
        Self {
            q11: out[0][0],
            q12: out[0][1],
            q16: out[0][2],
            q22: out[1][1],
            q26: out[1][2],
            q66: out[2][2],
        }
    }

    /// Inverse of the Kelvin matrix.
    pub fn inverse(&self) -> Result<ComplianceComponents> {
        let m = self.matrix();
        let det = det3(&m);
        let scale = self.q11.abs().max(self.q22.abs()).max(self.q66.abs());
        if !(det > 1e-14 * scale.powi(3)) {
            return Err(Error::SingularTensor(det));
        }
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        Ok(ComplianceComponents {
            s11: cof(1, 2, 1, 2) / det,
            s12: -cof(0, 2, 1, 2) / det,
            s16: cof(0, 1, 1, 2) / det,
            s22: cof(0, 2, 0, 2) / det,
            s26: -cof(0, 1, 0, 2) / det,
            s66: cof(0, 1, 0, 1) / det,
        })
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Polar parameters of a reduced stiffness tensor. Angles in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarStiffness {
    pub t0: f64,
    pub t1: f64,
    pub r0: f64,
    pub r1: f64,
    pub phi0: f64,
    pub phi1: f64,
}

impl PolarStiffness {
    /// Builds and validates a polar tuple against the elastic bounds.
    pub fn new(t0: f64, t1: f64, r0: f64, r1: f64, phi0: f64, phi1: f64) -> Result<Self> {
        let p = Self {
            t0,
            t1,
            r0,
            r1,
            phi0,
            phi1,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn isotropic(t0: f64, t1: f64) -> Result<Self> {
        Self::new(t0, t1, 0.0, 0.0, 0.0, 0.0)
    }

    /// Checks `T0 > R0 >= 0`, `T1 > 0`, `R1 >= 0` and `Delta > 0`, which together
    /// are equivalent to positive definiteness.
    pub fn validate(&self) -> Result<()> {
        let finite = [self.t0, self.t1, self.r0, self.r1, self.phi0, self.phi1]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput("polar parameters must be finite".into()));
        }
        if !(self.t0 > 0.0 && self.t1 > 0.0 && self.r0 >= 0.0 && self.r1 >= 0.0 && self.r0 < self.t0) {
            return Err(Error::NotPositiveDefinite);
        }
        let delta = self.delta();
        if !(delta > 0.0) {
            return Err(Error::SingularTensor(delta));
        }
        Ok(())
    }

    pub fn delta(&self) -> f64 {
        polar_delta(self)
    }

    /// The same tensor seen from a frame rotated by `theta`.
    pub fn rotated(&self, theta: f64) -> Self {
        Self {
            phi0: self.phi0 - theta,
            phi1: self.phi1 - theta,
            ..*self
        }
    }

    pub fn components(&self, theta: f64) -> CartesianStiffness {
        polar_to_cartesian(self, theta)
    }

    pub fn tau(&self) -> f64 {
        self.t1 / self.t0
    }

    pub fn rho(&self) -> f64 {
        self.r0 / self.t0
    }

    pub fn sigma(&self) -> f64 {
        self.r1 / self.t0
    }
}

/// Provenance of a compliance polar tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplianceSource {
    /// `t0, t1, r0, phi0` from the closed-form stiffness relations; `r1, phi1` unset.
    AnalyticPartial,
    /// All parameters from numeric inversion and harmonic fitting.
    NumericFull,
}

/// Polar parameters of the compliance tensor `S = Q^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarCompliance {
    pub t0c: f64,
    pub t1c: f64,
    pub r0c: f64,
    pub r1c: Option<f64>,
    pub phi0c: f64,
    pub phi1c: Option<f64>,
    pub source: ComplianceSource,
}

/// Special elastic symmetry detected on a stiffness tensor.
///
/// Variants name the algebraic condition that holds (`R0 = 0`, `R1 = 0`,
/// `r0 = 0` on the compliance) rather than a descriptive family name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryKind {
    GenericAnisotropic,
    OrdinaryOrthotropic,
    R0Zero,
    R1Zero,
    ComplianceR0Zero,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryClass {
    pub kind: SymmetryKind,
    pub r0_zero: bool,
    pub r1_zero: bool,
    pub compliance_r0_zero: bool,
    /// `K` of ordinary orthotropy (`Phi0 - Phi1 = K pi/4`), present only when
    /// both anisotropic moduli are nonzero.
    pub k: Option<u8>,
}

/// Polar parameters of an orthotropic ply given in its symmetry frame.
pub fn cartesian_to_polar(q: &CartesianStiffness) -> Result<PolarStiffness> {
    let coupling = q.coupling_ratio();
    if coupling > ORTHOTROPY_FRAME_TOL {
        return Err(Error::NotInOrthotropyFrame(q.q16.abs() + q.q26.abs()));
    }
    q.check_positive_definite()?;

    let a0 = q.q11 - 2.0 * q.q12 - 2.0 * q.q66 + q.q22;
    let a1 = q.q11 - q.q22;
    let p = PolarStiffness {
        t0: (q.q11 - 2.0 * q.q12 + 2.0 * q.q66 + q.q22) / 8.0,
        t1: (q.q11 + 2.0 * q.q12 + q.q22) / 8.0,
        r0: a0.abs() / 8.0,
        r1: a1.abs() / 8.0,
        phi0: if a0 < 0.0 { FRAC_PI_4 } else { 0.0 },
        phi1: if a1 < 0.0 { FRAC_PI_2 } else { 0.0 },
    };
    p.validate()?;
    Ok(p)
}

/// Kelvin components of `p` in the frame rotated by `theta`.
pub fn polar_to_cartesian(p: &PolarStiffness, theta: f64) -> CartesianStiffness {
    let (s4, c4) = (4.0 * (p.phi0 - theta)).sin_cos();
    let (s2, c2) = (2.0 * (p.phi1 - theta)).sin_cos();
    let iso = p.t0 + 2.0 * p.t1;
    CartesianStiffness {
        q11: iso + p.r0 * c4 + 4.0 * p.r1 * c2,
        q12: -p.t0 + 2.0 * p.t1 - p.r0 * c4,
        q16: SQRT_2 * (p.r0 * s4 + 2.0 * p.r1 * s2),
        q22: iso + p.r0 * c4 - 4.0 * p.r1 * c2,
        q26: SQRT_2 * (-p.r0 * s4 + 2.0 * p.r1 * s2),
        q66: 2.0 * (p.t0 - p.r0 * c4),
    }
}

/// `Delta = 4 T1 (T0^2 - R0^2) - 8 R1^2 [T0 - R0 cos4(Phi0 - Phi1)]`.
///
/// The determinant of the Kelvin matrix equals `4 Delta`.
pub fn polar_delta(p: &PolarStiffness) -> f64 {
    4.0 * p.t1 * (p.t0 * p.t0 - p.r0 * p.r0) - 8.0 * p.r1 * p.r1 * (p.t0 - p.r0 * (4.0 * (p.phi0 - p.phi1)).cos())
}

/// Closed-form compliance moduli `t0, t1, r0, phi0` of `S = Q^-1`.
///
/// The normalizer is `2 Delta`, which makes the returned moduli the polar
/// parameters of the Kelvin compliance matrix.
pub fn compliance_polar_partial(p: &PolarStiffness) -> Result<PolarCompliance> {
    let delta = polar_delta(p);
    if !(delta > 0.0) {
        return Err(Error::SingularTensor(delta));
    }
    let norm = 2.0 * delta;
    let r1sq = p.r1 * p.r1;
    let (s1, c1) = (4.0 * p.phi1).sin_cos();
    let (s0, c0) = (4.0 * p.phi0).sin_cos();
    let re = 2.0 * (r1sq * c1 - p.t1 * p.r0 * c0) / norm;
    let im = 2.0 * (r1sq * s1 - p.t1 * p.r0 * s0) / norm;
    let r0c = re.hypot(im);
    Ok(PolarCompliance {
        t0c: 2.0 * (p.t0 * p.t1 - r1sq) / norm,
        t1c: (p.t0 * p.t0 - p.r0 * p.r0) / (2.0 * norm),
        r0c,
        r1c: None,
        phi0c: if r0c > 0.0 { im.atan2(re) / 4.0 } else { 0.0 },
        phi1c: None,
        source: ComplianceSource::AnalyticPartial,
    })
}

/// Compliance components of `p` in the frame rotated by `theta`.
pub fn compliance_numeric(p: &PolarStiffness, theta: f64) -> Result<ComplianceComponents> {
    let delta = polar_delta(p);
    if !(delta > 0.0) {
        return Err(Error::SingularTensor(delta));
    }
    polar_to_cartesian(p, theta).inverse()
}

/// Full compliance polar tuple from numeric inversion.
///
/// `t0, t1` come from the rotation-invariant combinations of the compliance
/// components; the anisotropic moduli and angles from a harmonic fit of
/// `S11(theta)` on eight equally spaced angles.
pub fn compliance_polar_full(p: &PolarStiffness) -> Result<PolarCompliance> {
    let s = compliance_numeric(p, 0.0)?;
    let mut samples = [0.0; HARMONIC_SAMPLES];
    for (k, v) in samples.iter_mut().enumerate() {
        *v = compliance_numeric(p, harmonic_angle(k))?.s11;
    }
    let fit = HarmonicFit::from_samples(&samples);
    let (r0c, phi0c) = fit.fourth();
    let (r1c4, phi1c) = fit.second();
    Ok(PolarCompliance {
        t0c: (s.s11 - 2.0 * s.s12 + 2.0 * s.s66 + s.s22) / 8.0,
        t1c: (s.s11 + 2.0 * s.s12 + s.s22) / 8.0,
        r0c,
        r1c: Some(r1c4 / 4.0),
        phi0c,
        phi1c: Some(phi1c),
        source: ComplianceSource::NumericFull,
    })
}

/// Polar parameters of a stiffness given in an arbitrary frame.
///
/// `T0, T1` are the invariant combinations; `R0, Phi0, R1, Phi1` come from a
/// harmonic fit of `Q11` over rotated frames.
pub fn polar_from_components(q: &CartesianStiffness) -> PolarStiffness {
    let mut samples = [0.0; HARMONIC_SAMPLES];
    for (k, v) in samples.iter_mut().enumerate() {
        *v = q.rotated(harmonic_angle(k)).q11;
    }
    let fit = HarmonicFit::from_samples(&samples);
    let (r0, phi0) = fit.fourth();
    let (r1x4, phi1) = fit.second();
    PolarStiffness {
        t0: (q.q11 - 2.0 * q.q12 + 2.0 * q.q66 + q.q22) / 8.0,
        t1: (q.q11 + 2.0 * q.q12 + q.q22) / 8.0,
        r0,
        r1: r1x4 / 4.0,
        phi0,
        phi1,
    }
}

const HARMONIC_SAMPLES: usize = 8;

fn harmonic_angle(k: usize) -> f64 {
    k as f64 * PI / HARMONIC_SAMPLES as f64
}

/// Least-squares fit of `a0 + a2 cos2t + b2 sin2t + a4 cos4t + b4 sin4t` on
/// eight samples over `[0, pi)`; exact for signals with those harmonics only.
struct HarmonicFit {
    a2: f64,
    b2: f64,
    a4: f64,
    b4: f64,
}

impl HarmonicFit {
    fn from_samples(samples: &[f64; HARMONIC_SAMPLES]) -> Self {
        let n = HARMONIC_SAMPLES as f64;
        let mut fit = Self {
            a2: 0.0,
            b2: 0.0,
            a4: 0.0,
            b4: 0.0,
        };
        for (k, v) in samples.iter().enumerate() {
            let t = harmonic_angle(k);
            fit.a2 += v * (2.0 * t).cos();
            fit.b2 += v * (2.0 * t).sin();
            fit.a4 += v * (4.0 * t).cos();
            fit.b4 += v * (4.0 * t).sin();
        }
        fit.a2 *= 2.0 / n;
        fit.b2 *= 2.0 / n;
        fit.a4 *= 2.0 / n;
        fit.b4 *= 2.0 / n;
        fit
    }

    /// Amplitude and phase of the `cos4(phi - t)` term.
    fn fourth(&self) -> (f64, f64) {
        let amp = self.a4.hypot(self.b4);
        let phase = if amp > 0.0 { self.b4.atan2(self.a4) / 4.0 } else { 0.0 };
        (amp, phase)
    }

    /// Amplitude and phase of the `cos2(phi - t)` term.
    fn second(&self) -> (f64, f64) {
        let amp = self.a2.hypot(self.b2);
        let phase = if amp > 0.0 { self.b2.atan2(self.a2) / 2.0 } else { 0.0 };
        (amp, phase)
    }
}

/// Detects special symmetries on invariants normalized by `T0`.
pub fn classify_symmetry(p: &PolarStiffness, tol: f64) -> SymmetryClass {
    let r0_zero = p.r0 < tol * p.t0;
    let r1_zero = p.r1 < tol * p.t0;
    let compliance_r0_zero = match compliance_polar_partial(p) {
        Ok(c) => c.r0c < tol * c.t0c,
        Err(_) => false,
    };
    let ordinary = (4.0 * (p.phi0 - p.phi1)).sin().abs() < tol;
    let k = if !r0_zero && !r1_zero && ordinary {
        let steps = (4.0 * (p.phi0 - p.phi1) / PI).round() as i64;
        Some(steps.rem_euclid(2) as u8)
    } else {
        None
    };
    let kind = if r0_zero && r1_zero {
        SymmetryKind::Isotropic
    } else if r1_zero {
        SymmetryKind::R1Zero
    } else if r0_zero {
        SymmetryKind::R0Zero
    } else if compliance_r0_zero {
        SymmetryKind::ComplianceR0Zero
    } else if ordinary {
        SymmetryKind::OrdinaryOrthotropic
    } else {
        SymmetryKind::GenericAnisotropic
    };
    SymmetryClass {
        kind,
        r0_zero,
        r1_zero,
        compliance_r0_zero,
        k,
    }
}
