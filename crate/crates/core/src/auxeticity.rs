//! Poisson's ratio profiles, TAAL/PAAL classification, the closed-form
//! region tests of the special orthotropies and the extremal analysis.
//!
//! The sign of `nu12(theta)` is that of
//!
//! ```text
//! g(theta) = 2(T0 T1 - R1^2) - T0^2 + R0^2 + 2[R1^2 cos4(Phi1 - theta) - T1 R0 cos4(Phi0 - theta)]
//! ```
//!
//! which is a pure `4 theta` harmonic, so its extrema and the auxetic zone
//! width follow in closed form.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laminate::{homogenize_point, LaminationPoint};
use crate::ply::{check_r0zero_bounds, check_r1zero_bounds, r0zero_ply, r1zero_ply, stiffness_to_moduli, Ply};
use crate::polar::{compliance_numeric, polar_delta, polar_to_cartesian, CartesianStiffness, PolarStiffness};

/// Points of the dense angular scan over `[0, pi]`.
pub const SCAN_SAMPLES: usize = 3601;

/// Angular tolerance of the local refinement, radians.
pub const ANGLE_TOL: f64 = 1e-10;

/// Distance below which a point is considered on a region boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// `nu12 < 0` in every direction.
    #[serde(rename = "TAAL")]
    Taal,
    /// `nu12 < 0` in some directions only.
    #[serde(rename = "PAAL")]
    Paal,
    NonAuxetic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Taal => "TAAL",
            Classification::Paal => "PAAL",
            Classification::NonAuxetic => "NonAuxetic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxeticityReport {
    pub classification: Classification,
    pub nu_min: f64,
    /// Direction of `nu_min`, radians in `[0, pi)`.
    pub theta_min: f64,
    /// Measure of `{theta in [0, pi/2) : nu12(theta) < 0}`, radians.
    pub delta_alpha: f64,
    pub method: Method,
}

/// A minimum of `nu12` and the direction where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub theta: f64,
}

/// Directional technical moduli.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionalModuli {
    pub theta: f64,
    pub e1: f64,
    pub g12: f64,
    pub nu12: f64,
}

/// `nu12` in the direction `theta`, from the inverted rotated stiffness.
pub fn poisson_ratio(p: &PolarStiffness, theta: f64) -> Result<f64> {
    Ok(compliance_numeric(p, theta)?.nu12())
}

/// `(theta, nu12(theta))` with `theta = k pi / samples`, `k < samples`.
pub fn nu12_profile(p: &PolarStiffness, samples: usize) -> Result<Vec<(f64, f64)>> {
    check_samples(samples)?;
    (0..samples)
        .map(|k| {
            let theta = k as f64 * PI / samples as f64;
            poisson_ratio(p, theta).map(|nu| (theta, nu))
        })
        .collect()
}

/// `E1`, `G12`, `nu12` on `samples` directions uniformly spread over `[0, 2 pi)`.
pub fn moduli_profile(p: &PolarStiffness, samples: usize) -> Result<Vec<DirectionalModuli>> {
    check_samples(samples)?;
    (0..samples)
        .map(|k| {
            let theta = 2.0 * k as f64 * PI / samples as f64;
            let s = compliance_numeric(p, theta)?;
            Ok(DirectionalModuli {
                theta,
                e1: s.young_modulus(),
                g12: s.shear_modulus(),
                nu12: s.nu12(),
            })
        })
        .collect()
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 8 {
        return Err(Error::InvalidInput(format!(
            "at least 8 samples are needed, got {samples}"
        )));
    }
    Ok(())
}

/// The auxeticity indicator `g(theta)`; negative exactly where `nu12 < 0`.
pub fn auxeticity_indicator(p: &PolarStiffness, theta: f64) -> f64 {
    let h = Indicator::of(p);
    h.mean + h.amplitude * (4.0 * theta - h.phase).cos()
}

/// `g(theta) = mean + amplitude cos(4 theta - phase)`.
#[derive(Debug, Clone, Copy)]
struct Indicator {
    mean: f64,
    amplitude: f64,
    phase: f64,
    scale: f64,
}

impl Indicator {
    fn of(p: &PolarStiffness) -> Self {
        let r1sq = p.r1 * p.r1;
        let (s1, c1) = (4.0 * p.phi1).sin_cos();
        let (s0, c0) = (4.0 * p.phi0).sin_cos();
        let re = 2.0 * (r1sq * c1 - p.t1 * p.r0 * c0);
        let im = 2.0 * (r1sq * s1 - p.t1 * p.r0 * s0);
        Self {
            mean: 2.0 * (p.t0 * p.t1 - r1sq) - p.t0 * p.t0 + p.r0 * p.r0,
            amplitude: re.hypot(im),
            phase: im.atan2(re),
            scale: p.t0 * p.t0,
        }
    }

    fn classification(&self) -> Classification {
        let eps = BOUNDARY_TOL * self.scale;
        if self.mean + self.amplitude < -eps {
            Classification::Taal
        } else if self.mean - self.amplitude >= -eps {
            Classification::NonAuxetic
        } else {
            Classification::Paal
        }
    }

    fn delta_alpha(&self) -> f64 {
        match self.classification() {
            Classification::Taal => FRAC_PI_2,
            Classification::NonAuxetic => 0.0,
            Classification::Paal => {
                let c = (-self.mean / self.amplitude).clamp(-1.0, 1.0);
                FRAC_PI_2 - 0.5 * c.acos()
            }
        }
    }
}

/// Classification and auxetic zone width from the sign of `g`, without the
/// `nu12` minimum search.
pub fn classify_sign(p: &PolarStiffness) -> Result<(Classification, f64)> {
    check_delta(p)?;
    let h = Indicator::of(p);
    Ok((h.classification(), h.delta_alpha()))
}

/// Full report: sign classification plus the minimum of `nu12`.
pub fn classify(p: &PolarStiffness) -> Result<AuxeticityReport> {
    let (classification, delta_alpha) = classify_sign(p)?;
    let min = minimize_nu(p)?;
    Ok(AuxeticityReport {
        classification,
        nu_min: min.value,
        theta_min: min.theta,
        delta_alpha,
        method: Method::Analytic,
    })
}

/// Classification from `samples` values of `nu12` on `[0, pi)`.
pub fn classify_sampled(p: &PolarStiffness, samples: usize) -> Result<AuxeticityReport> {
    let profile = nu12_profile(p, samples)?;
    let negative = profile.iter().filter(|(_, nu)| *nu < 0.0).count();
    let classification = if negative == profile.len() {
        Classification::Taal
    } else if negative == 0 {
        Classification::NonAuxetic
    } else {
        Classification::Paal
    };
    let (theta_min, nu_min) =
        profile.iter().copied().fold(
            (0.0, f64::INFINITY),
            |best, (t, nu)| if nu < best.1 { (t, nu) } else { best },
        );
    Ok(AuxeticityReport {
        classification,
        nu_min,
        theta_min,
        // nu12 is pi-periodic and g is pi/2-periodic: the fraction over [0, pi)
        // equals the fraction over [0, pi/2).
        delta_alpha: FRAC_PI_2 * negative as f64 / profile.len() as f64,
        method: Method::Sampled,
    })
}

fn check_delta(p: &PolarStiffness) -> Result<()> {
    let delta = polar_delta(p);
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::SingularTensor(delta));
    }
    Ok(())
}

/// Global minimum of `nu12` by a dense scan and golden-section refinement.
pub fn minimize_nu(p: &PolarStiffness) -> Result<Extremum> {
    check_delta(p)?;
    let step = PI / (SCAN_SAMPLES - 1) as f64;
    let mut best = (0usize, f64::INFINITY);
    for k in 0..SCAN_SAMPLES - 1 {
        let nu = poisson_ratio(p, k as f64 * step)?;
        // ties between symmetric minima resolve to the smaller angle
        if nu < best.1 - 1e-12 * nu.abs().max(1.0) {
            best = (k, nu);
        }
    }
    let centre = best.0 as f64 * step;
    let (mut a, mut b) = (centre - step, centre + step);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = poisson_ratio(p, c)?;
    let mut fd = poisson_ratio(p, d)?;
    while b - a > ANGLE_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = poisson_ratio(p, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = poisson_ratio(p, d)?;
        }
    }
    let theta = 0.5 * (a + b);
    let value = poisson_ratio(p, theta)?.min(best.1);
    Ok(Extremum {
        value,
        theta: theta.rem_euclid(PI),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionLabel {
    A,
    B,
    C,
    T,
    P,
    None,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Admissible values of the stacking parameter relevant to a region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AdmissibleSet {
    All,
    Empty,
    Interval { lo: f64, hi: f64 },
}

impl AdmissibleSet {
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            AdmissibleSet::All => (0.0..=1.0).contains(&x),
            AdmissibleSet::Empty => false,
            AdmissibleSet::Interval { lo, hi } => x >= lo && x <= hi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionResult {
    pub label: RegionLabel,
    pub admissible: AdmissibleSet,
    /// The point lies within `BOUNDARY_TOL` of a region boundary.
    pub boundary: bool,
}

impl RegionResult {
    fn none(boundary: bool) -> Self {
        Self {
            label: RegionLabel::None,
            admissible: AdmissibleSet::Empty,
            boundary,
        }
    }
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() < BOUNDARY_TOL
}

/// Sets A (TAAL for every `xi1`) and B (TAAL for `xi1` in `[0, (1-2tau)/rho]`).
pub fn region_r1zero_taal(tau: f64, rho: f64) -> Result<RegionResult> {
    check_r1zero_bounds(tau, rho)?;
    let low = (1.0 - rho) / 2.0;
    let boundary = near(tau, low) || near(tau, 0.5);
    Ok(if tau < low - BOUNDARY_TOL {
        RegionResult {
            label: RegionLabel::A,
            admissible: AdmissibleSet::All,
            boundary,
        }
    } else if tau > low + BOUNDARY_TOL && tau < 0.5 - BOUNDARY_TOL {
        RegionResult {
            label: RegionLabel::B,
            admissible: AdmissibleSet::Interval {
                lo: 0.0,
                hi: ((1.0 - 2.0 * tau) / rho).min(1.0),
            },
            boundary,
        }
    } else {
        RegionResult::none(boundary)
    })
}

/// Set C: PAAL only, for `xi1` in `[(2tau-1)/rho, 1]`.
pub fn region_r1zero_paal(tau: f64, rho: f64) -> Result<RegionResult> {
    check_r1zero_bounds(tau, rho)?;
    let high = (1.0 + rho) / 2.0;
    let boundary = near(tau, 0.5) || near(tau, high);
    Ok(if tau > 0.5 + BOUNDARY_TOL && tau < high - BOUNDARY_TOL {
        RegionResult {
            label: RegionLabel::C,
            admissible: AdmissibleSet::Interval {
                lo: (2.0 * tau - 1.0) / rho,
                hi: 1.0,
            },
            boundary,
        }
    } else {
        RegionResult::none(boundary)
    })
}

/// Sets T (TAAL for every `xi3`) and P (PAAL for `xi3` in `[sqrt(2tau-1)/(2sigma), 1]`).
pub fn region_r0zero(tau: f64, sigma: f64) -> Result<RegionResult> {
    check_r0zero_bounds(tau, sigma)?;
    let s2 = 2.0 * sigma * sigma;
    let high = 0.5 + s2;
    let boundary = near(tau, 0.5) || near(tau, high) || near(tau, s2);
    Ok(if tau < 0.5 - BOUNDARY_TOL {
        RegionResult {
            label: RegionLabel::T,
            admissible: AdmissibleSet::All,
            boundary,
        }
    } else if tau > 0.5_f64.max(s2) + BOUNDARY_TOL && tau < high - BOUNDARY_TOL {
        RegionResult {
            label: RegionLabel::P,
            admissible: AdmissibleSet::Interval {
                lo: (2.0 * tau - 1.0).sqrt() / (2.0 * sigma),
                hi: 1.0,
            },
            boundary,
        }
    } else {
        RegionResult::none(boundary)
    })
}

/// One formulation of a region test and its outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub form: &'static str,
    pub holds: bool,
}

/// All formulations of the membership test for one region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsVerdict {
    pub region: RegionLabel,
    /// Outcome of the dimensionless polar predicate.
    pub reference: bool,
    pub forms: Vec<BoundCheck>,
}

impl BoundsVerdict {
    pub fn unanimous(&self) -> bool {
        self.forms.iter().all(|f| f.holds == self.reference)
    }

    pub fn disagreements(&self) -> Vec<&'static str> {
        self.forms
            .iter()
            .filter(|f| f.holds != self.reference)
            .map(|f| f.form)
            .collect()
    }
}

fn check(form: &'static str, holds: bool) -> BoundCheck {
    BoundCheck { form, holds }
}

/// Sets A, B and C in the polar, Cartesian, `(alpha, beta)`, `(alpha, gamma)`,
/// `(alpha, Gamma)` and technical-moduli formulations.
pub fn equivalent_bounds_r1zero(ply: &Ply, tol: f64) -> Result<Vec<BoundsVerdict>> {
    let p = ply.polar;
    if p.r1 >= tol * p.t0 {
        return Err(Error::OutOfRegion(format!("R1 = {} is not zero", p.r1)));
    }
    let (tau, rho) = (p.tau(), p.rho());
    let q = ply.cartesian;
    let m = ply.moduli;
    let (q11, q12, q66) = (q.q11, q.q12, q.q66);
    let alpha = q12 / q.q22;
    let beta = q66 / q.q22;
    let nu = m.nu12;
    let e1 = m.e1;
    let g = m.g12;
    let gamma = g / e1;
    let big_gamma = g / m.g_iso();

    let q_base = q11 + 3.0 * q12;
    let q_abs = (q11 - q12 - q66).abs();
    let ab_base = 1.0 + 3.0 * alpha;
    let ab_abs = (1.0 - alpha - beta).abs();
    let k = (1.0 + 3.0 * alpha) / (2.0 * (1.0 - alpha * alpha));
    let ag_abs = (1.0 / (2.0 * (1.0 + alpha)) - gamma).abs();
    let kk = (1.0 + 3.0 * alpha) / (1.0 - alpha);
    let big_abs = (1.0 - big_gamma).abs();
    let km = (1.0 + 3.0 * nu) / (2.0 * (1.0 - nu * nu)) * e1;
    let m_abs = (e1 / (2.0 * (1.0 + nu)) - g).abs();

    let a = BoundsVerdict {
        region: RegionLabel::A,
        reference: tau < (1.0 - rho) / 2.0,
        forms: vec![
            check("cartesian", q66 > q_base + q_abs),
            check("alpha-beta", beta > ab_base + ab_abs),
            check("alpha-gamma", gamma > k + ag_abs),
            check("alpha-Gamma", big_gamma > kk + big_abs),
            check("moduli", g > km + m_abs),
        ],
    };
    let b = BoundsVerdict {
        region: RegionLabel::B,
        reference: (1.0 - rho) / 2.0 < tau && tau < 0.5,
        forms: vec![
            check("cartesian", q_base < q66 && q66 < q_base + q_abs),
            check("alpha-beta", ab_base < beta && beta < ab_base + ab_abs),
            check("alpha-gamma", k < gamma && gamma < k + ag_abs),
            check("alpha-Gamma", kk < big_gamma && big_gamma < kk + big_abs),
            check("moduli", km < g && g < km + m_abs),
        ],
    };
    let c = BoundsVerdict {
        region: RegionLabel::C,
        reference: 0.5 < tau && tau < (1.0 + rho) / 2.0,
        forms: vec![
            check("cartesian", q66 < q_base && q_base < q66 + q_abs),
            check("alpha-beta", beta < ab_base && ab_base < beta + ab_abs),
            check("alpha-gamma", gamma < k && k < gamma + ag_abs),
            check("alpha-Gamma", big_gamma < kk && kk < big_gamma + big_abs),
            check("moduli", g < km && km < g + m_abs),
        ],
    };
    Ok(vec![a, b, c])
}

/// Sets T and P in the polar, Cartesian (long and short), `(alpha, beta)`,
/// `(alpha, epsilon)` and technical-moduli (long and short) formulations.
///
/// The Cartesian and moduli forms are evaluated in the frame where `E1 >= E2`.
pub fn equivalent_bounds_r0zero(ply: &Ply, tol: f64) -> Result<Vec<BoundsVerdict>> {
    let p = ply.polar;
    if p.r0 >= tol * p.t0 {
        return Err(Error::OutOfRegion(format!("R0 = {} is not zero", p.r0)));
    }
    let (tau, sigma) = (p.tau(), p.sigma());
    let mut q = polar_to_cartesian(&p, p.phi1);
    q.q16 = 0.0;
    q.q26 = 0.0;
    let m = stiffness_to_moduli(&q)?;
    let CartesianStiffness { q11, q12, q22, q66, .. } = q;
    let alpha = q12 / q22;
    let beta = q66 / q22;
    let eps = q11 / q22;
    let (e1, e2, g, nu) = (m.e1, m.e2, m.g12, m.nu12);

    let l1 = q11 * q11 - 6.0 * q11 * q22 + q22 * q22 + 4.0 * q12 * q12 - 2.0 * q66 * (q11 + 2.0 * q12 + q22);
    let l2 = q11 + 6.0 * q12 + q22 - 2.0 * q66;
    let l3 = 3.0 * q11 * q11 + 12.0 * q12 * q12 + 3.0 * q22 * q22 + 4.0 * q66 * q66
        - 2.0 * q11 * (2.0 * q12 + 5.0 * q22)
        - 4.0 * q12 * (q22 + 4.0 * q66);
    let simple_elastic = 2.0 * q22 * q66 > (q12 - q22).powi(2);

    let m1 = e1.powi(3) - 2.0 * e1 * e1 * (3.0 * e2 + 2.0 * g)
        + 4.0 * e2 * e2 * g * nu * nu * (1.0 + 2.0 * nu)
        + e1 * e2 * (e2 - 4.0 * g * (1.0 + 2.0 * nu) + 4.0 * (e2 + g) * nu * nu);
    let m2 = (e1 * (e1 + e2 - 4.0 * g) + 6.0 * e1 * e2 * nu + 4.0 * e2 * g * nu * nu) / (e1 - e2 * nu * nu);
    let m3 = 3.0 * e1.powi(4) + 16.0 * e2 * e2 * g * g * nu.powi(4)
        - 2.0 * e1.powi(3) * e2 * (5.0 + 2.0 * nu)
        - 32.0 * e1 * e2 * g * nu * nu * (g - nu * e2)
        - e1 * e1 * (32.0 * e2 * g * nu - 16.0 * g * g + e2 * e2 * (4.0 * (1.0 - 3.0 * nu) * nu - 3.0));

    let t = BoundsVerdict {
        region: RegionLabel::T,
        reference: 2.0 * sigma * sigma < tau && tau < 0.5,
        forms: vec![
            check("cartesian", l1 < 0.0 && l2 < 0.0),
            check("cartesian-simple", q12 < 0.0 && simple_elastic),
            check("alpha-beta", alpha < 0.0 && beta > 0.5 * (alpha - 1.0).powi(2)),
            check("alpha-epsilon", alpha < 0.0 && eps > alpha * alpha),
            check("moduli", m1 < 0.0 && m2 < 0.0),
            check("moduli-simple", nu < 0.0 && e1 > nu * nu * e2),
        ],
    };
    let s2 = 2.0 * sigma * sigma;
    let pv = BoundsVerdict {
        region: RegionLabel::P,
        reference: 0.5_f64.max(s2) < tau && tau < 0.5 + s2,
        forms: vec![
            check("cartesian", l2 > 0.0 && l1 < 0.0 && l3 > 0.0),
            check(
                "cartesian-simple",
                q12 > 0.0 && simple_elastic && (q12 - q22).powi(2) + (q66 - q22).powi(2) > q22 * q22,
            ),
            check(
                "alpha-beta",
                alpha > 0.0 && beta > 0.5 * (alpha - 1.0).powi(2) && (alpha - 1.0).powi(2) + (beta - 1.0).powi(2) > 1.0,
            ),
            check(
                "alpha-epsilon",
                alpha > 0.0
                    && eps > alpha * alpha
                    && 8.0 * alpha * alpha + (eps - 1.0).powi(2) - 4.0 * alpha * (1.0 + eps) > 0.0,
            ),
            check("moduli", m1 < 0.0 && m2 > 0.0 && m3 > 0.0),
            check(
                "moduli-simple",
                nu > 0.0
                    && e1 > nu * nu * e2
                    && (e1 - e2).powi(2) - 4.0 * nu * e2 * (e1 + e2) + 8.0 * nu * nu * e2 * e2 > 0.0,
            ),
        ],
    };
    Ok(vec![t, pv])
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} = {x} is outside [-1, 1]")))
    }
}

/// Minimum of `nu12` of an `R1 = 0` laminate with lamination parameter `xi1`.
pub fn min_nu_r1zero(tau: f64, rho: f64, xi1: f64) -> Result<Extremum> {
    check_unit("xi1", xi1)?;
    let ply = r1zero_ply(tau, rho, 1.0)?;
    minimize_nu(&homogenize_point(&ply, &LaminationPoint::orthotropic(xi1, 0.0)))
}

/// Closed-form stationary values of `nu12` for `R1 = 0` laminates:
/// `xi1 = 0` (isotropic), `theta = 0` and `theta = pi/4` at `xi1 = 1`.
pub fn r1zero_candidates(tau: f64, rho: f64) -> [f64; 3] {
    [
        (2.0 * tau - 1.0) / (2.0 * tau + 1.0),
        (2.0 * tau - 1.0 + rho * rho - 2.0 * tau * rho) / (2.0 * tau + 1.0 - rho * rho - 2.0 * tau * rho),
        (2.0 * tau - 1.0 + rho * rho + 2.0 * tau * rho) / (2.0 * tau + 1.0 - rho * rho + 2.0 * tau * rho),
    ]
}

/// `lambda(xi1) = (2tau - 1 + rho^2 xi1^2) / (2 tau rho xi1)`: the laminate is
/// auxetic where `cos 4 theta > lambda`.
pub fn zone_threshold(tau: f64, rho: f64, xi1: f64) -> f64 {
    (2.0 * tau - 1.0 + rho * rho * xi1 * xi1) / (2.0 * tau * rho * xi1)
}

/// Result of the auxetic-zone maximization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneOptimum {
    /// Optimal stacking parameter (`xi1` or `xi3`).
    pub xi_opt: f64,
    /// Minimum of the zone threshold; `None` where no threshold applies.
    pub lambda_min: Option<f64>,
    /// Zone width at the optimum, radians.
    pub delta_alpha: f64,
    /// Zone width of the single ply (stack of parallel plies), radians.
    pub single_ply_delta_alpha: f64,
    /// The single ply is already optimal.
    pub single_ply_optimal: bool,
    /// The optimum is a TAAL.
    pub taal: bool,
    /// Angle `delta` of the balanced angle-ply `[+delta, -delta]` realizing the optimum.
    pub angle_ply_delta: f64,
}

/// Stacking parameter `xi1` maximizing the auxetic zone of `R1 = 0` laminates.
pub fn maximize_auxetic_zone_r1zero(tau: f64, rho: f64) -> Result<ZoneOptimum> {
    let region = if region_r1zero_taal(tau, rho)?.label == RegionLabel::B {
        RegionLabel::B
    } else {
        region_r1zero_paal(tau, rho)?.label
    };
    let single = 0.5 * zone_threshold(tau, rho, 1.0).clamp(-1.0, 1.0).acos();
    let (xi, lambda, single_ply_optimal) = match region {
        // every xi1 in (0, (1 - 2tau)/rho] gives lambda <= -1; report the
        // largest, closest to the single ply
        RegionLabel::B => ((1.0 - 2.0 * tau) / rho, -1.0, false),
        RegionLabel::C => {
            let root = (2.0 * tau - 1.0).sqrt();
            if rho > root {
                (root / rho, root / tau, false)
            } else {
                (1.0, zone_threshold(tau, rho, 1.0), true)
            }
        }
        _ => return Err(Error::NotInBorC { tau, rho }),
    };
    Ok(ZoneOptimum {
        xi_opt: xi,
        lambda_min: Some(lambda),
        delta_alpha: 0.5 * lambda.clamp(-1.0, 1.0).acos(),
        single_ply_delta_alpha: single,
        single_ply_optimal,
        taal: region == RegionLabel::B,
        angle_ply_delta: 0.25 * xi.clamp(-1.0, 1.0).acos(),
    })
}

fn require_r0_region(tau: f64, sigma: f64, allowed: &[RegionLabel]) -> Result<RegionResult> {
    let r = region_r0zero(tau, sigma)?;
    if allowed.contains(&r.label) {
        Ok(r)
    } else {
        Err(Error::OutOfRegion(format!(
            "(tau, sigma) = ({tau}, {sigma}) is in region {}",
            r.label
        )))
    }
}

/// Minimum of `nu12` of an `R0 = 0` laminate with lamination parameter `xi3`.
pub fn min_nu_r0zero(tau: f64, sigma: f64, xi3: f64) -> Result<Extremum> {
    check_unit("xi3", xi3)?;
    require_r0_region(tau, sigma, &[RegionLabel::T, RegionLabel::P])?;
    let ply = r0zero_ply(tau, sigma, 1.0)?;
    minimize_nu(&homogenize_point(&ply, &LaminationPoint::orthotropic(0.0, xi3)))
}

/// `nu_min = 1 - 1/sqrt(2tau - 4 sigma^2 xi3^2)` at
/// `theta = arccos[(1 - sqrt(2tau - 4 sigma^2 xi3^2)) / (2 sigma xi3)] / 2`,
/// when that direction exists.
pub fn min_nu_r0zero_analytic(tau: f64, sigma: f64, xi3: f64) -> Option<Extremum> {
    let radicand = 2.0 * tau - 4.0 * sigma * sigma * xi3 * xi3;
    if !(radicand > 0.0) || xi3 == 0.0 {
        return None;
    }
    let root = radicand.sqrt();
    let c = (1.0 - root) / (2.0 * sigma * xi3.abs());
    (-1.0..=1.0).contains(&c).then(|| Extremum {
        value: 1.0 - 1.0 / root,
        theta: 0.5 * c.acos(),
    })
}

/// Auxetic zone width of an `R0 = 0` laminate, radians.
pub fn auxetic_zone_r0zero(tau: f64, sigma: f64, xi3: f64) -> Result<f64> {
    check_unit("xi3", xi3)?;
    require_r0_region(tau, sigma, &[RegionLabel::P])?;
    let x2 = xi3 * xi3;
    if x2 == 0.0 {
        return Ok(if 1.0 - 2.0 * tau > 0.0 { FRAC_PI_2 } else { 0.0 });
    }
    let psi = (1.0 - 2.0 * tau + 2.0 * sigma * sigma * x2) / (2.0 * sigma * sigma * x2);
    Ok(FRAC_PI_2 - 0.5 * psi.clamp(-1.0, 1.0).acos())
}

/// Zone maximization for `R0 = 0` laminates: the zone grows with `xi3`, so
/// the single ply (`xi3 = 1`) is always optimal.
pub fn maximize_auxetic_zone_r0zero(tau: f64, sigma: f64) -> Result<ZoneOptimum> {
    let dalpha = auxetic_zone_r0zero(tau, sigma, 1.0)?;
    Ok(ZoneOptimum {
        xi_opt: 1.0,
        lambda_min: None,
        delta_alpha: dalpha,
        single_ply_delta_alpha: dalpha,
        single_ply_optimal: true,
        taal: false,
        angle_ply_delta: 0.0,
    })
}

/// Total auxeticity of an `r0 = 0` ply: `tau < (1 + rho)/2`.
pub fn r0_auxetic(tau: f64, rho: f64) -> bool {
    tau < (1.0 + rho) / 2.0
}

/// Checks `R0 T1 = R1^2` (relative `tol`) and `Phi0 = Phi1` modulo `pi/4`,
/// then applies [`r0_auxetic`].
pub fn r0_auxetic_ply(p: &PolarStiffness, tol: f64) -> Result<bool> {
    let a = p.r0 * p.t1;
    let b = p.r1 * p.r1;
    let mismatch = (a - b).abs() / a.max(b).max(f64::MIN_POSITIVE);
    let aligned = (4.0 * (p.phi0 - p.phi1)).sin().abs() < tol.max(1e-9) && (4.0 * (p.phi0 - p.phi1)).cos() > 0.0;
    if mismatch > tol || !aligned {
        return Err(Error::NotR0Compliant(mismatch));
    }
    Ok(r0_auxetic(p.tau(), p.rho()))
}

/// Range of `xi3` (with `xi1 = xi3^2`) giving totally auxetic `r0 = 0` laminates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct R0Design {
    pub xi3_lo: f64,
    pub xi3_hi: f64,
    /// The lower end is excluded.
    pub lo_open: bool,
}

impl R0Design {
    pub fn contains(&self, xi3: f64) -> bool {
        let above = if self.lo_open {
            xi3 > self.xi3_lo
        } else {
            xi3 >= self.xi3_lo
        };
        above && xi3 <= self.xi3_hi
    }
}

pub fn r0_laminate_design(tau: f64, rho: f64) -> Result<R0Design> {
    let bound = (1.0 + rho) / 2.0;
    if !r0_auxetic(tau, rho) {
        return Err(Error::NotAuxeticPly { tau, bound });
    }
    Ok(if tau >= 0.5 {
        R0Design {
            xi3_lo: ((2.0 * tau - 1.0) / rho).sqrt(),
            xi3_hi: 1.0,
            lo_open: true,
        }
    } else {
        R0Design {
            xi3_lo: 0.0,
            xi3_hi: 1.0,
            lo_open: false,
        }
    })
}
