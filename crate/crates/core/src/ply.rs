//! Orthotropic plies: technical moduli, stiffness, and the dimensionless
//! parameters used by the auxeticity region tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polar::{cartesian_to_polar, polar_to_cartesian, CartesianStiffness, PolarStiffness, ORTHOTROPY_FRAME_TOL};

/// Engineering constants of an orthotropic ply in its symmetry frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TechnicalModuli {
    pub e1: f64,
    pub e2: f64,
    pub nu12: f64,
    pub g12: f64,
}

impl TechnicalModuli {
    pub fn new(e1: f64, e2: f64, nu12: f64, g12: f64) -> Self {
        Self { e1, e2, nu12, g12 }
    }

    /// Minor Poisson's ratio from reciprocity `nu21 / E2 = nu12 / E1`.
    pub fn nu21(&self) -> f64 {
        self.nu12 * self.e2 / self.e1
    }

    /// Shear modulus of the isotropic material with `E1` and `nu12`.
    pub fn g_iso(&self) -> f64 {
        self.e1 / (2.0 * (1.0 + self.nu12))
    }
}

pub fn moduli_to_stiffness(m: &TechnicalModuli) -> Result<CartesianStiffness> {
    if !(m.e1 > 0.0 && m.e2 > 0.0 && m.g12 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "moduli must be positive (E1 = {}, E2 = {}, G12 = {})",
            m.e1, m.e2, m.g12
        )));
    }
    let d = 1.0 - m.nu12 * m.nu21();
    if !(d > 0.0) {
        return Err(Error::ReciprocityViolation(d));
    }
    let q = CartesianStiffness::orthotropic(m.e1 / d, m.nu12 * m.e2 / d, m.e2 / d, 2.0 * m.g12);
    q.check_positive_definite()?;
    Ok(q)
}

pub fn stiffness_to_moduli(q: &CartesianStiffness) -> Result<TechnicalModuli> {
    let scale = q.q11.abs() + q.q22.abs() + q.q66.abs();
    if q.q16.abs() + q.q26.abs() > ORTHOTROPY_FRAME_TOL * scale {
        return Err(Error::NotInOrthotropyFrame(q.q16.abs() + q.q26.abs()));
    }
    q.check_positive_definite()?;
    Ok(TechnicalModuli {
        e1: q.q11 - q.q12 * q.q12 / q.q22,
        e2: q.q22 - q.q12 * q.q12 / q.q11,
        nu12: q.q12 / q.q22,
        g12: q.q66 / 2.0,
    })
}

/// A ply held in three consistent representations, in its symmetry frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ply {
    pub polar: PolarStiffness,
    pub cartesian: CartesianStiffness,
    pub moduli: TechnicalModuli,
    /// Rotation (radians) applied to bring a polar input into its symmetry frame.
    pub frame_rotation: f64,
}

impl Ply {
    pub fn from_moduli(m: TechnicalModuli) -> Result<Self> {
        let cartesian = moduli_to_stiffness(&m)?;
        let polar = cartesian_to_polar(&cartesian)?;
        Ok(Self {
            polar,
            cartesian,
            moduli: m,
            frame_rotation: 0.0,
        })
    }

    pub fn from_cartesian(q: CartesianStiffness) -> Result<Self> {
        let polar = cartesian_to_polar(&q)?;
        let moduli = stiffness_to_moduli(&q)?;
        Ok(Self {
            polar,
            cartesian: q,
            moduli,
            frame_rotation: 0.0,
        })
    }

    /// Rotates `p` into a symmetry frame (`Phi1 = 0`, or `Phi0 = 0` when `R1`
    /// vanishes) and fills in the other representations.
    pub fn from_polar(p: PolarStiffness, tol: f64) -> Result<Self> {
        p.validate()?;
        let angle = if p.r1 > tol * p.t0 {
            p.phi1
        } else if p.r0 > tol * p.t0 {
            p.phi0
        } else {
            0.0
        };
        let mut q = polar_to_cartesian(&p, angle);
        let scale = q.q11.abs() + q.q22.abs() + q.q66.abs();
        let coupling = q.q16.abs() + q.q26.abs();
        if coupling > tol.max(ORTHOTROPY_FRAME_TOL) * scale {
            return Err(Error::NotInOrthotropyFrame(coupling));
        }
        q.q16 = 0.0;
        q.q26 = 0.0;
        let polar = cartesian_to_polar(&q)?;
        let moduli = stiffness_to_moduli(&q)?;
        Ok(Self {
            polar,
            cartesian: q,
            moduli,
            frame_rotation: angle,
        })
    }

    pub fn dimensionless(&self, tol: f64) -> DimensionlessPly {
        dimensionless(&self.polar, &self.cartesian, &self.moduli, tol)
    }
}

/// Dimensionless ply parameters. Fields that do not apply are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessPly {
    /// `T1 / T0`
    pub tau: f64,
    /// `R0 / T0`
    pub rho: f64,
    /// `R1 / T0`
    pub sigma: f64,
    /// `Q12 / Q22`
    pub alpha: f64,
    /// `Q66 / Q22`
    pub beta: f64,
    /// `G12 / E2`
    pub gamma: f64,
    /// `G12 / G_iso`, defined only for `R1 = 0` plies.
    pub big_gamma: Option<f64>,
    /// `E1 / E2`, always `>= 1`.
    pub epsilon: f64,
    /// Set when the input had `E1 < E2` and was turned by `pi/2`.
    pub frame_flipped: bool,
}

/// Dimensionless parameters of a consistent (polar, Cartesian, moduli) triple.
pub fn dimensionless(p: &PolarStiffness, q: &CartesianStiffness, m: &TechnicalModuli, tol: f64) -> DimensionlessPly {
    let frame_flipped = m.e1 < m.e2;
    let (q, m) = if frame_flipped {
        (
            CartesianStiffness::orthotropic(q.q22, q.q12, q.q11, q.q66),
            TechnicalModuli::new(m.e2, m.e1, m.nu21(), m.g12),
        )
    } else {
        (*q, *m)
    };
    let big_gamma = (p.r1 < tol * p.t0).then(|| m.g12 / m.g_iso());
    DimensionlessPly {
        tau: p.t1 / p.t0,
        rho: p.r0 / p.t0,
        sigma: p.r1 / p.t0,
        alpha: q.q12 / q.q22,
        beta: q.q66 / q.q22,
        gamma: m.g12 / m.e2,
        big_gamma,
        epsilon: m.e1 / m.e2,
        frame_flipped,
    }
}

/// Which special orthotropy a synthesized ply carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlyFamily {
    /// `R1 = 0`, square symmetry.
    R1Zero,
    /// `R0 = 0`.
    R0Zero,
    /// `r0 = 0` on the compliance.
    ComplianceR0Zero,
}

impl PlyFamily {
    /// Synthesizes a ply from its dimensionless pair and the scale `T0`.
    ///
    /// The second parameter is `rho` for `R1Zero` and `ComplianceR0Zero`, and
    /// `sigma` for `R0Zero`.
    pub fn synthesize(self, tau: f64, second: f64, t0: f64) -> Result<PolarStiffness> {
        match self {
            PlyFamily::R1Zero => r1zero_ply(tau, second, t0),
            PlyFamily::R0Zero => r0zero_ply(tau, second, t0),
            PlyFamily::ComplianceR0Zero => r0compliance_ply(tau, second, t0),
        }
    }
}

/// Square-symmetric ply with `T1 = tau T0`, `R0 = rho T0`, `Phi0 = 0`.
pub fn r1zero_ply(tau: f64, rho: f64, t0: f64) -> Result<PolarStiffness> {
    check_r1zero_bounds(tau, rho)?;
    positive_scale(t0)?;
    PolarStiffness::new(t0, tau * t0, rho * t0, 0.0, 0.0, 0.0)
}

/// `R0 = 0` ply with `T1 = tau T0`, `R1 = sigma T0`, `Phi1 = 0`.
pub fn r0zero_ply(tau: f64, sigma: f64, t0: f64) -> Result<PolarStiffness> {
    check_r0zero_bounds(tau, sigma)?;
    positive_scale(t0)?;
    PolarStiffness::new(t0, tau * t0, 0.0, sigma * t0, 0.0, 0.0)
}

/// Ply with `r0 = 0`: `R0 = rho T0`, `R1^2 = T1 R0`, `Phi0 = Phi1 = 0`.
pub fn r0compliance_ply(tau: f64, rho: f64, t0: f64) -> Result<PolarStiffness> {
    check_r1zero_bounds(tau, rho)?;
    positive_scale(t0)?;
    PolarStiffness::new(t0, tau * t0, rho * t0, (tau * rho).sqrt() * t0, 0.0, 0.0)
}

/// Elastic domain of `R1 = 0` plies: `tau > 0`, `0 < rho < 1`.
pub fn check_r1zero_bounds(tau: f64, rho: f64) -> Result<()> {
    if tau > 0.0 && rho > 0.0 && rho < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfElasticDomain(format!(
            "need tau > 0 and 0 < rho < 1, got tau = {tau}, rho = {rho}"
        )))
    }
}

/// Elastic domain of `R0 = 0` plies: `tau > 2 sigma^2`, `sigma > 0`.
pub fn check_r0zero_bounds(tau: f64, sigma: f64) -> Result<()> {
    if sigma > 0.0 && tau > 2.0 * sigma * sigma {
        Ok(())
    } else {
        Err(Error::OutOfElasticDomain(format!(
            "need sigma > 0 and tau > 2 sigma^2, got tau = {tau}, sigma = {sigma}"
        )))
    }
}

fn positive_scale(t0: f64) -> Result<()> {
    if t0 > 0.0 && t0.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("scale T0 must be positive, got {t0}")))
    }
}
