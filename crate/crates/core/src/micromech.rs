//! Fibre/matrix homogenization into plies with special orthotropies and
//! existence scans over the constituent space `(E, nu, v_f)`.
//!
//! All moduli are in units of the matrix Young's modulus. `E = E_f / E_m`
//! and `nu = nu_f / nu_m` are the constituent ratios.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::auxeticity::{region_r0zero, region_r1zero_paal, region_r1zero_taal, RegionLabel};
use crate::error::{Error, Result};
use crate::laminate::{homogenize, StackingSequence};
use crate::ply::{Ply, TechnicalModuli};
use crate::polar::PolarStiffness;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constituents {
    /// `E_f / E_m`
    pub e_ratio: f64,
    /// `nu_f / nu_m`
    pub nu_ratio: f64,
    /// Fibre volume fraction.
    pub vf: f64,
    /// Matrix Poisson's ratio.
    pub nu_m: f64,
}

impl Constituents {
    pub fn new(e_ratio: f64, nu_ratio: f64, vf: f64, nu_m: f64) -> Result<Self> {
        let c = Self {
            e_ratio,
            nu_ratio,
            vf,
            nu_m,
        };
        c.validate()?;
        Ok(c)
    }

    /// `E >= 1`, `0 <= v_f <= 1`, `0 < nu_m < 1/2`, `-1/nu_m < nu < 1/(2 nu_m)`.
    ///
    /// `E = 1` is accepted so that identical phases can be represented.
    pub fn validate(&self) -> Result<()> {
        let ok = self.e_ratio >= 1.0
            && (0.0..=1.0).contains(&self.vf)
            && self.nu_m > 0.0
            && self.nu_m < 0.5
            && self.nu_ratio > -1.0 / self.nu_m
            && self.nu_ratio < 0.5 / self.nu_m;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("constituents out of range: {self:?}")))
        }
    }
}

/// Unidirectional-ply properties from the rule of mixtures, in units of `E_m`
/// (`nu_lt_hat` in units of `nu_m`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UdPlyHat {
    pub e_l_hat: f64,
    pub e_t_hat: f64,
    pub nu_lt_hat: f64,
    pub g_lt_hat: f64,
}

impl UdPlyHat {
    /// Technical moduli of the UD ply, `nu12 = nu_m * nu_lt_hat`.
    pub fn moduli(&self, nu_m: f64) -> TechnicalModuli {
        TechnicalModuli::new(self.e_l_hat, self.e_t_hat, nu_m * self.nu_lt_hat, self.g_lt_hat)
    }
}

pub fn rule_of_mixtures(c: &Constituents) -> UdPlyHat {
    let Constituents {
        e_ratio: e,
        nu_ratio: nu,
        vf,
        nu_m,
    } = *c;
    UdPlyHat {
        e_l_hat: 1.0 + vf * (e - 1.0),
        e_t_hat: e / (vf + (1.0 - vf) * e),
        nu_lt_hat: 1.0 + vf * (nu - 1.0),
        g_lt_hat: e / (2.0 * (vf * (1.0 + nu * nu_m) + (1.0 - vf) * (1.0 + nu_m) * e)),
    }
}

/// Fabric ply with a fraction `f_r` of the fibres along `x1`.
pub fn fabric_ply(c: &Constituents, f_r: f64) -> TechnicalModuli {
    let ud = rule_of_mixtures(c);
    let (el, et) = (ud.e_l_hat, ud.e_t_hat);
    TechnicalModuli::new(
        f_r * el + (1.0 - f_r) * et,
        (1.0 - f_r) * el + f_r * et,
        c.nu_m * ud.nu_lt_hat * et / (f_r * et + (1.0 - f_r) * el),
        ud.g_lt_hat,
    )
}

/// Balanced fabric (`f_r = 1/2`): a square-symmetric (`R1 = 0`) ply.
pub fn balanced_fabric_ply(c: &Constituents) -> TechnicalModuli {
    let (e, vf) = (c.e_ratio, c.vf);
    let d = vf + (1.0 - vf) * e;
    let el = 1.0 + vf * (e - 1.0);
    let denom = e + el * d;
    let e1 = denom / (2.0 * d);
    let nu12_hat = 2.0 * e * (1.0 + vf * (c.nu_ratio - 1.0)) / denom;
    TechnicalModuli::new(e1, e1, c.nu_m * nu12_hat, rule_of_mixtures(c).g_lt_hat)
}

fn ud_polar(c: &Constituents) -> Result<PolarStiffness> {
    Ok(Ply::from_moduli(rule_of_mixtures(c).moduli(c.nu_m))?.polar)
}

/// Two identical UD layers at `0` and `pi/4`: an `R0 = 0` ply, returned in
/// the frame where `Phi1 = 0`.
pub fn r0_ply_from_crossply45(c: &Constituents) -> Result<PolarStiffness> {
    c.validate()?;
    let ud = ud_polar(c)?;
    let stack = StackingSequence::new(vec![0.0, FRAC_PI_4])?;
    let a = homogenize(&ud, &stack);
    Ok(a.rotated(a.phi1))
}

/// Experimental: two identical UD layers at `0` and `pi/2`, an alternative
/// fabric homogenization giving an `R1 = 0` ply.
pub fn fabric_from_crossply90(c: &Constituents) -> Result<PolarStiffness> {
    c.validate()?;
    let ud = ud_polar(c)?;
    let stack = StackingSequence::new(vec![0.0, FRAC_PI_2])?;
    Ok(homogenize(&ud, &stack))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanFamily {
    R1zeroTaal,
    R1zeroPaal,
    R0zeroTaal,
    R0zeroPaal,
}

impl ScanFamily {
    pub const ALL: [ScanFamily; 4] = [
        ScanFamily::R1zeroTaal,
        ScanFamily::R1zeroPaal,
        ScanFamily::R0zeroTaal,
        ScanFamily::R0zeroPaal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScanFamily::R1zeroTaal => "r1zero-taal",
            ScanFamily::R1zeroPaal => "r1zero-paal",
            ScanFamily::R0zeroTaal => "r0zero-taal",
            ScanFamily::R0zeroPaal => "r0zero-paal",
        }
    }

    /// Whether the ply built from `c` can realize laminates of this kind.
    pub fn member(self, c: &Constituents) -> bool {
        self.evaluate(c).unwrap_or(false)
    }

    fn evaluate(self, c: &Constituents) -> Result<bool> {
        match self {
            ScanFamily::R1zeroTaal | ScanFamily::R1zeroPaal => {
                let p = Ply::from_moduli(balanced_fabric_ply(c))?.polar;
                Ok(if self == ScanFamily::R1zeroTaal {
                    matches!(
                        region_r1zero_taal(p.tau(), p.rho())?.label,
                        RegionLabel::A | RegionLabel::B
                    )
                } else {
                    region_r1zero_paal(p.tau(), p.rho())?.label == RegionLabel::C
                })
            }
            ScanFamily::R0zeroTaal | ScanFamily::R0zeroPaal => {
                let p = r0_ply_from_crossply45(c)?;
                let want = if self == ScanFamily::R0zeroTaal {
                    RegionLabel::T
                } else {
                    RegionLabel::P
                };
                Ok(region_r0zero(p.tau(), p.sigma())?.label == want)
            }
        }
    }
}

impl fmt::Display for ScanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScanFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown scan family `{s}`")))
    }
}

/// Grid over `E` in `(1, e_max]` (log-spaced), `nu` in the open interval
/// `(-1/nu_m, 1/(2 nu_m))` and `v_f` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub e_max: f64,
    pub e_points: usize,
    pub nu_points: usize,
    pub vf_points: usize,
    pub nu_m: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            e_max: 100.0,
            e_points: 101,
            nu_points: 101,
            vf_points: 21,
            nu_m: 0.25,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.e_points == 0 || self.nu_points == 0 || self.vf_points == 0 {
            return Err(Error::EmptyGrid);
        }
        if !(self.e_max > 1.0 && self.e_max.is_finite()) {
            return Err(Error::InvalidInput(format!("e_max must exceed 1, got {}", self.e_max)));
        }
        if !(self.nu_m > 0.0 && self.nu_m < 0.5) {
            return Err(Error::InvalidInput(format!(
                "nu_m must lie in (0, 0.5), got {}",
                self.nu_m
            )));
        }
        Ok(())
    }

    pub fn e_values(&self) -> Vec<f64> {
        let n = self.e_points as f64;
        (1..=self.e_points).map(|i| self.e_max.powf(i as f64 / n)).collect()
    }

    pub fn nu_values(&self) -> Vec<f64> {
        let lo = -1.0 / self.nu_m;
        let hi = 0.5 / self.nu_m;
        let step = (hi - lo) / (self.nu_points + 1) as f64;
        (1..=self.nu_points).map(|j| lo + j as f64 * step).collect()
    }

    pub fn vf_values(&self) -> Vec<f64> {
        if self.vf_points == 1 {
            return vec![0.5];
        }
        let last = (self.vf_points - 1) as f64;
        (0..self.vf_points).map(|k| k as f64 / last).collect()
    }

    pub fn len(&self) -> usize {
        self.e_points * self.nu_points * self.vf_points
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RasterCell {
    pub e: f64,
    pub nu: f64,
    pub vf: f64,
    pub member: bool,
    /// `v_f` is 0 or 1: one phase only.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Raster {
    pub family: ScanFamily,
    pub grid: GridSpec,
    /// Cells ordered by `E`, then `nu`, then `v_f`.
    pub cells: Vec<RasterCell>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub members: usize,
    pub degenerate_members: usize,
    pub nu_min_member: Option<f64>,
    pub nu_max_member: Option<f64>,
}

#[derive(Serialize)]
struct CsvRow {
    #[serde(rename = "E")]
    e: f64,
    nu: f64,
    vf: f64,
    member: u8,
}

impl Raster {
    pub fn members(&self) -> impl Iterator<Item = &RasterCell> {
        self.cells.iter().filter(|c| c.member)
    }

    pub fn summary(&self) -> ScanSummary {
        let mut s = ScanSummary {
            cells: self.cells.len(),
            members: 0,
            degenerate_members: 0,
            nu_min_member: None,
            nu_max_member: None,
        };
        for c in self.members() {
            s.members += 1;
            s.degenerate_members += usize::from(c.degenerate);
            s.nu_min_member = Some(s.nu_min_member.map_or(c.nu, |m: f64| m.min(c.nu)));
            s.nu_max_member = Some(s.nu_max_member.map_or(c.nu, |m: f64| m.max(c.nu)));
        }
        s
    }

    /// Writes `E,nu,vf,member` rows in grid order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for c in &self.cells {
            w.serialize(CsvRow {
                e: c.e,
                nu: c.nu,
                vf: c.vf,
                member: u8::from(c.member),
            })
            .map_err(|e| Error::InvalidInput(format!("csv output failed: {e}")))?;
        }
        w.flush()
            .map_err(|e| Error::InvalidInput(format!("csv output failed: {e}")))?;
        Ok(())
    }
}

/// Evaluates family membership on every grid cell, in parallel.
pub fn existence_scan(family: ScanFamily, grid: &GridSpec) -> Result<Raster> {
    grid.validate()?;
    let (es, nus, vfs) = (grid.e_values(), grid.nu_values(), grid.vf_values());
    let (n_nu, n_vf) = (nus.len(), vfs.len());
    let cells = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (e, nu, vf) = (es[idx / (n_nu * n_vf)], nus[(idx / n_vf) % n_nu], vfs[idx % n_vf]);
            let member = Constituents::new(e, nu, vf, grid.nu_m)
                .map(|c| family.member(&c))
                .unwrap_or(false);
            RasterCell {
                e,
                nu,
                vf,
                member,
                degenerate: vf == 0.0 || vf == 1.0,
            }
        })
        .collect();
    Ok(Raster {
        family,
        grid: *grid,
        cells,
    })
}
