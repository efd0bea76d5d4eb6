//! Material files: `{"name", "kind", "values", "family"?, "units"?}`.

use std::fs;
use std::path::{Path, PathBuf};

use auxetolam_core::polar::{classify_symmetry, CartesianStiffness, SymmetryKind};
use auxetolam_core::{Ply, PlyFamily, PolarStiffness, TechnicalModuli};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Technical,
    Cartesian,
    Polar,
    Dimensionless,
}

impl InputKind {
    fn name(self) -> &'static str {
        match self {
            InputKind::Technical => "technical",
            InputKind::Cartesian => "cartesian",
            InputKind::Polar => "polar",
            InputKind::Dimensionless => "dimensionless",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    R1zero,
    R0zero,
    R0compliance,
}

impl FamilyName {
    pub fn ply_family(self) -> PlyFamily {
        match self {
            FamilyName::R1zero => PlyFamily::R1Zero,
            FamilyName::R0zero => PlyFamily::R0Zero,
            FamilyName::R0compliance => PlyFamily::ComplianceR0Zero,
        }
    }

    fn from_symmetry(kind: SymmetryKind) -> Option<Self> {
        match kind {
            SymmetryKind::R1Zero => Some(FamilyName::R1zero),
            SymmetryKind::R0Zero => Some(FamilyName::R0zero),
            SymmetryKind::ComplianceR0Zero => Some(FamilyName::R0compliance),
            _ => None,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    kind: InputKind,
    values: serde_json::Value,
    #[serde(default)]
    family: Option<FamilyName>,
    #[serde(default)]
    units: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Technical {
    e1: f64,
    e2: f64,
    nu12: f64,
    g12: f64,
}

/// Kelvin components: `q66 = 2 G12`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Cartesian {
    q11: f64,
    q12: f64,
    q22: f64,
    q66: f64,
}

/// Angles in degrees.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Polar {
    t0: f64,
    t1: f64,
    r0: f64,
    r1: f64,
    #[serde(default)]
    phi0: f64,
    #[serde(default)]
    phi1: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Dimensionless {
    tau: f64,
    #[serde(default)]
    rho: Option<f64>,
    #[serde(default)]
    sigma: Option<f64>,
    #[serde(default = "unit_scale")]
    t0: f64,
}

fn unit_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone)]
pub struct Material {
    pub name: String,
    pub path: PathBuf,
    pub kind: InputKind,
    pub units: Option<String>,
    pub ply: Ply,
    /// Declared family, or the one detected on the ply.
    pub family: Option<FamilyName>,
    pub family_declared: bool,
}

impl Material {
    pub fn stem(&self) -> String {
        self.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "material".into())
    }
}

/// serde_json appends `at line L column C`, which the error already carries.
fn strip_position(msg: &str) -> String {
    msg.rsplit_once(" at line ").map_or(msg, |(head, _)| head).to_owned()
}

fn values<T: DeserializeOwned>(path: &Path, v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| CliError::Field {
        path: path.to_owned(),
        field: "values".into(),
        msg: e.to_string(),
    })
}

pub fn load(path: &Path, tol: f64) -> Result<Material> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse(path, &text, tol)
}

pub fn parse(path: &Path, text: &str, tol: f64) -> Result<Material> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        line: e.line(),
        column: e.column(),
        msg: strip_position(&e.to_string()),
    })?;
    let wrap = |source| CliError::Material {
        path: path.to_owned(),
        kind: raw.kind.name(),
        source,
    };
    let ply = match raw.kind {
        InputKind::Technical => {
            let v: Technical = values(path, raw.values.clone())?;
            Ply::from_moduli(TechnicalModuli::new(v.e1, v.e2, v.nu12, v.g12)).map_err(wrap)?
        }
        InputKind::Cartesian => {
            let v: Cartesian = values(path, raw.values.clone())?;
            Ply::from_cartesian(CartesianStiffness::orthotropic(v.q11, v.q12, v.q22, v.q66)).map_err(wrap)?
        }
        InputKind::Polar => {
            let v: Polar = values(path, raw.values.clone())?;
            let p =
                PolarStiffness::new(v.t0, v.t1, v.r0, v.r1, v.phi0.to_radians(), v.phi1.to_radians()).map_err(wrap)?;
            Ply::from_polar(p, tol).map_err(wrap)?
        }
        InputKind::Dimensionless => {
            let v: Dimensionless = values(path, raw.values.clone())?;
            let family = raw.family.ok_or_else(|| CliError::Field {
                path: path.to_owned(),
                field: "family".into(),
                msg: "required for dimensionless input".into(),
            })?;
            let (field, second) = match family {
                FamilyName::R0zero => ("sigma", v.sigma),
                _ => ("rho", v.rho),
            };
            let second = second.ok_or_else(|| CliError::Field {
                path: path.to_owned(),
                field: format!("values.{field}"),
                msg: format!("required for family {family:?}").to_lowercase(),
            })?;
            let p = family.ply_family().synthesize(v.tau, second, v.t0).map_err(wrap)?;
            Ply::from_polar(p, tol).map_err(wrap)?
        }
    };
    let detected = FamilyName::from_symmetry(classify_symmetry(&ply.polar, tol).kind);
    if let (Some(declared), Some(found)) = (raw.family, detected) {
        if declared != found {
            return Err(CliError::Field {
                path: path.to_owned(),
                field: "family".into(),
                msg: format!("declared {declared:?} but the ply is {found:?}").to_lowercase(),
            });
        }
    }
    Ok(Material {
        name: raw.name,
        path: path.to_owned(),
        kind: raw.kind,
        units: raw.units,
        ply,
        family: raw.family.or(detected),
        family_declared: raw.family.is_some(),
    })
}
