//! Auxeticity analysis of anisotropic laminates.
//!
//! Plies are described by the polar invariants of their reduced stiffness;
//! laminates are homogenized through lamination parameters, and the sign of
//! the in-plane Poisson's ratio is studied in closed form for the special
//! orthotropies `R1 = 0`, `R0 = 0` and `r0 = 0`.

// `!(x > 0.0)` is used on purpose: NaN must fail these checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod auxeticity;
pub mod error;
pub mod laminate;
pub mod micromech;
pub mod ply;
pub mod polar;

pub use auxeticity::{classify, classify_sign, AuxeticityReport, Classification, RegionLabel, RegionResult};
pub use error::{Error, Result};
pub use laminate::{homogenize, lamination_parameters, LaminationPoint, StackingSequence};
pub use ply::{Ply, PlyFamily, TechnicalModuli};
pub use polar::{cartesian_to_polar, polar_to_cartesian, CartesianStiffness, PolarStiffness, SymmetryClass};
