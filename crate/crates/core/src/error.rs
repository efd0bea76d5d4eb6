use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("stiffness is not given in its orthotropy frame (|q16| + |q26| = {0:e})")]
    NotInOrthotropyFrame(f64),

    #[error("stiffness matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("tensor is singular or not admissible (delta = {0:e})")]
    SingularTensor(f64),

    #[error("reciprocity violated: 1 - nu12 nu21 = {0} must be positive")]
    ReciprocityViolation(f64),

    #[error("parameters lie outside the elastic domain: {0}")]
    OutOfElasticDomain(String),

    #[error("(tau, rho) = ({tau}, {rho}) is neither in set B nor in set C")]
    NotInBorC { tau: f64, rho: f64 },

    #[error("parameters lie outside the admissible region: {0}")]
    OutOfRegion(String),

    #[error("ply is not r0-orthotropic (relative mismatch of R0 T1 and R1^2: {0:e})")]
    NotR0Compliant(f64),

    #[error("ply is not auxetic (tau = {tau} >= (1 + rho)/2 = {bound})")]
    NotAuxeticPly { tau: f64, bound: f64 },

    #[error("scan grid is empty")]
    EmptyGrid,

    #[error("lamination point is not feasible: {0}")]
    InfeasibleLaminationPoint(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
