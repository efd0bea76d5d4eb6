use std::path::PathBuf;

use auxetolam_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}, column {column}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("{path}: field `{field}`: {msg}")]
    Field { path: PathBuf, field: String, msg: String },

    #[error("{path} ({kind} input): {source}")]
    Material {
        path: PathBuf,
        kind: &'static str,
        #[source]
        source: CoreError,
    },

    #[error("invalid stack spec `{spec}`: {msg}")]
    Stack { spec: String, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("nothing to optimize: {0}")]
    NothingToOptimize(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 parse/validation, 3 domain, 4 infeasible request.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Field { .. }
            | CliError::Stack { .. }
            | CliError::Config(_) => 2,
            CliError::NothingToOptimize(_) => 4,
            CliError::Material { source, .. } | CliError::Core(source) => core_exit_code(source),
        }
    }
}

fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::InvalidInput(_) | CoreError::NotInOrthotropyFrame(_) | CoreError::EmptyGrid => 2,
        CoreError::InfeasibleLaminationPoint(_) => 4,
        // positive definiteness and reciprocity are elastic-domain violations
        CoreError::NotPositiveDefinite
        | CoreError::SingularTensor(_)
        | CoreError::ReciprocityViolation(_)
        | CoreError::OutOfElasticDomain(_)
        | CoreError::NotInBorC { .. }
        | CoreError::OutOfRegion(_)
        | CoreError::NotR0Compliant(_)
        | CoreError::NotAuxeticPly { .. } => 3,
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
