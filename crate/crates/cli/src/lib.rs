//! Experiment runner for `modlink`: INI specs, operations, JSON reports and built-in galleries.

pub mod gallery;
pub mod run;
pub mod spec;

use thiserror::Error;

pub use gallery::{gallery, gallery_names, gallery_text};
pub use run::{prepare, run_spec, Overrides, Report};
pub use spec::{parse_spec, ExperimentSpec, KChoice};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("undefined name `{0}`")]
    UnknownName(String),
    #[error("K = canonical needs a Cohen-Macaulay ring")]
    NonCMForCanonical,
    #[error("unknown gallery `{0}`")]
    UnknownGallery(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Algebra(#[from] modlink::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(modlink::Error::Inconsistent(_)) => 3,
            _ => 2,
        }
    }
}
