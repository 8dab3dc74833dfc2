//! Circuit documents, parallel sampling, oracle cross-checks and the
//! `cvphase` command line on top of [`cvphase_core`].
//!
//! The core crate is `no_std`; everything that touches files, threads or
//! JSON lives here.

pub mod cli;
pub mod document;
pub mod oracle;
pub mod report;
pub mod runner;

pub use runner::PoolRunner;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or contract-violating input. `path` names the offending
    /// field (`gates[1].mode`); parse errors also carry a position.
    #[error("{}{message}", if path.is_empty() { String::new() } else { format!("{path}: ") })]
    Validation { path: String, message: String, line: Option<usize>, column: Option<usize> },
    #[error(transparent)]
    Core(#[from] cvphase_core::Error),
    #[error("oracle: {0}")]
    Oracle(#[from] cvphase_fock::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("oracle discrepancy {diff:e} exceeds tolerance {tol:e}")]
    Discrepancy { diff: f64, tol: f64 },
}

impl Error {
    pub fn option(flag: &str, message: impl Into<String>) -> Self {
        Error::Validation { path: format!("--{flag}"), message: message.into(), line: None, column: None }
    }

    pub fn is_validation(&self) -> bool {
        use cvphase_fock::Error as F;
        match self {
            Error::Validation { .. } => true,
            Error::Core(e) => !e.is_numeric(),
            Error::Oracle(e) => matches!(
                e,
                F::TooManyModes(_) | F::ModeOutOfRange { .. } | F::Shape(_) | F::NotPure(_) | F::InvalidParameter(_)
            ),
            _ => false,
        }
    }

    /// 2 validation, 3 numeric failure, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 4,
            e if e.is_validation() => 2,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "validation",
            4 => "io",
            _ => "numeric",
        }
    }
}
