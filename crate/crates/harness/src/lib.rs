//! Configuration, orchestration and report emission for the `dioph` tool.

pub mod config;
pub mod report;
mod tasks;

use dioph_core::algebraic::AlgebraicError;
use dioph_core::arith::ArithError;
use dioph_core::bounds::BoundError;
use dioph_core::convergent_spart::SPartError;
use dioph_core::padic::PadicError;
use dioph_core::sequences::SequenceError;
use thiserror::Error;

pub use config::{OutputFormat, Precision, ScanConfig, Task};
pub use report::{compare_baseline, BaselineOutcome, Envelope, Report};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RunError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl RunError {
    /// 2 for invalid input, 3 for an exhausted budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invalid(_) => 2,
            RunError::Budget(_) => 3,
            RunError::Io(_) => 1,
        }
    }
}

impl From<ArithError> for RunError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::BudgetExhausted { .. } | ArithError::PrimalityRange(_) => {
                RunError::Budget(e.to_string())
            }
            _ => RunError::Invalid(e.to_string()),
        }
    }
}

impl From<AlgebraicError> for RunError {
    fn from(e: AlgebraicError) -> Self {
        match e {
            AlgebraicError::PrecisionExhausted { .. } => RunError::Budget(e.to_string()),
            AlgebraicError::Arith(a) => a.into(),
            _ => RunError::Invalid(e.to_string()),
        }
    }
}

impl From<PadicError> for RunError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::Budget(_) => RunError::Budget(e.to_string()),
            _ => RunError::Invalid(e.to_string()),
        }
    }
}

impl From<SequenceError> for RunError {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Arith(a) => a.into(),
            _ => RunError::Invalid(e.to_string()),
        }
    }
}

impl From<SPartError> for RunError {
    fn from(e: SPartError) -> Self {
        match e {
            SPartError::Algebraic(a) => a.into(),
            SPartError::Arith(a) => a.into(),
            SPartError::Certification(_) => RunError::Budget(e.to_string()),
            SPartError::InvalidInput(_) => RunError::Invalid(e.to_string()),
        }
    }
}

impl From<BoundError> for RunError {
    fn from(e: BoundError) -> Self {
        RunError::Invalid(e.to_string())
    }
}

/// Compute the rows and summary of one task, on `config.threads` workers if
/// set.
pub fn execute(config: &ScanConfig) -> Result<Report, RunError> {
    config.validate()?;
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Io(e.to_string()))?
            .install(|| tasks::execute(config)),
        None => tasks::execute(config),
    }
}

/// [`execute`], then wrap in an envelope and compare against the baseline.
pub fn run(config: &ScanConfig) -> Result<Envelope, RunError> {
    let report = execute(config)?;
    let hash = config.hash();
    let kind = config.task.kind();
    let baseline = match &config.baseline {
        Some(path) => Some(compare_baseline(
            &report,
            kind,
            &hash,
            path,
            config.tolerance,
        )?),
        None => None,
    };
    Ok(Envelope {
        tool: "dioph".into(),
        version: VERSION.into(),
        kind: kind.into(),
        config_hash: hash,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        columns: report.columns,
        rows: report.rows,
        summary: report.summary,
        baseline,
    })
}
