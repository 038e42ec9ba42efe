use apseq::SeqError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("spec error: {0}")]
    Spec(String),
    #[error("machine parse error: {0}")]
    Machine(String),
    #[error("{0}")]
    Core(#[from] SeqError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 ok, 2 spec, 3 horizon, 4 machine parse, 5 no bound, 6 cost refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Io(_) => 2,
            CliError::Machine(_) => 4,
            CliError::Core(e) => match e {
                SeqError::HorizonExhausted { .. } | SeqError::HorizonTooSmall { .. } => 3,
                SeqError::MissingBound(_) => 5,
                SeqError::CostRefused { .. } => 6,
                _ => 2,
            },
        }
    }
}
