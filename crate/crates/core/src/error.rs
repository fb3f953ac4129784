use thiserror::Error;

/// Errors surfaced by the workbench. Each variant carries a stable code used
/// in reports and by the command line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("E_NOT_FD: {0}")]
    NotFiniteDimensional(String),
    #[error("E_BAD_INPUT: {0}")]
    BadInput(String),
    #[error("E_DIM_MISMATCH: {0}")]
    DimMismatch(String),
    #[error("E_AXIOM_FAIL: {0}")]
    AxiomFail(String),
    #[error("E_SEARCH_EXHAUSTED: {0}")]
    SearchExhausted(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotFiniteDimensional(_) => "E_NOT_FD",
            Error::BadInput(_) => "E_BAD_INPUT",
            Error::DimMismatch(_) => "E_DIM_MISMATCH",
            Error::AxiomFail(_) => "E_AXIOM_FAIL",
            Error::SearchExhausted(_) => "E_SEARCH_EXHAUSTED",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bad_input(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

pub(crate) fn dim_mismatch(msg: impl Into<String>) -> Error {
    Error::DimMismatch(msg.into())
}
