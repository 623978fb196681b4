use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseNumberError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("integer literal at byte {position} has {digits} digits, over the configured limit of {limit}")]
    Overflow {
        position: usize,
        digits: usize,
        limit: usize,
    },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::Overflow { position, .. } => {
                *position
            }
        }
    }
}

/// Domain violations raised by projections and operator applications.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("symbol `{0}` is not pluriharmonic")]
    NotPluriharmonic(String),
    #[error("argument `{0}` is not holomorphic")]
    NotHolomorphic(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("stage {stage} of composite operator: {source}")]
    Stage {
        stage: usize,
        #[source]
        source: Box<OpError>,
    },
    #[error("precondition unverified: {0}")]
    PreconditionUnverified(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("point ({0}, {1}) is not strictly inside the bidisk")]
    OutsideBidisk(String, String),
    #[error("tolerance {tol:e} needs truncation degree {needed}, above the cap {cap}")]
    ToleranceUnreachable { tol: f64, needed: u64, cap: u32 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Op(#[from] OpError),
}
