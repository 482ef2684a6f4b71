use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("state set must be nonempty")]
    EmptyStateSet,
    #[error("relations live on different carriers")]
    CarrierMismatch,
    #[error("le is not a preorder (missing reflexive or transitive pairs)")]
    NotPreorder,
    #[error("state index out of range")]
    StateOutOfRange,
    #[error("unknown state name {0:?}")]
    UnknownState(String),
    #[error("unknown frame predicate {0:?}")]
    UnknownPredicate(String),
    #[error("valuation of atom {0:?} is not le-closed (pass val_upclose to close it)")]
    ValuationNotClosed(String),
    #[error("frame is not reflexive")]
    NotReflexive,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("sigma is not closed: missing {0}")]
    SigmaNotClosed(String),
    #[error("candidate carrier does not match the equivalence classes")]
    WrongCarrier,
    #[error("unknown axiom schema {0:?}")]
    UnknownSchema(String),
    #[error("bad proof script: {0}")]
    BadScript(String),
    #[error("{0}")]
    Parse(#[from] crate::formula::ParseError),
    #[error("bad model file: {0}")]
    BadModel(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
