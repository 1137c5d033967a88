use thiserror::Error;

use crate::validity::ValidityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("not a d-term: {0}")]
    NotADTerm(String),
    #[error("not a D^Q-term: {0}")]
    NotADQTerm(String),
    #[error("index {index} has no quadruple in {term}")]
    NoQuadForIndex { index: u32, term: String },
    #[error("no D_pi ancestor on the subscript chain of {0}")]
    NoPiAncestor(String),
    #[error("terms were validated under different systems")]
    IncomparableSystems,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid diagram {term}: {report}")]
    Invalid { term: String, report: ValidityReport },
    #[error("index sequence bounds mismatch: {0}")]
    BoundsMismatch(String),
    #[error("not in carrier: {0}")]
    NotInCarrier(String),
    #[error("enumeration budget of {0} diagrams exceeded")]
    BudgetExceeded(usize),
    #[error("unknown check id: {0}")]
    UnknownCheckId(String),
    #[error("unknown operator: {0}")]
    UnknownOperator(String),
    #[error("decomposition defect: {0}")]
    DecompositionDefect(String),
    #[error("stage lost elements at round {0}")]
    NonMonotoneStep(usize),
}

pub type Result<T, E = DiagramError> = std::result::Result<T, E>;
