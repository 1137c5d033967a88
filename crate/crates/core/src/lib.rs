//! Ordinal diagrams for Pi_N-reflection: terms, validity, the order and
//! reflection relations, decompositions, inductive-definition operators over
//! finite carriers, and a property-checking harness.

pub mod accessors;
pub mod decomposition;
pub mod diagram;
pub mod enumeration;
pub mod error;
pub mod harness;
pub mod index_seq;
pub mod operators;
pub mod relations;
pub mod subterm;
pub mod text;
pub mod validity;

pub use diagram::{Bound, Class, Diagram, Kind, Quad};
pub use error::{DiagramError, Result};
pub use index_seq::IndexSeq;
pub use relations::compare;
pub use text::{parse, parse_lines, print};
pub use validity::{Clause, System, SystemKind, SystemParams, ValidityReport};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/terms.md")]
    mod terms {}
    #[doc = include_str!("../../../book/src/order.md")]
    mod order {}
    #[doc = include_str!("../../../book/src/validity.md")]
    mod validity {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
