//! Universal homology and relative homology categories, their quotients and
//! realizations of concrete homology data.

mod data;
mod graded;
mod kproj;
mod monoid;
mod relative;

pub use data::{HomologyData, RelHomologyData, UniversalFrom, Violation};
pub use graded::{point_quotient, universal_homology, GradedAbCat, GradedObj, PointQuotient};
pub use kproj::{k_projection, relative_k_projection, KProjection};
pub use monoid::{monoid_universal, MonoidUniversal};
pub use relative::{
    check_coproduct, universal_relative, CoproductRow, GenKind, RelUniversalCat, RestrictedHomology,
};

use thiserror::Error;

use crate::diagram::DiagramError;
use crate::freyd::FreydError;
use crate::quotient::QuotientError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {0} is outside the window [{1}, {2}]")]
    OutOfWindow(i64, i64, i64),
    #[error("category has no final object")]
    NoFinalObject,
    #[error("category has no strictly initial object")]
    NoInitial,
    #[error("the final object is initial, so every relative homology object vanishes")]
    FinalIsInitial,
    #[error("{0} is not a distinguished pair")]
    NotDistinguished(String),
    #[error("not a coproduct: {0}")]
    NotACoproduct(String),
    #[error("homology axioms fail: {}", .0.join("; "))]
    AxiomFailure(Vec<String>),
    #[error("malformed homology data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Freyd(#[from] FreydError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

#[cfg(test)]
mod tests;
