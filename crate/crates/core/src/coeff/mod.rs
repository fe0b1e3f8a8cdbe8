//! Exact linear algebra over `Z`, `Q`, `Z/n` and `F_p`.

mod fpmod;
mod linsys;
mod mat;
mod pir;
mod ring;
mod smith;

pub(crate) use fpmod::subquotient;
pub use fpmod::{hom, homology, FpModule, HomModule, Invariants, ModMap};
pub use linsys::{unvec, vec_of, LinSystem};
pub use mat::Mat;
pub use ring::{Ring, Scalar};
pub use smith::{kernel_gens, normal_form, solve_right, NormalForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, Ring),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a module homomorphism: {0}")]
    NotAMap(String),
    #[error("no factorization exists: {0}")]
    NoSolution(String),
}
