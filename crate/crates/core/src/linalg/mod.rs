//! Exact linear algebra over any [`Field`](crate::exactmath::Field), integer
//! lattices, graded ideal membership and small exterior-algebra checks.

mod dense;
mod exterior;
mod integer;
mod sparse;

use thiserror::Error;

use crate::exactmath::ArithError;
use crate::multipoly::PolyError;

pub use dense::ExactMatrix;
pub use exterior::{exterior_power, wedge_lemma_exhaustive, WedgeLemmaReport};
pub use integer::{
    count_fixed_vectors_mod, smith_normal_form, unipotent_log, IntMatrix, SmithForm,
};
pub use sparse::{
    generators_fingerprint, graded_membership, MembershipCertificate, SparseSolution, SparseSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("input polynomials must be homogeneous")]
    InhomogeneousInput,
    #[error("no representation in degree {degree}")]
    NotInDegree { degree: u32 },
    #[error("matrix is not unipotent of nilpotency order at most 3")]
    NotUnipotent,
    #[error("certificate replay does not reproduce the target")]
    ReplayMismatch,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
