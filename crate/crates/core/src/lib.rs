//! Exact computations in the group algebra `l(G)` of a finite group over
//! the rational subfield of `Q_p`.
//!
//! The crate builds `l(G)` with its convolution product and sup norm, its
//! Hopf structure and the enveloping algebra `l(G) ⊗ l(G)^op`, and
//! certifies for each `(G, p)`:
//!
//! * a left-invariant mean `m` with `m(𝟙) = 1` (Johnson `K`-amenability),
//! * the virtual diagonal `|G|^{-1} Σ_g δ_g ⊗ δ_{g^{-1}}` obtained from `m`,
//!   and the mean recovered back from it,
//! * Schikhof `K`-amenability, decided twice: by the norm of the mean and by
//!   the `p`-divisibility of subgroup indices,
//! * that every derivation into a dual bimodule is inner.
//!
//! All arithmetic is exact; absolute values are powers of `p` stored as
//! integer exponents.

pub mod algebra;
pub mod amenability;
pub mod catalog;
pub mod cli;
pub mod exec;
pub mod field;
pub mod group;
pub mod hopf;
pub mod linalg;

use thiserror::Error;

pub use algebra::{Element, Functional};
pub use catalog::GroupSpec;
pub use exec::Execution;
pub use field::{AbsValue, FieldDescriptor, Prime, Scalar, Valuation};
pub use group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
pub use hopf::{TensorElement, TensorFlavor};
pub use linalg::ExactMatrix;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] field::FieldError),
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error(transparent)]
    Spec(#[from] catalog::SpecError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    /// An identity that must hold failed; always a bug, never a verdict.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            Error::Invariant(_) | Error::Algebra(algebra::AlgebraError::Check(_))
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
