//! Difference terms for finite idempotent algebras.
//!
//! The crate decides, for a finite idempotent algebra given by operation
//! tables, whether the algebra has a difference term operation and whether
//! the variety it generates has a difference term. When a difference term
//! operation exists it can also be built explicitly as a ternary Cayley
//! table.
//!
//! Layout:
//!
//! * [`algebra`]: operation tables, products, subalgebra generation with
//!   term witnesses, quotients.
//! * [`partition`] and [`congruence`]: partitions in canonical form and
//!   congruence generation, join-irreducibility, kernels and lifts.
//! * [`commutator`]: the term-condition commutator, both by the matrix
//!   algebra `M(α, β)` and by the transitive-closure shortcut.
//! * [`tct`]: omission of the unary type and the abelian test for prime
//!   quotients.
//! * [`decision`]: the decision procedures.
//! * [`construct`]: Cayley tables of difference term operations.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod commutator;
pub mod congruence;
pub mod construct;
pub mod decision;
mod error;
pub mod fixtures;
pub mod partition;
pub mod tct;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use algebra::{FiniteAlgebra, OperationTable, SubProduct, TermDag};
pub use commutator::{CommutatorMethod, TaylorToken};
pub use construct::TernaryTable;
pub use decision::{Certificate, LabeledTriple, Verdict};
pub use error::{Error, Result};
pub use partition::Partition;

/// Elements of a universe `{0, …, n−1}`.
pub type Element = usize;
