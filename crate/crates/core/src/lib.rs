//! Exact λ-quiddities: tuples `(a_1, ..., a_n)` over a commutative ring with
//! `[[a_n, -1], [1, 0]] · ... · [[a_1, -1], [1, 0]] = ±Id`.
//!
//! The crate covers verification of the matrix equation, the sum `⊕` of
//! tuples, dihedral equivalence, explicit reduction witnesses, an exact
//! irreducibility decision procedure, and bounded exhaustive enumeration with
//! verification suites built on top of it.
//!
//! Rings: `Z`, `Z/nZ`, `Z[X]` (a model of `Z[alpha]` for transcendental
//! `alpha`), `Z[2i]`, and an inexact real ring for floating-point checks.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod ops;
pub mod quiddity;
pub mod rings;
pub mod verify;

pub use enumerate::{enumerate_quiddities, EnumerationReport, Execution, SearchBounds};
pub use error::{Error, Result};
pub use ops::{
    canonical_form, decompose, dihedral_orbit, equivalent, is_irreducible, reduce_by_unit,
    reduce_by_zero, sum, DecompositionWitness, DihedralTransform,
};
pub use quiddity::{continuant, cos_quiddity, elementary, Mat2, QuidditySign, Tuple};
pub use rings::{PmOne, RingId, RingValue};
