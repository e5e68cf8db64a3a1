//! Exact integer linear algebra: dense matrices over arbitrary-precision
//! integers, Smith normal form with transforms, saturated kernel bases,
//! cokernel invariants, and homology of integer cochain complexes.
//!
//! Everything is exact; entries may grow during elimination and that is
//! fine.  All values are immutable from the caller's point of view and can
//! be moved across threads freely.

mod abelian;
mod matrix;
mod snf;

pub use abelian::AbelianGroup;
pub use matrix::IntMatrix;
pub use snf::{
    cokernel_invariants, homology_at, inverse_unimodular, kernel_basis, smith_normal_form,
    ComplexError, SnfResult,
};
