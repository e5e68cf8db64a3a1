//! Exact integral cohomology of crystallographic groups `Γ = Z^n ⋊ Z/N`.
//!
//! A lattice here is an integer matrix `T` of finite multiplicative order,
//! acting on `Z^n` by the generator of the cyclic group `Z/N`.  The library
//! computes `H^*(Γ, Z)` by two independent routes and cross-checks them:
//!
//! * the degreewise formula `H^k(Γ) = ⊕_{i+j=k} H^i(Z/N, Λ^j(L*))`,
//!   evaluated with exact integer linear algebra ([`cohomology`]);
//! * a twisted free resolution of `Z` over the group ring of `Γ`, built from
//!   a chain-level action on the Koszul resolution and verified with
//!   `D² = 0` before any homology is read off ([`oracle`]).
//!
//! The formula route is only a theorem when a *compatible* chain-level
//! action exists; [`koszul`] constructs such actions (permutation modules,
//! augmentation ideals, and several explicit rank-4/6 cases) and checks the
//! defining axioms mechanically.  [`catalog`] names the standard lattices:
//! the nine indecomposable integral representations of `Z/4`, augmentation
//! ideals, regular representations, and the six-dimensional representations
//! arising from supersymmetric torus orbifolds (whose degree-3 cohomology is
//! the gerbe group of the orbifold).
//!
//! Results carry a `proved`/`conjectural` status flag: prime and square-free
//! orders are always proved, composite prime-power orders only when every
//! catalog summand has a known local compatible action.
//!
//! ```
//! use crystalline::{catalog, cohomology};
//!
//! // The infinite dihedral group Z ⋊ Z/2.
//! let sign = catalog::preset("sign").unwrap();
//! let result = cohomology::total_cohomology(&sign.lattice, 4, None);
//! let rendered: Vec<String> = result.groups.iter().map(|g| g.render()).collect();
//! assert_eq!(rendered, ["Z", "0", "Z/2 + Z/2", "0", "Z/2 + Z/2"]);
//! ```
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `crystalline` binary for the command-line surface.

pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod koszul;
pub mod lattice;
pub mod linalg;
pub mod oracle;
mod util;

pub use cohomology::{CohomologyResult, E2Page, Status};
pub use lattice::{Lattice, PTypeDecomposition};
pub use linalg::{AbelianGroup, IntMatrix, SnfResult};
