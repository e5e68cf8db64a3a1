//! The Koszul complex over the group ring `Z[L]` and chain-level group
//! actions on it.
//!
//! For a free abelian group `L` with basis `x_1, .., x_n`, the elements
//! `x_i - 1` form a regular sequence and the Koszul complex they generate is
//! a free resolution of `Z` over `Z[L]`.  Its degree-`j` piece has the
//! `j`-subsets of generators as a basis, in the same lexicographic order the
//! exterior powers use, so matrices here and compound matrices there can be
//! compared entry for entry.
//!
//! Dualizing into `Z` kills every differential (each entry is `±(x_i - 1)`,
//! which augments to zero), which is what makes the resolution useful: the
//! cohomology of `L` can be read off degreewise, and any compatible action
//! of a finite cyclic group on the complex determines the cohomology of the
//! semidirect product.  Compatible actions live in [`tau`].

mod ring;
mod tau;

pub use ring::{ExpAction, GroupRingElement, Monomial, RingMatrix};
pub use tau::{
    tau_direct_sum, tau_ig, tau_permutation, tau_preset, verify_compatibility, CompatAxiom,
    CompatFailure, CompatReport, TauAction, TauPreset, TauRowJson, PRESET_NAMES,
};

pub(crate) use tau::conjugating_unimodular;

use crate::util::{binomial, index_subsets, subset_position};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KoszulError {
    #[error("differential degree {j} out of range 1..={n}")]
    DegreeOutOfRange { j: usize, n: usize },
    #[error("group order {order} rejected: {detail}")]
    BadOrder { order: u64, detail: String },
    #[error("cannot combine actions of orders {left} and {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("unknown preset {0:?} (known: {})", PRESET_NAMES.join(", "))]
    UnknownPreset(String),
    #[error("no unimodular change of basis found for preset {name}")]
    ConjugationNotFound { name: String },
    #[error("bad action data: {0}")]
    BadTauData(String),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Matrix of `d : K_j -> K_{j-1}` in lexicographic bases.  Entries are
/// `±(x_i - 1)`: removing the `m`-th index of a set carries sign `(-1)^m`.
pub fn koszul_differential(n: usize, j: usize) -> Result<RingMatrix, KoszulError> {
    if j == 0 || j > n {
        return Err(KoszulError::DegreeOutOfRange { j, n });
    }
    let src = index_subsets(n, j);
    let dst = index_subsets(n, j - 1);
    let mut m = RingMatrix::zero(dst.len(), src.len(), n);
    for (c, set) in src.iter().enumerate() {
        for (pos, &i) in set.iter().enumerate() {
            let rest: Vec<usize> = set
                .iter()
                .copied()
                .filter(|&k| k != i)
                .collect();
            let r = subset_position(&dst, &rest);
            let mut entry = GroupRingElement::variable_minus_one(n, i);
            if pos % 2 == 1 {
                entry = entry.neg();
            }
            m.add_to(r, c, &entry);
        }
    }
    Ok(m)
}

/// The full complex for rank `n`, differentials indexed by degree.
pub struct KoszulComplex {
    n: usize,
    diffs: Vec<RingMatrix>,
}

impl KoszulComplex {
    pub fn new(n: usize) -> Self {
        let diffs = (1..=n)
            .map(|j| koszul_differential(n, j).expect("degree in range"))
            .collect();
        KoszulComplex { n, diffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, j: usize) -> usize {
        binomial(self.n, j)
    }

    /// `d : K_j -> K_{j-1}` for `1 <= j <= n`.
    pub fn differential(&self, j: usize) -> &RingMatrix {
        &self.diffs[j - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use num_traits::Zero;

    #[test]
    fn rank_one_differential() {
        let d = koszul_differential(1, 1).unwrap();
        assert_eq!((d.rows(), d.cols()), (1, 1));
        assert_eq!(d.at(0, 0), &GroupRingElement::variable_minus_one(1, 0));
    }

    #[test]
    fn degree_two_signs() {
        // d(a1 a2) = (x1 - 1) a2 - (x2 - 1) a1
        let d = koszul_differential(2, 2).unwrap();
        assert_eq!(d.at(1, 0), &GroupRingElement::variable_minus_one(2, 0));
        assert_eq!(
            d.at(0, 0),
            &GroupRingElement::variable_minus_one(2, 1).neg()
        );
    }

    #[test]
    fn d_squared_vanishes() {
        for n in 1..=4usize {
            let k = KoszulComplex::new(n);
            for j in 2..=n {
                assert!(k.differential(j - 1).mul(k.differential(j)).is_zero());
            }
        }
    }

    #[test]
    fn dualized_complex_has_zero_maps() {
        // the "special" property: every entry augments to zero
        for n in 1..=5usize {
            for j in 1..=n {
                let d = koszul_differential(n, j).unwrap();
                assert_eq!(d.augment(), IntMatrix::zero(d.rows(), d.cols()));
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        assert!(d.at(r, c).augment().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range_degrees_are_rejected() {
        assert!(koszul_differential(3, 0).is_err());
        assert!(koszul_differential(3, 4).is_err());
    }
}
