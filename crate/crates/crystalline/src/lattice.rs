//! Integral lattices for a cyclic group: an integer matrix `T` of finite
//! multiplicative order together with a declared group order `N`.
//!
//! The matrix acts on column vectors throughout the crate: the generator
//! `t` sends the basis monomial `x_i` to `x^(T e_i)`.  Non-faithful actions
//! (exact order a proper divisor of `N`) are legal and merely flagged, since
//! actions pull back along quotient homomorphisms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::linalg::{kernel_basis, IntMatrix};
use crate::util::{is_prime, p_part};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("action matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("group order must be at least 1")]
    ZeroOrder,
    #[error("matrix does not have finite order dividing {declared}: {detail}")]
    InvalidOrder { declared: u64, detail: String },
    #[error("order mismatch: {left} vs {right} (lift both lattices to a common order first)")]
    OrderMismatch { left: u64, right: u64 },
    #[error("cannot lift a lattice of order {from} to order {to}: {from} does not divide {to}")]
    BadLift { from: u64, to: u64 },
    #[error("{p} is not a prime divisor of the group order {order}")]
    NotASylowPrime { p: u64, order: u64 },
    #[error("exterior power degree {j} out of range 0..={n}")]
    DegreeOutOfRange { j: usize, n: usize },
    #[error("operation requires prime group order, got {order}")]
    NotPrimeOrder { order: u64 },
    #[error("inconsistent local decomposition: {detail}")]
    InconsistentPType { detail: String },
    #[error("matrix entry does not fit the JSON integer range")]
    EntryOverflow,
    #[error("bad lattice JSON: {0}")]
    Json(String),
}

/// What validation established about an action matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub exact_order: u64,
    pub faithful: bool,
    pub det: BigInt,
}

/// Checks `T^N = I` and `det T = ±1`, reporting the exact multiplicative
/// order (a divisor of `N`).
pub fn validate_lattice(action: &IntMatrix, order: u64) -> Result<LatticeReport, LatticeError> {
    if !action.is_square() {
        return Err(LatticeError::NotSquare {
            rows: action.rows(),
            cols: action.cols(),
        });
    }
    if order == 0 {
        return Err(LatticeError::ZeroOrder);
    }
    let mut power = IntMatrix::identity(action.rows());
    let mut exact = None;
    for k in 1..=order {
        power = power.mul(action);
        if power.is_identity() {
            exact = Some(k);
            break;
        }
    }
    let Some(exact) = exact else {
        return Err(LatticeError::InvalidOrder {
            declared: order,
            detail: format!("no power up to {order} is the identity"),
        });
    };
    if order % exact != 0 {
        return Err(LatticeError::InvalidOrder {
            declared: order,
            detail: format!("exact order {exact} does not divide {order}"),
        });
    }
    let det = action.det();
    if !det.abs().is_one() {
        return Err(LatticeError::InvalidOrder {
            declared: order,
            detail: format!("determinant {det} is not a unit"),
        });
    }
    Ok(LatticeReport {
        exact_order: exact,
        faithful: exact == order,
        det,
    })
}

/// Companion-form matrix: ones on the subdiagonal, last column `v`.
/// The characteristic polynomial is `z^n - v_n z^(n-1) - ... - v_1`.
pub(crate) fn companion_matrix(v: &[i64]) -> IntMatrix {
    let n = v.len();
    IntMatrix::from_fn(n, n, |r, c| {
        if c + 1 == n {
            BigInt::from(v[r])
        } else if r == c + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// A ZG-lattice for `G = Z/N`: rank, declared order, generator action.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    action: IntMatrix,
    order: u64,
    exact_order: u64,
    label: Option<String>,
}

impl Lattice {
    pub fn new(action: IntMatrix, order: u64) -> Result<Self, LatticeError> {
        let report = validate_lattice(&action, order)?;
        Ok(Lattice {
            action,
            order,
            exact_order: report.exact_order,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Rank-`n` lattice with trivial action (order 1).
    pub fn trivial(n: usize) -> Self {
        Lattice {
            action: IntMatrix::identity(n),
            order: 1,
            exact_order: 1,
            label: None,
        }
    }

    /// The rank-1 sign lattice at order 2.
    pub fn sign() -> Self {
        Lattice::new(IntMatrix::from_rows(&[vec![-1]]), 2).expect("sign lattice")
    }

    /// Permutation lattice: `t` sends `x_i` to `x_perm[i]`.
    pub fn permutation(perm: &[usize], order: u64) -> Result<Self, LatticeError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(LatticeError::InvalidOrder {
                    declared: order,
                    detail: "not a permutation".into(),
                });
            }
            seen[p] = true;
        }
        let mut m = IntMatrix::zero(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.set(p, i, BigInt::one());
        }
        Lattice::new(m, order)
    }

    /// The regular representation: cyclic permutation of rank `order`.
    pub fn regular(order: u64) -> Self {
        let n = order as usize;
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Lattice::permutation(&perm, order).expect("cyclic permutation lattice")
    }

    /// The augmentation-ideal lattice of rank `order - 1`: ones on the
    /// superdiagonal and `-1` across the last row.
    pub fn augmentation_ideal(order: u64) -> Result<Self, LatticeError> {
        if order < 2 {
            return Err(LatticeError::InvalidOrder {
                declared: order,
                detail: "augmentation ideal needs order >= 2".into(),
            });
        }
        let m = (order - 1) as usize;
        let action = IntMatrix::from_fn(m, m, |r, c| {
            if r + 1 == m {
                BigInt::from(-1)
            } else if c == r + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Lattice::new(action, order)
    }

    pub fn n(&self) -> usize {
        self.action.rows()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exact_order(&self) -> u64 {
        self.exact_order
    }

    pub fn is_faithful(&self) -> bool {
        self.exact_order == self.order
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn report(&self) -> LatticeReport {
        LatticeReport {
            exact_order: self.exact_order,
            faithful: self.is_faithful(),
            det: self.action.det(),
        }
    }

    /// The dual lattice `Hom(L, Z)` with action `(T^{-1})^t`.  Involutive.
    pub fn dual(&self) -> Lattice {
        let inv = self.action.pow((self.exact_order - 1) as usize);
        Lattice {
            action: inv.transpose(),
            order: self.order,
            exact_order: self.exact_order,
            label: None,
        }
    }

    /// The `j`-th exterior power: the compound matrix of `j x j` minors in
    /// lexicographically ordered index sets (rows = target set, columns =
    /// source set).
    pub fn exterior_power(&self, j: usize) -> Result<Lattice, LatticeError> {
        let n = self.n();
        if j > n {
            return Err(LatticeError::DegreeOutOfRange { j, n });
        }
        Lattice::new(self.action.compound(j), self.order)
    }

    /// Block-diagonal sum.  Declared orders must agree; callers that mean
    /// to mix orders must lift explicitly first.
    pub fn direct_sum(&self, other: &Lattice) -> Result<Lattice, LatticeError> {
        if self.order != other.order {
            return Err(LatticeError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let action = self.action.block_diag(&other.action);
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            _ => None,
        };
        let mut l = Lattice::new(action, self.order)?;
        l.label = label;
        Ok(l)
    }

    /// Same matrix, declared order raised to a multiple (the action factors
    /// through the original quotient).
    pub fn lift_to(&self, order: u64) -> Result<Lattice, LatticeError> {
        if order == 0 || order % self.order != 0 {
            return Err(LatticeError::BadLift {
                from: self.order,
                to: order,
            });
        }
        Ok(Lattice {
            action: self.action.clone(),
            order,
            exact_order: self.exact_order,
            label: self.label.clone(),
        })
    }

    /// Restriction to the Sylow `p`-subgroup: generator `T^(N/p^a)` at
    /// declared order `p^a`, where `p^a` is the exact `p`-part of `N`.
    pub fn restrict_to_sylow(&self, p: u64) -> Result<Lattice, LatticeError> {
        if !is_prime(p) || self.order % p != 0 {
            return Err(LatticeError::NotASylowPrime {
                p,
                order: self.order,
            });
        }
        let pa = p_part(self.order, p);
        let action = self.action.pow((self.order / pa) as usize);
        let mut l = Lattice::new(action, pa)?;
        l.label = self.label.as_ref().map(|s| format!("{s}|sylow{p}"));
        Ok(l)
    }

    /// `T^0 .. T^(N-1)`.
    pub fn generator_powers(&self) -> Vec<IntMatrix> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = IntMatrix::identity(self.n());
        for _ in 0..self.order {
            out.push(cur.clone());
            cur = cur.mul(&self.action);
        }
        out
    }

    /// `I + T + ... + T^(N-1)`.
    pub fn norm_matrix(&self) -> IntMatrix {
        self.generator_powers()
            .into_iter()
            .fold(IntMatrix::zero(self.n(), self.n()), |acc, p| acc.add(&p))
    }

    /// Rank of the fixed sublattice `ker(T - I)`.
    pub fn fixed_rank(&self) -> usize {
        kernel_basis(&self.action.sub(&IntMatrix::identity(self.n()))).cols()
    }

    pub fn to_json(&self) -> Result<LatticeJson, LatticeError> {
        Ok(LatticeJson {
            n: self.n(),
            order: self.order,
            matrix: self
                .action
                .to_i64_rows()
                .ok_or(LatticeError::EntryOverflow)?,
            label: self.label.clone(),
        })
    }

    pub fn from_json(json: &LatticeJson) -> Result<Lattice, LatticeError> {
        if json.matrix.len() != json.n || json.matrix.iter().any(|r| r.len() != json.n) {
            return Err(LatticeError::Json(format!(
                "matrix shape does not match n = {}",
                json.n
            )));
        }
        let action = IntMatrix::from_rows(&json.matrix);
        let mut l = Lattice::new(action, json.order)?;
        l.label = json.label.clone();
        Ok(l)
    }

    pub fn from_json_str(s: &str) -> Result<Lattice, LatticeError> {
        let json: LatticeJson =
            serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))?;
        Lattice::from_json(&json)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Lattice(n={}, N={}, T={}",
            self.n(),
            self.order,
            self.action
        )?;
        if let Some(l) = &self.label {
            write!(f, ", {l}")?;
        }
        write!(f, ")")
    }
}

/// The wire form `{ "n": .., "N": .., "T": [[..]], "label": .. }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    #[serde(rename = "N")]
    pub order: u64,
    #[serde(rename = "T")]
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Localization type of a lattice at a prime `p`: multiplicities of the
/// three indecomposables (trivial, group ring, augmentation ideal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PTypeDecomposition {
    /// trivial summands
    pub r: usize,
    /// group-ring summands
    pub s: usize,
    /// augmentation-ideal summands
    pub t: usize,
    pub p: u64,
}

impl PTypeDecomposition {
    pub fn rank(&self) -> usize {
        self.r + self.s * self.p as usize + self.t * (self.p as usize - 1)
    }

    /// The model lattice `Z^r ⊕ ZG^s ⊕ IG^t` at order `p`.
    pub fn reconstruct(&self) -> Lattice {
        let mut acc = Lattice::trivial(self.r)
            .lift_to(self.p)
            .expect("trivial lattice lifts anywhere");
        for _ in 0..self.s {
            acc = acc
                .direct_sum(&Lattice::regular(self.p))
                .expect("same order");
        }
        for _ in 0..self.t {
            acc = acc
                .direct_sum(&Lattice::augmentation_ideal(self.p).expect("p >= 2"))
                .expect("same order");
        }
        acc
    }
}

/// Reads the `(r, s, t)` type of a prime-order lattice off its degree-1 and
/// degree-2 cohomology: `t` counts the invariant factors of `H^1`, `r` those
/// of `H^2`, and `s` is what the rank forces.
pub fn decompose_p_type(l: &Lattice) -> Result<PTypeDecomposition, LatticeError> {
    let p = l.order();
    if !is_prime(p) {
        return Err(LatticeError::NotPrimeOrder { order: p });
    }
    let h1 = crate::cohomology::cyclic_cohomology(l, 1);
    let h2 = crate::cohomology::cyclic_cohomology(l, 2);
    for (name, h) in [("H^1", &h1), ("H^2", &h2)] {
        if h.free_rank() != 0 || h.torsion().iter().any(|d| *d != BigInt::from(p)) {
            return Err(LatticeError::InconsistentPType {
                detail: format!("{name} = {h} is not a sum of Z/{p}"),
            });
        }
    }
    let t = h1.torsion().len();
    let r = h2.torsion().len();
    let n = l.n();
    let used = r + t * (p as usize - 1);
    if used > n || (n - used) % p as usize != 0 {
        return Err(LatticeError::InconsistentPType {
            detail: format!("rank {n} is not r + s*p + t*(p-1) with r={r}, t={t}"),
        });
    }
    let s = (n - used) / p as usize;
    Ok(PTypeDecomposition { r, s, t, p })
}
