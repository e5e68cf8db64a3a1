//! Smith normal form and the constructions built on it.
//!
//! `smith_normal_form` returns unimodular `U`, `V` with `U·A·V = D`, `D`
//! diagonal with a divisor chain (zeros last).  Pivots are chosen by minimal
//! absolute value to keep entry growth down; correctness never depends on
//! the pivoting strategy because every entry is an exact `BigInt`.
//!
//! Kernel bases extracted from `V` are saturated: they are columns of a
//! unimodular matrix, so the kernel is spanned as a direct summand.  That is
//! what lets `homology_at` express image vectors in exact integer
//! coordinates over the kernel.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::abelian::AbelianGroup;
use super::matrix::IntMatrix;

/// `u * a * v = d` with `u`, `v` unimodular and `d` a diagonal divisor chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape mismatch: d_out has {out_cols} columns but d_in has {in_rows} rows")]
    ShapeMismatch { out_cols: usize, in_rows: usize },
    #[error("not a complex: (d_out · d_in) is nonzero at row {row}, column {col}")]
    NotAComplex { row: usize, col: usize },
}

pub(crate) struct SnfWork {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

fn smallest_entry(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            if d.at(i, j).is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.at(bi, bj).abs() <= d.at(i, j).abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub(crate) fn snf_work(a: &IntMatrix) -> SnfWork {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let one = BigInt::one();

    for k in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, k) else {
            break;
        };
        if pi != k {
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
        }
        if pj != k {
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);
        }
        loop {
            if let Some(i) = (k + 1..m).find(|&i| !d.at(i, k).is_zero()) {
                let q = -(d.at(i, k) / d.at(k, k));
                if !q.is_zero() {
                    d.row_axpy(i, k, &q);
                    u.row_axpy(i, k, &q);
                }
                if !d.at(i, k).is_zero() {
                    // the remainder is a strictly smaller pivot
                    d.swap_rows(i, k);
                    u.swap_rows(i, k);
                }
                continue;
            }
            if let Some(j) = (k + 1..n).find(|&j| !d.at(k, j).is_zero()) {
                let q = -(d.at(k, j) / d.at(k, k));
                if !q.is_zero() {
                    d.col_axpy(j, k, &q);
                    v.col_axpy(j, k, &q);
                    v_inv.row_axpy(k, j, &(-&q));
                }
                if !d.at(k, j).is_zero() {
                    d.swap_cols(j, k);
                    v.swap_cols(j, k);
                    v_inv.swap_rows(j, k);
                }
                continue;
            }
            // pivot row and column are clear; force the pivot to divide the
            // rest of the block so the divisor chain comes out on its own
            let piv = d.at(k, k).clone();
            let mut offender = None;
            'sweep: for i in k + 1..m {
                for j in k + 1..n {
                    if !(d.at(i, j) % &piv).is_zero() {
                        offender = Some(i);
                        break 'sweep;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.row_axpy(k, i, &one);
                    u.row_axpy(k, i, &one);
                }
                None => break,
            }
        }
    }
    for k in 0..m.min(n) {
        if d.at(k, k).sign() == num_bigint::Sign::Minus {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SnfWork { d, u, v, v_inv }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let w = snf_work(a);
    SnfResult {
        u: w.u,
        d: w.d,
        v: w.v,
    }
}

/// Columns form a saturated basis of `{x : A·x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let w = snf_work(a);
    let cols: Vec<usize> = (0..a.cols())
        .filter(|&j| j >= a.rows() || w.d.at(j, j).is_zero())
        .collect();
    w.v.select_columns(&cols)
}

/// `Z^rows / column-span(A)` in invariant-factor form.
pub fn cokernel_invariants(a: &IntMatrix) -> AbelianGroup {
    let w = snf_work(a);
    let mut torsion = Vec::new();
    let mut rank = 0;
    for k in 0..a.rows().min(a.cols()) {
        let dk = w.d.at(k, k);
        if dk.is_zero() {
            break;
        }
        rank += 1;
        if !dk.is_one() {
            torsion.push(dk.clone());
        }
    }
    AbelianGroup::from_chain(a.rows() - rank, torsion)
}

/// `ker(d_out) / im(d_in)` for one position of a cochain complex.
///
/// `d_in` maps into the middle module (one column per generator of the
/// previous module), `d_out` maps out of it.  Rejects pairs that do not
/// compose to zero.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbelianGroup, ComplexError> {
    if d_out.cols() != d_in.rows() {
        return Err(ComplexError::ShapeMismatch {
            out_cols: d_out.cols(),
            in_rows: d_in.rows(),
        });
    }
    if let Some((row, col)) = d_out.mul(d_in).first_nonzero() {
        return Err(ComplexError::NotAComplex { row, col });
    }
    let w = snf_work(d_out);
    let kernel_cols: Vec<usize> = (0..d_out.cols())
        .filter(|&j| j >= d_out.rows() || w.d.at(j, j).is_zero())
        .collect();
    // coordinates of the image in the SNF basis; rows outside the kernel
    // vanish exactly because d_out · d_in = 0
    let y = w.v_inv.mul(d_in);
    #[cfg(debug_assertions)]
    {
        for j in 0..d_out.cols() {
            if !kernel_cols.contains(&j) {
                for c in 0..y.cols() {
                    debug_assert!(y.at(j, c).is_zero(), "image escapes the kernel");
                }
            }
        }
    }
    let x = y.select_rows(&kernel_cols);
    Ok(cokernel_invariants(&x))
}

/// Exact inverse of a unimodular matrix, from `U·A·V = I`.
pub fn inverse_unimodular(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let w = snf_work(a);
    if !w.d.is_identity() {
        return None;
    }
    Some(w.v.mul(&w.u))
}
