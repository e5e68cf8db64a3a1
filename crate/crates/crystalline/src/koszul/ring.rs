//! Laurent-monomial group rings `Z[x_1^±, .., x_n^±]` and matrices over
//! them.  Exponent vectors are the elements of the lattice written
//! multiplicatively; coefficients are exact integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::IntMatrix;

/// A Laurent monomial `x^e`; multiplication adds exponent vectors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn from_exps(exps: Vec<i64>) -> Self {
        Monomial { exps }
    }

    /// The variable `x_i` (0-based).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An integer matrix acting on exponent vectors (the multiplicative form of
/// the lattice action).  Entries are converted once; lattice matrices are
/// far inside the i64 range.
#[derive(Clone, Debug)]
pub struct ExpAction {
    rows: Vec<Vec<i64>>,
}

impl ExpAction {
    pub fn from_matrix(m: &IntMatrix) -> ExpAction {
        let rows = m
            .to_i64_rows()
            .expect("action matrix entries exceed the i64 range");
        ExpAction { rows }
    }

    pub fn identity(n: usize) -> ExpAction {
        ExpAction::from_matrix(&IntMatrix::identity(n))
    }

    pub fn apply(&self, m: &Monomial) -> Monomial {
        let e = m.exps();
        let out = self
            .rows
            .iter()
            .map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum())
            .collect();
        Monomial::from_exps(out)
    }
}

/// Finite Z-linear combination of Laurent monomials; no zero coefficients
/// are ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        GroupRingElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Monomial::unit(n), BigInt::one())
    }

    pub fn monomial(m: Monomial, coeff: BigInt) -> Self {
        let n = m.len();
        let mut e = Self::zero(n);
        e.add_term(m, coeff);
        e
    }

    /// `x_i - 1`, the Koszul regular-sequence element.
    pub fn variable_minus_one(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Monomial::variable(n, i), BigInt::one());
        e.add_term(Monomial::unit(n), BigInt::from(-1));
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.n);
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        GroupRingElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// The augmentation: every monomial goes to 1.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Applies the group action to every monomial (the semilinear twist).
    pub fn twist(&self, action: &ExpAction) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(action.apply(m), c.clone());
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sign, mag) = if c.sign() == num_bigint::Sign::Minus {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dense matrix over the group ring.  `n` is the ambient lattice rank every
/// entry must share.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    entries: Vec<GroupRingElement>,
}

impl RingMatrix {
    pub fn zero(rows: usize, cols: usize, n: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            n,
            entries: vec![GroupRingElement::zero(n); rows * cols],
        }
    }

    pub fn identity(size: usize, n: usize) -> Self {
        let mut m = Self::zero(size, size, n);
        for i in 0..size {
            m.set(i, i, GroupRingElement::one(n));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, r: usize, c: usize) -> &GroupRingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GroupRingElement) {
        debug_assert_eq!(v.n(), self.n);
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &GroupRingElement) {
        let cur = self.at(r, c).add(v);
        self.set(r, c, cur);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.rows, other.cols, self.n);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(r, c, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn twist(&self, action: &ExpAction) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            entries: self.entries.iter().map(|e| e.twist(action)).collect(),
        }
    }

    /// Entrywise augmentation down to an integer matrix.
    pub fn augment(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).augment())
    }

    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.at(r, c) != other.at(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RingMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "({})  ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> GroupRingElement {
        GroupRingElement::monomial(Monomial::variable(n, i), BigInt::one())
    }

    #[test]
    fn ring_arithmetic() {
        let a = GroupRingElement::variable_minus_one(2, 0);
        let b = GroupRingElement::variable_minus_one(2, 1);
        let prod = a.mul(&b);
        // (x1 - 1)(x2 - 1) = x1 x2 - x1 - x2 + 1
        assert_eq!(prod.augment(), BigInt::zero());
        assert_eq!(prod.terms().count(), 4);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn twist_moves_monomials() {
        // swap action on two variables
        let swap = ExpAction::from_matrix(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        let a = x(2, 0);
        assert_eq!(a.twist(&swap), x(2, 1));
        let e = GroupRingElement::monomial(Monomial::from_exps(vec![2, -1]), BigInt::from(3));
        assert_eq!(
            e.twist(&swap),
            GroupRingElement::monomial(Monomial::from_exps(vec![-1, 2]), BigInt::from(3))
        );
        assert_eq!(e.augment(), e.twist(&swap).augment());
    }

    #[test]
    fn display_is_readable() {
        let mut e = GroupRingElement::zero(2);
        e.add_term(Monomial::from_exps(vec![-1, 0]), BigInt::from(-1));
        e.add_term(Monomial::unit(2), BigInt::from(2));
        assert_eq!(format!("{e}"), "-x1^-1 + 2");
    }

    #[test]
    fn matrix_product_over_the_ring() {
        let mut m = RingMatrix::zero(1, 2, 2);
        m.set(0, 0, x(2, 0));
        m.set(0, 1, x(2, 1));
        let id = RingMatrix::identity(2, 2);
        assert_eq!(m.mul(&id), m);
        assert_eq!(m.augment(), IntMatrix::from_rows(&[vec![1, 1]]));
    }
}
