//! Chain-level cyclic group actions on the Koszul resolution.
//!
//! A `TauAction` is the degree-1 data: a matrix over the group ring giving
//! the image of each generator `a_i`.  The action of the group generator on
//! scalars is the lattice action itself, and the extension to higher
//! degrees is forced: images multiply in the exterior algebra while scalars
//! pass through twisted (`τ(α·u) = α^t·τ(u)`).
//!
//! `verify_compatibility` checks the defining axioms mechanically and
//! exactly; nothing in this crate ever assumes an action is compatible
//! without running it.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::ring::{ExpAction, GroupRingElement, Monomial, RingMatrix};
use super::{koszul_differential, KoszulError};
use crate::lattice::{companion_matrix, Lattice};
use crate::linalg::{kernel_basis, IntMatrix};
use crate::util::{index_subsets, subset_position};

pub const PRESET_NAMES: [&str; 7] = [
    "sign",
    "rho4",
    "z4_2",
    "z8_4",
    "z8_6",
    "z12_4_sylow2",
    "z12_4_sylow3",
];

/// Degree-1 action data tied to the lattice it claims compatibility with.
#[derive(Clone)]
pub struct TauAction {
    lattice: Lattice,
    mat: RingMatrix,
}

impl TauAction {
    pub fn new(lattice: Lattice, mat: RingMatrix) -> Result<Self, KoszulError> {
        let n = lattice.n();
        if mat.rows() != n || mat.cols() != n || mat.n() != n {
            return Err(KoszulError::BadTauData(format!(
                "action matrix must be {n}x{n} over a rank-{n} group ring"
            )));
        }
        Ok(TauAction { lattice, mat })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.mat
    }

    pub fn order(&self) -> u64 {
        self.lattice.order()
    }

    /// Pulls the action back along `Z/order -> Z/(current order)`.
    pub fn lift_to(&self, order: u64) -> Result<TauAction, KoszulError> {
        Ok(TauAction {
            lattice: self.lattice.lift_to(order)?,
            mat: self.mat.clone(),
        })
    }

    /// The matrix of the action on `K_j`, by wedge-multiplying degree-1
    /// images and normalizing to the lexicographic basis.
    pub fn extend(&self, j: usize) -> Result<RingMatrix, KoszulError> {
        let n = self.lattice.n();
        if j > n {
            return Err(KoszulError::DegreeOutOfRange { j, n });
        }
        Ok(extend_matrix(&self.mat, j))
    }

    /// `[τ^0, τ^1, .., τ^(N-1)]` in degree `j`, composed semilinearly.
    pub fn degree_powers(&self, j: usize) -> Result<Vec<RingMatrix>, KoszulError> {
        let base = self.extend(j)?;
        let action = ExpAction::from_matrix(self.lattice.action());
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = RingMatrix::identity(base.rows(), self.lattice.n());
        for _ in 0..self.order() {
            out.push(cur.clone());
            cur = base.mul(&cur.twist(&action));
        }
        Ok(out)
    }

    pub fn to_rows_json(&self) -> Result<Vec<TauRowJson>, KoszulError> {
        let n = self.lattice.n();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut terms = Vec::new();
            for g in 0..n {
                for (m, c) in self.mat.at(g, i).terms() {
                    let coeff = i64::try_from(c).map_err(|_| {
                        KoszulError::BadTauData("coefficient exceeds i64".into())
                    })?;
                    terms.push(TauTermJson {
                        coeff,
                        exp: m.exps().to_vec(),
                        gen: g + 1,
                    });
                }
            }
            rows.push(TauRowJson { i: i + 1, terms });
        }
        Ok(rows)
    }

    pub fn from_rows_json(lattice: Lattice, rows: &[TauRowJson]) -> Result<TauAction, KoszulError> {
        let n = lattice.n();
        let mut mat = RingMatrix::zero(n, n, n);
        for row in rows {
            if row.i == 0 || row.i > n {
                return Err(KoszulError::BadTauData(format!(
                    "generator index {} out of range 1..={n}",
                    row.i
                )));
            }
            for term in &row.terms {
                if term.gen == 0 || term.gen > n || term.exp.len() != n {
                    return Err(KoszulError::BadTauData(format!(
                        "bad term in row {}: gen {}, exponent length {}",
                        row.i,
                        term.gen,
                        term.exp.len()
                    )));
                }
                let mono = Monomial::from_exps(term.exp.clone());
                mat.add_to(
                    term.gen - 1,
                    row.i - 1,
                    &GroupRingElement::monomial(mono, BigInt::from(term.coeff)),
                );
            }
        }
        TauAction::new(lattice, mat)
    }
}

impl std::fmt::Debug for TauAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "TauAction on {:?}", self.lattice)?;
        let n = self.lattice.n();
        for i in 0..n {
            write!(f, "  tau(a{}) =", i + 1)?;
            let mut empty = true;
            for g in 0..n {
                let e = self.mat.at(g, i);
                if !e.is_zero() {
                    write!(f, " ({})·a{}", e, g + 1)?;
                    empty = false;
                }
            }
            if empty {
                write!(f, " 0")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One serialized row `tau(a_i) = Σ c · x^e · a_gen` (1-based indices).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauRowJson {
    pub i: usize,
    pub terms: Vec<TauTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauTermJson {
    pub coeff: i64,
    pub exp: Vec<i64>,
    pub gen: usize,
}

/// Extends a degree-1 matrix to degree `j` by wedge multiplication.
fn extend_matrix(mat: &RingMatrix, j: usize) -> RingMatrix {
    let n = mat.rows();
    let sets = index_subsets(n, j);
    let mut out = RingMatrix::zero(sets.len(), sets.len(), n);
    for (c, set) in sets.iter().enumerate() {
        let mut acc: BTreeMap<Vec<usize>, GroupRingElement> = BTreeMap::new();
        acc.insert(Vec::new(), GroupRingElement::one(n));
        for &i in set {
            let mut next: BTreeMap<Vec<usize>, GroupRingElement> = BTreeMap::new();
            for (partial, coeff) in &acc {
                for g in 0..n {
                    let cg = mat.at(g, i);
                    if cg.is_zero() {
                        continue;
                    }
                    let Err(pos) = partial.binary_search(&g) else {
                        continue; // repeated generator wedges to zero
                    };
                    let mut term = coeff.mul(cg);
                    if (partial.len() - pos) % 2 == 1 {
                        term = term.neg();
                    }
                    let mut key = partial.clone();
                    key.insert(pos, g);
                    match next.get_mut(&key) {
                        Some(e) => *e = e.add(&term),
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
            acc = next;
        }
        for (key, coeff) in acc {
            if coeff.is_zero() {
                continue;
            }
            let r = subset_position(&sets, &key);
            out.add_to(r, c, &coeff);
        }
    }
    out
}

/// Permutation action `τ(t)(a_i) = a_perm[i]` on the permutation lattice.
pub fn tau_permutation(perm: &[usize], order: u64) -> Result<TauAction, KoszulError> {
    let lattice = Lattice::permutation(perm, order)?;
    let n = perm.len();
    let mut mat = RingMatrix::zero(n, n, n);
    for (i, &p) in perm.iter().enumerate() {
        mat.set(p, i, GroupRingElement::one(n));
    }
    TauAction::new(lattice, mat)
}

/// The augmentation-ideal action: with `m = order - 1` generators,
/// `τ(t)(a_1) = -x_m^{-1} a_m` and `τ(t)(a_k) = -x_m^{-1}(a_m - a_{k-1})`.
pub fn tau_ig(order: u64) -> Result<TauAction, KoszulError> {
    if order < 2 {
        return Err(KoszulError::BadOrder {
            order,
            detail: "augmentation-ideal action needs order >= 2".into(),
        });
    }
    let lattice = Lattice::augmentation_ideal(order)?;
    let m = lattice.n();
    let last_inv = Monomial::from_exps({
        let mut e = vec![0i64; m];
        e[m - 1] = -1;
        e
    });
    let minus_last_inv = GroupRingElement::monomial(last_inv.clone(), BigInt::from(-1));
    let plus_last_inv = GroupRingElement::monomial(last_inv, BigInt::one());
    let mut mat = RingMatrix::zero(m, m, m);
    for k in 0..m {
        mat.add_to(m - 1, k, &minus_last_inv);
        if k > 0 {
            mat.add_to(k - 1, k, &plus_last_inv);
        }
    }
    TauAction::new(lattice, mat)
}

/// Block action for the direct sum of lattices; orders must agree.
pub fn tau_direct_sum(a: &TauAction, b: &TauAction) -> Result<TauAction, KoszulError> {
    if a.order() != b.order() {
        return Err(KoszulError::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    let (n1, n2) = (a.lattice.n(), b.lattice.n());
    let n = n1 + n2;
    let lattice = a.lattice.direct_sum(&b.lattice)?;
    let mut mat = RingMatrix::zero(n, n, n);
    for r in 0..n1 {
        for c in 0..n1 {
            let e = a.mat.at(r, c);
            if !e.is_zero() {
                mat.set(r, c, embed_elem(e, n, 0));
            }
        }
    }
    for r in 0..n2 {
        for c in 0..n2 {
            let e = b.mat.at(r, c);
            if !e.is_zero() {
                mat.set(n1 + r, n1 + c, embed_elem(e, n, n1));
            }
        }
    }
    TauAction::new(lattice, mat)
}

fn embed_elem(e: &GroupRingElement, total: usize, offset: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero(total);
    for (m, c) in e.terms() {
        let mut exps = vec![0i64; total];
        exps[offset..offset + m.len()].copy_from_slice(m.exps());
        out.add_term(Monomial::from_exps(exps), c.clone());
    }
    out
}

/// A named action, possibly on an adapted basis of the lattice it covers.
///
/// `source` is the catalog form of the lattice; `tau` acts on
/// `tau.lattice()`.  When the two differ, `base_change` is a unimodular `P`
/// with `source · P = P · adapted`, so the two matrices present the same
/// module.
#[derive(Clone, Debug)]
pub struct TauPreset {
    pub name: String,
    pub tau: TauAction,
    pub source: Lattice,
    pub base_change: Option<IntMatrix>,
    pub local_prime: Option<u64>,
}

pub fn tau_preset(name: &str) -> Result<TauPreset, KoszulError> {
    match name {
        "sign" => {
            let lattice = Lattice::sign();
            let mut mat = RingMatrix::zero(1, 1, 1);
            mat.set(
                0,
                0,
                GroupRingElement::monomial(Monomial::from_exps(vec![-1]), BigInt::from(-1)),
            );
            let tau = TauAction::new(lattice.clone(), mat)?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source: lattice,
                base_change: None,
                local_prime: None,
            })
        }
        "rho4" => {
            let lattice = Lattice::new(IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]), 4)?;
            let mut mat = RingMatrix::zero(2, 2, 2);
            mat.set(
                1,
                0,
                GroupRingElement::monomial(Monomial::from_exps(vec![0, -1]), BigInt::from(-1)),
            );
            mat.set(0, 1, GroupRingElement::one(2));
            let tau = TauAction::new(lattice.clone(), mat)?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source: lattice,
                base_change: None,
                local_prime: None,
            })
        }
        "z4_2" => {
            let lattice = Lattice::new(companion_matrix(&[-1, 0]), 4)?;
            let mut mat = RingMatrix::zero(2, 2, 2);
            mat.set(1, 0, GroupRingElement::one(2));
            mat.set(
                0,
                1,
                GroupRingElement::monomial(Monomial::from_exps(vec![-1, 0]), BigInt::from(-1)),
            );
            let tau = TauAction::new(lattice.clone(), mat)?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source: lattice,
                base_change: None,
                local_prime: None,
            })
        }
        "z8_4" => {
            let source = Lattice::new(companion_matrix(&[-1, 0, 0, 0]), 8)?;
            // the generator formulas are stated on the transposed basis
            let adapted = Lattice::new(source.action().transpose(), 8)?;
            let mut mat = RingMatrix::zero(4, 4, 4);
            mat.set(
                3,
                0,
                GroupRingElement::monomial(
                    Monomial::from_exps(vec![0, 0, 0, -1]),
                    BigInt::from(-1),
                ),
            );
            mat.set(0, 1, GroupRingElement::one(4));
            mat.set(1, 2, GroupRingElement::one(4));
            mat.set(2, 3, GroupRingElement::one(4));
            let tau = TauAction::new(adapted, mat)?;
            let base_change = conjugating_unimodular(source.action(), tau.lattice().action())
                .ok_or_else(|| KoszulError::ConjugationNotFound { name: name.into() })?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source,
                base_change: Some(base_change),
                local_prime: None,
            })
        }
        "z8_6" => {
            let source = Lattice::new(companion_matrix(&[-1, 0, -1, 0, -1, 0]), 8)?;
            let adapted = Lattice::new(source.action().transpose(), 8)?;
            let x6_inv = |c: i64| {
                GroupRingElement::monomial(
                    Monomial::from_exps(vec![0, 0, 0, 0, 0, -1]),
                    BigInt::from(c),
                )
            };
            let mut mat = RingMatrix::zero(6, 6, 6);
            mat.set(5, 0, x6_inv(-1));
            mat.set(0, 1, GroupRingElement::one(6));
            mat.set(1, 2, x6_inv(1));
            mat.set(5, 2, x6_inv(-1));
            mat.set(2, 3, GroupRingElement::one(6));
            mat.set(3, 4, x6_inv(1));
            mat.set(5, 4, x6_inv(-1));
            mat.set(4, 5, GroupRingElement::one(6));
            let tau = TauAction::new(adapted, mat)?;
            let base_change = conjugating_unimodular(source.action(), tau.lattice().action())
                .ok_or_else(|| KoszulError::ConjugationNotFound { name: name.into() })?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source,
                base_change: Some(base_change),
                local_prime: None,
            })
        }
        "z12_4_sylow2" => {
            let z12 = Lattice::new(companion_matrix(&[-1, 0, 1, 0]), 12)?;
            let source = z12.restrict_to_sylow(2)?;
            // (T^3)^2 = -I, so the restriction splits into two copies of the
            // faithful rank-2 representation of Z/4
            let rho4 = tau_preset("rho4")?.tau;
            let tau = tau_direct_sum(&rho4, &rho4)?;
            let base_change = conjugating_unimodular(source.action(), tau.lattice().action())
                .ok_or_else(|| KoszulError::ConjugationNotFound { name: name.into() })?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source,
                base_change: Some(base_change),
                local_prime: Some(2),
            })
        }
        "z12_4_sylow3" => {
            let z12 = Lattice::new(companion_matrix(&[-1, 0, 1, 0]), 12)?;
            let source = z12.restrict_to_sylow(3)?;
            // T^4 has order 3 with no fixed vectors: two augmentation ideals
            let ig3 = tau_ig(3)?;
            let tau = tau_direct_sum(&ig3, &ig3)?;
            let base_change = conjugating_unimodular(source.action(), tau.lattice().action())
                .ok_or_else(|| KoszulError::ConjugationNotFound { name: name.into() })?;
            Ok(TauPreset {
                name: name.into(),
                tau,
                source,
                base_change: Some(base_change),
                local_prime: Some(3),
            })
        }
        other => Err(KoszulError::UnknownPreset(other.into())),
    }
}

/// Searches for a unimodular `P` with `a · P = P · b` by solving the
/// intertwiner equation over `Z` and scanning small coordinate vectors of
/// the solution lattice.
pub(crate) fn conjugating_unimodular(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return None;
    }
    let n = a.rows();
    if n == 0 {
        return Some(IntMatrix::identity(0));
    }
    let sys = IntMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (r, s) = (col / n, col % n);
        let mut v = BigInt::from(0);
        if j == s {
            v += a.at(i, r);
        }
        if i == r {
            v -= b.at(s, j);
        }
        v
    });
    let ker = kernel_basis(&sys);
    let dim = ker.cols();
    if dim == 0 {
        return None;
    }
    let basis: Vec<IntMatrix> = (0..dim)
        .map(|k| IntMatrix::from_fn(n, n, |r, s| ker.at(r * n + s, k).clone()))
        .collect();
    let max_radius = if dim > 6 { 1 } else { 2 };
    for radius in 1..=max_radius {
        let mut coeffs = vec![-radius; dim];
        'odometer: loop {
            // skip zero and one representative per sign pair
            if coeffs.iter().find(|&&c| c != 0).map(|&c| c > 0) == Some(true) {
                let mut cand = IntMatrix::zero(n, n);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        cand = cand.add(&basis[k].mul_scalar(c));
                    }
                }
                if cand.is_unimodular() {
                    return Some(cand);
                }
            }
            let mut i = 0;
            loop {
                if i == dim {
                    break 'odometer;
                }
                coeffs[i] += 1;
                if coeffs[i] > radius {
                    coeffs[i] = -radius;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompatAxiom {
    /// shape of the action data vs the lattice
    Shape,
    /// `d τ(t)(a_i) = (d a_i)^t` in degree 1
    DegreeOneChain,
    /// `τ(t)^N = 1` in degree 1
    FiniteOrder,
    /// `d ∘ τ = τ ∘ d` in the given degree
    ChainMap(usize),
    /// augmentation preservation in degree 0
    Augmentation,
}

#[derive(Debug, Clone)]
pub struct CompatFailure {
    pub axiom: CompatAxiom,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct CompatReport {
    pub pass: bool,
    pub degrees_checked: usize,
    pub failure: Option<CompatFailure>,
}

impl CompatReport {
    fn fail(axiom: CompatAxiom, witness: String, degrees_checked: usize) -> Self {
        CompatReport {
            pass: false,
            degrees_checked,
            failure: Some(CompatFailure { axiom, witness }),
        }
    }
}

/// Checks the compatible-action axioms for `tau` against `l`, mechanically
/// and exactly, through degree `jmax` (clamped to the rank).  Returns the
/// first failing axiom with a witness; failures are reports, not errors.
pub fn verify_compatibility(l: &Lattice, tau: &TauAction, jmax: usize) -> CompatReport {
    let n = l.n();
    let order = l.order();
    let jmax = jmax.min(n);
    let mat = tau.matrix();
    if mat.rows() != n || mat.cols() != n || mat.n() != n {
        return CompatReport::fail(
            CompatAxiom::Shape,
            format!(
                "action data is {}x{} over rank {}, lattice has rank {n}",
                mat.rows(),
                mat.cols(),
                mat.n()
            ),
            0,
        );
    }
    let action = ExpAction::from_matrix(l.action());

    // (a) degree-1 intertwining with the twisted differential
    if n > 0 {
        let d1 = koszul_differential(n, 1).expect("degree 1 in range");
        let lhs = d1.mul(mat);
        let rhs = d1.twist(&action);
        if let Some((_, c)) = lhs.first_difference(&rhs) {
            return CompatReport::fail(
                CompatAxiom::DegreeOneChain,
                format!(
                    "d·tau(a{}) = {} but (d a{})^t = {}",
                    c + 1,
                    lhs.at(0, c),
                    c + 1,
                    rhs.at(0, c)
                ),
                0,
            );
        }
    }

    // (b) the action has the group's order in degree 1
    let mut power = RingMatrix::identity(n, n);
    for _ in 0..order {
        power = mat.mul(&power.twist(&action));
    }
    if power != RingMatrix::identity(n, n) {
        let id = RingMatrix::identity(n, n);
        let (_, c) = power.first_difference(&id).expect("difference exists");
        return CompatReport::fail(
            CompatAxiom::FiniteOrder,
            format!("tau^{order}(a{}) has coefficient column != e_{}", c + 1, c + 1),
            0,
        );
    }

    // (c) the full chain-map identity in higher degrees; follows from (a)
    // and the wedge extension, but it is cheap and checked anyway
    for j in 2..=jmax {
        let dj = koszul_differential(n, j).expect("degree in range");
        let tau_j = extend_matrix(mat, j);
        let tau_jm1 = extend_matrix(mat, j - 1);
        let lhs = dj.mul(&tau_j);
        let rhs = tau_jm1.mul(&dj.twist(&action));
        if let Some((r, c)) = lhs.first_difference(&rhs) {
            return CompatReport::fail(
                CompatAxiom::ChainMap(j),
                format!(
                    "degree {j}, entry ({r}, {c}): d·tau gives {} but tau·d gives {}",
                    lhs.at(r, c),
                    rhs.at(r, c)
                ),
                j,
            );
        }
    }

    // (d) augmentation preservation in degree 0
    for i in 0..n {
        let xi = GroupRingElement::monomial(Monomial::variable(n, i), BigInt::one());
        if !xi.twist(&action).augment().is_one() {
            return CompatReport::fail(
                CompatAxiom::Augmentation,
                format!("x{} does not augment to 1 after the action", i + 1),
                jmax,
            );
        }
    }

    CompatReport {
        pass: true,
        degrees_checked: jmax,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn permutation_action_verifies() {
        for n in 1..=4usize {
            let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let tau = tau_permutation(&perm, n as u64).unwrap();
            let report = verify_compatibility(tau.lattice(), &tau, n);
            assert!(report.pass, "{:?}", report.failure);
        }
    }

    #[test]
    fn ig_action_matches_the_stated_formulas() {
        let tau = tau_ig(3).unwrap();
        // tau(a1) = -x2^-1 a2
        assert_eq!(
            tau.matrix().at(1, 0),
            &GroupRingElement::monomial(Monomial::from_exps(vec![0, -1]), BigInt::from(-1))
        );
        assert!(tau.matrix().at(0, 0).is_zero());
        // tau(a2) = -x2^-1 (a2 - a1)
        assert_eq!(
            tau.matrix().at(0, 1),
            &GroupRingElement::monomial(Monomial::from_exps(vec![0, -1]), BigInt::one())
        );
        assert_eq!(
            tau.matrix().at(1, 1),
            &GroupRingElement::monomial(Monomial::from_exps(vec![0, -1]), BigInt::from(-1))
        );
        let report = verify_compatibility(tau.lattice(), &tau, 2);
        assert!(report.pass);
    }

    #[test]
    fn ig_action_verifies_up_to_order_eight() {
        for order in 2..=8u64 {
            let tau = tau_ig(order).unwrap();
            let report = verify_compatibility(tau.lattice(), &tau, tau.lattice().n());
            assert!(report.pass, "order {order}: {:?}", report.failure);
        }
    }

    #[test]
    fn extension_signs() {
        // swap on two generators: tau(a1 a2) = a2 a1 = -a1 a2
        let tau = tau_permutation(&[1, 0], 2).unwrap();
        let ext = tau.extend(2).unwrap();
        assert_eq!(ext.at(0, 0), &GroupRingElement::one(2).neg());

        // for the rank-2 augmentation ideal: tau(a1 a2) = x2^-2 a1 a2
        let tau = tau_ig(3).unwrap();
        let ext = tau.extend(2).unwrap();
        assert_eq!(
            ext.at(0, 0),
            &GroupRingElement::monomial(Monomial::from_exps(vec![0, -2]), BigInt::one())
        );
    }

    #[test]
    fn extension_of_identity_degree_zero() {
        let tau = tau_ig(3).unwrap();
        let ext = tau.extend(0).unwrap();
        assert_eq!(ext, RingMatrix::identity(1, 2));
    }

    #[test]
    fn linearized_action_recovers_the_lattice() {
        // augmenting the degree-1 matrix gives back the action matrix
        for tau in [tau_ig(4).unwrap(), tau_permutation(&[1, 2, 0], 3).unwrap()] {
            assert_eq!(&tau.matrix().augment(), tau.lattice().action());
        }
    }

    #[test]
    fn augmented_extension_is_the_compound_matrix() {
        // the extended action, linearized, is the compound matrix of the
        // lattice action in the same subset basis; in particular for a
        // permutation it is the signed permutation on j-subsets
        for tau in [
            tau_ig(4).unwrap(),
            tau_permutation(&[2, 0, 1, 3], 3).unwrap(),
            tau_preset("z8_4").unwrap().tau,
        ] {
            let n = tau.lattice().n();
            for j in 0..=n {
                assert_eq!(
                    tau.extend(j).unwrap().augment(),
                    tau.lattice().action().compound(j)
                );
            }
        }
        // signed permutation shape on subsets
        let tau = tau_permutation(&[1, 2, 0], 3).unwrap();
        let m = tau.extend(2).unwrap().augment();
        for r in 0..3 {
            for c in 0..3 {
                let v = i64::try_from(m.at(r, c)).unwrap();
                assert!(v.abs() <= 1);
            }
        }
        assert!(m.is_unimodular());
    }

    #[test]
    fn tau_powers_have_semilinear_twists() {
        // tau^2(a1 a2) for the rank-2 augmentation ideal is x1^-2 a1 a2
        let tau = tau_ig(3).unwrap();
        let pows = tau.degree_powers(2).unwrap();
        assert_eq!(
            pows[2].at(0, 0),
            &GroupRingElement::monomial(Monomial::from_exps(vec![-2, 0]), BigInt::one())
        );
    }

    #[test]
    fn direct_sums_stay_block_shaped() {
        let a = tau_permutation(&[1, 0], 6).unwrap();
        let b = tau_ig(6).unwrap();
        let sum = tau_direct_sum(&a, &b).unwrap();
        assert_eq!(sum.lattice().n(), 7);
        for r in 0..2 {
            for c in 2..7 {
                assert!(sum.matrix().at(r, c).is_zero() || c < 2);
            }
        }
        for r in 2..7 {
            for c in 0..2 {
                assert!(sum.matrix().at(r, c).is_zero());
            }
        }
        let report = verify_compatibility(sum.lattice(), &sum, 3);
        assert!(report.pass, "{:?}", report.failure);

        assert!(matches!(
            tau_direct_sum(&tau_ig(3).unwrap(), &tau_ig(4).unwrap()),
            Err(KoszulError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn presets_verify() {
        for name in PRESET_NAMES {
            let preset = tau_preset(name).unwrap();
            let l = preset.tau.lattice().clone();
            let report = verify_compatibility(&l, &preset.tau, l.n());
            assert!(report.pass, "{name}: {:?}", report.failure);
            if let Some(p) = &preset.base_change {
                assert!(p.is_unimodular(), "{name}: base change not unimodular");
                assert_eq!(
                    preset.source.action().mul(p),
                    p.mul(l.action()),
                    "{name}: base change does not intertwine"
                );
            } else {
                assert_eq!(&preset.source, preset.tau.lattice());
            }
        }
        assert!(tau_preset("nope").is_err());
    }

    #[test]
    fn constructed_bad_action_fails_with_witness() {
        // identity action data on the sign lattice
        let l = Lattice::sign();
        let mat = RingMatrix::identity(1, 1);
        let tau = TauAction::new(l.clone(), mat).unwrap();
        let report = verify_compatibility(&l, &tau, 1);
        assert!(!report.pass);
        let failure = report.failure.unwrap();
        assert_eq!(failure.axiom, CompatAxiom::DegreeOneChain);
        assert!(failure.witness.contains("x1"), "{}", failure.witness);
    }

    #[test]
    fn scalars_pass_through_twisted() {
        // the twist is multiplicative on scalars, which is what makes
        // τ(α·u) = α^t·τ(u) consistent
        let tau = tau_ig(5).unwrap();
        let action = ExpAction::from_matrix(tau.lattice().action());
        for exps in [vec![1, 0, -2, 0], vec![0, 3, 0, -1], vec![-1, -1, 2, 5]] {
            let alpha = GroupRingElement::monomial(Monomial::from_exps(exps), BigInt::from(3));
            let beta = GroupRingElement::variable_minus_one(4, 2);
            assert_eq!(
                alpha.mul(&beta).twist(&action),
                alpha.twist(&action).mul(&beta.twist(&action))
            );
        }
        // τ²(a_i) by hand — twist the coefficients of τ(a_i), then expand
        // through τ again — matches the matrix composition rule
        let n = tau.lattice().n();
        let pows = tau.degree_powers(1).unwrap();
        for i in 0..n {
            let mut by_hand = vec![GroupRingElement::zero(n); n];
            for g in 0..n {
                let scalar = tau.matrix().at(g, i).twist(&action);
                if scalar.is_zero() {
                    continue;
                }
                for (h, slot) in by_hand.iter_mut().enumerate() {
                    *slot = slot.add(&scalar.mul(tau.matrix().at(h, g)));
                }
            }
            for (h, coeff) in by_hand.iter().enumerate() {
                assert_eq!(coeff, pows[2].at(h, i), "generator {i}, component {h}");
            }
        }
    }

    #[test]
    fn json_rows_round_trip() {
        let tau = tau_ig(4).unwrap();
        let rows = tau.to_rows_json().unwrap();
        let back = TauAction::from_rows_json(tau.lattice().clone(), &rows).unwrap();
        assert_eq!(back.matrix(), tau.matrix());
    }
}
