//! Named lattices: the nine indecomposable integral representations of
//! `Z/4`, augmentation ideals and regular representations at any order, and
//! the indecomposable six-dimensional orbifold representations given by
//! companion matrices (named `zN_n` for `Z/N` acting in rank `n`).
//!
//! Each entry records whether a local compatible action is known at the
//! primes whose square divides the order; those flags are what the status
//! classifier consumes.  Among the orbifold table entries exactly `z8_5`
//! and `z12_6` have no known action.  `rho6` also has none, but its
//! cohomology table has been computed directly, which upgrades its status
//! without providing an action.
//!
//! Direct sums are assembled with the `name(+name)*` expression grammar,
//! lifting every part to the least common multiple of the orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::koszul::{tau_direct_sum, tau_ig, tau_permutation, tau_preset, KoszulError, TauAction};
use crate::lattice::{companion_matrix, Lattice, LatticeError};
use crate::linalg::IntMatrix;
use crate::util::{divisors, is_square_free, p_part};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog name {0:?} (try `catalog list`)")]
    UnknownName(String),
    #[error("bad direct-sum expression: {0}")]
    Parse(String),
    #[error("companion matrix for v = {v:?} has order {actual}, not {declared}")]
    WrongOrder {
        v: Vec<i64>,
        declared: u64,
        actual: u64,
    },
    #[error("companion matrices need v_1 = ±1, got {0}")]
    BadLeadingEntry(i64),
    #[error("no compatible action is wired for {0}; the comparison cannot run")]
    NoKnownAction(String),
    #[error("the eigenvalue check applies to rank-6 lattices, got rank {0}")]
    RankNotSix(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

/// How a local compatible action is (or is not) available for an entry at
/// the primes whose square divides its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalAction {
    /// order is square-free: nothing needs certifying
    Automatic,
    /// an explicit action exists (named mechanism)
    Known(&'static str),
    NotKnown,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub lattice: Lattice,
    pub local_action: LocalAction,
    /// cohomology established by direct computation even without an action
    pub collapse_verified: bool,
    /// member of the six-dimensional supersymmetric orbifold table
    pub orbifold_table: bool,
    pub note: String,
}

impl CatalogEntry {
    fn new(
        name: &str,
        lattice: Lattice,
        local_action: LocalAction,
        orbifold_table: bool,
        note: &str,
    ) -> Self {
        CatalogEntry {
            name: name.to_string(),
            lattice: lattice.with_label(name),
            local_action,
            collapse_verified: false,
            orbifold_table,
            note: note.to_string(),
        }
    }

    /// No compatible action is known for this entry.
    pub fn is_uncovered(&self) -> bool {
        self.local_action == LocalAction::NotKnown
    }

    /// Whether the degreewise formula is established for this summand at
    /// the prime `p`.  Trivial or prime `p`-parts always are; beyond that
    /// it takes a known action or a directly computed table.
    pub fn covered_at(&self, p: u64) -> bool {
        let pe = p_part(self.lattice.exact_order(), p);
        if pe <= p {
            return true;
        }
        matches!(self.local_action, LocalAction::Known(_)) || self.collapse_verified
    }
}

/// Companion-form lattice with last column `v` and verified order `order`.
pub fn companion_from_v(order: u64, v: &[i64]) -> Result<Lattice, CatalogError> {
    match v.first() {
        Some(&1) | Some(&-1) => {}
        Some(&other) => return Err(CatalogError::BadLeadingEntry(other)),
        None => return Err(CatalogError::BadLeadingEntry(0)),
    }
    let lattice = Lattice::new(companion_matrix(v), order).map_err(|e| match e {
        LatticeError::InvalidOrder { .. } => CatalogError::WrongOrder {
            v: v.to_vec(),
            declared: order,
            actual: 0,
        },
        other => CatalogError::Lattice(other),
    })?;
    if lattice.exact_order() != order {
        return Err(CatalogError::WrongOrder {
            v: v.to_vec(),
            declared: order,
            actual: lattice.exact_order(),
        });
    }
    Ok(lattice)
}

/// The fixed catalog names, in listing order.
pub fn names() -> Vec<&'static str> {
    vec![
        "rho1", "rho2", "rho3", "rho4", "rho5", "rho6", "rho7", "rho8", "rho9", "sign", "z2_1",
        "z3_2", "z4_2", "z6_2", "z4_3", "z6_3", "z6_4", "z8_4", "z12_4", "z6_5", "z8_5", "z7_6",
        "z8_6", "z12_6",
    ]
}

/// Looks up an entry by name.  `trivial(n)`, `regular(N)` and `ig(N)` are
/// parameterized; `igN`/`trivialN`/`regularN` are accepted as shorthand.
pub fn preset(name: &str) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    if let Some((kind, arg)) = split_parameterized(name) {
        return parameterized(kind, arg);
    }
    let e = match name {
        "rho1" => CatalogEntry::new(
            "rho1",
            Lattice::trivial(1),
            LocalAction::Automatic,
            false,
            "rank-1 trivial representation",
        ),
        "rho2" => CatalogEntry::new(
            "rho2",
            Lattice::sign(),
            LocalAction::Automatic,
            false,
            "rank-1 sign representation",
        ),
        "rho3" => CatalogEntry::new(
            "rho3",
            Lattice::permutation(&[1, 0], 2)?,
            LocalAction::Automatic,
            false,
            "rank-2 swap permutation",
        ),
        "rho4" => CatalogEntry::new(
            "rho4",
            Lattice::new(IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]), 4)?,
            LocalAction::Known("rho4 preset"),
            false,
            "faithful rank-2 representation of Z/4 (rotation by a quarter turn)",
        ),
        "rho5" => CatalogEntry::new(
            "rho5",
            Lattice::new(
                IntMatrix::from_rows(&[vec![0, 0, -1], vec![1, 0, -1], vec![0, 1, -1]]),
                4,
            )?,
            LocalAction::Known("augmentation ideal up to base change"),
            false,
            "rank-3 representation of Z/4; a form of the augmentation ideal",
        ),
        "rho6" => {
            let mut e = CatalogEntry::new(
                "rho6",
                Lattice::new(
                    IntMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, 0, 1]]),
                    4,
                )?,
                LocalAction::NotKnown,
                false,
                "rank-3 representation of Z/4; cohomology known by direct computation",
            );
            e.collapse_verified = true;
            e
        }
        "rho7" => CatalogEntry::new(
            "rho7",
            Lattice::permutation(&[1, 2, 3, 0], 4)?,
            LocalAction::Known("permutation action"),
            false,
            "rank-4 cyclic permutation (the regular representation of Z/4)",
        ),
        "rho8" => CatalogEntry::new(
            "rho8",
            Lattice::new(
                IntMatrix::from_rows(&[
                    vec![0, 0, -1, 1],
                    vec![1, 0, -1, 1],
                    vec![0, 1, -1, 0],
                    vec![0, 0, 0, 1],
                ]),
                4,
            )?,
            LocalAction::NotKnown,
            false,
            "rank-4 indecomposable representation of Z/4; no known compatible action",
        ),
        "rho9" => CatalogEntry::new(
            "rho9",
            Lattice::new(
                IntMatrix::from_rows(&[
                    vec![0, 1, 0, 0],
                    vec![-1, 0, 0, 1],
                    vec![0, 0, -1, 1],
                    vec![0, 0, 0, 1],
                ]),
                4,
            )?,
            LocalAction::NotKnown,
            false,
            "rank-4 indecomposable representation of Z/4; no known compatible action",
        ),
        "sign" => CatalogEntry::new(
            "sign",
            Lattice::sign(),
            LocalAction::Automatic,
            false,
            "rank-1 sign representation",
        ),
        "z2_1" => CatalogEntry::new(
            "z2_1",
            companion_from_v(2, &[-1])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 2 in rank 1",
        ),
        "z3_2" => CatalogEntry::new(
            "z3_2",
            companion_from_v(3, &[-1, -1])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 3 in rank 2",
        ),
        "z4_2" => CatalogEntry::new(
            "z4_2",
            companion_from_v(4, &[-1, 0])?,
            LocalAction::Known("z4_2 preset"),
            true,
            "orbifold table, order 4 in rank 2",
        ),
        "z6_2" => CatalogEntry::new(
            "z6_2",
            companion_from_v(6, &[-1, 1])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 6 in rank 2",
        ),
        "z4_3" => CatalogEntry::new(
            "z4_3",
            companion_from_v(4, &[-1, -1, -1])?,
            LocalAction::Known("augmentation ideal up to base change"),
            true,
            "orbifold table, order 4 in rank 3 (equals rho5)",
        ),
        "z6_3" => CatalogEntry::new(
            "z6_3",
            companion_from_v(6, &[-1, 0, 0])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 6 in rank 3",
        ),
        "z6_4" => CatalogEntry::new(
            "z6_4",
            companion_from_v(6, &[-1, 0, -1, 0])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 6 in rank 4",
        ),
        "z8_4" => CatalogEntry::new(
            "z8_4",
            companion_from_v(8, &[-1, 0, 0, 0])?,
            LocalAction::Known("z8_4 preset"),
            true,
            "orbifold table, order 8 in rank 4",
        ),
        "z12_4" => CatalogEntry::new(
            "z12_4",
            companion_from_v(12, &[-1, 0, 1, 0])?,
            LocalAction::Known("local actions: two rho4 blocks at 2, automatic at 3"),
            true,
            "orbifold table, order 12 in rank 4",
        ),
        "z6_5" => CatalogEntry::new(
            "z6_5",
            companion_from_v(6, &[-1, -1, -1, -1, -1])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 6 in rank 5",
        ),
        "z8_5" => CatalogEntry::new(
            "z8_5",
            companion_from_v(8, &[-1, -1, 0, 0, -1])?,
            LocalAction::NotKnown,
            true,
            "orbifold table, order 8 in rank 5; no known compatible action",
        ),
        "z7_6" => CatalogEntry::new(
            "z7_6",
            companion_from_v(7, &[-1, -1, -1, -1, -1, -1])?,
            LocalAction::Automatic,
            true,
            "orbifold table, order 7 in rank 6",
        ),
        "z8_6" => CatalogEntry::new(
            "z8_6",
            companion_from_v(8, &[-1, 0, -1, 0, -1, 0])?,
            LocalAction::Known("z8_6 preset"),
            true,
            "orbifold table, order 8 in rank 6",
        ),
        "z12_6" => CatalogEntry::new(
            "z12_6",
            companion_from_v(12, &[-1, -1, 0, 1, 0, -1])?,
            LocalAction::NotKnown,
            true,
            "orbifold table, order 12 in rank 6; no known compatible action",
        ),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    };
    Ok(e)
}

fn split_parameterized(name: &str) -> Option<(&str, u64)> {
    for kind in ["trivial", "regular", "ig"] {
        if let Some(rest) = name.strip_prefix(kind) {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            if inner.is_empty() {
                return None;
            }
            if let Ok(arg) = inner.parse::<u64>() {
                return Some((kind, arg));
            }
        }
    }
    None
}

fn parameterized(kind: &str, arg: u64) -> Result<CatalogEntry, CatalogError> {
    match kind {
        "trivial" => Ok(CatalogEntry::new(
            &format!("trivial({arg})"),
            Lattice::trivial(arg as usize),
            LocalAction::Known("permutation action"),
            false,
            "trivial lattice",
        )),
        "regular" => {
            if arg == 0 {
                return Err(CatalogError::Parse("regular(0) has no meaning".into()));
            }
            Ok(CatalogEntry::new(
                &format!("regular({arg})"),
                Lattice::regular(arg),
                LocalAction::Known("permutation action"),
                false,
                "regular representation (cyclic permutation)",
            ))
        }
        "ig" => {
            if arg < 2 {
                return Err(CatalogError::Parse("ig(N) needs N >= 2".into()));
            }
            Ok(CatalogEntry::new(
                &format!("ig({arg})"),
                Lattice::augmentation_ideal(arg)?,
                LocalAction::Known("augmentation-ideal action"),
                false,
                "augmentation ideal of the group ring",
            ))
        }
        _ => unreachable!(),
    }
}

/// A direct sum assembled from catalog entries, lifted to a common order.
#[derive(Debug, Clone)]
pub struct SumRecipe {
    pub parts: Vec<CatalogEntry>,
    pub lattice: Lattice,
    pub expression: String,
}

/// Parses `name(+name)*`, lifts every part to the lcm of the exact orders,
/// and forms the block-diagonal sum.
pub fn assemble(expr: &str) -> Result<SumRecipe, CatalogError> {
    let atoms: Vec<&str> = expr.split('+').map(str::trim).collect();
    if atoms.iter().any(|a| a.is_empty()) {
        return Err(CatalogError::Parse(format!(
            "empty summand in {expr:?} (expected name(+name)*)"
        )));
    }
    let mut parts = Vec::with_capacity(atoms.len());
    for atom in &atoms {
        parts.push(preset(atom)?);
    }
    let order = parts
        .iter()
        .map(|p| p.lattice.order())
        .fold(1u64, |a, b| a.lcm(&b));
    let mut lattice: Option<Lattice> = None;
    for part in &parts {
        let lifted = part.lattice.lift_to(order)?;
        lattice = Some(match lattice {
            None => lifted,
            Some(acc) => acc.direct_sum(&lifted)?,
        });
    }
    let lattice = lattice
        .ok_or_else(|| CatalogError::Parse("empty expression".to_string()))?
        .with_label(expr.trim());
    Ok(SumRecipe {
        parts,
        lattice,
        expression: expr.trim().to_string(),
    })
}

/// A lattice together with a verified-action candidate for the comparison
/// pipeline.  When the action lives on an adapted basis, `base_change` is
/// the unimodular intertwiner from the adapted matrix to `source`.
#[derive(Debug, Clone)]
pub struct OracleSetup {
    pub source: Lattice,
    pub tau: TauAction,
    pub base_change: Option<IntMatrix>,
}

/// Builds the lattice/action pair for a catalog expression, lifting and
/// summing per part.  `prime` selects the Sylow-local data for `z12_4`.
pub fn oracle_setup(expr: &str, prime: Option<u64>) -> Result<OracleSetup, CatalogError> {
    if let Some(p) = prime {
        if expr.trim() == "z12_4" {
            let preset_name = match p {
                2 => "z12_4_sylow2",
                3 => "z12_4_sylow3",
                _ => {
                    return Err(CatalogError::NoKnownAction(format!(
                        "z12_4 at the prime {p}"
                    )))
                }
            };
            let preset = tau_preset(preset_name)?;
            return Ok(OracleSetup {
                source: preset.source,
                tau: preset.tau,
                base_change: preset.base_change,
            });
        }
        return Err(CatalogError::NoKnownAction(format!(
            "--prime is only wired for z12_4, not {expr:?}"
        )));
    }
    let recipe = assemble(expr)?;
    let order = recipe.lattice.order();
    let mut acc: Option<OracleSetup> = None;
    for part in &recipe.parts {
        let piece = part_action(part)?;
        let lifted_tau = piece.tau.lift_to(order)?;
        let lifted_source = piece.source.lift_to(order)?;
        acc = Some(match acc {
            None => OracleSetup {
                source: lifted_source,
                tau: lifted_tau,
                base_change: piece.base_change,
            },
            Some(prev) => {
                let base_change = match (&prev.base_change, &piece.base_change) {
                    (None, None) => None,
                    (a, b) => {
                        let left = a
                            .clone()
                            .unwrap_or_else(|| IntMatrix::identity(prev.source.n()));
                        let right = b
                            .clone()
                            .unwrap_or_else(|| IntMatrix::identity(lifted_source.n()));
                        Some(left.block_diag(&right))
                    }
                };
                OracleSetup {
                    source: prev.source.direct_sum(&lifted_source)?,
                    tau: tau_direct_sum(&prev.tau, &lifted_tau)?,
                    base_change,
                }
            }
        });
    }
    acc.ok_or_else(|| CatalogError::Parse("empty expression".into()))
}

/// The action for a single catalog entry, on its own basis or an adapted
/// one.  Errors when none is known.
fn part_action(part: &CatalogEntry) -> Result<OracleSetup, CatalogError> {
    let name = part.name.as_str();
    let direct = |tau: TauAction| OracleSetup {
        source: tau.lattice().clone(),
        tau,
        base_change: None,
    };
    if let Some((kind, arg)) = split_parameterized(name) {
        return Ok(match kind {
            "trivial" => {
                let perm: Vec<usize> = (0..arg as usize).collect();
                direct(tau_permutation(&perm, 1)?)
            }
            "regular" => direct(tau_permutation(
                &(0..arg as usize)
                    .map(|i| (i + 1) % arg as usize)
                    .collect::<Vec<_>>(),
                arg,
            )?),
            "ig" => direct(tau_ig(arg)?),
            _ => unreachable!(),
        });
    }
    match name {
        "rho1" => {
            let tau = tau_permutation(&[0], 1)?;
            Ok(direct(tau))
        }
        "sign" | "rho2" | "z2_1" => Ok(direct(tau_preset("sign")?.tau)),
        "rho3" => Ok(direct(tau_permutation(&[1, 0], 2)?)),
        "rho4" => Ok(direct(tau_preset("rho4")?.tau)),
        "rho7" => Ok(direct(tau_permutation(&[1, 2, 3, 0], 4)?)),
        "z4_2" => Ok(direct(tau_preset("z4_2")?.tau)),
        "z8_4" => {
            let p = tau_preset("z8_4")?;
            Ok(OracleSetup {
                source: p.source,
                tau: p.tau,
                base_change: p.base_change,
            })
        }
        "z8_6" => {
            let p = tau_preset("z8_6")?;
            Ok(OracleSetup {
                source: p.source,
                tau: p.tau,
                base_change: p.base_change,
            })
        }
        // all-(-1) companions and rho5 are augmentation ideals after a
        // unimodular change of basis
        "rho5" | "z4_3" | "z3_2" | "z6_5" | "z7_6" => {
            let order = part.lattice.order();
            let tau = tau_ig(order)?;
            let base = crate::koszul::conjugating_unimodular(
                part.lattice.action(),
                tau.lattice().action(),
            )
            .ok_or_else(|| CatalogError::NoKnownAction(name.to_string()))?;
            Ok(OracleSetup {
                source: part.lattice.clone(),
                tau,
                base_change: Some(base),
            })
        }
        other => Err(CatalogError::NoKnownAction(other.to_string())),
    }
}

/// Outcome of the eigenvalue test for six-dimensional lattices: no
/// eigenvalue 1, and some choice of one exponent from each conjugate pair
/// sums to zero mod N.
#[derive(Debug, Clone)]
pub struct CyReport {
    pub satisfied: bool,
    pub exponents: Vec<u64>,
    pub selection: Option<[u64; 3]>,
    pub reason: String,
}

/// Checks whether the quotient of the six-torus by the lattice action can
/// carry the Calabi–Yau structure: eigenvalues `α_1 α_2 α_3 = 1` with every
/// `α_i ≠ 1`, read off the cyclotomic factorization of the characteristic
/// polynomial.
pub fn calabi_yau_check(l: &Lattice) -> Result<CyReport, CatalogError> {
    if l.n() != 6 {
        return Err(CatalogError::RankNotSix(l.n()));
    }
    let order = l.order();
    let mut poly = l.action().char_poly();
    let mut exponents: Vec<u64> = Vec::new();
    for d in divisors(order) {
        let phi = cyclotomic(d);
        loop {
            match poly_div_exact(&poly, &phi) {
                Some(q) => {
                    poly = q;
                    // primitive d-th roots of unity as powers of ζ_N
                    for u in 1..=d {
                        if d.gcd(&u) == 1 {
                            exponents.push((order / d) * u % order);
                        }
                    }
                }
                None => break,
            }
        }
    }
    debug_assert_eq!(poly.len(), 1, "characteristic polynomial must split");
    exponents.sort_unstable();
    if exponents.contains(&0) {
        return Ok(CyReport {
            satisfied: false,
            exponents,
            selection: None,
            reason: "eigenvalue 1 is present (the fixed subtorus obstructs the quotient)".into(),
        });
    }
    // pair each exponent with its conjugate N - k
    let mut rest = exponents.clone();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    while let Some(k) = rest.first().copied() {
        let conj = (order - k) % order;
        rest.remove(0);
        let pos = rest
            .iter()
            .position(|&x| x == conj)
            .expect("real polynomial: conjugate exponent present");
        rest.remove(pos);
        pairs.push((k, conj));
    }
    debug_assert_eq!(pairs.len(), 3);
    for mask in 0..8u32 {
        let pick: Vec<u64> = (0..3)
            .map(|i| {
                if mask & (1 << i) == 0 {
                    pairs[i].0
                } else {
                    pairs[i].1
                }
            })
            .collect();
        if pick.iter().sum::<u64>() % order == 0 {
            return Ok(CyReport {
                satisfied: true,
                exponents,
                selection: Some([pick[0], pick[1], pick[2]]),
                reason: format!(
                    "exponents {}+{}+{} = 0 mod {order} with no eigenvalue 1",
                    pick[0], pick[1], pick[2]
                ),
            });
        }
    }
    Ok(CyReport {
        satisfied: false,
        exponents,
        selection: None,
        reason: "no choice of one exponent per conjugate pair sums to 0".into(),
    })
}

/// Coefficients of the d-th cyclotomic polynomial, ascending.
fn cyclotomic(d: u64) -> Vec<BigInt> {
    // z^d - 1 divided by all proper cyclotomic factors
    let mut poly = vec![BigInt::zero(); d as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[d as usize] = BigInt::one();
    for e in divisors(d) {
        if e < d {
            poly = poly_div_exact(&poly, &cyclotomic(e)).expect("cyclotomic division is exact");
        }
    }
    poly
}

/// Exact division of integer polynomials; `None` when it does not divide.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    if dn < dd {
        return None;
    }
    let lead = den[dd].clone();
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let (q, r) = rem[k + dd].div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        quot[k] = q.clone();
        for i in 0..=dd {
            let v = &rem[k + i] - &q * &den[i];
            rem[k + i] = v;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

/// True when the whole order needs no local-action certificates.
pub fn order_is_automatic(order: u64) -> bool {
    is_square_free(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_examples() {
        assert_eq!(
            companion_from_v(2, &[-1]).unwrap().action(),
            preset("rho2").unwrap().lattice.action()
        );
        assert_eq!(
            companion_from_v(4, &[-1, -1, -1]).unwrap().action(),
            preset("rho5").unwrap().lattice.action()
        );
        let z84 = companion_from_v(8, &[-1, 0, 0, 0]).unwrap();
        assert_eq!(z84.exact_order(), 8);
        // wrong order is refused
        assert!(matches!(
            companion_from_v(5, &[-1]),
            Err(CatalogError::WrongOrder { .. })
        ));
        assert!(matches!(
            companion_from_v(4, &[2, 1]),
            Err(CatalogError::BadLeadingEntry(2))
        ));
    }

    #[test]
    fn every_entry_has_its_declared_order() {
        for name in names() {
            let e = preset(name).unwrap();
            assert_eq!(
                e.lattice.exact_order(),
                e.lattice.order(),
                "{name} is not faithful"
            );
        }
    }

    #[test]
    fn all_minus_one_companions_transpose_to_augmentation_ideals() {
        for order in [2u64, 3, 4, 6, 7] {
            let v = vec![-1i64; (order - 1) as usize];
            let comp = companion_from_v(order, &v).unwrap();
            let ig = Lattice::augmentation_ideal(order).unwrap();
            assert_eq!(&comp.action().transpose(), ig.action());
        }
    }

    #[test]
    fn uncovered_flags_are_exactly_the_two_table_entries() {
        let uncovered: Vec<String> = names()
            .into_iter()
            .map(|n| preset(n).unwrap())
            .filter(|e| e.orbifold_table && e.is_uncovered())
            .map(|e| e.name)
            .collect();
        assert_eq!(uncovered, vec!["z8_5".to_string(), "z12_6".to_string()]);
        // outside the table, the three rank-<=4 strays also lack actions
        for n in ["rho6", "rho8", "rho9"] {
            assert!(preset(n).unwrap().is_uncovered());
        }
        assert!(preset("rho6").unwrap().collapse_verified);
        assert!(preset("rho6").unwrap().covered_at(2));
        assert!(!preset("rho8").unwrap().covered_at(2));
    }

    #[test]
    fn parameterized_names() {
        assert_eq!(preset("trivial(3)").unwrap().lattice.n(), 3);
        assert_eq!(preset("ig3").unwrap().lattice.n(), 2);
        assert_eq!(preset("ig(5)").unwrap().lattice.order(), 5);
        assert_eq!(preset("regular(4)").unwrap().lattice.n(), 4);
        assert!(preset("ig(1)").is_err());
        assert!(preset("frobnicate").is_err());
    }

    #[test]
    fn assembly_lifts_to_the_lcm() {
        let recipe = assemble("z8_4+z2_1+trivial(1)").unwrap();
        assert_eq!(recipe.lattice.n(), 6);
        assert_eq!(recipe.lattice.order(), 8);
        assert_eq!(recipe.parts.len(), 3);
        assert!(assemble("z8_4+").is_err());
        assert!(assemble("z8_4 + nonsense").is_err());
    }

    #[test]
    fn oracle_setups_exist_where_promised() {
        for expr in ["sign", "ig3", "rho4", "rho7", "z8_4", "regular(2)"] {
            let setup = oracle_setup(expr, None).unwrap();
            if let Some(p) = &setup.base_change {
                assert!(p.is_unimodular());
                assert_eq!(
                    setup.source.action().mul(p),
                    p.mul(setup.tau.lattice().action())
                );
            } else {
                assert_eq!(&setup.source, setup.tau.lattice());
            }
        }
        assert!(oracle_setup("rho8", None).is_err());
        let local = oracle_setup("z12_4", Some(2)).unwrap();
        assert_eq!(local.source.order(), 4);
        assert!(oracle_setup("z12_4", Some(5)).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i64 = |p: Vec<BigInt>| -> Vec<i64> {
            p.into_iter().map(|c| i64::try_from(&c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn calabi_yau_examples() {
        let yes = calabi_yau_check(&preset("z7_6").unwrap().lattice).unwrap();
        assert!(yes.satisfied, "{}", yes.reason);
        assert_eq!(yes.exponents, vec![1, 2, 3, 4, 5, 6]);

        let no = calabi_yau_check(&Lattice::trivial(6)).unwrap();
        assert!(!no.satisfied);
        assert!(no.reason.contains("eigenvalue 1"));

        // -I on Z^6 at order 2: every selection sums to 3, odd
        let minus = Lattice::new(IntMatrix::identity(6).neg(), 2).unwrap();
        let no = calabi_yau_check(&minus).unwrap();
        assert!(!no.satisfied);

        let yes = calabi_yau_check(&preset("z8_6").unwrap().lattice).unwrap();
        assert!(yes.satisfied, "{}", yes.reason);

        assert!(calabi_yau_check(&Lattice::sign()).is_err());
    }
}
