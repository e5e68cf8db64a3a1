use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::matrix::IntMatrix;
use super::snf::snf_work;

/// A finitely generated abelian group in canonical invariant-factor form:
/// free rank plus a divisor chain `d_1 | d_2 | ... | d_m` with every
/// `d_i >= 2`.  Equality is structural equality of the canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Accepts an already-canonical divisor chain (as produced by SNF).
    pub(crate) fn from_chain(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        debug_assert!(torsion.iter().all(|d| *d >= BigInt::from(2)));
        debug_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        AbelianGroup { free_rank, torsion }
    }

    /// Canonicalizes an arbitrary list of invariants.  Zeros count as free
    /// summands, units are dropped, and the rest is renormalized to a
    /// divisor chain via the SNF of a diagonal stack.
    pub fn from_invariants(free_rank: usize, divisors: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut tors: Vec<BigInt> = Vec::new();
        for d in divisors {
            if d.is_zero() {
                free += 1;
            } else if !d.abs().is_one() {
                tors.push(d.abs());
            }
        }
        if tors.is_empty() {
            return AbelianGroup::free(free);
        }
        let m = tors.len();
        let diag = IntMatrix::from_fn(m, m, |r, c| {
            if r == c {
                tors[r].clone()
            } else {
                BigInt::zero()
            }
        });
        let w = snf_work(&diag);
        let chain: Vec<BigInt> = (0..m)
            .map(|k| w.d.at(k, k).clone())
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup::from_chain(free, chain)
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_invariants(0, &[BigInt::from(d)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut divisors = self.torsion.clone();
        divisors.extend_from_slice(&other.torsion);
        Self::from_invariants(self.free_rank + other.free_rank, &divisors)
    }

    /// Divisor-chain rendering: `Z^a + Z/d1 + Z/d2`, or `0` when trivial.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Primary-decomposition rendering, prime powers in descending order
    /// (`Z/4 + Z/2` rather than `Z/2 + Z/4`).
    pub fn render_primary(&self) -> String {
        let mut powers: Vec<BigInt> = Vec::new();
        for d in &self.torsion {
            powers.extend(prime_power_parts(d));
        }
        powers.sort();
        powers.reverse();
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for p in &powers {
            parts.push(format!("Z/{p}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Splits `d` into prime-power factors by trial division.  Any factor that
/// survives trial division up to 10^6 is kept whole; the groups this library
/// produces have exponents dividing the (small) group order.
fn prime_power_parts(d: &BigInt) -> Vec<BigInt> {
    let mut rest = d.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= rest && p < 1_000_000 {
        let bp = BigInt::from(p);
        if (&rest % &bp).is_zero() {
            let mut power = BigInt::one();
            while (&rest % &bp).is_zero() {
                rest /= &bp;
                power *= &bp;
            }
            out.push(power);
        }
        p += 1;
    }
    if !rest.is_one() {
        out.push(rest);
    }
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
