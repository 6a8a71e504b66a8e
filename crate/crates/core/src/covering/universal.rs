//! Lopsided universal families over a universe of at most 128 elements.

use rand::Rng;

use super::{binomial, combinations, FamilyOptions, Mask};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rng;

/// Sets `F` over `0..n` such that every disjoint pair `(A, B)` with
/// `|A| <= p` and `|B| <= q` has a member with `A ⊆ F` and `B ∩ F = ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LopsidedUniversalFamily {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub sets: Vec<Vec<Vertex>>,
}

pub(crate) const MAX_UNIVERSE: usize = 128;

fn mask_of(set: &[Vertex]) -> Mask {
    set.iter().fold(0, |m, &v| m | (1 << v))
}

fn members(mask: Mask) -> Vec<Vertex> {
    (0..MAX_UNIVERSE).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Number of maximal `(A, B)` pairs that have to be checked.
pub(crate) fn maximal_pair_count(n: usize, p: usize, q: usize) -> u128 {
    let p = p.min(n);
    if p + q <= n {
        binomial(n, p).saturating_mul(binomial(n - p, q))
    } else {
        (n.saturating_sub(q)..=p).fold(0u128, |acc, a| acc.saturating_add(binomial(n, a)))
    }
}

/// Calls `visit(A, B)` for every maximal pair: `|A| = p`, `|B| = q` when
/// `p + q <= n`, otherwise every split of the universe respecting both
/// bounds. Stops early when `visit` returns false.
fn for_each_maximal_pair(n: usize, p: usize, q: usize, mut visit: impl FnMut(Mask, Mask) -> bool) {
    let p = p.min(n);
    let universe: Mask = if n == MAX_UNIVERSE { Mask::MAX } else { (1 << n) - 1 };
    if p + q <= n {
        for a in combinations(n, p) {
            let a_mask = mask_of(&a);
            let rest: Vec<Vertex> = (0..n).filter(|v| a_mask & (1 << v) == 0).collect();
            for b in combinations(rest.len(), q) {
                let b_mask = b.iter().fold(0, |m, &i| m | (1 << rest[i]));
                if !visit(a_mask, b_mask) {
                    return;
                }
            }
        }
    } else {
        for size in n.saturating_sub(q)..=p {
            for a in combinations(n, size) {
                let a_mask = mask_of(&a);
                if !visit(a_mask, universe & !a_mask) {
                    return;
                }
            }
        }
    }
}

fn check_size(n: usize, p: usize, q: usize, options: &FamilyOptions) -> Result<()> {
    if n > MAX_UNIVERSE {
        return Err(Error::Resource {
            what: "lopsided universal family universe",
            predicted: n as u128,
            cap: MAX_UNIVERSE as u128,
        });
    }
    let pairs = maximal_pair_count(n, p, q);
    if pairs > options.enumeration_cap {
        return Err(Error::Resource {
            what: "lopsided universal family pair enumeration",
            predicted: pairs,
            cap: options.enumeration_cap,
        });
    }
    Ok(())
}

/// Greedy construction: walk the maximal pairs in lexicographic order and,
/// whenever a pair is not yet handled, add `A` plus a random share of the
/// unconstrained elements (each kept with probability `p / (p + q)`).
pub fn lopsided_universal_family(
    n: usize,
    p: usize,
    q: usize,
    options: &FamilyOptions,
) -> Result<LopsidedUniversalFamily> {
    check_size(n, p, q, options)?;
    let mut sets: Vec<Mask> = Vec::new();
    if p == 0 || n == 0 {
        sets.push(0);
    } else {
        let mut rng = rng::stream(options.seed, ((n as u64) << 32) | ((p as u64) << 16) | q as u64);
        let share = p as f64 / (p + q) as f64;
        let mut over_cap = false;
        for_each_maximal_pair(n, p, q, |a, b| {
            if sets.iter().any(|&f| f & a == a && f & b == 0) {
                return true;
            }
            let mut f = a;
            for v in 0..n {
                let bit: Mask = 1 << v;
                if (a | b) & bit == 0 && rng.gen_bool(share) {
                    f |= bit;
                }
            }
            sets.push(f);
            over_cap = sets.len() as u128 > options.cap;
            !over_cap
        });
        if over_cap {
            return Err(Error::Resource {
                what: "lopsided universal family",
                predicted: sets.len() as u128,
                cap: options.cap,
            });
        }
    }
    Ok(LopsidedUniversalFamily {
        n,
        p,
        q,
        sets: sets.into_iter().map(members).collect(),
    })
}

impl LopsidedUniversalFamily {
    /// Exhaustive check; returns an unhandled `(A, B)` if there is one.
    pub fn verify(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        assert!(self.n <= MAX_UNIVERSE);
        let sets: Vec<Mask> = self.sets.iter().map(|s| mask_of(s)).collect();
        let mut witness = None;
        for_each_maximal_pair(self.n, self.p, self.q, |a, b| {
            if sets.iter().any(|&f| f & a == a && f & b == 0) {
                true
            } else {
                witness = Some((members(a), members(b)));
                false
            }
        });
        witness
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_side_needs_only_the_empty_set() {
        let fam = lopsided_universal_family(5, 0, 3, &FamilyOptions::default()).unwrap();
        assert_eq!(fam.sets, vec![Vec::<Vertex>::new()]);
        assert!(fam.verify().is_none());
    }

    #[test]
    fn two_element_universe() {
        let fam = lopsided_universal_family(2, 1, 1, &FamilyOptions::default()).unwrap();
        assert_eq!(fam.sets, vec![vec![0], vec![1]]);
        assert!(fam.verify().is_none());
    }

    #[test]
    fn verify_finds_missing_pair() {
        let fam = LopsidedUniversalFamily {
            n: 3,
            p: 1,
            q: 1,
            sets: vec![vec![0], vec![1]],
        };
        assert_eq!(fam.verify(), Some((vec![2], vec![0])));
    }

    #[test]
    fn pair_counts() {
        assert_eq!(maximal_pair_count(4, 1, 2), 12);
        // p + q > n: every split with |A| in {2, 3, 4}
        assert_eq!(maximal_pair_count(4, 4, 2), 6 + 4 + 1);
    }
}
