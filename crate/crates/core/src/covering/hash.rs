//! Perfect hash families mapping `0..n` into `0..ℓ²`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{binomial, combinations, FamilyOptions};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rng;

/// Functions `0..n -> 0..range` such that every set of at most `ell`
/// elements is mapped injectively by some member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectHashFamily {
    pub n: usize,
    pub ell: usize,
    pub range: usize,
    pub functions: Vec<Vec<u32>>,
}

fn injective_on(f: &[u32], set: &[Vertex], seen: &mut [bool]) -> bool {
    let mut ok = true;
    for &v in set {
        let slot = f[v] as usize;
        if seen[slot] {
            ok = false;
            break;
        }
        seen[slot] = true;
    }
    for &v in set {
        seen[f[v] as usize] = false;
    }
    ok
}

/// Seeded random functions followed by greedy completion: every `ell`-subset
/// (or the whole universe when it is smaller) missed so far receives a
/// function that spreads it over distinct values.
pub fn perfect_hash_family(n: usize, ell: usize, options: &FamilyOptions) -> Result<PerfectHashFamily> {
    if ell == 0 {
        return Err(Error::Precondition("perfect hash family needs ell >= 1".into()));
    }
    let range = ell.saturating_mul(ell);
    if range > u32::MAX as usize {
        return Err(Error::Resource {
            what: "perfect hash range",
            predicted: range as u128,
            cap: u32::MAX as u128,
        });
    }
    let width = ell.min(n);
    let subsets = binomial(n, width);
    if subsets > options.enumeration_cap {
        return Err(Error::Resource {
            what: "perfect hash subset enumeration",
            predicted: subsets,
            cap: options.enumeration_cap,
        });
    }
    let mut rng = rng::stream(options.seed, ((n as u64) << 32) | ell as u64);
    let warm_start = if ell == 1 {
        1
    } else {
        (128 - subsets.leading_zeros()).max(1) as usize
    };
    let mut functions: Vec<Vec<u32>> = (0..warm_start)
        .map(|_| (0..n).map(|_| rng.gen_range(0..range) as u32).collect())
        .collect();
    let mut seen = vec![false; range];
    let values: Vec<u32> = (0..range as u32).collect();
    for set in combinations(n, width) {
        if functions.iter().any(|f| injective_on(f, &set, &mut seen)) {
            continue;
        }
        let mut f: Vec<u32> = (0..n).map(|_| rng.gen_range(0..range) as u32).collect();
        let spread: Vec<u32> = values.choose_multiple(&mut rng, set.len()).copied().collect();
        for (&v, &value) in set.iter().zip(&spread) {
            f[v] = value;
        }
        functions.push(f);
        if functions.len() as u128 > options.cap {
            return Err(Error::Resource {
                what: "perfect hash family",
                predicted: functions.len() as u128,
                cap: options.cap,
            });
        }
    }
    Ok(PerfectHashFamily {
        n,
        ell,
        range,
        functions,
    })
}

impl PerfectHashFamily {
    /// Exhaustive check over all sets of size `min(ell, n)`; smaller sets are
    /// implied. Returns a set no function separates.
    pub fn verify(&self) -> Option<Vec<Vertex>> {
        let mut seen = vec![false; self.range];
        if self
            .functions
            .iter()
            .any(|f| f.len() != self.n || f.iter().any(|&x| x as usize >= self.range))
        {
            return Some(Vec::new());
        }
        combinations(self.n, self.ell.min(self.n))
            .find(|set| !self.functions.iter().any(|f| injective_on(f, set, &mut seen)))
    }
}
