//! Independence covering families.
//!
//! A family of independent sets covers `(G, k)` when every independent set of
//! size at most `k` is contained in one of its members. Every construction
//! here colours vertices black or white and keeps the black vertices that
//! have no black forward neighbour in the degeneracy order; the result is
//! always independent. Colourings come from independent coin flips, from a
//! lopsided universal family, or from a perfect hash family.

mod hash;
mod universal;

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

pub use hash::{perfect_hash_family, PerfectHashFamily};
pub use universal::{lopsided_universal_family, LopsidedUniversalFamily};

use crate::error::{Error, Result};
use crate::graph::{degeneracy_order, DegeneracyOrder, UndirectedGraph, Vertex};
use crate::io::format_set;
use crate::oracle::{self, OracleLimits};
use crate::rng;

type Mask = u128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Random,
    Lopsided,
    Hash,
    Modulator,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::Random => "random",
            Construction::Lopsided => "lopsided",
            Construction::Hash => "hash",
            Construction::Modulator => "modulator",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyOptions {
    /// Largest family (or universal/hash family) a construction may produce.
    pub cap: u128,
    /// Largest number of pairs or subsets a deterministic construction may
    /// enumerate while completing and checking its auxiliary family.
    pub enumeration_cap: u128,
    /// Largest modulator accepted by [`build_modulator_family`].
    pub modulator_cap: usize,
    /// Seed for the candidate sets tried before greedy completion. The
    /// finished family is verified, so this only affects its size.
    pub seed: u64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            cap: 1_000_000,
            enumeration_cap: 50_000_000,
            modulator_cap: 20,
            seed: 0x1ac0_5eed,
        }
    }
}

/// Black vertices of one colouring of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorAssignment {
    pub black: Vec<bool>,
}

impl ColorAssignment {
    pub fn from_set(n: usize, black: &[Vertex]) -> Self {
        let mut mask = vec![false; n];
        for &v in black {
            mask[v] = true;
        }
        ColorAssignment { black: mask }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringFamily {
    pub members: Vec<Vec<Vertex>>,
    pub k: usize,
    pub d: usize,
    pub construction: Construction,
    pub seed: Option<u64>,
}

impl CoveringFamily {
    /// Members with duplicates removed, largest first.
    pub fn distinct_members(&self) -> Vec<Vec<Vertex>> {
        let mut out = self.members.clone();
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        out.dedup();
        out
    }

    /// Header line followed by one member per line.
    pub fn to_text(&self) -> String {
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        let mut out = format!(
            "# k={} d={} construction={} seed={}\n",
            self.k,
            self.d,
            self.construction.tag(),
            seed
        );
        for member in &self.members {
            let _ = writeln!(out, "{}", format_set(member));
        }
        out
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: (k <= n).then(|| (0..k).collect()),
    }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

fn ceil_ln(n: usize) -> u128 {
    ((n.max(1) as f64).ln().ceil() as u128).max(1)
}

/// Lower bound on the probability that one random draw contains a fixed
/// independent set of size at most `k`.
pub fn draw_success_bound(k: usize, d: usize) -> f64 {
    let width = k * (d + 1);
    1.0 / (binomial(width, k) as f64 * width.max(1) as f64)
}

/// `C(k(d+1), k) * k(d+1)`, the number of draws after which a fixed set is
/// missed with probability at most `1/e`.
pub fn draws_for_constant_success(k: usize, d: usize) -> u128 {
    let width = k * (d + 1);
    binomial(width, k).saturating_mul(width.max(1) as u128)
}

/// `C(k(d+1), k) * 2k²(d+1) * ⌈ln n⌉`, with the logarithm rounded up to at
/// least one.
pub fn random_family_size(n: usize, k: usize, d: usize) -> u128 {
    binomial(k * (d + 1), k)
        .saturating_mul(2 * (k * k * (d + 1)) as u128)
        .saturating_mul(ceil_ln(n))
}

/// Keeps the black vertices none of whose forward neighbours is black.
pub fn cover_from_coloring(order: &DegeneracyOrder, coloring: &ColorAssignment) -> Vec<Vertex> {
    let black = &coloring.black;
    (0..black.len())
        .filter(|&v| black[v] && order.forward_neighbors[v].iter().all(|&u| !black[u]))
        .collect()
}

/// One randomized draw: every vertex turns black with probability
/// `1 / (d + 1)`, vertices visited in id order.
pub fn draw_random_cover<R: Rng>(g: &UndirectedGraph, order: &DegeneracyOrder, rng: &mut R) -> Vec<Vertex> {
    let p = 1.0 / (order.degeneracy + 1) as f64;
    let coloring = ColorAssignment {
        black: (0..g.vertex_count()).map(|_| rng.gen_bool(p)).collect(),
    };
    cover_from_coloring(order, &coloring)
}

fn require_positive_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::Precondition("covering families need k >= 1".into()))
    } else {
        Ok(())
    }
}

fn check_cap(what: &'static str, predicted: u128, options: &FamilyOptions) -> Result<()> {
    if predicted > options.cap {
        Err(Error::Resource {
            what,
            predicted,
            cap: options.cap,
        })
    } else {
        Ok(())
    }
}

/// Draw `i` uses stream `i` of `seed`.
pub fn build_random_family(
    g: &UndirectedGraph,
    k: usize,
    seed: u64,
    options: &FamilyOptions,
) -> Result<CoveringFamily> {
    require_positive_k(k)?;
    let order = degeneracy_order(g);
    let d = order.degeneracy;
    let size = random_family_size(g.vertex_count(), k, d);
    check_cap("random covering family", size, options)?;
    let members = (0..size as u64)
        .map(|i| draw_random_cover(g, &order, &mut rng::stream(seed, i)))
        .collect();
    Ok(CoveringFamily {
        members,
        k,
        d,
        construction: Construction::Random,
        seed: Some(seed),
    })
}

/// One member per set of a lopsided universal family with `p = k`,
/// `q = k * d`, using that set as the black vertices.
pub fn build_lopsided_family(g: &UndirectedGraph, k: usize, options: &FamilyOptions) -> Result<CoveringFamily> {
    require_positive_k(k)?;
    let order = degeneracy_order(g);
    let d = order.degeneracy;
    let n = g.vertex_count();
    let universal = lopsided_universal_family(n, k, k * d, options)?;
    check_cap("lopsided covering family", universal.sets.len() as u128, options)?;
    let members = universal
        .sets
        .iter()
        .map(|s| cover_from_coloring(&order, &ColorAssignment::from_set(n, s)))
        .collect();
    Ok(CoveringFamily {
        members,
        k,
        d,
        construction: Construction::Lopsided,
        seed: None,
    })
}

/// Distinct values taken by `f`, sorted.
fn image(f: &[u32]) -> Vec<u32> {
    let mut values = f.to_vec();
    values.sort_unstable();
    values.dedup();
    values
}

/// Perfect hash family with `ell = k(d+1)`; for every function `f` and every
/// set `A` of at most `k` values in the image of `f`, the preimage of `A` is
/// coloured black.
pub fn build_hash_family(g: &UndirectedGraph, k: usize, options: &FamilyOptions) -> Result<CoveringFamily> {
    require_positive_k(k)?;
    let order = degeneracy_order(g);
    let d = order.degeneracy;
    let n = g.vertex_count();
    let hashes = perfect_hash_family(n, k * (d + 1), options)?;
    let predicted = hashes.functions.iter().fold(0u128, |acc, f| {
        let width = image(f).len();
        (1..=k).fold(acc, |acc, j| acc.saturating_add(binomial(width, j)))
    });
    check_cap("hash covering family", predicted, options)?;
    let mut members = Vec::new();
    for f in &hashes.functions {
        let values = image(f);
        for j in 1..=k.min(values.len()) {
            for chosen in combinations(values.len(), j) {
                let wanted: Vec<u32> = chosen.iter().map(|&i| values[i]).collect();
                let coloring = ColorAssignment {
                    black: f.iter().map(|x| wanted.binary_search(x).is_ok()).collect(),
                };
                members.push(cover_from_coloring(&order, &coloring));
            }
        }
    }
    Ok(CoveringFamily {
        members,
        k,
        d,
        construction: Construction::Hash,
        seed: None,
    })
}

/// Extends a covering family of `g - modulator` (given in the ids of `g`) to
/// `g`: every member `A` is combined with every independent `B` inside the
/// modulator as `(A ∪ B) \ N(B)`.
pub fn build_modulator_family(
    g: &UndirectedGraph,
    modulator: &[Vertex],
    k: usize,
    inner: &CoveringFamily,
    options: &FamilyOptions,
) -> Result<CoveringFamily> {
    let mut modulator = modulator.to_vec();
    modulator.sort_unstable();
    modulator.dedup();
    if modulator.len() > options.modulator_cap {
        return Err(Error::Resource {
            what: "modulator size",
            predicted: modulator.len() as u128,
            cap: options.modulator_cap as u128,
        });
    }
    let n = g.vertex_count();
    let mut in_modulator = vec![false; n];
    for &v in &modulator {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        in_modulator[v] = true;
    }
    if inner.members.iter().flatten().any(|&v| in_modulator[v]) {
        return Err(Error::Precondition(
            "inner family members must avoid the modulator".into(),
        ));
    }
    let parts: Vec<Vec<Vertex>> = (0u64..1 << modulator.len())
        .map(|bits| {
            (0..modulator.len())
                .filter(|&i| bits & (1 << i) != 0)
                .map(|i| modulator[i])
                .collect::<Vec<Vertex>>()
        })
        .filter(|b| g.is_independent(b))
        .collect();
    check_cap(
        "modulator covering family",
        (parts.len() as u128).saturating_mul(inner.members.len() as u128),
        options,
    )?;
    let mut members = Vec::with_capacity(parts.len() * inner.members.len());
    for a in &inner.members {
        for b in &parts {
            let blocked = g.open_neighborhood(b);
            let mut member: Vec<Vertex> = a
                .iter()
                .chain(b)
                .copied()
                .filter(|v| blocked.binary_search(v).is_err())
                .collect();
            member.sort_unstable();
            members.push(member);
        }
    }
    Ok(CoveringFamily {
        members,
        k,
        d: inner.d,
        construction: Construction::Modulator,
        seed: inner.seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "witness")]
pub enum CoverageVerdict {
    Covered,
    /// An independent set of size at most `k` that no member contains.
    Uncovered(Vec<Vertex>),
    /// A member that is not independent.
    NotIndependent(Vec<Vertex>),
}

/// Exhaustive check of the covering property.
pub fn verify_covering(
    g: &UndirectedGraph,
    k: usize,
    family: &CoveringFamily,
    limits: OracleLimits,
) -> Result<CoverageVerdict> {
    let targets = oracle::independent_sets(g, k, limits)?;
    if let Some(bad) = family.members.iter().find(|m| !g.is_independent(m)) {
        return Ok(CoverageVerdict::NotIndependent(bad.clone()));
    }
    let to_mask = |set: &[Vertex]| set.iter().fold(0u64, |m, &v| m | (1 << v));
    let members: Vec<u64> = family.members.iter().map(|m| to_mask(m)).collect();
    for x in targets {
        let want = to_mask(&x);
        if !members.iter().any(|&m| m & want == want) {
            return Ok(CoverageVerdict::Uncovered(x));
        }
    }
    Ok(CoverageVerdict::Covered)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_combinations() {
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(200, 100), u128::MAX);
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn edgeless_draw_keeps_everything() {
        let g = UndirectedGraph::empty(5);
        let order = degeneracy_order(&g);
        for seed in 0..5 {
            assert_eq!(
                draw_random_cover(&g, &order, &mut rng::stream(seed, 0)),
                vec![0, 1, 2, 3, 4]
            );
        }
    }

    #[test]
    fn both_black_edge_keeps_later_endpoint() {
        let g = UndirectedGraph::path(2);
        let order = degeneracy_order(&g);
        let z = cover_from_coloring(&order, &ColorAssignment::from_set(2, &[0, 1]));
        assert_eq!(z, vec![1]);
    }

    #[test]
    fn path_end_pair_probability_is_one_eighth() {
        // Exact count over all 8 colourings of a-b-c.
        let g = UndirectedGraph::path(3);
        let order = degeneracy_order(&g);
        let hits = (0u8..8)
            .filter(|bits| {
                let coloring = ColorAssignment {
                    black: (0..3).map(|v| bits & (1 << v) != 0).collect(),
                };
                let z = cover_from_coloring(&order, &coloring);
                z.contains(&0) && z.contains(&2)
            })
            .count();
        assert_eq!(hits, 1);
        assert!(1.0 / 8.0 >= draw_success_bound(2, 1));
        assert_eq!(draw_success_bound(2, 1), 1.0 / 24.0);
    }

    #[test]
    fn random_family_size_formula() {
        assert_eq!(random_family_size(8, 2, 1), 6 * 2 * 4 * 2 * 3);
        assert_eq!(random_family_size(1, 1, 0), 2);
        let fam = build_random_family(&UndirectedGraph::empty(1), 1, 3, &FamilyOptions::default()).unwrap();
        assert!(fam.members.iter().all(|m| m == &vec![0]));
    }

    #[test]
    fn caps_are_enforced() {
        let tight = FamilyOptions {
            cap: 10,
            ..FamilyOptions::default()
        };
        let g = UndirectedGraph::cycle(6);
        assert!(matches!(
            build_random_family(&g, 2, 0, &tight),
            Err(Error::Resource { .. })
        ));
        let small_modulator = FamilyOptions {
            modulator_cap: 1,
            ..FamilyOptions::default()
        };
        let inner = CoveringFamily {
            members: vec![vec![]],
            k: 1,
            d: 0,
            construction: Construction::Lopsided,
            seed: None,
        };
        assert!(matches!(
            build_modulator_family(&g, &[0, 1], 1, &inner, &small_modulator),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn text_format() {
        let fam = CoveringFamily {
            members: vec![vec![0, 2], vec![1]],
            k: 2,
            d: 1,
            construction: Construction::Random,
            seed: Some(7),
        };
        assert_eq!(fam.to_text(), "# k=2 d=1 construction=random seed=7\n0 2\n1\n");
    }
}
