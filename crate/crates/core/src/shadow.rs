//! Shadows, shadow-removable sets and the covering families used for
//! shadow removal.
//!
//! A covering family is a list of sets `Z` disjoint from `W` such that for
//! every `k`-shadow-removable `Y` some `Z` contains the shadow of `Y` while
//! avoiding `Y`. Each `Z` comes from a red/blue coloring through
//! [`covering_from_coloring`].

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::ShadowError;
use crate::graph::Graph;
use crate::instance::CompressionInstance;
use crate::lp::Rational;
use crate::par;
use crate::separators::enumerate_important_separators;
use crate::set::VertexSet;
use crate::testkit::SplitMix64;

/// `R_W(Y)`: vertices outside `W ∪ Y` with no path to `W` in `G - Y`.
pub fn shadow(g: &Graph, w_set: &VertexSet, y: &VertexSet) -> Result<VertexSet, ShadowError> {
    if let Some(v) = y.intersection(w_set).first() {
        return Err(ShadowError::OverlapsW(v));
    }
    let mut out = g.vertices().difference(&g.reach(w_set, y));
    out.difference_with(y);
    out.difference_with(w_set);
    Ok(out)
}

/// Important `{v}`–`W` separators of size at most `k`, for every vertex `v`
/// outside `W`. Empty lists for `W` and absent vertices.
#[derive(Clone, Debug)]
pub struct SeparatorTable {
    per_vertex: Vec<Vec<VertexSet>>,
}

impl SeparatorTable {
    pub fn new(g: &Graph, w_set: &VertexSet, k: usize) -> Self {
        let n = g.universe();
        let per_vertex = (0..n)
            .map(|v| {
                if !g.contains_vertex(v) || w_set.contains(v) {
                    return Vec::new();
                }
                enumerate_important_separators(g, &VertexSet::singleton(n, v), w_set, k)
                    .expect("v is outside W")
                    .into_iter()
                    .map(|s| s.cut)
                    .collect()
            })
            .collect();
        SeparatorTable { per_vertex }
    }

    pub fn of(&self, v: usize) -> &[VertexSet] {
        &self.per_vertex[v]
    }
}

/// Checks the three conditions: `|Y| <= k`; every shadow vertex has an
/// important separator of size at most `k` inside `Y`; no member of `Y` has
/// one.
pub fn is_k_shadow_removable(g: &Graph, w_set: &VertexSet, y: &VertexSet, k: usize) -> Result<bool, ShadowError> {
    let sh = shadow(g, w_set, y)?;
    if y.len() > k {
        return Ok(false);
    }
    let table = SeparatorTable::new(g, w_set, k);
    let covered = sh.iter().all(|v| table.of(v).iter().any(|x| x.is_subset(y)));
    let own_free = y.iter().all(|v| !table.of(v).iter().any(|x| x.is_subset(y)));
    Ok(covered && own_free)
}

/// A red/blue coloring of the vertices; only the red set is stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub red: VertexSet,
}

impl Coloring {
    pub fn all_blue(n: usize) -> Self {
        Coloring { red: VertexSet::new(n) }
    }

    pub fn is_red(&self, v: usize) -> bool {
        self.red.contains(v)
    }
}

/// Vertices outside `W` having an all-red important `{v}`–`W` separator of
/// size at most `k`. The empty separator of a vertex cut off from `W` counts
/// as all red.
pub fn covering_from_coloring(g: &Graph, w_set: &VertexSet, k: usize, c: &Coloring) -> VertexSet {
    covering_with_table(g, &SeparatorTable::new(g, w_set, k), c)
}

pub fn covering_with_table(g: &Graph, table: &SeparatorTable, c: &Coloring) -> VertexSet {
    VertexSet::from_iter(
        g.universe(),
        (0..g.universe()).filter(|&v| table.of(v).iter().any(|x| x.is_subset(&c.red))),
    )
}

/// A family of covering sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverFamily {
    pub sets: Vec<VertexSet>,
}

impl CoverFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Red probability `min(1/k², 1/2)`. With `p = 1/k²` alone, `k = 1` would
/// colour everything red and the success probability would be zero.
pub fn red_probability(k: usize) -> Rational {
    let k2 = (k * k).max(2);
    Rational::new(BigInt::one(), BigInt::from(k2))
}

/// `P = p^k (1-p)^{k²}`, the chance that one random coloring is good for a fixed `Y`.
pub fn single_trial_probability(k: usize) -> Rational {
    let p = red_probability(k);
    let q = Rational::one() - &p;
    num_traits::pow(p, k) * num_traits::pow(q, k * k)
}

/// `⌈100 / P⌉`.
pub fn default_trials(k: usize) -> u64 {
    let r = Rational::from_integer(BigInt::from(100)) / single_trial_probability(k);
    r.ceil().to_integer().to_u64().expect("trial count fits in u64")
}

/// One random coloring of `V \ W`, each vertex red with probability `p`.
/// A 64-bit draw `x` is red iff `x / 2^64 < p`, compared exactly.
pub fn random_coloring(g: &Graph, w_set: &VertexSet, p: &Rational, rng: &mut SplitMix64) -> Coloring {
    let num = p.numer().to_u128().expect("numerator fits in u128");
    let den = p.denom().to_u128().expect("denominator fits in u128");
    let mut red = g.empty_set();
    for v in g.vertices().difference(w_set).iter() {
        let x = rng.next_u64() as u128;
        // x * den < num * 2^64, without overflow for den <= 2^64
        if x * den < num << 64 {
            red.insert(v);
        }
    }
    Coloring { red }
}

/// `trials` random colorings (default `⌈100/P⌉`), one covering set each.
pub fn randomized_cover_family(
    g: &Graph,
    w_set: &VertexSet,
    k: usize,
    trials: Option<u64>,
    seed: u64,
) -> CoverFamily {
    let trials = trials.unwrap_or_else(|| default_trials(k));
    let p = red_probability(k);
    let mut rng = SplitMix64::new(seed);
    let colorings: Vec<Coloring> = (0..trials).map(|_| random_coloring(g, w_set, &p, &mut rng)).collect();
    let table = SeparatorTable::new(g, w_set, k);
    CoverFamily {
        sets: par::map(&colorings, |c| covering_with_table(g, &table, c)),
    }
}

/// A family of functions `[n] -> [l]`, each stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitterFamily {
    pub n: usize,
    pub r: usize,
    pub l: usize,
    pub functions: Vec<Vec<usize>>,
}

impl SplitterFamily {
    /// Whether some function is injective on `m`.
    pub fn separates(&self, m: &[usize]) -> bool {
        self.functions.iter().any(|f| {
            let mut seen = BTreeSet::new();
            m.iter().all(|&i| seen.insert(f[i]))
        })
    }
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// An `(n, r, l)`-splitter for `l >= r²`.
///
/// For `n <= l` the identity suffices. Otherwise take `N = C(r,2)·⌊log₂ n⌋ + 1`
/// primes `q >= r`. For an `r`-set `M`, the product of the pairwise
/// differences of `M` has fewer than `N` distinct prime factors, so some `q`
/// keeps `M` distinct mod `q`. If `q <= l`, `i ↦ i mod q` is already
/// injective. If not, the maps `i ↦ ((b·(i mod q)) mod q) mod l` for
/// `b ∈ [1, q)` have on average at most `r(r-1)/l < 1` collisions on `M`,
/// so one of them is injective.
pub fn build_splitter(n: usize, r: usize, l: usize) -> Result<SplitterFamily, ShadowError> {
    if l < r * r || l == 0 {
        return Err(ShadowError::SplitterRange { r, l });
    }
    if n <= l {
        return Ok(SplitterFamily {
            n,
            r,
            l,
            functions: alloc::vec![(0..n).collect()],
        });
    }
    let log_n = (usize::BITS - 1 - n.leading_zeros()) as usize;
    let wanted = r * r.saturating_sub(1) / 2 * log_n.max(1) + 1;
    let primes: Vec<usize> = (r.max(2)..).filter(|&q| is_prime(q)).take(wanted).collect();
    let mut functions = Vec::new();
    for q in primes {
        if q <= l {
            functions.push((0..n).map(|i| i % q).collect());
        } else {
            for b in 1..q {
                functions.push((0..n).map(|i| (b * (i % q)) % q % l).collect());
            }
        }
    }
    Ok(SplitterFamily { n, r, l, functions })
}

/// Splitter parameters for covering: `r = k + k²`, `l = r²`.
pub fn splitter_parameters(k: usize) -> (usize, usize) {
    let r = k + k * k;
    (r, r * r)
}

/// Upper bound on the deterministic family size: splitter size times the
/// number of patterns with exactly `k` red cells.
pub fn deterministic_cover_bound(n: usize, k: usize) -> u128 {
    let (r, l) = splitter_parameters(k);
    let functions = build_splitter(n, r, l).map(|s| s.functions.len()).unwrap_or(0) as u128;
    functions * binomial(l as u128, k as u128)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Colorings `v ↦ pattern(f(v))` over all splitter functions `f` and all
/// patterns with exactly `k` red cells, restricted to `V \ W` and
/// deduplicated. A pattern matters only through which hit cells are red,
/// so subsets of hit cells of size `j` are enumerated for every `j` that
/// can be completed to `k` reds using unhit cells.
pub fn deterministic_colorings(g: &Graph, w_set: &VertexSet, k: usize) -> Vec<Coloring> {
    let (r, l) = splitter_parameters(k);
    let splitter = build_splitter(g.universe(), r, l).expect("l = r^2");
    let free = g.vertices().difference(w_set).to_vec();
    let mut out = BTreeSet::new();
    for f in &splitter.functions {
        let cells: Vec<usize> = free.iter().map(|&v| f[v]).collect::<BTreeSet<_>>().into_iter().collect();
        let m = cells.len();
        let lo = k.saturating_sub(l - m);
        for j in lo..=k.min(m) {
            for_each_subset(m, j, &mut |chosen: &[usize]| {
                let red_cells: BTreeSet<usize> = chosen.iter().map(|&i| cells[i]).collect();
                let red = VertexSet::from_iter(g.universe(), free.iter().copied().filter(|&v| red_cells.contains(&f[v])));
                out.insert(Coloring { red });
            });
        }
    }
    out.into_iter().collect()
}

/// Calls `f` on every `j`-subset of `0..m`, in lexicographic order.
fn for_each_subset(m: usize, j: usize, f: &mut dyn FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..j).rev().find(|&p| idx[p] < m - j + p) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..j {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// The deterministic covering family: distinct covering sets over
/// [`deterministic_colorings`], in set order.
pub fn deterministic_cover_family(g: &Graph, w_set: &VertexSet, k: usize) -> CoverFamily {
    let colorings = deterministic_colorings(g, w_set, k);
    let table = SeparatorTable::new(g, w_set, k);
    let sets: BTreeSet<VertexSet> = par::map(&colorings, |c| covering_with_table(g, &table, c))
        .into_iter()
        .collect();
    CoverFamily {
        sets: sets.into_iter().collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    Deterministic,
    Randomized { seed: u64, trials: Option<u64> },
}

/// The covering family of the instance in the given mode.
pub fn cover_family(inst: &CompressionInstance, mode: CoverMode) -> CoverFamily {
    match mode {
        CoverMode::Deterministic => deterministic_cover_family(inst.graph(), inst.w_set(), inst.k()),
        CoverMode::Randomized { seed, trials } => {
            randomized_cover_family(inst.graph(), inst.w_set(), inst.k(), trials, seed)
        }
    }
}

/// `torso(I, Z)` for every `Z` of the covering family. Torsos that collapse
/// a pair onto a terminal are no-instances and are left out. With `k = 0`
/// the only candidate solution is empty, so the family is the single set of
/// vertices with no path to `W`.
pub fn shadow_removal_step(inst: &CompressionInstance, mode: CoverMode) -> Vec<CompressionInstance> {
    let family = if inst.k() == 0 {
        let z = shadow(inst.graph(), inst.w_set(), &inst.graph().empty_set()).expect("empty set avoids W");
        if z.is_empty() {
            return alloc::vec![inst.clone()];
        }
        alloc::vec![z]
    } else {
        cover_family(inst, mode).sets
    };
    family
        .iter()
        .filter_map(|z| {
            let t = inst.torso(z).expect("covering sets avoid W");
            (!t.infeasible).then_some(t.instance)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    /// w = 0, a = 1, b = 2.
    fn path_wab() -> (Graph, VertexSet) {
        (Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap(), set(3, &[0]))
    }

    #[test]
    fn shadow_examples() {
        let (g, w) = path_wab();
        assert_eq!(shadow(&g, &w, &set(3, &[1])).unwrap().to_vec(), [2]);
        assert!(shadow(&g, &w, &set(3, &[])).unwrap().is_empty());
        let g2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(shadow(&g2, &set(4, &[0]), &set(4, &[])).unwrap().to_vec(), [2, 3]);
        assert_eq!(shadow(&g, &w, &set(3, &[0])), Err(ShadowError::OverlapsW(0)));
    }

    #[test]
    fn shadow_removable_examples() {
        let (g, w) = path_wab();
        assert_eq!(is_k_shadow_removable(&g, &w, &set(3, &[1]), 1), Ok(true));
        assert_eq!(is_k_shadow_removable(&g, &w, &set(3, &[]), 1), Ok(true));
        assert_eq!(is_k_shadow_removable(&g, &w, &set(3, &[1, 2]), 1), Ok(false));
    }

    #[test]
    fn covering_examples() {
        let (g, w) = path_wab();
        assert!(covering_from_coloring(&g, &w, 1, &Coloring::all_blue(3)).is_empty());
        let c = Coloring { red: set(3, &[1]) };
        assert_eq!(covering_from_coloring(&g, &w, 1, &c).to_vec(), [2]);
        let c = Coloring { red: set(3, &[1, 2]) };
        assert_eq!(covering_from_coloring(&g, &w, 1, &c).to_vec(), [2]);

        let g2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let z = covering_from_coloring(&g2, &set(4, &[0]), 1, &Coloring::all_blue(4));
        assert_eq!(z.to_vec(), [2, 3]);
    }

    #[test]
    fn trial_counts() {
        assert_eq!(single_trial_probability(1), Rational::new(1.into(), 4.into()));
        assert_eq!(default_trials(1), 400);
        // P = (1/16)(3/4)^4 = 81/4096, 100/P = 409600/81 = 5056.79...
        assert_eq!(single_trial_probability(2), Rational::new(81.into(), 4096.into()));
        assert_eq!(default_trials(2), 5057);
        let (g, w) = path_wab();
        assert_eq!(randomized_cover_family(&g, &w, 1, Some(1), 7).len(), 1);
    }

    #[test]
    fn splitter_small_cases() {
        let s = build_splitter(5, 1, 1).unwrap();
        assert!((0..5).all(|i| s.separates(&[i])));
        let s = build_splitter(3, 3, 9).unwrap();
        assert_eq!(s.functions, [vec![0, 1, 2]]);
        assert!(build_splitter(10, 3, 8).is_err());
    }

    #[test]
    fn splitter_64_3_9_on_all_triples() {
        let s = build_splitter(64, 3, 9).unwrap();
        for a in 0..64 {
            for b in a + 1..64 {
                for c in b + 1..64 {
                    assert!(s.separates(&[a, b, c]), "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn deterministic_family_on_path() {
        let (g, w) = path_wab();
        let fam = deterministic_cover_family(&g, &w, 1);
        assert!(fam.sets.iter().any(|z| z.to_vec() == [2]));
        assert!(fam.sets.iter().all(|z| z.is_disjoint(&w)));
        assert!(fam.len() as u128 <= deterministic_cover_bound(3, 1));
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]);
        let mut count = 0;
        for_each_subset(3, 0, &mut |_| count += 1);
        assert_eq!(count, 1);
    }
}
