//! Exact LP relaxation of vertex multiway cut.
//!
//! The primal has one variable `d_v` per non-terminal vertex and asks for
//! `sum d_v >= 1` along every path joining two terminals. It is solved through
//! its dual (a path packing) with a rational primal simplex, generating path
//! columns lazily from a shortest-path separation oracle. The primal values
//! are read off the reduced costs of the slack columns.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::LpError;
use crate::graph::Graph;
use crate::separators::{isolating_cut_size, min_vertex_separator};
use crate::set::VertexSet;

pub type Rational = BigRational;

/// Optimum of the LP, with adjacent terminals treated as `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpValue {
    Finite(Rational),
    Infeasible,
}

impl Ord for LpValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LpValue::Finite(a), LpValue::Finite(b)) => a.cmp(b),
            (LpValue::Finite(_), LpValue::Infeasible) => Ordering::Less,
            (LpValue::Infeasible, LpValue::Finite(_)) => Ordering::Greater,
            (LpValue::Infeasible, LpValue::Infeasible) => Ordering::Equal,
        }
    }
}

impl PartialOrd for LpValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl LpValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            LpValue::Finite(x) => Some(x),
            LpValue::Infeasible => None,
        }
    }
}

/// An optimal primal solution. `values` is indexed by vertex id; terminals
/// and absent vertices hold zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: Rational,
    pub values: Vec<Rational>,
}

impl LpSolution {
    pub fn value(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, x)| x.is_positive()).map(|(v, _)| v)
    }

    pub fn is_half_integral(&self) -> bool {
        self.values.iter().all(|x| (x * rat(2, 1)).is_integer())
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn terminals_adjacent(g: &Graph, w_set: &VertexSet) -> bool {
    w_set.iter().any(|w| g.contains_vertex(w) && !g.neighbors(w).is_disjoint(w_set))
}

/// A terminal-to-terminal path through non-terminals, with its weight.
struct Violation {
    weight: Rational,
    inner: Vec<usize>,
}

/// The lightest path between two distinct terminals under vertex weights `d`
/// (terminal endpoints weigh nothing). Ties go to fewer vertices, then to the
/// first terminal in id order. `None` if no such path exists.
fn lightest_terminal_path(g: &Graph, w_set: &VertexSet, d: &[Rational]) -> Option<Violation> {
    let n = g.universe();
    let terms = w_set.intersection(g.vertices());
    let mut best: Option<(Rational, usize, Vec<usize>)> = None;
    for w in terms.iter() {
        let mut dist: Vec<Option<(Rational, usize)>> = vec![None; n];
        let mut pred = vec![usize::MAX; n];
        let mut done = vec![false; n];
        for u in g.neighbors(w).iter() {
            if !terms.contains(u) {
                dist[u] = Some((d[u].clone(), 1));
            }
        }
        loop {
            let mut pick: Option<usize> = None;
            for u in 0..n {
                if done[u] || dist[u].is_none() {
                    continue;
                }
                if pick.map_or(true, |p| dist[u] < dist[p]) {
                    pick = Some(u);
                }
            }
            let Some(u) = pick else { break };
            done[u] = true;
            let (du, hu) = dist[u].clone().unwrap();
            if best.as_ref().is_some_and(|(bw, bh, _)| (&du, hu) > (bw, *bh)) {
                break;
            }
            for x in g.neighbors(u).iter() {
                if terms.contains(x) {
                    if x > w && best.as_ref().map_or(true, |(bw, bh, _)| (&du, hu) < (bw, *bh)) {
                        let mut inner = vec![u];
                        let mut c = u;
                        while pred[c] != usize::MAX {
                            c = pred[c];
                            inner.push(c);
                        }
                        best = Some((du.clone(), hu, inner));
                    }
                } else if !done[x] {
                    let cand = (&du + &d[x], hu + 1);
                    if dist[x].as_ref().map_or(true, |cur| cand < *cur) {
                        dist[x] = Some(cand);
                        pred[x] = u;
                    }
                }
            }
        }
    }
    best.map(|(weight, _, inner)| Violation { weight, inner })
}

/// Whether `d` satisfies every path constraint.
pub fn is_feasible(g: &Graph, w_set: &VertexSet, d: &[Rational]) -> bool {
    if terminals_adjacent(g, w_set) || d.iter().any(|x| x.is_negative()) {
        return false;
    }
    lightest_terminal_path(g, w_set, d).map_or(true, |p| p.weight >= Rational::one())
}

/// Dense simplex tableau for `max 1·f  s.t.  A f + s = 1, f, s >= 0`.
/// Columns `0..m` are the slacks.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    reduced: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(m: usize) -> Self {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Tableau {
            rows,
            rhs: vec![Rational::one(); m],
            reduced: vec![Rational::zero(); m],
            value: Rational::zero(),
            basis: (0..m).collect(),
        }
    }

    /// Adds the dual column of a path constraint over the given rows.
    fn add_column(&mut self, members: &[usize]) {
        for row in self.rows.iter_mut() {
            let entry = members.iter().fold(Rational::zero(), |acc, &i| acc + &row[i]);
            row.push(entry);
        }
        let z = members.iter().fold(Rational::zero(), |acc, &i| acc + &self.reduced[i]);
        self.reduced.push(z - Rational::one());
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.reduced[c].clone();
        for (x, y) in self.reduced.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        self.value -= &f * &pivot_rhs;
        self.basis[r] = c;
    }

    /// Primal simplex with Bland's rule. The problem is bounded because
    /// every column has a positive entry in some row.
    fn optimize(&mut self) {
        while let Some(c) = self.reduced.iter().position(|x| x.is_negative()) {
            let mut leave: Option<(Rational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((best, _, b)) => ratio < *best || (ratio == *best && self.basis[i] < *b),
                };
                if better {
                    leave = Some((ratio, i, self.basis[i]));
                }
            }
            let (_, r, _) = leave.expect("path packing LP is bounded");
            self.pivot(r, c);
        }
    }
}

/// Solves the LP and returns an optimal primal solution, plus the number of
/// separation rounds.
fn solve(g: &Graph, w_set: &VertexSet) -> Result<(LpSolution, usize), LpError> {
    if terminals_adjacent(g, w_set) {
        return Err(LpError::Infeasible);
    }
    let n = g.universe();
    let vars: Vec<usize> = g.vertices().difference(w_set).to_vec();
    let mut row_of = vec![usize::MAX; n];
    for (i, &v) in vars.iter().enumerate() {
        row_of[v] = i;
    }
    let mut tab = Tableau::new(vars.len());
    let mut rounds = 0;
    loop {
        let mut d = vec![Rational::zero(); n];
        for (i, &v) in vars.iter().enumerate() {
            d[v] = tab.reduced[i].clone();
        }
        match lightest_terminal_path(g, w_set, &d) {
            Some(p) if p.weight < Rational::one() => {
                let members: Vec<usize> = p.inner.iter().map(|&v| row_of[v]).collect();
                tab.add_column(&members);
                tab.optimize();
                rounds += 1;
            }
            _ => {
                return Ok((
                    LpSolution {
                        objective: tab.value,
                        values: d,
                    },
                    rounds,
                ))
            }
        }
    }
}

/// `OPT_lp(G, W)` with an optimal solution (half-integral when the simplex
/// vertex is not already).
pub fn opt_lp(g: &Graph, w_set: &VertexSet) -> Result<LpSolution, LpError> {
    let (sol, _) = solve(g, w_set)?;
    Ok(half_integral(g, w_set, sol))
}

/// `OPT_lp(G, W)` only, skipping the half-integral rounding.
pub fn lp_value(g: &Graph, w_set: &VertexSet) -> LpValue {
    match solve(g, w_set) {
        Ok((sol, _)) => LpValue::Finite(sol.objective),
        Err(_) => LpValue::Infeasible,
    }
}

/// Replaces a fractional optimum by one with values in `{0, 1/2, 1}`,
/// searching first over the support of `sol`, then over all variables.
pub fn half_integral(g: &Graph, w_set: &VertexSet, sol: LpSolution) -> LpSolution {
    if sol.is_half_integral() {
        return sol;
    }
    let twice = &sol.objective * rat(2, 1);
    assert!(twice.is_integer(), "LP optimum {} is not half-integral", sol.objective);
    let units = twice.to_integer().to_usize().expect("objective fits in usize");
    let support: Vec<usize> = sol.support().collect();
    let all: Vec<usize> = g.vertices().difference(w_set).to_vec();
    for pool in [support, all] {
        let mut units_of = vec![0u8; g.universe()];
        if let Some(values) = place_units(g, w_set, &pool, 0, units, &mut units_of) {
            return LpSolution {
                objective: sol.objective,
                values,
            };
        }
    }
    unreachable!("no half-integral optimum found for objective {}", sol.objective)
}

fn place_units(
    g: &Graph,
    w_set: &VertexSet,
    pool: &[usize],
    at: usize,
    left: usize,
    units_of: &mut Vec<u8>,
) -> Option<Vec<Rational>> {
    if left == 0 {
        let d: Vec<Rational> = units_of.iter().map(|&u| rat(u as i64, 2)).collect();
        return is_feasible(g, w_set, &d).then_some(d);
    }
    if at == pool.len() || 2 * (pool.len() - at) < left {
        return None;
    }
    for u in (0..=2u8.min(left as u8)).rev() {
        units_of[pool[at]] = u;
        if let Some(d) = place_units(g, w_set, pool, at + 1, left - u as usize, units_of) {
            return Some(d);
        }
    }
    units_of[pool[at]] = 0;
    None
}

/// Counts LP solves for callers that report statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LpCounter {
    pub solves: u64,
}

impl LpCounter {
    pub fn value(&mut self, g: &Graph, w_set: &VertexSet) -> LpValue {
        self.solves += 1;
        lp_value(g, w_set)
    }

    pub fn solve(&mut self, g: &Graph, w_set: &VertexSet) -> Result<LpSolution, LpError> {
        self.solves += 1;
        solve(g, w_set).map(|(sol, _)| sol)
    }
}

/// Whether every optimum has `d_v > 0`: the LP with `v` torsoed away (which
/// equals the LP with `d_v` fixed to zero) has a strictly larger optimum.
pub fn is_nonzero_vertex(g: &Graph, w_set: &VertexSet, v: usize) -> Result<bool, LpError> {
    if w_set.contains(v) {
        return Err(LpError::TerminalVertex(v));
    }
    let base = lp_value(g, w_set);
    Ok(torso_value(g, w_set, v, &mut LpCounter::default()) > base)
}

fn torso_value(g: &Graph, w_set: &VertexSet, v: usize, counter: &mut LpCounter) -> LpValue {
    counter.value(&g.torso(&VertexSet::singleton(g.universe(), v)), w_set)
}

/// Lowest-id non-zero vertex.
pub fn find_nonzero_vertex(g: &Graph, w_set: &VertexSet) -> Option<usize> {
    let mut counter = LpCounter::default();
    let base = counter.solve(g, w_set).ok()?;
    find_nonzero_vertex_from(g, w_set, &base, &mut counter)
}

/// As [`find_nonzero_vertex`], reusing an optimum `base` of the same LP.
/// Only the support of `base` can hold non-zero vertices.
pub fn find_nonzero_vertex_from(
    g: &Graph,
    w_set: &VertexSet,
    base: &LpSolution,
    counter: &mut LpCounter,
) -> Option<usize> {
    let value = LpValue::Finite(base.objective.clone());
    base.support()
        .find(|&v| torso_value(g, w_set, v, counter) > value)
}

/// `2·OPT_lp(G, W) == Σ_w mincut(G, w, W \ {w})`, which holds when there is
/// no non-zero vertex.
pub fn check_2lp_eq_mincut(g: &Graph, w_set: &VertexSet) -> Result<bool, LpError> {
    let sol = opt_lp(g, w_set)?;
    if let Some(v) = find_nonzero_vertex_from(g, w_set, &sol, &mut LpCounter::default()) {
        return Err(LpError::NonZeroVertex(v));
    }
    let mut total = 0usize;
    for w in w_set.intersection(g.vertices()).iter() {
        match isolating_cut_size(g, w_set, w) {
            Ok(Some(c)) => total += c,
            _ => return Err(LpError::Infeasible),
        }
    }
    Ok(sol.objective * rat(2, 1) == Rational::from_integer(BigInt::from(total)))
}

/// The half-integral assignment built from one minimum isolating cut per
/// terminal: 1 on vertices in two or more cuts, 1/2 on vertices in exactly one.
/// Its objective is at most `Σ_w mincut(w) / 2`.
pub fn isolating_cut_assignment(g: &Graph, w_set: &VertexSet) -> Result<Vec<Rational>, LpError> {
    let mut hits = vec![0u32; g.universe()];
    for w in w_set.intersection(g.vertices()).iter() {
        let mut rest = w_set.clone();
        rest.remove(w);
        let (_, sep) = min_vertex_separator(g, &VertexSet::singleton(g.universe(), w), &rest)
            .ok()
            .flatten()
            .ok_or(LpError::Infeasible)?;
        for v in sep.cut.iter() {
            hits[v] += 1;
        }
    }
    Ok(hits
        .into_iter()
        .map(|h| match h {
            0 => Rational::zero(),
            1 => rat(1, 2),
            _ => Rational::one(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    fn path4() -> (Graph, VertexSet) {
        (Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap(), set(4, &[0, 3]))
    }

    fn star() -> (Graph, VertexSet) {
        (Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap(), set(4, &[1, 2, 3]))
    }

    /// Triangle 0, 1, 2 with pendant terminals 3, 4, 5.
    fn pendant_triangle() -> (Graph, VertexSet) {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 0), (4, 1), (5, 2)]).unwrap();
        (g, set(6, &[3, 4, 5]))
    }

    #[test]
    fn optimum_examples() {
        let (g, w) = path4();
        let sol = opt_lp(&g, &w).unwrap();
        assert_eq!(sol.objective, rat(1, 1));
        assert!(is_feasible(&g, &w, &sol.values));

        let (g, w) = star();
        let sol = opt_lp(&g, &w).unwrap();
        assert_eq!(sol.objective, rat(1, 1));
        assert_eq!(sol.values[0], rat(1, 1));

        let (g, w) = pendant_triangle();
        let sol = opt_lp(&g, &w).unwrap();
        assert_eq!(sol.objective, rat(3, 2));
        assert_eq!(&sol.values[..3], &[rat(1, 2), rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn trivial_and_infeasible() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(opt_lp(&g, &set(3, &[0])).unwrap().objective, rat(0, 1));
        assert_eq!(opt_lp(&g, &set(3, &[0, 1])), Err(LpError::Infeasible));
        assert_eq!(lp_value(&g, &set(3, &[0, 1])), LpValue::Infeasible);
        assert!(LpValue::Infeasible > LpValue::Finite(rat(100, 1)));
    }

    #[test]
    fn nonzero_examples() {
        let (g, w) = star();
        assert_eq!(is_nonzero_vertex(&g, &w, 0), Ok(true));
        assert_eq!(find_nonzero_vertex(&g, &w), Some(0));
        assert_eq!(is_nonzero_vertex(&g, &w, 1), Err(LpError::TerminalVertex(1)));

        let (g, w) = path4();
        assert_eq!(is_nonzero_vertex(&g, &w, 1), Ok(false));
        assert_eq!(find_nonzero_vertex(&g, &w), None);

        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(is_nonzero_vertex(&g, &set(5, &[0, 3]), 4), Ok(false));
        assert_eq!(find_nonzero_vertex(&Graph::new(3), &set(3, &[])), None);
    }

    #[test]
    fn two_lp_mincut_examples() {
        let (g, w) = path4();
        assert_eq!(check_2lp_eq_mincut(&g, &w), Ok(true));
        assert_eq!(check_2lp_eq_mincut(&Graph::new(2), &set(2, &[0, 1])), Ok(true));
        let (g, w) = star();
        assert_eq!(check_2lp_eq_mincut(&g, &w), Err(LpError::NonZeroVertex(0)));
    }

    #[test]
    fn isolating_assignment_is_feasible() {
        for (g, w) in [path4(), star(), pendant_triangle()] {
            let d = isolating_cut_assignment(&g, &w).unwrap();
            assert!(is_feasible(&g, &w, &d));
        }
    }

    #[test]
    fn rounding_keeps_objective() {
        // Odd cycle of length 5 with terminals on alternate attachments has
        // fractional vertices in some simplex optima; the rounding must keep
        // the objective either way.
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (6, 2), (7, 3)],
        )
        .unwrap();
        let w = set(8, &[5, 6, 7]);
        let sol = opt_lp(&g, &w).unwrap();
        assert!(sol.is_half_integral());
        assert!(is_feasible(&g, &w, &sol.values));
        let sum = sol.values.iter().fold(Rational::zero(), |a, x| a + x);
        assert_eq!(sum, sol.objective);
    }
}
