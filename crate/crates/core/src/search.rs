//! Exhaustive branch-and-bound searches over finite candidate grids.
//!
//! The proven bounds are over all of real space; these searches discretize
//! to explicit finite grids so that exactness and the `exhaustive` flag mean
//! something. Known theoretical maxima are wired in as guards: a search that
//! "beats" a proven bound aborts with a diagnostic, because that outcome can
//! only be a bug.

use std::path::Path;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};
use crate::metric::{Configuration, MetricKind, Point, ScaledView};
use crate::scalar::Scalar;

const GRID_CAP: u64 = 1_000_000;
/// Clique search materializes an N x N adjacency matrix; keep N sane.
const CLIQUE_CAP: usize = 20_000;

/// A finite Cartesian candidate grid: the same sorted value set on every
/// axis, points enumerable in lexicographic order (first coordinate most
/// significant).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CandidateGridRepr", into = "CandidateGridRepr")]
pub struct CandidateGrid {
    dim: usize,
    values: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct CandidateGridRepr {
    dim: usize,
    values: Vec<Scalar>,
}

impl TryFrom<CandidateGridRepr> for CandidateGrid {
    type Error = Error;
    fn try_from(raw: CandidateGridRepr) -> Result<Self> {
        CandidateGrid::new(raw.dim, raw.values)
    }
}

impl From<CandidateGrid> for CandidateGridRepr {
    fn from(g: CandidateGrid) -> Self {
        CandidateGridRepr {
            dim: g.dim,
            values: g.values,
        }
    }
}

impl CandidateGrid {
    pub fn new(dim: usize, mut values: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange {
                what: "grid dimension",
                value: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        values.sort();
        values.dedup();
        if values.is_empty() {
            return Err(Error::OutOfRange {
                what: "grid value count",
                value: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        let count = (values.len() as u128)
            .checked_pow(dim as u32)
            .unwrap_or(u128::MAX);
        if count > GRID_CAP as u128 {
            return Err(Error::GridCapExceeded {
                candidates: count,
                cap: GRID_CAP,
            });
        }
        Ok(CandidateGrid { dim, values })
    }

    /// Dyadic values with denominators up to 8 in `[0, 2]` — the range the
    /// known constructions live in.
    pub fn dyadic_default(dim: usize) -> Result<Self> {
        let values = (0..=16).map(|k| Scalar::ratio(k, 8)).collect();
        CandidateGrid::new(dim, values)
    }

    /// Half-integer values in `[-1, 1]`.
    pub fn half_integer(dim: usize) -> Result<Self> {
        let values = (-2..=2).map(|k| Scalar::ratio(k, 2)).collect();
        CandidateGrid::new(dim, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn candidate_count(&self) -> u64 {
        (self.values.len() as u64).pow(self.dim as u32)
    }

    /// All grid points in lexicographic order.
    pub fn enumerate(&self) -> Vec<Point> {
        let v = self.values.len();
        let mut out = Vec::with_capacity(self.candidate_count() as usize);
        let mut digits = vec![0usize; self.dim];
        loop {
            out.push(Point::new(
                digits.iter().map(|&d| self.values[d].clone()).collect(),
            ));
            let mut pos = self.dim;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < v {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

/// Knobs shared by the searches. `threads > 1` parallelizes the size-finding
/// phase; the reported witness is canonical either way.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub threads: usize,
    /// Maximum sequence length to explore; defaults to the proven bound
    /// plus one so that a bound violation surfaces instead of being
    /// silently truncated.
    pub hard_cap: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: 1,
            hard_cap: None,
        }
    }
}

/// Outcome of a search: the best configuration found, how much work it
/// took, and whether the whole candidate space was provably covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_size: usize,
    pub witness: Configuration,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

fn adjacency_odd(points: &[Point], dim: usize, metric: MetricKind) -> Result<BitMatrix> {
    if points.len() > CLIQUE_CAP {
        return Err(Error::GridCapExceeded {
            candidates: points.len() as u128,
            cap: CLIQUE_CAP as u64,
        });
    }
    let config = Configuration::new(metric, dim, points.to_vec())?;
    let view = ScaledView::new(&config);
    let n = points.len();
    let mut adj = BitMatrix::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if scaled_distance_is_odd(&view, &view.dist(i, j)) {
                adj.set(i, j);
                adj.set(j, i);
            }
        }
    }
    Ok(adj)
}

/// Whether a scaled distance is an odd integer (an odd perfect square for
/// squared Euclidean metrics).
fn scaled_distance_is_odd(view: &ScaledView, scaled: &BigInt) -> bool {
    let value = match view.metric {
        MetricKind::L1 | MetricKind::LInfinity => {
            let (q, r) = scaled.div_rem(&view.denom);
            if !r.is_zero() {
                return false;
            }
            q
        }
        MetricKind::L2Squared => {
            let root = scaled.sqrt();
            if &root * &root != *scaled {
                return false;
            }
            let (q, r) = root.div_rem(&view.denom);
            if !r.is_zero() {
                return false;
            }
            q
        }
    };
    !value.is_zero() && value.is_odd()
}

/// Strict comparability bitsets for the chain guard in max-norm instances.
fn comparability_sets(points: &[Point], dim: usize) -> Result<Option<BitMatrix>> {
    if dim < 2 {
        return Ok(None);
    }
    let config = Configuration::new(MetricKind::LInfinity, dim, points.to_vec())?;
    let view = ScaledView::new(&config);
    let n = points.len();
    let mut comp = BitMatrix::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (trunc, gap) = crate::poset::scaled_pair_profile(&view, i, j);
            if trunc < gap || trunc < -gap {
                comp.set(i, j);
                comp.set(j, i);
            }
        }
    }
    Ok(Some(comp))
}

struct CliqueContext {
    adj: BitMatrix,
    /// Pairwise comparability under the dominance order, for max-norm
    /// instances. No clique can contain a pairwise-comparable triple (three
    /// odd gaps on a line are impossible), so a branch that grows one is
    /// pruned; in practice this is a structural guard rather than a worker.
    comp: Option<BitMatrix>,
    nodes: AtomicU64,
    best: AtomicUsize,
}

impl CliqueContext {
    fn words(&self) -> usize {
        bits::words_for(self.adj.size().max(1))
    }

    fn creates_chain_triple(&self, clique: &[usize], v: usize) -> bool {
        let Some(comp) = &self.comp else { return false };
        let in_clique: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&u| comp.get(u, v))
            .collect();
        in_clique
            .iter()
            .enumerate()
            .any(|(a, &u)| in_clique[a + 1..].iter().any(|&w| comp.get(u, w)))
    }

    /// Greedy coloring of `cand`; returns (vertex, color) sorted by color
    /// ascending. The color is an upper bound for any clique containing the
    /// vertex within `cand`.
    fn color_sort(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for v in bits::iter_ones(cand) {
            let mut placed = false;
            for (c, class) in classes.iter_mut().enumerate() {
                if !bits::any_common(class, self.adj.row(v)) {
                    bits::set_bit(class, v);
                    out.push((v, c + 1));
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut class = vec![0u64; self.words()];
                bits::set_bit(&mut class, v);
                classes.push(class);
                out.push((v, classes.len()));
            }
        }
        out.sort_by_key(|&(v, c)| (c, v));
        out
    }

    /// Branch-and-bound for the maximum clique size below `clique` within
    /// `cand`; updates the shared incumbent.
    fn expand(&self, clique: &mut Vec<usize>, cand: &[u64]) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let mut ordered = self.color_sort(cand);
        let mut live = cand.to_vec();
        while let Some((v, color)) = ordered.pop() {
            if clique.len() + color <= self.best.load(Ordering::Acquire) {
                return;
            }
            bits::clear_bit(&mut live, v);
            if self.creates_chain_triple(clique, v) {
                continue;
            }
            let mut next = live.clone();
            bits::and_assign(&mut next, self.adj.row(v));
            clique.push(v);
            if bits::count_ones(&next) == 0 {
                self.best.fetch_max(clique.len(), Ordering::AcqRel);
            } else {
                self.expand(clique, &next);
            }
            clique.pop();
        }
    }

    /// Does a clique of `need` vertices exist within `cand`? Explores
    /// vertices in ascending order so the caller can build lexicographically
    /// minimal cliques greedily.
    fn feasible(&self, clique: &mut Vec<usize>, cand: &[u64], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if bits::count_ones(cand) < need {
            return false;
        }
        let ordered = self.color_sort(cand);
        if ordered.last().map_or(0, |&(_, c)| c) < need {
            return false;
        }
        let mut live = cand.to_vec();
        for (v, _) in ordered {
            bits::clear_bit(&mut live, v);
            if self.creates_chain_triple(clique, v) {
                continue;
            }
            let mut next = live.clone();
            bits::and_assign(&mut next, self.adj.row(v));
            clique.push(v);
            if self.feasible(clique, &next, need - 1) {
                clique.pop();
                return true;
            }
            clique.pop();
        }
        false
    }
}

/// Maximum clique in the odd-distance graph over the grid points.
///
/// Exhaustive branch-and-bound with greedy-coloring bounds; the witness is
/// the lexicographically smallest maximum clique in the candidate order.
pub fn max_odd_distance_clique(
    grid: &CandidateGrid,
    metric: MetricKind,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let points = grid.enumerate();
    max_odd_distance_clique_over(&points, grid.dim(), metric, opts)
}

/// Same search over an explicit candidate list.
pub fn max_odd_distance_clique_over(
    points: &[Point],
    dim: usize,
    metric: MetricKind,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    if points.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let adj = adjacency_odd(points, dim, metric)?;
    let comp = if metric == MetricKind::LInfinity {
        comparability_sets(points, dim)?
    } else {
        None
    };
    let n = points.len();
    let ctx = CliqueContext {
        adj,
        comp,
        nodes: AtomicU64::new(0),
        best: AtomicUsize::new(1),
    };
    let words = ctx.words();

    // Phase 1: the exact maximum size. Root branches are independent, so
    // they can run in parallel; the incumbent only improves monotonically.
    let root: Vec<(usize, Vec<u64>)> = (0..n)
        .map(|v| {
            let mut cand = vec![0u64; words];
            for w in v + 1..n {
                if ctx.adj.get(v, w) {
                    bits::set_bit(&mut cand, w);
                }
            }
            (v, cand)
        })
        .collect();
    let run_root = |(v, cand): &(usize, Vec<u64>)| {
        let mut clique = vec![*v];
        if bits::count_ones(cand) == 0 {
            ctx.best.fetch_max(1, Ordering::AcqRel);
        } else {
            ctx.expand(&mut clique, cand);
        }
    };
    if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            root.par_iter().for_each(run_root);
        });
    } else {
        root.iter().for_each(run_root);
    }
    let best_size = ctx.best.load(Ordering::Acquire);

    // Phase 2: canonical witness, rebuilt deterministically from the size.
    let mut witness: Vec<usize> = Vec::with_capacity(best_size);
    let mut cand = vec![0u64; words];
    for v in 0..n {
        bits::set_bit(&mut cand, v);
    }
    while witness.len() < best_size {
        let mut chosen = None;
        for v in bits::iter_ones(&cand) {
            let mut next = cand.clone();
            bits::and_assign(&mut next, ctx.adj.row(v));
            for w in 0..=v {
                bits::clear_bit(&mut next, w);
            }
            let mut probe = witness.clone();
            probe.push(v);
            let need = best_size - witness.len() - 1;
            if ctx.feasible(&mut probe, &next, need) {
                chosen = Some((v, next));
                break;
            }
        }
        let (v, next) = chosen.expect("a maximum clique of the proven size exists");
        witness.push(v);
        cand = next;
    }

    // Bound guard: beating the proven maximum would falsify the theorem.
    if metric == MetricKind::LInfinity {
        let bound = 1usize.checked_shl(dim as u32).unwrap_or(usize::MAX);
        if best_size > bound {
            return Err(Error::GuardTripped {
                details: format!(
                    "odd-distance clique of {best_size} points in max-norm dimension {dim} exceeds the proven maximum {bound}"
                ),
            });
        }
    }

    let witness_points: Vec<Point> = witness.iter().map(|&i| points[i].clone()).collect();
    Ok(SearchResult {
        best_size,
        witness: Configuration::new(metric, dim, witness_points)?,
        nodes_explored: ctx.nodes.load(Ordering::Acquire),
        exhaustive: true,
    })
}

struct SequenceContext<'a> {
    view: ScaledView,
    points: &'a [Point],
    hard_cap: usize,
    nodes: u64,
    capped: bool,
    best: Vec<usize>,
}

impl SequenceContext<'_> {
    fn extend(&mut self, seq: &mut Vec<usize>, frozen: &mut Vec<BigInt>, used: &mut [bool]) {
        self.nodes += 1;
        if seq.len() > self.best.len() {
            self.best = seq.clone();
        }
        if seq.len() == self.hard_cap {
            // Only a cap below the candidate count can actually truncate.
            if self.hard_cap < self.points.len() {
                self.capped = true;
            }
            return;
        }
        'cand: for c in 0..self.points.len() {
            if used[c] {
                continue;
            }
            // Every point with an already-frozen distance must see the
            // candidate at exactly that distance.
            for (i, want) in frozen.iter().enumerate() {
                if self.view.dist(c, seq[i]) != *want {
                    continue 'cand;
                }
            }
            if let Some(&last) = seq.last() {
                frozen.push(self.view.dist(c, last));
            }
            seq.push(c);
            used[c] = true;
            self.extend(seq, frozen, used);
            used[c] = false;
            seq.pop();
            if !seq.is_empty() {
                frozen.pop();
            }
        }
    }
}

/// Longest right-equidistant sequence of grid points, by exhaustive ordered
/// depth-first extension.
///
/// Appending a candidate is allowed only when it matches every frozen
/// predecessor distance (the first successor of a point freezes that
/// point's distance). Because the grid uses the same value set on every
/// axis, coordinate permutations are grid automorphisms and the first
/// element can be restricted to points with sorted coordinates.
pub fn max_right_equidistant(
    grid: &CandidateGrid,
    metric: MetricKind,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let points = grid.enumerate();
    max_right_equidistant_over(&points, grid.dim(), metric, true, opts)
}

/// Same search over an explicit candidate list; no symmetry reduction is
/// applied because an arbitrary list need not be permutation-symmetric.
pub fn max_right_equidistant_over(
    points: &[Point],
    dim: usize,
    metric: MetricKind,
    permutation_symmetric: bool,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    if points.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let bound = if metric == MetricKind::LInfinity {
        1usize
            .checked_shl(dim as u32 + 1)
            .map(|b| b - 1)
            .unwrap_or(usize::MAX)
    } else {
        usize::MAX
    };
    let default_cap = if bound == usize::MAX {
        points.len()
    } else {
        (bound + 1).min(points.len())
    };
    let hard_cap = opts.hard_cap.unwrap_or(default_cap);
    if hard_cap == 0 {
        return Err(Error::OutOfRange {
            what: "hard cap",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }

    let config = Configuration::new(metric, dim, points.to_vec())?;
    let view = ScaledView::new(&config);
    let mut ctx = SequenceContext {
        view,
        points,
        hard_cap,
        nodes: 0,
        capped: false,
        best: Vec::new(),
    };
    let mut used = vec![false; points.len()];
    for first in 0..points.len() {
        if permutation_symmetric && !has_sorted_coords(&points[first]) {
            continue;
        }
        let mut seq = vec![first];
        let mut frozen: Vec<BigInt> = Vec::new();
        used[first] = true;
        ctx.extend(&mut seq, &mut frozen, &mut used);
        used[first] = false;
    }

    let best = std::mem::take(&mut ctx.best);
    if best.len() > bound {
        return Err(Error::GuardTripped {
            details: format!(
                "right-equidistant sequence of {} points in max-norm dimension {dim} exceeds the proven maximum {bound}",
                best.len()
            ),
        });
    }
    let witness_points: Vec<Point> = best.iter().map(|&i| points[i].clone()).collect();
    Ok(SearchResult {
        best_size: best.len(),
        witness: Configuration::new(metric, dim, witness_points)?,
        nodes_explored: ctx.nodes,
        exhaustive: !ctx.capped,
    })
}

fn has_sorted_coords(p: &Point) -> bool {
    p.coords().windows(2).all(|w| w[0] <= w[1])
}

/// Exploratory search for seven points with pairwise odd Manhattan
/// distances in dimension three.
///
/// Specialization of the odd-distance clique search to the default
/// half-integer grid; a clique of seven or more points is persisted to
/// `persist_to` as a research artifact when a path is given.
pub fn search_odd_l1_seven(
    grid: Option<&CandidateGrid>,
    opts: &SearchOptions,
    persist_to: Option<&Path>,
) -> Result<SearchResult> {
    let default_grid;
    let grid = match grid {
        Some(g) => g,
        None => {
            default_grid = CandidateGrid::half_integer(3)?;
            &default_grid
        }
    };
    if grid.dim() != 3 {
        return Err(Error::OutOfRange {
            what: "odd-l1-seven grid dimension",
            value: grid.dim() as u64,
            min: 3,
            max: 3,
        });
    }
    let result = max_odd_distance_clique(grid, MetricKind::L1, opts)?;
    if result.best_size >= 7 {
        if let Some(path) = persist_to {
            std::fs::write(path, result.witness.to_json())
                .map_err(|e| Error::PreconditionFailed {
                    details: format!("cannot persist witness to {}: {e}", path.display()),
                })?;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::metric::distance;
    use crate::verify::{check_odd_distances, check_right_equidistant};

    fn ints(values: &[i64]) -> Vec<Scalar> {
        values.iter().map(|&v| Scalar::int(v)).collect()
    }

    /// Naive oracle: maximum odd-distance subset by full subset enumeration.
    fn brute_force_max_odd(points: &[Point], metric: MetricKind) -> usize {
        let n = points.len();
        assert!(n <= 20);
        let mut best = 0;
        for mask in 1u32..1 << n {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = members.iter().enumerate().all(|(a, &i)| {
                members[a + 1..].iter().all(|&j| {
                    let d = distance(&points[i], &points[j], metric).unwrap();
                    d.as_integer().is_some_and(|v| v.is_odd())
                })
            });
            if ok {
                best = best.max(members.len());
            }
        }
        best
    }

    /// Naive oracle: longest right-equidistant sequence by exhaustive
    /// ordered extension without any pruning or symmetry reduction.
    fn brute_force_max_sequence(points: &[Point], metric: MetricKind) -> usize {
        fn go(points: &[Point], metric: MetricKind, seq: &mut Vec<usize>, best: &mut usize) {
            *best = (*best).max(seq.len());
            'next: for c in 0..points.len() {
                if seq.contains(&c) {
                    continue;
                }
                for (pos, &i) in seq.iter().enumerate() {
                    if pos + 1 >= seq.len() {
                        break;
                    }
                    let fixed = distance(&points[i], &points[seq[pos + 1]], metric).unwrap();
                    if distance(&points[i], &points[c], metric).unwrap() != fixed {
                        continue 'next;
                    }
                }
                seq.push(c);
                go(points, metric, seq, best);
                seq.pop();
            }
        }
        let mut best = 0;
        let mut seq = Vec::new();
        go(points, metric, &mut seq, &mut best);
        best
    }

    #[test]
    fn grid_enumeration_is_lexicographic() {
        let grid = CandidateGrid::new(2, ints(&[0, 1])).unwrap();
        assert_eq!(
            grid.enumerate(),
            vec![
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[0, 1]),
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[1, 1]),
            ]
        );
        assert!(CandidateGrid::new(30, ints(&[0, 1, 2])).is_err());
        assert!(CandidateGrid::dyadic_default(5).is_err());
        assert_eq!(CandidateGrid::dyadic_default(4).unwrap().candidate_count(), 83521);
    }

    #[test]
    fn odd_clique_line_grid() {
        let grid = CandidateGrid::new(1, ints(&[0, 1, 2])).unwrap();
        let result =
            max_odd_distance_clique(&grid, MetricKind::LInfinity, &SearchOptions::default())
                .unwrap();
        assert_eq!(result.best_size, 2);
        assert!(result.exhaustive);
        // Lexicographically smallest witness: {0, 1}.
        assert_eq!(
            result.witness.points(),
            &[Point::from_ints(&[0]), Point::from_ints(&[1])]
        );
        assert_eq!(brute_force_max_odd(&grid.enumerate(), MetricKind::LInfinity), 2);
    }

    #[test]
    fn odd_clique_matches_brute_force_on_small_grids() {
        let cases = [
            (CandidateGrid::new(1, ints(&[0, 1, 2, 3])).unwrap(), MetricKind::L1),
            (CandidateGrid::new(2, ints(&[0, 1])).unwrap(), MetricKind::L1),
            (CandidateGrid::new(2, ints(&[0, 1])).unwrap(), MetricKind::LInfinity),
            (
                CandidateGrid::new(2, vec![Scalar::zero(), Scalar::ratio(1, 2), Scalar::one()])
                    .unwrap(),
                MetricKind::L1,
            ),
            (CandidateGrid::new(1, ints(&[0, 1, 2, 3])).unwrap(), MetricKind::L2Squared),
        ];
        for (grid, metric) in cases {
            let result =
                max_odd_distance_clique(&grid, metric, &SearchOptions::default()).unwrap();
            let oracle = brute_force_max_odd(&grid.enumerate(), metric);
            assert_eq!(result.best_size, oracle, "grid {grid:?} metric {metric:?}");
            assert!(result.exhaustive);
            if result.best_size >= 2 {
                assert!(check_odd_distances(&result.witness).unwrap().ok);
            }
        }
    }

    #[test]
    fn odd_clique_cube_grid_reaches_the_bound() {
        let grid = CandidateGrid::new(3, ints(&[0, 1, 2])).unwrap();
        let result =
            max_odd_distance_clique(&grid, MetricKind::LInfinity, &SearchOptions::default())
                .unwrap();
        assert_eq!(result.best_size, 8);
        assert!(result.exhaustive);
        assert!(check_odd_distances(&result.witness).unwrap().ok);
    }

    #[test]
    fn odd_clique_parallel_agrees() {
        let grid = CandidateGrid::new(3, ints(&[0, 1, 2])).unwrap();
        let seq =
            max_odd_distance_clique(&grid, MetricKind::LInfinity, &SearchOptions::default())
                .unwrap();
        let par = max_odd_distance_clique(
            &grid,
            MetricKind::LInfinity,
            &SearchOptions {
                threads: 4,
                hard_cap: None,
            },
        )
        .unwrap();
        assert_eq!(seq.best_size, par.best_size);
        assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn odd_clique_binary_cube_under_l1() {
        // {0,1}^3 under l1: only distances 1 and 3 are odd; brute force
        // over all 2^8 subsets says the maximum is 2.
        let grid = CandidateGrid::new(3, ints(&[0, 1])).unwrap();
        let result =
            max_odd_distance_clique(&grid, MetricKind::L1, &SearchOptions::default()).unwrap();
        assert_eq!(result.best_size, 2);
        assert_eq!(brute_force_max_odd(&grid.enumerate(), MetricKind::L1), 2);
    }

    #[test]
    fn sequence_search_line_grids() {
        let grid = CandidateGrid::new(
            1,
            vec![
                Scalar::zero(),
                Scalar::ratio(1, 4),
                Scalar::ratio(1, 2),
                Scalar::one(),
                Scalar::int(2),
            ],
        )
        .unwrap();
        let result =
            max_right_equidistant(&grid, MetricKind::LInfinity, &SearchOptions::default())
                .unwrap();
        assert_eq!(result.best_size, 3);
        assert!(result.exhaustive);
        assert!(check_right_equidistant(&result.witness).unwrap().ok);

        // (1, 2, 0) is a witness on the integer line; brute force confirms
        // no ordered 4-sequence exists.
        let l1_grid = CandidateGrid::new(1, ints(&[0, 1, 2])).unwrap();
        let l1 = max_right_equidistant(&l1_grid, MetricKind::L1, &SearchOptions::default())
            .unwrap();
        assert_eq!(l1.best_size, 3);
        assert_eq!(
            brute_force_max_sequence(&l1_grid.enumerate(), MetricKind::L1),
            3
        );
    }

    #[test]
    fn sequence_search_matches_brute_force_on_small_grids() {
        let cases = [
            (CandidateGrid::new(1, ints(&[0, 1, 2, 4])).unwrap(), MetricKind::LInfinity),
            (CandidateGrid::new(2, ints(&[0, 1])).unwrap(), MetricKind::L1),
            (
                CandidateGrid::new(2, vec![Scalar::zero(), Scalar::ratio(1, 2), Scalar::one()])
                    .unwrap(),
                MetricKind::LInfinity,
            ),
            (CandidateGrid::new(1, ints(&[0, 1, 3])).unwrap(), MetricKind::L2Squared),
        ];
        for (grid, metric) in cases {
            let result =
                max_right_equidistant(&grid, metric, &SearchOptions::default()).unwrap();
            let oracle = brute_force_max_sequence(&grid.enumerate(), metric);
            assert_eq!(result.best_size, oracle, "grid {grid:?} metric {metric:?}");
            assert!(check_right_equidistant(&result.witness).unwrap().ok);
        }
    }

    #[test]
    fn sequence_hard_cap_reports_truncation() {
        let grid = CandidateGrid::new(1, ints(&[0, 1, 2])).unwrap();
        let result = max_right_equidistant(
            &grid,
            MetricKind::L1,
            &SearchOptions {
                threads: 1,
                hard_cap: Some(2),
            },
        )
        .unwrap();
        assert_eq!(result.best_size, 2);
        assert!(!result.exhaustive);
    }

    #[test]
    fn seven_point_exploration_contains_cross_polytope() {
        let result =
            search_odd_l1_seven(None, &SearchOptions::default(), None).unwrap();
        assert!(result.best_size >= 6);
        assert!(check_odd_distances(&result.witness).unwrap().ok);
        // The scaled cross-polytope itself lies in the default grid.
        let cross = constructions::cross_polytope_odd_l1(3).unwrap();
        let grid_points = CandidateGrid::half_integer(3).unwrap().enumerate();
        for p in cross.points() {
            assert!(grid_points.contains(p));
        }
    }

    #[test]
    fn seven_point_grid_must_be_three_dimensional() {
        let grid = CandidateGrid::new(2, ints(&[0, 1])).unwrap();
        assert!(search_odd_l1_seven(Some(&grid), &SearchOptions::default(), None).is_err());
    }
}
