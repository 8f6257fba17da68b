//! The dominance order on max-norm space and its chain machinery.
//!
//! Two points satisfy `x < y` exactly when the max-norm distance of their
//! truncations is strictly smaller than the gap of their last coordinates.
//! For comparable points the whole max-norm distance is realized by that
//! last gap; for incomparable points it is realized inside the truncation.
//! That dichotomy turns distance constraints into one-dimensional ones along
//! chains and into lower-dimensional ones along antichains, which is what
//! the recursive [`BoundCertificate`] mechanizes.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};
use crate::metric::{truncated_linf_distance, Configuration, MetricKind, Point, ScaledView};
use crate::scalar::Scalar;
use crate::verify::check_odd_distances;

/// How two points relate under the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    PrecedesStrictly,
    SucceedsStrictly,
    Equal,
    Incomparable,
}

/// Evaluates the dominance order exactly.
///
/// `x` strictly precedes `y` when `max_{k<n} |y_k - x_k| < y_n - x_n`; the
/// strictness matters and is part of the contract.
pub fn compare(x: &Point, y: &Point) -> Result<Comparison> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    if x.dim() < 2 {
        return Err(Error::ComparisonDimension { dim: x.dim() });
    }
    if x == y {
        return Ok(Comparison::Equal);
    }
    let trunc = truncated_linf_distance(x, y)?;
    let n = x.dim() - 1;
    let forward = y.coord(n) - x.coord(n);
    if trunc < forward {
        return Ok(Comparison::PrecedesStrictly);
    }
    if trunc < -forward {
        return Ok(Comparison::SucceedsStrictly);
    }
    Ok(Comparison::Incomparable)
}

/// The max-norm distance computed through the comparability dichotomy:
/// the last-coordinate gap for comparable points, the truncated max-norm
/// distance otherwise.
///
/// This always equals [`distance`] under `LInfinity`; it exists as an
/// independent cross-check of that identity and must not share its
/// implementation path.
pub fn distance_via_comparability(x: &Point, y: &Point) -> Result<Scalar> {
    match compare(x, y)? {
        Comparison::Equal => Err(Error::IdenticalPoints),
        Comparison::PrecedesStrictly | Comparison::SucceedsStrictly => {
            let n = x.dim() - 1;
            Ok((y.coord(n) - x.coord(n)).abs())
        }
        Comparison::Incomparable => truncated_linf_distance(x, y),
    }
}

/// The evaluated strict dominance relation over a configuration.
///
/// The relation is transitively closed by construction (transitivity of the
/// order follows from the triangle inequality) and acyclic because every
/// strict edge increases the last coordinate.
pub struct ComparabilityRelation {
    config: Configuration,
    /// `strict.row(i)` has bit `j` set iff point `i` strictly precedes `j`.
    strict: BitMatrix,
}

const RELATION_CAP: usize = 10_000;

impl ComparabilityRelation {
    /// Evaluates all pairs. Requires the max-norm metric, dimension >= 2,
    /// pairwise distinct points, and at most 10^4 points.
    pub fn new(config: &Configuration) -> Result<Self> {
        if config.metric() != MetricKind::LInfinity {
            return Err(Error::MetricMismatch {
                expected: "linf",
                found: config.metric().name(),
            });
        }
        if config.dim() < 2 {
            return Err(Error::ComparisonDimension { dim: config.dim() });
        }
        if config.len() > RELATION_CAP {
            return Err(Error::OutOfRange {
                what: "relation size",
                value: config.len() as u64,
                min: 0,
                max: RELATION_CAP as u64,
            });
        }
        if let Some((i, j)) = config.first_duplicate() {
            return Err(Error::DuplicatePoint { i, j });
        }
        let view = ScaledView::new(config);
        let m = config.len();
        let mut strict = BitMatrix::new(m);
        for i in 0..m {
            for j in i + 1..m {
                let (trunc, gap) = scaled_pair_profile(&view, i, j);
                if trunc < gap {
                    strict.set(i, j);
                } else if trunc < -gap {
                    strict.set(j, i);
                }
            }
        }
        Ok(ComparabilityRelation {
            config: config.clone(),
            strict,
        })
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.config.len()
    }

    pub fn is_empty(&self) -> bool {
        self.config.is_empty()
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.strict.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.strict.get(i, j) || self.strict.get(j, i)
    }

    /// All strict edges `(i, j)` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits::iter_ones(self.strict.row(i)) {
                out.push((i, j));
            }
        }
        out
    }
}

/// Scaled `(max_{k<n-1} |x_k - y_k|, y_n - x_n)` for points `i`, `j` of the
/// view; comparisons against these integers are exact.
pub(crate) fn scaled_pair_profile(view: &ScaledView, i: usize, j: usize) -> (BigInt, BigInt) {
    let last = (view.dim - 1) as u32;
    let (si, vi) = (&view.support[i], &view.values[i]);
    let (sj, vj) = (&view.support[j], &view.values[j]);
    let mut trunc = BigInt::zero();
    let mut gap = BigInt::zero();
    let (mut a, mut b) = (0usize, 0usize);
    loop {
        let (k, diff) = match (si.get(a), sj.get(b)) {
            (Some(&ka), Some(&kb)) if ka == kb => {
                let d = &vj[b] - &vi[a];
                a += 1;
                b += 1;
                (ka, d)
            }
            (Some(&ka), Some(&kb)) if ka < kb => {
                let d = -&vi[a];
                a += 1;
                (ka, d)
            }
            (Some(_), Some(&kb)) => {
                let d = vj[b].clone();
                b += 1;
                (kb, d)
            }
            (Some(&ka), None) => {
                let d = -&vi[a];
                a += 1;
                (ka, d)
            }
            (None, Some(&kb)) => {
                let d = vj[b].clone();
                b += 1;
                (kb, d)
            }
            (None, None) => break,
        };
        if k == last {
            gap = diff;
        } else {
            let d = diff.magnitude();
            if *d > *trunc.magnitude() {
                trunc = BigInt::from(d.clone());
            }
        }
    }
    (trunc, gap)
}

/// Longest chain in the relation: the exact length and one witness, ties
/// broken toward the lexicographically smallest index sequence.
pub fn longest_chain(rel: &ComparabilityRelation) -> (usize, Vec<usize>) {
    let m = rel.len();
    if m == 0 {
        return (0, Vec::new());
    }
    // Process in an order that sees all successors first. Strict edges
    // increase the last coordinate, so descending last coordinate works.
    let mut order: Vec<usize> = (0..m).collect();
    let last = rel.config.dim() - 1;
    order.sort_by(|&a, &b| {
        let ca = rel.config.points()[a].coord(last);
        let cb = rel.config.points()[b].coord(last);
        cb.cmp(ca).then(a.cmp(&b))
    });
    let mut suffix = vec![1usize; m];
    for &i in &order {
        for j in bits::iter_ones(rel.strict.row(i)) {
            suffix[i] = suffix[i].max(1 + suffix[j]);
        }
    }
    let length = suffix.iter().copied().max().unwrap_or(0);
    // Greedy witness: smallest feasible index at every step.
    let mut witness = Vec::with_capacity(length);
    let mut need = length;
    let mut current: Option<usize> = None;
    while need > 0 {
        let next = (0..m)
            .find(|&j| {
                suffix[j] == need && current.is_none_or(|i| rel.precedes(i, j))
            })
            .expect("suffix table admits a witness");
        witness.push(next);
        current = Some(next);
        need -= 1;
    }
    (length, witness)
}

/// A partition of the point indices into chains, each listed in increasing
/// order along the relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCover {
    pub chains: Vec<Vec<usize>>,
}

impl ChainCover {
    pub fn max_chain_length(&self) -> usize {
        self.chains.iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

/// Minimum chain cover plus a maximum antichain of the same cardinality.
///
/// The cover comes from a maximum matching on the split comparability graph
/// (Hopcroft-Karp); the antichain is extracted from the matching's minimum
/// vertex cover. Equality of the two sizes is asserted internally.
pub fn dilworth_decompose(rel: &ComparabilityRelation) -> (ChainCover, Vec<usize>) {
    let m = rel.len();
    if m == 0 {
        return (ChainCover { chains: Vec::new() }, Vec::new());
    }
    let matching = hopcroft_karp(&rel.strict, m);

    // Chains: follow matched successor links from unmatched heads.
    let mut is_successor = vec![false; m];
    for i in 0..m {
        if let Some(j) = matching.succ[i] {
            is_successor[j] = true;
        }
    }
    let mut chains = Vec::new();
    for (start, _) in is_successor.iter().enumerate().filter(|&(_, &s)| !s) {
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = matching.succ[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }

    // Koenig: vertices reachable from unmatched left vertices by
    // alternating paths; the antichain avoids the induced vertex cover.
    let mut left_visited = vec![false; m];
    let mut right_visited = vec![false; m];
    let mut queue: Vec<usize> = (0..m).filter(|&i| matching.succ[i].is_none()).collect();
    for &i in &queue {
        left_visited[i] = true;
    }
    while let Some(i) = queue.pop() {
        for j in bits::iter_ones(rel.strict.row(i)) {
            if Some(j) == matching.succ[i] || right_visited[j] {
                continue;
            }
            right_visited[j] = true;
            if let Some(back) = matching.pred[j] {
                if !left_visited[back] {
                    left_visited[back] = true;
                    queue.push(back);
                }
            }
        }
    }
    let antichain: Vec<usize> = (0..m)
        .filter(|&i| left_visited[i] && !right_visited[i])
        .collect();

    assert_eq!(
        chains.len(),
        antichain.len(),
        "minimum chain cover must match the maximum antichain"
    );
    (ChainCover { chains }, antichain)
}

struct Matching {
    /// `succ[i]` = right endpoint matched to left vertex `i`.
    succ: Vec<Option<usize>>,
    /// `pred[j]` = left endpoint matched to right vertex `j`.
    pred: Vec<Option<usize>>,
}

/// Hopcroft-Karp maximum matching on the split graph whose rows are the
/// strict-order bitsets.
fn hopcroft_karp(strict: &BitMatrix, m: usize) -> Matching {
    let mut succ: Vec<Option<usize>> = vec![None; m];
    let mut pred: Vec<Option<usize>> = vec![None; m];
    let inf = usize::MAX;
    let mut dist = vec![inf; m];

    loop {
        // BFS layering from unmatched left vertices.
        let mut queue = std::collections::VecDeque::new();
        for i in 0..m {
            if succ[i].is_none() {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = inf;
            }
        }
        let mut found_augmenting = false;
        while let Some(i) = queue.pop_front() {
            for j in bits::iter_ones(strict.row(i)) {
                match pred[j] {
                    None => found_augmenting = true,
                    Some(next) => {
                        if dist[next] == inf {
                            dist[next] = dist[i] + 1;
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        if !found_augmenting {
            break;
        }
        // DFS augmentation along the layering, smallest indices first.
        fn augment(
            i: usize,
            strict: &BitMatrix,
            succ: &mut [Option<usize>],
            pred: &mut [Option<usize>],
            dist: &mut [usize],
        ) -> bool {
            for j in bits::iter_ones(strict.row(i)) {
                let extend = match pred[j] {
                    None => true,
                    Some(next) => {
                        dist[next] == dist[i].wrapping_add(1)
                            && augment(next, strict, succ, pred, dist)
                    }
                };
                if extend {
                    succ[i] = Some(j);
                    pred[j] = Some(i);
                    return true;
                }
            }
            dist[i] = usize::MAX;
            false
        }
        for i in 0..m {
            if succ[i].is_none() {
                augment(i, strict, &mut succ, &mut pred, &mut dist);
            }
        }
    }
    Matching { succ, pred }
}

/// Recursive witness that a pairwise-odd-distance set in max-norm `n`-space
/// has at most `2^n` points.
///
/// Each level records a minimum chain cover (every chain of length at most
/// two), a maximum antichain of the same cardinality, and a child
/// certificate for the truncated antichain one dimension down; dimension one
/// holds at most two points. Together the levels give
/// `|S| <= 2 * 2 * ... * 2 = 2^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub level_dim: usize,
    pub set_size: usize,
    pub chain_cover: ChainCover,
    pub max_chain_length: usize,
    pub antichain_indices: Vec<usize>,
    pub child: Option<Box<BoundCertificate>>,
}

impl BoundCertificate {
    /// Set sizes level by level, outermost first.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.set_size];
        let mut cur = self.child.as_deref();
        while let Some(c) = cur {
            sizes.push(c.set_size);
            cur = c.child.as_deref();
        }
        sizes
    }
}

/// Builds the recursive bound certificate for a pairwise-odd-distance
/// configuration under the max-norm.
///
/// Any chain of length three (or a dimension-one level with three points)
/// contradicts the proven bound and is reported as an error carrying the
/// violating triple: it means the precondition was broken or there is a bug.
pub fn certify_odd_bound(config: &Configuration) -> Result<BoundCertificate> {
    if config.metric() != MetricKind::LInfinity {
        return Err(Error::MetricMismatch {
            expected: "linf",
            found: config.metric().name(),
        });
    }
    if config.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    if let Some((i, j)) = config.first_duplicate() {
        return Err(Error::DuplicatePoint { i, j });
    }
    if config.len() >= 2 {
        let verdict = check_odd_distances(config)?;
        if !verdict.ok {
            return Err(Error::PreconditionFailed {
                details: format!(
                    "configuration does not have pairwise odd distances: {:?}",
                    verdict.witness
                ),
            });
        }
    }
    certify_level(config.points().to_vec(), config.dim())
}

fn certify_level(points: Vec<Point>, dim: usize) -> Result<BoundCertificate> {
    let m = points.len();
    if dim == 1 {
        if m >= 3 {
            return Err(Error::ChainTooLong { a: 0, b: 1, c: 2 });
        }
        return Ok(BoundCertificate {
            level_dim: 1,
            set_size: m,
            chain_cover: ChainCover {
                chains: (0..m).map(|i| vec![i]).collect(),
            },
            max_chain_length: usize::from(m > 0),
            antichain_indices: (0..m).collect(),
            child: None,
        });
    }
    let level = Configuration::new(MetricKind::LInfinity, dim, points)?;
    let rel = ComparabilityRelation::new(&level)?;
    let (cover, antichain) = dilworth_decompose(&rel);
    let max_len = cover.max_chain_length();
    if max_len >= 3 {
        let chain = cover
            .chains
            .iter()
            .find(|c| c.len() >= 3)
            .expect("a chain realizes the maximum");
        return Err(Error::ChainTooLong {
            a: chain[0],
            b: chain[1],
            c: chain[2],
        });
    }
    let mut child_points = Vec::with_capacity(antichain.len());
    for &i in &antichain {
        child_points.push(level.points()[i].truncate()?);
    }
    let child = certify_level(child_points, dim - 1)?;
    Ok(BoundCertificate {
        level_dim: dim,
        set_size: m,
        chain_cover: cover,
        max_chain_length: max_len,
        antichain_indices: antichain,
        child: Some(Box::new(child)),
    })
}

/// Independent certificate checker: re-evaluates every comparability claim
/// and every counting inequality from the raw points, without touching the
/// decomposition machinery that produced the certificate.
///
/// Acceptance of `(config, cert)` implies `config.len() <= 2^config.dim()`.
pub fn verify_certificate(config: &Configuration, cert: &BoundCertificate) -> Result<()> {
    if config.metric() != MetricKind::LInfinity {
        return Err(Error::MetricMismatch {
            expected: "linf",
            found: config.metric().name(),
        });
    }
    verify_level(config.points(), config.dim(), cert)
}

fn reject(details: String) -> Error {
    Error::CertificateInvalid { details }
}

fn verify_level(points: &[Point], dim: usize, cert: &BoundCertificate) -> Result<()> {
    let m = points.len();
    if cert.level_dim != dim {
        return Err(reject(format!(
            "level dimension {} does not match configuration dimension {dim}",
            cert.level_dim
        )));
    }
    if cert.set_size != m {
        return Err(reject(format!(
            "recorded set size {} does not match {m} points",
            cert.set_size
        )));
    }
    for i in 0..m {
        for j in i + 1..m {
            if points[i] == points[j] {
                return Err(reject(format!("points {i} and {j} coincide")));
            }
        }
    }

    // The chains must partition the index set.
    let mut seen = vec![false; m];
    for chain in &cert.chain_cover.chains {
        for &i in chain {
            if i >= m || seen[i] {
                return Err(reject(format!("index {i} missing or repeated in chains")));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(reject("chains do not cover every index".into()));
    }

    let max_len = cert.chain_cover.max_chain_length();
    if cert.max_chain_length != max_len {
        return Err(reject(format!(
            "recorded max chain length {} but cover realizes {max_len}",
            cert.max_chain_length
        )));
    }
    if max_len > 2 {
        return Err(reject(format!("chain of length {max_len} exceeds 2")));
    }

    if cert.chain_cover.chains.len() != cert.antichain_indices.len() {
        return Err(reject(format!(
            "{} chains vs {} antichain elements",
            cert.chain_cover.chains.len(),
            cert.antichain_indices.len()
        )));
    }
    if m > max_len * cert.antichain_indices.len() {
        return Err(reject(format!(
            "counting inequality fails: {m} > {} * {}",
            max_len,
            cert.antichain_indices.len()
        )));
    }

    if dim == 1 {
        if m > 2 {
            return Err(reject(format!("{m} points in dimension 1 exceed 2")));
        }
        for chain in &cert.chain_cover.chains {
            if chain.len() > 1 {
                return Err(reject("dimension-1 chains must be singletons".into()));
            }
        }
        if cert.child.is_some() {
            return Err(reject("dimension-1 level must be a leaf".into()));
        }
        return Ok(());
    }

    // Re-evaluate comparability from raw points: consecutive chain links
    // must be strictly increasing, antichain elements pairwise incomparable.
    for chain in &cert.chain_cover.chains {
        for pair in chain.windows(2) {
            if compare(&points[pair[0]], &points[pair[1]])? != Comparison::PrecedesStrictly {
                return Err(reject(format!(
                    "chain link {} -> {} is not strictly increasing",
                    pair[0], pair[1]
                )));
            }
        }
    }
    for (a, &i) in cert.antichain_indices.iter().enumerate() {
        if i >= m {
            return Err(reject(format!("antichain index {i} out of range")));
        }
        for &j in &cert.antichain_indices[a + 1..] {
            if compare(&points[i], &points[j])? != Comparison::Incomparable {
                return Err(reject(format!("antichain pair ({i}, {j}) is comparable")));
            }
        }
    }

    let child = cert
        .child
        .as_deref()
        .ok_or_else(|| reject(format!("missing child certificate below dimension {dim}")))?;
    let mut sorted = cert.antichain_indices.clone();
    sorted.sort_unstable();
    let mut child_points = Vec::with_capacity(sorted.len());
    for &i in &sorted {
        child_points.push(points[i].truncate()?);
    }
    verify_level(&child_points, dim - 1, child)
}
