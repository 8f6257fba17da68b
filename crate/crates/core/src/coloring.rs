//! Lattice-and-cell machinery for the odd-distance-free coloring of
//! Manhattan space.
//!
//! The even-coordinate-sum lattice has determinant 2 and only even pairwise
//! Manhattan distances; the open cross-polytope cell of radius 1/2 has
//! volume `1/n!`. Points in one cell translate differ in Manhattan distance
//! by strictly less than 1 from their lattice gap, which sandwiches every
//! same-cell-system distance inside an open unit interval around an even
//! integer — never an odd integer. Covering the quotient torus with
//! finitely many cell translates therefore yields a coloring of space in
//! which no color class realizes an odd integral distance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{distance, MetricKind, Point};
use crate::scalar::Scalar;
use crate::verify::{Verdict, Violation};

/// The lattice of integer vectors with even coordinate sum, spanned by
/// `e_1 + e_n, ..., e_(n-1) + e_n, 2 e_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvenSumLattice {
    dim: usize,
}

impl EvenSumLattice {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange {
                what: "lattice dimension",
                value: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        Ok(EvenSumLattice { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The spanning vectors, `e_k + e_n` for `k < n` followed by `2 e_n`.
    pub fn generators(&self) -> Vec<Point> {
        let n = self.dim;
        let mut gens = Vec::with_capacity(n);
        for k in 0..n - 1 {
            let mut coords = vec![Scalar::zero(); n];
            coords[k] = Scalar::one();
            coords[n - 1] = Scalar::one();
            gens.push(Point::new(coords));
        }
        let mut last = vec![Scalar::zero(); n];
        last[n - 1] = Scalar::int(2);
        gens.push(Point::new(last));
        gens
    }

    /// Determinant of the lattice; 2 in every dimension.
    pub fn determinant(&self) -> Scalar {
        Scalar::int(2)
    }

    /// Membership: integer coordinates with even sum.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: p.dim(),
            });
        }
        let mut sum = BigInt::zero();
        for c in p.coords() {
            match c.as_integer() {
                Some(v) => sum += v,
                None => return Ok(false),
            }
        }
        Ok(sum.is_even())
    }

    /// The unique representative of `p` modulo the lattice with the first
    /// `n-1` coordinates in `[0, 1)` and the last in `[0, 2)`.
    pub fn reduce(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: p.dim(),
            });
        }
        let n = self.dim;
        let mut rep = Vec::with_capacity(n);
        let mut last = p.coord(n - 1).clone();
        for k in 0..n - 1 {
            let floor = Scalar::from_bigint(p.coord(k).floor_int());
            rep.push(p.coord(k) - &floor);
            // Subtracting floor * (e_k + e_n) keeps the difference in the lattice.
            last = last - floor;
        }
        let half_floor = Scalar::from_bigint((&last * &Scalar::ratio(1, 2)).floor_int());
        rep.push(&last - &(&half_floor * &Scalar::int(2)));
        Ok(Point::new(rep))
    }
}

/// The open cross-polytope `{ ||x||_1 < 1/2 }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossPolytopeCell {
    dim: usize,
}

impl CrossPolytopeCell {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange {
                what: "cell dimension",
                value: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        Ok(CrossPolytopeCell { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> Scalar {
        Scalar::ratio(1, 2)
    }

    /// Strict membership; the cell is open.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: p.dim(),
            });
        }
        let norm = distance(p, &Point::origin(self.dim), MetricKind::L1)?;
        Ok(norm < self.radius())
    }

    /// Exact volume `1/n!`.
    pub fn volume(&self) -> Scalar {
        let mut fact = BigInt::from(1);
        for k in 2..=self.dim {
            fact *= BigInt::from(k as u64);
        }
        Scalar::from_big(BigInt::from(1), fact)
    }
}

/// How to place the covering translates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverStrategy {
    GreedyGrid,
    Randomized,
}

/// A certified-at-resolution covering of the quotient torus by cell
/// translates.
///
/// Certification is grid-based: every fundamental-domain grid point at
/// `verified_resolution` lies in some translate. Cells are open, so points
/// off the grid may fall in gaps narrower than the resolution; such points
/// receive an overflow color and never share a class with anything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    pub dim: usize,
    pub offsets: Vec<Point>,
    pub verified_resolution: Scalar,
}

impl Covering {
    pub fn count(&self) -> usize {
        self.offsets.len()
    }

    /// `det / vol = 2 * n!`, the density floor any covering must beat.
    pub fn density_ratio(&self) -> Scalar {
        let lattice = EvenSumLattice::new(self.dim).expect("dim >= 1");
        let cell = CrossPolytopeCell::new(self.dim).expect("dim >= 1");
        &lattice.determinant() / &cell.volume()
    }
}

/// The color a point receives, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    /// Index of the first covering translate containing the point.
    Cell(usize),
    /// Covered by no translate; treated as a fresh color per point.
    Overflow,
}

impl Color {
    pub fn index(&self) -> Option<usize> {
        match self {
            Color::Cell(i) => Some(*i),
            Color::Overflow => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Scaled torus arithmetic.
//
// All quantities are multiplied by a common denominator `D`, turning cell
// membership modulo the lattice into pure integer arithmetic. The generic
// worker runs over i64 when the magnitudes allow it and over BigInt
// otherwise; both instantiations are exact.
// ---------------------------------------------------------------------------

trait TorusInt: Clone + Ord + Signed {}
impl TorusInt for i64 {}
impl TorusInt for BigInt {}

fn mod_euclid<T: TorusInt>(x: &T, m: &T) -> T {
    let r = x.clone() % m.clone();
    if r < T::zero() {
        r + m.clone()
    } else {
        r
    }
}

/// Canonical fundamental-domain representative in scaled coordinates:
/// first `n-1` entries in `[0, D)`, last in `[0, 2D)`.
fn reduce_scaled<T: TorusInt>(v: &mut [T], d: &T) {
    let n = v.len();
    for k in 0..n - 1 {
        let rep = mod_euclid(&v[k], d);
        let carry = v[k].clone() - rep.clone();
        v[k] = rep;
        v[n - 1] = v[n - 1].clone() - carry;
    }
    let two_d = d.clone() + d.clone();
    v[n - 1] = mod_euclid(&v[n - 1], &two_d);
}

/// Nearby lattice multiples that can bring a fundamental-domain
/// representative inside the cell: coordinates in {0, 1} (last in
/// {0, 1, 2}), even total sum.
fn lattice_candidates(dim: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let combos = 1usize << (dim - 1);
    for mask in 0..combos {
        for last in 0u8..=2 {
            let mut v: Vec<u8> = (0..dim - 1).map(|k| (mask >> k & 1) as u8).collect();
            v.push(last);
            if v.iter().map(|&x| x as u32).sum::<u32>() % 2 == 0 {
                out.push(v);
            }
        }
    }
    out
}

/// Whether the scaled representative lies in the open cell modulo the
/// lattice: some nearby lattice multiple is at scaled Manhattan distance
/// strictly below `D/2`.
fn cell_contains_scaled<T: TorusInt>(rep: &[T], d: &T, candidates: &[Vec<u8>]) -> bool {
    for cand in candidates {
        let mut dist = T::zero();
        for (r, &c) in rep.iter().zip(cand.iter()) {
            let mut target = T::zero();
            for _ in 0..c {
                target = target + d.clone();
            }
            dist = dist + (r.clone() - target).abs();
        }
        if dist.clone() + dist < *d {
            return true;
        }
    }
    false
}

fn color_scaled<T: TorusInt>(
    point: &[T],
    offsets: &[Vec<T>],
    d: &T,
    candidates: &[Vec<u8>],
) -> Color {
    for (i, offset) in offsets.iter().enumerate() {
        let mut rep: Vec<T> = point
            .iter()
            .zip(offset.iter())
            .map(|(p, o)| p.clone() - o.clone())
            .collect();
        reduce_scaled(&mut rep, d);
        if cell_contains_scaled(&rep, d, candidates) {
            return Color::Cell(i);
        }
    }
    Color::Overflow
}

/// Precomputed scaled offsets for repeated color queries with a known
/// denominator.
struct PreparedColoring {
    denom: BigInt,
    candidates: Vec<Vec<u8>>,
    small: Option<(i64, Vec<Vec<i64>>)>,
    big: Vec<Vec<BigInt>>,
}

impl PreparedColoring {
    fn new(covering: &Covering, extra_denom: &BigInt) -> PreparedColoring {
        let mut denom = extra_denom.clone();
        for o in &covering.offsets {
            for c in o.coords() {
                denom = denom.lcm(c.denom());
            }
        }
        let big: Vec<Vec<BigInt>> = covering
            .offsets
            .iter()
            .map(|o| o.coords().iter().map(|c| scale_to(c, &denom)).collect())
            .collect();
        let small = to_small(&denom, &big);
        PreparedColoring {
            denom,
            candidates: lattice_candidates(covering.dim),
            small,
            big,
        }
    }

    fn color(&self, p: &Point) -> Color {
        // Points with denominators outside the prepared scale take the
        // general path with a widened denominator.
        let mut denom = self.denom.clone();
        for c in p.coords() {
            denom = denom.lcm(c.denom());
        }
        if denom == self.denom {
            if let Some((d, offsets)) = &self.small {
                let scaled: Option<Vec<i64>> = p
                    .coords()
                    .iter()
                    .map(|c| scale_to(c, &self.denom).to_i64())
                    .collect();
                if let Some(scaled) = scaled {
                    return color_scaled(&scaled, offsets, d, &self.candidates);
                }
            }
            let scaled: Vec<BigInt> = p.coords().iter().map(|c| scale_to(c, &self.denom)).collect();
            return color_scaled(&scaled, &self.big, &self.denom, &self.candidates);
        }
        let factor = &denom / &self.denom;
        let offsets: Vec<Vec<BigInt>> = self
            .big
            .iter()
            .map(|o| o.iter().map(|v| v * &factor).collect())
            .collect();
        let scaled: Vec<BigInt> = p.coords().iter().map(|c| scale_to(c, &denom)).collect();
        color_scaled(&scaled, &offsets, &denom, &self.candidates)
    }
}

fn scale_to(c: &Scalar, denom: &BigInt) -> BigInt {
    c.numer() * (denom / c.denom())
}

fn to_small(denom: &BigInt, offsets: &[Vec<BigInt>]) -> Option<(i64, Vec<Vec<i64>>)> {
    let d = denom.to_i64().filter(|&d| d < 1 << 20)?;
    let mut out = Vec::with_capacity(offsets.len());
    for o in offsets {
        let row: Option<Vec<i64>> = o
            .iter()
            .map(|v| v.to_i64().filter(|x| x.abs() < 1 << 40))
            .collect();
        out.push(row?);
    }
    Some((d, out))
}

/// The smallest covering-translate index whose cell contains `p` modulo the
/// lattice, or the overflow color if none does.
pub fn color_of(covering: &Covering, p: &Point) -> Result<Color> {
    if p.dim() != covering.dim {
        return Err(Error::DimensionMismatch {
            left: covering.dim,
            right: p.dim(),
        });
    }
    let prepared = PreparedColoring::new(covering, &BigInt::from(1));
    Ok(prepared.color(p))
}

const COVER_GRID_CAP: u64 = 4_000_000;
const RANDOM_COVER_BUDGET: usize = 10_000;

/// Builds a covering of the quotient torus certified on the fundamental
/// domain grid at `resolution` (which must be `1/q` for a positive
/// integer `q`).
///
/// `greedy_grid` seeds a regular half-step sublattice of translates and then
/// patches the first uncovered grid point until none remain; `randomized`
/// draws uniform grid offsets (seeded) until the grid is covered.
pub fn build_covering(
    dim: usize,
    strategy: CoverStrategy,
    seed: u64,
    resolution: &Scalar,
) -> Result<Covering> {
    if dim == 0 || dim > 4 {
        return Err(Error::OutOfRange {
            what: "covering dimension",
            value: dim as u64,
            min: 1,
            max: 4,
        });
    }
    let one = Scalar::one();
    let q_big = match (&one / resolution).as_integer() {
        Some(q) if !q.is_negative() && !q.is_zero() => q.clone(),
        _ => {
            return Err(Error::PreconditionFailed {
                details: format!("resolution must be 1/q for a positive integer q, got {resolution}"),
            })
        }
    };
    let q = q_big.to_i64().ok_or(Error::OutOfRange {
        what: "resolution denominator",
        value: u64::MAX,
        min: 1,
        max: 1 << 20,
    })?;
    let grid_total = (q as u128).pow(dim as u32 - 1) * 2 * q as u128;
    if grid_total > COVER_GRID_CAP as u128 {
        return Err(Error::GridCapExceeded {
            candidates: grid_total,
            cap: COVER_GRID_CAP,
        });
    }

    // Fundamental-domain grid in scaled coordinates: [0, q)^(n-1) x [0, 2q).
    let mut grid: Vec<Vec<i64>> = Vec::with_capacity(grid_total as usize);
    let mut cursor = vec![0i64; dim];
    loop {
        grid.push(cursor.clone());
        let mut pos = dim;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            let limit = if pos == dim - 1 { 2 * q } else { q };
            if cursor[pos] < limit {
                break;
            }
            cursor[pos] = 0;
        }
        if cursor.iter().all(|&c| c == 0) {
            break;
        }
    }

    let candidates = lattice_candidates(dim);
    let mut covered = vec![false; grid.len()];
    let mut offsets_scaled: Vec<Vec<i64>> = Vec::new();

    let absorb = |offset: Vec<i64>,
                      covered: &mut Vec<bool>,
                      offsets_scaled: &mut Vec<Vec<i64>>| {
        for (g, flag) in grid.iter().zip(covered.iter_mut()) {
            if *flag {
                continue;
            }
            let mut rep: Vec<i64> = g.iter().zip(offset.iter()).map(|(a, b)| a - b).collect();
            reduce_scaled(&mut rep, &q);
            if cell_contains_scaled(&rep, &q, &candidates) {
                *flag = true;
            }
        }
        offsets_scaled.push(offset);
    };

    match strategy {
        CoverStrategy::GreedyGrid => {
            if q % 2 == 0 {
                // Half-spaced sublattice: within 1/4 of every point in l1
                // per axis pair, a strong head start.
                let step = q / 2;
                let mut sub = vec![0i64; dim];
                loop {
                    absorb(sub.clone(), &mut covered, &mut offsets_scaled);
                    let mut pos = dim;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        sub[pos] += step;
                        let limit = if pos == dim - 1 { 2 * q } else { q };
                        if sub[pos] < limit {
                            break;
                        }
                        sub[pos] = 0;
                    }
                    if sub.iter().all(|&c| c == 0) {
                        break;
                    }
                }
            }
            while let Some(first) = covered.iter().position(|&f| !f) {
                absorb(grid[first].clone(), &mut covered, &mut offsets_scaled);
            }
        }
        CoverStrategy::Randomized => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            while covered.iter().any(|&f| !f) {
                if offsets_scaled.len() >= RANDOM_COVER_BUDGET {
                    let first = covered.iter().position(|&f| !f).unwrap();
                    let point = unscale_point(&grid[first], q);
                    return Err(Error::CoverageBudget {
                        point: format!("{point:?}"),
                    });
                }
                let offset: Vec<i64> = (0..dim)
                    .map(|k| {
                        let limit = if k == dim - 1 { 2 * q } else { q };
                        rng.gen_range(0..limit)
                    })
                    .collect();
                absorb(offset, &mut covered, &mut offsets_scaled);
            }
        }
    }

    Ok(Covering {
        dim,
        offsets: offsets_scaled
            .iter()
            .map(|o| unscale_point(o, q))
            .collect(),
        verified_resolution: resolution.clone(),
    })
}

fn unscale_point(scaled: &[i64], q: i64) -> Point {
    Point::new(scaled.iter().map(|&v| Scalar::ratio(v, q)).collect())
}

/// Re-certifies a covering on its own declared grid; returns the first
/// uncovered grid point, if any.
pub fn first_uncovered_grid_point(covering: &Covering) -> Result<Option<Point>> {
    let one = Scalar::one();
    let q = (&one / &covering.verified_resolution)
        .as_integer()
        .and_then(|q| q.to_i64())
        .filter(|&q| q > 0)
        .ok_or(Error::PreconditionFailed {
            details: "covering resolution must be 1/q".into(),
        })?;
    let prepared = PreparedColoring::new(covering, &BigInt::from(q));
    let dim = covering.dim;
    let mut cursor = vec![0i64; dim];
    loop {
        let point = unscale_point(&cursor, q);
        if prepared.color(&point) == Color::Overflow {
            return Ok(Some(point));
        }
        let mut pos = dim;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            let limit = if pos == dim - 1 { 2 * q } else { q };
            if cursor[pos] < limit {
                break;
            }
            cursor[pos] = 0;
        }
        if cursor.iter().all(|&c| c == 0) {
            return Ok(None);
        }
    }
}

/// Randomized soundness check of the coloring.
///
/// Draws `samples` random rational point pairs and verifies that no
/// same-color pair sits at an odd integral Manhattan distance; overflow
/// points count as uniquely colored. Additionally draws pairs inside
/// explicit cell translates and checks the sandwich inequality
/// `|d(x, x') - d(y, y')| < 1` directly.
pub fn verify_coloring(covering: &Covering, samples: usize, seed: u64) -> Result<Verdict> {
    let dim = covering.dim;
    let lattice = EvenSumLattice::new(dim)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let prepared = PreparedColoring::new(covering, &BigInt::from(64));

    let sample_point = |rng: &mut ChaCha20Rng| {
        Point::new(
            (0..dim)
                .map(|_| Scalar::ratio(rng.gen_range(-128..256), 64))
                .collect(),
        )
    };
    for _ in 0..samples {
        let x = sample_point(&mut rng);
        let y = sample_point(&mut rng);
        let (cx, cy) = (prepared.color(&x), prepared.color(&y));
        if let (Color::Cell(i), Color::Cell(j)) = (cx, cy) {
            if i == j {
                let d = distance(&x, &y, MetricKind::L1)?;
                if d.as_integer().is_some_and(|v| v.is_odd()) {
                    return Ok(Verdict::violation(Violation::Coloring {
                        x: x.coords().to_vec(),
                        y: y.coords().to_vec(),
                        color: i,
                        distance: d,
                    }));
                }
            }
        }
    }

    // Sandwich test on explicit cells: x in C + y1, x' in C + y2 forces
    // |d(x, x') - d(y1, y2)| < 1 exactly.
    let sample_lattice = |rng: &mut ChaCha20Rng| {
        let mut coords: Vec<i64> = (0..dim - 1).map(|_| rng.gen_range(-2..=2)).collect();
        let b: i64 = rng.gen_range(-2..=2);
        let last = coords.iter().sum::<i64>() + 2 * b;
        coords.push(last);
        Point::new(coords.into_iter().map(Scalar::int).collect())
    };
    let sample_cell = |rng: &mut ChaCha20Rng| loop {
        let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-31..=31)).collect();
        if coords.iter().map(|&c| c.abs()).sum::<i64>() < 32 {
            return Point::new(coords.into_iter().map(|c| Scalar::ratio(c, 64)).collect());
        }
    };
    for _ in 0..samples {
        let y1 = sample_lattice(&mut rng);
        let y2 = sample_lattice(&mut rng);
        debug_assert!(lattice.contains(&y1)? && lattice.contains(&y2)?);
        let x1 = y1.translate(&sample_cell(&mut rng));
        let x2 = y2.translate(&sample_cell(&mut rng));
        let gap = distance(&y1, &y2, MetricKind::L1)?;
        let d = distance(&x1, &x2, MetricKind::L1)?;
        let deviation = (&d - &gap).abs();
        if !(deviation < Scalar::one()) {
            return Ok(Verdict::violation(Violation::Sandwich {
                x: x1.coords().to_vec(),
                y: x2.coords().to_vec(),
                lattice_gap: gap,
                distance: d,
            }));
        }
    }
    Ok(Verdict::ok())
}
