//! Points, metrics, configurations, and the l1 -> l-infinity embedding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which distance a configuration lives under.
///
/// Squared Euclidean distance is used instead of Euclidean distance so that
/// every value stays rational; consumers compare squared values, which is
/// equivalent for nonnegative distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricKind {
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "linf")]
    LInfinity,
    #[serde(rename = "l2sq")]
    L2Squared,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::L1 => "l1",
            MetricKind::LInfinity => "linf",
            MetricKind::L2Squared => "l2sq",
        }
    }
}

/// A dense point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Scalar::int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point::new(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Scalar {
        &self.coords[k]
    }

    /// Drops the last coordinate.
    pub fn truncate(&self) -> Result<Point> {
        if self.dim() < 2 {
            return Err(Error::TruncationUndefined { dim: self.dim() });
        }
        Ok(Point::new(self.coords[..self.dim() - 1].to_vec()))
    }

    pub fn scale(&self, factor: &Scalar) -> Point {
        Point::new(self.coords.iter().map(|c| c * factor).collect())
    }

    pub fn translate(&self, offset: &Point) -> Point {
        assert_eq!(self.dim(), offset.dim());
        Point::new(
            self.coords
                .iter()
                .zip(offset.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn negate(&self) -> Point {
        Point::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Point::new(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The exact distance between two points of equal dimension.
pub fn distance(p: &Point, q: &Point, metric: MetricKind) -> Result<Scalar> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let mut acc = Scalar::zero();
    for (a, b) in p.coords().iter().zip(q.coords().iter()) {
        let d = (a - b).abs();
        match metric {
            MetricKind::L1 => acc = acc + d,
            MetricKind::LInfinity => {
                if d > acc {
                    acc = d;
                }
            }
            MetricKind::L2Squared => acc = acc + (&d * &d),
        }
    }
    Ok(acc)
}

/// Max-norm distance of the truncations, `max_{k<n} |p_k - q_k|`.
///
/// Defined for dimension >= 2; this is the quantity the comparability
/// relation tests against the last-coordinate gap.
pub fn truncated_linf_distance(p: &Point, q: &Point) -> Result<Scalar> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    if p.dim() < 2 {
        return Err(Error::ComparisonDimension { dim: p.dim() });
    }
    let mut acc = Scalar::zero();
    for (a, b) in p.coords()[..p.dim() - 1]
        .iter()
        .zip(q.coords()[..q.dim() - 1].iter())
    {
        let d = (a - b).abs();
        if d > acc {
            acc = d;
        }
    }
    Ok(acc)
}

/// Isometric embedding of `l1^n` into `l-infinity^(2^(n-1))`.
///
/// Coordinate `c` of the image is `x_1 + s_2 x_2 + ... + s_n x_n`, where the
/// first sign is fixed positive and the remaining signs are read from the
/// binary expansion of `c`: the most significant of the `n-1` bits flips
/// `x_2`, the least significant flips `x_n` (bit set means minus). This is
/// the order `(++), (+-), (-+), (--)` for `n = 3`.
pub fn embed_l1_to_linf(p: &Point) -> Result<Point> {
    let n = p.dim();
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "embedding dimension",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    let m = 1usize << (n - 1);
    let mut out = Vec::with_capacity(m);
    for c in 0..m {
        let mut acc = p.coord(0).clone();
        for j in 1..n {
            // Bit (n - 1 - j) of c governs the sign of coordinate j.
            if c >> (n - 1 - j) & 1 == 1 {
                acc = acc - p.coord(j).clone();
            } else {
                acc = acc + p.coord(j).clone();
            }
        }
        out.push(acc);
    }
    Ok(Point::new(out))
}

/// An ordered sequence of points under one metric.
///
/// Order is significant: right-equidistance is a property of sequences, not
/// sets. Points are expected to be pairwise distinct; verifiers report
/// duplicates as violations rather than refusing the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr", into = "ConfigurationRepr")]
pub struct Configuration {
    metric: MetricKind,
    dim: usize,
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    metric: MetricKind,
    dim: usize,
    points: Vec<Point>,
}

impl TryFrom<ConfigurationRepr> for Configuration {
    type Error = Error;
    fn try_from(raw: ConfigurationRepr) -> Result<Self> {
        Configuration::new(raw.metric, raw.dim, raw.points)
    }
}

impl From<Configuration> for ConfigurationRepr {
    fn from(c: Configuration) -> Self {
        ConfigurationRepr {
            metric: c.metric,
            dim: c.dim,
            points: c.points,
        }
    }
}

impl Configuration {
    pub fn new(metric: MetricKind, dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange {
                what: "configuration dimension",
                value: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        Ok(Configuration {
            metric,
            dim,
            points,
        })
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same points under a different metric.
    pub fn retagged(&self, metric: MetricKind) -> Configuration {
        Configuration {
            metric,
            dim: self.dim,
            points: self.points.clone(),
        }
    }

    /// First duplicated pair of points, in lexicographic index order.
    pub fn first_duplicate(&self) -> Option<(usize, usize)> {
        use std::collections::HashMap;
        let mut seen: HashMap<&Point, usize> = HashMap::new();
        let mut best: Option<(usize, usize)> = None;
        for (j, p) in self.points.iter().enumerate() {
            if let Some(&i) = seen.get(p) {
                let cand = (i, j);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            } else {
                seen.insert(p, j);
            }
        }
        best
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Integer-rescaled view of a configuration for fast exact pair loops.
///
/// All coordinates are multiplied by the common denominator `D`, leaving only
/// `BigInt` subtractions and comparisons in the O(m^2) verifier loops, and
/// only the nonzero coordinates of each point are stored. Equality of
/// distances is invariant under the rescaling; actual distances are the
/// scaled ones divided by `D` (by `D^2` for squared Euclidean).
pub(crate) struct ScaledView {
    pub dim: usize,
    pub metric: MetricKind,
    pub denom: BigInt,
    /// Sorted nonzero coordinate indices per point.
    pub support: Vec<Vec<u32>>,
    /// Scaled values aligned with `support`.
    pub values: Vec<Vec<BigInt>>,
}

impl ScaledView {
    pub fn new(config: &Configuration) -> ScaledView {
        let mut denom = BigInt::one();
        for p in config.points() {
            for c in p.coords() {
                denom = denom.lcm(c.denom());
            }
        }
        let mut support = Vec::with_capacity(config.len());
        let mut values = Vec::with_capacity(config.len());
        for p in config.points() {
            let mut supp = Vec::new();
            let mut vals = Vec::new();
            for (k, c) in p.coords().iter().enumerate() {
                if !c.is_zero() {
                    supp.push(k as u32);
                    vals.push(c.numer() * (&denom / c.denom()));
                }
            }
            support.push(supp);
            values.push(vals);
        }
        ScaledView {
            dim: config.dim(),
            metric: config.metric(),
            denom,
            support,
            values,
        }
    }

    /// Scaled distance between points `i` and `j` under the view's metric.
    pub fn dist(&self, i: usize, j: usize) -> BigInt {
        self.dist_under(i, j, self.metric)
    }

    pub fn dist_under(&self, i: usize, j: usize, metric: MetricKind) -> BigInt {
        let (si, vi) = (&self.support[i], &self.values[i]);
        let (sj, vj) = (&self.support[j], &self.values[j]);
        let mut acc = BigInt::zero();
        let (mut a, mut b) = (0usize, 0usize);
        loop {
            let d = match (si.get(a), sj.get(b)) {
                (Some(&ka), Some(&kb)) if ka == kb => {
                    let d = (&vi[a] - &vj[b]).abs();
                    a += 1;
                    b += 1;
                    d
                }
                (Some(&ka), Some(&kb)) if ka < kb => {
                    let d = vi[a].abs();
                    a += 1;
                    d
                }
                (Some(_), Some(_)) => {
                    let d = vj[b].abs();
                    b += 1;
                    d
                }
                (Some(_), None) => {
                    let d = vi[a].abs();
                    a += 1;
                    d
                }
                (None, Some(_)) => {
                    let d = vj[b].abs();
                    b += 1;
                    d
                }
                (None, None) => break,
            };
            match metric {
                MetricKind::L1 => acc += d,
                MetricKind::LInfinity => {
                    if d > acc {
                        acc = d;
                    }
                }
                MetricKind::L2Squared => acc += &d * &d,
            }
        }
        acc
    }

    /// Converts a scaled distance back to the exact metric value.
    pub fn unscale(&self, dist: &BigInt) -> Scalar {
        match self.metric {
            MetricKind::L2Squared => Scalar::from_big(dist.clone(), &self.denom * &self.denom),
            _ => Scalar::from_big(dist.clone(), self.denom.clone()),
        }
    }
}
