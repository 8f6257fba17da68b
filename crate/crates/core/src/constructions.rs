//! Generators for the known extremal configurations.
//!
//! Every generator is deterministic: enumeration orders are fixed so that
//! outputs are byte-identical across runs, and every output passes the
//! matching predicate in [`crate::verify`] for all supported parameters.

use crate::error::{Error, Result};
use crate::metric::{Configuration, MetricKind, Point};
use crate::scalar::Scalar;

/// All nonempty subsets of `{1, ..., n}`, ordered so that every set comes
/// after all of its proper supersets.
///
/// Subsets are bitmasks in which element `k` occupies bit `n - k`, so the
/// mask of a superset is numerically larger; sorting by decreasing mask
/// value therefore puts supersets first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetOrdering {
    n: usize,
    sets: Vec<u32>,
}

impl SubsetOrdering {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Masks in order; `2^n - 1` entries.
    pub fn sets(&self) -> &[u32] {
        &self.sets
    }

    /// The 0/1 indicator point of the `i`-th subset (0-based).
    pub fn indicator(&self, i: usize) -> Point {
        let mask = self.sets[i];
        let coords = (0..self.n)
            .map(|k| {
                if mask >> (self.n - 1 - k) & 1 == 1 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        Point::new(coords)
    }
}

/// Nonempty subsets of `{1, ..., n}` in decreasing binary order.
pub fn subset_ordering(n: usize) -> Result<SubsetOrdering> {
    check_range("subset ordering size", n, 1, 20)?;
    let sets = (1..1u32 << n).rev().collect();
    Ok(SubsetOrdering { n, sets })
}

/// Doubling pairs over a list of direction vectors: for direction `i`
/// (1-based) emit `2^-i * v` then `2^(1-i) * v`, and close with the origin.
///
/// Both right-equidistant constructions share this shape; each point is at
/// distance `||x^(i)||` from everything that follows it.
fn doubling_sequence(directions: &[Point], dim: usize, metric: MetricKind) -> Configuration {
    let mut points = Vec::with_capacity(2 * directions.len() + 1);
    for (idx, v) in directions.iter().enumerate() {
        let i = (idx + 1) as i32;
        points.push(v.scale(&Scalar::pow2(-i)));
        points.push(v.scale(&Scalar::pow2(1 - i)));
    }
    points.push(Point::origin(dim));
    Configuration::new(metric, dim, points).expect("generator dimensions are consistent")
}

/// Right-equidistant sequence of `2^(n+1) - 1` points in max-norm `n`-space.
///
/// Directions are the subset indicator vectors in superset-first order; the
/// scaling makes each point's norm dominate everything emitted later.
pub fn right_equidistant_linf(n: usize) -> Result<Configuration> {
    check_range("right-equidistant linf dimension", n, 1, 16)?;
    let ordering = subset_ordering(n)?;
    let directions: Vec<Point> = (0..ordering.sets().len())
        .map(|i| ordering.indicator(i))
        .collect();
    Ok(doubling_sequence(&directions, n, MetricKind::LInfinity))
}

/// Right-equidistant sequence of `4n - 1` points in Manhattan `n`-space.
///
/// Directions are the vertices of the unit cross-polytope translated by
/// `e_1`, interleaved as `e_1 + e_i` and `e_1 - e_(n+1-i)`; the final
/// `e_1 - e_1 = 0` direction is realized by the closing origin.
pub fn right_equidistant_l1(n: usize) -> Result<Configuration> {
    check_range("right-equidistant l1 dimension", n, 1, 10_000)?;
    let mut directions = Vec::with_capacity(2 * n - 1);
    for i in 1..=n {
        let mut plus = vec![Scalar::zero(); n];
        plus[0] = &plus[0] + &Scalar::one();
        plus[i - 1] = &plus[i - 1] + &Scalar::one();
        directions.push(Point::new(plus));
        if i < n {
            let mut minus = vec![Scalar::zero(); n];
            minus[0] = &minus[0] + &Scalar::one();
            let j = n + 1 - i;
            minus[j - 1] = &minus[j - 1] - &Scalar::one();
            directions.push(Point::new(minus));
        }
    }
    Ok(doubling_sequence(&directions, n, MetricKind::L1))
}

/// The `2^n` vertices of the unit hypercube in binary counting order; all
/// pairwise max-norm distances are exactly 1.
pub fn hypercube_odd(n: usize) -> Result<Configuration> {
    check_range("hypercube dimension", n, 1, 16)?;
    let points = (0..1u32 << n)
        .map(|v| {
            Point::new(
                (0..n)
                    .map(|k| {
                        if v >> (n - 1 - k) & 1 == 1 {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Configuration::new(MetricKind::LInfinity, n, points)
}

/// The `k^n` points of `{0, ..., k-1}^n` in counting order; all pairwise
/// max-norm distances are integers in `[1, k-1]`, hence not divisible by `k`.
pub fn grid_mod_k(n: usize, k: u64) -> Result<Configuration> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: "grid modulus",
            value: k,
            min: 2,
            max: u64::MAX,
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "grid dimension",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    let total = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > 1_000_000 {
        return Err(Error::GridCapExceeded {
            candidates: total,
            cap: 1_000_000,
        });
    }
    let mut points = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; n];
    loop {
        points.push(Point::new(
            digits.iter().map(|&d| Scalar::int(d as i64)).collect(),
        ));
        // Counting order with the first coordinate most significant.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Configuration::new(MetricKind::LInfinity, n, points);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The `2n` points `(+1/2) e_i`, `(-1/2) e_i`; all pairwise Manhattan
/// distances equal exactly 1 (odd).
pub fn cross_polytope_odd_l1(n: usize) -> Result<Configuration> {
    check_range("cross-polytope dimension", n, 1, 2_000)?;
    let mut points = Vec::with_capacity(2 * n);
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut coords = vec![Scalar::zero(); n];
            coords[i] = Scalar::ratio(sign, 2);
            points.push(Point::new(coords));
        }
    }
    Configuration::new(MetricKind::L1, n, points)
}

/// Right-equidistant sequence of `n + 2` points under squared Euclidean
/// distance: the centroid of a regular simplex followed by its vertices.
///
/// The simplex is realized as the `n + 1` standard basis vectors in
/// dimension `n + 1`, keeping every coordinate rational; right-equidistance
/// is invariant under that embedding.
pub fn euclidean_right_equidistant(n: usize) -> Result<Configuration> {
    check_range("euclidean sequence parameter", n, 1, 2_000)?;
    let dim = n + 1;
    let centroid = Point::new(vec![Scalar::ratio(1, (dim) as i64); dim]);
    let mut points = Vec::with_capacity(n + 2);
    points.push(centroid);
    for i in 0..dim {
        let mut coords = vec![Scalar::zero(); dim];
        coords[i] = Scalar::one();
        points.push(Point::new(coords));
    }
    Configuration::new(MetricKind::L2Squared, dim, points)
}

fn check_range(what: &'static str, value: usize, min: u64, max: u64) -> Result<()> {
    let v = value as u64;
    if v < min || v > max {
        return Err(Error::OutOfRange {
            what,
            value: v,
            min,
            max,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::distance;

    fn masks(ordering: &SubsetOrdering) -> Vec<u32> {
        ordering.sets().to_vec()
    }

    #[test]
    fn subset_ordering_small_cases() {
        assert_eq!(masks(&subset_ordering(1).unwrap()), vec![0b1]);
        assert_eq!(masks(&subset_ordering(2).unwrap()), vec![0b11, 0b10, 0b01]);
        assert_eq!(
            masks(&subset_ordering(3).unwrap()),
            vec![0b111, 0b110, 0b101, 0b100, 0b011, 0b010, 0b001]
        );
        assert!(subset_ordering(0).is_err());
        assert!(subset_ordering(21).is_err());
    }

    #[test]
    fn subset_ordering_supersets_first() {
        // Brute force over all pairs: a proper subset never precedes its superset.
        for n in 1..=10 {
            let sets = subset_ordering(n).unwrap().sets().to_vec();
            assert_eq!(sets.len(), (1 << n) - 1);
            for (i, &a) in sets.iter().enumerate() {
                for &b in &sets[..i] {
                    // b occurs before a, so a must not be a proper superset of b.
                    assert!(!(a & b == b && a != b), "superset after subset at n={n}");
                }
            }
        }
    }

    #[test]
    fn indicator_vectors() {
        let ord = subset_ordering(2).unwrap();
        assert_eq!(ord.indicator(0), Point::from_ints(&[1, 1]));
        assert_eq!(ord.indicator(1), Point::from_ints(&[1, 0]));
        assert_eq!(ord.indicator(2), Point::from_ints(&[0, 1]));
    }

    #[test]
    fn linf_sequence_dimension_one() {
        let config = right_equidistant_linf(1).unwrap();
        assert_eq!(
            config.points(),
            &[
                Point::new(vec![Scalar::ratio(1, 2)]),
                Point::new(vec![Scalar::int(1)]),
                Point::new(vec![Scalar::zero()]),
            ]
        );
    }

    #[test]
    fn linf_sequence_dimension_two() {
        // Hand application of the doubling formulas with directions
        // (1,1), (1,0), (0,1): scales (1/2, 1), (1/4, 1/2), (1/8, 1/4).
        let config = right_equidistant_linf(2).unwrap();
        let expect: Vec<Point> = vec![
            Point::new(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]),
            Point::from_ints(&[1, 1]),
            Point::new(vec![Scalar::ratio(1, 4), Scalar::zero()]),
            Point::new(vec![Scalar::ratio(1, 2), Scalar::zero()]),
            Point::new(vec![Scalar::zero(), Scalar::ratio(1, 8)]),
            Point::new(vec![Scalar::zero(), Scalar::ratio(1, 4)]),
            Point::from_ints(&[0, 0]),
        ];
        assert_eq!(config.points(), &expect[..]);
    }

    #[test]
    fn linf_sequence_length() {
        for n in 1..=8 {
            let config = right_equidistant_linf(n).unwrap();
            assert_eq!(config.len(), (1 << (n + 1)) - 1);
            assert!(config.first_duplicate().is_none());
        }
    }

    #[test]
    fn l1_sequence_dimension_one() {
        let config = right_equidistant_l1(1).unwrap();
        assert_eq!(
            config.points(),
            &[
                Point::from_ints(&[1]),
                Point::from_ints(&[2]),
                Point::from_ints(&[0]),
            ]
        );
    }

    #[test]
    fn l1_sequence_dimension_two_prefix() {
        let config = right_equidistant_l1(2).unwrap();
        let expect: Vec<Point> = vec![
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[2, 0]),
            Point::new(vec![Scalar::ratio(1, 4), Scalar::ratio(-1, 4)]),
            Point::new(vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 2)]),
        ];
        assert_eq!(&config.points()[..4], &expect[..]);
        assert_eq!(config.len(), 7);
    }

    #[test]
    fn l1_sequence_length() {
        for n in [1, 2, 3, 7, 25] {
            let config = right_equidistant_l1(n).unwrap();
            assert_eq!(config.len(), 4 * n - 1);
            assert!(config.first_duplicate().is_none());
        }
    }

    #[test]
    fn hypercube_counting_order_and_distances() {
        let config = hypercube_odd(2).unwrap();
        assert_eq!(
            config.points(),
            &[
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[0, 1]),
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[1, 1]),
            ]
        );
        for i in 0..4 {
            for j in i + 1..4 {
                let d = distance(&config.points()[i], &config.points()[j], MetricKind::LInfinity)
                    .unwrap();
                assert_eq!(d, Scalar::one());
            }
        }
        assert_eq!(hypercube_odd(10).unwrap().len(), 1024);
        assert!(hypercube_odd(0).is_err());
    }

    #[test]
    fn grid_mod_k_counting_order() {
        let config = grid_mod_k(1, 3).unwrap();
        assert_eq!(
            config.points(),
            &[
                Point::from_ints(&[0]),
                Point::from_ints(&[1]),
                Point::from_ints(&[2]),
            ]
        );
        // k = 2 specializes to the hypercube.
        assert_eq!(grid_mod_k(2, 2).unwrap(), hypercube_odd(2).unwrap());
        assert_eq!(grid_mod_k(3, 3).unwrap().len(), 27);
        assert!(grid_mod_k(40, 3).is_err());
        assert!(grid_mod_k(2, 1).is_err());
    }

    #[test]
    fn cross_polytope_distances() {
        let one = cross_polytope_odd_l1(1).unwrap();
        assert_eq!(
            one.points(),
            &[
                Point::new(vec![Scalar::ratio(1, 2)]),
                Point::new(vec![Scalar::ratio(-1, 2)]),
            ]
        );
        for n in [1usize, 2, 3] {
            let config = cross_polytope_odd_l1(n).unwrap();
            assert_eq!(config.len(), 2 * n);
            for i in 0..config.len() {
                for j in i + 1..config.len() {
                    let d = distance(&config.points()[i], &config.points()[j], MetricKind::L1)
                        .unwrap();
                    assert_eq!(d, Scalar::one(), "pair ({i},{j}) at n={n}");
                }
            }
        }
    }

    #[test]
    fn euclidean_sequence_values() {
        let config = euclidean_right_equidistant(1).unwrap();
        assert_eq!(
            config.points(),
            &[
                Point::new(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]),
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[0, 1]),
            ]
        );

        // Squared distances for n = 2: centroid to vertices 2/3, vertex pairs 2.
        let config = euclidean_right_equidistant(2).unwrap();
        assert_eq!(config.len(), 4);
        for j in 1..4 {
            let d = distance(&config.points()[0], &config.points()[j], MetricKind::L2Squared)
                .unwrap();
            assert_eq!(d, Scalar::ratio(2, 3));
        }
        for i in 1..4 {
            for j in i + 1..4 {
                let d = distance(&config.points()[i], &config.points()[j], MetricKind::L2Squared)
                    .unwrap();
                assert_eq!(d, Scalar::int(2));
            }
        }

        assert_eq!(euclidean_right_equidistant(5).unwrap().len(), 7);
    }
}
