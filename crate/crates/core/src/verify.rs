//! Exact predicate checks with re-checkable violation witnesses.
//!
//! Each check either accepts a configuration or returns the lexicographically
//! first violation it finds, carrying the offending indices and distances so
//! the violation can be reproduced with [`crate::metric::distance`] alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{Configuration, MetricKind, ScaledView};
use crate::scalar::Scalar;

/// Outcome of a predicate check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Violation>,
}

impl Verdict {
    pub fn ok() -> Verdict {
        Verdict {
            ok: true,
            witness: None,
        }
    }

    pub fn violation(witness: Violation) -> Verdict {
        Verdict {
            ok: false,
            witness: Some(witness),
        }
    }
}

/// A minimal violating witness; indices refer to the checked configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two identical points where a sequence of distinct points is required.
    DuplicatePoints { i: usize, j: usize },
    /// Point `i` sees two different distances among its successors.
    RightEquidistant {
        i: usize,
        j1: usize,
        j2: usize,
        d1: Scalar,
        d2: Scalar,
    },
    /// A pairwise distance that is not an odd integer (or, under squared
    /// Euclidean distance, not an odd perfect square).
    OddDistance {
        i: usize,
        j: usize,
        distance: Scalar,
        reason: DistanceDefect,
    },
    /// A pairwise distance that is not a positive integer coprime enough
    /// to `k`, i.e. divisible by `k` or not an integer at all.
    Divisibility {
        i: usize,
        j: usize,
        distance: Scalar,
        k: u64,
        reason: DistanceDefect,
    },
    /// Two pairs at different distances where all must be equal.
    Equilateral {
        i1: usize,
        j1: usize,
        i2: usize,
        j2: usize,
        d1: Scalar,
        d2: Scalar,
    },
    /// Same-color points at an odd integral Manhattan distance.
    Coloring {
        x: Vec<Scalar>,
        y: Vec<Scalar>,
        color: usize,
        distance: Scalar,
    },
    /// A pair violating the even-gap sandwich `2t - 1 < d < 2t + 1`.
    Sandwich {
        x: Vec<Scalar>,
        y: Vec<Scalar>,
        lattice_gap: Scalar,
        distance: Scalar,
    },
}

/// Why a distance fails an arithmetic predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceDefect {
    NotInteger,
    NotOdd,
    DivisibleByK,
    Zero,
    /// Squared Euclidean distance whose exact square root is irrational.
    NotPerfectSquare,
}

/// The exact integral value of a (possibly squared) distance, if any.
///
/// For `L2Squared` the scaled value is a squared distance; the distance
/// itself is integral exactly when the scaled value is a perfect square
/// divisible by the square of the common denominator.
fn integral_distance(view: &ScaledView, scaled: &BigInt) -> std::result::Result<BigInt, DistanceDefect> {
    match view.metric {
        MetricKind::L1 | MetricKind::LInfinity => {
            let (q, r) = scaled.div_rem(&view.denom);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(DistanceDefect::NotInteger)
            }
        }
        MetricKind::L2Squared => {
            let root = scaled.sqrt();
            if &root * &root != *scaled {
                return Err(DistanceDefect::NotPerfectSquare);
            }
            let (q, r) = root.div_rem(&view.denom);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(DistanceDefect::NotInteger)
            }
        }
    }
}

/// Checks that every point is at one common distance from all the points
/// that come after it. Duplicate points are a violation, not an error.
pub fn check_right_equidistant(config: &Configuration) -> Result<Verdict> {
    if config.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    if let Some((i, j)) = config.first_duplicate() {
        return Ok(Verdict::violation(Violation::DuplicatePoints { i, j }));
    }
    let view = ScaledView::new(config);
    let m = config.len();
    for i in 0..m {
        if i + 2 > m {
            break;
        }
        // The first succeeding distance fixes the required value for i.
        let reference = view.dist(i, i + 1);
        for j2 in i + 2..m {
            let d = view.dist(i, j2);
            if d != reference {
                return Ok(Verdict::violation(Violation::RightEquidistant {
                    i,
                    j1: i + 1,
                    j2,
                    d1: view.unscale(&reference),
                    d2: view.unscale(&d),
                }));
            }
        }
    }
    Ok(Verdict::ok())
}

/// Checks that every pairwise distance is an odd integer; under squared
/// Euclidean distance, that it is the square of an odd integer.
pub fn check_odd_distances(config: &Configuration) -> Result<Verdict> {
    let view = ScaledView::new(config);
    let two = BigInt::from(2);
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            let scaled = view.dist(i, j);
            let defect = match integral_distance(&view, &scaled) {
                Err(d) => Some(d),
                Ok(value) => {
                    if value.is_zero() {
                        Some(DistanceDefect::Zero)
                    } else if (&value % &two).is_zero() {
                        Some(DistanceDefect::NotOdd)
                    } else {
                        None
                    }
                }
            };
            if let Some(reason) = defect {
                return Ok(Verdict::violation(Violation::OddDistance {
                    i,
                    j,
                    distance: view.unscale(&scaled),
                    reason,
                }));
            }
        }
    }
    Ok(Verdict::ok())
}

/// Checks that every pairwise distance is a positive integer not divisible
/// by `k`.
pub fn check_not_divisible(config: &Configuration, k: u64) -> Result<Verdict> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: "divisibility modulus",
            value: k,
            min: 2,
            max: u64::MAX,
        });
    }
    let view = ScaledView::new(config);
    let modulus = BigInt::from(k);
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            let scaled = view.dist(i, j);
            let defect = match integral_distance(&view, &scaled) {
                Err(d) => Some(d),
                Ok(value) => {
                    if value.is_zero() {
                        Some(DistanceDefect::Zero)
                    } else if (&value % &modulus).is_zero() {
                        Some(DistanceDefect::DivisibleByK)
                    } else {
                        None
                    }
                }
            };
            if let Some(reason) = defect {
                return Ok(Verdict::violation(Violation::Divisibility {
                    i,
                    j,
                    distance: view.unscale(&scaled),
                    k,
                    reason,
                }));
            }
        }
    }
    Ok(Verdict::ok())
}

/// Checks that all pairwise distances are equal.
pub fn check_equilateral(config: &Configuration) -> Result<Verdict> {
    if config.len() < 2 {
        return Ok(Verdict::ok());
    }
    let view = ScaledView::new(config);
    let reference = view.dist(0, 1);
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            let d = view.dist(i, j);
            if d != reference {
                return Ok(Verdict::violation(Violation::Equilateral {
                    i1: 0,
                    j1: 1,
                    i2: i,
                    j2: j,
                    d1: view.unscale(&reference),
                    d2: view.unscale(&d),
                }));
            }
        }
    }
    Ok(Verdict::ok())
}

/// Sorted deduplicated list of all pairwise distances. A single entry means
/// the configuration is equilateral.
pub fn distance_spectrum(config: &Configuration) -> Vec<Scalar> {
    let view = ScaledView::new(config);
    let mut scaled: Vec<BigInt> = Vec::new();
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            scaled.push(view.dist(i, j));
        }
    }
    scaled.sort();
    scaled.dedup();
    scaled.iter().map(|d| view.unscale(d)).collect()
}
