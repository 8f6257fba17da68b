//! Exact-arithmetic toolkit for extremal point configurations in the
//! Manhattan, maximum, and Euclidean metrics.
//!
//! The crate constructs, verifies, searches for, and certifies point
//! configurations whose pairwise distances satisfy combinatorial constraints:
//! right-equidistant sequences, sets with pairwise odd (or `k`-indivisible)
//! integer distances, and equilateral sets. Everything is computed over
//! arbitrary-precision rationals; there is no floating point in any
//! computational path, so every reported bound is an exact statement about
//! the input.
//!
//! The modules mirror the moving parts:
//!
//! * [`scalar`], [`metric`] — exact rationals, points, the three metrics,
//!   and the isometric embedding of `l1^n` into `l-infinity^(2^(n-1))`.
//! * [`constructions`] — generators for the known extremal configurations.
//! * [`poset`] — the dominance order on max-norm space, chain/antichain
//!   machinery, Dilworth decompositions, and recursive bound certificates.
//! * [`verify`] — predicate checks that return re-checkable violation
//!   witnesses.
//! * [`search`] — exhaustive branch-and-bound searches over finite grids.
//! * [`coloring`] — the even-sum lattice, cross-polytope cells, torus
//!   coverings, and the induced odd-distance-free coloring of `l1^n`.
//!
//! Each major capability has a runnable example under `examples/`; the
//! `extremal` binary exposes the same operations as JSON-pipeline
//! subcommands.

pub(crate) mod bits;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod metric;
pub mod poset;
pub mod scalar;
pub mod search;
pub mod verify;

pub use error::Error;
pub use metric::{distance, embed_l1_to_linf, Configuration, MetricKind, Point};
pub use scalar::Scalar;
