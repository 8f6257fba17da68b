//! Reproduce the tight extremal values by exhaustive search on small grids:
//! odd-distance cliques of size 2^n and right-equidistant sequences of
//! length 2^(n+1) - 1 in max-norm space.
//!
//! ```sh
//! cargo run --example search_tight_bounds
//! ```

use extremal::search::{
    max_odd_distance_clique, max_right_equidistant, CandidateGrid, SearchOptions,
};
use extremal::{MetricKind, Scalar};

fn main() {
    let opts = SearchOptions::default();

    // Maximum odd-distance cliques over {0,1,2}^n: exactly 2^n.
    for n in 1..=3 {
        let grid = CandidateGrid::new(
            n,
            vec![Scalar::int(0), Scalar::int(1), Scalar::int(2)],
        )
        .unwrap();
        let result = max_odd_distance_clique(&grid, MetricKind::LInfinity, &opts).unwrap();
        println!(
            "odd clique over {{0,1,2}}^{n}: {} points (expected {}), exhaustive={}, {} nodes",
            result.best_size,
            1 << n,
            result.exhaustive,
            result.nodes_explored
        );
    }

    // Longest right-equidistant sequences: 3 on a line grid, 7 on the
    // quarter-step square grid.
    let line = CandidateGrid::new(
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
    let result = max_right_equidistant(&line, MetricKind::LInfinity, &opts).unwrap();
    println!(
        "right-equidistant on the line grid: {} points, witness {:?}",
        result.best_size,
        result.witness.points()
    );

    let square = CandidateGrid::new(
        2,
        vec![
            Scalar::zero(),
            Scalar::ratio(1, 4),
            Scalar::ratio(1, 2),
            Scalar::one(),
        ],
    )
    .unwrap();
    let result = max_right_equidistant(&square, MetricKind::LInfinity, &opts).unwrap();
    println!(
        "right-equidistant on the quarter-step square: {} points (expected 7), {} nodes",
        result.best_size, result.nodes_explored
    );
    for p in result.witness.points() {
        println!("  {p:?}");
    }
}
