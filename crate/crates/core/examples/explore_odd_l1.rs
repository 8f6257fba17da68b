//! Hunt for seven points with pairwise odd Manhattan distances in dimension
//! three — one more than the scaled cross-polytope provides.
//!
//! ```sh
//! cargo run --release --example explore_odd_l1
//! ```

use extremal::constructions::cross_polytope_odd_l1;
use extremal::search::{search_odd_l1_seven, SearchOptions};
use extremal::verify::{check_odd_distances, distance_spectrum};

fn main() {
    // The classical lower bound: six cross-polytope vertices at pairwise
    // distance one.
    let cross = cross_polytope_odd_l1(3).unwrap();
    println!(
        "cross-polytope baseline: {} points, odd distances ok={}",
        cross.len(),
        check_odd_distances(&cross).unwrap().ok
    );

    // Exhaustive clique search over the half-integer grid [-1, 1]^3.
    let result = search_odd_l1_seven(None, &SearchOptions::default(), None).unwrap();
    println!(
        "best odd-distance set on the half-integer grid: {} points \
         (exhaustive={}, {} nodes)",
        result.best_size, result.exhaustive, result.nodes_explored
    );
    for p in result.witness.points() {
        println!("  {p:?}");
    }
    println!(
        "distance spectrum of the witness: {:?}",
        distance_spectrum(&result.witness)
    );
    assert!(check_odd_distances(&result.witness).unwrap().ok);
}
