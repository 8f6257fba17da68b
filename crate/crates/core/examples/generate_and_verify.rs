//! Build every known extremal construction and re-check it with the
//! matching exact verifier.
//!
//! ```sh
//! cargo run --example generate_and_verify
//! ```

use extremal::constructions;
use extremal::verify::{
    check_equilateral, check_not_divisible, check_odd_distances, check_right_equidistant,
    distance_spectrum,
};

fn main() {
    let n = 4;

    let seq_linf = constructions::right_equidistant_linf(n).unwrap();
    println!(
        "max-norm right-equidistant sequence, n={n}: {} points (2^{}+1 - 1), verifier says ok={}",
        seq_linf.len(),
        n,
        check_right_equidistant(&seq_linf).unwrap().ok
    );

    let seq_l1 = constructions::right_equidistant_l1(n).unwrap();
    println!(
        "Manhattan right-equidistant sequence, n={n}: {} points (4n-1), ok={}",
        seq_l1.len(),
        check_right_equidistant(&seq_l1).unwrap().ok
    );

    let cube = constructions::hypercube_odd(n).unwrap();
    println!(
        "hypercube vertices, n={n}: {} points, pairwise odd distances ok={}, spectrum {:?}",
        cube.len(),
        check_odd_distances(&cube).unwrap().ok,
        distance_spectrum(&cube)
    );

    let grid = constructions::grid_mod_k(3, 4).unwrap();
    println!(
        "grid {{0..3}}^3: {} points, no distance divisible by 4: ok={}",
        grid.len(),
        check_not_divisible(&grid, 4).unwrap().ok
    );

    let cross = constructions::cross_polytope_odd_l1(n).unwrap();
    println!(
        "scaled cross-polytope, n={n}: {} points, equilateral ok={}, odd ok={}",
        cross.len(),
        check_equilateral(&cross).unwrap().ok,
        check_odd_distances(&cross).unwrap().ok
    );

    let euclid = constructions::euclidean_right_equidistant(n).unwrap();
    println!(
        "simplex center + vertices (squared Euclidean), n={n}: {} points, ok={}",
        euclid.len(),
        check_right_equidistant(&euclid).unwrap().ok
    );

    // A verifier failure names the exact offending pair.
    let square_l1 = cube.retagged(extremal::MetricKind::L1);
    let verdict = check_odd_distances(&square_l1).unwrap();
    println!(
        "the same hypercube re-read under l1 fails: {:?}",
        verdict.witness.unwrap()
    );
}
