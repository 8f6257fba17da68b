//! Explore the dominance order on max-norm space: comparability, longest
//! chains, and minimum chain covers.
//!
//! ```sh
//! cargo run --example chains_and_antichains
//! ```

use extremal::constructions::hypercube_odd;
use extremal::poset::{
    compare, dilworth_decompose, distance_via_comparability, longest_chain, ComparabilityRelation,
};
use extremal::{distance, MetricKind, Point, Scalar};

fn main() {
    // Two points compare exactly when the truncated max-norm gap is beaten
    // by the last-coordinate gap.
    let origin = Point::from_ints(&[0, 0]);
    let above = Point::new(vec![Scalar::ratio(1, 4), Scalar::one()]);
    let side = Point::new(vec![Scalar::one(), Scalar::ratio(1, 2)]);
    println!("origin vs (1/4, 1): {:?}", compare(&origin, &above).unwrap());
    println!("origin vs (1, 1/2): {:?}", compare(&origin, &side).unwrap());

    // Either way, the dichotomy reproduces the max-norm distance exactly.
    for other in [&above, &side] {
        let via = distance_via_comparability(&origin, other).unwrap();
        let direct = distance(&origin, other, MetricKind::LInfinity).unwrap();
        assert_eq!(via, direct);
        println!("distance to {other:?} via comparability: {via}");
    }

    // On the hypercube, chains pair vertices that differ only in the last
    // coordinate, so the longest chain has two elements and the minimum
    // chain cover splits the 2^n vertices into 2^(n-1) dominoes.
    for n in 2..=4 {
        let cube = hypercube_odd(n).unwrap();
        let rel = ComparabilityRelation::new(&cube).unwrap();
        let (len, witness) = longest_chain(&rel);
        let (cover, antichain) = dilworth_decompose(&rel);
        println!(
            "hypercube n={n}: longest chain {len} (witness {witness:?}), \
             {} chains covering {} points, max antichain {}",
            cover.chains.len(),
            cube.len(),
            antichain.len()
        );
        assert_eq!(cover.chains.len(), antichain.len());
    }
}
