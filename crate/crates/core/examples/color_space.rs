//! Color Manhattan space so that no color class realizes an odd integral
//! distance: cover the quotient torus of the even-sum lattice with open
//! cross-polytope cells and color points by the first cell that catches
//! them.
//!
//! ```sh
//! cargo run --example color_space
//! ```

use extremal::coloring::{
    build_covering, color_of, verify_coloring, CoverStrategy, CrossPolytopeCell, EvenSumLattice,
};
use extremal::{Point, Scalar};

fn main() {
    for dim in 1..=3 {
        let lattice = EvenSumLattice::new(dim).unwrap();
        let cell = CrossPolytopeCell::new(dim).unwrap();
        let covering =
            build_covering(dim, CoverStrategy::GreedyGrid, 0, &Scalar::ratio(1, 16)).unwrap();
        println!(
            "dim {dim}: det(lattice)={}, vol(cell)={}, density floor {}, \
             greedy covering uses {} translates",
            lattice.determinant(),
            cell.volume(),
            covering.density_ratio(),
            covering.count()
        );

        // 20k random pairs: same color never means odd integral distance,
        // and the sandwich inequality holds inside explicit cells.
        let verdict = verify_coloring(&covering, 20_000, 1).unwrap();
        println!("  sampled soundness check: ok={}", verdict.ok);
    }

    // Colors are lattice-periodic.
    let covering =
        build_covering(2, CoverStrategy::GreedyGrid, 0, &Scalar::ratio(1, 16)).unwrap();
    let p = Point::new(vec![Scalar::ratio(1, 3), Scalar::ratio(5, 7)]);
    let shifted = p.translate(&Point::from_ints(&[1, 1]));
    println!(
        "color of (1/3, 5/7): {:?}; after a lattice shift: {:?}",
        color_of(&covering, &p).unwrap(),
        color_of(&covering, &shifted).unwrap()
    );
}
