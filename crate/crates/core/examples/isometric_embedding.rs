//! Embed Manhattan space isometrically into max-norm space: each point maps
//! to all sign combinations `x_1 (+/-) x_2 (+/-) ... (+/-) x_n` with the
//! first sign fixed, and l1 distances become max-norm distances exactly.
//!
//! ```sh
//! cargo run --example isometric_embedding
//! ```

use extremal::constructions::cross_polytope_odd_l1;
use extremal::verify::check_equilateral;
use extremal::{distance, embed_l1_to_linf, Configuration, MetricKind, Point, Scalar};

fn main() {
    let p = Point::from_ints(&[1, 1, 1]);
    println!("(1,1,1) embeds into dimension 4 as {:?}", embed_l1_to_linf(&p).unwrap());

    // Distances are preserved exactly, rational in, rational out.
    let q = Point::new(vec![Scalar::ratio(1, 3), Scalar::ratio(-2, 5), Scalar::zero()]);
    let d1 = distance(&p, &q, MetricKind::L1).unwrap();
    let dinf = distance(
        &embed_l1_to_linf(&p).unwrap(),
        &embed_l1_to_linf(&q).unwrap(),
        MetricKind::LInfinity,
    )
    .unwrap();
    println!("l1 distance {d1} maps to max-norm distance {dinf}");
    assert_eq!(d1, dinf);

    // A whole configuration keeps its structure: the 2n-point equilateral
    // cross-polytope stays equilateral after embedding.
    let cross = cross_polytope_odd_l1(3).unwrap();
    let images: Vec<Point> = cross
        .points()
        .iter()
        .map(|p| embed_l1_to_linf(p).unwrap())
        .collect();
    let embedded = Configuration::new(MetricKind::LInfinity, 4, images).unwrap();
    println!(
        "embedded cross-polytope stays equilateral: {}",
        check_equilateral(&embedded).unwrap().ok
    );
}
