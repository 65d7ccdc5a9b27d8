//! Quadratic presentation of H^*(M; Q), its Koszul dual, and the d = 1 failure.

use loopsplit::manifold::SphereBundle;
use loopsplit::rational::quadratic::{self, render_relation};
use loopsplit::rational::{lie_dims, QuadraticPresentation};

fn main() {
    let form = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]];
    let sb = SphereBundle::from_classes(form, &[1, 0, 0], 1).unwrap();
    let p = quadratic::quadratic_presentation(&sb.ring()).unwrap();
    println!("generators: {:?}", p.generators);
    for r in &p.relations {
        println!("  {}", render_relation(&p, r));
    }
    let dual = quadratic::koszul_dual_series(&p, 8).unwrap();
    println!("1/A(-s): {:?}", dual.series);
    println!("direct dual dims: {:?} (dim R^perp = {})", dual.direct_dims, dual.dual_relations);
    println!("Lie dims: {:?}", lie_dims(&p, 8, false).unwrap().as_slice());

    let d1 = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
    println!("d=1: {}", quadratic::quadratic_presentation(&d1.ring()).unwrap_err());
    let raw = QuadraticPresentation::from_ring_unchecked(&d1.ring());
    println!("d=1 forced: {}", lie_dims(&raw, 6, true).unwrap_err());
}
