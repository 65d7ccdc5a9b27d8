//! Sullivan models and their cohomology.

use loopsplit::manifold::SphereBundle;
use loopsplit::rational::{cdga_cohomology, model_for, sullivan};
use loopsplit::series::Rational;

fn main() {
    let s2 = sullivan::sphere_s2();
    println!("S^2: {:?} -> {:?}", s2.describe(), cdga_cohomology(&s2, 6).unwrap());
    for k in [-2, 0, 1, 5] {
        let m = sullivan::d1_total_space(Rational::from_integer(k.into()));
        println!("d=1, k={k}: {:?}", cdga_cohomology(&m, 8).unwrap());
    }
    let d2 = SphereBundle::from_classes(vec![vec![0, 1], vec![1, 0]], &[0, 0], 8).unwrap();
    let m = model_for(&d2).unwrap();
    println!("d=2 ({}): {:?}", m.description, m.model.describe());
    println!("  cohomology {:?}", cdga_cohomology(&m.model, 8).unwrap());
    println!("{}", serde_json::to_string(&m.model.to_json()).unwrap());
}
