//! Bouquet expansion of the d >= 3 wedge and its Hilton-Milnor factors.

use std::collections::BTreeMap;

use loopsplit::loops::{bouquet_spheres, hilton_milnor, loop_factors};
use loopsplit::manifold::SphereBundle;

fn main() {
    let hm = hilton_milnor(&BTreeMap::from([(2, 1), (3, 1)]), 6);
    println!("Omega(S^2 v S^3) ~ {}", hm.render());

    for d in 3..=5 {
        println!("d={d} bouquet through S^6: {:?}", bouquet_spheres(d, 6));
    }
    let form = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]];
    let sb = SphereBundle::from_classes(form, &[1, 0, 0], 1).unwrap();
    println!("d=3, Omega M ~ {}", loop_factors(&sb, 6).unwrap().render());
}
