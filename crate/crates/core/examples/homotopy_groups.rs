//! pi_k(M) from the loop factors and the shipped sphere table.

use loopsplit::loops::loop_factors;
use loopsplit::manifold::SphereBundle;
use loopsplit::pitables::{pi_manifold, SphereTable};

fn main() {
    let table = SphereTable::default_table();
    let d1 = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
    let factors = loop_factors(&d1, 10).unwrap();
    for k in 2..=10 {
        println!("d=1: pi_{k}(M) = {}", pi_manifold(&factors, &table, k).unwrap());
    }
    let k15 = SphereBundle::from_classes(vec![], &[], 60).unwrap();
    let factors = loop_factors(&k15, 4).unwrap();
    println!("k=15: pi_3(M) = {}", pi_manifold(&factors, &table, 3).unwrap());
    if let Err(e) = pi_manifold(&factors, &table, 4) {
        println!("k=15: {e}");
    }
}
