//! The two computations of pi_*(Omega M) (x) Q: Koszul duality on H^*(M)
//! and the ranks of the loop decomposition.

use loopsplit::loops::loop_factors;
use loopsplit::manifold::SphereBundle;
use loopsplit::rational::{coformality_check, lie_dims, quadratic_presentation, ranks_from_decomposition};

fn main() {
    for d in 2..=6usize {
        let form: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { if i == 0 { 1 } else { -1 } } else { 0 }).collect())
            .collect();
        let sb = SphereBundle::from_classes(form, &vec![1; d], 1 - (d as i64 - 1)).unwrap();
        let p = quadratic_presentation(&sb.ring()).unwrap();
        let lie = lie_dims(&p, 10, false).unwrap();
        let ranks = ranks_from_decomposition(&loop_factors(&sb, 10).unwrap(), 10).unwrap();
        println!("d={d}: {:?} {}", lie.as_slice(), if lie == ranks { "agree" } else { "DIFFER" });
    }
    let d1 = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
    let c = coformality_check(&d1, 8).unwrap();
    println!("d=1: {:?}, witness {}, first mismatch {:?}", c.verdict, c.witness, c.mismatch);
}
