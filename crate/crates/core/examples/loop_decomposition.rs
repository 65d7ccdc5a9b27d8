//! Loop-space decompositions for every d, including the cases over S^4.

use loopsplit::loops::{decompose, y_space_report};
use loopsplit::manifold::SphereBundle;

fn diag(d: usize) -> Vec<Vec<i64>> {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

fn main() {
    for d in 1..=4 {
        let sb = SphereBundle::from_classes(diag(d), &vec![0; d], 0).unwrap();
        let y = y_space_report(&sb).unwrap();
        println!("d={d} (case {:?}): Omega M ~ {}", y.case, decompose(&sb).unwrap().expr);
    }
    for k in [0i64, 1, 3, 8, 15, 16, 2, 4, 6, 12] {
        let sb = SphereBundle::from_classes(vec![], &[], 4 * k).unwrap();
        match decompose(&sb) {
            Ok(dec) => {
                let note = dec.extension.map(|e| format!("  [{e}]")).unwrap_or_default();
                println!("S^4, k={k}: Omega M ~ {}{note}", dec.expr);
            }
            Err(e) => println!("S^4, k={k}: {e}"),
        }
    }
}
