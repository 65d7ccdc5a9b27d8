//! From (Q, w2, p1) to (alpha, ell) and the cohomology ring of M.

use loopsplit::manifold::{pairing_parity, FourManifold, SphereBundle};

fn main() {
    let cases: [(Vec<Vec<i64>>, Vec<u8>, i64); 4] = [
        (vec![vec![1]], vec![1], 5),
        (vec![vec![0, 1], vec![1, 0]], vec![0, 0], 8),
        (vec![vec![1, 0], vec![0, -1]], vec![1, 1], 4),
        (vec![], vec![], -60),
    ];
    for (form, w2, p1) in cases {
        let sb = SphereBundle::from_classes(form, &w2, p1).unwrap();
        let ring = sb.ring();
        println!(
            "d={} w2={:?} p1={p1}: alpha={:?} ell={} spin={} betti={:?} pairing det={}",
            sb.d(),
            w2,
            sb.bundle.alpha,
            sb.bundle.ell,
            sb.bundle.is_spin(),
            ring.betti(),
            ring.pairing_determinant()
        );
        assert!(ring.is_associative() && ring.is_graded_commutative());
    }

    match SphereBundle::from_classes(vec![vec![1]], &[1], 6) {
        Err(e) => println!("p1 = 6 over CP^2 with w2 != 0: {e}"),
        Ok(_) => unreachable!(),
    }
    let n = FourManifold::new(vec![vec![1, 0], vec![0, -1]]).unwrap();
    println!("parity of (1,1) on diag(1,-1): {:?}", pairing_parity(&n, &[1, 1]).unwrap());
}
