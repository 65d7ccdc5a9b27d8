//! Exact truncated series, reciprocals and PBW inversion.

use loopsplit::series::{pbw_expand, pbw_invert, GradedLieDims, TruncatedSeries};

fn main() {
    let a = TruncatedSeries::from_ints([1, -1], 8);
    let b = TruncatedSeries::from_ints([1, -3, 1], 8);
    let prod = a.mul(&b);
    println!("(1-t)(1-3t+t^2) = {prod}");
    println!("reciprocal      = {}", prod.reciprocal().unwrap());

    // enveloping algebra of the free graded Lie algebra on two degree-1 classes
    let tensor = TruncatedSeries::from_ints([1, -2], 8).reciprocal().unwrap();
    let dims = pbw_invert(&tensor).unwrap();
    println!("Lie dims of 1/(1-2t): {:?}", dims.as_slice());
    assert_eq!(pbw_expand(&dims), tensor);

    let s2 = GradedLieDims::from_degrees(vec![1, 1, 0, 0, 0, 0]);
    println!("U(pi_*(Omega S^2)) = {}", pbw_expand(&s2));
}
