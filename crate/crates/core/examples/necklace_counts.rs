//! Basic-product counts from the necklace formula.

use loopsplit::series::{mobius, necklace_count};

fn main() {
    for m in [[1u64, 1], [2, 0], [2, 1], [3, 1], [2, 2], [3, 3]] {
        println!("necklace{m:?} = {}", necklace_count(&m));
    }
    // Witt numbers on two letters
    let witt: Vec<String> = (1..=8u64)
        .map(|n| {
            let s: i64 = (1..=n).filter(|e| n % e == 0).map(|e| mobius(e) * 2i64.pow((n / e) as u32)).sum();
            (s / n as i64).to_string()
        })
        .collect();
    println!("Witt(2, n), n = 1..8: {}", witt.join(", "));
}
