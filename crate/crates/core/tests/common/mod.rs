#![allow(dead_code)]

use loopsplit::manifold::SphereBundle;
use rand::Rng;

/// Block sum of `[1]`, `[-1]` and hyperbolic blocks, mixed by random
/// elementary congruences while every entry stays within `bound`.
pub fn random_form<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut q = vec![vec![0i64; d]; d];
    let mut i = 0;
    while i < d {
        if i + 1 < d && rng.gen_bool(0.3) {
            q[i][i + 1] = 1;
            q[i + 1][i] = 1;
            i += 2;
        } else {
            q[i][i] = if rng.gen_bool(0.5) { 1 } else { -1 };
            i += 1;
        }
    }
    if d < 2 {
        return q;
    }
    for _ in 0..3 * d {
        let a = rng.gen_range(0..d);
        let b = (a + rng.gen_range(1..d)) % d;
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        // basis change e_a -> e_a + s e_b
        let mut next = q.clone();
        for k in 0..d {
            next[a][k] += s * q[b][k];
        }
        for k in 0..d {
            next[k][a] += s * next[k][b];
        }
        if next.iter().flatten().all(|x| x.abs() <= bound) {
            q = next;
        }
    }
    q
}

/// A random valid bundle over a random form: `p1` is chosen in the residue
/// class forced by `w2`.
pub fn random_bundle<R: Rng>(rng: &mut R, d: usize, bound: i64) -> SphereBundle {
    let q = random_form(rng, d, bound);
    let w2: Vec<u8> = (0..d).map(|_| rng.gen_range(0..=1)).collect();
    let sq: i64 = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| i64::from(w2[i]) * q[i][j] * i64::from(w2[j]))
        .sum();
    let p1 = sq.rem_euclid(4) + 4 * rng.gen_range(-5..=5);
    SphereBundle::from_classes(q, &w2, p1).expect("p1 chosen in the admissible class")
}

pub fn hyperbolic() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

pub fn diagonal(signs: &[i64]) -> Vec<Vec<i64>> {
    let d = signs.len();
    (0..d).map(|i| (0..d).map(|j| if i == j { signs[i] } else { 0 }).collect()).collect()
}

/// Lyndon words of length `n` over `q` letters, by brute force: words
/// strictly smaller than each of their proper rotations.
pub fn lyndon_words(q: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = q.pow(n as u32);
    for code in 0..total {
        let mut w = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            w.push(c % q);
            c /= q;
        }
        w.reverse();
        if (1..n).all(|r| {
            let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            w < rot
        }) {
            out.push(w);
        }
    }
    out
}

/// Dimension in degree `n` of the free graded Lie algebra on `q` generators
/// of degree 1: Lyndon words, plus `[w, w]` for odd-degree Lyndon words `w`
/// of length `n / 2`.
pub fn graded_free_lie_oracle(q: usize, n: usize) -> u64 {
    let mut count = lyndon_words(q, n).len() as u64;
    if n % 2 == 0 && (n / 2) % 2 == 1 {
        count += lyndon_words(q, n / 2).len() as u64;
    }
    count
}
