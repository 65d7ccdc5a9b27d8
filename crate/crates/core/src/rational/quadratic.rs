//! `H^*(M; Q)` as a quadratic algebra `Sym(V) / (R)`, its Hilbert series,
//! and its Koszul dual computed both through the Hilbert identity
//! `A(s) A^!(-s) = 1` and directly as `T(V*) / (R^perp)`.
//!
//! Grading: a class of cohomological degree 2 has weight 1, and weight `w`
//! of the dual corresponds to loop-space degree `w`.

use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::RationalError;
use crate::linalg::{self, SparseEchelon, SparseRow};
use crate::manifold::SixManifoldRing;
use crate::series::{Rational, TruncatedSeries};

/// Weight cap for the direct computation of the dual algebra.
pub const DIRECT_DUAL_MAX_WEIGHT: usize = 6;
/// Column budget for a single weight of the direct dual computation.
pub const DIRECT_DUAL_MAX_COLUMNS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    /// Labels of the weight-1 generators, a basis of `H^2`.
    pub generators: Vec<String>,
    /// Basis of `R = ker(Sym^2 V -> H^4)`, each over [`sym2_monomials`].
    pub relations: Vec<Vec<Rational>>,
    /// Betti numbers of `M` by weight.
    pub ring_hilbert: Vec<u64>,
    pub d: usize,
    /// Whether `Sym(V)/(R)` was verified to reproduce `H^*(M)`.
    pub certified: bool,
}

/// Pairs `(i, j)`, `i <= j`, in lexicographic order: the monomial basis of
/// `Sym^2` on `g` generators.
pub fn sym2_monomials(g: usize) -> Vec<(usize, usize)> {
    (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect()
}

fn generator_indices(ring: &SixManifoldRing) -> Vec<usize> {
    ring.degree_indices(2)
}

fn build(ring: &SixManifoldRing) -> QuadraticPresentation {
    let gens = generator_indices(ring);
    let h4 = ring.degree_indices(4);
    let monos = sym2_monomials(gens.len());
    // columns: sym2 monomials; rows: H^4 coordinates
    let rows: Vec<Vec<Rational>> = h4
        .iter()
        .map(|&k| monos.iter().map(|&(i, j)| ring.product(gens[i], gens[j])[k].clone()).collect())
        .collect();
    let relations = linalg::nullspace(&rows, monos.len());
    QuadraticPresentation {
        generators: gens.iter().map(|&i| ring.basis()[i].to_string().replace('*', "")).collect(),
        relations,
        ring_hilbert: ring.betti().iter().map(|&b| b as u64).collect(),
        d: ring.d(),
        certified: false,
    }
}

impl QuadraticPresentation {
    /// Presentation without checking that it reproduces the ring.
    pub fn from_ring_unchecked(ring: &SixManifoldRing) -> Self {
        build(ring)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// The ring's own Hilbert series by weight (not the quadratic closure).
    pub fn ring_series(&self, cutoff: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(self.ring_hilbert.iter().map(|&b| b as i64), cutoff)
    }
}

/// Builds the presentation and checks that `Sym(V)/(R)` is all of
/// `H^*(M; Q)`: `Sym^2 V -> H^4` onto, and matching dimensions in weights 3
/// and 4.
pub fn quadratic_presentation(ring: &SixManifoldRing) -> Result<QuadraticPresentation, RationalError> {
    let mut p = build(ring);
    let g = p.num_generators();
    let h4 = ring.degree_indices(4).len();
    let image = sym2_monomials(g).len() - p.relations.len();
    if image != h4 {
        return Err(RationalError::NotQuadratic(format!(
            "H^4 is not spanned by products of degree-2 classes (image {image}, dim H^4 = {h4})"
        )));
    }
    let closure = hilbert_series(&p, 4);
    for w in 3..=4 {
        let found = closure.coeff(w).to_integer().to_u64().unwrap_or(u64::MAX);
        let expected = p.ring_hilbert.get(w).copied().unwrap_or(0);
        if found != expected {
            return Err(RationalError::NotQuadratic(format!(
                "weight {w}: quadratic closure has dimension {found}, H^{} has dimension {expected}",
                2 * w
            )));
        }
    }
    p.certified = true;
    Ok(p)
}

/// Exponent vectors of total degree `w` in `g` variables.
fn monomials(g: usize, w: usize) -> Vec<Vec<u32>> {
    fn rec(g: usize, w: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == g - 1 {
            prefix.push(w as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=w).rev() {
            prefix.push(e as u32);
            rec(g, w - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if g == 0 {
        if w == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(g, w, &mut Vec::with_capacity(g), &mut out);
    out
}

/// Dimensions of `Sym(V)/(R)` by weight, up to `cutoff`.
pub fn hilbert_series(p: &QuadraticPresentation, cutoff: usize) -> TruncatedSeries {
    let g = p.num_generators();
    let sym2 = sym2_monomials(g);
    let mut dims: Vec<i64> = Vec::with_capacity(cutoff + 1);
    for w in 0..=cutoff {
        if dims.last() == Some(&0) {
            // generated in weight 1, so one empty weight empties all later ones
            dims.push(0);
            continue;
        }
        let basis = monomials(g, w);
        if w < 2 || p.relations.is_empty() {
            dims.push(basis.len() as i64);
            continue;
        }
        let index: HashMap<&[u32], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut ech = SparseEchelon::new();
        for m in monomials(g, w - 2) {
            for r in &p.relations {
                let mut row = SparseRow::new();
                for (&(i, j), c) in sym2.iter().zip(r) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut e = m.clone();
                    e[i] += 1;
                    e[j] += 1;
                    let col = index[e.as_slice()];
                    *row.entry(col).or_insert_with(Rational::zero) += c;
                }
                row.retain(|_, v| !v.is_zero());
                ech.insert(row);
            }
        }
        dims.push((basis.len() - ech.rank()) as i64);
    }
    TruncatedSeries::from_ints(dims, cutoff)
}

/// `1 / A(-s)` from the ring's Betti numbers, with no checks.
pub fn naive_dual_series(p: &QuadraticPresentation, cutoff: usize) -> TruncatedSeries {
    p.ring_series(cutoff)
        .at_neg()
        .reciprocal()
        .expect("constant term is 1")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulDual {
    /// `1 / A(-s)` up to the cutoff.
    pub series: Vec<i64>,
    /// `dim (T(V*)/(R^perp))_w` for `w = 0..=checked_through`.
    pub direct_dims: Vec<u64>,
    pub checked_through: usize,
    /// Dimension of the dual relation space `R^perp`.
    pub dual_relations: usize,
}

/// Koszul dual series with two consistency checks: nonnegativity, and
/// agreement with the directly computed dual algebra where that is feasible.
pub fn koszul_dual_series(p: &QuadraticPresentation, cutoff: usize) -> Result<KoszulDual, RationalError> {
    let hilbert = hilbert_series(p, cutoff);
    let ring = p.ring_series(cutoff);
    if hilbert != ring {
        return Err(RationalError::NotQuadratic(format!(
            "quadratic closure {} differs from H^*(M) {}",
            hilbert.render(),
            ring.render()
        )));
    }
    let series = hilbert.at_neg().reciprocal()?;
    let ints = series.to_i64s().ok_or_else(|| RationalError::KoszulInconsistency {
        weight: 0,
        detail: "non-integral or oversized coefficient".into(),
    })?;
    if let Some(w) = ints.iter().position(|&c| c < 0) {
        return Err(RationalError::KoszulInconsistency {
            weight: w,
            detail: format!("coefficient {} is negative", ints[w]),
        });
    }
    let direct = quadratic_dual_dims(p, cutoff.min(DIRECT_DUAL_MAX_WEIGHT), DIRECT_DUAL_MAX_COLUMNS);
    for (w, &dim) in direct.dims.iter().enumerate() {
        if dim as i64 != ints[w] {
            return Err(RationalError::KoszulInconsistency {
                weight: w,
                detail: format!("reciprocal series gives {}, direct dual computation gives {dim}", ints[w]),
            });
        }
    }
    Ok(KoszulDual {
        series: ints,
        checked_through: direct.dims.len() - 1,
        direct_dims: direct.dims,
        dual_relations: direct.dual_relations,
    })
}

/// Output of [`quadratic_dual_dims`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDims {
    /// Dimensions for weights `0..=` the last weight computed.
    pub dims: Vec<u64>,
    pub dual_relations: usize,
}

/// Dimensions of `A^! = T(W)/(R^perp)`, `W = V*`, where the primal relations
/// in `V (x) V` are the commutators together with (lifts of) `R`.
///
/// Weight by weight, `A^!_w = (A^!_{w-1} (x) W) / image(A^!_{w-2} (x) R^perp)`,
/// with the multiplication `A^!_{w-2} (x) W -> A^!_{w-1}` carried along as a
/// normal-form table. Stops at `max_weight`, or earlier when a weight would
/// need more than `max_columns` columns.
pub fn quadratic_dual_dims(p: &QuadraticPresentation, max_weight: usize, max_columns: usize) -> DualDims {
    let g = p.num_generators();
    let sym2 = sym2_monomials(g);
    let mut primal: Vec<Vec<Rational>> = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let mut v = vec![Rational::zero(); g * g];
            v[i * g + j] = Rational::one();
            v[j * g + i] = -Rational::one();
            primal.push(v);
        }
    }
    for r in &p.relations {
        let mut v = vec![Rational::zero(); g * g];
        for (&(i, j), c) in sym2.iter().zip(r) {
            v[i * g + j] += c;
        }
        primal.push(v);
    }
    let perp = linalg::nullspace(&primal, g * g);

    let mut dims = vec![1u64];
    if max_weight == 0 {
        return DualDims { dims, dual_relations: perp.len() };
    }
    dims.push(g as u64);
    // reduce[w][b * g + j] = coordinates of (basis_b of A_w) * e_j in A_{w+1}
    let unit_table = |n: usize| -> Vec<SparseRow> {
        (0..n).map(|c| SparseRow::from([(c, Rational::one())])).collect()
    };
    let mut reduce: Vec<Vec<SparseRow>> = vec![unit_table(g)];
    let mut prev_dims = (1usize, g);
    for w in 2..=max_weight {
        let (dim_w2, dim_w1) = prev_dims;
        let ncols = dim_w1 * g;
        if ncols > max_columns {
            break;
        }
        let mult = &reduce[w - 2];
        let mut ech = SparseEchelon::new();
        for a in 0..dim_w2 {
            for r in &perp {
                let mut row = SparseRow::new();
                for i in 0..g {
                    for j in 0..g {
                        let c = &r[i * g + j];
                        if c.is_zero() {
                            continue;
                        }
                        for (b, lam) in &mult[a * g + i] {
                            let e = row.entry(b * g + j).or_insert_with(Rational::zero);
                            *e += lam * c;
                        }
                    }
                }
                row.retain(|_, v| !v.is_zero());
                ech.insert(row);
            }
        }
        let free: Vec<usize> = (0..ncols).filter(|&c| !ech.is_pivot(c)).collect();
        let position: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let table: Vec<SparseRow> = (0..ncols)
            .map(|c| match ech.pivot_row(c) {
                None => SparseRow::from([(position[&c], Rational::one())]),
                Some(row) => row
                    .iter()
                    .filter(|(&k, _)| k != c)
                    .map(|(k, v)| (position[k], -v.clone()))
                    .collect(),
            })
            .collect();
        dims.push(free.len() as u64);
        reduce.push(table);
        prev_dims = (dim_w1, free.len());
    }
    DualDims { dims, dual_relations: perp.len() }
}

/// Signed check of `A(s) * A^!(-s) = 1` over the given dual dimensions.
pub fn koszul_identity_holds(p: &QuadraticPresentation, dual_dims: &[u64]) -> bool {
    let n = dual_dims.len() - 1;
    let a = hilbert_series(p, n);
    let dual = TruncatedSeries::from_ints(dual_dims.iter().map(|&x| x as i64), n).at_neg();
    a.mul(&dual) == TruncatedSeries::one(n)
}

/// Relation `r` written as a polynomial in the generator labels.
pub fn render_relation(p: &QuadraticPresentation, r: &[Rational]) -> String {
    let mut out = String::new();
    for (&(i, j), c) in sym2_monomials(p.num_generators()).iter().zip(r) {
        if c.is_zero() {
            continue;
        }
        let mono = if i == j {
            format!("{}^2", p.generators[i])
        } else {
            format!("{}*{}", p.generators[i], p.generators[j])
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
        if out.is_empty() {
            out = format!("{}{coeff}{mono}", if c.is_negative() { "-" } else { "" });
        } else {
            out.push_str(&format!(" {sign} {coeff}{mono}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
