//! Loop-space decompositions of `M`.
//!
//! For `d >= 1`:
//!
//! * `d = 1`: `Omega M ~ S^1 x Omega S^2 x Omega S^5`
//! * `d >= 2`: `Omega M ~ S^1 x Omega S^2 x Omega(S^2 x S^3) x Omega(J v (J ^ Omega(S^2 x S^3)))`
//!   with `J` a wedge of `d - 2` copies of `S^2 v S^3`.
//!
//! For `N = S^4` the answer depends on the attaching degree `k` of the
//! 4-cell. The wedge in the `d >= 3` case is a bouquet of spheres, so the
//! Hilton–Milnor theorem turns every decomposition into a product of loops
//! on spheres, circles and mod-`p^r` fibres.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold::{self, Parity, SphereBundle};
use crate::series::{divisors, mobius, Rational, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("unsupported case (k = {k}): {reason}")]
    UnsupportedCase { k: u64, reason: String },
    #[error("no rational loop-homology rule for node {0}")]
    UnsupportedNode(String),
    #[error(transparent)]
    Manifold(#[from] manifold::ManifoldError),
}

/// Symbolic homotopy type. The derived ordering is the canonical one used
/// when sorting product and wedge factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum HomotopyExpr {
    Circle,
    /// `S^dim{n}`, the homotopy fibre of the degree-`n` map on `S^dim`.
    SphereModN { dim: u32, n: u64 },
    Sphere { dim: u32 },
    Loop { of: Box<HomotopyExpr> },
    Product { factors: Vec<HomotopyExpr> },
    /// The empty wedge is the one-point space.
    Wedge { summands: Vec<HomotopyExpr> },
    Smash { factors: Vec<HomotopyExpr> },
}

use HomotopyExpr as E;

pub fn sphere(dim: u32) -> HomotopyExpr {
    E::Sphere { dim }
}

pub fn loop_of(x: HomotopyExpr) -> HomotopyExpr {
    E::Loop { of: Box::new(x) }
}

pub fn product(factors: Vec<HomotopyExpr>) -> HomotopyExpr {
    E::Product { factors }
}

pub fn wedge(summands: Vec<HomotopyExpr>) -> HomotopyExpr {
    E::Wedge { summands }
}

pub fn smash(factors: Vec<HomotopyExpr>) -> HomotopyExpr {
    E::Smash { factors }
}

pub fn point() -> HomotopyExpr {
    wedge(Vec::new())
}

impl HomotopyExpr {
    pub fn is_point(&self) -> bool {
        matches!(self, E::Wedge { summands } if summands.is_empty())
            || matches!(self, E::Product { factors } if factors.is_empty())
    }

    /// Flattens nested products and wedges, removes contractible pieces and
    /// sorts product and wedge factors. Smash factors keep their order.
    pub fn normalize(&self) -> HomotopyExpr {
        match self {
            E::Circle | E::SphereModN { .. } | E::Sphere { .. } => self.clone(),
            E::Loop { of } => {
                let inner = of.normalize();
                if inner.is_point() {
                    point()
                } else {
                    loop_of(inner)
                }
            }
            E::Product { factors } => {
                let mut flat = Vec::new();
                for f in factors.iter().map(HomotopyExpr::normalize) {
                    match f {
                        E::Product { factors } => flat.extend(factors),
                        f if f.is_point() => {}
                        f => flat.push(f),
                    }
                }
                flat.sort();
                collapse(flat, product)
            }
            E::Wedge { summands } => {
                let mut flat = Vec::new();
                for s in summands.iter().map(HomotopyExpr::normalize) {
                    match s {
                        E::Wedge { summands } => flat.extend(summands),
                        s => flat.push(s),
                    }
                }
                flat.sort();
                collapse(flat, wedge)
            }
            E::Smash { factors } => {
                let mut flat = Vec::new();
                for f in factors.iter().map(HomotopyExpr::normalize) {
                    if f.is_point() {
                        return point();
                    }
                    match f {
                        E::Smash { factors } => flat.extend(factors),
                        f => flat.push(f),
                    }
                }
                collapse(flat, smash)
            }
        }
    }

    fn render_into(&self, out: &mut String, nested: bool) {
        let join = |out: &mut String, items: &[HomotopyExpr], sep: &str| {
            if nested {
                out.push('(');
            }
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                x.render_into(out, true);
            }
            if nested {
                out.push(')');
            }
        };
        match self {
            _ if self.is_point() => out.push('*'),
            E::Circle => out.push_str("S^1"),
            E::Sphere { dim } => out.push_str(&format!("S^{dim}")),
            E::SphereModN { dim, n } => out.push_str(&format!("S^{dim}{{{n}}}")),
            E::Loop { of } => {
                out.push_str("Loop(");
                of.render_into(out, false);
                out.push(')');
            }
            E::Product { factors } => join(out, factors, " x "),
            E::Wedge { summands } => join(out, summands, " v "),
            E::Smash { factors } => join(out, factors, " ^ "),
        }
    }
}

fn collapse(mut items: Vec<HomotopyExpr>, build: fn(Vec<HomotopyExpr>) -> HomotopyExpr) -> HomotopyExpr {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        build(items)
    }
}

impl fmt::Display for HomotopyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render_into(&mut s, false);
        f.write_str(&s)
    }
}

/// Result of [`decompose`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Normalized expression for `Omega M`.
    pub expr: HomotopyExpr,
    /// Set when the case is obtained from classical facts rather than the
    /// general theorem (`d = 0` with `k` in `{0, 1}`).
    pub extension: Option<String>,
}

pub const REASON_K2: &str = "S^3{2} is not an H-space, so no splitting S^1 x S^3{2} x Omega S^7 exists";
pub const REASON_K4: &str = "k = 4 = 2^2 lies below the k = 2^r, r >= 3 range where a splitting is known";
pub const REASON_MIXED: &str =
    "k = 2^r m with m odd and greater than 1 is much more difficult; no decomposition is known";

/// Prime-power factorization `[(p, r)]` with `p` increasing.
pub fn prime_power_factors(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        let mut r = 0;
        while k % p == 0 {
            k /= p;
            r += 1;
        }
        if r > 0 {
            out.push((p, r));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

fn s2_times_s3() -> HomotopyExpr {
    product(vec![sphere(2), sphere(3)])
}

/// `J = wedge of (d - 2) copies of S^2 v S^3`.
pub fn j_wedge(d: usize) -> HomotopyExpr {
    wedge((0..d.saturating_sub(2)).map(|_| wedge(vec![sphere(2), sphere(3)])).collect())
}

pub fn decompose(sb: &SphereBundle) -> Result<Decomposition, LoopError> {
    let d = sb.d();
    let (expr, extension) = match d {
        0 => return decompose_over_s4(manifold::d0_cell_structure(sb)?.k),
        1 => (
            product(vec![E::Circle, loop_of(sphere(2)), loop_of(sphere(5))]),
            None,
        ),
        _ => {
            let j = j_wedge(d);
            let w = wedge(vec![j.clone(), smash(vec![j, loop_of(s2_times_s3())])]);
            (
                product(vec![
                    E::Circle,
                    loop_of(sphere(2)),
                    loop_of(s2_times_s3()),
                    loop_of(w),
                ]),
                None,
            )
        }
    };
    Ok(Decomposition {
        expr: expr.normalize(),
        extension,
    })
}

/// Decomposition for `N = S^4` in terms of the attaching degree `k >= 0`.
pub fn decompose_over_s4(k: u64) -> Result<Decomposition, LoopError> {
    let factors = prime_power_factors(k);
    let (expr, extension) = match k {
        0 => (
            product(vec![E::Circle, loop_of(sphere(3)), loop_of(sphere(4))]),
            Some("k = 0: trivial bundle, Omega(S^2 x S^4) with Omega S^2 ~ S^1 x Omega S^3".to_string()),
        ),
        1 => (
            product(vec![E::Circle, loop_of(sphere(7))]),
            Some("k = 1: M ~ CP^3 and Omega CP^3 ~ S^1 x Omega S^7".to_string()),
        ),
        _ if k % 2 == 1 => {
            let mut fs = vec![E::Circle];
            fs.extend(factors.iter().map(|&(p, r)| E::SphereModN { dim: 3, n: p.pow(r) }));
            fs.push(loop_of(sphere(7)));
            (product(fs), None)
        }
        _ if k.is_power_of_two() && k >= 8 => (
            product(vec![E::Circle, E::SphereModN { dim: 3, n: k }, loop_of(sphere(7))]),
            None,
        ),
        2 => return Err(LoopError::UnsupportedCase { k, reason: REASON_K2.into() }),
        4 => return Err(LoopError::UnsupportedCase { k, reason: REASON_K4.into() }),
        _ => return Err(LoopError::UnsupportedCase { k, reason: REASON_MIXED.into() }),
    };
    Ok(Decomposition {
        expr: expr.normalize(),
        extension,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum YCase {
    /// `<beta^2, [N]>` odd: `X` splits as `S^2 x Y`.
    I,
    /// `<beta^2, [N]>` even: the obstruction dies after looping.
    II,
}

/// Description of the auxiliary complex `Y` and the case split used for
/// `d >= 1`, where `Omega M ~ S^1 x Omega X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YSpaceReport {
    pub beta: Vec<i64>,
    pub beta_square: i64,
    pub parity: Parity,
    pub case: YCase,
    pub route: String,
    pub y_cells: String,
    /// Number of `S^2 v S^3` summands in the 4-skeleton of `Y`.
    pub wedge_summands: usize,
}

pub fn y_space_report(sb: &SphereBundle) -> Result<YSpaceReport, LoopError> {
    let d = sb.d();
    if d == 0 {
        return Err(manifold::ManifoldError::WrongDimension { expected: 1, got: 0 }.into());
    }
    let beta = if sb.bundle.is_spin() {
        let mut e = vec![0; d];
        e[0] = 1;
        e
    } else {
        sb.bundle.alpha.clone()
    };
    let parity = manifold::pairing_parity(&sb.base, &beta)?;
    let (case, route) = match parity {
        Parity::Odd => (YCase::I, "X ~ S^2 x Y".to_string()),
        Parity::Even => (
            YCase::II,
            "attaching obstruction is null after looping; Omega X ~ Omega S^2 x Omega Y".to_string(),
        ),
    };
    let y_cells = if d == 1 {
        "S^5".to_string()
    } else {
        let w = (0..d - 1).map(|_| "(S^2 v S^3)").collect::<Vec<_>>().join(" v ");
        format!("{w} u e^5")
    };
    Ok(YSpaceReport {
        beta_square: sb.base.square(&beta),
        beta,
        parity,
        case,
        route,
        y_cells,
        wedge_summands: d - 1,
    })
}

/// Sphere dimensions (with multiplicity) of the bouquet
/// `J v (J ^ Omega(S^2 x S^3))`, up to dimension `cutoff`.
pub fn bouquet_spheres(d: usize, cutoff: usize) -> BTreeMap<u32, u64> {
    assert!(d >= 2, "the bouquet is only defined for d >= 2");
    let h_z = TruncatedSeries::from_ints([1, -1], cutoff)
        .mul(&TruncatedSeries::from_ints([1, 0, -1], cutoff))
        .reciprocal()
        .expect("unit constant term");
    let j = TruncatedSeries::from_ints([0, 0, 1, 1], cutoff)
        .scale(&Rational::from_integer((d as i64 - 2).into()));
    series_to_spheres(&j.mul(&h_z))
}

fn series_to_spheres(h: &TruncatedSeries) -> BTreeMap<u32, u64> {
    h.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| {
            let m = c.to_integer().to_u64().expect("bouquet multiplicities are nonnegative integers");
            (n as u32, m)
        })
        .collect()
}

/// `Omega M` written as a product of `S^1`'s, `Omega S^n`'s and `S^3{n}`'s.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LoopFactorMultiset {
    pub circles: u64,
    /// sphere dimension -> number of `Omega S^dim` factors
    pub sphere_loops: BTreeMap<u32, u64>,
    /// the `n` of each `S^3{n}` factor
    pub mod_factors: Vec<u64>,
    /// Largest sphere dimension guaranteed complete.
    pub max_sphere_dim: u32,
    /// Set when factors on spheres of dimension above `max_sphere_dim` were
    /// not enumerated.
    pub truncated: bool,
}

impl LoopFactorMultiset {
    fn new(cutoff: usize) -> Self {
        LoopFactorMultiset {
            max_sphere_dim: cutoff as u32 + 1,
            ..Default::default()
        }
    }

    fn add_sphere_loop(&mut self, dim: u32, count: u64) {
        if count == 0 {
            return;
        }
        if dim > self.max_sphere_dim {
            self.truncated = true;
            return;
        }
        *self.sphere_loops.entry(dim).or_default() += count;
    }

    fn merge(&mut self, other: LoopFactorMultiset) {
        self.circles += other.circles;
        for (dim, m) in other.sphere_loops {
            self.add_sphere_loop(dim, m);
        }
        self.mod_factors.extend(other.mod_factors);
        self.mod_factors.sort_unstable();
        self.truncated |= other.truncated;
    }

    pub fn multiplicity(&self, dim: u32) -> u64 {
        self.sphere_loops.get(&dim).copied().unwrap_or(0)
    }

    /// Text rendering, e.g. `S^1 x Loop(S^2)^2 x Loop(S^3)`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.circles {
            0 => {}
            1 => parts.push("S^1".to_string()),
            c => parts.push(format!("(S^1)^{c}")),
        }
        parts.extend(self.mod_factors.iter().map(|n| format!("S^3{{{n}}}")));
        for (dim, m) in &self.sphere_loops {
            parts.push(if *m == 1 {
                format!("Loop(S^{dim})")
            } else {
                format!("Loop(S^{dim})^{m}")
            });
        }
        let mut s = parts.join(" x ");
        if self.truncated {
            s.push_str(&format!(" x ... (spheres above S^{})", self.max_sphere_dim));
        }
        s
    }
}

/// Number of Hall basis elements of total weight `w` in the free Lie ring on
/// letters whose weights are counted by `letters` (weight -> multiplicity),
/// for each `w <= max_weight`.
///
/// This is the necklace formula summed over all multidegrees of a given
/// weight: grouping by word length `W` and divisor `e`,
/// `sum_W (1/W) sum_{e | W} mu(e) * #{words of length W/e and weight w/e}`.
pub fn basic_product_counts(letters: &BTreeMap<u32, u64>, max_weight: usize) -> Vec<u64> {
    let g = TruncatedSeries::new(
        (0..=max_weight)
            .map(|n| Rational::from_integer(letters.get(&(n as u32)).copied().unwrap_or(0).into()))
            .collect(),
        max_weight,
    );
    assert!(g.coeff(0).is_zero(), "letters must have positive weight");
    // words[L] = g^L: number of words of length L by weight
    let mut words = vec![TruncatedSeries::one(max_weight)];
    for l in 1..=max_weight {
        let next = words[l - 1].mul(&g);
        words.push(next);
    }
    (0..=max_weight)
        .map(|w| {
            if w == 0 {
                return 0;
            }
            let mut acc = Rational::zero();
            for len in 1..=w {
                for e in divisors(len as u64) {
                    let e = e as usize;
                    let mu = mobius(e as u64);
                    if mu == 0 || w % e != 0 {
                        continue;
                    }
                    let c = words[len / e].coeff(w / e);
                    if !c.is_zero() {
                        acc += c * Rational::new(mu.into(), (len as i64).into());
                    }
                }
            }
            debug_assert!(acc.is_integer());
            acc.to_integer().to_u64().expect("Hall basis counts are nonnegative")
        })
        .collect()
}

/// Hilton–Milnor: `Omega(wedge of S^{n_i + 1}) ~ prod_w Omega S^{|w| + 1}` over
/// basic products `w`. `spheres` maps sphere dimension (`>= 2`) to
/// multiplicity; factors on spheres of dimension above `cutoff + 1` are cut.
pub fn hilton_milnor(spheres: &BTreeMap<u32, u64>, cutoff: usize) -> LoopFactorMultiset {
    assert!(spheres.keys().all(|&d| d >= 2), "Hilton-Milnor needs a simply connected wedge");
    let mut out = LoopFactorMultiset::new(cutoff);
    let max_weight = cutoff;
    let letters: BTreeMap<u32, u64> = spheres
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(&dim, &m)| (dim - 1, m))
        .collect();
    let letter_count: u64 = letters.values().sum();
    if letters.keys().any(|&w| w as usize > max_weight) {
        out.truncated = true;
    }
    for (w, count) in basic_product_counts(&letters, max_weight).into_iter().enumerate() {
        if count > 0 {
            *out.sphere_loops.entry(w as u32 + 1).or_default() += count;
        }
    }
    if letter_count >= 2 {
        out.truncated = true;
    }
    out
}

/// Rational homology Poincaré series of the space `e` (for the loop-space
/// expressions produced here: `H_*(Omega M; Q)`).
pub fn loop_homology_series(e: &HomotopyExpr, cutoff: usize) -> Result<TruncatedSeries, LoopError> {
    homology(e, cutoff)
}

fn homology(e: &HomotopyExpr, cutoff: usize) -> Result<TruncatedSeries, LoopError> {
    let one = TruncatedSeries::one(cutoff);
    Ok(match e {
        _ if e.is_point() => one,
        E::Circle => TruncatedSeries::from_ints([1, 1], cutoff),
        E::Sphere { dim } => one.add(&TruncatedSeries::monomial(Rational::one(), *dim as usize, cutoff)),
        // rationally contractible: the degree-n map is a rational equivalence
        E::SphereModN { .. } => one,
        E::Product { factors } => {
            let mut acc = one;
            for f in factors {
                acc = acc.mul(&homology(f, cutoff)?);
            }
            acc
        }
        E::Wedge { .. } | E::Smash { .. } => one.add(&reduced_homology(e, cutoff)?),
        E::Loop { of } => loop_homology(of, cutoff)?,
    })
}

fn reduced_homology(e: &HomotopyExpr, cutoff: usize) -> Result<TruncatedSeries, LoopError> {
    Ok(match e {
        E::Wedge { summands } => {
            let mut acc = TruncatedSeries::zero(cutoff);
            for s in summands {
                acc = acc.add(&reduced_homology(s, cutoff)?);
            }
            acc
        }
        E::Smash { factors } => {
            let mut acc = TruncatedSeries::one(cutoff);
            for f in factors {
                acc = acc.mul(&reduced_homology(f, cutoff)?);
            }
            acc
        }
        _ => homology(e, cutoff)?.sub(&TruncatedSeries::one(cutoff)),
    })
}

/// Whether `e` is (rationally) a suspension, so that the Bott–Samelson
/// theorem gives `H_*(Omega e) = T(desuspended reduced homology)`.
fn is_suspension(e: &HomotopyExpr) -> bool {
    match e {
        E::Sphere { dim } => *dim >= 2,
        E::Wedge { summands } => summands.iter().all(is_suspension),
        E::Smash { factors } => factors.iter().any(is_suspension),
        _ => e.is_point(),
    }
}

fn loop_homology(of: &HomotopyExpr, cutoff: usize) -> Result<TruncatedSeries, LoopError> {
    match of {
        E::Sphere { dim } if *dim >= 2 => {
            let m = *dim as usize;
            let s = if m % 2 == 1 {
                TruncatedSeries::from_ints([1, -1], cutoff).substitute_power(m - 1).reciprocal()
            } else {
                let num = TruncatedSeries::one(cutoff)
                    .add(&TruncatedSeries::monomial(Rational::one(), m - 1, cutoff));
                let den = TruncatedSeries::one(cutoff)
                    .sub(&TruncatedSeries::monomial(Rational::one(), 2 * m - 2, cutoff));
                den.reciprocal().map(|r| num.mul(&r))
            };
            Ok(s.expect("unit constant term"))
        }
        E::Product { factors } => {
            let mut acc = TruncatedSeries::one(cutoff);
            for f in factors {
                acc = acc.mul(&loop_homology(f, cutoff)?);
            }
            Ok(acc)
        }
        _ if of.is_point() => Ok(TruncatedSeries::one(cutoff)),
        E::Wedge { .. } | E::Smash { .. } if is_suspension(of) => {
            // need one extra degree before dividing by t
            let h = reduced_homology(of, cutoff + 1)?;
            let w = h.shift_down();
            Ok(TruncatedSeries::one(cutoff).sub(&w).reciprocal().expect("unit constant term"))
        }
        other => Err(LoopError::UnsupportedNode(loop_of(other.clone()).to_string())),
    }
}

/// Sphere multiset of a bouquet expression, read off its reduced homology.
fn bouquet_of(e: &HomotopyExpr, cutoff: usize) -> Result<BTreeMap<u32, u64>, LoopError> {
    if !is_suspension(e) {
        return Err(LoopError::UnsupportedNode(e.to_string()));
    }
    Ok(series_to_spheres(&reduced_homology(e, cutoff)?))
}

fn factors_of(e: &HomotopyExpr, cutoff: usize) -> Result<LoopFactorMultiset, LoopError> {
    let mut out = LoopFactorMultiset::new(cutoff);
    match e {
        _ if e.is_point() => {}
        E::Circle => out.circles += 1,
        E::SphereModN { n, .. } => out.mod_factors.push(*n),
        E::Product { factors } => {
            for f in factors {
                out.merge(factors_of(f, cutoff)?);
            }
        }
        E::Loop { of } => match of.as_ref() {
            E::Sphere { dim } if *dim >= 2 => out.add_sphere_loop(*dim, 1),
            E::Product { factors } => {
                for f in factors {
                    out.merge(factors_of(&loop_of(f.clone()), cutoff)?);
                }
            }
            w @ (E::Wedge { .. } | E::Smash { .. }) => {
                let spheres = bouquet_of(w, cutoff + 1)?;
                out.merge(hilton_milnor(&spheres, cutoff));
            }
            other => return Err(LoopError::UnsupportedNode(loop_of(other.clone()).to_string())),
        },
        other => return Err(LoopError::UnsupportedNode(other.to_string())),
    }
    Ok(out)
}

/// Fully expanded product decomposition of `Omega M`, enumerating
/// Hilton–Milnor factors on spheres of dimension up to `cutoff + 1`.
pub fn loop_factors(sb: &SphereBundle, cutoff: usize) -> Result<LoopFactorMultiset, LoopError> {
    factors_of(&decompose(sb)?.expr, cutoff)
}

/// Factor multiset of an arbitrary product-of-loops expression.
pub fn expr_factors(e: &HomotopyExpr, cutoff: usize) -> Result<LoopFactorMultiset, LoopError> {
    factors_of(e, cutoff)
}
