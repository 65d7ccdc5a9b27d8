//! Sullivan algebras `(Lambda V, d)` and their cohomology by linear algebra
//! on monomial bases.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::quadratic::{sym2_monomials, QuadraticPresentation};
use super::RationalError;
use crate::linalg::{SparseEchelon, SparseRow};
use crate::series::Rational;

/// Exponent vector over the generators.
pub type Monomial = Vec<u32>;
/// Polynomial in the free graded-commutative algebra.
pub type Polynomial = BTreeMap<Monomial, Rational>;
/// `d(generator)` as `(coefficient, [(generator, exponent)])` terms.
pub type NamedDifferential<'a> = (&'a str, Vec<(Rational, Vec<(&'a str, u32)>)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanModel {
    generators: Vec<Generator>,
    /// `differential[i] = d(generators[i])`
    differential: Vec<Polynomial>,
}

impl SullivanModel {
    /// Checks generator degrees (at least 1) and that `d` raises degree by one.
    pub fn new(generators: Vec<Generator>, differential: Vec<Polynomial>) -> Result<Self, RationalError> {
        if generators.len() != differential.len() {
            return Err(RationalError::InvalidModel(format!(
                "{} generators but {} differentials",
                generators.len(),
                differential.len()
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.degree == 0) {
            return Err(RationalError::InvalidModel(format!("generator {} has degree 0", g.name)));
        }
        let model = SullivanModel { generators, differential };
        for (g, dg) in model.generators.iter().zip(&model.differential) {
            for (m, c) in dg {
                if m.len() != model.generators.len() {
                    return Err(RationalError::InvalidModel(format!("monomial of wrong length in d({})", g.name)));
                }
                if !c.is_zero() && model.degree(m) != g.degree + 1 {
                    return Err(RationalError::DegreeMismatch {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        found: model.degree(m),
                    });
                }
                if !model.is_nonzero_monomial(m) {
                    return Err(RationalError::InvalidModel(format!(
                        "d({}) squares an odd generator",
                        g.name
                    )));
                }
            }
        }
        Ok(model)
    }

    /// Builds a model from `(name, degree)` pairs and differentials written as
    /// `(coefficient, [(generator name, exponent)])` terms.
    pub fn from_terms(
        generators: &[(&str, u32)],
        differential: &[NamedDifferential<'_>],
    ) -> Result<Self, RationalError> {
        let gens: Vec<Generator> = generators
            .iter()
            .map(|&(name, degree)| Generator { name: name.to_string(), degree })
            .collect();
        let index: HashMap<&str, usize> = generators.iter().enumerate().map(|(i, &(n, _))| (n, i)).collect();
        let mut diff = vec![Polynomial::new(); gens.len()];
        for (name, terms) in differential {
            let &i = index
                .get(name)
                .ok_or_else(|| RationalError::InvalidModel(format!("unknown generator {name}")))?;
            for (c, mono) in terms {
                let mut e = vec![0; gens.len()];
                for (g, k) in mono {
                    let &j = index
                        .get(g)
                        .ok_or_else(|| RationalError::InvalidModel(format!("unknown generator {g}")))?;
                    e[j] += k;
                }
                add_term(&mut diff[i], e, c.clone());
            }
        }
        Self::new(gens, diff)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &[Polynomial] {
        &self.differential
    }

    pub fn degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    fn is_odd(&self, i: usize) -> bool {
        self.generators[i].degree % 2 == 1
    }

    fn is_nonzero_monomial(&self, m: &[u32]) -> bool {
        m.iter().enumerate().all(|(i, &e)| !self.is_odd(i) || e <= 1)
    }

    /// Product of two monomials in canonical order, with its Koszul sign.
    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
        let mut negative = false;
        let mut odd_in_a_after = 0u32;
        // count pairs (i in a odd, j in b odd) with j < i
        for j in (0..a.len()).rev() {
            if self.is_odd(j) {
                if b[j] == 1 && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
                if a[j] == 1 {
                    odd_in_a_after += 1;
                }
            }
        }
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.is_nonzero_monomial(&m).then_some((negative, m))
    }

    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::new();
        for (a, ca) in p {
            for (b, cb) in q {
                if let Some((neg, m)) = self.mul_monomials(a, b) {
                    let c = ca * cb;
                    add_term(&mut out, m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    fn generator_poly(&self, i: usize) -> Polynomial {
        let mut e = vec![0; self.generators.len()];
        e[i] = 1;
        Polynomial::from([(e, Rational::one())])
    }

    /// `d` of a monomial by the graded Leibniz rule, factor by factor.
    pub fn d_monomial(&self, m: &[u32]) -> Polynomial {
        let factors: Vec<usize> = m
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let n = self.generators.len();
        let mut out = Polynomial::new();
        let mut left = Polynomial::from([(vec![0; n], Rational::one())]);
        let mut left_degree = 0;
        for (k, &i) in factors.iter().enumerate() {
            let mut right_exp = vec![0; n];
            for &j in &factors[k + 1..] {
                right_exp[j] += 1;
            }
            let right = Polynomial::from([(right_exp, Rational::one())]);
            let term = self.mul(&self.mul(&left, &self.differential[i]), &right);
            let negative = left_degree % 2 == 1;
            for (mono, c) in term {
                add_term(&mut out, mono, if negative { -c } else { c });
            }
            left = self.mul(&left, &self.generator_poly(i));
            left_degree += self.generators[i].degree;
        }
        out
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::new();
        for (m, c) in p {
            for (mm, cc) in self.d_monomial(m) {
                add_term(&mut out, mm, c * cc);
            }
        }
        out
    }

    /// Name of the first generator with `d(d(g)) != 0`, if any.
    pub fn square_zero_violation(&self) -> Option<&str> {
        (0..self.generators.len())
            .find(|&i| !self.d(&self.differential[i]).is_empty())
            .map(|i| self.generators[i].name.as_str())
    }

    /// Monomials of total degree `n`.
    pub fn basis(&self, n: u32) -> Vec<Monomial> {
        fn rec(model: &SullivanModel, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == model.generators.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let deg = model.generators[i].degree;
            let max = if model.is_odd(i) { 1.min(left / deg) } else { left / deg };
            for e in 0..=max {
                cur.push(e);
                rec(model, i + 1, left - e * deg, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, n, &mut Vec::new(), &mut out);
        out
    }

    /// Single-term differential as text, e.g. `c^3`.
    pub fn render(&self, p: &Polynomial) -> String {
        if p.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    let name = &self.generators[j].name;
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
            let body = if mono.is_empty() { mag.to_string() } else { format!("{coeff}{}", mono.join("*")) };
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }

    /// `d(name) = ...` lines for every generator with nonzero differential.
    pub fn describe(&self) -> Vec<String> {
        self.generators
            .iter()
            .zip(&self.differential)
            .map(|(g, dg)| format!("d{} = {}", g.name, self.render(dg)))
            .collect()
    }
}

fn add_term(p: &mut Polynomial, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

/// Cohomology dimensions in degrees `0..=cutoff`.
pub fn cdga_cohomology(model: &SullivanModel, cutoff: u32) -> Result<Vec<usize>, RationalError> {
    if let Some(g) = model.square_zero_violation() {
        return Err(RationalError::DifferentialNotSquareZero(g.to_string()));
    }
    let bases: Vec<Vec<Monomial>> = (0..=cutoff + 1).map(|n| model.basis(n)).collect();
    let ranks: Vec<usize> = (0..=cutoff as usize)
        .map(|n| {
            let target: HashMap<&Monomial, usize> = bases[n + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ech = SparseEchelon::new();
            for m in &bases[n] {
                let row: SparseRow = model
                    .d_monomial(m)
                    .into_iter()
                    .map(|(mm, c)| (target[&mm], c))
                    .collect();
                ech.insert(row);
            }
            ech.rank()
        })
        .collect();
    Ok((0..=cutoff as usize)
        .map(|n| bases[n].len() - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect())
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `(Lambda(a, b), db = a^2)`, the minimal model of `S^2`.
pub fn sphere_s2() -> SullivanModel {
    SullivanModel::from_terms(&[("a", 2), ("b", 3)], &[("b", vec![(q(1), vec![("a", 2)])])])
        .expect("valid model")
}

/// Model of `M` for `d = 1`: the model `(Lambda(c, x), dx = c^3)` of the base
/// extended by the fibre, with `db = a^2 + k c^2`.
pub fn d1_total_space(k: Rational) -> SullivanModel {
    SullivanModel::from_terms(
        &[("c", 2), ("a", 2), ("b", 3), ("x", 5)],
        &[
            ("x", vec![(q(1), vec![("c", 3)])]),
            ("b", vec![(q(1), vec![("a", 2)]), (k, vec![("c", 2)])]),
        ],
    )
    .expect("valid model")
}

/// `(Lambda(c, x), dx = c^4)`, the model of `CP^3`.
pub fn cp3() -> SullivanModel {
    SullivanModel::from_terms(&[("c", 2), ("x", 7)], &[("x", vec![(q(1), vec![("c", 4)])])]).expect("valid model")
}

/// Model of `S^2 x S^4`.
pub fn s2_times_s4() -> SullivanModel {
    SullivanModel::from_terms(
        &[("a", 2), ("b", 3), ("e", 4), ("f", 7)],
        &[
            ("b", vec![(q(1), vec![("a", 2)])]),
            ("f", vec![(q(1), vec![("e", 2)])]),
        ],
    )
    .expect("valid model")
}

/// `(Lambda(V + sR), d(s r) = r)`: degree-2 generators for `V` and one
/// degree-3 generator killing each quadratic relation. For an elliptic
/// Koszul algebra with only these generators this is the whole minimal
/// model; otherwise it is the stage through degree 3.
pub fn quadratic_stage(p: &QuadraticPresentation) -> SullivanModel {
    let g = p.num_generators();
    let n = g + p.relations.len();
    let mut generators: Vec<Generator> = p
        .generators
        .iter()
        .map(|name| Generator { name: name.clone(), degree: 2 })
        .collect();
    generators.extend((0..p.relations.len()).map(|i| Generator { name: format!("r{}", i + 1), degree: 3 }));
    let mut differential = vec![Polynomial::new(); n];
    for (ri, r) in p.relations.iter().enumerate() {
        for (&(i, j), c) in sym2_monomials(g).iter().zip(r) {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            add_term(&mut differential[g + ri], e, c.clone());
        }
    }
    SullivanModel::new(generators, differential).expect("relations are quadratic in degree-2 generators")
}

/// JSON form: generators with degrees, differentials as monomial lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SullivanModelJson {
    pub generators: Vec<Generator>,
    pub differential: BTreeMap<String, Vec<TermJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Exact rational, `"p"` or `"p/q"`.
    pub coeff: String,
    /// `(generator, exponent)` pairs.
    pub monomial: Vec<(String, u32)>,
}

impl SullivanModel {
    pub fn to_json(&self) -> SullivanModelJson {
        let differential = self
            .generators
            .iter()
            .zip(&self.differential)
            .filter(|(_, dg)| !dg.is_empty())
            .map(|(g, dg)| {
                let terms = dg
                    .iter()
                    .map(|(m, c)| TermJson {
                        coeff: c.to_string(),
                        monomial: m
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(j, &e)| (self.generators[j].name.clone(), e))
                            .collect(),
                    })
                    .collect();
                (g.name.clone(), terms)
            })
            .collect();
        SullivanModelJson {
            generators: self.generators.clone(),
            differential,
        }
    }

    pub fn from_json(j: &SullivanModelJson) -> Result<Self, RationalError> {
        let gens: Vec<(&str, u32)> = j.generators.iter().map(|g| (g.name.as_str(), g.degree)).collect();
        let mut diff = Vec::new();
        for (name, terms) in &j.differential {
            let mut ts = Vec::new();
            for t in terms {
                let c: Rational = t
                    .coeff
                    .parse()
                    .map_err(|_| RationalError::InvalidModel(format!("bad coefficient {:?}", t.coeff)))?;
                ts.push((c, t.monomial.iter().map(|(g, e)| (g.as_str(), *e)).collect()));
            }
            diff.push((name.as_str(), ts));
        }
        Self::from_terms(&gens, &diff)
    }
}
