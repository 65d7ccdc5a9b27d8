//! Truncated formal power series with exact rational coefficients, together
//! with the combinatorial kernel used everywhere else in the crate: necklace
//! (Witt) counts and the Poincaré–Birkhoff–Witt product formula relating the
//! Hilbert series of an enveloping algebra to the dimensions of the graded Lie
//! algebra underneath it.
//!
//! All arithmetic is exact. Binary operations truncate to the smaller cutoff
//! of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

/// Cutoff used when the caller does not ask for one.
pub const DEFAULT_CUTOFF: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("expected constant term 1, found {0}")]
    ConstantTermNotOne(String),
    #[error("coefficient in degree {degree} is not an integer: {value}")]
    NonIntegralCoefficient { degree: usize, value: String },
    #[error("solved Lie dimension in degree {degree} is negative ({value})")]
    NegativeLieDimension { degree: usize, value: String },
    #[error("Lie dimension in degree {degree} does not fit in 64 bits")]
    Overflow { degree: usize },
}

/// Power series `a_0 + a_1 t + ... + a_c t^c` known up to the cutoff `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from the given coefficients, padding with zeros or
    /// dropping terms so that exactly `cutoff + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<Rational>, cutoff: usize) -> Self {
        coeffs.resize(cutoff + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints<I>(coeffs: I, cutoff: usize) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
            cutoff,
        )
    }

    pub fn zero(cutoff: usize) -> Self {
        Self::new(Vec::new(), cutoff)
    }

    pub fn one(cutoff: usize) -> Self {
        Self::monomial(Rational::one(), 0, cutoff)
    }

    /// `c * t^degree`, or zero if the degree is past the cutoff.
    pub fn monomial(coeff: Rational, degree: usize, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        if degree <= cutoff {
            s.coeffs[degree] = coeff;
        }
        s
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^n`; zero past the cutoff is *not* implied, so this
    /// panics when `n > cutoff`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        Self::new(self.coeffs[..=cutoff.min(self.cutoff())].to_vec(), cutoff.min(self.cutoff()))
    }

    /// Same coefficients, with the cutoff raised or lowered. Raising it pads
    /// with zeros, which is only meaningful for polynomials.
    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        Self::new(self.coeffs.clone(), cutoff)
    }

    pub fn is_polynomial_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Cauchy product truncated at the smaller cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff().min(other.cutoff());
        let mut out = vec![Rational::zero(); cutoff + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cutoff + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cutoff + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff().min(other.cutoff());
        TruncatedSeries {
            coeffs: (0..=cutoff).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The multiplicative inverse up to the cutoff.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let cutoff = self.cutoff();
        let mut b: Vec<Rational> = Vec::with_capacity(cutoff + 1);
        b.push(inv0.clone());
        for n in 1..=cutoff {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &b[n - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `f(-t)`.
    pub fn at_neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `f(t^k)`, keeping the cutoff.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let cutoff = self.cutoff();
        let mut out = vec![Rational::zero(); cutoff + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * k > cutoff {
                break;
            }
            out[n * k] = c.clone();
        }
        TruncatedSeries { coeffs: out }
    }

    /// Divides by `t`, dropping the constant term and lowering the cutoff by one.
    pub fn shift_down(&self) -> Self {
        assert!(self.cutoff() >= 1, "cannot shift a cutoff-0 series");
        TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Multiplies by `t`, keeping the cutoff.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Rational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.cutoff()]);
        TruncatedSeries { coeffs }
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.to_integers()?.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Coefficients rendered as a comma separated list, e.g. `1, 4, 12`.
    pub fn render(&self) -> String {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.render(), self.cutoff() + 1)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

/// Degree-wise dimensions of a graded Lie algebra concentrated in positive
/// degrees. Degree `n` here is the homological degree in the loop space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedLieDims {
    /// `dims[n - 1]` is the dimension in degree `n`.
    dims: Vec<u64>,
}

impl GradedLieDims {
    pub fn zero(cutoff: usize) -> Self {
        GradedLieDims { dims: vec![0; cutoff] }
    }

    /// Dimensions listed from degree 1 upwards; the cutoff is the list length.
    pub fn from_degrees(dims: Vec<u64>) -> Self {
        GradedLieDims { dims }
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len()
    }

    /// Dimension in degree `n >= 1`; zero past the cutoff.
    pub fn get(&self, n: usize) -> u64 {
        assert!(n >= 1, "Lie degrees start at 1");
        self.dims.get(n - 1).copied().unwrap_or(0)
    }

    pub fn add_to(&mut self, n: usize, by: u64) {
        if n >= 1 && n <= self.dims.len() {
            self.dims[n - 1] += by;
        }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.dims
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        GradedLieDims {
            dims: self.dims.iter().copied().take(cutoff).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|e| n % e == 0).collect()
}

/// Number of primitive necklaces (equivalently Lyndon words, or Hall basis
/// elements of the free Lie ring) whose letter `i` occurs `multidegree[i]`
/// times:
///
/// `(1/W) * sum_{e | gcd} mu(e) * (W/e)! / prod (m_i/e)!`, `W = sum m_i`.
pub fn necklace_count(multidegree: &[u64]) -> BigUint {
    let total: u64 = multidegree.iter().sum();
    assert!(total > 0, "multidegree must have a positive entry");
    let g = multidegree.iter().fold(0u64, |acc, &m| acc.gcd(&m));
    let mut acc = BigInt::zero();
    for e in divisors(g) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let mut term = factorial(total / e);
        for &m in multidegree {
            term /= factorial(m / e);
        }
        acc += BigInt::from(mu) * BigInt::from(term);
    }
    let (q, r) = acc.div_rem(&BigInt::from(total));
    debug_assert!(r.is_zero());
    q.to_biguint().expect("necklace counts are nonnegative")
}

/// Enveloping algebra series of a graded Lie algebra with the given
/// dimensions:
/// `prod_{n odd} (1 + t^n)^{L_n} * prod_{n even} (1 - t^n)^{-L_n}`.
pub fn pbw_expand(dims: &GradedLieDims) -> TruncatedSeries {
    let cutoff = dims.cutoff();
    let mut acc = TruncatedSeries::one(cutoff);
    for n in 1..=cutoff {
        let l = dims.get(n);
        if l != 0 {
            acc = acc.mul(&pbw_factor(n, &BigInt::from(l), cutoff));
        }
    }
    acc
}

fn pbw_factor(n: usize, l: &BigInt, cutoff: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); cutoff + 1];
    for j in 0..=(cutoff / n) {
        let c = if n % 2 == 1 {
            binomial(l, j as u64)
        } else {
            binomial(&(l + BigInt::from(j) - BigInt::one()), j as u64)
        };
        coeffs[j * n] = Rational::from_integer(c);
    }
    TruncatedSeries::new(coeffs, cutoff)
}

/// Recovers the Lie dimensions from an enveloping-algebra series, degree by
/// degree. Fails if a dimension would be negative or fractional.
pub fn pbw_invert(series: &TruncatedSeries) -> Result<GradedLieDims, SeriesError> {
    if !series.coeff(0).is_one() {
        return Err(SeriesError::ConstantTermNotOne(series.coeff(0).to_string()));
    }
    let cutoff = series.cutoff();
    let mut current = TruncatedSeries::one(cutoff);
    let mut dims = Vec::with_capacity(cutoff);
    for n in 1..=cutoff {
        let diff = series.coeff(n) - current.coeff(n);
        if !diff.is_integer() {
            return Err(SeriesError::NonIntegralCoefficient {
                degree: n,
                value: diff.to_string(),
            });
        }
        let l = diff.to_integer();
        if l.is_negative() {
            return Err(SeriesError::NegativeLieDimension {
                degree: n,
                value: l.to_string(),
            });
        }
        if !l.is_zero() {
            current = current.mul(&pbw_factor(n, &l, cutoff));
        }
        dims.push(l.to_u64().ok_or(SeriesError::Overflow { degree: n })?);
    }
    Ok(GradedLieDims { dims })
}
