//! Input data: the intersection form of the base 4-manifold `N`, a rank-3
//! bundle over it given by `(w2, p1)`, and the rational cohomology ring of
//! the sphere bundle `M`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::series::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifoldError {
    #[error("intersection form is not square")]
    NotSquare,
    #[error("intersection form is not symmetric")]
    NotSymmetric,
    #[error("intersection form is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("w2 entries must be 0 or 1")]
    NotMod2,
    #[error("no rank-3 bundle has w2 = {w2:?} and p1 = {p1}: p1 must be congruent to {residue} mod 4")]
    InvalidBundle { w2: Vec<u8>, p1: i64, residue: i64 },
    #[error("lift {alpha:?} does not reduce to w2 = {w2:?} mod 2")]
    InvalidLift { alpha: Vec<i64>, w2: Vec<u8> },
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("operation needs rank H^2(N) = {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Simply connected closed 4-manifold, recorded by its intersection form on
/// `H^2(N; Z)`. The empty form stands for `S^4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourManifold {
    form: Vec<Vec<i64>>,
}

impl FourManifold {
    pub fn new(form: Vec<Vec<i64>>) -> Result<Self, ManifoldError> {
        let d = form.len();
        if form.iter().any(|row| row.len() != d) {
            return Err(ManifoldError::NotSquare);
        }
        for i in 0..d {
            for j in 0..i {
                if form[i][j] != form[j][i] {
                    return Err(ManifoldError::NotSymmetric);
                }
            }
        }
        let det = linalg::det_integer(&form);
        if det.abs() != BigInt::one() {
            return Err(ManifoldError::NotUnimodular(det));
        }
        Ok(FourManifold { form })
    }

    pub fn sphere() -> Self {
        FourManifold { form: Vec::new() }
    }

    /// Rank of `H^2(N)`.
    pub fn d(&self) -> usize {
        self.form.len()
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn det(&self) -> i64 {
        if linalg::det_integer(&self.form).is_positive() {
            1
        } else {
            -1
        }
    }

    /// `a^T Q b`.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        self.form
            .iter()
            .zip(a)
            .map(|(row, ai)| ai * row.iter().zip(b).map(|(q, bj)| q * bj).sum::<i64>())
            .sum()
    }

    pub fn square(&self, a: &[i64]) -> i64 {
        self.pair(a, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

/// Parity of `<beta^2, [N]>` for a primitive class `beta`.
pub fn pairing_parity(n: &FourManifold, beta: &[i64]) -> Result<Parity, ManifoldError> {
    if beta.len() != n.d() {
        return Err(ManifoldError::LengthMismatch {
            expected: n.d(),
            got: beta.len(),
        });
    }
    if !is_primitive(beta) {
        return Err(ManifoldError::NotPrimitive(beta.to_vec()));
    }
    Ok(if n.square(beta).rem_euclid(2) == 1 {
        Parity::Odd
    } else {
        Parity::Even
    })
}

/// A rank-3 bundle over `N` together with the integral data that realizes
/// it: a lift `alpha` of `w2` and the level `ell` of the `S^4` component, so
/// that `p1 = 4 * ell + alpha^T Q alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleData {
    pub w2: Vec<u8>,
    pub p1: i64,
    pub alpha: Vec<i64>,
    pub ell: i64,
}

impl BundleData {
    /// Solves for `(alpha, ell)` using the 0/1 lift of `w2`.
    pub fn from_classes(n: &FourManifold, w2: &[u8], p1: i64) -> Result<Self, ManifoldError> {
        check_w2(n, w2)?;
        let alpha: Vec<i64> = w2.iter().map(|&b| i64::from(b)).collect();
        let residue = n.square(&alpha).rem_euclid(4);
        if (p1 - residue).rem_euclid(4) != 0 {
            return Err(ManifoldError::InvalidBundle {
                w2: w2.to_vec(),
                p1,
                residue,
            });
        }
        Self::with_lift(n, w2, p1, alpha)
    }

    /// Same bundle, realized with a caller-chosen lift of `w2`.
    pub fn with_lift(
        n: &FourManifold,
        w2: &[u8],
        p1: i64,
        alpha: Vec<i64>,
    ) -> Result<Self, ManifoldError> {
        check_w2(n, w2)?;
        if alpha.len() != n.d() {
            return Err(ManifoldError::LengthMismatch {
                expected: n.d(),
                got: alpha.len(),
            });
        }
        if alpha.iter().zip(w2).any(|(a, &w)| a.rem_euclid(2) != i64::from(w)) {
            return Err(ManifoldError::InvalidLift {
                alpha,
                w2: w2.to_vec(),
            });
        }
        let sq = n.square(&alpha);
        if (p1 - sq).rem_euclid(4) != 0 {
            return Err(ManifoldError::InvalidBundle {
                w2: w2.to_vec(),
                p1,
                residue: sq.rem_euclid(4),
            });
        }
        Ok(BundleData {
            w2: w2.to_vec(),
            p1,
            alpha,
            ell: (p1 - sq) / 4,
        })
    }

    pub fn is_spin(&self) -> bool {
        self.w2.iter().all(|&b| b == 0)
    }
}

fn check_w2(n: &FourManifold, w2: &[u8]) -> Result<(), ManifoldError> {
    if w2.len() != n.d() {
        return Err(ManifoldError::LengthMismatch {
            expected: n.d(),
            got: w2.len(),
        });
    }
    if w2.iter().any(|&b| b > 1) {
        return Err(ManifoldError::NotMod2);
    }
    Ok(())
}

/// Base manifold plus bundle; the unit every downstream computation takes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphereBundle {
    pub base: FourManifold,
    pub bundle: BundleData,
}

impl SphereBundle {
    pub fn new(base: FourManifold, bundle: BundleData) -> Self {
        SphereBundle { base, bundle }
    }

    /// Validates the form and solves for the bundle in one step.
    pub fn from_classes(form: Vec<Vec<i64>>, w2: &[u8], p1: i64) -> Result<Self, ManifoldError> {
        let base = FourManifold::new(form)?;
        let bundle = BundleData::from_classes(&base, w2, p1)?;
        Ok(SphereBundle { base, bundle })
    }

    pub fn d(&self) -> usize {
        self.base.d()
    }

    pub fn ring(&self) -> SixManifoldRing {
        SixManifoldRing::new(&self.base, &self.bundle)
    }
}

/// Basis element of `H^*(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    One,
    /// Pull-back of the i-th generator of `H^2(N)`.
    X(usize),
    /// Class restricting to the fibre generator.
    T,
    TX(usize),
    /// Pull-back of the orientation class of `N`.
    Y,
    Top,
}

impl Basis {
    pub fn degree(self) -> u32 {
        match self {
            Basis::One => 0,
            Basis::X(_) | Basis::T => 2,
            Basis::TX(_) | Basis::Y => 4,
            Basis::Top => 6,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::One => write!(f, "1"),
            Basis::X(i) => write!(f, "x{}", i + 1),
            Basis::T => write!(f, "t"),
            Basis::TX(i) => write!(f, "t*x{}", i + 1),
            Basis::Y => write!(f, "y"),
            Basis::Top => write!(f, "top"),
        }
    }
}

/// Rational cohomology ring of `M`, additively `H^*(N) (x) H^*(S^2)`, with
///
/// * `x_i x_j = Q_ij y`, `x_i y = 0`,
/// * `t^2 = sum_i alpha_i t x_i + ell y`, `t y = top`,
///
/// and every remaining product forced by associativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixManifoldRing {
    d: usize,
    form: Vec<Vec<i64>>,
    alpha: Vec<i64>,
    ell: i64,
    basis: Vec<Basis>,
    /// table[i][j] = coordinates of basis[i] * basis[j]
    table: Vec<Vec<Vec<Rational>>>,
}

impl SixManifoldRing {
    pub fn new(n: &FourManifold, b: &BundleData) -> Self {
        let d = n.d();
        let mut basis = vec![Basis::One];
        basis.extend((0..d).map(Basis::X));
        basis.push(Basis::T);
        basis.extend((0..d).map(Basis::TX));
        basis.push(Basis::Y);
        basis.push(Basis::Top);
        let mut ring = SixManifoldRing {
            d,
            form: n.form().to_vec(),
            alpha: b.alpha.clone(),
            ell: b.ell,
            basis,
            table: Vec::new(),
        };
        let dim = ring.basis.len();
        ring.table = (0..dim)
            .map(|i| (0..dim).map(|j| ring.multiply_basis(ring.basis[i], ring.basis[j])).collect())
            .collect();
        ring
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn basis(&self) -> &[Basis] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, b: Basis) -> usize {
        match b {
            Basis::One => 0,
            Basis::X(i) => 1 + i,
            Basis::T => 1 + self.d,
            Basis::TX(i) => 2 + self.d + i,
            Basis::Y => 2 + 2 * self.d,
            Basis::Top => 3 + 2 * self.d,
        }
    }

    /// Basis indices of the degree-`deg` part.
    pub fn degree_indices(&self, deg: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree() == deg).collect()
    }

    /// Betti numbers in degrees 0, 2, 4, 6.
    pub fn betti(&self) -> [usize; 4] {
        [0, 2, 4, 6].map(|k| self.degree_indices(k).len())
    }

    fn unit(&self, b: Basis) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[self.index_of(b)] = Rational::one();
        v
    }

    fn scaled(&self, b: Basis, c: i64) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[self.index_of(b)] = Rational::from_integer(c.into());
        v
    }

    fn zero_vec(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    /// `t^2 * x_j` coefficient on `top`: `sum_i alpha_i Q_ij`.
    fn t_squared_x(&self, j: usize) -> i64 {
        (0..self.d).map(|i| self.alpha[i] * self.form[i][j]).sum()
    }

    fn multiply_basis(&self, a: Basis, b: Basis) -> Vec<Rational> {
        use Basis::*;
        if a.degree() + b.degree() > 6 {
            return self.zero_vec();
        }
        match (a, b) {
            (One, other) | (other, One) => self.unit(other),
            (X(i), X(j)) => self.scaled(Y, self.form[i][j]),
            (X(i), T) | (T, X(i)) => self.unit(TX(i)),
            (T, T) => {
                let mut v = self.scaled(Y, self.ell);
                for i in 0..self.d {
                    v[self.index_of(TX(i))] = Rational::from_integer(self.alpha[i].into());
                }
                v
            }
            (X(i), TX(j)) | (TX(j), X(i)) => self.scaled(Top, self.form[i][j]),
            (X(_), Y) | (Y, X(_)) => self.zero_vec(),
            (T, TX(j)) | (TX(j), T) => self.scaled(Top, self.t_squared_x(j)),
            (T, Y) | (Y, T) => self.unit(Top),
            _ => unreachable!("degree bound excludes {a} * {b}"),
        }
    }

    /// Coordinates of `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = self.zero_vec();
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Checks `(ab)c = a(bc)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ab = self.product(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul(&ab, &self.unit(self.basis[k]));
                    let bc = self.product(j, k).to_vec();
                    let right = self.mul(&self.unit(self.basis[i]), &bc);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks `ab = (-1)^{|a||b|} ba` on all basis pairs.
    pub fn is_graded_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let sign_odd = (self.basis[i].degree() * self.basis[j].degree()) % 2 == 1;
                let ba = self.product(j, i);
                if sign_odd {
                    self.product(i, j).iter().zip(ba).all(|(x, y)| *x == -y.clone())
                } else {
                    self.product(i, j) == ba
                }
            })
        })
    }

    /// Matrix of the pairing `H^2 x H^4 -> H^6 = Q`.
    pub fn poincare_pairing(&self) -> Vec<Vec<Rational>> {
        let top = self.index_of(Basis::Top);
        let h2 = self.degree_indices(2);
        let h4 = self.degree_indices(4);
        h2.iter()
            .map(|&i| h4.iter().map(|&j| self.product(i, j)[top].clone()).collect())
            .collect()
    }

    pub fn pairing_determinant(&self) -> Rational {
        linalg::det(&self.poincare_pairing())
    }

    /// Hilbert polynomial in the weight variable (weight = degree / 2).
    pub fn hilbert_weights(&self) -> Vec<usize> {
        self.betti().to_vec()
    }
}

/// Attaching data of the `d = 0` cell structure `S^2 u_{k eta} e^4 u e^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellStructureD0 {
    pub k: u64,
}

impl CellStructureD0 {
    pub fn render(&self) -> String {
        format!("S^2 u_{{{}eta_2}} e^4 u e^6", self.k)
    }

    /// The 7-dimensional complex `X` with `Omega M ~ S^1 x Omega X`.
    pub fn auxiliary_x(&self) -> String {
        format!("P^4({}) u e^7", self.k)
    }
}

pub fn d0_cell_structure(sb: &SphereBundle) -> Result<CellStructureD0, ManifoldError> {
    if sb.d() != 0 {
        return Err(ManifoldError::WrongDimension {
            expected: 0,
            got: sb.d(),
        });
    }
    Ok(CellStructureD0 {
        k: sb.bundle.ell.unsigned_abs(),
    })
}

/// Whether `Omega M` and `Omega M'` are homotopy equivalent; for `d >= 1`
/// this depends only on the rank of `H^2`.
pub fn loop_rigidity_equivalent(a: &SphereBundle, b: &SphereBundle) -> Result<bool, ManifoldError> {
    if a.d() == 0 || b.d() == 0 {
        return Err(ManifoldError::Unsupported(
            "loop rigidity over S^4 depends on k; compare decompositions instead".into(),
        ));
    }
    Ok(a.d() == b.d())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic() -> FourManifold {
        FourManifold::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn constructs_four_manifolds() {
        assert_eq!(hyperbolic().d(), 2);
        assert_eq!(FourManifold::new(vec![vec![1]]).unwrap().d(), 1);
        assert_eq!(
            FourManifold::new(vec![vec![2]]),
            Err(ManifoldError::NotUnimodular(BigInt::from(2)))
        );
        assert_eq!(
            FourManifold::new(vec![vec![1, 1], vec![0, 1]]),
            Err(ManifoldError::NotSymmetric)
        );
        assert_eq!(FourManifold::new(vec![vec![1, 0]]), Err(ManifoldError::NotSquare));
        assert_eq!(FourManifold::new(Vec::new()).unwrap().d(), 0);
    }

    #[test]
    fn solves_bundle_classes() {
        let cp2 = FourManifold::new(vec![vec![1]]).unwrap();
        let b = BundleData::from_classes(&cp2, &[1], 5).unwrap();
        assert_eq!((b.alpha.clone(), b.ell), (vec![1], 1));
        assert!(!b.is_spin());

        let b = BundleData::from_classes(&hyperbolic(), &[0, 0], 8).unwrap();
        assert_eq!((b.alpha.clone(), b.ell), (vec![0, 0], 2));
        assert!(b.is_spin());

        assert!(matches!(
            BundleData::from_classes(&cp2, &[1], 6),
            Err(ManifoldError::InvalidBundle { .. })
        ));
        assert!(BundleData::from_classes(&FourManifold::sphere(), &[], 12).unwrap().is_spin());
    }

    #[test]
    fn rejects_malformed_bundle_input() {
        let cp2 = FourManifold::new(vec![vec![1]]).unwrap();
        assert!(matches!(
            BundleData::from_classes(&cp2, &[1, 0], 1),
            Err(ManifoldError::LengthMismatch { .. })
        ));
        assert_eq!(BundleData::from_classes(&cp2, &[2], 1), Err(ManifoldError::NotMod2));
        assert!(matches!(
            BundleData::with_lift(&cp2, &[1], 1, vec![2]),
            Err(ManifoldError::InvalidLift { .. })
        ));
    }

    #[test]
    fn lift_change_shifts_ell() {
        let cp2 = FourManifold::new(vec![vec![1]]).unwrap();
        let b = BundleData::with_lift(&cp2, &[1], 5, vec![3]).unwrap();
        assert_eq!(b.ell, -1);
        assert_eq!(b.p1, 4 * b.ell + cp2.square(&b.alpha));
    }

    #[test]
    fn parity_examples() {
        let cp2 = FourManifold::new(vec![vec![1]]).unwrap();
        assert_eq!(pairing_parity(&cp2, &[1]).unwrap(), Parity::Odd);
        assert_eq!(pairing_parity(&hyperbolic(), &[1, 0]).unwrap(), Parity::Even);
        let diag = FourManifold::new(vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(pairing_parity(&diag, &[1, 1]).unwrap(), Parity::Even);
        assert_eq!(
            pairing_parity(&diag, &[2, 0]),
            Err(ManifoldError::NotPrimitive(vec![2, 0]))
        );
    }

    #[test]
    fn d0_rings_match_cp3_and_s2xs4() {
        let s4 = FourManifold::sphere();
        let ring = SixManifoldRing::new(&s4, &BundleData::from_classes(&s4, &[], 4).unwrap());
        let t = ring.index_of(Basis::T);
        let t2 = ring.product(t, t).to_vec();
        assert_eq!(t2, ring.unit(Basis::Y));
        assert_eq!(ring.mul(&t2, &ring.unit(Basis::T)), ring.unit(Basis::Top));

        let ring = SixManifoldRing::new(&s4, &BundleData::from_classes(&s4, &[], 0).unwrap());
        assert!(ring.product(t, t).iter().all(Zero::is_zero));
        assert_eq!(ring.betti(), [1, 1, 1, 1]);
    }

    #[test]
    fn d1_ring_is_valid() {
        let cp2 = FourManifold::new(vec![vec![1]]).unwrap();
        let b = BundleData::with_lift(&cp2, &[1], 1, vec![1]).unwrap();
        assert_eq!(b.ell, 0);
        let ring = SixManifoldRing::new(&cp2, &b);
        let t = ring.index_of(Basis::T);
        assert_eq!(ring.product(t, t), ring.unit(Basis::TX(0)).as_slice());
        assert!(ring.is_associative());
        assert!(ring.is_graded_commutative());
        assert_eq!(ring.pairing_determinant().abs(), Rational::one());
        assert_eq!(ring.betti(), [1, 2, 2, 1]);
    }

    #[test]
    fn cell_structure_normalizes_sign() {
        let s4 = FourManifold::sphere();
        let k = |p1| {
            let sb = SphereBundle::new(s4.clone(), BundleData::from_classes(&s4, &[], p1).unwrap());
            d0_cell_structure(&sb).unwrap().k
        };
        assert_eq!(k(4), 1);
        assert_eq!(k(0), 0);
        assert_eq!(k(-60), 15);
        let sb = SphereBundle::from_classes(vec![vec![1]], &[1], 1).unwrap();
        assert!(matches!(d0_cell_structure(&sb), Err(ManifoldError::WrongDimension { .. })));
    }

    #[test]
    fn rigidity() {
        let spin = SphereBundle::from_classes(vec![vec![0, 1], vec![1, 0]], &[0, 0], 0).unwrap();
        let non_spin = SphereBundle::from_classes(vec![vec![1, 0], vec![0, -1]], &[1, 0], 1).unwrap();
        let d1 = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
        let d0 = SphereBundle::from_classes(vec![], &[], 4).unwrap();
        assert!(loop_rigidity_equivalent(&spin, &non_spin).unwrap());
        assert!(!loop_rigidity_equivalent(&d1, &spin).unwrap());
        assert!(loop_rigidity_equivalent(&d0, &d0).is_err());
    }
}
