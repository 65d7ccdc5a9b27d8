//! Rational homotopy of `M`: quadratic presentations of `H^*(M; Q)`,
//! Koszul dual series, Lie dimensions and Sullivan models.
//!
//! Degrees of Lie dimensions are loop degrees throughout: a class of
//! cohomological degree 2 has weight 1 and gives loop degree 1.

pub mod quadratic;
pub mod sullivan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::loops::{self, LoopError, LoopFactorMultiset};
use crate::manifold::{ManifoldError, SphereBundle};
use crate::series::{pbw_invert, GradedLieDims, Rational, SeriesError, TruncatedSeries};

pub use quadratic::{
    hilbert_series, koszul_dual_series, naive_dual_series, quadratic_dual_dims, quadratic_presentation, KoszulDual,
    QuadraticPresentation,
};
pub use sullivan::{cdga_cohomology, SullivanModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("not a quadratic algebra: {0}")]
    NotQuadratic(String),
    #[error("Koszul inconsistency at weight {weight}: {detail}")]
    KoszulInconsistency { weight: usize, detail: String },
    #[error("d = {d}: Koszul duality only applies for d >= 2 (use force to override)")]
    RequiresKoszul { d: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("loop factors enumerated only through S^{max_sphere_dim}, too few for degree {cutoff}")]
    TruncatedFactors { max_sphere_dim: u32, cutoff: usize },
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error("d(d({0})) is not zero")]
    DifferentialNotSquareZero(String),
    #[error("d({generator}) has a term of degree {found}, expected {expected}")]
    DegreeMismatch { generator: String, expected: u32, found: u32 },
    #[error("invalid Sullivan model: {0}")]
    InvalidModel(String),
    #[error("Lie dimensions {lie:?} disagree with decomposition ranks {decomposition:?}")]
    TwoPathMismatch { lie: Vec<u64>, decomposition: Vec<u64> },
    #[error("{0}")]
    Unsupported(String),
}

/// `dim pi_n(Omega M) (x) Q` for `n <= cutoff`, by PBW inversion of the Koszul
/// dual series.
///
/// Without `force` this needs a certified presentation with `d >= 2`. With
/// `force` an uncertified presentation uses `1 / A(-s)` directly, which for
/// `d = 1` fails with a negative dimension in degree 3.
pub fn lie_dims(p: &QuadraticPresentation, cutoff: usize, force: bool) -> Result<GradedLieDims, RationalError> {
    if p.certified && p.d >= 2 {
        let dual = koszul_dual_series(p, cutoff)?;
        return Ok(pbw_invert(&TruncatedSeries::from_ints(dual.series, cutoff))?);
    }
    if !force {
        return Err(RationalError::RequiresKoszul { d: p.d });
    }
    Ok(pbw_invert(&naive_dual_series(p, cutoff))?)
}

/// Rational homotopy ranks read off a product of loop spaces.
pub fn ranks_from_decomposition(factors: &LoopFactorMultiset, cutoff: usize) -> Result<GradedLieDims, RationalError> {
    // a missing Omega S^m only affects degrees >= m - 1 > max_sphere_dim - 1
    if factors.truncated && cutoff + 1 > factors.max_sphere_dim as usize {
        return Err(RationalError::TruncatedFactors {
            max_sphere_dim: factors.max_sphere_dim,
            cutoff,
        });
    }
    let mut dims = GradedLieDims::zero(cutoff);
    dims.add_to(1, factors.circles);
    for (&m, &mult) in &factors.sphere_loops {
        let m = m as usize;
        dims.add_to(m - 1, mult);
        if m % 2 == 0 {
            dims.add_to(2 * m - 2, mult);
        }
    }
    Ok(dims)
}

/// Lie dimensions of the free graded Lie algebra on generators of the given
/// degrees.
pub fn free_graded_lie_dims(degrees: &[usize], cutoff: usize) -> Result<GradedLieDims, RationalError> {
    let mut denom = TruncatedSeries::one(cutoff);
    for &deg in degrees {
        assert!(deg >= 1, "generator degrees start at 1");
        denom = denom.sub(&TruncatedSeries::monomial(Rational::from_integer(1.into()), deg, cutoff));
    }
    Ok(pbw_invert(&denom.reciprocal()?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coformality {
    Coformal,
    NotCoformal,
}

/// First degree where two integer series differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesMismatch {
    pub degree: usize,
    pub naive: i64,
    pub actual: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoformalityReport {
    pub d: usize,
    pub verdict: Coformality,
    pub witness: String,
    /// Lie dimensions, agreeing on both paths (coformal case only).
    pub lie_dims: Option<Vec<u64>>,
    /// `1 / A(-s)` against the loop homology of the decomposition (`d = 1`).
    pub mismatch: Option<SeriesMismatch>,
}

/// For `d >= 2` compares Koszul-dual Lie dimensions with the ranks of the
/// loop decomposition; for `d = 1` reports the cubic differential and the
/// first degree where `1 / A(-s)` and `H_*(Omega M)` part ways.
pub fn coformality_check(sb: &SphereBundle, cutoff: usize) -> Result<CoformalityReport, RationalError> {
    let d = sb.d();
    match d {
        0 => Err(RationalError::Unsupported(
            "coformality check needs d >= 1".into(),
        )),
        1 => {
            let p = QuadraticPresentation::from_ring_unchecked(&sb.ring());
            let naive = naive_dual_series(&p, cutoff)
                .to_i64s()
                .ok_or_else(|| RationalError::Unsupported("series overflow".into()))?;
            let decomposition = loops::decompose(sb)?;
            let actual = loops::loop_homology_series(&decomposition.expr, cutoff)?
                .to_i64s()
                .ok_or_else(|| RationalError::Unsupported("series overflow".into()))?;
            let mismatch = naive
                .iter()
                .zip(&actual)
                .enumerate()
                .find(|(_, (a, b))| a != b)
                .map(|(degree, (&naive, &actual))| SeriesMismatch { degree, naive, actual });
            Ok(CoformalityReport {
                d,
                verdict: Coformality::NotCoformal,
                witness: "dx=c^3".into(),
                lie_dims: None,
                mismatch,
            })
        }
        _ => {
            let p = quadratic_presentation(&sb.ring())?;
            let lie = lie_dims(&p, cutoff, false)?;
            let ranks = ranks_from_decomposition(&loops::loop_factors(sb, cutoff)?, cutoff)?;
            if lie != ranks {
                return Err(RationalError::TwoPathMismatch {
                    lie: lie.as_slice().to_vec(),
                    decomposition: ranks.as_slice().to_vec(),
                });
            }
            Ok(CoformalityReport {
                d,
                verdict: Coformality::Coformal,
                witness: format!("Koszul dual and loop decomposition ranks agree through degree {cutoff}"),
                lie_dims: Some(lie.as_slice().to_vec()),
                mismatch: None,
            })
        }
    }
}

/// Finite total rational homotopy. Holds exactly when `d <= 2`.
pub fn is_rationally_elliptic(sb: &SphereBundle) -> bool {
    sb.d() <= 2
}

/// Sullivan model of `M`, with a flag telling whether it is the full
/// minimal model or only its stage through degree 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    pub model: SullivanModel,
    pub complete: bool,
    pub description: String,
}

/// The `b`-coefficient `k` in the `d = 1` model, from the ring relation
/// `t^2 = alpha t x + ell y` after completing the square.
pub fn d1_parameter(sb: &SphereBundle) -> Rational {
    let q11 = sb.base.form()[0][0];
    Rational::new((-q11 * sb.bundle.p1).into(), 4.into())
}

pub fn model_for(sb: &SphereBundle) -> Result<ModelReport, RationalError> {
    Ok(match sb.d() {
        0 if sb.bundle.ell == 0 => ModelReport {
            model: sullivan::s2_times_s4(),
            complete: true,
            description: "S^2 x S^4".into(),
        },
        0 => ModelReport {
            model: sullivan::cp3(),
            complete: true,
            description: "CP^3".into(),
        },
        1 => ModelReport {
            model: sullivan::d1_total_space(d1_parameter(sb)),
            complete: true,
            description: "not coformal: dx is cubic".into(),
        },
        2 => ModelReport {
            model: sullivan::quadratic_stage(&quadratic_presentation(&sb.ring())?),
            complete: true,
            description: "pure quadratic model".into(),
        },
        _ => ModelReport {
            model: sullivan::quadratic_stage(&quadratic_presentation(&sb.ring())?),
            complete: false,
            description: "stage through degree 3; M is hyperbolic".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::FourManifold;

    fn hyperbolic(d: usize) -> Vec<Vec<i64>> {
        let mut q = vec![vec![0; d]; d];
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = if i % 2 == 0 { 1 } else { -1 };
        }
        q
    }

    fn bundle(form: Vec<Vec<i64>>, p1: i64) -> SphereBundle {
        let d = form.len();
        SphereBundle::from_classes(form, &vec![0; d], p1).unwrap()
    }

    #[test]
    fn lie_dims_d2_d3() {
        let p = quadratic_presentation(&bundle(hyperbolic(2), 0).ring()).unwrap();
        assert_eq!(lie_dims(&p, 6, false).unwrap().as_slice(), &[3, 3, 0, 0, 0, 0]);
        let p = quadratic_presentation(&bundle(hyperbolic(3), 4).ring()).unwrap();
        assert_eq!(&lie_dims(&p, 4, false).unwrap().as_slice()[..3], &[4, 6, 5]);
    }

    #[test]
    fn forced_d1_goes_negative() {
        let sb = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
        let p = QuadraticPresentation::from_ring_unchecked(&sb.ring());
        assert_eq!(lie_dims(&p, 6, false), Err(RationalError::RequiresKoszul { d: 1 }));
        assert!(matches!(
            lie_dims(&p, 6, true),
            Err(RationalError::Series(SeriesError::NegativeLieDimension { degree: 3, .. }))
        ));
    }

    #[test]
    fn decomposition_ranks() {
        let sb = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
        let r = ranks_from_decomposition(&loops::loop_factors(&sb, 6).unwrap(), 6).unwrap();
        assert_eq!(r.as_slice(), &[2, 1, 0, 1, 0, 0]);
        let sb = SphereBundle::new(FourManifold::sphere(), crate::manifold::BundleData::from_classes(&FourManifold::sphere(), &[], 60).unwrap());
        let r = ranks_from_decomposition(&loops::loop_factors(&sb, 6).unwrap(), 6).unwrap();
        assert_eq!(r.as_slice(), &[1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn free_lie() {
        assert_eq!(free_graded_lie_dims(&[1, 1], 6).unwrap().as_slice(), &[2, 3, 2, 3, 6, 11]);
        assert_eq!(free_graded_lie_dims(&[2], 4).unwrap().as_slice(), &[0, 1, 0, 0]);
        assert_eq!(free_graded_lie_dims(&[1], 4).unwrap().as_slice(), &[1, 1, 0, 0]);
    }

    #[test]
    fn coformality() {
        let sb = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
        let r = coformality_check(&sb, 8).unwrap();
        assert_eq!(r.verdict, Coformality::NotCoformal);
        assert_eq!(r.witness, "dx=c^3");
        assert_eq!(r.mismatch, Some(SeriesMismatch { degree: 3, naive: 1, actual: 2 }));
        for d in [2, 5] {
            let r = coformality_check(&bundle(hyperbolic(d), 0), 8).unwrap();
            assert_eq!(r.verdict, Coformality::Coformal);
        }
    }

    #[test]
    fn models() {
        let m = model_for(&bundle(hyperbolic(2), 8)).unwrap();
        assert!(m.complete);
        assert_eq!(cdga_cohomology(&m.model, 8).unwrap(), vec![1, 0, 3, 0, 3, 0, 1, 0, 0]);
        let sb = SphereBundle::from_classes(vec![vec![1]], &[1], 5).unwrap();
        let m = model_for(&sb).unwrap();
        assert_eq!(cdga_cohomology(&m.model, 8).unwrap(), vec![1, 0, 2, 0, 2, 0, 1, 0, 0]);
        assert!(is_rationally_elliptic(&sb));
        assert!(!is_rationally_elliptic(&bundle(hyperbolic(3), 0)));
    }
}
