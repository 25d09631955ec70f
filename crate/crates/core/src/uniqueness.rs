//! Uniqueness of minimal extrapolations supported on a finite point set:
//! the exponential matrix, its column rank, and amplitude recovery.

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::scalar::{cplx_norm2, real, unit_phase, Cplx, Real};
use crate::structure::SupportStructure;
use crate::torus::{FrequencySet, TorusPoint};
use nalgebra::{DMatrix, DVector, RealField};

/// Default relative singular-value threshold for the rank decision.
pub const RANK_TOL: f64 = 1e-8;
/// Default residual threshold for accepting a recovered measure.
pub const RESIDUAL_TOL: f64 = 1e-6;

/// The matrix with entries `e^{−2πi m_j·x_k}`, rows indexed by `Λ` and
/// columns by candidate support points.
#[derive(Debug, Clone)]
pub struct ExponentialMatrix<T: Real> {
    lambda: FrequencySet,
    points: Vec<TorusPoint<T>>,
    entries: DMatrix<Cplx<T>>,
}

pub fn build_e<T>(lambda: &FrequencySet, points: &[TorusPoint<T>]) -> Result<ExponentialMatrix<T>>
where
    T: Real + RealField,
{
    if points.is_empty() {
        return Err(Error::InvalidParameter("need at least one candidate point".into()));
    }
    for x in points {
        if x.dim() != lambda.dim() {
            return Err(Error::DimensionMismatch {
                expected: lambda.dim(),
                got: x.dim(),
            });
        }
    }
    let entries = DMatrix::from_fn(lambda.len(), points.len(), |j, k| {
        unit_phase(-lambda.get(j).dot(&points[k]))
    });
    Ok(ExponentialMatrix {
        lambda: lambda.clone(),
        points: points.to_vec(),
        entries,
    })
}

impl<T: Real + RealField> ExponentialMatrix<T> {
    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entry(&self, j: usize, k: usize) -> Cplx<T> {
        self.entries[(j, k)]
    }

    pub fn points(&self) -> &[TorusPoint<T>] {
        &self.points
    }

    pub fn lambda(&self) -> &FrequencySet {
        &self.lambda
    }
}

/// True iff the smallest singular value exceeds `rank_tol` times the largest;
/// immediately false when there are fewer rows than columns.
pub fn has_full_column_rank<T>(e: &ExponentialMatrix<T>, rank_tol: T) -> bool
where
    T: Real + RealField,
{
    if e.nrows() < e.ncols() {
        return false;
    }
    let svd = e.entries.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    smax > T::zero() && smin > rank_tol * smax
}

/// Least-squares amplitude recovery `E a ≈ data` through a QR factorization
/// (no normal equations; `E` can be ill-conditioned near coalescing points).
/// Returns the weights and the residual `‖E a − data‖₂`.
pub fn recover_amplitudes<T>(
    e: &ExponentialMatrix<T>,
    data: &SpectralData<T>,
) -> Result<(Vec<Cplx<T>>, T)>
where
    T: Real + RealField,
{
    if data.lambda() != &e.lambda {
        return Err(Error::InvalidParameter(
            "data must be indexed exactly like the matrix rows".into(),
        ));
    }
    if !has_full_column_rank(e, real(RANK_TOL)) {
        return Err(Error::RankDeficient);
    }
    let rhs = DVector::from_column_slice(data.values());
    let qr = e.entries.clone().qr();
    let mut qtb = rhs.clone();
    qr.q_tr_mul(&mut qtb);
    let r = qr.r();
    let k = e.ncols();
    // back-substitution on the leading k×k triangle
    let mut a = vec![Cplx::new(T::zero(), T::zero()); k];
    for i in (0..k).rev() {
        let mut acc = qtb[i];
        for j in (i + 1)..k {
            acc -= r[(i, j)] * a[j];
        }
        a[i] = acc / r[(i, i)];
    }
    let residual = {
        let fitted = &e.entries * DVector::from_column_slice(&a);
        let diff: Vec<Cplx<T>> = fitted
            .iter()
            .zip(rhs.iter())
            .map(|(f, b)| *f - *b)
            .collect();
        cplx_norm2(&diff)
    };
    Ok((a, residual))
}

/// The uniqueness verdict for a support structure.
#[derive(Debug, Clone)]
pub enum Verdict<T: Real> {
    /// Full column rank and a consistent recovery: the minimal extrapolation
    /// is unique and equals the recovered measure.
    Unique {
        measure: DiscreteMeasure<T>,
        residual: T,
    },
    /// Rank or residual failed; nothing is proved either way.
    Inconclusive { reason: String },
    /// The support structure is not a finite point set.
    NotApplicable { reason: String },
}

impl<T: Real> Verdict<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Unique { .. } => "UNIQUE",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
            Verdict::NotApplicable { .. } => "NOT_APPLICABLE",
        }
    }
}

pub fn uniqueness_verdict<T>(
    structure: &SupportStructure<T>,
    lambda: &FrequencySet,
    data: &SpectralData<T>,
) -> Verdict<T>
where
    T: Real + RealField,
{
    let points = match structure {
        SupportStructure::Points(p) => p.clone(),
        other => {
            return Verdict::NotApplicable {
                reason: format!("support structure is {}, not a finite point set", other.tag()),
            }
        }
    };
    verdict_for_points(&points, lambda, data)
}

/// The verdict for an explicit candidate point set.
pub fn verdict_for_points<T>(
    points: &[TorusPoint<T>],
    lambda: &FrequencySet,
    data: &SpectralData<T>,
) -> Verdict<T>
where
    T: Real + RealField,
{
    if points.is_empty() {
        return Verdict::NotApplicable {
            reason: "empty candidate support".into(),
        };
    }
    let e = match build_e(lambda, points) {
        Ok(e) => e,
        Err(err) => {
            return Verdict::Inconclusive {
                reason: format!("could not build the exponential matrix: {err}"),
            }
        }
    };
    if !has_full_column_rank(&e, real(RANK_TOL)) {
        return Verdict::Inconclusive {
            reason: "exponential matrix does not have full column rank".into(),
        };
    }
    match recover_amplitudes(&e, data) {
        Ok((weights, residual)) => {
            if residual > real(RESIDUAL_TOL) {
                return Verdict::Inconclusive {
                    reason: format!("support set inconsistent with data (residual {residual})"),
                };
            }
            let atoms = points.iter().cloned().zip(weights);
            Verdict::Unique {
                measure: DiscreteMeasure::from_atoms(lambda.dim(), atoms),
                residual,
            }
        }
        Err(err) => Verdict::Inconclusive {
            reason: format!("amplitude recovery failed: {err}"),
        },
    }
}
