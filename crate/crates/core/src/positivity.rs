//! Positive-definite extendability of contiguous moment windows (d = 1):
//! the Toeplitz PSD test, the bordered-matrix atomic construction of a
//! positive extrapolation, its modulation back to the original window, and
//! the explicit Fejér-kernel family of nonnegative densities.

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::roots::polynomial_roots;
use crate::scalar::{real, unit_phase, Cplx, Real};
use crate::torus::{circle_dist, wrap_unit, Frequency, FrequencySet, TorusPoint};
use crate::trig::TrigPolynomial;
use nalgebra::{DMatrix, DVector, RealField};
use num_traits::Float;

/// Residual threshold for accepting a constructed atomic representation.
pub const MOMENT_RESIDUAL_TOL: f64 = 1e-7;

/// Moments `t_0..t_M` read from a contiguous window centered at `n`,
/// i.e. the data of `M_{−n}μ` on `{0, …, M}` (Hermitian reflection supplies
/// the negative side).
#[derive(Debug, Clone)]
pub struct ToeplitzWindow<T> {
    pub center: i64,
    pub half_width: usize,
    pub moments: Vec<Cplx<T>>,
    /// True when the window covers only part of `Λ`; the PSD test is then a
    /// necessary (hull) condition, not a known-sufficient one.
    pub hull_heuristic: bool,
}

/// Reads the moment window. For each `k`, the moment is `data(n+k)` when
/// available, else `conj(data(n−k))`; overlapping reads must be
/// Hermitian-consistent within `tol`.
pub fn toeplitz_window<T: Real>(
    data: &SpectralData<T>,
    n: i64,
    half_width: usize,
    tol: T,
) -> Result<ToeplitzWindow<T>> {
    if data.dim() != 1 {
        return Err(Error::UnsupportedDimension(data.dim()));
    }
    let mut moments = Vec::with_capacity(half_width + 1);
    for k in 0..=(half_width as i64) {
        let plus = data.value(&Frequency::new_1d(n + k));
        let minus = data.value(&Frequency::new_1d(n - k));
        let t = match (plus, minus) {
            (Some(p), Some(m)) => {
                if (m - p.conj()).norm() > tol {
                    return Err(Error::HermitianInconsistency(format!(
                        "data({}) = {m} is not conj(data({})) = {}",
                        n - k,
                        n + k,
                        p.conj()
                    )));
                }
                p
            }
            (Some(p), None) => p,
            (None, Some(m)) => m.conj(),
            (None, None) => {
                return Err(Error::NonContiguousWindow(format!(
                    "neither {} nor {} lies in the frequency set",
                    n + k,
                    n - k
                )))
            }
        };
        moments.push(t);
    }
    if moments[0].im.abs() > tol {
        return Err(Error::HermitianInconsistency(format!(
            "t₀ = {} must be real",
            moments[0]
        )));
    }
    moments[0] = Cplx::new(moments[0].re, T::zero());

    // does the window account for every datum in Λ?
    let hull_heuristic = data.lambda().iter().any(|m| {
        let v = m.components()[0];
        (v - n).unsigned_abs() as usize > half_width
    });

    Ok(ToeplitzWindow {
        center: n,
        half_width,
        moments,
        hull_heuristic,
    })
}

fn toeplitz_matrix<T: Real + RealField>(moments: &[Cplx<T>]) -> DMatrix<Cplx<T>> {
    let n = moments.len();
    DMatrix::from_fn(n, n, |j, k| {
        if j >= k {
            moments[j - k]
        } else {
            moments[k - j].conj()
        }
    })
}

/// Carathéodory–Toeplitz criterion for contiguous windows: the moments
/// extend to a positive-definite sequence iff the Hermitian Toeplitz matrix
/// is positive semidefinite.
pub fn is_pd_extendable<T>(window: &ToeplitzWindow<T>, tol: T) -> bool
where
    T: Real + RealField,
{
    let t = toeplitz_matrix(&window.moments);
    let eig = t.symmetric_eigenvalues();
    let scale = eig.iter().fold(T::zero(), |s, e| Float::max(s, Float::abs(*e)));
    let min = eig.iter().fold(T::infinity(), |s, e| Float::min(s, *e));
    min >= -tol * Float::max(T::one(), scale)
}

/// Atom locations from a null vector: roots of `Σ_j v_j z^j` projected onto
/// the unit circle.
fn atoms_from_null_vector<T: Real>(v: &[Cplx<T>]) -> Result<Vec<T>> {
    // trim negligible leading coefficients so the companion matrix is sane
    let scale = v.iter().fold(T::zero(), |s, z| Float::max(s, z.norm()));
    if scale == T::zero() {
        return Err(Error::Internal("zero null vector".into()));
    }
    let trim = scale * real::<T>(1e-12);
    let mut hi = v.len();
    while hi > 1 && v[hi - 1].norm() <= trim {
        hi -= 1;
    }
    let coeffs = &v[..hi];
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut args: Vec<T> = Vec::new();
    for z in polynomial_roots(coeffs)? {
        let r = z.norm();
        if Float::abs(r - T::one()) > real(1e-3) {
            continue;
        }
        args.push(wrap_unit(Float::atan2(z.im, z.re) / T::TAU()));
    }
    args.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<T> = Vec::new();
    for x in args {
        if !out.iter().any(|&y| circle_dist(x, y) <= real(1e-7)) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Least-squares weights for given atom locations against the moments,
/// solved over the Hermitian-extended window `−M..M`.
fn moment_weights<T>(locations: &[T], moments: &[Cplx<T>]) -> Result<(Vec<T>, T)>
where
    T: Real + RealField,
{
    let m_half = moments.len() - 1;
    if locations.is_empty() {
        let res = Float::sqrt(moments.iter().fold(T::zero(), |s, t| s + t.norm_sqr()));
        return Ok((Vec::new(), res));
    }
    let rows = 2 * m_half + 1;
    let a = DMatrix::<Cplx<T>>::from_fn(rows, locations.len(), |j, k| {
        let freq = j as i64 - m_half as i64;
        unit_phase(-T::from_i64(freq).unwrap() * locations[k])
    });
    let b = DVector::<Cplx<T>>::from_fn(rows, |j, _| {
        let freq = j as i64 - m_half as i64;
        if freq >= 0 {
            moments[freq as usize]
        } else {
            moments[(-freq) as usize].conj()
        }
    });
    let svd = a.clone().svd(true, true);
    let w = svd
        .solve(&b, real(1e-12))
        .map_err(|e| Error::Internal(format!("moment system solve failed: {e}")))?;
    let residual = {
        let diff = &a * &w - &b;
        Float::sqrt(diff.iter().fold(T::zero(), |s, z| s + z.norm_sqr()))
    };
    // weights of a positive measure are real; drop numerically tiny
    // imaginary parts and report the real parts
    Ok((w.iter().map(|z| z.re).collect(), residual))
}

/// Lawson–Hanson nonnegative least squares for the grid fallback.
fn nnls<T>(a: &DMatrix<T>, b: &DVector<T>, max_iter: usize) -> DVector<T>
where
    T: Real + RealField,
{
    let n = a.ncols();
    let mut passive = vec![false; n];
    let mut x = DVector::<T>::zeros(n);
    let tol = real::<T>(1e-12) * a.amax();
    for _ in 0..max_iter {
        let w = a.transpose() * (b - a * &x);
        let mut best: Option<(usize, T)> = None;
        for j in 0..n {
            if !passive[j] && w[j] > tol
                && best.is_none_or(|(_, bw)| w[j] > bw) {
                    best = Some((j, w[j]));
                }
        }
        let Some((enter, _)) = best else { break };
        passive[enter] = true;

        loop {
            // unconstrained least squares on the passive set
            let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let sub = a.select_columns(cols.iter());
            let sol = sub
                .svd(true, true)
                .solve(b, real(1e-12))
                .expect("svd solve is infallible with both factors");
            if sol.iter().all(|&v| v > T::zero()) {
                x.fill(T::zero());
                for (idx, &j) in cols.iter().enumerate() {
                    x[j] = sol[idx];
                }
                break;
            }
            // step back to the boundary and drop the blocking variables
            let mut alpha = T::infinity();
            for (idx, &j) in cols.iter().enumerate() {
                if sol[idx] <= T::zero() {
                    let denom = x[j] - sol[idx];
                    if denom > T::zero() {
                        alpha = Float::min(alpha, x[j] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = T::zero();
            }
            for (idx, &j) in cols.iter().enumerate() {
                x[j] = x[j] + alpha * (sol[idx] - x[j]);
                if x[j] <= tol {
                    x[j] = T::zero();
                    passive[j] = false;
                }
            }
        }
    }
    x
}

/// Grid fallback: nonnegative least squares on a 512-point grid, accepted
/// only when the moment residual stays below `1e−6`.
fn caratheodory_fallback<T>(window: &ToeplitzWindow<T>) -> Result<DiscreteMeasure<T>>
where
    T: Real + RealField,
{
    const GRID: usize = 512;
    let m_half = window.half_width;
    let rows = 2 * (2 * m_half + 1);
    let a = DMatrix::<T>::from_fn(rows, GRID, |r, j| {
        let freq = (r / 2) as i64 - m_half as i64;
        let x = T::from_usize(j).unwrap() / T::from_usize(GRID).unwrap();
        let e = unit_phase(-T::from_i64(freq).unwrap() * x);
        if r % 2 == 0 {
            e.re
        } else {
            e.im
        }
    });
    let b = DVector::<T>::from_fn(rows, |r, _| {
        let freq = (r / 2) as i64 - m_half as i64;
        let t = if freq >= 0 {
            window.moments[freq as usize]
        } else {
            window.moments[(-freq) as usize].conj()
        };
        if r % 2 == 0 {
            t.re
        } else {
            t.im
        }
    });
    let x = nnls(&a, &b, 200);
    let residual = (&a * &x - &b).norm();
    if residual > real(1e-6) {
        return Err(Error::Internal(format!(
            "grid fallback residual {residual} too large"
        )));
    }
    let atoms = (0..GRID).filter(|&j| x[j] > T::zero()).map(|j| {
        (
            TorusPoint::new_1d(T::from_usize(j).unwrap() / T::from_usize(GRID).unwrap()),
            Cplx::new(x[j], T::zero()),
        )
    });
    Ok(DiscreteMeasure::from_atoms(1, atoms))
}

/// Builds a positive measure with at most `M+1` atoms matching the window
/// moments, via the singular boundary of the Toeplitz completion disk.
///
/// If the window matrix is already singular, its null vector carries the
/// atoms (Pisarenko). Otherwise the matrix is bordered with the completion
/// value `t_{M+1}` of largest real part on the disk boundary, which makes the
/// bordered matrix singular by construction.
pub fn caratheodory_atoms<T>(window: &ToeplitzWindow<T>) -> Result<DiscreteMeasure<T>>
where
    T: Real + RealField,
{
    let t = toeplitz_matrix(&window.moments);
    let size = t.nrows();
    let eig = t.clone().symmetric_eigen();
    let scale = eig
        .eigenvalues
        .iter()
        .fold(T::zero(), |s, e| Float::max(s, Float::abs(*e)));
    if scale == T::zero() {
        return Ok(DiscreteMeasure::empty(1)); // zero moments: the zero measure
    }
    let (min_idx, &min_eig) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    if min_eig < -real::<T>(1e-9) * scale {
        return Err(Error::NotExtendable);
    }

    let null_vector: Vec<Cplx<T>> = if min_eig <= real::<T>(1e-10) * scale {
        // the window matrix itself is singular
        eig.eigenvectors.column(min_idx).iter().copied().collect()
    } else {
        // border with the boundary completion value of largest real part
        let chol = t
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Internal("positive definite matrix must factor".into()))?;
        let mut e_vec = DVector::<Cplx<T>>::zeros(size);
        e_vec[size - 1] = Cplx::new(T::one(), T::zero());
        let mut c0 = DVector::<Cplx<T>>::zeros(size);
        for k in 1..size {
            c0[k - 1] = window.moments[k];
        }
        let z1 = chol.solve(&e_vec);
        let z2 = chol.solve(&c0);
        let a = e_vec.dotc(&z1).re; // e* T⁻¹ e > 0
        let b = e_vec.dotc(&z2); // e* T⁻¹ c0
        let gamma = window.moments[0].re - c0.dotc(&z2).re;
        let center = -b / Cplx::new(a, T::zero());
        let radius_sq = Float::max(gamma * a + b.norm_sqr(), T::zero());
        let radius = Float::sqrt(radius_sq) / a;
        let boundary = center + Cplx::new(radius, T::zero());

        let mut moments_ext = window.moments.clone();
        moments_ext.push(boundary);
        let bordered = toeplitz_matrix(&moments_ext);
        let eig_b = bordered.symmetric_eigen();
        let (idx, _) = eig_b
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        eig_b.eigenvectors.column(idx).iter().copied().collect()
    };

    let tol = real::<T>(MOMENT_RESIDUAL_TOL);
    let direct = atoms_from_null_vector(&null_vector).and_then(|locations| {
        let (weights, residual) = moment_weights(&locations, &window.moments)?;
        if residual > tol || weights.iter().any(|&w| w < -tol) {
            return Err(Error::Internal(format!(
                "atomic construction off (residual {residual})"
            )));
        }
        let atoms = locations.iter().zip(weights.iter()).filter_map(|(&x, &w)| {
            let w = Float::max(w, T::zero()); // clamp the tolerated negatives
            (w > T::zero()).then(|| (TorusPoint::new_1d(x), Cplx::new(w, T::zero())))
        });
        Ok(DiscreteMeasure::from_atoms(1, atoms))
    });
    match direct {
        Ok(mu) => Ok(mu),
        Err(_) => caratheodory_fallback(window),
    }
}

/// The positive minimal extrapolation `M_n ν` where `ν` represents the
/// window moments. Validated against all of `Λ`; its total variation equals
/// `|data(n)|` within the tolerance.
pub fn positive_minimal_extrapolation<T>(
    data: &SpectralData<T>,
    n: i64,
    half_width: usize,
    tol: T,
) -> Result<DiscreteMeasure<T>>
where
    T: Real + RealField,
{
    let window = toeplitz_window(data, n, half_width, tol)?;
    if !is_pd_extendable(&window, real(1e-9)) {
        return Err(Error::NotExtendable);
    }
    let nu = caratheodory_atoms(&window)?;
    let result = nu.modulate(&Frequency::new_1d(n));

    let transformed = result.fourier_transform(data.lambda())?;
    let dist = transformed.dist_inf(data).expect("same frequency set");
    if dist > Float::max(tol, real(1e-7)) {
        return Err(Error::WindowInconsistent(format!(
            "modulated extension misses the data by {dist} in sup norm"
        )));
    }
    let center_mod = data
        .value(&Frequency::new_1d(n))
        .expect("center frequency is in the window")
        .norm();
    if Float::abs(result.tv_norm() - center_mod) > Float::max(tol, real(1e-7)) {
        return Err(Error::Internal(format!(
            "total variation {} should equal |data(n)| = {}",
            result.tv_norm(),
            center_mod
        )));
    }
    Ok(result)
}

/// Parameters of the Fejér-kernel family of nonnegative densities.
#[derive(Debug, Clone, Copy)]
pub struct FejerFamilyParams<T> {
    pub n: usize,
    pub c: T,
}

impl<T: Real> FejerFamilyParams<T> {
    /// The largest admissible `c` for a given `N`.
    pub fn c_max(n: usize) -> T {
        T::from_usize(2 * n + 2).unwrap() / T::from_usize(3 * n + 1).unwrap()
    }
}

/// The density with coefficients `2` at `0` and `c (1 − |m|/(N+1))` for
/// `2 ≤ |m| ≤ N`. Nonnegative exactly when `0 < c ≤ (2N+2)/(3N+1)`;
/// validated on a 4096-point grid.
pub fn fejer_family<T: Real>(params: &FejerFamilyParams<T>) -> Result<TrigPolynomial<T>> {
    let n = params.n;
    if n < 2 {
        return Err(Error::InvalidParameter("Fejér family needs N ≥ 2".into()));
    }
    let c_max = FejerFamilyParams::<T>::c_max(n);
    if params.c <= T::zero() || params.c > c_max + real(1e-15) {
        return Err(Error::InvalidParameter(format!(
            "c = {} outside (0, {c_max}]",
            params.c
        )));
    }
    let lambda = FrequencySet::range_1d(-(n as i64), n as i64);
    let coeffs: Vec<Cplx<T>> = lambda
        .iter()
        .map(|m| {
            let k = m.components()[0].unsigned_abs() as usize;
            let v = if k == 0 {
                real::<T>(2.0)
            } else if k >= 2 {
                params.c * (T::one() - T::from_usize(k).unwrap() / T::from_usize(n + 1).unwrap())
            } else {
                T::zero()
            };
            Cplx::new(v, T::zero())
        })
        .collect();
    let poly = TrigPolynomial::new(lambda, coeffs)?;
    let min = poly.min_real_on_grid(4096);
    if min < -real::<T>(1e-9) {
        return Err(Error::Internal(format!(
            "Fejér density dipped to {min} on the validation grid"
        )));
    }
    Ok(poly)
}
