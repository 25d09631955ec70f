//! Dual certificates `φ ∈ U` and their deficit polynomials `Φ = 1 − |φ|²`.
//!
//! A validated certificate has sup-norm at most 1 (measured on a refinement
//! grid), pairs with the data to the optimal value, and its deficit zero set
//! contains the support of every minimal extrapolation.

use crate::error::{Error, Result};
use crate::measure::SpectralData;
use crate::roots::unit_circle_zeros;
use crate::scalar::{real, unit_phase, Cplx, Real};
use crate::torus::{Frequency, FrequencySet, TorusPoint};
use crate::trig::TrigPolynomial;
use nalgebra::{DMatrix, DVector, RealField};
use num_traits::Float;

/// Coefficient-level tolerance for recognizing a unimodular character.
pub const DEGENERACY_TOL: f64 = 1e-3;

/// Validation options for certificate construction.
#[derive(Debug, Clone)]
pub struct CertificateOptions<T> {
    /// Relative slack allowed in the pairing and the sup-norm bound.
    pub validation_tol: T,
    /// Points per axis of the refinement grid used to measure `‖φ‖_∞`.
    pub refine_per_axis: usize,
}

impl<T: Real> CertificateOptions<T> {
    pub fn for_dim(d: usize) -> Self {
        Self {
            // a grid dual overshoots ‖φ‖_∞ = 1 between grid points by
            // O(h²); rescaling onto the refinement grid costs the pairing
            // the same order, so the acceptance slack must absorb it
            validation_tol: real(1e-4),
            refine_per_axis: match d {
                1 => 4096,
                2 => 128,
                _ => 32,
            },
        }
    }
}

/// A validated dual certificate.
#[derive(Debug, Clone)]
pub struct Certificate<T> {
    poly: TrigPolynomial<T>,
    sup_norm_bound: T,
    pairing: Cplx<T>,
}

impl<T: Real> Certificate<T> {
    pub fn poly(&self) -> &TrigPolynomial<T> {
        &self.poly
    }

    /// Sup-norm measured on the refinement grid (≤ 1 + validation tolerance).
    pub fn sup_norm_bound(&self) -> T {
        self.sup_norm_bound
    }

    /// `⟨φ, μ⟩`, normalized to be real positive.
    pub fn pairing(&self) -> Cplx<T> {
        self.pairing
    }
}

/// Builds a certificate from the solver's dual vector.
///
/// The coefficients are the dual vector rescaled so the measured sup-norm is
/// at most 1 and rotated so the pairing with the data is real positive.
/// Rejects when the pairing falls below `ε (1 − validation_tol)` — either the
/// solver has not converged or the data is identically zero.
pub fn certificate_from_dual<T: Real>(
    dual: &[Cplx<T>],
    lambda: &FrequencySet,
    data: &SpectralData<T>,
    epsilon: T,
    opts: &CertificateOptions<T>,
) -> Result<Certificate<T>> {
    if epsilon <= T::zero() || data.is_zero(T::zero()) {
        return Err(Error::CertificateRejected(
            "zero data: the pairing condition is vacuous".into(),
        ));
    }
    let poly = TrigPolynomial::new(lambda.clone(), dual.to_vec())?;
    finalize_certificate(poly, data, epsilon, opts)
}

fn finalize_certificate<T: Real>(
    poly: TrigPolynomial<T>,
    data: &SpectralData<T>,
    epsilon: T,
    opts: &CertificateOptions<T>,
) -> Result<Certificate<T>> {
    let sup = poly.sup_norm_on_grid(opts.refine_per_axis);
    let poly = if sup > T::one() {
        poly.scale(Cplx::new(T::one() / sup, T::zero()))
    } else {
        poly
    };
    let sup_norm_bound = Float::min(sup, T::one());

    // rotate the global phase so that ⟨φ, μ⟩ is real positive
    let raw_pairing: Cplx<T> = poly
        .coefficients()
        .iter()
        .zip(data.values().iter())
        .fold(Cplx::new(T::zero(), T::zero()), |acc, (c, v)| {
            acc + *c * v.conj()
        });
    let mag = raw_pairing.norm();
    if mag <= epsilon * (T::one() - opts.validation_tol) {
        return Err(Error::CertificateRejected(format!(
            "pairing {mag} below threshold for epsilon {epsilon}; solver not converged enough"
        )));
    }
    let phase = raw_pairing / Cplx::new(mag, T::zero());
    let poly = poly.scale(phase.conj());
    Ok(Certificate {
        poly,
        sup_norm_bound,
        pairing: Cplx::new(mag, T::zero()),
    })
}

/// The deficit polynomial `Φ = 1 − |φ|²` on the difference set `Λ − Λ`.
///
/// Coefficients are computed by exact autocorrelation of the certificate
/// coefficients; Hermitian symmetry is constructed, not measured, so `Φ` is
/// exactly real-valued.
#[derive(Debug, Clone)]
pub struct DeficitPolynomial<T> {
    poly: TrigPolynomial<T>,
}

pub fn deficit<T: Real>(phi: &TrigPolynomial<T>) -> DeficitPolynomial<T> {
    let support = phi.support();
    let coeffs = phi.coefficients();

    // collect the difference set, keyed for canonical ordering
    let mut diffs: Vec<Frequency> = Vec::new();
    for m in support.iter() {
        for n in support.iter() {
            let k = m.sub(n);
            if !diffs.contains(&k) {
                diffs.push(k);
            }
        }
    }
    diffs.sort();

    let mut out_freqs: Vec<Frequency> = Vec::new();
    let mut out_coeffs: Vec<Cplx<T>> = Vec::new();
    for k in &diffs {
        // fill the positive half and the zero frequency; mirror the rest
        let positive_half = k
            .components()
            .iter()
            .find(|&&c| c != 0)
            .is_none_or(|&c| c > 0);
        if !positive_half {
            continue;
        }
        let mut auto = Cplx::new(T::zero(), T::zero());
        for (i, m) in support.iter().enumerate() {
            for (j, n) in support.iter().enumerate() {
                if m.sub(n) == *k {
                    auto += coeffs[i] * coeffs[j].conj();
                }
            }
        }
        if k.is_zero() {
            out_freqs.push(k.clone());
            out_coeffs.push(Cplx::new(T::one() - auto.re, T::zero()));
        } else {
            out_freqs.push(k.clone());
            out_coeffs.push(-auto);
            out_freqs.push(k.neg());
            out_coeffs.push(-auto.conj());
        }
    }
    // the zero difference is always present; Λ−Λ always contains 0
    let support = FrequencySet::new(out_freqs).expect("difference set is nonempty");
    let poly = TrigPolynomial::new(support, out_coeffs).expect("aligned");
    DeficitPolynomial { poly }
}

impl<T: Real> DeficitPolynomial<T> {
    pub fn poly(&self) -> &TrigPolynomial<T> {
        &self.poly
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    /// `Φ(x)` (exactly real by construction).
    pub fn eval_real(&self, x: &TorusPoint<T>) -> T {
        self.poly.eval(x).re
    }

    pub fn eval_real_1d(&self, x: T) -> T {
        self.eval_real(&TorusPoint::new_1d(x))
    }

    /// First derivative in one dimension.
    pub fn deriv1(&self, x: T) -> T {
        assert_eq!(self.dim(), 1);
        let p = TorusPoint::new_1d(x);
        let mut acc = T::zero();
        for (m, c) in self.poly.support().iter().zip(self.poly.coefficients()) {
            let k = T::from_i64(m.components()[0]).unwrap();
            acc += (*c * Cplx::new(T::zero(), T::TAU() * k) * unit_phase(m.dot(&p))).re;
        }
        acc
    }

    /// Second derivative in one dimension.
    pub fn deriv2(&self, x: T) -> T {
        assert_eq!(self.dim(), 1);
        let p = TorusPoint::new_1d(x);
        let mut acc = T::zero();
        for (m, c) in self.poly.support().iter().zip(self.poly.coefficients()) {
            let k = T::from_i64(m.components()[0]).unwrap();
            let w = T::TAU() * k;
            acc -= (*c * Cplx::new(w * w, T::zero()) * unit_phase(m.dot(&p))).re;
        }
        acc
    }

    /// Minimum of `Φ` over the uniform validation grid.
    pub fn min_on_grid(&self, n: usize) -> T {
        let d = self.dim();
        let total = n.pow(d as u32);
        let nf = T::from_usize(n).unwrap();
        let mut min = T::infinity();
        for flat in 0..total {
            let mut rest = flat;
            let mut coords = vec![T::zero(); d];
            for axis in (0..d).rev() {
                coords[axis] = T::from_usize(rest % n).unwrap() / nf;
                rest /= n;
            }
            min = Float::min(min, self.eval_real(&TorusPoint::new(coords)));
        }
        min
    }

    /// Dense Laurent coefficients `g_{−D}..g_D` for `d = 1`.
    pub fn laurent_1d(&self) -> Result<(i64, Vec<Cplx<T>>)> {
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim(),
            });
        }
        let d_max = self.poly.support().max_abs();
        let mut dense = vec![Cplx::new(T::zero(), T::zero()); (2 * d_max + 1) as usize];
        for (m, c) in self.poly.support().iter().zip(self.poly.coefficients()) {
            dense[(m.components()[0] + d_max) as usize] = *c;
        }
        Ok((d_max, dense))
    }
}

/// True when `φ` is (numerically) a unimodular character `e^{2πiθ}e^{2πim·x}`:
/// exactly one coefficient of modulus ≈ 1 and all others ≈ 0. Equivalently,
/// `Φ ≡ 0` within the tolerance.
pub fn is_degenerate<T: Real>(phi: &TrigPolynomial<T>, tol: T) -> bool {
    let mut near_one = 0usize;
    for c in phi.coefficients() {
        let n = c.norm();
        if Float::abs(n - T::one()) <= tol {
            near_one += 1;
        } else if n >= tol {
            return false;
        }
    }
    near_one == 1
}

/// Support extraction for `d = 1`: the zero set of `Φ`, found through the
/// algebraic polynomial of degree `≤ 4·max|Λ|` (companion-matrix eigenvalues
/// plus a Newton polish on the circle). Errors with the whole-torus failure
/// path when the certificate is degenerate.
pub fn support_from_certificate_1d<T: Real>(
    phi: &TrigPolynomial<T>,
    tol: T,
) -> Result<Vec<TorusPoint<T>>> {
    if phi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: phi.dim(),
        });
    }
    if is_degenerate(phi, real(DEGENERACY_TOL)) {
        return Err(Error::DegenerateCertificate);
    }
    let d = deficit(phi);
    let zeros = unit_circle_zeros(&d, tol)?;
    let bound = 2 * phi.support().max_abs() as usize;
    if zeros.len() > bound {
        return Err(Error::CertificateRejected(format!(
            "{} zeros exceed the 2M bound {}",
            zeros.len(),
            bound
        )));
    }
    Ok(zeros.into_iter().map(TorusPoint::new_1d).collect())
}

/// Grid sieve for any dimension: grid points where `|Φ| < tol`.
pub fn support_from_certificate_grid<T: Real>(
    phi: &TrigPolynomial<T>,
    refinement: usize,
    tol: T,
) -> Vec<TorusPoint<T>> {
    let d = phi.dim();
    let deficit = deficit(phi);
    let total = refinement.pow(d as u32);
    let nf = T::from_usize(refinement).unwrap();
    let mut out = Vec::new();
    for flat in 0..total {
        let mut rest = flat;
        let mut coords = vec![T::zero(); d];
        for axis in (0..d).rev() {
            coords[axis] = T::from_usize(rest % refinement).unwrap() / nf;
            rest /= refinement;
        }
        let x = TorusPoint::new(coords);
        if Float::abs(deficit.eval_real(&x)) < tol {
            out.push(x);
        }
    }
    out
}

/// Re-solves the certificate from a known support and sign pattern.
///
/// Interpolation (`φ(x_j) = s_j`) and tangency (`∂_a |φ|²(x_j) = 0`) are
/// linear in the coefficients once the signs are fixed, so the sharpened
/// certificate is a least-squares solve. Falls back to an error when the
/// result fails validation; callers keep the raw certificate in that case.
pub fn refine_certificate<T>(
    lambda: &FrequencySet,
    data: &SpectralData<T>,
    support: &[TorusPoint<T>],
    signs: &[Cplx<T>],
    epsilon: T,
    opts: &CertificateOptions<T>,
) -> Result<Certificate<T>>
where
    T: Real + RealField,
{
    if support.is_empty() || support.len() != signs.len() {
        return Err(Error::InvalidParameter(
            "support and sign pattern must be nonempty and aligned".into(),
        ));
    }
    let d = lambda.dim();
    let j_count = lambda.len();
    let rows = support.len() * (2 + d);
    let cols = 2 * j_count;
    let mut a = DMatrix::<T>::zeros(rows, cols);
    let mut rhs = DVector::<T>::zeros(rows);

    for (sj, (x, s)) in support.iter().zip(signs.iter()).enumerate() {
        let base = sj * (2 + d);
        for (mi, m) in lambda.iter().enumerate() {
            let e = unit_phase::<T>(m.dot(x));
            // interpolation: Re/Im of Σ c_m e = s
            a[(base, 2 * mi)] = e.re;
            a[(base, 2 * mi + 1)] = -e.im;
            a[(base + 1, 2 * mi)] = e.im;
            a[(base + 1, 2 * mi + 1)] = e.re;
            // tangency along each axis: Re(conj(s) Σ c_m 2πi m_a e) = 0
            for axis in 0..d {
                let ma = T::from_i64(m.components()[axis]).unwrap();
                let g = s.conj() * Cplx::new(T::zero(), T::TAU() * ma) * e;
                a[(base + 2 + axis, 2 * mi)] = g.re;
                a[(base + 2 + axis, 2 * mi + 1)] = -g.im;
            }
        }
        rhs[base] = s.re;
        rhs[base + 1] = s.im;
    }

    let svd = a.svd(true, true);
    let sol = svd
        .solve(&rhs, real(1e-12))
        .map_err(|e| Error::Internal(format!("certificate refinement solve failed: {e}")))?;
    let coeffs: Vec<Cplx<T>> = (0..j_count)
        .map(|i| Cplx::new(sol[2 * i], sol[2 * i + 1]))
        .collect();
    let poly = TrigPolynomial::new(lambda.clone(), coeffs)?;
    finalize_certificate(poly, data, epsilon, opts)
}
