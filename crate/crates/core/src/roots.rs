//! Zeros of a nonnegative real trigonometric polynomial on the circle.
//!
//! The deficit `Φ = 1 − |φ|²` of a valid certificate is nonnegative, so its
//! zeros are tangential (generically double roots of the associated algebraic
//! polynomial). Root finders lose half the digits on double roots; a Newton
//! step on `Φ'` restores them.

use crate::certificate::DeficitPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{real, unit_phase, Cplx, Real};
use crate::torus::wrap_unit;
use num_traits::Float;

/// Roots with `||z| − 1|` below this are considered on the unit circle.
pub const UNIT_CIRCLE_TOL: f64 = 1e-6;
/// Arguments closer than this (mod 1) are deduplicated.
pub const ARG_DEDUP_TOL: f64 = 1e-7;

fn horner_with_deriv<T: Real>(coeffs: &[Cplx<T>], z: Cplx<T>) -> (Cplx<T>, Cplx<T>) {
    let n = coeffs.len() - 1;
    let mut p = coeffs[n];
    let mut dp = Cplx::new(T::zero(), T::zero());
    for k in (0..n).rev() {
        dp = dp * z + p;
        p = p * z + coeffs[k];
    }
    (p, dp)
}

/// All roots of `Σ_j c_j z^j` by the Aberth–Ehrlich simultaneous iteration.
///
/// Deterministic (fixed initialization on the Cauchy-bound circle) and robust
/// for the tangential double roots that companion-matrix QR iteration handles
/// poorly. Double roots stagnate near `√ε` accuracy; callers polish.
pub(crate) fn polynomial_roots<T: Real>(coeffs: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg].norm();
    if lead == T::zero() {
        return Err(Error::Internal("zero leading coefficient".into()));
    }
    // Cauchy bound on root moduli
    let radius = T::one()
        + coeffs[..deg]
            .iter()
            .fold(T::zero(), |s, c| Float::max(s, c.norm() / lead));

    let degf = T::from_usize(deg).unwrap();
    let mut z: Vec<Cplx<T>> = (0..deg)
        .map(|k| {
            // fixed angular offset breaks the symmetry of symmetric inputs
            let angle = T::from_usize(k).unwrap() / degf + real(0.1735);
            unit_phase(angle) * Cplx::new(radius, T::zero())
        })
        .collect();

    let tiny = real::<T>(1e-300);
    for _sweep in 0..160 {
        let mut max_step = T::zero();
        for k in 0..deg {
            let (p, dp) = horner_with_deriv(coeffs, z[k]);
            let newton = if dp.norm() <= tiny {
                Cplx::new(real(1e-8), T::zero())
            } else {
                p / dp
            };
            let mut repulsion = Cplx::new(T::zero(), T::zero());
            for j in 0..deg {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > tiny {
                        repulsion += Cplx::new(T::one(), T::zero()) / diff;
                    }
                }
            }
            let denom = Cplx::new(T::one(), T::zero()) - newton * repulsion;
            let step = if denom.norm() <= tiny { newton } else { newton / denom };
            z[k] -= step;
            max_step = Float::max(max_step, step.norm());
        }
        if max_step <= real::<T>(1e-14) * (T::one() + radius) {
            break;
        }
    }
    Ok(z)
}

/// Zeros of the deficit on the circle, as positions in `[0, 1)`.
///
/// `zero_tol` is the acceptance threshold on `Φ(x)`; the unit-circle and
/// dedup tolerances are fixed. The Laurent polynomial `z^D Φ(z)` has degree
/// `≤ 2D`, so at most `D` distinct tangential zeros survive.
pub fn unit_circle_zeros<T: Real>(deficit: &DeficitPolynomial<T>, zero_tol: T) -> Result<Vec<T>> {
    let (d_max, laurent) = deficit.laurent_1d()?;
    let scale = laurent
        .iter()
        .fold(T::zero(), |s, z| Float::max(s, z.norm()));
    if scale == T::zero() {
        return Err(Error::DegenerateCertificate);
    }

    // trim negligible outer coefficients symmetrically (Hermitian pairs)
    let trim = scale * real::<T>(1e-13);
    let mut lo = 0usize;
    let mut hi = laurent.len() - 1;
    while lo < hi && laurent[lo].norm() <= trim && laurent[hi].norm() <= trim {
        lo += 1;
        hi -= 1;
    }
    let coeffs = &laurent[lo..=hi];
    if coeffs.len() <= 1 {
        // constant deficit: either strictly positive (no zeros) or ~0 (degenerate)
        return if coeffs[0].norm() <= zero_tol {
            Err(Error::DegenerateCertificate)
        } else {
            Ok(Vec::new())
        };
    }

    // A suboptimal certificate has Φ_min > 0, which splits each tangential
    // double root into an off-circle conjugate pair at distance
    // ~√(Φ_min / Φ''); the circle filter must admit those, and the Φ-value
    // test below is the real gate.
    let circle_tol = Float::max(
        real(UNIT_CIRCLE_TOL),
        Float::sqrt(zero_tol / scale) * real(2.0),
    );
    let mut args: Vec<T> = Vec::new();
    for z in polynomial_roots(coeffs)? {
        let r = z.norm();
        if <T as Float>::abs(r - T::one()) > circle_tol {
            continue;
        }
        // z ≈ e^{2πix}: project onto the circle
        let mut x = wrap_unit(Float::atan2(z.im, z.re) / T::TAU());
        // one Newton step on Φ' polishes the tangential double root
        let d1 = deficit.deriv1(x);
        let d2 = deficit.deriv2(x);
        if Float::abs(d2) > scale {
            let step = d1 / d2;
            if Float::abs(step) < real(1e-2) {
                x = wrap_unit(x - step);
            }
        }
        if deficit.eval_real_1d(x) <= zero_tol {
            args.push(x);
        }
    }

    args.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let dedup_tol = real::<T>(ARG_DEDUP_TOL);
    let mut out: Vec<T> = Vec::new();
    for x in args {
        let dup = out
            .iter()
            .any(|&y| crate::torus::circle_dist(x, y) <= dedup_tol);
        if !dup {
            out.push(x);
        }
    }

    if out.len() > 2 * d_max as usize {
        return Err(Error::CertificateRejected(format!(
            "found {} zeros, more than the root bound {}; deficit is numerically degenerate",
            out.len(),
            2 * d_max
        )));
    }
    Ok(out)
}
