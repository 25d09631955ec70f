//! Closed-form constructions for the non-generic reference measures:
//! equally-spaced atomic families, band-limited projection densities,
//! Cantor–Lebesgue coefficients, and d = 2 surface measures.

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::scalar::{real, Cplx, Real};
use crate::torus::{Frequency, TorusPoint};
use num_traits::Float;

/// `ν_{y,K} = (2/K) Σ_{k<K} δ_{y + k/K}`: total variation 2, Fourier
/// coefficients vanishing off multiples of `K`.
pub fn nu_family_1d<T: Real>(y: T, k: usize) -> Result<DiscreteMeasure<T>> {
    if k < 2 {
        return Err(Error::InvalidParameter("the family needs K ≥ 2".into()));
    }
    let weight = Cplx::new(real::<T>(2.0) / T::from_usize(k).unwrap(), T::zero());
    let kf = T::from_usize(k).unwrap();
    Ok(DiscreteMeasure::from_atoms(
        1,
        (0..k).map(|j| {
            (
                TorusPoint::new_1d(y + T::from_usize(j).unwrap() / kf),
                weight,
            )
        }),
    ))
}

/// The d = 2 analogue supported on the anti-diagonal line `x₁ + x₂ = 1`:
/// `ν_{y,K} = (2/K) Σ_{k<K} δ_{(y+k/K, 1−y−k/K)}`.
pub fn nu_family_2d<T: Real>(y: T, k: usize) -> Result<DiscreteMeasure<T>> {
    if k < 2 {
        return Err(Error::InvalidParameter("the family needs K ≥ 2".into()));
    }
    let weight = Cplx::new(real::<T>(2.0) / T::from_usize(k).unwrap(), T::zero());
    let kf = T::from_usize(k).unwrap();
    Ok(DiscreteMeasure::from_atoms(
        2,
        (0..k).map(|j| {
            let t = y + T::from_usize(j).unwrap() / kf;
            (TorusPoint::new(vec![t, T::one() - t]), weight)
        }),
    ))
}

/// `L¹` norm over the torus of the band-limited density
/// `Σ_m data(m) e^{2πi m·x}`, by composite trapezoid quadrature with
/// `quadrature_points` per axis (at least `8 · max|Λ|`).
///
/// For the two-atom family `μ_y = δ₀ − δ_y` this is the norm of the
/// absolutely continuous extrapolation `ν_y`, which tends to 0 with `y`.
pub fn projection_extrapolation_norm<T: Real>(
    data: &SpectralData<T>,
    quadrature_points: usize,
) -> Result<T> {
    let min_points = 8 * data.lambda().max_abs().max(1) as usize;
    if quadrature_points < min_points {
        return Err(Error::InvalidParameter(format!(
            "need at least {min_points} quadrature points per axis"
        )));
    }
    let density = data.fourier_partial_sum();
    let d = data.dim();
    let q = quadrature_points;
    let total = q.pow(d as u32);
    let qf = T::from_usize(q).unwrap();
    let mut sum = T::zero();
    for flat in 0..total {
        let mut rest = flat;
        let mut coords = vec![T::zero(); d];
        for axis in (0..d).rev() {
            coords[axis] = T::from_usize(rest % q).unwrap() / qf;
            rest /= q;
        }
        sum += density.eval(&TorusPoint::new(coords)).norm();
    }
    // on the torus the composite trapezoid rule is the plain grid average
    Ok(sum / T::from_usize(total).unwrap())
}

/// Parameters for the middle-`1/q` Cantor measure coefficients.
#[derive(Debug, Clone, Copy)]
pub struct CantorParams {
    /// Scale of the Cantor construction, `q ≥ 3`.
    pub q: u32,
    /// Truncation order of the infinite product, `K ≥ 1`.
    pub truncation: usize,
}

/// A truncated-product evaluation with its recorded tail bound.
#[derive(Debug, Clone, Copy)]
pub struct CantorCoefficient<T> {
    pub value: T,
    /// Bound on the truncation error: `Σ_{k>K} π|m|(q−1)q^{−k} = π|m|q^{−K}`.
    pub tail_bound: T,
}

/// `σ̂_q(m) = (−1)^m Π_{k≥1} cos(π m q^{−k}(1−q))`, truncated at `K` factors.
/// The truncation must satisfy `q^{−K}|m| < 1e−8`.
pub fn cantor_fourier<T: Real>(params: &CantorParams, m: i64) -> Result<CantorCoefficient<T>> {
    if params.q < 3 {
        return Err(Error::InvalidParameter("Cantor scale needs q ≥ 3".into()));
    }
    if params.truncation < 1 {
        return Err(Error::InvalidParameter("need at least one product factor".into()));
    }
    let q = T::from_u32(params.q).unwrap();
    let mf = T::from_i64(m).unwrap();
    let tail_scale = Float::powi(q, -(params.truncation as i32)) * Float::abs(mf);
    if tail_scale >= real(1e-8) {
        return Err(Error::InvalidParameter(format!(
            "truncation too short: q^(−K)|m| = {tail_scale} ≥ 1e−8"
        )));
    }
    let one_minus_q = T::one() - q;
    let mut product = T::one();
    let mut q_pow = T::one();
    for _ in 0..params.truncation {
        q_pow /= q;
        product *= Float::cos(T::PI() * mf * q_pow * one_minus_q);
    }
    let sign = if m.rem_euclid(2) == 0 { T::one() } else { -T::one() };
    Ok(CantorCoefficient {
        value: sign * product,
        tail_bound: T::PI() * tail_scale,
    })
}

/// Spectral data of the Cantor measure on the window `{−w, …, w}`.
pub fn cantor_spectral_data<T: Real>(params: &CantorParams, w: i64) -> Result<SpectralData<T>> {
    let lambda = crate::torus::FrequencySet::range_1d(-w, w);
    let values = lambda
        .iter()
        .map(|m| {
            cantor_fourier(params, m.components()[0])
                .map(|c| Cplx::new(c.value, T::zero()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralData::new(lambda, values).expect("aligned"))
}

/// Coefficients of `√2 σ_S` for the anti-diagonal line `S = {x₁ + x₂ = 1}`:
/// `2` on the diagonal frequencies `m₁ = m₂`, `0` elsewhere.
pub fn surface_fourier_diagonal<T: Real>(m: &Frequency) -> T {
    assert_eq!(m.dim(), 2, "diagonal surface measure lives on 𝕋²");
    let c = m.components();
    if c[0] == c[1] {
        real(2.0)
    } else {
        T::zero()
    }
}

/// Coefficients of the sum of surface measures on the two horizontal lines
/// `x₂ = 0` and `x₂ = 1/2`: `δ_{m₁,0} (1 + (−1)^{m₂})`.
pub fn surface_fourier_two_lines<T: Real>(m: &Frequency) -> T {
    assert_eq!(m.dim(), 2, "two-line measure lives on 𝕋²");
    let c = m.components();
    if c[0] != 0 {
        return T::zero();
    }
    if c[1].rem_euclid(2) == 0 {
        real(2.0)
    } else {
        T::zero()
    }
}
