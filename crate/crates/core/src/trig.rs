//! Trigonometric polynomials `f(x) = Σ_{m∈Λ} c_m e^{2πi m·x}`.

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::scalar::{unit_phase, Cplx, Real};
use crate::torus::{Frequency, FrequencySet, TorusPoint};

/// A trigonometric polynomial with complex coefficients on a finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial<T> {
    support: FrequencySet,
    coeffs: Vec<Cplx<T>>,
}

impl<T: Real> TrigPolynomial<T> {
    pub fn new(support: FrequencySet, coeffs: Vec<Cplx<T>>) -> Result<Self> {
        if coeffs.len() != support.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                support.len(),
                coeffs.len()
            )));
        }
        Ok(Self { support, coeffs })
    }

    /// The constant polynomial `c` (in dimension `d`).
    pub fn constant(d: usize, c: Cplx<T>) -> Self {
        let support = FrequencySet::new(vec![Frequency::new(vec![0; d])]).unwrap();
        Self { support, coeffs: vec![c] }
    }

    /// `cos(2π k·x)` as a polynomial on `{−k, k}` (or `{0}` if `k = 0`).
    pub fn cosine(k: &Frequency) -> Self {
        if k.is_zero() {
            return Self::constant(k.dim(), Cplx::new(T::one(), T::zero()));
        }
        let half = Cplx::new(T::from_f64(0.5).unwrap(), T::zero());
        let support = FrequencySet::new(vec![k.clone(), k.neg()]).unwrap();
        Self { support, coeffs: vec![half, half] }
    }

    pub fn support(&self) -> &FrequencySet {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    pub fn coefficients(&self) -> &[Cplx<T>] {
        &self.coeffs
    }

    /// The coefficient at `m` (zero when `m` is not in the support).
    pub fn coefficient(&self, m: &Frequency) -> Cplx<T> {
        match self.support.index_of(m) {
            Some(i) => self.coeffs[i],
            None => Cplx::new(T::zero(), T::zero()),
        }
    }

    /// `f(x) = Σ_m c_m e^{2πi m·x}`.
    pub fn eval(&self, x: &TorusPoint<T>) -> Cplx<T> {
        assert_eq!(x.dim(), self.dim());
        let mut acc = Cplx::new(T::zero(), T::zero());
        for (m, c) in self.support.iter().zip(self.coeffs.iter()) {
            acc += *c * unit_phase(m.dot(x));
        }
        acc
    }

    /// `⟨f, μ⟩ = Σ_k f(x_k) conj(a_k)`.
    pub fn inner_product(&self, mu: &DiscreteMeasure<T>) -> Cplx<T> {
        assert_eq!(mu.dim(), self.dim());
        let mut acc = Cplx::new(T::zero(), T::zero());
        for (x, w) in mu.atoms() {
            acc += self.eval(x) * w.conj();
        }
        acc
    }

    /// Largest `|f|` over the uniform grid with `n` points per axis.
    pub fn sup_norm_on_grid(&self, n: usize) -> T {
        assert!(n >= 1);
        let d = self.dim();
        let mut max = T::zero();
        let mut idx = vec![0usize; d];
        loop {
            let x = TorusPoint::new(
                idx.iter()
                    .map(|&k| T::from_usize(k).unwrap() / T::from_usize(n).unwrap())
                    .collect(),
            );
            max = max.max(self.eval(&x).norm());
            // advance the multi-index
            let mut axis = d;
            while axis > 0 {
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < n {
                    break;
                }
                idx[axis] = 0;
                if axis == 0 {
                    return max;
                }
            }
        }
    }

    /// Smallest `Re f` over the uniform grid with `n` points per axis.
    pub fn min_real_on_grid(&self, n: usize) -> T {
        assert!(n >= 1 && self.dim() == 1, "grid minimum used for 1-d densities");
        let mut min = T::infinity();
        for k in 0..n {
            let x = TorusPoint::new_1d(T::from_usize(k).unwrap() / T::from_usize(n).unwrap());
            min = min.min(self.eval(&x).re);
        }
        min
    }

    /// Scales all coefficients.
    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self {
            support: self.support.clone(),
            coeffs: self.coeffs.iter().map(|z| *z * c).collect(),
        }
    }

    /// The polynomial viewed as spectral data (`f̂(m) = c_m` on its support).
    pub fn as_spectral_data(&self) -> SpectralData<T> {
        SpectralData::new(self.support.clone(), self.coeffs.clone()).expect("aligned")
    }
}

impl<T: Real> SpectralData<T> {
    /// The band-limited density `x ↦ Σ_{m∈Λ} μ̂(m) e^{2πi m·x}`.
    ///
    /// This is the inverse transform of the data extended by zero, i.e. the
    /// density of the absolutely continuous extrapolation `ν` built from the
    /// data alone.
    pub fn fourier_partial_sum(&self) -> TrigPolynomial<T> {
        TrigPolynomial::new(self.lambda().clone(), self.values().to_vec()).expect("aligned")
    }
}
