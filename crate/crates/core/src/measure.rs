//! Discrete measures on the torus and their spectral data.

use crate::error::{Error, Result};
use crate::scalar::{real, unit_phase, Cplx, Real};
use crate::torus::{Frequency, FrequencySet, TorusPoint, POINT_EQ_TOL};

/// Atoms closer than this (wraparound `ℓ∞`) are merged during construction.
pub const MERGE_TOL: f64 = 1e-9;
/// Atoms with modulus below this are pruned during construction.
pub const PRUNE_TOL: f64 = 1e-12;

/// A finite linear combination of Dirac measures `Σ_k a_k δ_{x_k}`.
///
/// Atom locations are pairwise distinct and zero atoms are pruned, so
/// `tv_norm` is always the plain sum of weight moduli. Values are immutable;
/// every operator returns a new measure.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure<T> {
    dim: usize,
    atoms: Vec<(TorusPoint<T>, Cplx<T>)>,
}

impl<T: Real> DiscreteMeasure<T> {
    /// Builds a measure, merging coincident atoms and pruning zero weights.
    pub fn from_atoms(dim: usize, atoms: impl IntoIterator<Item = (TorusPoint<T>, Cplx<T>)>) -> Self {
        let merge_tol = real::<T>(MERGE_TOL);
        let prune_tol = real::<T>(PRUNE_TOL);
        let mut merged: Vec<(TorusPoint<T>, Cplx<T>)> = Vec::new();
        for (x, w) in atoms {
            assert_eq!(x.dim(), dim, "atom dimension must match measure dimension");
            match merged.iter_mut().find(|(y, _)| y.approx_eq(&x, merge_tol)) {
                Some((_, wy)) => *wy += w,
                None => merged.push((x, w)),
            }
        }
        merged.retain(|(_, w)| w.norm() >= prune_tol);
        Self { dim, atoms: merged }
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, atoms: Vec::new() }
    }

    /// The unit Dirac measure `δ_x`.
    pub fn dirac(x: TorusPoint<T>) -> Self {
        let dim = x.dim();
        Self::from_atoms(dim, [(x, Cplx::new(T::one(), T::zero()))])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(TorusPoint<T>, Cplx<T>)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total variation norm `Σ_k |a_k|`.
    pub fn tv_norm(&self) -> T {
        self.atoms.iter().fold(T::zero(), |s, (_, w)| s + w.norm())
    }

    /// `μ̂(m) = Σ_k a_k e^{−2πi m·x_k}` for every `m ∈ Λ`.
    pub fn fourier_transform(&self, lambda: &FrequencySet) -> Result<SpectralData<T>> {
        if lambda.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: lambda.dim(),
            });
        }
        let values = lambda
            .iter()
            .map(|m| self.fourier_coefficient(m))
            .collect();
        Ok(SpectralData::new(lambda.clone(), values).expect("aligned by construction"))
    }

    /// A single Fourier coefficient `μ̂(m)`.
    pub fn fourier_coefficient(&self, m: &Frequency) -> Cplx<T> {
        assert_eq!(m.dim(), self.dim);
        let mut acc = Cplx::new(T::zero(), T::zero());
        for (x, w) in &self.atoms {
            acc += *w * unit_phase(-m.dot(x));
        }
        acc
    }

    /// Translation `T_y μ(x) = μ(x − y)`: atoms move to `x_k + y`.
    pub fn translate(&self, y: &TorusPoint<T>) -> Self {
        assert_eq!(y.dim(), self.dim);
        Self::from_atoms(
            self.dim,
            self.atoms.iter().map(|(x, w)| (x.add(y), *w)),
        )
    }

    /// Modulation `M_n μ(x) = e^{2πi n·x} μ(x)`: weights pick up phases.
    pub fn modulate(&self, n: &Frequency) -> Self {
        assert_eq!(n.dim(), self.dim);
        Self::from_atoms(
            self.dim,
            self.atoms
                .iter()
                .map(|(x, w)| (x.clone(), *w * unit_phase(n.dot(x)))),
        )
    }

    /// Convolution on the torus group; coincident output atoms merge.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for (x, a) in &self.atoms {
            for (y, b) in &other.atoms {
                atoms.push((x.add(y), *a * *b));
            }
        }
        Ok(Self::from_atoms(self.dim, atoms))
    }

    /// Product measure `μ₁ × μ₂` on `𝕋^{d1+d2}`.
    pub fn product(&self, other: &Self) -> Self {
        let dim = self.dim + other.dim;
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for (x, a) in &self.atoms {
            for (y, b) in &other.atoms {
                atoms.push((x.concat(y), *a * *b));
            }
        }
        Self::from_atoms(dim, atoms)
    }

    /// Pointwise sum of measures (atoms merged).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(Self::from_atoms(
            self.dim,
            self.atoms.iter().chain(other.atoms.iter()).cloned(),
        ))
    }

    /// Scales every weight by a complex constant.
    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self::from_atoms(self.dim, self.atoms.iter().map(|(x, w)| (x.clone(), *w * c)))
    }

    /// Checks that every atom has (numerically) real nonnegative weight.
    pub fn is_positive(&self, tol: T) -> bool {
        self.atoms
            .iter()
            .all(|(_, w)| w.im.abs() <= tol && w.re >= -tol)
    }

    /// True when both measures carry the same atoms within the tolerances.
    pub fn approx_eq(&self, other: &Self, point_tol: T, weight_tol: T) -> bool {
        if self.dim != other.dim || self.atoms.len() != other.atoms.len() {
            return false;
        }
        let mut used = vec![false; other.atoms.len()];
        'outer: for (x, w) in &self.atoms {
            for (j, (y, v)) in other.atoms.iter().enumerate() {
                if !used[j] && x.approx_eq(y, point_tol) && (*w - *v).norm() <= weight_tol {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// Known Fourier data `μ̂|_Λ`: one complex value per frequency of `Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<T> {
    lambda: FrequencySet,
    values: Vec<Cplx<T>>,
}

impl<T: Real> SpectralData<T> {
    pub fn new(lambda: FrequencySet, values: Vec<Cplx<T>>) -> Result<Self> {
        if values.len() != lambda.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} spectral values, got {}",
                lambda.len(),
                values.len()
            )));
        }
        Ok(Self { lambda, values })
    }

    pub fn lambda(&self) -> &FrequencySet {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    pub fn value_at(&self, i: usize) -> Cplx<T> {
        self.values[i]
    }

    pub fn value(&self, m: &Frequency) -> Option<Cplx<T>> {
        self.lambda.index_of(m).map(|i| self.values[i])
    }

    /// `‖μ̂‖_{ℓ∞(Λ)}`.
    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |s, z| s.max(z.norm()))
    }

    pub fn is_zero(&self, tol: T) -> bool {
        self.values.iter().all(|z| z.norm() <= tol)
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self {
            lambda: self.lambda.clone(),
            values: self.values.iter().map(|z| *z * c).collect(),
        }
    }

    /// Data of `M_n μ` on `Λ + n`: same values indexed by shifted frequencies.
    pub fn shift_frequencies(&self, n: &Frequency) -> Self {
        Self {
            lambda: self.lambda.shifted(n),
            values: self.values.clone(),
        }
    }

    /// Tensor data of a product measure on `Λ₁ × Λ₂`.
    pub fn product(&self, other: &Self) -> Self {
        let lambda = self.lambda.product(&other.lambda);
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(*a * *b);
            }
        }
        Self { lambda, values }
    }

    /// `ℓ∞` distance to another data vector on the same `Λ` (requires equal sets).
    pub fn dist_inf(&self, other: &Self) -> Option<T> {
        if self.lambda != other.lambda {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(other.values.iter())
                .fold(T::zero(), |s, (a, b)| s.max((*a - *b).norm())),
        )
    }
}

/// Torus point equality tolerance as a scalar.
pub fn point_eq_tol<T: Real>() -> T {
    real::<T>(POINT_EQ_TOL)
}
