//! Points on the d-dimensional torus `(ℝ/ℤ)^d` and integer frequencies.

use crate::error::{Error, Result};
use crate::scalar::Real;
use std::fmt;

/// Default tolerance for deciding that two torus points coincide.
pub const POINT_EQ_TOL: f64 = 1e-9;

/// Reduces a scalar into `[0, 1)`.
pub fn wrap_unit<T: Real>(x: T) -> T {
    let mut f = x.fract();
    if f < T::zero() {
        f += T::one();
    }
    // fract() of a slightly negative number can round up to exactly 1.0
    if f >= T::one() {
        f -= T::one();
    }
    if f == T::zero() {
        T::zero() // normalize -0.0
    } else {
        f
    }
}

/// Distance between two reals on the circle `ℝ/ℤ`.
pub fn circle_dist<T: Real>(a: T, b: T) -> T {
    let t = wrap_unit(a - b);
    t.min(T::one() - t)
}

/// A point of `𝕋^d`, stored with every coordinate reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> TorusPoint<T> {
    pub fn new(coords: Vec<T>) -> Self {
        assert!(!coords.is_empty(), "torus dimension must be at least 1");
        Self {
            coords: coords.into_iter().map(wrap_unit).collect(),
        }
    }

    pub fn new_1d(x: T) -> Self {
        Self::new(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// Wraparound-aware `ℓ∞` distance.
    pub fn dist_linf(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .fold(T::zero(), |acc, (&a, &b)| acc.max(circle_dist(a, b)))
    }

    /// Coordinate-wise equality modulo 1 within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dim() == other.dim() && self.dist_linf(other) <= tol
    }

    /// Translation on the torus.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// Concatenates coordinates, embedding into `𝕋^{d1+d2}`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Self { coords }
    }
}

impl<T: Real> fmt::Display for TorusPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An integer frequency `m ∈ ℤ^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frequency {
    components: Vec<i64>,
}

impl Frequency {
    pub fn new(components: Vec<i64>) -> Self {
        assert!(!components.is_empty(), "frequency dimension must be at least 1");
        Self { components }
    }

    pub fn new_1d(m: i64) -> Self {
        Self::new(vec![m])
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn norm_linf(&self) -> i64 {
        self.components.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    /// `m · x` as a scalar.
    pub fn dot<T: Real>(&self, x: &TorusPoint<T>) -> T {
        assert_eq!(self.dim(), x.dim());
        self.components
            .iter()
            .zip(x.coords().iter())
            .fold(T::zero(), |acc, (&m, &c)| acc + T::from_i64(m).unwrap() * c)
    }

    pub fn add(&self, other: &Frequency) -> Frequency {
        assert_eq!(self.dim(), other.dim());
        Frequency::new(
            self.components
                .iter()
                .zip(other.components.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Frequency) -> Frequency {
        assert_eq!(self.dim(), other.dim());
        Frequency::new(
            self.components
                .iter()
                .zip(other.components.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Frequency {
        Frequency::new(self.components.iter().map(|c| -c).collect())
    }

    /// Concatenates components, embedding into `ℤ^{d1+d2}`.
    pub fn concat(&self, other: &Frequency) -> Frequency {
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        Frequency { components }
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 1 {
            return write!(f, "{}", self.components[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite, ordered set of pairwise distinct frequencies `Λ ⊂ ℤ^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencySet {
    dim: usize,
    elems: Vec<Frequency>,
}

impl FrequencySet {
    pub fn new(elems: Vec<Frequency>) -> Result<Self> {
        let first = elems
            .first()
            .ok_or_else(|| Error::InvalidParameter("frequency set must be nonempty".into()))?;
        let dim = first.dim();
        for m in &elems {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.dim(),
                });
            }
        }
        for i in 0..elems.len() {
            for j in (i + 1)..elems.len() {
                if elems[i] == elems[j] {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate frequency {} in set",
                        elems[i]
                    )));
                }
            }
        }
        Ok(Self { dim, elems })
    }

    /// The 1-d window `{lo, lo+1, …, hi}`.
    pub fn range_1d(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        Self::new((lo..=hi).map(Frequency::new_1d).collect()).unwrap()
    }

    /// The full d-dimensional box `{lo, …, hi}^d`.
    pub fn box_nd(d: usize, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi && d >= 1);
        let mut elems = vec![vec![]];
        for _ in 0..d {
            let mut next = Vec::new();
            for prefix in &elems {
                for v in lo..=hi {
                    let mut p: Vec<i64> = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            elems = next;
        }
        Self::new(elems.into_iter().map(Frequency::new).collect()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn iter(&self) -> impl Iterator<Item = &Frequency> {
        self.elems.iter()
    }

    pub fn get(&self, i: usize) -> &Frequency {
        &self.elems[i]
    }

    pub fn index_of(&self, m: &Frequency) -> Option<usize> {
        self.elems.iter().position(|e| e == m)
    }

    pub fn contains(&self, m: &Frequency) -> bool {
        self.index_of(m).is_some()
    }

    /// Largest `|m_i|` over all members and coordinates.
    pub fn max_abs(&self) -> i64 {
        self.elems.iter().map(|m| m.norm_linf()).max().unwrap_or(0)
    }

    /// Removes selected frequencies (used to punch holes in boxes).
    pub fn without(&self, removed: &[Frequency]) -> Result<Self> {
        Self::new(
            self.elems
                .iter()
                .filter(|m| !removed.contains(m))
                .cloned()
                .collect(),
        )
    }

    /// Shifts every member by `n`.
    pub fn shifted(&self, n: &Frequency) -> Self {
        Self {
            dim: self.dim,
            elems: self.elems.iter().map(|m| m.add(n)).collect(),
        }
    }

    /// Cartesian product `Λ₁ × Λ₂ ⊂ ℤ^{d1+d2}`.
    pub fn product(&self, other: &FrequencySet) -> Self {
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for a in &self.elems {
            for b in &other.elems {
                elems.push(a.concat(b));
            }
        }
        Self {
            dim: self.dim + other.dim,
            elems,
        }
    }
}
