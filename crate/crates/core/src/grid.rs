//! Uniform torus grids and the partial Fourier forward matrix.

use crate::error::{Error, Result};
use crate::scalar::{unit_phase, Cplx, Real};
use crate::torus::{FrequencySet, TorusPoint};

/// A uniform grid `{k/N : 0 ≤ k < N}^d` on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    dim: usize,
    n_per_axis: usize,
}

impl GridSpec {
    pub fn new(dim: usize, n_per_axis: usize) -> Result<Self> {
        if dim == 0 || n_per_axis == 0 {
            return Err(Error::InvalidParameter(
                "grid dimension and size must be positive".into(),
            ));
        }
        Ok(Self { dim, n_per_axis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_per_axis(&self) -> usize {
        self.n_per_axis
    }

    pub fn total_points(&self) -> usize {
        self.n_per_axis.pow(self.dim as u32)
    }

    /// Multi-index of the flat index (row-major, first axis slowest).
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.dim];
        for axis in (0..self.dim).rev() {
            idx[axis] = flat % self.n_per_axis;
            flat /= self.n_per_axis;
        }
        idx
    }

    /// The grid point `k/N` for a flat index.
    pub fn point<T: Real>(&self, flat: usize) -> TorusPoint<T> {
        let n = T::from_usize(self.n_per_axis).unwrap();
        TorusPoint::new(
            self.multi_index(flat)
                .into_iter()
                .map(|k| T::from_usize(k).unwrap() / n)
                .collect(),
        )
    }

    /// Rejects frequency sets with members that collide modulo `N`.
    pub fn check_no_aliasing(&self, lambda: &FrequencySet) -> Result<()> {
        if lambda.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: lambda.dim(),
            });
        }
        let n = self.n_per_axis as i64;
        let reduce = |m: &[i64]| -> Vec<i64> { m.iter().map(|&v| v.rem_euclid(n)).collect() };
        for i in 0..lambda.len() {
            for j in (i + 1)..lambda.len() {
                if reduce(lambda.get(i).components()) == reduce(lambda.get(j).components()) {
                    return Err(Error::AliasingCollision(
                        lambda.get(i).to_string(),
                        lambda.get(j).to_string(),
                        self.n_per_axis,
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The matrix `A` with entries `e^{−2πi m·k/N}`, rows indexed by `Λ` and
/// columns by grid points. Under the no-aliasing invariant its rows are
/// orthogonal: `A A* = N^d I`.
#[derive(Debug, Clone)]
pub struct ForwardMatrix<T> {
    lambda: FrequencySet,
    grid: GridSpec,
    /// Row-major entries, rows = frequencies, columns = grid points.
    entries: Vec<Cplx<T>>,
}

/// Builds the forward matrix, rejecting aliasing collisions.
pub fn build_forward_matrix<T: Real>(
    lambda: &FrequencySet,
    grid: GridSpec,
) -> Result<ForwardMatrix<T>> {
    grid.check_no_aliasing(lambda)?;
    let n = grid.n_per_axis() as i64;
    let ncols = grid.total_points();
    let inv_n = T::one() / T::from_i64(n).unwrap();
    let mut entries = Vec::with_capacity(lambda.len() * ncols);
    for m in lambda.iter() {
        for col in 0..ncols {
            // m·k reduced modulo N keeps the phase argument small and exact
            let idx = grid.multi_index(col);
            let mut dot: i64 = 0;
            for (mc, k) in m.components().iter().zip(idx.iter()) {
                dot = (dot + (mc.rem_euclid(n)) * (*k as i64)) % n;
            }
            let t = T::from_i64(dot).unwrap() * inv_n;
            entries.push(unit_phase(-t));
        }
    }
    Ok(ForwardMatrix {
        lambda: lambda.clone(),
        grid,
        entries,
    })
}

impl<T: Real> ForwardMatrix<T> {
    pub fn nrows(&self) -> usize {
        self.lambda.len()
    }

    pub fn ncols(&self) -> usize {
        self.grid.total_points()
    }

    pub fn lambda(&self) -> &FrequencySet {
        &self.lambda
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn entry(&self, row: usize, col: usize) -> Cplx<T> {
        self.entries[row * self.ncols() + col]
    }

    /// `A y` for a grid vector `y`.
    pub fn apply(&self, y: &[Cplx<T>]) -> Vec<Cplx<T>> {
        debug_assert_eq!(y.len(), self.ncols());
        let ncols = self.ncols();
        (0..self.nrows())
            .map(|r| {
                let row = &self.entries[r * ncols..(r + 1) * ncols];
                let mut acc = Cplx::new(T::zero(), T::zero());
                for (a, v) in row.iter().zip(y.iter()) {
                    acc += *a * *v;
                }
                acc
            })
            .collect()
    }

    /// `A* u` for a data vector `u`; component `k` equals `Σ_m conj(A_{mk}) u_m`,
    /// i.e. the trigonometric polynomial with coefficients `u` evaluated at `k/N`.
    pub fn apply_adjoint(&self, u: &[Cplx<T>]) -> Vec<Cplx<T>> {
        debug_assert_eq!(u.len(), self.nrows());
        let ncols = self.ncols();
        let mut out = vec![Cplx::new(T::zero(), T::zero()); ncols];
        for (r, um) in u.iter().enumerate() {
            let row = &self.entries[r * ncols..(r + 1) * ncols];
            for (o, a) in out.iter_mut().zip(row.iter()) {
                *o += a.conj() * *um;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Frequency;

    #[test]
    fn single_zero_row_is_all_ones() {
        let lam = FrequencySet::new(vec![Frequency::new_1d(0)]).unwrap();
        let a = build_forward_matrix::<f64>(&lam, GridSpec::new(1, 4).unwrap()).unwrap();
        for col in 0..4 {
            assert!((a.entry(0, col) - Cplx::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn entry_matches_direct_evaluation() {
        let lam = FrequencySet::new(vec![Frequency::new_1d(1)]).unwrap();
        let a = build_forward_matrix::<f64>(&lam, GridSpec::new(1, 4).unwrap()).unwrap();
        // e^{−2πi·1·1/4} = −i
        assert!((a.entry(0, 1) - Cplx::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn aliasing_collision_is_rejected() {
        let lam = FrequencySet::range_1d(-1, 1);
        let err = build_forward_matrix::<f64>(&lam, GridSpec::new(1, 2).unwrap()).unwrap_err();
        match err {
            Error::AliasingCollision(a, b, n) => {
                assert_eq!(n, 2);
                assert!(a == "-1" || b == "-1");
            }
            other => panic!("expected aliasing error, got {other:?}"),
        }
    }

    #[test]
    fn rows_are_orthogonal() {
        let lam = FrequencySet::range_1d(-2, 2);
        let grid = GridSpec::new(1, 8).unwrap();
        let a = build_forward_matrix::<f64>(&lam, grid).unwrap();
        for r1 in 0..a.nrows() {
            for r2 in 0..a.nrows() {
                let mut dot = Cplx::new(0.0, 0.0);
                for c in 0..a.ncols() {
                    dot += a.entry(r1, c) * a.entry(r2, c).conj();
                }
                let expect = if r1 == r2 { 8.0 } else { 0.0 };
                assert!((dot - Cplx::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn grid_points_enumerate_row_major() {
        let grid = GridSpec::new(2, 3).unwrap();
        let p: TorusPoint<f64> = grid.point(5); // multi-index (1, 2)
        assert_eq!(p.coords(), &[1.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(grid.total_points(), 9);
    }
}
