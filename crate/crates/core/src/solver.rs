//! Basis pursuit on the grid: `min ‖y‖₁ subject to A y = b` over complex
//! vectors, solved with a primal-dual first-order splitting (complex
//! soft-thresholding as the proximal map). The dual iterate converges to a
//! vector `u` with `‖A*u‖_∞ ≤ 1` and `Re⟨u, b⟩` equal to the optimal value,
//! which is exactly the coefficient vector of a dual certificate.

use crate::error::{Error, Result};
use crate::grid::{build_forward_matrix, ForwardMatrix, GridSpec};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::scalar::{cplx_dot, cplx_norm1, cplx_norm2, cplx_norm_inf, real, Cplx, Real};
use crate::torus::FrequencySet;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Options for [`basis_pursuit`].
#[derive(Debug, Clone)]
pub struct SolverOptions<T> {
    pub max_iterations: usize,
    /// Absolute `ℓ²` feasibility tolerance on `‖Ay − b‖`.
    pub feas_tol: T,
    /// Relative duality-gap tolerance.
    pub gap_tol: T,
    /// Product of the step sizes is `(step_scale / ‖A‖)²`; must stay below 1.
    pub step_scale: T,
    /// Ratio between the primal and dual step sizes.
    pub step_balance: T,
    /// Seed for the power-iteration estimate of `‖A‖`.
    pub seed: u64,
    /// Iterations between convergence checks.
    pub check_every: usize,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            max_iterations: 200_000,
            feas_tol: real(1e-9),
            gap_tol: real(1e-8),
            step_scale: real(0.98),
            step_balance: T::one(),
            seed: 0x5EED_0001,
            check_every: 50,
        }
    }
}

impl<T: Real> SolverOptions<T> {
    fn validate(&self) -> Result<()> {
        if self.feas_tol <= T::zero() || self.gap_tol <= T::zero() {
            return Err(Error::InvalidParameter("solver tolerances must be positive".into()));
        }
        if self.step_scale <= T::zero() || self.step_scale >= T::one() {
            return Err(Error::InvalidParameter(
                "step_scale must lie in (0, 1) for convergence".into(),
            ));
        }
        if self.step_balance <= T::zero() {
            return Err(Error::InvalidParameter("step_balance must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a basis-pursuit solve.
#[derive(Debug, Clone)]
pub struct SolveReport<T> {
    /// `ε_N = ‖y‖₁` of the primal iterate.
    pub epsilon_grid: T,
    /// Primal weights on the grid (flat row-major order).
    pub primal: Vec<Cplx<T>>,
    /// Dual vector on `Λ`, normalized so `‖A*u‖_∞ ≤ 1`.
    pub dual: Vec<Cplx<T>>,
    pub iterations: usize,
    /// `‖Ay − b‖₂` at exit.
    pub feas_residual: T,
    /// Relative duality gap at exit.
    pub gap: T,
    pub converged: bool,
}

/// Power-iteration estimate of the operator norm `‖A‖₂` (fixed seed, 20 iterations).
pub fn estimate_operator_norm<T: Real>(a: &ForwardMatrix<T>, seed: u64) -> T {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Cplx<T>> = (0..a.ncols())
        .map(|_| {
            Cplx::new(
                real::<T>(rng.gen_range(-1.0..1.0)),
                real::<T>(rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    let mut norm = T::one();
    for _ in 0..20 {
        let w = a.apply_adjoint(&a.apply(&v));
        norm = cplx_norm2(&w);
        if norm == T::zero() {
            return T::one();
        }
        let inv = T::one() / norm;
        v = w.into_iter().map(|z| z * inv).collect();
    }
    // ‖A*A‖ = ‖A‖²
    norm.sqrt()
}

fn soft_threshold<T: Real>(z: Cplx<T>, t: T) -> Cplx<T> {
    let n = z.norm();
    if n <= t {
        Cplx::new(T::zero(), T::zero())
    } else {
        z * Cplx::new((n - t) / n, T::zero())
    }
}

/// Solves `min ‖y‖₁ s.t. A y = b`.
///
/// Returns the primal grid vector, the certified dual vector, and the
/// optimal value estimate. Non-convergence is reported through
/// `converged = false` on the best iterate rather than an error.
pub fn basis_pursuit<T: Real>(
    a: &ForwardMatrix<T>,
    b: &SpectralData<T>,
    opts: &SolverOptions<T>,
) -> Result<SolveReport<T>> {
    opts.validate()?;
    if b.lambda() != a.lambda() {
        return Err(Error::InvalidParameter(
            "spectral data must be indexed exactly like the matrix rows".into(),
        ));
    }
    let rhs = b.values();
    let ncols = a.ncols();

    // b ≡ 0 short-circuits to the zero solution (avoids 0/0 in the gap).
    if rhs.iter().all(|z| z.norm() == T::zero()) {
        return Ok(SolveReport {
            epsilon_grid: T::zero(),
            primal: vec![Cplx::new(T::zero(), T::zero()); ncols],
            dual: vec![Cplx::new(T::zero(), T::zero()); a.nrows()],
            iterations: 0,
            feas_residual: T::zero(),
            gap: T::zero(),
            converged: true,
        });
    }

    let op_norm = estimate_operator_norm(a, opts.seed);
    let tau = opts.step_scale * opts.step_balance / op_norm;
    let sigma = opts.step_scale / (opts.step_balance * op_norm);

    let zero = Cplx::new(T::zero(), T::zero());
    let mut y = vec![zero; ncols];
    let mut u = vec![zero; a.nrows()];

    let mut best = SolveReport {
        epsilon_grid: T::zero(),
        primal: y.clone(),
        dual: u.clone(),
        iterations: 0,
        feas_residual: T::infinity(),
        gap: T::infinity(),
        converged: false,
    };

    let mut iter = 0usize;
    while iter < opts.max_iterations {
        // primal: proximal step on the ℓ¹ norm
        let grad = a.apply_adjoint(&u);
        let mut y_next = Vec::with_capacity(ncols);
        for (yk, gk) in y.iter().zip(grad.iter()) {
            y_next.push(soft_threshold(*yk - *gk * Cplx::new(tau, T::zero()), tau));
        }
        // dual: ascent on the extrapolated primal
        let mut y_bar = Vec::with_capacity(ncols);
        for (yn, yo) in y_next.iter().zip(y.iter()) {
            y_bar.push(*yn + *yn - *yo);
        }
        let ay = a.apply(&y_bar);
        for ((uk, ak), bk) in u.iter_mut().zip(ay.iter()).zip(rhs.iter()) {
            *uk += (*ak - *bk) * Cplx::new(sigma, T::zero());
        }
        y = y_next;
        iter += 1;

        if iter.is_multiple_of(opts.check_every) || iter == opts.max_iterations {
            let residual = {
                let ay = a.apply(&y);
                let diff: Vec<Cplx<T>> =
                    ay.iter().zip(rhs.iter()).map(|(x, b)| *x - *b).collect();
                cplx_norm2(&diff)
            };
            // certificate candidate: the negated dual, rescaled into the
            // feasible region ‖A*u‖_∞ ≤ 1
            let mut cert: Vec<Cplx<T>> = u.iter().map(|z| -*z).collect();
            let adj_inf = cplx_norm_inf(&a.apply_adjoint(&cert));
            if adj_inf > T::one() {
                let inv = T::one() / adj_inf;
                for c in cert.iter_mut() {
                    *c *= inv;
                }
            }
            let primal_value = cplx_norm1(&y);
            let dual_value = cplx_dot(&cert, rhs).re;
            let gap = (primal_value - dual_value).abs() / T::one().max(primal_value);

            if residual < best.feas_residual || (residual <= opts.feas_tol && gap < best.gap) {
                best = SolveReport {
                    epsilon_grid: primal_value,
                    primal: y.clone(),
                    dual: cert.clone(),
                    iterations: iter,
                    feas_residual: residual,
                    gap,
                    converged: false,
                };
            }
            if residual <= opts.feas_tol && gap <= opts.gap_tol {
                return Ok(SolveReport {
                    epsilon_grid: primal_value,
                    primal: y,
                    dual: cert,
                    iterations: iter,
                    feas_residual: residual,
                    gap,
                    converged: true,
                });
            }
        }
    }
    Ok(best)
}

/// Collects the primal grid vector into a discrete measure, dropping atoms
/// with `|weight| ≤ prune_tol`.
pub fn solution_to_measure<T: Real>(
    report: &SolveReport<T>,
    grid: GridSpec,
    prune_tol: T,
) -> DiscreteMeasure<T> {
    let atoms = report
        .primal
        .iter()
        .enumerate()
        .filter(|(_, w)| w.norm() > prune_tol)
        .map(|(k, w)| (grid.point::<T>(k), *w));
    DiscreteMeasure::from_atoms(grid.dim(), atoms)
}

/// Solves the same data on a chain of grids ordered by divisibility and
/// returns the sequence of `ε_N` values (non-increasing along the chain).
pub fn refine_epsilon<T: Real>(
    lambda: &FrequencySet,
    data: &SpectralData<T>,
    grids: &[GridSpec],
    opts: &SolverOptions<T>,
) -> Result<Vec<T>> {
    if grids.is_empty() {
        return Err(Error::InvalidParameter("need at least one grid".into()));
    }
    for w in grids.windows(2) {
        if w[1].n_per_axis() % w[0].n_per_axis() != 0 || w[0].dim() != w[1].dim() {
            return Err(Error::InvalidParameter(format!(
                "grids must be ordered by divisibility: {} does not divide {}",
                w[0].n_per_axis(),
                w[1].n_per_axis()
            )));
        }
    }
    let mut out = Vec::with_capacity(grids.len());
    for grid in grids {
        let a = build_forward_matrix(lambda, *grid)?;
        let report = basis_pursuit(&a, data, opts)?;
        if !report.converged {
            return Err(Error::NotConverged {
                iterations: report.iterations,
                feas: report.feas_residual.to_f64().unwrap_or(f64::NAN),
                gap: report.gap.to_f64().unwrap_or(f64::NAN),
            });
        }
        out.push(report.epsilon_grid);
    }
    Ok(out)
}

/// Convenience: build the matrix for `data.lambda()` and solve.
pub fn solve_on_grid<T: Real>(
    data: &SpectralData<T>,
    n_per_axis: usize,
    opts: &SolverOptions<T>,
) -> Result<(SolveReport<T>, GridSpec)> {
    let grid = GridSpec::new(data.dim(), n_per_axis)?;
    let a = build_forward_matrix(data.lambda(), grid)?;
    Ok((basis_pursuit(&a, data, opts)?, grid))
}
