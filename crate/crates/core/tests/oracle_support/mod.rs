//! Independent oracles for the regression suites. Everything here is
//! deliberately implemented with different algorithms than the library:
//! a dense two-phase simplex for linear programs, a phase-lift of the
//! complex ℓ¹ problem onto an LP, exact rank over cyclotomic fields, and
//! adjugate-based rational inversion.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use minext::measure::SpectralData;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

type Rat = Ratio<BigInt>;

// ---------------------------------------------------------------------------
// dense two-phase simplex with an explicit basis inverse
// ---------------------------------------------------------------------------

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

/// Minimizes `Σ_j x_j` subject to `A x = b`, `x ≥ 0`, with the columns of
/// `A` produced on demand by `column` (all costs are 1 — the only form the
/// oracles need). Returns the optimal value.
pub fn simplex_min_unit_cost(
    rows: usize,
    cols: usize,
    column: &dyn Fn(usize, &mut [f64]),
    b: &[f64],
) -> Result<f64, String> {
    assert_eq!(b.len(), rows);
    // orient rows so the right-hand side is nonnegative
    let flip: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    let rhs: Vec<f64> = b.iter().zip(&flip).map(|(&v, &s)| v * s).collect();

    let col_buf = |j: usize, buf: &mut [f64], flip: &[f64]| {
        column(j, buf);
        for (v, s) in buf.iter_mut().zip(flip) {
            *v *= *s;
        }
    };

    // artificial variables occupy ids cols..cols+rows
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let mut b_inv: Vec<Vec<f64>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut x_b = rhs.clone();

    let mut scratch = vec![0.0; rows];
    for phase in [1, 2] {
        let cost_of = |j: usize| -> f64 {
            if phase == 1 {
                if j >= cols { 1.0 } else { 0.0 }
            } else {
                if j >= cols { f64::INFINITY } else { 1.0 }
            }
        };
        let max_iter = 200 * (rows + 1) * 20;
        let mut iter = 0usize;
        loop {
            iter += 1;
            if iter > max_iter {
                return Err(format!("simplex exceeded {max_iter} iterations in phase {phase}"));
            }
            let bland = iter > 50 * (rows + 1);

            // y = c_B B⁻¹
            let mut y = vec![0.0; rows];
            for (i, &bi) in basis.iter().enumerate() {
                let c = cost_of(bi);
                if c != 0.0 && c.is_finite() {
                    for r in 0..rows {
                        y[r] += c * b_inv[i][r];
                    }
                }
            }
            // price the real columns (artificials never re-enter)
            let mut entering: Option<(usize, f64)> = None;
            'pricing: for j in 0..cols {
                col_buf(j, &mut scratch, &flip);
                let mut rc = cost_of(j);
                for r in 0..rows {
                    rc -= y[r] * scratch[r];
                }
                if rc < -COST_TOL {
                    match (&entering, bland) {
                        (_, true) => {
                            entering = Some((j, rc));
                            break 'pricing;
                        }
                        (None, _) => entering = Some((j, rc)),
                        (Some((_, best)), _) if rc < *best => entering = Some((j, rc)),
                        _ => {}
                    }
                }
            }
            let Some((enter, _)) = entering else {
                break; // phase optimal
            };

            col_buf(enter, &mut scratch, &flip);
            // direction d = B⁻¹ a_e
            let mut d = vec![0.0; rows];
            for i in 0..rows {
                let mut acc = 0.0;
                for r in 0..rows {
                    acc += b_inv[i][r] * scratch[r];
                }
                d[i] = acc;
            }
            // ratio test (smallest index on ties keeps Bland's rule honest)
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..rows {
                if d[i] > PIVOT_TOL {
                    let ratio = x_b[i] / d[i];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - 1e-12 || (ratio < lr + 1e-12 && basis[i] < basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((leave_row, step)) = leave else {
                return Err("unbounded linear program".into());
            };

            // pivot: update the inverse and the basic solution
            let pivot = d[leave_row];
            for r in 0..rows {
                b_inv[leave_row][r] /= pivot;
            }
            x_b[leave_row] = step;
            for i in 0..rows {
                if i != leave_row && d[i].abs() > 0.0 {
                    let f = d[i];
                    for r in 0..rows {
                        b_inv[i][r] -= f * b_inv[leave_row][r];
                    }
                    x_b[i] -= f * step;
                    if x_b[i] < 0.0 {
                        x_b[i] = 0.0;
                    }
                }
            }
            basis[leave_row] = enter;
        }

        if phase == 1 {
            let infeas: f64 = basis
                .iter()
                .zip(&x_b)
                .filter(|(&bi, _)| bi >= cols)
                .map(|(_, &v)| v)
                .sum();
            if infeas > 1e-7 {
                return Err(format!("infeasible program (artificial mass {infeas})"));
            }
            // drive zero-level artificials out of the basis where possible
            for i in 0..rows {
                if basis[i] >= cols {
                    let mut replaced = false;
                    for j in 0..cols {
                        if basis.contains(&j) {
                            continue;
                        }
                        col_buf(j, &mut scratch, &flip);
                        let mut dij = 0.0;
                        for r in 0..rows {
                            dij += b_inv[i][r] * scratch[r];
                        }
                        if dij.abs() > 1e-7 {
                            // pivot the artificial out at zero level
                            for r in 0..rows {
                                b_inv[i][r] /= dij;
                            }
                            let d_col: Vec<f64> = (0..rows)
                                .map(|k| {
                                    let mut acc = 0.0;
                                    for r in 0..rows {
                                        acc += if k == i { 0.0 } else { b_inv[k][r] * scratch[r] };
                                    }
                                    acc
                                })
                                .collect();
                            for k in 0..rows {
                                if k != i && d_col[k].abs() > 0.0 {
                                    for r in 0..rows {
                                        b_inv[k][r] -= d_col[k] * b_inv[i][r];
                                    }
                                }
                            }
                            basis[i] = j;
                            replaced = true;
                            break;
                        }
                    }
                    if !replaced && x_b[i] > 1e-9 {
                        return Err("artificial stuck at positive level".into());
                    }
                }
            }
        }
    }

    Ok(basis
        .iter()
        .zip(&x_b)
        .filter(|(&bi, _)| bi < cols)
        .map(|(_, &v)| v)
        .sum())
}

// ---------------------------------------------------------------------------
// phase-lift oracle for complex basis pursuit on a 1-d grid
// ---------------------------------------------------------------------------

/// Independent value of `min ‖y‖₁ s.t. ŷ = data on Λ` over the `n_grid`
/// uniform grid, by lifting each complex weight onto `phases` nonnegative
/// phase rays and solving the resulting LP with the simplex above.
///
/// The lift is an inner approximation of the complex unit ball, so the LP
/// value lies in `[ε_N, ε_N · sec(π/phases)]`.
pub fn bp_phase_lift_oracle(data: &SpectralData<f64>, n_grid: usize, phases: usize) -> f64 {
    assert_eq!(data.dim(), 1, "the LP oracle covers d = 1");
    let j_count = data.lambda().len();
    let rows = 2 * j_count;
    let cols = n_grid * phases;
    let freqs: Vec<i64> = data
        .lambda()
        .iter()
        .map(|m| m.components()[0])
        .collect();

    let column = move |j: usize, buf: &mut [f64]| {
        let k = j / phases;
        let p = j % phases;
        let phase = 2.0 * std::f64::consts::PI * p as f64 / phases as f64;
        for (r, &m) in freqs.iter().enumerate() {
            let angle = phase - 2.0 * std::f64::consts::PI * (m as f64) * (k as f64) / (n_grid as f64);
            buf[2 * r] = angle.cos();
            buf[2 * r + 1] = angle.sin();
        }
    };
    let mut b = vec![0.0; rows];
    for (r, v) in data.values().iter().enumerate() {
        b[2 * r] = v.re;
        b[2 * r + 1] = v.im;
    }
    simplex_min_unit_cost(rows, cols, &column, &b).expect("oracle LP must solve")
}

// ---------------------------------------------------------------------------
// exact arithmetic in the cyclotomic field ℚ(ζ_N)
// ---------------------------------------------------------------------------

fn rat_i(v: i64) -> Rat {
    Ratio::from_integer(BigInt::from(v))
}

/// Dense polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly(pub Vec<Rat>);

impl QPoly {
    fn trim(mut v: Vec<Rat>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        QPoly(v)
    }

    fn zero() -> Self {
        QPoly(Vec::new())
    }

    fn one() -> Self {
        QPoly(vec![rat_i(1)])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        Self::trim(v)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] -= c;
        }
        Self::trim(v)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trim(v)
    }

    fn scale(&self, c: &Rat) -> Self {
        Self::trim(self.0.iter().map(|a| a * c).collect())
    }

    /// Division with remainder.
    fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero());
        let mut rem = self.0.clone();
        let dn = divisor.0.len();
        if rem.len() < dn {
            return (Self::zero(), Self::trim(rem));
        }
        let mut quo = vec![Rat::zero(); rem.len() - dn + 1];
        let lead = divisor.0.last().unwrap().clone();
        for i in (0..quo.len()).rev() {
            let c = rem[i + dn - 1].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quo[i] = c.clone();
            for (j, d) in divisor.0.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        (Self::trim(quo), Self::trim(rem))
    }

    /// Extended gcd: returns (g, s, t) with `s·self + t·other = g`.
    fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }
}

/// Exact arithmetic modulo the N-th cyclotomic polynomial.
pub struct CycloField {
    pub n: usize,
    pub modulus: QPoly,
}

impl CycloField {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            modulus: cyclotomic_polynomial(n),
        }
    }

    fn reduce(&self, p: &QPoly) -> QPoly {
        p.divmod(&self.modulus).1
    }

    /// `ζ_N^k` as a field element.
    pub fn zeta_pow(&self, k: i64) -> QPoly {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = rat_i(1);
        self.reduce(&QPoly::trim(v))
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &QPoly) -> Option<QPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.xgcd(&self.modulus);
        if g.deg() != 0 {
            return None; // not invertible (impossible in a field)
        }
        let lead = g.0[0].clone();
        Some(self.reduce(&s.scale(&(Rat::one() / lead))))
    }

    /// Exact rank of a matrix over the field.
    pub fn rank(&self, matrix: &[Vec<QPoly>]) -> usize {
        let rows = matrix.len();
        if rows == 0 {
            return 0;
        }
        let cols = matrix[0].len();
        let mut m: Vec<Vec<QPoly>> = matrix.to_vec();
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = self.inv(&m[row][col]).expect("nonzero is invertible");
            for c in col..cols {
                m[row][c] = self.mul(&m[row][c], &inv);
            }
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..cols {
                        let sub = self.mul(&f, &m[row][c]);
                        m[r][c] = m[r][c].sub(&sub);
                    }
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }
}

/// Φ_N by dividing `x^N − 1` by every proper-divisor cyclotomic.
pub fn cyclotomic_polynomial(n: usize) -> QPoly {
    assert!(n >= 1);
    let mut x_n_minus_1 = vec![Rat::zero(); n + 1];
    x_n_minus_1[0] = -rat_i(1);
    x_n_minus_1[n] = rat_i(1);
    let mut phi = QPoly::trim(x_n_minus_1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = phi.divmod(&cyclotomic_polynomial(d));
            assert!(r.is_zero(), "cyclotomic division must be exact");
            phi = q;
        }
    }
    phi
}

// ---------------------------------------------------------------------------
// adjugate-based exact inverse (independent of the library's Gauss-Jordan)
// ---------------------------------------------------------------------------

fn rat_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    match n {
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut det = Rat::zero();
            for j in 0..n {
                let minor: Vec<Vec<Rat>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * rat_det(&minor);
                if j % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
    }
}

/// Exact inverse through the adjugate; `None` when singular.
pub fn adjugate_inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let det = rat_det(m);
    if det.is_zero() {
        return None;
    }
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Rat>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let cof = if minor.is_empty() { rat_i(1) } else { rat_det(&minor) };
            let sign = if (i + j) % 2 == 0 { rat_i(1) } else { rat_i(-1) };
            inv[i][j] = sign * cof / det.clone();
        }
    }
    Some(inv)
}

// convenience for tests
pub fn rt(num: i64, den: i64) -> Rat {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}
