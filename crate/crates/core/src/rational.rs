//! Exact rational linear algebra for the lattice constructions.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

pub type Rat = Ratio<BigInt>;

pub fn rat_int(n: i64) -> Rat {
    Ratio::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Reduces a rational into `[0, 1)`.
pub fn rat_mod1(r: &Rat) -> Rat {
    let f = r - r.floor();
    if f == Rat::one() {
        Rat::zero()
    } else {
        f
    }
}

/// True when the rational is an integer.
pub fn rat_is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Best rational approximation of `x` by continued fractions with the
/// denominator capped. Returns the approximant and the absolute error.
pub fn rational_approx(x: f64, max_den: u64) -> (Rat, f64) {
    assert!(x.is_finite());
    let mut a = x.floor() as i64;
    let mut frac = x - x.floor();
    // convergents p/q
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(a), BigInt::one());
    let cap = BigInt::from(max_den);
    for _ in 0..64 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        a = inv.floor() as i64;
        frac = inv - inv.floor();
        let p2 = BigInt::from(a) * &p1 + &p0;
        let q2 = BigInt::from(a) * &q1 + &q0;
        if q2 > cap {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    let approx = Ratio::new(p1, q1);
    let err = (x - rat_to_f64(&approx)).abs();
    (approx, err)
}

/// Exact rank of a rational matrix (rows of equal length).
pub fn rational_rank(matrix: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for c in col..cols {
            let v = m[row][c].clone() / inv.clone();
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let v = m[r][c].clone() - factor.clone() * m[row][c].clone();
                    m[r][c] = v;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// Solves `M x = rhs` exactly for a square invertible rational matrix.
/// Errors with the achieved rank when the matrix is singular.
pub fn solve_exact(matrix: &[Vec<Rat>], rhs_cols: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(rhs_cols.iter().all(|c| c.len() == n));
    let k = rhs_cols.len();

    // augmented Gauss-Jordan
    let mut aug: Vec<Vec<Rat>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for col in rhs_cols {
                r.push(col[i].clone());
            }
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero());
        let Some(p) = pivot else {
            return Err(Error::SingularLattice {
                rank: rational_rank(matrix),
                dim: n,
            });
        };
        aug.swap(col, p);
        let inv = aug[col][col].clone();
        for c in col..(n + k) {
            let v = aug[col][c].clone() / inv.clone();
            aug[col][c] = v;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..(n + k) {
                    let v = aug[r][c].clone() - factor.clone() * aug[col][c].clone();
                    aug[r][c] = v;
                }
            }
        }
    }

    Ok((0..k)
        .map(|j| (0..n).map(|i| aug[i][n + j].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fractions_recover_simple_fractions() {
        let (r, err) = rational_approx(0.25, 1_000_000);
        assert_eq!(r, rat(1, 4));
        assert!(err < 1e-15);
        let (r, err) = rational_approx(1.0 / 3.0, 1_000_000);
        assert_eq!(r, rat(1, 3));
        assert!(err < 1e-15);
        let (r, _) = rational_approx(0.0, 10);
        assert_eq!(r, rat_int(0));
    }

    #[test]
    fn solves_a_two_by_two_exactly() {
        // the Figure-1 style system: P = [[1,2],[-3,2]]
        let p = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(-3), rat_int(2)],
        ];
        let e1 = vec![rat_int(1), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1)];
        let sols = solve_exact(&p, &[e1, e2]).unwrap();
        assert_eq!(sols[0], vec![rat(1, 4), rat(3, 8)]);
        assert_eq!(sols[1], vec![rat(-1, 4), rat(1, 8)]);
    }

    #[test]
    fn singular_matrix_reports_rank() {
        let p = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        match solve_exact(&p, &[vec![rat_int(1), rat_int(0)]]) {
            Err(Error::SingularLattice { rank, dim }) => {
                assert_eq!((rank, dim), (1, 2));
            }
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn mod1_wraps_rationals() {
        assert_eq!(rat_mod1(&rat(-1, 4)), rat(3, 4));
        assert_eq!(rat_mod1(&rat(9, 4)), rat(1, 4));
        assert_eq!(rat_mod1(&rat_int(3)), rat_int(0));
    }
}
