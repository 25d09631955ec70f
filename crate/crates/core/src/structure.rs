//! Everything downstream of `ε`: admissibility ranges, the set `Γ`, pairwise
//! offsets, the point/hyperplane/lattice support structure, minimum
//! separation, and the recovery-guarantee metadata.

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::rational::{
    rat_int, rat_is_integer, rat_mod1, rat_to_f64, rational_approx, rational_rank, solve_exact,
    Rat,
};
use crate::scalar::{real, Real};
use crate::torus::{circle_dist, wrap_unit, Frequency, TorusPoint};
use num_traits::Float;

/// A certified interval `[A, B]` containing `ε`, with provenance notes.
#[derive(Debug, Clone)]
pub struct AdmissibilityRange<T> {
    pub lower: T,
    pub upper: T,
    pub lower_note: String,
    pub upper_note: String,
}

/// `A = ‖μ̂‖_{ℓ∞(Λ)}`; `B` is the best of `‖μ‖` and any verified
/// extrapolation norms (callers vouch for the norms they pass in —
/// see [`verified_extrapolation_norm`]).
pub fn admissibility_range<T: Real>(
    data: &SpectralData<T>,
    mu_norm: Option<T>,
    extrapolation_norms: &[T],
) -> Result<AdmissibilityRange<T>> {
    let lower = data.sup_norm();
    let mut upper = T::infinity();
    let mut upper_note = "no upper bound supplied".to_string();
    if let Some(n) = mu_norm {
        if n < upper {
            upper = n;
            upper_note = "total variation norm of the generating measure".into();
        }
    }
    for (i, &n) in extrapolation_norms.iter().enumerate() {
        if n < upper {
            upper = n;
            upper_note = format!("norm of verified extrapolation #{i}");
        }
    }
    if upper < lower * (T::one() - real(1e-12)) {
        return Err(Error::InconsistentAdmissibility {
            lower: lower.to_f64().unwrap_or(f64::NAN),
            upper: upper.to_f64().unwrap_or(f64::NAN),
        });
    }
    // float dust inside the tolerance band must not invert the interval
    let upper = Float::max(upper, lower);
    Ok(AdmissibilityRange {
        lower,
        upper,
        lower_note: "sup of |data| over the frequency set".into(),
        upper_note,
    })
}

/// Checks that `ν̂ = data` on `Λ` within `tol` and returns `‖ν‖`.
pub fn verified_extrapolation_norm<T: Real>(
    data: &SpectralData<T>,
    nu: &DiscreteMeasure<T>,
    tol: T,
) -> Result<T> {
    let transformed = nu.fourier_transform(data.lambda())?;
    let dist = transformed
        .dist_inf(data)
        .expect("same frequency set by construction");
    if dist > tol {
        return Err(Error::SupportInconsistent(dist.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(nu.tv_norm())
}

/// The structural set `Γ = {m ∈ Λ : |μ̂(m)| = ε}` with its tolerance.
#[derive(Debug, Clone)]
pub struct GammaSet<T> {
    pub members: Vec<Frequency>,
    pub epsilon_used: T,
    pub tolerance: T,
}

impl<T> GammaSet<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Default membership tolerance relative to `ε`: thresholding a noisy ε
/// estimate must not poison the hyperplane intersection downstream.
pub fn default_gamma_tol<T: Real>(epsilon: T, solver_gap_tol: T) -> T {
    Float::max(real(1e-7), solver_gap_tol * real(10.0)) * Float::max(T::one(), epsilon)
}

pub fn gamma_set<T: Real>(data: &SpectralData<T>, epsilon: T, tol: T) -> Result<GammaSet<T>> {
    if epsilon < data.sup_norm() - tol {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} below the admissible lower bound {}",
            data.sup_norm()
        )));
    }
    let members = data
        .lambda()
        .iter()
        .enumerate()
        .filter(|(i, _)| Float::abs(data.value_at(*i).norm() - epsilon) <= tol)
        .map(|(_, m)| m.clone())
        .collect();
    Ok(GammaSet {
        members,
        epsilon_used: epsilon,
        tolerance: tol,
    })
}

/// `α_{m,n} ∈ [0,1)` with `e^{2πiα} = μ̂(m)/μ̂(n)`.
pub fn pair_offset<T: Real>(
    m: &Frequency,
    n: &Frequency,
    data: &SpectralData<T>,
) -> Result<T> {
    if m == n {
        return Ok(T::zero());
    }
    let num = data
        .value(m)
        .ok_or_else(|| Error::InvalidParameter(format!("{m} not in the frequency set")))?;
    let den = data
        .value(n)
        .ok_or_else(|| Error::InvalidParameter(format!("{n} not in the frequency set")))?;
    if den.norm() == T::zero() {
        return Err(Error::InvalidParameter(format!(
            "zero denominator: |data({n})| = 0"
        )));
    }
    let ratio = num / den;
    Ok(wrap_unit(Float::atan2(ratio.im, ratio.re) / T::TAU()))
}

/// One periodic-hyperplane constraint `x·difference + offset ∈ ℤ`.
#[derive(Debug, Clone)]
pub struct HyperplaneConstraint<T> {
    pub difference: Frequency,
    pub offset: T,
}

/// The family of constraints derived from the pairs of `Γ`.
#[derive(Debug, Clone)]
pub struct HyperplaneFamily<T> {
    /// Raw constraints, one per unordered pair of `Γ`.
    pub raw: Vec<HyperplaneConstraint<T>>,
    /// Reduced constraints: sign-canonicalized, deduplicated, implied
    /// multiples dropped.
    pub reduced: Vec<HyperplaneConstraint<T>>,
}

fn canonicalize<T: Real>(diff: &Frequency, offset: T) -> (Frequency, T) {
    let flip = diff
        .components()
        .iter()
        .find(|&&c| c != 0)
        .is_some_and(|&c| c < 0);
    if flip {
        (diff.neg(), wrap_unit(-offset))
    } else {
        (diff.clone(), offset)
    }
}

/// Integer k with `big = k · small`, if any (componentwise).
fn integer_multiple(small: &Frequency, big: &Frequency) -> Option<i64> {
    let (s, b) = (small.components(), big.components());
    let mut k: Option<i64> = None;
    for (&sc, &bc) in s.iter().zip(b.iter()) {
        match (sc, bc) {
            (0, 0) => {}
            (0, _) => return None,
            _ => {
                if bc % sc != 0 {
                    return None;
                }
                let q = bc / sc;
                match k {
                    None => k = Some(q),
                    Some(prev) if prev != q => return None,
                    _ => {}
                }
            }
        }
    }
    k
}

fn reduce_family<T: Real>(raw: &[HyperplaneConstraint<T>], tol: T) -> Vec<HyperplaneConstraint<T>> {
    let mut canon: Vec<HyperplaneConstraint<T>> = Vec::new();
    for c in raw {
        let (difference, offset) = canonicalize(&c.difference, c.offset);
        let dup = canon
            .iter()
            .any(|e| e.difference == difference && circle_dist(e.offset, offset) <= tol);
        if !dup {
            canon.push(HyperplaneConstraint { difference, offset });
        }
    }
    // drop constraints implied by an integer multiple of a finer one
    let mut reduced: Vec<HyperplaneConstraint<T>> = Vec::new();
    'outer: for (i, c) in canon.iter().enumerate() {
        for (j, fine) in canon.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(k) = integer_multiple(&fine.difference, &c.difference) {
                if k.abs() > 1 {
                    let implied = wrap_unit(fine.offset * T::from_i64(k).unwrap());
                    if circle_dist(implied, c.offset) <= tol {
                        continue 'outer;
                    }
                }
            }
        }
        reduced.push(c.clone());
    }
    reduced
}

/// A full-rank lattice coset `{x : P x + β ∈ ℤ^d}` in exact arithmetic.
#[derive(Debug, Clone)]
pub struct Lattice {
    /// Rows of the integer matrix `P` (the chosen difference vectors).
    pub p_rows: Vec<Vec<i64>>,
    /// Rational offsets `β`.
    pub beta: Vec<Rat>,
    /// Base point: the exact solution of `P x₀ + β = 0`, reduced mod 1.
    pub base_point: Vec<Rat>,
    /// Generators `q_k` solving `P q_k = e_k` (columns of `P⁻¹`).
    pub generators: Vec<Vec<Rat>>,
    /// Absolute error of the rational approximation of the offsets.
    pub offset_error: f64,
}

impl Lattice {
    pub fn dim(&self) -> usize {
        self.p_rows.len()
    }

    /// Exact membership test `P x + β ∈ ℤ^d` for a rational point.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.p_rows.iter().zip(self.beta.iter()).all(|(row, b)| {
            let dot = row
                .iter()
                .zip(x.iter())
                .fold(Rat::from_integer(0.into()), |acc, (&p, xi)| {
                    acc + rat_int(p) * xi.clone()
                });
            rat_is_integer(&(dot + b.clone()))
        })
    }

    pub fn base_point_f64(&self) -> TorusPoint<f64> {
        TorusPoint::new(self.base_point.iter().map(rat_to_f64).collect())
    }
}

/// Solves the lattice equations exactly: `q_k` with `P q_k = e_k` and the
/// base point with `P x₀ + β = 0`. Rejects singular `P` with its rank.
pub fn lattice_solve(differences: &[Frequency], beta: &[Rat]) -> Result<Lattice> {
    let d = differences.len();
    if d == 0 || beta.len() != d {
        return Err(Error::InvalidParameter(
            "need d difference vectors and d offsets".into(),
        ));
    }
    for p in differences {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let p_rows: Vec<Vec<i64>> = differences.iter().map(|f| f.components().to_vec()).collect();
    let p_rat: Vec<Vec<Rat>> = p_rows
        .iter()
        .map(|r| r.iter().map(|&v| rat_int(v)).collect())
        .collect();

    let mut rhs: Vec<Vec<Rat>> = (0..d)
        .map(|k| (0..d).map(|i| rat_int((i == k) as i64)).collect())
        .collect();
    rhs.push(beta.iter().map(|b| -b.clone()).collect());

    let mut sols = solve_exact(&p_rat, &rhs)?;
    let x0_raw = sols.pop().expect("base point column");
    let base_point: Vec<Rat> = x0_raw.iter().map(rat_mod1).collect();
    let generators = sols;

    // verify the biorthogonality p_j · q_k = δ_{jk} exactly
    for (j, row) in p_rat.iter().enumerate() {
        for (k, q) in generators.iter().enumerate() {
            let dot = row
                .iter()
                .zip(q.iter())
                .fold(Rat::from_integer(0.into()), |acc, (p, qi)| {
                    acc + p.clone() * qi.clone()
                });
            let expect = rat_int((j == k) as i64);
            if dot != expect {
                return Err(Error::Internal(format!(
                    "biorthogonality failed at ({j}, {k}): {dot}"
                )));
            }
        }
    }

    Ok(Lattice {
        p_rows,
        beta: beta.to_vec(),
        base_point,
        generators,
        offset_error: 0.0,
    })
}

/// The tagged support structure of the minimal extrapolations.
#[derive(Debug, Clone)]
pub enum SupportStructure<T> {
    /// `#Γ ≥ 2`, d = 1 (or a 0-dimensional intersection): a finite set.
    Points(Vec<TorusPoint<T>>),
    /// `#Γ ≥ 2`, d ≥ 2: intersection of periodic hyperplanes.
    Hyperplanes(HyperplaneFamily<T>),
    /// Hyperplanes upgraded to a lattice (d independent differences exist).
    LatticeCase {
        family: HyperplaneFamily<T>,
        lattice: Lattice,
    },
    /// Degenerate: no constraint at all.
    WholeTorus,
    /// `#Γ = 0`: support lies in the zero set of an analytic function;
    /// delegated to the certificate's deficit.
    UnknownAnalytic,
    /// `#Γ = 1`: genuinely unconstrained by the hyperplane theory.
    UnknownSingleton(Frequency),
}

impl<T> SupportStructure<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            SupportStructure::Points(_) => "points",
            SupportStructure::Hyperplanes(_) => "hyperplanes",
            SupportStructure::LatticeCase { .. } => "lattice",
            SupportStructure::WholeTorus => "whole_torus",
            SupportStructure::UnknownAnalytic => "unknown_analytic",
            SupportStructure::UnknownSingleton(_) => "unknown_singleton",
        }
    }
}

/// Tolerance for the point-membership checks `x·(m−n) + α ∈ ℤ`.
pub const HYPERPLANE_MEMBER_TOL: f64 = 1e-9;

/// Derives the support structure from `Γ` and the data.
pub fn support_structure<T: Real>(
    gamma: &GammaSet<T>,
    data: &SpectralData<T>,
) -> Result<SupportStructure<T>> {
    let d = data.dim();
    match gamma.len() {
        0 => Ok(SupportStructure::UnknownAnalytic),
        1 => Ok(SupportStructure::UnknownSingleton(gamma.members[0].clone())),
        _ => {
            let mut raw = Vec::new();
            for i in 0..gamma.members.len() {
                for j in (i + 1)..gamma.members.len() {
                    let m = &gamma.members[i];
                    let n = &gamma.members[j];
                    raw.push(HyperplaneConstraint {
                        difference: m.sub(n),
                        offset: pair_offset(m, n, data)?,
                    });
                }
            }
            if d == 1 {
                return Ok(SupportStructure::Points(points_from_constraints(&raw)));
            }
            let reduced = reduce_family(&raw, real(1e-7));
            let family = HyperplaneFamily {
                raw,
                reduced: reduced.clone(),
            };
            match lattice_from_family(&reduced) {
                Some(lattice) => Ok(SupportStructure::LatticeCase { family, lattice }),
                None => Ok(SupportStructure::Hyperplanes(family)),
            }
        }
    }
}

/// Solves `x·δ + α ∈ ℤ` per 1-d constraint and intersects the solution sets.
fn points_from_constraints<T: Real>(raw: &[HyperplaneConstraint<T>]) -> Vec<TorusPoint<T>> {
    let tol = real::<T>(HYPERPLANE_MEMBER_TOL);
    let mut candidates: Option<Vec<T>> = None;
    for c in raw {
        let delta = c.difference.components()[0];
        if delta == 0 {
            continue;
        }
        let count = delta.unsigned_abs() as i64;
        let df = T::from_i64(delta).unwrap();
        let set: Vec<T> = (0..count)
            .map(|j| wrap_unit((T::from_i64(j).unwrap() - c.offset) / df))
            .collect();
        candidates = Some(match candidates {
            None => set,
            Some(prev) => prev
                .into_iter()
                .filter(|&x| set.iter().any(|&y| circle_dist(x, y) <= tol))
                .collect(),
        });
    }
    let mut pts = candidates.unwrap_or_default();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.into_iter().map(TorusPoint::new_1d).collect()
}

/// Picks d linearly independent differences (exact rank test) and solves the
/// lattice; offsets are converted to rationals by continued fractions.
fn lattice_from_family<T: Real>(reduced: &[HyperplaneConstraint<T>]) -> Option<Lattice> {
    let d = reduced.first()?.difference.dim();
    let mut chosen: Vec<&HyperplaneConstraint<T>> = Vec::new();
    for c in reduced {
        let mut rows: Vec<Vec<Rat>> = chosen
            .iter()
            .map(|e| e.difference.components().iter().map(|&v| rat_int(v)).collect())
            .collect();
        rows.push(c.difference.components().iter().map(|&v| rat_int(v)).collect());
        if rational_rank(&rows) == chosen.len() + 1 {
            chosen.push(c);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return None;
    }
    let diffs: Vec<Frequency> = chosen.iter().map(|c| c.difference.clone()).collect();
    let mut offset_error = 0.0f64;
    let beta: Vec<Rat> = chosen
        .iter()
        .map(|c| {
            let (r, err) = rational_approx(c.offset.to_f64().unwrap_or(0.0), 1_000_000);
            offset_error = offset_error.max(err);
            r
        })
        .collect();
    match lattice_solve(&diffs, &beta) {
        Ok(mut lat) => {
            lat.offset_error = offset_error;
            Some(lat)
        }
        Err(_) => None,
    }
}

/// Minimum separation `min_{j≠k} ‖x_j − x_k‖_{ℓ∞(𝕋^d)} ≥ C/M`.
pub fn separation_check<T: Real>(mu: &DiscreteMeasure<T>, m_max: u64, c: T) -> bool {
    assert!(m_max >= 1 && c > T::zero());
    let atoms = mu.atoms();
    let mut min_dist = T::infinity();
    for i in 0..atoms.len() {
        for j in (i + 1)..atoms.len() {
            min_dist = Float::min(min_dist, atoms[i].0.dist_linf(&atoms[j].0));
        }
    }
    min_dist >= c / T::from_u64(m_max).unwrap()
}

/// Which published recovery guarantee applies (metadata only; nothing is
/// re-proved here).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryGuarantee {
    /// d = 1, M ≥ 128, separation constant 2.
    D1M128C2,
    /// d = 1, real measure, M ≥ 128, separation constant 1.87.
    D1RealM128C187,
    /// d = 1, M ≥ 10³, separation constant 1.26.
    D1M1000C126,
    /// d = 2, real measure, M ≥ 512, separation constant 2.38.
    D2RealM512C238,
    None,
}

pub fn cfg_guarantee<T: Real>(
    mu: &DiscreteMeasure<T>,
    m_max: u64,
    d: usize,
    real_valued: bool,
) -> RecoveryGuarantee {
    if d == 1 {
        if m_max >= 128 && separation_check(mu, m_max, real(2.0)) {
            return RecoveryGuarantee::D1M128C2;
        }
        if real_valued && m_max >= 128 && separation_check(mu, m_max, real(1.87)) {
            return RecoveryGuarantee::D1RealM128C187;
        }
        if m_max >= 1000 && separation_check(mu, m_max, real(1.26)) {
            return RecoveryGuarantee::D1M1000C126;
        }
    }
    if d == 2 && real_valued && m_max >= 512 && separation_check(mu, m_max, real(2.38)) {
        return RecoveryGuarantee::D2RealM512C238;
    }
    RecoveryGuarantee::None
}

/// The failure path of the certificate algorithm: a degenerate certificate
/// forces `ε = ‖μ̂‖_∞` exactly and `Γ ≠ ∅`.
pub fn algorithm_failure_diagnosis<T: Real>(
    data: &SpectralData<T>,
    gamma_tol: T,
) -> Result<(T, GammaSet<T>)> {
    let epsilon = data.sup_norm();
    let gamma = gamma_set(data, epsilon, gamma_tol)?;
    if gamma.is_empty() {
        return Err(Error::Internal(
            "degenerate certificate but empty Γ: the sup must be attained".into(),
        ));
    }
    Ok((epsilon, gamma))
}
