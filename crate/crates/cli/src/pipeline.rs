//! The end-to-end analysis pipeline: solve → ε → Γ → structure →
//! uniqueness → positivity, with the degenerate-certificate failure path
//! routed through the Γ diagnosis.

use minext::certificate::{
    self, certificate_from_dual, is_degenerate, refine_certificate, support_from_certificate_1d,
    support_from_certificate_grid, Certificate, CertificateOptions,
};
use minext::error::{Error, Result};
use minext::io::{
    AdmissibilityJson, ComplexJson, GammaJson, MeasureJson, PolyJson, SpectralJson, StructureJson,
    VerdictJson,
};
use minext::measure::{DiscreteMeasure, SpectralData};
use minext::positivity::{is_pd_extendable, positive_minimal_extrapolation, toeplitz_window};
use minext::scalar::Cplx;
use minext::solver::{solution_to_measure, SolveReport, SolverOptions};
use minext::structure::{
    admissibility_range, algorithm_failure_diagnosis, default_gamma_tol, gamma_set,
    support_structure, verified_extrapolation_norm, SupportStructure,
};
use minext::torus::{Frequency, TorusPoint};
use minext::trig::TrigPolynomial;
use serde::{Deserialize, Serialize};

/// Knobs exposed by the CLI; everything has a deterministic default.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    /// Grid points per axis (default 64 for d = 1, 16 for d ≥ 2).
    pub grid: Option<usize>,
    pub feas_tol: f64,
    pub gap_tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Prior knowledge of `‖μ‖` for the admissibility range.
    pub mu_norm: Option<f64>,
    /// Verified extrapolations (norms enter the admissibility range).
    pub extrapolations: Vec<DiscreteMeasure<f64>>,
    /// Positivity window center (default: first frequency attaining the sup).
    pub center: Option<i64>,
    /// Positivity window half-width (default: widest readable window).
    pub halfwidth: Option<usize>,
    /// Include wall-clock timing in the report (off keeps reports
    /// byte-identical across runs).
    pub timing: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            grid: None,
            feas_tol: 1e-9,
            gap_tol: 1e-8,
            max_iterations: 200_000,
            seed: 0x5EED_0001,
            mu_norm: None,
            extrapolations: Vec::new(),
            center: None,
            halfwidth: None,
            timing: false,
        }
    }
}

impl PipelineOptions {
    pub fn solver_options(&self) -> SolverOptions<f64> {
        SolverOptions {
            max_iterations: self.max_iterations,
            feas_tol: self.feas_tol,
            gap_tol: self.gap_tol,
            seed: self.seed,
            ..SolverOptions::default()
        }
    }

    pub fn grid_for(&self, d: usize) -> usize {
        self.grid.unwrap_or(if d == 1 { 64 } else { 16 })
    }
}

/// A section of the report that is either populated or skipped with a reason.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Section<T> {
    Value(T),
    Skipped { skipped: String },
}

impl<T> Section<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Section::Value(v) => Some(v),
            Section::Skipped { .. } => None,
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Section::Skipped {
            skipped: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveSection {
    pub epsilon_grid: f64,
    pub converged: bool,
    pub iterations: usize,
    pub feas_residual: f64,
    pub gap: f64,
    pub primal: Vec<ComplexJson>,
    pub dual: Vec<ComplexJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateSection {
    pub poly: PolyJson,
    pub sup_norm_bound: f64,
    pub pairing_re: f64,
    pub degenerate: bool,
    /// True when the reported certificate was sharpened from the recovered
    /// support (interpolation + tangency solve).
    pub refined: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PositivitySection {
    pub center: i64,
    pub halfwidth: usize,
    pub extendable: bool,
    /// The window covered only part of `Λ`, so extendability of the window
    /// alone is a necessary condition, not a sufficient one.
    pub hull_heuristic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The full machine-readable analysis report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineReport {
    pub input: SpectralJson,
    pub grid: usize,
    pub solve: SolveSection,
    /// Final ε estimate: exact `‖data‖_∞` on the degenerate route, the grid
    /// value otherwise.
    pub epsilon: f64,
    pub route: String,
    pub admissibility: AdmissibilityJson,
    pub gamma: GammaJson,
    pub structure: StructureJson,
    pub certificate: Section<CertificateSection>,
    /// Candidate support points feeding the uniqueness test.
    pub support_points: Section<Vec<Vec<f64>>>,
    pub uniqueness: VerdictJson,
    pub positivity: Section<PositivitySection>,
    /// Pruned primal solution as a measure (atom locations on the grid).
    pub primal_measure: MeasureJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

fn solve_section(report: &SolveReport<f64>) -> SolveSection {
    SolveSection {
        epsilon_grid: report.epsilon_grid,
        converged: report.converged,
        iterations: report.iterations,
        feas_residual: report.feas_residual,
        gap: report.gap,
        primal: report.primal.iter().map(|&z| z.into()).collect(),
        dual: report.dual.iter().map(|&z| z.into()).collect(),
    }
}

/// Runs the full pipeline on spectral data.
pub fn analyze(data: &SpectralData<f64>, opts: &PipelineOptions) -> Result<PipelineReport> {
    let start = std::time::Instant::now();
    let d = data.dim();
    let lambda = data.lambda().clone();
    let grid_n = opts.grid_for(d);
    let solver_opts = opts.solver_options();

    // verified extrapolation norms for the admissibility range
    let mut extrap_norms = Vec::new();
    for nu in &opts.extrapolations {
        extrap_norms.push(verified_extrapolation_norm(data, nu, 1e-7)?);
    }

    let (solve_report, grid) = minext::solver::solve_on_grid(data, grid_n, &solver_opts)?;
    if !solve_report.converged {
        return Err(Error::NotConverged {
            iterations: solve_report.iterations,
            feas: solve_report.feas_residual,
            gap: solve_report.gap,
        });
    }
    let primal_measure = solution_to_measure(&solve_report, grid, 1e-6);

    // zero data short-circuits: the unique minimal extrapolation is 0
    if data.is_zero(0.0) {
        let admissibility = admissibility_range(data, opts.mu_norm, &extrap_norms)?;
        let gamma = gamma_set(data, 0.0, 0.0)?;
        let zero = DiscreteMeasure::empty(d);
        return Ok(PipelineReport {
            input: data.into(),
            grid: grid_n,
            solve: solve_section(&solve_report),
            epsilon: 0.0,
            route: "zero_data".into(),
            admissibility: (&admissibility).into(),
            gamma: (&gamma).into(),
            structure: (&SupportStructure::Points(vec![])).into(),
            certificate: Section::skipped("zero data: the pairing condition is vacuous"),
            support_points: Section::Value(vec![]),
            uniqueness: VerdictJson {
                verdict: "UNIQUE".into(),
                measure: Some((&zero).into()),
                residual: Some(0.0),
                reason: None,
            },
            positivity: Section::skipped("zero data"),
            primal_measure: (&primal_measure).into(),
            timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
        });
    }

    // certificate from the dual, possibly sharpened from the primal support
    let cert_opts = CertificateOptions::for_dim(d);
    let raw_poly = TrigPolynomial::new(lambda.clone(), solve_report.dual.clone())?;
    let degenerate = is_degenerate(&raw_poly, certificate::DEGENERACY_TOL);

    let (epsilon, route, gamma) = if degenerate {
        let gamma_tol = default_gamma_tol(data.sup_norm(), opts.gap_tol);
        let (eps, gamma) = algorithm_failure_diagnosis(data, gamma_tol)?;
        (eps, "degenerate", gamma)
    } else {
        let eps = solve_report.epsilon_grid;
        let gamma = gamma_set(data, eps, default_gamma_tol(eps, opts.gap_tol))?;
        (eps, "certificate", gamma)
    };

    let mut refined = false;
    let cert: Option<Certificate<f64>> = if degenerate {
        certificate_from_dual(&solve_report.dual, &lambda, data, epsilon, &cert_opts).ok()
    } else {
        let from_support = sharpen_from_primal(&primal_measure, &lambda, data, epsilon, &cert_opts);
        match from_support {
            Some(c) => {
                refined = true;
                Some(c)
            }
            None => {
                certificate_from_dual(&solve_report.dual, &lambda, data, epsilon, &cert_opts).ok()
            }
        }
    };

    let structure = support_structure(&gamma, data)?;

    // candidate support points for the uniqueness test
    let support_points: Section<Vec<TorusPoint<f64>>> = match &structure {
        SupportStructure::Points(pts) => Section::Value(pts.clone()),
        _ if !degenerate && d == 1 => match &cert {
            Some(c) => match support_from_certificate_1d(c.poly(), 1e-6) {
                Ok(pts) => Section::Value(pts),
                Err(e) => Section::skipped(format!("certificate support extraction: {e}")),
            },
            None => Section::skipped("no validated certificate"),
        },
        other => Section::skipped(format!(
            "support structure is {}; no finite candidate set",
            other.tag()
        )),
    };

    let uniqueness = match &support_points {
        Section::Value(pts) if !pts.is_empty() => {
            minext::uniqueness::verdict_for_points(pts, &lambda, data)
        }
        Section::Value(_) => minext::uniqueness::Verdict::Inconclusive {
            reason: "empty candidate support for nonzero data".into(),
        },
        Section::Skipped { skipped } => minext::uniqueness::Verdict::NotApplicable {
            reason: skipped.clone(),
        },
    };

    // note: the grid iterate is only feasible to solver tolerance, so its
    // norm is NOT passed as a verified extrapolation bound
    let admissibility = admissibility_range(data, opts.mu_norm, &extrap_norms)?;

    let positivity = positivity_section(data, opts);

    let certificate_section = match &cert {
        Some(c) => Section::Value(CertificateSection {
            poly: c.poly().into(),
            sup_norm_bound: c.sup_norm_bound(),
            pairing_re: c.pairing().re,
            degenerate,
            refined,
        }),
        None => Section::skipped("certificate failed validation"),
    };

    Ok(PipelineReport {
        input: data.into(),
        grid: grid_n,
        solve: solve_section(&solve_report),
        epsilon,
        route: route.into(),
        admissibility: (&admissibility).into(),
        gamma: (&gamma).into(),
        structure: (&structure).into(),
        certificate: certificate_section,
        support_points: match support_points {
            Section::Value(pts) => {
                Section::Value(pts.iter().map(|p| p.coords().to_vec()).collect())
            }
            Section::Skipped { skipped } => Section::Skipped { skipped },
        },
        uniqueness: (&uniqueness).into(),
        positivity,
        primal_measure: (&primal_measure).into(),
        timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
    })
}

/// Attempts the interpolation+tangency sharpening from the primal support.
fn sharpen_from_primal(
    primal_measure: &DiscreteMeasure<f64>,
    lambda: &minext::torus::FrequencySet,
    data: &SpectralData<f64>,
    epsilon: f64,
    cert_opts: &CertificateOptions<f64>,
) -> Option<Certificate<f64>> {
    if primal_measure.is_empty() {
        return None;
    }
    // keep only carrying atoms; grid dust distorts the sign pattern
    let cutoff = 1e-4 * primal_measure.tv_norm();
    let mut support = Vec::new();
    let mut signs: Vec<Cplx<f64>> = Vec::new();
    for (x, w) in primal_measure.atoms() {
        if w.norm() > cutoff {
            support.push(x.clone());
            signs.push(w / w.norm());
        }
    }
    if support.is_empty() || support.len() * (2 + lambda.dim()) > 2 * lambda.len() + 2 {
        // heavily overdetermined sign systems come from smeared solutions;
        // the raw dual is more trustworthy there
        return None;
    }
    refine_certificate(lambda, data, &support, &signs, epsilon, cert_opts).ok()
}

fn positivity_section(data: &SpectralData<f64>, opts: &PipelineOptions) -> Section<PositivitySection> {
    if data.dim() != 1 {
        return Section::skipped(format!(
            "positive-definite extension is implemented for d = 1 only (d = {})",
            data.dim()
        ));
    }
    // default center: first frequency attaining the sup of |data|
    let center = opts.center.unwrap_or_else(|| {
        let sup = data.sup_norm();
        data.lambda()
            .iter()
            .enumerate()
            .find(|(i, _)| data.value_at(*i).norm() >= sup - 1e-12)
            .map(|(_, m)| m.components()[0])
            .unwrap_or(0)
    });
    // default half-width: widest window readable around the center
    let halfwidth = opts.halfwidth.unwrap_or_else(|| {
        let mut w = 0usize;
        loop {
            let k = (w + 1) as i64;
            let plus = data.lambda().contains(&Frequency::new_1d(center + k));
            let minus = data.lambda().contains(&Frequency::new_1d(center - k));
            if plus || minus {
                w += 1;
            } else {
                return w;
            }
        }
    });

    let window = match toeplitz_window(data, center, halfwidth, 1e-7) {
        Ok(w) => w,
        Err(e) => return Section::skipped(format!("window rejected: {e}")),
    };
    let extendable = is_pd_extendable(&window, 1e-9);
    let mut section = PositivitySection {
        center,
        halfwidth,
        extendable,
        hull_heuristic: window.hull_heuristic,
        measure: None,
        norm: None,
        note: None,
    };
    if extendable {
        match positive_minimal_extrapolation(data, center, halfwidth, 1e-7) {
            Ok(nu) => {
                section.norm = Some(nu.tv_norm());
                section.measure = Some((&nu).into());
            }
            Err(e) => section.note = Some(e.to_string()),
        }
    }
    Section::Value(section)
}

/// Support extraction helper shared by the plot exporter: the grid sieve of
/// the certificate deficit for d ≥ 2.
pub fn certificate_sieve(
    poly: &TrigPolynomial<f64>,
    refinement: usize,
    tol: f64,
) -> Vec<Vec<f64>> {
    support_from_certificate_grid(poly, refinement, tol)
        .into_iter()
        .map(|p| p.coords().to_vec())
        .collect()
}
