//! JSON schemas for measures, spectral data, reports, and structures.
//!
//! Floating-point values round-trip losslessly (shortest-representation
//! printing). All orderings are deterministic: fields follow struct order and
//! collections preserve construction order.

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, SpectralData};
use crate::rational::rat_to_f64;
use crate::scalar::Cplx;
use crate::solver::SolveReport;
use crate::structure::{AdmissibilityRange, GammaSet, SupportStructure};
use crate::torus::{Frequency, FrequencySet, TorusPoint};
use crate::trig::TrigPolynomial;
use crate::uniqueness::Verdict;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomJson {
    pub x: Vec<f64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureJson {
    pub d: usize,
    pub atoms: Vec<AtomJson>,
}

impl From<&DiscreteMeasure<f64>> for MeasureJson {
    fn from(mu: &DiscreteMeasure<f64>) -> Self {
        Self {
            d: mu.dim(),
            atoms: mu
                .atoms()
                .iter()
                .map(|(x, w)| AtomJson {
                    x: x.coords().to_vec(),
                    re: w.re,
                    im: w.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<&MeasureJson> for DiscreteMeasure<f64> {
    type Error = Error;

    fn try_from(json: &MeasureJson) -> Result<Self> {
        if json.d == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        for a in &json.atoms {
            if a.x.len() != json.d {
                return Err(Error::DimensionMismatch {
                    expected: json.d,
                    got: a.x.len(),
                });
            }
        }
        Ok(DiscreteMeasure::from_atoms(
            json.d,
            json.atoms
                .iter()
                .map(|a| (TorusPoint::new(a.x.clone()), Cplx::new(a.re, a.im))),
        ))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleJson {
    pub m: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralJson {
    pub d: usize,
    pub data: Vec<SampleJson>,
}

impl From<&SpectralData<f64>> for SpectralJson {
    fn from(data: &SpectralData<f64>) -> Self {
        Self {
            d: data.dim(),
            data: data
                .lambda()
                .iter()
                .zip(data.values().iter())
                .map(|(m, v)| SampleJson {
                    m: m.components().to_vec(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<&SpectralJson> for SpectralData<f64> {
    type Error = Error;

    fn try_from(json: &SpectralJson) -> Result<Self> {
        if json.d == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        for s in &json.data {
            if s.m.len() != json.d {
                return Err(Error::DimensionMismatch {
                    expected: json.d,
                    got: s.m.len(),
                });
            }
        }
        let lambda = FrequencySet::new(
            json.data
                .iter()
                .map(|s| Frequency::new(s.m.clone()))
                .collect(),
        )?;
        SpectralData::new(
            lambda,
            json.data.iter().map(|s| Cplx::new(s.re, s.im)).collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Cplx<f64>> for ComplexJson {
    fn from(z: Cplx<f64>) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReportJson {
    pub epsilon: f64,
    pub converged: bool,
    pub iterations: usize,
    pub primal: Vec<ComplexJson>,
    pub dual: Vec<ComplexJson>,
}

impl From<&SolveReport<f64>> for SolveReportJson {
    fn from(r: &SolveReport<f64>) -> Self {
        Self {
            epsilon: r.epsilon_grid,
            converged: r.converged,
            iterations: r.iterations,
            primal: r.primal.iter().map(|&z| z.into()).collect(),
            dual: r.dual.iter().map(|&z| z.into()).collect(),
        }
    }
}

/// Trigonometric polynomials (certificates, deficits) as indexed terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub d: usize,
    pub terms: Vec<SampleJson>,
}

impl From<&TrigPolynomial<f64>> for PolyJson {
    fn from(p: &TrigPolynomial<f64>) -> Self {
        Self {
            d: p.dim(),
            terms: p
                .support()
                .iter()
                .zip(p.coefficients().iter())
                .map(|(m, c)| SampleJson {
                    m: m.components().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for TrigPolynomial<f64> {
    type Error = Error;

    fn try_from(json: &PolyJson) -> Result<Self> {
        let lambda = FrequencySet::new(
            json.terms
                .iter()
                .map(|s| Frequency::new(s.m.clone()))
                .collect(),
        )?;
        TrigPolynomial::new(
            lambda,
            json.terms.iter().map(|s| Cplx::new(s.re, s.im)).collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibilityJson {
    pub lower: f64,
    /// Absent when no upper bound was supplied.
    pub upper: Option<f64>,
    pub lower_note: String,
    pub upper_note: String,
}

impl From<&AdmissibilityRange<f64>> for AdmissibilityJson {
    fn from(r: &AdmissibilityRange<f64>) -> Self {
        Self {
            lower: r.lower,
            upper: r.upper.is_finite().then_some(r.upper),
            lower_note: r.lower_note.clone(),
            upper_note: r.upper_note.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaJson {
    pub members: Vec<Vec<i64>>,
    pub epsilon_used: f64,
    pub tolerance: f64,
}

impl From<&GammaSet<f64>> for GammaJson {
    fn from(g: &GammaSet<f64>) -> Self {
        Self {
            members: g.members.iter().map(|m| m.components().to_vec()).collect(),
            epsilon_used: g.epsilon_used,
            tolerance: g.tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub difference: Vec<i64>,
    pub offset: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub base_point: Vec<f64>,
    pub generators: Vec<Vec<f64>>,
    pub p_rows: Vec<Vec<i64>>,
    pub beta: Vec<f64>,
    pub offset_error: f64,
}

/// Tagged union mirroring [`SupportStructure`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StructureJson {
    Points { points: Vec<Vec<f64>> },
    Hyperplanes { reduced: Vec<HyperplaneJson>, raw: Vec<HyperplaneJson> },
    Lattice {
        reduced: Vec<HyperplaneJson>,
        lattice: LatticeJson,
    },
    WholeTorus,
    UnknownAnalytic,
    UnknownSingleton { member: Vec<i64> },
}

impl From<&SupportStructure<f64>> for StructureJson {
    fn from(s: &SupportStructure<f64>) -> Self {
        let conv = |h: &crate::structure::HyperplaneConstraint<f64>| HyperplaneJson {
            difference: h.difference.components().to_vec(),
            offset: h.offset,
        };
        match s {
            SupportStructure::Points(pts) => StructureJson::Points {
                points: pts.iter().map(|p| p.coords().to_vec()).collect(),
            },
            SupportStructure::Hyperplanes(f) => StructureJson::Hyperplanes {
                reduced: f.reduced.iter().map(conv).collect(),
                raw: f.raw.iter().map(conv).collect(),
            },
            SupportStructure::LatticeCase { family, lattice } => StructureJson::Lattice {
                reduced: family.reduced.iter().map(conv).collect(),
                lattice: LatticeJson {
                    base_point: lattice.base_point.iter().map(rat_to_f64).collect(),
                    generators: lattice
                        .generators
                        .iter()
                        .map(|g| g.iter().map(rat_to_f64).collect())
                        .collect(),
                    p_rows: lattice.p_rows.clone(),
                    beta: lattice.beta.iter().map(rat_to_f64).collect(),
                    offset_error: lattice.offset_error,
                },
            },
            SupportStructure::WholeTorus => StructureJson::WholeTorus,
            SupportStructure::UnknownAnalytic => StructureJson::UnknownAnalytic,
            SupportStructure::UnknownSingleton(m) => StructureJson::UnknownSingleton {
                member: m.components().to_vec(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Verdict<f64>> for VerdictJson {
    fn from(v: &Verdict<f64>) -> Self {
        match v {
            Verdict::Unique { measure, residual } => Self {
                verdict: "UNIQUE".into(),
                measure: Some(measure.into()),
                residual: Some(*residual),
                reason: None,
            },
            Verdict::Inconclusive { reason } => Self {
                verdict: "INCONCLUSIVE".into(),
                measure: None,
                residual: None,
                reason: Some(reason.clone()),
            },
            Verdict::NotApplicable { reason } => Self {
                verdict: "NOT_APPLICABLE".into(),
                measure: None,
                residual: None,
                reason: Some(reason.clone()),
            },
        }
    }
}

/// Parses a spectral JSON document.
pub fn spectral_from_str(s: &str) -> Result<SpectralData<f64>> {
    let json: SpectralJson = serde_json::from_str(s)
        .map_err(|e| Error::InvalidParameter(format!("spectral JSON: {e}")))?;
    (&json).try_into()
}

/// Parses a measure JSON document.
pub fn measure_from_str(s: &str) -> Result<DiscreteMeasure<f64>> {
    let json: MeasureJson = serde_json::from_str(s)
        .map_err(|e| Error::InvalidParameter(format!("measure JSON: {e}")))?;
    (&json).try_into()
}
