//! Reference spectral inputs, constructed from the measure layer (never
//! hand-typed numbers). The committed JSON fixtures are generated from these
//! and a test pins the file contents to the constructors.

use minext::measure::{DiscreteMeasure, SpectralData};
use minext::scalar::Cplx;
use minext::special::{cantor_spectral_data, surface_fourier_two_lines, CantorParams};
use minext::torus::{Frequency, FrequencySet, TorusPoint};

fn c64(re: f64, im: f64) -> Cplx<f64> {
    Cplx::new(re, im)
}

fn lam_1d() -> FrequencySet {
    FrequencySet::range_1d(-1, 1)
}

/// `δ₀ + δ_{1/2}` on `{−1, 0, 1}`.
pub fn spectral_e1() -> SpectralData<f64> {
    let mu = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(0.5), c64(1.0, 0.0)),
        ],
    );
    mu.fourier_transform(&lam_1d()).expect("dimension 1")
}

/// `δ₀ − δ_{1/2}` on `{−1, 0, 1}`.
pub fn spectral_e2() -> SpectralData<f64> {
    let mu = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(0.5), c64(-1.0, 0.0)),
        ],
    );
    mu.fourier_transform(&lam_1d()).expect("dimension 1")
}

/// `δ₀ − δ_{1/4}` on `{−1, 0, 1}`.
pub fn spectral_e3() -> SpectralData<f64> {
    let mu = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(0.25), c64(-1.0, 0.0)),
        ],
    );
    mu.fourier_transform(&lam_1d()).expect("dimension 1")
}

/// `δ₀ + e^{iπ/3} δ_{1/3}` on `{−1, 0, 1}`.
pub fn spectral_e4() -> SpectralData<f64> {
    let w = Cplx::from_polar(1.0, std::f64::consts::PI / 3.0);
    let mu = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(1.0 / 3.0), w),
        ],
    );
    mu.fourier_transform(&lam_1d()).expect("dimension 1")
}

/// `δ_{(0,0)} + δ_{(1/2,1/2)}` on `{−1,0,1}² ∖ {(1,−1), (−1,1)}`.
pub fn spectral_e5() -> SpectralData<f64> {
    let lambda = FrequencySet::box_nd(2, -1, 1)
        .without(&[Frequency::new(vec![1, -1]), Frequency::new(vec![-1, 1])])
        .expect("still nonempty");
    let mu = DiscreteMeasure::from_atoms(
        2,
        [
            (TorusPoint::new(vec![0.0, 0.0]), c64(1.0, 0.0)),
            (TorusPoint::new(vec![0.5, 0.5]), c64(1.0, 0.0)),
        ],
    );
    mu.fourier_transform(&lambda).expect("dimension 2")
}

/// `δ₀ − δ_{0.01}` on `{−1, 0, 1}` (the nearly-merged pair).
pub fn spectral_e6() -> SpectralData<f64> {
    let mu = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(0.01), c64(-1.0, 0.0)),
        ],
    );
    mu.fourier_transform(&lam_1d()).expect("dimension 1")
}

/// Cantor-measure coefficients on `{−8, …, 8}` (truncation 40).
pub fn spectral_cantor() -> SpectralData<f64> {
    cantor_spectral_data(&CantorParams { q: 3, truncation: 40 }, 8).expect("valid parameters")
}

/// The two-horizontal-lines measure on `{−2, …, 2}²` (the window must reach
/// the flat frequencies `(0, ±2)`).
pub fn spectral_twolines() -> SpectralData<f64> {
    let lambda = FrequencySet::box_nd(2, -2, 2);
    let values = lambda
        .iter()
        .map(|m| c64(surface_fourier_two_lines::<f64>(m), 0.0))
        .collect();
    SpectralData::new(lambda, values).expect("aligned")
}

/// All fixtures by file stem.
pub fn all() -> Vec<(&'static str, SpectralData<f64>)> {
    vec![
        ("e1", spectral_e1()),
        ("e2", spectral_e2()),
        ("e3", spectral_e3()),
        ("e4", spectral_e4()),
        ("e5", spectral_e5()),
        ("e6", spectral_e6()),
        ("cantor", spectral_cantor()),
        ("twolines", spectral_twolines()),
    ]
}

/// Canonical JSON for a fixture (pretty-printed, trailing newline).
pub fn fixture_json(data: &SpectralData<f64>) -> String {
    let json = minext::io::SpectralJson::from(data);
    let mut s = serde_json::to_string_pretty(&json).expect("serializable");
    s.push('\n');
    s
}
