//! Total-variation minimal extrapolation of measures on the torus.
//!
//! Given finitely many Fourier coefficients of an unknown measure on `𝕋^d`,
//! this crate computes the minimal-extrapolation value `ε`, the structural
//! frequency set `Γ`, dual certificates and their deficit polynomials,
//! candidate support sets (points, hyperplanes, lattices), uniqueness
//! verdicts, and positive-definite extensions of Toeplitz moment windows.
//!
//! The numeric core is generic over the scalar type (`f32`/`f64`) through
//! [`scalar::Real`]; the lattice constructions use exact rational arithmetic.
//! The `f64` aliases below are what the CLI and the test suites use.

pub mod certificate;
pub mod error;
pub mod grid;
pub mod io;
pub mod measure;
pub mod positivity;
pub mod rational;
pub mod roots;
pub mod scalar;
pub mod solver;
pub mod special;
pub mod structure;
pub mod torus;
pub mod trig;
pub mod uniqueness;

pub use error::{Error, Result};

/// `f64` working aliases for the main domain types.
pub type Point64 = torus::TorusPoint<f64>;
pub type Measure64 = measure::DiscreteMeasure<f64>;
pub type Spectral64 = measure::SpectralData<f64>;
pub type Poly64 = trig::TrigPolynomial<f64>;
pub type Complex64 = scalar::Cplx<f64>;
pub type SolveReport64 = solver::SolveReport<f64>;
pub type Certificate64 = certificate::Certificate<f64>;
pub type Structure64 = structure::SupportStructure<f64>;
