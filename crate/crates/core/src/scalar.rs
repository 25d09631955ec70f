//! Scalar abstraction for the floating-point parts of the crate.
//!
//! Everything numeric is generic over [`Real`], so the same code runs in
//! `f32` or `f64` (the crate root exports `f64` aliases). The exact-arithmetic
//! lattice routines live in [`crate::rational`] and are not scalar-generic.

use num_complex::Complex;
use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar usable throughout the crate.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Complex number over a crate scalar.
pub type Cplx<T> = Complex<T>;

/// Converts an `f64` literal (tolerances, constants) into the working scalar.
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 literal must convert")
}

/// `e^{2πi t}` as a complex number.
pub fn unit_phase<T: Real>(t: T) -> Cplx<T> {
    let angle = T::TAU() * t;
    Cplx::new(angle.cos(), angle.sin())
}

/// Hermitian inner product `Σ a_i conj(b_i)`, linear in the first argument.
pub fn cplx_dot<T: Real>(a: &[Cplx<T>], b: &[Cplx<T>]) -> Cplx<T> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Cplx::new(T::zero(), T::zero());
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x * y.conj();
    }
    acc
}

/// Euclidean norm of a complex vector.
pub fn cplx_norm2<T: Real>(v: &[Cplx<T>]) -> T {
    v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
}

/// `ℓ¹` norm (sum of moduli) of a complex vector.
pub fn cplx_norm1<T: Real>(v: &[Cplx<T>]) -> T {
    v.iter().fold(T::zero(), |s, z| s + z.norm())
}

/// `ℓ∞` norm (max modulus) of a complex vector.
pub fn cplx_norm_inf<T: Real>(v: &[Cplx<T>]) -> T {
    v.iter().fold(T::zero(), |s, z| s.max(z.norm()))
}
