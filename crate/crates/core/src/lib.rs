//! Short-range-dependence certification for stationary infinitely divisible
//! moving-average random fields `X(t) = ∫ f(t − x) Λ(dx)` on `R^d`.
//!
//! The crate is `no_std` + `alloc`. Enable the `parallel` feature (which pulls
//! in `std` and rayon) to spread grid evaluations and Monte Carlo
//! replications across threads; results are identical either way.
//!
//! Module map:
//!
//! - [`levy`]: Lévy triplets and the cumulant function `K`.
//! - [`kernels`]: moving-average kernels, `L^p` norms, Λ-integrability.
//! - [`spectral`]: `σ_f²`, characteristic functions, `ρ_t` and `ρ̃_t`.
//! - [`certify`]: the sufficient SRD condition and its verdict.
//! - [`simulate`]: Riemann-sum field simulation and empirical checks.
//! - [`quad`]: adaptive Gauss–Kronrod quadrature used throughout.
#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod certify;
pub mod error;
pub mod kernels;
pub mod levy;
mod par;
pub mod quad;
pub mod simulate;
pub mod special;
pub mod spectral;

pub use certify::{certify, CertificateReport, CertifyConfig, SpectralProfile, Verdict};
pub use error::{Error, Result};
pub use kernels::{Kernel, Point};
pub use levy::{CumulantValue, LevyMeasure, LevyTriplet};
pub use quad::{Estimate, QuadOptions};
pub use simulate::{FieldSample, SimConfig, TestMeasure};
pub use spectral::{Spectral, SpectralOptions};

pub use num_complex::Complex64;
