//! Numerical verification lab for kernel-integral identities of generalized
//! Euler constants.
//!
//! The object under test is the family of identities built on the kernel
//! double integral
//!
//! ```text
//! ∫₀¹∫₀¹ (1−x)/(1−xy) · G(−log xy)/log²(xy) dx dy
//! ```
//!
//! whose monomial case G = x^{s+2} is Hadjicostas's formula
//! Γ(s+2)(ζ(s+2) − 1/(s+1)). Every catalog identity is evaluated along
//! several independent computation paths: the exact 1-D reduction
//! ∫₀^∞ G(t)/t²·W(t) dt with W(t) = e^{−t}(t−1+e^{−t})/(1−e^{−t}), the raw
//! 2-D integral, the generalized-Euler-constant series, the printed closed
//! form, and the sum-minus-integral partial terms. The paths must agree to
//! stated tolerances, producing a machine-readable verdict per identity.
//!
//! Core math (special functions, series arithmetic, quadrature, kernel
//! evaluators) is generic over the scalar type via [`scalar::Scalar`];
//! the catalog and verification layers run at the concrete [`Real`].

// Frozen reference values keep their full decimal expansions (rustc rounds
// to nearest), domain guards use `!(x > 0)` so NaN is rejected too, and the
// coefficient loops index in lockstep with a running factorial.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod catalog;
mod error;
pub mod kernel;
pub mod quadrature;
pub mod scalar;
pub mod series;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};

/// Working scalar of the verification suites (binary64; all stated
/// tolerances assume it).
pub type Real = f64;

/// Truncated power series over the working scalar.
pub type Series = series::TaylorCoeffs<Real>;

/// Quadrature result over the working scalar.
pub type Quad = quadrature::QuadResult<Real>;

/// Kernel integrand over the working scalar.
pub type Integrand = kernel::StableIntegrand<Real>;
