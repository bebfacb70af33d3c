//! Double-precision special functions and named constants.
//!
//! Everything here is pure and reentrant; coefficient tables are compile-time
//! constants, so values may be shared freely across concurrent tasks.

mod bessel;
mod digamma;
mod gamma;
mod polygamma;
mod zeta;

pub use bessel::{bessel_j0, J0_SWITCH};
pub use digamma::{digamma, digamma_real};
pub use gamma::gamma_fn;
pub use polygamma::polygamma;
pub use zeta::{zeta, zeta_reg};

use crate::scalar::{lit, Scalar};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;
/// Catalan's constant C = Σ (−1)^k/(2k+1)².
pub const CATALAN: f64 = 0.915965594177219015054603514933;
/// ln A where A is the Glaisher–Kinkelin constant, ln A = 1/12 − ζ′(−1).
pub const LN_GLAISHER: f64 = 0.248754477033784262547316288418;
/// ln π.
pub const LN_PI: f64 = 1.144729885849400174143427351353;

/// The fixed set of named constants used by the identity catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantName {
    Gamma,
    Pi,
    Catalan,
    LogGlaisher,
    Log2,
    LogPi,
    Sqrt2,
}

#[derive(Debug, Clone, Copy)]
pub struct SpecialConstant {
    pub name: ConstantName,
    pub value: f64,
}

/// The closed, fixed constant set: {γ, π, C, ln A, ln 2, ln π, √2}.
pub fn constants() -> [SpecialConstant; 7] {
    use ConstantName::*;
    [
        SpecialConstant { name: Gamma, value: EULER_GAMMA },
        SpecialConstant { name: Pi, value: std::f64::consts::PI },
        SpecialConstant { name: Catalan, value: CATALAN },
        SpecialConstant { name: LogGlaisher, value: LN_GLAISHER },
        SpecialConstant { name: Log2, value: std::f64::consts::LN_2 },
        SpecialConstant { name: LogPi, value: LN_PI },
        SpecialConstant { name: Sqrt2, value: std::f64::consts::SQRT_2 },
    ]
}

/// Look up a named constant in the working scalar type.
pub fn constant<T: Scalar>(name: ConstantName) -> T {
    let v = constants()
        .iter()
        .find(|c| c.name == name)
        .expect("constant set is closed")
        .value;
    lit(v)
}
