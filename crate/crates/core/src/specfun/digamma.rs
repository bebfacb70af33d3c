//! Digamma ψ(z) for complex z with Re z > 0.
//!
//! Shift-to-large-argument recurrence ψ(z) = ψ(z+1) − 1/z followed by the
//! asymptotic expansion ψ(z) ≈ ln z − 1/(2z) − Σ B_{2k}/(2k z^{2k}).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

// B_{2k}/(2k) for k = 1..=8
const ASYMP: [f64; 8] = [
    0.083333333333333333,
    -0.0083333333333333333,
    0.0039682539682539683,
    -0.0041666666666666667,
    0.0075757575757575758,
    -0.021092796092796093,
    0.083333333333333333,
    -0.44325980392156863,
];

/// ψ(z) for Re z > 0, componentwise relative error ≤ 1e−12.
/// Real input yields an exactly-zero imaginary part.
pub fn digamma<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.re > T::zero()) {
        return Err(Error::domain(
            "digamma",
            format!("Re z = {} is not > 0", z.re),
        ));
    }
    let mut shifted = z;
    let mut acc = Complex::new(T::zero(), T::zero());
    let threshold = lit::<T>(12.0);
    while shifted.re < threshold {
        acc = acc - shifted.inv();
        shifted = shifted + Complex::new(T::one(), T::zero());
    }
    let mut res = acc + shifted.ln() - shifted.inv() * lit::<T>(0.5);
    let inv2 = (shifted * shifted).inv();
    let mut pow = inv2;
    for &c in ASYMP.iter() {
        res = res - pow * lit::<T>(c);
        pow = pow * inv2;
    }
    Ok(res)
}

/// ψ(x) for real x > 0.
pub fn digamma_real<T: Scalar>(x: T) -> Result<T> {
    Ok(digamma(Complex::new(x, T::zero()))?.re)
}
