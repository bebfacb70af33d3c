//! Bessel function J₀: power series below [`J0_SWITCH`], Hankel asymptotic
//! expansion beyond.
//!
//! Near the switch point the two regimes agree to ~1e−11 absolute, which is
//! the f64 floor: the power series loses digits to cancellation (its terms
//! grow like I₀(x) before they shrink) while the asymptotic series bottoms
//! out at its smallest term. Away from the switch both sides are good to
//! better than 1e−13.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Regime boundary between the power series and the Hankel expansion.
pub const J0_SWITCH: f64 = 12.0;

/// J₀(x) for 0 ≤ x ≤ 745 (the largest argument reachable under the e^{−t}
/// reduction weight before that weight underflows).
pub fn bessel_j0<T: Scalar>(x: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::domain("bessel_j0", format!("x = {x} is not >= 0")));
    }
    if x > lit(745.0) {
        return Err(Error::domain(
            "bessel_j0",
            format!("x = {x} exceeds the supported range 745"),
        ));
    }
    if x <= lit(J0_SWITCH) {
        Ok(j0_series(x))
    } else {
        Ok(j0_hankel(x))
    }
}

/// Σ (−1)^j (x/2)^{2j} / (j!)², compensated summation.
pub(crate) fn j0_series<T: Scalar>(x: T) -> T {
    let q = -(x * x) * lit::<T>(0.25);
    let mut term = T::one();
    let mut sum = T::one();
    let mut comp = T::zero(); // Kahan carry
    for j in 1..200i64 {
        let jf = lit::<T>(j as f64);
        term = term * q / (jf * jf);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < T::epsilon() * T::epsilon() {
            break;
        }
    }
    sum
}

/// Hankel expansion J₀(x) ≈ √(2/(πx)) (P cos χ − Q sin χ), χ = x − π/4,
/// truncated at the smallest term (the series is asymptotic).
pub(crate) fn j0_hankel<T: Scalar>(x: T) -> T {
    let inv = x.recip();
    // b_m = b_{m−1} (2m−1)²/(8m); P takes even m, Q odd
    let mut b = T::one(); // b_0
    let mut p = T::one();
    let mut q = T::zero();
    let mut xpow = T::one(); // x^{-m}
    let mut prev_mag = T::infinity();
    for m in 1..28i64 {
        let mf = lit::<T>(m as f64);
        let odd = lit::<T>((2 * m - 1) as f64);
        b = b * odd * odd / (lit::<T>(8.0) * mf);
        xpow = xpow * inv;
        let mag = b * xpow;
        if mag > prev_mag {
            break; // past the optimal truncation point
        }
        prev_mag = mag;
        // sign pattern: P = Σ (−1)^k b_{2k} x^{−2k}, Q = Σ (−1)^{k+1} b_{2k+1} x^{−2k−1}
        let k = m / 2;
        if m % 2 == 0 {
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            p = p + sign * mag;
        } else {
            let sign = if k % 2 == 0 { -T::one() } else { T::one() };
            q = q + sign * mag;
        }
    }
    let chi = x - T::FRAC_PI_4();
    let amp = (lit::<T>(2.0) / (T::PI() * x)).sqrt();
    amp * (p * chi.cos() - q * chi.sin())
}
