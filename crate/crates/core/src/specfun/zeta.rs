//! Riemann zeta for real s > 1 and the pole-subtracted ζ(s) − 1/(s−1).
//!
//! s > 1 uses Euler–Maclaurin summation with an explicit remainder bound;
//! 0 < s < 1 goes through the alternating eta series (Borwein acceleration);
//! a Stieltjes expansion bridges the s = 1 pole so `zeta_reg` is continuous.

use crate::error::{Error, Result};
use crate::scalar::{int, lit, Scalar};

/// B_{2k}/(2k)! for k = 1..=13; shared with the Hurwitz evaluator.
pub(super) const BERN_OVER_FACT: [f64; 13] = [
    0.083333333333333333,
    -0.0013888888888888889,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
];

// Stieltjes constants γ_0..γ_4 for the expansion
// ζ(s) − 1/(s−1) = Σ (−1)^n γ_n (s−1)^n / n!.
const STIELTJES: [f64; 5] = [
    0.577215664901532860606512090082,
    -0.072815845483676724860586375875,
    -0.009690363192872318484530386035,
    0.002053834420303345866160046543,
    0.002325370065467300057468170178,
];

/// ζ(s) for s > 1, relative error ≤ 1e−13.
pub fn zeta<T: Scalar>(s: T) -> Result<T> {
    if !(s > T::one()) {
        return Err(Error::domain("zeta", format!("s = {s} is not > 1")));
    }
    Ok(zeta_gt1(s))
}

/// ζ(s) − 1/(s−1) for s > 0, continuous through s = 1 where the value is γ.
pub fn zeta_reg<T: Scalar>(s: T) -> Result<T> {
    if !(s > T::zero()) {
        return Err(Error::domain("zeta_reg", format!("s = {s} is not > 0")));
    }
    let delta = s - T::one();
    if delta.abs() < lit(1e-4) {
        // local expansion around the pole
        let mut sum = T::zero();
        let mut dpow = T::one();
        let mut fact = 1.0;
        for (n, &g) in STIELTJES.iter().enumerate() {
            if n > 0 {
                dpow = dpow * (-delta);
                fact *= n as f64;
            }
            sum = sum + lit::<T>(g / fact) * dpow;
        }
        return Ok(sum);
    }
    let z = if s > T::one() { zeta_gt1(s) } else { zeta_eta(s) };
    Ok(z - delta.recip())
}

fn zeta_gt1<T: Scalar>(s: T) -> T {
    if s >= lit(40.0) {
        // direct Dirichlet series, converges to machine precision immediately
        let mut acc = T::one();
        let mut k = 2i64;
        loop {
            let term = int::<T>(k).powf(-s);
            acc = acc + term;
            if term < acc * T::epsilon() || k > 64 {
                return acc;
            }
            k += 1;
        }
    }
    zeta_em(s)
}

/// Euler–Maclaurin with N = 32 and an explicit tail: the correction terms
/// decay by a factor ≈ (s+2j)²/(2πN)² per step, so for s < 40 the first
/// omitted term is far below 1e−16 relative.
fn zeta_em<T: Scalar>(s: T) -> T {
    let n = 32i64;
    let nf = int::<T>(n);
    let mut acc = T::zero();
    for k in 1..n {
        acc = acc + int::<T>(k).powf(-s);
    }
    let npow = nf.powf(-s);
    acc = acc + npow * lit(0.5);
    acc = acc + npow * nf / (s - T::one());
    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s; // s(s+1)...(s+2j-2); just s at j = 1
    let mut scale = npow / nf; // N^{-s-2j+1}; N^{-s-1} at j = 1
    for (jm1, &b) in BERN_OVER_FACT.iter().enumerate() {
        let term = lit::<T>(b) * rising * scale;
        acc = acc + term;
        if term.abs() < acc.abs() * T::epsilon() {
            break;
        }
        let j = (jm1 + 1) as f64;
        rising = rising * (s + lit(2.0 * j - 1.0)) * (s + lit(2.0 * j));
        scale = scale / (nf * nf);
    }
    acc
}

/// Borwein's accelerated alternating (eta) series for 0 < s < 1:
/// ζ(s) = η(s)/(1 − 2^{1−s}); error ~ (3+√8)^{−n}.
fn zeta_eta<T: Scalar>(s: T) -> T {
    let n = 32usize;
    // d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = vec![T::zero(); n + 1];
    let mut t = (int::<T>(n as i64)).recip(); // i = 0 term
    let mut sum = t;
    d[0] = int::<T>(n as i64) * sum;
    for i in 0..n {
        let i_ = int::<T>(i as i64);
        let n_ = int::<T>(n as i64);
        t = t * (n_ + i_) * lit(4.0) * (n_ - i_)
            / ((lit::<T>(2.0) * i_ + T::one()) * (lit::<T>(2.0) * i_ + lit(2.0)));
        sum = sum + t;
        d[i + 1] = n_ * sum;
    }
    let dn = d[n];
    let mut acc = T::zero();
    let mut sign = T::one();
    for (k, dk) in d.iter().enumerate().take(n) {
        acc = acc + sign * (*dk - dn) / int::<T>(k as i64 + 1).powf(s);
        sign = -sign;
    }
    let eta = -acc / dn;
    eta / (T::one() - lit::<T>(2.0).powf(T::one() - s))
}
