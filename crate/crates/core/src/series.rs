//! Truncated power series about 0 and the coefficient transform between the
//! kernel function G and its summand function F.
//!
//! The transform is f_m = (m−1)!·g_m for m ≥ 1 with f_0 = 0; it is the
//! coefficient-level content of the Laplace-transform pipeline implemented
//! literally in [`eq3_transform`].

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Relative threshold below which a coefficient counts as a roundoff ghost.
const LEADING_EPS: f64 = 1e-14;

/// Coefficients c_0..c_M of a series truncated at order M, with the index of
/// the first nonzero coefficient. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoeffs<T> {
    coeffs: Vec<T>,
    leading: usize,
}

impl<T: Scalar> TaylorCoeffs<T> {
    /// Build from raw coefficients; entries below `1e−14·max|c|` are snapped
    /// to zero so the leading order is well defined.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        assert!(coeffs.len() >= 3, "truncation order must be at least 2");
        let max = coeffs
            .iter()
            .fold(T::zero(), |m, c| if c.abs() > m { c.abs() } else { m });
        let thresh = max * lit(LEADING_EPS);
        for c in coeffs.iter_mut() {
            if c.abs() <= thresh {
                *c = T::zero();
            }
        }
        let leading = coeffs
            .iter()
            .position(|c| *c != T::zero())
            .unwrap_or(coeffs.len()); // M + 1 sentinel for the zero series
        TaylorCoeffs { coeffs, leading }
    }

    pub fn zero(truncation_order: usize) -> Self {
        TaylorCoeffs {
            coeffs: vec![T::zero(); truncation_order + 1],
            leading: truncation_order + 1,
        }
    }

    /// Constructor for coefficients produced termwise from an already-clean
    /// series (the transforms). No ghost snapping: factorially growing
    /// outputs would otherwise lose their genuine small leading terms.
    fn from_clean(coeffs: Vec<T>) -> Self {
        let leading = coeffs
            .iter()
            .position(|c| *c != T::zero())
            .unwrap_or(coeffs.len());
        TaylorCoeffs { coeffs, leading }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index v of the first nonzero coefficient (M+1 for the zero series).
    pub fn leading_order(&self) -> usize {
        self.leading
    }

    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).copied().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.leading > self.truncation_order()
    }

    /// α·self + β·other, truncated to the shorter of the two. Coefficients
    /// that cancel down to the roundoff floor of their operands are snapped
    /// to exact zero.
    pub fn combine(&self, alpha: T, other: &Self, beta: T) -> Self {
        let m = self.truncation_order().min(other.truncation_order());
        let snap = lit::<T>(32.0) * T::epsilon();
        let coeffs = (0..=m)
            .map(|j| {
                let x = alpha * self.coeff(j);
                let y = beta * other.coeff(j);
                let v = x + y;
                if v.abs() <= snap * (x.abs() + y.abs()) {
                    T::zero()
                } else {
                    v
                }
            })
            .collect();
        TaylorCoeffs::from_clean(coeffs)
    }
}

/// The function kinds the catalog needs coefficients for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesKind<T> {
    /// x^p
    Monomial(usize),
    /// cos(a x)
    Cos(T),
    /// cosh(b x)
    Cosh(T),
    /// sech(b x) = 1 / cosh(b x)
    Sech(T),
    /// J₀(x)
    J0,
    /// e^{−c x}
    ExpNeg(T),
    /// marker for a non-analytic kernel (x² log x); carries no coefficients
    LogMarker,
}

/// Coefficients of the named function to order M.
pub fn build<T: Scalar>(kind: SeriesKind<T>, m: usize) -> Result<TaylorCoeffs<T>> {
    if m < 2 {
        return Err(Error::Series(format!("truncation order {m} < 2")));
    }
    let mut c = vec![T::zero(); m + 1];
    match kind {
        SeriesKind::Monomial(p) => {
            if p > m {
                return Err(Error::Series(format!(
                    "monomial power {p} exceeds truncation order {m}"
                )));
            }
            c[p] = T::one();
        }
        SeriesKind::Cos(a) => {
            // c_{2j} = (−1)^j a^{2j} / (2j)!
            let mut term = T::one();
            let mut j = 0usize;
            while 2 * j <= m {
                c[2 * j] = term;
                let d1 = lit::<T>((2 * j + 1) as f64);
                let d2 = lit::<T>((2 * j + 2) as f64);
                term = -term * a * a / (d1 * d2);
                j += 1;
            }
        }
        SeriesKind::Cosh(b) => {
            let mut term = T::one();
            let mut j = 0usize;
            while 2 * j <= m {
                c[2 * j] = term;
                let d1 = lit::<T>((2 * j + 1) as f64);
                let d2 = lit::<T>((2 * j + 2) as f64);
                term = term * b * b / (d1 * d2);
                j += 1;
            }
        }
        SeriesKind::Sech(b) => {
            return reciprocal(&build(SeriesKind::Cosh(b), m)?);
        }
        SeriesKind::J0 => {
            // c_{2j} = (−1)^j / (4^j (j!)²)
            let mut term = T::one();
            let mut j = 0usize;
            while 2 * j <= m {
                c[2 * j] = term;
                let jf = lit::<T>((j + 1) as f64);
                term = -term / (lit::<T>(4.0) * jf * jf);
                j += 1;
            }
        }
        SeriesKind::ExpNeg(cc) => {
            let mut term = T::one();
            for (j, slot) in c.iter_mut().enumerate() {
                *slot = term;
                term = -term * cc / lit::<T>((j + 1) as f64);
            }
        }
        SeriesKind::LogMarker => {
            return Err(Error::Series(
                "log-marker kernel is not analytic at 0; no coefficients exist".into(),
            ));
        }
    }
    // the recurrences above produce exact zeros, no ghost suppression needed
    Ok(TaylorCoeffs::from_clean(c))
}

/// Cauchy product truncated to min(M_A, M_B). A coefficient whose magnitude
/// is at the roundoff floor of its own convolution (Σ|a_i||b_{j−i}| scaled
/// by epsilon) is a cancellation ghost and is snapped to exact zero; the
/// floor is per-coefficient so genuinely tiny coefficients survive.
pub fn mul<T: Scalar>(a: &TaylorCoeffs<T>, b: &TaylorCoeffs<T>) -> TaylorCoeffs<T> {
    let m = a.truncation_order().min(b.truncation_order());
    let mut c = vec![T::zero(); m + 1];
    let mut floor = vec![T::zero(); m + 1];
    for i in 0..=m {
        let ai = a.coeff(i);
        if ai == T::zero() {
            continue;
        }
        for j in 0..=(m - i) {
            let bj = b.coeff(j);
            if bj != T::zero() {
                c[i + j] = c[i + j] + ai * bj;
                floor[i + j] = floor[i + j] + (ai * bj).abs();
            }
        }
    }
    let snap = lit::<T>(32.0) * T::epsilon();
    for (v, f) in c.iter_mut().zip(floor.iter()) {
        if v.abs() <= snap * *f {
            *v = T::zero();
        }
    }
    TaylorCoeffs::from_clean(c)
}

/// B with mul(A, B) = 1 to the truncation order; requires |c_0| > 0.
pub fn reciprocal<T: Scalar>(a: &TaylorCoeffs<T>) -> Result<TaylorCoeffs<T>> {
    let a0 = a.coeff(0);
    if a0 == T::zero() {
        return Err(Error::Series(
            "reciprocal of a series with zero constant term".into(),
        ));
    }
    let m = a.truncation_order();
    let mut c = vec![T::zero(); m + 1];
    let snap = lit::<T>(32.0) * T::epsilon();
    c[0] = a0.recip();
    for n in 1..=m {
        let mut s = T::zero();
        let mut floor = T::zero();
        for k in 1..=n {
            let term = a.coeff(k) * c[n - k];
            s = s + term;
            floor = floor + term.abs();
        }
        c[n] = if s.abs() <= snap * floor { T::zero() } else { -s / a0 };
    }
    Ok(TaylorCoeffs::from_clean(c))
}

/// Largest truncation order for which (m−1)! stays inside f64 range.
const MAX_TRANSFORM_ORDER: usize = 170;

/// The G → F coefficient map f_m = (m−1)!·g_m (f_0 = 0).
pub fn g_to_f<T: Scalar>(g: &TaylorCoeffs<T>) -> Result<TaylorCoeffs<T>> {
    check_transform_input(g)?;
    let m = g.truncation_order();
    let mut c = vec![T::zero(); m + 1];
    let mut fact = T::one(); // (m-1)!
    for j in 1..=m {
        if j >= 2 {
            fact = fact * lit::<T>((j - 1) as f64);
        }
        c[j] = fact * g.coeff(j);
    }
    Ok(TaylorCoeffs::from_clean(c))
}

/// Inverse map g_m = f_m / (m−1)!.
pub fn f_to_g<T: Scalar>(f: &TaylorCoeffs<T>) -> Result<TaylorCoeffs<T>> {
    check_transform_input(f)?;
    let m = f.truncation_order();
    let mut c = vec![T::zero(); m + 1];
    let mut fact = T::one();
    for j in 1..=m {
        if j >= 2 {
            fact = fact * lit::<T>((j - 1) as f64);
        }
        c[j] = f.coeff(j) / fact;
    }
    Ok(TaylorCoeffs::from_clean(c))
}

fn check_transform_input<T: Scalar>(g: &TaylorCoeffs<T>) -> Result<()> {
    if g.coeff(0) != T::zero() {
        return Err(Error::Series(
            "transform requires a zero constant term (G(0) = 0)".into(),
        ));
    }
    if g.truncation_order() > MAX_TRANSFORM_ORDER {
        return Err(Error::Series(format!(
            "truncation order {} exceeds the factorial range {}",
            g.truncation_order(),
            MAX_TRANSFORM_ORDER
        )));
    }
    Ok(())
}

/// The literal transform pipeline on coefficients: termwise Laplace image
/// g_m x^m → g_m m!/p^{m+1}, substitute p = 1/s, multiply by 1/s², integrate
/// termwise with the constant fixed by F(0) = 0. Coefficientwise this is
/// f_m = m!·g_m/m, identical to [`g_to_f`] up to final rounding.
pub fn eq3_transform<T: Scalar>(g: &TaylorCoeffs<T>) -> Result<TaylorCoeffs<T>> {
    check_transform_input(g)?;
    let m = g.truncation_order();
    let mut c = vec![T::zero(); m + 1];
    let mut fact = T::one(); // m!
    for j in 1..=m {
        fact = fact * lit::<T>(j as f64);
        // Laplace image coefficient of p^{-(j+1)}:
        let image = g.coeff(j) * fact;
        // p = 1/s turns it into image·s^{j+1}; times 1/s² gives image·s^{j-1};
        // integrating in s gives image·s^j/j with zero constant.
        c[j] = image / lit::<T>(j as f64);
    }
    Ok(TaylorCoeffs::from_clean(c))
}

/// Evidence classification for Σ|f_m| at x = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summability {
    SummableAtOne,
    Divergent,
}

/// Ratio-test heuristic on the trailing nonzero coefficients.
pub fn summability_check<T: Scalar>(f: &TaylorCoeffs<T>) -> Summability {
    let ratios = trailing_ratios(f);
    if ratios.is_empty() {
        // finitely many terms: trivially summable
        return Summability::SummableAtOne;
    }
    let cutoff = lit::<T>(0.999);
    if ratios.iter().any(|r| r.abs() >= cutoff) {
        Summability::Divergent
    } else {
        Summability::SummableAtOne
    }
}

/// Ratios of consecutive nonzero coefficients among the last few, paired with
/// the uniform index stride when one exists.
fn trailing_structure<T: Scalar>(f: &TaylorCoeffs<T>) -> (Vec<usize>, Vec<T>) {
    let nz: Vec<usize> = (0..=f.truncation_order())
        .filter(|&j| f.coeff(j) != T::zero())
        .collect();
    let take = 6.min(nz.len());
    let tail = nz[nz.len() - take..].to_vec();
    let ratios = tail
        .windows(2)
        .map(|w| f.coeff(w[1]) / f.coeff(w[0]))
        .collect();
    (tail, ratios)
}

fn trailing_ratios<T: Scalar>(f: &TaylorCoeffs<T>) -> Vec<T> {
    trailing_structure(f).1
}

/// Horner evaluation at |x| ≤ 1 plus a geometric tail bound inferred from the
/// trailing coefficient ratios. A tail bound of +∞ reports non-convergence
/// evidence; it is never an error.
pub fn evaluate<T: Scalar>(a: &TaylorCoeffs<T>, x: T) -> (T, T) {
    debug_assert!(x.abs() <= T::one());
    let mut v = T::zero();
    for j in (0..=a.truncation_order()).rev() {
        v = v * x + a.coeff(j);
    }
    let (tail_idx, ratios) = trailing_structure(a);
    if ratios.is_empty() || x == T::zero() {
        return (v, T::zero());
    }
    let cutoff = lit::<T>(0.999);
    // per-term ratio at this x: coefficient ratio scaled by x^stride
    let mut worst = T::zero();
    for (w, r) in tail_idx.windows(2).zip(ratios.iter()) {
        let stride = (w[1] - w[0]) as f64;
        let q = (r.abs() * x.abs().powf(lit(stride))).abs();
        if q > worst {
            worst = q;
        }
    }
    if worst >= cutoff {
        return (v, T::infinity());
    }
    let last = *tail_idx.last().expect("nonempty");
    let last_term = (a.coeff(last) * x.powf(lit(last as f64))).abs();
    (v, last_term * worst / (T::one() - worst))
}
