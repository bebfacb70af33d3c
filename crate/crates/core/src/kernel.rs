//! The computational objects of the identity lab: the exact 1-D reduction of
//! the kernel double integral, the direct 2-D evaluation, the closed-form
//! right-hand side for monomial kernels, the generalized-Euler-constant
//! series, the sum-minus-integral partial terms, and the empirical decay-rate
//! fit.
//!
//! Reduction: in ∫₀¹∫₀¹ (1−x)/(1−xy)·G(−log xy)/log²(xy) dx dy substitute
//! u = xy at fixed x, swap the integration order, integrate (1−x)/x over
//! x ∈ (u,1), then set u = e^{−t}. With φ(t) = G(t)/t² this yields
//! ∫₀^∞ φ(t)·W(t) dt where W(t) = e^{−t}(t − 1 + e^{−t})/(1 − e^{−t}).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{
    exp_sinh_0inf_env, tanh_sinh_01_with, tensor_2d_01_with, QuadResult, MAX_LEVEL_1D,
    MAX_LEVEL_2D,
};
use crate::scalar::{int, lit, Scalar};
use crate::series::{self, Summability, TaylorCoeffs};
use crate::specfun::{self, gamma_fn, zeta_reg};

/// Coefficients of (t − 1 + e^{−t})/t² = Σ (−1)^k t^k/(k+2)!, used below
/// t = 0.1 where the direct form cancels catastrophically.
const W_TAYLOR: [f64; 11] = [
    0.5,
    -0.16666666666666667,
    0.041666666666666667,
    -0.0083333333333333333,
    0.0013888888888888889,
    -0.00019841269841269841,
    2.4801587301587302e-5,
    -2.7557319223985891e-6,
    2.7557319223985891e-7,
    -2.5052108385441719e-8,
    2.0876756987868099e-9,
];

/// W(t) = e^{−t}(t − 1 + e^{−t})/(1 − e^{−t}) for t > 0, relative error
/// ≤ 1e−13; W(t)/t → 1/2 as t → 0⁺ and ∫₀^∞ W = ζ(2) − 1.
pub fn weight_w<T: Scalar>(t: T) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::domain("weight_w", format!("t = {t} is not > 0")));
    }
    Ok(weight_w_raw(t))
}

/// W(t)/t, cancellation-safe down to t → 0⁺ (limit 1/2).
pub fn weight_w_over_t<T: Scalar>(t: T) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::domain("weight_w", format!("t = {t} is not > 0")));
    }
    Ok(weight_w_over_t_raw(t))
}

#[inline]
fn weight_w_raw<T: Scalar>(t: T) -> T {
    weight_w_over_t_raw(t) * t
}

#[inline]
fn weight_w_over_t_raw<T: Scalar>(t: T) -> T {
    if t >= lit(746.0) {
        // e^{-t} underflows; W is identically zero at double precision
        return T::zero();
    }
    let em = (-t).exp();
    let denom = -(-t).exp_m1(); // 1 − e^{−t}, no cancellation
    if t < lit(0.1) {
        // numerator t−1+e^{−t} = t²·Σ (−1)^k t^k/(k+2)!
        let mut p = T::zero();
        for &c in W_TAYLOR.iter().rev() {
            p = p * t + lit(c);
        }
        em * t * p / denom
    } else {
        em * (t - T::one() + em) / (denom * t)
    }
}

/// A kernel integrand φ(t) = G(t)/t² in cancellation-safe form.
///
/// `small_t_order` is the signed exponent p with φ(t) ~ const·t^{−p} as
/// t → 0⁺ (p = 2 − v for an analytic kernel of leading order v; negative
/// values mean φ vanishes at 0; the singular range is p ∈ (0, 2)).
/// For p ≥ 1 the evaluator needs the product t^p·φ(t) in a form that stays
/// finite at tiny t, supplied as `tp_phi`.
#[derive(Clone)]
pub struct StableIntegrand<T> {
    pub phi: Arc<dyn Fn(T) -> T + Send + Sync>,
    pub small_t_order: T,
    /// Bounds |φ| at the domain ends; only consulted when an integrand
    /// evaluation comes back non-finite.
    pub growth_envelope: Arc<dyn Fn(T) -> T + Send + Sync>,
    /// t ↦ t^p·φ(t) in overflow-safe form, required when p ≥ 1.
    pub tp_phi: Option<Arc<dyn Fn(T) -> T + Send + Sync>>,
}

impl<T: Scalar> StableIntegrand<T> {
    pub fn new(
        phi: impl Fn(T) -> T + Send + Sync + 'static,
        small_t_order: T,
        growth_envelope: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        StableIntegrand {
            phi: Arc::new(phi),
            small_t_order,
            growth_envelope: Arc::new(growth_envelope),
            tp_phi: None,
        }
    }

    pub fn with_tp_phi(mut self, tp_phi: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        self.tp_phi = Some(Arc::new(tp_phi));
        self
    }

    /// Effective singular order, clamped into [0, 2).
    pub fn sing_order_p(&self) -> T {
        self.small_t_order.max(T::zero())
    }

    /// Numerical check that t^p·φ(t) stabilizes to a finite nonzero limit as
    /// t → 0⁺ (sampled at 1e−4, 1e−6, 1e−8). Returns the stabilized value.
    pub fn small_t_limit(&self) -> Result<T> {
        let p = self.small_t_order;
        let samples: Vec<T> = [1e-4, 1e-6, 1e-8]
            .iter()
            .map(|&t| {
                let t = lit::<T>(t);
                t.powf(p) * (self.phi)(t)
            })
            .collect();
        let a = samples[1];
        let b = samples[2];
        if !a.is_finite() || !b.is_finite() || b == T::zero() {
            return Err(Error::domain(
                "small_t_limit",
                "t^p phi(t) does not stabilize to a finite nonzero value".to_string(),
            ));
        }
        let drift = ((a - b) / b).abs();
        if drift > lit(1e-2) {
            return Err(Error::domain(
                "small_t_limit",
                format!("ratio drift {drift} at small t"),
            ));
        }
        Ok(b)
    }
}

/// The reduced kernel integral ∫₀^∞ φ(t)·W(t) dt by exp-sinh quadrature.
///
/// For singular order p ≥ 1 the integrand is assembled as
/// (t^p·φ(t))·(W(t)/t)·t^{1−p} so no intermediate overflows or underflows.
pub fn lhs_reduced<T: Scalar>(
    case: &StableIntegrand<T>,
    tol: T,
    max_level: u32,
) -> Result<QuadResult<T>> {
    let p = case.sing_order_p();
    let env = case.growth_envelope.clone();
    let envelope = move |t: T| (env)(t) * weight_w_raw(t);
    if p >= T::one() {
        let tp_phi = case.tp_phi.clone().ok_or_else(|| {
            Error::domain(
                "lhs_reduced",
                format!("singular order p = {p} >= 1 requires the paired form tp_phi"),
            )
        })?;
        let one_minus_p = T::one() - p;
        exp_sinh_0inf_env(
            move |t| {
                let w_t = weight_w_over_t_raw(t);
                if w_t == T::zero() {
                    return T::zero();
                }
                tp_phi(t) * w_t * t.powf(one_minus_p)
            },
            Some(envelope),
            tol,
            max_level.min(MAX_LEVEL_1D),
        )
    } else {
        let phi = case.phi.clone();
        exp_sinh_0inf_env(
            move |t| {
                let w = weight_w_raw(t);
                if w == T::zero() {
                    // also shields φ from arguments beyond its support cap
                    return T::zero();
                }
                phi(t) * w
            },
            Some(envelope),
            tol,
            max_level.min(MAX_LEVEL_1D),
        )
    }
}

/// The direct 2-D evaluation ∫₀¹∫₀¹ (1−x)/(1−xy)·φ(−log xy) dx dy, an
/// independent cross-check of [`lhs_reduced`] (target agreement 1e−4).
pub fn lhs_direct_2d<T: Scalar>(
    case: &StableIntegrand<T>,
    tol: T,
    max_level: u32,
) -> Result<QuadResult<T>> {
    let phi = case.phi.clone();
    let half = lit::<T>(0.5);
    // log from whichever representation of the coordinate is accurate
    let log_stable = move |v: T, omv: T| -> T {
        if v < half {
            v.ln()
        } else {
            (-omv).ln_1p()
        }
    };
    tensor_2d_01_with(
        move |x, omx, y, omy| {
            // 1−xy and t = −log(xy) from the endpoint distances
            let omxy = omx + omy - omx * omy;
            let t = -(log_stable(x, omx) + log_stable(y, omy));
            if t <= T::zero() {
                return T::zero();
            }
            omx / omxy * phi(t)
        },
        tol,
        max_level.min(MAX_LEVEL_2D),
    )
}

/// Γ(s+2)·(ζ(s+2) − 1/(s+1)) for s > −2, continuous at s = −1 (value γ).
pub fn rhs_monomial<T: Scalar>(s: T) -> Result<T> {
    if !(s > lit(-2.0)) {
        return Err(Error::domain("rhs_monomial", format!("s = {s} is not > -2")));
    }
    let shifted = s + lit(2.0);
    Ok(gamma_fn(shifted)? * zeta_reg(shifted)?)
}

/// Value and tail bound of the generalized-Euler-constant series.
#[derive(Debug, Clone, Copy)]
pub struct CSeries<T> {
    pub value: T,
    pub tail_bound: T,
    /// Number of series terms actually summed (coefficients + extrapolation).
    pub terms: usize,
}

/// c(F) = f₁γ + Σ_{σ≥2} f_σ·(ζ(σ) − 1/(σ−1)) evaluated from the kernel
/// coefficients: f_σ = (σ−1)!·g_σ.
///
/// The truncated sum is completed with a geometric extrapolation of the
/// trailing coefficient ratio; for the catalog kernels that ratio is exact
/// (cos gives −a² per step), so the extrapolated tail is accurate to
/// roundoff, not merely bounded.
pub fn c_series<T: Scalar>(g: &TaylorCoeffs<T>) -> Result<CSeries<T>> {
    let f = series::g_to_f(g)?;
    if series::summability_check(&f) == Summability::Divergent {
        return Err(Error::NotSummable(
            "trailing coefficient ratios of F give no evidence of absolute convergence at 1"
                .into(),
        ));
    }
    let gamma = specfun::constant::<T>(specfun::ConstantName::Gamma);
    let mut value = f.coeff(1) * gamma;
    let mut terms = 0usize;
    let nz: Vec<usize> = (2..=f.truncation_order())
        .filter(|&j| f.coeff(j) != T::zero())
        .collect();
    for &sigma in &nz {
        value = value + f.coeff(sigma) * zeta_reg(int(sigma as i64))?;
        terms += 1;
    }
    // geometric tail from the trailing ratio structure
    let mut tail_bound = T::epsilon() * (T::one() + value.abs());
    if nz.len() >= 3 {
        let take = 4.min(nz.len() - 1);
        let ratios: Vec<T> = nz[nz.len() - take - 1..]
            .windows(2)
            .map(|w| f.coeff(w[1]) / f.coeff(w[0]))
            .collect();
        let rho = *ratios.last().expect("nonempty");
        let spread = ratios
            .iter()
            .map(|r| (*r - rho).abs())
            .fold(T::zero(), T::max);
        let stride = nz[nz.len() - 1] - nz[nz.len() - 2];
        if rho.abs() < T::one() {
            let mut coeff = f.coeff(nz[nz.len() - 1]);
            let mut sigma = nz[nz.len() - 1];
            let mut tail = T::zero();
            let cut = T::epsilon() * T::epsilon() * (T::one() + value.abs());
            while coeff.abs() * rho.abs() > cut && terms < 4000 {
                coeff = coeff * rho;
                sigma += stride;
                tail = tail + coeff * zeta_reg(int(sigma as i64))?;
                terms += 1;
            }
            value = value + tail;
            // model uncertainty: ratio drift over the observed window
            tail_bound = tail_bound
                + spread * tail.abs() / (T::one() - rho.abs())
                + coeff.abs() * rho.abs() / (T::one() - rho.abs());
        } else {
            // summable by the gate but no usable geometric model; report the
            // first omitted scale as the bound
            tail_bound = tail_bound + f.coeff(nz[nz.len() - 1]).abs();
        }
    }
    Ok(CSeries {
        value,
        tail_bound,
        terms,
    })
}

/// S(N) = Σ_{k=1}^N F(1/k) − ∫₁^N F(1/t) dt, the partial term whose limit is
/// the kernel integral. The integral is computed as ∫_{1/N}^1 F(x)/x² dx by
/// tanh-sinh after the substitution t = 1/x.
pub fn partial_term<T: Scalar, F: Fn(T) -> T>(f_eval: F, n: u32) -> Result<T> {
    if n < 2 {
        return Err(Error::domain("partial_term", format!("N = {n} is not >= 2")));
    }
    // compensated summation of the sample sum
    let mut sum = T::zero();
    let mut comp = T::zero();
    for k in 1..=n {
        let term = f_eval(int::<T>(k as i64).recip());
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let a = int::<T>(n as i64).recip(); // lower endpoint 1/N
    let width = T::one() - a;
    let integral = tanh_sinh_01_with(
        |xi, _| {
            let x = a + width * xi;
            f_eval(x) / (x * x)
        },
        lit(1e-12),
        MAX_LEVEL_1D,
    )?;
    Ok(sum - integral.value * width)
}

/// One point of a decay-rate sweep.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RatePoint<T> {
    pub n: u32,
    pub s_n: T,
    pub err: T,
}

/// Least-squares slope and r² of log err against log N. The expected slope
/// for a kernel of leading order v is −v.
pub fn rate_fit<T: Scalar>(points: &[RatePoint<T>]) -> Result<(T, T)> {
    if points.len() < 5 {
        return Err(Error::RateFit(format!(
            "need at least 5 points, got {}",
            points.len()
        )));
    }
    for w in points.windows(2) {
        if w[1].n <= w[0].n {
            return Err(Error::RateFit("N values must be strictly increasing".into()));
        }
    }
    if points.iter().any(|p| !(p.err > T::zero())) {
        return Err(Error::RateFit("all errors must be positive".into()));
    }
    let n = int::<T>(points.len() as i64);
    let xs: Vec<T> = points.iter().map(|p| int::<T>(p.n as i64).ln()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.err.ln()).collect();
    let mx = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let my = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    let mut syy = T::zero();
    for (&x, &y) in xs.iter().zip(ys.iter()) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    if sxx == T::zero() || syy == T::zero() {
        return Err(Error::RateFit("degenerate spread in the fit data".into()));
    }
    let slope = sxy / sxx;
    let r2 = sxy * sxy / (sxx * syy);
    Ok((slope, r2))
}
