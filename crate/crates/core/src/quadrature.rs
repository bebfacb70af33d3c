//! Double-exponential quadrature: tanh-sinh on (0,1), exp-sinh on (0,∞),
//! and an iterated tensor product on the open unit square.
//!
//! Both engines refine a trapezoidal sum by step halving from h = 1; level L
//! adds the odd multiples of h·2^{−L}. Within a level, nodes are summed in
//! ascending |u| so results are bit-deterministic. `err_est` is the absolute
//! difference between the last two refinement levels.

use std::cell::{Cell, RefCell};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Hard cap on the 1-D refinement depth (h down to 2^{−12}).
pub const MAX_LEVEL_1D: u32 = 12;
/// Per-axis cap for the 2-D tensor rule.
pub const MAX_LEVEL_2D: u32 = 9;

/// Parameter range guard for u on the tanh-sinh map (nodes underflow beyond).
const U_CAP_01: f64 = 6.5;
/// Parameter range guard for u on the exp-sinh map.
const U_CAP_0INF: f64 = 7.5;

/// Weighted contributions below `floor` are treated as exhausted tail.
const WEIGHT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    /// |value(L) − value(L−1)| for the final level L (or a stricter bound).
    pub err_est: T,
    pub levels_used: u32,
    /// Count of integrand calls actually made.
    pub evaluations: u64,
    /// False when the level cap was reached before meeting the tolerance;
    /// callers downgrade such results to FLAG status.
    pub converged: bool,
}

fn check_tol<T: Scalar>(tol: T, func: &'static str) -> Result<()> {
    if !(tol >= lit(1e-13)) {
        return Err(Error::domain(func, format!("tol = {tol} is below 1e-13")));
    }
    Ok(())
}

/// ∫₀¹ f(x) dx with f supplied as f(x, 1−x); both arguments are accurate
/// near their respective endpoint, which is what makes endpoint-singular
/// integrands evaluable in cancellation-safe form.
pub fn tanh_sinh_01_with<T, F>(f: F, tol: T, max_level: u32) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T, T) -> T,
{
    check_tol(tol, "tanh_sinh_01")?;
    let max_level = max_level.min(MAX_LEVEL_1D);
    let evals = Cell::new(0u64);
    let one = T::one();

    // node at parameter u > 0: x = 1/(1+e^{−2w}), 1−x = 1/(1+e^{2w}),
    // w = (π/2) sinh u, weight = π cosh(u) · x(1−x)
    let node = |u: T| -> (T, T) {
        let w = T::FRAC_PI_2() * u.sinh();
        let delta = (one + (w + w).exp()).recip();
        let weight = T::PI() * u.cosh() * delta * (one - delta);
        (delta, weight)
    };

    let eval = |x: T, omx: T| -> T {
        evals.set(evals.get() + 1);
        f(x, omx)
    };

    let mut value = T::zero();
    let mut err = T::infinity();
    let mut levels = 0u32;
    let mut converged = false;

    let mut h = T::one();
    for level in 0..=max_level {
        if level > 0 {
            h = h * lit(0.5);
        }
        let mut sum = T::zero();
        if level == 0 {
            let half = lit::<T>(0.5);
            let v = eval(half, half);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { abscissa: 0.5, level });
            }
            sum = sum + v * (T::PI() * lit(0.25));
        }
        // level 0 walks every multiple of h, deeper levels only the odd ones
        let (start, step) = if level == 0 { (1u64, 1u64) } else { (1u64, 2u64) };
        let mut upper_done = false;
        let mut lower_done = false;
        let mut upper_quiet = 0u32;
        let mut lower_quiet = 0u32;
        let mut k = start;
        let k_cap = (lit::<T>(U_CAP_01) / h).ceil().to_u64().unwrap_or(u64::MAX);
        while !(upper_done && lower_done) && k <= k_cap {
            let u = h * lit(k as f64);
            let (delta, weight) = node(u);
            if weight < lit(WEIGHT_FLOOR) || delta == T::zero() {
                break; // both endpoint tails have underflowed
            }
            let allow_quiet = u >= one;
            if !upper_done {
                let v = eval(one - delta, delta);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand {
                        abscissa: (one - delta).to_f64().unwrap_or(f64::NAN),
                        level,
                    });
                }
                let c = weight * v;
                sum = sum + c;
                if allow_quiet && c.abs() <= negligible(value, sum) {
                    upper_quiet += 1;
                    if upper_quiet >= 2 {
                        upper_done = true;
                    }
                } else {
                    upper_quiet = 0;
                }
            }
            if !lower_done {
                let v = eval(delta, one - delta);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand {
                        abscissa: delta.to_f64().unwrap_or(f64::NAN),
                        level,
                    });
                }
                let c = weight * v;
                sum = sum + c;
                if allow_quiet && c.abs() <= negligible(value, sum) {
                    lower_quiet += 1;
                    if lower_quiet >= 2 {
                        lower_done = true;
                    }
                } else {
                    lower_quiet = 0;
                }
            }
            k += step;
        }

        let new_value = if level == 0 {
            sum * h
        } else {
            value * lit::<T>(0.5) + sum * h
        };
        if level > 0 {
            err = (new_value - value).abs();
        }
        value = new_value;
        levels = level;
        if level > 0 && err <= tol * (one + value.abs()) {
            converged = true;
            break;
        }
    }

    Ok(QuadResult {
        value,
        err_est: if err.is_finite() { err } else { T::zero() },
        levels_used: levels,
        evaluations: evals.get(),
        converged,
    })
}

/// ∫₀¹ f(x) dx for a plain integrand.
pub fn tanh_sinh_01<T, F>(f: F, tol: T) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    tanh_sinh_01_with(|x, _| f(x), tol, MAX_LEVEL_1D)
}

/// ∫₀^∞ f(t) dt via the exp-sinh map t = exp((π/2) sinh u).
///
/// `envelope`, when present, bounds |f| near the domain ends; a non-finite
/// integrand value at a node is treated as an exhausted tail when
/// weight·envelope < 1e−300 and aborts the integration otherwise.
pub fn exp_sinh_0inf_env<T, F, G>(
    f: F,
    envelope: Option<G>,
    tol: T,
    max_level: u32,
) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
    G: Fn(T) -> T,
{
    check_tol(tol, "exp_sinh_0inf")?;
    let max_level = max_level.min(MAX_LEVEL_1D);
    let evals = Cell::new(0u64);
    let one = T::one();

    // node: t = exp(w), weight = (π/2) cosh(u) · t, w = (π/2) sinh u
    let node = |u: T| -> (T, T) {
        let w = T::FRAC_PI_2() * u.sinh();
        let t = w.exp();
        let weight = T::FRAC_PI_2() * u.cosh() * t;
        (t, weight)
    };

    let mut value = T::zero();
    let mut err = T::infinity();
    let mut levels = 0u32;
    let mut converged = false;

    let mut h = T::one();
    for level in 0..=max_level {
        if level > 0 {
            h = h * lit(0.5);
        }
        let mut sum = T::zero();
        if level == 0 {
            evals.set(evals.get() + 1);
            let v = f(one);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { abscissa: 1.0, level });
            }
            sum = sum + v * T::FRAC_PI_2();
        }
        let (start, step) = if level == 0 { (1u64, 1u64) } else { (1u64, 2u64) };
        let mut side_done = [false; 2]; // [towards ∞, towards 0]
        let mut side_quiet = [0u32; 2];
        let mut k = start;
        let k_cap = (lit::<T>(U_CAP_0INF) / h).ceil().to_u64().unwrap_or(u64::MAX);
        while !(side_done[0] && side_done[1]) && k <= k_cap {
            let base = h * lit(k as f64);
            let allow_quiet = base >= one;
            for (side, u) in [(0usize, base), (1usize, -base)] {
                if side_done[side] {
                    continue;
                }
                let (t, weight) = node(u);
                if !t.is_finite() || t <= T::zero() || weight < lit(WEIGHT_FLOOR) {
                    side_done[side] = true;
                    continue;
                }
                evals.set(evals.get() + 1);
                let v = f(t);
                if !v.is_finite() {
                    let bound = match &envelope {
                        Some(g) => weight * g(t),
                        None => weight,
                    };
                    if !(bound.abs() >= lit(WEIGHT_FLOOR)) {
                        side_done[side] = true;
                        continue;
                    }
                    return Err(Error::NonFiniteIntegrand {
                        abscissa: t.to_f64().unwrap_or(f64::NAN),
                        level,
                    });
                }
                let c = weight * v;
                sum = sum + c;
                if allow_quiet && c.abs() <= negligible(value, sum) {
                    side_quiet[side] += 1;
                    if side_quiet[side] >= 2 {
                        side_done[side] = true;
                    }
                } else {
                    side_quiet[side] = 0;
                }
            }
            k += step;
        }

        let new_value = if level == 0 {
            sum * h
        } else {
            value * lit::<T>(0.5) + sum * h
        };
        if level > 0 {
            err = (new_value - value).abs();
        }
        value = new_value;
        levels = level;
        if level > 0 && err <= tol * (one + value.abs()) {
            converged = true;
            break;
        }
    }

    Ok(QuadResult {
        value,
        err_est: if err.is_finite() { err } else { T::zero() },
        levels_used: levels,
        evaluations: evals.get(),
        converged,
    })
}

/// ∫₀^∞ f(t) dt with the default non-finite policy.
pub fn exp_sinh_0inf<T, F>(f: F, tol: T) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    exp_sinh_0inf_env(f, None::<fn(T) -> T>, tol, MAX_LEVEL_1D)
}

/// ∫₀¹∫₀¹ f dx dy as an iterated tanh-sinh rule (inner in y, outer in x),
/// with f supplied as f(x, 1−x, y, 1−y). Singular behavior must be confined
/// to the edges of the square.
pub fn tensor_2d_01_with<T, F>(f: F, tol: T, max_level: u32) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T, T, T, T) -> T,
{
    check_tol(tol, "tensor_2d_01")?;
    let cap = max_level.min(MAX_LEVEL_2D);
    let inner_tol = (tol * lit(0.1)).max(lit(1e-13));
    let inner_evals = Cell::new(0u64);
    let inner_err = Cell::new(0.0f64);
    let inner_failure = RefCell::new(Option::<Error>::None);

    let outer = tanh_sinh_01_with(
        |x, omx| {
            match tanh_sinh_01_with(|y, omy| f(x, omx, y, omy), inner_tol, cap) {
                Ok(r) => {
                    inner_evals.set(inner_evals.get() + r.evaluations);
                    let e = r.err_est.to_f64().unwrap_or(0.0);
                    if e > inner_err.get() {
                        inner_err.set(e);
                    }
                    r.value
                }
                Err(e) => {
                    let mut slot = inner_failure.borrow_mut();
                    if slot.is_none() {
                        *slot = Some(e);
                    }
                    T::zero()
                }
            }
        },
        tol,
        cap,
    )?;
    if let Some(e) = inner_failure.into_inner() {
        return Err(e);
    }
    Ok(QuadResult {
        value: outer.value,
        err_est: outer.err_est + lit(inner_err.get()),
        levels_used: outer.levels_used,
        evaluations: outer.evaluations + inner_evals.get(),
        converged: outer.converged,
    })
}

/// ∫₀¹∫₀¹ f(x, y) dx dy for a plain integrand.
pub fn tensor_2d_01<T, F>(f: F, tol: T) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T, T) -> T,
{
    tensor_2d_01_with(|x, _, y, _| f(x, y), tol, MAX_LEVEL_2D)
}

/// Terms this small relative to the running sums cannot move the result.
#[inline]
fn negligible<T: Scalar>(prev_value: T, sum: T) -> T {
    let eps2 = T::epsilon() * T::epsilon();
    eps2 * (T::one() + prev_value.abs() + sum.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_trivial_battery() {
        let tol = 1e-11;
        let r = tanh_sinh_01(|_x: f64| 1.0, tol).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-11, "constant: {}", r.value);
        assert!(r.converged);

        let r = tanh_sinh_01(|x: f64| -x.ln(), tol).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-11, "-ln x: {}", r.value);

        let r = tanh_sinh_01(|x: f64| x.sqrt().recip(), tol).unwrap();
        assert!((r.value - 2.0).abs() <= 1e-11, "1/sqrt x: {}", r.value);
    }

    #[test]
    fn exp_sinh_trivial_battery() {
        let tol = 1e-11;
        let r = exp_sinh_0inf(|t: f64| (-t).exp(), tol).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-11, "e^-t: {}", r.value);

        let r = exp_sinh_0inf(|t: f64| t * (-t).exp(), tol).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-11, "t e^-t: {}", r.value);

        let r = exp_sinh_0inf(|t: f64| (-t * t).exp(), tol).unwrap();
        let want = std::f64::consts::PI.sqrt() / 2.0;
        assert!((r.value - want).abs() <= 1e-11, "e^-t^2: {}", r.value);
    }

    #[test]
    fn tensor_trivial_battery() {
        let r = tensor_2d_01(|_x: f64, _y: f64| 1.0, 1e-11).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-11, "constant: {}", r.value);

        // Eq-style singular cases at their realistic tolerance:
        // (1-x)/(1-xy) with 1-xy formed from the endpoint distances
        let want = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        let r = tensor_2d_01_with(
            |_x: f64, omx, _y: f64, omy| {
                let omxy = omx + omy - omx * omy;
                omx / omxy
            },
            1e-8,
            MAX_LEVEL_2D,
        )
        .unwrap();
        assert!((r.value - want).abs() <= 1e-6, "s=0 case: {}", r.value);

        // (1-x)(-ln xy)/(1-xy); logs from the accurate side of each node
        let stable_ln = |v: f64, omv: f64| if v < 0.5 { v.ln() } else { (-omv).ln_1p() };
        let want = 2.0 * 1.2020569031595942854 - 1.0;
        let r = tensor_2d_01_with(
            |x: f64, omx, y: f64, omy| {
                let omxy = omx + omy - omx * omy;
                let t = -(stable_ln(x, omx) + stable_ln(y, omy));
                omx / omxy * t
            },
            1e-8,
            MAX_LEVEL_2D,
        )
        .unwrap();
        assert!((r.value - want).abs() <= 1e-6, "s=1 case: {}", r.value);
    }

    #[test]
    fn node_symmetry_identities() {
        // spot-check the defining DE-transform identities at 100 nodes
        let pi = std::f64::consts::PI;
        for i in 1..=100 {
            let u = i as f64 * 0.04;
            let w = 0.5 * pi * u.sinh();
            let delta = 1.0 / (1.0 + (2.0 * w).exp());
            let x = 1.0 - delta;
            // x(u) + x(-u) = 1 by construction; weight identity w(u) = pi cosh u x(1-x)
            let weight = pi * u.cosh() * delta * (1.0 - delta);
            let direct = 0.5 * pi * u.cosh() / w.cosh().powi(2) * 0.5;
            assert!(
                (weight - direct).abs() <= 1e-15 * direct.abs().max(1e-300),
                "tanh-sinh weight at u={u}"
            );
            assert!((x + delta - 1.0).abs() == 0.0);

            // exp-sinh: weight/t = (pi/2) cosh u
            let t = w.exp();
            let ws = 0.5 * pi * u.cosh() * t;
            assert!((ws / t - 0.5 * pi * u.cosh()).abs() <= 1e-15 * ws / t);
        }
    }

    #[test]
    fn err_est_monotone_on_smooth_battery() {
        // err_est is non-increasing in levels for smooth integrands, down to
        // the roundoff floor
        let f = |t: f64| (-t).exp() * (1.0 + t).recip();
        let mut errs = Vec::new();
        for cap in 2..=7 {
            let r = exp_sinh_0inf_env(f, None::<fn(f64) -> f64>, 1e-13, cap).unwrap();
            errs.push(r.err_est);
        }
        for w in errs.windows(2) {
            if w[0] > 1e-14 {
                assert!(w[1] <= w[0] * 1.000001, "errs not monotone: {errs:?}");
            }
        }
    }

    #[test]
    fn interior_non_finite_aborts() {
        let r = tanh_sinh_01(|x: f64| (x - 0.5).recip(), 1e-11);
        assert!(matches!(r, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn tol_guard() {
        assert!(tanh_sinh_01(|_x: f64| 1.0, 1e-14).is_err());
        assert!(exp_sinh_0inf(|_t: f64| 1.0, 0.0).is_err());
    }

    #[test]
    fn evaluations_are_counted() {
        let r = tanh_sinh_01(|_x: f64| 1.0, 1e-11).unwrap();
        assert!(r.evaluations > 0);
        let r2 = tensor_2d_01(|_x: f64, _y: f64| 1.0, 1e-10).unwrap();
        assert!(r2.evaluations > r.evaluations);
    }

    #[test]
    fn f32_instantiation_works() {
        let r = tanh_sinh_01(|x: f32| x, 1e-5_f32).unwrap();
        assert!((r.value - 0.5).abs() < 1e-4);
    }
}
