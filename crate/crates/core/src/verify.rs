//! Verification driver: runs catalog cases through every applicable
//! computation path, compares the paths pairwise, and serializes the verdicts
//! deterministically.
//!
//! A record's status is PASS when every applicable path pair meets its
//! tolerance, FLAG when the paths agree among themselves but a category-B
//! printed right-hand side disagrees (documented erratum evidence), and FAIL
//! when a mandatory pair misses. Individual gated paths are listed as
//! inapplicable; a whole case is never inapplicable.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, Category, KernelCase};
use crate::error::{Error, Result};
use crate::kernel::{self, RatePoint};
use crate::quadrature;
use crate::scalar::lit;
use crate::specfun;

pub type Real = f64;

/// Tolerances and knobs for a verification run. All comparisons use the
/// relative gap |a−b|/(1+max(|a|,|b|)).
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    /// Category-A right-hand-side match tolerance.
    pub tol_rhs_a: f64,
    /// Reduced-vs-series self-consistency tolerance.
    pub tol_series: f64,
    /// Reduced-vs-2D self-consistency tolerance.
    pub tol_2d: f64,
    /// Category-B match threshold (below: PASS, above: FLAG).
    pub tol_b: f64,
    /// Target for the 1-D quadrature error estimate.
    pub quad_tol: f64,
    /// Refinement cap for the 1-D engines.
    pub level_1d: u32,
    /// Per-axis refinement cap for the 2-D tensor rule.
    pub level_2d: u32,
    /// Series truncation order.
    pub terms: usize,
    /// N at which the partial-term path is sampled.
    pub partial_n: u32,
    /// Restrict the run to a single case.
    pub case: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol_rhs_a: 1e-8,
            tol_series: 1e-8,
            tol_2d: 1e-4,
            tol_b: 1e-6,
            quad_tol: 3e-12,
            level_1d: quadrature::MAX_LEVEL_1D,
            level_2d: quadrature::MAX_LEVEL_2D,
            terms: catalog::DEFAULT_TERMS,
            partial_n: 10_000,
            case: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FLAG")]
    Flag,
    #[serde(rename = "FAIL")]
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Flag => write!(f, "FLAG"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

/// Both sides of a flagged right-hand-side comparison, kept verbatim.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Discrepancy {
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RateDetail {
    pub slope: f64,
    pub r2: f64,
    pub expected_slope: f64,
    pub points: Vec<RatePoint<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub case: String,
    pub params: BTreeMap<String, f64>,
    pub category: Category,
    pub kind: &'static str, // "identity" | "rate"
    pub values: BTreeMap<String, f64>,
    pub errs: BTreeMap<String, f64>,
    pub status: Status,
    pub inapplicable: Vec<String>,
    pub discrepancy: Option<Discrepancy>,
    pub rate: Option<RateDetail>,
    pub diagnostics: BTreeMap<String, Value>,
}

/// |a−b| / (1 + max(|a|, |b|))
pub fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

#[derive(Debug, Clone, Copy)]
pub struct PathSelection {
    pub with_2d: bool,
    pub with_series: bool,
    pub with_partial: bool,
}

impl Default for PathSelection {
    fn default() -> Self {
        PathSelection {
            with_2d: true,
            with_series: true,
            with_partial: true,
        }
    }
}

/// Evaluate every selected path for one case and assemble the record.
pub fn run_case(case: &KernelCase, cfg: &Config, sel: PathSelection) -> Result<VerificationRecord> {
    let mut values = BTreeMap::new();
    let mut errs = BTreeMap::new();
    let mut inapplicable = Vec::new();
    let mut diagnostics = BTreeMap::new();
    let mut mandatory_miss = false;
    let mut quad_shortfall = false;

    let reduced = kernel::lhs_reduced(&case.integrand, cfg.quad_tol, cfg.level_1d)?;
    values.insert("lhs_reduced".into(), reduced.value);
    diagnostics.insert(
        "lhs_reduced".into(),
        json!({
            "err_est": reduced.err_est,
            "levels": reduced.levels_used,
            "evals": reduced.evaluations,
            "converged": reduced.converged,
        }),
    );
    quad_shortfall |= !reduced.converged;

    if sel.with_2d {
        let two_d = kernel::lhs_direct_2d(&case.integrand, lit(1e-9), cfg.level_2d)?;
        values.insert("lhs_2d".into(), two_d.value);
        diagnostics.insert(
            "lhs_2d".into(),
            json!({
                "err_est": two_d.err_est,
                "levels": two_d.levels_used,
                "evals": two_d.evaluations,
                "converged": two_d.converged,
            }),
        );
        let gap = rel_gap(reduced.value, two_d.value);
        errs.insert("lhs_reduced_vs_lhs_2d".into(), gap);
        if gap > cfg.tol_2d {
            mandatory_miss = true;
        }
    }

    if sel.with_series {
        match case.g_series.as_ref().map(kernel::c_series) {
            Some(Ok(cs)) => {
                values.insert("c_series".into(), cs.value);
                diagnostics.insert(
                    "c_series".into(),
                    json!({ "terms": cs.terms, "tail_bound": cs.tail_bound }),
                );
                let gap = rel_gap(reduced.value, cs.value);
                errs.insert("lhs_reduced_vs_c_series".into(), gap);
                if gap > cfg.tol_series {
                    mandatory_miss = true;
                }
            }
            Some(Err(Error::NotSummable(_))) | None => {
                inapplicable.push("c_series".to_string());
            }
            Some(Err(e)) => return Err(e),
        }
    }

    values.insert("rhs_closed".into(), case.rhs);
    let scaled_lhs = case.lhs_scale * reduced.value;
    let rhs_gap = rel_gap(scaled_lhs, case.rhs);
    errs.insert("lhs_vs_rhs".into(), rhs_gap);
    let mut discrepancy = None;
    let mut flagged = false;
    match case.category {
        Category::A => {
            if rhs_gap > cfg.tol_rhs_a {
                mandatory_miss = true;
            }
        }
        Category::B => {
            if rhs_gap > cfg.tol_b {
                flagged = true;
                discrepancy = Some(Discrepancy {
                    lhs: scaled_lhs,
                    rhs: case.rhs,
                });
            }
        }
    }

    if sel.with_partial {
        if let Some(f) = case.f_closed.as_ref() {
            let f = f.clone();
            let n = cfg.partial_n;
            let s_n = kernel::partial_term(move |x| f(x), n)?;
            values.insert("partial_limit".into(), s_n);
            // the reference is the best closed form (category A) or the
            // reduced integral otherwise
            let reference = match case.category {
                Category::A => case.rhs / case.lhs_scale,
                Category::B => reduced.value,
            };
            // S(N) approaches the limit at rate ~ F(1/N)/2; tolerate twice
            // the leading envelope plus the quadrature floor
            let envelope = 2.0 / (n as f64).powf(case.lead_order) + 1e-9;
            let gap = (s_n - reference).abs();
            errs.insert("partial_vs_reference".into(), rel_gap(s_n, reference));
            diagnostics.insert(
                "partial_limit".into(),
                json!({ "n": n, "envelope": envelope }),
            );
            if gap > envelope {
                mandatory_miss = true;
            }
        } else {
            inapplicable.push("partial_limit".to_string());
        }
    }

    let status = if mandatory_miss {
        Status::Fail
    } else if flagged || quad_shortfall {
        Status::Flag
    } else {
        Status::Pass
    };

    Ok(VerificationRecord {
        case: case.name.clone(),
        params: case.params.clone(),
        category: case.category,
        kind: "identity",
        values,
        errs,
        status,
        inapplicable,
        discrepancy,
        rate: None,
        diagnostics,
    })
}

/// Default path selection for a case: everything on, except that the 2-D
/// cross-check follows the base-sweep gating (s ≥ 0 only) for singular
/// monomial exponents.
pub fn default_selection(case: &KernelCase) -> PathSelection {
    let with_2d = case.params.get("s").map_or(true, |&s| s >= 0.0);
    PathSelection {
        with_2d,
        ..Default::default()
    }
}

/// One record per catalog case (or the single selected case), in canonical
/// catalog order. Deterministic for a fixed config.
pub fn run_verify(cfg: &Config) -> Result<Vec<VerificationRecord>> {
    let cases = match &cfg.case {
        Some(name) => vec![catalog::case_by_name(name, cfg.terms)?],
        None => catalog::list_cases_with_terms(cfg.terms)?,
    };
    cases
        .iter()
        .map(|c| run_case(c, cfg, default_selection(c)))
        .collect()
}

/// Base-identity sweep: lhs_reduced (and the 2-D path for s ≥ 0) against
/// Γ(s+2)(ζ(s+2) − 1/(s+1)) for each s.
pub fn run_base_sweep(s_values: &[f64], cfg: &Config) -> Result<Vec<VerificationRecord>> {
    s_values
        .iter()
        .map(|&s| {
            let case = catalog::monomial_case(s, cfg.terms)?;
            let sel = PathSelection {
                with_2d: s >= 0.0,
                with_series: false,
                with_partial: false,
            };
            run_case(&case, cfg, sel)
        })
        .collect()
}

/// Empirical decay-rate record for a case with a closed summand form:
/// fits log|S(N) − limit| against log N over N = n_start·2^i.
pub fn run_asymptotic(
    case_name: &str,
    n_start: u32,
    n_doublings: u32,
    cfg: &Config,
) -> Result<VerificationRecord> {
    let case = catalog::case_by_name(case_name, cfg.terms)?;
    let f = case
        .f_closed
        .as_ref()
        .ok_or_else(|| {
            Error::domain("run_asymptotic", format!("case '{case_name}' has no closed summand form"))
        })?
        .clone();
    if n_start < 2 || n_doublings < 4 {
        return Err(Error::domain(
            "run_asymptotic",
            "need n_start >= 2 and at least 5 points".to_string(),
        ));
    }
    let reference = match case.category {
        Category::A => case.rhs / case.lhs_scale,
        Category::B => kernel::lhs_reduced(&case.integrand, cfg.quad_tol, cfg.level_1d)?.value,
    };
    let mut points = Vec::new();
    for i in 0..=n_doublings {
        let n = n_start
            .checked_mul(2u32.pow(i))
            .ok_or_else(|| Error::domain("run_asymptotic", "N overflow".to_string()))?;
        let f = f.clone();
        let s_n = kernel::partial_term(move |x| f(x), n)?;
        let err = (s_n - reference).abs();
        if err > 0.0 {
            points.push(RatePoint { n, s_n, err });
        }
    }
    let (slope, r2) = kernel::rate_fit(&points)?;
    let expected = -case.lead_order;
    let status = if (slope - expected).abs() <= 0.2 {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut values = BTreeMap::new();
    values.insert("slope".into(), slope);
    values.insert("r2".into(), r2);
    values.insert("reference".into(), reference);
    let mut errs = BTreeMap::new();
    errs.insert("slope_vs_expected".into(), (slope - expected).abs());
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert(
        "sweep".into(),
        json!({ "n_start": n_start, "n_doublings": n_doublings }),
    );
    Ok(VerificationRecord {
        case: case.name.clone(),
        params: case.params.clone(),
        category: case.category,
        kind: "rate",
        values,
        errs,
        status,
        inapplicable: vec![],
        discrepancy: None,
        rate: Some(RateDetail {
            slope,
            r2,
            expected_slope: expected,
            points,
        }),
        diagnostics,
    })
}

/// Exit code policy: 0 unless a category-A record failed (category-B FLAG
/// never changes the exit code).
pub fn exit_code(records: &[VerificationRecord]) -> i32 {
    let a_failure = records
        .iter()
        .any(|r| r.category == Category::A && r.status != Status::Pass);
    if a_failure {
        1
    } else {
        0
    }
}

/// Deterministic JSON report: stable key order (sorted maps, fixed struct
/// order), reals as shortest round-trip decimals.
pub fn render_json(cfg: &Config, records: &[VerificationRecord]) -> String {
    let doc = json!({
        "config": cfg,
        "records": records,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable report");
    s.push('\n');
    s
}

/// Aligned text table, one row per record, discrepancy lines after FLAGs.
pub fn render_text(records: &[VerificationRecord]) -> String {
    let mut out = String::new();
    let path_cols = [
        "lhs_reduced",
        "lhs_2d",
        "c_series",
        "rhs_closed",
        "partial_limit",
    ];
    out.push_str(&format!(
        "{:<16} {:<4} {:<6} {:>18} {:>18} {:>18} {:>18} {:>18} {:>12}\n",
        "case", "cat", "status", "lhs_reduced", "lhs_2d", "c_series", "rhs_closed", "partial", "max_rel_err"
    ));
    for r in records {
        if r.kind == "rate" {
            let d = r.rate.as_ref().expect("rate detail");
            out.push_str(&format!(
                "{:<16} {:<4} {:<6} slope {:+.4} (expected {:+.1}, r2 {:.6}, {} points)\n",
                r.case,
                format!("{:?}", r.category),
                r.status,
                d.slope,
                d.expected_slope,
                d.r2,
                d.points.len()
            ));
            continue;
        }
        let cell = |name: &str| -> String {
            match r.values.get(name) {
                Some(v) => format!("{v:>18.12}"),
                None => format!("{:>18}", "-"),
            }
        };
        let max_err = r
            .errs
            .values()
            .fold(0.0_f64, |m, &e| m.max(e));
        out.push_str(&format!(
            "{:<16} {:<4} {:<6} {} {} {} {} {} {:>12.3e}\n",
            r.case,
            format!("{:?}", r.category),
            r.status,
            cell(path_cols[0]),
            cell(path_cols[1]),
            cell(path_cols[2]),
            cell(path_cols[3]),
            cell(path_cols[4]),
            max_err
        ));
        if let Some(d) = &r.discrepancy {
            out.push_str(&format!(
                "{:<16}      discrepancy: lhs = {:.12}, rhs(printed) = {:.12}\n",
                "", d.lhs, d.rhs
            ));
        }
    }
    out
}

/// One item of the self-test battery.
#[derive(Debug, Clone, Serialize)]
pub struct BatteryItem {
    pub name: String,
    pub pass: bool,
    pub got: f64,
    pub want: f64,
    pub tol: f64,
}

fn item(name: &str, got: f64, want: f64, tol: f64) -> BatteryItem {
    BatteryItem {
        name: name.to_string(),
        pass: (got - want).abs() <= tol * (1.0 + want.abs()),
        got,
        want,
        tol,
    }
}

/// The quadrature and special-function batteries: every directly assertable
/// example value, at its stated tolerance.
#[allow(clippy::vec_init_then_push)]
pub fn selftest_battery() -> Vec<BatteryItem> {
    use specfun::*;
    let pi = std::f64::consts::PI;
    let mut items = Vec::new();

    items.push(item("gamma(1) = 1", gamma_fn(1.0).unwrap(), 1.0, 1e-13));
    items.push(item("gamma(5) = 24", gamma_fn(5.0).unwrap(), 24.0, 1e-13));
    items.push(item("gamma(1/2) = sqrt(pi)", gamma_fn(0.5).unwrap(), pi.sqrt(), 1e-13));
    items.push(item("zeta(2) = pi^2/6", zeta(2.0).unwrap(), pi * pi / 6.0, 1e-13));
    items.push(item("zeta(4) = pi^4/90", zeta(4.0).unwrap(), pi.powi(4) / 90.0, 1e-13));
    items.push(item("zeta_reg(1) = gamma", zeta_reg(1.0).unwrap(), EULER_GAMMA, 1e-13));
    items.push(item(
        "zeta_reg(2) = pi^2/6 - 1",
        zeta_reg(2.0).unwrap(),
        pi * pi / 6.0 - 1.0,
        1e-13,
    ));
    items.push(item(
        "digamma(1) = -gamma",
        digamma_real(1.0).unwrap(),
        -EULER_GAMMA,
        1e-12,
    ));
    items.push(item(
        "digamma(2) = 1 - gamma",
        digamma_real(2.0).unwrap(),
        1.0 - EULER_GAMMA,
        1e-12,
    ));
    items.push(item(
        "polygamma(1,1) = pi^2/6",
        polygamma(1, 1.0).unwrap(),
        pi * pi / 6.0,
        1e-12,
    ));
    items.push(item(
        "polygamma(1,1/2) = pi^2/2",
        polygamma(1, 0.5).unwrap(),
        pi * pi / 2.0,
        1e-12,
    ));
    items.push(item("j0(0) = 1", bessel_j0(0.0).unwrap(), 1.0, 1e-13));

    let q = quadrature::tanh_sinh_01(|_x: f64| 1.0, 1e-11).unwrap();
    items.push(item("tanh_sinh: 1 -> 1", q.value, 1.0, 1e-11));
    let q = quadrature::tanh_sinh_01(|x: f64| -x.ln(), 1e-11).unwrap();
    items.push(item("tanh_sinh: -ln x -> 1", q.value, 1.0, 1e-11));
    let q = quadrature::tanh_sinh_01(|x: f64| x.sqrt().recip(), 1e-11).unwrap();
    items.push(item("tanh_sinh: 1/sqrt(x) -> 2", q.value, 2.0, 1e-11));
    let q = quadrature::exp_sinh_0inf(|t: f64| (-t).exp(), 1e-11).unwrap();
    items.push(item("exp_sinh: e^-t -> 1", q.value, 1.0, 1e-11));
    let q = quadrature::exp_sinh_0inf(|t: f64| t * (-t).exp(), 1e-11).unwrap();
    items.push(item("exp_sinh: t e^-t -> 1", q.value, 1.0, 1e-11));
    let q = quadrature::exp_sinh_0inf(|t: f64| (-t * t).exp(), 1e-11).unwrap();
    items.push(item("exp_sinh: e^-t^2 -> sqrt(pi)/2", q.value, pi.sqrt() / 2.0, 1e-11));
    let q = quadrature::tensor_2d_01(|_x: f64, _y: f64| 1.0, 1e-11).unwrap();
    items.push(item("tensor: 1 -> 1", q.value, 1.0, 1e-11));
    let q = quadrature::tensor_2d_01_with(
        |_x: f64, omx, _y, omy| omx / (omx + omy - omx * omy),
        1e-8,
        quadrature::MAX_LEVEL_2D,
    )
    .unwrap();
    items.push(item(
        "tensor: (1-x)/(1-xy) -> pi^2/6 - 1",
        q.value,
        pi * pi / 6.0 - 1.0,
        1e-6,
    ));
    let stable_ln = |v: f64, omv: f64| if v < 0.5 { v.ln() } else { (-omv).ln_1p() };
    let q = quadrature::tensor_2d_01_with(
        |x: f64, omx, y, omy| {
            let omxy = omx + omy - omx * omy;
            omx / omxy * -(stable_ln(x, omx) + stable_ln(y, omy))
        },
        1e-8,
        quadrature::MAX_LEVEL_2D,
    )
    .unwrap();
    items.push(item(
        "tensor: (1-x)(-ln xy)/(1-xy) -> 2 zeta(3) - 1",
        q.value,
        2.0 * 1.2020569031595942854 - 1.0,
        1e-6,
    ));

    items.push(item(
        "W(t)/t -> 1/2 at small t",
        kernel::weight_w_over_t(1e-8).unwrap(),
        0.5,
        1e-8,
    ));
    items.push(item(
        "rhs_example2(0) = gamma",
        catalog::rhs_example2(0.0).unwrap(),
        EULER_GAMMA,
        1e-13,
    ));

    // series plumbing
    let x = crate::series::build(crate::series::SeriesKind::Monomial(1), 6).unwrap();
    let x2 = crate::series::mul(&x, &x);
    items.push(item("series: x*x = x^2", x2.coeff(2), 1.0, 1e-15));
    let f = crate::series::g_to_f(&x).unwrap();
    items.push(item("series: g_to_f(x) = x", f.coeff(1), 1.0, 1e-15));
    let g = crate::series::TaylorCoeffs::new(vec![0.0, 0.0, 0.0, 2.0]);
    let f = crate::series::eq3_transform(&g).unwrap();
    items.push(item("series: eq3(2x^3) -> 4x^3", f.coeff(3), 4.0, 1e-15));
    let (v, _) = crate::series::evaluate(&x, 0.1);
    items.push(item("series: evaluate(x, 0.1) = 0.1", v, 0.1, 1e-15));

    items
}

pub fn render_selftest_text(items: &[BatteryItem]) -> String {
    let mut out = String::new();
    for it in items {
        out.push_str(&format!(
            "{} {:<44} got {:+.15e}  want {:+.15e}  tol {:.0e}\n",
            if it.pass { "PASS" } else { "FAIL" },
            it.name,
            it.got,
            it.want,
            it.tol
        ));
    }
    let passed = items.iter().filter(|i| i.pass).count();
    out.push_str(&format!("{passed}/{} battery items passed\n", items.len()));
    out
}

pub fn render_selftest_json(items: &[BatteryItem]) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "selftest": items })).expect("serializable");
    s.push('\n');
    s
}
