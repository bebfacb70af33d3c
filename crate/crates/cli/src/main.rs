//! Command-line driver for the kernel-identity verification lab.
//!
//! Exit codes: 0 when no category-A identity fails (category-B FLAGs are
//! expected erratum evidence and do not change the code), 1 when a
//! category-A record fails, 2 on internal or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eulerlab::verify::{self, Config};

#[derive(Parser)]
#[command(
    name = "eulerlab",
    about = "Verify kernel-integral identities for generalized Euler constants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Emit the machine-readable JSON report instead of the text table.
    #[arg(long, global = true)]
    json: bool,
    /// Optional config file of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Category-A right-hand-side tolerance (also the series
    /// self-consistency tolerance).
    #[arg(long)]
    tol: Option<f64>,
    /// Refinement-level cap for the 1-D quadrature engines (the 2-D rule is
    /// capped at min(level, 9) per axis).
    #[arg(long)]
    level: Option<u32>,
    /// Series truncation order.
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the catalog verification suite (or one case).
    Verify {
        /// Case name, e.g. ex1, ex2@a=0.5, fam1@c=1,m=3, monomial@s=0.5.
        #[arg(long)]
        case: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sweep the base identity over a list of exponents.
    Base {
        /// Comma-separated exponents, each > -2, e.g. "-1.5,0,1,3.7".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Fit the empirical decay rate of the partial terms for one case.
    Asymptotic {
        /// Case with a closed summand form: ex1, ex2@a=..., ex3.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 10)]
        n_start: u32,
        #[arg(long, default_value_t = 9)]
        n_doublings: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the quadrature and special-function batteries.
    Selftest {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn apply_config_file(cfg: &mut Config, path: &PathBuf) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("config line {}: expected key = value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| anyhow::anyhow!("config line {}: bad {what} '{value}'", lineno + 1);
        match key {
            "tol" => {
                cfg.tol_rhs_a = value.parse().map_err(|_| bad("number"))?;
                cfg.tol_series = cfg.tol_rhs_a;
            }
            "tol_2d" => cfg.tol_2d = value.parse().map_err(|_| bad("number"))?,
            "tol_b" => cfg.tol_b = value.parse().map_err(|_| bad("number"))?,
            "quad_tol" => cfg.quad_tol = value.parse().map_err(|_| bad("number"))?,
            "level" => {
                cfg.level_1d = value.parse().map_err(|_| bad("integer"))?;
                cfg.level_2d = cfg.level_1d.min(9);
            }
            "terms" => cfg.terms = value.parse().map_err(|_| bad("integer"))?,
            "partial_n" => cfg.partial_n = value.parse().map_err(|_| bad("integer"))?,
            "case" => cfg.case = Some(value.to_string()),
            other => return Err(anyhow::anyhow!("config line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(())
}

fn build_config(common: &CommonOpts) -> anyhow::Result<Config> {
    let mut cfg = Config::default();
    if let Some(path) = &common.config {
        apply_config_file(&mut cfg, path)?;
    }
    if let Some(tol) = common.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(anyhow::anyhow!("--tol must be positive"));
        }
        cfg.tol_rhs_a = tol;
        cfg.tol_series = tol;
    }
    if let Some(level) = common.level {
        if !(2..=12).contains(&level) {
            return Err(anyhow::anyhow!("--level must be in 2..=12"));
        }
        cfg.level_1d = level;
        cfg.level_2d = level.min(9);
    }
    if let Some(terms) = common.terms {
        if !(2..=170).contains(&terms) {
            return Err(anyhow::anyhow!("--terms must be in 2..=170"));
        }
        cfg.terms = terms;
    }
    Ok(cfg)
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { case, common } => {
            let mut cfg = build_config(&common)?;
            if case.is_some() {
                cfg.case = case;
            }
            let records = verify::run_verify(&cfg)?;
            if common.json {
                print!("{}", verify::render_json(&cfg, &records));
            } else {
                print!("{}", verify::render_text(&records));
            }
            Ok(verify::exit_code(&records))
        }
        Command::Base { s, common } => {
            let cfg = build_config(&common)?;
            let s_values: Vec<f64> = s
                .split(',')
                .map(|piece| {
                    piece
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| anyhow::anyhow!("bad exponent '{piece}'"))
                })
                .collect::<anyhow::Result<_>>()?;
            if s_values.is_empty() {
                return Err(anyhow::anyhow!("--s needs at least one exponent"));
            }
            let records = verify::run_base_sweep(&s_values, &cfg)?;
            if common.json {
                print!("{}", verify::render_json(&cfg, &records));
            } else {
                print!("{}", verify::render_text(&records));
            }
            Ok(verify::exit_code(&records))
        }
        Command::Asymptotic {
            case,
            n_start,
            n_doublings,
            common,
        } => {
            let cfg = build_config(&common)?;
            let record = verify::run_asymptotic(&case, n_start, n_doublings, &cfg)?;
            let records = vec![record];
            if common.json {
                print!("{}", verify::render_json(&cfg, &records));
            } else {
                print!("{}", verify::render_text(&records));
            }
            Ok(verify::exit_code(&records))
        }
        Command::Selftest { common } => {
            let items = verify::selftest_battery();
            if common.json {
                print!("{}", verify::render_selftest_json(&items));
            } else {
                print!("{}", verify::render_selftest_text(&items));
            }
            Ok(if items.iter().all(|i| i.pass) { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
