//! pslab: partitions into Piatetski-Shapiro sequences ⌊ℓ^κ⌋.
//!
//! Subcommands compute exact count tables, saddle-point estimates, the
//! closed-form asymptotic model, ζ_κ data, equidistribution diagnostics, and
//! a golden-constant verification suite. CSV/JSON go to stdout unless
//! --output is given. PSLAB_THREADS bounds the per-n parallelism.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pslab::asymptotics::{asymptotic_estimate, theorem_constants_with_trunc};
use pslab::numerics::{zeta_deriv, zeta_em};
use pslab::partitions::{count_table_with_budget, ln_biguint, DEFAULT_PART_BUDGET};
use pslab::saddle::saddle_estimate;
use pslab::sequence::{condition2_statistic, weyl_sum, KappaParam, Multiplicity};
use pslab::zeta::{
    integer_kappa_identity_gap, poles, ps_zeta, ps_zeta_deriv_zero, ps_zeta_zero, residue_at,
};

#[derive(Parser)]
#[command(
    name = "pslab",
    version,
    about = "partitions into ⌊ℓ^κ⌋: exact, saddle-point, asymptotic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact table of p_{κ,m}(n) for 0 <= n <= N (big-integer DP).
    Count {
        /// Sequence exponent κ as an exact rational ("1", "1/2", "3/2").
        #[arg(long)]
        kappa: String,
        /// Multiplicity cap m (integer >= 1 or "inf").
        #[arg(long, default_value = "inf")]
        m: String,
        /// Largest n in the table.
        #[arg(short = 'N', long = "max-n", alias = "N")]
        max_n: usize,
        /// Cap on the number of sequence indices the table may touch.
        #[arg(long, default_value_t = DEFAULT_PART_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Asymptotic model (β, δ, λ_c, λ-array) and optional per-n estimates.
    Asym {
        #[arg(long)]
        kappa: String,
        #[arg(long, default_value = "inf")]
        m: String,
        /// Evaluate the model at these n (repeatable or comma-separated).
        #[arg(short = 'n', long = "n", value_delimiter = ',')]
        n: Vec<u64>,
        /// Truncation of the ζ'_κ(0) series (non-integer α).
        #[arg(long, default_value_t = 100_000)]
        trunc: u64,
        /// Output format (json: model + estimates; csv: estimates, model on stderr).
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Saddle-point estimates: n, saddle x, log estimate.
    Saddle {
        /// κ as a rational ("3/2") or decimal (decimal implies heuristic mode).
        #[arg(long)]
        kappa: String,
        #[arg(long, default_value = "inf")]
        m: String,
        #[arg(short = 'n', long = "n", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// ζ_κ(s) values, residues, and the s = 0 data, with error bars.
    Zeta {
        #[arg(long)]
        kappa: String,
        /// Evaluation points (repeatable or comma-separated).
        #[arg(short = 's', long = "s", value_delimiter = ',')]
        s: Vec<f64>,
        /// Include the residues at every pole.
        #[arg(long)]
        residues: bool,
        /// Include ζ_κ(0) and ζ'_κ(0).
        #[arg(long)]
        special: bool,
        /// Truncation of the ζ'_κ(0) series (non-integer α).
        #[arg(long, default_value_t = 100_000)]
        trunc: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Golden-constant suite: classical asymptotic constants and the
    /// integer-κ identity; exits non-zero on any FAIL.
    Verify {
        /// Which checks to run.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Truncation for the integer-κ identity checks.
        #[arg(long, default_value_t = 1_000_000)]
        identity_trunc: u64,
    },
    /// Weyl-sum and equidistribution diagnostics.
    Weyl {
        /// κ (rational or decimal; decimal is allowed here).
        #[arg(long)]
        kappa: String,
        /// Range tops H (repeatable or comma-separated).
        #[arg(short = 'H', long = "h", value_delimiter = ',', required = true)]
        h: Vec<u64>,
        /// Evaluate the Weyl sum at this y instead of scanning the statistic grid.
        #[arg(long)]
        y: Option<f64>,
        /// Grid size for the condition-(II) minimum scan.
        #[arg(long, default_value_t = 128)]
        grid: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Combined exact/saddle/asymptotic comparison table.
    Table {
        #[arg(long)]
        kappa: String,
        #[arg(long, default_value = "inf")]
        m: String,
        #[arg(short = 'N', long = "max-n", alias = "N")]
        max_n: usize,
        /// Row stride (rows at n = step, 2·step, ...).
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, default_value_t = DEFAULT_PART_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// PSLAB_THREADS bounds the rayon pool used for the per-n loops.
fn init_threads() {
    if let Ok(v) = std::env::var("PSLAB_THREADS") {
        if let Ok(t) = v.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        } else {
            eprintln!("warning: ignoring unparsable PSLAB_THREADS={v:?}");
        }
    }
}

/// Exact-rational κ for the commands that branch on α ∈ ℕ or d_α.
fn parse_kappa_rational(s: &str) -> Result<KappaParam> {
    let k = KappaParam::parse(s)?;
    if !k.is_rational() {
        bail!("this command requires an exact rational kappa (write 3/2, not 1.5)");
    }
    Ok(k)
}

/// κ for the diagnostic commands; decimal mode is allowed with a warning.
fn parse_kappa_loose(s: &str) -> Result<KappaParam> {
    let k = KappaParam::parse(s)?;
    if !k.is_rational() {
        eprintln!(
            "warning: decimal kappa {s} runs in heuristic floating-point mode (d_α treated as ∞)"
        );
    }
    Ok(k)
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            let mut f = File::create(path).with_context(|| format!("creating {path:?}"))?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count {
            kappa,
            m,
            max_n,
            budget,
            out,
        } => {
            let k = parse_kappa_rational(&kappa)?;
            let m = Multiplicity::parse(&m)?;
            let table = count_table_with_budget(&k, m, max_n, budget)?;
            let content = match out.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    table.write_csv(&mut buf)?;
                    String::from_utf8(buf)?
                }
                Format::Json => format!("{:#}\n", table.to_json()),
            };
            emit(&out.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Asym {
            kappa,
            m,
            n,
            trunc,
            format,
            output,
        } => {
            let k = parse_kappa_rational(&kappa)?;
            let m = Multiplicity::parse(&m)?;
            let model = theorem_constants_with_trunc(&k, m, trunc)?;
            let estimates: Vec<(u64, f64, f64)> = n
                .par_iter()
                .map(|&n| {
                    let (log, val) = asymptotic_estimate(n, &model);
                    (n, log, val)
                })
                .collect();
            let content = match format {
                Format::Json => {
                    let est_json: Vec<serde_json::Value> = estimates
                        .iter()
                        .map(|(n, log, val)| {
                            serde_json::json!({"n": n, "log_estimate": log, "estimate": val})
                        })
                        .collect();
                    format!(
                        "{:#}\n",
                        serde_json::json!({"model": model.to_json(), "estimates": est_json})
                    )
                }
                Format::Csv => {
                    eprintln!("{:#}", model.to_json());
                    let mut s = String::from("n,log_estimate,estimate\n");
                    for (n, log, val) in &estimates {
                        s.push_str(&format!("{n},{log:.12e},{val:.12e}\n"));
                    }
                    s
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Saddle { kappa, m, n, out } => {
            let k = parse_kappa_loose(&kappa)?;
            let m = Multiplicity::parse(&m)?;
            let rows: Vec<_> = n
                .par_iter()
                .map(|&n| saddle_estimate(n, &k, m))
                .collect::<pslab::Result<_>>()?;
            let content = match out.format {
                Format::Csv => {
                    let mut s = String::from("n,x,log_estimate,estimate\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{:.12e},{:.12e},{:.12e}\n",
                            r.n, r.x, r.log_estimate, r.estimate
                        ));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "n": r.n, "x": r.x,
                                "log_estimate": r.log_estimate,
                                "estimate": r.estimate,
                                "l": r.l_values.0, "l1": r.l_values.1, "l2": r.l_values.2,
                            })
                        })
                        .collect();
                    format!("{:#}\n", serde_json::Value::Array(rows))
                }
            };
            emit(&out.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Zeta {
            kappa,
            s,
            residues,
            special,
            trunc,
            out,
        } => {
            let k = parse_kappa_rational(&kappa)?;
            let mut rows: Vec<(String, String, f64, f64, String)> = Vec::new();
            for &sv in &s {
                let z = ps_zeta(sv, &k)?;
                rows.push((
                    "zeta".into(),
                    format!("{sv}"),
                    z.value,
                    z.error_bound,
                    format!("{:?}", z.method),
                ));
            }
            if residues {
                for (h, pole) in poles(&k).into_iter().enumerate() {
                    let r = residue_at(h as u64, &k)?;
                    rows.push((
                        "residue".into(),
                        format!("{pole}"),
                        r,
                        1e-12,
                        "closed-form".into(),
                    ));
                }
            }
            if special {
                rows.push((
                    "zeta(0)".into(),
                    "0".into(),
                    ps_zeta_zero(&k),
                    0.0,
                    "closed-form".into(),
                ));
                let zd = ps_zeta_deriv_zero(&k, trunc)?;
                rows.push((
                    "zeta'(0)".into(),
                    "0".into(),
                    zd.value,
                    zd.error_bound,
                    format!("{:?}", zd.method),
                ));
            }
            let content = match out.format {
                Format::Csv => {
                    let mut s = String::from("kind,s,value,error_bound,method\n");
                    for (kind, arg, v, e, method) in &rows {
                        s.push_str(&format!("{kind},{arg},{v:.15e},{e:.3e},{method}\n"));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(kind, arg, v, e, method)| {
                            serde_json::json!({
                                "kind": kind, "s": arg, "value": v,
                                "error_bound": e, "method": method,
                            })
                        })
                        .collect();
                    format!("{:#}\n", serde_json::Value::Array(rows))
                }
            };
            emit(&out.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            suite,
            identity_trunc,
        } => {
            let run_constants = matches!(suite.as_str(), "constants" | "all");
            let run_identity = matches!(suite.as_str(), "identity" | "all");
            if !run_constants && !run_identity {
                bail!("unknown suite {suite:?} (expected constants, identity, or all)");
            }
            let mut ok = true;
            if run_constants {
                ok &= verify_constants()?;
            }
            if run_identity {
                ok &= verify_identity(identity_trunc)?;
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }

        Command::Weyl {
            kappa,
            h,
            y,
            grid,
            out,
        } => {
            let k = parse_kappa_loose(&kappa)?;
            let content = match y {
                Some(y) => {
                    let mut s = String::from("H,y,real,imag,modulus,count\n");
                    for &hv in &h {
                        let w = weyl_sum(hv, y, &k)?;
                        s.push_str(&format!(
                            "{hv},{y},{:.12e},{:.12e},{:.12e},{}\n",
                            w.real_part,
                            w.imag_part,
                            w.modulus(),
                            w.count
                        ));
                    }
                    s
                }
                None => {
                    let mut s = String::from("H,grid,min_statistic\n");
                    for &hv in &h {
                        let m = condition2_statistic(hv, &k, grid)?;
                        s.push_str(&format!("{hv},{grid},{m:.12e}\n"));
                    }
                    s
                }
            };
            match out.format {
                Format::Csv => emit(&out.output, &content)?,
                Format::Json => bail!("weyl output is CSV only"),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Table {
            kappa,
            m,
            max_n,
            step,
            budget,
            out,
        } => {
            let k = parse_kappa_rational(&kappa)?;
            let m = Multiplicity::parse(&m)?;
            if step == 0 {
                bail!("step must be >= 1");
            }
            let table = count_table_with_budget(&k, m, max_n, budget)?;
            let model = theorem_constants_with_trunc(&k, m, 100_000)?;
            let ns: Vec<usize> = (1..=max_n / step).map(|i| i * step).collect();
            let rows: Vec<(usize, f64, f64, f64)> = ns
                .par_iter()
                .map(|&n| {
                    let exact_ln = ln_biguint(table.count(n));
                    let sad = saddle_estimate(n as u64, &k, m)
                        .map(|r| r.log_estimate)
                        .unwrap_or(f64::NAN);
                    let (asym, _) = asymptotic_estimate(n as u64, &model);
                    (n, exact_ln, sad, asym)
                })
                .collect();
            let content = match out.format {
                Format::Csv => {
                    let mut s = String::from(
                        "n,exact,ln_exact,saddle_log,asym_log,saddle_ratio,asym_ratio\n",
                    );
                    for (n, exact_ln, sad, asym) in &rows {
                        s.push_str(&format!(
                            "{n},{},{exact_ln:.12e},{sad:.12e},{asym:.12e},{:.8},{:.8}\n",
                            table.count(*n),
                            (sad - exact_ln).exp(),
                            (asym - exact_ln).exp()
                        ));
                    }
                    s
                }
                Format::Json => bail!("table output is CSV only"),
            };
            emit(&out.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ---------------------------------------------------------------------------
// verify suite
// ---------------------------------------------------------------------------

fn report(name: &str, pass: bool, detail: &str) -> bool {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Classical constants: the κ = 1 Hardy-Ramanujan pair, the square-root
/// partition asymptotics (both caps), the cube-root corollary, and the
/// κ > 1 corollary shape.
fn verify_constants() -> Result<bool> {
    use std::f64::consts::PI;
    let mut ok = true;
    let z2 = zeta_em(2.0)?;
    let z3 = zeta_em(3.0)?;

    let k1 = KappaParam::from_rational(1, 1)?;
    let model = theorem_constants_with_trunc(&k1, Multiplicity::Infinite, 100_000)?;
    ok &= report(
        "hr-p",
        close(model.beta, PI * PI / 6.0, 1e-10)
            && close(model.delta, 1.0, 1e-12)
            && close(
                model.lambda_c * model.beta,
                1.0 / (4.0 * 3f64.sqrt()),
                1e-10,
            ),
        &format!(
            "β = π²/6, δ = 1, λ_c β = 1/(4√3) [{:.12}]",
            model.lambda_c * model.beta
        ),
    );
    let model = theorem_constants_with_trunc(&k1, Multiplicity::Finite(1), 100_000)?;
    ok &= report(
        "hr-q",
        close(model.delta, 0.75, 1e-12)
            && close(2.0 * model.beta.sqrt(), PI / 3f64.sqrt(), 1e-10)
            && close(
                model.lambda_c * model.beta.powf(0.75),
                1.0 / (4.0 * 3f64.powf(0.25)),
                1e-10,
            ),
        "δ = 3/4, exponent π√(n/3), prefactor 1/(4·3^¼ n^¾)",
    );

    let k12 = KappaParam::from_rational(1, 2)?;
    let model = theorem_constants_with_trunc(&k12, Multiplicity::Infinite, 100_000)?;
    let coef = |m: &pslab::AsymptoticModel, h: usize, alpha: f64| {
        m.lambda[h] * m.beta.powf(-(alpha - h as f64) / (alpha + 1.0))
    };
    let pref = model.lambda_c * model.beta.powf(model.delta);
    let pref_target = 2f64.powf(5.0 / 18.0)
        * 3f64.powf(-0.5)
        * PI.powf(-0.5)
        * z3.powf(7.0 / 18.0)
        * (2.0 * zeta_deriv(-1.0)? + zeta_deriv(0.0)?).exp();
    ok &= report(
        "sqrt-p",
        model.delta_exact.as_deref() == Some("8/9")
            && close(
                coef(&model, 0, 2.0),
                3.0 * z3.powf(1.0 / 3.0) / 2f64.powf(1.0 / 3.0),
                1e-9,
            )
            && close(
                coef(&model, 1, 2.0),
                z2 / (2f64.powf(2.0 / 3.0) * z3.powf(1.0 / 3.0)),
                1e-9,
            )
            && close(coef(&model, 2, 2.0), -z2 * z2 / (24.0 * z3), 1e-9)
            && close(pref, pref_target, 1e-8),
        &format!("δ = 8/9 exactly; three exponent coefficients and prefactor [{pref:.10}]"),
    );

    let model = theorem_constants_with_trunc(&k12, Multiplicity::Finite(1), 100_000)?;
    ok &= report(
        "sqrt-q",
        model.delta_exact.as_deref() == Some("2/3")
            && close(model.beta, 3.0 * z3, 1e-12)
            && close(
                coef(&model, 0, 2.0),
                3f64.powf(4.0 / 3.0) * z3.powf(1.0 / 3.0) / 2.0,
                1e-9,
            )
            && close(
                coef(&model, 1, 2.0),
                z2 / (2.0 * 3f64.powf(1.0 / 3.0) * z3.powf(1.0 / 3.0)),
                1e-9,
            )
            && close(coef(&model, 2, 2.0), -z2 * z2 / (72.0 * z3), 1e-9),
        "δ = 2/3, β = 3ζ(3), three exponent coefficients",
    );

    let k13 = KappaParam::from_rational(1, 3)?;
    let model = theorem_constants_with_trunc(&k13, Multiplicity::Infinite, 100_000)?;
    let pref = model.lambda_c * model.beta.powf(model.delta) * model.lambda[3].exp();
    let x = 225.0 * z3.powi(3) / PI.powi(8) - 2.0 * z3 / (PI * PI) + 3.0 * zeta_deriv(-1.0)?;
    let pref_target = (25.0 * PI).powf(0.25) * x.exp() / 4.0 * 5f64.powf(-13.0 / 16.0);
    ok &= report(
        "cbrt-p",
        close(
            coef(&model, 0, 3.0),
            4.0 * PI * 5f64.powf(0.75) / 15.0,
            1e-8,
        ) && close(
            coef(&model, 1, 3.0),
            3.0 * z3 * 5f64.sqrt() / (PI * PI),
            1e-8,
        ) && close(
            coef(&model, 2, 3.0),
            (PI.powi(6) - 135.0 * z3 * z3) * 5f64.powf(0.25) / (6.0 * PI.powi(5)),
            1e-8,
        ) && close((pref - pref_target) / pref_target, 0.0, 1e-8),
        "4π(5n)^¾/15, 3ζ(3)(5n)^½/π², (π⁶-135ζ(3)²)(5n)^¼/(6π⁵), prefactor",
    );
    let model = theorem_constants_with_trunc(&k13, Multiplicity::Finite(1), 100_000)?;
    let r: f64 = 5.0 / 14.0;
    let pref = model.lambda_c * model.beta.powf(model.delta) * model.lambda[3].exp();
    let x = 6075.0 * z3.powi(3) / (49.0 * PI.powi(8)) - 15.0 * z3 / (28.0 * PI * PI);
    let pref_target = r.sqrt() * x.exp() / 2f64.powf(2.75) * r.powf(-5.0 / 8.0);
    ok &= report(
        "cbrt-q",
        close(coef(&model, 0, 3.0), 28.0 * PI / 15.0 * r.powf(0.75), 1e-8)
            && close(coef(&model, 1, 3.0), 9.0 * z3 / (PI * PI) * r.sqrt(), 1e-8)
            && close(
                coef(&model, 2, 3.0),
                (7.0 * PI.powi(6) - 1215.0 * z3 * z3) / (42.0 * PI.powi(5)) * r.powf(0.25),
                1e-8,
            )
            && close((pref - pref_target) / pref_target, 0.0, 1e-8),
        "the (5n/14)-display exponent coefficients and prefactor",
    );

    // κ > 1 corollary shape at κ = 2: model equals the displayed closed form.
    let k2 = KappaParam::from_rational(2, 1)?;
    let model = theorem_constants_with_trunc(&k2, Multiplicity::Infinite, 100_000)?;
    let alpha = 0.5;
    let zd = model
        .zeta_deriv_zero
        .as_ref()
        .map(|z| z.value)
        .unwrap_or(f64::NAN);
    let c_kappa = 2f64.sqrt() * zd.exp() * model.beta.powf(1.0 / (1.0 + alpha))
        / (2.0 * (PI * (1.0 + alpha)).sqrt());
    let n = 1_000_000u64;
    let nf = n as f64;
    let corollary = c_kappa.ln() - (alpha + 3.0) / (2.0 * (1.0 + alpha)) * nf.ln()
        + 3.0 * model.beta.powf(1.0 / 1.5) * nf.powf(1.0 / 3.0);
    let (log_est, _) = asymptotic_estimate(n, &model);
    ok &= report(
        "power-p",
        close(log_est, corollary, 1e-9 * corollary.abs()),
        &format!("κ = 2 corollary form at n = 1e6: {log_est:.9} vs {corollary:.9}"),
    );

    Ok(ok)
}

fn verify_identity(trunc: u64) -> Result<bool> {
    let mut ok = true;
    for k in [2u32, 3] {
        let (gap, bound) = integer_kappa_identity_gap(k, trunc)?;
        ok &= report(
            &format!("identity-k{k}"),
            gap <= bound,
            &format!("gap {gap:.3e} <= tail bound {bound:.3e} at N = {trunc}"),
        );
    }
    Ok(ok)
}
