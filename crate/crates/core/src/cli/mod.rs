//! The `latzeta` command line: argument model, commands and file output.

pub mod format;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use crate::asymptotics::{deviation_formulas, fit_exponent, measured_deviation, trace_offcritical};
use crate::continuation::{probe_and_classify, sweep_figure_data, trace_branch, BranchCurve, BranchSample};
use crate::energy::{energy_eval, energy_factorized};
use crate::error::{Error, Result};
use crate::validation;
use crate::zeros::{refine_zero, scan, ScanOutcome, SearchWindow};
use crate::zeta::PrecisionPolicy;
use format::{fmt_g, parse_complex, parse_delta, parse_list, parse_range, parse_window, round_sig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "latzeta", version, about = "Energy and complex zeros of the alternating lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Significant digits of numeric output
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: usize,
    /// Output directory (stdout if absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate E(s, Δ)
    Energy {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Locate all zeros in a window
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,2,0,25")]
        window: String,
    },
    /// Follow one zero in Δ
    Trace {
        /// Approximate zero at the starting Δ
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "1/2")]
        delta: String,
        /// Final Δ
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Trace every branch seeded at Δ = 1/2 across a range of Δ
    Sweep {
        #[arg(long, default_value = "0.05,0.99")]
        range: String,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,2,0,25")]
        window: String,
    },
    /// Deviations of off-critical zeros from their asymptotic form
    Asymptotics {
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,2")]
        k: String,
        #[arg(long, default_value = "0.02,0.01,0.005")]
        eps: String,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Run the identity, factorization and theta suites
    Validate,
}

/// Settings shared by all commands.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision: PrecisionPolicy,
    pub window: SearchWindow,
    pub delta_range: (f64, f64, f64),
    pub output_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub digits: usize,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.precision == 0 || cli.precision > 17 {
            return Err(Error::Domain(format!("precision {} outside 1..=17 digits", cli.precision)));
        }
        let (window, delta_range) = match &cli.command {
            Command::Scan { window, .. } => (parse_window(window)?, (0.05, 0.99, 0.01)),
            Command::Sweep { range, step, window } => {
                let (a, b) = parse_range(range)?;
                (parse_window(window)?, (a, b, *step))
            }
            Command::Trace { step, .. } | Command::Asymptotics { step, .. } => {
                (SearchWindow::new(-1.0, 2.0, 0.0, 25.0)?, (0.05, 0.99, *step))
            }
            _ => (SearchWindow::new(-1.0, 2.0, 0.0, 25.0)?, (0.05, 0.99, 0.01)),
        };
        let cfg = Self {
            precision: PrecisionPolicy::default(),
            window,
            delta_range,
            output_dir: cli.out.clone(),
            output_format: cli.format,
            digits: cli.precision,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.precision.validate()?;
        self.window.validate()?;
        let step = self.delta_range.2;
        if !(step > 0.0 && step <= 0.01) {
            return Err(Error::Domain(format!("step {step} outside (0, 0.01]")));
        }
        if let Some(dir) = &self.output_dir {
            fs::create_dir_all(dir)?;
            if fs::metadata(dir)?.permissions().readonly() {
                return Err(Error::Domain(format!("{} is not writable", dir.display())));
            }
        }
        Ok(())
    }

    fn g(&self, x: f64) -> String {
        fmt_g(x, self.digits)
    }

    fn r(&self, x: f64) -> Value {
        if x.is_finite() {
            json!(round_sig(x, self.digits))
        } else {
            Value::Null
        }
    }
}

/// Exit status for an error: 2 for bad input or domain, 3 near a pole.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) => 2,
        Error::PoleProximity { .. } => 3,
        _ => 1,
    }
}

/// Applies `LATZETA_THREADS` to the global rayon pool.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("LATZETA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Parse(format!("LATZETA_THREADS={v:?} is not a positive integer")))?;
    // a second initialization (e.g. in tests) keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs a parsed command line, writing to `stdout` or the output directory.
/// Returns the process exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Energy { s, delta } => cmd_energy(&cfg, s, delta, stdout),
        Command::Scan { delta, .. } => cmd_scan(&cfg, delta, stdout),
        Command::Trace { s, delta, to, step } => cmd_trace(&cfg, s, delta, to, *step, stdout),
        Command::Sweep { .. } => cmd_sweep(&cfg, stdout),
        Command::Asymptotics { k, eps, step } => cmd_asymptotics(&cfg, k, eps, *step, stdout),
        Command::Validate => cmd_validate(&cfg, stdout),
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn emit(cfg: &RunConfig, name: &str, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match &cfg.output_dir {
        Some(dir) => fs::write(dir.join(name), bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes(v: &Value) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

fn cmd_energy(cfg: &RunConfig, s: &str, delta: &str, stdout: &mut dyn Write) -> Result<i32> {
    let s = parse_complex(s)?;
    let d = parse_delta(delta)?;
    let p = &cfg.precision;
    let e = energy_eval(s, d.value, p, false)?;
    let tight = PrecisionPolicy {
        target_abs_err: p.target_abs_err * 1e-3,
        em_direct_terms: 2 * p.em_direct_terms,
        ..p.clone()
    };
    let e2 = energy_eval(s, d.value, &tight, false)?;
    let err = (e.value - e2.value).norm().max(f64::EPSILON * e.scale);
    let factorized = match d.special {
        Some(_) => Some(energy_factorized(s, d.value, p)?),
        None => None,
    };
    let bytes = match cfg.output_format {
        OutputFormat::Csv => {
            let mut w = csv_writer(Vec::new());
            let mut head = vec!["s_re", "s_im", "delta", "value_re", "value_im", "error_estimate"];
            let mut row =
                vec![cfg.g(s.re), cfg.g(s.im), cfg.g(d.value), cfg.g(e.value.re), cfg.g(e.value.im), cfg.g(err)];
            if let Some(f) = factorized {
                head.extend(["factorized_re", "factorized_im"]);
                row.extend([cfg.g(f.re), cfg.g(f.im)]);
            }
            w.write_record(head)?;
            w.write_record(row)?;
            w.into_inner().map_err(|e| Error::Io(e.into_error()))?
        }
        OutputFormat::Json => json_bytes(&json!({
            "s": [cfg.r(s.re), cfg.r(s.im)],
            "delta": cfg.r(d.value),
            "special_delta": d.special.map(|x| format!("{x:?}")),
            "value": [cfg.r(e.value.re), cfg.r(e.value.im)],
            "error_estimate": cfg.r(err),
            "factorized": factorized.map(|f| json!([cfg.r(f.re), cfg.r(f.im)])),
        }))?,
    };
    emit(cfg, &format!("energy.{}", ext(cfg)), &bytes, stdout)?;
    Ok(0)
}

fn ext(cfg: &RunConfig) -> &'static str {
    match cfg.output_format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn window_json(cfg: &RunConfig, w: &SearchWindow) -> Value {
    json!([cfg.r(w.x_min), cfg.r(w.x_max), cfg.r(w.y_min), cfg.r(w.y_max)])
}

fn cmd_scan(cfg: &RunConfig, delta: &str, stdout: &mut dyn Write) -> Result<i32> {
    let d = parse_delta(delta)?;
    let out: ScanOutcome = scan(&cfg.window, d.value, &cfg.precision)?;
    for c in &out.clusters {
        log::warn!("unresolved cluster of {} zeros in {:?}", c.count, c.window);
    }
    let bytes = match cfg.output_format {
        OutputFormat::Csv => {
            let mut w = csv_writer(Vec::new());
            w.write_record(["delta", "rho_x", "rho_y", "kind", "residual"])?;
            for z in &out.zeros {
                w.write_record([
                    cfg.g(z.delta),
                    cfg.g(z.rho.re),
                    cfg.g(z.rho.im),
                    z.kind.as_str().to_string(),
                    cfg.g(z.scaled_residual),
                ])?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))?
        }
        OutputFormat::Json => json_bytes(&json!({
            "delta": cfg.r(d.value),
            "window": window_json(cfg, &cfg.window),
            "total": out.total,
            "zeros": out.zeros.iter().map(|z| json!({
                "rho_x": cfg.r(z.rho.re),
                "rho_y": cfg.r(z.rho.im),
                "kind": z.kind.as_str(),
                "residual": cfg.r(z.scaled_residual),
            })).collect::<Vec<_>>(),
            "clusters": out.clusters.iter().map(|c| json!({
                "count": c.count,
                "window": window_json(cfg, &c.window),
            })).collect::<Vec<_>>(),
        }))?,
    };
    emit(cfg, &format!("zeros.{}", ext(cfg)), &bytes, stdout)?;
    Ok(0)
}

fn branch_rows(cfg: &RunConfig, curve: &BranchCurve, w: &mut csv::Writer<Vec<u8>>) -> Result<()> {
    let kind = curve.branch_kind.map(|k| k.as_str()).unwrap_or("");
    let k = curve.k_index.map(|k| k.to_string()).unwrap_or_default();
    for p in &curve.samples {
        w.write_record([
            curve.branch_id.to_string(),
            kind.to_string(),
            k.clone(),
            cfg.g(p.delta),
            cfg.g(p.rho.re),
            cfg.g(p.rho.im),
            cfg.g(p.residual),
        ])?;
    }
    Ok(())
}

const BRANCH_HEADER: [&str; 7] = ["branch_id", "branch_kind", "k_index", "delta", "rho_x", "rho_y", "residual"];

fn sample_json(cfg: &RunConfig, p: &BranchSample) -> Value {
    json!({"delta": cfg.r(p.delta), "rho_x": cfg.r(p.rho.re), "rho_y": cfg.r(p.rho.im), "residual": cfg.r(p.residual)})
}

/// Writes one file per branch plus `manifest.json`, or everything to stdout.
fn emit_branches(
    cfg: &RunConfig,
    curves: &[BranchCurve],
    seed_delta: f64,
    header: Value,
    stdout: &mut dyn Write,
) -> Result<()> {
    let file_of = |c: &BranchCurve| format!("branch_{:03}.{}", c.branch_id, ext(cfg));
    let mut entries = Vec::new();
    for c in curves {
        let seed = c.at(seed_delta).unwrap_or(&c.samples[0]);
        entries.push(json!({
            "branch_id": c.branch_id,
            "branch_kind": c.branch_kind.map(|k| k.as_str()),
            "k_index": c.k_index,
            "file": cfg.output_dir.as_ref().map(|_| file_of(c)),
            "samples": c.samples.len(),
            "delta_first": cfg.r(c.samples[0].delta),
            "delta_last": cfg.r(c.last().delta),
            "seed": sample_json(cfg, seed),
            "status": c.status,
            "terminal": c.terminal.as_ref().map(|t| sample_json(cfg, t)),
        }));
    }
    let mut manifest = header;
    manifest["branches"] = Value::Array(entries);

    let curve_json = |c: &BranchCurve| {
        json!({
            "branch_id": c.branch_id,
            "branch_kind": c.branch_kind.map(|k| k.as_str()),
            "k_index": c.k_index,
            "samples": c.samples.iter().map(|p| sample_json(cfg, p)).collect::<Vec<_>>(),
        })
    };
    match &cfg.output_dir {
        Some(dir) => {
            for c in curves {
                let bytes = match cfg.output_format {
                    OutputFormat::Csv => {
                        let mut w = csv_writer(Vec::new());
                        w.write_record(BRANCH_HEADER)?;
                        branch_rows(cfg, c, &mut w)?;
                        w.into_inner().map_err(|e| Error::Io(e.into_error()))?
                    }
                    OutputFormat::Json => json_bytes(&curve_json(c))?,
                };
                fs::write(dir.join(file_of(c)), bytes)?;
            }
            fs::write(dir.join("manifest.json"), json_bytes(&manifest)?)?;
        }
        None => match cfg.output_format {
            OutputFormat::Csv => {
                let mut w = csv_writer(Vec::new());
                w.write_record(BRANCH_HEADER)?;
                for c in curves {
                    branch_rows(cfg, c, &mut w)?;
                }
                stdout.write_all(&w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;
            }
            OutputFormat::Json => {
                manifest["curves"] = Value::Array(curves.iter().map(curve_json).collect());
                stdout.write_all(&json_bytes(&manifest)?)?;
            }
        },
    }
    Ok(())
}

fn cmd_trace(cfg: &RunConfig, s: &str, delta: &str, to: &str, step: f64, stdout: &mut dyn Write) -> Result<i32> {
    let guess = parse_complex(s)?;
    let d0 = parse_delta(delta)?.value;
    let d1 = parse_delta(to)?.value;
    let seed = refine_zero(guess, d0, &cfg.precision)?;
    let mut curve = trace_branch(&seed, d1, step, &cfg.precision)?;
    if curve.last().delta >= 0.95 {
        if let Err(e) = probe_and_classify(&mut curve, &cfg.precision) {
            log::warn!("{e}");
        }
    }
    // keep samples ordered by increasing Δ
    if d1 < d0 {
        curve.samples.reverse();
    }
    let header = json!({
        "command": "trace",
        "seed_delta": cfg.r(d0),
        "target_delta": cfg.r(d1),
        "step": cfg.r(step),
        "precision": cfg.digits,
    });
    emit_branches(cfg, &[curve], d0, header, stdout)?;
    Ok(0)
}

fn cmd_sweep(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let (lo, hi, step) = cfg.delta_range;
    let curves = sweep_figure_data(lo, hi, step, &cfg.window, &cfg.precision)?;
    let header = json!({
        "command": "sweep",
        "delta_min": cfg.r(lo),
        "delta_max": cfg.r(hi),
        "step": cfg.r(step),
        "seed_delta": 0.5,
        "window": window_json(cfg, &cfg.window),
        "precision": cfg.digits,
    });
    emit_branches(cfg, &curves, 0.5, header, stdout)?;
    Ok(0)
}

fn cmd_asymptotics(cfg: &RunConfig, ks: &str, eps: &str, step: f64, stdout: &mut dyn Write) -> Result<i32> {
    let ks: Vec<i64> = ks
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad branch index {t:?}"))))
        .collect::<Result<_>>()?;
    let eps = parse_list(eps)?;
    for &e in &eps {
        if !(e > 0.0 && e <= 0.5) {
            return Err(Error::Domain(format!("epsilon = {e} outside (0, 0.5]")));
        }
    }
    let mut rows = Vec::new();
    for &k in &ks {
        let curve = trace_offcritical(k, &eps, step, &cfg.precision)?;
        let fitted = fit_exponent(&curve, k).ok();
        for &e in &eps {
            let p = curve.at(1.0 - e).ok_or_else(|| Error::Domain(format!("no traced zero at epsilon = {e}")))?;
            let (mx, my) = measured_deviation(k, e, p.rho);
            let (px, py) = deviation_formulas(k, e)?;
            rows.push((k, e, mx, my, px, py, fitted));
        }
    }
    let bytes = match cfg.output_format {
        OutputFormat::Csv => {
            let mut w = csv_writer(Vec::new());
            w.write_record([
                "k",
                "epsilon",
                "measured_drho_x",
                "measured_drho_y",
                "predicted_drho_x",
                "predicted_drho_y",
                "fitted_exponent",
            ])?;
            for (k, e, mx, my, px, py, f) in &rows {
                w.write_record([
                    k.to_string(),
                    cfg.g(*e),
                    cfg.g(*mx),
                    cfg.g(*my),
                    cfg.g(*px),
                    cfg.g(*py),
                    f.map(|f| cfg.g(f)).unwrap_or_default(),
                ])?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))?
        }
        OutputFormat::Json => json_bytes(&Value::Array(
            rows.iter()
                .map(|(k, e, mx, my, px, py, f)| {
                    json!({
                        "k": k, "epsilon": cfg.r(*e),
                        "measured_drho_x": cfg.r(*mx), "measured_drho_y": cfg.r(*my),
                        "predicted_drho_x": cfg.r(*px), "predicted_drho_y": cfg.r(*py),
                        "fitted_exponent": f.map(|f| cfg.r(f)),
                    })
                })
                .collect(),
        ))?,
    };
    emit(cfg, &format!("asymptotics.{}", ext(cfg)), &bytes, stdout)?;
    Ok(0)
}

fn cmd_validate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let report = validation::run_all(&cfg.precision)?;
    let mut v = serde_json::to_value(&report)?;
    round_numbers(&mut v, cfg.digits);
    let bytes = json_bytes(&v)?;
    emit(cfg, "validate.json", &bytes, stdout)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn round_numbers(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = json!(round_sig(x, digits));
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_numbers(x, digits)),
        Value::Object(o) => o.values_mut().for_each(|x| round_numbers(x, digits)),
        _ => {}
    }
}

/// Convenience for examples and tests: parse `args` and run.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Parse(e.to_string()))?;
    run(&cli, stdout)
}
