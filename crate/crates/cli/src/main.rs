//! Command-line driver: single runs, convergence sweeps and the
//! verification suite.

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{merge, parse_config_file, resolve, RawConfig, RunConfig};
use output::RunMeta;
use rbf_weno::harness;
use rbf_weno::problems::{error_norms_mean, exact_solution, ErrorReport, Norms};
use rbf_weno::time::SchemeConfig;
use rbf_weno::verify::{run_all, Fault};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let name = base.file_name().unwrap_or_default().to_string_lossy();
    base.with_file_name(format!("{name}{suffix}"))
}

#[derive(Parser)]
#[command(
    name = "rbf-weno",
    about = "Finite difference ENO/WENO solver with RBF-adapted reconstruction",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and write solution snapshots
    Run(RunArgs),
    /// Convergence sweep over a resolution ladder (needs an exact solution)
    Converge(ConvergeArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Problem id: advect-smooth | advect-step | burgers-sine | sod | lax | dmr
    #[arg(long)]
    problem: Option<String>,
    /// Scheme: eno | rbf-eno | weno-js | rbf-weno-js
    #[arg(long)]
    scheme: Option<String>,
    /// Order parameter (2 or 3)
    #[arg(long)]
    k: Option<usize>,
    /// CFL number (default 0.1)
    #[arg(long)]
    cfl: Option<f64>,
    /// Final time override
    #[arg(long)]
    t_end: Option<f64>,
    /// Euler reconstruction mode: characteristic | componentwise
    #[arg(long)]
    euler_mode: Option<String>,
    /// Polynomial-limit switch at extrema: auto | on | off
    #[arg(long)]
    monotone_guard: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional `key = value` config file (flags override it)
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonArgs {
    fn raw(&self) -> RawConfig {
        RawConfig {
            problem: self.problem.clone(),
            scheme: self.scheme.clone(),
            k: self.k,
            cfl: self.cfl,
            t_end: self.t_end,
            euler_mode: self.euler_mode.clone(),
            monotone_guard: self.monotone_guard.clone(),
            out: self.out.clone(),
            ..RawConfig::default()
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Cell count (x direction for 2D problems)
    #[arg(long)]
    n: Option<usize>,
    /// Cell count in y (2D problems; default n/4)
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated resolution ladder (default 10,20,40,80,160,320)
    #[arg(long)]
    resolutions: Option<String>,
    /// Also write the mean-normalized (1/N) error table
    #[arg(long)]
    both_norms: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Test fixture: deliberately corrupt one check input
    #[arg(long)]
    inject_fault: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => match build_config(&args.common, args.n, args.m, true) {
            Ok(cfg) => cmd_run(&cfg),
            Err(e) => usage_error(&e),
        },
        Command::Converge(args) => {
            let mut raw = args.common.raw();
            raw.resolutions = args.resolutions.clone();
            match finish_config(raw, &args.common.config, false) {
                Ok(cfg) => cmd_converge(&cfg, args.both_norms),
                Err(e) => usage_error(&e),
            }
        }
        Command::Verify(args) => cmd_verify(args.inject_fault.as_deref()),
    }
}

fn build_config(
    common: &CommonArgs,
    n: Option<usize>,
    m: Option<usize>,
    needs_n: bool,
) -> Result<RunConfig, String> {
    let mut raw = common.raw();
    raw.n = n;
    raw.m = m;
    finish_config(raw, &common.config, needs_n)
}

fn finish_config(
    flags: RawConfig,
    config_path: &Option<PathBuf>,
    needs_n: bool,
) -> Result<RunConfig, String> {
    let file = match config_path {
        Some(path) => parse_config_file(path)?,
        None => RawConfig::default(),
    };
    resolve(merge(flags, file), needs_n)
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn scheme_config(cfg: &RunConfig) -> Result<SchemeConfig, String> {
    SchemeConfig::with_guard(cfg.k, cfg.scheme, cfg.monotone_guard).map_err(|e| e.to_string())
}

fn cmd_run(cfg: &RunConfig) -> ExitCode {
    let sc = match scheme_config(cfg) {
        Ok(sc) => sc,
        Err(e) => return usage_error(&e),
    };
    let base = cfg.out.join(format!(
        "{}_{}_k{}_n{}",
        cfg.problem.name(),
        cfg.scheme.name(),
        cfg.k,
        cfg.n
    ));
    let mut meta = RunMeta {
        problem: cfg.problem.name(),
        scheme: cfg.scheme.name(),
        k: cfg.k,
        n: cfg.n,
        m: cfg.problem.is_2d().then_some(cfg.m),
        cfl: cfg.cfl,
        t_end: cfg.t_end,
        euler_mode: cfg.problem.is_euler().then(|| cfg.euler_mode.name()),
        monotone_guard: cfg.monotone_guard,
        steps: 0,
        dt_min: 0.0,
        dt_max: 0.0,
        eta_clamp_count: 0,
        wall_ms: 0,
        rho_min: None,
        p_min: None,
    };
    let started = Instant::now();

    let io_result = if cfg.problem.is_2d() {
        harness::run_dmr(&sc, cfg.euler_mode, cfg.n, cfg.m, cfg.cfl, cfg.t_end)
            .map_err(|e| e.to_string())
            .and_then(|run| {
                meta.fill_stats(&run.stats);
                meta.rho_min = run.prim.iter().map(|w| w.rho).reduce(f64::min);
                meta.p_min = run.prim.iter().map(|w| w.p).reduce(f64::min);
                output::write_contour_csv(&with_suffix(&base, "_contour.csv"), &run)
                    .and_then(|_| {
                        output::write_slice_csv(&with_suffix(&base, "_slice_y0.5.csv"), &run)
                    })
                    .map_err(|e| e.to_string())
            })
    } else if cfg.problem.is_euler() {
        harness::run_euler(cfg.problem, &sc, cfg.euler_mode, cfg.n, cfg.cfl, cfg.t_end)
            .map_err(|e| e.to_string())
            .and_then(|run| {
                meta.fill_stats(&run.stats);
                meta.rho_min = run.prim.iter().map(|w| w.rho).reduce(f64::min);
                meta.p_min = run.prim.iter().map(|w| w.p).reduce(f64::min);
                output::write_euler_csv(&base.with_extension("csv"), &run).map_err(|e| e.to_string())
            })
    } else {
        harness::run_scalar(cfg.problem, &sc, cfg.n, cfg.cfl, cfg.t_end)
            .map_err(|e| e.to_string())
            .and_then(|run| {
                meta.fill_stats(&run.stats);
                output::write_scalar_csv(&base.with_extension("csv"), &run).map_err(|e| e.to_string())
            })
    };

    meta.wall_ms = started.elapsed().as_millis();
    if let Err(e) = output::write_meta(&with_suffix(&base, "_meta.json"), &meta) {
        return run_error(&format!("writing metadata: {e}"));
    }
    match io_result {
        Ok(()) => {
            println!(
                "run complete: {} steps, {} ms, outputs at {}*",
                meta.steps,
                meta.wall_ms,
                base.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => run_error(&e),
    }
}

fn cmd_converge(cfg: &RunConfig, both_norms: bool) -> ExitCode {
    if !cfg.problem.has_exact() {
        return usage_error(&format!(
            "{} has no exact solution for a convergence sweep",
            cfg.problem.name()
        ));
    }
    let sc = match scheme_config(cfg) {
        Ok(sc) => sc,
        Err(e) => return usage_error(&e),
    };
    let report = match harness::convergence_table(
        cfg.problem,
        &sc,
        &cfg.resolutions,
        cfg.cfl,
        cfg.t_end,
    ) {
        Ok(r) => r,
        Err(e) => return run_error(&e.to_string()),
    };
    let table = output::error_table_csv(&report);
    print!("{table}");
    let base = cfg.out.join(format!(
        "{}_{}_k{}_converge",
        cfg.problem.name(),
        cfg.scheme.name(),
        cfg.k
    ));
    if let Err(e) = output::atomic_write(&base.with_extension("csv"), table.as_bytes()) {
        return run_error(&format!("writing table: {e}"));
    }
    if both_norms {
        match mean_norm_table(cfg) {
            Ok(mean_report) => {
                let mean_csv = output::error_table_csv(&mean_report);
                let path = cfg.out.join(format!(
                    "{}_{}_k{}_converge_mean.csv",
                    cfg.problem.name(),
                    cfg.scheme.name(),
                    cfg.k
                ));
                if let Err(e) = output::atomic_write(&path, mean_csv.as_bytes()) {
                    return run_error(&format!("writing table: {e}"));
                }
            }
            Err(e) => return run_error(&e),
        }
    }
    ExitCode::SUCCESS
}

/// Rerun the ladder collecting (1/N)-normalized errors.
fn mean_norm_table(cfg: &RunConfig) -> Result<ErrorReport, String> {
    let sc = scheme_config(cfg)?;
    let mut entries: Vec<(usize, Norms)> = Vec::new();
    for &n in &cfg.resolutions {
        let run = harness::run_scalar(cfg.problem, &sc, n, cfg.cfl, cfg.t_end)
            .map_err(|e| e.to_string())?;
        let exact: Result<Vec<f64>, _> = (0..n)
            .map(|i| exact_solution(cfg.problem, run.grid.center(i), cfg.t_end))
            .collect();
        let exact = exact.map_err(|e| e.to_string())?;
        entries.push((n, error_norms_mean(&run.values, &exact)));
    }
    Ok(ErrorReport::from_errors(&entries))
}

fn cmd_verify(inject: Option<&str>) -> ExitCode {
    let fault = match inject {
        None => Fault::None,
        Some("corrupt-poly-coeff") => Fault::CorruptPolyCoeff,
        Some(other) => return usage_error(&format!("unknown fault `{other}`")),
    };
    let report = run_all(fault);
    for check in &report.checks {
        println!(
            "{} {} :: {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    println!("verify: {passed}/{} checks passed", report.count());
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
