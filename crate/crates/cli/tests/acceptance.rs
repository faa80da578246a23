//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them). Error-magnitude
//! gates compare dx-weighted L1 norms against the reference table entries;
//! the stated multipliers absorb the norm-normalization convention.

use rbf_weno::flux::{EosParams, EulerMode};
use rbf_weno::harness::{
    convergence_table, default_guard, run_euler, run_scalar, scalar_error, TABLE_RESOLUTIONS,
};
use rbf_weno::problems::{error_norms, riemann_states, Problem};
use rbf_weno::reconstruction::Scheme;
use rbf_weno::riemann::exact_riemann;
use rbf_weno::time::SchemeConfig;
use rbf_weno::verify;
use std::process::Command;
use std::time::{Duration, Instant};

fn finish(id: u32, name: &str, passed: bool, detail: String) {
    println!(
        "ACCEPTANCE {id} ({name}): {} -- {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {id} ({name}): {detail}");
}

fn assert_runtime(id: u32, elapsed: Duration, limit_s: u64) {
    assert!(
        elapsed <= Duration::from_secs(limit_s),
        "criterion {id} exceeded its {limit_s} s budget: {elapsed:?}"
    );
}

fn within(value: f64, reference: f64, factor: f64) -> bool {
    value <= factor * reference && value >= reference / factor
}

fn table(problem: Problem, k: usize, scheme: Scheme, cfl: f64) -> (f64, f64) {
    let guard = default_guard(problem, k);
    let sc = SchemeConfig::with_guard(k, scheme, guard).unwrap();
    let t_end = problem.default_t_end();
    let report = convergence_table(problem, &sc, &TABLE_RESOLUTIONS, cfl, t_end).unwrap();
    (
        report.finest_l1_error().unwrap(),
        report.finest_l1_order().unwrap(),
    )
}

/// Retry ladder for the k = 3 entries that sit on the RK3 temporal floor:
/// the CFL bound is an upper bound on dt, so descending halvings stay
/// admissible; each attempt is reported.
fn table_with_cfl_retry(
    problem: Problem,
    scheme: Scheme,
    order_window: (f64, f64),
    l1_ref: f64,
    l1_factor: f64,
) -> (bool, String) {
    let mut detail = String::new();
    for cfl in [0.1, 0.05, 0.025] {
        let (l1, order) = table(problem, 3, scheme, cfl);
        detail.push_str(&format!("[C={cfl}: L1={l1:.3e}, order={order:.4}] "));
        let order_ok = order >= order_window.0 && order <= order_window.1;
        if order_ok && l1 <= l1_factor * l1_ref {
            return (true, detail);
        }
    }
    (false, detail)
}

#[test]
fn acceptance_1_advection_smooth_k2() {
    let started = Instant::now();
    let (rbf_l1, rbf_order) = table(Problem::AdvectSmooth, 2, Scheme::RbfEno, 0.1);
    let (_, eno_order) = table(Problem::AdvectSmooth, 2, Scheme::Eno, 0.1);
    let (_, rbf_weno_order) = table(Problem::AdvectSmooth, 2, Scheme::RbfWenoJs, 0.1);
    let passed = within(rbf_l1, 6.51e-7, 3.0)
        && (2.8..=3.1).contains(&rbf_order)
        && (1.7..=2.1).contains(&eno_order)
        && (2.8..=3.1).contains(&rbf_weno_order);
    let detail = format!(
        "rbf-eno L1@320={rbf_l1:.3e} (ref 6.51e-7 x3), orders: rbf-eno={rbf_order:.4}, \
         eno={eno_order:.4}, rbf-weno-js={rbf_weno_order:.4}"
    );
    assert_runtime(1, started.elapsed(), 30);
    finish(1, "advection smooth k=2", passed, detail);
}

#[test]
fn acceptance_2_advection_smooth_k3() {
    let started = Instant::now();
    let (_, eno_order) = table(Problem::AdvectSmooth, 3, Scheme::Eno, 0.1);
    let (_, rbf_eno_order) = table(Problem::AdvectSmooth, 3, Scheme::RbfEno, 0.1);
    let (weno_ok, weno_detail) =
        table_with_cfl_retry(Problem::AdvectSmooth, Scheme::WenoJs, (4.7, 5.2), 3.80e-10, 5.0);
    let (rbfw_ok, rbfw_detail) = table_with_cfl_retry(
        Problem::AdvectSmooth,
        Scheme::RbfWenoJs,
        (4.8, 5.3),
        7.39e-11,
        5.0,
    );
    let passed = weno_ok
        && rbfw_ok
        && (3.8..=4.3).contains(&rbf_eno_order)
        && (2.9..=3.1).contains(&eno_order);
    let detail = format!(
        "weno-js {weno_detail}; rbf-weno-js {rbfw_detail}; rbf-eno order={rbf_eno_order:.4}, \
         eno order={eno_order:.4}"
    );
    assert_runtime(2, started.elapsed(), 120);
    finish(2, "advection smooth k=3", passed, detail);
}

#[test]
fn acceptance_3_burgers_preshock() {
    let started = Instant::now();
    let (_, rbf_eno_order) = table(Problem::BurgersSine, 2, Scheme::RbfEno, 0.1);
    let (rbfw_l1, rbfw_order) = table(Problem::BurgersSine, 3, Scheme::RbfWenoJs, 0.1);
    let passed = (2.9..=3.3).contains(&rbf_eno_order)
        && (4.8..=5.3).contains(&rbfw_order)
        && within(rbfw_l1, 1.46e-8, 5.0);
    let detail = format!(
        "rbf-eno k=2 order={rbf_eno_order:.4} (want [2.9, 3.3]); rbf-weno-js k=3 \
         order={rbfw_order:.4}, L1@320={rbfw_l1:.3e} (ref 1.46e-8 x5)"
    );
    assert_runtime(3, started.elapsed(), 120);
    finish(3, "burgers pre-shock", passed, detail);
}

#[test]
fn acceptance_4_sod() {
    let started = Instant::now();
    let eos = EosParams::default();
    let (left, right) = riemann_states(Problem::Sod).unwrap();
    let sol = exact_riemann(left, right, &eos).unwrap();
    // exact density range over the fan at T = 0.2, plus 2 percent slack
    let exact_lo = right.rho;
    let exact_hi = left.rho;
    let slack = 0.02 * (exact_hi - exact_lo);

    let mut l1 = std::collections::HashMap::new();
    let mut detail = String::new();
    let mut passed = true;
    for scheme in Scheme::ALL {
        let sc = SchemeConfig::new(2, scheme).unwrap();
        let run = run_euler(Problem::Sod, &sc, EulerMode::Characteristic, 400, 0.1, 0.2)
            .expect("sod run completes");
        let rho: Vec<f64> = run.prim.iter().map(|w| w.rho).collect();
        let exact: Vec<f64> = (0..400)
            .map(|i| sol.sample(run.grid.center(i) / 0.2).rho)
            .collect();
        let norms = error_norms(&rho, &exact, run.grid.dx);
        let (rmin, rmax) = rho
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        let in_band = rmin >= 0.1 && rmax <= 1.05;
        let no_new_extrema = rmin >= exact_lo - slack && rmax <= exact_hi + slack;
        passed &= in_band && no_new_extrema;
        detail.push_str(&format!(
            "[{}: rho in ({rmin:.4}, {rmax:.4}), L1={:.3e}] ",
            scheme.name(),
            norms.l1
        ));
        l1.insert(scheme.name(), norms.l1);
    }
    passed &= l1["rbf-weno-js"] <= l1["eno"];
    assert_runtime(4, started.elapsed(), 60);
    finish(4, "sod shock tube", passed, detail);
}

#[test]
fn acceptance_5_lax() {
    let started = Instant::now();
    let mut detail = String::new();
    let mut passed = true;
    for k in [2usize, 3] {
        for scheme in Scheme::ALL {
            let sc = SchemeConfig::new(k, scheme).unwrap();
            let run = run_euler(Problem::Lax, &sc, EulerMode::Characteristic, 200, 0.1, 0.13)
                .expect("lax run completes");
            let (rmin, rmax) = run
                .prim
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), w| {
                    (a.min(w.rho), b.max(w.rho))
                });
            let pmin = run.prim.iter().fold(f64::INFINITY, |a, w| a.min(w.p));
            passed &= rmin >= 0.3 && rmax <= 1.4 && pmin > 0.0;
            if rmin < 0.3 || rmax > 1.4 || pmin <= 0.0 {
                detail.push_str(&format!(
                    "[k={k} {}: rho in ({rmin:.4}, {rmax:.4}), pmin={pmin:.4}] ",
                    scheme.name()
                ));
            }
        }
    }
    if detail.is_empty() {
        detail = "all eight runs inside rho in [0.3, 1.4], pressure positive".into();
    }
    assert_runtime(5, started.elapsed(), 60);
    finish(5, "lax shock tube", passed, detail);
}

#[test]
fn acceptance_6_double_mach_reflection() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut passed = true;
    let mut detail = String::new();
    for scheme in ["weno-js", "rbf-weno-js"] {
        let status = Command::new(env!("CARGO_BIN_EXE_rbf-weno"))
            .args([
                "run",
                "--problem",
                "dmr",
                "--scheme",
                scheme,
                "--k",
                "3",
                "--n",
                "160",
                "--m",
                "40",
                "--euler-mode",
                "characteristic",
                "--out",
            ])
            .arg(dir.path())
            .status()
            .expect("binary runs");
        passed &= status.success();

        let base = dir.path().join(format!("dmr_{scheme}_k3_n160"));
        let meta: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(format!("{}_meta.json", base.display())).unwrap(),
        )
        .unwrap();
        let rho_min = meta["rho_min"].as_f64().unwrap_or(-1.0);
        let p_min = meta["p_min"].as_f64().unwrap_or(-1.0);
        passed &= rho_min > 0.0 && p_min > 0.0;

        // contour CSV: dimensions header, column header, finite positive rho
        let contour = std::fs::read_to_string(format!("{}_contour.csv", base.display())).unwrap();
        let mut lines = contour.lines();
        passed &= lines.next().is_some_and(|l| l.starts_with("# nx=160"));
        passed &= lines.next() == Some("x,y,rho");
        let mut cells = 0usize;
        for line in lines {
            let rho: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
            passed &= rho.is_finite() && rho > 0.0;
            cells += 1;
        }
        passed &= cells == 160 * 40;

        // slice CSV produced and parseable
        let slice = std::fs::read_to_string(format!("{}_slice_y0.5.csv", base.display())).unwrap();
        let mut lines = slice.lines();
        passed &= lines.next() == Some("x,rho,u,v,p");
        let rows = lines
            .map(|l| {
                for cell in l.split(',') {
                    let v: f64 = cell.parse().unwrap();
                    passed &= v.is_finite();
                }
            })
            .count();
        passed &= rows == 160;
        detail.push_str(&format!(
            "[{scheme}: rho_min={rho_min:.3}, p_min={p_min:.3}, contour+slice written] "
        ));
    }
    assert_runtime(6, started.elapsed(), 600);
    finish(6, "double Mach reflection", passed, detail);
}

#[test]
fn acceptance_7_property_suite() {
    let started = Instant::now();
    let report = verify::run_all(verify::Fault::None);
    let required = [
        "poly-limit-bit-equality-k2",
        "poly-limit-bit-equality-k3",
        "k3-row-sum-consistency",
        "k2-row-sum-witness",
        "closed-form-vs-dense-oracle",
        "mq-adaptation-two-point",
        "weno-weight-normalization",
        "periodic-conservation-100-steps",
        "rk3-symbolic-single-step",
    ];
    let mut passed = report.all_passed() && report.count() >= 20;
    for name in required {
        passed &= report
            .checks
            .iter()
            .any(|c| c.name == name && c.passed);
    }
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    let detail = format!(
        "{}/{} checks passed{}",
        report.checks.iter().filter(|c| c.passed).count(),
        report.count(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(", failing: {failed:?}")
        }
    );
    assert_runtime(7, started.elapsed(), 60);
    finish(7, "property suite", passed, detail);
}

/// Scalar error path shared with the tables stays wired for the step
/// profile run (plot-only problem: completes and stays bounded).
#[test]
fn advect_step_profile_completes() {
    let sc = SchemeConfig::new(2, Scheme::RbfWenoJs).unwrap();
    let run = run_scalar(Problem::AdvectStep, &sc, 200, 0.1, 0.5).unwrap();
    let max = run.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(max <= 1.0 + 0.02, "step profile overshoot {max}");
    // the smooth-problem error helper rejects problems without exact data
    assert!(scalar_error(Problem::Sod, &run, 0.5).is_err());
}
