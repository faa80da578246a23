//! Runtime verification suite behind the `verify` CLI subcommand.
//!
//! Every check is self-contained, deterministic (fixed RNG seeds) and
//! reports one machine-readable pass/fail line. The suite cross-validates
//! the table-driven kernels against the dense-solve oracle, exercises the
//! stated invariants, and spot-checks the solver drivers.

use crate::driver::{advance_1d, RunStats};
use crate::error::Result;
use crate::flux::{
    char_basis_euler_1d, lf_split, AdvectionEq, BurgersEq, EosParams, Prim1,
};
use crate::grid::{fill_ghosts_1d, Bc1, BoundarySpec1D, Field1D, Grid1D};
use crate::oracle::{
    empirical_order, flux_reconstruct_oracle, k2_closed_form_coeff, mq_kernel,
    poly_interface_stencil, rbf_interp,
};
use crate::problems::{init_scalar, Problem};
use crate::reconstruction::{
    eta_k2, linear_weights, monotone_switch_k2, poly_coeffs, rbf_coeffs, reconstruct_interface,
    weno_weights, EtaStats, Scheme, Side, EPS_M,
};
use crate::riemann::exact_riemann;
use crate::state::State;
use crate::time::{rk3_step_1d, SchemeConfig, TimeConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// One verification check outcome.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Full suite outcome.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn count(&self) -> usize {
        self.checks.len()
    }
}

/// Test fixture: deliberately corrupt one input of a check to prove the
/// suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    CorruptPolyCoeff,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn poly_limit_check(k: usize, fault: Fault) -> Check {
    let name = if k == 2 {
        "poly-limit-bit-equality-k2"
    } else {
        "poly-limit-bit-equality-k3"
    };
    let mut worst = String::new();
    let mut ok = true;
    for r in -1..k as i32 {
        let rbf = rbf_coeffs(k, r, 0.0).unwrap();
        let poly = poly_coeffs(k, r).unwrap();
        for (j, (a, b)) in rbf.as_slice().iter().zip(poly.as_slice()).enumerate() {
            let mut expect = *b;
            if fault == Fault::CorruptPolyCoeff && k == 2 && r == 0 && j == 0 {
                expect += 1e-13;
            }
            if a.to_bits() != expect.to_bits() {
                ok = false;
                worst = format!("r={r} j={j}: {a:e} vs {expect:e}");
            }
        }
    }
    check(name, ok, if ok { "bitwise equal".into() } else { worst })
}

fn row_sum_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let mut worst = 0.0f64;
    for r in -1..3i32 {
        for m in 0..40 {
            let eta = -2.0 + 4.0 * m as f64 / 39.0;
            let sum: f64 = rbf_coeffs(3, r, eta).unwrap().as_slice().iter().sum();
            worst = worst.max((sum - 1.0).abs());
        }
    }
    out.push(check(
        "k3-row-sum-consistency",
        worst <= 1e-14,
        format!("max |sum - 1| = {worst:.2e}"),
    ));
    let mut ok = true;
    for m in 0..40 {
        let eta = -2.0 + 4.0 * m as f64 / 39.0;
        let sum: f64 = rbf_coeffs(2, 0, eta).unwrap().as_slice().iter().sum();
        if sum != 1.0 + eta / 2.0 {
            ok = false;
        }
    }
    out.push(check(
        "k2-row-sum-witness",
        ok,
        "sum equals 1 + eta/2 exactly".into(),
    ));
    out
}

fn closed_form_check() -> Check {
    // eps2 magnitude bounded below: the dense 3x3 solve loses roughly
    // machine epsilon divided by eta^1.5, so tiny shape parameters cannot
    // meet the 1e-11 gate and are excluded from the sample.
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mag = rng.gen_range(0.04..0.1);
        let eps2 = if rng.gen_bool(0.5) { mag } else { -mag };
        let dx = rng.gen_range(0.8..1.2);
        let f0 = rng.gen_range(-2.0..2.0);
        let f1 = rng.gen_range(-2.0..2.0);
        let want = k2_closed_form_coeff(eps2, dx).unwrap() * (f0 + f1);
        let got = flux_reconstruct_oracle(&[f0, f1], 0, eps2, dx).unwrap();
        let rel = (got - want).abs() / want.abs().max(1e-12);
        worst = worst.max(rel);
    }
    check(
        "closed-form-vs-dense-oracle",
        worst <= 1e-11,
        format!("1000 cases, worst rel {worst:.2e}"),
    )
}

fn poly_table_oracle_check() -> Check {
    let mut worst = 0.0f64;
    for k in [2usize, 3] {
        for r in -1..k as i32 {
            let table = poly_coeffs(k, r).unwrap();
            for j in 0..k {
                let mut unit = vec![0.0; k];
                unit[j] = 1.0;
                let got = flux_reconstruct_oracle(&unit, r, 0.0, 0.7).unwrap();
                worst = worst.max((got - table.as_slice()[j]).abs());
            }
        }
    }
    check(
        "poly-table-vs-dense-oracle",
        worst <= 1e-12,
        format!("all rows, worst abs {worst:.2e}"),
    )
}

fn truncation_slope_check(k: usize) -> Check {
    let name = if k == 2 {
        "k2-truncation-slope"
    } else {
        "k3-truncation-slope"
    };
    let (lo, hi): (f64, f64) = if k == 2 { (1e-4, 1e-1) } else { (1e-3, 1.6e-2) };
    let mut min_slope = f64::INFINITY;
    for r in -1..k as i32 {
        let mut pts = Vec::new();
        for q in 0..6 {
            let eta = lo * (hi / lo).powf(q as f64 / 5.0);
            let table = rbf_coeffs(k, r, eta).unwrap();
            let mut err = 0.0f64;
            for j in 0..k {
                let mut unit = vec![0.0; k];
                unit[j] = 1.0;
                let got = flux_reconstruct_oracle(&unit, r, eta, 1.0).unwrap();
                err = err.max((got - table.as_slice()[j]).abs());
            }
            pts.push((eta, err));
        }
        if let Some(s) = empirical_order(&pts) {
            min_slope = min_slope.min(s);
        }
    }
    check(
        name,
        min_slope >= 1.9,
        format!("min slope over rows {min_slope:.3}"),
    )
}

fn adaptation_table_check() -> Check {
    // two-point interpolation of h = 2 + cos x: the adapted shape parameter
    // lifts the midpoint error order from about 2 to about 4
    let h = |x: f64| 2.0 + x.cos();
    let x0 = 0.3;
    let mut fixed = Vec::new();
    let mut adapted = Vec::new();
    for &dx in &[0.2, 0.1, 0.05, 0.025] {
        let centers = [x0, x0 + dx];
        let values = [h(centers[0]), h(centers[1])];
        let mid = x0 + dx / 2.0;
        fixed.push((dx, (0.5 * (values[0] + values[1]) - h(mid)).abs()));
        let eps2 = -(mid.cos()) / h(mid);
        let interp = rbf_interp(&centers, &values, eps2).unwrap();
        adapted.push((dx, (interp.eval(mid).unwrap() - h(mid)).abs()));
    }
    let s0 = empirical_order(&fixed).unwrap_or(f64::NAN);
    let s1 = empirical_order(&adapted).unwrap_or(f64::NAN);
    check(
        "mq-adaptation-two-point",
        (s0 - 2.0).abs() <= 0.3 && (s1 - 4.0).abs() <= 0.3,
        format!("polynomial slope {s0:.3}, adapted slope {s1:.3}"),
    )
}

fn weno_weight_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut worst_sum = 0.0f64;
    let mut in_range = true;
    for _ in 0..500 {
        let k = if rng.gen_bool(0.5) { 2 } else { 3 };
        let beta: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1e8)).collect();
        let ww = weno_weights(linear_weights(k), &beta, EPS_M);
        let sum: f64 = ww.w.iter().sum();
        worst_sum = worst_sum.max((sum - 1.0).abs());
        if ww.w.iter().any(|w| !(0.0..=1.0).contains(w)) {
            in_range = false;
        }
    }
    out.push(check(
        "weno-weight-normalization",
        worst_sum <= 1e-14 && in_range,
        format!("500 cases, worst |sum - 1| = {worst_sum:.2e}"),
    ));

    let mut worst = 0.0f64;
    for k in [2usize, 3] {
        let ww = weno_weights(linear_weights(k), &vec![0.42; k], EPS_M);
        for (w, d) in ww.w.iter().zip(linear_weights(k)) {
            worst = worst.max((w - d).abs());
        }
    }
    out.push(check(
        "weno-equal-beta-linear",
        worst <= 1e-13,
        format!("worst |w - d| = {worst:.2e}"),
    ));
    out
}

fn linear_weights_check() -> Check {
    let mut worst = 0.0f64;
    let mut sums_ok = true;
    for k in [2usize, 3] {
        let d = linear_weights(k);
        let sum: f64 = d.iter().sum();
        if (sum - 1.0).abs() > 1e-15 {
            sums_ok = false;
        }
        let mut comb = vec![0.0; 2 * k - 1];
        for (r, dr) in d.iter().enumerate() {
            let row = poly_coeffs(k, r as i32).unwrap();
            for (j, c) in row.as_slice().iter().enumerate() {
                comb[k - 1 - r + j] += dr * c;
            }
        }
        let target = poly_interface_stencil(2 * k - 1, k as i32 - 1, 1.0).unwrap();
        for (a, b) in comb.iter().zip(&target) {
            worst = worst.max((a - b).abs());
        }
    }
    check(
        "linear-weights-high-order-stencil",
        worst <= 1e-13 && sums_ok,
        format!("worst stencil deviation {worst:.2e}"),
    )
}

/// Sliding average of h over the cell centered at c (5-point Gauss rule).
fn sliding_avg(h: &impl Fn(f64) -> f64, c: f64, dx: f64) -> f64 {
    const XS: [f64; 5] = [
        -0.906179845938664,
        -0.538469310105683,
        0.0,
        0.538469310105683,
        0.906179845938664,
    ];
    const WS: [f64; 5] = [
        0.236926885056189,
        0.478628670499366,
        0.568888888888889,
        0.478628670499366,
        0.236926885056189,
    ];
    let half = dx / 2.0;
    XS.iter().zip(WS).map(|(x, w)| w * h(c + half * x)).sum::<f64>() / 2.0
}

fn eno_exactness_check() -> Check {
    // stencil-selected reconstruction reproduces interface values of any
    // flux whose primitive interpolant is exact: degree <= k-1
    let mut stats = EtaStats::default();
    let mut worst = 0.0f64;
    let xi = 0.4;
    let dx = 0.13;
    let h1 = |x: f64| 2.0 - 3.0 * x;
    let h2 = |x: f64| 1.0 + 2.0 * x + 4.0 * x * x;
    let mut w3 = [0.0; 3];
    for (m, slot) in w3.iter_mut().enumerate() {
        *slot = sliding_avg(&h1, xi + (m as f64 - 1.5) * dx, dx);
    }
    let v = reconstruct_interface(2, Scheme::Eno, &w3, Side::Plus, &mut stats).unwrap();
    worst = worst.max(((v - h1(xi)) / h1(xi)).abs());
    let mut w5 = [0.0; 5];
    for (m, slot) in w5.iter_mut().enumerate() {
        *slot = sliding_avg(&h2, xi + (m as f64 - 2.5) * dx, dx);
    }
    let v = reconstruct_interface(3, Scheme::Eno, &w5, Side::Plus, &mut stats).unwrap();
    worst = worst.max(((v - h2(xi)) / h2(xi)).abs());
    check(
        "eno-polynomial-exactness",
        worst <= 1e-12,
        format!("worst rel {worst:.2e}"),
    )
}

fn interface_order_check(k: usize) -> Check {
    // RBF-ENO interface reconstruction order on smooth data: about k+1
    let name = if k == 2 {
        "rbf-eno-k2-interface-order"
    } else {
        "rbf-eno-k3-interface-order"
    };
    let h = |x: f64| 2.0 + x.sin();
    let xi = 0.3;
    let mut stats = EtaStats::default();
    let mut pts = Vec::new();
    for &dx in &[0.04, 0.02, 0.01, 0.005] {
        let wlen = 2 * k - 1;
        let mut w = [0.0; 5];
        for (m, slot) in w.iter_mut().take(wlen).enumerate() {
            let c = xi + (m as f64 - (wlen as f64 / 2.0)) * dx;
            *slot = sliding_avg(&h, c, dx);
        }
        let v = reconstruct_interface(k, Scheme::RbfEno, &w[..wlen], Side::Plus, &mut stats)
            .unwrap();
        pts.push((dx, (v - h(xi)).abs()));
    }
    let slope = empirical_order(&pts).unwrap_or(f64::NAN);
    let (lo, hi) = if k == 2 { (2.8, 3.2) } else { (3.7, 4.3) };
    check(
        name,
        (lo..=hi).contains(&slope),
        format!("slope {slope:.3} (want [{lo}, {hi}])"),
    )
}

fn eta_analytic_limit_check() -> Check {
    let h = |x: f64| 2.0 + x.sin();
    let hpp = |x: f64| -x.sin();
    let xi = 0.7;
    let mut ratios = Vec::new();
    for dx in [1e-2, 5e-3, 2.5e-3] {
        let fm = sliding_avg(&h, xi - 1.5 * dx, dx);
        let f0 = sliding_avg(&h, xi - 0.5 * dx, dx);
        let fp = sliding_avg(&h, xi + 0.5 * dx, dx);
        ratios.push(eta_k2(fm, f0, fp).value / (dx * dx));
    }
    let target = -hpp(xi) / (3.0 * h(xi));
    let extrap = 2.0 * ratios[2] - ratios[1];
    let rel = ((extrap - target) / target).abs();
    check(
        "eta-k2-analytic-limit",
        rel <= 1e-4,
        format!("extrapolated ratio {extrap:.8}, target {target:.8}"),
    )
}

fn monotone_fallback_check() -> Check {
    let mut stats = EtaStats::default();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut ok = true;
    let mut flagged = 0usize;
    for _ in 0..2000 {
        let w3: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if monotone_switch_k2(w3[0], w3[1], w3[2]) {
            flagged += 1;
            let rbf = reconstruct_interface(2, Scheme::RbfEno, &w3, Side::Plus, &mut stats).unwrap();
            let eno = reconstruct_interface(2, Scheme::Eno, &w3, Side::Plus, &mut stats).unwrap();
            if rbf.to_bits() != eno.to_bits() {
                ok = false;
            }
        }
    }
    check(
        "monotone-switch-fallback",
        ok && flagged > 100,
        format!("{flagged} flagged windows, all equal to the polynomial path"),
    )
}

fn conservation_check() -> Result<Check> {
    // 100 periodic steps conserve the cell sum to 1e-12 relative
    let grid = Grid1D::new(-1.0, 1.0, 50)?;
    let bc = BoundarySpec1D {
        left: Bc1::Periodic,
        right: Bc1::Periodic,
    };
    let mut worst = 0.0f64;
    for scheme in [Scheme::RbfWenoJs, Scheme::Eno] {
        let sc = SchemeConfig::new(3, scheme)?;
        let mut field = init_scalar(Problem::BurgersSine, &grid)?;
        let total0: f64 = field.interior().iter().map(|s| s.value() * grid.dx).sum();
        let dt = 0.1 * grid.dx / 1.0;
        let mut eta = EtaStats::default();
        for step in 0..100 {
            let mut stage = |f: &mut Field1D<1>, _t: f64| {
                fill_ghosts_1d(f, &bc)?;
                crate::time::rhs_1d(f, &grid, &BurgersEq, &sc, 1.0, &mut eta)
            };
            rk3_step_1d(&mut field, step as f64 * dt, dt, &mut stage)?;
        }
        let total1: f64 = field.interior().iter().map(|s| s.value() * grid.dx).sum();
        let scale: f64 = field
            .interior()
            .iter()
            .map(|s| s.value().abs() * grid.dx)
            .sum::<f64>()
            .max(1e-10);
        worst = worst.max((total1 - total0).abs() / scale);
    }
    Ok(check(
        "periodic-conservation-100-steps",
        worst <= 1e-12,
        format!("worst relative drift {worst:.2e}"),
    ))
}

fn rk3_symbolic_check() -> Result<Check> {
    let dt = 0.41;
    let mut field = Field1D::<1>::new(1);
    field.set(0, State::scalar(1.0));
    let mut stage = |f: &mut Field1D<1>, _t: f64| {
        let mut tend = Field1D::<1>::with_ghost(f.n(), f.ghost());
        tend.set(0, State::scalar(-f.at(0).value()));
        Ok(tend)
    };
    rk3_step_1d(&mut field, 0.0, dt, &mut stage)?;
    let expect = 1.0 - dt + dt * dt / 2.0 - dt * dt * dt / 6.0;
    // stage arithmetic reassociates; agreement to a few ulps is exact here
    let ok = (field.at(0).value() - expect).abs() <= 4.0 * f64::EPSILON * expect.abs();
    Ok(check(
        "rk3-symbolic-single-step",
        ok,
        format!("got {:.17}, want {:.17}", field.at(0).value(), expect),
    ))
}

fn rk3_order_check() -> Result<Check> {
    let mut errs = Vec::new();
    for steps in [10usize, 20, 40] {
        let dt = 1.0 / steps as f64;
        let mut field = Field1D::<1>::new(1);
        field.set(0, State::scalar(1.0));
        let mut stage = |f: &mut Field1D<1>, _t: f64| {
            let mut tend = Field1D::<1>::with_ghost(f.n(), f.ghost());
            tend.set(0, State::scalar(-f.at(0).value()));
            Ok(tend)
        };
        for s in 0..steps {
            rk3_step_1d(&mut field, s as f64 * dt, dt, &mut stage)?;
        }
        errs.push((dt, (field.at(0).value() - (-1.0f64).exp()).abs()));
    }
    let slope = empirical_order(&errs).unwrap_or(f64::NAN);
    Ok(check(
        "rk3-temporal-order",
        (2.9..=3.1).contains(&slope),
        format!("slope {slope:.3}"),
    ))
}

fn char_round_trip_check() -> Check {
    let eos = EosParams::default();
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let wl = Prim1 {
            rho: rng.gen_range(0.1..5.0),
            u: rng.gen_range(-3.0..3.0),
            p: rng.gen_range(0.1..5.0),
        };
        let wr = Prim1 {
            rho: rng.gen_range(0.1..5.0),
            u: rng.gen_range(-3.0..3.0),
            p: rng.gen_range(0.1..5.0),
        };
        let (ul, ur) = (wl.to_conserved(&eos), wr.to_conserved(&eos));
        let basis = char_basis_euler_1d(&ul, &ur, &eos).unwrap();
        for s in [&ul, &ur] {
            let back = basis.from_char(&basis.to_char(s));
            for c in 0..3 {
                worst = worst.max((back[c] - s[c]).abs() / s.abs_max().max(1.0));
            }
        }
    }
    check(
        "char-round-trip",
        worst <= 1e-12,
        format!("200 random pairs, worst rel {worst:.2e}"),
    )
}

fn lf_split_check() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(1..8);
        let u: Vec<State<1>> = (0..n).map(|_| State([rng.gen_range(-5.0..5.0)])).collect();
        let f: Vec<State<1>> = (0..n).map(|_| State([rng.gen_range(-5.0..5.0)])).collect();
        let alpha = rng.gen_range(0.1..10.0);
        let (p, m) = lf_split(&f, &u, alpha);
        for ((p, m), f) in p.iter().zip(&m).zip(&f) {
            let scale = f.value().abs().max(alpha * 5.0).max(1.0);
            worst = worst.max((p.value() + m.value() - f.value()).abs() / scale);
        }
    }
    check(
        "lf-split-reassembly",
        worst <= 1e-14,
        format!("worst rel {worst:.2e}"),
    )
}

fn riemann_checks() -> Vec<Check> {
    let eos = EosParams::default();
    let l = Prim1 {
        rho: 1.0,
        u: 0.0,
        p: 1.0,
    };
    let r = Prim1 {
        rho: 0.125,
        u: 0.0,
        p: 0.1,
    };
    let sol = exact_riemann(l, r, &eos).unwrap();
    let mut out = Vec::new();
    let p_ok = (sol.pstar() - 0.30313017805065).abs() < 1e-9;
    let u_ok = (sol.ustar() - 0.92745262004895).abs() < 1e-9;
    out.push(check(
        "riemann-star-regression",
        p_ok && u_ok,
        format!("p* = {:.12}, u* = {:.12}", sol.pstar(), sol.ustar()),
    ));

    let s = sol.right_shock_speed().unwrap();
    let flux = |w: &Prim1| {
        let e = w.p / (eos.gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
        [w.rho * w.u, w.rho * w.u * w.u + w.p, (e + w.p) * w.u]
    };
    let cons = |w: &Prim1| {
        let e = w.p / (eos.gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
        [w.rho, w.rho * w.u, e]
    };
    let wl = sol.sample(s - 1e-9);
    let wr = sol.sample(s + 1e-9);
    let mut worst = 0.0f64;
    for c in 0..3 {
        let lhs = flux(&wl)[c] - flux(&wr)[c];
        let rhs = s * (cons(&wl)[c] - cons(&wr)[c]);
        worst = worst.max((lhs - rhs).abs());
    }
    let mut valid = true;
    for m in 0..=10_000 {
        let xi = -2.0 + 4.0 * m as f64 / 10_000.0;
        let w = sol.sample(xi);
        if !(w.rho > 0.0 && w.p > 0.0 && w.u.is_finite()) {
            valid = false;
        }
    }
    out.push(check(
        "riemann-rankine-hugoniot",
        worst <= 1e-10 && valid,
        format!("jump residual {worst:.2e} over 10^4 samples"),
    ));
    out
}

fn rbf_interp_check() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(1..5);
        let centers: Vec<f64> = (0..n).map(|i| i as f64 + rng.gen_range(0.0..0.3)).collect();
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let eps2 = rng.gen_range(0.05..1.0);
        let interp = rbf_interp(&centers, &values, eps2).unwrap();
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (c, v) in centers.iter().zip(&values) {
            worst = worst.max((interp.eval(*c).unwrap() - v).abs() / scale);
        }
    }
    check(
        "rbf-interp-reproduction",
        worst <= 1e-12,
        format!("worst rel {worst:.2e}"),
    )
}

fn mq_kernel_check() -> Check {
    let ok = mq_kernel(1.3, 1.3, 4.0).map(|v| v == 1.0).unwrap_or(false)
        && mq_kernel(9.0, 2.0, 0.0).map(|v| v == 1.0).unwrap_or(false)
        && mq_kernel(1.0, 0.0, 3.0).map(|v| v == 2.0).unwrap_or(false)
        && mq_kernel(2.0, 0.0, -0.5).is_err();
    check(
        "mq-kernel-limits",
        ok,
        "unit at center, polynomial limit, radicand guard".into(),
    )
}

fn empirical_order_check() -> Check {
    let pts: Vec<(f64, f64)> = [0.1f64, 0.05, 0.025, 0.0125]
        .iter()
        .map(|&dx| (dx, dx.powi(3)))
        .collect();
    let s = empirical_order(&pts).unwrap_or(f64::NAN);
    check(
        "empirical-order-synthetic",
        (s - 3.0).abs() <= 1e-10,
        format!("slope {s:.12}"),
    )
}

fn ghost_fill_check() -> Result<Check> {
    let mut field = Field1D::<1>::with_ghost(5, 3);
    for (i, v) in [0.3, -1.2, 4.4, 0.0, 2.5].iter().enumerate() {
        field.set(i as isize, State::scalar(*v));
    }
    let bc = BoundarySpec1D {
        left: Bc1::Periodic,
        right: Bc1::Periodic,
    };
    fill_ghosts_1d(&mut field, &bc)?;
    let once = field.data().to_vec();
    fill_ghosts_1d(&mut field, &bc)?;
    let idempotent = once == field.data();
    let wrapped = field.at(-1) == field.at(4) && field.at(5) == field.at(0);
    Ok(check(
        "ghost-fill-idempotent-periodic",
        idempotent && wrapped,
        "double fill bitwise stable, wrap exact".into(),
    ))
}

fn stability_smoke_check() -> Result<Check> {
    let grid = Grid1D::new(-1.0, 1.0, 100)?;
    let mut field = init_scalar(Problem::AdvectSmooth, &grid)?;
    let max0 = field
        .interior()
        .iter()
        .fold(0.0f64, |m, s| m.max(s.value().abs()));
    let bc = BoundarySpec1D {
        left: Bc1::Periodic,
        right: Bc1::Periodic,
    };
    let sc = SchemeConfig::new(3, Scheme::WenoJs)?;
    let tc = TimeConfig {
        cfl: 0.1,
        t_end: 1000.0 * 0.1 * grid.dx,
        dt_cap: None,
    };
    let stats: RunStats = advance_1d(&mut field, &grid, &AdvectionEq, &bc, &sc, &tc)?;
    let max1 = field
        .interior()
        .iter()
        .fold(0.0f64, |m, s| m.max(s.value().abs()));
    Ok(check(
        "linear-stability-smoke",
        max1 <= max0 + 1e-3 && stats.steps >= 1000,
        format!("{} steps, max grew {:.2e}", stats.steps, max1 - max0),
    ))
}

/// Run the full verification suite.
pub fn run_all(fault: Fault) -> VerifyReport {
    let mut checks = Vec::new();
    checks.push(poly_limit_check(2, fault));
    checks.push(poly_limit_check(3, fault));
    checks.extend(row_sum_checks());
    checks.push(closed_form_check());
    checks.push(poly_table_oracle_check());
    checks.push(truncation_slope_check(2));
    checks.push(truncation_slope_check(3));
    checks.push(adaptation_table_check());
    checks.extend(weno_weight_checks());
    checks.push(linear_weights_check());
    checks.push(eno_exactness_check());
    checks.push(interface_order_check(2));
    checks.push(interface_order_check(3));
    checks.push(eta_analytic_limit_check());
    checks.push(monotone_fallback_check());
    checks.push(char_round_trip_check());
    checks.push(lf_split_check());
    checks.extend(riemann_checks());
    checks.push(rbf_interp_check());
    checks.push(mq_kernel_check());
    checks.push(empirical_order_check());

    let fallible: Vec<(&'static str, Result<Check>)> = vec![
        ("periodic-conservation-100-steps", conservation_check()),
        ("rk3-symbolic-single-step", rk3_symbolic_check()),
        ("rk3-temporal-order", rk3_order_check()),
        ("ghost-fill-idempotent-periodic", ghost_fill_check()),
        ("linear-stability-smoke", stability_smoke_check()),
    ];
    for (name, result) in fallible {
        match result {
            Ok(c) => checks.push(c),
            Err(e) => checks.push(check(name, false, format!("errored: {e}"))),
        }
    }
    VerifyReport { checks }
}
