//! Whole-problem run orchestration shared by the CLI and the acceptance
//! suite: set up a canonical problem, advance it to the final time, and
//! collect solutions, error norms and convergence tables.

use crate::driver::{advance_1d, advance_2d, RunStats};
use crate::error::{Result, SolverError};
use crate::flux::{
    prim2, AdvectionEq, BurgersEq, EosParams, Euler1DEq, Euler2DEq, EulerMode, Axis, Prim1, Prim2,
};
use crate::grid::{Grid1D, Grid2D};
use crate::problems::{
    bc_euler, bc_scalar, dmr, error_norms, exact_solution, init_euler, init_scalar, make_grid,
    ErrorReport, Norms, Problem,
};
use crate::time::{SchemeConfig, TimeConfig};

/// Default CFL number; every stated experiment uses it unless overridden.
pub const DEFAULT_CFL: f64 = 0.1;

/// Default monotone-guard setting. The polynomial-limit switch is required
/// for shock-bearing data. For k = 3 it also stays on for smooth runs: the
/// adapted ratio there carries the first derivative in its denominator, so
/// windows around smooth extrema produce order-one garbage values that the
/// switch suppresses at zero accuracy cost (the k = 3 adaptation term is
/// itself proportional to that derivative). For k = 2 the switch is dropped
/// on smooth runs, where it would zero the adaptation at every extremum of
/// the flux and forfeit the extra order.
pub fn default_guard(problem: Problem, k: usize) -> bool {
    k == 3 || !matches!(problem, Problem::AdvectSmooth | Problem::BurgersSine)
}

/// Finished scalar 1D run.
pub struct ScalarRun {
    pub grid: Grid1D,
    pub values: Vec<f64>,
    pub stats: RunStats,
}

/// Finished 1D Euler run in primitive variables.
pub struct EulerRun {
    pub grid: Grid1D,
    pub prim: Vec<Prim1>,
    pub stats: RunStats,
}

/// Finished 2D Euler run in primitive variables, row-major (j slow).
pub struct Euler2DRun {
    pub grid: Grid2D,
    pub prim: Vec<Prim2>,
    pub stats: RunStats,
}

/// Advance a scalar problem to `t_end`.
pub fn run_scalar(
    problem: Problem,
    sc: &SchemeConfig,
    n: usize,
    cfl: f64,
    t_end: f64,
) -> Result<ScalarRun> {
    let grid = make_grid(problem, n)?;
    let mut field = init_scalar(problem, &grid)?;
    let bc = bc_scalar(problem)?;
    let tc = TimeConfig {
        cfl,
        t_end,
        dt_cap: None,
    };
    let stats = match problem {
        Problem::AdvectSmooth | Problem::AdvectStep => {
            advance_1d(&mut field, &grid, &AdvectionEq, &bc, sc, &tc)?
        }
        Problem::BurgersSine => advance_1d(&mut field, &grid, &BurgersEq, &bc, sc, &tc)?,
        _ => {
            return Err(SolverError::Config(format!(
                "{} is not a scalar problem",
                problem.name()
            )))
        }
    };
    Ok(ScalarRun {
        grid,
        values: field.interior().iter().map(|s| s.value()).collect(),
        stats,
    })
}

/// Advance a 1D shock-tube problem to `t_end`.
pub fn run_euler(
    problem: Problem,
    sc: &SchemeConfig,
    mode: EulerMode,
    n: usize,
    cfl: f64,
    t_end: f64,
) -> Result<EulerRun> {
    let eos = EosParams::default();
    let grid = make_grid(problem, n)?;
    let mut field = init_euler(problem, &grid, &eos)?;
    let bc = bc_euler(problem)?;
    let phys = Euler1DEq { eos, mode };
    let tc = TimeConfig {
        cfl,
        t_end,
        dt_cap: None,
    };
    let stats = advance_1d(&mut field, &grid, &phys, &bc, sc, &tc)?;
    let mut prim = Vec::with_capacity(n);
    for s in field.interior() {
        prim.push(crate::flux::prim1(s, &eos)?);
    }
    Ok(EulerRun { grid, prim, stats })
}

/// Advance the double Mach reflection problem to `t_end`.
pub fn run_dmr(
    sc: &SchemeConfig,
    mode: EulerMode,
    nx: usize,
    ny: usize,
    cfl: f64,
    t_end: f64,
) -> Result<Euler2DRun> {
    let eos = EosParams::default();
    let grid = Grid2D::new(0.0, 4.0, 0.0, 1.0, nx, ny)?;
    let (mut field, bc) = dmr::setup(&grid, &eos)?;
    let phys_x = Euler2DEq {
        eos,
        mode,
        axis: Axis::X,
    };
    let phys_y = Euler2DEq {
        eos,
        mode,
        axis: Axis::Y,
    };
    let tc = TimeConfig {
        cfl,
        t_end,
        dt_cap: None,
    };
    let stats = advance_2d(&mut field, &grid, &phys_x, &phys_y, &bc, sc, &tc)?;
    let mut prim = Vec::with_capacity(nx * ny);
    for j in 0..ny as isize {
        for i in 0..nx as isize {
            prim.push(prim2(&field.at(i, j), &eos)?);
        }
    }
    Ok(Euler2DRun { grid, prim, stats })
}

/// Error norms of a finished scalar run against the exact solution.
pub fn scalar_error(problem: Problem, run: &ScalarRun, t_end: f64) -> Result<Norms> {
    let mut exact = Vec::with_capacity(run.grid.n);
    for i in 0..run.grid.n {
        exact.push(exact_solution(problem, run.grid.center(i), t_end)?);
    }
    Ok(error_norms(&run.values, &exact, run.grid.dx))
}

/// Convergence sweep over a resolution list (problems with an exact
/// solution only).
pub fn convergence_table(
    problem: Problem,
    sc: &SchemeConfig,
    resolutions: &[usize],
    cfl: f64,
    t_end: f64,
) -> Result<ErrorReport> {
    if !problem.has_exact() {
        return Err(SolverError::Unsupported(format!(
            "{} has no exact solution for error tables",
            problem.name()
        )));
    }
    let mut entries = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let run = run_scalar(problem, sc, n, cfl, t_end)?;
        entries.push((n, scalar_error(problem, &run, t_end)?));
    }
    Ok(ErrorReport::from_errors(&entries))
}

/// Default resolution ladder of the convergence tables.
pub const TABLE_RESOLUTIONS: [usize; 6] = [10, 20, 40, 80, 160, 320];
