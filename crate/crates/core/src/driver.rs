//! Step loops: advance a field to the final time under CFL control.

use crate::error::Result;
use crate::flux::{max_wavespeed_1d, max_wavespeed_2d, Physics1D};
use crate::grid::{
    fill_ghosts_1d, fill_ghosts_2d, BoundarySpec1D, BoundarySpec2D, Field1D, Field2D, Grid1D,
    Grid2D,
};
use crate::reconstruction::EtaStats;
use crate::time::{cfl_dt_1d, cfl_dt_2d, rhs_1d, rhs_2d, rk3_step_1d, rk3_step_2d, SchemeConfig, TimeConfig};

/// Step-loop summary reported in run metadata.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunStats {
    pub steps: u64,
    pub dt_min: f64,
    pub dt_max: f64,
    pub eta_clamps: u64,
}

impl RunStats {
    fn record_dt(&mut self, dt: f64) {
        if self.steps == 0 {
            self.dt_min = dt;
            self.dt_max = dt;
        } else {
            self.dt_min = self.dt_min.min(dt);
            self.dt_max = self.dt_max.max(dt);
        }
        self.steps += 1;
    }
}

fn done(t: f64, t_end: f64) -> bool {
    t_end - t <= 1e-12 * t_end.abs().max(1.0)
}

/// Advance a 1D field to `tc.t_end`. The wave-speed bound is recomputed once
/// per step and frozen across the RK3 stages.
pub fn advance_1d<const C: usize>(
    field: &mut Field1D<C>,
    grid: &Grid1D,
    phys: &impl Physics1D<C>,
    bc: &BoundarySpec1D<C>,
    sc: &SchemeConfig,
    tc: &TimeConfig,
) -> Result<RunStats> {
    let mut stats = RunStats::default();
    let mut eta = EtaStats::default();
    let mut t = 0.0;
    while !done(t, tc.t_end) {
        let alpha = max_wavespeed_1d(field, phys)?;
        let dt = cfl_dt_1d(alpha, grid.dx, tc, tc.t_end - t);
        let mut stage = |f: &mut Field1D<C>, _st: f64| -> Result<Field1D<C>> {
            fill_ghosts_1d(f, bc)?;
            rhs_1d(f, grid, phys, sc, alpha, &mut eta)
        };
        rk3_step_1d(field, t, dt, &mut stage)?;
        t += dt;
        stats.record_dt(dt);
    }
    stats.eta_clamps = eta.clamps;
    Ok(stats)
}

/// Advance a 2D field to `tc.t_end` with dimension-by-dimension sweeps.
pub fn advance_2d<const C: usize>(
    field: &mut Field2D<C>,
    grid: &Grid2D,
    phys_x: &impl Physics1D<C>,
    phys_y: &impl Physics1D<C>,
    bc: &BoundarySpec2D<C>,
    sc: &SchemeConfig,
    tc: &TimeConfig,
) -> Result<RunStats> {
    let mut stats = RunStats::default();
    let mut eta = EtaStats::default();
    let mut t = 0.0;
    while !done(t, tc.t_end) {
        let alpha_x = max_wavespeed_2d(field, phys_x)?;
        let alpha_y = max_wavespeed_2d(field, phys_y)?;
        let dt = cfl_dt_2d(alpha_x, alpha_y, grid.dx, grid.dy, tc, tc.t_end - t);
        let mut stage = |f: &mut Field2D<C>, st: f64| -> Result<Field2D<C>> {
            fill_ghosts_2d(f, grid, bc, st)?;
            rhs_2d(f, grid, phys_x, phys_y, sc, alpha_x, alpha_y, &mut eta)
        };
        rk3_step_2d(field, t, dt, &mut stage)?;
        t += dt;
        stats.record_dt(dt);
    }
    stats.eta_clamps = eta.clamps;
    Ok(stats)
}
