//! Semi-discrete right-hand sides and TVD-RK3 time stepping.
//!
//! The 1D tendency of cell i is `-(fhat_{i+1/2} - fhat_{i-1/2}) / dx` with
//! interface fluxes assembled from globally split fluxes: the plus part is
//! reconstructed from a window centered on the left neighbor, the minus part
//! from the reversed window centered on the right neighbor. 2D tendencies are
//! the sum of per-row x sweeps and per-column y sweeps of the same kernel;
//! no quadrature is involved.

use crate::error::{Result, SolverError};
use crate::flux::Physics1D;
use crate::grid::{Field1D, Field2D, Grid1D, Grid2D};
use crate::reconstruction::{recon_plus, EtaOptions, EtaStats, Scheme};
use crate::state::State;

/// CFL-driven step control.
#[derive(Clone, Copy, Debug)]
pub struct TimeConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub dt_cap: Option<f64>,
}

impl TimeConfig {
    pub fn new(cfl: f64, t_end: f64) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(SolverError::Config(format!("CFL number {cfl} outside (0, 1]")));
        }
        Ok(TimeConfig {
            cfl,
            t_end,
            dt_cap: None,
        })
    }
}

/// Spatial scheme selection. `eta` carries the monotone-guard switch of the
/// RBF variants: on by default (required near discontinuities), off for the
/// smooth convergence runs.
#[derive(Clone, Copy, Debug)]
pub struct SchemeConfig {
    pub k: usize,
    pub scheme: Scheme,
    pub eta: EtaOptions,
}

impl SchemeConfig {
    pub fn new(k: usize, scheme: Scheme) -> Result<Self> {
        Self::with_guard(k, scheme, true)
    }

    pub fn with_guard(k: usize, scheme: Scheme, monotone_guard: bool) -> Result<Self> {
        if k != 2 && k != 3 {
            return Err(SolverError::Config(format!(
                "order parameter k = {k} not supported"
            )));
        }
        Ok(SchemeConfig {
            k,
            scheme,
            eta: EtaOptions { monotone_guard },
        })
    }
}

/// CFL time step `C dx / alpha`, truncated to land exactly on `t_end`.
pub fn cfl_dt_1d(alpha: f64, dx: f64, cfg: &TimeConfig, remaining: f64) -> f64 {
    let mut dt = if alpha > 0.0 {
        cfg.cfl * dx / alpha
    } else {
        cfg.dt_cap.unwrap_or(remaining)
    };
    if let Some(cap) = cfg.dt_cap {
        dt = dt.min(cap);
    }
    dt.min(remaining)
}

/// 2D CFL step `C / (alpha_x/dx + alpha_y/dy)`.
pub fn cfl_dt_2d(
    alpha_x: f64,
    alpha_y: f64,
    dx: f64,
    dy: f64,
    cfg: &TimeConfig,
    remaining: f64,
) -> f64 {
    let denom = alpha_x / dx + alpha_y / dy;
    let mut dt = if denom > 0.0 {
        cfg.cfl / denom
    } else {
        cfg.dt_cap.unwrap_or(remaining)
    };
    if let Some(cap) = cfg.dt_cap {
        dt = dt.min(cap);
    }
    dt.min(remaining)
}

/// One sweep along a padded 1D array of states: adds the flux-difference
/// tendency into `tend` (length n). `u` and `f` are padded slabs with ghost
/// width `g`; slot `c + g` holds cell `c`.
fn sweep<const C: usize>(
    u: &[State<C>],
    f: &[State<C>],
    n: usize,
    g: usize,
    dx: f64,
    phys: &impl Physics1D<C>,
    sc: &SchemeConfig,
    alpha: f64,
    stats: &mut EtaStats,
    tend: &mut [State<C>],
) -> Result<()> {
    let k = sc.k;
    debug_assert!(g >= k, "ghost width must cover the stencil");
    let wlen = 2 * k - 1;
    let scheme = sc.scheme;
    let opts = sc.eta;
    let cell = |c: isize| -> &State<C> { &u[(c + g as isize) as usize] };
    let flux = |c: isize| -> &State<C> { &f[(c + g as isize) as usize] };

    let mut fhat: Vec<State<C>> = Vec::with_capacity(n + 1);
    let mut wp = [0.0f64; 5];
    let mut wm = [0.0f64; 5];

    for j in 0..=(n as isize) {
        let basis = phys.char_basis(cell(j - 1), cell(j))?;
        let value = match basis {
            None => {
                let mut out = State::ZERO;
                for comp in 0..C {
                    for d in 0..wlen {
                        let cp = j - k as isize + d as isize;
                        wp[d] = 0.5 * (flux(cp)[comp] + alpha * cell(cp)[comp]);
                        let cm = j + k as isize - 1 - d as isize;
                        wm[d] = 0.5 * (flux(cm)[comp] - alpha * cell(cm)[comp]);
                    }
                    out[comp] = recon_plus(&wp[..wlen], scheme, opts, stats)
                        + recon_plus(&wm[..wlen], scheme, opts, stats);
                }
                out
            }
            Some(basis) => {
                // project the 2k-cell union window onto characteristic fields
                let mut wch = [State::<C>::ZERO; 6];
                let mut gch = [State::<C>::ZERO; 6];
                for d in 0..2 * k {
                    let c = j - k as isize + d as isize;
                    wch[d] = basis.to_char(cell(c));
                    gch[d] = basis.to_char(flux(c));
                }
                let mut ghat = State::<C>::ZERO;
                for field in 0..C {
                    for d in 0..wlen {
                        wp[d] = 0.5 * (gch[d][field] + alpha * wch[d][field]);
                        let rd = 2 * k - 1 - d;
                        wm[d] = 0.5 * (gch[rd][field] - alpha * wch[rd][field]);
                    }
                    ghat[field] = recon_plus(&wp[..wlen], scheme, opts, stats)
                        + recon_plus(&wm[..wlen], scheme, opts, stats);
                }
                basis.from_char(&ghat)
            }
        };
        fhat.push(value);
    }

    let inv_dx = 1.0 / dx;
    for i in 0..n {
        tend[i] += (fhat[i] - fhat[i + 1]) * inv_dx;
    }
    Ok(())
}

/// Tendency field of a 1D problem; ghosts of `field` must be filled.
pub fn rhs_1d<const C: usize>(
    field: &Field1D<C>,
    grid: &Grid1D,
    phys: &impl Physics1D<C>,
    sc: &SchemeConfig,
    alpha: f64,
    stats: &mut EtaStats,
) -> Result<Field1D<C>> {
    let mut tend = Field1D::<C>::with_ghost(field.n(), field.ghost());
    let mut f = vec![State::<C>::ZERO; field.data().len()];
    for (dst, src) in f.iter_mut().zip(field.data()) {
        *dst = phys.flux(src)?;
    }
    sweep(
        field.data(),
        &f,
        field.n(),
        field.ghost(),
        grid.dx,
        phys,
        sc,
        alpha,
        stats,
        tend.interior_mut(),
    )?;
    for (i, t) in tend.interior().iter().enumerate() {
        if !t.is_finite() {
            return Err(SolverError::NanTendency { cell: i });
        }
    }
    Ok(tend)
}

/// Tendency field of a 2D problem, dimension by dimension; ghosts must be
/// filled.
pub fn rhs_2d<const C: usize>(
    field: &Field2D<C>,
    grid: &Grid2D,
    phys_x: &impl Physics1D<C>,
    phys_y: &impl Physics1D<C>,
    sc: &SchemeConfig,
    alpha_x: f64,
    alpha_y: f64,
    stats: &mut EtaStats,
) -> Result<Field2D<C>> {
    let (nx, ny, g) = (field.nx(), field.ny(), field.ghost());
    let mut tend = Field2D::<C>::new(nx, ny);

    // x sweeps, one per interior row
    let mut row_u = vec![State::<C>::ZERO; nx + 2 * g];
    let mut row_f = vec![State::<C>::ZERO; nx + 2 * g];
    let mut row_t = vec![State::<C>::ZERO; nx];
    for j in 0..ny as isize {
        for (s, slot) in row_u.iter_mut().enumerate() {
            *slot = field.at(s as isize - g as isize, j);
        }
        for (dst, src) in row_f.iter_mut().zip(&row_u) {
            *dst = phys_x.flux(src)?;
        }
        row_t.iter_mut().for_each(|t| *t = State::ZERO);
        sweep(
            &row_u, &row_f, nx, g, grid.dx, phys_x, sc, alpha_x, stats, &mut row_t,
        )?;
        for i in 0..nx as isize {
            tend.set(i, j, tend.at(i, j) + row_t[i as usize]);
        }
    }

    // y sweeps, one per interior column
    let mut col_u = vec![State::<C>::ZERO; ny + 2 * g];
    let mut col_f = vec![State::<C>::ZERO; ny + 2 * g];
    let mut col_t = vec![State::<C>::ZERO; ny];
    for i in 0..nx as isize {
        for (s, slot) in col_u.iter_mut().enumerate() {
            *slot = field.at(i, s as isize - g as isize);
        }
        for (dst, src) in col_f.iter_mut().zip(&col_u) {
            *dst = phys_y.flux(src)?;
        }
        col_t.iter_mut().for_each(|t| *t = State::ZERO);
        sweep(
            &col_u, &col_f, ny, g, grid.dy, phys_y, sc, alpha_y, stats, &mut col_t,
        )?;
        for j in 0..ny as isize {
            tend.set(i, j, tend.at(i, j) + col_t[j as usize]);
        }
    }

    for j in 0..ny as isize {
        for i in 0..nx as isize {
            if !tend.at(i, j).is_finite() {
                return Err(SolverError::NanTendency {
                    cell: j as usize * nx + i as usize,
                });
            }
        }
    }
    Ok(tend)
}

#[inline]
fn rk3_combine<const C: usize>(
    data: &mut [State<C>],
    a: f64,
    other: &[State<C>],
    b: f64,
    tend: &[State<C>],
    c: f64,
) {
    for ((d, o), t) in data.iter_mut().zip(other).zip(tend) {
        *d = *d * a + *o * b + *t * c;
    }
}

/// One TVD-RK3 step. `stage(field, stage_time)` must refill ghosts and
/// return the tendency; it is invoked at times t, t + dt and t + dt/2.
pub fn rk3_step_1d<const C: usize>(
    u: &mut Field1D<C>,
    t: f64,
    dt: f64,
    stage: &mut impl FnMut(&mut Field1D<C>, f64) -> Result<Field1D<C>>,
) -> Result<()> {
    let l0 = stage(u, t)?;
    let mut u1 = u.clone();
    rk3_combine(u1.data_mut(), 1.0, u.data(), 0.0, l0.data(), dt);
    let l1 = stage(&mut u1, t + dt)?;
    rk3_combine(u1.data_mut(), 0.25, u.data(), 0.75, l1.data(), 0.25 * dt);
    let l2 = stage(&mut u1, t + 0.5 * dt)?;
    rk3_combine(
        u.data_mut(),
        1.0 / 3.0,
        u1.data(),
        2.0 / 3.0,
        l2.data(),
        2.0 / 3.0 * dt,
    );
    Ok(())
}

/// One TVD-RK3 step on a 2D field.
pub fn rk3_step_2d<const C: usize>(
    u: &mut Field2D<C>,
    t: f64,
    dt: f64,
    stage: &mut impl FnMut(&mut Field2D<C>, f64) -> Result<Field2D<C>>,
) -> Result<()> {
    let l0 = stage(u, t)?;
    let mut u1 = u.clone();
    rk3_combine(u1.data_mut(), 1.0, u.data(), 0.0, l0.data(), dt);
    let l1 = stage(&mut u1, t + dt)?;
    rk3_combine(u1.data_mut(), 0.25, u.data(), 0.75, l1.data(), 0.25 * dt);
    let l2 = stage(&mut u1, t + 0.5 * dt)?;
    rk3_combine(
        u.data_mut(),
        1.0 / 3.0,
        u1.data(),
        2.0 / 3.0,
        l2.data(),
        2.0 / 3.0 * dt,
    );
    Ok(())
}
