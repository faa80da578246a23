//! Canonical problem setups, exact solutions and error norms.

use crate::error::{Result, SolverError};
use crate::flux::{EosParams, Prim1, Prim2};
use crate::grid::{Bc1, Bc2, BoundarySpec1D, BoundarySpec2D, Field1D, Field2D, Grid1D, Grid2D};
use crate::state::State;

/// Canonical problems. The id determines domain, initial data, boundary
/// conditions and default final time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    AdvectSmooth,
    AdvectStep,
    BurgersSine,
    Sod,
    Lax,
    Dmr,
}

impl Problem {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "advect-smooth" => Some(Problem::AdvectSmooth),
            "advect-step" => Some(Problem::AdvectStep),
            "burgers-sine" => Some(Problem::BurgersSine),
            "sod" => Some(Problem::Sod),
            "lax" => Some(Problem::Lax),
            "dmr" => Some(Problem::Dmr),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::AdvectSmooth => "advect-smooth",
            Problem::AdvectStep => "advect-step",
            Problem::BurgersSine => "burgers-sine",
            Problem::Sod => "sod",
            Problem::Lax => "lax",
            Problem::Dmr => "dmr",
        }
    }

    pub fn default_t_end(self) -> f64 {
        match self {
            Problem::AdvectSmooth | Problem::AdvectStep => 0.5,
            Problem::BurgersSine => 0.2,
            Problem::Sod => 0.2,
            Problem::Lax => 0.13,
            Problem::Dmr => 0.2,
        }
    }

    /// 1D domain endpoints; `None` for the 2D problem.
    pub fn domain_1d(self) -> Option<(f64, f64)> {
        match self {
            Problem::AdvectSmooth | Problem::AdvectStep | Problem::BurgersSine => {
                Some((-1.0, 1.0))
            }
            Problem::Sod | Problem::Lax => Some((-0.5, 0.5)),
            Problem::Dmr => None,
        }
    }

    pub fn is_euler(self) -> bool {
        matches!(self, Problem::Sod | Problem::Lax | Problem::Dmr)
    }

    pub fn is_2d(self) -> bool {
        matches!(self, Problem::Dmr)
    }

    /// Whether a pointwise exact solution is available for error tables.
    pub fn has_exact(self) -> bool {
        matches!(self, Problem::AdvectSmooth | Problem::BurgersSine)
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Grid for a 1D problem.
pub fn make_grid(p: Problem, n: usize) -> Result<Grid1D> {
    let (a, b) = p
        .domain_1d()
        .ok_or_else(|| SolverError::Config(format!("{} is not one-dimensional", p.name())))?;
    Grid1D::new(a, b, n)
}

/// Nodal sampling of the scalar initial data.
pub fn init_scalar(p: Problem, grid: &Grid1D) -> Result<Field1D<1>> {
    let mut field = Field1D::<1>::new(grid.n);
    let pi = std::f64::consts::PI;
    for i in 0..grid.n {
        let x = grid.center(i);
        let v = match p {
            Problem::AdvectSmooth => (pi * x).sin(),
            Problem::AdvectStep => -sgn(x),
            Problem::BurgersSine => -(pi * x).sin(),
            _ => {
                return Err(SolverError::Config(format!(
                    "{} is not a scalar problem",
                    p.name()
                )))
            }
        };
        field.set(i as isize, State::scalar(v));
    }
    Ok(field)
}

/// Boundary conditions of the scalar problems.
pub fn bc_scalar(p: Problem) -> Result<BoundarySpec1D<1>> {
    Ok(match p {
        Problem::AdvectSmooth | Problem::BurgersSine => BoundarySpec1D {
            left: Bc1::Periodic,
            right: Bc1::Periodic,
        },
        Problem::AdvectStep => BoundarySpec1D {
            left: Bc1::Dirichlet(State::scalar(1.0)),
            right: Bc1::Outflow,
        },
        _ => {
            return Err(SolverError::Config(format!(
                "{} is not a scalar problem",
                p.name()
            )))
        }
    })
}

/// Left/right primitive states of the shock-tube problems.
pub fn riemann_states(p: Problem) -> Result<(Prim1, Prim1)> {
    match p {
        Problem::Sod => Ok((
            Prim1 {
                rho: 1.0,
                u: 0.0,
                p: 1.0,
            },
            Prim1 {
                rho: 0.125,
                u: 0.0,
                p: 0.1,
            },
        )),
        Problem::Lax => Ok((
            Prim1 {
                rho: 0.445,
                u: 0.698,
                p: 3.528,
            },
            Prim1 {
                rho: 0.5,
                u: 0.0,
                p: 0.571,
            },
        )),
        _ => Err(SolverError::Config(format!(
            "{} is not a shock-tube problem",
            p.name()
        ))),
    }
}

/// Initial conserved field of a shock-tube problem centered at x = 0.
pub fn init_euler(p: Problem, grid: &Grid1D, eos: &EosParams) -> Result<Field1D<3>> {
    let (l, r) = riemann_states(p)?;
    let mut field = Field1D::<3>::new(grid.n);
    for i in 0..grid.n {
        let w = if grid.center(i) <= 0.0 { l } else { r };
        field.set(i as isize, w.to_conserved(eos));
    }
    Ok(field)
}

/// Shock-tube boundaries: zeroth-order extrapolation on both ends. The
/// stated fixed-state boundaries are equivalent until a wave reaches the
/// edge, and extrapolation avoids reflections on longer runs.
pub fn bc_euler(p: Problem) -> Result<BoundarySpec1D<3>> {
    match p {
        Problem::Sod | Problem::Lax => Ok(BoundarySpec1D {
            left: Bc1::Outflow,
            right: Bc1::Outflow,
        }),
        _ => Err(SolverError::Config(format!(
            "{} is not a shock-tube problem",
            p.name()
        ))),
    }
}

/// Pointwise exact solution of the scalar problems.
///
/// Advection translates the initial data with periodic wrap. The Burgers
/// characteristic equation `u = -sin(pi (x - u t))` is solved by
/// bisection-seeded damped Newton to |residual| < 1e-14; it is single valued
/// until the shock time `1/pi` (at exactly `1/pi` the odd-symmetric shock
/// sits at x = 0).
pub fn exact_solution(p: Problem, x: f64, t: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    match p {
        Problem::AdvectSmooth => Ok((pi * (x - t)).sin()),
        Problem::AdvectStep => {
            // wrap x - t into [-1, 1)
            let span = 2.0;
            let mut xi = x - t;
            xi = xi - span * ((xi + 1.0) / span).floor();
            Ok(-sgn(xi))
        }
        Problem::BurgersSine => {
            let t_shock = 1.0 / pi;
            if t > t_shock + 1e-14 {
                return Err(SolverError::Unsupported(format!(
                    "burgers-sine exact solution undefined after the shock time 1/pi (t = {t})"
                )));
            }
            if x == 0.0 {
                return Ok(0.0);
            }
            let residual = |u: f64| u + (pi * (x - u * t)).sin();
            // bisection seed on [-1, 1]
            let (mut a, mut b) = (-1.0, 1.0);
            let (mut fa, _fb) = (residual(a), residual(b));
            for _ in 0..40 {
                let m = 0.5 * (a + b);
                let fm = residual(m);
                if (fa <= 0.0) == (fm <= 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            let mut u = 0.5 * (a + b);
            // damped Newton polish
            for _ in 0..100 {
                let f = residual(u);
                if f.abs() < 1e-14 {
                    break;
                }
                let df = 1.0 - pi * t * (pi * (x - u * t)).cos();
                let mut step = f / df;
                let mut damp = 1.0;
                while residual(u - damp * step).abs() > f.abs() && damp > 1e-4 {
                    damp *= 0.5;
                }
                step *= damp;
                u -= step;
            }
            if residual(u).abs() > 1e-13 {
                return Err(SolverError::Singular {
                    cond: residual(u).abs(),
                });
            }
            Ok(u)
        }
        _ => Err(SolverError::Unsupported(format!(
            "{} has no pointwise exact solution",
            p.name()
        ))),
    }
}

/// dx-weighted error norms between a numeric solution and exact samples.
#[derive(Clone, Copy, Debug, Default)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

pub fn error_norms(numeric: &[f64], exact: &[f64], dx: f64) -> Norms {
    assert_eq!(numeric.len(), exact.len());
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (n, e) in numeric.iter().zip(exact) {
        let d = (n - e).abs();
        l1 += d;
        l2 += d * d;
        linf = linf.max(d);
    }
    Norms {
        l1: dx * l1,
        l2: (dx * l2).sqrt(),
        linf,
    }
}

/// Mean-normalized variant `(1/N) sum |e|`; reported alongside the
/// dx-weighted norms when normalization conventions need to be compared.
pub fn error_norms_mean(numeric: &[f64], exact: &[f64]) -> Norms {
    let n = numeric.len() as f64;
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (nu, e) in numeric.iter().zip(exact) {
        let d = (nu - e).abs();
        l1 += d;
        l2 += d * d;
        linf = linf.max(d);
    }
    Norms {
        l1: l1 / n,
        l2: (l2 / n).sqrt(),
        linf,
    }
}

/// One resolution row of a convergence table.
#[derive(Clone, Copy, Debug)]
pub struct ErrorRow {
    pub n: usize,
    pub norms: Norms,
    /// observed orders log2(e_N / e_2N) per norm, absent on the first row
    pub orders: [Option<f64>; 3],
}

/// Per-resolution errors and observed orders for one scheme/problem pair.
#[derive(Clone, Debug, Default)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn from_errors(entries: &[(usize, Norms)]) -> Self {
        let mut rows = Vec::with_capacity(entries.len());
        for (idx, (n, norms)) in entries.iter().enumerate() {
            let orders = if idx == 0 {
                [None, None, None]
            } else {
                let prev = &entries[idx - 1].1;
                [
                    observed_order(prev.l1, norms.l1),
                    observed_order(prev.l2, norms.l2),
                    observed_order(prev.linf, norms.linf),
                ]
            };
            rows.push(ErrorRow {
                n: *n,
                norms: *norms,
                orders,
            });
        }
        ErrorReport { rows }
    }

    /// Observed L1 order on the finest resolution pair.
    pub fn finest_l1_order(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.orders[0])
    }

    pub fn finest_l1_error(&self) -> Option<f64> {
        self.rows.last().map(|r| r.norms.l1)
    }
}

/// Order between consecutive doublings: log2(e_N / e_2N).
pub fn observed_order(coarse: f64, fine: f64) -> Option<f64> {
    if coarse > 0.0 && fine > 0.0 {
        Some((coarse / fine).log2())
    } else {
        None
    }
}

/// Double Mach reflection setup: a Mach-10 oblique shock at 60 degrees to
/// the x axis touching the wall at x = 1/6.
pub mod dmr {
    use super::*;

    pub const SHOCK_FOOT: f64 = 1.0 / 6.0;
    /// Shock normal speed is Mach 10 into quiescent gas with unit sound
    /// speed; its trace along a horizontal line moves at 10 / sin(60).
    pub fn post_state() -> Prim2 {
        let (s, c) = (60.0f64.to_radians().sin(), 60.0f64.to_radians().cos());
        Prim2 {
            rho: 8.0,
            u: 8.25 * s,
            v: -8.25 * c,
            p: 116.5,
        }
    }

    pub fn pre_state() -> Prim2 {
        Prim2 {
            rho: 1.4,
            u: 0.0,
            v: 0.0,
            p: 1.0,
        }
    }

    /// x position of the shock at height y and time t.
    pub fn shock_x(y: f64, t: f64) -> f64 {
        let tan60 = 60.0f64.to_radians().tan();
        let sin60 = 60.0f64.to_radians().sin();
        SHOCK_FOOT + y / tan60 + 10.0 / sin60 * t
    }

    /// Initial field and boundary closure on `[0,4] x [0,1]`; the grid must
    /// keep the 4:1 cell aspect.
    pub fn setup(grid: &Grid2D, eos: &EosParams) -> Result<(Field2D<4>, BoundarySpec2D<4>)> {
        if grid.nx != 4 * grid.ny {
            return Err(SolverError::Config(format!(
                "double Mach reflection needs a 4:1 grid, got {} x {}",
                grid.nx, grid.ny
            )));
        }
        let post = post_state().to_conserved(eos);
        let pre = pre_state().to_conserved(eos);
        let mut field = Field2D::<4>::new(grid.nx, grid.ny);
        for j in 0..grid.ny {
            let y = grid.ycenter(j);
            for i in 0..grid.nx {
                let x = grid.xcenter(i);
                let s = if x < shock_x(y, 0.0) { post } else { pre };
                field.set(i as isize, j as isize, s);
            }
        }
        let sin60 = 60.0f64.to_radians().sin();
        let tan60 = 60.0f64.to_radians().tan();
        let bc = BoundarySpec2D {
            left: Bc2::Dirichlet(post),
            right: Bc2::Outflow,
            bottom: Bc2::InflowWallSplit {
                inflow: post,
                x_split: SHOCK_FOOT,
                flip: 2,
            },
            top: Bc2::MovingShock {
                post,
                pre,
                x0: SHOCK_FOOT + 1.0 / tan60,
                drift: 10.0 / sin60,
            },
        };
        Ok((field, bc))
    }
}
