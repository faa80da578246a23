//! Exact Riemann solver for the 1D Euler equations.
//!
//! The star pressure solves `f_L(p) + f_R(p) + (u_R - u_L) = 0` by Newton
//! iteration from the two-rarefaction guess; the self-similar solution is
//! then sampled by wave-structure casework. Used as the dashed reference
//! line for the shock-tube problems.

use crate::error::{Result, SolverError};
use crate::flux::{EosParams, Prim1};

/// Self-similar solution of one Riemann problem.
#[derive(Clone, Copy, Debug)]
pub struct RiemannSolution {
    left: Prim1,
    right: Prim1,
    gamma: f64,
    pstar: f64,
    ustar: f64,
}

fn sound_speed(w: &Prim1, gamma: f64) -> f64 {
    (gamma * w.p / w.rho).sqrt()
}

/// Pressure function of one side and its derivative in p.
fn side_fn(p: f64, w: &Prim1, gamma: f64) -> (f64, f64) {
    let c = sound_speed(w, gamma);
    if p > w.p {
        // shock branch
        let a = 2.0 / ((gamma + 1.0) * w.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * w.p;
        let root = (a / (p + b)).sqrt();
        let f = (p - w.p) * root;
        let df = root * (1.0 - 0.5 * (p - w.p) / (p + b));
        (f, df)
    } else {
        // rarefaction branch
        let ex = (gamma - 1.0) / (2.0 * gamma);
        let f = 2.0 * c / (gamma - 1.0) * ((p / w.p).powf(ex) - 1.0);
        let df = (p / w.p).powf(-(gamma + 1.0) / (2.0 * gamma)) / (w.rho * c);
        (f, df)
    }
}

/// Solve the Riemann problem between two primitive states.
pub fn exact_riemann(left: Prim1, right: Prim1, eos: &EosParams) -> Result<RiemannSolution> {
    let g = eos.gamma;
    if !(left.rho > 0.0 && right.rho > 0.0 && left.p > 0.0 && right.p > 0.0) {
        return Err(SolverError::InvalidState(
            "Riemann states need positive density and pressure".into(),
        ));
    }
    let (cl, cr) = (sound_speed(&left, g), sound_speed(&right, g));
    let du = right.u - left.u;
    if 2.0 * (cl + cr) / (g - 1.0) <= du {
        return Err(SolverError::InvalidState(
            "pressure positivity violated: vacuum generation".into(),
        ));
    }

    // two-rarefaction initial guess
    let ex = (g - 1.0) / (2.0 * g);
    let p0 = ((cl + cr - 0.5 * (g - 1.0) * du)
        / (cl / left.p.powf(ex) + cr / right.p.powf(ex)))
    .powf(1.0 / ex);
    let mut p = p0.max(1e-12);
    for _ in 0..100 {
        let (fl, dfl) = side_fn(p, &left, g);
        let (fr, dfr) = side_fn(p, &right, g);
        let f = fl + fr + du;
        let step = f / (dfl + dfr);
        let pnew = (p - step).max(1e-12);
        let change = (pnew - p).abs() / (0.5 * (pnew + p));
        p = pnew;
        if change < 1e-14 {
            break;
        }
    }
    // converged to the stated tolerance on p*
    let (fl, _) = side_fn(p, &left, g);
    let (fr, _) = side_fn(p, &right, g);
    if (fl + fr + du).abs() > 1e-10 * (1.0 + p) {
        return Err(SolverError::Singular {
            cond: (fl + fr + du).abs(),
        });
    }
    let ustar = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
    Ok(RiemannSolution {
        left,
        right,
        gamma: g,
        pstar: p,
        ustar,
    })
}

impl RiemannSolution {
    pub fn pstar(&self) -> f64 {
        self.pstar
    }

    pub fn ustar(&self) -> f64 {
        self.ustar
    }

    /// Speed of the right shock, if the right wave is a shock.
    pub fn right_shock_speed(&self) -> Option<f64> {
        let g = self.gamma;
        let w = &self.right;
        if self.pstar > w.p {
            let c = sound_speed(w, g);
            Some(w.u + c * ((g + 1.0) / (2.0 * g) * self.pstar / w.p + (g - 1.0) / (2.0 * g)).sqrt())
        } else {
            None
        }
    }

    /// Speed of the left shock, if the left wave is a shock.
    pub fn left_shock_speed(&self) -> Option<f64> {
        let g = self.gamma;
        let w = &self.left;
        if self.pstar > w.p {
            let c = sound_speed(w, g);
            Some(w.u - c * ((g + 1.0) / (2.0 * g) * self.pstar / w.p + (g - 1.0) / (2.0 * g)).sqrt())
        } else {
            None
        }
    }

    /// Sample the solution at similarity coordinate `xi = x / t`.
    pub fn sample(&self, xi: f64) -> Prim1 {
        let g = self.gamma;
        let gm = g - 1.0;
        let gp = g + 1.0;
        let (pstar, ustar) = (self.pstar, self.ustar);
        if xi <= ustar {
            // left of the contact
            let w = &self.left;
            let c = sound_speed(w, g);
            if pstar > w.p {
                let s = self.left_shock_speed().unwrap();
                if xi <= s {
                    *w
                } else {
                    let ratio = pstar / w.p;
                    let rho = w.rho * ((ratio + gm / gp) / (gm / gp * ratio + 1.0));
                    Prim1 {
                        rho,
                        u: ustar,
                        p: pstar,
                    }
                }
            } else {
                let head = w.u - c;
                let cstar = c * (pstar / w.p).powf(gm / (2.0 * g));
                let tail = ustar - cstar;
                if xi <= head {
                    *w
                } else if xi >= tail {
                    Prim1 {
                        rho: w.rho * (pstar / w.p).powf(1.0 / g),
                        u: ustar,
                        p: pstar,
                    }
                } else {
                    let u = 2.0 / gp * (c + 0.5 * gm * w.u + xi);
                    let cf = 2.0 / gp * (c + 0.5 * gm * (w.u - xi));
                    Prim1 {
                        rho: w.rho * (cf / c).powf(2.0 / gm),
                        u,
                        p: w.p * (cf / c).powf(2.0 * g / gm),
                    }
                }
            }
        } else {
            // right of the contact
            let w = &self.right;
            let c = sound_speed(w, g);
            if pstar > w.p {
                let s = self.right_shock_speed().unwrap();
                if xi >= s {
                    *w
                } else {
                    let ratio = pstar / w.p;
                    let rho = w.rho * ((ratio + gm / gp) / (gm / gp * ratio + 1.0));
                    Prim1 {
                        rho,
                        u: ustar,
                        p: pstar,
                    }
                }
            } else {
                let head = w.u + c;
                let cstar = c * (pstar / w.p).powf(gm / (2.0 * g));
                let tail = ustar + cstar;
                if xi >= head {
                    *w
                } else if xi <= tail {
                    Prim1 {
                        rho: w.rho * (pstar / w.p).powf(1.0 / g),
                        u: ustar,
                        p: pstar,
                    }
                } else {
                    let u = 2.0 / gp * (-c + 0.5 * gm * w.u + xi);
                    let cf = 2.0 / gp * (c - 0.5 * gm * (w.u - xi));
                    Prim1 {
                        rho: w.rho * (cf / c).powf(2.0 / gm),
                        u,
                        p: w.p * (cf / c).powf(2.0 * g / gm),
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const EOS: EosParams = EosParams { gamma: 1.4 };

    fn sod() -> (Prim1, Prim1) {
        (
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
        )
    }

    #[test]
    fn equal_states_stay_constant() {
        let w = Prim1 {
            rho: 0.8,
            u: 0.4,
            p: 1.1,
        };
        let sol = exact_riemann(w, w, &EOS).unwrap();
        for xi in [-2.0, 0.0, 0.4, 3.0] {
            let s = sol.sample(xi);
            assert_relative_eq!(s.rho, w.rho, max_relative = 1e-12);
            assert_relative_eq!(s.u, w.u, max_relative = 1e-12);
            assert_relative_eq!(s.p, w.p, max_relative = 1e-12);
        }
    }

    #[test]
    fn sod_star_state_matches_bisection_oracle() {
        // frozen from an independent pressure-function bisection to 1e-12
        let (l, r) = sod();
        let sol = exact_riemann(l, r, &EOS).unwrap();
        assert_relative_eq!(sol.pstar(), 0.30313017805065, max_relative = 1e-10);
        assert_relative_eq!(sol.ustar(), 0.92745262004895, max_relative = 1e-10);
        assert_relative_eq!(
            sol.right_shock_speed().unwrap(),
            1.752155732030,
            max_relative = 1e-9
        );
    }

    #[test]
    fn bisection_oracle_agrees_with_newton() {
        // independent root finder on the same pressure function
        let (l, r) = sod();
        let f = |p: f64| side_fn(p, &l, 1.4).0 + side_fn(p, &r, 1.4).0 + (r.u - l.u);
        let (mut a, mut b) = (1e-8, 10.0);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if f(a) * f(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        let sol = exact_riemann(l, r, &EOS).unwrap();
        assert_relative_eq!(sol.pstar(), 0.5 * (a + b), max_relative = 1e-12);
    }

    #[test]
    fn lax_star_state_regression() {
        let l = Prim1 {
            rho: 0.445,
            u: 0.698,
            p: 3.528,
        };
        let r = Prim1 {
            rho: 0.5,
            u: 0.0,
            p: 0.571,
        };
        let sol = exact_riemann(l, r, &EOS).unwrap();
        assert_relative_eq!(sol.pstar(), 2.46609791920736, max_relative = 1e-10);
        assert_relative_eq!(sol.ustar(), 1.52872302663288, max_relative = 1e-10);
    }

    #[test]
    fn sod_fan_density_is_between_end_states() {
        let (l, r) = sod();
        let sol = exact_riemann(l, r, &EOS).unwrap();
        let s = sol.sample(0.0);
        assert!(s.rho < l.rho && s.rho > r.rho);
    }

    #[test]
    fn rankine_hugoniot_across_right_shock() {
        let (l, r) = sod();
        let sol = exact_riemann(l, r, &EOS).unwrap();
        let s = sol.right_shock_speed().unwrap();
        // sample a fine xi grid; across the shock the flux jump equals s
        // times the state jump
        let flux = |w: &Prim1| {
            let e = w.p / 0.4 + 0.5 * w.rho * w.u * w.u;
            [
                w.rho * w.u,
                w.rho * w.u * w.u + w.p,
                (e + w.p) * w.u,
            ]
        };
        let cons = |w: &Prim1| {
            let e = w.p / 0.4 + 0.5 * w.rho * w.u * w.u;
            [w.rho, w.rho * w.u, e]
        };
        let wl = sol.sample(s - 1e-9);
        let wr = sol.sample(s + 1e-9);
        let (fl, fr) = (flux(&wl), flux(&wr));
        let (ul, ur) = (cons(&wl), cons(&wr));
        for c in 0..3 {
            let lhs = fl[c] - fr[c];
            let rhs = s * (ul[c] - ur[c]);
            assert!(
                (lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()),
                "component {c}: {lhs} vs {rhs}"
            );
        }
        // sampling many points never produces invalid states
        for m in 0..=10_000 {
            let xi = -2.0 + 4.0 * m as f64 / 10_000.0;
            let w = sol.sample(xi);
            assert!(w.rho > 0.0 && w.p > 0.0);
        }
    }

    #[test]
    fn vacuum_is_rejected() {
        let l = Prim1 {
            rho: 1.0,
            u: -10.0,
            p: 0.01,
        };
        let r = Prim1 {
            rho: 1.0,
            u: 10.0,
            p: 0.01,
        };
        assert!(exact_riemann(l, r, &EOS).is_err());
    }
}
