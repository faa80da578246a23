//! Flux functions, wave speeds, Lax-Friedrichs splitting and characteristic
//! transforms for the model equations.
//!
//! Systems are reconstructed characteristic-wise by default: flux and state
//! windows are projected onto the left eigenvectors of the Roe-averaged
//! interface Jacobian, each field is reconstructed as a scalar, and the
//! result is projected back. Component-wise reconstruction is available as a
//! config switch.

use crate::error::{Result, SolverError};
use crate::grid::{Field1D, Field2D};
use crate::state::State;

/// Ideal-gas parameters.
#[derive(Clone, Copy, Debug)]
pub struct EosParams {
    pub gamma: f64,
}

impl EosParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(SolverError::Config(format!(
                "adiabatic index must exceed 1, got {gamma}"
            )));
        }
        Ok(EosParams { gamma })
    }
}

impl Default for EosParams {
    fn default() -> Self {
        EosParams { gamma: 1.4 }
    }
}

/// Primitive variables of a 1D Euler state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prim1 {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

/// Primitive variables of a 2D Euler state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prim2 {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl Prim1 {
    pub fn to_conserved(self, eos: &EosParams) -> State<3> {
        let e = self.p / (eos.gamma - 1.0) + 0.5 * self.rho * self.u * self.u;
        State([self.rho, self.rho * self.u, e])
    }

    pub fn sound_speed(&self, eos: &EosParams) -> f64 {
        (eos.gamma * self.p / self.rho).sqrt()
    }
}

impl Prim2 {
    pub fn to_conserved(self, eos: &EosParams) -> State<4> {
        let e = self.p / (eos.gamma - 1.0) + 0.5 * self.rho * (self.u * self.u + self.v * self.v);
        State([self.rho, self.rho * self.u, self.rho * self.v, e])
    }
}

/// Recover primitives from a conserved 1D Euler state; density must be positive.
pub fn prim1(u: &State<3>, eos: &EosParams) -> Result<Prim1> {
    let rho = u[0];
    if !(rho > 0.0) {
        return Err(SolverError::InvalidState(format!(
            "nonpositive density {rho}"
        )));
    }
    let vel = u[1] / rho;
    let p = (eos.gamma - 1.0) * (u[2] - 0.5 * rho * vel * vel);
    Ok(Prim1 { rho, u: vel, p })
}

pub fn prim2(u: &State<4>, eos: &EosParams) -> Result<Prim2> {
    let rho = u[0];
    if !(rho > 0.0) {
        return Err(SolverError::InvalidState(format!(
            "nonpositive density {rho}"
        )));
    }
    let (uv, vv) = (u[1] / rho, u[2] / rho);
    let p = (eos.gamma - 1.0) * (u[3] - 0.5 * rho * (uv * uv + vv * vv));
    Ok(Prim2 {
        rho,
        u: uv,
        v: vv,
        p,
    })
}

pub fn flux_advection(u: f64) -> f64 {
    u
}

pub fn flux_burgers(u: f64) -> f64 {
    0.5 * u * u
}

/// F(U) = (rho u, rho u^2 + P, (E + P) u) with the ideal-gas closure.
pub fn flux_euler_1d(u: &State<3>, eos: &EosParams) -> Result<State<3>> {
    let w = prim1(u, eos)?;
    Ok(State([
        u[1],
        u[1] * w.u + w.p,
        (u[2] + w.p) * w.u,
    ]))
}

pub fn flux_euler_2d_x(u: &State<4>, eos: &EosParams) -> Result<State<4>> {
    let w = prim2(u, eos)?;
    Ok(State([
        u[1],
        u[1] * w.u + w.p,
        u[2] * w.u,
        (u[3] + w.p) * w.u,
    ]))
}

pub fn flux_euler_2d_y(u: &State<4>, eos: &EosParams) -> Result<State<4>> {
    let w = prim2(u, eos)?;
    Ok(State([
        u[2],
        u[1] * w.v,
        u[2] * w.v + w.p,
        (u[3] + w.p) * w.v,
    ]))
}

/// Lax-Friedrichs splitting `f± = (f ± alpha u)/2` of sample arrays.
pub fn lf_split<const C: usize>(
    f: &[State<C>],
    u: &[State<C>],
    alpha: f64,
) -> (Vec<State<C>>, Vec<State<C>>) {
    assert_eq!(f.len(), u.len());
    let plus = f
        .iter()
        .zip(u)
        .map(|(f, u)| (*f + *u * alpha) * 0.5)
        .collect();
    let minus = f
        .iter()
        .zip(u)
        .map(|(f, u)| (*f - *u * alpha) * 0.5)
        .collect();
    (plus, minus)
}

/// Left/right eigenvector pair of the Roe-averaged flux Jacobian at an
/// interface. Rows of `left` are left eigenvectors; columns of `right` are
/// right eigenvectors; `left * right = I`.
#[derive(Clone, Copy, Debug)]
pub struct CharBasis<const C: usize> {
    pub left: [[f64; C]; C],
    pub right: [[f64; C]; C],
}

impl<const C: usize> CharBasis<C> {
    #[inline]
    pub fn to_char(&self, v: &State<C>) -> State<C> {
        let mut out = State::ZERO;
        for (row, o) in self.left.iter().zip(out.0.iter_mut()) {
            *o = row.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    #[inline]
    pub fn from_char(&self, v: &State<C>) -> State<C> {
        let mut out = State::ZERO;
        for (row, o) in self.right.iter().zip(out.0.iter_mut()) {
            *o = row.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }
}

/// Project a window of states onto characteristic fields.
pub fn char_transform<const C: usize>(
    basis: &CharBasis<C>,
    window: &[State<C>],
) -> Vec<State<C>> {
    window.iter().map(|v| basis.to_char(v)).collect()
}

/// Back-project characteristic values to physical space.
pub fn char_inverse<const C: usize>(basis: &CharBasis<C>, values: &[State<C>]) -> Vec<State<C>> {
    values.iter().map(|v| basis.from_char(v)).collect()
}

fn roe_mean(rho_l: f64, rho_r: f64, ql: f64, qr: f64) -> f64 {
    let (sl, sr) = (rho_l.sqrt(), rho_r.sqrt());
    (sl * ql + sr * qr) / (sl + sr)
}

/// Characteristic basis of the 1D Euler equations at the Roe average of two
/// neighbor states.
pub fn char_basis_euler_1d(
    ul: &State<3>,
    ur: &State<3>,
    eos: &EosParams,
) -> Result<CharBasis<3>> {
    let wl = prim1(ul, eos)?;
    let wr = prim1(ur, eos)?;
    let hl = (ul[2] + wl.p) / wl.rho;
    let hr = (ur[2] + wr.p) / wr.rho;
    let u = roe_mean(wl.rho, wr.rho, wl.u, wr.u);
    let h = roe_mean(wl.rho, wr.rho, hl, hr);
    let c2 = (eos.gamma - 1.0) * (h - 0.5 * u * u);
    if !(c2 > 0.0) {
        return Err(SolverError::InvalidState(format!(
            "Roe average has nonpositive sound speed squared {c2}"
        )));
    }
    let c = c2.sqrt();
    let b1 = (eos.gamma - 1.0) / c2;
    let b2 = 0.5 * b1 * u * u;

    let right = [
        [1.0, 1.0, 1.0],
        [u - c, u, u + c],
        [h - u * c, 0.5 * u * u, h + u * c],
    ];
    let left = [
        [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1],
        [1.0 - b2, b1 * u, -b1],
        [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1],
    ];
    Ok(CharBasis { left, right })
}

/// Sweep axis of a 2D problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Characteristic basis of the 2D Euler equations for one sweep direction.
pub fn char_basis_euler_2d(
    ul: &State<4>,
    ur: &State<4>,
    eos: &EosParams,
    axis: Axis,
) -> Result<CharBasis<4>> {
    let wl = prim2(ul, eos)?;
    let wr = prim2(ur, eos)?;
    let hl = (ul[3] + wl.p) / wl.rho;
    let hr = (ur[3] + wr.p) / wr.rho;
    let u = roe_mean(wl.rho, wr.rho, wl.u, wr.u);
    let v = roe_mean(wl.rho, wr.rho, wl.v, wr.v);
    let h = roe_mean(wl.rho, wr.rho, hl, hr);
    let q2 = 0.5 * (u * u + v * v);
    let c2 = (eos.gamma - 1.0) * (h - q2);
    if !(c2 > 0.0) {
        return Err(SolverError::InvalidState(format!(
            "Roe average has nonpositive sound speed squared {c2}"
        )));
    }
    let c = c2.sqrt();
    let b1 = (eos.gamma - 1.0) / c2;
    let b2 = b1 * q2;

    // normal velocity `un` along the sweep axis, tangential `ut`
    let (un, ut) = match axis {
        Axis::X => (u, v),
        Axis::Y => (v, u),
    };
    // Rows/columns written for the x sweep with momentum order (normal,
    // tangential), then scattered back to (mx, my) slots.
    let (ni, ti) = match axis {
        Axis::X => (1usize, 2usize),
        Axis::Y => (2usize, 1usize),
    };
    let mut right = [[0.0; 4]; 4];
    let mut left = [[0.0; 4]; 4];
    // right eigenvector columns: u-c, u, tangential shear, u+c
    let cols = [
        [1.0, un - c, ut, h - un * c],
        [1.0, un, ut, q2],
        [0.0, 0.0, 1.0, ut],
        [1.0, un + c, ut, h + un * c],
    ];
    for (j, col) in cols.iter().enumerate() {
        right[0][j] = col[0];
        right[ni][j] = col[1];
        right[ti][j] = col[2];
        right[3][j] = col[3];
    }
    let rows = [
        [
            0.5 * (b2 + un / c),
            -0.5 * (b1 * un + 1.0 / c),
            -0.5 * b1 * ut,
            0.5 * b1,
        ],
        [1.0 - b2, b1 * un, b1 * ut, -b1],
        [-ut, 0.0, 1.0, 0.0],
        [
            0.5 * (b2 - un / c),
            -0.5 * (b1 * un - 1.0 / c),
            -0.5 * b1 * ut,
            0.5 * b1,
        ],
    ];
    for (i, row) in rows.iter().enumerate() {
        left[i][0] = row[0];
        left[i][ni] = row[1];
        left[i][ti] = row[2];
        left[i][3] = row[3];
    }
    Ok(CharBasis { left, right })
}

/// Per-equation behavior needed by a 1D sweep: point flux, wave speed bound
/// and (for systems) the interface characteristic basis.
pub trait Physics1D<const C: usize> {
    fn flux(&self, u: &State<C>) -> Result<State<C>>;
    fn wave_speed(&self, u: &State<C>) -> Result<f64>;
    /// `None` means reconstruct component-wise (always for scalars).
    fn char_basis(&self, ul: &State<C>, ur: &State<C>) -> Result<Option<CharBasis<C>>>;
}

#[derive(Clone, Copy, Debug)]
pub struct AdvectionEq;

impl Physics1D<1> for AdvectionEq {
    fn flux(&self, u: &State<1>) -> Result<State<1>> {
        Ok(State([flux_advection(u[0])]))
    }
    fn wave_speed(&self, _u: &State<1>) -> Result<f64> {
        Ok(1.0)
    }
    fn char_basis(&self, _ul: &State<1>, _ur: &State<1>) -> Result<Option<CharBasis<1>>> {
        Ok(None)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BurgersEq;

impl Physics1D<1> for BurgersEq {
    fn flux(&self, u: &State<1>) -> Result<State<1>> {
        Ok(State([flux_burgers(u[0])]))
    }
    fn wave_speed(&self, u: &State<1>) -> Result<f64> {
        Ok(u[0].abs())
    }
    fn char_basis(&self, _ul: &State<1>, _ur: &State<1>) -> Result<Option<CharBasis<1>>> {
        Ok(None)
    }
}

/// Euler reconstruction mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerMode {
    Characteristic,
    Componentwise,
}

impl EulerMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "characteristic" => Some(EulerMode::Characteristic),
            "componentwise" => Some(EulerMode::Componentwise),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EulerMode::Characteristic => "characteristic",
            EulerMode::Componentwise => "componentwise",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Euler1DEq {
    pub eos: EosParams,
    pub mode: EulerMode,
}

impl Physics1D<3> for Euler1DEq {
    fn flux(&self, u: &State<3>) -> Result<State<3>> {
        flux_euler_1d(u, &self.eos)
    }
    fn wave_speed(&self, u: &State<3>) -> Result<f64> {
        let w = prim1(u, &self.eos)?;
        Ok(w.u.abs() + w.sound_speed(&self.eos))
    }
    fn char_basis(&self, ul: &State<3>, ur: &State<3>) -> Result<Option<CharBasis<3>>> {
        match self.mode {
            EulerMode::Characteristic => char_basis_euler_1d(ul, ur, &self.eos).map(Some),
            EulerMode::Componentwise => Ok(None),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Euler2DEq {
    pub eos: EosParams,
    pub mode: EulerMode,
    pub axis: Axis,
}

impl Physics1D<4> for Euler2DEq {
    fn flux(&self, u: &State<4>) -> Result<State<4>> {
        match self.axis {
            Axis::X => flux_euler_2d_x(u, &self.eos),
            Axis::Y => flux_euler_2d_y(u, &self.eos),
        }
    }
    fn wave_speed(&self, u: &State<4>) -> Result<f64> {
        let w = prim2(u, &self.eos)?;
        let c = (self.eos.gamma * w.p / w.rho).sqrt();
        let un = match self.axis {
            Axis::X => w.u,
            Axis::Y => w.v,
        };
        Ok(un.abs() + c)
    }
    fn char_basis(&self, ul: &State<4>, ur: &State<4>) -> Result<Option<CharBasis<4>>> {
        match self.mode {
            EulerMode::Characteristic => {
                char_basis_euler_2d(ul, ur, &self.eos, self.axis).map(Some)
            }
            EulerMode::Componentwise => Ok(None),
        }
    }
}

/// Largest wave speed over the interior of a 1D field (deterministic
/// sequential reduction; feeds the global LF splitting and the CFL bound).
pub fn max_wavespeed_1d<const C: usize>(
    field: &Field1D<C>,
    phys: &impl Physics1D<C>,
) -> Result<f64> {
    let mut alpha = 0.0f64;
    for u in field.interior() {
        alpha = alpha.max(phys.wave_speed(u)?);
    }
    Ok(alpha)
}

/// Largest wave speed over the interior of a 2D field for one sweep axis.
pub fn max_wavespeed_2d<const C: usize>(
    field: &Field2D<C>,
    phys: &impl Physics1D<C>,
) -> Result<f64> {
    let mut alpha = 0.0f64;
    for j in 0..field.ny() as isize {
        for i in 0..field.nx() as isize {
            alpha = alpha.max(phys.wave_speed(&field.at(i, j))?);
        }
    }
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn scalar_fluxes() {
        assert_eq!(flux_advection(3.0), 3.0);
        assert_eq!(flux_burgers(2.0), 2.0);
        assert_eq!(flux_burgers(-1.0), 0.5);
    }

    #[test]
    fn euler_flux_hand_values() {
        let eos = EosParams::default();
        let u = Prim1 {
            rho: 1.0,
            u: 0.0,
            p: 1.0,
        }
        .to_conserved(&eos);
        assert_relative_eq!(u[2], 2.5, max_relative = 1e-15);
        let f = flux_euler_1d(&u, &eos).unwrap();
        assert_eq!(f.0, [0.0, 1.0, 0.0]);

        let u = Prim1 {
            rho: 0.125,
            u: 0.0,
            p: 0.1,
        }
        .to_conserved(&eos);
        let f = flux_euler_1d(&u, &eos).unwrap();
        assert_relative_eq!(f[1], 0.1, max_relative = 1e-15);
        assert_eq!(f[0], 0.0);
        assert_eq!(f[2], 0.0);
    }

    #[test]
    fn euler_flux_rejects_vacuum() {
        let eos = EosParams::default();
        assert!(flux_euler_1d(&State([0.0, 0.0, 1.0]), &eos).is_err());
        assert!(flux_euler_1d(&State([-1.0, 0.0, 1.0]), &eos).is_err());
    }

    #[test]
    fn prim_cons_round_trip() {
        let eos = EosParams::default();
        let w = Prim1 {
            rho: 0.7,
            u: -1.3,
            p: 2.1,
        };
        let back = prim1(&w.to_conserved(&eos), &eos).unwrap();
        assert_relative_eq!(back.rho, w.rho, max_relative = 1e-14);
        assert_relative_eq!(back.u, w.u, max_relative = 1e-14);
        assert_relative_eq!(back.p, w.p, max_relative = 1e-14);
    }

    #[test]
    fn sod_left_sound_speed() {
        let eos = EosParams::default();
        let w = Prim1 {
            rho: 1.0,
            u: 0.0,
            p: 1.0,
        };
        assert_relative_eq!(w.sound_speed(&eos), 1.4f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn lf_split_examples() {
        // advection f = u with alpha = 1: f+ = u, f- = 0
        let u = [State([2.0]), State([-0.5])];
        let f = u;
        let (p, m) = lf_split(&f, &u, 1.0);
        assert_eq!(p[0].value(), 2.0);
        assert_eq!(m[0].value(), 0.0);
        // burgers u = -1, alpha = 1: f+ = -1/4, f- = 3/4
        let u = [State([-1.0])];
        let f = [State([0.5])];
        let (p, m) = lf_split(&f, &u, 1.0);
        assert_eq!(p[0].value(), -0.25);
        assert_eq!(m[0].value(), 0.75);
    }

    #[test]
    fn char_basis_inverts_1d() {
        let eos = EosParams::default();
        let ul = Prim1 {
            rho: 1.0,
            u: 0.3,
            p: 1.0,
        }
        .to_conserved(&eos);
        let ur = Prim1 {
            rho: 0.5,
            u: -0.2,
            p: 0.7,
        }
        .to_conserved(&eos);
        let basis = char_basis_euler_1d(&ul, &ur, &eos).unwrap();
        // L * R = I
        for i in 0..3 {
            for j in 0..3 {
                let mut dot = 0.0;
                for m in 0..3 {
                    dot += basis.left[i][m] * basis.right[m][j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12, "L*R[{i}][{j}] = {dot}");
            }
        }
        // round trip on a window
        let window = [ul, ur, ul];
        let back = char_inverse(&basis, &char_transform(&basis, &window));
        for (a, b) in window.iter().zip(&back) {
            for c in 0..3 {
                assert!((a[c] - b[c]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn char_basis_inverts_2d_both_axes() {
        let eos = EosParams::default();
        let ul = Prim2 {
            rho: 8.0,
            u: 7.14,
            v: -4.125,
            p: 116.5,
        }
        .to_conserved(&eos);
        let ur = Prim2 {
            rho: 1.4,
            u: 0.0,
            v: 0.0,
            p: 1.0,
        }
        .to_conserved(&eos);
        for axis in [Axis::X, Axis::Y] {
            let basis = char_basis_euler_2d(&ul, &ur, &eos, axis).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let mut dot = 0.0;
                    for m in 0..4 {
                        dot += basis.left[i][m] * basis.right[m][j];
                    }
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (dot - expect).abs() < 1e-12,
                        "{axis:?} L*R[{i}][{j}] = {dot}"
                    );
                }
            }
        }
    }

    #[test]
    fn uniform_flow_round_trip_is_identity() {
        let eos = EosParams::default();
        let u = Prim1 {
            rho: 1.0,
            u: 0.5,
            p: 2.0,
        }
        .to_conserved(&eos);
        let basis = char_basis_euler_1d(&u, &u, &eos).unwrap();
        let w = basis.from_char(&basis.to_char(&u));
        for c in 0..3 {
            assert!((w[c] - u[c]).abs() < 1e-13);
        }
    }

    #[test]
    fn wave_speed_examples() {
        let eos = EosParams::default();
        let eq = Euler1DEq {
            eos,
            mode: EulerMode::Characteristic,
        };
        let mut field = Field1D::<3>::new(3);
        field.set(
            0,
            Prim1 {
                rho: 1.0,
                u: 0.0,
                p: 1.0,
            }
            .to_conserved(&eos),
        );
        field.set(
            1,
            Prim1 {
                rho: 1.0,
                u: 0.9,
                p: 1.0,
            }
            .to_conserved(&eos),
        );
        field.set(
            2,
            Prim1 {
                rho: 1.0,
                u: -0.3,
                p: 1.0,
            }
            .to_conserved(&eos),
        );
        let a = max_wavespeed_1d(&field, &eq).unwrap();
        assert_relative_eq!(a, 0.9 + 1.4f64.sqrt(), max_relative = 1e-14);

        let mut field = Field1D::<1>::new(4);
        for (i, v) in [-0.9, 0.2, 0.5, 0.85].iter().enumerate() {
            field.set(i as isize, State([*v]));
        }
        assert_eq!(max_wavespeed_1d(&field, &BurgersEq).unwrap(), 0.9);
        assert_eq!(max_wavespeed_1d(&field, &AdvectionEq).unwrap(), 1.0);
    }
}
