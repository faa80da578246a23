//! Interface-value reconstruction kernels.
//!
//! Four schemes share one entry point: classic ENO with adaptive stencil
//! selection, its multiquadric-RBF variant with a locally optimized shape
//! parameter, and the Jiang-Shu weighted combination of both coefficient
//! families. The RBF rows perturb the polynomial reconstruction linearly in
//! the dimensionless parameter `eta = eps^2 dx^2`; `eta = 0` recovers the
//! polynomial scheme exactly, which is also the non-oscillatory fallback
//! whenever the flux window carries an interior extremum.
//!
//! Reconstruction always targets `x_{i+1/2}` from a window centered on cell
//! `i` (the "plus" side). The `x_{i-1/2}` value of the mirrored family is
//! obtained by reversing the window and reusing the plus path; the
//! coefficient tables are mirror-symmetric so this is exact.

use crate::error::{Result, SolverError};

/// WENO weight regularizer.
pub const EPS_M: f64 = 1e-6;

/// Safety bound on |eta| after the monotone switch. A genuine adaptation is
/// O(dx^2); a ratio beyond this bound means the optimality condition is ill
/// posed on the window (for example symmetric zero crossings of the split
/// flux, where numerator and denominator both lose their leading parts), so
/// the value falls back to the polynomial limit and the event is counted.
pub const ETA_CLAMP: f64 = 2.0;

/// Relative denominator guard for the eta ratios and the extremum test.
pub const DEN_GUARD: f64 = 1e-10;

/// Reconstruction scheme selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Eno,
    RbfEno,
    WenoJs,
    RbfWenoJs,
}

impl Scheme {
    pub fn is_rbf(self) -> bool {
        matches!(self, Scheme::RbfEno | Scheme::RbfWenoJs)
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Eno => "eno",
            Scheme::RbfEno => "rbf-eno",
            Scheme::WenoJs => "weno-js",
            Scheme::RbfWenoJs => "rbf-weno-js",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "eno" => Some(Scheme::Eno),
            "rbf-eno" => Some(Scheme::RbfEno),
            "weno-js" => Some(Scheme::WenoJs),
            "rbf-weno-js" => Some(Scheme::RbfWenoJs),
            _ => None,
        }
    }

    pub const ALL: [Scheme; 4] = [Scheme::Eno, Scheme::RbfEno, Scheme::WenoJs, Scheme::RbfWenoJs];
}

/// Which interface of the window's center cell is reconstructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Shape-parameter product `eta = eps^2 dx^2` with provenance flags.
/// `limited` marks the polynomial limit (monotone switch, denominator guard
/// or unusable ratio); a limited eta is always zero. `clamped` marks raw
/// ratios beyond [`ETA_CLAMP`]; the ENO solver path may then substitute the
/// row's exact-cancellation value via [`eta_k2_fallback`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eta {
    pub value: f64,
    pub limited: bool,
    pub clamped: bool,
}

impl Eta {
    pub const ZERO: Eta = Eta {
        value: 0.0,
        limited: false,
        clamped: false,
    };

    fn limit() -> Eta {
        Eta {
            value: 0.0,
            limited: true,
            clamped: false,
        }
    }
}

/// Counters threaded through the hot path; clamp events are reported in run
/// metadata.
#[derive(Clone, Copy, Debug, Default)]
pub struct EtaStats {
    pub clamps: u64,
}

/// The k reconstruction weights of one stencil row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReconCoeffs {
    c: [f64; 3],
    k: usize,
}

impl ReconCoeffs {
    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.k]
    }

    /// Inner product with the stencil's flux values.
    pub fn apply(&self, f: &[f64]) -> f64 {
        self.as_slice().iter().zip(f).map(|(c, f)| c * f).sum()
    }
}

/// Nonlinear weight bundle of one WENO reconstruction.
#[derive(Clone, Debug)]
pub struct WenoWeights {
    pub d: Vec<f64>,
    pub beta: Vec<f64>,
    pub alpha: Vec<f64>,
    pub w: Vec<f64>,
    pub eps_m: f64,
}

/// Full table of undivided forward differences: level m entry j is the m-th
/// difference starting at window position j.
pub fn undivided_differences(window: &[f64]) -> Vec<Vec<f64>> {
    let mut levels = Vec::new();
    let mut prev: Vec<f64> = window.to_vec();
    while prev.len() > 1 {
        let next: Vec<f64> = prev.windows(2).map(|p| p[1] - p[0]).collect();
        levels.push(next.clone());
        prev = next;
    }
    levels
}

/// ENO stencil selection on a centered window of width 2k-1. Starting from
/// the single-cell stencil, the side with the smaller divided difference is
/// added at each level; ties extend right. Returns the left shift r.
pub fn eno_select(window: &[f64], k: usize) -> usize {
    assert_eq!(window.len(), 2 * k - 1, "eno_select needs a 2k-1 window");
    // difference levels built in place on the stack
    let mut d = [0.0f64; 4];
    let mut len = window.len() - 1;
    for i in 0..len {
        d[i] = window[i + 1] - window[i];
    }
    let center = k - 1;
    let mut r = 0usize;
    for m in 1..k {
        let start = center - r;
        if d[start - 1].abs() < d[start].abs() {
            r += 1;
        }
        if m + 1 < k {
            for i in 0..len - 1 {
                d[i] = d[i + 1] - d[i];
            }
            len -= 1;
        }
    }
    r
}

#[inline]
fn poly_row_k2(r: i32) -> [f64; 2] {
    match r {
        -1 => [1.5, -0.5],
        0 => [0.5, 0.5],
        1 => [-0.5, 1.5],
        _ => unreachable!(),
    }
}

#[inline]
fn eta_row_k2(r: i32) -> [f64; 2] {
    match r {
        -1 => [-1.5, 0.5],
        0 => [0.25, 0.25],
        1 => [0.5, -1.5],
        _ => unreachable!(),
    }
}

#[inline]
fn poly_row_k3(r: i32) -> [f64; 3] {
    match r {
        -1 => [11.0 / 6.0, -7.0 / 6.0, 1.0 / 3.0],
        0 => [1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0],
        1 => [-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0],
        2 => [1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0],
        _ => unreachable!(),
    }
}

#[inline]
fn eta_row_k3(r: i32) -> [f64; 3] {
    match r {
        -1 => [-4.5, 6.0, -1.5],
        0 => [5.0 / 6.0, -2.0 / 3.0, -1.0 / 6.0],
        1 => [-1.0 / 6.0, -2.0 / 3.0, 5.0 / 6.0],
        2 => [-1.5, 6.0, -4.5],
        _ => unreachable!(),
    }
}

fn check_kr(k: usize, r: i32) -> Result<()> {
    if (k == 2 || k == 3) && r >= -1 && r < k as i32 {
        Ok(())
    } else {
        Err(SolverError::StencilRange { k, r })
    }
}

/// Polynomial reconstruction constants (the eta = 0 limit).
pub fn poly_coeffs(k: usize, r: i32) -> Result<ReconCoeffs> {
    rbf_coeffs(k, r, 0.0)
}

/// MQ-RBF reconstruction coefficients: polynomial constants plus the
/// eta-linear perturbation. Bit-equal to [`poly_coeffs`] at eta = 0.
pub fn rbf_coeffs(k: usize, r: i32, eta: f64) -> Result<ReconCoeffs> {
    check_kr(k, r)?;
    let mut c = [0.0; 3];
    match k {
        2 => {
            let p = poly_row_k2(r);
            let s = eta_row_k2(r);
            for j in 0..2 {
                c[j] = p[j] + eta * s[j];
            }
        }
        _ => {
            let p = poly_row_k3(r);
            let s = eta_row_k3(r);
            for j in 0..3 {
                c[j] = p[j] + eta * s[j];
            }
        }
    }
    Ok(ReconCoeffs { c, k })
}

#[inline]
fn den_guard(scale: f64) -> f64 {
    DEN_GUARD * scale.max(1.0)
}

/// Extremum test on a 3-cell flux block stretched to [0, 3dx]: returns true
/// (force the polynomial limit) when the interpolating parabola has its
/// extremum strictly inside the block. A degenerate parabola counts as
/// monotone.
pub fn monotone_switch_k2(fm: f64, f0: f64, fp: f64) -> bool {
    let scale = fm.abs().max(f0.abs()).max(fp.abs());
    let den = -fm + 2.0 * f0 - fp;
    if den.abs() < den_guard(scale) {
        return false;
    }
    let xp = (-2.0 * fm + 3.0 * f0 - fp) / den;
    xp > 0.0 && xp < 3.0
}

/// Shape-parameter options of one run. The monotone guard is the
/// polynomial-limit switch at interior extrema: required for shock-bearing
/// data, but turned off for smooth convergence runs where the k = 2
/// adaptation term (proportional to the flux itself) would be zeroed at
/// every smooth extremum for no benefit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaOptions {
    pub monotone_guard: bool,
}

impl Default for EtaOptions {
    fn default() -> Self {
        EtaOptions {
            monotone_guard: true,
        }
    }
}

/// Bound on the exact-cancellation fallback (its value at a symmetric sonic
/// interface is -8/3).
pub const ETA_FALLBACK_BOUND: f64 = 3.0;

fn count_overflow(stats: Option<&mut EtaStats>) {
    if let Some(s) = stats {
        s.clamps += 1;
    }
}

/// Adapted shape parameter for k = 2 from the centered window
/// `(f_{i-1}, f_i, f_{i+1})` of the `i+1/2` interface, with the monotone
/// switch applied.
pub fn eta_k2(fm: f64, f0: f64, fp: f64) -> Eta {
    eta_k2_stats(fm, f0, fp, true, None)
}

fn eta_k2_stats(fm: f64, f0: f64, fp: f64, guard: bool, stats: Option<&mut EtaStats>) -> Eta {
    if guard && monotone_switch_k2(fm, f0, fp) {
        return Eta::limit();
    }
    let scale = fm.abs().max(f0.abs()).max(fp.abs());
    let tau = den_guard(scale);
    let d2 = fm - 2.0 * f0 + fp; // second difference, estimates h'' dx^2
    let den = -fm + 5.0 * f0 + 2.0 * fp; // estimates 6 h at the interface
    if den.abs() < tau {
        return Eta::limit();
    }
    let raw = -2.0 * d2 / den;
    if raw.abs() <= ETA_CLAMP {
        return Eta {
            value: raw,
            limited: false,
            clamped: false,
        };
    }
    count_overflow(stats);
    Eta {
        value: 0.0,
        limited: true,
        clamped: true,
    }
}

/// Exact-cancellation fallback for overflowed k = 2 ratios. The tabulated
/// ratio assumes |h'' dx^2| << |h|; near sonic points of the split flux the
/// two are comparable and the raw ratio is garbage. Solving the row's full
/// cancellation condition instead gives, with D the second difference and
/// S the 6h estimate:
///   r = 0:  eta (6h + h'' dx^2)   = -2 h'' dx^2
///   r = 1:  eta (2 h'' dx^2 - 6h) =  2 h'' dx^2
/// Returns `None` when the corrected value is itself out of bounds.
pub fn eta_k2_fallback(fm: f64, f0: f64, fp: f64, r: usize) -> Option<f64> {
    let scale = fm.abs().max(f0.abs()).max(fp.abs());
    let tau = den_guard(scale);
    let d2 = fm - 2.0 * f0 + fp;
    let den = -fm + 5.0 * f0 + 2.0 * fp;
    let (num, full_den) = match r {
        0 => (-2.0 * d2, den + d2),
        1 => (2.0 * d2, 2.0 * d2 - den),
        _ => return None,
    };
    if full_den.abs() < tau {
        return None;
    }
    let full = num / full_den;
    (full.abs() <= ETA_FALLBACK_BOUND).then_some(full)
}

/// Adapted shape parameter for k = 3 from `(f_{i-1}, f_i, f_{i+1}, f_{i+2})`
/// of the `i+1/2` interface. The extremum test runs on each 3-cell block of
/// the window.
pub fn eta_k3(fm: f64, f0: f64, fp: f64, fpp: f64) -> Eta {
    eta_k3_stats(fm, f0, fp, fpp, true, None)
}

fn eta_k3_stats(
    fm: f64,
    f0: f64,
    fp: f64,
    fpp: f64,
    guard: bool,
    stats: Option<&mut EtaStats>,
) -> Eta {
    if guard && (monotone_switch_k2(fm, f0, fp) || monotone_switch_k2(f0, fp, fpp)) {
        return Eta::limit();
    }
    let scale = fm.abs().max(f0.abs()).max(fp.abs()).max(fpp.abs());
    let den = fm - 15.0 * f0 + 15.0 * fp - fpp;
    if den.abs() < den_guard(scale) {
        return Eta::limit();
    }
    let raw = (fm - 3.0 * f0 + 3.0 * fp - fpp) / den;
    if raw.abs() <= ETA_CLAMP {
        return Eta {
            value: raw,
            limited: false,
            clamped: false,
        };
    }
    count_overflow(stats);
    Eta {
        value: 0.0,
        limited: true,
        clamped: true,
    }
}

/// Jiang-Shu smoothness indicators on a centered 2k-1 window, ordered by
/// stencil shift r = 0..k-1.
pub fn beta_js(k: usize, window: &[f64]) -> Vec<f64> {
    assert_eq!(window.len(), 2 * k - 1, "beta_js needs a 2k-1 window");
    match k {
        2 => beta_js_k2(&[window[0], window[1], window[2]]).to_vec(),
        3 => beta_js_k3(&[window[0], window[1], window[2], window[3], window[4]]).to_vec(),
        _ => panic!("k must be 2 or 3"),
    }
}

#[inline]
pub fn beta_js_k2(w: &[f64; 3]) -> [f64; 2] {
    [(w[2] - w[1]).powi(2), (w[1] - w[0]).powi(2)]
}

#[inline]
pub fn beta_js_k3(w: &[f64; 5]) -> [f64; 3] {
    let c0 = 13.0 / 12.0;
    let c1 = 0.25;
    let b0 = c0 * (w[2] - 2.0 * w[3] + w[4]).powi(2)
        + c1 * (3.0 * w[2] - 4.0 * w[3] + w[4]).powi(2);
    let b1 = c0 * (w[1] - 2.0 * w[2] + w[3]).powi(2) + c1 * (w[1] - w[3]).powi(2);
    let b2 = c0 * (w[0] - 2.0 * w[1] + w[2]).powi(2)
        + c1 * (w[0] - 4.0 * w[1] + 3.0 * w[2]).powi(2);
    [b0, b1, b2]
}

/// Linear (optimal) weights, ordered by stencil shift r = 0..k-1.
pub fn linear_weights(k: usize) -> &'static [f64] {
    match k {
        2 => &[2.0 / 3.0, 1.0 / 3.0],
        3 => &[0.3, 0.6, 0.1],
        _ => panic!("k must be 2 or 3"),
    }
}

/// Nonlinear WENO weights `alpha_r = d_r / (eps_m + beta_r)^2`, normalized.
pub fn weno_weights(d: &[f64], beta: &[f64], eps_m: f64) -> WenoWeights {
    assert_eq!(d.len(), beta.len());
    let alpha: Vec<f64> = d
        .iter()
        .zip(beta)
        .map(|(d, b)| d / (eps_m + b).powi(2))
        .collect();
    let total: f64 = alpha.iter().sum();
    let w: Vec<f64> = alpha.iter().map(|a| a / total).collect();
    WenoWeights {
        d: d.to_vec(),
        beta: beta.to_vec(),
        alpha,
        w,
        eps_m,
    }
}

#[inline]
fn weights_from_beta<const K: usize>(d: &[f64], beta: &[f64; K]) -> [f64; K] {
    let mut alpha = [0.0; K];
    let mut total = 0.0;
    for r in 0..K {
        alpha[r] = d[r] / (EPS_M + beta[r]).powi(2);
        total += alpha[r];
    }
    for a in alpha.iter_mut() {
        *a /= total;
    }
    alpha
}

/// Plus-side reconstruction from a 3-point centered window, k = 2.
pub(crate) fn recon_plus_k2(
    w: &[f64; 3],
    scheme: Scheme,
    opts: EtaOptions,
    stats: &mut EtaStats,
) -> f64 {
    let eta = if scheme.is_rbf() {
        eta_k2_stats(w[0], w[1], w[2], opts.monotone_guard, Some(stats))
    } else {
        Eta::ZERO
    };
    match scheme {
        Scheme::Eno | Scheme::RbfEno => {
            let r = eno_select(w, 2);
            // an overflowed ratio gets the row's exact-cancellation value,
            // or the polynomial limit when that is unusable too
            let eta = if eta.clamped {
                eta_k2_fallback(w[0], w[1], w[2], r).unwrap_or(0.0)
            } else {
                eta.value
            };
            let row = row_values_k2(w, r);
            let c = coeffs_k2(r as i32, eta);
            c[0] * row[0] + c[1] * row[1]
        }
        Scheme::WenoJs | Scheme::RbfWenoJs => {
            // the rows share one eta; a per-row fallback does not exist
            // here, so overflow reverts to the polynomial limit
            let eta = if eta.clamped { 0.0 } else { eta.value };
            let beta = beta_js_k2(w);
            let wgt = weights_from_beta::<2>(linear_weights(2), &beta);
            let mut acc = 0.0;
            for r in 0..2 {
                let row = row_values_k2(w, r);
                let c = coeffs_k2(r as i32, eta);
                acc += wgt[r] * (c[0] * row[0] + c[1] * row[1]);
            }
            acc
        }
    }
}

/// Plus-side reconstruction from a 5-point centered window, k = 3.
pub(crate) fn recon_plus_k3(
    w: &[f64; 5],
    scheme: Scheme,
    opts: EtaOptions,
    stats: &mut EtaStats,
) -> f64 {
    let eta = if scheme.is_rbf() {
        // Shared per-interface eta from the 4-point window; the leftmost
        // ENO block of the 5-point window joins the extremum test.
        if opts.monotone_guard && monotone_switch_k2(w[0], w[1], w[2]) {
            0.0
        } else {
            eta_k3_stats(w[1], w[2], w[3], w[4], opts.monotone_guard, Some(stats)).value
        }
    } else {
        0.0
    };
    match scheme {
        Scheme::Eno | Scheme::RbfEno => {
            let r = eno_select(w, 3);
            let row = row_values_k3(w, r);
            let c = coeffs_k3(r as i32, eta);
            c[0] * row[0] + c[1] * row[1] + c[2] * row[2]
        }
        Scheme::WenoJs | Scheme::RbfWenoJs => {
            let beta = beta_js_k3(w);
            let wgt = weights_from_beta::<3>(linear_weights(3), &beta);
            let mut acc = 0.0;
            for r in 0..3 {
                let row = row_values_k3(w, r);
                let c = coeffs_k3(r as i32, eta);
                acc += wgt[r] * (c[0] * row[0] + c[1] * row[1] + c[2] * row[2]);
            }
            acc
        }
    }
}

/// Plus-side reconstruction dispatched on window width (3 or 5).
pub(crate) fn recon_plus(w: &[f64], scheme: Scheme, opts: EtaOptions, stats: &mut EtaStats) -> f64 {
    match w.len() {
        3 => recon_plus_k2(&[w[0], w[1], w[2]], scheme, opts, stats),
        5 => recon_plus_k3(&[w[0], w[1], w[2], w[3], w[4]], scheme, opts, stats),
        _ => unreachable!("window width must be 3 or 5"),
    }
}

#[inline]
fn coeffs_k2(r: i32, eta: f64) -> [f64; 2] {
    let p = poly_row_k2(r);
    let s = eta_row_k2(r);
    [p[0] + eta * s[0], p[1] + eta * s[1]]
}

#[inline]
fn coeffs_k3(r: i32, eta: f64) -> [f64; 3] {
    let p = poly_row_k3(r);
    let s = eta_row_k3(r);
    [p[0] + eta * s[0], p[1] + eta * s[1], p[2] + eta * s[2]]
}

/// Sub-stencil values f_{i-r+j}, j = 0..k, from the centered window.
#[inline]
fn row_values_k2(w: &[f64; 3], r: usize) -> [f64; 2] {
    [w[1 - r], w[2 - r]]
}

#[inline]
fn row_values_k3(w: &[f64; 5], r: usize) -> [f64; 3] {
    [w[2 - r], w[3 - r], w[4 - r]]
}

/// Reconstruct one interface value from a centered window of width 2k-1,
/// with the monotone guard active. `Side::Plus` targets `x_{i+1/2}`;
/// `Side::Minus` targets `x_{i-1/2}` via window reversal.
pub fn reconstruct_interface(
    k: usize,
    scheme: Scheme,
    window: &[f64],
    side: Side,
    stats: &mut EtaStats,
) -> Result<f64> {
    reconstruct_interface_opts(k, scheme, window, side, EtaOptions::default(), stats)
}

/// [`reconstruct_interface`] with explicit shape-parameter options.
pub fn reconstruct_interface_opts(
    k: usize,
    scheme: Scheme,
    window: &[f64],
    side: Side,
    opts: EtaOptions,
    stats: &mut EtaStats,
) -> Result<f64> {
    let need = 2 * k - 1;
    if window.len() != need {
        return Err(SolverError::WindowWidth {
            expected: need,
            got: window.len(),
        });
    }
    Ok(match (k, side) {
        (2, Side::Plus) => recon_plus_k2(&[window[0], window[1], window[2]], scheme, opts, stats),
        (2, Side::Minus) => recon_plus_k2(&[window[2], window[1], window[0]], scheme, opts, stats),
        (3, Side::Plus) => recon_plus_k3(
            &[window[0], window[1], window[2], window[3], window[4]],
            scheme,
            opts,
            stats,
        ),
        (3, Side::Minus) => recon_plus_k3(
            &[window[4], window[3], window[2], window[1], window[0]],
            scheme,
            opts,
            stats,
        ),
        _ => return Err(SolverError::StencilRange { k, r: 0 }),
    })
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn weno_weights_convex(beta in proptest::collection::vec(0.0f64..1e6, 3)) {
            let ww = weno_weights(linear_weights(3), &beta, EPS_M);
            let sum: f64 = ww.w.iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-14);
            for w in ww.w {
                prop_assert!((0.0..=1.0).contains(&w));
            }
        }

        #[test]
        fn k3_rows_sum_to_one(r in -1i32..3, eta in -2.0f64..2.0) {
            let sum: f64 = rbf_coeffs(3, r, eta).unwrap().as_slice().iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-14);
        }

        #[test]
        fn polynomial_limit_everywhere(k in 2usize..4, r in -1i32..3) {
            prop_assume!(r < k as i32);
            let rbf = rbf_coeffs(k, r, 0.0).unwrap();
            let poly = poly_coeffs(k, r).unwrap();
            prop_assert_eq!(rbf.as_slice(), poly.as_slice());
        }

        #[test]
        fn eta_always_bounded(fm in -10.0f64..10.0, f0 in -10.0f64..10.0,
                              fp in -10.0f64..10.0, fpp in -10.0f64..10.0) {
            let e2 = eta_k2(fm, f0, fp);
            prop_assert!(e2.value.abs() <= ETA_CLAMP);
            prop_assert!(e2.value.is_finite());
            if e2.limited {
                prop_assert_eq!(e2.value, 0.0);
            }
            if let Some(fb) = eta_k2_fallback(fm, f0, fp, 1) {
                prop_assert!(fb.abs() <= ETA_FALLBACK_BOUND && fb.is_finite());
            }
            let e3 = eta_k3(fm, f0, fp, fpp);
            prop_assert!(e3.value.abs() <= ETA_CLAMP);
            prop_assert!(e3.value.is_finite());
        }
    }
}
