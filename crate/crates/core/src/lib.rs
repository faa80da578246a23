//! Finite difference ENO/WENO solver for 1D/2D hyperbolic conservation laws
//! with multiquadric-RBF-enhanced reconstruction.
//!
//! The reconstruction kernels perturb the classic polynomial ENO/WENO
//! coefficients linearly in a locally optimized shape parameter, gaining one
//! order of accuracy on smooth data while falling back to the polynomial
//! scheme (the vanishing-shape limit) near extrema and discontinuities.
//! Scalar advection/Burgers and the 1D/2D Euler equations are driven by
//! global Lax-Friedrichs splitting and TVD-RK3 stepping.

pub mod driver;
pub mod error;
pub mod flux;
pub mod harness;
pub mod grid;
pub mod oracle;
pub mod problems;
pub mod reconstruction;
pub mod riemann;
pub mod state;
pub mod time;
pub mod verify;

pub use error::{Result, SolverError};
pub use state::State;
