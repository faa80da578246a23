use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

/// Per-cell state vector: `C = 1` for scalar equations, `C = 3` for 1D Euler,
/// `C = 4` for 2D Euler.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State<const C: usize>(pub [f64; C]);

impl<const C: usize> State<C> {
    pub const ZERO: Self = State([0.0; C]);

    pub fn splat(v: f64) -> Self {
        State([v; C])
    }

    pub fn abs_max(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl State<1> {
    pub fn scalar(v: f64) -> Self {
        State([v])
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }
}

impl<const C: usize> Default for State<C> {
    fn default() -> Self {
        Self::ZERO
    }
}

impl<const C: usize> Add for State<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl<const C: usize> AddAssign for State<C> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl<const C: usize> Sub for State<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        self
    }
}

impl<const C: usize> Neg for State<C> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.0.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl<const C: usize> Mul<f64> for State<C> {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        for a in self.0.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl<const C: usize> Index<usize> for State<C> {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const C: usize> IndexMut<usize> for State<C> {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}
