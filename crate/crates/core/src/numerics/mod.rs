//! Grids, quadrature, ODE marching, interpolation and tridiagonal eigensolving.

mod grid;
mod interp;
mod ode;
mod quad;
mod tridiag;

pub use grid::{make_grids, FreqGrid, RealGrid};
pub use interp::{extrapolate_to_zero, hermite5, hermite5_all, lagrange_eval, HalfLineInterpolator};
pub use ode::{integrate_second_order_ode, magnus_step, BoundarySide, ComplexSignal};
pub use quad::{
    gauss_legendre, linear_fit, quadrature, quadrature_real, solve_dense, trapezoid_weights,
};
pub use tridiag::{EigenList, TridiagonalOperator};

/// Japanese bracket `⟨ξ⟩ = √(1+ξ²)`.
#[inline]
pub fn jbr(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}
