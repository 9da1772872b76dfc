//! Distorted Fourier transform of `H = -∂x² + V`, its functional calculus
//! and wave operator, the singular/regular splitting of the generalised
//! eigenfunctions, and linear dispersive asymptotics.

mod cutoff;
mod decomp;
mod fft;
mod kernel;
mod selftest;

pub use cutoff::Cutoff;
pub use decomp::{psi_decompose, singular_coefficient, PsiDecomposition};
pub use fft::FlatFftPlan;
pub use kernel::{BoundStates, DftPlan, GatePolicy, ParityPlan};
pub use selftest::{dft_selftest, packet_suite, Packet, SelfTestReport};

use crate::error::{Error, Result};
use crate::models::Parity;
use crate::numerics::{jbr, FreqGrid, RealGrid};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A discrete spectral transform between a real grid and frequency nodes.
///
/// `forward(f)(ξ_k) ≈ ∫ conj ψ(x, ξ_k) f(x) dx` and
/// `inverse(g)(x_j) ≈ ∫ ψ(x_j, ξ) g(ξ) dξ` with uniform frequency weights.
pub trait SpectralTransform: Send + Sync {
    fn grid(&self) -> &RealGrid;
    /// Frequency nodes, ascending and symmetric about 0.
    fn nodes(&self) -> &[f64];
    /// Uniform frequency spacing.
    fn spacing(&self) -> f64;
    /// The midpoint frequency grid, when the nodes come from one.
    fn freq_grid(&self) -> Option<&FreqGrid> {
        None
    }
    /// True when `H` has bound states on the transform's input space, so
    /// that `inverse ∘ forward` is the projection onto the continuous part.
    fn discards_bound_states(&self) -> bool {
        false
    }
    /// Parity every output of `inverse` carries exactly, if any.
    fn fixed_parity(&self) -> Option<Parity> {
        None
    }
    fn forward(&self, f: &[Complex64]) -> Result<Vec<Complex64>>;
    fn inverse(&self, g: &[Complex64]) -> Result<Vec<Complex64>>;

    fn forward_real(&self, f: &[f64]) -> Result<Vec<Complex64>> {
        self.forward(&f.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())
    }
    /// `∑ Δ |g_k|²`.
    fn spectral_norm_sqr(&self, g: &[Complex64]) -> f64 {
        self.spacing() * g.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Misaligned { expected, got });
    }
    Ok(())
}

/// `∫|f|²` with trapezoid weights.
pub fn l2_norm_sqr(f: &[Complex64], grid: &RealGrid) -> f64 {
    let w = crate::numerics::trapezoid_weights(grid);
    f.iter().zip(&w).map(|(z, w)| w * z.norm_sqr()).sum()
}

/// Relative Plancherel defect `|‖F f‖ / ‖f‖ - 1|`.
pub fn plancherel_defect(plan: &dyn SpectralTransform, f: &[Complex64]) -> Result<f64> {
    let g = plan.forward(f)?;
    let a = l2_norm_sqr(f, plan.grid()).sqrt();
    let b = plan.spectral_norm_sqr(&g).sqrt();
    Ok((b / a - 1.0).abs())
}

/// `m(D̃) f = F̃⁻¹ m F̃ f`.
pub fn multiplier(plan: &dyn SpectralTransform, m: &dyn Fn(f64) -> Complex64, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut g = plan.forward(f)?;
    for (z, &xi) in g.iter_mut().zip(plan.nodes()) {
        *z *= m(xi);
    }
    plan.inverse(&g)
}

/// Wave operator `W = F̃⁻¹ F̂` (flat transform on the same nodes).
pub fn wave_operator(plan: &dyn SpectralTransform, flat: &dyn SpectralTransform, f: &[Complex64]) -> Result<Vec<Complex64>> {
    check_nodes(plan, flat)?;
    plan.inverse(&flat.forward(f)?)
}

/// Adjoint `W* = F̂⁻¹ F̃`.
pub fn wave_adjoint(plan: &dyn SpectralTransform, flat: &dyn SpectralTransform, f: &[Complex64]) -> Result<Vec<Complex64>> {
    check_nodes(plan, flat)?;
    flat.inverse(&plan.forward(f)?)
}

fn check_nodes(a: &dyn SpectralTransform, b: &dyn SpectralTransform) -> Result<()> {
    let same = a.nodes().len() == b.nodes().len()
        && a.grid() == b.grid()
        && a.nodes().iter().zip(b.nodes()).all(|(x, y)| (x - y).abs() < 1e-12);
    if !same {
        return Err(Error::Precondition("transforms live on different grids".into()));
    }
    Ok(())
}

/// `e^{-it⟨D̃⟩} v₀`; negative `t` propagates with `e^{+i|t|⟨D̃⟩}`.
pub fn linear_propagate(plan: &dyn SpectralTransform, v0: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    multiplier(plan, &|xi| Complex64::from_polar(1.0, -t * jbr(xi)), v0)
}

/// Linear interpolation of samples on uniform ascending nodes; 0 outside.
pub fn interpolate_linear(nodes: &[f64], values: &[Complex64], xi: f64) -> Complex64 {
    let n = nodes.len();
    if n == 0 || xi < nodes[0] || xi > nodes[n - 1] {
        return Complex64::new(0.0, 0.0);
    }
    let d = nodes[1] - nodes[0];
    let s = (xi - nodes[0]) / d;
    let i = (s.floor() as usize).min(n - 2);
    let w = s - i as f64;
    values[i] * (1.0 - w) + values[i + 1] * w
}

/// Leading stationary-phase term of `e^{+it⟨D⟩} f` given `f̃` on `nodes`:
/// `e^{iπ/4} t^{-1/2} ⟨ξ₀⟩^{3/2} e^{it⟨ξ₀⟩ + ixξ₀} f̃(ξ₀)` with
/// `ξ₀/⟨ξ₀⟩ = -x/t`, and 0 outside the light cone.
pub fn stationary_phase_profile(nodes: &[f64], ft: &[Complex64], grid: &RealGrid, t: f64) -> Result<Vec<Complex64>> {
    if t < 10.0 {
        return Err(Error::Precondition(format!("stationary phase needs t ≥ 10 (got {t})")));
    }
    check_len(nodes.len(), ft.len())?;
    let pre = Complex64::from_polar(t.powf(-0.5), PI / 4.0);
    Ok(grid
        .nodes()
        .iter()
        .map(|&x| {
            let r = x / t;
            if r.abs() >= 1.0 {
                return Complex64::new(0.0, 0.0);
            }
            let xi0 = -r / (1.0 - r * r).sqrt();
            let j = jbr(xi0);
            pre * j.powf(1.5) * Complex64::from_polar(1.0, t * j + x * xi0) * interpolate_linear(nodes, ft, xi0)
        })
        .collect())
}


#[cfg(test)]
mod plan_tests;
