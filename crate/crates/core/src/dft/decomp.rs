//! Splitting `√(2π) ψ = ψ^S + ψ^R` into a non-decaying part built from plane
//! waves glued by `χ±` and a remainder that decays away from the origin.

use super::{Cutoff, DftPlan, SpectralTransform};
use crate::error::{Error, Result};
use crate::numerics::{FreqGrid, RealGrid};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Coefficient `a^ε_λ(ξ)` of `χ_ε(x) e^{iλξx}` in `ψ^S(x, ξ)`, given
/// `T`, `R₊`, `R₋` at `|ξ|`.
pub fn singular_coefficient(eps: i8, lambda: i8, xi: f64, t: Complex64, r_plus: Complex64, r_minus: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let pos = xi > 0.0;
    match (eps > 0, lambda > 0) {
        (false, true) => {
            if pos {
                one
            } else {
                t
            }
        }
        (false, false) => {
            if pos {
                r_minus
            } else {
                zero
            }
        }
        (true, true) => {
            if pos {
                t
            } else {
                one
            }
        }
        (true, false) => {
            if pos {
                zero
            } else {
                r_plus
            }
        }
    }
}

/// `ψ^S`, `ψ^R` for a dense plan.
#[derive(Debug, Clone)]
pub struct PsiDecomposition {
    grid: RealGrid,
    freqs: FreqGrid,
    /// `coeffs[e][l][k]` with index 0 for `+` and 1 for `-`.
    coeffs: [[Vec<Complex64>; 2]; 2],
    pub chi_plus: Vec<f64>,
    pub chi_minus: Vec<f64>,
}

fn sign(i: usize) -> i8 {
    if i == 0 {
        1
    } else {
        -1
    }
}

impl PsiDecomposition {
    /// `a^ε_λ(ξ_k)`.
    pub fn coefficient(&self, eps: i8, lambda: i8, k: usize) -> Complex64 {
        let e = usize::from(eps < 0);
        let l = usize::from(lambda < 0);
        self.coeffs[e][l][k]
    }

    /// `ψ^S(·, ξ_k)`.
    pub fn singular_column(&self, k: usize) -> Vec<Complex64> {
        let xi = self.freqs.node(k);
        self.grid
            .nodes()
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                let mut acc = Complex64::new(0.0, 0.0);
                for e in 0..2 {
                    let chi = if e == 0 { self.chi_plus[j] } else { self.chi_minus[j] };
                    for l in 0..2 {
                        acc += chi * self.coeffs[e][l][k] * Complex64::from_polar(1.0, sign(l) as f64 * xi * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `ψ^R(·, ξ_k) = √(2π) ψ - ψ^S`.
    pub fn residual_column(&self, plan: &DftPlan, k: usize) -> Vec<Complex64> {
        let s = (2.0 * PI).sqrt();
        plan.psi_row(k).iter().zip(self.singular_column(k)).map(|(p, q)| p * s - q).collect()
    }
}

/// Coefficients and cutoffs for `plan`.
pub fn psi_decompose(plan: &DftPlan) -> Result<PsiDecomposition> {
    let sd = plan
        .scattering
        .as_ref()
        .ok_or_else(|| Error::Precondition("decomposition needs scattering data".into()))?;
    let f = plan.freq_grid().expect("dense plans carry a frequency grid").clone();
    let cut = Cutoff::new();
    let x = plan.grid().nodes();
    let mut coeffs: [[Vec<Complex64>; 2]; 2] = Default::default();
    for (e, row) in coeffs.iter_mut().enumerate() {
        for (l, c) in row.iter_mut().enumerate() {
            *c = (0..f.len())
                .map(|k| {
                    let xi = f.node(k);
                    let ka = if xi > 0.0 { k } else { f.mirror(k) };
                    singular_coefficient(sign(e), sign(l), xi, sd.t[ka], sd.r_plus[ka], sd.r_minus[ka])
                })
                .collect();
        }
    }
    Ok(PsiDecomposition {
        grid: plan.grid().clone(),
        freqs: f,
        coeffs,
        chi_plus: x.iter().map(|&x| cut.chi_plus(x)).collect(),
        chi_minus: x.iter().map(|&x| cut.chi_minus(x)).collect(),
    })
}
