//! Smooth partition of unity `χ₊ + χ₋ = 1` built from a bump on `[-2, 2]`.

use crate::numerics::gauss_legendre;

const PANELS: usize = 16;
const ORDER: usize = 16;

/// `ρ(x) = C exp(-1/(1 - x²/4))` on `|x| < 2`, `∫ρ = 1`, and
/// `χ₊(x) = ∫_{-2}^x ρ`, `χ₋ = 1 - χ₊`.
#[derive(Debug, Clone)]
pub struct Cutoff {
    norm: f64,
    gl: (Vec<f64>, Vec<f64>),
}

impl Default for Cutoff {
    fn default() -> Self {
        Self::new()
    }
}

impl Cutoff {
    pub fn new() -> Self {
        let gl = gauss_legendre(ORDER);
        let mut c = Self { norm: 1.0, gl };
        // normalise on the half line so that χ₊(0) = ½ holds exactly
        c.norm = 0.5 / c.raw_integral(-2.0, 0.0);
        c
    }

    fn raw(x: f64) -> f64 {
        let s = 1.0 - 0.25 * x * x;
        if s <= 0.0 {
            0.0
        } else {
            (-1.0 / s).exp()
        }
    }

    fn raw_integral(&self, a: f64, b: f64) -> f64 {
        let h = (b - a) / PANELS as f64;
        let (xs, ws) = &self.gl;
        let mut acc = 0.0;
        for p in 0..PANELS {
            let mid = a + (p as f64 + 0.5) * h;
            for (x, w) in xs.iter().zip(ws) {
                acc += w * 0.5 * h * Self::raw(mid + 0.5 * h * x);
            }
        }
        acc
    }

    /// `ρ(x)`.
    pub fn rho(&self, x: f64) -> f64 {
        self.norm * Self::raw(x)
    }

    /// `χ₊(x)`.
    pub fn chi_plus(&self, x: f64) -> f64 {
        if x <= -2.0 {
            0.0
        } else if x >= 2.0 {
            1.0
        } else if x <= 0.0 {
            self.norm * self.raw_integral(-2.0, x)
        } else {
            1.0 - self.chi_plus(-x)
        }
    }

    /// `χ₋(x) = χ₊(-x)`.
    pub fn chi_minus(&self, x: f64) -> f64 {
        self.chi_plus(-x)
    }

    /// `χ_ε` for `ε = +1` or `-1`.
    pub fn chi(&self, eps: i8, x: f64) -> f64 {
        if eps > 0 {
            self.chi_plus(x)
        } else {
            self.chi_minus(x)
        }
    }
}
