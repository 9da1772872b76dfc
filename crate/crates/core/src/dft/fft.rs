//! Flat transform on a periodic box via FFT.

use super::{check_len, SpectralTransform};
use crate::error::Result;
use crate::numerics::RealGrid;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// `ψ(x, ξ) = e^{ixξ}/√(2π)` on the periodic box spanned by `grid`, with
/// frequencies `2πk/(n h)`, `|k| ≤ (n-1)/2`. Unitary to rounding.
pub struct FlatFftPlan {
    grid: RealGrid,
    nodes: Vec<f64>,
    delta: f64,
    phase: Vec<Complex64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FlatFftPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlatFftPlan").field("n", &self.grid.len()).finish()
    }
}

impl FlatFftPlan {
    pub fn new(grid: &RealGrid) -> Self {
        let n = grid.len();
        let c = grid.center();
        let h = grid.spacing();
        let delta = 2.0 * PI / (n as f64 * h);
        let nodes = (0..n).map(|k| (k as f64 - c as f64) * delta).collect();
        // e^{-iξ_k x_j} = e^{-2πi(k-c)j/n} e^{2πi(k-c)c/n}
        let phase = (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * (k as f64 - c as f64) * c as f64 / n as f64)).collect();
        let mut planner = FftPlanner::new();
        Self { grid: grid.clone(), nodes, delta, phase, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) }
    }

    fn bin(&self, k: usize) -> usize {
        let n = self.grid.len();
        (k + n - self.grid.center()) % n
    }
}

impl SpectralTransform for FlatFftPlan {
    fn grid(&self) -> &RealGrid {
        &self.grid
    }
    fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    fn spacing(&self) -> f64 {
        self.delta
    }
    fn forward(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        check_len(n, f.len())?;
        let mut buf = f.to_vec();
        self.fwd.process(&mut buf);
        let s = self.grid.spacing() / (2.0 * PI).sqrt();
        Ok((0..n).map(|k| buf[self.bin(k)] * self.phase[k] * s).collect())
    }
    fn inverse(&self, g: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        check_len(n, g.len())?;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            buf[self.bin(k)] = g[k] * self.phase[k].conj();
        }
        self.inv.process(&mut buf);
        let s = self.delta / (2.0 * PI).sqrt();
        Ok(buf.into_iter().map(|z| z * s).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_sum_and_is_unitary() {
        let g = RealGrid::new(10.0, 101).unwrap();
        let p = FlatFftPlan::new(&g);
        let f: Vec<Complex64> = g.nodes().iter().map(|&x| Complex64::new((-x * x).exp(), 0.3 * x * (-x * x).exp())).collect();
        let ft = p.forward(&f).unwrap();
        for (k, &xi) in p.nodes().iter().enumerate() {
            let direct: Complex64 = g
                .nodes()
                .iter()
                .zip(&f)
                .map(|(&x, v)| v * Complex64::from_polar(g.spacing() / (2.0 * PI).sqrt(), -xi * x))
                .sum();
            assert!((direct - ft[k]).norm() < 1e-12);
        }
        let back = p.inverse(&ft).unwrap();
        assert!(back.iter().zip(&f).all(|(a, b)| (a - b).norm() < 1e-13));
        let e1: f64 = f.iter().map(|z| z.norm_sqr()).sum::<f64>() * g.spacing();
        assert!((p.spectral_norm_sqr(&ft) - e1).abs() < 1e-13);
    }
}
