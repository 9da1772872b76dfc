//! Packet-suite diagnostics for a distorted transform: Plancherel, parity,
//! unitarity of the wave operator and intertwining with `⟨D⟩`.

use super::{l2_norm_sqr, multiplier, wave_adjoint, wave_operator, DftPlan, SpectralTransform};
use crate::error::{Error, Result};
use crate::evolve::continuous_projection;
use crate::models::Parity;
use crate::numerics::{jbr, RealGrid};
use num_complex::Complex64;
use serde::Serialize;

/// One packet `e^{-((x-x₀)/w)²} cos(kx)`, optionally (anti)symmetrised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Packet {
    pub x0: f64,
    pub k: f64,
    pub w: f64,
    pub parity: Parity,
}

impl Packet {
    pub fn sample(&self, grid: &RealGrid) -> Vec<Complex64> {
        let env = |y: f64| (-((y - self.x0) / self.w).powi(2)).exp() * (self.k * y).cos();
        grid.nodes()
            .iter()
            .map(|&x| {
                let v = match self.parity {
                    Parity::Even => env(x) + env(-x),
                    Parity::Odd => env(x) - env(-x),
                    Parity::None => env(x),
                };
                Complex64::new(v, 0.0)
            })
            .collect()
    }
}

/// Deterministic suite of `count` packets cycling through no symmetry, even and odd.
pub fn packet_suite(count: usize) -> Vec<Packet> {
    (0..count)
        .map(|i| {
            let s = i as f64 / count.max(1) as f64;
            let r = ((7 * i) % count) as f64 / count as f64;
            Packet { x0: -2.5 + 5.0 * s, k: 1.0 + 4.0 * r, w: 1.0 + 1.5 * s, parity: [Parity::None, Parity::Even, Parity::Odd][i % 3] }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub packets: usize,
    /// `max |‖F̃f‖/‖P_c f‖ - 1|`.
    pub plancherel: f64,
    /// `max ‖F̃f(ξ) ∓ F̃f(-ξ)‖∞ / ‖F̃f‖∞` over even/odd packets; even `V` only.
    pub parity: Option<f64>,
    /// `max ‖W*W f - f‖/‖f‖` over packets with negligible low-frequency content.
    pub wave_unitarity: f64,
    /// `max ‖e^{i⟨D̃⟩}W f - W e^{i⟨D⟩}f‖/‖W f‖` over the same packets.
    pub intertwining: f64,
    /// Packets entering the wave-operator checks.
    pub wave_packets: usize,
}

fn rel(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Frequencies below this count as low for the wave-operator admission rule.
pub const LOW_BAND: f64 = 1.0;
/// Largest fraction of `‖f̂‖²` allowed in the low band.
pub const LOW_FRACTION: f64 = 1e-8;

/// Run the packet suite through `plan`. Packets with spectral mass near
/// `ξ = 0` are left out of the wave-operator checks: `W f` then carries
/// algebraically decaying tails that the box truncates.
pub fn dft_selftest(plan: &DftPlan, packets: &[Packet], even_potential: bool) -> Result<SelfTestReport> {
    let grid = plan.grid().clone();
    let freqs = plan.freq_grid().cloned().ok_or_else(|| Error::Internal("dense plan without a frequency grid".into()))?;
    let flat = DftPlan::flat(&grid, &freqs);
    let mut rep = SelfTestReport { packets: packets.len(), plancherel: 0.0, parity: even_potential.then_some(0.0), wave_unitarity: 0.0, intertwining: 0.0, wave_packets: 0 };
    let nodes = freqs.nodes();
    let phase = |xi: f64| Complex64::from_polar(1.0, jbr(xi));
    for p in packets {
        let f = p.sample(&grid);
        let re: Vec<f64> = f.iter().map(|z| z.re).collect();
        let pc: Vec<Complex64> = continuous_projection(&plan.bound_states.eigenfunctions, &grid, &re)?
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        let ft = plan.forward(&f)?;
        let d = (plan.spectral_norm_sqr(&ft).sqrt() / l2_norm_sqr(&pc, &grid).sqrt() - 1.0).abs();
        rep.plancherel = rep.plancherel.max(d);
        let sup = ft.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let s = match p.parity {
            Parity::Odd => Some(1.0),
            Parity::Even => Some(-1.0),
            Parity::None => None,
        };
        if let Some(s) = s {
            let par = (0..freqs.len()).map(|k| (ft[k] + s * ft[freqs.mirror(k)]).norm()).fold(0.0, f64::max);
            rep.parity = rep.parity.map(|m| m.max(par / sup));
        }

        let fh = flat.forward(&f)?;
        let low: f64 = fh.iter().zip(&nodes).filter(|(_, x)| x.abs() < LOW_BAND).map(|(z, _)| z.norm_sqr()).sum();
        let all: f64 = fh.iter().map(|z| z.norm_sqr()).sum();
        if low > LOW_FRACTION * all {
            continue;
        }
        rep.wave_packets += 1;
        let wf = wave_operator(plan, &flat, &f)?;
        rep.wave_unitarity = rep.wave_unitarity.max(rel(&wave_adjoint(plan, &flat, &wf)?, &f));
        let lhs = multiplier(plan, &phase, &wf)?;
        let rhs = wave_operator(plan, &flat, &multiplier(&flat, &phase, &f)?)?;
        rep.intertwining = rep.intertwining.max(rel(&lhs, &rhs));
    }
    Ok(rep)
}
