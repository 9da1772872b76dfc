//! Dense tables of generalised eigenfunctions and the transforms they define.

use super::{check_len, SpectralTransform};
use crate::error::{Error, Result};
use crate::jost::{JostTables, ScatteringData};
use crate::models::{Parity, Potential};
use crate::numerics::{extrapolate_to_zero, trapezoid_weights, FreqGrid, RealGrid};
use crate::spectrum::discrete_spectrum;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::{Read, Write};
use std::path::Path;

/// How bound states of `H` are handled when a plan is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GatePolicy {
    /// Refuse any eigenvalue below 0.
    Strict,
    /// Accept bound states whose eigenfunctions are orthogonal to the given
    /// parity subspace (they have the opposite parity).
    Parity(Parity),
    /// Accept bound states; the transform then acts on the continuous
    /// spectral subspace only.
    Project,
}

/// Bound states found by the gate.
#[derive(Debug, Clone, Default)]
pub struct BoundStates {
    pub eigenvalues: Vec<f64>,
    /// `L²`-normalised eigenfunctions on the plan grid.
    pub eigenfunctions: Vec<Vec<f64>>,
}

fn parity_of(f: &[f64]) -> Parity {
    let n = f.len();
    let scale = f.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
    let even = (0..n).map(|j| (f[j] - f[n - 1 - j]).abs()).fold(0.0, f64::max) / scale;
    let odd = (0..n).map(|j| (f[j] + f[n - 1 - j]).abs()).fold(0.0, f64::max) / scale;
    if even < 1e-6 {
        Parity::Even
    } else if odd < 1e-6 {
        Parity::Odd
    } else {
        Parity::None
    }
}

fn opposite(p: Parity) -> Parity {
    match p {
        Parity::Even => Parity::Odd,
        Parity::Odd => Parity::Even,
        Parity::None => Parity::None,
    }
}

fn gate(v: &Potential, grid: &RealGrid, policy: GatePolicy) -> Result<BoundStates> {
    let rep = discrete_spectrum(v, 1.0, grid, 0.0);
    let bs = BoundStates { eigenvalues: rep.eigenvalues.clone(), eigenfunctions: rep.eigenfunctions };
    match policy {
        GatePolicy::Strict => {
            if let Some(&e) = bs.eigenvalues.first() {
                return Err(Error::BoundState { eigenvalue: e });
            }
        }
        GatePolicy::Parity(p) => {
            if v.parity() != Parity::Even {
                return Err(Error::Precondition("parity-restricted plans need an even potential".into()));
            }
            for (e, f) in bs.eigenvalues.iter().zip(&bs.eigenfunctions) {
                let q = parity_of(f);
                let orthogonal = matches!((p, q), (Parity::Odd, Parity::Even) | (Parity::Even, Parity::Odd));
                if !orthogonal {
                    return Err(Error::BoundState { eigenvalue: *e });
                }
            }
        }
        GatePolicy::Project => {}
    }
    Ok(bs)
}

/// `ψ(x_j, ξ)` for the `i`-th positive node (`neg = false`) or its mirror.
fn psi_column(jost: &JostTables, sd: &ScatteringData, i: usize, neg: bool) -> Vec<Complex64> {
    let f = &jost.freqs;
    let xi = f.node(f.positive(i));
    let t = sd.t[f.positive(i)] / (2.0 * PI).sqrt();
    let g = &jost.grid;
    (0..g.len())
        .map(|j| {
            let x = g.node(j);
            if neg {
                t * jost.m_minus_column(i)[j] * Complex64::from_polar(1.0, -xi * x)
            } else {
                t * jost.m_plus_column(i)[j] * Complex64::from_polar(1.0, xi * x)
            }
        })
        .collect()
}

/// Dense distorted Fourier transform on `RealGrid × FreqGrid`.
#[derive(Debug, Clone)]
pub struct DftPlan {
    pub name: String,
    grid: RealGrid,
    freqs: FreqGrid,
    nodes: Vec<f64>,
    /// Row `k` holds `ψ(·, ξ_k)`.
    psi: Vec<Complex64>,
    weights: Vec<f64>,
    pub scattering: Option<ScatteringData>,
    pub bound_states: BoundStates,
    pub policy: GatePolicy,
}

impl DftPlan {
    /// Assemble `ψ = T f₊/√(2π)` (`ξ > 0`), `T(-ξ) f₋(·,-ξ)/√(2π)` (`ξ < 0`).
    pub fn build(v: &Potential, jost: &JostTables, sd: &ScatteringData, policy: GatePolicy) -> Result<Self> {
        let bound_states = gate(v, &jost.grid, policy)?;
        let f = &jost.freqs;
        let n = jost.grid.len();
        let m = f.len();
        let mut psi = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..f.half() {
            let kp = f.positive(i);
            let kn = f.negative(i);
            psi[kp * n..(kp + 1) * n].copy_from_slice(&psi_column(jost, sd, i, false));
            psi[kn * n..(kn + 1) * n].copy_from_slice(&psi_column(jost, sd, i, true));
        }
        Ok(Self {
            name: v.name().to_string(),
            grid: jost.grid.clone(),
            freqs: f.clone(),
            nodes: f.nodes(),
            psi,
            weights: trapezoid_weights(&jost.grid),
            scattering: Some(sd.clone()),
            bound_states,
            policy,
        })
    }

    /// The flat transform `ψ = e^{ixξ}/√(2π)` on the same grids.
    pub fn flat(grid: &RealGrid, freqs: &FreqGrid) -> Self {
        let n = grid.len();
        let x = grid.nodes();
        let s = 1.0 / (2.0 * PI).sqrt();
        let mut psi = Vec::with_capacity(n * freqs.len());
        for k in 0..freqs.len() {
            let xi = freqs.node(k);
            psi.extend(x.iter().map(|&x| Complex64::from_polar(s, xi * x)));
        }
        Self {
            name: "flat".into(),
            grid: grid.clone(),
            freqs: freqs.clone(),
            nodes: freqs.nodes(),
            psi,
            weights: trapezoid_weights(grid),
            scattering: None,
            bound_states: BoundStates::default(),
            policy: GatePolicy::Strict,
        }
    }

    pub fn no_bound_states(&self) -> bool {
        self.bound_states.eigenvalues.is_empty()
    }

    #[inline]
    pub fn psi(&self, j: usize, k: usize) -> Complex64 {
        self.psi[k * self.grid.len() + j]
    }
    pub fn psi_row(&self, k: usize) -> &[Complex64] {
        let n = self.grid.len();
        &self.psi[k * n..(k + 1) * n]
    }

    /// `ψ(x_j, 0±)` by quadratic extrapolation in `ξ`.
    pub fn column_limit_at_zero(&self, positive: bool) -> Vec<Complex64> {
        let n = self.grid.len();
        let mut col = vec![Complex64::new(0.0, 0.0); self.freqs.len()];
        (0..n)
            .map(|j| {
                for i in 0..3 {
                    let k = if positive { self.freqs.positive(i) } else { self.freqs.negative(i) };
                    col[k] = self.psi(j, k);
                }
                extrapolate_to_zero(&self.freqs, &col, positive)
            })
            .collect()
    }

    /// Identifier for caches: name and both grid signatures.
    pub fn signature(&self) -> String {
        format!(
            "{}|L={}|n={}|Xi={}|m={}",
            self.name,
            self.grid.half_width(),
            self.grid.len(),
            self.freqs.cutoff(),
            self.freqs.len()
        )
    }

    /// Write the ψ table as `signature length, signature, little-endian pairs`.
    pub fn save_psi(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::DataQuality(format!("ψ cache write failed: {e}"));
        let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
        let sig = self.signature();
        w.write_all(&(sig.len() as u64).to_le_bytes()).map_err(io)?;
        w.write_all(sig.as_bytes()).map_err(io)?;
        for z in &self.psi {
            w.write_all(&z.re.to_le_bytes()).map_err(io)?;
            w.write_all(&z.im.to_le_bytes()).map_err(io)?;
        }
        w.flush().map_err(io)
    }

    /// Replace the ψ table from a cache written by [`DftPlan::save_psi`];
    /// returns `false` (and leaves the plan untouched) on a signature mismatch.
    pub fn load_psi(&mut self, path: &Path) -> Result<bool> {
        let io = |e: std::io::Error| Error::DataQuality(format!("ψ cache read failed: {e}"));
        let mut r = std::io::BufReader::new(std::fs::File::open(path).map_err(io)?);
        let mut len = [0u8; 8];
        r.read_exact(&mut len).map_err(io)?;
        let mut sig = vec![0u8; u64::from_le_bytes(len) as usize];
        r.read_exact(&mut sig).map_err(io)?;
        if sig != self.signature().as_bytes() {
            return Ok(false);
        }
        let mut buf = Vec::new();
        r.read_to_end(&mut buf).map_err(io)?;
        if buf.len() != self.psi.len() * 16 {
            return Ok(false);
        }
        for (z, c) in self.psi.iter_mut().zip(buf.chunks_exact(16)) {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            *z = Complex64::new(re, im);
        }
        Ok(true)
    }
}

impl SpectralTransform for DftPlan {
    fn grid(&self) -> &RealGrid {
        &self.grid
    }
    fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    fn spacing(&self) -> f64 {
        self.freqs.spacing()
    }
    fn freq_grid(&self) -> Option<&FreqGrid> {
        Some(&self.freqs)
    }
    fn discards_bound_states(&self) -> bool {
        !self.no_bound_states()
    }
    fn forward(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        check_len(n, f.len())?;
        let wf: Vec<Complex64> = f.iter().zip(&self.weights).map(|(z, w)| z * w).collect();
        Ok((0..self.freqs.len())
            .map(|k| {
                let row = &self.psi[k * n..(k + 1) * n];
                let mut acc = Complex64::new(0.0, 0.0);
                for (p, v) in row.iter().zip(&wf) {
                    acc += p.conj() * v;
                }
                acc
            })
            .collect())
    }
    fn inverse(&self, g: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        check_len(self.freqs.len(), g.len())?;
        let d = self.freqs.spacing();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (k, c) in g.iter().enumerate() {
            let c = c * d;
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.psi[k * n..(k + 1) * n]) {
                *o += p * c;
            }
        }
        Ok(out)
    }
}

/// Transform restricted to even or odd functions of an even potential.
///
/// Uses `ψ(-x, ξ) = ψ(x, -ξ)` to fold both the spatial and the frequency
/// sums onto half-lines, a fourfold saving. Inputs are projected onto the
/// chosen parity; outputs carry it exactly.
#[derive(Debug, Clone)]
pub struct ParityPlan {
    pub parity: Parity,
    grid: RealGrid,
    freqs: FreqGrid,
    nodes: Vec<f64>,
    /// Row `i` (positive node) holds `ψ(x, ξ) ± ψ(-x, ξ)` for `x ≥ 0`.
    kernel: Vec<Complex64>,
    /// Forward weights on `x ≥ 0` (halved at the centre).
    weights: Vec<f64>,
    pub bound_states: BoundStates,
}

impl ParityPlan {
    pub fn build(v: &Potential, jost: &JostTables, sd: &ScatteringData, parity: Parity) -> Result<Self> {
        Self::build_with(v, jost, sd, parity, GatePolicy::Parity(parity))
    }

    pub fn build_with(
        v: &Potential,
        jost: &JostTables,
        sd: &ScatteringData,
        parity: Parity,
        policy: GatePolicy,
    ) -> Result<Self> {
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::None => return Err(Error::InvalidParameter("parity plan needs Even or Odd".into())),
        };
        if v.parity() != Parity::Even {
            return Err(Error::Precondition("parity-restricted plans need an even potential".into()));
        }
        let bound_states = gate(v, &jost.grid, policy)?;
        let g = &jost.grid;
        let c = g.center();
        let nh = g.len() - c;
        let f = &jost.freqs;
        let mut kernel = Vec::with_capacity(f.half() * nh);
        for i in 0..f.half() {
            let col = psi_column(jost, sd, i, false);
            kernel.extend((0..nh).map(|q| col[c + q] + col[c - q] * sign));
        }
        let tw = trapezoid_weights(g);
        let mut weights: Vec<f64> = (0..nh).map(|q| tw[c + q]).collect();
        weights[0] *= 0.5;
        Ok(Self { parity, grid: g.clone(), freqs: f.clone(), nodes: f.nodes(), kernel, weights, bound_states })
    }

    fn sign(&self) -> f64 {
        if self.parity == Parity::Odd {
            -1.0
        } else {
            1.0
        }
    }
}

impl SpectralTransform for ParityPlan {
    fn grid(&self) -> &RealGrid {
        &self.grid
    }
    fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    fn spacing(&self) -> f64 {
        self.freqs.spacing()
    }
    fn freq_grid(&self) -> Option<&FreqGrid> {
        Some(&self.freqs)
    }
    fn fixed_parity(&self) -> Option<Parity> {
        Some(self.parity)
    }
    fn discards_bound_states(&self) -> bool {
        self.bound_states.eigenfunctions.iter().any(|f| parity_of(f) != opposite(self.parity))
    }
    fn forward(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        check_len(n, f.len())?;
        let c = self.grid.center();
        let nh = n - c;
        let s = self.sign();
        // parity part of the input, folded onto x ≥ 0
        let wf: Vec<Complex64> = (0..nh).map(|q| 0.5 * (f[c + q] + f[c - q] * s) * self.weights[q]).collect();
        let fg = &self.freqs;
        let mut out = vec![Complex64::new(0.0, 0.0); fg.len()];
        for i in 0..fg.half() {
            let row = &self.kernel[i * nh..(i + 1) * nh];
            let mut acc = Complex64::new(0.0, 0.0);
            for (p, v) in row.iter().zip(&wf) {
                acc += p.conj() * v;
            }
            out[fg.positive(i)] = acc;
            out[fg.negative(i)] = acc * s;
        }
        Ok(out)
    }
    fn inverse(&self, g: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.grid.len();
        let fg = &self.freqs;
        check_len(fg.len(), g.len())?;
        let c = self.grid.center();
        let nh = n - c;
        let s = self.sign();
        let d = fg.spacing();
        let mut half = vec![Complex64::new(0.0, 0.0); nh];
        for i in 0..fg.half() {
            let coef = 0.5 * (g[fg.positive(i)] + g[fg.negative(i)] * s) * d;
            if coef == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, p) in half.iter_mut().zip(&self.kernel[i * nh..(i + 1) * nh]) {
                *o += p * coef;
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for q in 0..nh {
            out[c + q] = half[q];
            out[c - q] = half[q] * s;
        }
        if s < 0.0 {
            out[c] = Complex64::new(0.0, 0.0);
        }
        Ok(out)
    }
}
