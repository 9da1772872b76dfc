//! Scattering matrix, the asymptotic log-phase flow in its diagonalising
//! coordinates, modified profiles, and phase fitting of profile series.

use crate::error::{Error, Result};
use crate::evolve::ProfileSeries;
use crate::jost::ScatteringData;
use crate::numerics::linear_fit;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C = Complex64;
pub type Mat2 = [[C; 2]; 2];
pub type Pair = [C; 2];

/// Coefficient of the asymptotic phase, `dZ/dt = -(5i/12t) ℓ² |Z|² Z`.
pub const PHASE_COEFF: f64 = 5.0 / 12.0;

/// Largest tolerated `‖S S† - I‖`.
pub const UNITARITY_TOL: f64 = 1e-4;

fn mul(s: &Mat2, x: &Pair) -> Pair {
    [s[0][0] * x[0] + s[0][1] * x[1], s[1][0] * x[0] + s[1][1] * x[1]]
}

fn inverse(s: &Mat2) -> Mat2 {
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    [[s[1][1] / det, -s[0][1] / det], [-s[1][0] / det, s[0][0] / det]]
}

/// Max-entry norm of `S S† - I`.
pub fn unitarity_defect(s: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let e = s[i][0] * s[j][0].conj() + s[i][1] * s[j][1].conj() - if i == j { 1.0 } else { 0.0 };
            worst = worst.max(e.norm());
        }
    }
    worst
}

/// `S(ξ) = [[T, R₊], [R₋, T]]` at positive frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SMatrix {
    pub xi: Vec<f64>,
    pub entries: Vec<Mat2>,
}

impl SMatrix {
    /// `S = I` on the given positive frequencies.
    pub fn identity(xi: &[f64]) -> Self {
        let one = C::new(1.0, 0.0);
        let zero = C::new(0.0, 0.0);
        Self { xi: xi.to_vec(), entries: vec![[[one, zero], [zero, one]]; xi.len()] }
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.entries.iter().map(unitarity_defect).fold(0.0, f64::max)
    }

    /// Largest `|S⁻¹ - S†|` entry.
    pub fn inverse_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|s| {
                let inv = inverse(s);
                let mut d = 0.0f64;
                for i in 0..2 {
                    for j in 0..2 {
                        d = d.max((inv[i][j] - s[j][i].conj()).norm());
                    }
                }
                d
            })
            .fold(0.0, f64::max)
    }

    /// Matrix at the node closest to `xi > 0`, if within `1e-9`.
    pub fn at(&self, xi: f64) -> Option<&Mat2> {
        let i = self.xi.partition_point(|&x| x < xi);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter(|&k| k < self.xi.len() && (self.xi[k] - xi).abs() < 1e-9 * (1.0 + xi.abs()))
            .map(|k| &self.entries[k])
            .next()
    }
}

/// Assemble `S` from scattering data; fails when unitarity is worse than [`UNITARITY_TOL`].
pub fn s_matrix(data: &ScatteringData) -> Result<SMatrix> {
    let f = &data.freqs;
    let mut xi = Vec::with_capacity(f.half());
    let mut entries = Vec::with_capacity(f.half());
    for i in 0..f.half() {
        let k = f.positive(i);
        xi.push(f.node(k));
        entries.push([[data.t[k], data.r_plus[k]], [data.r_minus[k], data.t[k]]]);
    }
    let s = SMatrix { xi, entries };
    let d = s.max_unitarity_defect();
    if d > UNITARITY_TOL {
        return Err(Error::DataQuality(format!("scattering matrix unitarity defect {d:.3e}")));
    }
    Ok(s)
}

/// `ℓ₊∞, ℓ₋∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ells {
    pub plus: f64,
    pub minus: f64,
}

impl Ells {
    fn sq(&self) -> [f64; 2] {
        [self.plus * self.plus, self.minus * self.minus]
    }
}

/// `H(X) = (5/24)(ℓ₊²|Z₊|⁴ + ℓ₋²|Z₋|⁴)` with `Z = S X`.
pub fn asymptotic_hamiltonian(x: &Pair, s: &Mat2, ell: Ells) -> f64 {
    let z = mul(s, x);
    let l = ell.sq();
    0.5 * PHASE_COEFF * (l[0] * z[0].norm_sqr().powi(2) + l[1] * z[1].norm_sqr().powi(2))
}

/// `dX/dt = S⁻¹ diag(-(5i/12t) ℓ±² |Z±|² Z±)` with `Z = S X`.
pub fn asymptotic_rhs(x: &Pair, t: f64, s: &Mat2, ell: Ells) -> Result<Pair> {
    if !(t >= 1.0) {
        return Err(Error::Precondition(format!("asymptotic flow needs t ≥ 1 (got {t})")));
    }
    let z = mul(s, x);
    let l = ell.sq();
    let c = C::new(0.0, -PHASE_COEFF / t);
    let dz = [c * l[0] * z[0].norm_sqr() * z[0], c * l[1] * z[1].norm_sqr() * z[1]];
    Ok(mul(&inverse(s), &dz))
}

/// One point of the asymptotic flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymState {
    pub t: f64,
    /// `(f̃(ξ), f̃(-ξ))`.
    pub x: Pair,
    pub z: Pair,
    /// Modified profile `W±`.
    pub w: Pair,
    /// `∫₀ᵗ |Z±|² ds/(s+1)`.
    pub phase_integral: [f64; 2],
}

/// Closed-form flow from `t0` to `t1` sampled at `steps + 1` log-uniform times.
///
/// `|Z±|` is conserved, so `Z±(t) = exp(-(5i/12) ℓ±² |Z±|² log(t/t0)) Z±(t0)`.
/// The phase integral assumes `|Z|` was already constant on `[0, t0]`.
pub fn integrate_asymptotic(x0: &Pair, t0: f64, t1: f64, s: &Mat2, ell: Ells, steps: usize) -> Result<Vec<AsymState>> {
    if !(t0 >= 1.0) || !(t1 >= t0) || steps == 0 {
        return Err(Error::Precondition(format!("need 1 ≤ t0 ≤ t1 and steps > 0 (got {t0}, {t1}, {steps})")));
    }
    let z0 = mul(s, x0);
    let inv = inverse(s);
    let l = ell.sq();
    let m2 = [z0[0].norm_sqr(), z0[1].norm_sqr()];
    let ratio = (t1 / t0).ln();
    Ok((0..=steps)
        .map(|k| {
            let t = if k == steps { t1 } else { t0 * (ratio * k as f64 / steps as f64).exp() };
            let lt = (t / t0).ln();
            let z = [0, 1].map(|j| C::from_polar(1.0, -PHASE_COEFF * l[j] * m2[j] * lt) * z0[j]);
            let phase_integral = [0, 1].map(|j| m2[j] * (1.0 + t).ln());
            let w = [0, 1].map(|j| C::from_polar(1.0, PHASE_COEFF * l[j] * phase_integral[j]) * z[j]);
            AsymState { t, x: mul(&inv, &z), z, w, phase_integral }
        })
        .collect())
}

/// `W± = exp((5i/12) ℓ±² ∫₀ᵗ |Z±|² ds/(s+1)) Z±` on a sampled series.
///
/// The integral is a trapezoid sum in `s`; on `[0, t₀]` the modulus is held
/// at its first sample.
pub fn modified_profile(times: &[f64], z: &[Pair], ell: Ells) -> Result<Vec<Pair>> {
    crate::dft::check_len(times.len(), z.len())?;
    if times.windows(2).any(|w| !(w[1] > w[0])) || times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::Precondition("times must be nonnegative and strictly increasing".into()));
    }
    let l = ell.sq();
    let mut acc = [0.0f64; 2];
    let mut out = Vec::with_capacity(z.len());
    for k in 0..z.len() {
        for j in 0..2 {
            if k == 0 {
                acc[j] = z[0][j].norm_sqr() * (1.0 + times[0]).ln();
            } else {
                let (a, b) = (times[k - 1], times[k]);
                acc[j] += 0.5 * (b - a) * (z[k - 1][j].norm_sqr() / (1.0 + a) + z[k][j].norm_sqr() / (1.0 + b));
            }
        }
        out.push([0, 1].map(|j| C::from_polar(1.0, PHASE_COEFF * l[j] * acc[j]) * z[k][j]));
    }
    Ok(out)
}

/// Phase fit of one component at one frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentFit {
    /// `|Z|` at the last snapshot of the window.
    pub amp_limit: f64,
    /// `(max|Z| - min|Z|)/mean|Z|` over the window.
    pub amp_variation: f64,
    /// Slope of unwrapped `arg Z` against `log t`.
    pub slope_fit: f64,
    /// `-(5/12) ℓ² mean|Z|²`.
    pub slope_predicted: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyFit {
    pub xi: f64,
    /// Components `Z₊`, `Z₋`.
    pub plus: ComponentFit,
    pub minus: ComponentFit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModScatFit {
    pub window: (f64, f64),
    /// Snapshots used.
    pub samples: usize,
    pub ell: Ells,
    pub records: Vec<FrequencyFit>,
}

/// Unwrapped phases of a sequence of nonzero complex numbers.
pub fn unwrap_phase(z: &[C]) -> Vec<f64> {
    let mut out = Vec::with_capacity(z.len());
    let mut prev = 0.0;
    for (k, v) in z.iter().enumerate() {
        let mut p = v.arg();
        if k > 0 {
            let two_pi = 2.0 * std::f64::consts::PI;
            p += two_pi * ((prev - p) / two_pi).round();
        }
        out.push(p);
        prev = p;
    }
    out
}

fn fit_component(times: &[f64], z: &[C], l2: f64) -> Result<ComponentFit> {
    let amps: Vec<f64> = z.iter().map(|v| v.norm()).collect();
    if amps.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::DataQuality("vanishing amplitude in the fit window".into()));
    }
    let mean = amps.iter().sum::<f64>() / amps.len() as f64;
    let (lo, hi) = amps.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &a| (l.min(a), h.max(a)));
    let mean2 = amps.iter().map(|a| a * a).sum::<f64>() / amps.len() as f64;
    let logt: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let (slope, _, r2) = linear_fit(&logt, &unwrap_phase(z));
    Ok(ComponentFit {
        amp_limit: *amps.last().unwrap(),
        amp_variation: (hi - lo) / mean,
        slope_fit: slope,
        slope_predicted: -PHASE_COEFF * l2 * mean2,
        r2,
    })
}

/// Index of the positive node of largest `|f̃|` in the last profile.
pub fn argmax_frequency(series: &ProfileSeries) -> Option<usize> {
    let last = series.profiles.last()?;
    (0..series.nodes.len())
        .filter(|&k| series.nodes[k] > 0.0)
        .max_by(|&a, &b| last[a].norm().total_cmp(&last[b].norm()))
}

fn mirror_index(nodes: &[f64], k: usize) -> Option<usize> {
    let target = -nodes[k];
    let tol = 1e-9 * (1.0 + target.abs());
    let i = nodes.partition_point(|&x| x < target - tol);
    (i < nodes.len() && (nodes[i] - target).abs() <= tol).then_some(i)
}

/// `Z = S (f̃(ξ), f̃(-ξ))` along the series at node `k` (positive).
pub fn z_series(series: &ProfileSeries, s: &SMatrix, k: usize) -> Result<Vec<Pair>> {
    let xi = series.nodes[k];
    let km = mirror_index(&series.nodes, k)
        .ok_or_else(|| Error::Misaligned { expected: series.nodes.len(), got: k })?;
    let m = s.at(xi).ok_or_else(|| Error::Precondition(format!("no scattering matrix at ξ = {xi}")))?;
    Ok(series.profiles.iter().map(|p| mul(m, &[p[k], p[km]])).collect())
}

/// Map `Z` back to `X = S⁻¹ Z`.
pub fn x_from_z(s: &Mat2, z: &Pair) -> Pair {
    mul(&inverse(s), z)
}

/// Log-phase fit of `Z±` on a window at the given positive nodes.
///
/// Needs at least 8 snapshots in the window spanning a factor ≥ 8 in `t`.
pub fn fit_modified_scattering(
    series: &ProfileSeries,
    s: &SMatrix,
    ell: Ells,
    window: (f64, f64),
    nodes: &[usize],
) -> Result<ModScatFit> {
    let idx: Vec<usize> = (0..series.len())
        .filter(|&i| {
            let t = series.times[i];
            // snapshot times carry rounding from accumulated steps
            let slack = 1e-9 * (1.0 + t);
            t >= window.0 - slack && t <= window.1 + slack && t > 0.0
        })
        .collect();
    if idx.len() < 8 {
        return Err(Error::Precondition(format!("fit window holds {} snapshots; need 8", idx.len())));
    }
    let (t_a, t_b) = (series.times[idx[0]], series.times[*idx.last().unwrap()]);
    if t_b < 8.0 * t_a * (1.0 - 1e-9) {
        return Err(Error::Precondition(format!("fit window [{t_a}, {t_b}] spans less than a factor 8")));
    }
    let times: Vec<f64> = idx.iter().map(|&i| series.times[i]).collect();
    let l = ell.sq();
    let mut records = Vec::with_capacity(nodes.len());
    for &k in nodes {
        if !(series.nodes.get(k).is_some_and(|&x| x > 0.0)) {
            return Err(Error::InvalidParameter(format!("node {k} is not a positive frequency")));
        }
        let z = z_series(series, s, k)?;
        let zp: Vec<C> = idx.iter().map(|&i| z[i][0]).collect();
        let zm: Vec<C> = idx.iter().map(|&i| z[i][1]).collect();
        records.push(FrequencyFit {
            xi: series.nodes[k],
            plus: fit_component(&times, &zp, l[0])?,
            minus: fit_component(&times, &zm, l[1])?,
        });
    }
    Ok(ModScatFit { window: (t_a, t_b), samples: idx.len(), ell, records })
}

#[cfg(test)]
mod tests;
