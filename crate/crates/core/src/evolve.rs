//! Klein-Gordon evolution `u_tt + (H + 1)u = a u² + b u³` in the spectral
//! variables of a distorted Fourier transform.
//!
//! The state is the pair `(ũ, ũ_t)`. The linear flow is an exact rotation
//! at each frequency and the nonlinearity enters as a kick on `ũ_t`, which
//! is the same splitting as `v ← v + dt·(a u² + b u³)` for
//! `v = u_t - i⟨D⟩u`.

use crate::dft::{multiplier, SpectralTransform};
use crate::error::{Error, Result};
use crate::models::{Coefficient, Parity, Scenario};
use crate::numerics::{jbr, linear_fit, trapezoid_weights, RealGrid};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Largest admissible imaginary part of a reconstructed real field.
pub const REALITY_TOL: f64 = 1e-8;

/// `v = u_t - i⟨D⟩u` on the real grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexState {
    pub t: f64,
    pub v: Vec<Complex64>,
}

fn complexify(f: &[f64]) -> Vec<Complex64> {
    f.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn sup(f: &[f64]) -> f64 {
    f.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `v = u_t - i⟨D⟩u`.
pub fn to_complex(u: &[f64], ut: &[f64], t: f64, plan: &dyn SpectralTransform) -> Result<ComplexState> {
    crate::dft::check_len(u.len(), ut.len())?;
    // ⟨D⟩ maps real functions to real functions; drop the quadrature's imaginary leakage
    let du = multiplier(plan, &|xi| Complex64::new(jbr(xi), 0.0), &complexify(u))?;
    let v = ut.iter().zip(&du).map(|(&a, d)| Complex64::new(a, -d.re)).collect();
    Ok(ComplexState { t, v })
}

/// `u = (v - v̄)/(-2i⟨D⟩)`, `u_t = Re v`.
///
/// Fails when the reconstructed `u` has an imaginary part above
/// [`REALITY_TOL`] relative to its size.
pub fn from_complex(state: &ComplexState, plan: &dyn SpectralTransform) -> Result<(Vec<f64>, Vec<f64>)> {
    let im: Vec<Complex64> = state.v.iter().map(|z| Complex64::new(-z.im, 0.0)).collect();
    let u = multiplier(plan, &|xi| Complex64::new(1.0 / jbr(xi), 0.0), &im)?;
    let scale = u.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let resid = u.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if resid > REALITY_TOL * scale.max(1.0) {
        return Err(Error::InconsistentState(format!("imaginary part {resid:.3e} in reconstructed u")));
    }
    Ok((u.iter().map(|z| z.re).collect(), state.v.iter().map(|z| z.re).collect()))
}

/// Time integrator built from Strang steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Linear half step, nonlinear kick, linear half step.
    Strang,
    /// Triple-jump composition of Strang steps, fourth order.
    Yoshida4,
}

/// Treatment of the discrete spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Projection {
    /// The plan must represent the whole data space.
    None,
    /// Evolve `P_c u`; bound-state components are dropped at every kick.
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Snapshot times in `[0, t_end]`, rounded to the nearest step.
    pub snapshots: Vec<f64>,
    /// Re-symmetrise to this parity every [`PARITY_PERIOD`] steps.
    pub enforce_parity: Option<Parity>,
    /// Include the cubic term `b u³`.
    pub cubic: bool,
    pub projection: Projection,
    pub scheme: Scheme,
}

pub const PARITY_PERIOD: usize = 100;

impl EvolveConfig {
    /// Strang steps of size `dt` with snapshots every `every` time units.
    pub fn new(dt: f64, t_end: f64, every: f64) -> Self {
        let count = (t_end / every).floor() as usize;
        Self {
            dt,
            t_end,
            snapshots: (0..=count).map(|k| k as f64 * every).collect(),
            enforce_parity: None,
            cubic: true,
            projection: Projection::None,
            scheme: Scheme::Strang,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidParameter(format!("dt must be positive (got {})", self.dt)));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidParameter(format!("t_end must be nonnegative (got {})", self.t_end)));
        }
        if let Some(&t) = self.snapshots.iter().find(|&&t| !(0.0..=self.t_end + 1e-9).contains(&t)) {
            return Err(Error::InvalidParameter(format!("snapshot time {t} outside [0, {}]", self.t_end)));
        }
        if self.enforce_parity == Some(Parity::None) {
            return Err(Error::InvalidParameter("parity enforcement needs Even or Odd".into()));
        }
        Ok(())
    }
}

/// Field and profile at one snapshot time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
    /// `g̃ = e^{it⟨ξ⟩} ṽ` on the plan's frequency nodes.
    pub profile: Vec<Complex64>,
    pub energy: f64,
    pub sup: f64,
    /// `sup |u(x) - s·u(-x)|` for the parity `s` of the data (0 if none).
    pub parity_defect: f64,
    /// Largest imaginary part of `F̃⁻¹ ũ`.
    pub imaginary_residual: f64,
    /// `sup |u|` on `|x| > L - 2`.
    pub edge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSeries {
    pub nodes: Vec<f64>,
    pub spacing: f64,
    pub times: Vec<f64>,
    pub profiles: Vec<Vec<Complex64>>,
}

impl ProfileSeries {
    pub fn from_snapshots(plan: &dyn SpectralTransform, snaps: &[Snapshot]) -> Self {
        Self {
            nodes: plan.nodes().to_vec(),
            spacing: plan.spacing(),
            times: snaps.iter().map(|s| s.t).collect(),
            profiles: snaps.iter().map(|s| s.profile.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRecord {
    pub times: Vec<f64>,
    pub sup: Vec<f64>,
    /// `√(1+t)·sup|u|`.
    pub products: Vec<f64>,
    /// Slope of `log sup|u|` against `log(1+t)` over `t ≥ 10`; `None`
    /// when the solution vanishes identically.
    pub exponent: Option<f64>,
    pub r2: Option<f64>,
}

/// Earliest time used by the decay fit.
pub const DECAY_FIT_START: f64 = 10.0;

/// Least-squares decay exponent of `sup|u|` from `(t, sup)` pairs.
pub fn measure_decay(samples: &[(f64, f64)]) -> Result<DecayRecord> {
    if let Some(&(t, s)) = samples.iter().find(|(t, s)| !(t.is_finite() && *t >= 0.0 && s.is_finite() && *s >= 0.0)) {
        return Err(Error::DataQuality(format!("invalid decay sample ({t}, {s})")));
    }
    let fit: Vec<(f64, f64)> = samples.iter().copied().filter(|(t, _)| *t >= DECAY_FIT_START).collect();
    if fit.len() < 5 {
        return Err(Error::Precondition(format!(
            "decay fit needs at least 5 snapshots with t ≥ {DECAY_FIT_START} (got {})",
            fit.len()
        )));
    }
    let times: Vec<f64> = samples.iter().map(|p| p.0).collect();
    let sups: Vec<f64> = samples.iter().map(|p| p.1).collect();
    let products = samples.iter().map(|(t, s)| (1.0 + t).sqrt() * s).collect();
    let (exponent, r2) = if fit.iter().all(|(_, s)| *s == 0.0) {
        (None, None)
    } else if fit.iter().any(|(_, s)| *s == 0.0) {
        return Err(Error::DataQuality("sup|u| vanishes at some but not all fit times".into()));
    } else {
        let x: Vec<f64> = fit.iter().map(|(t, _)| (1.0 + t).ln()).collect();
        let y: Vec<f64> = fit.iter().map(|(_, s)| s.ln()).collect();
        let (slope, _, r2) = linear_fit(&x, &y);
        (Some(slope), Some(r2))
    };
    Ok(DecayRecord { times, sup: sups, products, exponent, r2 })
}

/// `f - ∑ ⟨φ_k, f⟩ φ_k` for `L²`-normalised real eigenfunctions.
pub fn continuous_projection(eigenfunctions: &[Vec<f64>], grid: &RealGrid, f: &[f64]) -> Result<Vec<f64>> {
    crate::dft::check_len(grid.len(), f.len())?;
    let w = trapezoid_weights(grid);
    let mut out = f.to_vec();
    for (k, phi) in eigenfunctions.iter().enumerate() {
        crate::dft::check_len(grid.len(), phi.len())?;
        let nrm: f64 = phi.iter().zip(&w).map(|(p, w)| w * p * p).sum();
        if (nrm - 1.0).abs() > 1e-8 {
            return Err(Error::Precondition(format!("eigenfunction {k} has ∫φ² = {nrm}")));
        }
        let c: f64 = phi.iter().zip(f).zip(&w).map(|((p, v), w)| w * p * v).sum();
        out.iter_mut().zip(phi).for_each(|(o, p)| *o -= c * p);
    }
    Ok(out)
}

/// `½∫[u_t² + u_x² + u² + V u²] - ∫[a u³/3 + b u⁴/4]`, the conserved
/// energy of `u_tt + (H + 1)u = a u² + b u³`, with fourth-order differences
/// for `u_x` and `u` taken to vanish beyond the grid.
pub fn energy(u: &[f64], ut: &[f64], v: &[f64], a: &[f64], b: &[f64], grid: &RealGrid) -> Result<f64> {
    let n = grid.len();
    for len in [u.len(), ut.len(), v.len(), a.len(), b.len()] {
        crate::dft::check_len(n, len)?;
    }
    let h = grid.spacing();
    let at = |j: isize| if j < 0 || j >= n as isize { 0.0 } else { u[j as usize] };
    let w = trapezoid_weights(grid);
    let mut e = 0.0;
    for j in 0..n {
        let i = j as isize;
        let ux = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
        let q = 0.5 * (ut[j] * ut[j] + ux * ux + (1.0 + v[j]) * u[j] * u[j]);
        let p = a[j] * u[j].powi(3) / 3.0 + b[j] * u[j].powi(4) / 4.0;
        e += w[j] * (q - p);
    }
    Ok(e)
}

/// The evolution operator for one scenario on one plan.
pub struct Evolver<'a> {
    plan: &'a dyn SpectralTransform,
    omega: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    weights: Vec<f64>,
    pub u: Vec<Complex64>,
    pub ut: Vec<Complex64>,
    pub t: f64,
}

impl<'a> Evolver<'a> {
    /// Spectral state for data `(u0, u1)`.
    pub fn new(plan: &'a dyn SpectralTransform, a: &Coefficient, b: &Coefficient, u0: &[f64], u1: &[f64]) -> Result<Self> {
        let g = plan.grid();
        crate::dft::check_len(g.len(), u0.len())?;
        crate::dft::check_len(g.len(), u1.len())?;
        Ok(Self {
            plan,
            omega: plan.nodes().iter().map(|&x| jbr(x)).collect(),
            a: a.sample(g),
            b: b.sample(g),
            weights: trapezoid_weights(g),
            u: plan.forward_real(u0)?,
            ut: plan.forward_real(u1)?,
            t: 0.0,
        })
    }

    fn rotate(&mut self, tau: f64) {
        for ((u, ut), &w) in self.u.iter_mut().zip(self.ut.iter_mut()).zip(&self.omega) {
            let (s, c) = (w * tau).sin_cos();
            let nu = *u * c + *ut * (s / w);
            let nut = *ut * c - *u * (w * s);
            *u = nu;
            *ut = nut;
        }
    }

    /// `u` on the grid (real part) and the largest imaginary part seen.
    pub fn field(&self) -> Result<(Vec<f64>, f64)> {
        let z = self.plan.inverse(&self.u)?;
        let im = z.iter().fold(0.0f64, |m, v| m.max(v.im.abs()));
        Ok((z.iter().map(|v| v.re).collect(), im))
    }

    pub fn velocity(&self) -> Result<Vec<f64>> {
        Ok(self.plan.inverse(&self.ut)?.iter().map(|v| v.re).collect())
    }

    fn kick(&mut self, tau: f64) -> Result<()> {
        let (u, _) = self.field()?;
        let n: Vec<Complex64> =
            u.iter().zip(&self.a).zip(&self.b).map(|((&u, &a), &b)| Complex64::new(u * u * (a + b * u), 0.0)).collect();
        let nt = self.plan.forward(&n)?;
        for (ut, d) in self.ut.iter_mut().zip(&nt) {
            *ut += d * tau;
        }
        Ok(())
    }

    fn strang(&mut self, dt: f64) -> Result<()> {
        self.rotate(0.5 * dt);
        self.kick(dt)?;
        self.rotate(0.5 * dt);
        Ok(())
    }

    /// One step of the chosen scheme; `t` advances by `dt`.
    pub fn step(&mut self, dt: f64, scheme: Scheme) -> Result<()> {
        match scheme {
            Scheme::Strang => self.strang(dt)?,
            Scheme::Yoshida4 => {
                let c = 2f64.powf(1.0 / 3.0);
                let w1 = 1.0 / (2.0 - c);
                let w0 = -c / (2.0 - c);
                self.strang(w1 * dt)?;
                self.strang(w0 * dt)?;
                self.strang(w1 * dt)?;
            }
        }
        self.t += dt;
        if self.u.iter().chain(&self.ut).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::BlowUp { t: self.t });
        }
        Ok(())
    }

    /// Spectral energy: exact quadratic part plus the potential terms on the grid.
    pub fn energy(&self) -> Result<f64> {
        let d = self.plan.spacing();
        let quad: f64 = self
            .u
            .iter()
            .zip(&self.ut)
            .zip(&self.omega)
            .map(|((u, ut), w)| ut.norm_sqr() + w * w * u.norm_sqr())
            .sum::<f64>()
            * 0.5
            * d;
        let (u, _) = self.field()?;
        let pot: f64 = u
            .iter()
            .zip(&self.a)
            .zip(&self.b)
            .zip(&self.weights)
            .map(|(((u, a), b), w)| w * (a * u.powi(3) / 3.0 + b * u.powi(4) / 4.0))
            .sum();
        Ok(quad - pot)
    }

    /// `g̃ = e^{it⟨ξ⟩}(ũ_t - i⟨ξ⟩ũ)`.
    pub fn profile(&self) -> Vec<Complex64> {
        self.u
            .iter()
            .zip(&self.ut)
            .zip(&self.omega)
            .map(|((u, ut), &w)| Complex64::from_polar(1.0, self.t * w) * (ut - Complex64::i() * w * u))
            .collect()
    }

    /// Replace the state by its even or odd part. A no-op on plans that
    /// already fix the parity, since the round trip is not exactly unitary.
    pub fn symmetrize(&mut self, parity: Parity) -> Result<()> {
        if self.plan.fixed_parity() == Some(parity) {
            return Ok(());
        }
        let s = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::None => return Ok(()),
        };
        let n = self.plan.grid().len();
        for which in [0, 1] {
            let src = if which == 0 { &self.u } else { &self.ut };
            let f = self.plan.inverse(src)?;
            let sym: Vec<Complex64> = (0..n).map(|j| 0.5 * (f[j].re + s * f[n - 1 - j].re)).map(|r| Complex64::new(r, 0.0)).collect();
            let g = self.plan.forward(&sym)?;
            if which == 0 {
                self.u = g;
            } else {
                self.ut = g;
            }
        }
        Ok(())
    }
}

/// Parity of sampled data: `Some` when `f` is even or odd to `1e-12` relative.
pub fn detect_parity(f: &[f64]) -> Option<Parity> {
    let n = f.len();
    let scale = sup(f);
    if scale == 0.0 {
        return None;
    }
    let even = (0..n).fold(0.0f64, |m, j| m.max((f[j] - f[n - 1 - j]).abs()));
    let odd = (0..n).fold(0.0f64, |m, j| m.max((f[j] + f[n - 1 - j]).abs()));
    if odd <= 1e-12 * scale {
        Some(Parity::Odd)
    } else if even <= 1e-12 * scale {
        Some(Parity::Even)
    } else {
        None
    }
}

fn parity_defect(u: &[f64], parity: Option<Parity>) -> f64 {
    let s = match parity {
        Some(Parity::Even) => -1.0,
        Some(Parity::Odd) => 1.0,
        _ => return 0.0,
    };
    let n = u.len();
    (0..n).fold(0.0f64, |m, j| m.max((u[j] + s * u[n - 1 - j]).abs()))
}

/// A finished run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Run {
    pub scenario: String,
    pub config: EvolveConfig,
    /// Step actually used (`t_end` divided into whole steps).
    pub dt: f64,
    pub steps: usize,
    pub snapshots: Vec<Snapshot>,
    pub series: ProfileSeries,
    pub decay: Option<DecayRecord>,
    /// Largest relative energy excursion from the initial value.
    pub energy_drift: f64,
    pub max_parity_defect: f64,
    pub max_imaginary_residual: f64,
    pub max_edge: f64,
    pub warnings: Vec<String>,
}

/// Above this `L²` size of `(u0, u1)` the run is flagged as not small.
pub const SMALL_DATA: f64 = 0.2;

/// Evolve `(u0, u1)` under the scenario's equation up to `cfg.t_end`.
pub fn evolve_perturbation(
    scenario: &Scenario,
    plan: &dyn SpectralTransform,
    u0: &[f64],
    u1: &[f64],
    cfg: &EvolveConfig,
) -> Result<Run> {
    cfg.validate()?;
    if plan.discards_bound_states() && cfg.projection == Projection::None {
        return Err(Error::Precondition(
            "H has bound states on this subspace; use continuous projection or restrict the parity".into(),
        ));
    }
    let grid = plan.grid();
    let mut warnings = Vec::new();
    let w = trapezoid_weights(grid);
    let size: f64 = u0.iter().zip(u1).zip(&w).map(|((a, b), w)| w * (a * a + b * b)).sum::<f64>().sqrt();
    if size > SMALL_DATA {
        warnings.push(format!("data norm {size:.3} exceeds {SMALL_DATA}; smallness is not guaranteed"));
    }
    let parity = cfg.enforce_parity.or_else(|| match (detect_parity(u0), detect_parity(u1)) {
        (Some(p), Some(q)) if p == q => Some(p),
        (Some(p), None) if sup(u1) == 0.0 => Some(p),
        (None, Some(p)) if sup(u0) == 0.0 => Some(p),
        _ => None,
    });

    let steps = (cfg.t_end / cfg.dt).ceil() as usize;
    let dt = if steps == 0 { cfg.dt } else { cfg.t_end / steps as f64 };
    if dt > 0.5 / plan.spacing() {
        return Err(Error::InvalidParameter(format!("dt = {dt} exceeds half the inverse frequency spacing")));
    }
    let omega_max = plan.nodes().iter().fold(0.0f64, |m, &x| m.max(jbr(x)));
    if dt * omega_max > std::f64::consts::PI {
        warnings.push(format!("dt·⟨Ξ⟩ = {:.2} > π: the top frequencies are under-resolved in time", dt * omega_max));
    }
    let mut snap_steps: Vec<usize> = cfg.snapshots.iter().map(|t| (t / dt).round() as usize).collect();
    snap_steps.sort_unstable();
    snap_steps.dedup();

    let cubic = if cfg.cubic { scenario.cubic.clone() } else { Coefficient::zero() };
    let mut ev = Evolver::new(plan, &scenario.quadratic, &cubic, u0, u1)?;
    let half = grid.half_width();
    let mut snapshots = Vec::with_capacity(snap_steps.len());
    let mut e0 = None;
    let mut drift = 0.0f64;
    let mut next = 0;
    for k in 0..=steps {
        if k > 0 {
            ev.step(dt, cfg.scheme)?;
            if let Some(p) = cfg.enforce_parity {
                if k % PARITY_PERIOD == 0 {
                    ev.symmetrize(p)?;
                }
            }
        }
        if next < snap_steps.len() && snap_steps[next] == k {
            next += 1;
            let (u, im) = ev.field()?;
            let s = sup(&u);
            if !s.is_finite() || s > 1e6 {
                return Err(Error::BlowUp { t: ev.t });
            }
            let energy = ev.energy()?;
            let e_ref = *e0.get_or_insert(energy);
            if e_ref != 0.0 {
                drift = drift.max(((energy - e_ref) / e_ref).abs());
            }
            let edge = grid
                .nodes()
                .iter()
                .zip(&u)
                .filter(|(x, _)| x.abs() > half - 2.0)
                .fold(0.0f64, |m, (_, v)| m.max(v.abs()));
            snapshots.push(Snapshot {
                t: ev.t,
                parity_defect: parity_defect(&u, parity),
                u,
                profile: ev.profile(),
                energy,
                sup: s,
                imaginary_residual: im,
                edge,
            });
        }
    }

    let max_parity_defect = snapshots.iter().fold(0.0f64, |m, s| m.max(s.parity_defect));
    let max_imaginary_residual = snapshots.iter().fold(0.0f64, |m, s| m.max(s.imaginary_residual));
    let max_edge = snapshots.iter().fold(0.0f64, |m, s| m.max(s.edge));
    if cfg.enforce_parity.is_none() && max_parity_defect > 1e-8 {
        warnings.push(format!("parity drift {max_parity_defect:.3e}"));
    }
    if max_imaginary_residual > REALITY_TOL {
        warnings.push(format!("imaginary residual {max_imaginary_residual:.3e}"));
    }
    if cfg.t_end > half - 10.0 {
        warnings.push(format!("t_end = {} exceeds L - 10 = {}; boundary reflections possible", cfg.t_end, half - 10.0));
    }
    let samples: Vec<(f64, f64)> = snapshots.iter().map(|s| (s.t, s.sup)).collect();
    let decay = measure_decay(&samples).ok();
    Ok(Run {
        scenario: scenario.name.clone(),
        config: cfg.clone(),
        dt,
        steps,
        series: ProfileSeries::from_snapshots(plan, &snapshots),
        snapshots,
        decay,
        energy_drift: drift,
        max_parity_defect,
        max_imaginary_residual,
        max_edge,
        warnings,
    })
}
