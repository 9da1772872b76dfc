//! The singular quadratic symbol and the normal-form operator `T(g, g)`,
//! with the renormalised profile `f = g - T(g, g)`.
//!
//! The symbol is `Z^ε = ℓ_ε a^ε / (8π⟨η⟩⟨σ⟩) [√(π/2) δ(p) + ε φ*(p) p.v. φ̂(p)/(ip)]`
//! with `p = λξ - ι₁μη - ι₂νσ`, and
//! `T̃(ξ) = ∑ -ι₁ι₂ ∬ e^{itΦ} g̃_{ι₁}(η) g̃_{ι₂}(σ) Z^ε / (iΦ) dη dσ`,
//! `Φ = ⟨ξ⟩ - ι₁⟨η⟩ - ι₂⟨σ⟩`, summed over all sign choices.

use crate::dft::Cutoff;
use crate::error::{Error, Result};
use crate::evolve::ProfileSeries;
use crate::jost::ScatteringData;
use crate::numerics::{gauss_legendre, hermite5, jbr, FreqGrid, HalfLineInterpolator};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

type C = Complex64;
const I: C = C::new(0.0, 1.0);
const ZERO: C = C::new(0.0, 0.0);

/// Default dyadic depth of the principal-value localisation.
pub const DEFAULT_D: u32 = 10;

/// Reflection coefficients below this are treated as numerical noise.
pub const REFLECTION_FLOOR: f64 = 1e-6;

/// Lower bound enforced on `|Φ|·min(⟨ξ⟩, ⟨η⟩, ⟨σ⟩)` at quadrature nodes.
pub const PHASE_FLOOR_MIN: f64 = 1e-3;

const TABLE_POINTS: usize = 4096;
const MOMENTS: usize = 40;

/// `χ₊` on `[-2, 2]` tabulated for fast evaluation (quintic Hermite with
/// exact `ρ`, `ρ'`).
#[derive(Debug, Clone)]
struct ChiTable {
    h: f64,
    chi: Vec<f64>,
    rho: Vec<f64>,
    drho: Vec<f64>,
}

impl ChiTable {
    fn new(cut: &Cutoff) -> Self {
        let h = 4.0 / TABLE_POINTS as f64;
        let xs: Vec<f64> = (0..=TABLE_POINTS).map(|k| -2.0 + k as f64 * h).collect();
        let rho: Vec<f64> = xs.iter().map(|&x| cut.rho(x)).collect();
        let drho = xs
            .iter()
            .zip(&rho)
            .map(|(&x, &r)| {
                let s = 1.0 - 0.25 * x * x;
                if s <= 0.0 {
                    0.0
                } else {
                    -r * 0.5 * x / (s * s)
                }
            })
            .collect();
        // χ₊ by accumulating exact panel integrals
        let mut chi = Vec::with_capacity(xs.len());
        for &x in &xs {
            chi.push(cut.chi_plus(x));
        }
        Self { h, chi, rho, drho }
    }

    fn chi_plus(&self, x: f64) -> f64 {
        if x <= -2.0 {
            return 0.0;
        }
        if x >= 2.0 {
            return 1.0;
        }
        let s = (x + 2.0) / self.h;
        let i = (s.floor() as usize).min(TABLE_POINTS - 1);
        let u = s - i as f64;
        hermite5(
            self.h,
            (self.chi[i], self.rho[i], self.drho[i]),
            (self.chi[i + 1], self.rho[i + 1], self.drho[i + 1]),
            u,
        )
    }
}

/// The bump `φ = (3/2) ρ (χ₋² + χ₊²)`, the even part of `-∂x(χ₋)³`, its
/// flat transform `φ̂`, and the Littlewood-Paley cutoff used for `φ*`.
#[derive(Debug, Clone)]
pub struct PhiKernel {
    /// Support radius `r` (`φ` vanishes for `|x| ≥ r`).
    pub radius: f64,
    pub d: u32,
    cut: Cutoff,
    table: ChiTable,
    scale: f64,
    /// `∫ x^{2k} φ` for the even moments.
    moments: Vec<f64>,
    gl: (Vec<f64>, Vec<f64>),
}

/// Build the kernel for a support radius `r > 0` and depth `D ≥ 1`.
pub fn build_phi_kernel(radius: f64, d: u32) -> Result<PhiKernel> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter(format!("support radius must be positive (got {radius})")));
    }
    if d < 1 {
        return Err(Error::InvalidParameter("D must be at least 1".into()));
    }
    let cut = Cutoff::new();
    let table = ChiTable::new(&cut);
    let mut k = PhiKernel { radius, d, cut, table, scale: 1.0, moments: Vec::new(), gl: gauss_legendre(24) };
    let mass = k.integrate(|x| k.phi(x));
    k.scale = 1.0 / mass;
    k.moments = (0..MOMENTS).map(|j| k.integrate(|x| x.powi(2 * j as i32) * k.phi(x))).collect();
    Ok(k)
}

impl PhiKernel {
    /// Composite Gauss-Legendre over `[-r, r]`.
    fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let panels = 32;
        let h = 2.0 * self.radius / panels as f64;
        let (xs, ws) = &self.gl;
        let mut acc = 0.0;
        for p in 0..panels {
            let mid = -self.radius + (p as f64 + 0.5) * h;
            for (x, w) in xs.iter().zip(ws) {
                acc += w * 0.5 * h * f(mid + 0.5 * h * x);
            }
        }
        acc
    }

    /// `x ↦ 2x/r`, mapping the support onto that of `ρ`.
    fn local(&self, x: f64) -> f64 {
        2.0 * x / self.radius
    }

    /// `χ₊` stretched to support radius `r`.
    pub fn chi_plus(&self, x: f64) -> f64 {
        self.table.chi_plus(self.local(x))
    }
    pub fn chi_minus(&self, x: f64) -> f64 {
        self.chi_plus(-x)
    }
    fn rho(&self, x: f64) -> f64 {
        self.cut.rho(self.local(x)) * 2.0 / self.radius
    }

    /// `φ(x)`, even, `∫φ = 1`.
    pub fn phi(&self, x: f64) -> f64 {
        let (cp, cm) = (self.chi_plus(x), self.chi_minus(x));
        self.scale * 1.5 * self.rho(x) * (cp * cp + cm * cm)
    }

    /// `∂x(χ₋)³ = -3χ₋²ρ`.
    pub fn d_chi_minus_cubed(&self, x: f64) -> f64 {
        let c = self.chi_minus(x);
        -3.0 * c * c * self.rho(x)
    }

    /// `φ̂(p) = (2π)^{-1/2} ∫ φ(x) cos(px) dx`.
    pub fn phi_hat(&self, p: f64) -> f64 {
        let z = p * self.radius;
        if z.abs() <= 4.0 {
            // even-moment series, terms bounded by (pr)^{2k}/(2k)!
            let mut acc = 0.0;
            let mut term = 1.0;
            for (k, m) in self.moments.iter().enumerate() {
                acc += term * m;
                if (term * m).abs() < 1e-18 {
                    break;
                }
                term *= -p * p / (((2 * k + 1) * (2 * k + 2)) as f64);
            }
            acc / (2.0 * PI).sqrt()
        } else {
            self.integrate(|x| self.phi(x) * (p * x).cos()) / (2.0 * PI).sqrt()
        }
    }

    /// Smooth cutoff equal to 1 on `|x| ≤ 1` and 0 on `|x| ≥ 2`.
    pub fn lp_cut(&self, x: f64) -> f64 {
        self.table.chi_plus(6.0 - 4.0 * x.abs())
    }

    /// `φ*(p, η, σ) = φ_{≤-D}(p R(η, σ))`.
    pub fn phi_star(&self, p: f64, eta: f64, sigma: f64) -> f64 {
        self.lp_cut(2f64.powi(self.d as i32) * p * r_factor(eta, sigma))
    }

    /// Residual of `(χ₋)³^(ξ) = √(π/2)δ - φ̂(ξ)/(iξ) + ψ̂(ξ)` at `ξ ≠ 0`, with
    /// the left side computed as `(∂x(χ₋)³)^(ξ)/(iξ)` by direct quadrature and
    /// `ψ = (χ₋)³ - ∫_x^∞ φ` transformed independently.
    pub fn decomposition_residual(&self, xi: f64) -> f64 {
        let ft = |f: &dyn Fn(f64) -> f64| -> C {
            let re = self.integrate(|x| f(x) * (xi * x).cos());
            let im = -self.integrate(|x| f(x) * (xi * x).sin());
            C::new(re, im) / (2.0 * PI).sqrt()
        };
        let lhs = ft(&|x| self.d_chi_minus_cubed(x)) / (I * xi);
        let psi = |x: f64| {
            // ∫_x^r φ by Gauss-Legendre on [x, r]
            let (xs, ws) = &self.gl;
            let h = self.radius - x;
            let panels = 16;
            let hp = h / panels as f64;
            let mut tail = 0.0;
            for k in 0..panels {
                let lo = x + k as f64 * hp;
                tail += xs.iter().zip(ws).map(|(s, w)| w * 0.5 * hp * self.phi(lo + 0.5 * hp * (s + 1.0))).sum::<f64>();
            }
            self.chi_minus(x).powi(3) - tail
        };
        let rhs = -C::new(self.phi_hat(xi), 0.0) / (I * xi) + ft(&psi);
        (lhs - rhs).norm()
    }
}

/// `R(η, σ) = ⟨η⟩⟨σ⟩/(⟨η⟩ + ⟨σ⟩)`.
pub fn r_factor(eta: f64, sigma: f64) -> f64 {
    let (a, b) = (jbr(eta), jbr(sigma));
    a * b / (a + b)
}

/// `Φ_{ι₁ι₂}(ξ, η, σ) = ⟨ξ⟩ - ι₁⟨η⟩ - ι₂⟨σ⟩`.
pub fn phase(i1: i8, i2: i8, xi: f64, eta: f64, sigma: f64) -> f64 {
    jbr(xi) - i1 as f64 * jbr(eta) - i2 as f64 * jbr(sigma)
}

#[derive(Debug, Clone)]
enum Coefficients {
    Flat,
    Distorted { t: HalfLineInterpolator, rp: HalfLineInterpolator, rm: HalfLineInterpolator, cutoff: f64 },
}

/// Quadrature controls for [`normal_form_t`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalFormQuadrature {
    /// Largest η-panel width.
    pub eta_panel: f64,
    /// Gauss-Legendre points per η-panel.
    pub eta_order: usize,
    /// Gauss-Legendre points per p-panel of the principal value.
    pub pv_order: usize,
}

impl Default for NormalFormQuadrature {
    fn default() -> Self {
        Self { eta_panel: 0.1, eta_order: 4, pv_order: 16 }
    }
}

/// Everything needed to evaluate `T̃(g, g)`.
#[derive(Debug, Clone)]
pub struct NormalFormPlan {
    pub kernel: PhiKernel,
    pub ell_plus: f64,
    pub ell_minus: f64,
    pub quadrature: NormalFormQuadrature,
    coeffs: Coefficients,
    /// Terms carrying a reflection coefficient are skipped when `max|R±|` is below this.
    pub reflection_floor: f64,
    reflectionless: bool,
}

impl NormalFormPlan {
    /// `V ≡ 0`: `T = 1`, `R± = 0`.
    pub fn flat(ell_plus: f64, ell_minus: f64, d: u32) -> Result<Self> {
        Ok(Self {
            kernel: build_phi_kernel(2.0, d)?,
            ell_plus,
            ell_minus,
            quadrature: NormalFormQuadrature::default(),
            coeffs: Coefficients::Flat,
            reflection_floor: REFLECTION_FLOOR,
            reflectionless: true,
        })
    }

    /// Coefficients interpolated from scattering data.
    pub fn new(data: &ScatteringData, ell_plus: f64, ell_minus: f64, d: u32) -> Result<Self> {
        let f = &data.freqs;
        let order = 6;
        let rmax = data.r_plus.iter().chain(&data.r_minus).fold(0.0f64, |m, r| m.max(r.norm()));
        let floor = REFLECTION_FLOOR;
        Ok(Self {
            kernel: build_phi_kernel(2.0, d)?,
            ell_plus,
            ell_minus,
            quadrature: NormalFormQuadrature::default(),
            coeffs: Coefficients::Distorted {
                t: HalfLineInterpolator::new(f, &data.t, order),
                rp: HalfLineInterpolator::new(f, &data.r_plus, order),
                rm: HalfLineInterpolator::new(f, &data.r_minus, order),
                cutoff: f.cutoff(),
            },
            reflection_floor: floor,
            reflectionless: rmax <= floor,
        })
    }

    /// Same plan with another depth `D`.
    pub fn with_depth(&self, d: u32) -> Result<Self> {
        Ok(Self { kernel: build_phi_kernel(self.kernel.radius, d)?, ..self.clone() })
    }

    pub fn reflectionless(&self) -> bool {
        self.reflectionless
    }

    fn ell(&self, eps: i8) -> f64 {
        if eps > 0 {
            self.ell_plus
        } else {
            self.ell_minus
        }
    }

    /// `a^ε_λ(ξ)`; interpolates only the one table entry it needs.
    pub fn coefficient(&self, eps: i8, lambda: i8, xi: f64) -> C {
        let one = C::new(1.0, 0.0);
        let pos = xi > 0.0;
        // which of (1, T, R₊, R₋, 0) the coefficient is
        let which = match (eps > 0, lambda > 0, pos) {
            (false, true, true) | (true, true, false) => return one,
            (false, false, false) | (true, false, true) => return ZERO,
            (false, true, false) | (true, true, true) => 0,
            (true, false, false) => 1,
            (false, false, true) => 2,
        };
        match &self.coeffs {
            Coefficients::Flat => {
                if which == 0 {
                    one
                } else {
                    ZERO
                }
            }
            Coefficients::Distorted { t, rp, rm, cutoff } => {
                let r = xi.abs().min(*cutoff);
                [t, rp, rm][which].eval(r)
            }
        }
    }

    /// Smallest `|Φ_{ι₁ι₂}(ξ,η,σ)|·min(⟨ξ⟩,⟨η⟩,⟨σ⟩)` over `ξ = η + σ` with
    /// `η, σ` on `nodes`, all sign pairs.
    pub fn phase_floor(nodes: &[f64]) -> f64 {
        let mut worst = f64::INFINITY;
        for &eta in nodes {
            for &sigma in nodes {
                let xi = eta + sigma;
                let m = jbr(xi).min(jbr(eta)).min(jbr(sigma));
                for (i1, i2) in SIGNS2 {
                    worst = worst.min(phase(i1, i2, xi, eta, sigma).abs() * m);
                }
            }
        }
        worst
    }
}

const SIGNS2: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

fn conj_if(z: C, iota: i8) -> C {
    if iota > 0 {
        z
    } else {
        z.conj()
    }
}

/// Which pieces of `T̃` to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSelection {
    pub iotas: Vec<(i8, i8)>,
    pub delta: bool,
    pub pv: bool,
}

impl Default for TermSelection {
    fn default() -> Self {
        Self { iotas: SIGNS2.to_vec(), delta: true, pv: true }
    }
}

/// `T̃(g, g)(t, ξ)` at each requested `ξ`; `g` is evaluated off-grid.
pub fn normal_form_t(plan: &NormalFormPlan, g: &dyn Fn(f64) -> C, cutoff: f64, t: f64, xis: &[f64]) -> Result<Vec<C>> {
    normal_form_terms(plan, g, cutoff, t, xis, &TermSelection::default())
}

/// [`normal_form_t`] restricted to a subset of terms. `g` is taken to
/// vanish outside `[-cutoff, cutoff]`.
pub fn normal_form_terms(
    plan: &NormalFormPlan,
    g: &dyn Fn(f64) -> C,
    cutoff: f64,
    t: f64,
    xis: &[f64],
    sel: &TermSelection,
) -> Result<Vec<C>> {
    let q = plan.quadrature;
    let (ex, ew) = gauss_legendre(q.eta_order);
    let (px, pw) = gauss_legendre(q.pv_order);
    let signs: &[i8] = if plan.reflectionless { &[1] } else { &[1, -1] };
    let two_d = 2f64.powi(plan.kernel.d as i32);
    let gv = |x: f64| if x.abs() > cutoff { ZERO } else { g(x) };
    let mut out = Vec::with_capacity(xis.len());
    for &xi in xis {
        let mut total = ZERO;
        // conj a^ε_λ(ξ)
        let a_xi = |eps: i8, l: i8| plan.coefficient(eps, l, xi).conj();
        for &(i1, i2) in &sel.iotas {
            for &l in signs {
                for &mu in signs {
                    for &nu in signs {
                        let axi = [a_xi(1, l), a_xi(-1, l)];
                        if axi.iter().all(|z| *z == ZERO) {
                            continue;
                        }
                        // σ(η, p) = ι₂ν(λξ - ι₁μη - p)
                        let lam_xi = l as f64 * xi;
                        let c1 = (i1 * mu) as f64;
                        let c2 = (i2 * nu) as f64;
                        let sig = |eta: f64, p: f64| c2 * (lam_xi - c1 * eta - p);
                        // η range keeping |σ(η, 0)| ≤ cutoff
                        let (a, b) = {
                            let u = c1 * (lam_xi - cutoff);
                            let v = c1 * (lam_xi + cutoff);
                            (u.min(v).max(-cutoff), u.max(v).min(cutoff))
                        };
                        if !(b > a) {
                            continue;
                        }
                        let mut breaks = vec![a, b];
                        for s in [0.0, c1 * lam_xi] {
                            if s > a && s < b {
                                breaks.push(s);
                            }
                        }
                        breaks.sort_by(f64::total_cmp);
                        let jxi = jbr(xi);
                        let sqrt_half_pi = (PI / 2.0).sqrt();
                        let mut acc = ZERO;
                        for w in breaks.windows(2) {
                            let len = w[1] - w[0];
                            let panels = (len / q.eta_panel).ceil().max(1.0) as usize;
                            let h = len / panels as f64;
                            for pi in 0..panels {
                                let mid = w[0] + (pi as f64 + 0.5) * h;
                                for (x, wt) in ex.iter().zip(&ew) {
                                    let eta = mid + 0.5 * h * x;
                                    let weight = wt * 0.5 * h;
                                    let ge = conj_if(gv(eta), i1);
                                    if ge == ZERO {
                                        continue;
                                    }
                                    let jeta = jbr(eta);
                                    // ℓ_ε conj a^ε_λ(ξ) (a^ε_μ(η))_{ι₁}
                                    let mut left = [ZERO; 2];
                                    for (k, eps) in [1i8, -1].into_iter().enumerate() {
                                        if axi[k] != ZERO {
                                            left[k] = axi[k] * conj_if(plan.coefficient(eps, mu, eta), i1) * plan.ell(eps);
                                        }
                                    }
                                    if left == [ZERO; 2] {
                                        continue;
                                    }
                                    // (∑_ε, ∑_ε ε) of the full coefficient at σ
                                    let coef = |sigma: f64| -> (C, C) {
                                        let mut cd = ZERO;
                                        let mut cp = ZERO;
                                        for (k, eps) in [1i8, -1].into_iter().enumerate() {
                                            if left[k] != ZERO {
                                                let z = left[k] * conj_if(plan.coefficient(eps, nu, sigma), i2);
                                                cd += z;
                                                cp += z * eps as f64;
                                            }
                                        }
                                        (cd, cp)
                                    };
                                    let base = |sigma: f64| -> Result<C> {
                                        let js = jbr(sigma);
                                        let ph = jxi - i1 as f64 * jeta - i2 as f64 * js;
                                        if ph.abs() * jxi.min(jeta).min(js) < PHASE_FLOOR_MIN {
                                            return Err(Error::Internal(format!(
                                                "phase {ph:.3e} below floor at ξ={xi}, η={eta}, σ={sigma}"
                                            )));
                                        }
                                        let gs = conj_if(gv(sigma), i2);
                                        Ok(C::from_polar(1.0, t * ph) / (I * ph) * ge * gs / (jeta * js))
                                    };
                                    let s0 = sig(eta, 0.0);
                                    if sel.delta {
                                        let (cd, _) = coef(s0);
                                        if cd != ZERO {
                                            acc += weight * sqrt_half_pi * cd * base(s0)?;
                                        }
                                    }
                                    if sel.pv {
                                        // ∫₀ [H(p) - H(-p)] φ̂(p)/(ip) dp over the φ* support
                                        let unit = 1.0 / (two_d * r_factor(eta, s0));
                                        let mut pv = ZERO;
                                        // the cutoff transition sits on [a, 2a]
                                        for (lo, hi) in [(0.0, unit), (unit, 1.5 * unit), (1.5 * unit, 2.1 * unit)] {
                                            let hp = hi - lo;
                                            for (y, wy) in px.iter().zip(&pw) {
                                                let p = lo + 0.5 * hp * (y + 1.0);
                                                let mut diff = ZERO;
                                                for sgn in [1.0, -1.0] {
                                                    let pp = sgn * p;
                                                    let s = sig(eta, pp);
                                                    let cut = plan.kernel.phi_star(pp, eta, s);
                                                    if cut == 0.0 {
                                                        continue;
                                                    }
                                                    let (_, cp) = coef(s);
                                                    if cp != ZERO {
                                                        diff += sgn * cut * cp * base(s)?;
                                                    }
                                                }
                                                if diff != ZERO {
                                                    pv += wy * 0.5 * hp * diff * plan.kernel.phi_hat(p) / (I * p);
                                                }
                                            }
                                        }
                                        acc += weight * pv;
                                    }
                                }
                            }
                        }
                        total += -(i1 * i2) as f64 * acc;
                    }
                }
            }
        }
        out.push(total / (8.0 * PI));
    }
    Ok(out)
}

/// Off-grid evaluation of a profile sampled on a midpoint frequency grid,
/// interpolating each half-line separately.
#[derive(Debug, Clone)]
pub struct ProfileInterpolant {
    interp: HalfLineInterpolator,
    pub grid: FreqGrid,
}

impl ProfileInterpolant {
    pub fn new(nodes: &[f64], values: &[C]) -> Result<Self> {
        crate::dft::check_len(nodes.len(), values.len())?;
        let m = nodes.len();
        if m < 4 || m % 2 != 0 {
            return Err(Error::Sizing(format!("profile needs an even number of nodes (got {m})")));
        }
        let d = nodes[1] - nodes[0];
        let grid = FreqGrid::new(0.5 * m as f64 * d, m)?;
        if grid.nodes().iter().zip(nodes).any(|(a, b)| (a - b).abs() > 1e-9 * (1.0 + b.abs())) {
            return Err(Error::Precondition("profile nodes are not a midpoint frequency grid".into()));
        }
        Ok(Self { interp: HalfLineInterpolator::new(&grid, values, 6), grid })
    }

    pub fn eval(&self, xi: f64) -> C {
        self.interp.eval(xi)
    }

    pub fn cutoff(&self) -> f64 {
        self.grid.cutoff()
    }

    /// One-sided limit at `0±` by extrapolation through the nearest nodes.
    pub fn limit_at_zero(&self, positive: bool) -> C {
        self.interp.limit_at_zero(positive)
    }
}

/// `T̃(g, g)` on the profile's own nodes.
pub fn normal_form_on_nodes(plan: &NormalFormPlan, nodes: &[f64], profile: &[C], t: f64) -> Result<Vec<C>> {
    let p = ProfileInterpolant::new(nodes, profile)?;
    normal_form_t(plan, &|x| p.eval(x), p.cutoff(), t, nodes)
}

/// `f̃ = g̃ - T̃(g, g)` at every snapshot.
pub fn renormalized_profile(series: &ProfileSeries, plan: &NormalFormPlan) -> Result<ProfileSeries> {
    let mut profiles = Vec::with_capacity(series.len());
    for (t, g) in series.times.iter().zip(&series.profiles) {
        let tg = normal_form_on_nodes(plan, &series.nodes, g, *t)?;
        profiles.push(g.iter().zip(&tg).map(|(a, b)| a - b).collect());
    }
    Ok(ProfileSeries { profiles, ..series.clone() })
}

/// `max_ξ |T̃_D - T̃_{D₀}|` relative to `max|T̃_{D₀}|` for each `D`, with `D₀` the plan's depth.
pub fn depth_sensitivity(plan: &NormalFormPlan, nodes: &[f64], profile: &[C], t: f64, depths: &[u32]) -> Result<Vec<(u32, f64)>> {
    let base = normal_form_on_nodes(plan, nodes, profile, t)?;
    let scale = base.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    depths
        .iter()
        .map(|&d| {
            let other = normal_form_on_nodes(&plan.with_depth(d)?, nodes, profile, t)?;
            let diff = other.iter().zip(&base).fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
            Ok((d, if scale > 0.0 { diff / scale } else { diff }))
        })
        .collect()
}

#[cfg(test)]
mod tests;
