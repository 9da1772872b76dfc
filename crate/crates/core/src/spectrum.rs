//! Discrete spectra of `-∂x² + V`, internal-mode scans of kink
//! linearisations, and the Darboux factorisation `L = Λ*Λ` used to exclude
//! internal modes and edge resonances.

use crate::error::{Error, Result};
use crate::models::{KinkModel, Model, Potential};
use crate::numerics::{integrate_second_order_ode, quadrature_real, BoundarySide, RealGrid, TridiagonalOperator};
use num_complex::Complex64;
use serde::Serialize;

/// Gap margin used to separate genuine gap eigenvalues from the translation
/// mode and from box states at the continuum edge.
pub const GAP_MARGIN: f64 = 1e-3;

/// Eigenvalues of a Schrödinger operator below a threshold.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub operator: String,
    pub mass_squared: f64,
    pub threshold: f64,
    pub half_width: f64,
    pub points: usize,
    /// Richardson-refined eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    /// Eigenfunctions on the coarse grid nodes, `∫φ² = 1`.
    #[serde(skip)]
    pub eigenfunctions: Vec<Vec<f64>>,
    /// Eigenvalues of `H + m²` in the open gap `(0, m²)`.
    pub internal_modes: Vec<f64>,
    /// Eigenvalue of `H + m²` within the margin of 0, if any.
    pub translation_mode: Option<f64>,
}

struct Refined {
    coarse: Vec<f64>,
    fine: Vec<f64>,
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

/// FD eigenvalues on `grid` and its refinement, combined by one Richardson step.
fn refined_eigenvalues(v: &dyn Fn(f64) -> f64, grid: &RealGrid, threshold: f64) -> Refined {
    let op_c = TridiagonalOperator::schrodinger(v, grid);
    let op_f = TridiagonalOperator::schrodinger(v, &grid.refined());
    let coarse = op_c.eigenvalues_below(threshold, 64).values;
    // the fine grid may see one extra level just under the threshold
    let fine = op_f.eigenvalues_below(threshold, 64).values;
    let k = coarse.len().min(fine.len());
    let values: Vec<f64> = (0..k).map(|i| (4.0 * fine[i] - coarse[i]) / 3.0).collect();
    let h = grid.spacing();
    let vectors = coarse[..k]
        .iter()
        .map(|&l| {
            let inner = op_c.eigenvector(l);
            let s = 1.0 / h.sqrt();
            let mut full = vec![0.0; grid.len()];
            for (j, x) in inner.iter().enumerate() {
                full[j + 1] = x * s;
            }
            full
        })
        .collect();
    Refined { coarse: coarse[..k].to_vec(), fine: fine[..k].to_vec(), values, vectors }
}

/// Bound states of `H = -∂x² + V` below `threshold`, plus the gap
/// classification of `H + m²`.
pub fn discrete_spectrum(v: &Potential, mass_squared: f64, grid: &RealGrid, threshold: f64) -> SpectralReport {
    let f = |x: f64| v.eval(x);
    let r = refined_eigenvalues(&f, grid, threshold);
    let shifted: Vec<f64> = r.values.iter().map(|l| l + mass_squared).collect();
    let internal_modes =
        shifted.iter().copied().filter(|&l| l > GAP_MARGIN && l < mass_squared - GAP_MARGIN).collect();
    let translation_mode = shifted.iter().copied().find(|l| l.abs() <= GAP_MARGIN);
    SpectralReport {
        operator: format!("-d²/dx² + {}", v.name()),
        mass_squared,
        threshold,
        half_width: grid.half_width(),
        points: grid.len(),
        eigenvalues: r.values,
        coarse: r.coarse,
        fine: r.fine,
        eigenfunctions: r.vectors,
        internal_modes,
        translation_mode,
    }
}

/// Default box for a kink linearisation: wide enough for the slowest tail
/// `e^{-m|x|}` and fine enough for the core.
pub fn kink_grid(model: &KinkModel) -> RealGrid {
    let l = (40.0f64).max(40.0 / model.mass()).ceil();
    RealGrid::with_spacing(l, 0.02).expect("valid kink grid")
}

/// Result of [`internal_mode_scan`].
#[derive(Debug, Clone, Serialize)]
pub struct InternalModeScan {
    pub model: String,
    pub mass_squared: f64,
    pub translation_eigenvalue: f64,
    /// Eigenvalues of `L = -∂x² + U''(K)` in `(margin, m² - margin)`.
    pub modes: Vec<f64>,
}

/// Internal modes of `L = -∂x² + U''(K)` in the gap `(0, m²)`.
pub fn internal_mode_scan(model: &KinkModel, grid: Option<&RealGrid>) -> Result<InternalModeScan> {
    let g = grid.cloned().unwrap_or_else(|| kink_grid(model));
    let m2 = model.m2;
    let v = |x: f64| model.v(x) + m2;
    let r = refined_eigenvalues(&v, &g, m2);
    let lambda0 = r.values.iter().copied().min_by(|a, b| a.abs().total_cmp(&b.abs()));
    let lambda0 = match lambda0 {
        Some(l) if l.abs() <= GAP_MARGIN => l,
        other => {
            return Err(Error::Discretization(format!(
                "translation mode not resolved (smallest |λ| = {:?})",
                other.map(f64::abs)
            )))
        }
    };
    let modes = r.values.iter().copied().filter(|&l| l > GAP_MARGIN && l < m2 - GAP_MARGIN).collect();
    Ok(InternalModeScan { model: model.name.clone(), mass_squared: m2, translation_eigenvalue: lambda0, modes })
}

/// Darboux data for a kink model.
#[derive(Debug, Clone, Serialize)]
pub struct DarbouxData {
    pub model: String,
    pub mass_squared: f64,
    #[serde(skip)]
    pub x: Vec<f64>,
    /// `Y = K'`.
    #[serde(skip)]
    pub y: Vec<f64>,
    /// `Y'/Y`.
    #[serde(skip)]
    pub ratio: Vec<f64>,
    /// `P = U'(K)²/U(K) - U''(K)`.
    #[serde(skip)]
    pub p: Vec<f64>,
    #[serde(skip)]
    pub xp_prime: Vec<f64>,
    /// Largest value of `xP'` on the sample window (should be ≤ 0).
    pub max_xp_prime: f64,
    /// `|P - m²|` at the window edge.
    pub p_tail_defect: f64,
    /// Largest `‖(L - Λ*Λ)g‖₂ / ‖Lg‖₂` over the test battery.
    pub factorization_residual: f64,
    /// Eigenvalues of `L₀ = ΛΛ*` in the gap.
    pub l0_candidates: Vec<f64>,
    /// `(2∫φ'², ∫xP'φ²)` for every candidate.
    pub identity_checks: Vec<(f64, f64)>,
    /// `(λ, ‖L₀Λφ - λΛφ‖/‖Λφ‖)` for gap eigenpairs of `L`.
    pub transfer_residuals: Vec<(f64, f64)>,
    /// `|ψ'(-L)|` for the solution of `(L₀ - m²)ψ = 0` normalised at `+L`;
    /// a resonance would make this vanish.
    pub edge_slope: f64,
    pub passed: bool,
}

/// Sign-condition tolerance on `max xP'`.
pub const XP_TOL: f64 = 1e-10;
/// Factorisation residual tolerance.
pub const FACTOR_TOL: f64 = 1e-5;
/// Edge probe: a zero-energy resonance of `L₀ - m²` has a bounded solution,
/// so the far slope must stay above this for a certificate.
pub const EDGE_SLOPE_MIN: f64 = 1e-3;

/// `(P, P', Y'/Y)` at `x`, using Taylor data about the minimum in the tail.
fn darboux_fields(model: &KinkModel, x: f64) -> (f64, f64, f64) {
    let f = model.field();
    let (d, _) = model.kink().distance_to_minimum(x.abs());
    let kp = model.dk(x);
    let (p, dp_dx, w);
    if d <= 1e-3 {
        // U = δ² u(δ), U' = -δ s(δ), expand both
        let hi = f.minima().1;
        let c: Vec<f64> = (0..=6).map(|r| f.deriv(r, hi)).collect();
        let mut u = 0.0;
        let mut s = 0.0;
        let mut du = 0.0;
        let mut ds = 0.0;
        let fact = |k: usize| (1..=k).product::<usize>() as f64;
        for r in 2..=6 {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let e = (r - 2) as i32;
            u += c[r] * sign * d.powi(e) / fact(r);
            s += c[r] * sign * d.powi(e) / fact(r - 1);
            if e > 0 {
                du += c[r] * sign * e as f64 * d.powi(e - 1) / fact(r);
                ds += c[r] * sign * e as f64 * d.powi(e - 1) / fact(r - 1);
            }
        }
        let u2 = f.deriv_below_max(2, d);
        let u3 = f.deriv_below_max(3, d);
        p = s * s / u - u2;
        // dP/dδ, and dδ/dx = -K'
        let dp_dd = 2.0 * s * ds / u - s * s * du / (u * u) + u3;
        dp_dx = -kp * dp_dd;
        w = -s / (2.0 * u).sqrt();
    } else {
        let u = f.deriv_below_max(0, d);
        let u1 = f.deriv_below_max(1, d);
        let u2 = f.deriv_below_max(2, d);
        let u3 = f.deriv_below_max(3, d);
        p = u1 * u1 / u - u2;
        dp_dx = kp * (2.0 * u1 * u2 / u - u1 * u1 * u1 / (u * u) - u3);
        w = u1 / (2.0 * u).sqrt();
    }
    // P even, P' and Y'/Y odd; the formulas above hold for x ≥ 0
    if x < 0.0 {
        (p, -dp_dx, -w)
    } else {
        (p, dp_dx, w)
    }
}

/// Fourth-order centred derivative on a uniform grid (one-sided near the ends).
fn fd_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|j| {
            if j >= 2 && j + 2 < n {
                (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h)
            } else if j < 2 {
                (-25.0 * f[j] + 48.0 * f[j + 1] - 36.0 * f[j + 2] + 16.0 * f[j + 3] - 3.0 * f[j + 4]) / (12.0 * h)
            } else {
                (25.0 * f[j] - 48.0 * f[j - 1] + 36.0 * f[j - 2] - 16.0 * f[j - 3] + 3.0 * f[j - 4]) / (12.0 * h)
            }
        })
        .collect()
}

/// Darboux factorisation and sign-condition check on `|x| ≤ window`.
pub fn darboux_check(model: &KinkModel, window: f64) -> Result<DarbouxData> {
    let m2 = model.m2;
    let grid = RealGrid::with_spacing(window, 0.01)?;
    let h = grid.spacing();
    let x = grid.nodes();
    let y: Vec<f64> = x.iter().map(|&x| model.dk(x)).collect();
    if let Some(j) = y.iter().position(|&v| !(v > 1e-12)) {
        return Err(Error::Precondition(format!("K' = {:.3e} at x = {} leaves the factorisation domain", y[j], x[j])));
    }
    let fields: Vec<(f64, f64, f64)> = x.iter().map(|&x| darboux_fields(model, x)).collect();
    let p: Vec<f64> = fields.iter().map(|f| f.0).collect();
    let ratio: Vec<f64> = fields.iter().map(|f| f.2).collect();
    let xp_prime: Vec<f64> = fields.iter().zip(&x).map(|(f, x)| x * f.1).collect();
    let max_xp_prime = xp_prime.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let p_tail_defect = (p[0] - m2).abs().max((p[p.len() - 1] - m2).abs());

    // L g versus Λ*Λ g for Gaussians
    let mut factorization_residual: f64 = 0.0;
    for &(c, s) in &[(0.0, 1.0), (1.0, 2.0), (-2.0, 1.5), (0.5, 4.0)] {
        let g: Vec<f64> = x.iter().map(|&x| (-((x - c) / s).powi(2)).exp()).collect();
        let dg: Vec<f64> = x.iter().zip(&g).map(|(&x, g)| -2.0 * (x - c) / (s * s) * g).collect();
        let d2g: Vec<f64> =
            x.iter().zip(&g).map(|(&x, g)| (4.0 * (x - c).powi(2) / s.powi(4) - 2.0 / (s * s)) * g).collect();
        let lg: Vec<f64> = (0..x.len()).map(|j| -d2g[j] + (model.v(x[j]) + m2) * g[j]).collect();
        let lam: Vec<f64> = (0..x.len()).map(|j| dg[j] - ratio[j] * g[j]).collect();
        let dlam = fd_derivative(&lam, h);
        let ll: Vec<f64> = (0..x.len()).map(|j| -dlam[j] - ratio[j] * lam[j]).collect();
        let num: f64 = lg.iter().zip(&ll).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let den: f64 = lg.iter().map(|a| a * a).sum::<f64>().sqrt();
        factorization_residual = factorization_residual.max(num / den);
    }

    // gap scan of L₀ = -∂² + P on a box wide enough for the tails
    let big = crate::spectrum::kink_grid(model);
    let pfun = |x: f64| darboux_fields(model, x).0;
    let r0 = refined_eigenvalues(&pfun, &big, m2);
    let mut l0_candidates = Vec::new();
    let mut identity_checks = Vec::new();
    let bx = big.nodes();
    for (i, &l) in r0.values.iter().enumerate() {
        if l > GAP_MARGIN && l < m2 - GAP_MARGIN {
            l0_candidates.push(l);
            let phi = &r0.vectors[i];
            let dphi = fd_derivative(phi, big.spacing());
            let lhs = 2.0 * quadrature_real(&dphi.iter().map(|d| d * d).collect::<Vec<_>>(), &big)?;
            let rhs = quadrature_real(
                &bx.iter().zip(phi).map(|(&x, f)| x * darboux_fields(model, x).1 * f * f).collect::<Vec<_>>(),
                &big,
            )?;
            identity_checks.push((lhs, rhs));
        }
    }

    // spectral transfer L → L₀ for gap eigenpairs of L
    let vl = |x: f64| model.v(x) + m2;
    let rl = refined_eigenvalues(&vl, &big, m2);
    let bh = big.spacing();
    let mut transfer_residuals = Vec::new();
    let bratio: Vec<f64> = bx.iter().map(|&x| darboux_fields(model, x).2).collect();
    let bp: Vec<f64> = bx.iter().map(|&x| pfun(x)).collect();
    for (i, &l) in rl.values.iter().enumerate() {
        if l > GAP_MARGIN && l < m2 - GAP_MARGIN {
            let phi = &rl.vectors[i];
            let dphi = fd_derivative(phi, bh);
            let lam: Vec<f64> = (0..bx.len()).map(|j| dphi[j] - bratio[j] * phi[j]).collect();
            let dlam = fd_derivative(&lam, bh);
            let d2lam = fd_derivative(&dlam, bh);
            let inner = 4..bx.len() - 4;
            let num: f64 =
                inner.clone().map(|j| (-d2lam[j] + bp[j] * lam[j] - l * lam[j]).powi(2)).sum::<f64>().sqrt();
            let den: f64 = inner.map(|j| lam[j] * lam[j]).sum::<f64>().sqrt();
            transfer_residuals.push((l, num / den));
        }
    }

    // edge probe at energy m²
    let q = |x: f64| pfun(x) - m2;
    let (_, dpsi) = integrate_second_order_ode(
        &q,
        BoundarySide::Right,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        &big,
        2,
    )?;
    let edge_slope = dpsi.values[0].norm();

    let passed = max_xp_prime <= XP_TOL
        && factorization_residual < FACTOR_TOL
        && l0_candidates.is_empty()
        && edge_slope > EDGE_SLOPE_MIN;
    Ok(DarbouxData {
        model: model.name.clone(),
        mass_squared: m2,
        x,
        y,
        ratio,
        p,
        xp_prime,
        max_xp_prime,
        p_tail_defect,
        factorization_residual,
        l0_candidates,
        identity_checks,
        transfer_residuals,
        edge_slope,
        passed,
    })
}

/// [`darboux_check`] for a registry model; non-kink models are rejected.
pub fn darboux_check_model(model: &Model, window: f64) -> Result<DarbouxData> {
    match model {
        Model::Kink(k) => darboux_check(k, window),
        _ => Err(Error::Precondition("Darboux factorisation needs a kink model".into())),
    }
}
