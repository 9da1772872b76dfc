//! Jost solutions, transmission and reflection coefficients, and the
//! zero-energy classification of `H = -∂x² + V`.

use crate::error::{Error, Result};
use crate::models::{Parity, Potential};
use crate::numerics::{magnus_step, HalfLineInterpolator, quadrature, quadrature_real, FreqGrid, RealGrid};
use num_complex::Complex64;
use rayon::prelude::*;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const GAUSS_OFFSET: f64 = 0.288_675_134_594_812_9;

/// Normalised Jost functions `m±(x, ξ) = e^{∓iξx} f±(x, ξ)` on a grid.
///
/// Columns are stored for the positive frequency nodes and for `ξ = 0`;
/// negative frequencies follow from `m±(x, -ξ) = conj m±(x, ξ)`.
#[derive(Debug, Clone)]
pub struct JostTables {
    pub grid: RealGrid,
    pub freqs: FreqGrid,
    m_plus: Vec<Vec<Complex64>>,
    m_minus: Vec<Vec<Complex64>>,
    /// `m±(x, 0)`, real.
    pub m_plus_zero: Vec<f64>,
    pub m_minus_zero: Vec<f64>,
    /// `V` sampled on the grid nodes.
    pub v: Vec<f64>,
    /// Largest `|m±(±L, ξ) - 1|` over the table.
    pub boundary_residual: f64,
}

impl JostTables {
    /// `m₊(x_j, ξ_k)` for any node `k` of the frequency grid.
    #[inline]
    pub fn m_plus(&self, j: usize, k: usize) -> Complex64 {
        let (i, neg) = self.column(k);
        let z = self.m_plus[i][j];
        if neg {
            z.conj()
        } else {
            z
        }
    }
    #[inline]
    pub fn m_minus(&self, j: usize, k: usize) -> Complex64 {
        let (i, neg) = self.column(k);
        let z = self.m_minus[i][j];
        if neg {
            z.conj()
        } else {
            z
        }
    }
    /// Column of `m₊` for the `i`-th positive node.
    pub fn m_plus_column(&self, i: usize) -> &[Complex64] {
        &self.m_plus[i]
    }
    pub fn m_minus_column(&self, i: usize) -> &[Complex64] {
        &self.m_minus[i]
    }
    #[inline]
    fn column(&self, k: usize) -> (usize, bool) {
        let half = self.freqs.half();
        if k >= half {
            (k - half, false)
        } else {
            (half - 1 - k, true)
        }
    }
}

/// Samples of `V` at the Magnus Gauss points of every substep.
struct GaussTable {
    sub: usize,
    h: f64,
    // per cell, per substep: (V at s+½-g, V at s+½+g)
    vals: Vec<(f64, f64)>,
}

impl GaussTable {
    fn new(v: &Potential, grid: &RealGrid, sub: usize) -> Self {
        let h = grid.spacing() / sub as f64;
        let mut vals = Vec::with_capacity((grid.len() - 1) * sub);
        for c in 0..grid.len() - 1 {
            let x0 = grid.node(c);
            for s in 0..sub {
                let base = x0 + s as f64 * h;
                vals.push((v.eval(base + (0.5 - GAUSS_OFFSET) * h), v.eval(base + (0.5 + GAUSS_OFFSET) * h)));
            }
        }
        Self { sub, h, vals }
    }

    /// `f'' = (V - ξ²) f` marched from the right end with `(f, f')(L)` given.
    fn march_left(&self, n: usize, xi2: f64, f_l: Complex64, df_l: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let (mut y, mut d) = (f_l, df_l);
        out[n - 1] = y;
        for c in (0..n - 1).rev() {
            for s in (0..self.sub).rev() {
                let (va, vb) = self.vals[c * self.sub + s];
                let p = magnus_step(-self.h, vb - xi2, va - xi2);
                let ny = y * p[0][0] + d * p[0][1];
                d = y * p[1][0] + d * p[1][1];
                y = ny;
            }
            out[c] = y;
        }
        out
    }

    /// Same, marched from the left end.
    fn march_right(&self, n: usize, xi2: f64, f_0: Complex64, df_0: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let (mut y, mut d) = (f_0, df_0);
        out[0] = y;
        for c in 0..n - 1 {
            for s in 0..self.sub {
                let (va, vb) = self.vals[c * self.sub + s];
                let p = magnus_step(self.h, va - xi2, vb - xi2);
                let ny = y * p[0][0] + d * p[0][1];
                d = y * p[1][0] + d * p[1][1];
                y = ny;
            }
            out[c + 1] = y;
        }
        out
    }
}

/// Compute `m±` on `grid × (freqs⁺ ∪ {0})` by marching `f'' = (V - ξ²) f`
/// from the boundary where `f±` is normalised.
pub fn compute_jost(v: &Potential, grid: &RealGrid, freqs: &FreqGrid, substeps: usize) -> Result<JostTables> {
    let n = grid.len();
    let l = grid.half_width();
    let table = GaussTable::new(v, grid, substeps.max(1));
    let nodes = grid.nodes();
    let even = v.parity() == Parity::Even;

    let column = |xi: f64| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let e = Complex64::from_polar(1.0, xi * l);
        let fp = table.march_left(n, xi * xi, e, I * xi * e);
        let mp: Vec<Complex64> =
            fp.iter().zip(&nodes).map(|(f, &x)| f * Complex64::from_polar(1.0, -xi * x)).collect();
        let mm: Vec<Complex64> = if even {
            (0..n).map(|j| mp[n - 1 - j]).collect()
        } else {
            let fm = table.march_right(n, xi * xi, e, -I * xi * e);
            fm.iter().zip(&nodes).map(|(f, &x)| f * Complex64::from_polar(1.0, xi * x)).collect()
        };
        if let Some(j) = mp.iter().chain(mm.iter()).position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Diverged { x: nodes[j % n], context: format!("Jost march at ξ = {xi}") });
        }
        Ok((mp, mm))
    };

    let half = freqs.half();
    let cols: Vec<Result<(Vec<Complex64>, Vec<Complex64>)>> =
        (0..half).into_par_iter().map(|i| column(freqs.node(freqs.positive(i)))).collect();
    let mut m_plus = Vec::with_capacity(half);
    let mut m_minus = Vec::with_capacity(half);
    for c in cols {
        let (a, b) = c?;
        m_plus.push(a);
        m_minus.push(b);
    }
    let (z_plus, z_minus) = column(0.0)?;
    let mut resid: f64 = 0.0;
    for i in 0..half {
        resid = resid.max((m_plus[i][n - 1] - 1.0).norm()).max((m_minus[i][0] - 1.0).norm());
    }
    Ok(JostTables {
        grid: grid.clone(),
        freqs: freqs.clone(),
        m_plus,
        m_minus,
        m_plus_zero: z_plus.iter().map(|z| z.re).collect(),
        m_minus_zero: z_minus.iter().map(|z| z.re).collect(),
        v: v.sample(grid),
        boundary_residual: resid,
    })
}

/// Zero-energy solution `m₊(x, 0)` from the Volterra equation
/// `m(x) = 1 + ∫_x^L (y - x) V(y) m(y) dy`, trapezoid rule plus one
/// Richardson step over the grids `n` and `2n - 1`. Independent of the ODE march.
pub fn volterra_zero_energy(v: &Potential, grid: &RealGrid) -> Vec<f64> {
    let solve = |g: &RealGrid| -> Vec<f64> {
        let n = g.len();
        let h = g.spacing();
        let x = g.nodes();
        let vv = v.sample(g);
        let mut m = vec![0.0; n];
        m[n - 1] = 1.0;
        // running moments Σ w V m and Σ w y V m over nodes right of x_j;
        // the node x_j itself has zero kernel
        let (mut s0, mut s1) = (0.0, 0.0);
        for j in (0..n - 1).rev() {
            let w = if j + 1 == n - 1 { 0.5 * h } else { h };
            s0 += w * vv[j + 1] * m[j + 1];
            s1 += w * x[j + 1] * vv[j + 1] * m[j + 1];
            m[j] = 1.0 + (s1 - x[j] * s0);
        }
        m
    };
    let coarse = solve(grid);
    let fine = solve(&grid.refined());
    (0..grid.len()).map(|j| (4.0 * fine[2 * j] - coarse[j]) / 3.0).collect()
}

/// Transmission/reflection data on a frequency grid.
#[derive(Debug, Clone)]
pub struct ScatteringData {
    pub freqs: FreqGrid,
    pub t: Vec<Complex64>,
    pub r_plus: Vec<Complex64>,
    pub r_minus: Vec<Complex64>,
    /// `W = 2iξ/T`.
    pub wronskian: Vec<Complex64>,
    /// Largest disagreement between `T` from the `m₊` and `m₋` formulas.
    pub t_cross_defect: f64,
    /// `∫ V m₊(·, 0)`.
    pub int_v_m0: f64,
    /// `∫ x V m₊(·, 0)`.
    pub int_xv_m0: f64,
    /// `‖V‖₁`, `‖xV‖₁`.
    pub v_l1: f64,
    pub xv_l1: f64,
    /// `m₊(-L, 0)`, the stand-in for `f₊(-∞, 0)`.
    pub a: f64,
}

impl ScatteringData {
    /// Largest `||T|² + |R₊|² - 1|` and `||T|² + |R₋|² - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        (0..self.t.len())
            .map(|k| {
                let t2 = self.t[k].norm_sqr();
                (t2 + self.r_plus[k].norm_sqr() - 1.0).abs().max((t2 + self.r_minus[k].norm_sqr() - 1.0).abs())
            })
            .fold(0.0, f64::max)
    }
    /// Largest `|T conj R₋ + R₊ conj T|`.
    pub fn cross_unitarity_defect(&self) -> f64 {
        (0..self.t.len())
            .map(|k| (self.t[k] * self.r_minus[k].conj() + self.r_plus[k] * self.t[k].conj()).norm())
            .fold(0.0, f64::max)
    }
    /// Largest `|T(-ξ) - conj T(ξ)|` and likewise for `R±`.
    pub fn conjugation_defect(&self) -> f64 {
        let f = &self.freqs;
        (0..f.len())
            .map(|k| {
                let km = f.mirror(k);
                (self.t[km] - self.t[k].conj())
                    .norm()
                    .max((self.r_plus[km] - self.r_plus[k].conj()).norm())
                    .max((self.r_minus[km] - self.r_minus[k].conj()).norm())
            })
            .fold(0.0, f64::max)
    }
    /// Largest `|W T - 2iξ|`.
    pub fn wronskian_defect(&self) -> f64 {
        (0..self.t.len())
            .map(|k| (self.wronskian[k] * self.t[k] - 2.0 * I * self.freqs.node(k)).norm())
            .fold(0.0, f64::max)
    }
    /// One-sided limits `(T, R₊, R₋)(0±)` by order-6 one-sided extrapolation.
    /// `T` can turn quickly near 0 when a resonance sits close by, which
    /// defeats a quadratic rule on practical grids.
    pub fn extrapolated_zero(&self, positive: bool) -> (Complex64, Complex64, Complex64) {
        let lim = |v: &[Complex64]| HalfLineInterpolator::new(&self.freqs, v, ZERO_ORDER).limit_at_zero(positive);
        (lim(&self.t), lim(&self.r_plus), lim(&self.r_minus))
    }
}

/// Stencil width for the one-sided zero-frequency limits.
pub const ZERO_ORDER: usize = 6;

/// Evaluate `T`, `R±` from the Jost tables.
pub fn scattering_coefficients(jost: &JostTables) -> Result<ScatteringData> {
    let g = &jost.grid;
    let f = &jost.freqs;
    let x = g.nodes();
    let n = g.len();
    let half = f.half();
    let v = &jost.v;
    let per: Vec<Result<[Complex64; 4]>> = (0..half)
        .into_par_iter()
        .map(|i| {
            let xi = f.node(f.positive(i));
            let mp = &jost.m_plus[i];
            let mm = &jost.m_minus[i];
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            let mut integ = |h: &dyn Fn(usize) -> Complex64| -> Complex64 {
                for (j, b) in buf.iter_mut().enumerate() {
                    *b = h(j);
                }
                quadrature(&buf, g).expect("aligned")
            };
            let ip = integ(&|j| v[j] * mp[j]);
            let im = integ(&|j| v[j] * mm[j]);
            let jm = integ(&|j| Complex64::from_polar(v[j], 2.0 * xi * x[j]) * mp[j]);
            let jp = integ(&|j| Complex64::from_polar(v[j], -2.0 * xi * x[j]) * mm[j]);
            let dp = 2.0 * I * xi - ip;
            let dm = 2.0 * I * xi - im;
            if dp.norm() < 1e-14 || dm.norm() < 1e-14 {
                return Err(Error::BoundState { eigenvalue: -xi * xi });
            }
            let tp = 2.0 * I * xi / dp;
            let tm = 2.0 * I * xi / dm;
            Ok([tp, tm, jp / dm, jm / dp])
        })
        .collect();
    let m = f.len();
    let mut t = vec![Complex64::new(0.0, 0.0); m];
    let mut rp = t.clone();
    let mut rm = t.clone();
    let mut cross: f64 = 0.0;
    for (i, r) in per.into_iter().enumerate() {
        let [tp, tm, rpl, rmi] = r?;
        cross = cross.max((tp - tm).norm());
        let (kp, kn) = (f.positive(i), f.negative(i));
        t[kp] = tp;
        rp[kp] = rpl;
        rm[kp] = rmi;
        t[kn] = tp.conj();
        rp[kn] = rpl.conj();
        rm[kn] = rmi.conj();
    }
    let w = (0..m).map(|k| 2.0 * I * f.node(k) / t[k]).collect();
    let m0 = &jost.m_plus_zero;
    let int_v_m0 = quadrature_real(&(0..n).map(|j| v[j] * m0[j]).collect::<Vec<_>>(), g)?;
    let int_xv_m0 = quadrature_real(&(0..n).map(|j| x[j] * v[j] * m0[j]).collect::<Vec<_>>(), g)?;
    let v_l1 = quadrature_real(&v.iter().map(|a| a.abs()).collect::<Vec<_>>(), g)?;
    let xv_l1 = quadrature_real(&(0..n).map(|j| (x[j] * v[j]).abs()).collect::<Vec<_>>(), g)?;
    Ok(ScatteringData {
        freqs: f.clone(),
        t,
        r_plus: rp,
        r_minus: rm,
        wronskian: w,
        t_cross_defect: cross,
        int_v_m0,
        int_xv_m0,
        v_l1,
        xv_l1,
        a: m0[0],
    })
}

/// Zero-energy class of the potential.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum Classification {
    /// No zero-energy resonance: `T(0) = 0`, `R±(0) = -1`.
    Generic,
    /// Resonance with `a = f₊(-∞, 0) ≠ 1`.
    Exceptional { a: f64 },
    /// Resonance with `a = 1`.
    VeryExceptional { a: f64 },
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Generic => "Generic",
            Classification::Exceptional { .. } => "Exceptional",
            Classification::VeryExceptional { .. } => "VeryExceptional",
        }
    }
    pub fn a(&self) -> Option<f64> {
        match *self {
            Classification::Generic => None,
            Classification::Exceptional { a } | Classification::VeryExceptional { a } => Some(a),
        }
    }
    /// `(T(0), R₊(0), R₋(0))` implied by the class.
    pub fn zero_energy_values(&self) -> (f64, f64, f64) {
        match self.a() {
            None => (0.0, -1.0, -1.0),
            Some(a) => {
                let d = 1.0 + a * a;
                (2.0 * a / d, (1.0 - a * a) / d, (a * a - 1.0) / d)
            }
        }
    }
}

/// Relative threshold on `|∫V m₊(·,0)| / ‖V‖₁` separating generic from exceptional.
pub const GENERIC_THRESHOLD: f64 = 1e-6;

/// Decide the zero-energy class from `∫V m₊(·,0)` and `∫xV m₊(·,0)`.
pub fn classify_zero_energy(data: &ScatteringData) -> Result<Classification> {
    let thr = GENERIC_THRESHOLD * data.v_l1;
    let q = data.int_v_m0.abs();
    if data.v_l1 == 0.0 {
        return Ok(Classification::VeryExceptional { a: 1.0 });
    }
    if q > thr {
        return Ok(Classification::Generic);
    }
    if q >= thr / 10.0 {
        return Err(Error::Inconclusive { value: q, lower: thr / 10.0, upper: thr });
    }
    let a = data.a;
    let thr_x = GENERIC_THRESHOLD * data.xv_l1.max(data.v_l1);
    if data.int_xv_m0.abs() < thr_x {
        Ok(Classification::VeryExceptional { a })
    } else {
        Ok(Classification::Exceptional { a })
    }
}

/// Result of [`low_energy_expansion`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowEnergy {
    /// `T(ξ) = αξ + O(ξ²)`.
    Generic { alpha: Complex64, fit_residual: f64 },
    /// Extrapolated limits at `0⁺` and their deviation from the closed forms in `a`.
    Exceptional { t0: Complex64, r_plus0: Complex64, r_minus0: Complex64, defect: f64 },
}

/// Low-energy behaviour of `T`, `R±`.
pub fn low_energy_expansion(data: &ScatteringData, class: Classification, tol: f64) -> Result<LowEnergy> {
    let f = &data.freqs;
    match class {
        Classification::Generic => {
            // complex least squares of T on span{ξ, ξ², ξ³} for 0 < ξ < 0.2
            let pts: Vec<(f64, Complex64)> = (0..f.half())
                .map(|i| (f.node(f.positive(i)), data.t[f.positive(i)]))
                .filter(|(x, _)| *x < 0.2)
                .collect();
            if pts.len() < 4 {
                return Err(Error::Expansion("fewer than four frequency nodes below 0.2".into()));
            }
            let deg = 3;
            let mut ata = vec![vec![0.0; deg]; deg];
            let mut atb_re = vec![0.0; deg];
            let mut atb_im = vec![0.0; deg];
            for (x, y) in &pts {
                let basis: Vec<f64> = (1..=deg).map(|p| x.powi(p as i32)).collect();
                for r in 0..deg {
                    for c in 0..deg {
                        ata[r][c] += basis[r] * basis[c];
                    }
                    atb_re[r] += basis[r] * y.re;
                    atb_im[r] += basis[r] * y.im;
                }
            }
            let cr = crate::numerics::solve_dense(ata.clone(), atb_re)?;
            let ci = crate::numerics::solve_dense(ata, atb_im)?;
            let resid = pts
                .iter()
                .map(|(x, y)| {
                    let fit: Complex64 =
                        (0..deg).map(|p| Complex64::new(cr[p], ci[p]) * x.powi(p as i32 + 1)).sum();
                    (fit - y).norm()
                })
                .fold(0.0, f64::max);
            if resid > tol {
                return Err(Error::Expansion(format!("fit residual {resid:.3e} exceeds {tol:.1e}")));
            }
            Ok(LowEnergy::Generic { alpha: Complex64::new(cr[0], ci[0]), fit_residual: resid })
        }
        Classification::Exceptional { .. } | Classification::VeryExceptional { .. } => {
            let (t0, rp0, rm0) = data.extrapolated_zero(true);
            let (et, ep, em) = class.zero_energy_values();
            let defect = (t0 - et).norm().max((rp0 - ep).norm()).max((rm0 - em).norm());
            if defect > tol {
                return Err(Error::Expansion(format!("zero-energy limits deviate by {defect:.3e}")));
            }
            Ok(LowEnergy::Exceptional { t0, r_plus0: rp0, r_minus0: rm0, defect })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gaussian, poschl_teller};
    use crate::numerics::make_grids;

    fn setup(v: &Potential) -> (JostTables, ScatteringData) {
        let (rg, fg) = make_grids(40.0, 2049, 20.0, 1024).unwrap();
        let j = compute_jost(v, &rg, &fg, 2).unwrap();
        let s = scattering_coefficients(&j).unwrap();
        (j, s)
    }

    #[test]
    fn free_potential() {
        let (j, s) = setup(&Potential::free());
        for k in [0, 100, 511, 512, 1023] {
            for jj in [0, 700, 2048] {
                assert!((j.m_plus(jj, k) - 1.0).norm() < 1e-11);
                assert!((j.m_minus(jj, k) - 1.0).norm() < 1e-11);
            }
            assert!((s.t[k] - 1.0).norm() < 1e-14 && s.r_plus[k].norm() < 1e-14 && s.r_minus[k].norm() < 1e-14);
        }
    }

    #[test]
    fn sine_gordon_zero_energy_is_tanh() {
        let (j, _) = setup(&poschl_teller(2.0, 1.0).unwrap());
        for (jj, x) in j.grid.nodes().iter().enumerate() {
            assert!((j.m_plus_zero[jj] - x.tanh()).abs() < 1e-7, "x={x}");
        }
    }

    #[test]
    fn volterra_oracle_agrees_with_march() {
        let v = gaussian(2.0, 1.0).unwrap();
        let (rg, fg) = make_grids(20.0, 1601, 20.0, 64).unwrap();
        let j = compute_jost(&v, &rg, &fg, 2).unwrap();
        let vol = volterra_zero_energy(&v, &rg);
        let err = vol
            .iter()
            .zip(&j.m_plus_zero)
            .zip(rg.nodes())
            .map(|((a, b), x)| (a - b).abs() / (1.0 + x.abs()))
            .fold(0.0, f64::max);
        assert!(err < 1e-7, "{err}");
    }

    #[test]
    fn reflectionless_and_unitary() {
        let (_, s) = setup(&poschl_teller(2.0, 1.0).unwrap());
        let rmax = s.r_plus.iter().chain(&s.r_minus).map(|z| z.norm()).fold(0.0, f64::max);
        assert!(rmax < 1e-6, "{rmax}");
        assert!(s.unitarity_defect() < 1e-6);
        assert!(s.cross_unitarity_defect() < 1e-6);
        assert!(s.conjugation_defect() < 1e-14);
        assert!(s.wronskian_defect() < 1e-10);
        assert!(s.t_cross_defect < 1e-8);
    }

    #[test]
    fn jost_decay_bound() {
        let (j, _) = setup(&poschl_teller(3.0, 2f64.sqrt()).unwrap());
        let x = j.grid.nodes();
        for i in [0, 10, 100, 400] {
            let sup = x
                .iter()
                .enumerate()
                .filter(|(_, &x)| x >= -1.0)
                .map(|(jj, &x)| (j.m_plus_column(i)[jj] - 1.0).norm() * (1.0 + x * x).powf(2.5))
                .fold(0.0, f64::max);
            assert!(sup < 100.0, "{sup}");
        }
    }

    #[test]
    fn classification_suite() {
        let (_, s) = setup(&poschl_teller(2.0, 1.0).unwrap());
        let c = classify_zero_energy(&s).unwrap();
        assert!(matches!(c, Classification::Exceptional { a } if (a + 1.0).abs() < 1e-4), "{c:?}");
        let (_, s) = setup(&poschl_teller(3.0, 2f64.sqrt()).unwrap());
        let c = classify_zero_energy(&s).unwrap();
        assert!(matches!(c, Classification::VeryExceptional { a } if (a - 1.0).abs() < 1e-4), "{c:?}");
        let (_, s) = setup(&gaussian(2.0, 1.0).unwrap());
        assert_eq!(classify_zero_energy(&s).unwrap(), Classification::Generic);
    }

    #[test]
    fn low_energy() {
        let (_, s) = setup(&gaussian(2.0, 1.0).unwrap());
        match low_energy_expansion(&s, Classification::Generic, 1e-4).unwrap() {
            LowEnergy::Generic { alpha, .. } => assert!(alpha.re.abs() / alpha.norm() < 1e-3, "{alpha}"),
            _ => panic!(),
        }
        let (_, s) = setup(&poschl_teller(2.0, 1.0).unwrap());
        let c = classify_zero_energy(&s).unwrap();
        match low_energy_expansion(&s, c, 1e-3).unwrap() {
            LowEnergy::Exceptional { r_plus0, t0, .. } => {
                assert!(r_plus0.norm() < 1e-3);
                assert!((t0 + 1.0).norm() < 1e-3);
            }
            _ => panic!(),
        }
    }
}
