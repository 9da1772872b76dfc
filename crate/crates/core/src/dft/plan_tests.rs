use super::*;
use crate::jost::{classify_zero_energy, compute_jost, scattering_coefficients};
use crate::models::{gaussian, poschl_teller, Parity, Potential};
use crate::numerics::{make_grids, TridiagonalOperator};

fn grids() -> (RealGrid, FreqGrid) {
    make_grids(40.0, 1601, 12.0, 400).unwrap()
}

fn plan_for(v: &Potential, policy: GatePolicy) -> Result<DftPlan> {
    let (rg, fg) = grids();
    let j = compute_jost(v, &rg, &fg, 2)?;
    let s = scattering_coefficients(&j)?;
    DftPlan::build(v, &j, &s, policy)
}

fn packet(grid: &RealGrid, x0: f64, k: f64, w: f64, odd: bool) -> Vec<Complex64> {
    grid.nodes()
        .iter()
        .map(|&x| {
            let env = |y: f64| (-((y - x0) / w).powi(2)).exp() * (k * y).cos();
            let v = if odd { env(x) - env(-x) } else { env(x) };
            Complex64::new(v, 0.0)
        })
        .collect()
}

fn rel(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

#[test]
fn free_plan_is_flat() {
    let p = plan_for(&Potential::free(), GatePolicy::Strict).unwrap();
    let (rg, fg) = grids();
    let flat = DftPlan::flat(&rg, &fg);
    for k in [0, 100, 399] {
        for j in [0, 800, 1600] {
            assert!((p.psi(j, k) - flat.psi(j, k)).norm() < 1e-12);
        }
    }
}

#[test]
fn gate_refuses_bound_states() {
    match plan_for(&poschl_teller(2.0, 1.0).unwrap(), GatePolicy::Strict) {
        Err(Error::BoundState { eigenvalue }) => assert!((eigenvalue + 1.0).abs() < 1e-2),
        other => panic!("{other:?}"),
    }
    // the sine-Gordon bound state is even, so odd functions are admissible
    let v = poschl_teller(2.0, 1.0).unwrap();
    let (rg, fg) = grids();
    let j = compute_jost(&v, &rg, &fg, 2).unwrap();
    let s = scattering_coefficients(&j).unwrap();
    assert!(ParityPlan::build(&v, &j, &s, Parity::Odd).is_ok());
    assert!(matches!(ParityPlan::build(&v, &j, &s, Parity::Even), Err(Error::BoundState { .. })));
}

#[test]
fn plancherel_and_parity() {
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let g = p.grid().clone();
    let f = packet(&g, 0.0, 3.0, 1.0, false);
    assert!(plancherel_defect(&p, &f).unwrap() < 1e-6);
    let fo = packet(&g, 1.0, 2.0, 1.0, true);
    let ft = p.forward(&fo).unwrap();
    let fg = p.freq_grid().unwrap();
    let odd = (0..fg.len()).map(|k| (ft[k] + ft[fg.mirror(k)]).norm()).fold(0.0, f64::max);
    assert!(odd < 1e-10, "{odd}");
    let back = p.inverse(&ft).unwrap();
    assert!(rel(&back, &fo) < 1e-6);
}

#[test]
fn parity_plan_matches_dense() {
    let v = gaussian(2.0, 1.0).unwrap();
    let (rg, fg) = grids();
    let j = compute_jost(&v, &rg, &fg, 2).unwrap();
    let s = scattering_coefficients(&j).unwrap();
    let dense = DftPlan::build(&v, &j, &s, GatePolicy::Strict).unwrap();
    for parity in [Parity::Odd, Parity::Even] {
        let pp = ParityPlan::build(&v, &j, &s, parity).unwrap();
        let f = packet(&rg, 1.5, 2.0, 0.8, parity == Parity::Odd);
        let f = if parity == Parity::Even {
            (0..f.len()).map(|i| f[i] + f[f.len() - 1 - i]).collect()
        } else {
            f
        };
        let a = dense.forward(&f).unwrap();
        let b = pp.forward(&f).unwrap();
        assert!(rel(&b, &a) < 1e-12);
        assert!(rel(&pp.inverse(&b).unwrap(), &dense.inverse(&a).unwrap()) < 1e-12);
    }
}

#[test]
fn functional_calculus() {
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let g = p.grid().clone();
    let f = packet(&g, 0.5, 1.0, 1.5, false);
    let id = multiplier(&p, &|_| Complex64::new(1.0, 0.0), &f).unwrap();
    assert!(rel(&id, &f) < 1e-6);
    let sq = multiplier(&p, &|xi| Complex64::new(1.0 + xi * xi, 0.0), &f).unwrap();
    let op = TridiagonalOperator::schrodinger(&|x| v.eval(x) + 1.0, &g);
    let inner: Vec<f64> = f[1..f.len() - 1].iter().map(|z| z.re).collect();
    let hf = op.apply(&inner);
    let err = hf.iter().zip(&sq[1..sq.len() - 1]).map(|(a, b)| (a - b.re).abs()).fold(0.0, f64::max);
    let h = g.spacing();
    assert!(err < 10.0 * h * h, "{err}");
    let even = multiplier(&p, &|xi| Complex64::new((-xi * xi).exp() + xi.cos(), 0.0), &f).unwrap();
    assert!(even.iter().map(|z| z.im.abs()).fold(0.0, f64::max) < 1e-10);
}

#[test]
fn wave_operator_unitary_and_intertwining() {
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let flat = DftPlan::flat(p.grid(), p.freq_grid().unwrap());
    // W f carries a 1/x tail proportional to f̂(0); keep f̂(0) negligible
    let f = packet(p.grid(), 0.0, 4.0, 2.0, false);
    let wf = wave_operator(&p, &flat, &f).unwrap();
    let back = wave_adjoint(&p, &flat, &wf).unwrap();
    assert!(rel(&back, &f) < 1e-6, "{}", rel(&back, &f));
    let m = |xi: f64| Complex64::from_polar(1.0, jbr(xi));
    let lhs = multiplier(&p, &m, &wf).unwrap();
    let rhs = wave_operator(&p, &flat, &multiplier(&flat, &m, &f).unwrap()).unwrap();
    assert!(rel(&lhs, &rhs) < 1e-5);
    let free = plan_for(&Potential::free(), GatePolicy::Strict).unwrap();
    assert!(rel(&wave_operator(&free, &flat, &f).unwrap(), &f) < 1e-10);
}

#[test]
fn zero_frequency_limits() {
    // generic: f̃(0±) → 0
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let fg = p.freq_grid().unwrap().clone();
    let f = packet(p.grid(), 0.3, 0.0, 1.0, false);
    let ft = p.forward(&f).unwrap();
    let sup = ft.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for side in [true, false] {
        assert!(crate::numerics::extrapolate_to_zero(&fg, &ft, side).norm() < 1e-4 * sup);
    }
    // exceptional (sine-Gordon, a = -1): f̃(0⁻) = f̃(0⁺)/a and ψ(·,0⁺) = 2a/(1+a²) f₊(·,0)
    let v = poschl_teller(2.0, 1.0).unwrap();
    // finer frequency spacing: the quadratic extrapolation error is O(Δ³)
    let (rg, fgrid) = make_grids(40.0, 1601, 12.0, 1600).unwrap();
    let j = compute_jost(&v, &rg, &fgrid, 2).unwrap();
    let s = scattering_coefficients(&j).unwrap();
    let a = classify_zero_energy(&s).unwrap().a().unwrap();
    let p = DftPlan::build(&v, &j, &s, GatePolicy::Project).unwrap();
    let f = packet(&rg, 0.7, 0.0, 1.0, false);
    let ft = p.forward(&f).unwrap();
    let plus = crate::numerics::extrapolate_to_zero(&fgrid, &ft, true);
    let minus = crate::numerics::extrapolate_to_zero(&fgrid, &ft, false);
    assert!((minus - plus / a).norm() < 1e-3 * plus.norm(), "{plus} {minus}");
    let col = p.column_limit_at_zero(true);
    let c = 2.0 * a / (1.0 + a * a) / (2.0 * std::f64::consts::PI).sqrt();
    // extrapolation in ξ of e^{iξx} is accurate only for moderate |x|
    for jj in (0..rg.len()).filter(|&jj| rg.node(jj).abs() <= 3.0) {
        assert!((col[jj] - c * j.m_plus_zero[jj]).norm() < 1e-4);
    }
}

#[test]
fn decomposition() {
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let d = psi_decompose(&p).unwrap();
    let fg = p.freq_grid().unwrap().clone();
    let sd = p.scattering.as_ref().unwrap();
    for i in [0, 10, 150] {
        assert_eq!(d.coefficient(-1, 1, fg.positive(i)), Complex64::new(1.0, 0.0));
        assert_eq!(d.coefficient(-1, 1, fg.negative(i)), sd.t[fg.positive(i)]);
        for k in [fg.positive(i), fg.negative(i)] {
            let r = d.residual_column(&p, k);
            let s = d.singular_column(k);
            let rec = (0..r.len())
                .map(|j| (r[j] + s[j] - p.psi(j, k) * (2.0 * std::f64::consts::PI).sqrt()).norm())
                .fold(0.0, f64::max);
            assert!(rec < 1e-13);
            assert!(r[0].norm() < 1e-8 && r[r.len() - 1].norm() < 1e-8, "{} {}", r[0], r[r.len() - 1]);
        }
    }
}

#[test]
fn propagation_group_and_norm() {
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let f = packet(p.grid(), 0.0, 2.0, 1.0, false);
    assert!(rel(&linear_propagate(&p, &f, 0.0).unwrap(), &f) < 1e-6);
    let a = linear_propagate(&p, &linear_propagate(&p, &f, 3.0).unwrap(), 4.0).unwrap();
    let b = linear_propagate(&p, &f, 7.0).unwrap();
    assert!(rel(&a, &b) < 1e-6);
    let g = p.grid().clone();
    let n0 = l2_norm_sqr(&f, &g).sqrt();
    assert!((l2_norm_sqr(&b, &g).sqrt() / n0 - 1.0).abs() < 1e-6);
}

#[test]
fn psi_cache_roundtrip() {
    let v = gaussian(2.0, 1.0).unwrap();
    let p = plan_for(&v, GatePolicy::Strict).unwrap();
    let dir = std::env::temp_dir().join(format!("kgscat-psi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("psi.bin");
    p.save_psi(&path).unwrap();
    let mut q = DftPlan::flat(p.grid(), p.freq_grid().unwrap());
    assert!(!q.load_psi(&path).unwrap());
    let mut r = p.clone();
    assert!(r.load_psi(&path).unwrap());
    assert_eq!(r.psi(100, 7), p.psi(100, 7));
    std::fs::remove_dir_all(&dir).ok();
}

