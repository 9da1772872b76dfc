use super::*;
use crate::jost::{compute_jost, scattering_coefficients};
use crate::models::{poschl_teller, Potential};
use crate::numerics::make_grids;

fn gauss(center: f64, width: f64, phase: f64) -> impl Fn(f64) -> C {
    move |x: f64| C::from_polar((-((x - center) / width).powi(2)).exp(), phase * x)
}

fn rel_max(a: &[C], b: &[C]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).norm())) / scale
}

#[test]
fn kernel_shape_and_normalisation() {
    let k = build_phi_kernel(2.0, DEFAULT_D).unwrap();
    let cut = Cutoff::new();
    // tabulated χ₊ against the direct quadrature
    for i in 0..=400 {
        let x = -2.0 + 0.01 * i as f64;
        assert!((k.chi_plus(x) - cut.chi_plus(x)).abs() < 1e-12, "{x}");
    }
    // dense trapezoid for ∫φ, independent of the GL panels
    let n = 40_000;
    let h = 4.0 / n as f64;
    let mass: f64 = (0..=n).map(|j| k.phi(-2.0 + j as f64 * h) * h).sum();
    assert!((mass - 1.0).abs() < 1e-10, "{mass}");
    for x in [0.0, 0.3, 1.1, 1.9] {
        assert_eq!(k.phi(x), k.phi(-x));
        let even = -0.5 * (k.d_chi_minus_cubed(x) + k.d_chi_minus_cubed(-x));
        assert!((k.phi(x) - even).abs() < 1e-10);
    }
    assert_eq!(k.phi(2.0), 0.0);
    assert!((k.phi_hat(0.0) - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-10);
    for p in [0.2, 1.0, 1.99, 2.01, 5.0] {
        assert_eq!(k.phi_hat(p), k.phi_hat(-p));
    }
    // series branch against direct quadrature at the switch point
    let direct = k.integrate(|x| k.phi(x) * (1.99 * x).cos()) / (2.0 * PI).sqrt();
    assert!((k.phi_hat(1.99) - direct).abs() < 1e-12);
    for (x, v) in [(0.0, 1.0), (0.99, 1.0), (-1.0, 1.0), (2.0, 0.0), (-3.0, 0.0)] {
        assert!((k.lp_cut(x) - v).abs() < 1e-14, "{x}");
    }
    assert!((k.lp_cut(1.5) - 0.5).abs() < 1e-12);
}

#[test]
fn kernel_radius_and_depth_validation() {
    assert!(build_phi_kernel(0.0, 10).is_err());
    assert!(build_phi_kernel(2.0, 0).is_err());
    let k = build_phi_kernel(3.0, 8).unwrap();
    assert_eq!(k.phi(3.0), 0.0);
    assert!((k.phi_hat(0.0) - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-10);
}

#[test]
fn singular_decomposition_of_cubed_cutoff() {
    let k = build_phi_kernel(2.0, DEFAULT_D).unwrap();
    for xi in [-3.0, -0.4, 0.05, 0.7, 2.5, 9.0] {
        let r = k.decomposition_residual(xi);
        assert!(r < 1e-10, "ξ={xi}: {r}");
    }
}

#[test]
fn phase_floor_is_positive() {
    let nodes: Vec<f64> = (0..201).map(|i| -20.0 + 0.2 * i as f64).collect();
    let c = NormalFormPlan::phase_floor(&nodes);
    assert!(c > 0.3 && c.is_finite(), "{c}");
}

/// Brute-force flat δ-part: dense trapezoid over η with σ = ξ - η.
fn delta_oracle(g: &dyn Fn(f64) -> C, i1: i8, i2: i8, ell: f64, cutoff: f64, t: f64, xi: f64) -> C {
    let n = 200_000;
    let h = 2.0 * cutoff / n as f64;
    let mut acc = ZERO;
    for j in 0..=n {
        let eta = -cutoff + j as f64 * h;
        let sigma = i2 as f64 * (xi - i1 as f64 * eta);
        if sigma.abs() > cutoff {
            continue;
        }
        let w = if j == 0 || j == n { 0.5 * h } else { h };
        let ph = jbr(xi) - i1 as f64 * jbr(eta) - i2 as f64 * jbr(sigma);
        acc += w * C::from_polar(1.0, t * ph) / (I * ph) * conj_if(g(eta), i1) * conj_if(g(sigma), i2)
            / (jbr(eta) * jbr(sigma));
    }
    -(i1 * i2) as f64 * ell * (PI / 2.0).sqrt() * acc / (8.0 * PI)
}

#[test]
fn flat_delta_part_matches_brute_force() {
    let g = gauss(0.8, 1.3, 0.7);
    let cutoff = 10.0;
    let xis = [-3.1, -0.6, 0.25, 1.4, 4.0];
    for (i1, i2) in SIGNS2 {
        let plan = NormalFormPlan::flat(1.0, 0.0, DEFAULT_D).unwrap();
        let sel = TermSelection { iotas: vec![(i1, i2)], delta: true, pv: false };
        for t in [0.0, 7.5] {
            let got = normal_form_terms(&plan, &g, cutoff, t, &xis, &sel).unwrap();
            let want: Vec<C> = xis.iter().map(|&xi| delta_oracle(&g, i1, i2, 1.0, cutoff, t, xi)).collect();
            let e = rel_max(&got, &want);
            assert!(e < 1e-8, "ι=({i1},{i2}) t={t}: {e}");
        }
    }
}

#[test]
fn free_scattering_data_reproduces_flat_plan() {
    let (rg, fg) = make_grids(30.0, 601, 10.0, 200).unwrap();
    let data = scattering_coefficients(&compute_jost(&Potential::zero(), &rg, &fg, 1).unwrap()).unwrap();
    let free = NormalFormPlan::new(&data, 1.0, 0.5, DEFAULT_D).unwrap();
    assert!(free.reflectionless());
    let flat = NormalFormPlan::flat(1.0, 0.5, DEFAULT_D).unwrap();
    let g = gauss(-0.5, 1.0, 0.3);
    let xis = [-2.0, 0.3, 1.7];
    let a = normal_form_t(&free, &g, 10.0, 3.0, &xis).unwrap();
    let b = normal_form_t(&flat, &g, 10.0, 3.0, &xis).unwrap();
    assert!(rel_max(&a, &b) < 1e-9, "{}", rel_max(&a, &b));
}

/// Brute-force p.v. part for the flat plan: symmetric midpoint pairs in p.
fn pv_oracle(plan: &NormalFormPlan, g: &dyn Fn(f64) -> C, i1: i8, i2: i8, cutoff: f64, t: f64, xi: f64) -> C {
    let n_eta = 4000;
    let h = 2.0 * cutoff / n_eta as f64;
    let mut acc = ZERO;
    let k = &plan.kernel;
    let two_d = 2f64.powi(k.d as i32);
    for j in 0..n_eta {
        let eta = -cutoff + (j as f64 + 0.5) * h;
        let s0 = i2 as f64 * (xi - i1 as f64 * eta);
        let pmax = 2.2 / (two_d * r_factor(eta, s0));
        let np = 200;
        let hp = pmax / np as f64;
        let mut inner = ZERO;
        for q in 0..np {
            let p0 = (q as f64 + 0.5) * hp;
            for p in [p0, -p0] {
                let sigma = i2 as f64 * (xi - i1 as f64 * eta - p);
                if sigma.abs() > cutoff {
                    continue;
                }
                let ph = phase(i1, i2, xi, eta, sigma);
                let val = C::from_polar(1.0, t * ph) / (I * ph) * conj_if(g(eta), i1) * conj_if(g(sigma), i2)
                    / (jbr(eta) * jbr(sigma));
                inner += hp * val * k.phi_star(p, eta, sigma) * k.phi_hat(p) / (I * p);
            }
        }
        acc += h * inner;
    }
    // ε-weighted sum with all coefficients equal to 1
    -(i1 * i2) as f64 * (plan.ell_plus - plan.ell_minus) * acc / (8.0 * PI)
}

#[test]
fn flat_pv_part_matches_brute_force() {
    let g = gauss(0.5, 1.0, -0.4);
    let cutoff = 8.0;
    let plan = NormalFormPlan::flat(1.0, 0.0, 6).unwrap();
    let xis = [-1.3, 0.9];
    for (i1, i2) in [(1, 1), (1, -1)] {
        let sel = TermSelection { iotas: vec![(i1, i2)], delta: false, pv: true };
        let got = normal_form_terms(&plan, &g, cutoff, 2.0, &xis, &sel).unwrap();
        let want: Vec<C> = xis.iter().map(|&xi| pv_oracle(&plan, &g, i1, i2, cutoff, 2.0, xi)).collect();
        let e = rel_max(&got, &want);
        assert!(e < 1e-4, "ι=({i1},{i2}): {e} {got:?} {want:?}");
    }
}

#[test]
fn pv_cancels_for_equal_ells_when_flat() {
    let plan = NormalFormPlan::flat(0.7, 0.7, DEFAULT_D).unwrap();
    let g = gauss(0.0, 1.0, 0.2);
    let sel = TermSelection { delta: false, ..TermSelection::default() };
    let v = normal_form_terms(&plan, &g, 8.0, 1.0, &[0.4, -1.0], &sel).unwrap();
    assert!(v.iter().all(|z| *z == ZERO));
}

#[test]
fn zero_profile_and_bilinearity() {
    let plan = NormalFormPlan::flat(1.0, 0.3, DEFAULT_D).unwrap();
    let xis = [-2.0, -0.2, 0.6, 3.0];
    let z = normal_form_t(&plan, &|_| ZERO, 8.0, 4.0, &xis).unwrap();
    assert!(z.iter().all(|v| *v == ZERO));
    let g = gauss(0.3, 1.2, 0.9);
    let base = normal_form_t(&plan, &g, 8.0, 4.0, &xis).unwrap();
    let doubled = normal_form_t(&plan, &|x| 2.0 * g(x), 8.0, 4.0, &xis).unwrap();
    for (a, b) in doubled.iter().zip(&base) {
        assert!((a - 4.0 * b).norm() <= 1e-13 * b.norm().max(1e-300));
    }
    // a unimodular factor e^{iθ} picks up e^{i(ι₁+ι₂)θ} per term
    let th = 0.83;
    let rot = C::from_polar(1.0, th);
    for (i1, i2) in SIGNS2 {
        let sel = TermSelection { iotas: vec![(i1, i2)], ..TermSelection::default() };
        let a = normal_form_terms(&plan, &g, 8.0, 4.0, &xis, &sel).unwrap();
        let b = normal_form_terms(&plan, &|x| rot * g(x), 8.0, 4.0, &xis, &sel).unwrap();
        let f = C::from_polar(1.0, (i1 + i2) as f64 * th);
        assert!(rel_max(&b, &a.iter().map(|z| f * z).collect::<Vec<_>>()) < 1e-12);
    }
}

#[test]
fn reflection_terms_are_kept_for_non_integer_poschl_teller() {
    let (rg, fg) = make_grids(30.0, 601, 8.0, 160).unwrap();
    let v = poschl_teller(1.3, 1.0).unwrap();
    let data = scattering_coefficients(&compute_jost(&v, &rg, &fg, 2).unwrap()).unwrap();
    let plan = NormalFormPlan::new(&data, 1.0, 0.4, DEFAULT_D).unwrap();
    assert!(!plan.reflectionless());
    let g = gauss(1.0, 0.8, 0.0);
    let out = normal_form_t(&plan, &g, 8.0, 2.0, &[-1.0, 0.5, 2.0]).unwrap();
    assert!(out.iter().all(|z| z.is_finite()));
    // coefficient jump at 0: a⁻₋(0⁺) = R₋, a⁻₋(0⁻) = 0
    assert!(plan.coefficient(-1, -1, 1e-9).norm() > 0.1);
    assert_eq!(plan.coefficient(-1, -1, -1e-9), ZERO);
}

fn h1_sqr(g: &dyn Fn(f64) -> C, cutoff: f64) -> f64 {
    let n = 20_000;
    let h = 2.0 * cutoff / n as f64;
    (0..n).map(|j| {
        let x = -cutoff + (j as f64 + 0.5) * h;
        h * (1.0 + x * x) * g(x).norm_sqr()
    })
    .sum()
}

#[test]
fn bounded_on_packet_suite_stably_under_refinement() {
    let plan = NormalFormPlan::flat(1.0, 0.5, DEFAULT_D).unwrap();
    let cutoff = 6.0;
    let ratio = |m: usize, g: &dyn Fn(f64) -> C| {
        let fg = FreqGrid::new(cutoff, m).unwrap();
        let nodes = fg.nodes();
        let t = normal_form_t(&plan, g, cutoff, 5.0, &nodes).unwrap();
        let l2 = (fg.spacing() * t.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
        l2 / h1_sqr(g, cutoff)
    };
    let mut worst: f64 = 0.0;
    for j in 0..10 {
        let c = -2.0 + 0.45 * j as f64;
        let w = 0.6 + 0.08 * j as f64;
        let g = gauss(c, w, 0.3 * j as f64);
        let (coarse, fine) = (ratio(40, &g), ratio(80, &g));
        assert!((coarse - fine).abs() < 0.05 * fine, "packet {j}: {coarse} {fine}");
        worst = worst.max(fine);
    }
    assert!(worst < 1.0, "{worst}");
}

#[test]
fn interpolant_validation_and_on_node_use() {
    let fg = FreqGrid::new(6.0, 120).unwrap();
    let nodes = fg.nodes();
    assert!(ProfileInterpolant::new(&nodes[..3], &[ZERO; 3]).is_err());
    assert!(ProfileInterpolant::new(&nodes, &[ZERO; 3]).is_err());
    let g = gauss(0.2, 1.0, 0.5);
    let vals: Vec<C> = nodes.iter().map(|&x| g(x)).collect();
    let p = ProfileInterpolant::new(&nodes, &vals).unwrap();
    assert!((p.eval(0.333) - g(0.333)).norm() < 1e-6);
    let plan = NormalFormPlan::flat(1.0, 0.0, DEFAULT_D).unwrap();
    let a = normal_form_on_nodes(&plan, &nodes, &vals, 2.0).unwrap();
    let b = normal_form_t(&plan, &g, 6.0, 2.0, &nodes).unwrap();
    assert!(rel_max(&a, &b) < 1e-5, "{}", rel_max(&a, &b));
    let series = ProfileSeries { nodes: nodes.clone(), spacing: fg.spacing(), times: vec![2.0], profiles: vec![vals.clone()] };
    let f = renormalized_profile(&series, &plan).unwrap();
    for ((x, y), z) in f.profiles[0].iter().zip(&vals).zip(&a) {
        assert!((x - (y - z)).norm() < 1e-15);
    }
    let sens = depth_sensitivity(&plan, &nodes, &vals, 2.0, &[8, 10, 12]).unwrap();
    assert_eq!(sens[1].1, 0.0);
    assert!(sens.iter().all(|(_, s)| s.is_finite()));
}

