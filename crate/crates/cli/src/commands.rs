//! One function per subcommand. Each writes its artifacts into the output
//! directory and returns what the manifest needs.

use crate::config::{output_path, slug, write_json, GridSpec, ParityFlag, RunConfig};
use kgscat::dft::{dft_selftest, packet_suite, DftPlan, FlatFftPlan, GatePolicy, ParityPlan, SpectralTransform};
use kgscat::evolve::{evolve_perturbation, EvolveConfig, Projection, Run};
use kgscat::jost::{classify_zero_energy, compute_jost, scattering_coefficients, ScatteringData};
use kgscat::models::{Model, Parity};
use kgscat::numerics::RealGrid;
use kgscat::scattering::{argmax_frequency, fit_modified_scattering, s_matrix, Ells, SMatrix};
use kgscat::spectrum::{discrete_spectrum, kink_grid};
use kgscat::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub struct Outcome {
    pub outputs: Vec<PathBuf>,
    pub checks: Vec<&'static str>,
    pub grid_signature: String,
    /// Printed on stdout.
    pub summary: String,
}

fn signature(grid: &GridSpec) -> String {
    format!("L={}|n={}|Xi={}|m={}", grid.half_width, grid.points, grid.cutoff, grid.freqs)
}

fn scattering_for(model: &Model, grid: &GridSpec) -> Result<ScatteringData> {
    let (rg, fg) = grid.build()?;
    scattering_coefficients(&compute_jost(&model.potential(), &rg, &fg, 2)?)
}

fn pair(z: kgscat::Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct ClassifyReport {
    name: String,
    class: &'static str,
    a: Option<f64>,
    #[serde(rename = "T0")]
    t0: [f64; 2],
    #[serde(rename = "Rplus0")]
    r_plus0: [f64; 2],
    #[serde(rename = "Rminus0")]
    r_minus0: [f64; 2],
    unitarity_defect: f64,
}

pub fn classify(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let model = Model::from_key(&cfg.model)?;
    let s = scattering_for(&model, &cfg.grid)?;
    let class = classify_zero_energy(&s)?;
    let (t0, rp, rm) = s.extrapolated_zero(true);
    let rep = ClassifyReport {
        name: cfg.model.clone(),
        class: class.label(),
        a: class.a(),
        t0: pair(t0),
        r_plus0: pair(rp),
        r_minus0: pair(rm),
        unitarity_defect: s.unitarity_defect(),
    };
    let path = output_path(out, &format!("classify_{}.json", slug(&cfg.model)))?;
    write_json(&path, &rep)?;
    Ok(Outcome {
        outputs: vec![path],
        checks: vec!["zero-energy class from the zero-energy Jost solution", "one-sided limits T(0+), R±(0+)"],
        grid_signature: signature(&cfg.grid),
        summary: serde_json::to_string(&rep).expect("report serialises"),
    })
}

#[derive(Serialize)]
struct ScatteringSummary {
    unitarity_defect: f64,
    cross_unitarity_defect: f64,
    conjugation_defect: f64,
    wronskian_defect: f64,
    t_cross_defect: f64,
}

pub fn scattering(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let model = Model::from_key(&cfg.model)?;
    let s = scattering_for(&model, &cfg.grid)?;
    let csv_path = output_path(out, &format!("scattering_{}.csv", slug(&cfg.model)))?;
    let io = |e: csv::Error| crate::config::io_error(&csv_path, e);
    let mut w = csv::Writer::from_path(&csv_path).map_err(io)?;
    w.write_record(["xi", "T_re", "T_im", "Rplus_re", "Rplus_im", "Rminus_re", "Rminus_im", "unitarity_plus", "unitarity_minus", "cross"])
        .map_err(io)?;
    for k in 0..s.freqs.len() {
        let (t, rp, rm) = (s.t[k], s.r_plus[k], s.r_minus[k]);
        let row = [
            s.freqs.node(k),
            t.re,
            t.im,
            rp.re,
            rp.im,
            rm.re,
            rm.im,
            t.norm_sqr() + rp.norm_sqr() - 1.0,
            t.norm_sqr() + rm.norm_sqr() - 1.0,
            (t * rm.conj() + rp * t.conj()).norm(),
        ];
        w.write_record(row.iter().map(|v| format!("{v:.17e}"))).map_err(io)?;
    }
    w.flush().map_err(|e| crate::config::io_error(&csv_path, e))?;
    let sum = ScatteringSummary {
        unitarity_defect: s.unitarity_defect(),
        cross_unitarity_defect: s.cross_unitarity_defect(),
        conjugation_defect: s.conjugation_defect(),
        wronskian_defect: s.wronskian_defect(),
        t_cross_defect: s.t_cross_defect,
    };
    let json_path = output_path(out, &format!("scattering_{}.json", slug(&cfg.model)))?;
    write_json(&json_path, &sum)?;
    Ok(Outcome {
        outputs: vec![csv_path, json_path],
        checks: vec!["|T|²+|R±|² = 1", "T conj R₋ + R₊ conj T = 0", "T(-ξ) = conj T(ξ)", "W·T = 2iξ"],
        grid_signature: signature(&cfg.grid),
        summary: serde_json::to_string(&sum).expect("summary serialises"),
    })
}

fn dense_plan(model: &Model, grid: &GridSpec, cache: Option<&Path>) -> Result<DftPlan> {
    let (rg, fg) = grid.build()?;
    let v = model.potential();
    let j = compute_jost(&v, &rg, &fg, 2)?;
    let s = scattering_coefficients(&j)?;
    let mut plan = DftPlan::build(&v, &j, &s, GatePolicy::Project)?;
    if let Some(dir) = cache {
        let path = output_path(dir, &format!("{}.psi", slug(&plan.signature())))?;
        if !(path.exists() && plan.load_psi(&path)?) {
            plan.save_psi(&path)?;
        }
    }
    Ok(plan)
}

pub fn dft_selftest_cmd(cfg: &RunConfig, out: &Path, cache: Option<&Path>) -> Result<Outcome> {
    let model = Model::from_key(&cfg.model)?;
    let plan = dense_plan(&model, &cfg.grid, cache)?;
    let mut packets = packet_suite(cfg.packets.unwrap_or(20));
    // the seed shifts every packet centre by the same amount in [-0.5, 0.5)
    let shift = ((cfg.seed as f64 * 0.618_033_988_749_895).fract()) - 0.5;
    for p in &mut packets {
        if p.parity == Parity::None {
            p.x0 += shift;
        }
    }
    let rep = dft_selftest(&plan, &packets, model.potential().parity() == Parity::Even)?;
    let path = output_path(out, &format!("dft_selftest_{}.json", slug(&cfg.model)))?;
    write_json(&path, &rep)?;
    Ok(Outcome {
        outputs: vec![path],
        checks: vec!["Plancherel on the continuous subspace", "parity preservation", "W*W = I", "e^{i⟨D̃⟩}W = W e^{i⟨D⟩}"],
        grid_signature: plan.signature(),
        summary: serde_json::to_string(&rep).expect("report serialises"),
    })
}

pub fn spectrum(cfg: &RunConfig, out: &Path, grid_given: bool) -> Result<Outcome> {
    let model = Model::from_key(&cfg.model)?;
    let grid = match (&model, grid_given) {
        (Model::Kink(k), false) => kink_grid(k),
        _ => RealGrid::new(cfg.grid.half_width, cfg.grid.points)?,
    };
    let rep = discrete_spectrum(&model.potential(), model.mass_squared(), &grid, 0.0);
    let path = output_path(out, &format!("spectrum_{}.json", slug(&cfg.model)))?;
    write_json(&path, &rep)?;
    Ok(Outcome {
        outputs: vec![path],
        checks: vec!["Richardson-refined bound states of -∂x² + V", "gap classification of H + m²"],
        grid_signature: format!("L={}|n={}", grid.half_width(), grid.len()),
        summary: serde_json::to_string(&rep.eigenvalues).expect("values serialise"),
    })
}

/// What `evolve` persists and `modscat` reads back.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunFile {
    pub model: String,
    pub grid: GridSpec,
    pub run: Run,
}

fn to_parity(p: ParityFlag) -> Parity {
    match p {
        ParityFlag::Odd => Parity::Odd,
        ParityFlag::Even => Parity::Even,
        ParityFlag::None => Parity::None,
    }
}

pub fn evolve(cfg: &RunConfig, out: &Path) -> Result<Outcome> {
    let model = Model::from_key(&cfg.model)?;
    let sc = model.scenario();
    let (rg, fg) = cfg.grid.build()?;
    let v = &sc.potential;
    let parity = to_parity(cfg.parity);
    let plan: Box<dyn SpectralTransform> = if v.is_identically_zero(&rg) {
        Box::new(FlatFftPlan::new(&rg))
    } else {
        let j = compute_jost(v, &rg, &fg, 2)?;
        let s = scattering_coefficients(&j)?;
        if parity != Parity::None && v.parity() == Parity::Even {
            Box::new(ParityPlan::build_with(v, &j, &s, parity, GatePolicy::Project)?)
        } else {
            Box::new(DftPlan::build(v, &j, &s, GatePolicy::Project)?)
        }
    };
    let eps = cfg.eps.unwrap_or(0.05);
    let u0: Vec<f64> = rg
        .nodes()
        .iter()
        .map(|&x| {
            let g = (-x * x / 4.0).exp();
            if parity == Parity::Odd {
                eps * x * g
            } else {
                eps * g
            }
        })
        .collect();
    let u1 = vec![0.0; rg.len()];
    let t_end = cfg.t_end.unwrap_or(200.0);
    let mut ec = EvolveConfig::new(cfg.dt.unwrap_or(0.05), t_end, cfg.every.unwrap_or(5.0));
    if plan.discards_bound_states() {
        ec.projection = Projection::Continuous;
    }
    if parity != Parity::None {
        ec.enforce_parity = Some(parity);
    }
    let run = evolve_perturbation(&sc, plan.as_ref(), &u0, &u1, &ec)?;

    let decay_path = output_path(out, "decay.csv")?;
    let io = |e: csv::Error| crate::config::io_error(&decay_path, e);
    let mut w = csv::Writer::from_path(&decay_path).map_err(io)?;
    w.write_record(["t", "sup_u", "sqrt_t_sup_u", "energy"]).map_err(io)?;
    for s in &run.snapshots {
        let row = [s.t, s.sup, s.t.sqrt() * s.sup, s.energy];
        w.write_record(row.iter().map(|v| format!("{v:.17e}"))).map_err(io)?;
    }
    w.flush().map_err(|e| crate::config::io_error(&decay_path, e))?;

    #[derive(Serialize)]
    struct Summary<'a> {
        exponent: Option<f64>,
        r2: Option<f64>,
        energy_drift: f64,
        max_parity_defect: f64,
        warnings: &'a [String],
    }
    let summary = Summary {
        exponent: run.decay.as_ref().and_then(|d| d.exponent),
        r2: run.decay.as_ref().and_then(|d| d.r2),
        energy_drift: run.energy_drift,
        max_parity_defect: run.max_parity_defect,
        warnings: &run.warnings,
    };
    let summary = serde_json::to_string(&summary).expect("summary serialises");
    let run_path = output_path(out, "run.json")?;
    write_json(&run_path, &RunFile { model: cfg.model.clone(), grid: cfg.grid, run })?;
    Ok(Outcome {
        outputs: vec![run_path, decay_path],
        checks: vec!["energy conservation", "t^{-1/2} decay of sup|u|", "parity preservation"],
        grid_signature: signature(&cfg.grid),
        summary,
    })
}

pub fn modscat(cfg: &RunConfig, run_path: &Path, out: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(run_path).map_err(|e| crate::config::io_error(run_path, e))?;
    let file: RunFile = serde_json::from_str(&text).map_err(|e| crate::config::io_error(run_path, e))?;
    let model = Model::from_key(&file.model)?;
    let sc = model.scenario();
    let series = &file.run.series;
    let (rg, _) = file.grid.build()?;
    let s: SMatrix = if sc.potential.is_identically_zero(&rg) {
        SMatrix::identity(&series.nodes.iter().copied().filter(|&x| x > 0.0).collect::<Vec<_>>())
    } else {
        s_matrix(&scattering_for(&Model::Bare(sc.potential.clone()), &file.grid)?)?
    };
    let k = argmax_frequency(series).ok_or_else(|| Error::Precondition("run has no snapshots".into()))?;
    let nodes: Vec<usize> = [k, k + 5, k + 20].into_iter().filter(|&i| i < series.nodes.len()).collect();
    let window = cfg.window.unwrap_or((50.0, 800.0));
    let fit = fit_modified_scattering(series, &s, Ells { plus: sc.ell_plus, minus: sc.ell_minus }, window, &nodes)?;
    let path = output_path(out, "modscat.json")?;
    write_json(&path, &fit)?;
    Ok(Outcome {
        outputs: vec![path],
        checks: vec!["log-phase slope -(5/12)ℓ²|Z|²", "conservation of |Z±|"],
        grid_signature: signature(&file.grid),
        summary: serde_json::to_string(&fit).expect("fit serialises"),
    })
}
