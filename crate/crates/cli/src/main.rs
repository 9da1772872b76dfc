mod commands;
mod config;

use clap::{Args, Parser, Subcommand};
use config::{output_path, write_json, GridSpec, Manifest, ParityFlag, RunConfig};
use kgscat::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(name = "kgscat", version, about = "Distorted Fourier analysis and Klein-Gordon evolution around kinks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Model key: phi4, sg, dsg:η, nlkg:p, pt:c:w, gauss:A:w, free.
    model: String,
    /// Grid as L:n:Xi:m.
    #[arg(long)]
    grid: Option<GridSpec>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Zero-energy classification and one-sided limits of T, R±.
    Classify(Common),
    /// T, R± on the frequency grid as CSV, with identity defects.
    Scattering(Common),
    /// Packet-suite checks of the distorted transform.
    DftSelftest {
        #[command(flatten)]
        common: Common,
        /// Directory for cached generalized eigenfunctions.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        packets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Discrete spectrum of the linearised operator.
    Spectrum(Common),
    /// Evolve a small Gaussian perturbation and record sup-norm decay.
    Evolve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        #[arg(long, default_value_t = 200.0)]
        tend: f64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Snapshot spacing.
        #[arg(long, default_value_t = 5.0)]
        every: f64,
        /// Odd data, preserved by the flow when V is even.
        #[arg(long, conflicts_with = "even")]
        odd: bool,
        #[arg(long)]
        even: bool,
    },
    /// Fit modified scattering to a stored `evolve` run.
    Modscat {
        /// Path to run.json.
        run: PathBuf,
        /// Fit window as t0:t1.
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or("window must be t0:t1")?;
    let a: f64 = a.parse().map_err(|_| format!("'{a}' is not a number"))?;
    let b: f64 = b.parse().map_err(|_| format!("'{b}' is not a number"))?;
    if !(0.0 <= a && a < b) {
        return Err(format!("window needs 0 ≤ t0 < t1 (got {a}:{b})"));
    }
    Ok((a, b))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Sizing(_) | Error::Misaligned { .. } => 2,
        Error::BoundState { .. } | Error::Precondition(_) | Error::Kink(_) => 3,
        _ => 4,
    }
}

fn base(command: &str, c: &Common, grid: GridSpec) -> RunConfig {
    RunConfig {
        command: command.into(),
        model: c.model.clone(),
        grid,
        dt: None,
        t_end: None,
        eps: None,
        every: None,
        parity: ParityFlag::None,
        window: None,
        seed: 0,
        packets: None,
    }
}

fn run(cli: Cli) -> kgscat::Result<()> {
    let start = Instant::now();
    let (cfg, out, outcome) = match cli.command {
        Command::Classify(c) => {
            let cfg = base("classify", &c, c.grid.unwrap_or(GridSpec::STATIC));
            let o = commands::classify(&cfg, &c.out)?;
            (cfg, c.out, o)
        }
        Command::Scattering(c) => {
            let cfg = base("scattering", &c, c.grid.unwrap_or(GridSpec::STATIC));
            let o = commands::scattering(&cfg, &c.out)?;
            (cfg, c.out, o)
        }
        Command::DftSelftest { common: c, cache, packets, seed } => {
            let cfg = RunConfig { seed, packets: Some(packets), ..base("dft-selftest", &c, c.grid.unwrap_or(GridSpec::STATIC)) };
            let o = commands::dft_selftest_cmd(&cfg, &c.out, cache.as_deref())?;
            (cfg, c.out, o)
        }
        Command::Spectrum(c) => {
            let cfg = base("spectrum", &c, c.grid.unwrap_or(GridSpec::STATIC));
            let o = commands::spectrum(&cfg, &c.out, c.grid.is_some())?;
            (cfg, c.out, o)
        }
        Command::Evolve { common: c, dt, tend, eps, every, odd, even } => {
            let parity = if odd {
                ParityFlag::Odd
            } else if even {
                ParityFlag::Even
            } else {
                ParityFlag::None
            };
            let grid = c.grid.unwrap_or_else(|| GridSpec::for_evolution(tend, 12.0));
            let cfg = RunConfig {
                dt: Some(dt),
                t_end: Some(tend),
                eps: Some(eps),
                every: Some(every),
                parity,
                ..base("evolve", &c, grid)
            };
            let o = commands::evolve(&cfg, &c.out)?;
            (cfg, c.out, o)
        }
        Command::Modscat { run, window, out } => {
            let cfg = RunConfig {
                command: "modscat".into(),
                model: run.display().to_string(),
                grid: GridSpec::STATIC,
                dt: None,
                t_end: None,
                eps: None,
                every: None,
                parity: ParityFlag::None,
                window,
                seed: 0,
                packets: None,
            };
            let o = commands::modscat(&cfg, &run, &out)?;
            (cfg, out, o)
        }
    };
    let manifest = Manifest {
        command: cfg.command.clone(),
        config_hash: cfg.hash(),
        config: cfg.clone(),
        grid_signature: outcome.grid_signature,
        outputs: outcome.outputs.iter().map(|p| p.display().to_string()).collect(),
        checks: outcome.checks.iter().map(|s| s.to_string()).collect(),
        wall_time_s: start.elapsed().as_secs_f64(),
        created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    let path = output_path(&out, &format!("{}_manifest.json", cfg.command))?;
    write_json(&path, &manifest)?;
    println!("{}", outcome.summary);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
