//! Run configuration, grid specifications and output manifests.

use kgscat::numerics::{make_grids, FreqGrid, RealGrid};
use kgscat::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// `L:n:Xi:m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
    pub cutoff: f64,
    pub freqs: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(format!("grid must be L:n:Xi:m (got '{s}')"));
        }
        let f = |i: usize| parts[i].parse::<f64>().map_err(|_| format!("grid field '{}' is not a number", parts[i]));
        let u = |i: usize| parts[i].parse::<usize>().map_err(|_| format!("grid field '{}' is not a count", parts[i]));
        Ok(Self { half_width: f(0)?, points: u(1)?, cutoff: f(2)?, freqs: u(3)? })
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}:{}", self.half_width, self.points, self.cutoff, self.freqs)
    }
}

impl GridSpec {
    pub const STATIC: GridSpec = GridSpec { half_width: 40.0, points: 1601, cutoff: 12.0, freqs: 400 };

    /// Box wide enough for `t_end` with spacing 0.1 and frequency spacing
    /// below `π/L`.
    pub fn for_evolution(t_end: f64, cutoff: f64) -> Self {
        let half_width = (t_end + 15.0).max(40.0).ceil();
        let points = (2.0 * half_width / 0.1).round() as usize + 1;
        let m = (2.0 * cutoff * half_width / std::f64::consts::PI).ceil() as usize;
        Self { half_width, points, cutoff, freqs: m + m % 2 }
    }

    pub fn build(&self) -> Result<(RealGrid, FreqGrid)> {
        make_grids(self.half_width, self.points, self.cutoff, self.freqs)
    }
}

/// Parity restriction requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityFlag {
    Odd,
    Even,
    None,
}

/// Everything that determines a command's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub model: String,
    pub grid: GridSpec,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub eps: Option<f64>,
    pub every: Option<f64>,
    pub parity: ParityFlag,
    pub window: Option<(f64, f64)>,
    pub seed: u64,
    pub packets: Option<usize>,
}

impl RunConfig {
    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serialises");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command: String,
    pub config: RunConfig,
    pub config_hash: String,
    pub grid_signature: String,
    pub outputs: Vec<String>,
    /// Identities or properties the outputs check.
    pub checks: Vec<String>,
    pub wall_time_s: f64,
    pub created_unix: u64,
}

pub fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::DataQuality(format!("{}: {e}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| io_error(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| io_error(path, e))
}

/// Output file names are `<stem>.<ext>` inside `dir`, created on demand.
pub fn output_path(dir: &Path, name: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    Ok(dir.join(name))
}

/// File-name-safe form of a model key.
pub fn slug(key: &str) -> String {
    key.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' }).collect()
}
