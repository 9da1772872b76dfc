use crate::error::{Error, Result};

/// Uniform symmetric grid on `[-L, L]` with an odd number of nodes, so that
/// `x = 0` is always a node.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid {
    half_width: f64,
    n: usize,
    h: f64,
}

impl RealGrid {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Sizing(format!("half width must be positive, got {half_width}")));
        }
        if n < 3 || n % 2 == 0 {
            return Err(Error::Sizing(format!("point count must be odd and ≥ 3, got {n}")));
        }
        Ok(Self { half_width, n, h: 2.0 * half_width / (n - 1) as f64 })
    }

    /// Grid with spacing close to `h_target` (rounded so the count is odd).
    pub fn with_spacing(half_width: f64, h_target: f64) -> Result<Self> {
        if !(h_target > 0.0) {
            return Err(Error::Sizing("spacing must be positive".into()));
        }
        let cells = ((2.0 * half_width / h_target).ceil() as usize).max(2);
        let cells = cells + cells % 2;
        Self::new(half_width, cells + 1)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn spacing(&self) -> f64 {
        self.h
    }
    /// Index of the node `x = 0`.
    pub fn center(&self) -> usize {
        self.n / 2
    }
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        // Reflect around the centre so that nodes are exactly symmetric.
        let c = self.center() as i64;
        (j as i64 - c) as f64 * self.h
    }
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }
    /// Index of the mirror node `-x_j`.
    #[inline]
    pub fn mirror(&self, j: usize) -> usize {
        self.n - 1 - j
    }
    /// Doubled resolution on the same interval: `2n - 1` points.
    pub fn refined(&self) -> Self {
        Self::new(self.half_width, 2 * self.n - 1).expect("refinement of a valid grid")
    }
}

/// Symmetric frequency grid on `[-Ξ, Ξ]` with `m` nodes offset by half a
/// spacing, so `ξ = 0` is never a node.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqGrid {
    cutoff: f64,
    m: usize,
    delta: f64,
}

impl FreqGrid {
    pub fn new(cutoff: f64, m: usize) -> Result<Self> {
        if !(cutoff > 0.0) || !cutoff.is_finite() {
            return Err(Error::Sizing(format!("frequency cutoff must be positive, got {cutoff}")));
        }
        if m < 2 || m % 2 == 1 {
            return Err(Error::Sizing(format!("frequency count must be even and ≥ 2, got {m}")));
        }
        Ok(Self { cutoff, m, delta: 2.0 * cutoff / m as f64 })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }
    pub fn len(&self) -> usize {
        self.m
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn spacing(&self) -> f64 {
        self.delta
    }
    /// Number of positive nodes (`m/2`).
    pub fn half(&self) -> usize {
        self.m / 2
    }
    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        let c = self.half() as f64;
        (k as f64 - c + 0.5) * self.delta
    }
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.m).map(|k| self.node(k)).collect()
    }
    #[inline]
    pub fn mirror(&self, k: usize) -> usize {
        self.m - 1 - k
    }
    /// Index of the `i`-th positive node `(i + ½)Δ`.
    #[inline]
    pub fn positive(&self, i: usize) -> usize {
        self.half() + i
    }
    /// Index of the `i`-th negative node `-(i + ½)Δ`.
    #[inline]
    pub fn negative(&self, i: usize) -> usize {
        self.half() - 1 - i
    }
    /// Uniform midpoint weights.
    pub fn weights(&self) -> Vec<f64> {
        vec![self.delta; self.m]
    }
    /// Largest spatial half width that this grid resolves without aliasing.
    pub fn max_half_width(&self) -> f64 {
        std::f64::consts::PI / self.delta
    }
}

/// Build a matched pair of grids.
pub fn make_grids(half_width: f64, n: usize, cutoff: f64, m: usize) -> Result<(RealGrid, FreqGrid)> {
    Ok((RealGrid::new(half_width, n)?, FreqGrid::new(cutoff, m)?))
}
