use super::RealGrid;

/// Symmetric tridiagonal matrix (single off-diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Eigenvalues found below a threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenList {
    pub values: Vec<f64>,
    /// Set when more than `count_max` eigenvalues lie below the threshold.
    pub truncated: bool,
    /// Total number of eigenvalues below the threshold.
    pub total: usize,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len());
        Self { diag, off }
    }

    /// Second-order finite-difference `-∂x² + V` on the interior nodes of
    /// `grid`, with Dirichlet conditions at `±L`.
    pub fn schrodinger(v: &dyn Fn(f64) -> f64, grid: &RealGrid) -> Self {
        let h2 = grid.spacing() * grid.spacing();
        let n = grid.len() - 2;
        let diag = (1..=n).map(|j| 2.0 / h2 + v(grid.node(j))).collect();
        let off = vec![-1.0 / h2; n - 1];
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm count).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.dim() {
            let b2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - lambda - if i == 0 { 0.0 } else { b2 / d };
            if d == 0.0 {
                d = -1e-300;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// All eigenvalues below `threshold`, ascending, found by bisection.
    pub fn eigenvalues_below(&self, threshold: f64, count_max: usize) -> EigenList {
        let total = self.count_below(threshold);
        let take = total.min(count_max);
        let (lo0, _) = self.gershgorin();
        let mut values = Vec::with_capacity(take);
        for i in 0..take {
            let (mut lo, mut hi) = (lo0 - 1.0, threshold);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) > i {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-15 * (1.0 + hi.abs()) {
                    break;
                }
            }
            values.push(0.5 * (lo + hi));
        }
        EigenList { values, truncated: total > count_max, total }
    }

    /// Eigenvector for a converged eigenvalue by inverse iteration,
    /// normalised to unit Euclidean length with a positive leading lobe.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        let shift = lambda - 1e-10 * (1.0 + lambda.abs());
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        for _ in 0..4 {
            x = self.solve_shifted(shift, &x);
            let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= nrm);
        }
        let imax = (0..n).max_by(|&a, &b| x[a].abs().total_cmp(&x[b].abs())).unwrap();
        if x[imax] < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        x
    }

    /// Solve `(A - s I) y = b` by the Thomas algorithm.
    fn solve_shifted(&self, s: f64, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut piv = self.diag[0] - s;
        if piv == 0.0 {
            piv = 1e-300;
        }
        c[0] = if n > 1 { self.off[0] / piv } else { 0.0 };
        d[0] = b[0] / piv;
        for i in 1..n {
            let mut p = self.diag[i] - s - self.off[i - 1] * c[i - 1];
            if p == 0.0 {
                p = 1e-300;
            }
            c[i] = if i + 1 < n { self.off[i] / p } else { 0.0 };
            d[i] = (b[i] - self.off[i - 1] * d[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        d
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_operator_has_nothing_below_zero() {
        let g = RealGrid::new(40.0, 2049).unwrap();
        let op = TridiagonalOperator::schrodinger(&|_| 0.0, &g);
        let e = op.eigenvalues_below(0.0, 10);
        assert!(e.values.is_empty() && !e.truncated);
    }

    #[test]
    fn sine_gordon_bound_state() {
        let g = RealGrid::new(40.0, 2049).unwrap();
        let op = TridiagonalOperator::schrodinger(&|x: f64| -2.0 / x.cosh().powi(2), &g);
        let e = op.eigenvalues_below(0.0, 10);
        assert_eq!(e.values.len(), 1);
        assert!((e.values[0] + 1.0).abs() < 1e-3);
    }

    #[test]
    fn phi4_bound_states() {
        let g = RealGrid::new(40.0, 2049).unwrap();
        let w = 2f64.sqrt();
        let op = TridiagonalOperator::schrodinger(&|x: f64| -3.0 / (x / w).cosh().powi(2), &g);
        let e = op.eigenvalues_below(0.0, 10);
        assert_eq!(e.values.len(), 2);
        assert!((e.values[0] + 2.0).abs() < 1e-3);
        assert!((e.values[1] + 0.5).abs() < 1e-3);
    }

    #[test]
    fn truncation_is_flagged() {
        let g = RealGrid::new(20.0, 801).unwrap();
        let op = TridiagonalOperator::schrodinger(&|x: f64| -20.0 / x.cosh().powi(2), &g);
        let e = op.eigenvalues_below(0.0, 2);
        assert!(e.truncated && e.values.len() == 2 && e.total > 2);
    }

    #[test]
    fn eigenvector_residual() {
        let g = RealGrid::new(20.0, 801).unwrap();
        let op = TridiagonalOperator::schrodinger(&|x: f64| -2.0 / x.cosh().powi(2), &g);
        let lam = op.eigenvalues_below(0.0, 4).values[0];
        let v = op.eigenvector(lam);
        let av = op.apply(&v);
        let res: f64 = av.iter().zip(&v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
        assert!(res < 1e-8, "{res}");
    }
}
