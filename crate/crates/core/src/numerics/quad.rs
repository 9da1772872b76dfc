use super::RealGrid;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Composite trapezoid weights on a [`RealGrid`].
pub fn trapezoid_weights(grid: &RealGrid) -> Vec<f64> {
    let mut w = vec![grid.spacing(); grid.len()];
    w[0] *= 0.5;
    let last = grid.len() - 1;
    w[last] *= 0.5;
    w
}

/// Trapezoid integral of a complex signal sampled on `grid`.
///
/// The sum is accumulated pairwise from the outside in (`x_j` together with
/// `-x_j`), so an odd signal integrates to exactly zero.
pub fn quadrature(signal: &[Complex64], grid: &RealGrid) -> Result<Complex64> {
    check_len(signal.len(), grid.len())?;
    let h = grid.spacing();
    let n = grid.len();
    let c = grid.center();
    let mut acc = signal[c];
    for j in 0..c {
        let w = if j == 0 { 0.5 } else { 1.0 };
        acc += (signal[j] + signal[n - 1 - j]) * w;
    }
    Ok(acc * h)
}

/// Real-valued variant of [`quadrature`].
pub fn quadrature_real(signal: &[f64], grid: &RealGrid) -> Result<f64> {
    check_len(signal.len(), grid.len())?;
    let h = grid.spacing();
    let n = grid.len();
    let c = grid.center();
    let mut acc = signal[c];
    for j in 0..c {
        let w = if j == 0 { 0.5 } else { 1.0 };
        acc += (signal[j] + signal[n - 1 - j]) * w;
    }
    Ok(acc * h)
}

fn check_len(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::Misaligned { expected, got });
    }
    Ok(())
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Solve a small dense real system by Gaussian elimination with partial pivoting.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col].abs() < 1e-300 {
            return Err(Error::Internal("singular linear system".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Ok(x)
}

/// Least-squares line `y ≈ intercept + slope·x`; returns `(slope, intercept, r²)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    (slope, intercept, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_three_points() {
        let g = RealGrid::new(1.0, 3).unwrap();
        let s = vec![Complex64::new(1.0, 0.0); 3];
        assert!((quadrature(&s, &g).unwrap() - 2.0).norm() < 1e-15);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let g = RealGrid::new(7.3, 1001).unwrap();
        let s: Vec<Complex64> = g
            .nodes()
            .iter()
            .map(|&x| Complex64::new(x.powi(3) * (-x * x).exp() + x.sin(), x * (0.2 * x).cos()))
            .collect();
        assert_eq!(quadrature(&s, &g).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gaussian_integral() {
        let g = RealGrid::new(40.0, 2049).unwrap();
        let s: Vec<f64> = g.nodes().iter().map(|&x| (-x * x).exp()).collect();
        let v = quadrature_real(&s, &g).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn misaligned_rejected() {
        let g = RealGrid::new(1.0, 5).unwrap();
        assert!(quadrature_real(&[1.0; 4], &g).is_err());
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        for n in [1, 2, 5, 8, 16] {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(a, b)| b * a.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn line_fit() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 - 0.5 * v).collect();
        let (s, c, r2) = linear_fit(&x, &y);
        assert!((s + 0.5).abs() < 1e-14 && (c - 2.0).abs() < 1e-14 && (r2 - 1.0).abs() < 1e-14);
    }
}
