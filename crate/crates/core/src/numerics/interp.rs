use super::FreqGrid;
use num_complex::Complex64;

/// Quintic Hermite interpolation on `[x0, x0+h]` from values, first and
/// second derivatives at both ends; `s ∈ [0, 1]` is the local coordinate.
pub fn hermite5(h: f64, left: (f64, f64, f64), right: (f64, f64, f64), s: f64) -> f64 {
    let (y0, d0, c0) = left;
    let (y1, d1, c1) = right;
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    let h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h20 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    let h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    let h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    let h21 = 0.5 * (s3 - 2.0 * s4 + s5);
    y0 * h00 + h * d0 * h10 + h * h * c0 * h20 + y1 * h01 + h * d1 * h11 + h * h * c1 * h21
}

/// Value, first and second derivative of the quintic Hermite interpolant.
pub fn hermite5_all(h: f64, left: (f64, f64, f64), right: (f64, f64, f64), s: f64) -> (f64, f64, f64) {
    let (y0, d0, c0) = left;
    let (y1, d1, c1) = right;
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    let b = [
        1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5,
        s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
        0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5),
        10.0 * s3 - 15.0 * s4 + 6.0 * s5,
        -4.0 * s3 + 7.0 * s4 - 3.0 * s5,
        0.5 * (s3 - 2.0 * s4 + s5),
    ];
    let db = [
        -30.0 * s2 + 60.0 * s3 - 30.0 * s4,
        1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4,
        0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4),
        30.0 * s2 - 60.0 * s3 + 30.0 * s4,
        -12.0 * s2 + 28.0 * s3 - 15.0 * s4,
        0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4),
    ];
    let ddb = [
        -60.0 * s + 180.0 * s2 - 120.0 * s3,
        -36.0 * s + 96.0 * s2 - 60.0 * s3,
        0.5 * (2.0 - 18.0 * s + 36.0 * s2 - 20.0 * s3),
        60.0 * s - 180.0 * s2 + 120.0 * s3,
        -24.0 * s + 84.0 * s2 - 60.0 * s3,
        0.5 * (6.0 * s - 24.0 * s2 + 20.0 * s3),
    ];
    let coef = [y0, h * d0, h * h * c0, y1, h * d1, h * h * c1];
    let comb = |w: &[f64; 6]| coef.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
    (comb(&b), comb(&db) / h, comb(&ddb) / (h * h))
}

/// Lagrange interpolation through `(xs[i], ys[i])`, returning value and derivative.
pub fn lagrange_eval(xs: &[f64], ys: &[Complex64], x: f64) -> (Complex64, Complex64) {
    let n = xs.len();
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut li = 1.0;
        let mut dli = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let den = xs[i] - xs[j];
            // product rule accumulated on the fly
            dli = dli * (x - xs[j]) / den + li / den;
            li *= (x - xs[j]) / den;
        }
        val += ys[i] * li;
        der += ys[i] * dli;
    }
    (val, der)
}

/// One-sided local interpolation of a function sampled on a [`FreqGrid`].
///
/// Values on `ξ > 0` only use positive nodes and vice versa, which respects
/// a possible jump at `ξ = 0`. Outside `[-Ξ, Ξ]` the function is taken to vanish.
#[derive(Debug, Clone)]
pub struct HalfLineInterpolator {
    delta: f64,
    half: usize,
    order: usize,
    pos: Vec<Complex64>,
    neg: Vec<Complex64>,
}

impl HalfLineInterpolator {
    pub fn new(grid: &FreqGrid, values: &[Complex64], order: usize) -> Self {
        assert_eq!(values.len(), grid.len());
        let half = grid.half();
        let order = order.clamp(2, half);
        let pos = (0..half).map(|i| values[grid.positive(i)]).collect();
        let neg = (0..half).map(|i| values[grid.negative(i)]).collect();
        Self { delta: grid.spacing(), half, order, pos, neg }
    }

    /// Value and derivative at `xi`; `side` picks the half-line when `xi == 0`
    /// (`true` means `0⁺`).
    pub fn eval_with_side(&self, xi: f64, side_positive: bool) -> (Complex64, Complex64) {
        let positive = if xi == 0.0 { side_positive } else { xi > 0.0 };
        let r = xi.abs();
        if r > self.half as f64 * self.delta {
            return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        }
        let data = if positive { &self.pos } else { &self.neg };
        // local coordinate s with nodes at s = i (node i sits at (i+½)Δ)
        let s = r / self.delta - 0.5;
        let k = self.order;
        let mut start = (s - (k as f64 - 1.0) / 2.0).round().max(0.0) as usize;
        if start + k > self.half {
            start = self.half - k;
        }
        let xs: Vec<f64> = (start..start + k).map(|i| i as f64).collect();
        let (v, d) = lagrange_eval(&xs, &data[start..start + k], s);
        // d/dξ = (d/ds)(ds/dr)(dr/dξ)
        let sign = if positive { 1.0 } else { -1.0 };
        (v, d * (sign / self.delta))
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        self.eval_with_side(xi, true).0
    }

    /// One-sided limit at `0±` obtained by extrapolation.
    pub fn limit_at_zero(&self, positive: bool) -> Complex64 {
        self.eval_with_side(0.0, positive).0
    }
}

/// Quadratic extrapolation to `ξ = 0±` from the three nearest same-sign nodes.
pub fn extrapolate_to_zero(grid: &FreqGrid, values: &[Complex64], positive: bool) -> Complex64 {
    let pick = |i: usize| {
        if positive {
            values[grid.positive(i)]
        } else {
            values[grid.negative(i)]
        }
    };
    // nodes at ½, 3/2, 5/2 (units of Δ); Lagrange weights at 0
    pick(0) * (15.0 / 8.0) - pick(1) * (5.0 / 4.0) + pick(2) * (3.0 / 8.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_reproduces_quintic() {
        let f = |x: f64| 1.0 + x - 2.0 * x * x + 0.5 * x.powi(3) - x.powi(4) + 0.3 * x.powi(5);
        let d = |x: f64| 1.0 - 4.0 * x + 1.5 * x * x - 4.0 * x.powi(3) + 1.5 * x.powi(4);
        let c = |x: f64| -4.0 + 3.0 * x - 12.0 * x * x + 6.0 * x.powi(3);
        let (a, h) = (0.3, 0.7);
        for s in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let v = hermite5(h, (f(a), d(a), c(a)), (f(a + h), d(a + h), c(a + h)), s);
            assert!((v - f(a + s * h)).abs() < 1e-13);
            let (v2, dv, cv) = hermite5_all(h, (f(a), d(a), c(a)), (f(a + h), d(a + h), c(a + h)), s);
            assert!((v2 - v).abs() < 1e-13);
            assert!((dv - d(a + s * h)).abs() < 1e-12);
            assert!((cv - c(a + s * h)).abs() < 1e-11);
        }
    }

    #[test]
    fn lagrange_derivative() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x * x * x, -x)).collect();
        let (v, d) = lagrange_eval(&xs, &ys, 1.5);
        assert!((v - Complex64::new(3.375, -1.5)).norm() < 1e-13);
        assert!((d - Complex64::new(6.75, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn one_sided_interpolation_respects_jump() {
        let g = FreqGrid::new(5.0, 200).unwrap();
        let f = |x: f64| if x > 0.0 { (x).cos() } else { 2.0 + x };
        let vals: Vec<Complex64> = g.nodes().iter().map(|&x| Complex64::new(f(x), 0.0)).collect();
        let it = HalfLineInterpolator::new(&g, &vals, 8);
        assert!((it.limit_at_zero(true).re - 1.0).abs() < 1e-10);
        assert!((it.limit_at_zero(false).re - 2.0).abs() < 1e-12);
        assert!((it.eval(0.731).re - 0.731f64.cos()).abs() < 1e-12);
        assert!((extrapolate_to_zero(&g, &vals, false).re - 2.0).abs() < 1e-13);
    }
}
