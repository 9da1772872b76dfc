//! Static kinks from the first integral `K' = √(2U(K))`.

use super::field::FieldPotential;
use crate::error::{Error, Result};
use crate::numerics::{hermite5_all, RealGrid};

/// An odd (about its midpoint) monotone kink, tabulated on `x ≥ 0` as the
/// distance `δ(x) = hi - K(x)` to the upper minimum.
#[derive(Debug, Clone)]
pub struct KinkProfile {
    lo: f64,
    hi: f64,
    h: f64,
    delta: Vec<f64>,
    ddelta: Vec<f64>,
    d2delta: Vec<f64>,
    tail_rate: f64,
}

impl KinkProfile {
    pub fn minima(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// `(δ, δ', δ'')` at `x ≥ 0`.
    fn delta_at(&self, x: f64) -> (f64, f64, f64) {
        let last = self.delta.len() - 1;
        let s = x / self.h;
        if s >= last as f64 {
            let d = self.delta[last] * (-self.tail_rate * (x - last as f64 * self.h)).exp();
            return (d, -self.tail_rate * d, self.tail_rate * self.tail_rate * d);
        }
        let i = s.floor() as usize;
        let t = s - i as f64;
        let l = |v: &Vec<f64>, k: usize| v[k];
        let lv = (l(&self.delta, i), l(&self.ddelta, i), l(&self.d2delta, i));
        let rv = (l(&self.delta, i + 1), l(&self.ddelta, i + 1), l(&self.d2delta, i + 1));
        let (d, dd, d2) = hermite5_all(self.h, lv, rv, t);
        (d, dd, d2)
    }

    /// Distance to the nearer minimum, and whether `x` lies on the upper side.
    pub fn distance_to_minimum(&self, x: f64) -> (f64, bool) {
        (self.delta_at(x.abs()).0, x >= 0.0)
    }

    /// `K(x)`.
    pub fn value(&self, x: f64) -> f64 {
        let d = self.delta_at(x.abs()).0;
        if x >= 0.0 {
            self.hi - d
        } else {
            self.lo + d
        }
    }

    /// `K'(x)` (even).
    pub fn slope(&self, x: f64) -> f64 {
        -self.delta_at(x.abs()).1
    }

    /// `K''(x)` (odd).
    pub fn curvature(&self, x: f64) -> f64 {
        let c = -self.delta_at(x.abs()).2;
        if x >= 0.0 {
            c
        } else {
            -c
        }
    }

    pub fn sample(&self, grid: &RealGrid) -> Vec<f64> {
        grid.nodes().iter().map(|&x| self.value(x)).collect()
    }
}

/// Solve `K' = √(2U(K))` from the midpoint towards the upper minimum and
/// extend by oddness about the midpoint.
///
/// `x_max` bounds the tabulated range; beyond it the exponential tail
/// `δ ∝ e^{-m x}` is used.
pub fn kink_solve(field: &dyn FieldPotential, x_max: f64) -> Result<KinkProfile> {
    let (lo, hi) = field.minima();
    if !(hi > lo) {
        return Err(Error::Kink("minima must be ordered".into()));
    }
    for r in 0..2 {
        for m in [lo, hi] {
            if field.deriv(r, m).abs() > 1e-12 {
                return Err(Error::Kink(format!("U^({r}) does not vanish at the minimum {m}")));
            }
        }
    }
    for i in 1..2000 {
        let p = lo + (hi - lo) * i as f64 / 2000.0;
        if !(field.value(p) > 0.0) {
            return Err(Error::Kink(format!("U ≤ 0 at interior point {p}")));
        }
    }
    let m2 = field.deriv(2, hi);
    if !(m2 > 0.0) {
        return Err(Error::Kink("degenerate minimum (U'' ≤ 0)".into()));
    }
    let rate = m2.sqrt();

    let g = |d: f64| -> f64 {
        if d <= 0.0 {
            return 0.0;
        }
        let u = if d < 1e-3 {
            // U(hi - δ) = δ² (U''/2 - U'''δ/6 + U''''δ²/24 - U⁽⁵⁾δ³/120 + U⁽⁶⁾δ⁴/720)
            let c = [
                field.deriv(2, hi) / 2.0,
                -field.deriv(3, hi) / 6.0,
                field.deriv(4, hi) / 24.0,
                -field.deriv(5, hi) / 120.0,
                field.deriv(6, hi) / 720.0,
            ];
            let poly = c[0] + d * (c[1] + d * (c[2] + d * (c[3] + d * c[4])));
            return d * (2.0 * poly).max(0.0).sqrt();
        } else {
            field.value(hi - d)
        };
        (2.0 * u).max(0.0).sqrt()
    };
    let du = |d: f64| -> f64 { field.deriv_below_max(1, d) };

    let h_table = 0.01;
    let sub = 5;
    let hi_step = h_table / sub as f64;
    let steps = (x_max / h_table).ceil() as usize;
    let mut delta = Vec::with_capacity(steps + 1);
    let mut ddelta = Vec::with_capacity(steps + 1);
    let mut d2delta = Vec::with_capacity(steps + 1);
    let mut d = hi - 0.5 * (lo + hi);
    let push = |d: f64, delta: &mut Vec<f64>, dd: &mut Vec<f64>, d2: &mut Vec<f64>| {
        delta.push(d);
        dd.push(-g(d));
        // δ'' = -K'' = -U'(K)
        d2.push(-du(d));
    };
    push(d, &mut delta, &mut ddelta, &mut d2delta);
    for _ in 0..steps {
        for _ in 0..sub {
            let f = |v: f64| -g(v);
            let k1 = f(d);
            let k2 = f(d + 0.5 * hi_step * k1);
            let k3 = f(d + 0.5 * hi_step * k2);
            let k4 = f(d + hi_step * k3);
            d += hi_step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
        if !d.is_finite() || d < 0.0 {
            return Err(Error::Kink("non-convergent shooting".into()));
        }
        push(d, &mut delta, &mut ddelta, &mut d2delta);
        if d < 1e-280 {
            break;
        }
    }
    Ok(KinkProfile { lo, hi, h: h_table, delta, ddelta, d2delta, tail_rate: rate })
}
