//! Field potentials `U(φ)` with analytic derivatives.

use std::f64::consts::PI;

/// A field potential with two degenerate minima, symmetric about their midpoint.
///
/// `deriv(r, φ)` returns the `r`-th derivative for `r ≤ 6`. Implementors
/// must satisfy `U(mid + s) = U(mid - s)` and `U(lo) = U(hi) = 0`.
pub trait FieldPotential: Send + Sync {
    fn name(&self) -> String;
    fn deriv(&self, order: usize, phi: f64) -> f64;
    /// The two minima `(lo, hi)` joined by the kink.
    fn minima(&self) -> (f64, f64);

    fn value(&self, phi: f64) -> f64 {
        self.deriv(0, phi)
    }
    fn midpoint(&self) -> f64 {
        let (lo, hi) = self.minima();
        0.5 * (lo + hi)
    }

    /// `U^{(r)}(hi - δ)` evaluated stably for small `δ ≥ 0` by a Taylor
    /// expansion about the upper minimum.
    fn deriv_below_max(&self, order: usize, delta: f64) -> f64 {
        let (_, hi) = self.minima();
        if delta > 1e-3 {
            return self.deriv(order, hi - delta);
        }
        let mut acc = 0.0;
        let mut term = 1.0;
        for j in 0..=(6 - order.min(6)) {
            let r = order + j;
            if r > 6 {
                break;
            }
            // constant terms vanish at a minimum for U and U'
            if !(r < 2) {
                acc += self.deriv(r, hi) * term;
            }
            term *= -delta / (j as f64 + 1.0);
        }
        acc
    }
}

/// `U = (1 - φ²)²/4`, minima `±1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Phi4Field;

impl FieldPotential for Phi4Field {
    fn name(&self) -> String {
        "phi4".into()
    }
    fn deriv(&self, order: usize, p: f64) -> f64 {
        match order {
            0 => 0.25 * (1.0 - p * p).powi(2),
            1 => p * p * p - p,
            2 => 3.0 * p * p - 1.0,
            3 => 6.0 * p,
            4 => 6.0,
            _ => 0.0,
        }
    }
    fn minima(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }
}

/// `U = 1 - cos φ`, kink from `0` to `2π`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SineGordonField;

impl FieldPotential for SineGordonField {
    fn name(&self) -> String {
        "sg".into()
    }
    fn deriv(&self, order: usize, p: f64) -> f64 {
        if order == 0 {
            // 2 sin²(φ/2) avoids cancellation near the minima
            2.0 * (0.5 * p).sin().powi(2)
        } else {
            -(p + order as f64 * 0.5 * PI).cos()
        }
    }
    fn minima(&self) -> (f64, f64) {
        (0.0, 2.0 * PI)
    }
}

/// Double sine-Gordon potential
/// `U = [η(1 - cos φ) + 1 + cos(φ/2)] / (1 + |4η|)`, shifted so its minima vanish.
#[derive(Debug, Clone, Copy)]
pub struct DoubleSineGordonField {
    pub eta: f64,
    norm: f64,
    shift: f64,
    hi: f64,
}

impl DoubleSineGordonField {
    /// Requires `η < 0`, `η ≠ -1/4`.
    pub fn new(eta: f64) -> Option<Self> {
        if !(eta < 0.0) || (eta + 0.25).abs() < 1e-12 || !eta.is_finite() {
            return None;
        }
        let norm = 1.0 + (4.0 * eta).abs();
        let hi = if eta > -0.25 { 2.0 * PI } else { 2.0 * (1.0 / (4.0 * eta)).acos() };
        let mut f = Self { eta, norm, shift: 0.0, hi };
        if eta < -0.25 {
            f.shift = f.raw(hi);
        }
        Some(f)
    }

    fn raw(&self, p: f64) -> f64 {
        (2.0 * self.eta * (0.5 * p).sin().powi(2) + 2.0 * (0.25 * p).cos().powi(2)) / self.norm
    }

    /// True for the branch `-1/4 < η < 0` (kink between `∓2π`).
    pub fn first_branch(&self) -> bool {
        self.eta > -0.25
    }
}

impl FieldPotential for DoubleSineGordonField {
    fn name(&self) -> String {
        format!("dsg:{}", self.eta)
    }
    fn deriv(&self, order: usize, p: f64) -> f64 {
        if order == 0 {
            if self.first_branch() {
                // near ±2π: 2η sin²(φ/2) + 2 sin²((2π-|φ|)/4), free of cancellation
                let d = 2.0 * PI - p.abs();
                return (2.0 * self.eta * (0.5 * d).sin().powi(2) + 2.0 * (0.25 * d).sin().powi(2)) / self.norm;
            }
            return self.raw(p) - self.shift;
        }
        let r = order as f64;
        let s = 0.5 * r * PI;
        (-self.eta * (p + s).cos() + 0.5f64.powi(order as i32) * (0.5 * p + s).cos()) / self.norm
    }
    fn minima(&self) -> (f64, f64) {
        (-self.hi, self.hi)
    }
}

/// The closed-form masses `m₁² = (η + 1/4)/(1 - 4η)` for `-1/4 < η < 0` and
/// `m₂² = 1/(16η) - η` for `η < -1/4`.
pub fn dsg_mass_squared_formula(eta: f64) -> Option<f64> {
    if !(eta < 0.0) || (eta + 0.25).abs() < 1e-12 {
        return None;
    }
    Some(if eta > -0.25 { (eta + 0.25) / (1.0 - 4.0 * eta) } else { 1.0 / (16.0 * eta) - eta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_derivs(f: &dyn FieldPotential) {
        let h = 1e-4;
        for &p in &[-0.7, 0.1, 0.9, 2.0, 3.5] {
            for r in 0..5 {
                let fd = (f.deriv(r, p + h) - f.deriv(r, p - h)) / (2.0 * h);
                let an = f.deriv(r + 1, p);
                assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "{} r={r} p={p}: {fd} vs {an}", f.name());
            }
        }
        let (lo, hi) = f.minima();
        assert!(f.value(lo).abs() < 1e-14 && f.value(hi).abs() < 1e-14);
        assert!(f.deriv(1, lo).abs() < 1e-12 && f.deriv(1, hi).abs() < 1e-12);
        for &d in &[1e-2, 1e-3, 5e-4, 1e-6] {
            for r in 0..4 {
                let direct = f.deriv(r, hi - d);
                let taylor = f.deriv_below_max(r, d);
                assert!((direct - taylor).abs() < 1e-12 * (1.0 + direct.abs()) + 1e-14, "{} r={r} d={d}", f.name());
            }
        }
    }

    #[test]
    fn derivatives_consistent() {
        check_derivs(&Phi4Field);
        check_derivs(&SineGordonField);
        check_derivs(&DoubleSineGordonField::new(-0.125).unwrap());
        check_derivs(&DoubleSineGordonField::new(-1.0).unwrap());
        check_derivs(&DoubleSineGordonField::new(-3.0).unwrap());
    }

    #[test]
    fn mass_formulas() {
        assert!((dsg_mass_squared_formula(-0.125).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!((dsg_mass_squared_formula(-1.0).unwrap() - 15.0 / 16.0).abs() < 1e-15);
        assert!(dsg_mass_squared_formula(0.1).is_none());
        assert!(dsg_mass_squared_formula(-0.25).is_none());
        let f = DoubleSineGordonField::new(-0.125).unwrap();
        assert!((f.deriv(2, f.minima().1) - 1.0 / 12.0).abs() < 1e-14);
        // second branch: the field potential carries the 1/(1+|4η|) normalisation
        let f = DoubleSineGordonField::new(-1.0).unwrap();
        assert!((f.deriv(2, f.minima().1) - (15.0 / 16.0) / 5.0).abs() < 1e-14);
        assert!(((f.minima().1 / 2.0).cos() + 0.25).abs() < 1e-14);
    }
}
