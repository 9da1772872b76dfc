//! Potentials and kink scenarios.

mod field;
mod kink;

pub use field::{dsg_mass_squared_formula, DoubleSineGordonField, FieldPotential, Phi4Field, SineGordonField};
pub use kink::{kink_solve, KinkProfile};

use crate::error::{Error, Result};
use crate::numerics::RealGrid;
use std::fmt;
use std::sync::Arc;

/// Reflection symmetry of a real function of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
    None,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function of `x` with a declared parity. Evaluation enforces the
/// parity exactly by evaluating at `|x|`.
#[derive(Clone)]
pub struct Coefficient {
    name: String,
    parity: Parity,
    eval: RealFn,
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coefficient").field("name", &self.name).field("parity", &self.parity).finish()
    }
}

impl Coefficient {
    pub fn new(name: impl Into<String>, parity: Parity, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), parity, eval: Arc::new(eval) }
    }
    pub fn constant(c: f64) -> Self {
        Self::new(format!("const:{c}"), Parity::Even, move |_| c)
    }
    pub fn zero() -> Self {
        Self::constant(0.0)
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => (self.eval)(x.abs()),
            Parity::Odd => {
                let v = (self.eval)(x.abs());
                if x < 0.0 {
                    -v
                } else {
                    v
                }
            }
            Parity::None => (self.eval)(x),
        }
    }
    pub fn sample(&self, grid: &RealGrid) -> Vec<f64> {
        grid.nodes().iter().map(|&x| self.eval(x)).collect()
    }
    /// `c(y/m)/m²`: the coefficient after rescaling to unit mass.
    pub fn rescaled(&self, mass: f64) -> Self {
        let inner = self.eval.clone();
        let s = 1.0 / (mass * mass);
        Self::new(self.name.clone(), self.parity, move |y| s * inner(y / mass))
    }
    pub fn scaled(&self, factor: f64) -> Self {
        let inner = self.eval.clone();
        Self::new(self.name.clone(), self.parity, move |y| factor * inner(y))
    }
}

/// A Schrödinger potential `V(x)`.
pub type Potential = Coefficient;

impl Coefficient {
    /// `V ≡ 0`.
    pub fn free() -> Self {
        Self::new("free", Parity::Even, |_| 0.0)
    }
    pub fn is_identically_zero(&self, grid: &RealGrid) -> bool {
        grid.nodes().iter().all(|&x| self.eval(x) == 0.0)
    }
}

/// Pöschl-Teller well `V = -c sech²(x/w)`.
pub fn poschl_teller(depth: f64, width: f64) -> Result<Potential> {
    if !(depth >= 0.0) || !(width > 0.0) {
        return Err(Error::InvalidParameter(format!("Pöschl-Teller needs c ≥ 0, w > 0 (got {depth}, {width})")));
    }
    Ok(Coefficient::new(format!("pt:{depth}:{width}"), Parity::Even, move |x| {
        let c = (x / width).cosh();
        if c.is_infinite() {
            0.0
        } else {
            -depth / (c * c)
        }
    }))
}

/// Gaussian bump `V = A e^{-(x/w)²}`.
pub fn gaussian(amplitude: f64, width: f64) -> Result<Potential> {
    if !(width > 0.0) || !amplitude.is_finite() {
        return Err(Error::InvalidParameter(format!("Gaussian needs w > 0 (got {width})")));
    }
    Ok(Coefficient::new(format!("gauss:{amplitude}:{width}"), Parity::Even, move |x| {
        amplitude * (-(x / width).powi(2)).exp()
    }))
}

/// Everything the evolution needs after rescaling to unit mass:
/// `u_tt + (H + 1)u = a u² + b u³` with `H = -∂² + V`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    /// Mass of the original model; lengths and times are measured in units of `1/m`.
    pub mass: f64,
    pub potential: Potential,
    pub quadratic: Coefficient,
    pub cubic: Coefficient,
    pub ell_plus: f64,
    pub ell_minus: f64,
}

impl Scenario {
    /// `V ≡ 0` with a given quadratic coefficient.
    pub fn flat(quadratic: Coefficient, ell_plus: f64, ell_minus: f64) -> Self {
        Self {
            name: format!("flat/{}", quadratic.name()),
            mass: 1.0,
            potential: Potential::free(),
            quadratic,
            cubic: Coefficient::zero(),
            ell_plus,
            ell_minus,
        }
    }
    /// Same scenario without nonlinearity.
    pub fn linear(&self) -> Self {
        Self { quadratic: Coefficient::zero(), cubic: Coefficient::zero(), ell_plus: 0.0, ell_minus: 0.0, ..self.clone() }
    }
}

/// A kink `K` of `φ_tt - φ_xx + U'(φ) = 0` and its linearisation
/// `v_tt + (H + m²)v = a v² + b v³` with `H = -∂² + U''(K) - m²`.
#[derive(Clone)]
pub struct KinkModel {
    pub name: String,
    field: Arc<dyn FieldPotential>,
    kink: KinkProfile,
    pub m2: f64,
    pub ell_plus: f64,
    pub ell_minus: f64,
}

impl fmt::Debug for KinkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KinkModel").field("name", &self.name).field("m2", &self.m2).finish()
    }
}

impl KinkModel {
    pub fn from_field(name: impl Into<String>, field: Arc<dyn FieldPotential>, x_max: f64) -> Result<Self> {
        let kink = kink_solve(field.as_ref(), x_max)?;
        let (lo, hi) = field.minima();
        let m2 = field.deriv(2, hi);
        Ok(Self {
            name: name.into(),
            ell_plus: -0.5 * field.deriv(3, hi),
            ell_minus: -0.5 * field.deriv(3, lo),
            m2,
            field,
            kink,
        })
    }

    pub fn field(&self) -> &dyn FieldPotential {
        self.field.as_ref()
    }
    pub fn kink(&self) -> &KinkProfile {
        &self.kink
    }
    pub fn mass(&self) -> f64 {
        self.m2.sqrt()
    }

    /// `U^{(r)}(K(x))` for `x ≥ 0`, stable in the tail.
    fn field_deriv_right(&self, order: usize, x: f64) -> f64 {
        let (d, _) = self.kink.distance_to_minimum(x.abs());
        self.field.deriv_below_max(order, d)
    }

    pub fn k(&self, x: f64) -> f64 {
        self.kink.value(x)
    }
    pub fn dk(&self, x: f64) -> f64 {
        self.kink.slope(x)
    }
    /// `V(x) = U''(K(x)) - m²`.
    pub fn v(&self, x: f64) -> f64 {
        let (d, _) = self.kink.distance_to_minimum(x.abs());
        if d < 1e-3 {
            // Taylor series of U''(hi - δ) - U''(hi)
            let hi = self.field.minima().1;
            let mut acc = 0.0;
            let mut term = 1.0;
            for j in 1..=4 {
                term *= -d / j as f64;
                acc += self.field.deriv(2 + j, hi) * term;
            }
            acc
        } else {
            self.field_deriv_right(2, x) - self.m2
        }
    }
    /// `a(x) = -U'''(K(x))/2`.
    pub fn a(&self, x: f64) -> f64 {
        let v = -0.5 * self.field_deriv_right(3, x);
        if x < 0.0 {
            -v
        } else {
            v
        }
    }
    /// `b(x) = -U''''(K(x))/6`.
    pub fn b(&self, x: f64) -> f64 {
        -self.field_deriv_right(4, x) / 6.0
    }

    pub fn potential(&self) -> Potential {
        let me = self.clone();
        Coefficient::new(format!("{}/V", self.name), Parity::Even, move |x| me.v(x))
    }
    pub fn quadratic(&self) -> Coefficient {
        let me = self.clone();
        Coefficient::new(format!("{}/a", self.name), Parity::Odd, move |x| me.a(x))
    }
    pub fn cubic(&self) -> Coefficient {
        let me = self.clone();
        Coefficient::new(format!("{}/b", self.name), Parity::Even, move |x| me.b(x))
    }

    /// Unit-mass scenario: `y = m x`, `s = m t`.
    pub fn scenario(&self) -> Scenario {
        let m = self.mass();
        Scenario {
            name: self.name.clone(),
            mass: m,
            potential: self.potential().rescaled(m),
            quadratic: self.quadratic().rescaled(m),
            cubic: self.cubic().rescaled(m),
            ell_plus: self.ell_plus / self.m2,
            ell_minus: self.ell_minus / self.m2,
        }
    }
}

/// φ⁴ kink `K = tanh(x/√2)`.
pub fn phi4_model() -> KinkModel {
    KinkModel::from_field("phi4", Arc::new(Phi4Field), 80.0).expect("φ⁴ kink")
}

/// Sine-Gordon kink `K = 4 arctan(eˣ)`.
pub fn sine_gordon_model() -> KinkModel {
    KinkModel::from_field("sg", Arc::new(SineGordonField), 80.0).expect("sine-Gordon kink")
}

/// Double sine-Gordon kink for `η < 0`, `η ≠ -1/4`.
pub fn dsg_model(eta: f64) -> Result<KinkModel> {
    let field = DoubleSineGordonField::new(eta)
        .ok_or_else(|| Error::InvalidParameter(format!("double sine-Gordon needs η < 0, η ≠ -1/4 (got {eta})")))?;
    let m = field.deriv(2, field.minima().1).sqrt();
    KinkModel::from_field(format!("dsg:{eta}"), Arc::new(field), (800.0 / m).max(80.0))
}

/// Soliton `Q = (α+1)^{1/(2α)} sech^{1/α}(αx)` of the focusing NLKG
/// `u_tt - u_xx + u = |u|^{p-1}u`, `α = (p-1)/2`.
#[derive(Debug, Clone, Copy)]
pub struct NlkgModel {
    pub p: u32,
    pub alpha: f64,
}

/// NLKG soliton record for integer `p ≥ 2`.
pub fn nlkg_model(p: u32) -> Result<NlkgModel> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("NLKG needs p ≥ 2 (got {p})")));
    }
    Ok(NlkgModel { p, alpha: (p as f64 - 1.0) / 2.0 })
}

impl NlkgModel {
    pub fn q(&self, x: f64) -> f64 {
        let a = self.alpha;
        let c = (a * x).cosh();
        if c.is_infinite() {
            return 0.0;
        }
        (a + 1.0).powf(1.0 / (2.0 * a)) * c.powf(-1.0 / a)
    }
    pub fn potential(&self) -> Potential {
        let me = *self;
        Coefficient::new(format!("nlkg:{}/V", self.p), Parity::Even, move |x| {
            -(me.p as f64) * me.q(x).powi(me.p as i32 - 1)
        })
    }
    /// `p(p-1)Q^{p-2}/2`.
    pub fn quadratic(&self) -> Coefficient {
        let me = *self;
        let p = self.p as f64;
        Coefficient::new(format!("nlkg:{}/a", self.p), Parity::Even, move |x| {
            0.5 * p * (p - 1.0) * me.q(x).powi(me.p as i32 - 2)
        })
    }
    /// `p(p-1)(p-2)Q^{p-3}/6`.
    pub fn cubic(&self) -> Coefficient {
        let me = *self;
        let p = self.p as f64;
        if self.p < 3 {
            return Coefficient::zero();
        }
        Coefficient::new(format!("nlkg:{}/b", self.p), Parity::Even, move |x| {
            p * (p - 1.0) * (p - 2.0) / 6.0 * me.q(x).powi(me.p as i32 - 3)
        })
    }
    pub fn scenario(&self) -> Scenario {
        let ell = if self.p == 2 { 1.0 } else { 0.0 };
        Scenario {
            name: format!("nlkg:{}", self.p),
            mass: 1.0,
            potential: self.potential(),
            quadratic: self.quadratic(),
            cubic: self.cubic(),
            ell_plus: ell,
            ell_minus: ell,
        }
    }
}

/// A resolved registry entry.
#[derive(Debug, Clone)]
pub enum Model {
    Kink(KinkModel),
    Nlkg(NlkgModel),
    Bare(Potential),
}

impl Model {
    /// Registry lookup: `phi4`, `sg`, `dsg:η`, `nlkg:p`, `pt:c:w`, `gauss:A:w`, `free`.
    pub fn from_key(key: &str) -> Result<Self> {
        let parts: Vec<&str> = key.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("model key '{key}' is missing a parameter")))?
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("model key '{key}' has a non-numeric parameter")))
        };
        let arity = |n: usize| -> Result<()> {
            if parts.len() != n {
                return Err(Error::InvalidParameter(format!("model key '{key}' expects {} parameter(s)", n - 1)));
            }
            Ok(())
        };
        match parts[0] {
            "phi4" => arity(1).map(|_| Model::Kink(phi4_model())),
            "sg" => arity(1).map(|_| Model::Kink(sine_gordon_model())),
            "free" | "zero" => arity(1).map(|_| Model::Bare(Potential::free())),
            "dsg" => {
                arity(2)?;
                Ok(Model::Kink(dsg_model(num(1)?)?))
            }
            "nlkg" => {
                arity(2)?;
                let p = num(1)?;
                if p.fract() != 0.0 || p < 0.0 {
                    return Err(Error::InvalidParameter(format!("NLKG exponent must be an integer (got {p})")));
                }
                Ok(Model::Nlkg(nlkg_model(p as u32)?))
            }
            "pt" => {
                arity(3)?;
                Ok(Model::Bare(poschl_teller(num(1)?, num(2)?)?))
            }
            "gauss" => {
                arity(3)?;
                Ok(Model::Bare(gaussian(num(1)?, num(2)?)?))
            }
            other => Err(Error::InvalidParameter(format!("unknown model '{other}'"))),
        }
    }

    /// Schrödinger potential at the model's own length scale.
    pub fn potential(&self) -> Potential {
        match self {
            Model::Kink(k) => k.potential(),
            Model::Nlkg(n) => n.potential(),
            Model::Bare(v) => v.clone(),
        }
    }

    /// Mass `m²` of the linearised equation.
    pub fn mass_squared(&self) -> f64 {
        match self {
            Model::Kink(k) => k.m2,
            _ => 1.0,
        }
    }

    /// Unit-mass evolution scenario; bare potentials get no nonlinearity.
    pub fn scenario(&self) -> Scenario {
        match self {
            Model::Kink(k) => k.scenario(),
            Model::Nlkg(n) => n.scenario(),
            Model::Bare(v) => Scenario {
                name: v.name().to_string(),
                mass: 1.0,
                potential: v.clone(),
                quadratic: Coefficient::zero(),
                cubic: Coefficient::zero(),
                ell_plus: 0.0,
                ell_minus: 0.0,
            },
        }
    }
}
