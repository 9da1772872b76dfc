use super::RealGrid;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Complex samples aligned to a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    pub values: Vec<Complex64>,
}

impl ComplexSignal {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Diverged { x: i as f64, context: "non-finite sample".into() });
        }
        Ok(Self { values })
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Side of the interval the integration starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    Left,
    Right,
}

const GAUSS_OFFSET: f64 = 0.288_675_134_594_812_9; // √3/6

/// One fourth-order Magnus step for `y'' = q(x) y` over a signed step `h`,
/// given `q` at the two Gauss points `x + (½ ∓ √3/6)h`.
///
/// Returns the real 2×2 propagator acting on `(y, y')`.
#[inline]
pub fn magnus_step(h: f64, q1: f64, q2: f64) -> [[f64; 2]; 2] {
    // Ω = [[d, h], [h s, -d]] is traceless, so exp(Ω) = c·I + (sh/θ)·Ω with θ² = d² + h² s.
    let s = 0.5 * (q1 + q2);
    let d = (3f64).sqrt() * h * h * (q1 - q2) / 12.0;
    let theta2 = d * d + h * h * s;
    let (c, sc) = if theta2.abs() < 1e-8 {
        let t = theta2;
        (1.0 + t / 2.0 + t * t / 24.0 + t * t * t / 720.0, 1.0 + t / 6.0 + t * t / 120.0 + t * t * t / 5040.0)
    } else if theta2 > 0.0 {
        let th = theta2.sqrt();
        (th.cosh(), th.sinh() / th)
    } else {
        let th = (-theta2).sqrt();
        (th.cos(), th.sin() / th)
    };
    [[c + sc * d, sc * h], [sc * h * s, c - sc * d]]
}

/// March `y'' = q(x) y` across `grid` from one boundary with given value and slope.
///
/// `substeps` Magnus steps are taken per grid cell; the scheme is fourth
/// order and exact when `q` is constant. Returns `(y, y')` on the grid nodes.
pub fn integrate_second_order_ode(
    q: &dyn Fn(f64) -> f64,
    side: BoundarySide,
    value: Complex64,
    slope: Complex64,
    grid: &RealGrid,
    substeps: usize,
) -> Result<(ComplexSignal, ComplexSignal)> {
    let n = grid.len();
    let sub = substeps.max(1);
    let dir = match side {
        BoundarySide::Left => 1.0,
        BoundarySide::Right => -1.0,
    };
    let hs = dir * grid.spacing() / sub as f64;
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    let mut dy = vec![Complex64::new(0.0, 0.0); n];
    let order: Vec<usize> = match side {
        BoundarySide::Left => (0..n).collect(),
        BoundarySide::Right => (0..n).rev().collect(),
    };
    let (mut cy, mut cd) = (value, slope);
    y[order[0]] = cy;
    dy[order[0]] = cd;
    for w in order.windows(2) {
        let x0 = grid.node(w[0]);
        for s in 0..sub {
            let xa = x0 + s as f64 * hs;
            let p = magnus_step(hs, q(xa + (0.5 - GAUSS_OFFSET) * hs), q(xa + (0.5 + GAUSS_OFFSET) * hs));
            let ny = cy * p[0][0] + cd * p[0][1];
            let nd = cy * p[1][0] + cd * p[1][1];
            cy = ny;
            cd = nd;
        }
        if !(cy.norm_sqr().is_finite() && cd.norm_sqr().is_finite()) {
            return Err(Error::Diverged { x: grid.node(w[1]), context: "second-order ODE march".into() });
        }
        y[w[1]] = cy;
        dy[w[1]] = cd;
    }
    Ok((ComplexSignal::new(y)?, ComplexSignal::new(dy)?))
}
