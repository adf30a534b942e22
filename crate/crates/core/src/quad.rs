//! Quadrature for `∫ d²ξ / π = (1/π) ∫_0^∞ r dr ∫_0^{2π} dθ` over the complex plane.
//!
//! The radial rule is Gauss–Laguerre in `t = r²`. Its weights are stored in the
//! explicit form `u_i = λ_i e^{t_i} / 2`, so an integrand is supplied *with* its
//! Gaussian factor and the rule is exact for `p(r²) e^{-r²}` with
//! `deg p <= 2 R - 1`.
//!
//! Integrands of the form `r p(r²) e^{-r²}` (odd radial parity) are not
//! polynomial in `t`. Each grid also carries a companion rule built from the
//! generalized Laguerre weight `t^{1/2} e^{-t}`, which is exact for them.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::laguerre_functions;

/// Largest radial order; beyond it the seed `e^{-t/2}` of the weight evaluation underflows.
pub const MAX_RADIAL_ORDER: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadialParity {
    /// Exact for `p(r²) e^{-r²}`.
    Even,
    /// Exact for `r p(r²) e^{-r²}`.
    Odd,
}

impl RadialParity {
    fn alpha(self) -> f64 {
        match self {
            RadialParity::Even => 0.0,
            RadialParity::Odd => 0.5,
        }
    }

    /// Parity of the radial integrand `ρ_i ρ_j` for two basis states of charges `q_i`, `q_j`.
    pub fn of_charges(qi: i64, qj: i64) -> Self {
        if (qi.abs() + qj.abs()) % 2 == 0 {
            RadialParity::Even
        } else {
            RadialParity::Odd
        }
    }
}

/// Radial nodes and weights for `∫_0^∞ g(r) r dr ≈ Σ u_i g(r_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialRule {
    parity: RadialParity,
    radii: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialRule {
    pub fn new(order: usize, parity: RadialParity) -> Result<Self> {
        if order == 0 || order > MAX_RADIAL_ORDER {
            return Err(Error::InvalidOrder(format!(
                "radial order {order} outside 1..={MAX_RADIAL_ORDER}"
            )));
        }
        let (t, scaled) = gauss_laguerre(order, parity.alpha());
        let radii: Vec<f64> = t.iter().map(|t| t.sqrt()).collect();
        let weights = match parity {
            RadialParity::Even => scaled.iter().map(|w| 0.5 * w).collect(),
            RadialParity::Odd => scaled.iter().zip(&radii).map(|(w, r)| 0.5 * w / r).collect(),
        };
        Ok(Self { parity, radii, weights })
    }

    pub fn parity(&self) -> RadialParity {
        self.parity
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.radii.iter().zip(&self.weights).map(|(&r, &u)| u * g(r)).sum()
    }
}

/// Nodes `t_i` and scaled weights `λ_i e^{t_i}` of the `order`-point rule for
/// `∫_0^∞ f(t) t^α e^{-t} dt`.
///
/// Nodes come from the Jacobi matrix and are polished by Newton steps; the
/// weights use `λ_i e^{t_i} = t_i^{1+α} / ((n+1)(n+α+1) l_{n+1}(t_i)²)` in terms
/// of normalized Laguerre functions, which never overflows.
fn gauss_laguerre(order: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * i as f64 + alpha + 1.0
        } else if i.abs_diff(j) == 1 {
            let k = i.max(j) as f64;
            (k * (k + alpha)).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let nf = n as f64;
    for t in nodes.iter_mut() {
        for _ in 0..4 {
            let l = laguerre_functions(n, alpha, *t);
            let denom = nf * l[n] - (nf * (nf + alpha)).sqrt() * l[n - 1];
            if denom == 0.0 {
                break;
            }
            let step = *t * l[n] / denom;
            *t -= step;
            if step.abs() <= 1e-16 * t.abs() {
                break;
            }
        }
    }

    let weights = nodes
        .iter()
        .map(|&t| {
            let l = laguerre_functions(n + 1, alpha, t);
            t.powf(1.0 + alpha) / ((nf + 1.0) * (nf + alpha + 1.0) * l[n + 1] * l[n + 1])
        })
        .collect();
    (nodes, weights)
}

/// One node of the combined grid: `ξ = r e^{iθ}` with weight `u (2π/M) / π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadNode {
    pub xi: Complex64,
    pub radius: f64,
    pub theta: f64,
    pub weight: f64,
}

/// Product grid of a radial rule and the uniform `M`-point rule on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    radial_order: usize,
    angular_order: usize,
    even: RadialRule,
    odd: RadialRule,
}

impl QuadratureGrid {
    pub fn new(radial_order: usize, angular_order: usize) -> Result<Self> {
        if angular_order < 4 {
            return Err(Error::InvalidOrder(format!("angular order {angular_order} < 4")));
        }
        Ok(Self {
            radial_order,
            angular_order,
            even: RadialRule::new(radial_order, RadialParity::Even)?,
            odd: RadialRule::new(radial_order, RadialParity::Odd)?,
        })
    }

    pub fn radial_order(&self) -> usize {
        self.radial_order
    }

    pub fn angular_order(&self) -> usize {
        self.angular_order
    }

    pub fn radial(&self, parity: RadialParity) -> &RadialRule {
        match parity {
            RadialParity::Even => &self.even,
            RadialParity::Odd => &self.odd,
        }
    }

    /// `θ_j = 2πj / M`.
    pub fn angles(&self) -> Vec<f64> {
        (0..self.angular_order)
            .map(|j| 2.0 * PI * j as f64 / self.angular_order as f64)
            .collect()
    }

    pub fn angular_weight(&self) -> f64 {
        2.0 * PI / self.angular_order as f64
    }

    /// Combined node list of the even rule (the grid proper), radial shell outer.
    pub fn nodes(&self) -> Vec<QuadNode> {
        self.nodes_with(RadialParity::Even)
    }

    pub fn nodes_with(&self, parity: RadialParity) -> Vec<QuadNode> {
        let rule = self.radial(parity);
        let angles = self.angles();
        let scale = self.angular_weight() / PI;
        let mut out = Vec::with_capacity(rule.len() * angles.len());
        for (&r, &u) in rule.radii().iter().zip(rule.weights()) {
            for &theta in &angles {
                out.push(QuadNode {
                    xi: Complex64::from_polar(r, theta),
                    radius: r,
                    theta,
                    weight: u * scale,
                });
            }
        }
        out
    }

    /// `Σ w e^{-|ξ|²}`, which equals 1 for a correct grid.
    pub fn gaussian_normalization(&self) -> f64 {
        self.nodes()
            .iter()
            .map(|n| n.weight * (-n.radius * n.radius).exp())
            .sum()
    }
}

pub fn make_grid(radial_order: usize, angular_order: usize) -> Result<QuadratureGrid> {
    QuadratureGrid::new(radial_order, angular_order)
}
