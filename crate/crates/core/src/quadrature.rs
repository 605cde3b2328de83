//! Gauss–Legendre quadrature on the reference interval [-1, 1].

use crate::error::{invalid, Result};

/// Maximum number of points supported by [`gauss_legendre_rule`].
pub const MAX_POINTS: usize = 10;

/// Default rule size used for assembly and error integrals.
pub const DEFAULT_POINTS: usize = 5;

/// Points and weights of a quadrature rule on [-1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Iterates `(point, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    /// Integrates `g` over the physical interval `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.iter().map(|(t, w)| w * g(mid + half * t)).sum::<f64>() * half
    }
}

/// Legendre polynomial P_n(t) and its derivative via the three-term recurrence.
fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * t * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (t * p1 - p0) / (t * t - 1.0);
    (p1, dp)
}

/// The `n`-point Gauss–Legendre rule, `1 <= n <= 10`.
///
/// Nodes are Newton-refined roots of P_n, returned in increasing order; the
/// rule is exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre_rule(n: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_POINTS).contains(&n) {
        return invalid(format!("quadrature size {n} outside 1..={MAX_POINTS}"));
    }
    let mut points = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, t);
            let step = p / dp;
            t -= step;
            if step.abs() <= 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, t);
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        // roots come out in decreasing order; fill symmetrically
        points[i] = -t;
        points[n - 1 - i] = t;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        points[n / 2] = 0.0;
    }
    Ok(QuadratureRule { points, weights })
}
