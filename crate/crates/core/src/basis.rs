//! Nodal Lagrange basis on the reference element [-1, 1].
//!
//! Nodes are the Gauss–Lobatto points, so both element endpoints are nodes:
//! the first basis function carries the left trace and the last one the right
//! trace, and interpolating a continuous function gives a continuous result.

use crate::error::{invalid, Error, Result};

/// Highest supported polynomial degree.
pub const MAX_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalBasis {
    degree: usize,
    nodes: Vec<f64>,
}

impl LocalBasis {
    pub fn new(degree: usize) -> Result<Self> {
        let nodes = match degree {
            1 => vec![-1.0, 1.0],
            2 => vec![-1.0, 0.0, 1.0],
            3 => {
                let r = 1.0 / 5f64.sqrt();
                vec![-1.0, -r, r, 1.0]
            }
            _ => return invalid(format!("polynomial degree {degree} outside 1..={MAX_DEGREE}")),
        };
        Ok(Self { degree, nodes })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of local degrees of freedom, `k + 1`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Value and reference derivative of ℓ_j at `t`.
    pub fn eval(&self, j: usize, t: f64) -> Result<(f64, f64)> {
        if j >= self.len() {
            return Err(Error::OutOfRange { index: j, len: self.len() });
        }
        Ok(self.eval_unchecked(j, t))
    }

    pub(crate) fn eval_unchecked(&self, j: usize, t: f64) -> (f64, f64) {
        let xj = self.nodes[j];
        let mut value = 1.0;
        let mut deriv = 0.0;
        for (m, &xm) in self.nodes.iter().enumerate() {
            if m == j {
                continue;
            }
            let denom = xj - xm;
            // product rule, accumulated left to right
            deriv = deriv * (t - xm) / denom + value / denom;
            value *= (t - xm) / denom;
        }
        (value, deriv)
    }

    /// All basis values and reference derivatives at `t`.
    pub fn eval_all(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        (0..self.len()).map(|j| self.eval_unchecked(j, t)).unzip()
    }
}

/// Basis values and derivatives tabulated at the points of a quadrature rule
/// and at both reference endpoints.
#[derive(Clone, Debug)]
pub struct Tabulation {
    /// `values[q][j] = ℓ_j(t_q)`
    pub values: Vec<Vec<f64>>,
    /// `derivs[q][j] = ℓ_j'(t_q)`
    pub derivs: Vec<Vec<f64>>,
    pub left_values: Vec<f64>,
    pub left_derivs: Vec<f64>,
    pub right_values: Vec<f64>,
    pub right_derivs: Vec<f64>,
}

impl Tabulation {
    pub fn new(basis: &LocalBasis, points: &[f64]) -> Self {
        let (values, derivs) = points.iter().map(|&t| basis.eval_all(t)).unzip();
        let (left_values, left_derivs) = basis.eval_all(-1.0);
        let (right_values, right_derivs) = basis.eval_all(1.0);
        Self { values, derivs, left_values, left_derivs, right_values, right_derivs }
    }
}
