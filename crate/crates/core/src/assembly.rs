//! Assembly and solution of the NIPG system.
//!
//! For `w, v` in the broken space the bilinear form is
//!
//! ```text
//! a(w, v) = Σ_i ∫_{I_i} (ε² w'v' + c w v) dx
//!         + Σ_{i=0}^{N} (ε² ⟨w'⟩_i [v]_i - ε² [w]_i ⟨v'⟩_i + σ_i [w]_i [v]_i)
//! ```
//!
//! and the load is `l(v) = Σ_i ∫_{I_i} f v dx`. Dirichlet data enter only
//! through the boundary jump conventions, so no degrees of freedom are
//! eliminated.

use crate::basis::Tabulation;
use crate::blocktri::BlockTridiagonal;
use crate::error::{Error, Result};
use crate::penalty::PenaltyScheme;
use crate::problem::ProblemSpec;
use crate::quadrature::QuadratureRule;
use crate::space::{DgFunction, DgSpace};

/// Assembled matrix `A_{pq} = a(φ_q, φ_p)` and load `b_p = l(φ_p)`.
#[derive(Clone, Debug)]
pub struct BlockTriSystem {
    pub matrix: BlockTridiagonal,
    pub rhs: Vec<f64>,
}

impl BlockTriSystem {
    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    /// `wᵀ A w`.
    pub fn quadratic_form(&self, w: &[f64]) -> f64 {
        self.matrix.mul_vec(w).iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// `‖A x - b‖₂ / ‖b‖₂`.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let ax = self.matrix.mul_vec(x);
        let r: f64 = ax.iter().zip(&self.rhs).map(|(a, b)| (a - b) * (a - b)).sum();
        let b: f64 = self.rhs.iter().map(|b| b * b).sum();
        (r / b).sqrt()
    }
}

/// One element's contribution to the traces at a node: `(element, local
/// jump coefficients, local average-derivative coefficients)`.
type TraceTerm = (usize, Vec<f64>, Vec<f64>);

fn node_traces(space: &DgSpace, tab: &Tabulation, i: usize) -> Vec<TraceTerm> {
    let mesh = space.mesh();
    let n = mesh.num_elements();
    let scale = |e: usize| 2.0 / mesh.width(e);
    let right_of = |e: usize, w: f64| -> TraceTerm {
        let s = scale(e);
        (e, tab.left_values.clone(), tab.left_derivs.iter().map(|d| w * d * s).collect())
    };
    let left_of = |e: usize, w: f64| -> TraceTerm {
        let s = scale(e);
        (
            e,
            tab.right_values.iter().map(|v| -v).collect(),
            tab.right_derivs.iter().map(|d| w * d * s).collect(),
        )
    };
    if i == 0 {
        vec![right_of(0, 1.0)]
    } else if i == n {
        vec![left_of(n - 1, 1.0)]
    } else {
        vec![left_of(i - 1, 0.5), right_of(i, 0.5)]
    }
}

/// Assembles the NIPG system with per-element quadrature.
pub fn assemble(
    space: &DgSpace,
    problem: &ProblemSpec,
    penalties: &PenaltyScheme,
    quad: &QuadratureRule,
) -> Result<BlockTriSystem> {
    let mesh = space.mesh();
    let n = mesh.num_elements();
    if penalties.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: penalties.len() });
    }
    let nl = space.local_dim();
    let eps2 = problem.eps() * problem.eps();
    let tab = Tabulation::new(space.basis(), quad.points());
    let mut matrix = BlockTridiagonal::zeros(n, nl);
    let mut rhs = vec![0.0; n * nl];

    for e in 0..n {
        let (a, b) = mesh.element(e);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let dscale = 1.0 / half;
        let block = &mut matrix.diag[e];
        for (qi, (t, w)) in quad.iter().enumerate() {
            let x = mid + half * t;
            let jw = w * half;
            let cx = problem.c(x);
            let fx = problem.f(x);
            let vals = &tab.values[qi];
            let ders = &tab.derivs[qi];
            for p in 0..nl {
                rhs[e * nl + p] += jw * fx * vals[p];
                for q in 0..nl {
                    let stiff = eps2 * ders[q] * ders[p] * dscale * dscale;
                    block.add(p, q, jw * (stiff + cx * vals[q] * vals[p]));
                }
            }
        }
    }

    for i in 0..=n {
        let sigma = penalties.get(i);
        let terms = node_traces(space, &tab, i);
        for (ep, jp, dp) in &terms {
            for (eq, jq, dq) in &terms {
                for p in 0..nl {
                    for q in 0..nl {
                        let v = eps2 * (dq[q] * jp[p] - jq[q] * dp[p]) + sigma * jq[q] * jp[p];
                        matrix.add(*ep, *eq, p, q, v);
                    }
                }
            }
        }
    }
    Ok(BlockTriSystem { matrix, rhs })
}

/// Solves the assembled system by block Thomas elimination.
pub fn solve<'a>(space: &'a DgSpace, system: &BlockTriSystem) -> Result<DgFunction<'a>> {
    if system.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: system.dim() });
    }
    let x = system.matrix.solve(&system.rhs)?;
    DgFunction::new(space, x)
}

/// `a(w, v)` evaluated from the traces and quadrature values of `w` and `v`
/// directly, without the assembled matrix.
pub fn bilinear_form(
    problem: &ProblemSpec,
    penalties: &PenaltyScheme,
    quad: &QuadratureRule,
    w: &DgFunction,
    v: &DgFunction,
) -> f64 {
    let mesh = w.space().mesh();
    let n = mesh.num_elements();
    let eps2 = problem.eps() * problem.eps();
    let mut total = 0.0;
    for e in 0..n {
        let (a, b) = mesh.element(e);
        let half = 0.5 * (b - a);
        for (t, wt) in quad.iter() {
            let x = 0.5 * (a + b) + half * t;
            let (wv, wd) = w.eval_local(e, t);
            let (vv, vd) = v.eval_local(e, t);
            total += wt * half * (eps2 * wd * vd + problem.c(x) * wv * vv);
        }
    }
    for i in 0..=n {
        let (jw, dw) = jump_and_mean_derivative(w, i);
        let (jv, dv) = jump_and_mean_derivative(v, i);
        total += eps2 * dw * jv - eps2 * jw * dv + penalties.get(i) * jw * jv;
    }
    total
}

/// `([v]_i, ⟨v'⟩_i)` with the boundary conventions of the method.
pub(crate) fn jump_and_mean_derivative(v: &DgFunction, i: usize) -> (f64, f64) {
    let n = v.space().mesh().num_elements();
    if i == 0 {
        let (val, d) = v.right_trace(0);
        (val, d)
    } else if i == n {
        let (val, d) = v.left_trace(n);
        (-val, d)
    } else {
        let (lv, ld) = v.left_trace(i);
        let (rv, rd) = v.right_trace(i);
        (rv - lv, 0.5 * (ld + rd))
    }
}
