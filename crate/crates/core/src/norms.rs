//! Energy and balanced norms, interpolation and projection operators.
//!
//! For `w` in the broken space
//!
//! ```text
//! ‖w‖²_dG   = Σ ∫ ε² w'² + Σ ∫ c w² + Σ σ_i [w]_i²
//! ‖w‖²_dG,b = Σ ∫ ε  w'² + Σ ∫ c w² + Σ σ_i [w]_i²
//! ```

use crate::blocktri::{Block, Lu};
use crate::error::{invalid, Error, Result};
use crate::penalty::PenaltyScheme;
use crate::problem::ProblemSpec;
use crate::quadrature::QuadratureRule;
use crate::space::{DgFunction, DgSpace};

/// Squared contributions of one norm.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NormParts {
    /// ε²∫w'² (energy) or ε∫w'² (balanced).
    pub gradient: f64,
    /// ∫ c w².
    pub reaction: f64,
    /// Σ σ_i [w]_i².
    pub penalty: f64,
}

impl NormParts {
    pub fn squared(&self) -> f64 {
        self.gradient + self.reaction + self.penalty
    }

    pub fn norm(&self) -> f64 {
        self.squared().sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorReport {
    pub energy_parts: NormParts,
    pub balanced_parts: NormParts,
}

impl ErrorReport {
    /// `‖·‖_dG`.
    pub fn energy(&self) -> f64 {
        self.energy_parts.norm()
    }

    /// `‖·‖_dG,b`.
    pub fn balanced(&self) -> f64 {
        self.balanced_parts.norm()
    }
}

/// Norms of `g - w` where `g` is given pointwise (value, derivative) and is
/// continuous with zero boundary values, so `[g - w]_i = -[w]_i`.
fn norms_of_difference(
    w: &DgFunction,
    g: impl Fn(f64) -> (f64, f64),
    c: impl Fn(f64) -> f64,
    eps: f64,
    penalties: &PenaltyScheme,
    quad: &QuadratureRule,
) -> Result<ErrorReport> {
    let mesh = w.space().mesh();
    let n = mesh.num_elements();
    if penalties.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: penalties.len() });
    }
    let mut grad = 0.0;
    let mut react = 0.0;
    for e in 0..n {
        let (a, b) = mesh.element(e);
        let half = 0.5 * (b - a);
        for (t, wt) in quad.iter() {
            let x = 0.5 * (a + b) + half * t;
            let (wv, wd) = w.eval_local(e, t);
            let (gv, gd) = g(x);
            grad += wt * half * (gd - wd) * (gd - wd);
            react += wt * half * c(x) * (gv - wv) * (gv - wv);
        }
    }
    let mut pen = 0.0;
    for i in 0..=n {
        let (j, _) = w.jump_and_average(i)?;
        pen += penalties.get(i) * j * j;
    }
    Ok(ErrorReport {
        energy_parts: NormParts { gradient: eps * eps * grad, reaction: react, penalty: pen },
        balanced_parts: NormParts { gradient: eps * grad, reaction: react, penalty: pen },
    })
}

/// `‖u - u_h‖_dG` and `‖u - u_h‖_dG,b` for an explicitly supplied solution.
pub fn error_norms_with(
    u: impl Fn(f64) -> f64,
    du: impl Fn(f64) -> f64,
    uh: &DgFunction,
    penalties: &PenaltyScheme,
    c: impl Fn(f64) -> f64,
    eps: f64,
    quad: &QuadratureRule,
) -> Result<ErrorReport> {
    norms_of_difference(uh, |x| (u(x), du(x)), c, eps, penalties, quad)
}

/// Error norms against the problem's exact solution.
pub fn error_norms(
    problem: &ProblemSpec,
    uh: &DgFunction,
    penalties: &PenaltyScheme,
    quad: &QuadratureRule,
) -> Result<ErrorReport> {
    let exact = problem
        .exact()
        .ok_or(Error::MissingMetadata("problem has no exact solution"))?;
    error_norms_with(&*exact.u, &*exact.du, uh, penalties, |x| problem.c(x), problem.eps(), quad)
}

/// Norms of a discrete function itself.
pub fn discrete_norms(
    w: &DgFunction,
    problem: &ProblemSpec,
    penalties: &PenaltyScheme,
    quad: &QuadratureRule,
) -> Result<ErrorReport> {
    norms_of_difference(w, |_| (0.0, 0.0), |x| problem.c(x), problem.eps(), penalties, quad)
}

/// Observed order `log2(e_coarse / e_fine)` between a mesh and its refinement.
pub fn convergence_rate(e_coarse: f64, e_fine: f64) -> Result<f64> {
    if !(e_coarse > 0.0 && e_fine > 0.0) {
        return invalid(format!("errors must be positive, got {e_coarse} and {e_fine}"));
    }
    Ok((e_coarse / e_fine).ln() / std::f64::consts::LN_2)
}

/// Elementwise Lagrange interpolant at the mapped Gauss–Lobatto nodes.
///
/// Element endpoints are interpolation nodes, so the result is continuous.
pub fn lagrange_interpolant<'a>(u: impl Fn(f64) -> f64, space: &'a DgSpace) -> DgFunction<'a> {
    let nl = space.local_dim();
    let coeffs = (0..space.dim()).map(|p| u(space.node_coordinate(p / nl, p % nl))).collect();
    DgFunction::new(space, coeffs).expect("dimension matches by construction")
}

/// Weighted L² projection `(c u^π, ξ) = (c u, ξ)` for all `ξ` in the space.
///
/// The space is discontinuous, so this is one `(k+1) × (k+1)` weighted mass
/// system per element.
pub fn weighted_l2_projection<'a>(
    u: impl Fn(f64) -> f64,
    c: impl Fn(f64) -> f64,
    space: &'a DgSpace,
    quad: &QuadratureRule,
) -> Result<DgFunction<'a>> {
    let nl = space.local_dim();
    let basis = space.basis();
    let tab: Vec<Vec<f64>> = quad.points().iter().map(|&t| basis.eval_all(t).0).collect();
    let mut coeffs = Vec::with_capacity(space.dim());
    for e in 0..space.mesh().num_elements() {
        let (a, b) = space.mesh().element(e);
        let half = 0.5 * (b - a);
        let mut mass = Block::zeros(nl);
        let mut rhs = vec![0.0; nl];
        for (qi, (t, w)) in quad.iter().enumerate() {
            let x = 0.5 * (a + b) + half * t;
            let cx = c(x);
            let ux = u(x);
            let phi = &tab[qi];
            for p in 0..nl {
                rhs[p] += w * half * cx * ux * phi[p];
                for q in 0..nl {
                    mass.add(p, q, w * half * cx * phi[p] * phi[q]);
                }
            }
        }
        let lu = Lu::factor(&mass).ok_or(Error::SingularPivot { block: e })?;
        coeffs.extend(lu.solve(&rhs));
    }
    DgFunction::new(space, coeffs)
}
