//! Problem data for `-ε² u'' + c u = f` on (0, 1) with `u(0) = u(1) = 0`.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Result};

/// Shared scalar function of one variable.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of sample points used to check `c(x) >= γ̃²`.
const COERCIVITY_SAMPLES: usize = 10_000;

/// Analytic solution and derivative, used for error measurement.
#[derive(Clone)]
pub struct ExactSolution {
    pub u: ScalarFn,
    pub du: ScalarFn,
}

#[derive(Clone)]
pub struct ProblemSpec {
    eps: f64,
    c: ScalarFn,
    f: ScalarFn,
    exact: Option<ExactSolution>,
    gamma_tilde: f64,
    gamma: f64,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("eps", &self.eps)
            .field("gamma_tilde", &self.gamma_tilde)
            .field("gamma", &self.gamma)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    /// Validates `ε ∈ (0, 1]` and `c(x) >= γ̃² > 0` on a uniform sample grid.
    ///
    /// The layer decay rate `γ` defaults to `min(1, γ̃)`.
    pub fn new(eps: f64, c: ScalarFn, f: ScalarFn, gamma_tilde: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return invalid(format!("ε = {eps} must lie in (0, 1]"));
        }
        if !(gamma_tilde > 0.0) {
            return invalid(format!("γ̃ = {gamma_tilde} must be positive"));
        }
        let floor = gamma_tilde * gamma_tilde;
        let tol = floor * 4.0 * f64::EPSILON;
        for i in 0..=COERCIVITY_SAMPLES {
            let x = i as f64 / COERCIVITY_SAMPLES as f64;
            let cx = c(x);
            if !(cx >= floor - tol) {
                return invalid(format!("c({x}) = {cx} is below γ̃² = {floor}"));
            }
        }
        Ok(Self { eps, c, f, exact: None, gamma_tilde, gamma: gamma_tilde.min(1.0) })
    }

    pub fn with_exact(mut self, u: ScalarFn, du: ScalarFn) -> Self {
        self.exact = Some(ExactSolution { u, du });
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= self.gamma_tilde) {
            return invalid(format!("γ = {gamma} must lie in (0, γ̃ = {}]", self.gamma_tilde));
        }
        self.gamma = gamma;
        Ok(self)
    }

    /// Same problem with the right-hand side multiplied by `alpha`.
    pub fn scaled_rhs(&self, alpha: f64) -> Self {
        let f = self.f.clone();
        Self { f: Arc::new(move |x| alpha * f(x)), exact: None, ..self.clone() }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn c(&self, x: f64) -> f64 {
        (self.c)(x)
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn c_fn(&self) -> &ScalarFn {
        &self.c
    }

    pub fn exact(&self) -> Option<&ExactSolution> {
        self.exact.as_ref()
    }

    pub fn gamma_tilde(&self) -> f64 {
        self.gamma_tilde
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `f(x) = -ε² u''(x) + c(x) u(x)` for a prescribed solution.
pub fn manufacture_rhs(ddu: ScalarFn, u: ScalarFn, c: ScalarFn, eps: f64) -> ScalarFn {
    let eps2 = eps * eps;
    Arc::new(move |x| -eps2 * ddu(x) + c(x) * u(x))
}

/// Layer part `(e^{-x/ε} + e^{-(1-x)/ε}) / (1 + e^{-1/ε})` and its first two
/// derivatives. Exponentials below the double range underflow to zero.
fn layer_terms(x: f64, eps: f64) -> (f64, f64, f64) {
    let a = (-x / eps).exp();
    let b = (-(1.0 - x) / eps).exp();
    let denom = 1.0 + (-1.0 / eps).exp();
    ((a + b) / denom, (b - a) / (eps * denom), (a + b) / (eps * eps * denom))
}

/// Test problem with `c(x) = 3 - x²` and two exponential boundary layers:
///
/// ```text
/// u(x) = (e^{-x/ε} + e^{-(1-x)/ε}) / (1 + e^{-1/ε}) - 1 + x²(1 - x)²
/// ```
pub fn layer_problem(eps: f64) -> ProblemSpec {
    let u: ScalarFn = Arc::new(move |x| layer_terms(x, eps).0 - 1.0 + x * x * (1.0 - x) * (1.0 - x));
    let du: ScalarFn = Arc::new(move |x| {
        layer_terms(x, eps).1 + 2.0 * x * (1.0 - x) * (1.0 - x) - 2.0 * x * x * (1.0 - x)
    });
    let ddu: ScalarFn = Arc::new(move |x| {
        layer_terms(x, eps).2 + 2.0 * (1.0 - x) * (1.0 - x) - 8.0 * x * (1.0 - x) + 2.0 * x * x
    });
    let c: ScalarFn = Arc::new(|x| 3.0 - x * x);
    let f = manufacture_rhs(ddu, u.clone(), c.clone(), eps);
    ProblemSpec::new(eps, c, f, 2f64.sqrt())
        .expect("layer problem data is valid")
        .with_exact(u, du)
}

/// `-u'' + u = 1` with solution `1 - cosh(x - 1/2) / cosh(1/2)`.
pub fn unperturbed_problem() -> ProblemSpec {
    let ch = 0.5f64.cosh();
    ProblemSpec::new(1.0, Arc::new(|_| 1.0), Arc::new(|_| 1.0), 1.0)
        .expect("valid data")
        .with_exact(
            Arc::new(move |x| 1.0 - (x - 0.5).cosh() / ch),
            Arc::new(move |x| -(x - 0.5).sinh() / ch),
        )
}
