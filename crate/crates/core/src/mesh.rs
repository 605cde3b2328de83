//! Layer-adapted meshes on [0, 1].
//!
//! Two families are provided:
//!
//! * Shishkin-type meshes (S, pS, BS, mBS). The mesh is equidistant on the
//!   coarse region `(λ, 1 - λ)` and graded inside the two layer regions by a
//!   mesh generating function `φ = -ln ψ` with `φ(0) = 0`, `φ(1/4) = ln N`.
//! * The Durán–Lombardi graded mesh, built by the recursion
//!   `x_i = (1 + H) x_{i-1}` after `⌊1/H⌋` initial cells of width `Hε`, and
//!   reflected about `1/2`.

use std::fmt;

use crate::error::{invalid, Result};

/// Default grading exponent of the polynomial Shishkin mesh.
pub const DEFAULT_PS_EXPONENT: f64 = 3.0;

/// Durán–Lombardi omission threshold: the point `x_{M-1}` (and its mirror) is
/// dropped when `1/2 - x_{M-1} < θ (x_{M-1} - x_{M-2})`.
pub const DEFAULT_OMISSION_THRESHOLD: f64 = 0.01;

/// Number of samples used when maximising `|ψ'|` numerically.
const PSI_SAMPLES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeshKind {
    /// Shishkin mesh, `ψ(t) = N^{-4t}`.
    Shishkin,
    /// Polynomial Shishkin mesh, `ψ(t) = N^{-(4t)^m}`.
    PolynomialShishkin,
    /// Bakhvalov–Shishkin mesh, `ψ(t) = 1 - 4(1 - 1/N) t`.
    BakhvalovShishkin,
    /// Modified Bakhvalov–Shishkin mesh, `ψ(t) = exp(-2t / (q - 2t))`.
    ModifiedBakhvalovShishkin,
    /// Durán–Lombardi recursively graded mesh.
    DuranLombardi,
}

impl MeshKind {
    /// Short label used in reports and on the command line.
    pub fn label(self) -> &'static str {
        match self {
            MeshKind::Shishkin => "S",
            MeshKind::PolynomialShishkin => "pS",
            MeshKind::BakhvalovShishkin => "BS",
            MeshKind::ModifiedBakhvalovShishkin => "mBS",
            MeshKind::DuranLombardi => "DL",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(MeshKind::Shishkin),
            "ps" => Ok(MeshKind::PolynomialShishkin),
            "bs" => Ok(MeshKind::BakhvalovShishkin),
            "mbs" => Ok(MeshKind::ModifiedBakhvalovShishkin),
            "dl" => Ok(MeshKind::DuranLombardi),
            _ => invalid(format!("unknown mesh variant '{s}'")),
        }
    }

    pub fn is_stype(self) -> bool {
        self != MeshKind::DuranLombardi
    }
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Mesh family plus its shape parameter.
///
/// `m` is only used by the polynomial Shishkin mesh. The mBS parameter
/// `q = 1/2 + 1/(2 ln N)` depends on N and is recomputed on every call.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshVariant {
    pub kind: MeshKind,
    pub m: f64,
}

impl MeshVariant {
    pub fn new(kind: MeshKind) -> Self {
        Self { kind, m: DEFAULT_PS_EXPONENT }
    }

    pub fn with_exponent(kind: MeshKind, m: f64) -> Result<Self> {
        if kind == MeshKind::PolynomialShishkin && !(m > 1.0) {
            return invalid(format!("pS exponent m must exceed 1, got {m}"));
        }
        Ok(Self { kind, m })
    }

    pub fn shishkin() -> Self {
        Self::new(MeshKind::Shishkin)
    }

    pub fn bakhvalov_shishkin() -> Self {
        Self::new(MeshKind::BakhvalovShishkin)
    }

    /// The mBS parameter `q = 1/2 + 1/(2 ln N)`.
    pub fn mbs_q(n: usize) -> f64 {
        0.5 + 0.5 / (n as f64).ln()
    }

    /// Mesh generating function `φ_1(t)` on `[0, 1/4]`.
    pub fn phi(&self, n: usize, t: f64) -> f64 {
        let ln_n = (n as f64).ln();
        match self.kind {
            MeshKind::Shishkin => 4.0 * t * ln_n,
            MeshKind::PolynomialShishkin => (4.0 * t).powf(self.m) * ln_n,
            MeshKind::BakhvalovShishkin => -(1.0 - 4.0 * (1.0 - 1.0 / n as f64) * t).ln(),
            MeshKind::ModifiedBakhvalovShishkin => {
                let q = Self::mbs_q(n);
                2.0 * t / (q - 2.0 * t)
            }
            MeshKind::DuranLombardi => f64::NAN,
        }
    }

    /// Mesh characterising function `ψ_1 = exp(-φ_1)`.
    pub fn psi(&self, n: usize, t: f64) -> f64 {
        match self.kind {
            MeshKind::BakhvalovShishkin => 1.0 - 4.0 * (1.0 - 1.0 / n as f64) * t,
            _ => (-self.phi(n, t)).exp(),
        }
    }

    /// `dψ_1/dt`, evaluated analytically.
    pub fn psi_prime(&self, n: usize, t: f64) -> f64 {
        let ln_n = (n as f64).ln();
        let dphi = match self.kind {
            MeshKind::Shishkin => 4.0 * ln_n,
            MeshKind::PolynomialShishkin => {
                4.0 * self.m * (4.0 * t).powf(self.m - 1.0) * ln_n
            }
            MeshKind::BakhvalovShishkin => return -4.0 * (1.0 - 1.0 / n as f64),
            MeshKind::ModifiedBakhvalovShishkin => {
                let q = Self::mbs_q(n);
                2.0 * q / ((q - 2.0 * t) * (q - 2.0 * t))
            }
            MeshKind::DuranLombardi => return f64::NAN,
        };
        -dphi * self.psi(n, t)
    }
}

impl fmt::Display for MeshVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.label())
    }
}

/// Region tag of a mesh node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `x_0` or `x_N`.
    Boundary,
    /// Layer region including the transition points.
    Fine,
    /// Strictly inside `(λ, 1 - λ)`.
    Coarse,
    /// Interior node of a graded mesh.
    Graded,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeshMeta {
    SType {
        variant: MeshVariant,
        lambda: f64,
        /// `(k+1)(ε/γ) ln N` exceeded 1/4 and λ was set to 1/4.
        clamped: bool,
        max_psi_prime: f64,
        eps: f64,
        gamma: f64,
        degree: usize,
    },
    DuranLombardi {
        h: f64,
        eps: f64,
        /// Index of the midpoint node `x_M = 1/2`.
        m: usize,
        /// Number of initial cells of width `Hε` on each side.
        ell: usize,
        /// Omission threshold θ the mesh was built with.
        theta: f64,
        omitted: bool,
    },
    /// Built from user supplied nodes.
    Custom,
}

/// A mesh `0 = x_0 < x_1 < ... < x_N = 1` with per-node region tags.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh1D {
    nodes: Vec<f64>,
    regions: Vec<Region>,
    meta: MeshMeta,
}

impl Mesh1D {
    /// Wraps arbitrary nodes. No validation is done here; see [`validate_mesh`].
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return invalid("a mesh needs at least two nodes");
        }
        let n = nodes.len() - 1;
        let regions = (0..=n)
            .map(|i| if i == 0 || i == n { Region::Boundary } else { Region::Graded })
            .collect();
        Ok(Self { nodes, regions, meta: MeshMeta::Custom })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn meta(&self) -> &MeshMeta {
        &self.meta
    }

    /// Number of elements N.
    pub fn num_elements(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Width of element `e` (0-based), i.e. `h_{e+1}`.
    pub fn width(&self, e: usize) -> f64 {
        self.nodes[e + 1] - self.nodes[e]
    }

    pub fn widths(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `(x_e, x_{e+1})` of element `e`.
    pub fn element(&self, e: usize) -> (f64, f64) {
        (self.nodes[e], self.nodes[e + 1])
    }

    /// Whether element `e` lies in the coarse region of an S-type mesh.
    pub fn element_is_coarse(&self, e: usize) -> bool {
        match self.meta {
            MeshMeta::SType { .. } => {
                let n = self.num_elements();
                e >= n / 4 && e < 3 * n / 4
            }
            _ => false,
        }
    }

    pub fn kind(&self) -> Option<MeshKind> {
        match &self.meta {
            MeshMeta::SType { variant, .. } => Some(variant.kind),
            MeshMeta::DuranLombardi { .. } => Some(MeshKind::DuranLombardi),
            MeshMeta::Custom => None,
        }
    }
}

/// Shishkin transition parameter `λ = min(1/4, (k+1)(ε/γ) ln N)`.
///
/// Returns `(λ, clamped)`.
pub fn transition_parameter(n: usize, eps: f64, gamma: f64, degree: usize) -> Result<(f64, bool)> {
    if n < 4 || !n.is_multiple_of(4) {
        return invalid(format!("N = {n} must be at least 4 and divisible by 4"));
    }
    if !(eps > 0.0) || !(gamma > 0.0) {
        return invalid(format!("ε = {eps} and γ = {gamma} must be positive"));
    }
    let raw = (degree as f64 + 1.0) * (eps / gamma) * (n as f64).ln();
    if raw >= 0.25 {
        Ok((0.25, true))
    } else {
        Ok((raw, false))
    }
}

/// `max_{t ∈ [0, 1/4]} |ψ_1'(t)|`.
///
/// Closed forms for the S- and BS-meshes, otherwise dense sampling followed
/// by golden-section refinement around the best sample.
pub fn max_psi_prime(variant: MeshVariant, n: usize) -> Result<f64> {
    if n < 4 {
        return invalid(format!("N = {n} must be at least 4"));
    }
    match variant.kind {
        MeshKind::Shishkin => Ok(4.0 * (n as f64).ln()),
        MeshKind::BakhvalovShishkin => Ok(4.0 * (1.0 - 1.0 / n as f64)),
        MeshKind::DuranLombardi => invalid("ψ is not defined for the Durán–Lombardi mesh"),
        _ => Ok(max_psi_prime_sampled(variant, n)),
    }
}

/// Numerical maximisation of `|ψ_1'|` on `[0, 1/4]`.
pub fn max_psi_prime_sampled(variant: MeshVariant, n: usize) -> f64 {
    let g = |t: f64| variant.psi_prime(n, t).abs();
    let step = 0.25 / PSI_SAMPLES as f64;
    let (best_i, best) = (0..=PSI_SAMPLES)
        .map(|i| (i, g(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let mut a = (best_i.saturating_sub(1)) as f64 * step;
    let mut b = ((best_i + 1).min(PSI_SAMPLES)) as f64 * step;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    for _ in 0..80 {
        if g(c) > g(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    best.max(g(0.5 * (a + b)))
}

/// Builds an S-type mesh with `N` elements.
///
/// Layer nodes are `x_i = λ φ(i/N) / ln N` for `i < N/4`, which equals
/// `(k+1)(ε/γ) φ(i/N)` whenever λ is not clamped, then `x_{N/4} = λ`,
/// equidistant coarse nodes up to `1/2`, and the mirror image `1 - x_{N-i}`.
pub fn build_stype_mesh(
    variant: MeshVariant,
    n: usize,
    eps: f64,
    gamma: f64,
    degree: usize,
) -> Result<Mesh1D> {
    if !variant.kind.is_stype() {
        return invalid("build_stype_mesh needs an S-type variant");
    }
    if variant.kind == MeshKind::PolynomialShishkin && !(variant.m > 1.0) {
        return invalid(format!("pS exponent m must exceed 1, got {}", variant.m));
    }
    let (lambda, clamped) = transition_parameter(n, eps, gamma, degree)?;
    let nf = n as f64;
    let ln_n = nf.ln();
    let quarter = n / 4;
    let mut nodes = vec![0.0; n + 1];
    for (i, x) in nodes.iter_mut().enumerate().take(n / 2 + 1) {
        *x = if i < quarter {
            lambda * variant.phi(n, i as f64 / nf) / ln_n
        } else if i == quarter {
            lambda
        } else {
            lambda + 2.0 * (1.0 - 2.0 * lambda) * (i as f64 / nf - 0.25)
        };
    }
    nodes[0] = 0.0;
    nodes[n / 2] = 0.5;
    for i in n / 2 + 1..=n {
        nodes[i] = 1.0 - nodes[n - i];
    }
    let regions = (0..=n)
        .map(|i| {
            if i == 0 || i == n {
                Region::Boundary
            } else if i > quarter && i < 3 * quarter {
                Region::Coarse
            } else {
                Region::Fine
            }
        })
        .collect();
    ensure_resolved(&nodes, eps)?;
    let max_psi_prime = max_psi_prime(variant, n)?;
    Ok(Mesh1D {
        nodes,
        regions,
        meta: MeshMeta::SType { variant, lambda, clamped, max_psi_prime, eps, gamma, degree },
    })
}

/// Mirrored layer nodes `1 - x_i` collapse once the cells near `x = 1` fall
/// below the double-precision spacing there.
fn ensure_resolved(nodes: &[f64], eps: f64) -> Result<()> {
    match nodes.windows(2).position(|w| !(w[1] > w[0])) {
        Some(i) => invalid(format!("ε = {eps:e} is too small: cell {i} has zero width in double precision")),
        None => Ok(()),
    }
}

/// Builds the Durán–Lombardi mesh with the default omission threshold.
pub fn build_dl_mesh(h: f64, eps: f64) -> Result<Mesh1D> {
    build_dl_mesh_with(h, eps, DEFAULT_OMISSION_THRESHOLD)
}

/// Builds the Durán–Lombardi mesh.
///
/// The left half is `x_i = iHε` for `i <= ℓ = ⌊1/H⌋`, then
/// `x_i = (1 + H) x_{i-1}` while the next point stays below `1/2`, then
/// `x_M = 1/2`. The right half is the reflection `x_{M+i} = 1 - x_{M-i}`.
pub fn build_dl_mesh_with(h: f64, eps: f64, omission_threshold: f64) -> Result<Mesh1D> {
    if !(h > 0.0 && h < 1.0) {
        return invalid(format!("H = {h} must lie in (0, 1)"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("ε = {eps} must lie in (0, 1)"));
    }
    if h * eps >= 0.5 {
        return invalid(format!("Hε = {} must be below 1/2", h * eps));
    }
    let ell = (1.0 / h).floor() as usize;
    let mut left = vec![0.0];
    loop {
        let i = left.len();
        let last = *left.last().unwrap_or(&0.0);
        let next = if i <= ell { i as f64 * h * eps } else { (1.0 + h) * last };
        if next >= 0.5 {
            break;
        }
        left.push(next);
    }
    let mut omitted = false;
    if left.len() >= 3 {
        let xm1 = left[left.len() - 1];
        let xm2 = left[left.len() - 2];
        if 0.5 - xm1 < omission_threshold * (xm1 - xm2) {
            left.pop();
            omitted = true;
        }
    }
    left.push(0.5);
    let m = left.len() - 1;
    let mut nodes = left.clone();
    nodes.extend(left[..m].iter().rev().map(|x| 1.0 - x));
    ensure_resolved(&nodes, eps)?;
    let n = nodes.len() - 1;
    let regions = (0..=n)
        .map(|i| if i == 0 || i == n { Region::Boundary } else { Region::Graded })
        .collect();
    Ok(Mesh1D { nodes, regions, meta: MeshMeta::DuranLombardi { h, eps, m, ell: ell.min(m), theta: omission_threshold, omitted } })
}

/// Severity of a validation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Structural property that must hold.
    Required,
    /// Constant-dependent bound; the measured ratio is reported only.
    Advisory,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &str, kind: CheckKind, passed: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), kind, passed, detail });
    }

    /// True when every required check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.kind == CheckKind::Required).all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.kind == CheckKind::Required && !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.kind, c.passed) {
                (CheckKind::Advisory, _) => "INFO",
                (_, true) => "PASS",
                (_, false) => "FAIL",
            };
            writeln!(f, "{status:4} {:<24} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Checks a mesh against the structural properties of its family.
pub fn validate_mesh(mesh: &Mesh1D) -> ValidationReport {
    const TOL: f64 = 1e-12;
    let mut report = ValidationReport::default();
    let x = mesh.nodes();
    let n = mesh.num_elements();
    let widths = mesh.widths();

    let endpoints = x[0] == 0.0 && (x[n] - 1.0).abs() <= TOL;
    report.push(
        "endpoints",
        CheckKind::Required,
        endpoints,
        format!("x_0 = {:e}, x_N = {:e}", x[0], x[n]),
    );

    let bad = widths.iter().position(|&h| !(h > 0.0));
    report.push(
        "monotone",
        CheckKind::Required,
        bad.is_none(),
        match bad {
            Some(i) => format!("h_{} = {:e} is not positive", i + 1, widths[i]),
            None => format!("min h = {:e}", widths.iter().cloned().fold(f64::INFINITY, f64::min)),
        },
    );

    let total: f64 = widths.iter().sum();
    report.push(
        "width-sum",
        CheckKind::Required,
        (total - 1.0).abs() <= TOL,
        format!("Σh = {total:.17}"),
    );

    let asym = (0..=n).map(|i| (x[n - i] - (1.0 - x[i])).abs()).fold(0.0, f64::max);
    report.push("symmetry", CheckKind::Required, asym <= TOL, format!("max |x_(N-i) - (1 - x_i)| = {asym:e}"));

    match mesh.meta() {
        MeshMeta::SType { lambda, eps, degree, max_psi_prime, .. } => {
            let nf = n as f64;
            let q = n / 4;
            let anchor = (x[q] - lambda).abs().max((x[3 * q] - (1.0 - lambda)).abs());
            report.push(
                "transition-points",
                CheckKind::Required,
                anchor <= TOL * lambda.max(1e-300) || anchor == 0.0,
                format!("|x_(N/4) - λ|, |x_(3N/4) - (1-λ)| ≤ {anchor:e}"),
            );
            let coarse = &widths[q..3 * q];
            let (lo, hi) = coarse
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &h| (lo.min(h), hi.max(h)));
            let ok = lo * nf >= 1.0 - TOL && hi * nf <= 2.0 + TOL;
            report.push(
                "coarse-widths",
                CheckKind::Required,
                ok,
                format!("N h ∈ [{:.6}, {:.6}] (need [1, 2])", lo * nf, hi * nf),
            );
            let fine: Vec<f64> = widths[..q].iter().chain(&widths[3 * q..]).copied().collect();
            let scale = (*degree as f64 + 1.0) * eps / nf;
            let fmin = fine.iter().cloned().fold(f64::INFINITY, f64::min);
            let fmax = fine.iter().cloned().fold(0.0, f64::max);
            report.push(
                "fine-min-width",
                CheckKind::Advisory,
                true,
                format!("min h / ((k+1)ε/N) = {:.4e}", fmin / scale),
            );
            report.push(
                "fine-max-width",
                CheckKind::Advisory,
                true,
                format!(
                    "max h / ((k+1)ε/N) = {:.4e}, max|ψ'| = {:.4e}",
                    fmax / scale,
                    max_psi_prime
                ),
            );
        }
        MeshMeta::DuranLombardi { h, eps, m, ell, theta, omitted } => {
            let first_ok = (0..*ell).all(|i| {
                ((widths[i] - h * eps).abs() <= TOL * h * eps)
                    && ((widths[n - 1 - i] - h * eps).abs() <= 1e-9 * h * eps + 4.0 * f64::EPSILON)
            });
            report.push(
                "initial-cells",
                CheckKind::Required,
                first_ok,
                format!("first ℓ = {ell} cells of width Hε on each side"),
            );
            // merging the dropped cell stretches the last step by at most θ(1 + H)
            let slack = if *omitted { 1.0 + theta * (1.0 + h) } else { 1.0 } * (1.0 + 1e-12);
            let step_ok = (*ell + 1..=*m).all(|i| widths[i - 1] <= slack * h * x[i - 1]);
            report.push("step-size", CheckKind::Required, step_ok, "h_i ≤ H x_(i-1), ℓ < i ≤ M".into());
            let hmax = widths.iter().cloned().fold(0.0, f64::max);
            let hmin = widths.iter().cloned().fold(f64::INFINITY, f64::min);
            report.push("max-width", CheckKind::Required, hmax <= *h, format!("max h / H = {:.4}", hmax / h));
            report.push(
                "min-width",
                CheckKind::Advisory,
                true,
                format!("min h / (Hε) = {:.4}", hmin / (h * eps)),
            );
        }
        MeshMeta::Custom => {}
    }
    report
}
