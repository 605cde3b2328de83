//! Convergence, ε-robustness and slope studies on the layer test problem.

use rayon::prelude::*;

use crate::assembly::{assemble, solve};
use crate::error::{invalid, Error, Result};
use crate::mesh::{build_dl_mesh_with, build_stype_mesh, Mesh1D, MeshKind, MeshMeta, MeshVariant, DEFAULT_OMISSION_THRESHOLD};
use crate::norms::{error_norms, ErrorReport};
use crate::penalty::{penalty_scheme_opts, BoundaryPenalty, PenaltyOptions};
use crate::problem::{layer_problem, ProblemSpec};
use crate::quadrature::{gauss_legendre_rule, DEFAULT_POINTS};
use crate::space::DgSpace;

/// Layer decay rate used to build the Shishkin-type meshes of the studies.
///
/// Fitted against the published convergence tables; see the README.
pub const CALIBRATED_GAMMA: f64 = 0.402;

/// Layer-node penalty multiplier used by the studies; see [`PenaltyOptions`].
pub const CALIBRATED_LAYER_SCALE: f64 = 4.0;

/// Parameters shared by all studies.
#[derive(Clone, Debug, PartialEq)]
pub struct StudyConfig {
    pub variants: Vec<MeshVariant>,
    pub degrees: Vec<usize>,
    /// Numbers of elements for S-type meshes.
    pub sizes: Vec<usize>,
    /// Grading parameters H for the Durán–Lombardi mesh.
    pub mesh_params: Vec<f64>,
    pub eps: Vec<f64>,
    pub gamma: f64,
    pub quad_points: usize,
    pub boundary_penalty: BoundaryPenalty,
    pub layer_penalty_scale: f64,
    pub omission_threshold: f64,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            variants: [
                MeshKind::Shishkin,
                MeshKind::PolynomialShishkin,
                MeshKind::BakhvalovShishkin,
                MeshKind::ModifiedBakhvalovShishkin,
            ]
            .into_iter()
            .map(MeshVariant::new)
            .collect(),
            degrees: vec![1, 2, 3],
            sizes: (4..=10).map(|p| 1usize << p).collect(),
            mesh_params: (1..=6).map(|j| 2f64.powi(-j)).collect(),
            eps: vec![2f64.powi(-20)],
            gamma: CALIBRATED_GAMMA,
            quad_points: DEFAULT_POINTS,
            boundary_penalty: BoundaryPenalty::Unit,
            layer_penalty_scale: CALIBRATED_LAYER_SCALE,
            omission_threshold: DEFAULT_OMISSION_THRESHOLD,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.variants.is_empty() || self.degrees.is_empty() || self.eps.is_empty() {
            return invalid("study needs at least one variant, degree and ε");
        }
        if let Some(k) = self.degrees.iter().find(|k| !(1..=3).contains(*k)) {
            return invalid(format!("degree {k} outside 1..=3"));
        }
        if let Some(n) = self.sizes.iter().find(|&&n| n < 4 || n % 4 != 0) {
            return invalid(format!("N = {n} must be at least 4 and divisible by 4"));
        }
        if let Some(e) = self.eps.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
            return invalid(format!("ε = {e} outside (0, 1)"));
        }
        if let Some(h) = self.mesh_params.iter().find(|&&h| !(h > 0.0 && h < 1.0)) {
            return invalid(format!("H = {h} outside (0, 1)"));
        }
        if !(self.gamma > 0.0) {
            return invalid(format!("γ = {} must be positive", self.gamma));
        }
        if !(self.layer_penalty_scale > 0.0) {
            return invalid(format!("layer penalty scale {} must be positive", self.layer_penalty_scale));
        }
        gauss_legendre_rule(self.quad_points)?;
        Ok(())
    }

    pub fn penalty_options(&self) -> PenaltyOptions {
        PenaltyOptions { boundary: self.boundary_penalty, layer_scale: self.layer_penalty_scale }
    }

    fn series_params(&self, kind: MeshKind) -> Vec<MeshParam> {
        if kind == MeshKind::DuranLombardi {
            self.mesh_params.iter().map(|&h| MeshParam::Grading(h)).collect()
        } else {
            self.sizes.iter().map(|&n| MeshParam::Elements(n)).collect()
        }
    }
}

/// Mesh resolution parameter: N for S-type meshes, H for Durán–Lombardi.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeshParam {
    Elements(usize),
    Grading(f64),
}

/// One solved case.
#[derive(Clone, Debug, PartialEq)]
pub struct StudyRow {
    pub variant: MeshKind,
    pub k: usize,
    /// Number of elements (N_DL for the graded mesh).
    pub n: usize,
    /// Grading parameter, Durán–Lombardi only.
    pub h: Option<f64>,
    pub eps: f64,
    pub gamma: f64,
    pub e_dg: f64,
    pub rate_dg: Option<f64>,
    pub e_dgb: f64,
    pub rate_dgb: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StudyResult {
    pub rows: Vec<StudyRow>,
}

impl StudyResult {
    /// Rows of one `(variant, k, ε)` series, in order.
    pub fn series(&self, variant: MeshKind, k: usize, eps: f64) -> Vec<&StudyRow> {
        self.rows.iter().filter(|r| r.variant == variant && r.k == k && r.eps == eps).collect()
    }

    pub fn find(&self, variant: MeshKind, k: usize, n: usize) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.variant == variant && r.k == k && r.n == n)
    }
}

/// Result of solving one case.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub mesh: Mesh1D,
    pub report: ErrorReport,
    pub relative_residual: f64,
}

/// Builds the mesh for a single case.
pub fn build_mesh(variant: MeshVariant, param: MeshParam, eps: f64, k: usize, cfg: &StudyConfig) -> Result<Mesh1D> {
    match (variant.kind, param) {
        (MeshKind::DuranLombardi, MeshParam::Grading(h)) => build_dl_mesh_with(h, eps, cfg.omission_threshold),
        (kind, MeshParam::Elements(n)) if kind.is_stype() => build_stype_mesh(variant, n, eps, cfg.gamma, k),
        _ => invalid(format!("mesh parameter {param:?} does not fit variant {}", variant.kind)),
    }
}

/// Solves the layer problem on one mesh and measures both error norms.
pub fn run_case(variant: MeshVariant, param: MeshParam, eps: f64, k: usize, cfg: &StudyConfig) -> Result<CaseResult> {
    let mesh = build_mesh(variant, param, eps, k, cfg)?;
    solve_on_mesh(&layer_problem(eps), mesh, k, cfg)
}

/// Solves `problem` on `mesh` with degree `k` using the configured penalties.
pub fn solve_on_mesh(problem: &ProblemSpec, mesh: Mesh1D, k: usize, cfg: &StudyConfig) -> Result<CaseResult> {
    let quad = gauss_legendre_rule(cfg.quad_points)?;
    let sigma = penalty_scheme_opts(&mesh, problem.eps(), cfg.penalty_options())?;
    let space = DgSpace::new(mesh, k)?;
    let system = assemble(&space, problem, &sigma, &quad)?;
    let uh = solve(&space, &system)?;
    let relative_residual = system.relative_residual(uh.coeffs());
    let report = error_norms(problem, &uh, &sigma, &quad)?;
    Ok(CaseResult { mesh: space.mesh().clone(), report, relative_residual })
}

fn row_from(variant: MeshVariant, param: MeshParam, eps: f64, k: usize, cfg: &StudyConfig) -> Result<StudyRow> {
    let case = run_case(variant, param, eps, k, cfg)?;
    Ok(StudyRow {
        variant: variant.kind,
        k,
        n: case.mesh.num_elements(),
        h: match param {
            MeshParam::Grading(h) => Some(h),
            MeshParam::Elements(_) => None,
        },
        eps,
        gamma: cfg.gamma,
        e_dg: case.report.energy(),
        rate_dg: None,
        e_dgb: case.report.balanced(),
        rate_dgb: None,
    })
}

/// Runs every `(variant, k, ε)` series over the configured N (or H) values
/// and fills in rates between consecutive rows of each series.
///
/// Rows are solved in parallel; output order follows the configuration.
pub fn run_convergence_study(cfg: &StudyConfig) -> Result<StudyResult> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for v in &cfg.variants {
        for &k in &cfg.degrees {
            for &eps in &cfg.eps {
                for p in cfg.series_params(v.kind) {
                    jobs.push((*v, p, eps, k));
                }
            }
        }
    }
    let mut rows = jobs
        .par_iter()
        .map(|&(v, p, eps, k)| row_from(v, p, eps, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    fill_rates(&mut rows);
    Ok(StudyResult { rows })
}

/// Rate between consecutive rows of the same series, scaled by the
/// refinement factor so doubling N (or halving H) gives `log2` of the
/// error ratio.
fn fill_rates(rows: &mut [StudyRow]) {
    for i in 0..rows.len().saturating_sub(1) {
        let (a, b) = (&rows[i], &rows[i + 1]);
        if a.variant != b.variant || a.k != b.k || a.eps != b.eps {
            continue;
        }
        let refinement = match (a.h, b.h) {
            (Some(ha), Some(hb)) => ha / hb,
            _ => b.n as f64 / a.n as f64,
        };
        if !(refinement > 1.0) {
            continue;
        }
        let rate = |ea: f64, eb: f64| (ea / eb).ln() / refinement.ln();
        let (pd, pb) = (rate(a.e_dg, b.e_dg), rate(a.e_dgb, b.e_dgb));
        rows[i].rate_dg = Some(pd);
        rows[i].rate_dgb = Some(pb);
    }
}

/// Fixed mesh resolution and degree, one row per ε; no rates.
pub fn run_epsilon_sweep(cfg: &StudyConfig) -> Result<StudyResult> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for v in &cfg.variants {
        for &k in &cfg.degrees {
            for p in cfg.series_params(v.kind) {
                for &eps in &cfg.eps {
                    jobs.push((*v, p, eps, k));
                }
            }
        }
    }
    let rows = jobs
        .par_iter()
        .map(|&(v, p, eps, k)| row_from(v, p, eps, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(StudyResult { rows })
}

/// One ε of the slope study.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeRow {
    pub eps: f64,
    pub h: f64,
    pub n: usize,
    /// `n` equals the requested target.
    pub exact_hit: bool,
    pub e_dg: f64,
    pub e_dgb: f64,
    /// `N^{-k} (ln(1/ε))^{k+1/2}`.
    pub reference: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeStudy {
    pub target_n: usize,
    pub k: usize,
    pub rows: Vec<SlopeRow>,
}

impl SlopeStudy {
    /// Least-squares slope of `ln e_dGb` against `ln ln(1/ε)`.
    pub fn measured_slope(&self) -> f64 {
        fit_slope(self.rows.iter().map(|r| ((1.0 / r.eps).ln().ln(), r.e_dgb.ln())))
    }

    /// Same fit applied to the reference column.
    pub fn reference_slope(&self) -> f64 {
        fit_slope(self.rows.iter().map(|r| ((1.0 / r.eps).ln().ln(), r.reference.ln())))
    }
}

/// Ordinary least-squares slope.
pub fn fit_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Finds H such that the Durán–Lombardi mesh has exactly `target` elements,
/// by bisection in `ln H`. The element count is nonincreasing in H.
///
/// Returns the closest achievable `(H, N)` when no H hits the target.
pub fn grading_for_target(target: usize, eps: f64, omission_threshold: f64) -> Result<(f64, usize)> {
    let count = |h: f64| build_dl_mesh_with(h, eps, omission_threshold).map(|m| m.num_elements());
    const H_MIN: f64 = 1e-6;
    let mut hi = (0.5 / eps).min(0.999_999);
    let n_hi = count(hi)?;
    let mut lo = hi;
    let mut n_lo = n_hi;
    while n_lo < target && lo > H_MIN {
        hi = lo;
        lo = (lo / 2.0).max(H_MIN);
        n_lo = count(lo)?;
    }
    let n_hi = if hi == lo { n_hi } else { count(hi)? };
    if n_lo < target || n_hi > target {
        let (h, n) = if n_lo < target { (lo, n_lo) } else { (hi, n_hi) };
        return Err(Error::TargetNotReached { target, nearest: n, h });
    }
    let mut best = if n_lo.abs_diff(target) <= n_hi.abs_diff(target) { (lo, n_lo) } else { (hi, n_hi) };
    for _ in 0..200 {
        let mid = (0.5 * (lo.ln() + hi.ln())).exp();
        let n = count(mid)?;
        if n.abs_diff(target) < best.1.abs_diff(target) {
            best = (mid, n);
        }
        if n == target {
            return Ok((mid, n));
        }
        if n > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < 1e-15 {
            break;
        }
    }
    Ok(best)
}

/// For every ε, tunes H so the graded mesh has `target_n` elements, solves,
/// and records the balanced error next to `N^{-k} (ln(1/ε))^{k+1/2}`.
pub fn run_slope_study(target_n: usize, k: usize, eps_list: &[f64], cfg: &StudyConfig) -> Result<SlopeStudy> {
    if eps_list.len() < 2 {
        return invalid("slope study needs at least two values of ε");
    }
    let rows = eps_list
        .par_iter()
        .map(|&eps| -> Result<SlopeRow> {
            let (h, n) = grading_for_target(target_n, eps, cfg.omission_threshold)?;
            let case = run_case(MeshVariant::new(MeshKind::DuranLombardi), MeshParam::Grading(h), eps, k, cfg)?;
            debug_assert_eq!(case.mesh.num_elements(), n);
            let reference = (n as f64).powi(-(k as i32)) * (1.0 / eps).ln().powf(k as f64 + 0.5);
            Ok(SlopeRow {
                eps,
                h,
                n,
                exact_hit: n == target_n,
                e_dg: case.report.energy(),
                e_dgb: case.report.balanced(),
                reference,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SlopeStudy { target_n, k, rows })
}

/// Mesh summary used by the CLI.
pub fn describe_mesh(mesh: &Mesh1D) -> String {
    match mesh.meta() {
        MeshMeta::SType { variant, lambda, clamped, max_psi_prime, .. } => format!(
            "{variant}-mesh N={} λ={lambda:e}{} max|ψ'|={max_psi_prime:.6}",
            mesh.num_elements(),
            if *clamped { " (clamped)" } else { "" }
        ),
        MeshMeta::DuranLombardi { h, m, ell, omitted, .. } => format!(
            "DL-mesh H={h:e} N={} M={m} ℓ={ell}{}",
            mesh.num_elements(),
            if *omitted { " (x_(M-1) omitted)" } else { "" }
        ),
        MeshMeta::Custom => format!("custom mesh N={}", mesh.num_elements()),
    }
}
