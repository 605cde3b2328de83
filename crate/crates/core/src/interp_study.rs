//! Interpolation-error studies: size of `η = u - u*` for the Lagrange
//! interpolant and the weighted L² projection, split by mesh region.
//!
//! Maxima are taken over quadrature points and the one-sided element
//! endpoints, so the L∞ and W^{1,∞} values are lower bounds on the supremum.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::{MeshKind, MeshMeta, MeshVariant};
use crate::norms::{error_norms, lagrange_interpolant, weighted_l2_projection};
use crate::penalty::penalty_scheme_opts;
use crate::problem::layer_problem;
use crate::quadrature::gauss_legendre_rule;
use crate::space::{DgFunction, DgSpace};
use crate::studies::{build_mesh, MeshParam, StudyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterpKind {
    Lagrange,
    WeightedProjection,
}

impl InterpKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lagrange" | "interp" => Ok(Self::Lagrange),
            "projection" | "weighted-projection" | "l2" => Ok(Self::WeightedProjection),
            _ => Err(Error::Parse(format!("unknown interpolant kind '{s}'"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Lagrange => "lagrange",
            Self::WeightedProjection => "projection",
        }
    }
}

/// `‖η‖_∞`, `ε‖η'‖_∞`, `‖η‖_{L²}` and `ε^{1/2}|η|_{H¹}` over a set of elements.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RegionMeasures {
    pub linf: f64,
    pub w1inf: f64,
    pub l2: f64,
    pub h1: f64,
}

impl RegionMeasures {
    fn rate(a: &Self, b: &Self, ratio: f64) -> Self {
        let r = |x: f64, y: f64| (x / y).ln() / ratio.ln();
        Self { linf: r(a.linf, b.linf), w1inf: r(a.w1inf, b.w1inf), l2: r(a.l2, b.l2), h1: r(a.h1, b.h1) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpRow {
    pub variant: MeshKind,
    pub k: usize,
    pub n: usize,
    pub h: Option<f64>,
    /// `N^{-1} max|ψ'|` on S-type meshes, `H` on the graded mesh.
    pub scale: f64,
    /// S-type meshes only.
    pub coarse: Option<RegionMeasures>,
    /// S-type meshes only.
    pub fine: Option<RegionMeasures>,
    pub global: RegionMeasures,
    pub e_dg: f64,
    pub e_dgb: f64,
    /// `N^{-(k+1)} + ε^{1/2} N^{-k} max|ψ'|^{k+1/2}` on S-type meshes.
    pub envelope: Option<f64>,
}

/// Observed orders between two consecutive rows: coarse quantities in N,
/// fine quantities in `N^{-1} max|ψ'|`, graded-mesh quantities in H.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpRates {
    pub coarse: Option<RegionMeasures>,
    pub fine: Option<RegionMeasures>,
    pub global: RegionMeasures,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpStudy {
    pub kind: InterpKind,
    pub eps: f64,
    pub rows: Vec<InterpRow>,
}

impl InterpStudy {
    pub fn rates(&self) -> Vec<InterpRates> {
        self.rows
            .windows(2)
            .map(|w| {
                let (a, b) = (&w[0], &w[1]);
                let n_ratio = b.n as f64 / a.n as f64;
                let s_ratio = a.scale / b.scale;
                let g_ratio = if a.h.is_some() { s_ratio } else { n_ratio };
                InterpRates {
                    coarse: a.coarse.zip(b.coarse).map(|(x, y)| RegionMeasures::rate(&x, &y, n_ratio)),
                    fine: a.fine.zip(b.fine).map(|(x, y)| RegionMeasures::rate(&x, &y, s_ratio)),
                    global: RegionMeasures::rate(&a.global, &b.global, g_ratio),
                }
            })
            .collect()
    }
}

#[derive(Default)]
struct Accum {
    linf: f64,
    w1inf: f64,
    l2sq: f64,
    h1sq: f64,
}

impl Accum {
    fn finish(&self, eps: f64) -> RegionMeasures {
        RegionMeasures { linf: self.linf, w1inf: eps * self.w1inf, l2: self.l2sq.sqrt(), h1: (eps * self.h1sq).sqrt() }
    }
}

fn measure(
    w: &DgFunction,
    u: &dyn Fn(f64) -> f64,
    du: &dyn Fn(f64) -> f64,
    eps: f64,
    quad_points: usize,
) -> Result<(RegionMeasures, RegionMeasures, RegionMeasures)> {
    let quad = gauss_legendre_rule(quad_points)?;
    let mesh = w.space().mesh();
    let (mut coarse, mut fine, mut all) = (Accum::default(), Accum::default(), Accum::default());
    for e in 0..mesh.num_elements() {
        let (a, b) = mesh.element(e);
        let half = 0.5 * (b - a);
        let region = if mesh.element_is_coarse(e) { &mut coarse } else { &mut fine };
        let mut local = Accum::default();
        let mut sample = |t: f64, weight: f64| {
            let x = 0.5 * (a + b) + half * t;
            let (v, d) = w.eval_local(e, t);
            let (ev, ed) = (u(x) - v, du(x) - d);
            local.linf = local.linf.max(ev.abs());
            local.w1inf = local.w1inf.max(ed.abs());
            local.l2sq += weight * half * ev * ev;
            local.h1sq += weight * half * ed * ed;
        };
        for (t, wt) in quad.iter() {
            sample(t, wt);
        }
        sample(-1.0, 0.0);
        sample(1.0, 0.0);
        for acc in [region, &mut all] {
            acc.linf = acc.linf.max(local.linf);
            acc.w1inf = acc.w1inf.max(local.w1inf);
            acc.l2sq += local.l2sq;
            acc.h1sq += local.h1sq;
        }
    }
    Ok((coarse.finish(eps), fine.finish(eps), all.finish(eps)))
}

fn study_row(kind: InterpKind, variant: MeshVariant, param: MeshParam, k: usize, eps: f64, cfg: &StudyConfig) -> Result<InterpRow> {
    let problem = layer_problem(eps);
    let exact = problem.exact().ok_or(Error::MissingMetadata("layer problem has no exact solution"))?;
    let mesh = build_mesh(variant, param, eps, k, cfg)?;
    let quad = gauss_legendre_rule(cfg.quad_points)?;
    let sigma = penalty_scheme_opts(&mesh, eps, cfg.penalty_options())?;
    let space = DgSpace::new(mesh, k)?;
    let ui = match kind {
        InterpKind::Lagrange => lagrange_interpolant(&*exact.u, &space),
        InterpKind::WeightedProjection => weighted_l2_projection(&*exact.u, |x| problem.c(x), &space, &quad)?,
    };
    let (coarse, fine, global) = measure(&ui, &*exact.u, &*exact.du, eps, cfg.quad_points)?;
    let report = error_norms(&problem, &ui, &sigma, &quad)?;
    let mesh = space.mesh();
    let n = mesh.num_elements();
    let (scale, h, stype, envelope) = match mesh.meta() {
        MeshMeta::SType { max_psi_prime, .. } => {
            let nf = n as f64;
            let kf = k as f64;
            let env = nf.powf(-(kf + 1.0)) + eps.sqrt() * nf.powf(-kf) * max_psi_prime.powf(kf + 0.5);
            (max_psi_prime / nf, None, true, Some(env))
        }
        MeshMeta::DuranLombardi { h, .. } => (*h, Some(*h), false, None),
        MeshMeta::Custom => return Err(Error::MissingMetadata("interpolation study needs an S-type or DL mesh")),
    };
    Ok(InterpRow {
        variant: variant.kind,
        k,
        n,
        h,
        scale,
        coarse: stype.then_some(coarse),
        fine: stype.then_some(fine),
        global,
        e_dg: report.energy(),
        e_dgb: report.balanced(),
        envelope,
    })
}

/// Measures `η` for every mesh parameter of one `(variant, k, ε)` series.
pub fn interpolation_error_study(
    kind: InterpKind,
    variant: MeshVariant,
    k: usize,
    params: &[MeshParam],
    eps: f64,
    cfg: &StudyConfig,
) -> Result<InterpStudy> {
    let rows = params
        .par_iter()
        .map(|&p| study_row(kind, variant, p, k, eps, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(InterpStudy { kind, eps, rows })
}

pub const INTERP_HEADER: &str = "kind,variant,k,N,H,scale,region,linf,eps_w1inf,l2,sqrt_eps_h1,e_dG,e_dGb";

/// One CSV line per row and region.
pub fn interp_csv(study: &InterpStudy) -> String {
    let mut s = String::from(INTERP_HEADER);
    s.push('\n');
    for r in &study.rows {
        let regions = [("coarse", r.coarse), ("fine", r.fine), ("all", Some(r.global))];
        for (name, m) in regions {
            let Some(m) = m else { continue };
            s.push_str(&format!(
                "{},{},{},{},{},{:e},{},{:.3e},{:.3e},{:.3e},{:.3e},{:.3e},{:.3e}\n",
                study.kind.label(),
                r.variant.label(),
                r.k,
                r.n,
                r.h.map(|h| format!("{h:e}")).unwrap_or_default(),
                r.scale,
                name,
                m.linf,
                m.w1inf,
                m.l2,
                m.h1,
                r.e_dg,
                r.e_dgb
            ));
        }
    }
    s
}
