//! Structural checks shared by the integration and acceptance tests.

#![allow(dead_code)]

use nipg::norms::discrete_norms;
use nipg::prelude::*;
use nipg::studies::{StudyConfig, CALIBRATED_GAMMA};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A small problem instance with everything needed to assemble it.
pub struct Smoke {
    pub label: String,
    pub problem: ProblemSpec,
    pub space: DgSpace,
    pub sigma: PenaltyScheme,
    pub quad: QuadratureRule,
}

impl Smoke {
    pub fn system(&self) -> BlockTriSystem {
        assemble(&self.space, &self.problem, &self.sigma, &self.quad).unwrap()
    }
}

pub fn smoke(kind: MeshKind, k: usize, n: usize, h: f64, eps: f64) -> Smoke {
    let cfg = StudyConfig::default();
    let mesh = if kind == MeshKind::DuranLombardi {
        build_dl_mesh(h, eps).unwrap()
    } else {
        build_stype_mesh(MeshVariant::new(kind), n, eps, CALIBRATED_GAMMA, k).unwrap()
    };
    let sigma = penalty_scheme_opts(&mesh, eps, cfg.penalty_options()).unwrap();
    Smoke {
        label: format!("{} k={k} N={} ε={eps:e}", kind.label(), mesh.num_elements()),
        problem: layer_problem(eps),
        space: DgSpace::new(mesh, k).unwrap(),
        sigma,
        quad: gauss_legendre_rule(5).unwrap(),
    }
}

/// One case per mesh family and degree at two values of ε.
pub fn smoke_cases() -> Vec<Smoke> {
    let mut out = Vec::new();
    for eps in [2f64.powi(-4), 2f64.powi(-20)] {
        out.push(smoke(MeshKind::Shishkin, 1, 16, 0.0, eps));
        out.push(smoke(MeshKind::PolynomialShishkin, 3, 16, 0.0, eps));
        out.push(smoke(MeshKind::BakhvalovShishkin, 2, 32, 0.0, eps));
        out.push(smoke(MeshKind::ModifiedBakhvalovShishkin, 1, 32, 0.0, eps));
        out.push(smoke(MeshKind::DuranLombardi, 2, 0, 0.25, eps));
    }
    out
}

/// Largest relative gap between `wᵀAw` and `‖w‖²_dG` over random `w`.
pub fn coercivity_gap(s: &Smoke, samples: usize, seed: u64) -> f64 {
    let system = s.system();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let w: Vec<f64> = (0..s.space.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let quad_form = system.quadratic_form(&w);
        let f = s.space.function(w).unwrap();
        let norm2 = discrete_norms(&f, &s.problem, &s.sigma, &s.quad).unwrap().energy_parts.squared();
        worst = worst.max((quad_form - norm2).abs() / norm2);
    }
    worst
}

/// Unit coefficient vector `e_p` as a discrete function.
pub fn basis_function(space: &DgSpace, p: usize) -> DgFunction<'_> {
    let mut c = vec![0.0; space.dim()];
    c[p] = 1.0;
    space.function(c).unwrap()
}

/// `max_p |a(u_h, φ_p) - l(φ_p)| / max_p |l(φ_p)|`, with `a` evaluated
/// independently of the assembled matrix, together with `‖A x - b‖ / ‖b‖`.
pub fn orthogonality_residual(s: &Smoke) -> (f64, f64) {
    let system = s.system();
    let uh = solve(&s.space, &system).unwrap();
    let scale = system.rhs.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    let mut worst = 0.0f64;
    for p in 0..s.space.dim() {
        let phi = basis_function(&s.space, p);
        let a = bilinear_form(&s.problem, &s.sigma, &s.quad, &uh, &phi);
        worst = worst.max((a - system.rhs[p]).abs() / scale);
    }
    (worst, system.relative_residual(uh.coeffs()))
}

/// Compares the dense matrix with `a(φ_q, φ_p)` computed directly for every
/// pair of basis functions on elements at most two apart. Returns `(nonzero
/// entries coupling non-neighbouring elements, largest relative mismatch)`;
/// the dense matrix is also scanned in full for entries outside the band.
pub fn sparsity_report(s: &Smoke) -> (usize, f64) {
    let system = s.system();
    let dense = system.matrix.to_dense();
    let nl = s.space.local_dim();
    let dim = s.space.dim();
    let phis: Vec<DgFunction> = (0..dim).map(|p| basis_function(&s.space, p)).collect();
    let scale = dense.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut outside = 0;
    let mut mismatch = 0.0f64;
    for p in 0..dim {
        for q in 0..dim {
            let distance = (p / nl).abs_diff(q / nl);
            if distance > 1 && dense[p][q] != 0.0 {
                outside += 1;
            }
            if distance > 2 {
                continue;
            }
            let a = bilinear_form(&s.problem, &s.sigma, &s.quad, &phis[q], &phis[p]);
            if distance == 2 && a != 0.0 {
                outside += 1;
            }
            mismatch = mismatch.max((a - dense[p][q]).abs() / scale);
        }
    }
    (outside, mismatch)
}

/// `max_p |(c (u - π u), φ_p)| / max_p |(c u, φ_p)|` for the weighted L²
/// projection of the exact solution.
pub fn projection_residual(s: &Smoke) -> f64 {
    let exact = s.problem.exact().unwrap();
    let u = |x: f64| (exact.u)(x);
    let c = |x: f64| s.problem.c(x);
    let pi = weighted_l2_projection(u, c, &s.space, &s.quad).unwrap();
    let nl = s.space.local_dim();
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for e in 0..s.space.mesh().num_elements() {
        let (a, b) = s.space.mesh().element(e);
        let half = 0.5 * (b - a);
        for j in 0..nl {
            let mut diff = 0.0;
            let mut full = 0.0;
            for (t, w) in s.quad.iter() {
                let x = 0.5 * (a + b) + half * t;
                let phi = s.space.basis().eval(j, t).unwrap().0;
                let (pv, _) = pi.eval_local(e, t);
                diff += w * half * c(x) * (u(x) - pv) * phi;
                full += w * half * c(x) * u(x) * phi;
            }
            worst = worst.max(diff.abs());
            scale = scale.max(full.abs());
        }
    }
    worst / scale
}

/// Largest error integrating `x^j`, `j ≤ degree`, over `[a, b]`, relative to
/// `(b - a) max|x|^j`.
pub fn quadrature_error(points: usize, degree: u32, a: f64, b: f64) -> f64 {
    let rule = gauss_legendre_rule(points).unwrap();
    (0..=degree)
        .map(|j| {
            let exact = (b.powi(j as i32 + 1) - a.powi(j as i32 + 1)) / (j as f64 + 1.0);
            let approx = rule.integrate(a, b, |x| x.powi(j as i32));
            let size = (b - a) * a.abs().max(b.abs()).powi(j as i32);
            (approx - exact).abs() / size
        })
        .fold(0.0, f64::max)
}

/// Energy errors for `-u'' + u = 1` on uniform meshes with `σ = N` inside
/// and `σ = 1` at the boundary.
pub fn unperturbed_errors(k: usize, sizes: &[usize]) -> Vec<f64> {
    let problem = unperturbed_problem();
    let quad = gauss_legendre_rule(5).unwrap();
    sizes
        .iter()
        .map(|&n| {
            let mesh = Mesh1D::from_nodes((0..=n).map(|i| i as f64 / n as f64).collect()).unwrap();
            let mut sigma = vec![n as f64; n + 1];
            sigma[0] = 1.0;
            sigma[n] = 1.0;
            let sigma = PenaltyScheme::new(sigma).unwrap();
            let space = DgSpace::new(mesh, k).unwrap();
            let system = assemble(&space, &problem, &sigma, &quad).unwrap();
            let uh = solve(&space, &system).unwrap();
            error_norms(&problem, &uh, &sigma, &quad).unwrap().energy()
        })
        .collect()
}

pub fn rates(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| convergence_rate(w[0], w[1]).unwrap()).collect()
}
