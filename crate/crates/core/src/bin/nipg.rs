//! Command-line front end for the NIPG solver and its studies.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nipg::config::{parse_number, parse_number_list, parse_usize_list, ConfigFile};
use nipg::interp_study::{interp_csv, interpolation_error_study, InterpKind};
use nipg::mesh::{validate_mesh, MeshKind, MeshVariant, DEFAULT_PS_EXPONENT};
use nipg::penalty::BoundaryPenalty;
use nipg::report::{slope_csv, study_csv};
use nipg::studies::{
    build_mesh, describe_mesh, run_convergence_study, run_epsilon_sweep, run_slope_study, solve_on_mesh, MeshParam,
    StudyConfig,
};
use nipg::{Error, Result};

#[derive(Parser)]
#[command(name = "nipg", version, about = "NIPG method for -ε²u'' + cu = f on layer-adapted meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convergence study over N (S-type meshes) and H (graded mesh).
    Study(Common),
    /// Fixed mesh size, errors over a list of ε.
    Sweep(Common),
    /// Balanced error against ln(1/ε) at a fixed graded-mesh size.
    Slope {
        #[command(flatten)]
        common: Common,
        /// Requested number of elements.
        #[arg(long)]
        target: Option<String>,
    },
    /// Interpolation and projection errors by mesh region.
    InterpStudy {
        #[command(flatten)]
        common: Common,
        /// `lagrange` or `projection`.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Build one mesh, print a summary and its validation report.
    Mesh(Common),
    /// Solve one case and print both error norms.
    Solve(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// key = value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Mesh variants: S, pS, BS, mBS, DL (comma separated).
    #[arg(long)]
    variant: Option<String>,
    /// Polynomial degrees.
    #[arg(long)]
    k: Option<String>,
    /// Numbers of elements, e.g. `2^4..2^10`.
    #[arg(long = "N")]
    n: Option<String>,
    /// Graded-mesh parameters, e.g. `2^-1..2^-6`.
    #[arg(long = "H")]
    h: Option<String>,
    /// Perturbation parameters, e.g. `2^-20`.
    #[arg(long)]
    eps: Option<String>,
    /// Layer decay rate used by the S-type meshes.
    #[arg(long)]
    gamma: Option<String>,
    /// Exponent of the polynomial Shishkin mesh.
    #[arg(long)]
    m: Option<String>,
    /// Gauss–Legendre points per element.
    #[arg(long)]
    quad: Option<String>,
    /// Boundary penalty: `eps`, `one` or a positive number.
    #[arg(long)]
    boundary_penalty: Option<String>,
    /// Multiplier of the layer-node penalty on S-type meshes.
    #[arg(long)]
    layer_penalty_scale: Option<String>,
    /// Omission threshold of the graded mesh.
    #[arg(long)]
    theta: Option<String>,
    /// Output CSV path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write full-precision node or solution data to this path.
    #[arg(long)]
    dump: Option<PathBuf>,
}

/// Flag values merged with an optional config file.
struct Settings {
    flags: Common,
    file: ConfigFile,
}

impl Settings {
    fn new(flags: Common) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        Ok(Self { flags, file })
    }

    fn raw(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.file.get(key).map(str::to_string))
    }

    fn path(&self, flag: &Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.clone().or_else(|| self.file.get(key).map(PathBuf::from))
    }

    fn out(&self) -> Option<PathBuf> {
        self.path(&self.flags.out, "out")
    }

    fn dump(&self) -> Option<PathBuf> {
        self.path(&self.flags.dump, "dump")
    }

    fn variants(&self, default: &str) -> Result<Vec<MeshVariant>> {
        let m = match self.raw(&self.flags.m, "m") {
            Some(s) => parse_number(&s)?,
            None => DEFAULT_PS_EXPONENT,
        };
        self.raw(&self.flags.variant, "variant")
            .unwrap_or_else(|| default.to_string())
            .split(',')
            .map(|s| {
                let kind = MeshKind::parse(s.trim())?;
                if kind == MeshKind::PolynomialShishkin {
                    MeshVariant::with_exponent(kind, m)
                } else {
                    Ok(MeshVariant::new(kind))
                }
            })
            .collect()
    }

    fn config(&self, defaults: StudyConfig, variants: &str) -> Result<StudyConfig> {
        let f = &self.flags;
        let mut cfg = defaults;
        cfg.variants = self.variants(variants)?;
        if let Some(s) = self.raw(&f.k, "k") {
            cfg.degrees = parse_usize_list(&s)?;
        }
        if let Some(s) = self.raw(&f.n, "N") {
            cfg.sizes = parse_usize_list(&s)?;
        }
        if let Some(s) = self.raw(&f.h, "H") {
            cfg.mesh_params = parse_number_list(&s)?;
        }
        if let Some(s) = self.raw(&f.eps, "eps") {
            cfg.eps = parse_number_list(&s)?;
        }
        if let Some(s) = self.raw(&f.gamma, "gamma") {
            cfg.gamma = parse_number(&s)?;
        }
        if let Some(s) = self.raw(&f.quad, "quad") {
            cfg.quad_points = parse_usize_list(&s)?[0];
        }
        if let Some(s) = self.raw(&f.boundary_penalty, "boundary-penalty") {
            cfg.boundary_penalty = BoundaryPenalty::parse(&s)?;
        }
        if let Some(s) = self.raw(&f.layer_penalty_scale, "layer-penalty-scale") {
            cfg.layer_penalty_scale = parse_number(&s)?;
        }
        if let Some(s) = self.raw(&f.theta, "theta") {
            cfg.omission_threshold = parse_number(&s)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn pow2(range: std::ops::RangeInclusive<i32>) -> Vec<f64> {
    range.map(|p| 2f64.powi(p)).collect()
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => stdout(text)?,
    }
    Ok(())
}

fn stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// The single case selected by the first entry of each list.
fn single_case(cfg: &StudyConfig) -> Result<(MeshVariant, MeshParam, f64, usize)> {
    let variant = cfg.variants[0];
    let param = if variant.kind == MeshKind::DuranLombardi {
        MeshParam::Grading(*cfg.mesh_params.first().ok_or(Error::InvalidArgument("no H given".into()))?)
    } else {
        MeshParam::Elements(*cfg.sizes.first().ok_or(Error::InvalidArgument("no N given".into()))?)
    };
    Ok((variant, param, cfg.eps[0], cfg.degrees[0]))
}

fn single_defaults() -> StudyConfig {
    StudyConfig { degrees: vec![1], sizes: vec![16], mesh_params: vec![0.5], ..StudyConfig::default() }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Study(c) => {
            let s = Settings::new(c)?;
            let cfg = s.config(StudyConfig::default(), "S,pS,BS,mBS,DL")?;
            emit(&study_csv(&run_convergence_study(&cfg)?), s.out().as_deref())
        }
        Command::Sweep(c) => {
            let s = Settings::new(c)?;
            let defaults = StudyConfig {
                degrees: vec![2],
                sizes: vec![1024],
                mesh_params: vec![2f64.powi(-4)],
                eps: pow2(-20..=-10).into_iter().rev().collect(),
                ..StudyConfig::default()
            };
            let cfg = s.config(defaults, "S,BS")?;
            emit(&study_csv(&run_epsilon_sweep(&cfg)?), s.out().as_deref())
        }
        Command::Slope { common, target } => {
            let s = Settings::new(common)?;
            let target = match s.raw(&target, "target") {
                Some(t) => parse_usize_list(&t)?[0],
                None => 1024,
            };
            let defaults = StudyConfig {
                degrees: vec![2],
                eps: pow2(-23..=-9).into_iter().rev().collect(),
                ..StudyConfig::default()
            };
            let cfg = s.config(defaults, "DL")?;
            let study = run_slope_study(target, cfg.degrees[0], &cfg.eps, &cfg)?;
            let misses: Vec<String> = study.rows.iter().filter(|r| !r.exact_hit).map(|r| format!("{:e}", r.eps)).collect();
            if !misses.is_empty() {
                eprintln!("note: N = {target} not reachable for ε in [{}]; closest N used", misses.join(", "));
            }
            let summary = format!(
                "fitted slope {:.4} (reference {:.4})\n",
                study.measured_slope(),
                study.reference_slope()
            );
            match s.out() {
                Some(p) => {
                    std::fs::write(&p, slope_csv(&study))?;
                    stdout(&summary)?;
                }
                None => stdout(&format!("{}{summary}", slope_csv(&study)))?,
            }
            Ok(())
        }
        Command::InterpStudy { common, kind } => {
            let s = Settings::new(common)?;
            let kind = InterpKind::parse(&s.raw(&kind, "kind").unwrap_or_else(|| "lagrange".into()))?;
            let cfg = s.config(StudyConfig::default(), "S")?;
            let mut text = String::new();
            for v in &cfg.variants {
                let params: Vec<MeshParam> = if v.kind == MeshKind::DuranLombardi {
                    cfg.mesh_params.iter().map(|&h| MeshParam::Grading(h)).collect()
                } else {
                    cfg.sizes.iter().map(|&n| MeshParam::Elements(n)).collect()
                };
                for &k in &cfg.degrees {
                    for &eps in &cfg.eps {
                        let csv = interp_csv(&interpolation_error_study(kind, *v, k, &params, eps, &cfg)?);
                        let body = if text.is_empty() { &csv[..] } else { csv.split_once('\n').map_or("", |x| x.1) };
                        text.push_str(body);
                    }
                }
            }
            emit(&text, s.out().as_deref())
        }
        Command::Mesh(c) => {
            let s = Settings::new(c)?;
            let cfg = s.config(single_defaults(), "S")?;
            let (v, p, eps, k) = single_case(&cfg)?;
            let mesh = build_mesh(v, p, eps, k, &cfg)?;
            let report = validate_mesh(&mesh);
            stdout(&format!("{}\n{report}", describe_mesh(&mesh)))?;
            if let Some(path) = s.dump() {
                let mut text = String::new();
                for x in mesh.nodes() {
                    let _ = writeln!(text, "{x:.16e}");
                }
                std::fs::write(path, text)?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Error::InvalidArgument("mesh failed validation".into()))
            }
        }
        Command::Solve(c) => {
            let s = Settings::new(c)?;
            let cfg = s.config(single_defaults(), "S")?;
            let (v, p, eps, k) = single_case(&cfg)?;
            let mesh = build_mesh(v, p, eps, k, &cfg)?;
            let problem = nipg::problem::layer_problem(eps);
            let case = solve_on_mesh(&problem, mesh, k, &cfg)?;
            stdout(&format!(
                "{}\ne_dG  = {:.4e}\ne_dGb = {:.4e}\nrelative residual = {:.3e}\n",
                describe_mesh(&case.mesh),
                case.report.energy(),
                case.report.balanced(),
                case.relative_residual
            ))?;
            if let Some(path) = s.dump() {
                std::fs::write(path, dump_solution(&problem, case.mesh, k, &cfg)?)?;
            }
            Ok(())
        }
    }
}

/// DG coefficient vector, one value per line. The basis is nodal, so entry
/// `e (k+1) + j` is `u_h` at local node `j` of element `e`.
fn dump_solution(problem: &nipg::problem::ProblemSpec, mesh: nipg::mesh::Mesh1D, k: usize, cfg: &StudyConfig) -> Result<String> {
    use nipg::prelude::*;
    let quad = gauss_legendre_rule(cfg.quad_points)?;
    let sigma = penalty_scheme_opts(&mesh, problem.eps(), cfg.penalty_options())?;
    let space = DgSpace::new(mesh, k)?;
    let system = assemble(&space, problem, &sigma, &quad)?;
    let uh = solve(&space, &system)?;
    let mut text = String::new();
    for c in uh.coeffs() {
        let _ = writeln!(text, "{c:.16e}");
    }
    Ok(text)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
