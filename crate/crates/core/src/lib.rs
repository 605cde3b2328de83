//! Nonsymmetric interior-penalty discontinuous Galerkin (NIPG) discretisation of
//!
//! ```text
//!   -ε² u''(x) + c(x) u(x) = f(x),  x ∈ (0, 1),   u(0) = u(1) = 0,
//! ```
//!
//! on layer-adapted meshes (Shishkin-type and Durán–Lombardi graded), with
//! error measurement in the energy and balanced norms and a harness that runs
//! convergence, ε-robustness and slope studies.
//!
//! The pipeline for a single solve is
//!
//! ```
//! use nipg::prelude::*;
//!
//! let eps = 2f64.powi(-10);
//! let problem = layer_problem(eps);
//! let mesh = build_stype_mesh(MeshVariant::shishkin(), 16, eps, 1.0, 1).unwrap();
//! let space = DgSpace::new(mesh, 1).unwrap();
//! let sigma = penalty_scheme(space.mesh(), eps).unwrap();
//! let quad = gauss_legendre_rule(5).unwrap();
//! let system = assemble(&space, &problem, &sigma, &quad).unwrap();
//! let uh = solve(&space, &system).unwrap();
//! let report = error_norms(&problem, &uh, &sigma, &quad).unwrap();
//! assert!(report.energy() < report.balanced());
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod assembly;
pub mod basis;
pub mod blocktri;
pub mod config;
pub mod error;
pub mod interp_study;
pub mod mesh;
pub mod norms;
pub mod penalty;
pub mod problem;
pub mod quadrature;
pub mod report;
pub mod space;
pub mod studies;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::assembly::{assemble, bilinear_form, solve, BlockTriSystem};
    pub use crate::basis::LocalBasis;
    pub use crate::error::{Error, Result};
    pub use crate::mesh::{
        build_dl_mesh, build_stype_mesh, max_psi_prime, transition_parameter, validate_mesh,
        Mesh1D, MeshKind, MeshMeta, MeshVariant, Region, ValidationReport,
    };
    pub use crate::norms::{
        convergence_rate, error_norms, lagrange_interpolant, weighted_l2_projection, ErrorReport,
    };
    pub use crate::penalty::{
        penalty_scheme, penalty_scheme_opts, penalty_scheme_with, BoundaryPenalty, PenaltyOptions, PenaltyScheme,
    };
    pub use crate::problem::{layer_problem, manufacture_rhs, unperturbed_problem, ProblemSpec, ScalarFn};
    pub use crate::quadrature::{gauss_legendre_rule, QuadratureRule};
    pub use crate::space::{DgFunction, DgSpace, Side};
}
