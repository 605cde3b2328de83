//! Interior penalty parameters σ_0..σ_N.

use crate::error::{invalid, Error, Result};
use crate::mesh::{Mesh1D, MeshMeta, Region};

/// Penalty weight applied at the two boundary nodes.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum BoundaryPenalty {
    /// σ_0 = σ_N = ε.
    #[default]
    Epsilon,
    /// σ_0 = σ_N = 1.
    Unit,
    /// σ_0 = σ_N = value.
    Fixed(f64),
}

impl BoundaryPenalty {
    pub fn value(self, eps: f64) -> f64 {
        match self {
            BoundaryPenalty::Epsilon => eps,
            BoundaryPenalty::Unit => 1.0,
            BoundaryPenalty::Fixed(v) => v,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "eps" | "epsilon" => Ok(BoundaryPenalty::Epsilon),
            "one" | "unit" | "1" => Ok(BoundaryPenalty::Unit),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("boundary penalty '{s}'")))
                .and_then(|v| {
                    if v > 0.0 {
                        Ok(BoundaryPenalty::Fixed(v))
                    } else {
                        invalid("boundary penalty must be positive")
                    }
                }),
        }
    }
}

/// Choice of penalty weights.
///
/// On S-type meshes the layer nodes get `layer_scale · εN / max|ψ'|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenaltyOptions {
    pub boundary: BoundaryPenalty,
    pub layer_scale: f64,
}

impl Default for PenaltyOptions {
    fn default() -> Self {
        Self { boundary: BoundaryPenalty::Epsilon, layer_scale: 1.0 }
    }
}

impl PenaltyOptions {
    pub fn with_boundary(boundary: BoundaryPenalty) -> Self {
        Self { boundary, ..Self::default() }
    }
}

/// Per-node penalty values.
#[derive(Clone, Debug, PartialEq)]
pub struct PenaltyScheme {
    sigma: Vec<f64>,
}

impl PenaltyScheme {
    pub fn new(sigma: Vec<f64>) -> Result<Self> {
        if let Some(i) = sigma.iter().position(|&s| !(s > 0.0)) {
            return invalid(format!("σ_{i} = {} is not positive", sigma[i]));
        }
        Ok(Self { sigma })
    }

    /// The same value at every node.
    pub fn uniform(n_nodes: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n_nodes])
    }

    pub fn values(&self) -> &[f64] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.sigma[i]
    }
}

/// Penalties with `σ_0 = σ_N = ε`.
pub fn penalty_scheme(mesh: &Mesh1D, eps: f64) -> Result<PenaltyScheme> {
    penalty_scheme_opts(mesh, eps, PenaltyOptions::default())
}

/// Penalties with the given boundary weight.
pub fn penalty_scheme_with(mesh: &Mesh1D, eps: f64, boundary: BoundaryPenalty) -> Result<PenaltyScheme> {
    penalty_scheme_opts(mesh, eps, PenaltyOptions::with_boundary(boundary))
}

/// Region-dependent penalties.
///
/// S-type meshes: `εN` on coarse nodes and `εN / max|ψ'|` on layer nodes,
/// transition points included, times `opts.layer_scale`. Durán–Lombardi:
/// `ε/H` on every interior node.
pub fn penalty_scheme_opts(mesh: &Mesh1D, eps: f64, opts: PenaltyOptions) -> Result<PenaltyScheme> {
    if !(eps > 0.0) {
        return invalid(format!("ε = {eps} must be positive"));
    }
    if !(opts.layer_scale > 0.0) {
        return invalid(format!("layer penalty scale {} must be positive", opts.layer_scale));
    }
    let n = mesh.num_elements() as f64;
    let b = opts.boundary.value(eps);
    let fine = |m: f64| opts.layer_scale * eps * n / m;
    let sigma = match mesh.meta() {
        MeshMeta::SType { max_psi_prime, .. } => mesh
            .regions()
            .iter()
            .map(|r| match r {
                Region::Boundary => b,
                Region::Coarse => eps * n,
                Region::Fine | Region::Graded => fine(*max_psi_prime),
            })
            .collect(),
        MeshMeta::DuranLombardi { h, .. } => mesh
            .regions()
            .iter()
            .map(|r| if *r == Region::Boundary { b } else { eps / h })
            .collect(),
        MeshMeta::Custom => return Err(Error::MissingMetadata("penalty scheme needs an S-type or DL mesh")),
    };
    PenaltyScheme::new(sigma)
}
