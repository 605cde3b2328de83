//! Broken polynomial spaces and their elements.

use crate::basis::LocalBasis;
use crate::error::{invalid, Error, Result};
use crate::mesh::Mesh1D;

/// Piecewise polynomials of degree `k` on a mesh, with no continuity
/// requirement across nodes.
#[derive(Clone, Debug)]
pub struct DgSpace {
    mesh: Mesh1D,
    basis: LocalBasis,
}

impl DgSpace {
    pub fn new(mesh: Mesh1D, degree: usize) -> Result<Self> {
        Ok(Self { mesh, basis: LocalBasis::new(degree)? })
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn basis(&self) -> &LocalBasis {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    /// Local dofs per element, `k + 1`.
    pub fn local_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.mesh.num_elements() * self.local_dim()
    }

    /// Physical coordinate of the local node `j` on element `e`.
    pub fn node_coordinate(&self, e: usize, j: usize) -> f64 {
        let (a, b) = self.mesh.element(e);
        0.5 * (a + b) + 0.5 * (b - a) * self.basis.nodes()[j]
    }

    pub fn zero(&self) -> DgFunction<'_> {
        DgFunction { space: self, coeffs: vec![0.0; self.dim()] }
    }

    pub fn function(&self, coeffs: Vec<f64>) -> Result<DgFunction<'_>> {
        DgFunction::new(self, coeffs)
    }
}

/// Which one-sided limit to take at a mesh node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `v(x - 0)`
    Left,
    /// `v(x + 0)`
    Right,
    /// A point that is not an interior mesh node.
    Interior,
}

/// Coefficients in the element-local Lagrange basis; element `e` owns
/// `coeffs[e(k+1) .. (e+1)(k+1)]`.
#[derive(Clone, Debug)]
pub struct DgFunction<'a> {
    space: &'a DgSpace,
    coeffs: Vec<f64>,
}

impl<'a> DgFunction<'a> {
    pub fn new(space: &'a DgSpace, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: coeffs.len() });
        }
        Ok(Self { space, coeffs })
    }

    pub fn space(&self) -> &'a DgSpace {
        self.space
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn element_coeffs(&self, e: usize) -> &[f64] {
        let n = self.space.local_dim();
        &self.coeffs[e * n..(e + 1) * n]
    }

    /// Value and physical derivative on element `e` at reference point `t`.
    pub fn eval_local(&self, e: usize, t: f64) -> (f64, f64) {
        let basis = self.space.basis();
        let scale = 2.0 / self.space.mesh().width(e);
        self.element_coeffs(e)
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let (v, d) = basis.eval_unchecked(j, t);
                (c * v, c * d * scale)
            })
            .fold((0.0, 0.0), |(a, b), (v, d)| (a + v, b + d))
    }

    /// Value and derivative at `x`, taking the requested one-sided limit at
    /// mesh nodes.
    pub fn eval(&self, x: f64, side: Side) -> Result<(f64, f64)> {
        let nodes = self.space.mesh().nodes();
        let n = nodes.len() - 1;
        if !(0.0..=1.0).contains(&x) {
            return invalid(format!("x = {x} outside [0, 1]"));
        }
        // first index with nodes[i] > x
        let above = nodes.partition_point(|&xi| xi <= x);
        let on_node = above > 0 && nodes[above - 1] == x;
        let e = match side {
            Side::Left => {
                if x == nodes[0] {
                    return invalid("no left trace at x_0");
                }
                if on_node { above - 2 } else { above - 1 }
            }
            Side::Right => {
                if x == nodes[n] {
                    return invalid("no right trace at x_N");
                }
                above - 1
            }
            Side::Interior => {
                if on_node && above - 1 != 0 && above - 1 != n {
                    return invalid(format!("x = {x} is an interior node; pick a side"));
                }
                (above.max(1) - 1).min(n - 1)
            }
        };
        let (a, b) = self.space.mesh().element(e);
        let t = (2.0 * x - a - b) / (b - a);
        Ok(self.eval_local(e, t.clamp(-1.0, 1.0)))
    }

    /// `v(x_i - 0)`, element `i-1` at its right end.
    pub fn left_trace(&self, i: usize) -> (f64, f64) {
        self.eval_local(i - 1, 1.0)
    }

    /// `v(x_i + 0)`, element `i` at its left end.
    pub fn right_trace(&self, i: usize) -> (f64, f64) {
        self.eval_local(i, -1.0)
    }

    /// Jump `[v]_i` and average `⟨v⟩_i` at node `i`.
    ///
    /// At the boundary `[v]_0 = ⟨v⟩_0 = v(x_0 + 0)` and
    /// `[v]_N = -⟨v⟩_N = -v(x_N - 0)`.
    pub fn jump_and_average(&self, i: usize) -> Result<(f64, f64)> {
        let n = self.space.mesh().num_elements();
        if i > n {
            return Err(Error::OutOfRange { index: i, len: n + 1 });
        }
        Ok(if i == 0 {
            let v = self.right_trace(0).0;
            (v, v)
        } else if i == n {
            let v = self.left_trace(n).0;
            (-v, v)
        } else {
            let l = self.left_trace(i).0;
            let r = self.right_trace(i).0;
            (r - l, 0.5 * (r + l))
        })
    }

    pub fn scale(&mut self, alpha: f64) {
        self.coeffs.iter_mut().for_each(|c| *c *= alpha);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_stype_mesh, MeshVariant};

    fn space(k: usize) -> DgSpace {
        let mesh = build_stype_mesh(MeshVariant::shishkin(), 8, 0.01, 1.0, k).unwrap();
        DgSpace::new(mesh, k).unwrap()
    }

    fn interpolate<'a>(s: &'a DgSpace, g: impl Fn(f64) -> f64) -> DgFunction<'a> {
        let n = s.local_dim();
        let coeffs = (0..s.dim()).map(|p| g(s.node_coordinate(p / n, p % n))).collect();
        s.function(coeffs).unwrap()
    }

    #[test]
    fn constant_function() {
        let s = space(2);
        let f = s.function(vec![1.0; s.dim()]).unwrap();
        for x in [0.0, 0.013, 0.4, 0.999, 1.0] {
            let (v, d) = f.eval(x, Side::Interior).unwrap();
            assert!((v - 1.0).abs() < 1e-14);
            assert!(d.abs() < 1e-9);
        }
        for i in 1..8 {
            let (j, a) = f.jump_and_average(i).unwrap();
            assert!(j.abs() < 1e-15);
            assert!((a - 1.0).abs() < 1e-15);
        }
        assert_eq!(f.jump_and_average(0).unwrap(), (1.0, 1.0));
        assert_eq!(f.jump_and_average(8).unwrap(), (-1.0, 1.0));
    }

    #[test]
    fn reproduces_linears() {
        for k in 1..=3 {
            let s = space(k);
            let f = interpolate(&s, |x| x);
            for x in [0.001, 0.25, 0.6, 0.97] {
                let (v, d) = f.eval(x, Side::Interior).unwrap();
                assert!((v - x).abs() < 1e-14);
                assert!((d - 1.0).abs() < 1e-9);
            }
            for i in 1..8 {
                assert!(f.jump_and_average(i).unwrap().0.abs() < 1e-15);
            }
            let (j, a) = f.jump_and_average(8).unwrap();
            assert!((j + 1.0).abs() < 1e-15 && (a - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_step_jump() {
        let s = space(1);
        let node = 3;
        let x = s.mesh().nodes()[node];
        let f = interpolate(&s, |_| 0.0);
        let mut coeffs = f.into_coeffs();
        for c in coeffs.iter_mut().skip(node * 2) {
            *c = 1.0;
        }
        let f = s.function(coeffs).unwrap();
        let (j, a) = f.jump_and_average(node).unwrap();
        assert_eq!((j, a), (1.0, 0.5));
        let (l, _) = f.eval(x, Side::Left).unwrap();
        let (r, _) = f.eval(x, Side::Right).unwrap();
        assert_eq!(r - l, 1.0);
        assert!(f.eval(x, Side::Interior).is_err());
    }

    #[test]
    fn rejects_impossible_traces() {
        let s = space(1);
        let f = s.zero();
        assert!(f.eval(0.0, Side::Left).is_err());
        assert!(f.eval(1.0, Side::Right).is_err());
        assert!(f.eval(1.5, Side::Interior).is_err());
        assert!(f.jump_and_average(9).is_err());
        assert!(s.function(vec![0.0; 3]).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let s = space(3);
        let coeffs: Vec<f64> = (0..s.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = s.function(coeffs).unwrap();
        let nodes = s.mesh().nodes();
        for _ in 0..100 {
            let e = rng.gen_range(0..8);
            let (a, b) = (nodes[e], nodes[e + 1]);
            let x = a + (b - a) * rng.gen_range(0.1..0.9);
            let d = 1e-4 * (b - a);
            let fd = (f.eval(x + d, Side::Interior).unwrap().0 - f.eval(x - d, Side::Interior).unwrap().0)
                / (2.0 * d);
            let (_, an) = f.eval(x, Side::Interior).unwrap();
            // cubic: centred differences are exact up to d² f'''/6 plus rounding ~ 1e-16/d
            assert!((fd - an).abs() <= 1e-6 * (an.abs() + 1.0 / (b - a)), "fd={fd} an={an}");
        }
    }
}
