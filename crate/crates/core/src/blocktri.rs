//! Block tridiagonal matrices and block Thomas elimination.

use crate::error::{Error, Result};

/// Small dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    n: usize,
    data: Vec<f64>,
}

impl Block {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self { n, data: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn add(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.n + c] += v;
    }

    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        for (r, o) in out.iter_mut().enumerate() {
            *o = self.data[r * self.n..(r + 1) * self.n].iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn mul(&self, other: &Block) -> Block {
        let n = self.n;
        let mut out = Block::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                for c in 0..n {
                    out.data[r * n + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    fn sub_assign(&mut self, other: &Block) {
        self.data.iter_mut().zip(&other.data).for_each(|(a, b)| *a -= b);
    }
}

/// LU factorisation with partial pivoting of a small block.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` when a pivot vanishes relative to the block's scale.
    pub fn factor(a: &Block) -> Option<Self> {
        let n = a.n;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = lu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !(scale > 0.0) || !scale.is_finite() {
            return None;
        }
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[i * n + k].abs().total_cmp(&lu[j * n + k].abs()))
                .unwrap_or(k);
            if !(lu[p * n + k].abs() > scale * 1e-14) {
                return None;
            }
            if p != k {
                for c in 0..n {
                    lu.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let piv = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / piv;
                lu[i * n + k] = f;
                for c in k + 1..n {
                    lu[i * n + c] -= f * lu[k * n + c];
                }
            }
        }
        Some(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.lu[i * n + k] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                x[i] -= self.lu[i * n + k] * x[k];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// `A^{-1} B`, column by column.
    fn solve_block(&self, b: &Block) -> Block {
        let n = self.n;
        let mut out = Block::zeros(n);
        let mut col = vec![0.0; n];
        for c in 0..n {
            for r in 0..n {
                col[r] = b.get(r, c);
            }
            let x = self.solve(&col);
            for r in 0..n {
                out.data[r * n + c] = x[r];
            }
        }
        out
    }
}

/// Square block tridiagonal matrix with `nb` diagonal blocks of size `bs`.
///
/// `lower[e]` couples block row `e + 1` to block column `e`;
/// `upper[e]` couples block row `e` to block column `e + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTridiagonal {
    pub diag: Vec<Block>,
    pub lower: Vec<Block>,
    pub upper: Vec<Block>,
}

impl BlockTridiagonal {
    pub fn zeros(nb: usize, bs: usize) -> Self {
        Self {
            diag: vec![Block::zeros(bs); nb],
            lower: vec![Block::zeros(bs); nb.saturating_sub(1)],
            upper: vec![Block::zeros(bs); nb.saturating_sub(1)],
        }
    }

    pub fn num_blocks(&self) -> usize {
        self.diag.len()
    }

    pub fn block_size(&self) -> usize {
        self.diag.first().map_or(0, Block::size)
    }

    pub fn dim(&self) -> usize {
        self.num_blocks() * self.block_size()
    }

    /// Adds `v` at block `(row_block, col_block)`, local entry `(r, c)`.
    /// Panics if the blocks are not adjacent.
    pub fn add(&mut self, row_block: usize, col_block: usize, r: usize, c: usize, v: f64) {
        if row_block == col_block {
            self.diag[row_block].add(r, c, v);
        } else if row_block == col_block + 1 {
            self.lower[col_block].add(r, c, v);
        } else if col_block == row_block + 1 {
            self.upper[row_block].add(r, c, v);
        } else {
            panic!("blocks ({row_block}, {col_block}) are not adjacent");
        }
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let bs = self.block_size();
        let mut y = vec![0.0; self.dim()];
        let mut tmp = vec![0.0; bs];
        for e in 0..self.num_blocks() {
            let row = &mut y[e * bs..(e + 1) * bs];
            self.diag[e].mul_vec(&x[e * bs..(e + 1) * bs], &mut tmp);
            row.iter_mut().zip(&tmp).for_each(|(a, b)| *a += b);
            if e > 0 {
                self.lower[e - 1].mul_vec(&x[(e - 1) * bs..e * bs], &mut tmp);
                row.iter_mut().zip(&tmp).for_each(|(a, b)| *a += b);
            }
            if e + 1 < self.num_blocks() {
                self.upper[e].mul_vec(&x[(e + 1) * bs..(e + 2) * bs], &mut tmp);
                row.iter_mut().zip(&tmp).for_each(|(a, b)| *a += b);
            }
        }
        y
    }

    /// Dense row-major copy, for testing.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let bs = self.block_size();
        let n = self.dim();
        let mut a = vec![vec![0.0; n]; n];
        let mut put = |rb: usize, cb: usize, b: &Block| {
            for r in 0..bs {
                for c in 0..bs {
                    a[rb * bs + r][cb * bs + c] = b.get(r, c);
                }
            }
        };
        for (e, b) in self.diag.iter().enumerate() {
            put(e, e, b);
        }
        for (e, b) in self.lower.iter().enumerate() {
            put(e + 1, e, b);
        }
        for (e, b) in self.upper.iter().enumerate() {
            put(e, e + 1, b);
        }
        a
    }

    /// Block Thomas elimination (no pivoting across blocks).
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let nb = self.num_blocks();
        let bs = self.block_size();
        if rhs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.len() });
        }
        if nb == 0 {
            return Ok(Vec::new());
        }
        let mut factors: Vec<Lu> = Vec::with_capacity(nb);
        let mut g: Vec<Vec<f64>> = Vec::with_capacity(nb);
        // forward sweep: D'_e = D_e - L_e D'_{e-1}^{-1} U_{e-1}
        let mut d = self.diag[0].clone();
        let mut r = rhs[..bs].to_vec();
        for e in 0..nb {
            if e > 0 {
                let prev = &factors[e - 1];
                let l = &self.lower[e - 1];
                let w = prev.solve_block(&self.upper[e - 1]);
                d = self.diag[e].clone();
                d.sub_assign(&l.mul(&w));
                let y = prev.solve(&g[e - 1]);
                r = rhs[e * bs..(e + 1) * bs].to_vec();
                let mut ly = vec![0.0; bs];
                l.mul_vec(&y, &mut ly);
                r.iter_mut().zip(&ly).for_each(|(a, b)| *a -= b);
            }
            factors.push(Lu::factor(&d).ok_or(Error::SingularPivot { block: e })?);
            g.push(r.clone());
        }
        // back substitution: x_e = D'_e^{-1} (g_e - U_e x_{e+1})
        let mut x = vec![0.0; self.dim()];
        for e in (0..nb).rev() {
            let mut b = g[e].clone();
            if e + 1 < nb {
                let mut ux = vec![0.0; bs];
                self.upper[e].mul_vec(&x[(e + 1) * bs..(e + 2) * bs], &mut ux);
                b.iter_mut().zip(&ux).for_each(|(a, u)| *a -= u);
            }
            x[e * bs..(e + 1) * bs].copy_from_slice(&factors[e].solve(&b));
        }
        Ok(x)
    }
}
