//! Coefficient tensors, the interpolation basis and the two coefficient engines.
//!
//! Every coefficient in the crate is a contour integral of
//! `f(w) * prod_s (w - z_s)^{e_s}` for some integer exponents `e_s`. The
//! quadrature engine integrates that directly; the residue engine sums
//! `D^{rho_k - e_k - 1}[(w - z_k)^{rho_k} f(w) prod_{s != k} (w - z_s)^{e_s}]`
//! at the foci enclosed by the contour.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::contour::{cauchy_integral, Contour, QuadratureOptions};
use crate::error::Result;
use crate::function::{series, Analytic, Series};
use crate::points::PointSet;

/// Dense tensor indexed `(n, j, l)` with `l < m_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTensor {
    blocks: usize,
    mult: Vec<u32>,
    offsets: Vec<usize>,
    width: usize,
    data: Vec<C64>,
}

impl CoeffTensor {
    pub fn zeros(blocks: usize, mult: &[u32]) -> Self {
        let mut offsets = Vec::with_capacity(mult.len());
        let mut width = 0;
        for &m in mult {
            offsets.push(width);
            width += m as usize;
        }
        CoeffTensor { blocks, mult: mult.to_vec(), offsets, width, data: vec![C64::new(0.0, 0.0); blocks * width] }
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn foci(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicity(&self, j: usize) -> u32 {
        self.mult[j]
    }

    fn index(&self, n: usize, j: usize, l: usize) -> usize {
        assert!(
            n < self.blocks && j < self.mult.len() && l < self.mult[j] as usize,
            "index ({n},{j},{l}) out of range"
        );
        n * self.width + self.offsets[j] + l
    }

    pub fn get(&self, n: usize, j: usize, l: usize) -> C64 {
        self.data[self.index(n, j, l)]
    }

    pub fn set(&mut self, n: usize, j: usize, l: usize, v: C64) {
        let k = self.index(n, j, l);
        self.data[k] = v;
    }

    /// Coefficients of block `n`, flattened over `(j, l)`.
    pub fn block(&self, n: usize) -> &[C64] {
        &self.data[n * self.width..(n + 1) * self.width]
    }

    /// All `(n, j, l)` triples in storage order.
    pub fn indices(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.data.len());
        for n in 0..self.blocks {
            for (j, &m) in self.mult.iter().enumerate() {
                for l in 0..m as usize {
                    out.push((n, j, l));
                }
            }
        }
        out
    }

    /// Fills every entry from `f(n, j, l)`, in parallel, keeping storage order.
    pub fn build<F>(blocks: usize, mult: &[u32], f: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize) -> Result<C64> + Sync,
    {
        let mut t = CoeffTensor::zeros(blocks, mult);
        let vals: Vec<C64> = t.indices().into_par_iter().map(|(n, j, l)| f(n, j, l)).collect::<Result<_>>()?;
        t.data = vals;
        Ok(t)
    }

    /// Nested `[n][j][l]` copy.
    pub fn to_nested(&self) -> Vec<Vec<Vec<C64>>> {
        (0..self.blocks)
            .map(|n| {
                (0..self.mult.len()).map(|j| (0..self.mult[j] as usize).map(|l| self.get(n, j, l)).collect()).collect()
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference; tensors must share a shape.
    pub fn max_abs_diff(&self, other: &CoeffTensor) -> f64 {
        assert_eq!(self.mult, other.mult);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }
}

// ---------------------------------------------------------------------------
// Interpolation basis
// ---------------------------------------------------------------------------

/// Polynomials `c_{j,l}`, `l < m_j`, of degree below `m` with
/// `D^i c_{j,l}(z_k) = [k = j][i = l]` for `i < m_k`.
///
/// With `R_j = prod_{k != j} (z - z_k)^{m_k}` they are
/// `c_{j,l}(z) = R_j(z) (z - z_j)^l sum_{i <= m_j - 1 - l} D^i[1/R_j](z_j) (z - z_j)^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteBasis {
    points: PointSet,
    inv_jets: Vec<Vec<C64>>,
}

impl HermiteBasis {
    pub fn new(points: &PointSet) -> Self {
        let foci = points.foci();
        let inv_jets = foci
            .iter()
            .enumerate()
            .map(|(j, &(zj, mj))| {
                let len = mj as usize;
                let mut acc = vec![C64::new(0.0, 0.0); len];
                acc[0] = C64::new(1.0, 0.0);
                for (k, &(zk, mk)) in foci.iter().enumerate() {
                    if k != j {
                        acc = series::mul(&acc, &series::binomial(zj - zk, -(mk as i64), len), len);
                    }
                }
                acc
            })
            .collect();
        HermiteBasis { points: points.clone(), inv_jets }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Number of basis polynomials, `m`.
    pub fn len(&self) -> usize {
        self.points.total_multiplicity() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `c_{j,l}(z)` flattened over `(j, l)`.
    pub fn eval(&self, z: C64) -> Vec<C64> {
        let foci = self.points.foci();
        let mut out = Vec::with_capacity(self.len());
        for (j, &(zj, mj)) in foci.iter().enumerate() {
            let mut rj = C64::new(1.0, 0.0);
            for (k, &(zk, mk)) in foci.iter().enumerate() {
                if k != j {
                    rj *= (z - zk).powi(mk as i32);
                }
            }
            let t = z - zj;
            let d = &self.inv_jets[j];
            let mut tl = C64::new(1.0, 0.0);
            for l in 0..mj as usize {
                let tail = d[..mj as usize - l].iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * t + c);
                out.push(rj * tl * tail);
                tl *= t;
            }
        }
        out
    }

    /// Series of every `c_{j,l}` about `center`.
    pub fn eval_series(&self, center: C64, len: usize) -> Result<Vec<Series>> {
        let foci = self.points.foci();
        let w = Series::variable(center, len);
        let mut out = Vec::with_capacity(self.len());
        for (j, &(zj, mj)) in foci.iter().enumerate() {
            let mut rj = Series::constant(C64::new(1.0, 0.0), len);
            for (k, &(zk, mk)) in foci.iter().enumerate() {
                if k != j {
                    rj = rj.mul(&w.sub(&Series::constant(zk, len)).powi(mk as i64)?);
                }
            }
            let t = w.sub(&Series::constant(zj, len));
            let d = &self.inv_jets[j];
            let mut tl = Series::constant(C64::new(1.0, 0.0), len);
            for l in 0..mj as usize {
                let mut tail = Series::constant(C64::new(0.0, 0.0), len);
                for c in d[..mj as usize - l].iter().rev() {
                    tail = tail.mul(&t).add(&Series::constant(*c, len));
                }
                out.push(rj.mul(&tl).mul(&tail));
                tl = tl.mul(&t);
            }
        }
        Ok(out)
    }

    /// `sum_{j,l} coeffs[j,l] c_{j,l}(z)`.
    pub fn combine(&self, coeffs: &[C64], z: C64) -> C64 {
        self.eval(z).iter().zip(coeffs).map(|(c, a)| c * a).sum()
    }
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// `(2 pi i)^-1` times the integral of `f(w) prod_s (w - z_s)^{e_s}` over `contour`.
pub(crate) fn cauchy_coeff(
    f: &dyn Analytic,
    points: &PointSet,
    exps: &[i64],
    contour: &Contour,
    opts: &QuadratureOptions,
) -> Result<C64> {
    let foci = points.foci();
    let g = |w: C64| -> Result<C64> {
        let mut v = f.value(w)?;
        for (&(z, _), &e) in foci.iter().zip(exps) {
            if e != 0 {
                v *= (w - z).powi(e as i32);
            }
        }
        Ok(v)
    };
    cauchy_integral(g, contour, opts)?.checked()
}

/// Sum of residues of `f(w) prod_s (w - z_s)^{e_s}` at the foci flagged in `inside`,
/// given the pole order of `f` at each focus.
pub(crate) fn residue_coeff(
    f: &dyn Analytic,
    points: &PointSet,
    exps: &[i64],
    inside: &[bool],
    orders: &[u32],
) -> Result<C64> {
    let foci = points.foci();
    let mut total = C64::new(0.0, 0.0);
    for (k, &(zk, _)) in foci.iter().enumerate() {
        if !inside[k] {
            continue;
        }
        let rho = orders[k] as i64;
        let order = rho - exps[k] - 1;
        if order < 0 {
            continue;
        }
        let len = order as usize + 1;
        let mut jet = f.laurent(zk, orders[k], len)?;
        for (s, &(zs, _)) in foci.iter().enumerate() {
            if s != k && exps[s] != 0 {
                jet = series::mul(&jet, &series::binomial(zk - zs, exps[s], len), len);
            }
        }
        total += jet[order as usize];
    }
    Ok(total)
}

/// Pole orders of `f` at each focus.
pub(crate) fn focus_orders(f: &dyn Analytic, points: &PointSet) -> Result<Vec<u32>> {
    points.foci().iter().map(|&(z, _)| f.pole_order_at(z)).collect()
}

/// Exponents for `1 / ((w - z_j)^{l+1} prod_s (w - z_s)^{n m_s})`.
pub(crate) fn taylor_exponents(points: &PointSet, n: usize, j: usize, l: usize) -> Vec<i64> {
    points
        .foci()
        .iter()
        .enumerate()
        .map(|(s, &(_, m))| -(n as i64) * m as i64 - if s == j { l as i64 + 1 } else { 0 })
        .collect()
}

/// Exponents for `(B/A)^k / (w - z_j)^{l+1}` where `A` holds foci `..split` and `B` the rest.
pub(crate) fn mixed_exponents(points: &PointSet, split: usize, k: usize, j: usize, l: usize) -> Vec<i64> {
    points
        .foci()
        .iter()
        .enumerate()
        .map(|(s, &(_, m))| {
            let base = k as i64 * m as i64;
            let e = if s < split { -base } else { base };
            e - if s == j { l as i64 + 1 } else { 0 }
        })
        .collect()
}
