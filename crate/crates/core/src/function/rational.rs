//! Factored rational functions `scale * prod (z - r)^e`.
//!
//! Used to locate the poles of rational subexpressions and as the exact
//! representation behind the residue oracle.

use num_complex::Complex64 as C64;

use super::series;
use crate::error::{Error, Result};

/// Largest polynomial degree the expansion of a sum may reach.
pub const MAX_DEGREE: usize = 48;

fn root_tol(r: C64) -> f64 {
    1e-6 * r.norm().max(1.0)
}

/// Dense polynomial, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<C64>);

impl Poly {
    pub fn one() -> Self {
        Poly(vec![C64::new(1.0, 0.0)])
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.0.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn mul_linear(&self, r: C64) -> Self {
        // (z - r) * self
        let mut out = vec![C64::new(0.0, 0.0); self.0.len() + 1];
        for (k, c) in self.0.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * r;
        }
        Poly(out)
    }

    pub fn add(&self, other: &Poly) -> Self {
        let n = self.0.len().max(other.0.len());
        Poly(
            (0..n)
                .map(|k| self.0.get(k).copied().unwrap_or_default() + other.0.get(k).copied().unwrap_or_default())
                .collect(),
        )
    }

    pub fn scale(&self, k: C64) -> Self {
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    /// Drops trailing coefficients that are negligible against the largest one.
    pub fn trimmed(mut self) -> Self {
        let big = self.0.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while self.0.len() > 1 && self.0.last().unwrap().norm() <= 1e-13 * big {
            self.0.pop();
        }
        if big == 0.0 {
            self.0.truncate(1);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.norm() == 0.0)
    }

    /// All roots, by simultaneous Aberth iteration.
    pub fn roots(&self) -> Vec<C64> {
        let p = self.clone().trimmed();
        let n = p.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = p.0[n];
        let monic: Vec<C64> = p.0.iter().map(|c| c / lead).collect();
        let dp: Vec<C64> = (1..=n).map(|k| monic[k] * k as f64).collect();
        let horner = |c: &[C64], z: C64| c.iter().rev().fold(C64::new(0.0, 0.0), |a, x| a * z + x);
        // Cauchy bound for the initial circle
        let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let radius = bound.min(monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max).powf(1.0 / n as f64).max(0.5));
        let mut z: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..n {
                let pv = horner(&monic, z[k]);
                if pv == C64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = pv / horner(&dp, z[k]);
                let mut s = C64::new(0.0, 0.0);
                for j in 0..n {
                    if j != k {
                        let d = z[k] - z[j];
                        if d != C64::new(0.0, 0.0) {
                            s += d.inv();
                        }
                    }
                }
                let step = ratio / (C64::new(1.0, 0.0) - ratio * s);
                if step.is_finite() {
                    z[k] -= step;
                    moved = moved.max(step.norm() / z[k].norm().max(1.0));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }
}

/// `scale * prod_k (z - roots[k].0)^roots[k].1`, or the zero function when `scale == 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalForm {
    pub scale: C64,
    pub roots: Vec<(C64, i32)>,
}

impl RationalForm {
    pub fn constant(c: C64) -> Self {
        RationalForm { scale: c, roots: Vec::new() }
    }

    pub fn identity() -> Self {
        RationalForm { scale: C64::new(1.0, 0.0), roots: vec![(C64::new(0.0, 0.0), 1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.scale == C64::new(0.0, 0.0)
    }

    pub fn is_constant(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sum of exponents: the order of growth at infinity.
    pub fn degree(&self) -> i64 {
        self.roots.iter().map(|r| r.1 as i64).sum()
    }

    pub fn poles(&self) -> impl Iterator<Item = (C64, u32)> + '_ {
        self.roots.iter().filter(|r| r.1 < 0).map(|r| (r.0, (-r.1) as u32))
    }

    pub fn zeros(&self) -> impl Iterator<Item = (C64, u32)> + '_ {
        self.roots.iter().filter(|r| r.1 > 0).map(|r| (r.0, r.1 as u32))
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.roots.iter().fold(self.scale, |acc, (r, e)| acc * (z - r).powi(*e))
    }

    /// Inserts `(z - r)^e`, merging with an existing root within tolerance.
    pub fn push_root(&mut self, r: C64, e: i32) {
        if e == 0 {
            return;
        }
        if let Some(k) = self.roots.iter().position(|(x, _)| (x - r).norm() <= root_tol(r)) {
            self.roots[k].1 += e;
            if self.roots[k].1 == 0 {
                self.roots.remove(k);
            }
        } else {
            self.roots.push((r, e));
        }
    }

    pub fn mul(&self, other: &RationalForm) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalForm::constant(C64::new(0.0, 0.0));
        }
        let mut out = self.clone();
        out.scale *= other.scale;
        for &(r, e) in &other.roots {
            out.push_root(r, e);
        }
        out
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        if self.is_zero() && k < 0 {
            return Err(Error::invalid("division by an expression that is identically zero"));
        }
        if k == 0 {
            return Ok(RationalForm::constant(C64::new(1.0, 0.0)));
        }
        Ok(RationalForm {
            scale: self.scale.powi(k as i32),
            roots: self.roots.iter().map(|&(r, e)| (r, e * k as i32)).collect(),
        })
    }

    pub fn recip(&self) -> Result<Self> {
        self.powi(-1)
    }

    pub fn neg(&self) -> Self {
        RationalForm { scale: -self.scale, roots: self.roots.clone() }
    }

    /// Sum over a common denominator; `None` when the numerator degree would exceed [`MAX_DEGREE`].
    pub fn add(&self, other: &RationalForm) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        // common denominator: each pole with the larger of the two orders
        let mut den: Vec<(C64, i32)> = Vec::new();
        for &(r, e) in self.roots.iter().chain(&other.roots) {
            if e < 0 {
                match den.iter_mut().find(|(x, _)| (*x - r).norm() <= root_tol(r)) {
                    Some(d) => d.1 = d.1.max(-e),
                    None => den.push((r, -e)),
                }
            }
        }
        let numer = |f: &RationalForm| -> Option<Poly> {
            let mut p = Poly::one();
            let mut rest = den.clone();
            for &(r, e) in &f.roots {
                let mut e = e;
                if let Some(d) = rest.iter_mut().find(|(x, _)| (*x - r).norm() <= root_tol(r)) {
                    e += d.1;
                    d.1 = 0;
                }
                for _ in 0..e {
                    p = p.mul_linear(r);
                }
            }
            for &(r, e) in &rest {
                for _ in 0..e {
                    p = p.mul_linear(r);
                }
            }
            (p.degree() <= MAX_DEGREE).then(|| p.scale(f.scale))
        };
        let sum = numer(self)?.add(&numer(other)?);
        let big = self.scale.norm().max(other.scale.norm());
        let sum = sum.trimmed();
        if sum.0.iter().all(|c| c.norm() <= 1e-14 * big) {
            return Some(RationalForm::constant(C64::new(0.0, 0.0)));
        }
        let mut out = RationalForm::constant(*sum.0.last().unwrap());
        for (r, m) in cluster(&sum.roots()) {
            out.push_root(r, m as i32);
        }
        for &(r, e) in &den {
            out.push_root(r, -e);
        }
        Some(out)
    }

    /// Taylor coefficients of `prod_{roots not in skip} (w - r)^e * scale` about `center`.
    pub fn jet_without(&self, center: C64, skip: Option<usize>, len: usize) -> Vec<C64> {
        let mut acc = vec![C64::new(0.0, 0.0); len];
        if len == 0 {
            return acc;
        }
        acc[0] = self.scale;
        for (k, &(r, e)) in self.roots.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            let b = series::binomial(center - r, e as i64, len);
            acc = series::mul(&acc, &b, len);
        }
        acc
    }
}

/// Groups numerically repeated roots, returning cluster means with multiplicities.
pub fn cluster(roots: &[C64]) -> Vec<(C64, u32)> {
    let mut groups: Vec<(C64, u32)> = Vec::new();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut sum = roots[i];
        let mut count = 1;
        used[i] = true;
        for j in i + 1..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() <= 10.0 * root_tol(roots[i]) {
                used[j] = true;
                sum += roots[j];
                count += 1;
            }
        }
        groups.push((sum / count as f64, count));
    }
    groups
}
