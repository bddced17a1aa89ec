//! Multi-point Laurent and Taylor-Laurent expansions.
//!
//! Foci `0..split` are regular (Taylor side) and foci `split..` carry the
//! poles (Laurent side). With `A(z)` the focus product over the regular foci
//! and `B(z)` over the singular ones, the expansion reads
//!
//! ```text
//! f = sum_n q_n P^n + sum_n t1_n (A/B)^n + sum_n t2_n (A/B)^{n+1} + r_N
//! ```
//!
//! A pure Laurent expansion is `split = 0`, where `A = 1`, `t1 = 0` and
//! `t2_n P^{-(n+1)}` is the principal part.

use num_complex::Complex64 as C64;

use crate::coefficients::{cauchy_coeff, mixed_exponents, residue_coeff, taylor_exponents, CoeffTensor, HermiteBasis};
use crate::contour::{
    annulus_pair, cauchy_integral, default_contour, default_delta, Contour, ContourMode, QuadratureOptions,
};
use crate::error::{Error, Result};
use crate::function::{laurent_from_series, same_point, Analytic, Series, Singularity};
use crate::points::PointSet;
use crate::taylor::{remainder_quadrature, ExpansionOptions, Method};

/// Pole orders `rho_k` at every focus; zero at regular foci.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleProfile {
    orders: Vec<u32>,
}

impl PoleProfile {
    pub fn new(orders: Vec<u32>) -> Self {
        PoleProfile { orders }
    }

    /// Orders read from the singularity list of `f`.
    pub fn from_function(f: &dyn Analytic, points: &PointSet) -> Result<Self> {
        Ok(PoleProfile { orders: points.foci().iter().map(|p| f.pole_order_at(p.0)).collect::<Result<_>>()? })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    fn check(&self, points: &PointSet) -> Result<()> {
        if self.orders.len() != points.len() {
            return Err(Error::invalid(format!(
                "pole profile has {} orders for {} foci",
                self.orders.len(),
                points.len()
            )));
        }
        Ok(())
    }

    /// Number of principal-part blocks, `floor(max (rho_k - 1) / m_k) + 1`.
    pub fn principal_blocks(&self, points: &PointSet) -> usize {
        self.orders
            .iter()
            .zip(points.foci())
            .filter(|(r, _)| **r > 0)
            .map(|(r, p)| (*r as usize - 1) / p.1 as usize + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Regular foci must not carry singularities.
fn check_split(f: &dyn Analytic, points: &PointSet, split: usize) -> Result<()> {
    if split >= points.len() {
        return Err(Error::invalid(format!("split {split} must be below the number of foci {}", points.len())));
    }
    for (z, _) in &points.foci()[..split] {
        if f.singularities().iter().any(|s| same_point(s.location, *z)) {
            return Err(Error::invalid(format!("focus {z} is declared singular but lies on the regular side")));
        }
    }
    Ok(())
}

fn mult(points: &PointSet, range: std::ops::Range<usize>) -> Vec<u32> {
    points.foci()[range].iter().map(|p| p.1).collect()
}

/// Coefficient tensors of the general (split) expansion.
struct Tensors {
    a: CoeffTensor,
    b: CoeffTensor,
    c: CoeffTensor,
}

fn inner_outer(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    opts: &ExpansionOptions,
) -> Result<(Contour, Contour, f64)> {
    let delta = opts.delta.unwrap_or_else(|| default_delta(points, f, split));
    let (inner, outer) = match (&opts.inner, &opts.outer) {
        (Some(i), Some(o)) => (i.clone(), o.clone()),
        (i, o) => {
            let (di, d_o) = match opts.delta {
                Some(d) => annulus_pair(points, f, split, 2.0 * d, &[])?,
                None => {
                    let (i, o, _) =
                        default_contour(points, f, ContourMode::AnnulusPair { split })?.pair().expect("pair contour");
                    (i, o)
                }
            };
            (i.clone().unwrap_or(di), o.clone().unwrap_or(d_o))
        }
    };
    Ok((inner, outer, delta))
}

fn tensors_cauchy(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    inner: &Contour,
    outer: &Contour,
    q: &QuadratureOptions,
) -> Result<Tensors> {
    let p = points.len();
    let a = CoeffTensor::build(blocks, &mult(points, 0..p), |n, j, l| {
        cauchy_coeff(f, points, &taylor_exponents(points, n, j, l), outer, q)
    })?;
    let b = CoeffTensor::build(blocks, &mult(points, 0..split), |n, j, l| {
        cauchy_coeff(f, points, &mixed_exponents(points, split, n, j, l), inner, q)
    })?;
    let c = CoeffTensor::build(blocks, &mult(points, split..p), |n, j, l| {
        cauchy_coeff(f, points, &mixed_exponents(points, split, n + 1, j + split, l), inner, q)
    })?;
    Ok(Tensors { a, b, c })
}

fn tensors_poles(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    profile: &PoleProfile,
) -> Result<Tensors> {
    profile.check(points)?;
    let p = points.len();
    let orders = profile.orders();
    let all = vec![true; p];
    let singular: Vec<bool> = (0..p).map(|k| k >= split).collect();
    let a = CoeffTensor::build(blocks, &mult(points, 0..p), |n, j, l| {
        residue_coeff(f, points, &taylor_exponents(points, n, j, l), &all, orders)
    })?;
    let b = CoeffTensor::build(blocks, &mult(points, 0..split), |n, j, l| {
        residue_coeff(f, points, &mixed_exponents(points, split, n, j, l), &singular, orders)
    })?;
    let c = CoeffTensor::build(blocks, &mult(points, split..p), |n, j, l| {
        residue_coeff(f, points, &mixed_exponents(points, split, n + 1, j + split, l), &singular, orders)
    })?;
    Ok(Tensors { a, b, c })
}

// ---------------------------------------------------------------------------
// Laurent
// ---------------------------------------------------------------------------

/// `f = sum_n q_n P^n + sum_n t_n P^{-(n+1)} + r_N` on a lemniscate annulus.
#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    points: PointSet,
    a: CoeffTensor,
    b: CoeffTensor,
    method: Method,
    delta: Option<f64>,
    basis: HermiteBasis,
}

impl LaurentExpansion {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn blocks(&self) -> usize {
        self.a.blocks()
    }

    pub fn a(&self) -> &CoeffTensor {
        &self.a
    }

    pub fn b(&self) -> &CoeffTensor {
        &self.b
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Radius of the disks modelling the excluded set, when contours were chosen by default.
    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    /// `t_n(z)`.
    pub fn principal_block(&self, n: usize, z: C64) -> C64 {
        self.basis.combine(self.b.block(n), z)
    }

    /// Regular and principal partial sums.
    pub fn eval_parts(&self, z: C64) -> (C64, C64) {
        let basis = self.basis.eval(z);
        let p = self.points.product(z);
        let pinv = p.inv();
        let mut reg = C64::new(0.0, 0.0);
        let mut sing = C64::new(0.0, 0.0);
        for n in (0..self.blocks()).rev() {
            let q: C64 = basis.iter().zip(self.a.block(n)).map(|(c, a)| c * a).sum();
            let t: C64 = basis.iter().zip(self.b.block(n)).map(|(c, b)| c * b).sum();
            reg = reg * p + q;
            sing = (sing + t) * pinv;
        }
        (reg, sing)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let (r, s) = self.eval_parts(z);
        r + s
    }
}

/// Laurent expansion by quadrature over `Γ1` (outer) and `Γ2` (inner).
pub fn expand_laurent_cauchy(
    f: &dyn Analytic,
    points: &PointSet,
    blocks: usize,
    opts: &ExpansionOptions,
) -> Result<LaurentExpansion> {
    let (inner, outer, delta) = inner_outer(f, points, 0, opts)?;
    let t = tensors_cauchy(f, points, 0, blocks, &inner, &outer, &opts.quadrature)?;
    Ok(LaurentExpansion {
        points: points.clone(),
        a: t.a,
        b: t.c,
        method: Method::Cauchy,
        delta: Some(delta),
        basis: HermiteBasis::new(points),
    })
}

/// Laurent expansion from jets of `g_k = (w - z_k)^{rho_k} f`.
pub fn expand_laurent_poles(
    f: &dyn Analytic,
    points: &PointSet,
    blocks: usize,
    profile: &PoleProfile,
) -> Result<LaurentExpansion> {
    let t = tensors_poles(f, points, 0, blocks, profile)?;
    Ok(LaurentExpansion {
        points: points.clone(),
        a: t.a,
        b: t.c,
        method: Method::Derivative,
        delta: None,
        basis: HermiteBasis::new(points),
    })
}

/// Dispatches on `method`, reading pole orders from `f` for the derivative route.
pub fn expand_laurent(
    f: &dyn Analytic,
    points: &PointSet,
    blocks: usize,
    method: Method,
    opts: &ExpansionOptions,
) -> Result<LaurentExpansion> {
    match method {
        Method::Cauchy => expand_laurent_cauchy(f, points, blocks, opts),
        Method::Derivative => {
            let mut e = expand_laurent_poles(f, points, blocks, &PoleProfile::from_function(f, points)?)?;
            e.delta = Some(opts.delta.unwrap_or_else(|| default_delta(points, f, 0)));
            Ok(e)
        }
    }
}

// ---------------------------------------------------------------------------
// Taylor-Laurent
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TaylorLaurentExpansion {
    points: PointSet,
    split: usize,
    a: CoeffTensor,
    b: CoeffTensor,
    c: CoeffTensor,
    method: Method,
    delta: Option<f64>,
    full: HermiteBasis,
    regular: HermiteBasis,
    singular: HermiteBasis,
}

impl TaylorLaurentExpansion {
    fn assemble(points: &PointSet, split: usize, t: Tensors, method: Method, delta: Option<f64>) -> Self {
        TaylorLaurentExpansion {
            points: points.clone(),
            split,
            a: t.a,
            b: t.b,
            c: t.c,
            method,
            delta,
            full: HermiteBasis::new(points),
            regular: HermiteBasis::new(&points.subset(0..split)),
            singular: HermiteBasis::new(&points.subset(split..points.len())),
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Number of regular foci `q`.
    pub fn split(&self) -> usize {
        self.split
    }

    /// `s = m_1 + ... + m_q`.
    pub fn regular_multiplicity(&self) -> u32 {
        self.points.foci()[..self.split].iter().map(|p| p.1).sum()
    }

    pub fn blocks(&self) -> usize {
        self.a.blocks()
    }

    pub fn a(&self) -> &CoeffTensor {
        &self.a
    }

    /// Tensor over the regular foci.
    pub fn b(&self) -> &CoeffTensor {
        &self.b
    }

    /// Tensor over the singular foci.
    pub fn c(&self) -> &CoeffTensor {
        &self.c
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    /// `A(z) / B(z)`.
    pub fn ratio(&self, z: C64) -> C64 {
        ratio(&self.points, self.split, z)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let full = self.full.eval(z);
        let reg = self.regular.eval(z);
        let sing = self.singular.eval(z);
        let p = self.points.product(z);
        let u = self.ratio(z);
        let mut taylor = C64::new(0.0, 0.0);
        let mut mixed = C64::new(0.0, 0.0);
        for n in (0..self.blocks()).rev() {
            let q: C64 = full.iter().zip(self.a.block(n)).map(|(c, a)| c * a).sum();
            let t1: C64 = -reg.iter().zip(self.b.block(n)).map(|(c, b)| c * b).sum::<C64>();
            let t2: C64 = sing.iter().zip(self.c.block(n)).map(|(c, x)| c * x).sum();
            taylor = taylor * p + q;
            // t1_n u^n + t2_n u^{n+1}
            mixed = mixed * u + t1 + t2 * u;
        }
        taylor + mixed
    }
}

pub(crate) fn ratio(points: &PointSet, split: usize, z: C64) -> C64 {
    let mut u = C64::new(1.0, 0.0);
    for (k, &(zk, m)) in points.foci().iter().enumerate() {
        let t = (z - zk).powi(m as i32);
        if k < split {
            u *= t;
        } else {
            u /= t;
        }
    }
    u
}

pub fn expand_taylor_laurent_cauchy(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    opts: &ExpansionOptions,
) -> Result<TaylorLaurentExpansion> {
    if split == 0 {
        return Err(Error::invalid("a Taylor-Laurent expansion needs at least one regular focus"));
    }
    check_split(f, points, split)?;
    let (inner, outer, delta) = inner_outer(f, points, split, opts)?;
    let t = tensors_cauchy(f, points, split, blocks, &inner, &outer, &opts.quadrature)?;
    Ok(TaylorLaurentExpansion::assemble(points, split, t, Method::Cauchy, Some(delta)))
}

pub fn expand_taylor_laurent_poles(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    profile: &PoleProfile,
) -> Result<TaylorLaurentExpansion> {
    if split == 0 {
        return Err(Error::invalid("a Taylor-Laurent expansion needs at least one regular focus"));
    }
    check_split(f, points, split)?;
    if profile.orders()[..split.min(profile.orders().len())].iter().any(|&r| r > 0) {
        return Err(Error::invalid("pole orders declared at regular foci"));
    }
    let t = tensors_poles(f, points, split, blocks, profile)?;
    Ok(TaylorLaurentExpansion::assemble(points, split, t, Method::Derivative, None))
}

pub fn expand_taylor_laurent(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    method: Method,
    opts: &ExpansionOptions,
) -> Result<TaylorLaurentExpansion> {
    match method {
        Method::Cauchy => expand_taylor_laurent_cauchy(f, points, split, blocks, opts),
        Method::Derivative => {
            let mut e = expand_taylor_laurent_poles(f, points, split, blocks, &PoleProfile::from_function(f, points)?)?;
            e.delta = Some(opts.delta.unwrap_or_else(|| default_delta(points, f, split)));
            Ok(e)
        }
    }
}

// ---------------------------------------------------------------------------
// Remainder
// ---------------------------------------------------------------------------

/// Two-contour remainder. `split = 0` gives the Laurent form.
///
/// `r_N = P(z)^N \oint_{Γ1} f / ((w - z) P^N) - u(z)^N \oint_{Γ2} f / ((w - z) u^N)`
/// with `u = A/B`.
#[allow(clippy::too_many_arguments)]
pub fn laurent_remainder_exact(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    z: C64,
    outer: &Contour,
    inner: &Contour,
    opts: &QuadratureOptions,
) -> Result<C64> {
    let tol = 1e-12 * z.norm().max(1.0);
    if outer.distance(z) <= tol || inner.distance(z) <= tol {
        return Err(Error::domain(format!("probe {z} lies on a contour")));
    }
    if !outer.encloses(z) || inner.encloses(z) {
        return Err(Error::geometry(format!("probe {z} is not between the contours")));
    }
    let q = remainder_quadrature(opts);
    let n = blocks as i32;
    let g1 = |w: C64| -> Result<C64> { Ok(f.value(w)? / ((w - z) * points.product(w).powi(n))) };
    let first = cauchy_integral(g1, outer, &q)?.checked()? * points.product(z).powi(n);
    let g2 = |w: C64| -> Result<C64> { Ok(f.value(w)? / ((w - z) * ratio(points, split, w).powi(n))) };
    let second = cauchy_integral(g2, inner, &q)?.checked()? * ratio(points, split, z).powi(n);
    Ok(first - second)
}

/// [`laurent_remainder_exact`] over contours fitted around `z`: inner circles of
/// radius `min(2 delta, |z - z_k| / 2)` and an outer circle enclosing `z`.
pub fn laurent_remainder(
    f: &dyn Analytic,
    points: &PointSet,
    split: usize,
    blocks: usize,
    z: C64,
    delta: Option<f64>,
) -> Result<C64> {
    let delta = delta.unwrap_or_else(|| default_delta(points, f, split));
    let near = points.foci()[split..].iter().map(|p| (z - p.0).norm()).fold(f64::INFINITY, f64::min);
    let (inner, outer) = annulus_pair(points, f, split, (2.0 * delta).min(0.5 * near), &[z])?;
    laurent_remainder_exact(f, points, split, blocks, z, &outer, &inner, &QuadratureOptions::default())
}

// ---------------------------------------------------------------------------
// Principal-part subtraction
// ---------------------------------------------------------------------------

/// `g = f - sum_{n <= M} t_n P^{-(n+1)}`, analytic at the foci.
pub struct PrincipalPartRemoved<'a> {
    f: &'a dyn Analytic,
    points: PointSet,
    b: CoeffTensor,
    basis: HermiteBasis,
    singularities: Vec<Singularity>,
}

/// Removes the poles of `f` at the foci using the principal blocks of its
/// Laurent expansion.
pub fn principal_part_subtract<'a>(
    f: &'a dyn Analytic,
    points: &PointSet,
    profile: &PoleProfile,
) -> Result<PrincipalPartRemoved<'a>> {
    profile.check(points)?;
    let blocks = profile.principal_blocks(points);
    let p = points.len();
    let all = vec![true; p];
    let b = CoeffTensor::build(blocks, &mult(points, 0..p), |n, j, l| {
        residue_coeff(f, points, &mixed_exponents(points, 0, n + 1, j, l), &all, profile.orders())
    })?;
    let singularities =
        f.singularities().iter().filter(|s| !(s.is_pole() && points.index_of(s.location).is_some())).cloned().collect();
    Ok(PrincipalPartRemoved { f, points: points.clone(), b, basis: HermiteBasis::new(points), singularities })
}

impl PrincipalPartRemoved<'_> {
    /// Number of subtracted blocks, `M + 1`.
    pub fn blocks(&self) -> usize {
        self.b.blocks()
    }

    pub fn b(&self) -> &CoeffTensor {
        &self.b
    }

    /// The subtracted sum at `z`.
    pub fn principal_part(&self, z: C64) -> C64 {
        let basis = self.basis.eval(z);
        let pinv = self.points.product(z).inv();
        let mut acc = C64::new(0.0, 0.0);
        for n in (0..self.blocks()).rev() {
            let t: C64 = basis.iter().zip(self.b.block(n)).map(|(c, b)| c * b).sum();
            acc = (acc + t) * pinv;
        }
        acc
    }

    fn principal_series(&self, center: C64, len: usize) -> Result<Series> {
        let basis = self.basis.eval_series(center, len)?;
        let w = Series::variable(center, len);
        let mut prod = Series::constant(C64::new(1.0, 0.0), len);
        for &(zk, m) in self.points.foci() {
            prod = prod.mul(&w.sub(&Series::constant(zk, len)).powi(m as i64)?);
        }
        let mut acc = Series::constant(C64::new(0.0, 0.0), len);
        for n in (0..self.blocks()).rev() {
            let mut t = Series::constant(C64::new(0.0, 0.0), len);
            for (c, b) in basis.iter().zip(self.b.block(n)) {
                t = t.add(&c.scale(*b));
            }
            acc = acc.add(&t).div(&prod)?;
        }
        Ok(acc)
    }
}

impl Analytic for PrincipalPartRemoved<'_> {
    fn value(&self, z: C64) -> Result<C64> {
        Ok(self.f.value(z)? - self.principal_part(z))
    }

    fn laurent(&self, center: C64, rho: u32, len: usize) -> Result<Vec<C64>> {
        let rf = self.f.pole_order_at(center)?;
        laurent_from_series(
            |l| {
                let fs = Series::new(-(rf as i64), self.f.laurent(center, rf, l)?);
                Ok(fs.sub(&self.principal_series(center, l)?))
            },
            center,
            rho,
            len,
        )
    }

    fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }
}
