//! Multi-point Taylor expansions `f = sum_n q_n(z) P(z)^n + r_N(z)` with
//! `P(z) = prod (z - z_k)^{m_k}`.

use num_complex::Complex64 as C64;

use crate::coefficients::{cauchy_coeff, focus_orders, residue_coeff, taylor_exponents, CoeffTensor, HermiteBasis};
use crate::contour::{cauchy_integral, default_contour, enclosing_circle, Contour, ContourMode, QuadratureOptions};
use crate::error::{Error, Result};
use crate::function::Analytic;
use crate::points::PointSet;

/// How coefficients are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Trapezoidal quadrature of the Cauchy integrals.
    Cauchy,
    /// Residue sums from jets at the foci.
    Derivative,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Cauchy => "cauchy",
            Method::Derivative => "derivative",
        })
    }
}

/// Contours and quadrature settings shared by every expansion kind.
///
/// Unset contours are chosen by [`default_contour`].
#[derive(Clone, Debug, Default)]
pub struct ExpansionOptions {
    pub outer: Option<Contour>,
    pub inner: Option<Contour>,
    pub delta: Option<f64>,
    pub quadrature: QuadratureOptions,
}

/// Quadrature settings for remainders, whose values can be far below one.
pub(crate) fn remainder_quadrature(q: &QuadratureOptions) -> QuadratureOptions {
    QuadratureOptions { floor: 0.0, ..*q }
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

/// `(prod (w - z_k) - prod (z - z_k)) / (w - z)` for distinct nodes; the
/// `w == z` limit is the derivative of the product.
pub fn h_kernel(w: C64, z: C64, nodes: &[C64]) -> Result<C64> {
    check_distinct(nodes)?;
    if w == z {
        // d/dw prod (w - z_k)
        let mut sum = C64::new(0.0, 0.0);
        for j in 0..nodes.len() {
            let mut p = C64::new(1.0, 0.0);
            for (k, zk) in nodes.iter().enumerate() {
                if k != j {
                    p *= w - zk;
                }
            }
            sum += p;
        }
        return Ok(sum);
    }
    let pw: C64 = nodes.iter().map(|zk| w - zk).product();
    let pz: C64 = nodes.iter().map(|zk| z - zk).product();
    Ok((pw - pz) / (w - z))
}

/// The same kernel through its interpolation form
/// `sum_j prod_{k != j} (w - z_k)(z - z_k) / (z_j - z_k)`.
pub fn h_kernel_interpolated(w: C64, z: C64, nodes: &[C64]) -> Result<C64> {
    check_distinct(nodes)?;
    let mut sum = C64::new(0.0, 0.0);
    for (j, zj) in nodes.iter().enumerate() {
        let mut t = C64::new(1.0, 0.0);
        for (k, zk) in nodes.iter().enumerate() {
            if k != j {
                t *= (w - zk) * (z - zk) / (zj - zk);
            }
        }
        sum += t;
    }
    Ok(sum)
}

fn check_distinct(nodes: &[C64]) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            if a == b {
                return Err(Error::domain("repeated node; use the confluent form"));
            }
        }
    }
    Ok(())
}

/// `sum_{j < m} (z - z_m)^j / (w - z_m)^{j+1}`, the coalesced-node limit.
pub fn confluent_kernel_limit(z: C64, w: C64, zm: C64, m: u32) -> Result<C64> {
    if w == zm {
        return Err(Error::domain("w coincides with the coalesced node"));
    }
    let ratio = (z - zm) / (w - zm);
    let mut term = (w - zm).inv();
    let mut sum = C64::new(0.0, 0.0);
    for _ in 0..m {
        sum += term;
        term *= ratio;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

fn check_index(points: &PointSet, j: usize, l: usize) -> Result<()> {
    if j >= points.len() || l >= points.multiplicity(j) as usize {
        return Err(Error::invalid(format!("coefficient index j={j}, l={l} out of range")));
    }
    Ok(())
}

/// `a_{n,j,l}` by quadrature over `contour`.
pub fn coeff_cauchy(
    f: &dyn Analytic,
    points: &PointSet,
    n: usize,
    j: usize,
    l: usize,
    contour: &Contour,
    opts: &QuadratureOptions,
) -> Result<C64> {
    check_index(points, j, l)?;
    cauchy_coeff(f, points, &taylor_exponents(points, n, j, l), contour, opts)
}

/// `a_{n,j,l}` from jets at the foci. Poles of `f` at the foci are accounted
/// for by their declared orders.
pub fn coeff_derivative(f: &dyn Analytic, points: &PointSet, n: usize, j: usize, l: usize) -> Result<C64> {
    check_index(points, j, l)?;
    let orders = focus_orders(f, points)?;
    let inside = vec![true; points.len()];
    residue_coeff(f, points, &taylor_exponents(points, n, j, l), &inside, &orders)
}

// ---------------------------------------------------------------------------
// Expansion
// ---------------------------------------------------------------------------

/// The polynomial `q_n` of one block.
#[derive(Clone, Copy, Debug)]
pub struct BasisPolynomial<'a> {
    basis: &'a HermiteBasis,
    coeffs: &'a [C64],
}

impl<'a> BasisPolynomial<'a> {
    pub fn new(basis: &'a HermiteBasis, coeffs: &'a [C64]) -> Self {
        BasisPolynomial { basis, coeffs }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.basis.combine(self.coeffs, z)
    }
}

pub fn basis_eval(q: &BasisPolynomial<'_>, z: C64) -> C64 {
    q.eval(z)
}

#[derive(Clone, Debug)]
pub struct TaylorExpansion {
    points: PointSet,
    a: CoeffTensor,
    method: Method,
    basis: HermiteBasis,
}

impl TaylorExpansion {
    /// Wraps a coefficient tensor computed elsewhere.
    pub fn from_tensor(points: PointSet, a: CoeffTensor, method: Method) -> Self {
        let basis = HermiteBasis::new(&points);
        TaylorExpansion { points, a, method, basis }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Number of blocks `N`.
    pub fn blocks(&self) -> usize {
        self.a.blocks()
    }

    pub fn a(&self) -> &CoeffTensor {
        &self.a
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn basis(&self) -> &HermiteBasis {
        &self.basis
    }

    pub fn block(&self, n: usize) -> BasisPolynomial<'_> {
        BasisPolynomial::new(&self.basis, self.a.block(n))
    }

    /// Partial sum with all `N` blocks.
    pub fn eval(&self, z: C64) -> C64 {
        self.eval_partial(z, self.blocks())
    }

    /// Partial sum with the first `blocks` blocks, Horner in `P(z)`.
    pub fn eval_partial(&self, z: C64, blocks: usize) -> C64 {
        let basis = self.basis.eval(z);
        let p = self.points.product(z);
        let mut acc = C64::new(0.0, 0.0);
        for n in (0..blocks.min(self.blocks())).rev() {
            let q: C64 = basis.iter().zip(self.a.block(n)).map(|(c, a)| c * a).sum();
            acc = acc * p + q;
        }
        acc
    }
}

pub fn eval_expansion(e: &TaylorExpansion, z: C64) -> C64 {
    e.eval(z)
}

/// Expansion with `blocks` blocks using default contours.
pub fn expand_taylor(f: &dyn Analytic, points: &PointSet, blocks: usize, method: Method) -> Result<TaylorExpansion> {
    expand_taylor_with(f, points, blocks, method, &ExpansionOptions::default())
}

pub fn expand_taylor_with(
    f: &dyn Analytic,
    points: &PointSet,
    blocks: usize,
    method: Method,
    opts: &ExpansionOptions,
) -> Result<TaylorExpansion> {
    let mult: Vec<u32> = points.foci().iter().map(|f| f.1).collect();
    let a = match method {
        Method::Cauchy => {
            let contour = match &opts.outer {
                Some(c) => c.clone(),
                None => default_contour(points, f, ContourMode::EncloseAll)?.single().expect("single contour"),
            };
            CoeffTensor::build(blocks, &mult, |n, j, l| coeff_cauchy(f, points, n, j, l, &contour, &opts.quadrature))?
        }
        Method::Derivative => {
            let orders = focus_orders(f, points)?;
            let inside = vec![true; points.len()];
            CoeffTensor::build(blocks, &mult, |n, j, l| {
                residue_coeff(f, points, &taylor_exponents(points, n, j, l), &inside, &orders)
            })?
        }
    };
    Ok(TaylorExpansion::from_tensor(points.clone(), a, method))
}

/// `r_N(z) = P(z)^N (2 pi i)^-1 \oint f(w) / ((w - z) P(w)^N) dw` over `contour`.
pub fn remainder_exact(
    f: &dyn Analytic,
    points: &PointSet,
    blocks: usize,
    z: C64,
    contour: &Contour,
    opts: &QuadratureOptions,
) -> Result<C64> {
    if contour.distance(z) <= 1e-12 * z.norm().max(1.0) {
        return Err(Error::domain(format!("probe {z} lies on the contour")));
    }
    if !contour.encloses(z) {
        return Err(Error::geometry(format!("contour does not enclose the probe {z}")));
    }
    let n = blocks as i32;
    let g = |w: C64| -> Result<C64> { Ok(f.value(w)? / ((w - z) * points.product(w).powi(n))) };
    let integral = cauchy_integral(g, contour, &remainder_quadrature(opts))?.checked()?;
    Ok(integral * points.product(z).powi(n))
}

/// [`remainder_exact`] over a circle chosen to enclose the foci and `z`.
pub fn remainder(f: &dyn Analytic, points: &PointSet, blocks: usize, z: C64) -> Result<C64> {
    let contour = enclosing_circle(points, f, &[z])?;
    remainder_exact(f, points, blocks, z, &contour, &QuadratureOptions::default())
}
