//! Independent oracles: confluent Hermite interpolation, exact residue sums
//! for rational functions and remainder-order fits.

use std::collections::HashMap;

use num_complex::Complex64 as C64;

use crate::contour::{enclosing_circle, QuadratureOptions};
use crate::error::{Error, Result};
use crate::function::{series, AnalyticFunction, RationalForm};
use crate::points::PointSet;
use crate::taylor::remainder_exact;

/// Order in which repeated nodes enter the Newton form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NodeOrder {
    /// `z_1 .. z_p` block after block, each focus contributing `m_j` copies per block.
    #[default]
    Interleaved,
    /// All copies of `z_1`, then all of `z_2`, and so on.
    Grouped,
}

/// Hermite interpolant in Newton form.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitePolynomial {
    pub points: PointSet,
    pub blocks: usize,
    pub nodes: Vec<C64>,
    pub newton_coeffs: Vec<C64>,
}

impl HermitePolynomial {
    pub fn degree(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    /// Nested evaluation of the Newton form.
    pub fn eval(&self, z: C64) -> C64 {
        let n = self.newton_coeffs.len();
        let mut acc = self.newton_coeffs[n - 1];
        for k in (0..n - 1).rev() {
            acc = acc * (z - self.nodes[k]) + self.newton_coeffs[k];
        }
        acc
    }
}

/// Interpolant matching `D^l f(z_j)` for `l < N m_j`, nodes interleaved.
pub fn hermite_interpolate(f: &AnalyticFunction, points: &PointSet, blocks: usize) -> Result<HermitePolynomial> {
    hermite_interpolate_ordered(f, points, blocks, NodeOrder::Interleaved)
}

pub fn hermite_interpolate_ordered(
    f: &AnalyticFunction,
    points: &PointSet,
    blocks: usize,
    order: NodeOrder,
) -> Result<HermitePolynomial> {
    if blocks == 0 {
        return Err(Error::invalid("at least one block is needed"));
    }
    let foci = points.foci();
    let jets: Vec<Vec<C64>> =
        foci.iter().map(|&(z, m)| f.jet_eval(z, blocks * m as usize - 1).map(|j| j.coeffs)).collect::<Result<_>>()?;
    let mut seq: Vec<usize> = Vec::new();
    match order {
        NodeOrder::Interleaved => {
            for _ in 0..blocks {
                for (j, &(_, m)) in foci.iter().enumerate() {
                    seq.extend(std::iter::repeat_n(j, m as usize));
                }
            }
        }
        NodeOrder::Grouped => {
            for (j, &(_, m)) in foci.iter().enumerate() {
                seq.extend(std::iter::repeat_n(j, blocks * m as usize));
            }
        }
    }
    let mut table = DividedDifferences { points: foci.iter().map(|p| p.0).collect(), jets, memo: HashMap::new() };
    let mut counts = vec![0u32; foci.len()];
    let mut newton = Vec::with_capacity(seq.len());
    for &j in &seq {
        counts[j] += 1;
        newton.push(table.get(&counts));
    }
    Ok(HermitePolynomial {
        points: points.clone(),
        blocks,
        nodes: seq.iter().map(|&j| foci[j].0).collect(),
        newton_coeffs: newton,
    })
}

/// Divided differences over node multisets, memoised by multiplicity vector.
struct DividedDifferences {
    points: Vec<C64>,
    jets: Vec<Vec<C64>>,
    memo: HashMap<Vec<u32>, C64>,
}

impl DividedDifferences {
    fn get(&mut self, counts: &[u32]) -> C64 {
        if let Some(v) = self.memo.get(counts) {
            return *v;
        }
        let present: Vec<usize> = (0..counts.len()).filter(|&k| counts[k] > 0).collect();
        let v = if present.len() == 1 {
            let k = present[0];
            self.jets[k][counts[k] as usize - 1]
        } else {
            let (a, b) = (present[0], present[1]);
            let mut without_a = counts.to_vec();
            without_a[a] -= 1;
            let mut without_b = counts.to_vec();
            without_b[b] -= 1;
            (self.get(&without_a) - self.get(&without_b)) / (self.points[b] - self.points[a])
        };
        self.memo.insert(counts.to_vec(), v);
        v
    }
}

// ---------------------------------------------------------------------------
// Residue oracle
// ---------------------------------------------------------------------------

/// `(2 pi i)^-1 \oint f(w) prod_s (w - z_s)^{e_s} dw` for rational `f`, where the
/// contour encloses exactly the foci flagged in `inside`.
///
/// Computed as minus the residues outside the contour (finite poles and the
/// point at infinity), so no jet is ever taken at an enclosed focus.
pub fn residue_integral_rational(f: &RationalForm, points: &PointSet, exps: &[i64], inside: &[bool]) -> Result<C64> {
    if f.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut h = f.clone();
    for (&(z, _), &e) in points.foci().iter().zip(exps) {
        h.push_root(z, e as i32);
    }
    let enclosed = |r: C64| points.index_of(r).map(|k| inside[k]).unwrap_or(false);
    let mut outside = C64::new(0.0, 0.0);
    for (k, &(r, e)) in h.roots.iter().enumerate() {
        if e >= 0 || enclosed(r) {
            continue;
        }
        let order = (-e) as usize;
        outside += h.jet_without(r, Some(k), order)[order - 1];
    }
    // residue at infinity: h(w) = scale w^d prod (1 - r/w)^e, coefficient of w^{-1}
    let d = h.degree();
    let at_infinity = if d + 1 < 0 {
        C64::new(0.0, 0.0)
    } else {
        let len = (d + 2) as usize;
        let mut s = vec![C64::new(0.0, 0.0); len];
        s[0] = h.scale;
        for &(r, e) in &h.roots {
            let mut b = series::binomial(C64::new(1.0, 0.0), e as i64, len);
            let mut pow = C64::new(1.0, 0.0);
            for c in b.iter_mut() {
                *c *= pow;
                pow *= -r;
            }
            s = series::mul(&s, &b, len);
        }
        -s[len - 1]
    };
    Ok(-(outside + at_infinity))
}

/// `a_{n,j,l}` of a rational function by exact residues.
pub fn residue_coeffs_rational(f: &AnalyticFunction, points: &PointSet, n: usize, j: usize, l: usize) -> Result<C64> {
    let r = f.rational().ok_or_else(|| Error::invalid("the residue oracle needs a rational function"))?;
    if j >= points.len() || l >= points.multiplicity(j) as usize {
        return Err(Error::invalid(format!("coefficient index j={j}, l={l} out of range")));
    }
    let exps: Vec<i64> = points
        .foci()
        .iter()
        .enumerate()
        .map(|(s, &(_, m))| -(n as i64) * m as i64 - if s == j { l as i64 + 1 } else { 0 })
        .collect();
    residue_integral_rational(r, points, &exps, &vec![true; points.len()])
}

// ---------------------------------------------------------------------------
// Remainder order
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrderFit {
    /// Least-squares slope of `log |r_N|` against `log t`.
    Slope(f64),
    /// Remainder below `1e-13` at every probe.
    Exact,
}

/// Fitted order of `r_N(z_j + t u)` as `t -> 0`, with `t` in `{1e-2, 1e-3, 1e-4}`.
pub fn remainder_order_check(f: &AnalyticFunction, points: &PointSet, blocks: usize, j: usize) -> Result<OrderFit> {
    if j >= points.len() {
        return Err(Error::invalid(format!("focus index {j} out of range")));
    }
    let u = C64::from_polar(1.0, 0.7311);
    let zj = points.point(j);
    let ts = [1e-2, 1e-3, 1e-4];
    let probes: Vec<C64> = ts.iter().map(|t| zj + u * *t).collect();
    let contour = enclosing_circle(points, f, &probes)?;
    let opts = QuadratureOptions::default();
    let mut rs = Vec::with_capacity(ts.len());
    for z in &probes {
        rs.push(remainder_exact(f, points, blocks, *z, &contour, &opts)?.norm());
    }
    if rs.iter().all(|r| *r < 1e-13) {
        return Ok(OrderFit::Exact);
    }
    let xs: Vec<f64> = ts.iter().map(|t| t.log10()).collect();
    let ys: Vec<f64> = rs.iter().map(|r| r.max(f64::MIN_POSITIVE).log10()).collect();
    let mx = xs.iter().sum::<f64>() / 3.0;
    let my = ys.iter().sum::<f64>() / 3.0;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(OrderFit::Slope(sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::parse_function;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cubic_interpolant() {
        let f = parse_function("z^3").unwrap();
        let s: PointSet = "0:2,1:1".parse().unwrap();
        let h = hermite_interpolate(&f, &s, 1).unwrap();
        let z = c(0.3, 0.4);
        assert!((h.eval(z) - z * z).norm() < 1e-15);
    }

    #[test]
    fn one_node_is_taylor() {
        let f = parse_function("exp(z)").unwrap();
        let s: PointSet = "0".parse().unwrap();
        let h = hermite_interpolate(&f, &s, 4).unwrap();
        let z = c(0.5, 0.0);
        let want = 1.0 + 0.5 + 0.125 + 0.125 / 6.0;
        assert!((h.eval(z) - c(want, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn orders_agree() {
        let f = parse_function("1/(3-z)").unwrap();
        let s: PointSet = "1,-1:2,i".parse().unwrap();
        let a = hermite_interpolate_ordered(&f, &s, 2, NodeOrder::Interleaved).unwrap();
        let b = hermite_interpolate_ordered(&f, &s, 2, NodeOrder::Grouped).unwrap();
        for z in [c(0.1, 0.2), c(-0.8, 0.5), c(1.2, -0.3)] {
            assert!((a.eval(z) - b.eval(z)).norm() < 1e-11);
        }
    }

    #[test]
    fn residue_examples() {
        let f = parse_function("1/(3-z)").unwrap();
        let s: PointSet = "1,-1".parse().unwrap();
        assert!((residue_coeffs_rational(&f, &s, 0, 0, 0).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let one = parse_function("1").unwrap();
        assert!(residue_coeffs_rational(&one, &s, 1, 0, 0).unwrap().norm() < 1e-15);
        assert!(residue_coeffs_rational(&parse_function("exp(z)").unwrap(), &s, 0, 0, 0).is_err());
    }

    #[test]
    fn order_examples() {
        let s0: PointSet = "0".parse().unwrap();
        match remainder_order_check(&parse_function("exp(z)").unwrap(), &s0, 3, 0).unwrap() {
            OrderFit::Slope(k) => assert!((k - 3.0).abs() < 0.2, "{k}"),
            OrderFit::Exact => panic!(),
        }
        let s: PointSet = "1,-1".parse().unwrap();
        assert_eq!(remainder_order_check(&parse_function("z^2").unwrap(), &s, 2, 0).unwrap(), OrderFit::Exact);
    }
}
