//! Circular contours and trapezoidal Cauchy integrals.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::function::{same_point, Analytic, Singularity, SingularityKind};
use crate::points::PointSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: C64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(Error::geometry(format!("invalid circle radius {radius}")));
        }
        Ok(Circle { center, radius })
    }

    pub fn contains(&self, z: C64) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Distance from `z` to the circle trace.
    pub fn distance(&self, z: C64) -> f64 {
        ((z - self.center).norm() - self.radius).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContourKind {
    SingleLoop,
    PerFocusUnion,
}

/// Union of counter-clockwise circles.
#[derive(Clone, Debug, PartialEq)]
pub struct Contour {
    pieces: Vec<Circle>,
    kind: ContourKind,
}

impl Contour {
    pub fn circle(center: C64, radius: f64) -> Result<Self> {
        Ok(Contour { pieces: vec![Circle::new(center, radius)?], kind: ContourKind::SingleLoop })
    }

    /// Union of circles whose closed disks must be pairwise disjoint.
    pub fn union(pieces: Vec<Circle>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::geometry("contour has no pieces"));
        }
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                if (a.center - b.center).norm() <= a.radius + b.radius {
                    return Err(Error::geometry(format!("circles around {} and {} overlap", a.center, b.center)));
                }
            }
        }
        let kind = if pieces.len() == 1 { ContourKind::SingleLoop } else { ContourKind::PerFocusUnion };
        Ok(Contour { pieces, kind })
    }

    pub fn pieces(&self) -> &[Circle] {
        &self.pieces
    }

    pub fn kind(&self) -> ContourKind {
        self.kind
    }

    /// True when `z` lies inside one of the pieces.
    pub fn encloses(&self, z: C64) -> bool {
        self.pieces.iter().any(|c| c.contains(z))
    }

    pub fn distance(&self, z: C64) -> f64 {
        self.pieces.iter().map(|c| c.distance(z)).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub tol: f64,
    /// Node cap per circle.
    pub max_nodes: usize,
    /// Node count of the first pass.
    pub min_nodes: usize,
    /// Convergence is `|delta| < tol * max(floor, |value|)`.
    pub floor: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { tol: 1e-12, max_nodes: 1 << 16, min_nodes: 16, floor: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: C64,
    pub nodes_used: usize,
    /// Size of the last doubling step, summed over pieces.
    pub est_error: f64,
    pub converged: bool,
    /// `|delta|` after each doubling of the first piece.
    pub history: Vec<f64>,
}

impl QuadratureResult {
    /// The value, or a quadrature error when the node cap was hit.
    pub fn checked(self) -> Result<C64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Quadrature { nodes: self.nodes_used, est_error: self.est_error })
        }
    }
}

/// `(2 pi i)^-1` times the contour integral of `g`.
pub fn cauchy_integral<G>(g: G, contour: &Contour, opts: &QuadratureOptions) -> Result<QuadratureResult>
where
    G: Fn(C64) -> Result<C64>,
{
    integrate(&g, contour, opts, false)
}

pub(crate) fn integrate<G>(
    g: &G,
    contour: &Contour,
    opts: &QuadratureOptions,
    reversed: bool,
) -> Result<QuadratureResult>
where
    G: Fn(C64) -> Result<C64>,
{
    let mut total = QuadratureResult {
        value: C64::new(0.0, 0.0),
        nodes_used: 0,
        est_error: 0.0,
        converged: true,
        history: Vec::new(),
    };
    for (k, piece) in contour.pieces.iter().enumerate() {
        let r = trapezoid(g, piece, opts, reversed)?;
        total.value += r.value;
        total.nodes_used += r.nodes_used;
        total.est_error += r.est_error;
        total.converged &= r.converged;
        if k == 0 {
            total.history = r.history;
        }
    }
    Ok(total)
}

fn trapezoid<G>(g: &G, c: &Circle, opts: &QuadratureOptions, reversed: bool) -> Result<QuadratureResult>
where
    G: Fn(C64) -> Result<C64>,
{
    let sign = if reversed { -1.0 } else { 1.0 };
    let sample = |theta: f64| -> Result<(C64, f64)> {
        let d = C64::from_polar(c.radius, sign * theta);
        let w = c.center + d;
        let v = g(w)?;
        if !v.is_finite() {
            return Err(Error::domain(format!("integrand is not finite at {w}")));
        }
        let h = v * d;
        Ok((h, h.norm()))
    };
    let mut n = opts.min_nodes.max(1);
    let mut sum = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    for k in 0..n {
        let (h, a) = sample(2.0 * PI * k as f64 / n as f64)?;
        sum += h;
        abs += a;
    }
    let mut value = sum / n as f64;
    let mut history = Vec::new();
    let mut delta = f64::INFINITY;
    while n < opts.max_nodes.max(opts.min_nodes) {
        let m = 2 * n;
        for k in (1..m).step_by(2) {
            let (h, a) = sample(2.0 * PI * k as f64 / m as f64)?;
            sum += h;
            abs += a;
        }
        n = m;
        let next = sum / n as f64;
        delta = (next - value).norm();
        value = next;
        history.push(delta);
        let noise = 64.0 * f64::EPSILON * abs / n as f64;
        if delta < opts.tol * value.norm().max(opts.floor) || delta <= noise {
            return Ok(QuadratureResult {
                value: value * sign,
                nodes_used: n,
                est_error: delta,
                converged: true,
                history,
            });
        }
    }
    Ok(QuadratureResult { value: value * sign, nodes_used: n, est_error: delta, converged: false, history })
}

// ---------------------------------------------------------------------------
// Default contours
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContourMode {
    /// One circle around every focus.
    EncloseAll,
    /// Disjoint circles, one per focus.
    PerFocus,
    /// Inner union around foci `split..` and an outer enclosing circle.
    AnnulusPair { split: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum DefaultContour {
    Single(Contour),
    Pair { inner: Contour, outer: Contour, delta: f64 },
}

impl DefaultContour {
    pub fn single(self) -> Option<Contour> {
        match self {
            DefaultContour::Single(c) => Some(c),
            _ => None,
        }
    }

    pub fn pair(self) -> Option<(Contour, Contour, f64)> {
        match self {
            DefaultContour::Pair { inner, outer, delta } => Some((inner, outer, delta)),
            _ => None,
        }
    }
}

/// Singularities that do not sit on a focus.
fn exterior(points: &PointSet, sings: &[Singularity]) -> Vec<C64> {
    sings.iter().filter(|s| points.index_of(s.location).is_none()).map(|s| s.location).collect()
}

fn check_foci(points: &PointSet, sings: &[Singularity]) -> Result<()> {
    for s in sings {
        if points.index_of(s.location).is_some() {
            if let SingularityKind::BranchPoint { .. } = s.kind {
                return Err(Error::geometry(format!("branch point at the focus {}", s.location)));
            }
        }
    }
    Ok(())
}

/// Circle about `center` containing every point of `inside` (each inflated by
/// its radius) and none of `outside`.
///
/// The radius is the geometric mean of the inner and outer distances, raised
/// to half the outer distance when the inner points are tightly clustered.
pub fn separating_circle(center: C64, inside: &[(C64, f64)], outside: &[C64]) -> Result<Circle> {
    let r_in = inside.iter().map(|(z, pad)| (z - center).norm() + pad).fold(0.0, f64::max);
    let r_out = outside.iter().map(|z| (z - center).norm()).fold(f64::INFINITY, f64::min);
    let radius = if r_out.is_infinite() {
        r_in + r_in.max(1.0)
    } else if r_out <= r_in * (1.0 + 1e-9) {
        return Err(Error::geometry(format!(
            "no circle about {center} separates the foci (radius {r_in:.6}) from the singularity at distance {r_out:.6}"
        )));
    } else {
        (r_in * r_out).sqrt().max(r_out / 2.0)
    };
    Circle::new(center, radius)
}

/// Circle about the centroid of the foci enclosing the foci and `extra`, and
/// excluding every singularity that is not at a focus.
pub fn enclosing_circle(points: &PointSet, f: &dyn Analytic, extra: &[C64]) -> Result<Contour> {
    check_foci(points, f.singularities())?;
    let inside: Vec<(C64, f64)> =
        points.foci().iter().map(|p| (p.0, 0.0)).chain(extra.iter().map(|&z| (z, 0.0))).collect();
    let c = separating_circle(points.centroid(), &inside, &exterior(points, f.singularities()))?;
    Contour::circle(c.center, c.radius)
}

/// Default `delta`: a tenth of the distance from the inner foci to anything else.
pub fn default_delta(points: &PointSet, f: &dyn Analytic, split: usize) -> f64 {
    let inner: Vec<C64> = points.foci()[split..].iter().map(|p| p.0).collect();
    let singular: Vec<C64> =
        inner.iter().copied().filter(|z| f.singularities().iter().any(|s| same_point(s.location, *z))).collect();
    let base = if singular.is_empty() { inner } else { singular };
    let mut d = f64::INFINITY;
    for z in &base {
        for (w, _) in points.foci() {
            if !same_point(*w, *z) {
                d = d.min((w - z).norm());
            }
        }
        for s in f.singularities() {
            if !same_point(s.location, *z) {
                d = d.min((s.location - z).norm());
            }
        }
    }
    if d.is_finite() {
        0.1 * d
    } else {
        0.1
    }
}

/// Contours suited to `mode` for expanding `f` about `points`.
pub fn default_contour(points: &PointSet, f: &dyn Analytic, mode: ContourMode) -> Result<DefaultContour> {
    let ext = exterior(points, f.singularities());
    match mode {
        ContourMode::EncloseAll => Ok(DefaultContour::Single(enclosing_circle(points, f, &[])?)),
        ContourMode::PerFocus => {
            check_foci(points, f.singularities())?;
            let mut gap = f64::INFINITY;
            for (i, a) in points.foci().iter().enumerate() {
                for b in &points.foci()[i + 1..] {
                    gap = gap.min((a.0 - b.0).norm());
                }
            }
            let mut pieces = Vec::new();
            for (z, _) in points.foci() {
                let near = ext.iter().map(|s| (s - z).norm()).fold(f64::INFINITY, f64::min);
                let mut r = if gap.is_finite() {
                    0.4 * gap
                } else if near.is_finite() {
                    0.5 * near
                } else {
                    1.0
                };
                r = r.min(0.5 * near);
                if r <= 0.0 {
                    return Err(Error::geometry(format!("a singularity coincides with the focus {z}")));
                }
                pieces.push(Circle::new(*z, r)?);
            }
            Ok(DefaultContour::Single(Contour::union(pieces)?))
        }
        ContourMode::AnnulusPair { split } => {
            if split >= points.len() {
                return Err(Error::invalid(format!("split {split} leaves no inner focus")));
            }
            let delta = default_delta(points, f, split);
            let (inner, outer) = annulus_pair(points, f, split, 2.0 * delta, &[])?;
            Ok(DefaultContour::Pair { inner, outer, delta })
        }
    }
}

/// Inner circles of radius `radius` about foci `split..` and an outer circle
/// enclosing them, every focus and `extra`.
pub fn annulus_pair(
    points: &PointSet,
    f: &dyn Analytic,
    split: usize,
    radius: f64,
    extra: &[C64],
) -> Result<(Contour, Contour)> {
    check_foci(points, f.singularities())?;
    let inner: Vec<Circle> = points.foci()[split..].iter().map(|p| Circle::new(p.0, radius)).collect::<Result<_>>()?;
    for c in &inner {
        for (k, (z, _)) in points.foci().iter().enumerate() {
            if k < split && c.contains(*z) {
                return Err(Error::geometry(format!(
                    "inner circle around {} contains the regular focus {z}",
                    c.center
                )));
            }
        }
        for s in exterior(points, f.singularities()) {
            if (s - c.center).norm() <= radius {
                return Err(Error::geometry(format!("inner circle around {} contains the singularity {s}", c.center)));
            }
        }
    }
    let mut inside: Vec<(C64, f64)> = points.foci().iter().map(|p| (p.0, 0.0)).collect();
    inside.extend(inner.iter().map(|c| (c.center, c.radius)));
    inside.extend(extra.iter().map(|&z| (z, 0.0)));
    let c = separating_circle(points.centroid(), &inside, &exterior(points, f.singularities()))?;
    Ok((Contour::union(inner)?, Contour::circle(c.center, c.radius)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::parse_function;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn unit() -> Contour {
        Contour::circle(c(0.0, 0.0), 1.0).unwrap()
    }

    #[test]
    fn residue_examples() {
        let o = QuadratureOptions::default();
        let a = cauchy_integral(|w| Ok(w.inv()), &unit(), &o).unwrap();
        assert!((a.value - c(1.0, 0.0)).norm() <= 1e-14);
        let b = cauchy_integral(|w| Ok(w.powi(-2)), &unit(), &o).unwrap();
        assert!(b.value.norm() <= 1e-14);
        let e = cauchy_integral(|w| Ok(w.exp() / w.powi(3)), &unit(), &o).unwrap();
        assert!((e.value - c(0.5, 0.0)).norm() <= 1e-14);
        assert!(e.converged);
    }

    #[test]
    fn orientation_reverses_sign() {
        let o = QuadratureOptions::default();
        let g = |w: C64| Ok(w.exp() / (w - c(0.2, 0.1)).powi(2));
        let fwd = integrate(&g, &unit(), &o, false).unwrap().value;
        let back = integrate(&g, &unit(), &o, true).unwrap().value;
        assert!((fwd + back).norm() < 1e-14);
    }

    #[test]
    fn non_convergence_is_flagged() {
        let o = QuadratureOptions { max_nodes: 32, ..Default::default() };
        let r = cauchy_integral(|w| Ok((w - c(1.0001, 0.0)).inv()), &unit(), &o).unwrap();
        assert!(!r.converged);
        assert!(matches!(r.checked(), Err(Error::Quadrature { .. })));
    }

    #[test]
    fn default_contours() {
        let f = parse_function("1/(3-z)").unwrap();
        let s: PointSet = "1,-1".parse().unwrap();
        let one = default_contour(&s, &f, ContourMode::EncloseAll).unwrap().single().unwrap();
        let r = one.pieces()[0].radius;
        assert!(r > 1.0 && r < 3.0);
        assert_eq!(one.pieces()[0].center, c(0.0, 0.0));

        let e = parse_function("exp(z)").unwrap();
        let s0: PointSet = "0".parse().unwrap();
        let d = default_contour(&s0, &e, ContourMode::EncloseAll).unwrap().single().unwrap();
        assert_eq!(d.pieces()[0].radius, 1.0);

        let pf = default_contour(&s, &e, ContourMode::PerFocus).unwrap().single().unwrap();
        assert_eq!(pf.kind(), ContourKind::PerFocusUnion);
        assert!(pf.pieces().iter().all(|p| (p.radius - 0.8).abs() < 1e-15));
    }

    #[test]
    fn singularity_inside_is_geometry_error() {
        let f = parse_function("1/(z-0.5)").unwrap();
        let s: PointSet = "1,-1".parse().unwrap();
        assert!(matches!(default_contour(&s, &f, ContourMode::EncloseAll), Err(Error::Geometry(_))));
    }

    #[test]
    fn annulus_pair_geometry() {
        let f = parse_function("1/((z-1)*(z+1)^2) + 1/(3-z)").unwrap();
        let s: PointSet = "1,-1".parse().unwrap();
        let (inner, outer, delta) =
            default_contour(&s, &f, ContourMode::AnnulusPair { split: 0 }).unwrap().pair().unwrap();
        assert!((delta - 0.2).abs() < 1e-15);
        assert_eq!(inner.pieces().len(), 2);
        let r = outer.pieces()[0].radius;
        assert!(r > 1.4 && r < 3.0);
    }
}
