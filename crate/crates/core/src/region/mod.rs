//! Convergence regions: lemniscates, lemniscate annuli and Taylor-Laurent regions.

pub mod marching;

use num_complex::Complex64 as C64;

pub use marching::{zero_contours, BBox, Polyline};

use crate::error::{Error, Result};
use crate::function::{same_point, Singularity, SingularityKind};
use crate::laurent::ratio;
use crate::points::PointSet;

const CIRCLE_SAMPLES: usize = 4096;

/// Samples of the singular set: isolated points as themselves, branch points
/// along their cut.
fn singular_samples(points: &PointSet, s: &Singularity) -> Vec<C64> {
    match &s.kind {
        SingularityKind::BranchPoint { cut: Some(poly) } => {
            let mut out = vec![s.location];
            let mut prev = s.location;
            for &q in poly {
                for k in 1..=256 {
                    out.push(prev + (q - prev) * (k as f64 / 256.0));
                }
                prev = q;
            }
            out
        }
        SingularityKind::BranchPoint { cut: None } => {
            let c = points.centroid();
            let d = s.location - c;
            let dir = if d.norm() > 1e-12 { d / d.norm() } else { C64::new(1.0, 0.0) };
            let spread = points.foci().iter().map(|p| (p.0 - c).norm()).fold(0.0, f64::max);
            let len = 10.0 * (spread + d.norm() + 1.0);
            (0..=4096).map(|k| s.location + dir * (len * k as f64 / 4096.0)).collect()
        }
        _ => vec![s.location],
    }
}

/// `inf prod |w - z_k|^{m_k}` over the singularities; infinite when there are none.
///
/// Branch cuts are sampled, so for them the value is an upper estimate.
pub fn lemniscate_radius(points: &PointSet, singularities: &[Singularity]) -> f64 {
    let mut r = f64::INFINITY;
    for s in singularities {
        if points.index_of(s.location).is_some() {
            log::warn!("singularity at the focus {}: the lemniscate is empty", s.location);
            return 0.0;
        }
        for w in singular_samples(points, s) {
            r = r.min(points.product_abs(w));
        }
    }
    r
}

fn exterior(points: &PointSet, singularities: &[Singularity]) -> Vec<Singularity> {
    singularities.iter().filter(|s| points.index_of(s.location).is_none()).cloned().collect()
}

/// Maximum (or minimum when `minimize`) of `g` on a circle, by dense sampling
/// and a golden-section polish around the best sample.
fn circle_extremum(center: C64, radius: f64, g: impl Fn(C64) -> f64, minimize: bool) -> f64 {
    let sign = if minimize { 1.0 } else { -1.0 };
    let h = |t: f64| sign * g(center + C64::from_polar(radius, t));
    let step = 2.0 * std::f64::consts::PI / CIRCLE_SAMPLES as f64;
    let (mut best_t, mut best) = (0.0, f64::INFINITY);
    for k in 0..CIRCLE_SAMPLES {
        let t = k as f64 * step;
        let v = h(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let (mut a, mut b) = (best_t - step, best_t + step);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    for _ in 0..60 {
        if h(c) < h(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    sign * best.min(h(0.5 * (a + b)))
}

/// Foci carrying a singularity.
fn singular_foci(points: &PointSet, singularities: &[Singularity]) -> Vec<C64> {
    points.foci().iter().map(|p| p.0).filter(|z| singularities.iter().any(|s| same_point(s.location, *z))).collect()
}

/// `(r1, r2)` of the lemniscate annulus with excluded disks of radius `delta`
/// about the singular foci.
pub fn annulus_radii(points: &PointSet, singularities: &[Singularity], delta: f64) -> (f64, f64) {
    let r1 = lemniscate_radius(points, &exterior(points, singularities));
    let r2 = singular_foci(points, singularities)
        .into_iter()
        .map(|z| circle_extremum(z, delta, |w| points.product_abs(w), false))
        .fold(0.0, f64::max);
    (r1, r2)
}

/// `(r1, r2)` of the Taylor-Laurent region: `r2` is the infimum of `|A/B|` on
/// the excluded disks about foci `split..`.
pub fn dqp_parameters(points: &PointSet, split: usize, singularities: &[Singularity], delta: f64) -> (f64, f64) {
    let r1 = lemniscate_radius(points, &exterior(points, singularities));
    let r2 = points.foci()[split..]
        .iter()
        .map(|p| circle_extremum(p.0, delta, |w| ratio(points, split, w).norm(), true))
        .fold(f64::INFINITY, f64::min);
    (r1, r2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    Lemniscate,
    Annulus,
    TaylorLaurent { split: usize },
}

/// A convergence region with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub points: PointSet,
    /// `r` for a lemniscate, `r1` otherwise.
    pub r1: f64,
    pub r2: f64,
    pub delta: Option<f64>,
    /// Centres of the excluded disks.
    pub excluded: Vec<C64>,
}

impl RegionSpec {
    pub fn lemniscate(points: &PointSet, singularities: &[Singularity]) -> Self {
        RegionSpec {
            kind: RegionKind::Lemniscate,
            points: points.clone(),
            r1: lemniscate_radius(points, singularities),
            r2: 0.0,
            delta: None,
            excluded: Vec::new(),
        }
    }

    /// Lemniscate with an explicit radius.
    pub fn lemniscate_with_radius(points: &PointSet, r: f64) -> Self {
        RegionSpec {
            kind: RegionKind::Lemniscate,
            points: points.clone(),
            r1: r,
            r2: 0.0,
            delta: None,
            excluded: Vec::new(),
        }
    }

    pub fn annulus(points: &PointSet, singularities: &[Singularity], delta: f64) -> Result<Self> {
        let (r1, r2) = annulus_radii(points, singularities, delta);
        if r2 >= r1 {
            return Err(Error::geometry(format!("empty annulus: r2 = {r2} >= r1 = {r1}")));
        }
        Ok(RegionSpec {
            kind: RegionKind::Annulus,
            points: points.clone(),
            r1,
            r2,
            delta: Some(delta),
            excluded: singular_foci(points, singularities),
        })
    }

    pub fn taylor_laurent(points: &PointSet, split: usize, singularities: &[Singularity], delta: f64) -> Result<Self> {
        if split == 0 || split >= points.len() {
            return Err(Error::invalid(format!("split {split} must lie in 1..{}", points.len())));
        }
        let (r1, r2) = dqp_parameters(points, split, singularities, delta);
        if r2 <= 0.0 || r1 <= 0.0 {
            return Err(Error::geometry("empty Taylor-Laurent region"));
        }
        Ok(RegionSpec {
            kind: RegionKind::TaylorLaurent { split },
            points: points.clone(),
            r1,
            r2,
            delta: Some(delta),
            excluded: points.foci()[split..].iter().map(|p| p.0).collect(),
        })
    }

    /// `r` of a lemniscate (same as `r1`).
    pub fn r(&self) -> f64 {
        self.r1
    }

    fn in_excluded(&self, z: C64) -> bool {
        let d = self.delta.unwrap_or(0.0);
        self.excluded.iter().any(|c| (z - c).norm() <= d)
    }

    /// The defining strict inequalities.
    pub fn contains(&self, z: C64) -> bool {
        let p = self.points.product_abs(z);
        match self.kind {
            RegionKind::Lemniscate => p < self.r1,
            RegionKind::Annulus => self.r2 < p && p < self.r1 && !self.in_excluded(z),
            RegionKind::TaylorLaurent { split } => {
                p < self.r1 && ratio(&self.points, split, z).norm() < self.r2 && !self.in_excluded(z)
            }
        }
    }

    /// Ratio predicting the geometric decay of remainders at `z`; below one inside.
    pub fn predicted_ratio(&self, z: C64) -> f64 {
        let p = self.points.product_abs(z);
        match self.kind {
            RegionKind::Lemniscate => p / self.r1,
            RegionKind::Annulus => (p / self.r1).max(self.r2 / p),
            RegionKind::TaylorLaurent { split } => (p / self.r1).max(ratio(&self.points, split, z).norm() / self.r2),
        }
    }

    /// Default sampling box: the foci inflated by `2 r1^{1/m}`.
    pub fn default_bbox(&self) -> Option<BBox> {
        if !self.r1.is_finite() {
            return None;
        }
        let m = self.points.total_multiplicity() as f64;
        Some(BBox::around(self.points.foci().iter().map(|p| p.0), 2.0 * self.r1.powf(1.0 / m)))
    }
}

/// Boundary curves of the region, one polyline per connected piece, sorted by
/// leftmost vertex.
pub fn boundary_sample(region: &RegionSpec, resolution: usize, clip: Option<BBox>) -> Result<Vec<Polyline>> {
    if resolution < 8 {
        return Err(Error::invalid(format!("resolution {resolution} is below 8")));
    }
    let bbox = match clip.or_else(|| region.default_bbox()) {
        Some(b) => b,
        None => return Err(Error::geometry("the region is unbounded; pass a clip box")),
    };
    let pts = &region.points;
    let logp = |x: f64, y: f64| -> f64 {
        pts.foci().iter().map(|&(zk, m)| m as f64 * (C64::new(x, y) - zk).norm().ln()).sum()
    };
    let mut lines = Vec::new();
    if region.r1.is_finite() && region.r1 > 0.0 {
        let l = region.r1.ln();
        lines.extend(zero_contours(&|x, y| logp(x, y) - l, bbox, resolution));
    }
    match region.kind {
        RegionKind::Lemniscate => {}
        RegionKind::Annulus => {
            if region.r2 > 0.0 {
                let l = region.r2.ln();
                lines.extend(zero_contours(&|x, y| l - logp(x, y), bbox, resolution));
            }
        }
        RegionKind::TaylorLaurent { split } => {
            if region.r2.is_finite() {
                let l = region.r2.ln();
                let f = |x: f64, y: f64| -> f64 {
                    let z = C64::new(x, y);
                    pts.foci()
                        .iter()
                        .enumerate()
                        .map(|(k, &(zk, m))| {
                            let t = m as f64 * (z - zk).norm().ln();
                            if k < split {
                                t
                            } else {
                                -t
                            }
                        })
                        .sum::<f64>()
                        - l
                };
                lines.extend(zero_contours(&f, bbox, resolution));
            }
        }
    }
    lines.sort_by(|a, b| a.leftmost().partial_cmp(&b.leftmost()).unwrap_or(std::cmp::Ordering::Equal));
    Ok(lines)
}

/// Threshold product at the saddle of a two-focus lemniscate, where the
/// region changes from two components to one.
pub fn two_focus_threshold(a: (C64, u32), b: (C64, u32)) -> f64 {
    let (m1, m2) = (a.1 as f64, b.1 as f64);
    let saddle = (a.0 * m2 + b.0 * m1) / (m1 + m2);
    (saddle - a.0).norm().powf(m1) * (saddle - b.0).norm().powf(m2)
}
