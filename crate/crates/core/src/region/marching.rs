//! Marching squares on a rectangular grid with bisection-refined vertices.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

/// Axis-aligned box `[xmin, xmax] x [ymin, ymax]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        BBox { xmin, xmax, ymin, ymax }
    }

    pub fn around(points: impl IntoIterator<Item = C64>, pad: f64) -> Self {
        let mut b = BBox::new(f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in points {
            b.xmin = b.xmin.min(z.re);
            b.xmax = b.xmax.max(z.re);
            b.ymin = b.ymin.min(z.im);
            b.ymax = b.ymax.max(z.im);
        }
        BBox::new(b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad)
    }
}

/// One connected piece of a level curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<C64>,
    pub closed: bool,
}

impl Polyline {
    /// Vertex with the smallest `(x, y)`.
    pub fn leftmost(&self) -> (f64, f64) {
        self.points.iter().map(|z| (z.re, z.im)).fold((f64::INFINITY, f64::INFINITY), |a, b| if b < a { b } else { a })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    /// Between nodes `(i, j)` and `(i + 1, j)`.
    H(usize, usize),
    /// Between nodes `(i, j)` and `(i, j + 1)`.
    V(usize, usize),
}

/// Zero set of `f` on `bbox` with `res x res` cells.
///
/// `f` may return infinities; only its sign is used for refinement.
pub fn zero_contours<F>(f: &F, bbox: BBox, res: usize) -> Vec<Polyline>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let dx = (bbox.xmax - bbox.xmin) / res as f64;
    let dy = (bbox.ymax - bbox.ymin) / res as f64;
    let x = |i: usize| bbox.xmin + i as f64 * dx;
    let y = |j: usize| bbox.ymin + j as f64 * dy;
    let rows: Vec<Vec<f64>> = (0..=res).into_par_iter().map(|j| (0..=res).map(|i| f(x(i), y(j))).collect()).collect();
    let inside = |i: usize, j: usize| rows[j][i] < 0.0;

    let mut segs: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..res {
        for i in 0..res {
            let c = [inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)];
            let bottom = Edge::H(i, j);
            let right = Edge::V(i + 1, j);
            let top = Edge::H(i, j + 1);
            let left = Edge::V(i, j);
            let crossed: Vec<Edge> = [(bottom, 0, 1), (right, 1, 2), (top, 3, 2), (left, 0, 3)]
                .into_iter()
                .filter(|&(_, a, b)| c[a] != c[b])
                .map(|t| t.0)
                .collect();
            match crossed.len() {
                0 => {}
                2 => segs.push((crossed[0], crossed[1])),
                _ => {
                    // saddle: decide which diagonal is joined by the cell centre
                    let centre = f(x(i) + 0.5 * dx, y(j) + 0.5 * dy) < 0.0;
                    if centre == c[0] {
                        // corners 0 and 2 joined; cut off corners 1 and 3
                        segs.push((bottom, right));
                        segs.push((top, left));
                    } else {
                        segs.push((left, bottom));
                        segs.push((right, top));
                    }
                }
            }
        }
    }

    let vertex = |e: Edge| -> C64 {
        let (a, b) = match e {
            Edge::H(i, j) => ((x(i), y(j)), (x(i + 1), y(j))),
            Edge::V(i, j) => ((x(i), y(j)), (x(i), y(j + 1))),
        };
        let (ia, ja) = match e {
            Edge::H(i, j) | Edge::V(i, j) => (i, j),
        };
        let a_in = inside(ia, ja);
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..48 {
            let t = 0.5 * (lo + hi);
            let v = f(a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
            if (v < 0.0) == a_in {
                lo = t;
            } else {
                hi = t;
            }
        }
        let t = 0.5 * (lo + hi);
        C64::new(a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
    };

    let mut lines: Vec<Polyline> = link(&segs)
        .into_iter()
        .map(|(edges, closed)| {
            let mut pts: Vec<C64> = edges.par_iter().map(|&e| vertex(e)).collect();
            if closed {
                pts.pop();
            }
            Polyline { points: pts, closed }
        })
        .collect();
    lines.sort_by(|a, b| a.leftmost().partial_cmp(&b.leftmost()).unwrap_or(std::cmp::Ordering::Equal));
    lines
}

/// Chains segments sharing edges into polylines; closed chains repeat their first edge.
fn link(segs: &[(Edge, Edge)]) -> Vec<(Vec<Edge>, bool)> {
    let mut adj: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (k, &(a, b)) in segs.iter().enumerate() {
        adj.entry(a).or_default().push(k);
        adj.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let mut out = Vec::new();
    let walk = |start: Edge, used: &mut Vec<bool>| -> Vec<Edge> {
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(&k) = adj[&cur].iter().find(|&&k| !used[k]) {
            used[k] = true;
            let (a, b) = segs[k];
            cur = if a == cur { b } else { a };
            chain.push(cur);
        }
        chain
    };
    let open_starts: Vec<Edge> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(e, _)| *e).collect();
    for e in open_starts {
        if !used[adj[&e][0]] {
            out.push((walk(e, &mut used), false));
        }
    }
    for k in 0..segs.len() {
        if !used[k] {
            let chain = walk(segs[k].0, &mut used);
            let closed = chain.len() > 2 && chain.first() == chain.last();
            out.push((chain, closed));
        }
    }
    out
}
