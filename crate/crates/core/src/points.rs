//! Expansion points with multiplicities.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Foci `z_1..z_p` with multiplicities `m_1..m_p`.
///
/// Construction merges foci that coincide to `1e-8` of the configuration
/// scale and warns when two distinct foci are closer than `1e-4` of it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    foci: Vec<(C64, u32)>,
}

impl PointSet {
    pub fn new(foci: impl IntoIterator<Item = (C64, u32)>) -> Result<Self> {
        let raw: Vec<(C64, u32)> = foci.into_iter().collect();
        if raw.is_empty() {
            return Err(Error::invalid("point set is empty"));
        }
        if let Some(bad) = raw.iter().find(|(z, m)| *m == 0 || !z.is_finite()) {
            return Err(Error::invalid(format!("invalid focus {}:{}", bad.0, bad.1)));
        }
        let mut scale: f64 = 0.0;
        for a in &raw {
            for b in &raw {
                scale = scale.max((a.0 - b.0).norm());
            }
        }
        if scale == 0.0 {
            scale = 1.0;
        }
        let mut foci: Vec<(C64, u32)> = Vec::new();
        for (z, m) in raw {
            match foci.iter_mut().find(|(w, _)| (*w - z).norm() < 1e-8 * scale) {
                Some(f) => f.1 += m,
                None => foci.push((z, m)),
            }
        }
        for i in 0..foci.len() {
            for j in i + 1..foci.len() {
                let d = (foci[i].0 - foci[j].0).norm();
                if d < 1e-4 * scale {
                    log::warn!(
                        "foci {} and {} are {d:e} apart; the expansion is ill-conditioned, consider a repeated focus",
                        foci[i].0,
                        foci[j].0
                    );
                }
            }
        }
        Ok(PointSet { foci })
    }

    /// Distinct foci, each with multiplicity one.
    pub fn simple(points: &[C64]) -> Result<Self> {
        PointSet::new(points.iter().map(|&z| (z, 1)))
    }

    pub fn foci(&self) -> &[(C64, u32)] {
        &self.foci
    }

    pub fn len(&self) -> usize {
        self.foci.len()
    }

    pub fn is_empty(&self) -> bool {
        self.foci.is_empty()
    }

    pub fn point(&self, j: usize) -> C64 {
        self.foci[j].0
    }

    pub fn multiplicity(&self, j: usize) -> u32 {
        self.foci[j].1
    }

    /// `m = sum m_j`.
    pub fn total_multiplicity(&self) -> u32 {
        self.foci.iter().map(|f| f.1).sum()
    }

    pub fn centroid(&self) -> C64 {
        self.foci.iter().map(|f| f.0).sum::<C64>() / self.foci.len() as f64
    }

    /// `prod (z - z_k)^{m_k}`.
    pub fn product(&self, z: C64) -> C64 {
        self.foci.iter().fold(C64::new(1.0, 0.0), |acc, (zk, m)| acc * (z - zk).powi(*m as i32))
    }

    /// `prod |z - z_k|^{m_k}`.
    pub fn product_abs(&self, z: C64) -> f64 {
        self.foci.iter().fold(1.0, |acc, (zk, m)| acc * (z - zk).norm().powi(*m as i32))
    }

    /// The sub-configuration of foci `range`.
    pub fn subset(&self, range: std::ops::Range<usize>) -> PointSet {
        PointSet { foci: self.foci[range].to_vec() }
    }

    /// Index of the focus at `z`, if any.
    pub fn index_of(&self, z: C64) -> Option<usize> {
        self.foci.iter().position(|f| crate::function::same_point(f.0, z))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (z, m)) in self.foci.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{m}", format_complex(*z))?;
        }
        Ok(())
    }
}

/// `"1:1,-1:2,0.5+2i:1"`; the multiplicity defaults to one when omitted.
impl FromStr for PointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut foci = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::invalid(format!("empty focus in '{s}'")));
            }
            let (zs, ms) = match item.rsplit_once(':') {
                Some((a, b)) => (a, Some(b)),
                None => (item, None),
            };
            let z = parse_complex(zs)?;
            let m = match ms {
                Some(t) => t
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad multiplicity '{t}' in '{item}'")))?,
                None => 1,
            };
            foci.push((z, m));
        }
        PointSet::new(foci)
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (no spaces needed).
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(format!("cannot parse complex number '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = 0;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = k;
            break;
        }
    }
    let (re, im) = body.split_at(split);
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_points() {
        let s: PointSet = "1:1,-1:2, i".parse().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.total_multiplicity(), 4);
        assert_eq!(s.point(2), C64::new(0.0, 1.0));
        assert!("1:x".parse::<PointSet>().is_err());
        assert!("".parse::<PointSet>().is_err());
        assert!("1:0".parse::<PointSet>().is_err());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("2-3i").unwrap(), C64::new(2.0, -3.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+1e2i").unwrap(), C64::new(1e-3, 100.0));
        assert_eq!(parse_complex("-0.5").unwrap(), C64::new(-0.5, 0.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn coincident_foci_merge() {
        let s = PointSet::new([(C64::new(0.0, 0.0), 1), (C64::new(1e-12, 0.0), 1), (C64::new(1.0, 0.0), 1)]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.multiplicity(0), 2);
    }

    #[test]
    fn display_round_trip() {
        let s: PointSet = "1:1,-1:2,0.5+2i:1".parse().unwrap();
        let t: PointSet = s.to_string().parse().unwrap();
        assert_eq!(s, t);
    }
}
