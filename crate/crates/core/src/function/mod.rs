//! Input functions: parsing, evaluation, jets and singularity metadata.

pub mod expr;
pub mod rational;
pub mod series;

use std::fmt;

use num_complex::Complex64 as C64;

pub use expr::{parse_expr, Expr};
pub use rational::RationalForm;
pub use series::Series;

use crate::error::{Error, Result};
use expr::{BinOp, Func, Power};

/// Two locations closer than this (relative to their size) are the same point.
pub(crate) fn same_point(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-9 * a.norm().max(b.norm()).max(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SingularityKind {
    /// Pole of the given (positive) order.
    Pole(u32),
    Essential,
    /// Branch point. `cut` is an optional polyline starting at the branch
    /// point; without it the cut is the ray pointing away from the foci.
    BranchPoint {
        cut: Option<Vec<C64>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Singularity {
    pub location: C64,
    pub kind: SingularityKind,
}

impl Singularity {
    pub fn pole(location: C64, order: u32) -> Self {
        Singularity { location, kind: SingularityKind::Pole(order) }
    }

    pub fn essential(location: C64) -> Self {
        Singularity { location, kind: SingularityKind::Essential }
    }

    pub fn branch(location: C64) -> Self {
        Singularity { location, kind: SingularityKind::BranchPoint { cut: None } }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self.kind, SingularityKind::Pole(_))
    }
}

/// Scaled Taylor coefficients `c[n] = D^n f(center)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub center: C64,
    pub coeffs: Vec<C64>,
}

/// Anything that can feed the expansion engines.
///
/// `laurent(c, rho, len)` returns the first `len` Taylor coefficients of
/// `(w - c)^rho f(w)` about `c`, so with `rho` equal to the pole order at `c`
/// it is the jet of the regular part `g` used by the derivative formulas.
pub trait Analytic: Sync {
    fn value(&self, z: C64) -> Result<C64>;

    fn laurent(&self, center: C64, rho: u32, len: usize) -> Result<Vec<C64>>;

    fn singularities(&self) -> &[Singularity];

    /// Declared pole order at `z`: 0 where `f` is regular, an error where the
    /// singularity is not a pole.
    fn pole_order_at(&self, z: C64) -> Result<u32> {
        for s in self.singularities() {
            if same_point(s.location, z) {
                return match s.kind {
                    SingularityKind::Pole(k) => Ok(k),
                    _ => Err(Error::domain(format!(
                        "non-polar singularity at {z}; only poles are allowed at expansion points"
                    ))),
                };
            }
        }
        Ok(0)
    }
}

/// Extracts `(w - c)^rho f(w)` coefficients from a series generator, growing
/// the working length until the requested precision is reached.
pub(crate) fn laurent_from_series(
    gen: impl Fn(usize) -> Result<Series>,
    center: C64,
    rho: u32,
    len: usize,
) -> Result<Vec<C64>> {
    let rho = rho as i64;
    let need = len as i64 - rho;
    let mut work = len.max(1) + 2;
    let cap = 8 * len + 64;
    loop {
        let mut s = gen(work)?;
        if s.valuation() < -rho {
            s = s.normalized();
        }
        if s.valuation() < -rho && !s.is_empty() {
            return Err(Error::domain(format!("pole at {center} has order {} but {rho} was declared", -s.valuation())));
        }
        if s.precision() >= need {
            return Ok((0..len as i64).map(|k| s.coeff(k - rho).unwrap_or_default()).collect());
        }
        if work >= cap {
            return Err(Error::domain(format!("cannot resolve the series at {center} to {len} terms")));
        }
        work = (work * 2).min(cap);
    }
}

/// A parsed function together with its singularity list.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticFunction {
    expr: Expr,
    singularities: Vec<Singularity>,
    rational: Option<RationalForm>,
}

impl AnalyticFunction {
    /// Wraps an expression and detects the singularities it can see.
    pub fn from_expr(expr: Expr) -> Result<Self> {
        let info = analyze(&expr)?;
        let (singularities, rational) = match info {
            Info::Rational(r) => (r.poles().map(|(z, k)| Singularity::pole(z, k)).collect(), Some(r)),
            Info::General(s) => (s, None),
        };
        Ok(AnalyticFunction { expr, singularities, rational })
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Factored form when the whole expression is rational.
    pub fn rational(&self) -> Option<&RationalForm> {
        self.rational.as_ref()
    }

    pub fn is_entire(&self) -> bool {
        self.singularities.is_empty()
    }

    /// Replaces the detected singularities with a user-supplied list.
    pub fn with_singularities(mut self, list: Vec<Singularity>) -> Self {
        self.singularities = list;
        self
    }

    /// Adds a singularity, replacing any already recorded at the same point.
    pub fn with_singularity(mut self, s: Singularity) -> Self {
        self.singularities.retain(|x| !same_point(x.location, s.location));
        self.singularities.push(s);
        self
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        if let Some(s) = self.singularities.iter().find(|s| same_point(s.location, z)) {
            return Err(Error::domain(format!("evaluation at the singularity {}", s.location)));
        }
        let v = self.expr.eval(z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("non-finite value at {z}")))
        }
    }

    /// Taylor coefficients `D^l f(center) / l!` for `l <= order`, by series propagation.
    pub fn jet_eval(&self, center: C64, order: usize) -> Result<Jet> {
        for s in &self.singularities {
            if (s.location - center).norm() <= 8.0 * f64::EPSILON * s.location.norm().max(1.0) {
                return Err(Error::domain(format!("jet requested at the singularity {}", s.location)));
            }
        }
        let coeffs =
            laurent_from_series(|l| self.expr.series(center, l), center, 0, order + 1).map_err(|e| match e {
                Error::Domain(m) if m.starts_with("pole at") => {
                    Error::domain(format!("undeclared singularity at {center}"))
                }
                e => e,
            })?;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain(format!("non-finite jet at {center}")));
        }
        Ok(Jet { center, coeffs })
    }
}

impl Analytic for AnalyticFunction {
    fn value(&self, z: C64) -> Result<C64> {
        let v = self.expr.eval(z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("non-finite value at {z}")))
        }
    }

    fn laurent(&self, center: C64, rho: u32, len: usize) -> Result<Vec<C64>> {
        laurent_from_series(|l| self.expr.series(center, l), center, rho, len)
    }

    fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }
}

impl fmt::Display for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

/// Parses an expression and detects its singularities.
pub fn parse_function(text: &str) -> Result<AnalyticFunction> {
    AnalyticFunction::from_expr(parse_expr(text)?)
}

pub fn eval(f: &AnalyticFunction, z: C64) -> Result<C64> {
    f.eval(z)
}

pub fn jet_eval(f: &AnalyticFunction, center: C64, order: usize) -> Result<Jet> {
    f.jet_eval(center, order)
}

// ---------------------------------------------------------------------------
// Singularity detection
// ---------------------------------------------------------------------------

enum Info {
    Rational(RationalForm),
    General(Vec<Singularity>),
}

impl Info {
    fn into_list(self) -> Vec<Singularity> {
        match self {
            Info::Rational(r) => r.poles().map(|(z, k)| Singularity::pole(z, k)).collect(),
            Info::General(s) => s,
        }
    }
}

fn rank(k: &SingularityKind) -> u8 {
    match k {
        SingularityKind::Pole(_) => 0,
        SingularityKind::Essential => 1,
        SingularityKind::BranchPoint { .. } => 2,
    }
}

/// Union of two lists; coinciding poles combine with `merge`.
fn union(mut a: Vec<Singularity>, b: Vec<Singularity>, merge: fn(u32, u32) -> u32) -> Vec<Singularity> {
    for s in b {
        match a.iter_mut().find(|x| same_point(x.location, s.location)) {
            None => a.push(s),
            Some(x) => {
                x.kind = match (&x.kind, &s.kind) {
                    (SingularityKind::Pole(p), SingularityKind::Pole(q)) => SingularityKind::Pole(merge(*p, *q)),
                    (k1, k2) => {
                        if rank(k1) >= rank(k2) {
                            k1.clone()
                        } else {
                            k2.clone()
                        }
                    }
                }
            }
        }
    }
    a
}

fn poles_to(list: Vec<Singularity>, kind: SingularityKind) -> Vec<Singularity> {
    list.into_iter()
        .map(|s| if s.is_pole() { Singularity { location: s.location, kind: kind.clone() } } else { s })
        .collect()
}

fn analyze(e: &Expr) -> Result<Info> {
    Ok(match e {
        Expr::Num(_) | Expr::I | Expr::Pi => Info::Rational(RationalForm::constant(e.eval(C64::new(0.0, 0.0)))),
        Expr::Z => Info::Rational(RationalForm::identity()),
        Expr::Neg(a) => match analyze(a)? {
            Info::Rational(r) => Info::Rational(r.neg()),
            g => g,
        },
        Expr::Bin(op, a, b) => {
            let (x, y) = (analyze(a)?, analyze(b)?);
            match (op, x, y) {
                (BinOp::Add, Info::Rational(p), Info::Rational(q)) => match p.add(&q) {
                    Some(r) => Info::Rational(r),
                    None => {
                        Info::General(union(Info::Rational(p).into_list(), Info::Rational(q).into_list(), u32::max))
                    }
                },
                (BinOp::Sub, Info::Rational(p), Info::Rational(q)) => match p.add(&q.neg()) {
                    Some(r) => Info::Rational(r),
                    None => {
                        Info::General(union(Info::Rational(p).into_list(), Info::Rational(q).into_list(), u32::max))
                    }
                },
                (BinOp::Mul, Info::Rational(p), Info::Rational(q)) => Info::Rational(p.mul(&q)),
                (BinOp::Div, _, Info::Rational(q)) if q.is_zero() => {
                    return Err(Error::invalid("division by an expression that is identically zero"))
                }
                (BinOp::Div, Info::Rational(p), Info::Rational(q)) => Info::Rational(p.mul(&q.recip()?)),
                (BinOp::Add | BinOp::Sub, x, y) => Info::General(union(x.into_list(), y.into_list(), u32::max)),
                (BinOp::Mul, x, y) => Info::General(union(x.into_list(), y.into_list(), |p, q| p + q)),
                (BinOp::Div, x, Info::Rational(q)) => {
                    let zeros = q.zeros().map(|(z, k)| Singularity::pole(z, k)).collect();
                    Info::General(union(x.into_list(), zeros, |p, q| p + q))
                }
                (BinOp::Div, x, Info::General(ys)) => {
                    let ys = ys.into_iter().filter(|s| !s.is_pole()).collect();
                    Info::General(union(x.into_list(), ys, u32::max))
                }
            }
        }
        Expr::Pow { base, power, .. } => {
            let x = analyze(base)?;
            match (*power, x) {
                (Power::Int(k), Info::Rational(r)) => Info::Rational(r.powi(k)?),
                (Power::Int(0), Info::General(_)) => Info::Rational(RationalForm::constant(C64::new(1.0, 0.0))),
                (Power::Int(k), Info::General(s)) if k > 0 => Info::General(
                    s.into_iter()
                        .map(|mut s| {
                            if let SingularityKind::Pole(p) = s.kind {
                                s.kind = SingularityKind::Pole(p * k as u32);
                            }
                            s
                        })
                        .collect(),
                ),
                (Power::Int(_), Info::General(s)) => Info::General(s.into_iter().filter(|s| !s.is_pole()).collect()),
                (Power::Real(_), Info::Rational(r)) if r.is_constant() => {
                    Info::Rational(RationalForm::constant(e.eval(C64::new(0.0, 0.0))))
                }
                (Power::Real(_), Info::Rational(r)) => Info::General(branch_points(&r)),
                (Power::Real(_), Info::General(s)) => {
                    Info::General(poles_to(s, SingularityKind::BranchPoint { cut: None }))
                }
            }
        }
        Expr::Call(func, a) => {
            let x = analyze(a)?;
            match (func, x) {
                (_, Info::Rational(r)) if r.is_constant() => {
                    let v = e.eval(C64::new(0.0, 0.0));
                    if !v.is_finite() {
                        return Err(Error::invalid(format!("{e} is not finite")));
                    }
                    Info::Rational(RationalForm::constant(v))
                }
                (Func::Exp | Func::Sin | Func::Cos, x) => {
                    Info::General(poles_to(x.into_list(), SingularityKind::Essential))
                }
                (Func::Log | Func::Sqrt, Info::Rational(r)) => Info::General(branch_points(&r)),
                (Func::Log | Func::Sqrt, Info::General(s)) => {
                    Info::General(poles_to(s, SingularityKind::BranchPoint { cut: None }))
                }
            }
        }
    })
}

fn branch_points(r: &RationalForm) -> Vec<Singularity> {
    r.roots.iter().map(|&(z, _)| Singularity::branch(z)).collect()
}
