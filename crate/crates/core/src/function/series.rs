//! Truncated power and Laurent series in scaled form.
//!
//! Convention: `c[k] = f^(k)(w0) / k!`. Every routine here works on that
//! scaled form so nothing ever multiplies by a factorial.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Relative size below which a leading coefficient is treated as an exact zero
/// when a series has to be divided by or fed to a branch function.
pub(crate) const STRIP_TOL: f64 = 64.0 * f64::EPSILON;

// ---------------------------------------------------------------------------
// Slice kernels (plain Taylor series, valuation 0)
// ---------------------------------------------------------------------------

/// Cauchy product truncated to `len` terms.
pub(crate) fn mul(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut c = vec![C64::new(0.0, 0.0); len];
    for (k, ck) in c.iter_mut().enumerate() {
        let mut sum = C64::new(0.0, 0.0);
        for j in 0..=k {
            if j < a.len() && k - j < b.len() {
                sum += a[j] * b[k - j];
            }
        }
        *ck = sum;
    }
    c
}

/// `a / b` by the division recurrence; `b[0]` must be nonzero.
pub(crate) fn div(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let inv = b[0].inv();
    let mut c: Vec<C64> = Vec::with_capacity(len);
    for k in 0..len {
        let mut sum = if k < a.len() { a[k] } else { C64::new(0.0, 0.0) };
        for j in 1..=k.min(b.len() - 1) {
            sum -= b[j] * c[k - j];
        }
        c.push(sum * inv);
    }
    c
}

pub(crate) fn exp(a: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut c = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return c;
    }
    c[0] = a[0].exp();
    for k in 1..n {
        let mut sum = C64::new(0.0, 0.0);
        for j in 1..=k {
            sum += a[j] * c[k - j] * j as f64;
        }
        c[k] = sum / k as f64;
    }
    c
}

/// Principal logarithm; `a[0]` must be nonzero.
pub(crate) fn ln(a: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut c = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return c;
    }
    let inv = a[0].inv();
    c[0] = a[0].ln();
    for k in 1..n {
        let mut sum = C64::new(0.0, 0.0);
        for j in 1..k {
            sum += c[j] * a[k - j] * j as f64;
        }
        c[k] = (a[k] - sum / k as f64) * inv;
    }
    c
}

/// Principal power `a^alpha` for real `alpha`; `a[0]` must be nonzero.
pub(crate) fn powf(a: &[C64], alpha: f64) -> Vec<C64> {
    let n = a.len();
    let mut c = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return c;
    }
    c[0] = (a[0].ln() * alpha).exp();
    let inv = a[0].inv();
    for k in 1..n {
        let mut sum = C64::new(0.0, 0.0);
        for j in 1..=k {
            sum += a[j] * c[k - j] * (alpha * j as f64 - (k - j) as f64);
        }
        c[k] = sum * inv / k as f64;
    }
    c
}

pub(crate) fn sqrt(a: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut c = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return c;
    }
    c[0] = a[0].sqrt();
    let inv2 = (c[0] * 2.0).inv();
    for k in 1..n {
        let mut sum = a[k];
        for j in 1..k {
            sum -= c[j] * c[k - j];
        }
        c[k] = sum * inv2;
    }
    c
}

/// `(sin a, cos a)` by the coupled recurrence.
pub(crate) fn sin_cos(a: &[C64]) -> (Vec<C64>, Vec<C64>) {
    let n = a.len();
    let mut s = vec![C64::new(0.0, 0.0); n];
    let mut c = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return (s, c);
    }
    s[0] = a[0].sin();
    c[0] = a[0].cos();
    for k in 1..n {
        let mut ss = C64::new(0.0, 0.0);
        let mut cc = C64::new(0.0, 0.0);
        for j in 1..=k {
            let w = a[j] * j as f64;
            ss += w * c[k - j];
            cc += w * s[k - j];
        }
        s[k] = ss / k as f64;
        c[k] = -cc / k as f64;
    }
    (s, c)
}

/// Taylor coefficients of `(base + t)^e` for integer `e`; `base` must be nonzero
/// when `e < 0`.
pub(crate) fn binomial(base: C64, e: i64, len: usize) -> Vec<C64> {
    let mut c = Vec::with_capacity(len);
    if len == 0 {
        return c;
    }
    if base == C64::new(0.0, 0.0) {
        // t^e, only meaningful for e >= 0
        for k in 0..len {
            c.push(if k as i64 == e { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
        }
        return c;
    }
    let inv = base.inv();
    let mut term = base.powi(e as i32);
    c.push(term);
    for k in 1..len {
        // C(e, k) / C(e, k-1) = (e - k + 1) / k
        term = term * inv * ((e - k as i64 + 1) as f64 / k as f64);
        c.push(term);
    }
    c
}

fn max_abs(c: &[C64]) -> f64 {
    c.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Laurent series with valuation tracking
// ---------------------------------------------------------------------------

/// Truncated Laurent series `sum_i coeffs[i] t^(val + i)`.
///
/// Terms of power `val + coeffs.len()` and above are unknown, so the series
/// carries its own absolute precision. Division by a series whose leading
/// coefficients vanish shifts the valuation instead of failing, which is how
/// poles are propagated through an expression tree.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    val: i64,
    coeffs: Vec<C64>,
}

impl Series {
    pub fn new(val: i64, coeffs: Vec<C64>) -> Self {
        Series { val, coeffs }
    }

    pub fn taylor(coeffs: Vec<C64>) -> Self {
        Series { val: 0, coeffs }
    }

    pub fn constant(c: C64, len: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); len];
        if len > 0 {
            coeffs[0] = c;
        }
        Series { val: 0, coeffs }
    }

    /// The identity function `w` expanded about `center`.
    pub fn variable(center: C64, len: usize) -> Self {
        let mut s = Series::constant(center, len);
        if len > 1 {
            s.coeffs[1] = C64::new(1.0, 0.0);
        }
        s
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First unknown power.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `t^power`; `None` when the power is beyond the known precision.
    pub fn coeff(&self, power: i64) -> Option<C64> {
        if power >= self.precision() {
            None
        } else if power < self.val {
            Some(C64::new(0.0, 0.0))
        } else {
            Some(self.coeffs[(power - self.val) as usize])
        }
    }

    /// Drops leading coefficients that are negligible relative to the rest.
    pub fn normalized(mut self) -> Self {
        let scale = max_abs(&self.coeffs);
        let mut drop = 0;
        while drop < self.coeffs.len() && self.coeffs[drop].norm() <= STRIP_TOL * scale {
            drop += 1;
        }
        if drop == self.coeffs.len() {
            // identically zero to working precision: no leading term is known
            self.val += drop as i64;
            self.coeffs.clear();
            return self;
        }
        self.coeffs.drain(..drop);
        self.val += drop as i64;
        self
    }

    /// Re-expresses a series with nonnegative valuation as a plain Taylor series.
    fn into_taylor(self) -> Result<Vec<C64>> {
        let s = if self.val < 0 { self.normalized() } else { self };
        if s.val < 0 {
            return Err(Error::domain("argument of an entire function has a pole here"));
        }
        let mut out = vec![C64::new(0.0, 0.0); s.val as usize];
        out.extend(s.coeffs);
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Series { val: self.val, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: C64) -> Self {
        Series { val: self.val, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &Series) -> Self {
        let val = self.val.min(other.val);
        let prec = self.precision().min(other.precision());
        let len = (prec - val).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let p = val + i as i64;
                self.coeff(p).unwrap_or_default() + other.coeff(p).unwrap_or_default()
            })
            .collect();
        Series { val, coeffs }
    }

    pub fn sub(&self, other: &Series) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Self {
        let len = self.len().min(other.len());
        Series { val: self.val + other.val, coeffs: mul(&self.coeffs, &other.coeffs, len) }
    }

    pub fn div(&self, other: &Series) -> Result<Self> {
        let b = other.clone().normalized();
        if b.is_empty() {
            return Err(Error::domain("division by a series that vanishes to working precision"));
        }
        let len = self.len().min(b.len());
        Ok(Series { val: self.val - b.val, coeffs: div(&self.coeffs, &b.coeffs, len) })
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Series::constant(C64::new(1.0, 0.0), self.len()));
        }
        let base = if k < 0 { Series::constant(C64::new(1.0, 0.0), self.len()).div(self)? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<Series> = None;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// Principal-branch real power; the base must be analytic and nonzero here.
    pub fn powf(&self, alpha: f64) -> Result<Self> {
        let a = self.branch_argument("power")?;
        Ok(Series::taylor(powf(&a, alpha)))
    }

    pub fn exp(&self) -> Result<Self> {
        Ok(Series::taylor(exp(&self.clone().into_taylor()?)))
    }

    pub fn ln(&self) -> Result<Self> {
        let a = self.branch_argument("log")?;
        Ok(Series::taylor(ln(&a)))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let a = self.branch_argument("sqrt")?;
        Ok(Series::taylor(sqrt(&a)))
    }

    pub fn sin(&self) -> Result<Self> {
        Ok(Series::taylor(sin_cos(&self.clone().into_taylor()?).0))
    }

    pub fn cos(&self) -> Result<Self> {
        Ok(Series::taylor(sin_cos(&self.clone().into_taylor()?).1))
    }

    fn branch_argument(&self, what: &str) -> Result<Vec<C64>> {
        let s = self.clone().normalized();
        if s.is_empty() || s.val != 0 {
            return Err(Error::domain(format!("{what} evaluated at a branch point")));
        }
        Ok(s.coeffs)
    }
}
