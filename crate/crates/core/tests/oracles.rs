//! Expansions checked against oracles built only from test-local code:
//! closed forms, polynomial division and a confluent Vandermonde solve.

use lemniscate::function::{parse_function, Analytic, Series};
use lemniscate::laurent::{expand_laurent, expand_taylor_laurent};
use lemniscate::points::PointSet;
use lemniscate::taylor::{expand_taylor, remainder, ExpansionOptions, Method};
use lemniscate::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn zero() -> C64 {
    c(0.0, 0.0)
}

// ---------------------------------------------------------------------------
// Polynomials, ascending coefficients
// ---------------------------------------------------------------------------

fn poly_eval(p: &[C64], z: C64) -> C64 {
    p.iter().rev().fold(zero(), |acc, a| acc * z + a)
}

fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Quotient and remainder; `d` must have a nonzero leading coefficient.
fn poly_divmod(n: &[C64], d: &[C64]) -> (Vec<C64>, Vec<C64>) {
    let mut r = n.to_vec();
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (vec![zero()], r);
    }
    let mut q = vec![zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let t = r[k + dd] / d[dd];
        q[k] = t;
        for (i, di) in d.iter().enumerate() {
            r[k + i] -= t * di;
        }
    }
    r.truncate(dd);
    (q, r)
}

fn focus_product(points: &PointSet) -> Vec<C64> {
    let mut p = vec![c(1.0, 0.0)];
    for &(z, m) in points.foci() {
        for _ in 0..m {
            p = poly_mul(&p, &[-z, c(1.0, 0.0)]);
        }
    }
    p
}

/// `f = sum q_n P^n` with `deg q_n < deg P`, by repeated division.
fn p_adic_blocks(f: &[C64], p: &[C64], blocks: usize) -> Vec<Vec<C64>> {
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    for _ in 0..blocks {
        let (q, r) = poly_divmod(&rest, p);
        out.push(r);
        rest = q;
    }
    out
}

#[test]
fn polynomial_blocks_match_division() {
    // z^7 - 2 z^4 + (1+2i) z^2 - 3 z + 5
    let f_coeffs = [c(5.0, 0.0), c(-3.0, 0.0), c(1.0, 2.0), zero(), c(-2.0, 0.0), zero(), zero(), c(1.0, 0.0)];
    let f = parse_function("z^7 - 2*z^4 + (1+2*i)*z^2 - 3*z + 5").unwrap();
    let probes = [c(0.3, -0.2), c(-1.1, 0.7), c(2.0, 0.5)];
    for s in ["1,-1", "0:2,1:1", "1,-1,i", "0.5:3"] {
        let points: PointSet = s.parse().unwrap();
        let p = focus_product(&points);
        let blocks = 8 / points.total_multiplicity() as usize + 1;
        let want = p_adic_blocks(&f_coeffs, &p, blocks);
        for method in [Method::Cauchy, Method::Derivative] {
            let e = expand_taylor(&f, &points, blocks, method).unwrap();
            for (n, q) in want.iter().enumerate() {
                for &z in &probes {
                    let got = e.block(n).eval(z);
                    let exp = poly_eval(q, z);
                    assert!((got - exp).norm() <= 1e-9 * exp.norm().max(1.0), "S={s} n={n} {method}: {got} vs {exp}");
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

// With P = z^2 - 1: 1/(3 - z) = (3 + z)/(9 - z^2) = (3 + z)/8 * sum (P/8)^n.

#[test]
fn two_point_geometric_series() {
    let f = parse_function("1/(3-z)").unwrap();
    let s: PointSet = "1,-1".parse().unwrap();
    for method in [Method::Cauchy, Method::Derivative] {
        let e = expand_taylor(&f, &s, 10, method).unwrap();
        for n in 0..10 {
            let scale = 8f64.powi(n as i32 + 1);
            assert!((e.a().get(n, 0, 0) - c(4.0 / scale, 0.0)).norm() < 1e-14);
            assert!((e.a().get(n, 1, 0) - c(2.0 / scale, 0.0)).norm() < 1e-14);
        }
    }
    for z in [c(0.0, 0.0), c(1.5, 1.0), c(-2.1, 0.3)] {
        let p = z * z - 1.0;
        for n in [1, 3, 6] {
            let want = (3.0 + z) * (p / 8.0).powi(n as i32) / (8.0 - p);
            let got = remainder(&f, &s, n, z).unwrap();
            assert!((got - want).norm() <= 1e-12 * want.norm().max(1e-3), "z={z} N={n}: {got} vs {want}");
        }
    }
}

#[test]
fn laurent_closed_form() {
    // 1/((z-1)(z+1)^2) = (z - 1) P^-2, so t_1 = z - 1 and every other t_n vanishes;
    // the 1/(3-z) part only feeds the Taylor tensor.
    let f = parse_function("1/((z-1)*(z+1)^2) + 1/(3-z)").unwrap();
    let s: PointSet = "1,-1".parse().unwrap();
    for method in [Method::Cauchy, Method::Derivative] {
        let e = expand_laurent(&f, &s, 5, method, &ExpansionOptions::default()).unwrap();
        for n in 0..5 {
            let want_b = if n == 1 { [zero(), c(-2.0, 0.0)] } else { [zero(), zero()] };
            let scale = 8f64.powi(n as i32 + 1);
            let want_a = [c(4.0 / scale, 0.0), c(2.0 / scale, 0.0)];
            for j in 0..2 {
                assert!((e.b().get(n, j, 0) - want_b[j]).norm() < 1e-11, "{method} b[{n}][{j}]");
                assert!((e.a().get(n, j, 0) - want_a[j]).norm() < 1e-11, "{method} a[{n}][{j}]");
            }
        }
    }
}

#[test]
fn taylor_laurent_closed_form() {
    // with u = (z-1)/(z+1): 1/(z+1) = 1/2 - u/2, so only the first u-block survives
    let f = parse_function("exp(z) + 1/(z+1)").unwrap();
    let s: PointSet = "1,-1".parse().unwrap();
    for method in [Method::Cauchy, Method::Derivative] {
        let e = expand_taylor_laurent(&f, &s, 1, 6, method, &ExpansionOptions::default()).unwrap();
        assert!((e.c().get(0, 0, 0) - c(-0.5, 0.0)).norm() < 1e-11, "{method}");
        for n in 1..6 {
            assert!(e.c().get(n, 0, 0).norm() < 1e-11, "{method} c[{n}]");
        }
    }
}

#[test]
fn single_focus_is_classical_taylor() {
    let f = parse_function("1/(2-z)").unwrap();
    let s: PointSet = "0.5:1".parse().unwrap();
    let e = expand_taylor(&f, &s, 12, Method::Cauchy).unwrap();
    for n in 0..12 {
        // 1/(2 - z) = sum (z - 1/2)^n / (3/2)^{n+1}
        let want = 1.0 / 1.5f64.powi(n as i32 + 1);
        assert!((e.a().get(n, 0, 0) - c(want, 0.0)).norm() < 1e-13);
    }
}

// ---------------------------------------------------------------------------
// Confluent Vandermonde
// ---------------------------------------------------------------------------

fn solve(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Vec<C64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap()).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let t = a[row][col] / a[col][col];
            let pivot = a[col].clone();
            for (v, p) in a[row].iter_mut().zip(&pivot).skip(col) {
                *v -= t * p;
            }
            let v = b[col];
            b[row] -= t * v;
        }
    }
    let mut x = vec![zero(); n];
    for row in (0..n).rev() {
        let s: C64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Monomial coefficients of the interpolant matching `deriv(z_j, l)` for
/// `l < blocks m_j`.
fn vandermonde_interpolant(points: &PointSet, blocks: usize, deriv: impl Fn(C64, usize) -> C64) -> Vec<C64> {
    let size = blocks * points.total_multiplicity() as usize;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &(z, m) in points.foci() {
        for l in 0..blocks * m as usize {
            let mut row = vec![zero(); size];
            for (k, entry) in row.iter_mut().enumerate().skip(l) {
                let falling: f64 = (k - l + 1..=k).map(|x| x as f64).product();
                *entry = z.powi((k - l) as i32) * falling;
            }
            rows.push(row);
            rhs.push(deriv(z, l));
        }
    }
    solve(rows, rhs)
}

#[test]
fn partial_sums_are_hermite_interpolants() {
    let f = parse_function("1/(3-z)").unwrap();
    let deriv = |z: C64, l: usize| -> C64 {
        let fact: f64 = (1..=l).map(|x| x as f64).product();
        fact / (3.0 - z).powi(l as i32 + 1)
    };
    for s in ["1,-1", "0:2,1:1", "1,-1,i"] {
        let points: PointSet = s.parse().unwrap();
        let e = expand_taylor(&f, &points, 3, Method::Cauchy).unwrap();
        for blocks in 1..=3 {
            let coeffs = vandermonde_interpolant(&points, blocks, deriv);
            for k in 0..20 {
                let z = C64::from_polar(0.2 + 0.08 * k as f64, 0.9 * k as f64);
                let want = poly_eval(&coeffs, z);
                let got = e.eval_partial(z, blocks);
                assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "S={s} N={blocks} z={z}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hermite property through jets
// ---------------------------------------------------------------------------

#[test]
fn partial_sum_matches_jets_at_foci() {
    for (f_text, s) in [("exp(z)", "0:2,1:1"), ("1/(3-z)", "1,-1,i"), ("log(4+z)*cos(z)", "1:2,-1:2"), ("z^5", "0,1")] {
        let f = parse_function(f_text).unwrap();
        let points: PointSet = s.parse().unwrap();
        let blocks = 3;
        let e = expand_taylor(&f, &points, blocks, Method::Cauchy).unwrap();
        for &(zj, mj) in points.foci() {
            let len = blocks * mj as usize;
            let w = Series::variable(zj, len);
            let mut p = Series::constant(c(1.0, 0.0), len);
            for &(zk, mk) in points.foci() {
                p = p.mul(&w.sub(&Series::constant(zk, len)).powi(mk as i64).unwrap());
            }
            let basis = e.basis().eval_series(zj, len).unwrap();
            let mut sum = Series::constant(zero(), len);
            let mut pn = Series::constant(c(1.0, 0.0), len);
            for n in 0..blocks {
                let mut q = Series::constant(zero(), len);
                for (b, a) in basis.iter().zip(e.a().block(n)) {
                    q = q.add(&b.scale(*a));
                }
                sum = sum.add(&q.mul(&pn));
                pn = pn.mul(&p);
            }
            let jet = f.jet_eval(zj, len - 1).unwrap();
            for l in 0..len {
                let got = sum.coeff(l as i64).unwrap_or(zero());
                assert!(
                    (got - jet.coeffs[l]).norm() < 1e-9 * jet.coeffs[l].norm().max(1.0),
                    "{f_text} S={s} focus {zj} order {l}: {got} vs {}",
                    jet.coeffs[l]
                );
            }
            assert!((f.value(zj).unwrap() - e.eval(zj)).norm() < 1e-10);
        }
    }
}
