//! Two-point Taylor expansion of `1/(3 - z)` about `{1, -1}`.
//!
//! Prints the coefficient blocks from both engines, then evaluates partial
//! sums at a few points inside the lemniscate `|z^2 - 1| < 8`.

use lemniscate::function::{parse_function, Analytic};
use lemniscate::points::PointSet;
use lemniscate::region::RegionSpec;
use lemniscate::taylor::{expand_taylor, Method};
use lemniscate::C64;

fn main() -> lemniscate::Result<()> {
    let f = parse_function("1/(3-z)")?;
    let s: PointSet = "1,-1".parse()?;
    let n = 12;

    let cauchy = expand_taylor(&f, &s, n, Method::Cauchy)?;
    let deriv = expand_taylor(&f, &s, n, Method::Derivative)?;
    println!("n   a[n][z=1]                a[n][z=-1]");
    for k in 0..5 {
        println!("{k}   {:<24.15} {:.15}", cauchy.a().get(k, 0, 0).re, cauchy.a().get(k, 1, 0).re);
    }
    println!("max |cauchy - derivative| = {:.2e}", cauchy.a().max_abs_diff(deriv.a()));

    let region = RegionSpec::lemniscate(&s, f.singularities());
    println!("\nlemniscate radius r = {}", region.r());
    for z in [C64::new(0.0, 0.0), C64::new(1.5, 0.5), C64::new(-0.3, 2.0)] {
        let exact = f.value(z)?;
        println!(
            "z = {z:<10}  ratio {:.3}  |f - S_{n}| = {:.2e}",
            region.predicted_ratio(z),
            (exact - cauchy.eval(z)).norm()
        );
    }
    Ok(())
}
