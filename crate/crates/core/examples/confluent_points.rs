//! Repeated foci: `S = {0:2}` is the limit of `S = {0, eps}`.
//!
//! Also shows the Hermite property: the partial sum matches `f` and its
//! derivative at the double focus.

use lemniscate::function::parse_function;
use lemniscate::hermite::hermite_interpolate;
use lemniscate::points::PointSet;
use lemniscate::taylor::{expand_taylor, Method};
use lemniscate::C64;

fn main() -> lemniscate::Result<()> {
    let f = parse_function("1/(2-z)")?;
    let double: PointSet = "0:2".parse()?;
    let blocks = 4;
    let confluent = expand_taylor(&f, &double, blocks, Method::Derivative)?;

    for eps in [1e-1, 1e-2, 1e-3] {
        let split = PointSet::simple(&[C64::new(0.0, 0.0), C64::new(eps, 0.0)])?;
        let e = expand_taylor(&f, &split, blocks, Method::Cauchy)?;
        let mut worst: f64 = 0.0;
        for n in 0..blocks {
            let (a1, a2) = (e.a().get(n, 0, 0), e.a().get(n, 1, 0));
            // a1 (z - eps)/(-eps) + a2 z/eps = a1 + (a2 - a1)/eps z
            let merged = [a1, (a2 - a1) / eps];
            for (l, got) in merged.iter().enumerate() {
                let want = confluent.a().get(n, 0, l);
                worst = worst.max((got - want).norm() / want.norm());
            }
        }
        println!("eps = {eps:.0e}   max relative difference = {worst:.3e}");
    }

    let h = hermite_interpolate(&f, &double, blocks)?;
    let z = C64::new(0.4, -0.3);
    println!("\nS_4(z) = {:.15}", confluent.eval(z));
    println!("H(z)   = {:.15}", h.eval(z));
    println!("degree of the interpolant: {}", h.degree());
    Ok(())
}
