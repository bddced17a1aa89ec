//! Two-point Laurent expansion of a function with poles at both foci.
//!
//! `1/((z-1)(z+1))` is its own principal part, so only the first `b` block
//! survives. Adding `1/(3-z)` brings in a regular part and a finite outer radius.

use lemniscate::function::{parse_function, Analytic};
use lemniscate::laurent::{expand_laurent, laurent_remainder, principal_part_subtract, PoleProfile};
use lemniscate::points::PointSet;
use lemniscate::region::RegionSpec;
use lemniscate::taylor::{ExpansionOptions, Method};
use lemniscate::C64;

fn main() -> lemniscate::Result<()> {
    let s: PointSet = "1,-1".parse()?;

    let f = parse_function("1/((z-1)*(z+1))")?;
    let e = expand_laurent(&f, &s, 4, Method::Cauchy, &ExpansionOptions::default())?;
    println!("b[0] = {:?}", e.b().block(0));
    println!(
        "max |a| = {:.2e}, max |b[1..]| = {:.2e}",
        e.a().max_abs(),
        (1..4).flat_map(|n| e.b().block(n).to_vec()).map(|c| c.norm()).fold(0.0, f64::max)
    );

    let profile = PoleProfile::from_function(&f, &s)?;
    let g = principal_part_subtract(&f, &s, &profile)?;
    println!("|f - principal part| at 0.3+0.2i: {:.2e}", g.value(C64::new(0.3, 0.2))?.norm());

    let f = parse_function("1/((z-1)*(z+1)^2) + 1/(3-z)")?;
    let delta = 0.2;
    let opts = ExpansionOptions { delta: Some(delta), ..Default::default() };
    let blocks = 10;
    let e = expand_laurent(&f, &s, blocks, Method::Derivative, &opts)?;
    let region = RegionSpec::annulus(&s, f.singularities(), delta)?;
    println!("\nannulus: r2 = {:.4} < |z^2 - 1| < r1 = {}", region.r2, region.r1);
    for z in [C64::new(0.0, 0.0), C64::new(0.2, 1.1), C64::new(-1.9, 0.3)] {
        let r = laurent_remainder(&f, &s, 0, blocks, z, Some(delta))?;
        let exact = f.value(z)?;
        println!(
            "z = {z:<9}  |f - S| = {:.2e}  |r_N| = {:.2e}  identity error {:.1e}",
            (exact - e.eval(z)).norm(),
            r.norm(),
            (exact - e.eval(z) - r).norm()
        );
    }
    Ok(())
}
