//! Mixed expansion: Taylor about `z = 1`, Laurent about the pole at `z = -1`.

use lemniscate::function::{parse_function, Analytic};
use lemniscate::laurent::{expand_taylor_laurent, laurent_remainder};
use lemniscate::points::PointSet;
use lemniscate::region::RegionSpec;
use lemniscate::taylor::{ExpansionOptions, Method};
use lemniscate::C64;

fn main() -> lemniscate::Result<()> {
    let f = parse_function("exp(z) + 1/(z+1)")?;
    let s: PointSet = "1,-1".parse()?;
    let split = 1;
    let opts = ExpansionOptions { delta: Some(0.2), ..Default::default() };

    let region = RegionSpec::taylor_laurent(&s, split, f.singularities(), 0.2)?;
    println!("|z-1|/|z+1| < r2 = {:.4}, outer radius r1 = {}", region.r2, region.r1);

    let z = C64::new(0.5, 0.4);
    println!("probe z = {z}, ratio |u(z)|/r2 = {:.3}\n", region.predicted_ratio(z));
    println!(" N   |f - S_N|     |r_N|");
    for n in [2, 4, 8, 12] {
        let e = expand_taylor_laurent(&f, &s, split, n, Method::Cauchy, &opts)?;
        let err = (f.value(z)? - e.eval(z)).norm();
        let r = laurent_remainder(&f, &s, split, n, z, Some(0.2))?;
        println!("{n:>2}   {err:.3e}   {:.3e}", r.norm());
    }

    let e = expand_taylor_laurent(&f, &s, split, 3, Method::Derivative, &opts)?;
    println!("\nc[0] (coefficient of u): {:.12}", e.c().get(0, 0, 0));
    Ok(())
}
