//! Parsing, canonical printing, singularity detection and Taylor jets.

use lemniscate::function::{parse_expr, parse_function, Analytic, Series};
use lemniscate::C64;

fn main() -> lemniscate::Result<()> {
    for text in ["1/((z-1)*(z+1)^2)", "exp(z)/z^3", "sqrt(1+z/4)*log(2-z)", "(z^2+1)/(z-2) - 3*z"] {
        let f = parse_function(text)?;
        println!("{text}\n  printed as {}", f.expr());
        for s in f.singularities() {
            println!("  {:?} at {}", s.kind, s.location);
        }
    }

    let f = parse_function("exp(z)*sin(z)")?;
    let jet = f.jet_eval(C64::new(0.0, 0.0), 6)?;
    println!("\nTaylor coefficients of exp(z) sin(z) at 0:");
    for (k, c) in jet.coeffs.iter().enumerate() {
        println!("  [{k}] {:+.12}", c.re);
    }

    // series arithmetic directly: 1/(1 - z) about 0
    let z = Series::variable(C64::new(0.0, 0.0), 6);
    let one = Series::constant(C64::new(1.0, 0.0), 6);
    let geo = one.div(&one.sub(&z))?;
    println!("\n1/(1-z): {:?}", geo.coeffs().iter().map(|c| c.re).collect::<Vec<_>>());

    match parse_expr("2*(z+") {
        Err(e) => println!("\nbad input: {e}"),
        Ok(_) => unreachable!(),
    }
    let g = parse_function("1/(z-1)")?;
    println!("value at the pole: {:?}", g.value(C64::new(1.0, 0.0)).map_err(|e| e.to_string()));
    Ok(())
}
