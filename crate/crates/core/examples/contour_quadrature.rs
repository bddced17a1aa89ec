//! Trapezoidal quadrature of Cauchy integrals on circles.

use lemniscate::contour::{cauchy_integral, default_contour, Contour, ContourMode, QuadratureOptions};
use lemniscate::function::parse_function;
use lemniscate::points::PointSet;
use lemniscate::C64;

type Integrand = fn(C64) -> C64;

fn main() -> lemniscate::Result<()> {
    let unit = Contour::circle(C64::new(0.0, 0.0), 1.0)?;
    let opts = QuadratureOptions::default();

    let cases: [(&str, Integrand); 3] =
        [("1/w", |w| 1.0 / w), ("1/w^2", |w| 1.0 / (w * w)), ("e^w/w^3", |w| w.exp() / (w * w * w))];
    for (name, g) in cases {
        let r = cauchy_integral(|w| Ok(g(w)), &unit, &opts)?;
        println!("{name:<8} -> {:.16}  ({} nodes, est. error {:.1e})", r.value, r.nodes_used, r.est_error);
    }

    let spectral = QuadratureOptions { min_nodes: 2, ..opts };
    let r = cauchy_integral(|w| Ok(w.exp() / (w * w * w)), &unit, &spectral)?;
    println!(
        "\ne^w/w^3 error per doubling from 2 nodes: {:?}",
        r.history.iter().map(|e| format!("{e:.1e}")).collect::<Vec<_>>()
    );

    let f = parse_function("1/(3-z)")?;
    let s: PointSet = "1,-1".parse()?;
    for mode in [ContourMode::EncloseAll, ContourMode::PerFocus] {
        println!("{mode:?}: {:?}", default_contour(&s, &f, mode)?);
    }
    Ok(())
}
