//! Boundary curves of two-focus lemniscates `|z - 1| |z + 1| = r`.
//!
//! Below the saddle value `r = 1` the region splits into two ovals.
//! Pass a directory to also write one CSV per radius.

use std::io::Write;

use lemniscate::points::PointSet;
use lemniscate::region::{boundary_sample, two_focus_threshold, BBox, RegionSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s: PointSet = "1,-1".parse()?;
    let out_dir = std::env::args().nth(1);
    if let Some(dir) = &out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let threshold = two_focus_threshold(s.foci()[0], s.foci()[1]);
    println!("threshold r = {threshold}");

    let bbox = BBox::new(-2.5, 2.5, -1.5, 1.5);
    for r in [0.5, 0.9, 0.99, 1.01, 1.2, 2.0] {
        let region = RegionSpec::lemniscate_with_radius(&s, r);
        let curves = boundary_sample(&region, 256, Some(bbox))?;
        let worst =
            curves.iter().flat_map(|c| &c.points).map(|z| (s.product_abs(*z) / r - 1.0).abs()).fold(0.0, f64::max);
        println!("r = {r:<5} components = {}  worst level error = {worst:.1e}", curves.len());
        if let Some(dir) = &out_dir {
            let mut file = std::fs::File::create(format!("{dir}/lemniscate_{r}.csv"))?;
            writeln!(file, "component_id,x,y")?;
            for (k, c) in curves.iter().enumerate() {
                for z in &c.points {
                    writeln!(file, "{k},{},{}", z.re, z.im)?;
                }
            }
        }
    }

    let triple: PointSet = "1,-1:2,i".parse()?;
    let region = RegionSpec::lemniscate_with_radius(&triple, 2.0);
    let curves = boundary_sample(&region, 256, None)?;
    println!("\nS = {{{triple}}}, r = 2: {} component(s)", curves.len());
    Ok(())
}
