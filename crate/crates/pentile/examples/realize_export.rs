//! Placing tilings on the sphere and writing OBJ, SVG and JSON files.
//!
//! Usage: `cargo run --example realize_export [out_dir]` (default `target/pentile-out`).

use std::path::PathBuf;

use nalgebra::Vector3;
use pentile::atlas::{build, solve_family, Family, PpVariant};
use pentile::realize::{export, realize, total_area, ExportFormat, ExportOptions, Exportable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/pentile-out".into()));
    std::fs::create_dir_all(&dir)?;
    let cases = [(Family::E1, 20), (Family::RE2, 20), (Family::PP20(PpVariant::AlphaCubed), 60), (Family::S16, 16)];
    for (fam, f) in cases {
        let t = build(fam, f)?;
        let r = realize(&t, &solve_family(fam, f, None)?)?;
        println!("{fam} f={f}: closure {:.1e}, area {:.12}", r.closure_residual, total_area(&r));
        let mut opts = ExportOptions::default();
        if fam == Family::E1 {
            // the E1 poles are vertices; projecting from the equator under
            // the middle of tile 1 puts both on the unit circle
            let c: Vector3<f64> = r.tile_points(1).iter().sum();
            opts.pole = Vector3::new(c.x, c.y, 0.0).normalize();
        }
        for (fmt, ext) in [(ExportFormat::Obj, "obj"), (ExportFormat::Svg, "svg"), (ExportFormat::Json, "json")] {
            let path = dir.join(format!("{}-{f}.{ext}", fam.name()));
            export(Exportable::Realized(&r), fmt, &path, &opts)?;
        }
    }
    println!("written to {}", dir.display());
    Ok(())
}
