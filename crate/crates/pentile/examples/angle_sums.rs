//! Exact angle arithmetic and the per-tile angle sum.

use pentile::angle::{parse_angle, pentagon_angle_sum, Angle};

fn main() {
    for f in [12, 16, 24, 60] {
        let s = pentagon_angle_sum(f).unwrap();
        println!("f={f:>2}: angle sum {s}, excess {}", s - Angle::frac(3, 1));
    }
    let x = parse_angle("2/3 pi").unwrap().exact().unwrap();
    println!("3 · (2/3)π = {}", x * 3);
    println!("odd f is rejected: {}", pentagon_angle_sum(13).unwrap_err());
}
