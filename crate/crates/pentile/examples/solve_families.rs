//! Solving the prototile of each family and checking the existence identities.

use std::f64::consts::PI;

use pentile::atlas::{e2_parameter_interval, solve_family, Family, PpVariant};
use pentile::pentagon::{existence_residuals, rotation_closure_residual};

fn main() {
    let cases = [
        (Family::E1, 20),
        (Family::F2E2, 16),
        (Family::PP8(PpVariant::AlphaCubed), 24),
        (Family::PP20(PpVariant::GammaCubed), 60),
        (Family::S16, 16),
    ];
    for (fam, f) in cases {
        let p = solve_family(fam, f, None).unwrap();
        let r = existence_residuals(p.angles(), p.a).max_abs();
        println!(
            "{fam:<10} f={f:<2} ε={:.4}π a={:.4}π b={:.4}π  identities {r:.1e}  closure {:.1e}",
            p.epsilon / PI,
            p.a / PI,
            p.b / PI,
            rotation_closure_residual(&p)
        );
    }
    let (lo, hi) = e2_parameter_interval(20).unwrap();
    println!("E2 f=20 edge length interval: ({lo:.6}, {hi:.6})");
    let p = solve_family(Family::E2, 20, Some(0.5 * (lo + hi))).unwrap();
    print!("{p}");
}
