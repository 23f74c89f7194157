//! Grid certificates for angle systems that admit no suitable pentagon.

use pentile::pentagon::{check_infeasible_family, InfeasibleFamily};

fn main() {
    for fam in [InfeasibleFamily::B2dC2eAbc { f: 16 }, InfeasibleFamily::B2dC2eAbc { f: 36 }, InfeasibleFamily::AdeAc2F20] {
        let c = check_infeasible_family(fam);
        println!(
            "{fam:?}: infeasible={} min|r|={:.3e} sign changes={} over {} samples",
            c.infeasible, c.min_abs_residual, c.sign_changes, c.samples
        );
    }
}
