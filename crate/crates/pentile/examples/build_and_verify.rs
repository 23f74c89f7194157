//! Building every family and printing the verifier's verdict.

use pentile::atlas::{build, Family};
use pentile::combmap::{degree_stats, extract_avc, verify_tiling};
use pentile::vertex::Avc;

fn main() {
    for fam in Family::all() {
        let Some(&f) = fam.admissible_counts(12, 60).first() else { continue };
        let t = build(fam, f).unwrap();
        let rep = verify_tiling(&t);
        let avc = Avc(extract_avc(&t).into_keys().collect());
        println!("{fam:<20} f={f:<2} {} degrees {:?} AVC {avc}", if rep.pass() { "pass" } else { "FAIL" }, degree_stats(&t));
    }
    print!("\n{}", verify_tiling(&build(Family::F2E1, 20).unwrap()));
    println!();
}
