//! Enumerating vertex types and running the balance and counting lemmas.

use pentile::angle::Angle;
use pentile::atlas::{build, Family};
use pentile::combmap::extract_avc;
use pentile::vertex::{balance_check, counting_check, enumerate_vertices, AngleAssignment, LabelMode};

fn main() {
    // the α=β=2π/3, γ=π/2 angle line of the octahedral subdivision, with δ=ε
    let a = AngleAssignment::from_exact(
        [Angle::frac(2, 3), Angle::frac(2, 3), Angle::frac(1, 2), Angle::frac(2, 3), Angle::frac(2, 3)],
        Some(24),
    )
    .unwrap();
    let avc = enumerate_vertices(&a, 5, 0.0).unwrap();
    println!("vertex types: {avc}");
    println!("balanced: {}", balance_check(&avc.symmetric_closure()));

    let t = build(Family::RE2, 28).unwrap();
    let mults = extract_avc(&t);
    for (v, n) in &mults {
        println!("  {v}: {n}");
    }
    let rep = counting_check(&mults, t.f(), LabelMode::Distinct);
    println!("counting lemma: {} (totals {:?})", rep.pass(), rep.totals);
}
