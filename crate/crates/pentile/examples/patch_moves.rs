//! Flipping and shifting the four-tile patch of F2E2.

use pentile::atlas::{build, find_patches, shift_flip_patch, Family, PatchAction};
use pentile::combmap::{is_isomorphic, verify_tiling};

fn main() {
    let t = build(Family::F2E2, 28).unwrap();
    let patches = find_patches(&t);
    println!("F2E2(28) has {} patch(es)", patches.len());
    let p = patches[0];
    println!("first patch: tiles {:?} at {:?}", p.tiles, p.locator);

    let flipped = shift_flip_patch(&t, &p.locator, PatchAction::Flip).unwrap();
    println!("after a flip: {} patches, valid {}", find_patches(&flipped).len(), verify_tiling(&flipped).pass());
    let dp = build(Family::F2E2DoublePrime, 28).unwrap();
    println!("same as F2E2'': {}", is_isomorphic(&flipped, &dp));

    for s in 1..=3 {
        let u = shift_flip_patch(&t, &p.locator, PatchAction::Shift(s)).unwrap();
        println!("shift {s}: valid {}", verify_tiling(&u).pass());
    }
}
