//! Shared fixtures for the criterion benchmarks.

use tspack_core::*;

pub fn pentagon_fixture() -> Packing {
    pentagon_augmented(
        &basic_polyomino(11).expect("11 >= 4"),
        (2, 1),
        &Tolerance::default(),
    )
    .expect("the 13-disk fixture constructs")
}

pub fn grid_fixture(side: u64) -> Packing {
    grid_packing(2, side).expect("grid constructs")
}
