//! Benchmark fixtures.

use dp2_core::exactalg::{Field, Rationals};
use dp2_core::{PointDP2, SurfaceDP2};

pub fn fermat() -> SurfaceDP2 {
    SurfaceDP2::from_i64_terms(&[], &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
}

pub fn klein() -> SurfaceDP2 {
    SurfaceDP2::from_i64_terms(&[], &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]).unwrap()
}

pub fn point(s: &SurfaceDP2, v: [i64; 4]) -> PointDP2 {
    let k = Rationals;
    s.point([k.from_i64(v[0]), k.from_i64(v[1]), k.from_i64(v[2])], k.from_i64(v[3])).unwrap()
}
