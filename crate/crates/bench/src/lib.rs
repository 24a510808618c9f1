//! Shared fixtures for the benchmarks.

use feec_weights::{build_complex, DofComplex, Triangle};

/// Degrees swept by the benchmarks.
pub const DEGREES: [i64; 4] = [2, 3, 4, 6];

pub fn complex(r: i64) -> DofComplex {
    build_complex(&Triangle::unit_right(), r).expect("default complex builds")
}
