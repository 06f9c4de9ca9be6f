//! Shifts used by the benchmarks, one per kind of region.

use tilecohom_core::QuadRat;

pub fn origin() -> (QuadRat, QuadRat) {
    (QuadRat::zero(), QuadRat::zero())
}

pub fn half_axis() -> (QuadRat, QuadRat) {
    (QuadRat::zero(), QuadRat::ratio(1, 2))
}

pub fn generic() -> (QuadRat, QuadRat) {
    (QuadRat::from_parts(1, 7, 1, 11), QuadRat::from_parts(1, 13, 1, 17))
}

/// Operands with mixed signs and moderately large denominators.
pub fn field_operands() -> (QuadRat, QuadRat) {
    (QuadRat::from_parts(-355, 113, 103993, 33102), QuadRat::from_parts(7, 9, -22, 7))
}
