//! The internal plane as C with real basis {1, x}, x = e^{iπ/6}.
//!
//! Every point is `u + v·x` with `u, v ∈ Q(√3)`, reduced with
//! `x² = √3·x − 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::QuadRat;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct PlanePoint {
    pub u: QuadRat,
    pub v: QuadRat,
}

/// Translation lattices acting on the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransLattice {
    /// (1/√3)·Z[x], generated by the six vectors `f_i`.
    Delta0,
    /// Z[x] = G ⊕ G·x.
    ZX,
}

impl PlanePoint {
    pub fn new(u: QuadRat, v: QuadRat) -> Self {
        PlanePoint { u, v }
    }

    pub fn zero() -> Self {
        PlanePoint::default()
    }

    pub fn real(u: QuadRat) -> Self {
        PlanePoint::new(u, QuadRat::zero())
    }

    /// `x^k` for any integer `k`.
    pub fn xpow(k: i64) -> Self {
        let r = k.rem_euclid(12);
        let (base, negate) = if r >= 6 { (r - 6, true) } else { (r, false) };
        let s3 = QuadRat::sqrt3();
        let i = QuadRat::integer;
        let p = match base {
            0 => PlanePoint::new(i(1), i(0)),
            1 => PlanePoint::new(i(0), i(1)),
            2 => PlanePoint::new(i(-1), s3),
            3 => PlanePoint::new(-s3, i(2)),
            4 => PlanePoint::new(i(-2), s3),
            _ => PlanePoint::new(-s3, i(1)),
        };
        if negate {
            -p
        } else {
            p
        }
    }

    /// `f_i = x^{5(i−1)} / √3` for `i ∈ 1..=6`.
    pub fn f_vector(i: usize) -> Self {
        assert!((1..=6).contains(&i), "f index {i} out of range");
        PlanePoint::xpow(5 * (i as i64 - 1)).scale(&inv_sqrt3())
    }

    pub fn scale(&self, s: &QuadRat) -> Self {
        PlanePoint::new(&self.u * s, &self.v * s)
    }

    /// Multiplication by `x`: `(u, v) ↦ (−v, u + √3·v)`.
    pub fn mul_x(&self) -> Self {
        PlanePoint::new(-&self.v, &self.u + &(&self.v * &QuadRat::sqrt3()))
    }

    pub fn mul_xpow(&self, k: i64) -> Self {
        self * &PlanePoint::xpow(k)
    }

    pub fn contained_in(&self, lattice: TransLattice) -> bool {
        match lattice {
            TransLattice::ZX => self.u.in_ring() && self.v.in_ring(),
            TransLattice::Delta0 => {
                let s = QuadRat::sqrt3();
                (&self.u * &s).in_ring() && (&self.v * &s).in_ring()
            }
        }
    }

    /// Representative modulo Z[x]: both coordinates reduced modulo G.
    pub fn canon_zx(&self) -> Self {
        PlanePoint::new(self.u.canon_g(), self.v.canon_g())
    }

    /// Determinant of `(self, other)` in the `(u, v)` coordinates. Its sign is
    /// the orientation of the pair, since {1, x} is positively oriented.
    pub fn cross(&self, other: &PlanePoint) -> QuadRat {
        &self.u * &other.v - &self.v * &other.u
    }

    pub fn is_parallel_to(&self, other: &PlanePoint) -> bool {
        self.cross(other).is_zero()
    }

    /// Squared Euclidean length `u² + √3·uv + v²`.
    pub fn norm_sq(&self) -> QuadRat {
        &(&self.u * &self.u) + &(&(&self.u * &self.v) * &QuadRat::sqrt3()) + (&self.v * &self.v)
    }

    /// Coefficients `(c_i, c_j)` with `self = c_i·x^i + c_j·x^j`.
    pub fn decompose(&self, i: i64, j: i64) -> Result<(QuadRat, QuadRat)> {
        let a = PlanePoint::xpow(i);
        let b = PlanePoint::xpow(j);
        let det = a.cross(&b);
        if det.is_zero() {
            return Err(Error::DegenerateBasis(i, j));
        }
        let ci = self.cross(&b).checked_div(&det)?;
        let cj = a.cross(self).checked_div(&det)?;
        Ok((ci, cj))
    }

    /// Index in `0..6` of the line direction `x^k` parallel to `self`.
    pub fn direction_index(&self) -> Option<usize> {
        if self.u.is_zero() && self.v.is_zero() {
            return None;
        }
        (0..6).find(|&k| self.is_parallel_to(&PlanePoint::xpow(k as i64)))
    }
}

pub fn inv_sqrt3() -> QuadRat {
    QuadRat::from_parts(0, 1, 1, 3)
}

pub fn xpow(k: i64) -> PlanePoint {
    PlanePoint::xpow(k)
}

pub fn f_vector(i: usize) -> PlanePoint {
    PlanePoint::f_vector(i)
}

pub fn lattice_contains(p: &PlanePoint, lattice: TransLattice) -> bool {
    p.contained_in(lattice)
}

pub fn decompose(p: &PlanePoint, i: i64, j: i64) -> Result<(QuadRat, QuadRat)> {
    p.decompose(i, j)
}

impl Add<&PlanePoint> for &PlanePoint {
    type Output = PlanePoint;
    fn add(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint::new(&self.u + &rhs.u, &self.v + &rhs.v)
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, rhs: PlanePoint) -> PlanePoint {
        &self + &rhs
    }
}

impl Sub<&PlanePoint> for &PlanePoint {
    type Output = PlanePoint;
    fn sub(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint::new(&self.u - &rhs.u, &self.v - &rhs.v)
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, rhs: PlanePoint) -> PlanePoint {
        &self - &rhs
    }
}

impl Neg for PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-self.u, -self.v)
    }
}

impl Neg for &PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-&self.u, -&self.v)
    }
}

/// Complex product.
impl Mul<&PlanePoint> for &PlanePoint {
    type Output = PlanePoint;
    fn mul(self, rhs: &PlanePoint) -> PlanePoint {
        let vv = &self.v * &rhs.v;
        PlanePoint::new(
            &(&self.u * &rhs.u) - &vv,
            &(&(&self.u * &rhs.v) + &(&self.v * &rhs.u)) + &(&vv * &QuadRat::sqrt3()),
        )
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·x", self.u, self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadRat {
        QuadRat::from_parts(a, b, c, d)
    }

    fn pt(u: QuadRat, v: QuadRat) -> PlanePoint {
        PlanePoint::new(u, v)
    }

    #[test]
    fn power_chart() {
        assert_eq!(xpow(2), pt(QuadRat::integer(-1), QuadRat::sqrt3()));
        assert_eq!(xpow(6), pt(QuadRat::integer(-1), QuadRat::zero()));
        assert_eq!(xpow(11), pt(QuadRat::sqrt3(), QuadRat::integer(-1)));
        assert_eq!(xpow(17), pt(-QuadRat::sqrt3(), QuadRat::integer(1)));
        assert_eq!(xpow(-1), xpow(11));
        let mut p = xpow(0);
        for k in 1..=24 {
            p = p.mul_x();
            assert_eq!(p, xpow(k));
        }
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(1), pt(q(0, 1, 1, 3), QuadRat::zero()));
        assert_eq!(f_vector(5), &f_vector(3) - &f_vector(1));
        assert_eq!(f_vector(6), &f_vector(4) - &f_vector(2));
        assert_eq!(
            &f_vector(6) - &f_vector(2),
            pt(QuadRat::one(), QuadRat::zero())
        );
        assert_eq!(
            &f_vector(6) - &f_vector(2),
            f_vector(1).scale(&QuadRat::sqrt3())
        );
    }

    #[test]
    fn consecutive_f_relation() {
        // f_i = x^{5(i-1)}/√3 for every integer i, with f_{i+6} = −f_i
        let f = |i: i64| xpow(5 * (i - 1)).scale(&inv_sqrt3());
        for i in 1..=6 {
            let lhs = &f(i) + &f(i + 2);
            assert_eq!(lhs, f(i + 1).scale(&-QuadRat::sqrt3()), "i={i}");
        }
        assert_eq!(f(7), -f_vector(1));
    }

    #[test]
    fn multiplication_by_x() {
        assert_eq!(xpow(0).mul_x(), xpow(1));
        assert_eq!(xpow(1).mul_x(), pt(QuadRat::integer(-1), QuadRat::sqrt3()));
        let p = pt(q(1, 7, 2, 5), q(-3, 4, 1, 9));
        assert_eq!(p.mul_xpow(12), p);
    }

    #[test]
    fn lattice_membership() {
        let p = pt(QuadRat::sqrt3(), QuadRat::integer(-1));
        assert!(p.contained_in(TransLattice::ZX));
        // √3 = x − x⁵
        assert_eq!(&xpow(1) - &xpow(5), pt(QuadRat::sqrt3(), QuadRat::zero()));
        let f1 = pt(q(0, 1, 1, 3), QuadRat::zero());
        assert!(lattice_contains(&f1, TransLattice::Delta0));
        assert!(!lattice_contains(&f1, TransLattice::ZX));
        let half_x = pt(QuadRat::zero(), QuadRat::ratio(1, 2));
        assert!(!half_x.contained_in(TransLattice::Delta0));
    }

    #[test]
    fn decompositions() {
        assert_eq!(
            decompose(&xpow(1), 0, 3).unwrap(),
            (q(0, 1, 1, 2), QuadRat::ratio(1, 2))
        );
        assert_eq!(
            decompose(&xpow(2), 0, 4).unwrap(),
            (QuadRat::one(), QuadRat::one())
        );
        assert_eq!(
            decompose(&xpow(4), 0, 3).unwrap(),
            (QuadRat::ratio(-1, 2), q(0, 1, 1, 2))
        );
        assert_eq!(
            decompose(&xpow(1), 2, 8),
            Err(Error::DegenerateBasis(2, 8))
        );
    }

    #[test]
    fn direction_indices() {
        for k in 0..12 {
            assert_eq!(xpow(k).direction_index(), Some((k % 6) as usize));
        }
        assert_eq!(PlanePoint::zero().direction_index(), None);
    }

    fn quad() -> impl Strategy<Value = QuadRat> {
        (-40i64..40, 1i64..30, -40i64..40, 1i64..30).prop_map(|(a, b, c, d)| q(a, b, c, d))
    }

    fn point() -> impl Strategy<Value = PlanePoint> {
        (quad(), quad()).prop_map(|(u, v)| pt(u, v))
    }

    fn zx_point() -> impl Strategy<Value = PlanePoint> {
        (-9i64..9, -9i64..9, -9i64..9, -9i64..9)
            .prop_map(|(a, b, c, d)| pt(q(a, 1, b, 1), q(c, 1, d, 1)))
    }

    proptest! {
        #[test]
        fn reconstruction(p in point(), i in 0i64..12, j in 0i64..12) {
            prop_assume!((i - j).rem_euclid(6) != 0);
            let (ci, cj) = decompose(&p, i, j).unwrap();
            let back = &xpow(i).scale(&ci) + &xpow(j).scale(&cj);
            prop_assert_eq!(back, p);
        }

        #[test]
        fn sandwich(p in zx_point()) {
            prop_assert!(p.contained_in(TransLattice::ZX));
            prop_assert!(p.contained_in(TransLattice::Delta0));
        }

        #[test]
        fn multiplicative(a in -30i64..30, b in -30i64..30) {
            prop_assert_eq!(&xpow(a) * &xpow(b), xpow(a + b));
        }

        #[test]
        fn unit_length(k in -30i64..30) {
            prop_assert_eq!(xpow(k).norm_sq(), QuadRat::one());
        }
    }
}
