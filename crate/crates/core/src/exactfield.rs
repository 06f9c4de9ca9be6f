//! Exact arithmetic in Q(√3) and coset machinery for the lattices
//! G = Z[√3], ½G, (1/√3)G and (1/(2√3))G.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A number `p + q√3` with rational `p`, `q`.
///
/// `BigRational` keeps both parts reduced with a positive denominator, so
/// derived equality and hashing are structural and agree with numeric
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QuadRat {
    p: BigRational,
    q: BigRational,
}

impl QuadRat {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        QuadRat { p, q }
    }

    pub fn zero() -> Self {
        QuadRat::default()
    }

    pub fn one() -> Self {
        QuadRat::integer(1)
    }

    pub fn sqrt3() -> Self {
        QuadRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn integer(n: i64) -> Self {
        QuadRat::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `num/den` with no √3 part. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        QuadRat::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    /// `(a/b) + (c/d)√3`. Panics on a zero denominator.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        QuadRat::new(
            BigRational::new(a.into(), b.into()),
            BigRational::new(c.into(), d.into()),
        )
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QuadRat::new(BigRational::from_integer(n), BigRational::zero())
    }

    /// Rational part.
    pub fn rational(&self) -> &BigRational {
        &self.p
    }

    /// Coefficient of √3.
    pub fn surd(&self) -> &BigRational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Algebraic conjugate `p − q√3`.
    pub fn conj(&self) -> Self {
        QuadRat::new(self.p.clone(), -self.q.clone())
    }

    /// Field norm `p² − 3q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(3.into()) * &self.q * &self.q
    }

    /// Sign of the real number `p + q√3` as −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sp = rat_sign(&self.p);
        let sq = rat_sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: the larger of p² and 3q² wins
        match (&self.p * &self.p).cmp(&(BigRational::from_integer(3.into()) * &self.q * &self.q)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        let mut n = self.p.floor().to_integer() + floor_surd(&self.q);
        while (self - &QuadRat::from_bigint(n.clone())).signum() < 0 {
            n -= 1;
        }
        loop {
            let next: BigInt = &n + 1;
            if (self - &QuadRat::from_bigint(next.clone())).signum() >= 0 {
                n = next;
            } else {
                break;
            }
        }
        n
    }

    /// `self − floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &QuadRat::from_bigint(self.floor())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(QuadRat::new(&self.p / &n, -(&self.q / &n)))
    }

    pub fn checked_div(&self, rhs: &QuadRat) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn apply(&self, op: ArithOp, rhs: &QuadRat) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadRat::new(&self.p * r, &self.q * r)
    }

    /// True iff both parts are integers, i.e. `self ∈ Z[√3]`.
    pub fn in_ring(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }

    pub fn member_of(&self, lattice: LatticeId) -> bool {
        (self * &lattice.scalar()).in_ring()
    }

    /// Canonical representative of `self` modulo `lattice`.
    pub fn canon(&self, lattice: LatticeId) -> CosetRep {
        let s = lattice.scalar();
        let t = self * &s;
        let reduced = QuadRat::new(rat_fract(&t.p), rat_fract(&t.q));
        let value = reduced
            .checked_div(&s)
            .expect("lattice scalars are nonzero");
        CosetRep { value, modulus: lattice }
    }

    /// Shorthand for the representative modulo G.
    pub fn canon_g(&self) -> QuadRat {
        QuadRat::new(rat_fract(&self.p), rat_fract(&self.q))
    }

    /// Largest denominator among the two parts.
    pub fn max_denominator(&self) -> BigInt {
        std::cmp::max(self.p.denom().clone(), self.q.denom().clone())
    }

    /// Floating approximation, for display and diagnostics only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn rat_sign(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn rat_fract(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Estimate of `floor(q√3)`, off by at most one.
fn floor_surd(q: &BigRational) -> BigInt {
    let num = q.numer();
    let den = q.denom();
    let root: BigInt = Roots::sqrt(&(num * num * BigInt::from(3)));
    if num.is_negative() {
        let up: BigInt = (root + 1) / den;
        -up - 1
    } else {
        root / den
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&QuadRat> for &QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: &QuadRat) -> QuadRat {
                let f: fn(&QuadRat, &QuadRat) -> QuadRat = $body;
                f(self, rhs)
            }
        }
        impl $trait<QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: &QuadRat) -> QuadRat {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadRat> for &QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| QuadRat::new(&a.p + &b.p, &a.q + &b.q));
forward_binop!(Sub, sub, |a, b| QuadRat::new(&a.p - &b.p, &a.q - &b.q));
forward_binop!(Mul, mul, |a, b| {
    let three = BigRational::from_integer(3.into());
    QuadRat::new(
        &a.p * &b.p + three * &a.q * &b.q,
        &a.p * &b.q + &a.q * &b.p,
    )
});

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(-self.p, -self.q)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(-self.p.clone(), -self.q.clone())
    }
}

impl AddAssign<&QuadRat> for QuadRat {
    fn add_assign(&mut self, rhs: &QuadRat) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl SubAssign<&QuadRat> for QuadRat {
    fn sub_assign(&mut self, rhs: &QuadRat) {
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

impl From<i64> for QuadRat {
    fn from(n: i64) -> Self {
        QuadRat::integer(n)
    }
}

impl From<BigRational> for QuadRat {
    fn from(r: BigRational) -> Self {
        QuadRat::new(r, BigRational::zero())
    }
}

/// The four lattices of Q(√3) used for coset reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LatticeId {
    G,
    HalfG,
    InvSqrt3G,
    InvTwoSqrt3G,
}

impl LatticeId {
    pub const ALL: [LatticeId; 4] = [
        LatticeId::G,
        LatticeId::HalfG,
        LatticeId::InvSqrt3G,
        LatticeId::InvTwoSqrt3G,
    ];

    /// `s` such that the lattice is `(1/s)·G`.
    pub fn scalar(self) -> QuadRat {
        match self {
            LatticeId::G => QuadRat::one(),
            LatticeId::HalfG => QuadRat::integer(2),
            LatticeId::InvSqrt3G => QuadRat::sqrt3(),
            LatticeId::InvTwoSqrt3G => QuadRat::from_parts(0, 1, 2, 1),
        }
    }

    /// Containment table: `self ⊆ other`.
    pub fn is_subset_of(self, other: LatticeId) -> bool {
        use LatticeId::*;
        matches!(
            (self, other),
            (G, _)
                | (HalfG, HalfG)
                | (HalfG, InvTwoSqrt3G)
                | (InvSqrt3G, InvSqrt3G)
                | (InvSqrt3G, InvTwoSqrt3G)
                | (InvTwoSqrt3G, InvTwoSqrt3G)
        )
    }
}

impl fmt::Display for LatticeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeId::G => "G",
            LatticeId::HalfG => "(1/2)G",
            LatticeId::InvSqrt3G => "(1/√3)G",
            LatticeId::InvTwoSqrt3G => "(1/(2√3))G",
        })
    }
}

/// Canonical coset representative: after scaling by the lattice scalar both
/// parts lie in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetRep {
    pub value: QuadRat,
    pub modulus: LatticeId,
}

pub fn lattice_member(a: &QuadRat, lattice: LatticeId) -> bool {
    a.member_of(lattice)
}

pub fn mod_canon(a: &QuadRat, lattice: LatticeId) -> CosetRep {
    a.canon(lattice)
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        let surd = if self.q.is_one() {
            "√3".to_string()
        } else if (-&self.q).is_one() {
            "-√3".to_string()
        } else {
            format!("{}√3", self.q)
        };
        if self.p.is_zero() {
            f.write_str(&surd)
        } else if self.q.is_negative() {
            write!(f, "{}{}", self.p, surd)
        } else {
            write!(f, "{}+{}", self.p, surd)
        }
    }
}

impl FromStr for QuadRat {
    type Err = Error;

    /// Accepts `a/b+c/d√3` and variants: `s`, `sqrt3` or `sqrt(3)` for √3,
    /// an optional `*` before the surd, a trailing `/d` after it, and plain
    /// rationals.
    fn from_str(input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let normalized = compact
            .replace("sqrt(3)", "#")
            .replace("sqrt3", "#")
            .replace('√', "#")
            .replace("#3", "#")
            .replace('s', "#");
        if normalized.is_empty() {
            return Err(Error::Parse(format!("empty number in {input:?}")));
        }
        let mut total = QuadRat::zero();
        let mut term = String::new();
        let mut terms = Vec::new();
        for (i, c) in normalized.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 && !term.is_empty() {
                terms.push(std::mem::take(&mut term));
            }
            term.push(c);
        }
        terms.push(term);
        for t in &terms {
            total += &parse_term(t).map_err(|e| Error::Parse(format!("{e} in {input:?}")))?;
        }
        Ok(total)
    }
}

fn parse_term(term: &str) -> std::result::Result<QuadRat, String> {
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err("dangling sign".into());
    }
    let value = match body.find('#') {
        None => QuadRat::from(parse_rational(body)?),
        Some(pos) => {
            let before = body[..pos].trim_end_matches('*');
            let after = &body[pos + 1..];
            let coef = if before.is_empty() {
                BigRational::one()
            } else {
                parse_rational(before)?
            };
            let coef = if after.is_empty() {
                coef
            } else if let Some(den) = after.strip_prefix('/') {
                let d = parse_rational(den)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                coef / d
            } else {
                return Err(format!("unexpected {after:?} after √3"));
            };
            QuadRat::new(BigRational::zero(), coef)
        }
    };
    Ok(if negative { -value } else { value })
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad integer {n:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad integer {d:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for QuadRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadRat {
        QuadRat::from_parts(a, b, c, d)
    }

    #[test]
    fn arithmetic_examples() {
        let a = q(1, 1, 1, 1);
        let b = q(1, 1, -1, 1);
        assert_eq!(&a * &b, QuadRat::integer(-2));
        assert_eq!(QuadRat::sqrt3() * QuadRat::sqrt3(), QuadRat::integer(3));
        let inv = q(2, 1, 1, 1).inv().unwrap();
        assert_eq!(inv, q(2, 1, -1, 1));
        assert_eq!(inv * q(2, 1, 1, 1), QuadRat::one());
    }

    #[test]
    fn zero_divisor() {
        assert!(matches!(QuadRat::zero().inv(), Err(Error::ZeroDivisor)));
        assert!(matches!(
            QuadRat::one().apply(ArithOp::Div, &QuadRat::zero()),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn conjugation() {
        assert_eq!(q(1, 1, 2, 1).conj(), q(1, 1, -2, 1));
        assert_eq!(QuadRat::integer(5).conj(), QuadRat::integer(5));
        let a = q(1, 7, 1, 11);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn signs() {
        assert_eq!(q(2, 1, -1, 1).signum(), 1);
        assert_eq!(q(-5, 1, 3, 1).signum(), 1);
        assert_eq!(QuadRat::zero().signum(), 0);
        assert_eq!(q(5, 1, -3, 1).signum(), -1);
    }

    #[test]
    fn floors() {
        assert_eq!(QuadRat::sqrt3().floor(), BigInt::from(1));
        assert_eq!((-QuadRat::sqrt3()).floor(), BigInt::from(-2));
        assert_eq!(QuadRat::ratio(7, 2).floor(), BigInt::from(3));
        assert_eq!(q(5, 2, 1, 1).floor(), BigInt::from(4));
        assert_eq!(QuadRat::integer(-3).floor(), BigInt::from(-3));
    }

    #[test]
    fn membership() {
        let v = q(0, 1, 1, 6);
        assert!(v.member_of(LatticeId::InvTwoSqrt3G));
        assert!(!v.member_of(LatticeId::InvSqrt3G));
        assert!(QuadRat::ratio(1, 2).member_of(LatticeId::HalfG));
        assert!(!QuadRat::ratio(1, 2).member_of(LatticeId::G));
        assert!(lattice_member(&q(0, 1, 1, 3), LatticeId::InvSqrt3G));
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(q(5, 2, 7, 3).canon(LatticeId::G).value, q(1, 2, 1, 3));
        let two = q(0, 1, 2, 3).canon(LatticeId::G).value;
        let one = q(0, 1, 1, 3).canon(LatticeId::G).value;
        assert_eq!(two, q(0, 1, 2, 3));
        assert_ne!(two, one);
        assert!(mod_canon(&QuadRat::sqrt3(), LatticeId::InvSqrt3G).value.is_zero());
    }

    #[test]
    fn containment_table() {
        use LatticeId::*;
        assert!(HalfG.is_subset_of(InvTwoSqrt3G));
        assert!(InvSqrt3G.is_subset_of(InvTwoSqrt3G));
        assert!(!HalfG.is_subset_of(InvSqrt3G));
        assert!(!InvSqrt3G.is_subset_of(HalfG));
        for l in LatticeId::ALL {
            assert!(G.is_subset_of(l));
        }
    }

    #[test]
    fn parse_and_print() {
        let cases = [
            ("1/2+1/3√3", q(1, 2, 1, 3)),
            ("1/2 + 1/3 s", q(1, 2, 1, 3)),
            ("sqrt3/3", q(0, 1, 1, 3)),
            ("-√3", q(0, 1, -1, 1)),
            ("1/7+sqrt(3)/11", q(1, 7, 1, 11)),
            ("3", q(3, 1, 0, 1)),
            ("1/2-2*s", q(1, 2, -2, 1)),
            ("s+1/2", q(1, 2, 1, 1)),
        ];
        for (text, want) in &cases {
            assert_eq!(text.parse::<QuadRat>().unwrap(), *want, "{text}");
        }
        assert_eq!(q(1, 2, -1, 1).to_string(), "1/2-√3");
        assert_eq!(q(0, 1, 2, 3).to_string(), "2/3√3");
        for bad in ["", "1/0", "abc", "1+", "2√3x", "pi"] {
            assert!(bad.parse::<QuadRat>().is_err(), "{bad}");
        }
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-60i64..60, 1i64..40).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn quad() -> impl Strategy<Value = QuadRat> {
        (small_rat(), small_rat()).prop_map(|(p, q)| QuadRat::new(p, q))
    }

    fn ring_element() -> impl Strategy<Value = QuadRat> {
        (-20i64..20, -20i64..20).prop_map(|(a, b)| q(a, 1, b, 1))
    }

    fn lattice() -> impl Strategy<Value = LatticeId> {
        prop::sample::select(LatticeId::ALL.to_vec())
    }

    // √3 bracketed by 20-digit decimals.
    fn sqrt3_bounds() -> (BigRational, BigRational) {
        let den: BigInt = BigInt::from(10u64).pow(20);
        let lo: BigInt = "173205080756887729352".parse().unwrap();
        (
            BigRational::new(lo.clone(), den.clone()),
            BigRational::new(lo + 1, den),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn field_axioms(a in quad(), b in quad(), c in quad()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), QuadRat::one());
            }
        }

        #[test]
        fn sign_matches_interval(p in -10_000i64..10_000, pd in 1i64..500, s in -10_000i64..10_000, sd in 1i64..500) {
            let a = q(p, pd, s, sd);
            let (lo, hi) = sqrt3_bounds();
            let x = a.rational() + a.surd() * &lo;
            let y = a.rational() + a.surd() * &hi;
            prop_assume!(rat_sign(&x) == rat_sign(&y));
            prop_assert_eq!(a.signum(), rat_sign(&x));
        }

        #[test]
        fn floor_brackets(a in quad()) {
            let n = QuadRat::from_bigint(a.floor());
            prop_assert!((&a - &n).signum() >= 0);
            prop_assert!((&n + &QuadRat::one() - &a).signum() > 0);
        }

        #[test]
        fn canon_idempotent(a in quad(), l in lattice()) {
            let c = a.canon(l);
            prop_assert_eq!(c.value.canon(l), c.clone());
            prop_assert!((&a - &c.value).member_of(l));
        }

        #[test]
        fn canon_coset_invariant(a in quad(), g in ring_element(), l in lattice()) {
            let shift = g.checked_div(&l.scalar()).unwrap();
            prop_assert!(shift.member_of(l));
            prop_assert_eq!((&a + &shift).canon(l), a.canon(l));
        }

        #[test]
        fn containment_consistent(a in quad(), l in lattice()) {
            if a.member_of(LatticeId::G) {
                prop_assert!(a.member_of(l));
            }
            for m in LatticeId::ALL {
                if l.is_subset_of(m) && a.member_of(l) {
                    prop_assert!(a.member_of(m));
                }
            }
        }

        #[test]
        fn display_round_trips(a in quad()) {
            prop_assert_eq!(a.to_string().parse::<QuadRat>().unwrap(), a);
        }
    }
}
