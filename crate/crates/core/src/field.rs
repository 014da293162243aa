//! Exact scalars: prime fields GF(p) and the rationals.
//!
//! Every element carries the field it lives in, so mixing fields is caught at
//! the operation instead of silently producing garbage. The `std::ops`
//! implementations panic on a mismatch (a caller bug); the `try_*` methods
//! report it as an [`Error::FieldMismatch`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The field every scalar of a computation is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// GF(p) for a prime `2 <= p < 2^31`.
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    /// GF(p), rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime(p) => Some(p as u64),
            FieldSpec::Rationals => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match *self {
            FieldSpec::Prime(p) => FieldElement::Mod { value: v.rem_euclid(p as i64) as u32, modulus: p },
            FieldSpec::Rationals => FieldElement::Rational(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            FieldSpec::Prime(p) => {
                let reduce = |x: &BigInt| {
                    let r = x.mod_floor(&BigInt::from(p));
                    FieldElement::Mod { value: r.to_u32().unwrap(), modulus: p }
                };
                reduce(num).try_div(&reduce(den))
            }
            FieldSpec::Rationals => Ok(FieldElement::Rational(Box::new(BigRational::new(num.clone(), den.clone())))),
        }
    }

    /// Parses the textual element form: a decimal integer, or `a/b`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::parse(0, 0, format!("invalid field element {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => {
                (BigInt::from_str(n.trim()).map_err(|_| bad())?, BigInt::from_str(d.trim()).map_err(|_| bad())?)
            }
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den)
    }

    /// All elements of a finite field in canonical order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        match *self {
            FieldSpec::Prime(p) => Ok((0..p).map(|value| FieldElement::Mod { value, modulus: p }).collect()),
            FieldSpec::Rationals => Err(Error::InfiniteField),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// Accepts `Q`, `Fp<p>`, `GF(<p>)` and `Fp <p>`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("Fp"))
            .or_else(|| s.strip_prefix("GF"))
            .map(str::trim)
            .ok_or_else(|| Error::parse(0, 0, format!("unknown field {s:?}")))?;
        let p: u64 = digits.parse().map_err(|_| Error::parse(0, 0, format!("invalid modulus {digits:?}")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Extended Euclid on `(a, m)`, returning `a^-1 mod m` for `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u32, m: u32) -> u32 {
    let (mut r0, mut r1) = (m as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i64) as u32
}

/// A scalar in canonical form: residues in `[0, p)`, rationals reduced with
/// positive denominator. Equal elements compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Mod { value: u32, modulus: u32 },
    Rational(Box<BigRational>),
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Mod { modulus, .. } => FieldSpec::Prime(*modulus),
            FieldElement::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Mod { value, .. } => *value == 0,
            FieldElement::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Mod { value, .. } => *value == 1,
            FieldElement::Rational(q) => q.is_one(),
        }
    }

    /// The residue for GF(p) elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            FieldElement::Mod { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Mod { .. } => None,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::FieldMismatch(self.field(), other.field())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (FieldElement::Mod { value: a, modulus: p }, FieldElement::Mod { value: b, modulus: q }) if p == q => {
                let s = *a as u64 + *b as u64;
                Ok(FieldElement::Mod { value: (s % *p as u64) as u32, modulus: *p })
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(Box::new(a.as_ref() + b.as_ref())))
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg_ref())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (FieldElement::Mod { value: a, modulus: p }, FieldElement::Mod { value: b, modulus: q }) if p == q => {
                let s = *a as u64 * *b as u64;
                Ok(FieldElement::Mod { value: (s % *p as u64) as u32, modulus: *p })
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(Box::new(a.as_ref() * b.as_ref())))
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if self.field() != rhs.field() {
            return Err(self.mismatch(rhs));
        }
        self.try_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Mod { value, modulus } => {
                FieldElement::Mod { value: inv_mod(*value, *modulus), modulus: *modulus }
            }
            FieldElement::Rational(q) => FieldElement::Rational(Box::new(q.recip())),
        })
    }

    fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Mod { value, modulus } => {
                FieldElement::Mod { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
            FieldElement::Rational(q) => FieldElement::Rational(Box::new(-q.as_ref())),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Fused `self + a * b`, the inner step of elimination and products.
    #[inline]
    pub fn add_mul(&self, a: &Self, b: &Self) -> Self {
        match (self, a, b) {
            (
                FieldElement::Mod { value: s, modulus: p },
                FieldElement::Mod { value: x, modulus: q },
                FieldElement::Mod { value: y, modulus: r },
            ) if p == q && q == r => {
                let v = (*s as u64 + *x as u64 * *y as u64) % *p as u64;
                FieldElement::Mod { value: v as u32, modulus: *p }
            }
            _ => self + &(a * b),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Mod { value, .. } => write!(f, "{value}"),
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field operands must share a field")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn q(s: &str) -> FieldElement {
        FieldSpec::Rationals.parse_element(s).unwrap()
    }

    #[test]
    fn add_examples() {
        let f5 = gf(5);
        assert_eq!(f5.from_i64(3) + f5.from_i64(4), f5.from_i64(2));
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        let f2 = gf(2);
        assert!((f2.one() + f2.one()).is_zero());
    }

    #[test]
    fn inv_examples() {
        let f5 = gf(5);
        assert_eq!(f5.from_i64(3).inv().unwrap(), f5.from_i64(2));
        assert_eq!(q("-2/3").inv().unwrap(), q("-3/2"));
        let f7 = gf(7);
        assert_eq!(f7.one().inv().unwrap(), f7.one());
        assert_eq!(f7.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = gf(5).one();
        let b = gf(7).one();
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch(gf(5), gf(7))));
        assert!(a.try_mul(&q("1")).is_err());
    }

    #[test]
    #[should_panic(expected = "share a field")]
    fn mixed_fields_panic_in_operators() {
        let _ = gf(5).one() + gf(3).one();
    }

    #[test]
    fn primality_bounds() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(Error::NotPrime(91)));
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("3/-6").to_string(), "-1/2");
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(gf(5).parse_element("-1").unwrap().to_string(), "4");
        assert_eq!(gf(5).parse_element("1/2").unwrap(), gf(5).from_i64(3));
        assert!(gf(5).parse_element("1/5").is_err());
        assert!(gf(5).parse_element("x").is_err());
    }

    #[test]
    fn field_names() {
        assert_eq!("Fp2".parse::<FieldSpec>().unwrap(), gf(2));
        assert_eq!("GF(101)".parse::<FieldSpec>().unwrap(), gf(101));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("Fp4".parse::<FieldSpec>().is_err());
        assert_eq!(gf(3).to_string(), "GF(3)");
    }

    #[test]
    fn pow_and_fermat() {
        let f = gf(101);
        for v in 1..101 {
            assert!(f.from_i64(v).pow(100).is_one());
        }
        assert!(q("2").pow(10) == q("1024"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(field: FieldSpec) -> impl Strategy<Value = FieldElement> {
            match field {
                FieldSpec::Prime(p) => (0..p as i64).prop_map(move |v| field.from_i64(v)).boxed(),
                FieldSpec::Rationals => (-50i64..50, 1i64..20)
                    .prop_map(|(n, d)| FieldSpec::Rationals.from_ratio(&n.into(), &d.into()).unwrap())
                    .boxed(),
            }
        }

        fn triples() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
            prop_oneof![
                Just(FieldSpec::Prime(2)),
                Just(FieldSpec::Prime(5)),
                Just(FieldSpec::Prime(101)),
                Just(FieldSpec::Rationals)
            ]
            .prop_flat_map(|f| (element(f), element(f), element(f)))
        }

        proptest! {
            #[test]
            fn field_axioms((a, b, c) in triples()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert!((&a - &a).is_zero());
                prop_assert_eq!(c.add_mul(&a, &b), &c + &(&a * &b));
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn text_form_is_canonical((a, _, _) in triples()) {
                let f = a.field();
                let once = f.parse_element(&a.to_string()).unwrap();
                prop_assert_eq!(&once, &a);
                prop_assert_eq!(once.to_string(), a.to_string());
            }
        }
    }
}
