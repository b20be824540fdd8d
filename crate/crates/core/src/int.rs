//! Arbitrary precision integers with an inline fast path.
//!
//! Values that fit in an `i128` are stored inline; everything else spills to a
//! boxed [`BigInt`]. The representation is always normalized (a value is `Big`
//! only when it does not fit in `i128`), so derived equality and hashing agree
//! with numeric equality.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub struct Int(Repr);

#[derive(Clone)]
enum Repr {
    Small(i128),
    Big(Box<BigInt>),
}

use Repr::{Big, Small};

impl Int {
    pub const fn zero() -> Int {
        Int(Small(0))
    }

    pub const fn one() -> Int {
        Int(Small(1))
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i128() {
            Some(v) => Int(Small(v)),
            None => Int(Big(Box::new(b))),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Small(v) => BigInt::from(*v),
            Big(b) => (**b).clone(),
        }
    }

    fn as_big(&self) -> Cow<'_, BigInt> {
        match &self.0 {
            Small(v) => Cow::Owned(BigInt::from(*v)),
            Big(b) => Cow::Borrowed(b),
        }
    }

    pub(crate) fn to_i128(&self) -> Option<i128> {
        match &self.0 {
            Small(v) => Some(*v),
            Big(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Small(v) => i64::try_from(*v).ok(),
            Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Small(v) => *v < 0,
            Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Small(v) => *v > 0,
            Big(b) => b.is_positive(),
        }
    }

    pub fn is_even(&self) -> bool {
        match &self.0 {
            Small(v) => v & 1 == 0,
            Big(b) => b.is_even(),
        }
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_negative() {
            -1
        } else if self.is_zero() {
            0
        } else {
            1
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Number of bits in the magnitude (0 for zero).
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Small(v) => 128 - u64::from(v.unsigned_abs().leading_zeros()),
            Big(b) => b.bits(),
        }
    }

    /// Floor division. Panics on a zero divisor.
    pub fn div_floor(&self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (&self.0, &rhs.0) {
            if let (Some(x), Some(y)) = (narrow(*a), narrow(*b)) {
                if y != -1 {
                    return Int(Small(i128::from(Integer::div_floor(&x, &y))));
                }
            }
            if !(*a == i128::MIN && *b == -1) {
                return Int(Small(Integer::div_floor(a, b)));
            }
        }
        Int::from_big(self.as_big().div_floor(&rhs.as_big()))
    }

    /// Remainder of floor division; has the sign of `rhs`.
    pub fn mod_floor(&self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (&self.0, &rhs.0) {
            if *b == -1 {
                return Int::zero();
            }
            if let (Some(x), Some(y)) = (narrow(*a), narrow(*b)) {
                return Int(Small(i128::from(Integer::mod_floor(&x, &y))));
            }
            return Int(Small(Integer::mod_floor(a, b)));
        }
        Int::from_big(self.as_big().mod_floor(&rhs.as_big()))
    }

    /// Truncating division, intended for divisions known to be exact.
    pub fn div_exact(&self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (&self.0, &rhs.0) {
            if let (Some(x), Some(y)) = (narrow(*a), narrow(*b)) {
                if let Some(q) = x.checked_div(y) {
                    debug_assert_eq!(x % y, 0, "inexact division {x} / {y}");
                    return Int(Small(i128::from(q)));
                }
            }
            if let Some(q) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0, "inexact division {a} / {b}");
                return Int(Small(q));
            }
        }
        let (q, r) = self.as_big().div_rem(&rhs.as_big());
        debug_assert!(r.is_zero(), "inexact division");
        Int::from_big(q)
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (&self.0, &rhs.0) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                if let (Ok(mut u), Ok(mut v)) = (u64::try_from(x), u64::try_from(y)) {
                    while v != 0 {
                        (u, v) = (v, u % v);
                    }
                    x = u128::from(u);
                    break;
                }
                (x, y) = (y, x % y);
            }
            if let Ok(g) = i128::try_from(x) {
                return Int(Small(g));
            }
        }
        Int::from_big(self.as_big().gcd(&rhs.as_big()))
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*rhs = g >= 0`.
    ///
    /// When `self` divides `rhs` the cofactors are `(±1, 0)`.
    pub fn ext_gcd(&self, rhs: &Int) -> (Int, Int, Int) {
        if let (Small(a), Small(b)) = (&self.0, &rhs.0) {
            if let Some((g, s, t)) = ext_gcd_small(*a, *b) {
                return (Int(Small(g)), Int(Small(s)), Int(Small(t)));
            }
        }
        let (g, s, t) = ext_gcd_big(&self.as_big(), &rhs.as_big());
        (Int::from_big(g), Int::from_big(s), Int::from_big(t))
    }
}

fn narrow(v: i128) -> Option<i64> {
    i64::try_from(v).ok()
}

/// Same contract as [`Int::ext_gcd`] on machine integers; `None` on overflow.
pub(crate) fn ext_gcd_small(a: i128, b: i128) -> Option<(i128, i128, i128)> {
    if let (Some(x), Some(y)) = (narrow(a), narrow(b)) {
        if let Some((g, s, t)) = ext_gcd_word(x, y) {
            return Some((i128::from(g), i128::from(s), i128::from(t)));
        }
    }
    if a == 0 {
        return Some(if b < 0 {
            (b.checked_neg()?, 0, -1)
        } else {
            (b, 0, 1)
        });
    }
    if b.checked_rem_euclid(a)? == 0 {
        return Some(if a < 0 {
            (a.checked_neg()?, -1, 0)
        } else {
            (a, 1, 0)
        });
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = match (narrow(old_r), narrow(r)) {
            (Some(x), Some(y)) if y != -1 => i128::from(Integer::div_floor(&x, &y)),
            _ => old_r
                .checked_div_euclid(r)
                .map(|_| Integer::div_floor(&old_r, &r))?,
        };
        let next_r = old_r.checked_sub(q.checked_mul(r)?)?;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s.checked_sub(q.checked_mul(s)?)?;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t.checked_sub(q.checked_mul(t)?)?;
        old_t = std::mem::replace(&mut t, next_t);
    }
    Some(if old_r < 0 {
        (
            old_r.checked_neg()?,
            old_s.checked_neg()?,
            old_t.checked_neg()?,
        )
    } else {
        (old_r, old_s, old_t)
    })
}

fn ext_gcd_big(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() {
        return if b.is_negative() {
            (-b, BigInt::zero(), BigInt::from(-1))
        } else {
            (b.clone(), BigInt::zero(), BigInt::one())
        };
    }
    if b.mod_floor(a).is_zero() {
        return if a.is_negative() {
            (-a, BigInt::from(-1), BigInt::zero())
        } else {
            (a.clone(), BigInt::one(), BigInt::zero())
        };
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn ext_gcd_word(a: i64, b: i64) -> Option<(i64, i64, i64)> {
    if a == 0 {
        return Some(if b < 0 {
            (b.checked_neg()?, 0, -1)
        } else {
            (b, 0, 1)
        });
    }
    if b.checked_rem_euclid(a)? == 0 {
        return Some(if a < 0 {
            (a.checked_neg()?, -1, 0)
        } else {
            (a, 1, 0)
        });
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        old_r.checked_div(r)?;
        let q = Integer::div_floor(&old_r, &r);
        let next_r = old_r.checked_sub(q.checked_mul(r)?)?;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s.checked_sub(q.checked_mul(s)?)?;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t.checked_sub(q.checked_mul(t)?)?;
        old_t = std::mem::replace(&mut t, next_t);
    }
    Some(if old_r < 0 {
        (
            old_r.checked_neg()?,
            old_s.checked_neg()?,
            old_t.checked_neg()?,
        )
    } else {
        (old_r, old_s, old_t)
    })
}

fn add(a: &Int, b: &Int) -> Int {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        if let Some(v) = x.checked_add(*y) {
            return Int(Small(v));
        }
    }
    Int::from_big(&*a.as_big() + &*b.as_big())
}

fn sub(a: &Int, b: &Int) -> Int {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        if let Some(v) = x.checked_sub(*y) {
            return Int(Small(v));
        }
    }
    Int::from_big(&*a.as_big() - &*b.as_big())
}

fn mul(a: &Int, b: &Int) -> Int {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        if let (Some(u), Some(v)) = (narrow(*x), narrow(*y)) {
            return Int(Small(i128::from(u) * i128::from(v)));
        }
        if let Some(v) = x.checked_mul(*y) {
            return Int(Small(v));
        }
    }
    Int::from_big(&*a.as_big() * &*b.as_big())
}

macro_rules! binop {
    ($trait:ident, $method:ident, $f:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                $f(self, rhs)
            }
        }
        impl $trait<Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                $f(self, &rhs)
            }
        }
        impl $trait<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                $f(&self, rhs)
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                $f(&self, &rhs)
            }
        }
        impl $assign_trait<&Int> for Int {
            fn $assign_method(&mut self, rhs: &Int) {
                *self = $f(self, rhs);
            }
        }
        impl $assign_trait<Int> for Int {
            fn $assign_method(&mut self, rhs: Int) {
                *self = $f(self, &rhs);
            }
        }
    };
}

binop!(Add, add, add, AddAssign, add_assign);
binop!(Sub, sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, mul, MulAssign, mul_assign);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Small(v) => match v.checked_neg() {
                Some(n) => Int(Small(n)),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (&self.0, &other.0) {
            (Small(a), Small(b)) => a == b,
            (Big(a), Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Small(a), Small(b)) => a.cmp(b),
            // a normalized Big lies outside the i128 range
            (Small(_), Big(b)) => {
                if b.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Big(a), Small(_)) => {
                if a.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Big(a), Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Small(v) => {
                state.write_u8(0);
                v.hash(state);
            }
            Big(b) => {
                state.write_u8(1);
                b.hash(state);
            }
        }
    }
}

impl Default for Int {
    fn default() -> Int {
        Int::zero()
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Small(v) => fmt::Display::fmt(v, f),
            Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseIntError;

impl fmt::Display for ParseIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid integer literal")
    }
}

impl std::error::Error for ParseIntError {}

impl FromStr for Int {
    type Err = ParseIntError;

    fn from_str(s: &str) -> Result<Int, ParseIntError> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(ParseIntError);
        }
        if let Ok(v) = s.parse::<i128>() {
            return Ok(Int(Small(v)));
        }
        s.parse::<BigInt>()
            .map(Int::from_big)
            .map_err(|_| ParseIntError)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(v: $t) -> Int {
                Int(Small(i128::from(v)))
            }
        }
    )*};
}

from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64);

impl From<usize> for Int {
    fn from(v: usize) -> Int {
        Int(Small(v as i128))
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> BigInt {
        v.to_bigint()
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn big(s: &str) -> Int {
        s.parse().unwrap()
    }

    #[test]
    fn spills_and_returns_to_inline() {
        let a = Int::from(i128::MAX);
        let b = &a + &Int::one();
        assert!(matches!(b.0, Big(_)));
        let c = &b - &Int::one();
        assert!(matches!(c.0, Small(_)));
        assert_eq!(c, a);
    }

    #[test]
    fn mixed_ordering() {
        let huge = big("1000000000000000000000000000000000000000000");
        let neg_huge = -&huge;
        let small = Int::from(-5);
        assert!(small < huge);
        assert!(neg_huge < small);
        assert!(neg_huge < huge);
    }

    #[test]
    fn floor_division_signs() {
        assert_eq!(Int::from(-7).div_floor(&Int::from(2)), Int::from(-4));
        assert_eq!(Int::from(-7).mod_floor(&Int::from(2)), Int::from(1));
        assert_eq!(Int::from(7).mod_floor(&Int::from(-2)), Int::from(-1));
        let m = Int::from(i128::MIN);
        assert_eq!(m.div_floor(&Int::from(-1)), -&m);
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(2, 4), (12, -18), (-7, 3), (0, -5), (-5, 0), (17, 31)] {
            let (a, b) = (Int::from(a), Int::from(b));
            let (g, s, t) = a.ext_gcd(&b);
            assert_eq!(&s * &a + &t * &b, g);
            assert_eq!(g, a.gcd(&b));
            assert!(!g.is_negative());
        }
        let (g, s, t) = Int::from(2).ext_gcd(&Int::from(4));
        assert_eq!((g, s, t), (Int::from(2), Int::one(), Int::zero()));
    }

    #[test]
    fn parse_and_display() {
        let s = "-340282366920938463463374607431768211457";
        assert_eq!(big(s).to_string(), s);
        assert_eq!(big("+12").to_string(), "12");
        assert!("1.5".parse::<Int>().is_err());
        assert!("".parse::<Int>().is_err());
        assert!("-".parse::<Int>().is_err());
    }

    #[test]
    fn bits_of_extremes() {
        assert_eq!(Int::zero().bits(), 0);
        assert_eq!(Int::from(255).bits(), 8);
        assert_eq!(Int::from(-256).bits(), 9);
        assert_eq!(Int::from(i128::MIN).bits(), 128);
    }

    fn magnitudes() -> impl Strategy<Value = i128> {
        prop_oneof![
            any::<i8>().prop_map(i128::from),
            any::<i64>().prop_map(i128::from),
            (any::<i64>(), 0u32..64).prop_map(|(v, s)| i128::from(v) << s),
            any::<i128>(),
        ]
    }

    proptest! {
        #[test]
        fn machine_paths_agree_with_bigint(a in magnitudes(), b in magnitudes()) {
            let (x, y) = (Int::from(a), Int::from(b));
            let (p, q) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(x.gcd(&y).to_bigint(), p.gcd(&q));
            let (g, s, t) = x.ext_gcd(&y);
            prop_assert_eq!(g.to_bigint(), p.gcd(&q));
            prop_assert_eq!(&s * &x + &t * &y, g);
            prop_assert_eq!((&x * &y).to_bigint(), &p * &q);
            prop_assert_eq!((&x + &y).to_bigint(), &p + &q);
            if b != 0 {
                prop_assert_eq!(x.div_floor(&y).to_bigint(), Integer::div_floor(&p, &q));
                prop_assert_eq!(x.mod_floor(&y).to_bigint(), Integer::mod_floor(&p, &q));
                let m = &x * &y;
                prop_assert_eq!(m.div_exact(&y), x);
            }
        }
    }
}
