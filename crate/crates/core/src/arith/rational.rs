//! Exact rationals with an inline `i64` fast path.
//!
//! Almost every coefficient that shows up in seed patterns is a small
//! integer, so values are stored as a reduced `i64` fraction whenever they
//! fit and only spill to arbitrary precision when an operation overflows.
//! The representation is canonical: a value is `Big` only if it does not fit
//! the small form, which keeps derived equality and hashing sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ArithError;

#[derive(Clone, Debug)]
enum Repr {
    /// `den > 0`, `gcd(|num|, den) == 1`.
    Small { num: i64, den: i64 },
    /// Same invariants, and the value does not fit `Small`.
    Big { num: BigInt, den: BigInt },
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, Debug)]
pub struct ExactRational(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        ExactRational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(Repr::Small { num: n, den: 1 })
    }

    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize_big(num, den))
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if num == 0 {
            return Self::zero();
        }
        let g = gcd_i128(num, den);
        num /= g;
        den /= g;
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => ExactRational(Repr::Small { num: n, den: d }),
            _ => ExactRational(Repr::Big {
                num: BigInt::from(num),
                den: BigInt::from(den),
            }),
        }
    }

    fn normalize_big(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        match (num.to_i64(), den.to_i64()) {
            (Some(n), Some(d)) => ExactRational(Repr::Small { num: n, den: d }),
            _ => ExactRational(Repr::Big { num, den }),
        }
    }

    fn to_big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn numerator(&self) -> BigInt {
        self.to_big_parts().0
    }

    pub fn denominator(&self) -> BigInt {
        self.to_big_parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big { den, .. } => den.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big { num, .. } => num.sign() == Sign::Minus,
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big { num, den } => Self::normalize_big(den.clone(), num.clone()),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for ExactRational {
    fn from(n: i32) -> Self {
        Self::from_integer(n as i64)
    }
}

impl PartialEq for ExactRational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big { num: a, den: b }, Repr::Big { num: c, den: d }) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for ExactRational {}

impl Hash for ExactRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big { num, den } => {
                1u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
        }
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => {
                let (a, b) = self.to_big_parts();
                let (c, d) = other.to_big_parts();
                (a * d).cmp(&(c * b))
            }
        }
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &ExactRational) -> ExactRational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            if b == d {
                return ExactRational::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(n), Some(den)) = (x.checked_add(y), b.checked_mul(d)) {
                    return ExactRational::from_i128(n, den);
                }
            }
        }
        let (a, b) = self.to_big_parts();
        let (c, d) = rhs.to_big_parts();
        ExactRational::normalize_big(a * &d + c * &b, b * d)
    }
}

impl<'a> Neg for &'a ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        match &self.0 {
            Repr::Small { num, den } => ExactRational::from_i128(-(*num as i128), *den as i128),
            Repr::Big { num, den } => ExactRational::normalize_big(-num.clone(), den.clone()),
        }
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        -&self
    }
}

impl<'a> Sub<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: &ExactRational) -> ExactRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: &ExactRational) -> ExactRational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return ExactRational(Repr::Small { num: p, den: 1 });
                }
            }
            let n = (*a as i128) * (*c as i128);
            let den = (*b as i128) * (*d as i128);
            return ExactRational::from_i128(n, den);
        }
        let (a, b) = self.to_big_parts();
        let (c, d) = rhs.to_big_parts();
        ExactRational::normalize_big(a * c, b * d)
    }
}

impl<'a> Div<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    /// Panics on division by zero; use [`ExactRational::checked_div`] otherwise.
    fn div(self, rhs: &ExactRational) -> ExactRational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &ExactRational) -> ExactRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for ExactRational {
    /// `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big { num, den } if den.is_one() => write!(f, "{num}"),
            Repr::Big { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl FromStr for ExactRational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(format!("invalid rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        ExactRational::from_bigints(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, -7), ExactRational::zero());
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(-3, 9).to_string(), "-1/3");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(ExactRational::new(1, 0), Err(ArithError::DivisionByZero)));
        assert!(ExactRational::zero().recip().is_err());
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = ExactRational::from_integer(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big { .. }));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let s = &(&big + &big) - &big;
        assert_eq!(s, big);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-5", "7/3", "-1/2", "123456789012345678901234567891/2"] {
            let v: ExactRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("x".parse::<ExactRational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < q(-1, 3));
        let big = &ExactRational::from_integer(i64::MAX) * &ExactRational::from_integer(3);
        assert!(big > ExactRational::from_integer(i64::MAX));
    }
}
