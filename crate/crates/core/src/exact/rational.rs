//! Exact rationals with an `i64` fast path. Values that fit in a reduced
//! `i64` fraction stay inline; anything larger spills to `BigRational`.
//! The representation is canonical, so derived equality and hashing are
//! value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rng::Rng;
use crate::exact::scalar::{Field, Mode, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Reduced, positive denominator, numerator never `i64::MIN`.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(Box<BigRational>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

fn fits(n: i128) -> bool {
    n > i64::MIN as i128 && n <= i64::MAX as i128
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);

    pub fn int(n: i64) -> Self {
        if n == i64::MIN {
            return Rational::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rational::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.unsigned_abs().gcd(&d.unsigned_abs()) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(Box::new(BigRational::new_raw(n.into(), d.into())))
        }
    }

    /// `r` must already be reduced.
    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn is_small(&self) -> bool {
        matches!(self, Rational::Small(..))
    }

    /// `Some(n)` if the value is an integer fitting `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }

    fn add_impl(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(n1, d1), Rational::Small(n2, d2)) => {
                if *n2 == 0 {
                    return self.clone();
                }
                if *n1 == 0 {
                    return o.clone();
                }
                if d1 == d2 {
                    if *d1 == 1 {
                        return match n1.checked_add(*n2) {
                            Some(n) if n != i64::MIN => Rational::Small(n, 1),
                            _ => Rational::from_i128(*n1 as i128 + *n2 as i128, 1),
                        };
                    }
                    return Rational::from_i128(*n1 as i128 + *n2 as i128, *d1 as i128);
                }
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                Rational::from_i128(n1 * d2 + n2 * d1, d1 * d2)
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul_impl(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(n1, d1), Rational::Small(n2, d2)) => {
                if *n1 == 0 || *n2 == 0 {
                    return Rational::ZERO;
                }
                if *d1 == 1 && *d2 == 1 {
                    return match n1.checked_mul(*n2) {
                        Some(n) if n != i64::MIN => Rational::Small(n, 1),
                        _ => Rational::from_i128(*n1 as i128 * *n2 as i128, 1),
                    };
                }
                let g1 = n1.unsigned_abs().gcd(&d2.unsigned_abs()) as i64;
                let g2 = n2.unsigned_abs().gcd(&d1.unsigned_abs()) as i64;
                let n = (n1 / g1) as i128 * (n2 / g2) as i128;
                let d = (d1 / g2) as i128 * (d2 / g1) as i128;
                if fits(n) && fits(d) {
                    Rational::Small(n as i64, d as i64)
                } else {
                    Rational::Big(Box::new(BigRational::new_raw(n.into(), d.into())))
                }
            }
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg_impl(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $imp:ident, $post:expr) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                let o = $post(&o);
                self.$imp(&o)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                let o = $post(o);
                self.$imp(&o)
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $am(&mut self, o: &'a Rational) {
                let o = $post(o);
                *self = self.$imp(&o);
            }
        }
    };
}

fn same(r: &Rational) -> std::borrow::Cow<'_, Rational> {
    std::borrow::Cow::Borrowed(r)
}

fn negated(r: &Rational) -> std::borrow::Cow<'_, Rational> {
    std::borrow::Cow::Owned(r.neg_impl())
}

binop!(Add, add, AddAssign, add_assign, add_impl, same);
binop!(Sub, sub, SubAssign, sub_assign, add_impl, negated);
binop!(Mul, mul, MulAssign, mul_assign, mul_impl, same);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Field for RationalField {
    type Elem = Rational;

    fn int(self, n: i64) -> Rational {
        Rational::int(n)
    }

    fn frac(self, n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn random(self, rng: &mut Rng) -> Rational {
        let n = rng.range_i64(-9, 9);
        let d = rng.range_i64(1, 9);
        Rational::new(n, d)
    }

    fn mode(self) -> Mode {
        Mode::Rational
    }

    fn parse(self, token: &str) -> Result<Rational> {
        Rational::parse(token)
    }
}

impl Scalar for Rational {
    type Field = RationalField;

    fn field(&self) -> RationalField {
        RationalField
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) if *n < 0 => Some(Rational::Small(-d, -n)),
            Rational::Small(n, d) => Some(Rational::Small(*d, *n)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }

    fn is_integral(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.denom().is_one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn matches_big_rational_on_small_values() {
        let mut rng = Rng::new(11);
        for _ in 0..2000 {
            let (a, b, c, d) = (
                rng.range_i64(-50, 50),
                rng.range_i64(1, 50),
                rng.range_i64(-50, 50),
                rng.range_i64(1, 50),
            );
            let (x, y) = (Rational::new(a, b), Rational::new(c, d));
            assert_eq!((x.clone() + &y).to_big(), big(a, b) + big(c, d));
            assert_eq!((x.clone() - &y).to_big(), big(a, b) - big(c, d));
            assert_eq!((x.clone() * &y).to_big(), big(a, b) * big(c, d));
        }
    }

    #[test]
    fn overflow_spills_and_returns() {
        let m = Rational::int(i64::MAX);
        let sq = m.clone() * &m;
        assert!(!sq.is_small());
        let back = sq * &m.inv().unwrap();
        assert_eq!(back, m);
        assert!(back.is_small());
        let neg_min = Rational::int(i64::MIN);
        assert!(!neg_min.is_small());
        assert_eq!(-(-neg_min.clone()), neg_min);
    }

    #[test]
    fn canonical_forms_compare_equal() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::parse("6/8").unwrap(), Rational::new(3, 4));
        assert_eq!(Rational::parse("-7").unwrap().to_string(), "-7");
        assert_eq!(Rational::new(3, 4).to_string(), "3/4");
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn inverse_and_integrality() {
        let x = Rational::new(-3, 7);
        assert_eq!(x.inv().unwrap(), Rational::new(-7, 3));
        assert!(Rational::ZERO.inv().is_none());
        assert!(Rational::int(5).is_integral());
        assert!(!x.is_integral());
    }
}
