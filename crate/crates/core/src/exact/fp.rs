//! Prime-field residues for primes `5 <= p < 2^32`, so a product of two
//! residues fits in a `u64`. Slice kernels accumulate in `u128` and reduce
//! once, or use Shoup's precomputed quotient for fixed multipliers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::exact::rng::Rng;
use crate::exact::scalar::{Field, Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..(1u64 << 32)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn elem(self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }
}

impl Fp {
    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let v = if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { v: self.v * o.v % self.p, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

macro_rules! ref_ops {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl<'a> $tr<&'a Fp> for Fp {
            type Output = Fp;
            #[inline]
            fn $m(self, o: &'a Fp) -> Fp {
                $tr::$m(self, *o)
            }
        }
        impl<'a> $atr<&'a Fp> for Fp {
            #[inline]
            fn $am(&mut self, o: &'a Fp) {
                *self = $tr::$m(*self, *o);
            }
        }
    };
}

ref_ops!(Add, add, AddAssign, add_assign);
ref_ops!(Sub, sub, SubAssign, sub_assign);
ref_ops!(Mul, mul, MulAssign, mul_assign);

impl Field for PrimeField {
    type Elem = Fp;

    fn int(self, n: i64) -> Fp {
        let v = n.rem_euclid(self.p as i64) as u64;
        Fp { v, p: self.p }
    }

    fn frac(self, n: i64, d: i64) -> Fp {
        let d = self.int(d).inv().expect("denominator not invertible mod p");
        self.int(n) * d
    }

    fn random(self, rng: &mut Rng) -> Fp {
        Fp { v: rng.below(self.p), p: self.p }
    }

    fn mode(self) -> Mode {
        Mode::Prime(self.p)
    }

    fn parse(self, token: &str) -> Result<Fp> {
        let n: i64 = token
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue `{token}`")))?;
        Ok(self.int(n))
    }
}

#[inline]
fn shoup(w: u64, p: u64) -> u64 {
    (((w as u128) << 64) / p as u128) as u64
}

#[inline]
fn shoup_mul(x: u64, w: u64, wp: u64, p: u64) -> u64 {
    let q = ((x as u128 * wp as u128) >> 64) as u64;
    let r = x.wrapping_mul(w).wrapping_sub(q.wrapping_mul(p));
    if r >= p {
        r - p
    } else {
        r
    }
}

impl Scalar for Fp {
    type Field = PrimeField;

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn inv(&self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    fn dot(field: PrimeField, a: &[Fp], b: &[Fp]) -> Fp {
        debug_assert_eq!(a.len(), b.len());
        let mut acc: u128 = 0;
        for (x, y) in a.iter().zip(b) {
            acc += x.v as u128 * y.v as u128;
        }
        Fp { v: (acc % field.p as u128) as u64, p: field.p }
    }

    fn axpy(dst: &mut [Fp], c: &Fp, src: &[Fp]) {
        debug_assert_eq!(dst.len(), src.len());
        if c.v == 0 {
            return;
        }
        let (p, w) = (c.p, c.v);
        let wp = shoup(w, p);
        for (d, s) in dst.iter_mut().zip(src) {
            let t = d.v + shoup_mul(s.v, w, wp, p);
            d.v = if t >= p { t - p } else { t };
        }
    }

    fn sub_lincomb(dst: &mut [Fp], terms: &[(Fp, &[Fp])]) {
        let Some(p) = dst.first().map(|d| d.p) else {
            return;
        };
        let mut acc = vec![0u128; dst.len()];
        for (c, src) in terms {
            if c.v == 0 {
                continue;
            }
            let w = c.v as u128;
            for (a, s) in acc.iter_mut().zip(src.iter()) {
                *a += w * s.v as u128;
            }
        }
        for (d, a) in dst.iter_mut().zip(acc) {
            let r = (a % p as u128) as u64;
            d.v = if d.v >= r { d.v - r } else { d.v + p - r };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 2, 3, 4, 9, 1 << 32, 4_294_967_311] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        assert!(PrimeField::new(5).is_ok());
        assert!(PrimeField::new(4_294_967_291).is_ok());
    }

    #[test]
    fn inverses_and_fractions() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = Rng::new(3);
        for _ in 0..100 {
            let x = f.random(&mut rng);
            if !x.is_zero() {
                assert!((x * x.inv().unwrap()).is_one());
            }
        }
        assert_eq!(f.frac(1, 2) * f.int(2), f.one());
        assert_eq!(f.int(-1).value(), 1_000_002);
    }

    #[test]
    fn kernels_match_naive_arithmetic() {
        let f = PrimeField::new(4_294_967_291).unwrap();
        let mut rng = Rng::new(5);
        let a = f.random_vec(&mut rng, 40);
        let b = f.random_vec(&mut rng, 40);
        let c = f.random(&mut rng);
        let naive_dot = a.iter().zip(&b).fold(f.zero(), |s, (x, y)| s + *x * *y);
        assert_eq!(Fp::dot(f, &a, &b), naive_dot);

        let mut d = a.clone();
        Fp::axpy(&mut d, &c, &b);
        for i in 0..40 {
            assert_eq!(d[i], a[i] + c * b[i]);
        }

        let mut e = a.clone();
        Fp::sub_lincomb(&mut e, &[(c, &b), (c + c, &a)]);
        for i in 0..40 {
            assert_eq!(e[i], a[i] - c * b[i] - (c + c) * a[i]);
        }
    }
}
