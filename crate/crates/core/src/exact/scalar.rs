use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::rng::Rng;

/// Which scalar field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Rational,
    Prime(u64),
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Rational => write!(f, "rational"),
            Mode::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(Mode::Rational);
        }
        if let Some(rest) = s.strip_prefix("prime:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in mode `{s}`")))?;
            crate::exact::fp::PrimeField::new(p)?;
            return Ok(Mode::Prime(p));
        }
        Err(Error::Parse(format!("unknown mode `{s}`")))
    }
}

/// A field descriptor. Scalars are built from it so that zero and one are
/// always available, even for empty sums.
pub trait Field: Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Scalar<Field = Self>;

    fn int(self, n: i64) -> Self::Elem;

    /// `n / d`; panics if `d` is not invertible in the field.
    fn frac(self, n: i64, d: i64) -> Self::Elem;

    /// Uniform random scalar: numerator in [-9, 9] and denominator in [1, 9]
    /// for rationals, a uniform residue for prime fields.
    fn random(self, rng: &mut Rng) -> Self::Elem;

    fn mode(self) -> Mode;

    fn parse(self, token: &str) -> Result<Self::Elem>;

    fn zero(self) -> Self::Elem {
        self.int(0)
    }

    fn one(self) -> Self::Elem {
        self.int(1)
    }

    /// Uniform integer in `[-bound, bound]`.
    fn small_int(self, rng: &mut Rng, bound: i64) -> Self::Elem {
        self.int(rng.range_i64(-bound, bound))
    }

    fn zeros(self, n: usize) -> Vec<Self::Elem> {
        vec![self.zero(); n]
    }

    fn unit_vec(self, n: usize, i: usize) -> Vec<Self::Elem> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    fn random_vec(self, rng: &mut Rng, n: usize) -> Vec<Self::Elem> {
        (0..n).map(|_| self.random(rng)).collect()
    }
}

/// Exact scalar arithmetic. Binary operators take the right operand by
/// reference so big values are not cloned needlessly.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    type Field: Field<Elem = Self>;

    fn field(&self) -> Self::Field;

    fn is_zero(&self) -> bool;

    fn inv(&self) -> Option<Self>;

    /// True when the value is an integer. Prime-field residues always are.
    fn is_integral(&self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other
    }

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * &i)
    }

    fn half(&self) -> Self {
        let f = self.field();
        self.clone() * &f.frac(1, 2)
    }

    /// `sum a[i] * b[i]`.
    fn dot(field: Self::Field, a: &[Self], b: &[Self]) -> Self {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = field.zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc += &x.mul_ref(y);
            }
        }
        acc
    }

    /// `dst += c * src`.
    fn axpy(dst: &mut [Self], c: &Self, src: &[Self]) {
        debug_assert_eq!(dst.len(), src.len());
        if c.is_zero() {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d += &c.mul_ref(s);
            }
        }
    }

    /// `dst -= sum c_i * src_i`.
    fn sub_lincomb(dst: &mut [Self], terms: &[(Self, &[Self])]) {
        for (c, src) in terms {
            let neg = -c.clone();
            Self::axpy(dst, &neg, src);
        }
    }
}

pub fn add_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn sub_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn scale_vec<S: Scalar>(k: &S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| k.mul_ref(x)).collect()
}

pub fn is_zero_vec<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(Scalar::is_zero)
}
