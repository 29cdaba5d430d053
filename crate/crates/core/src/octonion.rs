//! Split octonions in Zorn vector-matrix form. An element is stored as
//! `[a, v1, v2, v3, w1, w2, w3, b]` for the matrix `[[a, v], [w, b]]`.

use std::ops::{Add, Neg, Sub};

use crate::exact::{Field, Rng, Scalar};

pub const DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion<S: Scalar> {
    pub a: S,
    pub v: [S; 3],
    pub w: [S; 3],
    pub b: S,
}

pub(crate) fn dot3<S: Scalar>(x: &[S; 3], y: &[S; 3]) -> S {
    x[0].mul_ref(&y[0]) + &x[1].mul_ref(&y[1]) + &x[2].mul_ref(&y[2])
}

pub(crate) fn cross3<S: Scalar>(x: &[S; 3], y: &[S; 3]) -> [S; 3] {
    [
        x[1].mul_ref(&y[2]) - &x[2].mul_ref(&y[1]),
        x[2].mul_ref(&y[0]) - &x[0].mul_ref(&y[2]),
        x[0].mul_ref(&y[1]) - &x[1].mul_ref(&y[0]),
    ]
}

fn lin3<S: Scalar>(k: &S, x: &[S; 3], l: &S, y: &[S; 3]) -> [S; 3] {
    [
        k.mul_ref(&x[0]) + &l.mul_ref(&y[0]),
        k.mul_ref(&x[1]) + &l.mul_ref(&y[1]),
        k.mul_ref(&x[2]) + &l.mul_ref(&y[2]),
    ]
}

fn map3<S: Scalar>(x: &[S; 3], f: impl Fn(&S) -> S) -> [S; 3] {
    [f(&x[0]), f(&x[1]), f(&x[2])]
}

fn zip3<S: Scalar>(x: &[S; 3], y: &[S; 3], f: impl Fn(&S, &S) -> S) -> [S; 3] {
    [f(&x[0], &y[0]), f(&x[1], &y[1]), f(&x[2], &y[2])]
}

impl<S: Scalar> Octonion<S> {
    pub fn zero<F: Field<Elem = S>>(field: F) -> Self {
        let z = field.zero();
        Octonion { a: z.clone(), v: [z.clone(), z.clone(), z.clone()], w: [z.clone(), z.clone(), z.clone()], b: z }
    }

    pub fn one<F: Field<Elem = S>>(field: F) -> Self {
        let mut o = Self::zero(field);
        o.a = field.one();
        o.b = field.one();
        o
    }

    pub fn scalar(k: S) -> Self {
        let mut o = Self::zero(k.field());
        o.a = k.clone();
        o.b = k;
        o
    }

    pub fn basis<F: Field<Elem = S>>(field: F, i: usize) -> Self {
        Self::from_coords(&field.unit_vec(DIM, i))
    }

    pub fn random<F: Field<Elem = S>>(field: F, rng: &mut Rng) -> Self {
        Self::from_coords(&field.random_vec(rng, DIM))
    }

    pub fn field(&self) -> S::Field {
        self.a.field()
    }

    pub fn from_coords(c: &[S]) -> Self {
        assert_eq!(c.len(), DIM);
        Octonion {
            a: c[0].clone(),
            v: [c[1].clone(), c[2].clone(), c[3].clone()],
            w: [c[4].clone(), c[5].clone(), c[6].clone()],
            b: c[7].clone(),
        }
    }

    pub fn coords(&self) -> Vec<S> {
        let mut c = Vec::with_capacity(DIM);
        self.write_coords(&mut c);
        c
    }

    pub fn write_coords(&self, out: &mut Vec<S>) {
        out.push(self.a.clone());
        out.extend(self.v.iter().cloned());
        out.extend(self.w.iter().cloned());
        out.push(self.b.clone());
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
            && self.b.is_zero()
            && self.v.iter().all(Scalar::is_zero)
            && self.w.iter().all(Scalar::is_zero)
    }

    /// Zorn product.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        let a = self.a.mul_ref(&o.a) + &dot3(&self.v, &o.w);
        let vw = cross3(&self.w, &o.w);
        let v = zip3(&lin3(&self.a, &o.v, &o.b, &self.v), &vw, |x, y| x.clone() - y);
        let vv = cross3(&self.v, &o.v);
        let w = zip3(&lin3(&o.a, &self.w, &self.b, &o.w), &vv, |x, y| x.clone() + y);
        let b = self.b.mul_ref(&o.b) + &dot3(&self.w, &o.v);
        Octonion { a, v, w, b }
    }

    /// The conjugate `[[b, -v], [-w, a]]`.
    pub fn conj(&self) -> Self {
        Octonion {
            a: self.b.clone(),
            v: map3(&self.v, |x| -x.clone()),
            w: map3(&self.w, |x| -x.clone()),
            b: self.a.clone(),
        }
    }

    /// Quadratic norm `ab - v.w`; multiplicative.
    pub fn norm(&self) -> S {
        self.a.mul_ref(&self.b) - &dot3(&self.v, &self.w)
    }

    /// Trace `a + b`.
    pub fn trace(&self) -> S {
        self.a.clone() + &self.b
    }

    /// Polar form `n(x + y) - n(x) - n(y)`.
    pub fn norm_bil(&self, o: &Self) -> S {
        self.a.mul_ref(&o.b) + &o.a.mul_ref(&self.b) - &dot3(&self.v, &o.w) - &dot3(&o.v, &self.w)
    }

    pub fn scale(&self, k: &S) -> Self {
        Octonion {
            a: k.mul_ref(&self.a),
            v: map3(&self.v, |x| k.mul_ref(x)),
            w: map3(&self.w, |x| k.mul_ref(x)),
            b: k.mul_ref(&self.b),
        }
    }
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<S: Scalar> Add for &Octonion<S> {
    type Output = Octonion<S>;
    fn add(self, o: Self) -> Octonion<S> {
        Octonion {
            a: self.a.clone() + &o.a,
            v: zip3(&self.v, &o.v, |x, y| x.clone() + y),
            w: zip3(&self.w, &o.w, |x, y| x.clone() + y),
            b: self.b.clone() + &o.b,
        }
    }
}

impl<S: Scalar> Sub for &Octonion<S> {
    type Output = Octonion<S>;
    fn sub(self, o: Self) -> Octonion<S> {
        Octonion {
            a: self.a.clone() - &o.a,
            v: zip3(&self.v, &o.v, |x, y| x.clone() - y),
            w: zip3(&self.w, &o.w, |x, y| x.clone() - y),
            b: self.b.clone() - &o.b,
        }
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-self.field().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Rational, RationalField};

    type O = Octonion<Rational>;

    fn rnd(rng: &mut Rng) -> O {
        O::random(RationalField, rng)
    }

    #[test]
    fn unit_and_conjugate_relations() {
        let f = RationalField;
        let mut rng = Rng::new(1);
        for _ in 0..50 {
            let x = rnd(&mut rng);
            assert_eq!(O::one(f).mul(&x), x);
            assert_eq!(x.mul(&O::one(f)), x);
            assert_eq!(x.mul(&x.conj()), O::scalar(x.norm()));
            let q = &(&x.mul(&x) - &x.scale(&x.trace())) + &O::scalar(x.norm());
            assert!(q.is_zero());
        }
    }

    #[test]
    fn composition_and_alternativity() {
        let mut rng = Rng::new(2);
        for _ in 0..100 {
            let (x, y) = (rnd(&mut rng), rnd(&mut rng));
            assert_eq!(x.mul(&y).norm(), x.norm() * &y.norm());
            assert_eq!(x.mul(&x).mul(&y), x.mul(&x.mul(&y)));
            assert_eq!(y.mul(&x).mul(&x), y.mul(&x.mul(&x)));
            assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
        }
    }

    #[test]
    fn not_associative() {
        let f = RationalField;
        let found = (0..DIM).any(|i| {
            (0..DIM).any(|j| {
                (0..DIM).any(|k| {
                    let (x, y, z) = (O::basis(f, i), O::basis(f, j), O::basis(f, k));
                    x.mul(&y).mul(&z) != x.mul(&y.mul(&z))
                })
            })
        });
        assert!(found);
    }

    #[test]
    fn polar_form_matches_norm() {
        let mut rng = Rng::new(3);
        for _ in 0..50 {
            let (x, y) = (rnd(&mut rng), rnd(&mut rng));
            assert_eq!(x.norm_bil(&y), (&x + &y).norm() - &x.norm() - &y.norm());
            assert_eq!(x.norm_bil(&O::one(RationalField)), x.trace());
        }
    }
}
