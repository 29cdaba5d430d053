//! The reduced Brown algebra on `[r, a(27), b(27), s]`: multiplication,
//! involution, triple product and operator matrices.

mod maps;
mod structure;

use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use crate::albert::Albert;
use crate::exact::{Field, Mat, Rational, RationalField, Rng, Scalar};

pub use maps::{decompose, hat, hat_unchecked, is_automorphism, pi_of, sigma, split_hat};
pub use structure::{conj_inverse, isotope, recover_structure, BrownStructure};

pub const DIM: usize = 56;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Brown<S: Scalar> {
    pub r: S,
    pub a: Albert<S>,
    pub b: Albert<S>,
    pub s: S,
}

impl<S: Scalar> Brown<S> {
    pub fn new(r: S, a: Albert<S>, b: Albert<S>, s: S) -> Self {
        Brown { r, a, b, s }
    }

    pub fn zero<F: Field<Elem = S>>(field: F) -> Self {
        Brown { r: field.zero(), a: Albert::zero(field), b: Albert::zero(field), s: field.zero() }
    }

    fn diagonal<F: Field<Elem = S>>(field: F, r: i64, s: i64) -> Self {
        Brown { r: field.int(r), a: Albert::zero(field), b: Albert::zero(field), s: field.int(s) }
    }

    /// `1_B = (1, 0, 0, 1)`.
    pub fn one<F: Field<Elem = S>>(field: F) -> Self {
        Self::diagonal(field, 1, 1)
    }

    /// `e = (1, 0, 0, 0)`.
    pub fn e<F: Field<Elem = S>>(field: F) -> Self {
        Self::diagonal(field, 1, 0)
    }

    /// `f = (0, 0, 0, 1)`.
    pub fn f<F: Field<Elem = S>>(field: F) -> Self {
        Self::diagonal(field, 0, 1)
    }

    /// `j = e - f = (1, 0, 0, -1)`.
    pub fn j<F: Field<Elem = S>>(field: F) -> Self {
        Self::diagonal(field, 1, -1)
    }

    pub fn from_a(a: Albert<S>) -> Self {
        let f = a.field();
        Brown { r: f.zero(), b: Albert::zero(f), a, s: f.zero() }
    }

    pub fn from_b(b: Albert<S>) -> Self {
        let f = b.field();
        Brown { r: f.zero(), a: Albert::zero(f), b, s: f.zero() }
    }

    pub fn basis<F: Field<Elem = S>>(field: F, i: usize) -> Self {
        Self::from_coords(&field.unit_vec(DIM, i))
    }

    pub fn random<F: Field<Elem = S>>(field: F, rng: &mut Rng) -> Self {
        Self::from_coords(&field.random_vec(rng, DIM))
    }

    pub fn random_int<F: Field<Elem = S>>(field: F, rng: &mut Rng, bound: i64) -> Self {
        let c: Vec<S> = (0..DIM).map(|_| field.small_int(rng, bound)).collect();
        Self::from_coords(&c)
    }

    pub fn field(&self) -> S::Field {
        self.r.field()
    }

    pub fn from_coords(c: &[S]) -> Self {
        assert_eq!(c.len(), DIM);
        Brown {
            r: c[0].clone(),
            a: Albert::from_coords(&c[1..28]),
            b: Albert::from_coords(&c[28..55]),
            s: c[55].clone(),
        }
    }

    pub fn coords(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(DIM);
        out.push(self.r.clone());
        self.a.write_coords(&mut out);
        self.b.write_coords(&mut out);
        out.push(self.s.clone());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero() && self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, k: &S) -> Self {
        Brown { r: k.mul_ref(&self.r), a: self.a.scale(k), b: self.b.scale(k), s: k.mul_ref(&self.s) }
    }

    /// `(r,a,b,s)(r',a',b',s') =
    /// (rr' + T(a,b'), ra' + s'a + b x b', r'b + sb' + a x a', ss' + T(a',b))`.
    pub fn mul(&self, o: &Self) -> Self {
        let r = self.r.mul_ref(&o.r) + &self.a.trace_form(&o.b);
        let a = &(&o.a.scale(&self.r) + &self.a.scale(&o.s)) + &self.b.cross(&o.b);
        let b = &(&self.b.scale(&o.r) + &o.b.scale(&self.s)) + &self.a.cross(&o.a);
        let s = self.s.mul_ref(&o.s) + &o.a.trace_form(&self.b);
        Brown { r, a, b, s }
    }

    /// The involution `(r,a,b,s)* = (s,a,b,r)`.
    pub fn star(&self) -> Self {
        Brown { r: self.s.clone(), a: self.a.clone(), b: self.b.clone(), s: self.r.clone() }
    }

    /// `{x,y,z} = (x y*) z + (z y*) x - (z x*) y`.
    pub fn triple(&self, y: &Self, z: &Self) -> Self {
        let ys = y.star();
        let t1 = self.mul(&ys).mul(z);
        let t2 = z.mul(&ys).mul(self);
        let t3 = z.mul(&self.star()).mul(y);
        &(&t1 + &t2) - &t3
    }

    /// `x o y = {x, 1, y}`.
    pub fn circle(&self, y: &Self) -> Self {
        self.triple(&Self::one(self.field()), y)
    }

    /// `xy + y(x - x*)`, the second description of the circle product.
    pub fn circle_alt(&self, y: &Self) -> Self {
        &self.mul(y) + &y.mul(&(self - &self.star()))
    }

    pub fn apply(m: &Mat<S>, x: &Self) -> Self {
        Self::from_coords(&m.mul_vec(&x.coords()))
    }
}

/// `V_{x,y}`: the map `z -> {x,y,z}`.
pub fn vop<S: Scalar>(x: &Brown<S>, y: &Brown<S>) -> Mat<S> {
    let f = x.field();
    let cols: Vec<Vec<S>> = (0..DIM).map(|i| x.triple(y, &Brown::basis(f, i)).coords()).collect();
    Mat::from_columns(f, DIM, &cols)
}

/// `U_{x,z}`: the map `y -> {x,y,z}`.
pub fn uop<S: Scalar>(x: &Brown<S>, z: &Brown<S>) -> Mat<S> {
    let f = x.field();
    let cols: Vec<Vec<S>> = (0..DIM).map(|i| x.triple(&Brown::basis(f, i), z).coords()).collect();
    Mat::from_columns(f, DIM, &cols)
}

/// Matrix of the involution.
pub fn star_matrix<F: Field>(field: F) -> Mat<F::Elem> {
    Mat::from_fn(field, DIM, DIM, |i, j| {
        let src = match i {
            0 => 55,
            55 => 0,
            k => k,
        };
        if src == j {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Matrix of left multiplication by `x`.
pub fn left_mul<S: Scalar>(x: &Brown<S>) -> Mat<S> {
    let f = x.field();
    let cols: Vec<Vec<S>> = (0..DIM).map(|i| x.mul(&Brown::basis(f, i)).coords()).collect();
    Mat::from_columns(f, DIM, &cols)
}

/// Matrix of right multiplication by `y`.
pub fn right_mul<S: Scalar>(y: &Brown<S>) -> Mat<S> {
    let f = y.field();
    let cols: Vec<Vec<S>> = (0..DIM).map(|i| Brown::basis(f, i).mul(y).coords()).collect();
    Mat::from_columns(f, DIM, &cols)
}

type SparseInt = Vec<(usize, i64)>;

/// Products of basis vectors; integral, so computed once and mapped into
/// any field. Entry `i * DIM + j` holds `e_i e_j`.
fn basis_products() -> &'static Vec<SparseInt> {
    static TABLE: OnceLock<Vec<SparseInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let f = RationalField;
        let e: Vec<Brown<Rational>> = (0..DIM).map(|i| Brown::basis(f, i)).collect();
        let mut out = Vec::with_capacity(DIM * DIM);
        for x in &e {
            for y in &e {
                let p = x.mul(y).coords();
                out.push(
                    p.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| (k, v.to_i64().expect("integral")))
                        .collect(),
                );
            }
        }
        out
    })
}

/// `e_i e_j` as `(index, value)` pairs.
pub fn basis_product<F: Field>(field: F, i: usize, j: usize) -> Vec<(usize, F::Elem)> {
    basis_products()[i * DIM + j].iter().map(|&(k, v)| (k, field.int(v))).collect()
}

impl<S: Scalar> Add for &Brown<S> {
    type Output = Brown<S>;
    fn add(self, o: Self) -> Brown<S> {
        Brown { r: self.r.clone() + &o.r, a: &self.a + &o.a, b: &self.b + &o.b, s: self.s.clone() + &o.s }
    }
}

impl<S: Scalar> Add for Brown<S> {
    type Output = Brown<S>;
    fn add(self, o: Self) -> Brown<S> {
        &self + &o
    }
}

impl<S: Scalar> Sub for &Brown<S> {
    type Output = Brown<S>;
    fn sub(self, o: Self) -> Brown<S> {
        Brown { r: self.r.clone() - &o.r, a: &self.a - &o.a, b: &self.b - &o.b, s: self.s.clone() - &o.s }
    }
}

impl<S: Scalar> Sub for Brown<S> {
    type Output = Brown<S>;
    fn sub(self, o: Self) -> Brown<S> {
        &self - &o
    }
}

impl<S: Scalar> Neg for Brown<S> {
    type Output = Brown<S>;
    fn neg(self) -> Brown<S> {
        self.scale(&-self.field().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type B = Brown<Rational>;
    const F: RationalField = RationalField;

    #[test]
    fn distinguished_products() {
        let (e, f, j, one) = (B::e(F), B::f(F), B::j(F), B::one(F));
        assert_eq!(e.mul(&e), e);
        assert!(e.mul(&f).is_zero());
        assert_eq!(j.mul(&j), one);
        assert_eq!(e.star(), f);
        assert_eq!(j.star(), -j.clone());
        assert_eq!(one.triple(&one, &one), one);
        assert_eq!(one.triple(&j, &one), j.scale(&F.int(-3)));
        assert_eq!(j.circle(&j), one.scale(&F.int(3)));
    }

    #[test]
    fn unit_and_circle_forms() {
        let mut rng = Rng::new(4);
        for _ in 0..20 {
            let (x, y) = (B::random(F, &mut rng), B::random(F, &mut rng));
            assert_eq!(B::one(F).mul(&x), x);
            assert_eq!(x.mul(&B::one(F)), x);
            assert_eq!(x.circle(&y), x.circle_alt(&y));
            assert_eq!(B::one(F).circle(&y), y);
        }
    }

    #[test]
    fn operator_matrices_match_elementwise() {
        let mut rng = Rng::new(5);
        let (x, y, z) = (B::random(F, &mut rng), B::random(F, &mut rng), B::random(F, &mut rng));
        let t = x.triple(&y, &z);
        assert_eq!(B::apply(&vop(&x, &y), &z), t);
        assert_eq!(B::apply(&uop(&x, &z), &y), t);
        assert_eq!(B::apply(&left_mul(&x), &y), x.mul(&y));
        assert_eq!(B::apply(&right_mul(&y), &x), x.mul(&y));
        assert_eq!(B::apply(&star_matrix(F), &x), x.star());
    }

    #[test]
    fn basis_products_match_multiplication() {
        for (i, j) in [(0, 0), (3, 30), (30, 3), (55, 12), (17, 40)] {
            let p = B::basis(F, i).mul(&B::basis(F, j)).coords();
            let mut q = F.zeros(DIM);
            for (k, v) in basis_product(F, i, j) {
                q[k] = v;
            }
            assert_eq!(p, q);
        }
    }
}
