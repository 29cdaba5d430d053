//! The split Albert algebra of 3x3 Hermitian matrices over the split
//! octonions. An element `[a1, a2, a3, c1, c2, c3]` stands for
//! `[[a1, c3, ~c2], [~c3, a2, c1], [c2, ~c1, a3]]`, 27 coordinates in total.
//!
//! The cubic norm, adjoint and trace form are derived from the Jordan
//! product and the linear trace through characteristic-polynomial formulas.

use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{polarize, Field, Mat, Rational, RationalField, Rng, Scalar};
use crate::octonion::Octonion;
use crate::verdict::Verdict;

pub const DIM: usize = 27;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Albert<S: Scalar> {
    pub d: [S; 3],
    pub c: [Octonion<S>; 3],
}

impl<S: Scalar> Albert<S> {
    pub fn zero<F: Field<Elem = S>>(field: F) -> Self {
        let z = field.zero();
        let o = Octonion::zero(field);
        Albert { d: [z.clone(), z.clone(), z], c: [o.clone(), o.clone(), o] }
    }

    pub fn one<F: Field<Elem = S>>(field: F) -> Self {
        Self::diag(field.one(), field.one(), field.one())
    }

    pub fn diag(a1: S, a2: S, a3: S) -> Self {
        let o = Octonion::zero(a1.field());
        Albert { d: [a1, a2, a3], c: [o.clone(), o.clone(), o] }
    }

    pub fn scalar(k: S) -> Self {
        Self::diag(k.clone(), k.clone(), k)
    }

    pub fn basis<F: Field<Elem = S>>(field: F, i: usize) -> Self {
        Self::from_coords(&field.unit_vec(DIM, i))
    }

    pub fn random<F: Field<Elem = S>>(field: F, rng: &mut Rng) -> Self {
        Self::from_coords(&field.random_vec(rng, DIM))
    }

    /// Integer coordinates uniform in `[-bound, bound]`.
    pub fn random_int<F: Field<Elem = S>>(field: F, rng: &mut Rng, bound: i64) -> Self {
        let c: Vec<S> = (0..DIM).map(|_| field.small_int(rng, bound)).collect();
        Self::from_coords(&c)
    }

    pub fn field(&self) -> S::Field {
        self.d[0].field()
    }

    pub fn from_coords(c: &[S]) -> Self {
        assert_eq!(c.len(), DIM);
        Albert {
            d: [c[0].clone(), c[1].clone(), c[2].clone()],
            c: [
                Octonion::from_coords(&c[3..11]),
                Octonion::from_coords(&c[11..19]),
                Octonion::from_coords(&c[19..27]),
            ],
        }
    }

    pub fn coords(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(DIM);
        self.write_coords(&mut out);
        out
    }

    pub fn write_coords(&self, out: &mut Vec<S>) {
        out.extend(self.d.iter().cloned());
        for o in &self.c {
            o.write_coords(out);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(Scalar::is_zero) && self.c.iter().all(Octonion::is_zero)
    }

    pub fn scale(&self, k: &S) -> Self {
        Albert {
            d: [k.mul_ref(&self.d[0]), k.mul_ref(&self.d[1]), k.mul_ref(&self.d[2])],
            c: [self.c[0].scale(k), self.c[1].scale(k), self.c[2].scale(k)],
        }
    }

    /// Adds `k` times the unit.
    pub fn add_scalar(&self, k: &S) -> Self {
        let mut r = self.clone();
        for d in r.d.iter_mut() {
            *d += k;
        }
        r
    }

    /// Jordan product `(xy + yx) / 2`, expanded entrywise.
    pub fn jmul(&self, y: &Self) -> Self {
        let f = self.field();
        let half = f.frac(1, 2);
        let (x, y) = (self, y);
        let mut d = x.d.clone();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let off = x.c[j].norm_bil(&y.c[j]) + &x.c[k].norm_bil(&y.c[k]);
            d[i] = x.d[i].mul_ref(&y.d[i]) + &half.mul_ref(&off);
        }
        let c = [0, 1, 2].map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let s = y.c[i].scale(&(x.d[j].clone() + &x.d[k]));
            let t = x.c[i].scale(&(y.d[j].clone() + &y.d[k]));
            let u = (&y.c[j].mul(&x.c[k]) + &x.c[j].mul(&y.c[k])).conj();
            (&(&s + &t) + &u).scale(&half)
        });
        Albert { d, c }
    }

    pub fn square(&self) -> Self {
        self.jmul(self)
    }

    /// Linear trace `a1 + a2 + a3`.
    pub fn ltr(&self) -> S {
        self.d[0].clone() + &self.d[1] + &self.d[2]
    }

    /// `ltr(x o y)`, computed from the diagonal of the Jordan product only.
    pub fn trace_form(&self, y: &Self) -> S {
        let mut acc = self.d[0].mul_ref(&y.d[0]) + &self.d[1].mul_ref(&y.d[1]) + &self.d[2].mul_ref(&y.d[2]);
        for i in 0..3 {
            acc += &self.c[i].norm_bil(&y.c[i]);
        }
        acc
    }

    /// Cubic norm `(t^3 - 3 t ltr(x^2) + 2 ltr(x^3)) / 6`.
    pub fn norm(&self) -> S {
        let f = self.field();
        let t = self.ltr();
        let x2 = self.square();
        let t2 = x2.ltr();
        let t3 = self.trace_form(&x2);
        let n = t.clone() * &t * &t - &(f.int(3) * &t * &t2) + &(f.int(2) * &t3);
        n * &f.frac(1, 6)
    }

    fn sigma(&self, x2: &Self) -> S {
        let t = self.ltr();
        (t.clone() * &t - &x2.ltr()).half()
    }

    /// Adjoint `x^2 - ltr(x) x + sigma(x) 1`.
    pub fn sharp(&self) -> Self {
        let x2 = self.square();
        let s = self.sigma(&x2);
        (&x2 - &self.scale(&self.ltr())).add_scalar(&s)
    }

    /// Linearized adjoint `(x+y)# - x# - y#`, expanded through one Jordan
    /// product: `2 x o y - t(x) y - t(y) x + (t(x) t(y) - T(x, y)) 1`.
    pub fn cross(&self, y: &Self) -> Self {
        let f = self.field();
        let (tx, ty) = (self.ltr(), y.ltr());
        let xy = self.jmul(y);
        let k = tx.mul_ref(&ty) - &xy.ltr();
        let v = &(&xy.scale(&f.int(2)) - &y.scale(&tx)) - &self.scale(&ty);
        v.add_scalar(&k)
    }

    /// Coefficient of `t` in `N(x + t y)`, by interpolation at `t = 1, -1, 2`.
    pub fn ndir(&self, y: &Self) -> S {
        let f = self.field();
        let n0 = self.norm();
        let p1 = (self + y).norm() - &n0;
        let pm = (self - y).norm() - &n0;
        let p2 = (self + &y.scale(&f.int(2))).norm() - &n0;
        let a2 = (p1.clone() + &pm).half();
        let d = (p1 - &pm).half();
        let e = (p2 - &(f.int(4) * &a2)).half();
        let a3 = (e - &d) * &f.frac(1, 3);
        d - &a3
    }

    /// Full trilinear polarization of the norm; `nfull(x, x, x) = 6 N(x)`.
    pub fn nfull(&self, y: &Self, z: &Self) -> S {
        polarize(|v: &Albert<S>| v.norm(), &[self.clone(), y.clone(), z.clone()]).expect("degree 3")
    }

    /// Bilinear trace `N(1,x) N(1,y) - N(1,x,y)`.
    pub fn tbil(&self, y: &Self) -> S {
        let one = Self::one(self.field());
        one.ndir(self) * &one.ndir(y) - &one.nfull(self, y)
    }

    /// `T(x, y x z)`, equal to `nfull(x, y, z)`.
    pub fn trilinear(&self, y: &Self, z: &Self) -> S {
        self.trace_form(&y.cross(z))
    }

    /// Jordan U-operator `U_a(x) = 2 a o (a o x) - (a o a) o x` as a matrix.
    pub fn u_op(&self) -> Mat<S> {
        let f = self.field();
        let a2 = self.square();
        let two = f.int(2);
        let cols: Vec<Vec<S>> = (0..DIM)
            .map(|i| {
                let e = Self::basis(f, i);
                (&self.jmul(&self.jmul(&e)).scale(&two) - &a2.jmul(&e)).coords()
            })
            .collect();
        Mat::from_columns(f, DIM, &cols)
    }

    pub fn apply(m: &Mat<S>, x: &Self) -> Self {
        Self::from_coords(&m.mul_vec(&x.coords()))
    }
}

impl<S: Scalar> Add for &Albert<S> {
    type Output = Albert<S>;
    fn add(self, o: Self) -> Albert<S> {
        Albert {
            d: [
                self.d[0].clone() + &o.d[0],
                self.d[1].clone() + &o.d[1],
                self.d[2].clone() + &o.d[2],
            ],
            c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2]],
        }
    }
}

impl<S: Scalar> Add for Albert<S> {
    type Output = Albert<S>;
    fn add(self, o: Self) -> Albert<S> {
        &self + &o
    }
}

impl<S: Scalar> Sub for &Albert<S> {
    type Output = Albert<S>;
    fn sub(self, o: Self) -> Albert<S> {
        Albert {
            d: [
                self.d[0].clone() - &o.d[0],
                self.d[1].clone() - &o.d[1],
                self.d[2].clone() - &o.d[2],
            ],
            c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2]],
        }
    }
}

impl<S: Scalar> Sub for Albert<S> {
    type Output = Albert<S>;
    fn sub(self, o: Self) -> Albert<S> {
        &self - &o
    }
}

impl<S: Scalar> Neg for Albert<S> {
    type Output = Albert<S>;
    fn neg(self) -> Albert<S> {
        self.scale(&-self.field().one())
    }
}

struct Tables {
    gram: Vec<i64>,
    gram_inv: Vec<i64>,
    /// `nfull(e_i, e_j, e_k)` for `i <= j <= k`, keyed by `tri_index`.
    trilinear: Vec<i64>,
}

fn tri_index(i: usize, j: usize, k: usize) -> usize {
    (i * DIM + j) * DIM + k
}

fn to_i64(x: &Rational) -> i64 {
    x.to_i64().expect("integral table entry")
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let f = RationalField;
        let e: Vec<Albert<Rational>> = (0..DIM).map(|i| Albert::basis(f, i)).collect();
        let g = Mat::from_fn(f, DIM, DIM, |i, j| e[i].tbil(&e[j]));
        let ginv = g.invert().expect("trace form is nondegenerate");
        let mut trilinear = vec![0; DIM * DIM * DIM];
        for i in 0..DIM {
            for j in i..DIM {
                for k in j..DIM {
                    trilinear[tri_index(i, j, k)] = to_i64(&e[i].nfull(&e[j], &e[k]));
                }
            }
        }
        Tables {
            gram: g.data().iter().map(to_i64).collect(),
            gram_inv: ginv.data().iter().map(to_i64).collect(),
            trilinear,
        }
    })
}

/// Gram matrix of the bilinear trace in the coordinate basis. It is
/// integral and unimodular, so it is computed once and mapped into any field.
pub fn gram<F: Field>(field: F) -> Mat<F::Elem> {
    let t = tables();
    Mat::from_fn(field, DIM, DIM, |i, j| field.int(t.gram[i * DIM + j]))
}

pub fn gram_inv<F: Field>(field: F) -> Mat<F::Elem> {
    let t = tables();
    Mat::from_fn(field, DIM, DIM, |i, j| field.int(t.gram_inv[i * DIM + j]))
}

/// `rho^dagger = (G^-1 rho^T G)^-1`, so that `T(rho x, rho^dagger y) = T(x, y)`.
pub fn dagger<S: Scalar>(rho: &Mat<S>) -> Result<Mat<S>> {
    let f = rho.field();
    if rho.rows() != DIM || rho.cols() != DIM {
        return Err(Error::Dimension { expected: DIM, found: rho.rows() });
    }
    gram_inv(f).mul(&rho.transpose()).mul(&gram(f)).invert()
}

/// Checks that `rho` preserves the cubic norm: the trilinear form on all
/// symmetric basis triples plus the norm itself on 32 random points.
pub fn is_isometry<S: Scalar>(rho: &Mat<S>, rng: &mut Rng) -> Verdict {
    let f = rho.field();
    if rho.rows() != DIM || rho.cols() != DIM {
        return Verdict::reject("not a 27x27 map");
    }
    if rho.rank() < DIM {
        return Verdict::Singular;
    }
    let t = tables();
    let cols: Vec<Albert<S>> = (0..DIM).map(|j| Albert::from_coords(&rho.col(j))).collect();
    let bad = crate::par::find_first(DIM, |j| {
        for k in j..DIM {
            let cr = cols[j].cross(&cols[k]);
            for i in 0..=j {
                if cols[i].trace_form(&cr) != f.int(t.trilinear[tri_index(i, j, k)]) {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    if let Some((_, (i, j, k))) = bad {
        return Verdict::reject(format!("trilinear form changes on basis triple ({i},{j},{k})"));
    }
    for n in 0..32 {
        let x = Albert::random(f, rng);
        if Albert::apply(rho, &x).norm() != x.norm() {
            return Verdict::reject(format!("norm changes at random point {n}"));
        }
    }
    Verdict::Accept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PrimeField, RationalField};

    type A = Albert<Rational>;
    const F: RationalField = RationalField;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn unit_facts() {
        let one = A::one(F);
        assert_eq!(one.norm(), q(1));
        assert_eq!(one.sharp(), one);
        assert_eq!(one.tbil(&one), q(3));
        assert!(one.u_op().is_identity());
    }

    #[test]
    fn diagonal_evaluations() {
        let x = A::diag(q(2), q(3), q(5));
        let y = A::diag(q(7), q(-1), q(4));
        assert_eq!(x.norm(), q(30));
        assert_eq!(x.sharp(), A::diag(q(15), q(10), q(6)));
        assert_eq!(x.jmul(&y), A::diag(q(14), q(-3), q(20)));
        assert_eq!(x.tbil(&y), q(14 - 3 + 20));
    }

    #[test]
    fn basis_idempotents_are_orthogonal() {
        let e: Vec<A> = (0..3).map(|i| A::basis(F, i)).collect();
        for i in 0..3 {
            assert_eq!(e[i].square(), e[i]);
            for j in 0..3 {
                if i != j {
                    assert!(e[i].jmul(&e[j]).is_zero());
                }
            }
        }
    }

    #[test]
    fn gram_is_unimodular_and_symmetric() {
        let g = gram(F);
        assert_eq!(g, g.transpose());
        assert!(g.mul(&gram_inv(F)).is_identity());
        assert_eq!(g.rank(), DIM);
    }

    #[test]
    fn dagger_of_scaling() {
        let two = Mat::identity(F, DIM).scale(&q(2));
        let d = dagger(&two).unwrap();
        assert_eq!(d, Mat::identity(F, DIM).scale(&Rational::new(1, 2)));
        assert!(dagger(&Mat::zeros(F, DIM, DIM)).is_err());
    }

    #[test]
    fn isometry_verdicts() {
        let mut rng = Rng::new(5);
        assert!(is_isometry(&Mat::identity(F, DIM), &mut rng).accepted());
        let two = Mat::identity(F, DIM).scale(&q(2));
        assert!(matches!(is_isometry(&two, &mut rng), Verdict::Reject(_)));
        assert_eq!(is_isometry(&Mat::zeros(F, DIM, DIM), &mut rng), Verdict::Singular);
        let u = A::diag(q(-1), q(-1), q(1)).u_op();
        assert!(is_isometry(&u, &mut rng).accepted());
    }

    #[test]
    fn prime_field_adjoint_identity() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = Rng::new(6);
        for _ in 0..20 {
            let x = Albert::random(f, &mut rng);
            assert_eq!(x.sharp().sharp(), x.scale(&x.norm()));
        }
    }
}
