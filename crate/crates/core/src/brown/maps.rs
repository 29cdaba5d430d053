//! Structural maps of the Brown algebra: the embedding of norm isometries,
//! the swap automorphism, and the automorphism checker.

use crate::albert::{self, dagger, is_isometry};
use crate::brown::{basis_product, star_matrix, Brown, DIM};
use crate::error::{Error, Result};
use crate::exact::{Field, Mat, Rng, Scalar};
use crate::verdict::Verdict;

const A0: usize = 1;
const B0: usize = 28;
const AD: usize = albert::DIM;

/// `(r,a,b,s) -> (r, rho a, rho^dagger b, s)` without checking that `rho`
/// is an isometry.
pub fn hat_unchecked<S: Scalar>(rho: &Mat<S>) -> Result<Mat<S>> {
    let f = rho.field();
    let d = dagger(rho)?;
    let mut m = Mat::zeros(f, DIM, DIM);
    m.set(0, 0, f.one());
    m.set(DIM - 1, DIM - 1, f.one());
    m.set_block(A0, A0, rho);
    m.set_block(B0, B0, &d);
    Ok(m)
}

/// The embedding of a norm isometry; rejects maps that are not isometries.
pub fn hat<S: Scalar>(rho: &Mat<S>, rng: &mut Rng) -> Result<Mat<S>> {
    match is_isometry(rho, rng) {
        Verdict::Accept => hat_unchecked(rho),
        v => Err(Error::Structural(format!("not a norm isometry: {v}"))),
    }
}

/// `x -> ((1+eps)/2) x + ((1-eps)/2) swap(x)` with `swap(r,a,b,s) = (s,b,a,r)`.
pub fn sigma<F: Field>(field: F, eps: i8) -> Mat<F::Elem> {
    assert!(eps == 1 || eps == -1, "eps must be 1 or -1");
    if eps == 1 {
        return Mat::identity(field, DIM);
    }
    Mat::from_fn(field, DIM, DIM, |i, j| {
        let src = match i {
            0 => DIM - 1,
            k if k == DIM - 1 => 0,
            k if k < B0 => k + AD,
            k => k - AD,
        };
        if src == j {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Checks `phi(1) = 1`, `phi(x*) = phi(x)*`, `phi(xy) = phi(x) phi(y)` on
/// all ordered basis pairs and on 64 random pairs.
pub fn is_automorphism<S: Scalar>(phi: &Mat<S>, rng: &mut Rng) -> Verdict {
    let f = phi.field();
    if phi.rows() != DIM || phi.cols() != DIM {
        return Verdict::reject("not a 56x56 map");
    }
    if phi.rank() < DIM {
        return Verdict::Singular;
    }
    let one = Brown::one(f);
    if Brown::apply(phi, &one) != one {
        return Verdict::reject("unit not fixed");
    }
    let st = star_matrix(f);
    if phi.mul(&st) != st.mul(phi) {
        return Verdict::reject("does not commute with the involution");
    }
    let cols: Vec<Brown<S>> = (0..DIM).map(|j| Brown::from_coords(&phi.col(j))).collect();
    let bad = crate::par::find_first(DIM, |i| {
        for j in 0..DIM {
            let mut lhs = f.zeros(DIM);
            for (k, v) in basis_product(f, i, j) {
                S::axpy(&mut lhs, &v, phi.col(k).as_slice());
            }
            if cols[i].mul(&cols[j]).coords() != lhs {
                return Some(j);
            }
        }
        None
    });
    if let Some((i, j)) = bad {
        return Verdict::reject(format!("product not preserved on basis pair ({i},{j})"));
    }
    for n in 0..64 {
        let (x, y) = (Brown::random(f, rng), Brown::random(f, rng));
        let lhs = Brown::apply(phi, &x.mul(&y));
        if lhs != Brown::apply(phi, &x).mul(&Brown::apply(phi, &y)) {
            return Verdict::reject(format!("product not preserved on random pair {n}"));
        }
    }
    Verdict::Accept
}

/// `eps` with `phi(j) = eps j`.
pub fn pi_of<S: Scalar>(phi: &Mat<S>) -> Result<i8> {
    let f = phi.field();
    let j = Brown::j(f);
    let img = Brown::apply(phi, &j);
    if img == j {
        Ok(1)
    } else if img == -j {
        Ok(-1)
    } else {
        Err(Error::Structural("malformed automorphism: image of j is not +-j".into()))
    }
}

/// For `psi` fixing `e` and `f` and preserving the grading, returns `rho`
/// with `psi = hat(rho)`; any other shape is a structural error.
pub fn split_hat<S: Scalar>(psi: &Mat<S>) -> Result<Mat<S>> {
    let f = psi.field();
    let (e, fe) = (Brown::e(f), Brown::f(f));
    if Brown::apply(psi, &e) != e || Brown::apply(psi, &fe) != fe {
        return Err(Error::Structural("map does not fix e and f".into()));
    }
    let rho = psi.block(A0, A0, AD, AD);
    let expected = hat_unchecked(&rho).map_err(|_| Error::Structural("a-block is singular".into()))?;
    if psi.block(B0, B0, AD, AD) != dagger(&rho)? {
        return Err(Error::Structural("b-block differs from the dagger of the a-block".into()));
    }
    if expected != *psi {
        return Err(Error::Structural("map is not block diagonal".into()));
    }
    Ok(rho)
}

/// `phi = hat(rho) o sigma(eps)`.
pub fn decompose<S: Scalar>(phi: &Mat<S>) -> Result<(Mat<S>, i8)> {
    let eps = pi_of(phi)?;
    let psi = phi.mul(&sigma(phi.field(), eps));
    let rho = split_hat(&psi)?;
    Ok((rho, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::Albert;
    use crate::exact::{Rational, RationalField};

    const F: RationalField = RationalField;

    #[test]
    fn sigma_basics() {
        assert!(sigma(F, 1).is_identity());
        let s = sigma(F, -1);
        assert!(s.mul(&s).is_identity());
        assert_eq!(pi_of(&s).unwrap(), -1);
        let mut rng = Rng::new(3);
        assert!(is_automorphism(&s, &mut rng).accepted());
        let (rho, eps) = decompose(&s).unwrap();
        assert!(rho.is_identity());
        assert_eq!(eps, -1);
    }

    #[test]
    fn hat_of_u_operator_is_automorphism() {
        let mut rng = Rng::new(4);
        let a: Albert<Rational> = Albert::diag(F.int(-1), F.int(-1), F.int(1));
        let h = hat(&a.u_op(), &mut rng).unwrap();
        assert!(is_automorphism(&h, &mut rng).accepted());
        assert_eq!(Brown::apply(&h, &Brown::j(F)), Brown::j(F));
        let phi = h.mul(&sigma(F, -1));
        let (rho, eps) = decompose(&phi).unwrap();
        assert_eq!(rho, a.u_op());
        assert_eq!(eps, -1);
    }

    #[test]
    fn non_isometry_rejected_by_hat() {
        let mut rng = Rng::new(5);
        let two = Mat::identity(F, AD).scale(&F.int(2));
        assert!(hat(&two, &mut rng).is_err());
        let h = hat_unchecked(&two).unwrap();
        assert!(matches!(is_automorphism(&h, &mut rng), Verdict::Reject(_)));
    }
}
