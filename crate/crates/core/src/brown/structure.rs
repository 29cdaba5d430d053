//! Brown algebra structures on the fixed 56-dimensional module, stored as
//! dense structure constants plus an involution and a unit. Isotopes are
//! rebuilt from their circle product alone.

use crate::brown::{basis_product, right_mul, uop, vop, Brown, DIM};
use crate::error::{Error, Result};
use crate::exact::{Field, Mat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrownStructure<S: Scalar> {
    field: S::Field,
    /// `table[(i * DIM + j) * DIM + k]` is the `e_k` coefficient of `e_i e_j`.
    table: Vec<S>,
    involution: Mat<S>,
    unit: Vec<S>,
}

impl<S: Scalar> BrownStructure<S> {
    /// The Brown algebra itself.
    pub fn standard<F: Field<Elem = S>>(field: F) -> Self {
        let mut table = field.zeros(DIM * DIM * DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                for (k, v) in basis_product(field, i, j) {
                    table[(i * DIM + j) * DIM + k] = v;
                }
            }
        }
        BrownStructure {
            field: field.zero().field(),
            table,
            involution: crate::brown::star_matrix(field),
            unit: Brown::one(field).coords(),
        }
    }

    /// Assembles a structure from raw parts, checking shapes only.
    pub fn from_parts(table: Vec<S>, involution: Mat<S>, unit: Vec<S>) -> Result<Self> {
        if table.len() != DIM * DIM * DIM {
            return Err(Error::Dimension { expected: DIM * DIM * DIM, found: table.len() });
        }
        if involution.rows() != DIM || involution.cols() != DIM {
            return Err(Error::Dimension { expected: DIM, found: involution.rows() });
        }
        if unit.len() != DIM {
            return Err(Error::Dimension { expected: DIM, found: unit.len() });
        }
        Ok(BrownStructure { field: involution.field(), table, involution, unit })
    }

    pub fn field(&self) -> S::Field {
        self.field
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn involution(&self) -> &Mat<S> {
        &self.involution
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &S {
        &self.table[(i * DIM + j) * DIM + k]
    }

    /// Nonzero structure constants as `(i, j, k, value)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        self.table.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(n, v)| {
            let k = n % DIM;
            let j = (n / DIM) % DIM;
            (n / (DIM * DIM), j, k, v)
        })
    }

    fn product_row(&self, i: usize, j: usize) -> &[S] {
        let base = (i * DIM + j) * DIM;
        &self.table[base..base + DIM]
    }

    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = self.field.zeros(DIM);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                S::axpy(&mut out, &xi.mul_ref(yj), self.product_row(i, j));
            }
        }
        out
    }

    pub fn conj(&self, x: &[S]) -> Vec<S> {
        self.involution.mul_vec(x)
    }

    /// Matrix of `y -> x y`.
    pub fn left_mat(&self, x: &[S]) -> Mat<S> {
        let mut cols = vec![self.field.zeros(DIM); DIM];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, col) in cols.iter_mut().enumerate() {
                S::axpy(col, xi, self.product_row(i, j));
            }
        }
        Mat::from_columns(self.field, DIM, &cols)
    }

    /// Matrix of `x -> x y`.
    pub fn right_mat(&self, y: &[S]) -> Mat<S> {
        let mut cols = vec![self.field.zeros(DIM); DIM];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (i, col) in cols.iter_mut().enumerate() {
                S::axpy(col, yj, self.product_row(i, j));
            }
        }
        Mat::from_columns(self.field, DIM, &cols)
    }

    /// Unit law on both sides, involutivity, and the antiautomorphism law
    /// `(xy)* = y* x*` in the matrix form `S L_x = R_{x*} S` on basis `x`.
    pub fn check_invariants(&self) -> Result<()> {
        let f = self.field;
        if !self.left_mat(&self.unit).is_identity() || !self.right_mat(&self.unit).is_identity() {
            return Err(Error::Structural("unit law fails".into()));
        }
        if !self.involution.mul(&self.involution).is_identity() {
            return Err(Error::Structural("involution is not involutive".into()));
        }
        let bad = crate::par::find_first(DIM, |i| {
            let e = f.unit_vec(DIM, i);
            let lhs = self.involution.mul(&self.left_mat(&e));
            let rhs = self.right_mat(&self.conj(&e)).mul(&self.involution);
            (lhs != rhs).then_some(())
        });
        if let Some((i, _)) = bad {
            return Err(Error::Structural(format!("involution is not an antiautomorphism at basis {i}")));
        }
        Ok(())
    }
}

/// Rebuilds a full structure from a unit and a bilinear circle product,
/// given through its values `circle[i][j] = e_i o e_j`. The involution is
/// `x* = 2x - x o u`; symmetric `x` multiply as `x y = x o y`, and for skew
/// `x`, `x y = x o w - 2 w o x` with `w = (y + 2 y*) / 3`.
pub fn recover_structure<S: Scalar>(unit: &Brown<S>, circle: &[Vec<Vec<S>>]) -> Result<BrownStructure<S>> {
    let f = unit.field();
    let u = unit.coords();
    let combine = |coeffs: &[S], j: usize, left: bool| -> Vec<S> {
        let mut out = f.zeros(DIM);
        for (a, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let v = if left { &circle[a][j] } else { &circle[j][a] };
                S::axpy(&mut out, c, v);
            }
        }
        out
    };
    for j in 0..DIM {
        if combine(&u, j, true) != f.unit_vec(DIM, j) {
            return Err(Error::Structural(format!("supplied product is not unital at basis {j}")));
        }
    }
    let two = f.int(2);
    let inv_cols: Vec<Vec<S>> = (0..DIM)
        .map(|i| {
            let cu = combine(&u, i, false);
            f.unit_vec(DIM, i).iter().zip(&cu).map(|(e, c)| two.mul_ref(e) - c).collect()
        })
        .collect();
    let involution = Mat::from_columns(f, DIM, &inv_cols);

    let half = f.frac(1, 2);
    let skew: Vec<Vec<S>> = (0..DIM)
        .map(|i| {
            let e = f.unit_vec(DIM, i);
            e.iter().zip(&inv_cols[i]).map(|(a, b)| (a.clone() - b) * &half).collect()
        })
        .collect();
    let Some(pivot_src) = skew.iter().position(|k| k.iter().any(|x| !x.is_zero())) else {
        return Err(Error::Structural("recovered involution has no skew part".into()));
    };
    let jv = skew[pivot_src].clone();
    let p = jv.iter().position(|x| !x.is_zero()).expect("nonzero");
    let jp_inv = jv[p].inv().expect("nonzero");
    let mut lambda = Vec::with_capacity(DIM);
    for k in &skew {
        let l = k[p].mul_ref(&jp_inv);
        if k.iter().zip(&jv).any(|(a, b)| *a != l.mul_ref(b)) {
            return Err(Error::Structural("skew part is not one-dimensional".into()));
        }
        lambda.push(l);
    }

    let third = f.frac(1, 3);
    let mut table = f.zeros(DIM * DIM * DIM);
    let circ_j_left: Vec<Vec<S>> = (0..DIM).map(|b| combine(&jv, b, true)).collect();
    let circ_j_right: Vec<Vec<S>> = (0..DIM).map(|b| combine(&jv, b, false)).collect();
    for j in 0..DIM {
        let ej = f.unit_vec(DIM, j);
        let w: Vec<S> = ej.iter().zip(&inv_cols[j]).map(|(a, b)| (a.clone() + &two.mul_ref(b)) * &third).collect();
        let mut bj = f.zeros(DIM);
        for (b, wb) in w.iter().enumerate() {
            if wb.is_zero() {
                continue;
            }
            S::axpy(&mut bj, wb, &circ_j_left[b]);
            S::axpy(&mut bj, &(-two.mul_ref(wb)), &circ_j_right[b]);
        }
        let aj = &circ_j_left[j];
        let corr: Vec<S> = bj.iter().zip(aj).map(|(b, a)| b.clone() - a).collect();
        for i in 0..DIM {
            let base = (i * DIM + j) * DIM;
            let dst = &mut table[base..base + DIM];
            dst.clone_from_slice(&circle[i][j]);
            S::axpy(dst, &lambda[i], &corr);
        }
    }
    Ok(BrownStructure { field: involution.field(), table, involution, unit: u })
}

/// `w^ = U_w^{-1}(w)`, provided `U_w` is invertible; also checks
/// `V_{w,w^} = V_{w^,w} = Id`.
pub fn conj_inverse<S: Scalar>(w: &Brown<S>) -> Result<Brown<S>> {
    let u = uop(w, w);
    let v = match u.solve(&w.coords()) {
        Ok(v) => Brown::from_coords(&v),
        Err(Error::Singular) => return Err(Error::NotInvertible("U operator is singular".into())),
        Err(e) => return Err(e),
    };
    if !vop(w, &v).is_identity() || !vop(&v, w).is_identity() {
        return Err(Error::Structural("conjugate inverse fails V = Id".into()));
    }
    Ok(v)
}

/// Circle table `{e_i, w, e_j}` of the isotope by `w`.
fn isotope_circle<S: Scalar>(w: &Brown<S>) -> Vec<Vec<Vec<S>>> {
    let f = w.field();
    let ws = w.star();
    let p: Vec<Brown<S>> = (0..DIM).map(|a| Brown::basis(f, a).mul(&ws)).collect();
    let rw = right_mul(w);
    let pe: Vec<Vec<Vec<S>>> = crate::par::map_range(DIM, |a| {
        (0..DIM).map(|b| p[a].mul(&Brown::basis(f, b)).coords()).collect()
    });
    crate::par::map_range(DIM, |i| {
        (0..DIM)
            .map(|j| {
                let mut out: Vec<S> = pe[i][j].iter().zip(&pe[j][i]).map(|(x, y)| x.clone() + y).collect();
                let js = if i == 0 { 55 } else if i == 55 { 0 } else { i };
                for (k, v) in basis_product(f, j, js) {
                    let col = rw.col(k);
                    S::axpy(&mut out, &(-v), &col);
                }
                out
            })
            .collect()
    })
}

/// The principal isotope with circle product `x o_w y = {x, w, y}`.
pub fn isotope<S: Scalar>(w: &Brown<S>) -> Result<BrownStructure<S>> {
    let unit = conj_inverse(w)?;
    recover_structure(&unit, &isotope_circle(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Rational, RationalField, Rng};

    const F: RationalField = RationalField;

    #[test]
    fn recovers_original_product_from_circle() {
        let one = Brown::one(F);
        let circle: Vec<Vec<Vec<Rational>>> = (0..DIM)
            .map(|i| (0..DIM).map(|j| Brown::basis(F, i).circle(&Brown::basis(F, j)).coords()).collect())
            .collect();
        let s = recover_structure(&one, &circle).unwrap();
        assert_eq!(s, BrownStructure::standard(F));
    }

    #[test]
    fn standard_structure_invariants() {
        let s = BrownStructure::standard(F);
        s.check_invariants().unwrap();
        let mut rng = Rng::new(1);
        let (x, y) = (Brown::random(F, &mut rng), Brown::random(F, &mut rng));
        assert_eq!(s.mul(&x.coords(), &y.coords()), x.mul(&y).coords());
    }

    #[test]
    fn conj_inverse_cases() {
        assert_eq!(conj_inverse(&Brown::one(F)).unwrap(), Brown::one(F));
        assert!(matches!(conj_inverse(&Brown::e(F)), Err(Error::NotInvertible(_))));
        assert!(matches!(isotope(&Brown::e(F)), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn isotope_of_unit_is_base() {
        assert_eq!(isotope(&Brown::one(F)).unwrap(), BrownStructure::standard(F));
    }

    #[test]
    fn non_unital_product_rejected() {
        let circle: Vec<Vec<Vec<Rational>>> = (0..DIM)
            .map(|i| (0..DIM).map(|j| Brown::basis(F, i).circle(&Brown::basis(F, j)).coords()).collect())
            .collect();
        assert!(recover_structure(&Brown::e(F), &circle).is_err());
    }
}
