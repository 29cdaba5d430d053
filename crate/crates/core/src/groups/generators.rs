//! Explicit group elements: norm isometries from U-operators, translations
//! in the invariance group, exponentials of nilpotent maps, and the
//! reconstruction of an isometry from a map fixing `e` and `f`.

use crate::albert::{self, is_isometry, Albert};
use crate::brown::{self, sigma, split_hat, Brown};
use crate::error::{Error, Result};
use crate::exact::{Field, Mat, Rng, Scalar};
use crate::fts::{is_invariance, InvarianceCheck};
use crate::verdict::Verdict;

const RESAMPLE_BUDGET: usize = 10_000;

/// An integral Albert element with cubic norm `1` or `-1`. Off-diagonal
/// entries and two diagonal entries are drawn from `[-1, 1]`; the norm is
/// affine in the first diagonal entry, which is solved for once the slope is
/// a unit.
pub fn unit_norm_element<F: Field>(field: F, rng: &mut Rng) -> Result<Albert<F::Elem>> {
    let one = field.one();
    for _ in 0..RESAMPLE_BUDGET {
        let mut a = Albert::random_int(field, rng, 1);
        a.d[0] = field.zero();
        let e = a.norm();
        a.d[0] = one.clone();
        let slope = a.norm() - &e;
        if slope != one && slope != -one.clone() {
            continue;
        }
        let target = if rng.coin() { one.clone() } else { -one.clone() };
        a.d[0] = (target - &e) * &slope.inv().expect("unit");
        return Ok(a);
    }
    Err(Error::Structural("resampling budget exceeded for a unit-norm element".into()))
}

/// Relabelling of the three diagonal slots `1 -> 2 -> 3 -> 1`.
pub fn cyclic_symmetry<F: Field>(field: F) -> Mat<F::Elem> {
    let src = |i: usize| -> usize {
        if i < 3 {
            (i + 2) % 3
        } else {
            let (block, off) = ((i - 3) / 8, (i - 3) % 8);
            3 + ((block + 2) % 3) * 8 + off
        }
    };
    Mat::from_fn(field, albert::DIM, albert::DIM, |i, j| if src(i) == j { field.one() } else { field.zero() })
}

/// A product of `factors` U-operators of unit-norm elements.
pub fn isometry_product<F: Field>(field: F, rng: &mut Rng, factors: usize) -> Result<Mat<F::Elem>> {
    let mut m = Mat::identity(field, albert::DIM);
    for _ in 0..factors {
        m = unit_norm_element(field, rng)?.u_op().mul(&m);
    }
    Ok(m)
}

/// A random norm isometry: 1 to 4 U-operator factors, then a random power
/// of the cyclic symmetry.
pub fn gen_isometry<F: Field>(field: F, rng: &mut Rng) -> Result<Mat<F::Elem>> {
    let factors = rng.range_i64(1, 4) as usize;
    let mut m = isometry_product(field, rng, factors)?;
    let cyc = cyclic_symmetry(field);
    for _ in 0..rng.below(3) {
        m = cyc.mul(&m);
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TranslationFamily {
    /// `(r, a + r c, b + e1 a x c + e2 r c#, s + e3 T(b,c) + e4 T(a,c#) + e5 r N(c))`
    RDriven,
    /// `(r + e3 T(b,c) + e4 T(a,c#) + e5 s N(c), a + s c, b + e1 a x c + e2 s c#, s)`
    SDriven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TranslationSigns {
    pub family: TranslationFamily,
    pub eps: [i8; 5],
}

impl std::fmt::Display for TranslationSigns {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fam = match self.family {
            TranslationFamily::RDriven => "r-driven",
            TranslationFamily::SDriven => "s-driven",
        };
        let e: Vec<String> = self.eps.iter().map(|e| format!("{e:+}")).collect();
        write!(f, "{fam} [{}]", e.join(" "))
    }
}

/// Frozen result of [`calibrate_translation`].
pub const TRANSLATION_SIGNS: TranslationSigns = TranslationSigns {
    family: TranslationFamily::SDriven,
    eps: [1, 1, 1, 1, 1],
};

pub fn translate_with<S: Scalar>(signs: TranslationSigns, c: &Albert<S>, x: &Brown<S>) -> Brown<S> {
    let f = c.field();
    let e = signs.eps.map(|v| f.int(v as i64));
    let cs = c.sharp();
    let (ac, tbc, tacs, nc) = (x.a.cross(c), x.b.trace_form(c), x.a.trace_form(&cs), c.norm());
    let drive = match signs.family {
        TranslationFamily::RDriven => &x.r,
        TranslationFamily::SDriven => &x.s,
    };
    let da = c.scale(drive);
    let db = &ac.scale(&e[0]) + &cs.scale(&(e[1].mul_ref(drive)));
    let dscalar = e[2].mul_ref(&tbc) + &e[3].mul_ref(&tacs) + &(e[4].mul_ref(drive) * &nc);
    let (a, b) = (&x.a + &da, &x.b + &db);
    match signs.family {
        TranslationFamily::RDriven => Brown::new(x.r.clone(), a, b, x.s.clone() + &dscalar),
        TranslationFamily::SDriven => Brown::new(x.r.clone() + &dscalar, a, b, x.s.clone()),
    }
}

pub fn translation_map_with<S: Scalar>(signs: TranslationSigns, c: &Albert<S>) -> Mat<S> {
    let f = c.field();
    let cols: Vec<Vec<S>> = (0..brown::DIM)
        .map(|i| translate_with(signs, c, &Brown::basis(f, i)).coords())
        .collect();
    Mat::from_columns(f, brown::DIM, &cols)
}

/// The calibrated translation by `c`; `translation_map(c)(1_B)` has
/// a-component `c`.
pub fn translation_map<S: Scalar>(c: &Albert<S>) -> Mat<S> {
    translation_map_with(TRANSLATION_SIGNS, c)
}

/// The translation conjugated by the swap: it moves `b` by `r d`.
pub fn opposite_translation_map<S: Scalar>(d: &Albert<S>) -> Mat<S> {
    let sw = sigma(d.field(), -1);
    sw.mul(&translation_map(d)).mul(&sw)
}

/// `X(r, a, b, s) = (T(b, c), s c, a x c, 0)`; nilpotent with
/// `exp X = translation_map(c)`.
pub fn translation_generator<S: Scalar>(c: &Albert<S>) -> Mat<S> {
    let f = c.field();
    let cols: Vec<Vec<S>> = (0..brown::DIM)
        .map(|i| {
            let x = Brown::basis(f, i);
            Brown::new(x.b.trace_form(c), c.scale(&x.s), x.a.cross(c), f.zero()).coords()
        })
        .collect();
    Mat::from_columns(f, brown::DIM, &cols)
}

pub fn opposite_translation_generator<S: Scalar>(d: &Albert<S>) -> Mat<S> {
    let sw = sigma(d.field(), -1);
    sw.mul(&translation_generator(d)).mul(&sw)
}

/// All `64` sign assignments over both families, r-driven first.
pub fn translation_candidates() -> Vec<TranslationSigns> {
    let mut out = Vec::with_capacity(64);
    for family in [TranslationFamily::RDriven, TranslationFamily::SDriven] {
        for mask in 0u32..32 {
            let eps = [0, 1, 2, 3, 4].map(|i| if mask & (1 << i) == 0 { 1 } else { -1 });
            out.push(TranslationSigns { family, eps });
        }
    }
    out
}

/// Searches the candidate families for signs whose translations pass the
/// invariance check for three random witnesses.
pub fn calibrate_translation<F: Field>(field: F, rng: &mut Rng) -> Result<TranslationSigns> {
    let witnesses: Vec<Albert<F::Elem>> = (0..3)
        .map(|_| loop {
            let c = Albert::random_int(field, rng, 2);
            if !c.is_zero() {
                break c;
            }
        })
        .collect();
    let screen = InvarianceCheck { random_tuples: 40, exhaustive: false };
    for signs in translation_candidates() {
        let maps: Vec<Mat<F::Elem>> = witnesses.iter().map(|c| translation_map_with(signs, c)).collect();
        if maps.iter().all(|m| is_invariance(m, screen, rng).accepted())
            && maps.iter().all(|m| is_invariance(m, InvarianceCheck::default(), rng).accepted())
        {
            return Ok(signs);
        }
    }
    Err(Error::Calibration("no translation sign assignment preserves b and Psi".into()))
}

/// Smallest `k` with `x^k = 0`, if at most the matrix size.
pub fn nilpotency_index<S: Scalar>(x: &Mat<S>) -> Option<usize> {
    let mut p = x.clone();
    for k in 1..=x.rows() {
        if p.is_zero() {
            return Some(k);
        }
        p = p.mul(x);
    }
    None
}

/// `sum_i x^i / i!` for nilpotent `x`.
pub fn exp_nilpotent<S: Scalar>(x: &Mat<S>) -> Result<Mat<S>> {
    let f = x.field();
    if !x.is_square() {
        return Err(Error::NotNilpotent);
    }
    let k = nilpotency_index(x).ok_or(Error::NotNilpotent)?;
    let mut out = Mat::identity(f, x.rows());
    let mut term = Mat::identity(f, x.rows());
    for i in 1..k {
        let inv = f
            .int(i as i64)
            .inv()
            .ok_or_else(|| Error::NotInvertible(format!("{i} in the scalar field")))?;
        term = term.mul(x).scale(&inv);
        out = out.add(&term);
    }
    Ok(out)
}

/// For `phi` fixing `e` and `f`, the isometry `rho` with `phi = hat(rho)`.
pub fn reconstruct_from_ef<S: Scalar>(phi: &Mat<S>, rng: &mut Rng) -> Result<Mat<S>> {
    let rho = split_hat(phi)?;
    match is_isometry(&rho, rng) {
        Verdict::Accept => Ok(rho),
        v => Err(Error::Structural(format!("extracted a-block is not an isometry: {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brown::hat;
    use crate::exact::{Rational, RationalField};
    use crate::fts::{is_inv1, sq_contains};
    use crate::groups::{lie_defect, LieTarget};

    const F: RationalField = RationalField;
    const QUICK: InvarianceCheck = InvarianceCheck { random_tuples: 80, exhaustive: false };

    #[test]
    fn unit_norm_elements_and_isometries() {
        let mut rng = Rng::new(11);
        for _ in 0..5 {
            let a = unit_norm_element(F, &mut rng).unwrap();
            let n = a.norm();
            assert!(n == F.int(1) || n == F.int(-1));
        }
        assert!(isometry_product(F, &mut rng, 0).unwrap().is_identity());
        assert!(is_isometry(&cyclic_symmetry(F), &mut rng).accepted());
        let rho = gen_isometry(F, &mut rng).unwrap();
        assert!(is_isometry(&rho, &mut rng).accepted());
        let h = hat(&rho, &mut rng).unwrap();
        assert!(is_inv1(&h, QUICK, &mut rng).accepted());
        assert_eq!(reconstruct_from_ef(&h, &mut rng).unwrap(), rho);
    }

    #[test]
    fn translations() {
        let mut rng = Rng::new(12);
        assert!(translation_map(&Albert::<Rational>::zero(F)).is_identity());
        let c = Albert::random_int(F, &mut rng, 2);
        let t = translation_map(&c);
        assert!(is_invariance(&t, QUICK, &mut rng).accepted());
        assert!(is_invariance(&opposite_translation_map(&c), QUICK, &mut rng).accepted());
        let u = Brown::apply(&t, &Brown::one(F));
        assert!(sq_contains(&u));
        assert_eq!(u.a, c);
        let x = translation_generator(&c);
        assert_eq!(exp_nilpotent(&x).unwrap(), t);
        assert!(nilpotency_index(&x).unwrap() <= 4);
        assert_eq!(lie_defect(LieTarget::InvFts, &x, 10, &mut rng), None);
        assert!(lie_defect(LieTarget::Inv1Fts, &x, 2, &mut rng).is_some());
    }

    #[test]
    fn calibration_finds_frozen_signs() {
        let mut rng = Rng::new(13);
        assert_eq!(calibrate_translation(F, &mut rng).unwrap(), TRANSLATION_SIGNS);
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        assert_eq!(exp_nilpotent(&Mat::identity(F, 3)), Err(Error::NotNilpotent));
        assert!(exp_nilpotent(&Mat::zeros(F, 4, 4)).unwrap().is_identity());
    }
}
