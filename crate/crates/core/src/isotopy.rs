//! Orbit elements of the unit sphere `q = 1` and the isotopes they define.
//! For an invariance map `phi` with `u = phi(1)`, `phi` is an isomorphism
//! from the Brown algebra onto the isotope by the conjugate inverse of `u`;
//! the functions here check that instance by instance.

use std::fmt;

use crate::albert::Albert;
use crate::brown::{conj_inverse, decompose, hat, isotope, left_mul, uop, vop, Brown, BrownStructure, DIM};
use crate::error::{Error, Result};
use crate::exact::{Field, Mat, Rng, Scalar};
use crate::fts::{is_inv1, is_invariance, qform, InvarianceCheck};
use crate::groups::{
    exp_nilpotent, gen_isometry, opposite_translation_generator, opposite_translation_map, translation_generator,
    translation_map,
};
use crate::report::Report;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Isometry,
    Translation,
    OppositeTranslation,
    ExpGenerator,
    ExpOppositeGenerator,
}

impl Factor {
    pub const ALL: [Factor; 5] = [
        Factor::Isometry,
        Factor::Translation,
        Factor::OppositeTranslation,
        Factor::ExpGenerator,
        Factor::ExpOppositeGenerator,
    ];
}

impl Factor {
    /// Short name used on the command line.
    pub fn key(self) -> &'static str {
        match self {
            Factor::Isometry => "isometry",
            Factor::Translation => "translation",
            Factor::OppositeTranslation => "opposite-translation",
            Factor::ExpGenerator => "exp-generator",
            Factor::ExpOppositeGenerator => "exp-opposite-generator",
        }
    }
}

impl std::str::FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Factor::ALL
            .into_iter()
            .find(|f| f.key() == s)
            .ok_or_else(|| Error::Parse(format!("unknown factor `{s}`")))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Isometry => "hat(isometry)",
            Factor::Translation => "translation",
            Factor::OppositeTranslation => "opposite-translation",
            Factor::ExpGenerator => "exp(generator)",
            Factor::ExpOppositeGenerator => "exp(opposite-generator)",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OrbitElement<S: Scalar> {
    pub phi: Mat<S>,
    pub u: Brown<S>,
    pub factors: Vec<Factor>,
}

impl<S: Scalar> OrbitElement<S> {
    pub fn moves_unit(&self) -> bool {
        self.u != Brown::one(self.u.field())
    }
}

fn nonzero_int_albert<F: Field>(field: F, rng: &mut Rng) -> Albert<F::Elem> {
    loop {
        let c = Albert::random_int(field, rng, 1);
        if !c.is_zero() {
            return c;
        }
    }
}

fn factor_map<F: Field>(field: F, factor: Factor, rng: &mut Rng) -> Result<Mat<F::Elem>> {
    Ok(match factor {
        Factor::Isometry => hat(&gen_isometry(field, rng)?, rng)?,
        Factor::Translation => translation_map(&nonzero_int_albert(field, rng)),
        Factor::OppositeTranslation => opposite_translation_map(&nonzero_int_albert(field, rng)),
        Factor::ExpGenerator => exp_nilpotent(&translation_generator(&nonzero_int_albert(field, rng)))?,
        Factor::ExpOppositeGenerator => {
            exp_nilpotent(&opposite_translation_generator(&nonzero_int_albert(field, rng)))?
        }
    })
}

/// The composite of the given factors (leftmost applied last), verified as
/// an invariance map, and the image of the unit.
pub fn orbit_element_from<F: Field>(
    field: F,
    factors: &[Factor],
    check: InvarianceCheck,
    rng: &mut Rng,
) -> Result<OrbitElement<F::Elem>> {
    let mut phi = Mat::identity(field, DIM);
    for &fac in factors {
        phi = phi.mul(&factor_map(field, fac, rng)?);
    }
    match is_invariance(&phi, check, rng) {
        Verdict::Accept => {}
        v => return Err(Error::Verification(format!("composite is not an invariance map: {v}"))),
    }
    let u = Brown::apply(&phi, &Brown::one(field));
    if !qform(&u).is_one() {
        return Err(Error::Verification("image of the unit leaves q = 1".into()));
    }
    Ok(OrbitElement { phi, u, factors: factors.to_vec() })
}

/// A random composite of 0 to 4 factors.
pub fn orbit_element<F: Field>(field: F, check: InvarianceCheck, rng: &mut Rng) -> Result<OrbitElement<F::Elem>> {
    let k = rng.below(5) as usize;
    let factors: Vec<Factor> = (0..k).map(|_| Factor::ALL[rng.below(5) as usize]).collect();
    orbit_element_from(field, &factors, check, rng)
}

/// `L_j = diag(1, I, -I, -1)`, left multiplication by `j`.
pub fn j_matrix<F: Field>(field: F) -> Mat<F::Elem> {
    left_mul(&Brown::j(field))
}

/// `psi = L_j phi L_j`.
pub fn j_conjugate<S: Scalar>(phi: &Mat<S>) -> Mat<S> {
    let lj = j_matrix(phi.field());
    lj.mul(phi).mul(&lj)
}

/// Kernel dimensions of `U_1 - Id` and `U_1 + 3 Id`.
pub fn u1_spectrum<F: Field>(field: F) -> (usize, usize) {
    let one = Brown::one(field);
    let u1 = uop(&one, &one);
    let id = Mat::identity(field, DIM);
    let plus = u1.sub(&id).kernel_dim();
    let minus = u1.add(&id.scale(&field.int(3))).kernel_dim();
    (plus, minus)
}

fn ok_if(cond: bool, pass: impl Into<String>, fail: impl Into<String>) -> std::result::Result<String, String> {
    if cond {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

/// `phi(xy) = phi(x) o' phi(y)` and `phi(x*) = phi(x)*'` for the isotope
/// structure, as matrix identities on basis elements plus `random_pairs`
/// random pairs.
pub fn verify_lisot<S: Scalar>(phi: &Mat<S>, iso: &BrownStructure<S>, random_pairs: usize, rng: &mut Rng) -> Report {
    let f = phi.field();
    let mut rep = Report::new("isotope isomorphism");
    let unit_img = Brown::apply(phi, &Brown::one(f)).coords();
    rep.record(
        "isotope-lemma",
        "phi(1) is the isotope unit",
        ok_if(unit_img == iso.unit(), "", "unit not mapped to the isotope unit"),
    );
    let cols: Vec<Vec<S>> = (0..DIM).map(|i| phi.col(i)).collect();
    let bad = crate::par::find_first(DIM, |i| {
        let lhs = iso.left_mat(&cols[i]).mul(phi);
        let rhs = phi.mul(&left_mul(&Brown::basis(f, i)));
        (lhs != rhs).then_some(())
    });
    rep.record(
        "isotope-lemma",
        "L'_{phi(e_i)} phi = phi L_{e_i} for all basis e_i",
        match bad {
            None => Ok(format!("{DIM} basis operators")),
            Some((i, ())) => Err(format!("fails at basis element {i}")),
        },
    );
    let inv_ok = phi.mul(&crate::brown::star_matrix(f)) == iso.involution().mul(phi);
    rep.record(
        "isotope-lemma",
        "phi S = S' phi",
        ok_if(inv_ok, "", "involution not transported"),
    );
    let mut bad_pair = None;
    for n in 0..random_pairs {
        let (x, y) = (Brown::random(f, rng), Brown::random(f, rng));
        let (px, py) = (Brown::apply(phi, &x).coords(), Brown::apply(phi, &y).coords());
        if Brown::apply(phi, &x.mul(&y)).coords() != iso.mul(&px, &py)
            || Brown::apply(phi, &x.star()).coords() != iso.conj(&px)
        {
            bad_pair = Some(n);
            break;
        }
    }
    rep.record(
        "isotope-lemma",
        "product and involution on random pairs",
        match bad_pair {
            None => Ok(format!("{random_pairs} pairs")),
            Some(n) => Err(format!("fails on pair {n}")),
        },
    );
    rep
}

/// The twist map `[phi, x] -> phi(x)` on `samples` random pairs, with the
/// representative `[phi gamma, x]` of `[phi, gamma x]` for unit-fixing
/// automorphisms `gamma = hat(rho)`.
pub fn verify_twist<S: Scalar>(
    phi: &Mat<S>,
    iso: &BrownStructure<S>,
    samples: usize,
    check: InvarianceCheck,
    rng: &mut Rng,
) -> Result<Report> {
    let f = phi.field();
    let mut rep = Report::new("twist map");
    let mut failure: Option<String> = None;
    for n in 0..samples {
        let gamma = hat(&gen_isometry(f, rng)?, rng)?;
        if !is_inv1(&gamma, check, rng).accepted() {
            failure = Some(format!("sample {n}: gamma rejected by the unit-fixing invariance check"));
            break;
        }
        let pg = phi.mul(&gamma);
        let (x, y) = (Brown::random(f, rng), Brown::random(f, rng));
        let k = f.random(rng);
        let gx = Brown::apply(&gamma, &x);
        if Brown::apply(&pg, &x) != Brown::apply(phi, &gx) {
            failure = Some(format!("sample {n}: representatives disagree"));
            break;
        }
        let lin = &x.scale(&k) + &y;
        if Brown::apply(phi, &lin) != &Brown::apply(phi, &x).scale(&k) + &Brown::apply(phi, &y) {
            failure = Some(format!("sample {n}: not linear"));
            break;
        }
        for (label, m) in [("phi", phi), ("phi gamma", &pg)] {
            let (mx, my) = (Brown::apply(m, &x).coords(), Brown::apply(m, &y).coords());
            if Brown::apply(m, &x.mul(&y)).coords() != iso.mul(&mx, &my) {
                failure = Some(format!("sample {n}: product not transported through {label}"));
                break;
            }
            if Brown::apply(m, &x.star()).coords() != iso.conj(&mx) {
                failure = Some(format!("sample {n}: involution not transported through {label}"));
                break;
            }
        }
        if failure.is_some() {
            break;
        }
    }
    rep.record(
        "twist-map",
        "[phi,x][phi,y] = [phi,xy] transported to the isotope",
        match failure {
            None => Ok(format!("{samples} samples")),
            Some(e) => Err(e),
        },
    );
    Ok(rep)
}

/// Conjugate-inverse identities for `u = phi(1)` and its conjugate inverse.
pub fn verify_conjugate<S: Scalar>(phi: &Mat<S>, u: &Brown<S>, u_hat: &Brown<S>) -> Report {
    let f = phi.field();
    let mut rep = Report::new("conjugate inverse");
    rep.record("sphere", "q(u) = 1", ok_if(qform(u).is_one(), "", format!("q(u) = {}", qform(u))));
    let v_ok = vop(u, u_hat).is_identity() && vop(u_hat, u).is_identity();
    rep.record("conjugate-inverse", "V_{u,u^} = V_{u^,u} = Id", ok_if(v_ok, "", "V operator is not the identity"));
    let d = &u.mul(&u_hat.star()) - &Brown::one(f);
    let in_span = d.a.is_zero() && d.b.is_zero() && d.r == -d.s.clone();
    rep.record(
        "conjugate-inverse",
        "u u^* - 1 lies in span(j)",
        ok_if(in_span, format!("lambda = {}", d.r), "difference leaves span(j)"),
    );
    let psi = j_conjugate(phi);
    rep.record(
        "conjugate-inverse",
        "u^ = psi(1) with psi = L_j phi L_j",
        ok_if(Brown::apply(&psi, &Brown::one(f)) == *u_hat, "", "psi(1) differs from u^"),
    );
    let one = Brown::one(f);
    let uu = uop(u, u);
    let ok = uu.mul(&psi) == phi.mul(&uop(&one, &one));
    rep.record("u-factorization", "U_u = phi U_1 psi^-1", ok_if(ok, "", "matrix identity fails"));
    rep
}

/// How the isotope relates to the base algebra, stated conservatively.
pub fn isomorphism_note<S: Scalar>(phi: &Mat<S>, iso: &BrownStructure<S>) -> String {
    if *iso == BrownStructure::standard(phi.field()) {
        return "isotope equals the base algebra".into();
    }
    match decompose(phi) {
        Ok((_, eps)) => format!("isomorphism certificate: hat(rho) o sigma({eps:+})"),
        Err(_) => "no isomorphism found among generated automorphisms".into(),
    }
}

#[derive(Clone, Debug)]
pub struct IsotopyWitness<S: Scalar> {
    pub orbit: OrbitElement<S>,
    pub u_hat: Brown<S>,
    pub structure: BrownStructure<S>,
    pub note: String,
    pub report: Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessConfig {
    pub random_pairs: usize,
    pub twist_samples: usize,
    pub check: InvarianceCheck,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { random_pairs: 200, twist_samples: 5, check: InvarianceCheck::default() }
    }
}

/// Builds the isotope for an orbit element and runs every check on it.
pub fn witness<S: Scalar>(orbit: OrbitElement<S>, cfg: WitnessConfig, rng: &mut Rng) -> Result<IsotopyWitness<S>> {
    let u_hat = conj_inverse(&orbit.u)?;
    let structure = isotope(&u_hat)?;
    let mut report = Report::new(format!(
        "orbit element [{}]",
        orbit.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" * ")
    ));
    report.absorb(verify_conjugate(&orbit.phi, &orbit.u, &u_hat));
    report.absorb(verify_lisot(&orbit.phi, &structure, cfg.random_pairs, rng));
    report.absorb(verify_twist(&orbit.phi, &structure, cfg.twist_samples, cfg.check, rng)?);
    let note = isomorphism_note(&orbit.phi, &structure);
    Ok(IsotopyWitness { orbit, u_hat, structure, note, report })
}

/// Conjugate-inverse checks over `trials` random orbit elements.
pub fn verify_conj_symmetry<F: Field>(field: F, trials: usize, check: InvarianceCheck, rng: &mut Rng) -> Result<Report> {
    let mut rep = Report::new("conjugate-inverse symmetry");
    for t in 0..trials {
        let orbit = orbit_element(field, check, rng)?;
        let u_hat = conj_inverse(&orbit.u)?;
        for mut c in verify_conjugate(&orbit.phi, &orbit.u, &u_hat).checks {
            c.name = format!("trial {t}: {}", c.name);
            rep.checks.push(c);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RationalField;

    const F: RationalField = RationalField;
    const QUICK: InvarianceCheck = InvarianceCheck { random_tuples: 80, exhaustive: false };

    #[test]
    fn u1_has_expected_spectrum() {
        assert_eq!(u1_spectrum(F), (55, 1));
    }

    #[test]
    fn identity_composite() {
        let mut rng = Rng::new(1);
        let o = orbit_element_from(F, &[], QUICK, &mut rng).unwrap();
        assert!(!o.moves_unit());
        let cfg = WitnessConfig { random_pairs: 5, twist_samples: 1, check: QUICK };
        let w = witness(o, cfg, &mut rng).unwrap();
        assert!(w.report.passed(), "{}", w.report);
        assert_eq!(w.note, "isotope equals the base algebra");
    }

    #[test]
    fn translation_composite() {
        let mut rng = Rng::new(2);
        let o = orbit_element_from(F, &[Factor::Translation, Factor::Isometry], QUICK, &mut rng).unwrap();
        assert!(o.moves_unit());
        let cfg = WitnessConfig { random_pairs: 5, twist_samples: 1, check: QUICK };
        let w = witness(o, cfg, &mut rng).unwrap();
        assert!(w.report.passed(), "{}", w.report);
        assert_eq!(w.structure.unit(), w.orbit.u.coords().as_slice());
    }
}
