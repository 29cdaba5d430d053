//! The Freudenthal triple system on the Brown algebra: the alternating
//! form `b`, the quartic `q`, its linearizations `Theta` and `Psi`, the
//! trilinear maps dual to them, and the invariance-group checkers.

use std::sync::OnceLock;

use crate::albert::Albert;
use crate::brown::{Brown, DIM};
use crate::error::{Error, Result};
use crate::exact::{polarize, Field, Mat, Rational, RationalField, Rng, Scalar};
use crate::verdict::Verdict;

/// `b(x, x') = r s' - r' s + T(a, b') - T(a', b)`.
pub fn bform<S: Scalar>(x: &Brown<S>, y: &Brown<S>) -> S {
    x.r.mul_ref(&y.s) - &y.r.mul_ref(&x.s) + &x.a.trace_form(&y.b) - &y.a.trace_form(&x.b)
}

/// `q(x) = 4 r N(a) + 4 s N(b) - 4 T(a#, b#) + (r s - T(a, b))^2`.
pub fn qform<S: Scalar>(x: &Brown<S>) -> S {
    let f = x.field();
    let four = f.int(4);
    let (a2, b2) = (x.a.square(), x.b.square());
    let na = cubic_from_square(&x.a, &a2);
    let nb = cubic_from_square(&x.b, &b2);
    let sa = sharp_from_square(&x.a, &a2);
    let sb = sharp_from_square(&x.b, &b2);
    let m = x.r.mul_ref(&x.s) - &x.a.trace_form(&x.b);
    four.mul_ref(&(x.r.mul_ref(&na) + &x.s.mul_ref(&nb) - &sa.trace_form(&sb))) + &m.mul_ref(&m)
}

fn cubic_from_square<S: Scalar>(a: &Albert<S>, a2: &Albert<S>) -> S {
    let f = a.field();
    let t = a.ltr();
    let n = t.clone() * &t * &t - &(f.int(3) * &t * &a2.ltr()) + &(f.int(2) * &a.trace_form(a2));
    n * &f.frac(1, 6)
}

fn sharp_from_square<S: Scalar>(a: &Albert<S>, a2: &Albert<S>) -> Albert<S> {
    let t = a.ltr();
    let sigma = (t.clone() * &t - &a2.ltr()).half();
    (a2 - &a.scale(&t)).add_scalar(&sigma)
}

/// True when every coordinate of every input is an integer.
fn integral_inputs<S: Scalar>(xs: &[&Brown<S>]) -> bool {
    xs.iter().all(|x| x.coords().iter().all(Scalar::is_integral))
}

fn halve_checked<S: Scalar>(v: S, integral: bool, what: &str) -> Result<S> {
    let h = v.half();
    if integral && !h.is_integral() {
        return Err(Error::Structural(format!("{what} is not integral on integral input")));
    }
    Ok(h)
}

/// `Theta = polarize(q) / 2`; on integral input the division must be exact.
pub fn theta<S: Scalar>(x1: &Brown<S>, x2: &Brown<S>, x3: &Brown<S>, x4: &Brown<S>) -> Result<S> {
    let p = polarize(qform, &[x1.clone(), x2.clone(), x3.clone(), x4.clone()])?;
    halve_checked(p, integral_inputs(&[x1, x2, x3, x4]), "Theta")
}

/// `Psi = (Theta + b12 b34 - b13 b24 + b14 b23) / 2`.
pub fn psi<S: Scalar>(x1: &Brown<S>, x2: &Brown<S>, x3: &Brown<S>, x4: &Brown<S>) -> Result<S> {
    let t = theta(x1, x2, x3, x4)?;
    let bb = bform(x1, x2) * &bform(x3, x4) - &(bform(x1, x3) * &bform(x2, x4)) + &(bform(x1, x4) * &bform(x2, x3));
    halve_checked(t + &bb, integral_inputs(&[x1, x2, x3, x4]), "Psi")
}

struct Tables {
    gram: Vec<i64>,
    gram_inv: Vec<i64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let f = RationalField;
        let e: Vec<Brown<Rational>> = (0..DIM).map(|i| Brown::basis(f, i)).collect();
        let g = Mat::from_fn(f, DIM, DIM, |i, j| bform(&e[i], &e[j]));
        let gi = g.invert().expect("b is nondegenerate");
        let conv = |m: &Mat<Rational>| m.data().iter().map(|x| x.to_i64().expect("integral")).collect();
        Tables { gram: conv(&g), gram_inv: conv(&gi) }
    })
}

/// Gram matrix of `b`: alternating and unimodular.
pub fn gram<F: Field>(field: F) -> Mat<F::Elem> {
    let t = tables();
    Mat::from_fn(field, DIM, DIM, |i, j| field.int(t.gram[i * DIM + j]))
}

pub fn gram_inv<F: Field>(field: F) -> Mat<F::Elem> {
    let t = tables();
    Mat::from_fn(field, DIM, DIM, |i, j| field.int(t.gram_inv[i * DIM + j]))
}

/// `(b(e_k, v))_k`.
pub fn b_covector<S: Scalar>(v: &Brown<S>) -> Vec<S> {
    gram(v.field()).mul_vec(&v.coords())
}

/// The vector `Theta(e_k, x, y, z)` over all basis `e_k`, sharing the
/// polarization terms that do not involve the first slot.
pub fn theta_covector<S: Scalar>(x: &Brown<S>, y: &Brown<S>, z: &Brown<S>) -> Result<Vec<S>> {
    let f = x.field();
    let rest = [x, y, z];
    // 2 Theta = sum over nonempty subsets U of (-1)^(4 - |U|) q(sum U)
    let mut partial: Vec<(Option<Brown<S>>, u32)> = Vec::with_capacity(8);
    for mask in 0u32..8 {
        let mut sum: Option<Brown<S>> = None;
        for (i, v) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => (*v).clone(),
                    Some(s) => &s + v,
                });
            }
        }
        partial.push((sum, mask.count_ones()));
    }
    let mut without_w = f.zero();
    for (sum, size) in partial.iter().skip(1) {
        let val = qform(sum.as_ref().expect("nonempty"));
        if size % 2 == 1 {
            without_w -= &val;
        } else {
            without_w += &val;
        }
    }
    let integral = integral_inputs(&[x, y, z]);
    let out = crate::par::map_range(DIM, |k| {
        let ek = Brown::basis(f, k);
        let mut acc = without_w.clone();
        for (sum, size) in &partial {
            let arg = match sum {
                None => ek.clone(),
                Some(s) => &ek + s,
            };
            let val = qform(&arg);
            if size % 2 == 0 {
                acc -= &val;
            } else {
                acc += &val;
            }
        }
        halve_checked(acc, integral, "Theta")
    });
    out.into_iter().collect()
}

/// The `Theta`-dual map: `b(w, t(x,y,z)) = Theta(w,x,y,z)` for all `w`.
pub fn tmap<S: Scalar>(x: &Brown<S>, y: &Brown<S>, z: &Brown<S>) -> Result<Brown<S>> {
    let th = theta_covector(x, y, z)?;
    Ok(Brown::from_coords(&gram_inv(x.field()).mul_vec(&th)))
}

/// `t(x,y,z) = 2{x, jy, z} - b(y,z) x - b(y,x) z - b(x,z) y`.
pub fn tmap_direct<S: Scalar>(x: &Brown<S>, y: &Brown<S>, z: &Brown<S>) -> Brown<S> {
    let f = x.field();
    let jy = Brown::j(f).mul(y);
    let tr = x.triple(&jy, z).scale(&f.int(2));
    let t = &tr - &x.scale(&bform(y, z));
    let t = &t - &z.scale(&bform(y, x));
    &t - &y.scale(&bform(x, z))
}

/// `t~ = (t(x,y,z) + b(y,z) x - b(x,z) y + b(x,y) z) / 2`, the `Psi`-dual map.
pub fn ttilde<S: Scalar>(x: &Brown<S>, y: &Brown<S>, z: &Brown<S>) -> Brown<S> {
    ttilde_from_t(&tmap_direct(x, y, z), x, y, z)
}

pub(crate) fn ttilde_from_t<S: Scalar>(t: &Brown<S>, x: &Brown<S>, y: &Brown<S>, z: &Brown<S>) -> Brown<S> {
    let v = t + &x.scale(&bform(y, z));
    let v = &v - &y.scale(&bform(x, z));
    let v = &v + &z.scale(&bform(x, y));
    v.scale(&x.field().frac(1, 2))
}

/// `t~` computed by dualizing `Psi` against `b` directly.
pub fn ttilde_dual<S: Scalar>(x: &Brown<S>, y: &Brown<S>, z: &Brown<S>) -> Result<Brown<S>> {
    let f = x.field();
    let th = theta_covector(x, y, z)?;
    let (bx, by, bz_) = (b_covector(x), b_covector(y), b_covector(z));
    let (byz, bxz, bxy) = (bform(y, z), bform(x, z), bform(x, y));
    let half = f.frac(1, 2);
    // Psi(e_k,x,y,z) = (Theta + b(e_k,x) b(y,z) - b(e_k,y) b(x,z) + b(e_k,z) b(x,y)) / 2
    let cov: Vec<S> = (0..DIM)
        .map(|k| {
            (th[k].clone() + &bx[k].mul_ref(&byz) - &by[k].mul_ref(&bxz) + &bz_[k].mul_ref(&bxy)) * &half
        })
        .collect();
    Ok(Brown::from_coords(&gram_inv(f).mul_vec(&cov)))
}

fn require_skew<S: Scalar>(z: &Brown<S>) -> Result<()> {
    if z.star() != -z.clone() {
        return Err(Error::NotSkew);
    }
    Ok(())
}

fn unit_multiple<S: Scalar>(v: &Brown<S>) -> Option<S> {
    (v.r == v.s && v.a.is_zero() && v.b.is_zero()).then(|| v.r.clone())
}

/// `mu` with `z' z = mu 1_B`, for skew `z', z`.
pub fn mu_extract<S: Scalar>(zp: &Brown<S>, z: &Brown<S>) -> Result<S> {
    require_skew(zp)?;
    require_skew(z)?;
    unit_multiple(&zp.mul(z)).ok_or_else(|| Error::Structural("z'z is not a multiple of the unit".into()))
}

/// `b_z(x, y)` with `(x y* - y x*) z = b_z(x, y) 1_B`.
pub fn bz<S: Scalar>(z: &Brown<S>, x: &Brown<S>, y: &Brown<S>) -> Result<S> {
    require_skew(z)?;
    let v = (&x.mul(&y.star()) - &y.mul(&x.star())).mul(z);
    unit_multiple(&v).ok_or_else(|| Error::Structural("(xy* - yx*)z is not a multiple of the unit".into()))
}

/// `t_z(x,y,w) = 2{x, zy, w} - b_z(y,w) x - b_z(y,x) w - b_z(x,w) y`.
pub fn tz<S: Scalar>(z: &Brown<S>, x: &Brown<S>, y: &Brown<S>, w: &Brown<S>) -> Result<Brown<S>> {
    let mu = mu_extract(z, z)?;
    if mu.is_zero() {
        return Err(Error::Structural("z^2 is zero".into()));
    }
    let two = x.field().int(2);
    let t = x.triple(&z.mul(y), w).scale(&two);
    let t = &t - &x.scale(&bz(z, y, w)?);
    let t = &t - &w.scale(&bz(z, y, x)?);
    Ok(&t - &y.scale(&bz(z, x, w)?))
}

/// `(r,a,b,s) -> (r / lambda, lambda a, b, lambda^2 s)`.
pub fn lambda_rescale<S: Scalar>(lambda: &S) -> Result<Mat<S>> {
    let f = lambda.field();
    let inv = lambda.inv().ok_or_else(|| Error::Structural("rescaling by zero".into()))?;
    Ok(Mat::from_fn(f, DIM, DIM, |i, j| {
        if i != j {
            f.zero()
        } else if i == 0 {
            inv.clone()
        } else if i < 28 {
            lambda.clone()
        } else if i < DIM - 1 {
            f.one()
        } else {
            lambda.mul_ref(lambda)
        }
    }))
}

/// `q(x) = 1`.
pub fn sq_contains<S: Scalar>(x: &Brown<S>) -> bool {
    qform(x).is_one()
}

/// Sampling policy for the `Psi`-preservation part of the invariance check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvarianceCheck {
    /// Number of random 4-tuples; drawn as triples sharing 40 random first
    /// arguments each.
    pub random_tuples: usize,
    /// Also check `t` on every symmetric basis triple.
    pub exhaustive: bool,
}

impl Default for InvarianceCheck {
    fn default() -> Self {
        InvarianceCheck { random_tuples: 4000, exhaustive: false }
    }
}

const W_PER_TRIPLE: usize = 40;
const SAMPLE_BOUND: i64 = 9;

/// Test points for the invariance check: integer coordinates in `[-9, 9]`.
fn sample<F: Field>(field: F, rng: &mut Rng) -> Brown<F::Elem> {
    Brown::random_int(field, rng, SAMPLE_BOUND)
}

/// Eight fixed probe elements: `e`, `f`, the unit in each Albert slot, and
/// four fixed integral elements.
pub fn probe_set<F: Field>(field: F) -> Vec<Brown<F::Elem>> {
    let mut rng = Rng::new(0x5eed);
    let mut p = vec![
        Brown::e(field),
        Brown::f(field),
        Brown::from_a(Albert::one(field)),
        Brown::from_b(Albert::one(field)),
    ];
    for _ in 0..4 {
        p.push(Brown::random_int(field, &mut rng, 2));
    }
    p
}

fn apply<S: Scalar>(m: &Mat<S>, x: &Brown<S>) -> Brown<S> {
    Brown::apply(m, x)
}

/// Membership in the invariance group of `(b, Psi)`.
pub fn is_invariance<S: Scalar>(phi: &Mat<S>, check: InvarianceCheck, rng: &mut Rng) -> Verdict {
    let f = phi.field();
    if phi.rows() != DIM || phi.cols() != DIM {
        return Verdict::reject("not a 56x56 map");
    }
    let g = gram(f);
    let phi_t = phi.transpose();
    // preserving a nondegenerate form already forces invertibility
    if phi_t.mul(&g).mul(phi) != g {
        if phi.rank() < DIM {
            return Verdict::Singular;
        }
        return Verdict::reject("b is not preserved");
    }

    // b(w, t0) = w . (G t0) and b(phi w, t1) = w . (phi^T G t1)
    let triples = check.random_tuples.div_ceil(W_PER_TRIPLE);
    let base = rng.next_u64();
    let bad = crate::par::find_first(triples, |n| {
        let mut r = Rng::new(base).substream(n as u64);
        let (x, y, z) = (sample(f, &mut r), sample(f, &mut r), sample(f, &mut r));
        let t0 = ttilde(&x, &y, &z);
        let t1 = ttilde(&apply(phi, &x), &apply(phi, &y), &apply(phi, &z));
        let c0 = g.mul_vec(&t0.coords());
        let c1 = phi_t.mul_vec(&g.mul_vec(&t1.coords()));
        let ws = W_PER_TRIPLE.min(check.random_tuples - n * W_PER_TRIPLE);
        (0..ws).find(|_| {
            let w: Vec<S> = (0..DIM).map(|_| f.small_int(&mut r, SAMPLE_BOUND)).collect();
            S::dot(f, &w, &c0) != S::dot(f, &w, &c1)
        })
    });
    if let Some((n, k)) = bad {
        return Verdict::reject(format!("Psi changes on random tuple {}", n * W_PER_TRIPLE + k));
    }

    let probes = probe_set(f);
    let images: Vec<Brown<S>> = probes.iter().map(|p| apply(phi, p)).collect();
    let np = probes.len();
    let sym: Vec<(usize, usize, usize)> = (0..np)
        .flat_map(|a| (a..np).flat_map(move |b| (b..np).map(move |c| (a, b, c))))
        .collect();
    let t_pairs = crate::par::map_range(sym.len(), |n| {
        let (a, b, c) = sym[n];
        (
            tmap_direct(&probes[a], &probes[b], &probes[c]),
            tmap_direct(&images[a], &images[b], &images[c]),
        )
    });
    let lookup = |a: usize, b: usize, c: usize| {
        let mut k = [a, b, c];
        k.sort_unstable();
        let n = sym.iter().position(|t| *t == (k[0], k[1], k[2])).expect("present");
        &t_pairs[n]
    };
    for x in 0..np {
        for y in 0..np {
            for z in 0..np {
                let (t0, t1) = lookup(x, y, z);
                let tt0 = ttilde_from_t(t0, &probes[x], &probes[y], &probes[z]);
                let tt1 = ttilde_from_t(t1, &images[x], &images[y], &images[z]);
                for w in 0..np {
                    if bform(&probes[w], &tt0) != bform(&images[w], &tt1) {
                        return Verdict::reject(format!("Psi changes on probe tuple ({w},{x},{y},{z})"));
                    }
                }
            }
        }
    }

    if check.exhaustive {
        let cols: Vec<Brown<S>> = (0..DIM).map(|j| Brown::from_coords(&phi.col(j))).collect();
        let bad = crate::par::find_first(DIM, |a| {
            let ea = Brown::basis(f, a);
            for b in a..DIM {
                let eb = Brown::basis(f, b);
                for c in b..DIM {
                    let ec = Brown::basis(f, c);
                    let lhs = tmap_direct(&cols[a], &cols[b], &cols[c]);
                    if lhs != apply(phi, &tmap_direct(&ea, &eb, &ec)) {
                        return Some((b, c));
                    }
                }
            }
            None
        });
        if let Some((a, (b, c))) = bad {
            return Verdict::reject(format!("t not equivariant on basis triple ({a},{b},{c})"));
        }
    }
    Verdict::Accept
}

/// Invariance plus `phi(1_B) = 1_B`.
pub fn is_inv1<S: Scalar>(phi: &Mat<S>, check: InvarianceCheck, rng: &mut Rng) -> Verdict {
    let v = is_invariance(phi, check, rng);
    if !v.accepted() {
        return v;
    }
    let one = Brown::one(phi.field());
    if apply(phi, &one) != one {
        return Verdict::reject("unit not fixed");
    }
    Verdict::Accept
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: RationalField = RationalField;
    type B = Brown<Rational>;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn form_values() {
        let (e, f, j, one) = (B::e(F), B::f(F), B::j(F), B::one(F));
        assert_eq!(bform(&e, &f), q(1));
        assert_eq!(bform(&one, &j), q(-2));
        assert_eq!(qform(&one), q(1));
        assert_eq!(qform(&j), q(1));
        assert_eq!(qform(&e), q(0));
        assert_eq!(theta(&one, &one, &one, &one).unwrap(), q(12));
        assert_eq!(theta(&e, &one, &one, &one).unwrap(), q(6));
    }

    #[test]
    fn unit_triple_is_minus_six_j() {
        let one = B::one(F);
        let minus_six_j = B::j(F).scale(&q(-6));
        assert_eq!(tmap(&one, &one, &one).unwrap(), minus_six_j);
        assert_eq!(tmap_direct(&one, &one, &one), minus_six_j);
    }

    #[test]
    fn gram_is_alternating() {
        let g = gram(F);
        assert_eq!(g.transpose(), g.scale(&q(-1)));
        assert!(g.mul(&gram_inv(F)).is_identity());
    }

    #[test]
    fn dual_maps_agree_on_random_triple() {
        let mut rng = Rng::new(7);
        let (x, y, z) = (B::random(F, &mut rng), B::random(F, &mut rng), B::random(F, &mut rng));
        assert_eq!(tmap(&x, &y, &z).unwrap(), tmap_direct(&x, &y, &z));
        assert_eq!(ttilde_dual(&x, &y, &z).unwrap(), ttilde(&x, &y, &z));
        let w = B::random(F, &mut rng);
        assert_eq!(bform(&w, &tmap_direct(&x, &y, &z)), theta(&w, &x, &y, &z).unwrap());
    }

    #[test]
    fn skew_helpers() {
        let (e, f, j) = (B::e(F), B::f(F), B::j(F));
        assert_eq!(bz(&j, &e, &f).unwrap(), q(1));
        assert_eq!(mu_extract(&j, &j).unwrap(), q(1));
        assert_eq!(bz(&e, &e, &f), Err(Error::NotSkew));
        assert!(lambda_rescale(&q(1)).unwrap().is_identity());
        assert!(lambda_rescale(&q(0)).is_err());
    }

    #[test]
    fn invariance_verdicts() {
        let mut rng = Rng::new(8);
        let check = InvarianceCheck { random_tuples: 200, exhaustive: false };
        assert!(is_inv1(&Mat::identity(F, DIM), check, &mut rng).accepted());
        let two = Mat::identity(F, DIM).scale(&q(2));
        assert!(matches!(is_invariance(&two, check, &mut rng), Verdict::Reject(_)));
        assert_eq!(is_invariance(&Mat::zeros(F, DIM, DIM), check, &mut rng), Verdict::Singular);
        assert!(sq_contains(&B::one(F)));
    }
}
