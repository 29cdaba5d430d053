//! Lie-algebra dimension certificates. Each target is the Lie algebra of a
//! group given by polynomial conditions; linearizing the conditions at the
//! identity gives linear constraints on an `n x n` matrix `X`, and the
//! dimension is the nullity of the stacked constraint rows.
//!
//! Unknown `X[k][l]` sits at column `k * n + l`. Random tuples are drawn
//! from per-index substreams, so the row sequence does not depend on how
//! generation is scheduled.

use std::fmt;
use std::str::FromStr;

use crate::albert::{self, Albert};
use crate::brown::{self, Brown};
use crate::error::{Error, Result};
use crate::exact::{Field, IncrementalNullspace, Mat, Mode, Rng, Scalar, SparseRow};
use crate::fts;
use crate::octonion::{self, Octonion};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieTarget {
    AutOct,
    AutAlbert,
    IsomNorm,
    Inv1Fts,
    InvFts,
    AutBrown,
}

impl LieTarget {
    pub const ALL: [LieTarget; 6] = [
        LieTarget::AutOct,
        LieTarget::AutAlbert,
        LieTarget::IsomNorm,
        LieTarget::Inv1Fts,
        LieTarget::AutBrown,
        LieTarget::InvFts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LieTarget::AutOct => "aut_oct",
            LieTarget::AutAlbert => "aut_albert",
            LieTarget::IsomNorm => "isom_norm",
            LieTarget::Inv1Fts => "inv1_fts",
            LieTarget::InvFts => "inv_fts",
            LieTarget::AutBrown => "aut_brown",
        }
    }

    /// The dimension a certificate is compared against; never an input.
    pub fn expected_dim(self) -> usize {
        match self {
            LieTarget::AutOct => 14,
            LieTarget::AutAlbert => 52,
            LieTarget::IsomNorm | LieTarget::Inv1Fts | LieTarget::AutBrown => 78,
            LieTarget::InvFts => 133,
        }
    }

    /// Dimension of the module the matrices act on.
    pub fn module_dim(self) -> usize {
        match self {
            LieTarget::AutOct => octonion::DIM,
            LieTarget::AutAlbert | LieTarget::IsomNorm => albert::DIM,
            _ => brown::DIM,
        }
    }

    fn arity(self) -> usize {
        match self {
            LieTarget::AutOct | LieTarget::AutAlbert | LieTarget::AutBrown => 2,
            LieTarget::IsomNorm => 3,
            LieTarget::Inv1Fts | LieTarget::InvFts => 4,
        }
    }
}

impl fmt::Display for LieTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LieTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LieTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown Lie target `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintMode {
    /// Seeded random tuples until the rank is stable over a row window.
    Random,
    /// Every symmetric basis tuple.
    Exhaustive,
}

impl fmt::Display for ConstraintMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintMode::Random => "random",
            ConstraintMode::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LieCertificate<S: Scalar> {
    pub target: LieTarget,
    pub mode: Mode,
    pub constraints: ConstraintMode,
    pub dim: usize,
    pub rank: usize,
    pub rows: usize,
    pub tuples: usize,
    /// Rows inserted after the last rank increase.
    pub stable_rows: usize,
    pub verified_tuples: usize,
    pub basis: Vec<Mat<S>>,
}

impl<S: Scalar> LieCertificate<S> {
    pub fn matches_expected(&self) -> bool {
        self.dim == self.target.expected_dim()
    }
}

const BATCH: usize = 32;
const VERIFY_TUPLES: usize = 1000;
const VERIFY_LABEL: u64 = 1 << 40;

struct Context<S: Scalar> {
    target: LieTarget,
    field: S::Field,
    n: usize,
    /// Gram matrix of `b` or of the Albert trace form, as needed.
    gram: Option<Mat<S>>,
}

enum Row<S> {
    Dense(Vec<S>),
    Sparse(Vec<(usize, S)>),
}

impl<S: Scalar> Row<S> {
    fn compact(dense: Vec<S>) -> Self {
        let nnz = dense.iter().filter(|x| !x.is_zero()).count();
        if nnz * 4 < dense.len() {
            Row::Sparse(SparseRow::from_dense(&dense).entries)
        } else {
            Row::Dense(dense)
        }
    }

    fn dot(&self, field: S::Field, v: &[S]) -> S {
        match self {
            Row::Dense(r) => S::dot(field, r, v),
            Row::Sparse(es) => es.iter().fold(field.zero(), |acc, (i, x)| acc + &x.mul_ref(&v[*i])),
        }
    }

    fn add_scaled_into(&self, acc: &mut [S], c: &S) {
        match self {
            Row::Dense(r) => S::axpy(acc, c, r),
            Row::Sparse(es) => {
                for (i, x) in es {
                    acc[*i] += &c.mul_ref(x);
                }
            }
        }
    }
}

impl<S: Scalar> Context<S> {
    fn new(target: LieTarget, field: S::Field) -> Self {
        let gram = match target {
            LieTarget::IsomNorm => Some(albert::gram(field)),
            LieTarget::Inv1Fts | LieTarget::InvFts => Some(fts::gram(field)),
            _ => None,
        };
        Context { target, field, n: target.module_dim(), gram }
    }

    fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        match self.target {
            LieTarget::AutOct => Octonion::from_coords(x).mul(&Octonion::from_coords(y)).coords(),
            LieTarget::AutAlbert => Albert::from_coords(x).jmul(&Albert::from_coords(y)).coords(),
            LieTarget::AutBrown => Brown::from_coords(x).mul(&Brown::from_coords(y)).coords(),
            _ => unreachable!("not a product target"),
        }
    }

    /// Rows that do not depend on sampled tuples.
    fn fixed_rows(&self) -> Vec<Row<S>> {
        let (f, n) = (self.field, self.n);
        let mut out = Vec::new();
        if let (LieTarget::InvFts | LieTarget::Inv1Fts, Some(g)) = (self.target, &self.gram) {
            // b(X e_i, e_j) + b(e_i, X e_j) = 0
            for i in 0..n {
                for j in i + 1..n {
                    let mut es: Vec<(usize, S)> = Vec::new();
                    for k in 0..n {
                        if !g.get(k, j).is_zero() {
                            es.push((k * n + i, g.get(k, j).clone()));
                        }
                        if !g.get(i, k).is_zero() {
                            es.push((k * n + j, g.get(i, k).clone()));
                        }
                    }
                    out.push(Row::Sparse(merge(es)));
                }
            }
        }
        if self.target == LieTarget::Inv1Fts {
            // X(1_B) = 0
            for k in 0..n {
                out.push(Row::Sparse(vec![(k * n, f.one()), (k * n + n - 1, f.one())]));
            }
        }
        if self.target == LieTarget::AutBrown {
            // X S = S X for the involution, a coordinate permutation
            let sigma = |i: usize| match i {
                0 => n - 1,
                k if k == n - 1 => 0,
                k => k,
            };
            for k in 0..n {
                for l in 0..n {
                    let (a, b) = (k * n + sigma(l), sigma(k) * n + l);
                    if a < b {
                        out.push(Row::Sparse(vec![(a, f.one()), (b, -f.one())]));
                    }
                }
            }
        }
        out
    }

    fn random_tuple(&self, rng: &mut Rng) -> Vec<Vec<S>> {
        (0..self.target.arity()).map(|_| self.field.random_vec(rng, self.n)).collect()
    }

    fn basis_tuple(&self, idx: &[usize]) -> Vec<Vec<S>> {
        idx.iter().map(|&i| self.field.unit_vec(self.n, i)).collect()
    }

    /// Constraint rows for one tuple.
    fn tuple_rows(&self, xs: &[Vec<S>]) -> Vec<Row<S>> {
        match self.target {
            LieTarget::AutOct | LieTarget::AutAlbert | LieTarget::AutBrown => self.leibniz_rows(&xs[0], &xs[1]),
            LieTarget::IsomNorm => vec![self.norm_row(&xs[0], &xs[1], &xs[2])],
            LieTarget::InvFts | LieTarget::Inv1Fts => vec![self.theta_row(xs)],
        }
    }

    /// `X(xy) - X(x) y - x X(y) = 0`, one row per output coordinate.
    fn leibniz_rows(&self, x: &[S], y: &[S]) -> Vec<Row<S>> {
        let (f, n) = (self.field, self.n);
        let xy = self.mul(x, y);
        let right: Vec<Vec<S>> = (0..n).map(|k| self.mul(&f.unit_vec(n, k), y)).collect();
        let left: Vec<Vec<S>> = (0..n).map(|k| self.mul(x, &f.unit_vec(n, k))).collect();
        (0..n)
            .map(|m| {
                let mut row = f.zeros(n * n);
                for k in 0..n {
                    let block = &mut row[k * n..(k + 1) * n];
                    if k == m {
                        S::axpy(block, &f.one(), &xy);
                    }
                    S::axpy(block, &-right[k][m].clone(), x);
                    S::axpy(block, &-left[k][m].clone(), y);
                }
                Row::compact(row)
            })
            .collect()
    }

    /// `N(Xx, y, z) + N(x, Xy, z) + N(x, y, Xz) = 0` with `N(u, v, w) = T(u, v x w)`.
    fn norm_row(&self, x: &[S], y: &[S], z: &[S]) -> Row<S> {
        let (f, n) = (self.field, self.n);
        let g = self.gram.as_ref().expect("trace gram");
        let cov = |u: &[S], v: &[S]| g.mul_vec(&Albert::from_coords(u).cross(&Albert::from_coords(v)).coords());
        let terms = [(x, cov(y, z)), (y, cov(x, z)), (z, cov(x, y))];
        let mut row = f.zeros(n * n);
        for (v, c) in &terms {
            for k in 0..n {
                S::axpy(&mut row[k * n..(k + 1) * n], &c[k], v);
            }
        }
        Row::compact(row)
    }

    /// `sum_i Theta(x_1, .., X x_i, .., x_4) = 0`, using
    /// `Theta(Xx, y, z, w) = b(Xx, t(y, z, w))`.
    fn theta_row(&self, xs: &[Vec<S>]) -> Row<S> {
        let (f, n) = (self.field, self.n);
        let g = self.gram.as_ref().expect("b gram");
        let b: Vec<Brown<S>> = xs.iter().map(|x| Brown::from_coords(x)).collect();
        let mut row = f.zeros(n * n);
        for i in 0..4 {
            let o: Vec<&Brown<S>> = (0..4).filter(|&j| j != i).map(|j| &b[j]).collect();
            let cov = g.mul_vec(&fts::tmap_direct(o[0], o[1], o[2]).coords());
            for k in 0..n {
                S::axpy(&mut row[k * n..(k + 1) * n], &cov[k], &xs[i]);
            }
        }
        Row::compact(row)
    }

    fn min_tuples(&self) -> usize {
        match self.target.arity() {
            2 => 4 * self.n,
            _ => 4 * self.n * self.n,
        }
    }

    fn exhaustive_tuples(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        match self.target.arity() {
            2 => (0..n).flat_map(|i| (0..n).map(move |j| vec![i, j])).collect(),
            k => {
                let mut out = Vec::new();
                let mut cur = vec![0usize; k];
                sym_tuples(n, 0, 0, &mut cur, &mut out);
                out
            }
        }
    }
}

fn sym_tuples(n: usize, pos: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur[pos] = i;
        sym_tuples(n, pos + 1, i, cur, out);
    }
}

fn merge<S: Scalar>(mut es: Vec<(usize, S)>) -> Vec<(usize, S)> {
    es.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, S)> = Vec::with_capacity(es.len());
    for (i, v) in es {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w += &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[derive(Default)]
struct Feed {
    rows: usize,
    stable: usize,
}

impl Feed {
    fn push<S: Scalar>(&mut self, ns: &mut IncrementalNullspace<S>, row: &Row<S>) {
        self.rows += 1;
        let grew = match row {
            Row::Dense(r) => ns.insert(r),
            Row::Sparse(es) => ns.insert_sparse(es),
        };
        self.stable = if grew { 0 } else { self.stable + 1 };
    }
}

/// Nullspace dimension and basis of the linearized defining conditions.
pub fn lie_dim<F: Field>(target: LieTarget, field: F, constraints: ConstraintMode, seed: u64) -> Result<LieCertificate<F::Elem>> {
    let ctx: Context<F::Elem> = Context::new(target, field);
    let n = ctx.n;
    let unknowns = n * n;
    let window = 3 * unknowns;
    let root = Rng::new(seed);
    let mut ns = IncrementalNullspace::new(field, unknowns);
    let mut feed = Feed::default();
    for r in ctx.fixed_rows() {
        feed.push(&mut ns, &r);
    }
    let mut tuples = 0usize;
    match constraints {
        ConstraintMode::Exhaustive => {
            let all = ctx.exhaustive_tuples();
            for chunk in all.chunks(BATCH) {
                let batch = par::map_range(chunk.len(), |i| ctx.tuple_rows(&ctx.basis_tuple(&chunk[i])));
                for r in batch.iter().flatten() {
                    feed.push(&mut ns, r);
                }
                tuples += chunk.len();
            }
        }
        ConstraintMode::Random => {
            let min = ctx.min_tuples();
            let cap = 50 * min;
            'outer: while tuples < cap {
                let base = tuples;
                let batch = par::map_range(BATCH, |i| {
                    let mut r = root.substream((base + i) as u64);
                    ctx.tuple_rows(&ctx.random_tuple(&mut r))
                });
                for tuple_rows in &batch {
                    for r in tuple_rows {
                        feed.push(&mut ns, r);
                    }
                    tuples += 1;
                    if tuples >= min && feed.stable >= window {
                        break 'outer;
                    }
                }
            }
        }
    }
    let Feed { rows, stable: stable_rows } = feed;
    let ns = ns.finish(rows);
    let verified = verify_basis(&ctx, &root, &ns.basis)?;
    let basis = ns
        .basis
        .iter()
        .map(|v| Mat::from_fn(field, n, n, |k, l| v[k * n + l].clone()))
        .collect();
    Ok(LieCertificate {
        target,
        mode: field.mode(),
        constraints,
        dim: ns.dim(),
        rank: ns.rank,
        rows,
        tuples,
        stable_rows,
        verified_tuples: verified,
        basis,
    })
}

/// Re-checks every basis vector against fresh tuples. The rows of one tuple
/// are folded into a single random combination.
fn verify_basis<S: Scalar>(ctx: &Context<S>, root: &Rng, basis: &[Vec<S>]) -> Result<usize> {
    let f = ctx.field;
    let unknowns = ctx.n * ctx.n;
    let bad = par::find_first(VERIFY_TUPLES, |i| {
        let mut r = root.substream(VERIFY_LABEL + i as u64);
        let rows = ctx.tuple_rows(&ctx.random_tuple(&mut r));
        let mut folded = f.zeros(unknowns);
        for row in &rows {
            row.add_scaled_into(&mut folded, &f.random(&mut r));
        }
        basis.iter().position(|v| !S::dot(f, &folded, v).is_zero())
    });
    match bad {
        Some((i, b)) => Err(Error::Verification(format!(
            "{} basis element {b} violates fresh tuple {i}",
            ctx.target
        ))),
        None => Ok(VERIFY_TUPLES),
    }
}

/// First violated defining condition of `target`'s Lie algebra for `x`,
/// over the fixed rows and `tuples` random tuples.
pub fn lie_defect<S: Scalar>(target: LieTarget, x: &Mat<S>, tuples: usize, rng: &mut Rng) -> Option<String> {
    let f = x.field();
    let ctx: Context<S> = Context::new(target, f);
    let n = ctx.n;
    if x.rows() != n || x.cols() != n {
        return Some(format!("expected a {n}x{n} matrix"));
    }
    let v: Vec<S> = x.data().to_vec();
    if let Some(i) = ctx.fixed_rows().iter().position(|r| !r.dot(f, &v).is_zero()) {
        return Some(format!("fixed condition {i} fails"));
    }
    let label = rng.next_u64();
    let base = rng.substream(label);
    par::find_first(tuples, |i| {
        let mut r = base.substream(i as u64);
        ctx.tuple_rows(&ctx.random_tuple(&mut r)).iter().any(|row| !row.dot(f, &v).is_zero()).then_some(())
    })
    .map(|(i, ())| format!("tuple condition fails on random tuple {i}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;

    #[test]
    fn names_round_trip() {
        for t in LieTarget::ALL {
            assert_eq!(t.name().parse::<LieTarget>().unwrap(), t);
        }
        assert!("e8".parse::<LieTarget>().is_err());
    }

    #[test]
    fn octonion_derivations_both_modes() {
        let f = PrimeField::new(1_000_003).unwrap();
        let r = lie_dim(LieTarget::AutOct, f, ConstraintMode::Random, 0).unwrap();
        let e = lie_dim(LieTarget::AutOct, f, ConstraintMode::Exhaustive, 0).unwrap();
        assert_eq!(r.dim, 14);
        assert_eq!(e.dim, 14);
        let mut rng = Rng::new(1);
        for x in &r.basis {
            assert_eq!(lie_defect(LieTarget::AutOct, x, 20, &mut rng), None);
        }
        assert!(lie_defect(LieTarget::AutOct, &Mat::identity(f, 8), 5, &mut rng).is_some());
    }
}
