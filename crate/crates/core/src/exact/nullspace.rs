//! Streaming row reduction. Pivot rows are stored in reduced form restricted
//! to the currently free columns, so reducing a new row costs
//! `rank * nullity` and inserting one costs the same.

use crate::exact::scalar::{Field, Scalar};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Pivot(usize),
    Free(usize),
}

#[derive(Clone, Debug)]
pub struct IncrementalNullspace<S: Scalar> {
    field: S::Field,
    ncols: usize,
    slots: Vec<Slot>,
    pivot_cols: Vec<usize>,
    free_cols: Vec<usize>,
    rows: Vec<Vec<S>>,
}

/// A nullspace basis together with the rank it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nullspace<S: Scalar> {
    pub field: S::Field,
    pub ncols: usize,
    pub rank: usize,
    pub rows_processed: usize,
    pub basis: Vec<Vec<S>>,
}

impl<S: Scalar> Nullspace<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn annihilated_by(&self, row: &[S]) -> bool {
        self.basis.iter().all(|v| S::dot(self.field, row, v).is_zero())
    }
}

const PAR_THRESHOLD: usize = 1 << 14;

impl<S: Scalar> IncrementalNullspace<S> {
    pub fn new<F: Field<Elem = S>>(field: F, ncols: usize) -> Self {
        IncrementalNullspace {
            field: field.zero().field(),
            ncols,
            slots: (0..ncols).map(Slot::Free).collect(),
            pivot_cols: Vec::new(),
            free_cols: (0..ncols).collect(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn nullity(&self) -> usize {
        self.free_cols.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds a dense row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[S]) -> bool {
        assert_eq!(row.len(), self.ncols);
        let mut res: Vec<S> = self.free_cols.iter().map(|&c| row[c].clone()).collect();
        let terms: Vec<(S, &[S])> = self
            .pivot_cols
            .iter()
            .zip(&self.rows)
            .filter(|(&pc, _)| !row[pc].is_zero())
            .map(|(&pc, r)| (row[pc].clone(), r.as_slice()))
            .collect();
        reduce(&mut res, &terms);
        self.absorb(res)
    }

    /// Adds a sparse row given as `(column, value)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, S)]) -> bool {
        let mut res = self.field.zeros(self.free_cols.len());
        let mut terms: Vec<(S, &[S])> = Vec::new();
        for (c, v) in entries {
            if v.is_zero() {
                continue;
            }
            match self.slots[*c] {
                Slot::Free(f) => res[f] += v,
                Slot::Pivot(i) => terms.push((v.clone(), self.rows[i].as_slice())),
            }
        }
        reduce(&mut res, &terms);
        self.absorb(res)
    }

    fn absorb(&mut self, mut res: Vec<S>) -> bool {
        let Some(f0) = res.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = res[f0].inv().expect("nonzero");
        for x in res.iter_mut() {
            *x *= &inv;
        }
        let res_ref = &res;
        let work = self.rows.len() * res.len();
        let update = |_: usize, r: &mut Vec<S>| {
            let c = r[f0].clone();
            if !c.is_zero() {
                S::axpy(r, &(-c), res_ref);
            }
            r.remove(f0);
        };
        if work >= PAR_THRESHOLD {
            par::for_each_mut(&mut self.rows, update);
        } else {
            self.rows.iter_mut().enumerate().for_each(|(i, r)| update(i, r));
        }
        let col = self.free_cols.remove(f0);
        res.remove(f0);
        self.slots[col] = Slot::Pivot(self.pivot_cols.len());
        for (f, &c) in self.free_cols.iter().enumerate().skip(f0) {
            self.slots[c] = Slot::Free(f);
        }
        self.pivot_cols.push(col);
        self.rows.push(res);
        true
    }

    /// Standard basis of the nullspace: one vector per free column.
    pub fn basis(&self) -> Vec<Vec<S>> {
        (0..self.free_cols.len())
            .map(|k| {
                let mut v = self.field.zeros(self.ncols);
                v[self.free_cols[k]] = self.field.one();
                for (i, &pc) in self.pivot_cols.iter().enumerate() {
                    v[pc] = -self.rows[i][k].clone();
                }
                v
            })
            .collect()
    }

    pub fn finish(&self, rows_processed: usize) -> Nullspace<S> {
        Nullspace {
            field: self.field,
            ncols: self.ncols,
            rank: self.rank(),
            rows_processed,
            basis: self.basis(),
        }
    }
}

fn reduce<S: Scalar>(res: &mut [S], terms: &[(S, &[S])]) {
    if terms.is_empty() || res.is_empty() {
        return;
    }
    let work = terms.len() * res.len();
    if work < PAR_THRESHOLD || !par::enabled() {
        S::sub_lincomb(res, terms);
        return;
    }
    let chunk = res.len().div_ceil(par::threads() * 2).max(16);
    par::for_each_chunk_mut(res, chunk, |offset, part| {
        let sub: Vec<(S, &[S])> = terms
            .iter()
            .map(|(c, r)| (c.clone(), &r[offset..offset + part.len()]))
            .collect();
        S::sub_lincomb(part, &sub);
    });
}
