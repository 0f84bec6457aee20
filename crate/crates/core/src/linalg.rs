//! Exact linear algebra over the rationals and Gaussian rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::GaussRational;

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for GaussRational {
    fn zero() -> Self {
        GaussRational::zero()
    }
    fn one() -> Self {
        GaussRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        GaussRational::inv(self).expect("pivot is nonzero")
    }
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        let pivot: Vec<F> = rows[r].iter().map(|v| v.mul(&inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (dst, src) in row.iter_mut().zip(&pivot).skip(c) {
                if !src.is_zero() {
                    *dst = dst.sub(&f.mul(src));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Unique solution of a square system `a x = b`, or `None` if `a` is singular.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].inv();
        for v in m[c].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (dst, src) in row.iter_mut().zip(&pivot) {
                *dst = dst.sub(&f.mul(src));
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<F> = Vec<(usize, F)>;

fn axpy<F: Field>(row: &SparseRow<F>, f: &F, pivot: &SparseRow<F>) -> SparseRow<F> {
    // row - f * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, f.mul(&pivot[j].1).neg()));
            j += 1;
        } else {
            let v = row[i].1.sub(&f.mul(&pivot[j].1));
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon basis grown one row at a time. Pivot rows are normalized to a
/// leading one and keyed by their leading column.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Remainder of `row` after eliminating every pivot it meets. Empty iff the
    /// row lies in the current span.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut k = 0;
        while k < row.len() {
            let (col, val) = &row[k];
            match self.pivots.get(col) {
                Some(p) => {
                    let f = val.clone();
                    row = axpy(&row, &f, p);
                }
                None => k += 1,
            }
        }
        row
    }

    /// Adds a row; returns `true` if it raised the rank.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let row = self.reduce(row);
        let Some((lead, val)) = row.first().cloned() else {
            return false;
        };
        let inv = val.inv();
        let row = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Basis of the right null space `{v : R v = 0}` of the stored rows, one
    /// vector per free column, in increasing free-column order.
    pub fn kernel(&self) -> Vec<SparseRow<F>> {
        // Fully reduce: back-substitute from the last pivot upwards.
        let mut reduced: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let (col, val) = &r[k];
                if let Some(p) = reduced.get(col) {
                    let f = val.clone();
                    r = axpy(&r, &f, p);
                } else {
                    k += 1;
                }
            }
            reduced.insert(lead, r);
        }
        let mut free_to_entries: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for c in 0..self.ncols {
            if !reduced.contains_key(&c) {
                free_to_entries.insert(c, vec![(c, F::one())]);
            }
        }
        for (&lead, row) in &reduced {
            for (col, val) in row.iter().skip(1) {
                if let Some(v) = free_to_entries.get_mut(col) {
                    v.push((lead, val.neg()));
                }
            }
        }
        free_to_entries
            .into_values()
            .map(|mut v| {
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}
