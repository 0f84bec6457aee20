use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix, row-major, finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k / n.max(1), col: k % n.max(1) });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub(crate) fn add_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] += v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if rhs.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: rhs.n });
        }
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if rhs.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: rhs.n });
        }
        Ok(DenseMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() })
    }

    pub fn mul_vec(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: f.len() });
        }
        Ok(self.rows().map(|row| row.iter().zip(f).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn adjoint_mul_vec(&self, f: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, fi) in f.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(&self.data[i * n..(i + 1) * n]) {
                *o += a.conj() * fi;
            }
        }
        out
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> DenseMatrix {
        let k = k.min(self.n);
        let mut out = DenseMatrix::zeros(k);
        for i in 0..k {
            out.data[i * k..(i + 1) * k].copy_from_slice(&self.data[i * self.n..i * self.n + k]);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == Complex64::new(0.0, 0.0)))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == Complex64::new(0.0, 0.0)))
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value by power iteration on `A^H A`, started from the
/// normalized all-ones vector.
pub fn operator_norm(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    let n = a.n();
    if n == 0 || a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let start = vec![Complex64::new(1.0, 0.0); n];
    let est = power_iterate(a, start, tol, max_iter)?;
    // The all-ones start can be orthogonal to the top right singular vector.
    // Every column norm is a lower bound, so retry from the heaviest column.
    let (heaviest, col_norm) = (0..n)
        .map(|j| (j, (0..n).map(|i| a.get(i, j).norm_sqr()).sum::<f64>().sqrt()))
        .fold((0, 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
    if est < col_norm * (1.0 - 1e-9) {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[heaviest] = Complex64::new(1.0, 0.0);
        return Ok(power_iterate(a, e, tol, max_iter)?.max(est));
    }
    Ok(est)
}

fn power_iterate(a: &DenseMatrix, mut v: Vec<Complex64>, tol: f64, max_iter: usize) -> Result<f64> {
    let s = norm2(&v);
    v.iter_mut().for_each(|z| *z /= s);
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        let w = a.adjoint_mul_vec(&a.mul_vec(&v)?);
        let next = norm2(&w);
        if next == 0.0 {
            return Ok(0.0);
        }
        v = w.into_iter().map(|z| z / next).collect();
        if (next - lambda).abs() <= tol * next {
            return Ok(next.sqrt());
        }
        lambda = next;
    }
    Err(Error::NoConvergence { iterations: max_iter, last_estimate: lambda.sqrt() })
}

/// Rank of a row-major `rows x cols` matrix by completely pivoted
/// elimination; pivots below `rel_tol` times the first pivot count as zero.
pub fn numeric_rank_rect(rows: usize, cols: usize, mut data: Vec<Complex64>, rel_tol: f64) -> usize {
    let mut rank = 0;
    let mut threshold = None;
    let mut row_ix: Vec<usize> = (0..rows).collect();
    let mut col_ix: Vec<usize> = (0..cols).collect();
    while rank < rows.min(cols) {
        let mut best = (0.0, 0, 0);
        for (ri, &r) in row_ix.iter().enumerate().skip(rank) {
            for (ci, &c) in col_ix.iter().enumerate().skip(rank) {
                let m = data[r * cols + c].norm();
                if m > best.0 {
                    best = (m, ri, ci);
                }
            }
        }
        let t = *threshold.get_or_insert(best.0 * rel_tol);
        if best.0 == 0.0 || best.0 <= t {
            break;
        }
        row_ix.swap(rank, best.1);
        col_ix.swap(rank, best.2);
        let (pr, pc) = (row_ix[rank], col_ix[rank]);
        let pivot = data[pr * cols + pc];
        for &r in &row_ix[rank + 1..] {
            let f = data[r * cols + pc] / pivot;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &c in &col_ix[rank..] {
                let p = data[pr * cols + c];
                data[r * cols + c] -= f * p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn numeric_rank(a: &DenseMatrix, rel_tol: f64) -> usize {
    numeric_rank_rect(a.n(), a.n(), a.data().to_vec(), rel_tol)
}
