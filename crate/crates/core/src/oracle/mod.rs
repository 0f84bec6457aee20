//! Numeric ground truth: compressions `P_N x P_N` of symbolic elements to
//! dense complex matrices, plus norms, ranks, spectra and vector actions.

mod dense;
mod eigen;

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{build_t, BasisSymbol, Element, Scalar, ShiftVariant};
use crate::error::{Error, Result};

pub use dense::{numeric_rank, numeric_rank_rect, operator_norm, DenseMatrix};
pub use eigen::{eigenvalues, sort_spectrum, EIGEN_MAX_N};

pub const NORM_TOL: f64 = 1e-10;
pub const NORM_MAX_ITER: usize = 10_000;
pub const RANK_TOL: f64 = 1e-9;

fn check_fits(x: &Element, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("truncation dimension must be at least 1".into()));
    }
    let m = x.max_index();
    if m as usize >= n {
        return Err(Error::Truncation { index: m, n });
    }
    Ok(())
}

/// Compression `P_N x P_N` at `eps = eps`; rejects elements with an index `>= n`.
pub fn to_matrix(x: &Element, n: usize, eps: Complex64) -> Result<DenseMatrix> {
    check_fits(x, n)?;
    let mut m = DenseMatrix::zeros(n);
    for (s, c) in x.terms() {
        let v = c.eval_f64(eps);
        match *s {
            BasisSymbol::Fwd(k) => (0..n - k as usize).for_each(|q| m.add_at(q + k as usize, q, v)),
            BasisSymbol::Bwd(k) => (0..n - k as usize).for_each(|p| m.add_at(p, p + k as usize, v)),
            BasisSymbol::Corner(a, b) => m.add_at(a as usize, b as usize, v),
        }
    }
    Ok(m)
}

/// Exact compression with symbolic `eps`; same rejection rule as [`to_matrix`].
pub fn to_matrix_exact(x: &Element, n: usize) -> Result<Vec<Vec<Scalar>>> {
    check_fits(x, n)?;
    Ok(x.truncate_exact(n))
}

/// Padding that makes `P_N x y P_N` equal to the leading `N x N` block of
/// `P_{N+pad} x P_{N+pad} y P_{N+pad}`: `y P_N` has range inside the first
/// `N + pad` sites.
pub fn product_padding(y: &Element) -> usize {
    y.max_index() as usize
}

/// Max-abs deviation between the compression of the symbolic product and the
/// product of compressions. The dense product is formed at size
/// `n + product_padding(y)` and cut back to `n`, which makes the comparison
/// exact in exact arithmetic.
pub fn oracle_mul_check(x: &Element, y: &Element, n: usize, eps: Complex64) -> Result<f64> {
    let xy = x.try_mul(y)?;
    let lhs = to_matrix(&xy, n, eps)?;
    check_fits(x, n)?;
    check_fits(y, n)?;
    let big = n + product_padding(y);
    let rhs = to_matrix(x, big, eps)?.mul(&to_matrix(y, big, eps)?)?.leading_block(n);
    Ok(lhs.sub(&rhs)?.max_abs())
}

/// `to_matrix(x) f`.
pub fn apply(x: &Element, f: &[Complex64], n: usize, eps: Complex64) -> Result<Vec<Complex64>> {
    if f.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.len() });
    }
    to_matrix(x, n, eps)?.mul_vec(f)
}

/// Dimension of `span{C(j,k) f : j, k < n}`.
pub fn orbit_span_dim(f: &[Complex64], n: usize) -> Result<usize> {
    if f.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.len() });
    }
    if f.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::ZeroVector);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut stacked = Vec::with_capacity(n * n * n);
    for j in 0..n as u32 {
        for k in 0..n as u32 {
            let v = apply(&BasisSymbol::Corner(j, k).into(), f, n, zero)?;
            stacked.extend(v);
        }
    }
    Ok(numeric_rank_rect(n * n, n, stacked, RANK_TOL))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub eps: f64,
    pub n: usize,
    pub eigenvalues: Vec<Complex64>,
    /// Largest-modulus eigenvalue, i.e. `eigenvalues[0]`.
    pub edge_eig: Complex64,
}

pub fn edge_eigen_sweep(eps_list: &[f64], n: usize, v: ShiftVariant) -> Result<Vec<SweepRow>> {
    if n > EIGEN_MAX_N {
        return Err(Error::TooLarge { n, limit: EIGEN_MAX_N });
    }
    let t = build_t(v);
    eps_list
        .par_iter()
        .map(|&eps| {
            let eigenvalues = eigenvalues(&to_matrix(&t, n, Complex64::new(eps, 0.0))?)?;
            let edge_eig = eigenvalues[0];
            Ok(SweepRow { eps, n, eigenvalues, edge_eig })
        })
        .collect()
}

/// `steps` evenly spaced points from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![from],
        _ => (0..steps).map(|k| from + (to - from) * k as f64 / (steps - 1) as f64).collect(),
    }
}

/// 17 significant digits, with negative zero printed as zero.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn heatmap_csv(x: &Element, n: usize, eps: Complex64) -> Result<String> {
    let m = to_matrix(x, n, eps)?;
    let mut out = String::from("i,j,re,im\n");
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            let _ = writeln!(out, "{i},{j},{},{}", fmt_float(z.re), fmt_float(z.im));
        }
    }
    Ok(out)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("eps,n,k,re,im,is_edge\n");
    for row in rows {
        for (k, z) in row.eigenvalues.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{k},{},{},{}",
                fmt_float(row.eps),
                row.n,
                fmt_float(z.re),
                fmt_float(z.im),
                u8::from(k == 0)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisSymbol::{Bwd, Corner, Fwd};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn forward_shift_pattern() {
        let m = to_matrix(&Fwd(1).into(), 3, re(0.0)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(m.get(i, j), re(want));
            }
        }
    }

    #[test]
    fn backward_four_sites() {
        let t = build_t(ShiftVariant::Backward);
        let m = to_matrix(&t, 4, re(0.3)).unwrap();
        assert_eq!(m.get(0, 0), re(0.3));
        assert!((0..3).all(|i| m.get(i, i + 1) == re(1.0)));
        let t2 = to_matrix(&t.pow(2), 4, re(0.3)).unwrap();
        let row0: Vec<f64> = (0..4).map(|j| t2.get(0, j).re).collect();
        assert_eq!(row0, vec![0.3 * 0.3, 0.3, 1.0, 0.0]);
    }

    #[test]
    fn rejects_indices_outside_truncation() {
        assert_eq!(to_matrix(&Corner(4, 0).into(), 4, re(0.0)), Err(Error::Truncation { index: 4, n: 4 }));
        assert!(to_matrix(&Fwd(1).into(), 0, re(0.0)).is_err());
    }

    #[test]
    fn compression_is_not_multiplicative_without_padding() {
        // P S* P S P loses the last site, but the symbolic product is I.
        let (x, y) = (Element::from(Bwd(1)), Element::from(Fwd(1)));
        let naive = to_matrix(&x, 4, re(0.0)).unwrap().mul(&to_matrix(&y, 4, re(0.0)).unwrap()).unwrap();
        assert_eq!(naive.get(3, 3), re(0.0));
        assert_eq!(oracle_mul_check(&x, &y, 4, re(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn mul_check_examples() {
        assert_eq!(oracle_mul_check(&Fwd(2).into(), &Bwd(1).into(), 16, re(0.0)).unwrap(), 0.0);
        let t = build_t(ShiftVariant::Forward);
        assert!(oracle_mul_check(&t, &t, 16, re(0.3)).unwrap() <= 1e-13);
    }

    #[test]
    fn apply_eigen_defect() {
        let n = 8;
        let lambda: f64 = 0.5;
        let f: Vec<Complex64> = (0..n).map(|k| re(lambda.powi(k as i32))).collect();
        let out = apply(&build_t(ShiftVariant::Backward), &f, n, re(0.2)).unwrap();
        assert!((out[0].re - 0.7).abs() < 1e-15);
        for k in 1..n - 1 {
            assert_eq!(out[k], f[k] * lambda);
        }
        assert!(apply(&Fwd(1).into(), &f[..3], n, re(0.0)).is_err());
    }

    #[test]
    fn orbit_dimension() {
        let mut f = vec![re(0.0); 8];
        f[3] = re(1.0);
        assert_eq!(orbit_span_dim(&f, 8).unwrap(), 8);
        assert_eq!(orbit_span_dim(&vec![re(0.0); 4], 4), Err(Error::ZeroVector));
    }

    #[test]
    fn sweep_and_csv() {
        let rows = edge_eigen_sweep(&[0.3, 0.0], 4, ShiftVariant::Backward).unwrap();
        assert_eq!(rows[0].edge_eig, re(0.3));
        assert!(rows[1].eigenvalues.iter().all(|z| *z == re(0.0)));
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with("eps,n,k,re,im,is_edge\n"));
        assert!(csv.contains("2.9999999999999999e-1,4,0,2.9999999999999999e-1,0.0000000000000000e0,1\n"));
        assert_eq!(csv.lines().count(), 9);
        let hm = heatmap_csv(&build_t(ShiftVariant::Forward), 4, re(0.3)).unwrap();
        assert_eq!(hm.lines().count(), 17);
        assert_eq!(hm.lines().nth(1).unwrap(), "0,0,2.9999999999999999e-1,0.0000000000000000e0");
        assert_eq!(linspace(-1.5, 1.5, 13)[6], 0.0);
    }

    #[test]
    fn operator_norm_examples() {
        let s = to_matrix(&Fwd(1).into(), 8, re(0.0)).unwrap();
        assert!((operator_norm(&s, NORM_TOL, NORM_MAX_ITER).unwrap() - 1.0).abs() < 1e-9);
        let d = crate::algebra::delta(3, ShiftVariant::Forward);
        let a = to_matrix(&d, 32, re(0.3)).unwrap();
        assert!(operator_norm(&a, NORM_TOL, NORM_MAX_ITER).unwrap() <= 1.3f64.powi(3) - 1.0);
        let d4 = to_matrix(&crate::algebra::delta(4, ShiftVariant::Forward), 32, re(1.0)).unwrap();
        assert_eq!(numeric_rank(&d4, RANK_TOL), 1);
    }
}
