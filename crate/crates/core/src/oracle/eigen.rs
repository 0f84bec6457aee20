use num_complex::Complex64;

use super::dense::DenseMatrix;
use crate::error::{Error, Result};

pub const EIGEN_MAX_N: usize = 256;
const TOL: f64 = 1e-12;

/// All eigenvalues, sorted by modulus descending and then argument ascending.
pub fn eigenvalues(a: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = a.n();
    if n > EIGEN_MAX_N {
        return Err(Error::TooLarge { n, limit: EIGEN_MAX_N });
    }
    let mut vals = if a.is_upper_triangular() || a.is_lower_triangular() {
        (0..n).map(|i| a.get(i, i)).collect()
    } else {
        let mut h = to_rows(a);
        hessenberg(&mut h);
        shifted_qr(&mut h)?
    };
    sort_spectrum(&mut vals);
    Ok(vals)
}

pub fn sort_spectrum(vals: &mut [Complex64]) {
    // +0.0 normalizes negative zeros so ordering and printing are stable.
    for v in vals.iter_mut() {
        *v = Complex64::new(v.re + 0.0, v.im + 0.0);
    }
    // Moduli are compared at 12 significant digits so that pairs such as
    // +-lambda, equal up to rounding, order by argument.
    let key = |z: &Complex64| (z.norm() * 1e12).round();
    vals.sort_by(|x, y| key(y).total_cmp(&key(x)).then(x.arg().total_cmp(&y.arg())));
}

fn to_rows(a: &DenseMatrix) -> Vec<Vec<Complex64>> {
    a.rows().map(<[Complex64]>::to_vec).collect()
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let alpha: f64 = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + phase*alpha*e1, reflector I - 2 v v^H / (v^H v)
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(Complex64::norm_sqr).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H <- P H
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[k + 1 + t][j]).sum();
            let f = s * 2.0 / vnorm2;
            for (t, vi) in v.iter().enumerate() {
                h[k + 1 + t][j] -= vi * f;
            }
        }
        // H <- H P
        for row in h.iter_mut() {
            let s: Complex64 = v.iter().enumerate().map(|(t, vi)| row[k + 1 + t] * vi).sum();
            let f = s * 2.0 / vnorm2;
            for (t, vi) in v.iter().enumerate() {
                row[k + 1 + t] -= f * vi.conj();
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = Complex64::new(0.0, 0.0);
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // eigenvalue of [[a,b],[c,d]] closest to d
    let tr_half = (a + d) / 2.0;
    let disc = ((a - d) / 2.0 * ((a - d) / 2.0) + b * c).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Givens rotation `(c, s)` with `[c s; -conj(s) c] [x; y] = [r; 0]`, `c` real.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let nx = x.norm();
    let r = (nx * nx + y.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if nx == 0.0 {
        return (0.0, y.conj() / y.norm());
    }
    let c = nx / r;
    let s = (x / nx) * y.conj() / r;
    (c, s)
}

fn shifted_qr(h: &mut [Vec<Complex64>]) -> Result<Vec<Complex64>> {
    let n = h.len();
    let fro: f64 = h.iter().flatten().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let max_sweeps = 100 * n.max(1);
    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let scale = h[l - 1][l - 1].norm() + h[l][l].norm();
            let scale = if scale == 0.0 { fro } else { scale };
            if h[l][l - 1].norm() <= TOL * scale {
                h[l][l - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        sweeps += 1;
        since_deflation += 1;
        if sweeps > max_sweeps {
            return Err(Error::QrStall { row: hi, col: hi - 1, magnitude: h[hi][hi - 1].norm(), sweeps: max_sweeps });
        }
        let mu = if since_deflation % 11 == 0 {
            // exceptional shift to break cycles
            h[hi][hi] + Complex64::new(h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for (k, row) in h.iter_mut().enumerate().take(hi + 1).skip(l) {
            row[k] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (off, (c, s)) in rots.into_iter().enumerate() {
            let k = l + off;
            for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(l) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + y * s.conj();
                row[k + 1] = -x * s + y * c;
            }
        }
        for (k, row) in h.iter_mut().enumerate().take(hi + 1).skip(l) {
            row[k] += mu;
        }
    }
    Ok((0..n).map(|i| h[i][i]).collect())
}
