//! Hermitian eigenvalue computation.
//!
//! nalgebra's QL iteration with its default machine-epsilon convergence test
//! can fail to converge (and overflow to non-finite values) on the highly
//! degenerate matrices this crate produces — partial transposes of thermal
//! states carry long runs of equal diagonal entries. Eigenvalues are
//! therefore computed here: nalgebra's Householder tridiagonalization (a
//! finite, always-defined step, real output for complex Hermitian input too)
//! followed by an implicit-shift QL iteration with a relative-plus-floor
//! deflation test.
//!
//! Contract: for Hermitian input the iteration converges; non-convergence is
//! reported as [`Error::Eigensolver`] and is treated as fatal by callers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let tri = m.clone().symmetric_tridiagonalize();
    let d: Vec<f64> = tri.diagonal().iter().copied().collect();
    let e: Vec<f64> = tri.off_diagonal().iter().copied().collect();
    ql_eigenvalues(d, e)
}

/// Eigenvalues of a complex Hermitian matrix, ascending. The
/// tridiagonalization already produces a real tridiagonal form.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)].re]);
    }
    let tri = m.clone().symmetric_tridiagonalize();
    let d: Vec<f64> = tri.diagonal().iter().copied().collect();
    let e: Vec<f64> = tri.off_diagonal().iter().copied().collect();
    ql_eigenvalues(d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.
/// `d` is the diagonal, `e[k]` couples `d[k]` and `d[k+1]`.
fn ql_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    debug_assert_eq!(e.len(), n - 1);
    e.push(0.0); // spare slot so rotations may write e[m] for m = n-1
    let scale = d
        .iter()
        .chain(e.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    // deflation floor keeps the scan terminating when neighboring diagonal
    // entries are both zero
    let floor = f64::EPSILON * scale;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd + floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 80 {
                return Err(Error::Eigensolver(format!(
                    "QL iteration exceeded 80 sweeps at index {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}
