//! Implicit-shift QL iteration for real symmetric tridiagonal matrices.
//!
//! Ported from the classic EISPACK/Jama `tql2` routine. Transforms are
//! accumulated through the [`ColumnOps`] hook so the same kernel serves the
//! real, complex and no-vector paths.

use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::{CMatrix, RMatrix};

/// Receiver for the plane rotations and column swaps of the QL sweep.
pub trait ColumnOps {
    /// Apply the rotation mixing columns `i` and `i+1`:
    /// `col[i+1] <- s*col[i] + c*col[i+1]`, `col[i] <- c*col[i] - s*col[i+1]`.
    fn rotate(&mut self, i: usize, c: f64, s: f64);
    fn swap(&mut self, a: usize, b: usize);
}

/// No accumulation: eigenvalues only.
pub struct NoAccum;

impl ColumnOps for NoAccum {
    #[inline]
    fn rotate(&mut self, _i: usize, _c: f64, _s: f64) {}
    #[inline]
    fn swap(&mut self, _a: usize, _b: usize) {}
}

impl ColumnOps for RMatrix {
    fn rotate(&mut self, i: usize, c: f64, s: f64) {
        for k in 0..self.nrows() {
            let f = self[(k, i + 1)];
            self[(k, i + 1)] = s * self[(k, i)] + c * f;
            self[(k, i)] = c * self[(k, i)] - s * f;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        for k in 0..self.nrows() {
            let t = self[(k, a)];
            self[(k, a)] = self[(k, b)];
            self[(k, b)] = t;
        }
    }
}

impl ColumnOps for CMatrix {
    fn rotate(&mut self, i: usize, c: f64, s: f64) {
        for k in 0..self.nrows() {
            let f = self[(k, i + 1)];
            self[(k, i + 1)] = s * self[(k, i)] + c * f;
            self[(k, i)] = c * self[(k, i)] - s * f;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.swap_columns(a, b);
    }
}

fn hypot(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Diagonalize the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples rows `i` and `i+1`; `e[n-1]` is scratch).
/// On return `d` holds the eigenvalues in ascending order and the accumulated
/// transforms have been pushed into `accum`. The total sweep budget is `30 * n`.
pub fn tridiag_ql<A: ColumnOps>(d: &mut [f64], e: &mut [f64], accum: &mut A) -> Result<(), LinalgError> {
    let n = d.len();
    // e[n-1] is scratch space for the sweep; callers pad with one extra slot.
    assert_eq!(e.len(), n);
    if n <= 1 {
        return Ok(());
    }
    let max_sweeps = 30 * n;
    let mut sweeps = 0usize;
    let eps = f64::EPSILON;

    for l in 0..n {
        'converge: loop {
            // Find a negligible off-diagonal element to split at.
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break 'converge;
            }
            sweeps += 1;
            if sweeps > max_sweeps {
                return Err(LinalgError::QlNoConvergence { max_sweeps });
            }

            // Wilkinson-style shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            if g < 0.0 {
                r = -r;
            }
            g = d[m] - d[l] + e[l] / (g + r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;

            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Recover from underflow and restart this eigenvalue.
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
                f = 0.0;
                let _ = f;
                accum.rotate(i, c, s);
            }
            if underflow {
                continue 'converge;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Ascending order, carrying columns along.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            accum.swap(i, k);
        }
    }
    Ok(())
}

/// i^k for the unitary diag(i^k) conjugation that maps a skew-tridiagonal
/// matrix times i to a real symmetric tridiagonal one.
pub fn i_power(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}
