//! Householder reduction to tridiagonal form: real skew-symmetric and
//! complex Hermitian variants.

use num_complex::Complex64;

use crate::matrix::{CMatrix, HermitianMatrix, RMatrix, SkewMatrix};

/// Reduce W (real skew-symmetric) by an orthogonal similarity to
/// skew-tridiagonal form: Q^T W Q = T with T[k+1][k] = b[k].
/// Returns (Q, b).
pub fn skew_tridiagonalize(w: &SkewMatrix) -> (RMatrix, Vec<f64>) {
    let n = w.dim();
    let mut a = w.to_dense();
    let mut reflectors: Vec<(usize, Vec<f64>, f64)> = Vec::new();

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1; // length of the column below the diagonal
        let mut x = vec![0.0; m];
        for i in 0..m {
            x[i] = a[(k + 1 + i, k)];
        }
        let sigma = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if sigma == 0.0 {
            continue;
        }
        let alpha = x[0];
        let beta = if alpha >= 0.0 { -sigma } else { sigma };
        let mut u = x;
        u[0] -= beta;
        // ||u||^2 = 2 sigma (sigma + |alpha|)
        let gamma = 1.0 / (sigma * (sigma + alpha.abs()));

        // p = A_sub * u over the trailing block
        let mut p = vec![0.0; m];
        for i in 0..m {
            let mut acc = 0.0;
            for j in 0..m {
                acc += a[(k + 1 + i, k + 1 + j)] * u[j];
            }
            p[i] = acc;
        }
        // A <- A + gamma (u p^T - p u^T): rank-2 skew update
        for i in 0..m {
            for j in 0..m {
                a[(k + 1 + i, k + 1 + j)] += gamma * (u[i] * p[j] - p[i] * u[j]);
            }
        }
        a[(k + 1, k)] = beta;
        a[(k, k + 1)] = -beta;
        for i in 1..m {
            a[(k + 1 + i, k)] = 0.0;
            a[(k, k + 1 + i)] = 0.0;
        }
        reflectors.push((k, u, gamma));
    }

    // Q = P_0 P_1 ... applied to the identity, last reflector first.
    let mut q = RMatrix::identity(n);
    for (k, u, gamma) in reflectors.iter().rev() {
        let m = u.len();
        for c in 0..n {
            let mut t = 0.0;
            for j in 0..m {
                t += u[j] * q[(k + 1 + j, c)];
            }
            let t = gamma * t;
            for j in 0..m {
                q[(k + 1 + j, c)] -= t * u[j];
            }
        }
    }

    let mut b = vec![0.0; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(1) {
        b[k] = a[(k + 1, k)];
    }
    (q, b)
}

/// Reduce a complex Hermitian matrix by a unitary similarity to a real
/// symmetric tridiagonal matrix: Q* H Q = tridiag(d, e) with e >= 0.
/// The phase scaling that makes the sub-diagonal real is folded into Q.
pub fn hermitian_tridiagonalize(h: &HermitianMatrix) -> (CMatrix, Vec<f64>, Vec<f64>) {
    let n = h.dim();
    let mut a = h.to_dense();
    let mut reflectors: Vec<(usize, Vec<Complex64>, f64)> = Vec::new();

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut x = vec![Complex64::new(0.0, 0.0); m];
        for i in 0..m {
            x[i] = a[(k + 1 + i, k)];
        }
        let sigma = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if sigma == 0.0 {
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() > 0.0 {
            alpha / alpha.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let beta = -phase * sigma;
        let mut u = x;
        u[0] -= beta;
        let gamma = 1.0 / (sigma * (sigma + alpha.norm()));

        // q = gamma (A u - (gamma/2) (u* A u) u); A <- A - q u* - u q*
        let mut p = vec![Complex64::new(0.0, 0.0); m];
        for i in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m {
                acc += a[(k + 1 + i, k + 1 + j)] * u[j];
            }
            p[i] = gamma * acc;
        }
        let upu: Complex64 = u.iter().zip(p.iter()).map(|(ui, pi)| ui.conj() * pi).sum();
        let kappa = 0.5 * gamma * upu.re;
        let q: Vec<Complex64> = p.iter().zip(u.iter()).map(|(pi, ui)| pi - kappa * ui).collect();
        for i in 0..m {
            for j in 0..m {
                let delta = q[i] * u[j].conj() + u[i] * q[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= delta;
            }
        }
        a[(k + 1, k)] = beta;
        a[(k, k + 1)] = beta.conj();
        for i in 1..m {
            a[(k + 1 + i, k)] = Complex64::new(0.0, 0.0);
            a[(k, k + 1 + i)] = Complex64::new(0.0, 0.0);
        }
        reflectors.push((k, u, gamma));
    }

    let mut q = CMatrix::identity(n);
    for (k, u, gamma) in reflectors.iter().rev() {
        let m = u.len();
        for c in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for j in 0..m {
                t += u[j].conj() * q[(k + 1 + j, c)];
            }
            let t = gamma * t;
            for j in 0..m {
                let uj = u[j];
                q[(k + 1 + j, c)] -= t * uj;
            }
        }
    }

    let mut d = vec![0.0; n];
    for i in 0..n {
        d[i] = a[(i, i)].re;
    }
    let mut e = vec![0.0; n.saturating_sub(1)];
    // Column phases making the sub-diagonal real and non-negative.
    let mut t = Complex64::new(1.0, 0.0);
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let beta = a[(k + 1, k)];
        e[k] = beta.norm();
        if e[k] > 0.0 {
            t *= beta / e[k];
        }
        phases[k + 1] = t;
    }
    for j in 0..n {
        let ph = phases[j];
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    (q, d, e)
}
