//! Complex LU factorization with partial pivoting.

use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::CMatrix;

#[derive(Debug)]
pub struct ComplexLu {
    n: usize,
    lu: CMatrix,
    piv: Vec<usize>,
    sign: i32,
}

impl ComplexLu {
    /// Factor a square matrix. Fails only on an exactly zero pivot; tiny
    /// pivots are allowed on purpose (shifted inverse iteration relies on
    /// nearly singular factorizations).
    pub fn factor(a: &CMatrix) -> Result<Self, LinalgError> {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "LU requires a square matrix");
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut sign = 1;
        for col in 0..n {
            let mut best = col;
            let mut best_mag = lu[(col, col)].norm_sqr();
            for r in col + 1..n {
                let mag = lu[(r, col)].norm_sqr();
                if mag > best_mag {
                    best = r;
                    best_mag = mag;
                }
            }
            if best != col {
                for c in 0..n {
                    let t = lu[(col, c)];
                    lu[(col, c)] = lu[(best, c)];
                    lu[(best, c)] = t;
                }
                piv.swap(col, best);
                sign = -sign;
            }
            let pivot = lu[(col, col)];
            if pivot.norm_sqr() == 0.0 {
                return Err(LinalgError::Singular { pivot: col });
            }
            for r in col + 1..n {
                let f = lu[(r, col)] / pivot;
                lu[(r, col)] = f;
                if f.norm_sqr() != 0.0 {
                    for c in col + 1..n {
                        let head = lu[(col, c)];
                        lu[(r, c)] -= f * head;
                    }
                }
            }
        }
        Ok(Self { n, lu, piv, sign })
    }

    /// Factor A - shift*I.
    pub fn factor_shifted(a: &CMatrix, shift: Complex64) -> Result<Self, LinalgError> {
        let mut m = a.clone();
        for i in 0..a.nrows() {
            m[(i, i)] -= shift;
        }
        Self::factor(&m)
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        x
    }

    pub fn det(&self) -> Complex64 {
        let mut d = Complex64::new(self.sign as f64, 0.0);
        for i in 0..self.n {
            d *= self.lu[(i, i)];
        }
        d
    }
}
