//! Dense and packed matrix storage used throughout the crate.
//!
//! `SkewMatrix` stores only the strict lower triangle of a real
//! anti-symmetric matrix, so `W = -W^T` and a zero diagonal hold by
//! construction rather than by convention. `TournamentMatrix` packs the
//! 0/1 outcomes of a round-robin tournament the same way.

use num_complex::Complex64;
use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use crate::error::MatrixError;

/// Real anti-symmetric matrix, strict lower triangle packed row-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    n: usize,
    lower: Vec<f64>,
}

#[inline]
fn lower_index(i: usize, j: usize) -> usize {
    debug_assert!(i > j);
    i * (i - 1) / 2 + j
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        Ok(Self {
            n,
            lower: vec![0.0; n * (n - 1) / 2],
        })
    }

    /// Build from the packed strict lower triangle (row-wise: (1,0), (2,0), (2,1), ...).
    pub fn from_lower(n: usize, lower: Vec<f64>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if lower.len() != n * (n - 1) / 2 {
            return Err(MatrixError::DimensionMismatch {
                expected: n * (n - 1) / 2,
                actual: lower.len(),
            });
        }
        if !lower.iter().all(|x| x.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        Ok(Self { n, lower })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// Entry W_{ij}; antisymmetry and the zero diagonal are implied.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else if i > j {
            self.lower[lower_index(i, j)]
        } else {
            -self.lower[lower_index(j, i)]
        }
    }

    /// Set W_{ij} = v for i > j (and implicitly W_{ji} = -v).
    #[inline]
    pub fn set_lower(&mut self, i: usize, j: usize, v: f64) {
        self.lower[lower_index(i, j)] = v;
    }

    /// y = W x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 1..n {
            let base = i * (i - 1) / 2;
            let mut acc = 0.0;
            for j in 0..i {
                let w = self.lower[base + j];
                acc += w * x[j];
                y[j] -= w * x[i];
            }
            y[i] += acc;
        }
        y
    }

    /// tr(W^2) = -2 * sum of squared lower-triangle entries; exact in fp.
    pub fn trace_of_square(&self) -> f64 {
        -2.0 * self.lower.iter().map(|x| x * x).sum::<f64>()
    }

    pub fn frobenius_norm(&self) -> f64 {
        (2.0 * self.lower.iter().map(|x| x * x).sum::<f64>()).sqrt()
    }

    /// Dense real copy.
    pub fn to_dense(&self) -> RMatrix {
        let n = self.n;
        let mut a = RMatrix::zeros(n, n);
        for i in 1..n {
            for j in 0..i {
                let w = self.lower[lower_index(i, j)];
                a[(i, j)] = w;
                a[(j, i)] = -w;
            }
        }
        a
    }

    /// Dense complex M = iW (anti-symmetric Hermitian).
    pub fn to_hermitian_dense(&self) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n, n);
        for i in 1..n {
            for j in 0..i {
                let w = self.lower[lower_index(i, j)];
                m[(i, j)] = Complex64::new(0.0, w);
                m[(j, i)] = Complex64::new(0.0, -w);
            }
        }
        m
    }

    /// Conjugate by a permutation: returns P W P^T with (PWP^T)_{ij} = W_{p(i),p(j)}.
    pub fn permuted(&self, p: &[usize]) -> Result<Self, MatrixError> {
        if p.len() != self.n {
            return Err(MatrixError::DimensionMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        let mut out = SkewMatrix::zeros(self.n)?;
        for i in 1..self.n {
            for j in 0..i {
                out.set_lower(i, j, self.get(p[i], p[j]));
            }
        }
        Ok(out)
    }

    /// CSV form: `# skew n=<n>` header, then n-1 rows of lower-triangle entries.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# skew n={}", self.n);
        for i in 1..self.n {
            let row: Vec<String> = (0..i)
                .map(|j| format!("{}", self.lower[lower_index(i, j)]))
                .collect();
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let (n, body) = parse_csv_header(text, "skew")?;
        let mut lower = Vec::with_capacity(n * (n - 1) / 2);
        for line in body {
            for field in line.split(',') {
                let v: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| MatrixError::Parse(field.trim().to_string()))?;
                lower.push(v);
            }
        }
        Self::from_lower(n, lower)
    }
}

/// 0/1 round-robin outcome matrix: D_{ii} = 0, D_{ij} = 1 - D_{ji}.
/// Strict upper triangle packed row-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentMatrix {
    n: usize,
    upper: Vec<u8>,
}

#[inline]
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl TournamentMatrix {
    pub fn from_upper_bits(n: usize, upper: Vec<u8>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if upper.len() != n * (n - 1) / 2 {
            return Err(MatrixError::DimensionMismatch {
                expected: n * (n - 1) / 2,
                actual: upper.len(),
            });
        }
        if !upper.iter().all(|&b| b <= 1) {
            return Err(MatrixError::Parse("tournament bits must be 0 or 1".into()));
        }
        Ok(Self { n, upper })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        if i == j {
            0
        } else if i < j {
            self.upper[upper_index(self.n, i, j)]
        } else {
            1 - self.upper[upper_index(self.n, j, i)]
        }
    }

    /// W with W_{ij} = 2 D_{ij} - 1 off the diagonal, so M = iW = 2iD - i(J - I).
    pub fn to_skew(&self) -> SkewMatrix {
        let mut w = SkewMatrix::zeros(self.n).expect("tournament dim >= 1");
        for i in 1..self.n {
            for j in 0..i {
                w.set_lower(i, j, 2.0 * f64::from(self.get(i, j)) - 1.0);
            }
        }
        w
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# tournament n={}", self.n);
        for i in 0..self.n - 1 {
            let row: Vec<String> = (i + 1..self.n)
                .map(|j| format!("{}", self.get(i, j)))
                .collect();
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let (n, body) = parse_csv_header(text, "tournament")?;
        let mut bits = vec![0u8; n * (n - 1) / 2];
        let mut row = 0usize;
        for line in body {
            for (k, field) in line.split(',').enumerate() {
                let v: u8 = field
                    .trim()
                    .parse()
                    .map_err(|_| MatrixError::Parse(field.trim().to_string()))?;
                let j = row + 1 + k;
                if j >= n {
                    return Err(MatrixError::Parse("row too long".into()));
                }
                bits[upper_index(n, row, j)] = v;
            }
            row += 1;
        }
        Self::from_upper_bits(n, bits)
    }
}

fn parse_csv_header<'a>(text: &'a str, kind: &str) -> Result<(usize, Vec<&'a str>), MatrixError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(MatrixError::EmptyMatrix)?;
    let prefix = format!("# {} n=", kind);
    let n: usize = header
        .strip_prefix(&prefix)
        .ok_or_else(|| MatrixError::Parse(format!("expected header `{}<n>`", prefix)))?
        .trim()
        .parse()
        .map_err(|_| MatrixError::Parse(header.to_string()))?;
    Ok((n, lines.collect()))
}

/// Complex Hermitian matrix, upper triangle (with real diagonal) packed row-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    upper: Vec<Complex64>,
}

#[inline]
fn herm_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    i * (2 * n - i + 1) / 2 + (j - i)
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        Ok(Self {
            n,
            upper: vec![Complex64::new(0.0, 0.0); n * (n + 1) / 2],
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i <= j {
            self.upper[herm_index(self.n, i, j)]
        } else {
            self.upper[herm_index(self.n, j, i)].conj()
        }
    }

    /// Set the (i, j) entry with i <= j. Diagonal entries must be real.
    pub fn set_upper(&mut self, i: usize, j: usize, v: Complex64) -> Result<(), MatrixError> {
        if i == j && v.im != 0.0 {
            return Err(MatrixError::NonHermitianDiagonal);
        }
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(MatrixError::NonFinite);
        }
        self.upper[herm_index(self.n, i, j)] = v;
        Ok(())
    }

    pub fn from_dense(a: &CMatrix) -> Result<Self, MatrixError> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(MatrixError::DimensionMismatch {
                expected: n,
                actual: a.ncols(),
            });
        }
        let mut h = Self::zeros(n)?;
        for i in 0..n {
            for j in i..n {
                let v = a[(i, j)];
                if (v - a[(j, i)].conj()).norm() > 1e-12 * (1.0 + v.norm()) {
                    return Err(MatrixError::NotHermitian);
                }
                let v = if i == j { Complex64::new(v.re, 0.0) } else { v };
                h.set_upper(i, j, v)?;
            }
        }
        Ok(h)
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        for i in 0..self.rows {
            self[(i, j)] = col[i];
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// y = A x.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            y[i] = acc;
        }
        y
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}
