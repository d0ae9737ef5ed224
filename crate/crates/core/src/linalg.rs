//! Dense complex matrix helpers on top of nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<Complex64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Operator (spectral) norm, the largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest entry of `m - m*`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// True when every off-diagonal entry is exactly zero.
pub fn is_diagonal(m: &CMatrix) -> bool {
    m.iter()
        .enumerate()
        .all(|(k, z)| k % m.nrows() == k / m.nrows() || *z == C64::new(0.0, 0.0))
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(HermitianEigen { values: vec![], vectors: CMatrix::zeros(0, 0) });
    }
    if is_diagonal(m) {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re));
        let values = idx.iter().map(|&k| m[(k, k)].re).collect();
        let mut vectors = CMatrix::zeros(n, n);
        for (col, &k) in idx.iter().enumerate() {
            vectors[(k, col)] = c(1.0);
        }
        return Ok(HermitianEigen { values, vectors });
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = idx.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &k) in idx.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(k));
    }
    Ok(HermitianEigen { values, vectors })
}

impl HermitianEigen {
    /// U f(D) U* for an already-evaluated diagonal.
    pub fn recompose(&self, diag: &[C64]) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= diag[j];
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// Applies a real function to a Hermitian matrix through its spectrum.
///
/// Diagonal inputs are handled entrywise so that the result is exact.
pub fn hermitian_function<F>(m: &CMatrix, f: F) -> Result<CMatrix>
where
    F: Fn(f64) -> f64,
{
    if is_diagonal(m) {
        let mut out = CMatrix::zeros(m.nrows(), m.ncols());
        for k in 0..m.nrows() {
            let lambda = m[(k, k)].re;
            let v = f(lambda);
            if !v.is_finite() {
                return Err(Error::UndefinedAtEigenvalue { eigenvalue: lambda });
            }
            out[(k, k)] = c(v);
        }
        return Ok(out);
    }
    let eig = hermitian_eigen(m)?;
    let mut diag = Vec::with_capacity(eig.values.len());
    for &lambda in &eig.values {
        let v = f(lambda);
        if !v.is_finite() {
            return Err(Error::UndefinedAtEigenvalue { eigenvalue: lambda });
        }
        diag.push(c(v));
    }
    Ok(eig.recompose(&diag))
}

/// Applies a complex-valued function of a real variable to a Hermitian matrix.
pub fn hermitian_function_complex<F>(m: &CMatrix, f: F) -> Result<CMatrix>
where
    F: Fn(f64) -> C64,
{
    let eig = hermitian_eigen(m)?;
    let diag: Vec<C64> = eig.values.iter().map(|&l| f(l)).collect();
    Ok(eig.recompose(&diag))
}

/// Block diagonal embedding of square blocks.
pub fn block_diag(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_function_is_exact() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(4.0)]));
        let r = hermitian_function(&m, f64::sqrt).unwrap();
        assert_eq!(r[(0, 0)], c(1.0));
        assert_eq!(r[(1, 1)], c(2.0));
        assert_eq!(r[(0, 1)], c(0.0));
    }

    #[test]
    fn eigen_reconstructs() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(2.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), c(3.0)],
        );
        let e = hermitian_eigen(&m).unwrap();
        let d: Vec<C64> = e.values.iter().map(|&v| c(v)).collect();
        assert!(max_abs(&(e.recompose(&d) - &m)) < 1e-13);
        assert!(e.values[0] <= e.values[1]);
    }

    #[test]
    fn undefined_function_names_eigenvalue() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0), c(1.0)]));
        let err = hermitian_function(&m, f64::ln).unwrap_err();
        assert_eq!(err, Error::UndefinedAtEigenvalue { eigenvalue: 0.0 });
    }
}
