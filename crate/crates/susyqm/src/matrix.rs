//! Dense square complex matrices.
//!
//! Everything in this crate is desk scale (dimension at most a few thousand),
//! so a plain row-major `Vec<Complex64>` is all we need.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square matrix of complex entries, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a real-valued entry function.
    pub fn from_real_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = Complex64::new(f(i, j), 0.0);
            }
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, r) in dst.iter_mut().zip(row) {
                    *d += a * r;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (d, r) in out.data.iter_mut().zip(&rhs.data) {
            *d += r;
        }
        out
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (d, r) in out.data.iter_mut().zip(&rhs.data) {
            *d -= r;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for d in out.data.iter_mut() {
            *d *= s;
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, |i, j| self[(j, i)].conj())
    }

    /// Largest absolute deviation from Hermiticity, max |m[i][j] - conj(m[j][i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let max_dev = self.hermiticity_deviation();
        if max_dev > tol {
            return Err(Error::NotHermitian { tol, max_dev });
        }
        Ok(())
    }

    /// Largest absolute imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0, |a, z| a.max(z.im.abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    /// Real parts as a flat row-major vector.
    pub fn real_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }

    /// y = M x for a complex vector x.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim);
        let n = self.dim;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.data[i * n + j] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Quadratic form <x|M|x>, returned as a complex number.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let y = self.apply(x);
        x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Solve (A - shift I) x = b in place for real square A using partial-pivot LU.
/// Used by inverse-iteration refinement of extreme eigenvalues.
pub(crate) fn lu_solve_shifted(a: &[f64], n: usize, shift: f64, b: &mut [f64]) -> Result<()> {
    let mut lu = a.to_vec();
    for i in 0..n {
        lu[i * n + i] -= shift;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut piv = col;
        let mut best = lu[perm[col] * n + col].abs();
        for row in col + 1..n {
            let v = lu[perm[row] * n + col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == 0.0 {
            return Err(Error::InvalidParameter("singular shifted matrix in LU".into()));
        }
        perm.swap(col, piv);
        let prow = perm[col];
        let pivot = lu[prow * n + col];
        for row in col + 1..n {
            let r = perm[row];
            let factor = lu[r * n + col] / pivot;
            lu[r * n + col] = factor;
            for k in col + 1..n {
                lu[r * n + k] -= factor * lu[prow * n + k];
            }
        }
    }
    // forward substitution
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[perm[i]];
        for k in 0..i {
            acc -= lu[perm[i] * n + k] * y[k];
        }
        y[i] = acc;
    }
    // back substitution
    for i in (0..n).rev() {
        let mut acc = y[i];
        for k in i + 1..n {
            acc -= lu[perm[i] * n + k] * b[k];
        }
        b[i] = acc / lu[perm[i] * n + i];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn matmul_against_identity() {
        let m = CMatrix::from_real_fn(3, |i, j| (i * 3 + j) as f64);
        let id = CMatrix::identity(3);
        assert_eq!(m.matmul(&id), m);
        assert_eq!(id.matmul(&m), m);
    }

    #[test]
    fn hermiticity_check() {
        let mut m = CMatrix::from_fn(2, |i, j| {
            if i < j {
                Complex64::new(1.0, 2.0)
            } else if i > j {
                Complex64::new(1.0, -2.0)
            } else {
                Complex64::new(3.0, 0.0)
            }
        });
        assert!(m.check_hermitian(1e-12).is_ok());
        m[(0, 1)] = Complex64::new(1.0, 2.5);
        assert!(m.check_hermitian(1e-12).is_err());
    }

    #[test]
    fn lu_solves_small_system() {
        // A = [[2,1],[1,3]], b = [5, 10] -> x = [1, 3]
        let a = [2.0, 1.0, 1.0, 3.0];
        let mut b = [5.0, 10.0];
        lu_solve_shifted(&a, 2, 0.0, &mut b).unwrap();
        assert_abs_diff_eq!(b[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b[1], 3.0, epsilon = 1e-12);
    }
}
