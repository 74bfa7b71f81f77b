//! Dense complex matrix kernel: products, Kronecker products, spectral
//! quantities via Hermitian eigensolves of the Gram matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("ragged rows in matrix literal"));
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Real-entry convenience constructor.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let lifted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        CMatrix::from_rows(&lifted)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, alpha: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Matrix product. Zero entries of the left factor are skipped, which
    /// makes products with structurally sparse matrices (tensor-product
    /// generators, first-column supported elements) cheap.
    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row_out = i * out.cols;
                let row_b = k * other.cols;
                for j in 0..other.cols {
                    out.data[row_out + j] += a * other.data[row_b + j];
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Kronecker product; dimensions multiply.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out.set(
                            i * other.rows + p,
                            j * other.cols + q,
                            a * other.get(p, q),
                        );
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with upper-left corner at `(i0, j0)`.
    pub fn set_block(&mut self, i0: usize, j0: usize, block: &CMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| self.get(i0 + i, j0 + j))
    }

    /// New matrix keeping only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// max |m_ij - conj(m_ji)| over all entries.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut d: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                d = d.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        d
    }

    fn to_na(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }

    /// Largest singular value. Computed as the square root of the largest
    /// eigenvalue of the Gram matrix on the smaller side; all-zero rows and
    /// columns are dropped first since they carry no singular weight.
    pub fn spectral_norm(&self) -> Result<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::domain("spectral norm of a dimension-zero matrix"));
        }
        if !self.is_finite() {
            return Err(Error::domain("spectral norm of a non-finite matrix"));
        }
        let live_rows: Vec<usize> = (0..self.rows)
            .filter(|&i| (0..self.cols).any(|j| self.get(i, j) != Complex64::new(0.0, 0.0)))
            .collect();
        let live_cols: Vec<usize> = (0..self.cols)
            .filter(|&j| live_rows.iter().any(|&i| self.get(i, j) != Complex64::new(0.0, 0.0)))
            .collect();
        if live_rows.is_empty() {
            return Ok(0.0);
        }
        let pruned = CMatrix::from_fn(live_rows.len(), live_cols.len(), |i, j| {
            self.get(live_rows[i], live_cols[j])
        });
        let gram = if pruned.rows <= pruned.cols {
            pruned.mul(&pruned.conj_transpose())
        } else {
            pruned.conj_transpose().mul(&pruned)
        };
        let lam = herm_eig_max_unchecked(&gram);
        Ok(lam.max(0.0).sqrt())
    }

    /// Smallest singular value of a tall (rows >= cols) matrix.
    pub fn smallest_singular(&self) -> Result<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::domain("singular values of a dimension-zero matrix"));
        }
        if self.rows < self.cols {
            return Err(Error::domain(format!(
                "smallest_singular requires rows >= cols, got {}x{}",
                self.rows, self.cols
            )));
        }
        let svd = nalgebra::linalg::SVD::new(self.to_na(), false, false);
        Ok(svd
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
            .max(0.0))
    }

    /// All singular values, unordered. Test oracles use this directly.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::domain("singular values of a dimension-zero matrix"));
        }
        let svd = nalgebra::linalg::SVD::new(self.to_na(), false, false);
        Ok(svd.singular_values.iter().copied().collect())
    }

    /// Largest eigenvalue of a Hermitian matrix. Rejects inputs whose
    /// Hermitian defect exceeds the relative tolerance.
    pub fn herm_eig_max(&self) -> Result<f64> {
        if self.rows == 0 || !self.is_square() {
            return Err(Error::domain("herm_eig_max needs a square nonempty matrix"));
        }
        let scale = self.max_abs().max(1.0);
        if self.hermitian_defect() > tol::HERMITIAN_REL * scale {
            return Err(Error::domain("matrix is not Hermitian within tolerance"));
        }
        Ok(herm_eig_max_unchecked(self))
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn herm_eigenvalues(&self) -> Result<Vec<f64>> {
        if self.rows == 0 || !self.is_square() {
            return Err(Error::domain("eigenvalues need a square nonempty matrix"));
        }
        let scale = self.max_abs().max(1.0);
        if self.hermitian_defect() > tol::HERMITIAN_REL * scale {
            return Err(Error::domain("matrix is not Hermitian within tolerance"));
        }
        let sym = symmetrize(self);
        let eig = nalgebra::linalg::SymmetricEigen::new(sym.to_na());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(vals)
    }

    /// Top eigenpair of a Hermitian matrix (no symmetry check).
    pub(crate) fn herm_top_eigenpair(&self) -> (f64, Vec<Complex64>) {
        let sym = symmetrize(self);
        let eig = nalgebra::linalg::SymmetricEigen::new(sym.to_na());
        let mut best = 0usize;
        for (idx, lam) in eig.eigenvalues.iter().enumerate() {
            if *lam > eig.eigenvalues[best] {
                best = idx;
            }
        }
        let v = eig.eigenvectors.column(best).iter().copied().collect();
        (eig.eigenvalues[best], v)
    }

    /// Largest singular value together with a maximizing pair (u, v),
    /// so that u^H M v equals the norm.
    pub(crate) fn top_singular_triple(&self) -> (f64, Vec<Complex64>, Vec<Complex64>) {
        let svd = nalgebra::linalg::SVD::new(self.to_na(), true, true);
        let mut best = 0usize;
        for (idx, s) in svd.singular_values.iter().enumerate() {
            if *s > svd.singular_values[best] {
                best = idx;
            }
        }
        let s = svd.singular_values[best];
        let u = svd
            .u
            .as_ref()
            .expect("left singular vectors requested")
            .column(best)
            .iter()
            .copied()
            .collect();
        let v: Vec<Complex64> = svd
            .v_t
            .as_ref()
            .expect("right singular vectors requested")
            .row(best)
            .iter()
            .map(|z| z.conj())
            .collect();
        (s, u, v)
    }
}

fn symmetrize(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(m.rows, m.cols, |i, j| {
        (m.get(i, j) + m.get(j, i).conj()) * Complex64::new(0.5, 0.0)
    })
}

fn herm_eig_max_unchecked(m: &CMatrix) -> f64 {
    if m.rows == 1 {
        return m.get(0, 0).re;
    }
    let sym = symmetrize(m);
    let eig = nalgebra::linalg::SymmetricEigen::new(sym.to_na());
    eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// l2 norm of a complex vector.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Standard inner product, conjugate-linear in the second slot.
pub fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spectral_norm_identity() {
        assert_relative_eq!(CMatrix::identity(3).spectral_norm().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn spectral_norm_nilpotent() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_relative_eq!(m.spectral_norm().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn spectral_norm_hadamard4() {
        // A4 = A2 (x) A2 has pairwise orthogonal rows, so A4 A4^T = 4 I.
        let a2 = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let a4 = a2.kron(&a2);
        let gram = a4.mul(&a4.conj_transpose());
        let four_i = CMatrix::identity(4).scale(c(4.0, 0.0));
        assert!(gram.sub(&four_i).max_abs() < 1e-12);
        assert_relative_eq!(a4.spectral_norm().unwrap(), 2.0, epsilon = 1e-10);
        // independent eigensolve route
        let lam = gram.herm_eig_max().unwrap();
        assert_relative_eq!(lam.sqrt(), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn spectral_norm_zero_and_errors() {
        assert_eq!(CMatrix::zeros(3, 5).spectral_norm().unwrap(), 0.0);
        assert!(CMatrix::zeros(0, 4).spectral_norm().is_err());
        let mut m = CMatrix::zeros(2, 2);
        m.set(0, 0, c(f64::NAN, 0.0));
        assert!(m.spectral_norm().is_err());
    }

    #[test]
    fn smallest_singular_identity_and_rank_deficient() {
        assert_relative_eq!(CMatrix::identity(4).smallest_singular().unwrap(), 1.0, epsilon = 1e-12);
        // two copies of e1 as columns: rank one
        let m = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(m.smallest_singular().unwrap() < 1e-12);
        assert!(CMatrix::zeros(2, 3).smallest_singular().is_err());
    }

    #[test]
    fn smallest_singular_matches_gram_eig_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let m = CMatrix::from_fn(6, 3, |_, _| {
            c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
        });
        // oracle: eigendecomposition of M^H M
        let gram = m.conj_transpose().mul(&m);
        let evs = gram.herm_eigenvalues().unwrap();
        let oracle = evs[0].max(0.0).sqrt();
        assert_relative_eq!(m.smallest_singular().unwrap(), oracle, epsilon = 1e-10);
        // and the largest eigenvalue route agrees with spectral_norm
        let top = evs.last().unwrap().sqrt();
        assert_relative_eq!(m.spectral_norm().unwrap(), top, epsilon = 1e-10);
    }

    #[test]
    fn kron_basics() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
        let mut e11 = CMatrix::zeros(2, 2);
        e11.set(0, 0, c(1.0, 0.0));
        let k = e11.kron(&e11);
        let mut expected = CMatrix::zeros(4, 4);
        expected.set(0, 0, c(1.0, 0.0));
        assert_eq!(k, expected);
    }

    #[test]
    fn conj_transpose_example() {
        let m = CMatrix::from_rows(&[vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let mh = m.conj_transpose();
        assert_eq!(mh.get(0, 0), c(0.0, -1.0));
        assert_eq!(mh.get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn herm_eig_max_examples() {
        assert_relative_eq!(CMatrix::identity(3).herm_eig_max().unwrap(), 1.0, epsilon = 1e-12);
        // sum_s E_{1s} E_{s1} = n * E_{11}
        for n in [2usize, 5, 8] {
            let mut sum = CMatrix::zeros(n, n);
            for s in 0..n {
                let mut e1s = CMatrix::zeros(n, n);
                e1s.set(0, s, c(1.0, 0.0));
                let mut es1 = CMatrix::zeros(n, n);
                es1.set(s, 0, c(1.0, 0.0));
                sum = sum.add(&e1s.mul(&es1));
            }
            let mut expected = CMatrix::zeros(n, n);
            expected.set(0, 0, c(n as f64, 0.0));
            assert!(sum.sub(&expected).max_abs() < 1e-15);
            assert_relative_eq!(sum.herm_eig_max().unwrap(), n as f64, epsilon = 1e-10);
        }
    }

    #[test]
    fn herm_eig_max_rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(m.herm_eig_max().is_err());
    }
}
