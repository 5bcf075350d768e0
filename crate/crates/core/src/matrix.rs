//! Dense complex operator matrices: row-major double-precision storage,
//! the algebra the quantization layer needs, and the Hermiticity
//! bookkeeping used by the dump formats.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;
use crate::{CoreError, Result};

/// Largest dense dimension the crate supports: a 64-level factor squared,
/// which covers the two-factor, two-mode desk-scale ceiling.
pub const MAX_DIM: usize = 4096;

/// Relative threshold below which a matrix is flagged hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex matrix with a Hermiticity flag.
///
/// The flag is measured, not asserted: constructors compute
/// `max|M - M^dagger| <= 1e-12 max|M|` and store the result.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wrap row-major entries; `entries.len()` must be `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(CoreError::ShapeMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if dim > MAX_DIM {
            return Err(CoreError::DimensionTooLarge { dim, max: MAX_DIM });
        }
        let mut m = Self {
            dim,
            entries,
            hermitian: false,
        };
        m.hermitian = m.measure_hermitian();
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Re-measure and update the Hermiticity flag after manual edits.
    pub fn refresh_hermitian(&mut self) {
        self.hermitian = self.measure_hermitian();
    }

    fn measure_hermitian(&self) -> bool {
        let scale = self.max_abs();
        if scale == 0.0 {
            return true;
        }
        let mut dev = 0.0_f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                dev = math::max(dev, d);
            }
        }
        dev <= HERMITIAN_TOL * scale
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0_f64, |acc, e| math::max(acc, e.norm()))
    }

    /// Largest deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                dev = math::max(dev, (self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        dev
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[c * self.dim + r] = self.get(r, c).conj();
            }
        }
        out.hermitian = self.hermitian;
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let entries = self.entries.iter().map(|e| e * factor).collect();
        // Scaling by a complex factor can create or destroy Hermiticity.
        Self::from_entries(self.dim, entries).expect("same shape")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_entries(self.dim, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_entries(self.dim, entries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut entries = vec![Complex64::ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        Self::from_entries(n, entries)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.dim * other.dim;
        if n > MAX_DIM {
            return Err(CoreError::DimensionTooLarge { dim: n, max: MAX_DIM });
        }
        let mut entries = vec![Complex64::ZERO; n * n];
        for ar in 0..self.dim {
            for ac in 0..self.dim {
                let a = self.get(ar, ac);
                if a == Complex64::ZERO {
                    continue;
                }
                for br in 0..other.dim {
                    for bc in 0..other.dim {
                        let r = ar * other.dim + br;
                        let c = ac * other.dim + bc;
                        entries[r * n + c] = a * other.get(br, bc);
                    }
                }
            }
        }
        Self::from_entries(n, entries)
    }

    /// Top-left `n x n` block, the restriction to the first `n` levels.
    pub fn leading_block(&self, n: usize) -> Result<Self> {
        if n > self.dim {
            return Err(CoreError::ShapeMismatch {
                expected: self.dim,
                got: n,
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.get(r, c));
            }
        }
        Self::from_entries(n, entries)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(CoreError::ShapeMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut out = vec![Complex64::ZERO; self.dim];
        for r in 0..self.dim {
            let mut acc = Complex64::ZERO;
            for c in 0..self.dim {
                acc += self.entries[r * self.dim + c] * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Maximum column sum of absolute values (induced 1-norm).
    pub fn norm_one(&self) -> f64 {
        let mut best = 0.0_f64;
        for c in 0..self.dim {
            let mut sum = 0.0;
            for r in 0..self.dim {
                sum += self.get(r, c).norm();
            }
            best = math::max(best, sum);
        }
        best
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(CoreError::ShapeMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}
