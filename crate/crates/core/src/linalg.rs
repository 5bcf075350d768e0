//! Dense linear algebra on [`OperatorMatrix`]: LU solves, the matrix
//! exponential, and Hermitian eigenvalues.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;
use crate::matrix::OperatorMatrix;
use crate::{CoreError, Result};

/// Solve `A X = B` by LU decomposition with partial pivoting.
pub fn solve(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if a.dim() != b.dim() {
        return Err(CoreError::ShapeMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let n = a.dim();
    let mut lu: Vec<Complex64> = a.entries().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        // Partial pivot on column magnitude.
        let mut pivot_row = col;
        let mut pivot_mag = lu[col * n + col].norm();
        for row in (col + 1)..n {
            let mag = lu[row * n + col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag == 0.0 {
            return Err(CoreError::InvalidParameter {
                field: "matrix",
                value: 0.0,
                requirement: "must be nonsingular for the linear solve",
            });
        }
        if pivot_row != col {
            for k in 0..n {
                lu.swap(col * n + k, pivot_row * n + k);
            }
            perm.swap(col, pivot_row);
        }
        let pivot = lu[col * n + col];
        for row in (col + 1)..n {
            let factor = lu[row * n + col] / pivot;
            lu[row * n + col] = factor;
            for k in (col + 1)..n {
                let sub = factor * lu[col * n + k];
                lu[row * n + k] -= sub;
            }
        }
    }

    // Forward/back substitution per column of B.
    let mut x = vec![Complex64::ZERO; n * n];
    let mut work = vec![Complex64::ZERO; n];
    for bcol in 0..n {
        for row in 0..n {
            work[row] = b.get(perm[row], bcol);
        }
        for row in 1..n {
            for k in 0..row {
                let sub = lu[row * n + k] * work[k];
                work[row] -= sub;
            }
        }
        for row in (0..n).rev() {
            for k in (row + 1)..n {
                let sub = lu[row * n + k] * work[k];
                work[row] -= sub;
            }
            work[row] /= lu[row * n + row];
        }
        for row in 0..n {
            x[row * n + bcol] = work[row];
        }
    }
    OperatorMatrix::from_entries(n, x)
}

// Numerator coefficients of the order-13 diagonal Pade approximant.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

// Scaling threshold for the order-13 approximant.
const THETA13: f64 = 5.371_920_351_148_152;

/// Matrix exponential by scaling-and-squaring with the Pade order fixed
/// at 13, so repeated runs see an identical operation sequence.
pub fn expm(a: &OperatorMatrix) -> Result<OperatorMatrix> {
    let n = a.dim();
    if n == 0 {
        return Ok(OperatorMatrix::zeros(0));
    }

    let norm = a.norm_one();
    let squarings = if norm > THETA13 {
        math::ceil(math::log2(norm / THETA13)) as u32
    } else {
        0
    };
    let mut inv_pow2 = 1.0;
    for _ in 0..squarings {
        inv_pow2 *= 0.5;
    }
    let a_scaled = a.scale(Complex64::new(inv_pow2, 0.0));

    let eye = OperatorMatrix::identity(n);
    let a2 = a_scaled.mul(&a_scaled)?;
    let a4 = a2.mul(&a2)?;
    let a6 = a2.mul(&a4)?;

    let w1 = a6
        .scale(PADE13[13].into())
        .add(&a4.scale(PADE13[11].into()))?
        .add(&a2.scale(PADE13[9].into()))?;
    let w2 = a6
        .scale(PADE13[7].into())
        .add(&a4.scale(PADE13[5].into()))?
        .add(&a2.scale(PADE13[3].into()))?
        .add(&eye.scale(PADE13[1].into()))?;
    let u = a_scaled.mul(&a6.mul(&w1)?.add(&w2)?)?;

    let z1 = a6
        .scale(PADE13[12].into())
        .add(&a4.scale(PADE13[10].into()))?
        .add(&a2.scale(PADE13[8].into()))?;
    let z2 = a6
        .scale(PADE13[6].into())
        .add(&a4.scale(PADE13[4].into()))?
        .add(&a2.scale(PADE13[2].into()))?
        .add(&eye.scale(PADE13[0].into()))?;
    let v = a6.mul(&z1)?.add(&z2)?;

    // exp(A) ~ (V - U)^{-1} (V + U), then undo the scaling by squaring.
    let mut result = solve(&v.sub(&u)?, &v.add(&u)?)?;
    for _ in 0..squarings {
        result = result.mul(&result)?;
    }
    Ok(result)
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian matrix, ascending, by the two-sided
/// complex Jacobi iteration.
pub fn hermitian_eigenvalues(m: &OperatorMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = m.max_abs();
    if m.hermitian_deviation() > 1e-10 * math::max(scale, 1.0) {
        return Err(CoreError::InvalidParameter {
            field: "matrix",
            value: m.hermitian_deviation(),
            requirement: "must be hermitian for the eigensolver",
        });
    }

    let mut a: Vec<Complex64> = m.entries().to_vec();
    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in (r + 1)..n {
                s += a[r * n + c].norm_sqr();
            }
        }
        s
    };

    let tol = (1e-30 * scale * scale).max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    while off(&a) > tol {
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(CoreError::EigenNoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.norm() == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Unitary 2x2 rotation annihilating the (p, q) entry.
                let mag = apq.norm();
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = phase * (t * c);

                // Columns p and q.
                for r in 0..n {
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = arp * c - arq * s.conj();
                    a[r * n + q] = arp * s + arq * c;
                }
                // Rows p and q.
                for col in 0..n {
                    let apc = a[p * n + col];
                    let aqc = a[q * n + col];
                    a[p * n + col] = apc * c - aqc * s;
                    a[q * n + col] = apc * s.conj() + aqc * c;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = OperatorMatrix::from_entries(
            2,
            vec![c(1.0, 2.0), c(3.0, 0.0), c(0.0, -1.0), c(2.0, 2.0)],
        )
        .unwrap();
        let x = solve(&OperatorMatrix::identity(2), &b).unwrap();
        for (xe, be) in x.entries().iter().zip(b.entries()) {
            assert!((xe - be).norm() < 1e-14);
        }
    }

    #[test]
    fn solve_roundtrip() {
        let a = OperatorMatrix::from_entries(
            3,
            vec![
                c(4.0, 0.0),
                c(1.0, 1.0),
                c(0.0, 0.5),
                c(1.0, -1.0),
                c(3.0, 0.0),
                c(0.2, 0.0),
                c(0.0, -0.5),
                c(0.2, 0.0),
                c(5.0, 0.0),
            ],
        )
        .unwrap();
        let x = solve(&a, &OperatorMatrix::identity(3)).unwrap();
        let recon = a.mul(&x).unwrap();
        for r in 0..3 {
            for col in 0..3 {
                let expect = if r == col { 1.0 } else { 0.0 };
                assert!((recon.get(r, col) - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn expm_zero_is_identity() {
        let e = expm(&OperatorMatrix::zeros(3)).unwrap();
        for r in 0..3 {
            for col in 0..3 {
                let expect = if r == col { 1.0 } else { 0.0 };
                assert!((e.get(r, col) - c(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn expm_diagonal_matches_scalar_exp() {
        let mut m = OperatorMatrix::zeros(2);
        m.set(0, 0, c(0.0, 1.5));
        m.set(1, 1, c(-0.3, 0.0));
        let e = expm(&m).unwrap();
        assert!((e.get(0, 0) - c(0.0, 1.5).exp()).norm() < 1e-14);
        assert!((e.get(1, 1) - c(-0.3, 0.0).exp()).norm() < 1e-14);
        assert!(e.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn expm_pauli_rotation() {
        // exp(i theta sigma_x) = cos(theta) I + i sin(theta) sigma_x.
        let theta = 0.7;
        let m = OperatorMatrix::from_entries(
            2,
            vec![c(0.0, 0.0), c(0.0, theta), c(0.0, theta), c(0.0, 0.0)],
        )
        .unwrap();
        let e = expm(&m).unwrap();
        assert!((e.get(0, 0) - c(theta.cos(), 0.0)).norm() < 1e-13);
        assert!((e.get(0, 1) - c(0.0, theta.sin())).norm() < 1e-13);
    }

    #[test]
    fn expm_handles_large_norm_by_scaling() {
        // exp(diag(10 i, -10 i)) stays unitary.
        let mut m = OperatorMatrix::zeros(2);
        m.set(0, 0, c(0.0, 10.0));
        m.set(1, 1, c(0.0, -10.0));
        let e = expm(&m).unwrap();
        assert!((e.get(0, 0).norm() - 1.0).abs() < 1e-12);
        assert!((e.get(0, 0) - c(0.0, 10.0).exp()).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_known_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = OperatorMatrix::from_entries(
            2,
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert!((eig[0] - 1.0).abs() < 1e-13);
        assert!((eig[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigenvalues_diagonal_sorted() {
        let mut m = OperatorMatrix::zeros(3);
        m.set(0, 0, c(5.0, 0.0));
        m.set(1, 1, c(-1.0, 0.0));
        m.set(2, 2, c(2.0, 0.0));
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(eig, vec![-1.0, 2.0, 5.0]);
    }

    #[test]
    fn eigensolver_rejects_nonhermitian() {
        let m = OperatorMatrix::from_entries(
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert!(hermitian_eigenvalues(&m).is_err());
    }
}
