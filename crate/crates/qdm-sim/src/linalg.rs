// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex operator algebra: Kronecker products, Hermitian
//! eigendecomposition and positive-semidefinite matrix square roots.
//!
//! Everything here works on square `DMatrix<Complex64>` ("operators").
//! Matrices are small (4x4 states, 16x16 superoperators), so dense
//! factorizations are always the right tool.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Operator = DMatrix<Complex64>;

/// Hermiticity defect above which an operation that assumes a Hermitian
/// input refuses to run.
pub const HERM_TOL: f64 = 1e-10;

/// Eigenvalues of a nominally PSD matrix below this are a hard error;
/// anything in `[PSD_CLAMP, 0)` is treated as numerical noise and clamped.
pub const PSD_CLAMP: f64 = -1e-8;

pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Operator {
    Operator::identity(dim, dim)
}

pub fn zeros(dim: usize) -> Operator {
    Operator::zeros(dim, dim)
}

/// Largest absolute deviation from Hermiticity, max_ij |A_ij - conj(A_ji)|.
pub fn herm_defect(a: &Operator) -> f64 {
    let adj = a.adjoint();
    (a - adj).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// (A + A^H)/2; cheap cleanup for matrices that are Hermitian up to noise.
pub fn hermitize(a: &Operator) -> Operator {
    (a + a.adjoint()).scale(0.5)
}

/// Kronecker product, row-major block convention:
/// `(A ⊗ B)[i·m + k, j·n + l] = A[i,j] · B[k,l]`.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

fn check_hermitian(a: &Operator) -> Result<()> {
    let defect = herm_defect(a);
    if defect > HERM_TOL {
        return Err(Error::NonHermitianInput {
            defect,
            tol: HERM_TOL,
        });
    }
    Ok(())
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Kept in-crate deliberately: the matrices here are small (4x4 states,
/// occasionally 16x16), Jacobi gives high relative accuracy even for
/// eigenvalues spread over many decades, and every rotation is an exact
/// unitary similarity, so the returned columns are genuine eigenvectors.
fn jacobi_hermitian(a: &Operator) -> (Vec<f64>, Operator) {
    let n = a.nrows();
    let mut m = hermitize(a);
    let mut v = identity(n);
    let norm = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off_tol = (1e-15 * norm).max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m[(i, j)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= off_tol {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let g = apq.norm();
                if g <= off_tol / (n as f64) {
                    continue;
                }
                // phase u makes the (p,q) entry real; then a real Givens
                // rotation with the stable small-t root zeroes it
                let u = apq / g;
                let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * g);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let mut j = identity(n);
                j[(p, p)] = cplx(c, 0.0);
                j[(p, q)] = cplx(s, 0.0);
                j[(q, p)] = -u.conj() * s;
                j[(q, q)] = u.conj() * c;
                m = j.adjoint() * m * &j;
                v *= &j;
            }
        }
        m = hermitize(&m);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let evs: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = zeros(n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &v.column(i));
    }
    (evs, vecs)
}

/// Eigenvalues of a Hermitian matrix, ascending. Refuses non-Hermitian input.
pub fn herm_eigvals(a: &Operator) -> Result<Vec<f64>> {
    check_hermitian(a)?;
    Ok(jacobi_hermitian(a).0)
}

/// Full Hermitian eigendecomposition: ascending eigenvalues and matching
/// orthonormal eigenvector columns, so `A = V diag(λ) V^H`.
pub fn herm_eig(a: &Operator) -> Result<(Vec<f64>, Operator)> {
    check_hermitian(a)?;
    Ok(jacobi_hermitian(a))
}

/// Unique PSD square root B of a Hermitian PSD matrix A, with B·B = A.
///
/// Trajectory solvers leave eigenvalues that are negative at roundoff level;
/// anything in `[-1e-8, 0)` is clamped to zero, anything lower is an error.
pub fn psd_sqrt(a: &Operator) -> Result<Operator> {
    let (evs, v) = herm_eig(a)?;
    let mut roots = DVector::zeros(evs.len());
    for (i, &lam) in evs.iter().enumerate() {
        if lam < PSD_CLAMP {
            return Err(Error::NegativeSpectrum { eigenvalue: lam });
        }
        roots[i] = cplx(lam.max(0.0).sqrt(), 0.0);
    }
    let b = &v * Operator::from_diagonal(&roots) * v.adjoint();
    Ok(hermitize(&b))
}

/// Trace as a complex number (real for Hermitian input).
pub fn trace(a: &Operator) -> Complex64 {
    a.diagonal().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sigma_y() -> Operator {
        Operator::from_row_slice(2, 2, &[cplx(0.0, 0.0), cplx(0.0, -1.0), cplx(0.0, 1.0), cplx(0.0, 0.0)])
    }

    /// Brute-force Kronecker oracle, independent of the implementation.
    fn kron_oracle(a: &Operator, b: &Operator) -> Operator {
        let (n, m) = (a.nrows(), b.nrows());
        let mut out = zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a[(i, j)] * b[(k, l)];
                    }
                }
            }
        }
        out
    }

    #[test]
    fn kron_sigma_y_pair_is_antidiagonal() {
        let yy = kron(&sigma_y(), &sigma_y());
        let mut expected = zeros(4);
        expected[(0, 3)] = cplx(-1.0, 0.0);
        expected[(1, 2)] = cplx(1.0, 0.0);
        expected[(2, 1)] = cplx(1.0, 0.0);
        expected[(3, 0)] = cplx(-1.0, 0.0);
        assert_eq!(yy, expected);
        assert_eq!(yy, kron_oracle(&sigma_y(), &sigma_y()));
    }

    #[test]
    fn kron_dimensions_multiply() {
        let a = identity(3);
        let b = identity(4);
        assert_eq!(kron(&a, &b).nrows(), 12);
    }

    #[test]
    fn herm_eigvals_bell_projector() {
        // |psi> = (|ge> + i|eg>)/sqrt(2): rank-1 projector, spectrum {0,0,0,1}
        let mut rho = zeros(4);
        rho[(1, 1)] = cplx(0.5, 0.0);
        rho[(2, 2)] = cplx(0.5, 0.0);
        rho[(1, 2)] = cplx(0.0, -0.5);
        rho[(2, 1)] = cplx(0.0, 0.5);
        let evs = herm_eigvals(&rho).unwrap();
        for &e in &evs[..3] {
            assert!(e.abs() < 1e-12);
        }
        assert_relative_eq!(evs[3], 1.0, max_relative = 1e-12);
        // projector: rho^2 = rho
        let sq = &rho * &rho;
        assert!((&sq - &rho).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn herm_eigvals_rejects_non_hermitian() {
        let mut a = identity(3);
        a[(0, 1)] = cplx(0.5, 0.0); // A[1,0] stays 0
        match herm_eigvals(&a) {
            Err(Error::NonHermitianInput { .. }) => {}
            other => panic!("expected NonHermitianInput, got {other:?}"),
        }
    }

    #[test]
    fn herm_eig_reconstructs_input() {
        // fixed pseudo-random Hermitian matrix
        let raw = Operator::from_fn(4, 4, |i, j| {
            let s = ((i * 7 + j * 13) % 11) as f64;
            cplx((s - 5.0) / 7.0, ((i * 3 + j * 5) % 7) as f64 / 9.0)
        });
        let a = hermitize(&raw);
        let (evs, v) = herm_eig(&a).unwrap();
        let lam = Operator::from_diagonal(&DVector::from_iterator(
            4,
            evs.iter().map(|&e| cplx(e, 0.0)),
        ));
        let rec = &v * lam * v.adjoint();
        let err = (&a - &rec).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err <= 1e-9, "reconstruction error {err}");
        // eigenvalue sum = trace
        let tr: f64 = evs.iter().sum();
        assert_relative_eq!(tr, trace(&a).re, epsilon = 1e-10);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let raw = Operator::from_fn(4, 4, |i, j| cplx((i + 2 * j) as f64, (i as f64) - (j as f64)));
        let a = &raw * raw.adjoint(); // PSD by construction
        let b = psd_sqrt(&a).unwrap();
        let err = (&b * &b - &a).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err <= 1e-8, "B*B - A max-norm {err}");
        assert!(herm_defect(&b) <= 1e-12);
    }

    #[test]
    fn psd_sqrt_fixes_projectors() {
        // sqrt of a projector is the projector itself
        let mut p = zeros(4);
        p[(1, 1)] = cplx(0.5, 0.0);
        p[(2, 2)] = cplx(0.5, 0.0);
        p[(1, 2)] = cplx(0.0, -0.5);
        p[(2, 1)] = cplx(0.0, 0.5);
        let s = psd_sqrt(&p).unwrap();
        let err = (&s - &p).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err <= 1e-9);
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Operator {
        let raw = Operator::from_fn(n, n, |_, _| {
            cplx(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        hermitize(&raw)
    }

    /// Independent oracle: a complex Hermitian A = X + iY embeds as the real
    /// symmetric 2n x 2n matrix [[X, -Y], [Y, X]], whose spectrum is the
    /// spectrum of A with every eigenvalue doubled. The real-symmetric solver
    /// is a completely separate code path from the complex Jacobi above.
    fn real_embedding_eigvals(a: &Operator) -> Vec<f64> {
        let n = a.nrows();
        let e = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
            let z = a[(i % n, j % n)];
            match (i / n, j / n) {
                (0, 0) | (1, 1) => z.re,
                (0, 1) => -z.im,
                _ => z.im,
            }
        });
        let mut evs: Vec<f64> = e.symmetric_eigen().eigenvalues.iter().copied().collect();
        evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        evs
    }

    #[test]
    fn herm_eig_matches_real_embedding_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for trial in 0..200 {
            let n = 2 + (trial % 7);
            let a = random_hermitian(&mut rng, n);
            let (evs, v) = herm_eig(&a).unwrap();
            let oracle = real_embedding_eigvals(&a);
            for (i, &lam) in evs.iter().enumerate() {
                for &o in &oracle[2 * i..2 * i + 2] {
                    assert!(
                        (lam - o).abs() <= 1e-10 * (1.0 + lam.abs()),
                        "trial {trial}: eigenvalue {i} is {lam}, oracle says {o}"
                    );
                }
            }
            // the columns must be genuine orthonormal eigenvectors, not
            // merely an orthonormal basis
            let gram = (v.adjoint() * &v - identity(n))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(gram <= 1e-12, "trial {trial}: gram defect {gram}");
            let lam = Operator::from_diagonal(&DVector::from_iterator(
                n,
                evs.iter().map(|&e| cplx(e, 0.0)),
            ));
            let rec_err = (&a - &v * lam * v.adjoint())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(rec_err <= 1e-12, "trial {trial}: reconstruction {rec_err}");
        }
    }

    #[test]
    fn herm_eig_is_accurate_on_spectra_spread_over_decades() {
        // Density matrices from driven steady states routinely carry
        // populations three decades apart; the eigensolver must keep full
        // relative accuracy there (an orthonormal-but-wrong eigenbasis at
        // this spectrum shape is exactly what broke an earlier revision).
        let target = [1.039e-3, 2.93e-3, 0.2609, 0.7352];
        let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
        for trial in 0..50 {
            let q = random_hermitian(&mut rng, 4).qr().q();
            let lam = Operator::from_diagonal(&DVector::from_iterator(
                4,
                target.iter().map(|&e| cplx(e, 0.0)),
            ));
            let a = hermitize(&(&q * lam * q.adjoint()));
            let evs = herm_eigvals(&a).unwrap();
            for (got, want) in evs.iter().zip(target.iter()) {
                assert!(
                    (got - want).abs() <= 1e-12,
                    "trial {trial}: got {got}, want {want}"
                );
            }
            let b = psd_sqrt(&a).unwrap();
            let sq_err = (&b * &b - &a).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(sq_err <= 1e-12, "trial {trial}: sqrt square-back {sq_err}");
        }
    }

    #[test]
    fn psd_sqrt_clamps_noise_but_rejects_real_negatives() {
        let mut a = identity(2);
        a[(1, 1)] = cplx(-5e-9, 0.0); // trajectory-level noise: clamped
        let b = psd_sqrt(&a).unwrap();
        assert!(b[(1, 1)].norm() < 1e-4);

        a[(1, 1)] = cplx(-1e-6, 0.0); // genuinely negative: refused
        match psd_sqrt(&a) {
            Err(Error::NegativeSpectrum { .. }) => {}
            other => panic!("expected NegativeSpectrum, got {other:?}"),
        }
    }
}
