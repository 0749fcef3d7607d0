//! Hermitian eigensolver: cyclic Jacobi with a deterministic output order.

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

/// Convergence target for the off-diagonal Frobenius norm, relative to the
/// input's Frobenius norm.
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues (descending) and a matching orthonormal eigenvector set.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Diagonalize a hermitian matrix with cyclic Jacobi rotations.
///
/// Output order is deterministic: eigenvalues descending, ties broken by the
/// lexicographically smallest eigenvector after each vector's first
/// significant component is rotated to the positive real axis.
pub fn eig_hermitian(a: &Matrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_hermitian() {
        let dev = a.sub(&a.adjoint())?.max_abs();
        return Err(Error::NotHermitian { deviation: dev });
    }

    let n = a.rows();
    let mut w = a.to_dense_entries();
    let mut v = Matrix::identity(n).to_dense_entries();
    let scale = a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w, n) <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|j| {
            let lambda = w[j * n + j].re;
            let mut vec: Vec<Complex64> = (0..n).map(|i| v[i * n + j]).collect();
            fix_phase(&mut vec);
            (lambda, vec)
        })
        .collect();

    pairs.sort_by(|(la, va), (lb, vb)| {
        lb.partial_cmp(la)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| lex_compare(va, vb))
    });

    Ok(EigenDecomposition {
        eigenvalues: pairs.iter().map(|(l, _)| *l).collect(),
        eigenvectors: pairs.into_iter().map(|(_, v)| v).collect(),
    })
}

fn off_diagonal_norm(w: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += w[r * n + c].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry of a hermitian matrix.
///
/// The 2x2 unitary is [[c, -s*e^{i phi}], [s*e^{-i phi}, c]] with
/// tan(2 theta) = 2|a_pq| / (a_pp - a_qq) and phi = arg(a_pq).
fn rotate(w: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let alpha = w[p * n + p].re;
    let gamma = w[q * n + q].re;
    let phase = apq / mag;

    let tau = (alpha - gamma) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = -phase * s;
    let u_qp = phase.conj() * s;
    let u_qq = Complex64::new(c, 0.0);

    // B = A U, touching only columns p and q.
    for k in 0..n {
        let akp = w[k * n + p];
        let akq = w[k * n + q];
        w[k * n + p] = akp * u_pp + akq * u_qp;
        w[k * n + q] = akp * u_pq + akq * u_qq;
    }
    // A' = U^dag B, touching only rows p and q.
    for k in 0..n {
        let bpk = w[p * n + k];
        let bqk = w[q * n + k];
        w[p * n + k] = u_pp.conj() * bpk + u_qp.conj() * bqk;
        w[q * n + k] = u_pq.conj() * bpk + u_qq.conj() * bqk;
    }
    // Hermitian by construction; pin the rotated entries against roundoff.
    w[p * n + q] = Complex64::new(0.0, 0.0);
    w[q * n + p] = Complex64::new(0.0, 0.0);
    w[p * n + p] = Complex64::new(w[p * n + p].re, 0.0);
    w[q * n + q] = Complex64::new(w[q * n + q].re, 0.0);

    // Accumulate eigenvectors: V = V U.
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * u_pp + vkq * u_qp;
        v[k * n + q] = vkp * u_pq + vkq * u_qq;
    }
}

/// Rotate the first significant component onto the positive real axis.
fn fix_phase(vec: &mut [Complex64]) {
    if let Some(lead) = vec.iter().find(|x| x.norm() > 1e-9) {
        let phase = lead.conj() / lead.norm();
        for x in vec.iter_mut() {
            *x *= phase;
        }
    }
}

fn lex_compare(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x
            .re
            .partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
        {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{det_classical, trace_classical};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(a: &Matrix, eig: &EigenDecomposition) -> f64 {
        let mut worst: f64 = 0.0;
        for (lambda, vec) in eig.eigenvalues.iter().zip(eig.eigenvectors.iter()) {
            let av = a.matvec(vec).unwrap();
            let r: f64 = av
                .iter()
                .zip(vec.iter())
                .map(|(x, v)| (x - v * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    fn orthonormality_error(eig: &EigenDecomposition) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, vi) in eig.eigenvectors.iter().enumerate() {
            for (j, vj) in eig.eigenvectors.iter().enumerate() {
                let dot: Complex64 = vi
                    .iter()
                    .zip(vj.iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - c(expect, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = eig_hermitian(&Matrix::identity(2)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0]);
        assert!(orthonormality_error(&eig) < 1e-10);
    }

    #[test]
    fn diagonal_sorted_descending() {
        let eig = eig_hermitian(&Matrix::diag_real(&[1.0, 2.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![2.0, 1.0]);
        // descending order puts e2 first, e1 second
        assert!((eig.eigenvectors[0][1] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((eig.eigenvectors[1][0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn symmetric_2x2_spectrum() {
        // characteristic polynomial (2-l)^2 - 1 = 0 -> l in {3, 1}
        let a = Matrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let eig = eig_hermitian(&a).unwrap();
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-10);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-10);
        assert!(residual(&a, &eig) < 1e-9 * a.frobenius_norm());
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            eig_hermitian(&a),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn random_hermitian_invariants() {
        for seed in 0..8u64 {
            let dim = 2 + (seed as usize % 5);
            let a = crate::fixtures::random_hermitian(seed, dim, 2.0);
            let eig = eig_hermitian(&a).unwrap();
            assert!(residual(&a, &eig) <= 1e-9 * a.frobenius_norm().max(1.0));
            assert!(orthonormality_error(&eig) < 1e-10);
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn determinant_equals_eigenvalue_product() {
        for seed in 0..6u64 {
            let dim = 2 + (seed as usize % 4);
            let a = crate::fixtures::random_hermitian(seed + 50, dim, 2.0);
            let eig = eig_hermitian(&a).unwrap();
            let prod: f64 = eig.eigenvalues.iter().product();
            let det = det_classical(&a).unwrap();
            let rel = (det - c(prod, 0.0)).norm() / prod.abs().max(1e-12);
            assert!(rel < 1e-9, "seed {seed}: rel err {rel}");
        }
    }

    #[test]
    fn trace_equals_eigenvalue_sum() {
        for seed in 0..6u64 {
            let dim = 2 + (seed as usize % 4);
            let a = crate::fixtures::random_hermitian(seed + 90, dim, 2.0);
            let eig = eig_hermitian(&a).unwrap();
            let sum: f64 = eig.eigenvalues.iter().sum();
            let tr = trace_classical(&a).unwrap();
            assert!((tr - c(sum, 0.0)).norm() < 1e-10 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn deterministic_for_identical_inputs() {
        let a = crate::fixtures::random_hermitian(31, 5, 1.5);
        let e1 = eig_hermitian(&a).unwrap();
        let e2 = eig_hermitian(&a).unwrap();
        assert_eq!(e1.eigenvalues, e2.eigenvalues);
        assert_eq!(e1.eigenvectors, e2.eigenvectors);
    }
}
