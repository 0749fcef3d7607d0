//! Seeded matrix and vector generators shared by tests, the self-test
//! suite and the gate-count sweep.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rand_pcg::Pcg64;

use crate::linalg::Matrix;
use crate::rng::pcg;

fn gaussian(rng: &mut Pcg64) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Dense matrix with independent complex Gaussian entries.
pub fn random_complex_matrix(seed: u64, n: usize) -> Matrix {
    let mut rng = pcg(seed);
    Matrix::from_fn(n, n, |_, _| gaussian(&mut rng)).expect("valid shape")
}

/// Haar-ish unitary from Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary(seed: u64, n: usize) -> Matrix {
    let mut rng = pcg(seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u.iter()) {
                *vi -= proj * ui;
            }
        }
        let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue; // extraordinarily unlikely; resample
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        cols.push(v);
    }
    Matrix::from_fn(n, n, |r, c| cols[c][r]).expect("valid shape")
}

/// Hermitian matrix with the given real spectrum: V diag(eigs) V^dag.
pub fn hermitian_with_spectrum(seed: u64, eigs: &[f64]) -> Matrix {
    let n = eigs.len();
    let v = random_unitary(seed, n);
    let mut out = Matrix::zeros(n, n);
    for (j, lambda) in eigs.iter().enumerate() {
        let col: Vec<Complex64> = (0..n).map(|i| v.get(i, j)).collect();
        let rank1 = Matrix::from_fn(n, n, |r, c| col[r] * col[c].conj() * lambda).unwrap();
        out = out.add(&rank1).unwrap();
    }
    // Kill roundoff so the hermitian constructor check passes cleanly.
    let sym = out.add(&out.adjoint()).unwrap().scale_real(0.5);
    debug_assert!(sym.is_hermitian());
    sym
}

/// Hermitian matrix with Gaussian entries, scaled to `scale` max magnitude.
pub fn random_hermitian(seed: u64, n: usize, scale: f64) -> Matrix {
    let g = random_complex_matrix(seed, n);
    let h = g.add(&g.adjoint()).unwrap().scale_real(0.5);
    let max = h.max_abs().max(1e-12);
    h.scale_real(scale / max)
}

/// Symmetric positive definite matrix with spectrum uniform in
/// [lambda_min, lambda_max].
pub fn random_spd(seed: u64, n: usize, lambda_min: f64, lambda_max: f64) -> Matrix {
    let mut rng = pcg(seed);
    let eigs: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(lambda_min..lambda_max))
        .collect();
    hermitian_with_spectrum(seed.wrapping_add(1), &eigs)
}

/// Hermitian matrix whose eigenvalues are random integers in [1, max_eig].
pub fn integer_spectrum_hermitian(seed: u64, n: usize, max_eig: u64) -> Matrix {
    let mut rng = pcg(seed);
    let eigs: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(1..=max_eig) as f64)
        .collect();
    hermitian_with_spectrum(seed.wrapping_add(1), &eigs)
}

/// Unit-norm complex vector.
pub fn random_unit_vector(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = pcg(seed);
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Non-negative integer diagonal, each value strictly below 2^width.
pub fn random_integer_diagonal(seed: u64, n: usize, width: u32) -> Vec<u64> {
    let mut rng = pcg(seed);
    (0..n).map(|_| rng.gen_range(0..(1u64 << width))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        for seed in 0..4 {
            let u = random_unitary(seed, 4);
            assert!(u.unitarity_deviation().unwrap() < 1e-10);
        }
    }

    #[test]
    fn spectrum_construction_roundtrip() {
        let eigs = [3.0, 1.0, 0.5];
        let a = hermitian_with_spectrum(9, &eigs);
        let eig = crate::linalg::eig_hermitian(&a).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip(eigs.iter()) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        assert_eq!(
            random_complex_matrix(5, 3).to_dense_entries(),
            random_complex_matrix(5, 3).to_dense_entries()
        );
        assert_eq!(random_unit_vector(5, 6), random_unit_vector(5, 6));
    }
}
