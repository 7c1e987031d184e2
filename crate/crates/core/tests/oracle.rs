//! Kernels checked against nalgebra as an independent reference.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;
use sepball::matan::{block_spectrum, min_eigenvalue, svd, sym_eigen, sym_eigenvalues, GenMatrix, SymMatrix};
use sepball::qsep::{min_eigenpair, partial_transpose, psd_margin, to_pauli, QubitState};

fn to_na(m: &GenMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

fn na_sym_eigs(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn matrix(max_n: usize) -> impl Strategy<Value = GenMatrix> {
    (1..=max_n, 1..=max_n).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3.0..3.0f64, r * c).prop_map(move |d| GenMatrix::from_vec(r, c, d).unwrap())
    })
}

fn square(max_n: usize) -> impl Strategy<Value = GenMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3.0..3.0f64, n * n).prop_map(move |d| GenMatrix::from_vec(n, n, d).unwrap())
    })
}

fn hermitian(m: usize) -> impl Strategy<Value = QubitState> {
    let n = 1usize << m;
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |raw| {
        let h: Vec<Complex64> = (0..n * n)
            .map(|k| {
                let (r, c) = (k / n, k % n);
                let a = Complex64::new(raw[k].0, raw[k].1);
                let b = Complex64::new(raw[c * n + r].0, raw[c * n + r].1).conj();
                if r == c { Complex64::new(a.re, 0.0) } else { (a + b) * 0.5 }
            })
            .collect();
        QubitState::new(m, h).unwrap()
    })
}

fn to_na_c(s: &QubitState) -> DMatrix<Complex64> {
    DMatrix::from_fn(s.dim(), s.dim(), |r, c| s.get(r, c))
}

fn pauli(p: usize) -> DMatrix<Complex64> {
    let (z, o, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    let e = match p {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, -i, i, z],
        _ => [o, z, z, -o],
    };
    DMatrix::from_row_slice(2, 2, &e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_match(m in square(20)) {
        let s = SymMatrix::symmetric_part(&m);
        let ours = sym_eigenvalues(&s);
        let reference = na_sym_eigs(&to_na(&s.to_general()));
        let scale = 1.0 + reference.iter().map(|x| x.abs()).fold(0.0, f64::max);
        prop_assert!(max_gap(&ours, &reference) <= 1e-11 * scale);
        prop_assert!((min_eigenvalue(&s) - reference[0]).abs() <= 1e-11 * scale);
    }

    #[test]
    fn eigenvectors_reconstruct(m in square(8)) {
        let s = SymMatrix::symmetric_part(&m);
        let e = sym_eigen(&s);
        let v = to_na(&e.vectors);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(e.values.clone()));
        let rebuilt = &v * d * v.transpose();
        prop_assert!((rebuilt - to_na(&s.to_general())).amax() <= 1e-11);
        prop_assert!((v.transpose() * &v - DMatrix::identity(s.n(), s.n())).amax() <= 1e-12);
    }

    #[test]
    fn singular_values_match(m in matrix(7)) {
        let ours = svd(&m).unwrap();
        let mut reference: Vec<f64> = to_na(&m).singular_values().iter().copied().collect();
        reference.sort_by(|a, b| b.total_cmp(a));
        prop_assert!(max_gap(&ours.singular_values, &reference) <= 1e-12 * (1.0 + reference[0]));
        prop_assert!(ours.reconstruct().max_abs_diff(&m) <= 1e-12 * (1.0 + reference[0]));
    }

    #[test]
    fn block_spectrum_matches(m in square(6), alpha in -2.0..2.0f64, beta in -2.0..2.0f64) {
        let n = m.rows();
        let block = DMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => if i == j { alpha } else { 0.0 },
            (false, false) => if i == j { beta } else { 0.0 },
            (true, false) => m[(i, j - n)],
            (false, true) => m[(j, i - n)],
        });
        let mut ours = block_spectrum(alpha, beta, &m).unwrap();
        ours.reverse();
        prop_assert!(max_gap(&ours, &na_sym_eigs(&block)) <= 1e-10);
    }

    #[test]
    fn hermitian_min_eigen_matches(s in hermitian(3)) {
        let reference = SymmetricEigen::new(to_na_c(&s)).eigenvalues.min();
        prop_assert!((psd_margin(&s) - reference).abs() <= 1e-11);
        let (lambda, v) = min_eigenpair(&s);
        let hv = to_na_c(&s) * nalgebra::DVector::from_vec(v.clone());
        let resid = hv.iter().zip(&v).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max);
        prop_assert!(resid <= 1e-10);
    }

    #[test]
    fn pauli_coefficients_match_traces(s in hermitian(3)) {
        let ours = to_pauli(&s);
        let h = to_na_c(&s);
        for idx in 0..64 {
            let (p1, p2, p3) = (idx / 16, (idx / 4) % 4, idx % 4);
            let p = pauli(p1).kronecker(&pauli(p2)).kronecker(&pauli(p3));
            let coeff = (p * &h).trace().re / 8f64.sqrt();
            prop_assert!((ours.coords[idx] - coeff).abs() <= 1e-12, "index {idx}");
        }
    }

    #[test]
    fn partial_transpose_of_products(a in hermitian(1), b in hermitian(2)) {
        // (A ⊗ B)^{T_1} = Aᵀ ⊗ B.
        let prod = a.kron(&b).unwrap();
        let pt = partial_transpose(&prod, &[1]).unwrap();
        let expected = to_na_c(&a).transpose().kronecker(&to_na_c(&b));
        prop_assert!((to_na_c(&pt) - expected).camax() <= 1e-15);
    }
}

#[test]
fn large_eigenvalue_path_matches() {
    // Sizes above the Jacobi threshold go through the tridiagonal solver.
    for n in [17, 24, 40] {
        let m = GenMatrix::from_fn(n, n, |r, c| ((r * 7 + c * 13) % 11) as f64 - 5.0 + if r == c { 0.5 } else { 0.0 });
        let s = SymMatrix::symmetric_part(&m);
        let ours = sym_eigenvalues(&s);
        let reference = na_sym_eigs(&to_na(&s.to_general()));
        assert!(max_gap(&ours, &reference) < 1e-10, "n = {n}");
    }
}
