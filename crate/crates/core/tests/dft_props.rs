use circblock_core::dft::{dft_eigenvalues, fourier_matrix, harmonic_vector, idft_coefficients};
use circblock_core::{CMatrix, Scalar};
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = Scalar> {
    (-bound..=bound, -bound..=bound).prop_map(|(re, im)| Scalar::new(re, im))
}

fn max_diff(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn idft_inverts_dft(row in prop::collection::vec(complex(10.0), 1..=64)) {
        let back = idft_coefficients(&dft_eigenvalues(&row).unwrap()).unwrap();
        prop_assert!(max_diff(&row, &back) <= 1e-12);
    }

    #[test]
    fn dft_is_linear(
        pairs in prop::collection::vec((complex(10.0), complex(10.0)), 1..=64),
        alpha in complex(3.0),
        beta in complex(3.0),
    ) {
        let a: Vec<Scalar> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<Scalar> = pairs.iter().map(|p| p.1).collect();
        let mix: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| alpha * x + beta * y).collect();
        let (la, lb) = (dft_eigenvalues(&a).unwrap(), dft_eigenvalues(&b).unwrap());
        let want: Vec<Scalar> = la.iter().zip(&lb).map(|(x, y)| alpha * x + beta * y).collect();
        let scale = a.len() as f64 * 10.0 * 3.0;
        prop_assert!(max_diff(&dft_eigenvalues(&mix).unwrap(), &want) <= 1e-12 * scale);
    }
}

#[test]
fn fourier_matrix_is_unitary() {
    for m in 1..=64 {
        let f = fourier_matrix(m).unwrap().into_inner();
        let err = f.mul(&f.conj_transpose()).unwrap().max_abs_diff(&CMatrix::identity(m)).unwrap();
        assert!(err <= 1e-12, "m = {m}: {err:e}");
    }
}

#[test]
fn harmonic_vectors_are_orthogonal() {
    for m in 1..=64 {
        let vs: Vec<Vec<Scalar>> = (0..m).map(|k| harmonic_vector(k, m).unwrap()).collect();
        for j in 0..m {
            for k in 0..m {
                let dot: Scalar = vs[j].iter().zip(&vs[k]).map(|(x, y)| x.conj() * y).sum();
                let want = if j == k { m as f64 } else { 0.0 };
                assert!((dot - Scalar::new(want, 0.0)).norm() <= 1e-10, "m = {m}, ({j}, {k})");
            }
        }
    }
}
