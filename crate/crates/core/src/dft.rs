//! Roots of unity, unitary DFT matrices, and the maps between a circulant's
//! first row and its eigenvalue vector.
//!
//! All transforms are direct `O(m²)` sums. Powers `ω^{kℓ}` are evaluated from
//! the exponent reduced modulo the order, never by repeated multiplication.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{math, CMatrix, Error, Result, Scalar};

/// `ω^k` for the primitive root `ω = cos(2π/order) + i sin(2π/order)`.
///
/// `k` may be negative. Exponents landing on a quarter turn return exact
/// values (`±1`, `±i`).
pub fn root_pow(k: i64, order: usize) -> Scalar {
    debug_assert!(order > 0);
    let m = order as i64;
    let r = k.rem_euclid(m);
    if (4 * r) % m == 0 {
        return match 4 * r / m {
            0 => Scalar::new(1.0, 0.0),
            1 => Scalar::new(0.0, 1.0),
            2 => Scalar::new(-1.0, 0.0),
            _ => Scalar::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * (r as f64) / (order as f64);
    Scalar::new(math::cos(theta), math::sin(theta))
}

/// The primitive root of unity of the given order.
pub fn primitive_root(order: usize) -> Result<Scalar> {
    if order == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    Ok(root_pow(1, order))
}

/// Unitary DFT matrix `F` with entries `ω^{pq} / √order`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierMatrix {
    order: usize,
    entries: CMatrix,
}

impl FourierMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_inner(self) -> CMatrix {
        self.entries
    }
}

pub fn fourier_matrix(order: usize) -> Result<FourierMatrix> {
    if order == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let s = 1.0 / math::sqrt(order as f64);
    let entries = CMatrix::from_fn(order, order, |p, q| root_pow((p * q) as i64, order) * s);
    Ok(FourierMatrix { order, entries })
}

/// Harmonic vector `e_k = (1, ω^k, ω^{2k}, …, ω^{(m-1)k})`.
pub fn harmonic_vector(k: usize, m: usize) -> Result<Vec<Scalar>> {
    if m == 0 || k >= m {
        return Err(Error::invalid("harmonic index must satisfy 0 <= k < m"));
    }
    Ok((0..m).map(|j| root_pow((k * j) as i64, m)).collect())
}

/// Eigenvalues of `circ(first_row)`, position `k` paired with `e_k`:
/// `λ_k = Σ_ℓ a_ℓ ω^{kℓ}`.
pub fn dft_eigenvalues(first_row: &[Scalar]) -> Result<Vec<Scalar>> {
    if first_row.is_empty() {
        return Err(Error::invalid("first row must be nonempty"));
    }
    Ok(transform(first_row, 1, 1.0))
}

/// Inverse of [`dft_eigenvalues`]: `a_k = (1/m) Σ_ℓ λ_ℓ ω^{-kℓ}`.
pub fn idft_coefficients(spectrum: &[Scalar]) -> Result<Vec<Scalar>> {
    if spectrum.is_empty() {
        return Err(Error::invalid("spectrum must be nonempty"));
    }
    Ok(transform(spectrum, -1, 1.0 / spectrum.len() as f64))
}

fn transform(input: &[Scalar], sign: i64, scale: f64) -> Vec<Scalar> {
    let m = input.len();
    (0..m)
        .map(|k| {
            let sum: Scalar = input
                .iter()
                .enumerate()
                .map(|(l, &a)| a * root_pow(sign * (k * l) as i64, m))
                .sum();
            sum * scale
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    fn close(a: &[Scalar], b: &[Scalar], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(1).unwrap(), c(1.0, 0.0));
        assert_eq!(primitive_root(4).unwrap(), c(0.0, 1.0));
        let w3 = primitive_root(3).unwrap();
        assert!((w3 - c(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        assert!(primitive_root(0).is_err());
        for m in 1..40 {
            let w = primitive_root(m).unwrap();
            let mut p = c(1.0, 0.0);
            for _ in 0..m {
                p *= w;
            }
            assert!((p - c(1.0, 0.0)).norm() < 1e-12, "order {m}");
        }
    }

    #[test]
    fn fourier_matrix_examples() {
        let f1 = fourier_matrix(1).unwrap();
        assert_eq!(f1.entries()[(0, 0)], c(1.0, 0.0));
        let f2 = fourier_matrix(2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((f2.entries()[(1, 1)] - c(-h, 0.0)).norm() < 1e-15);
        assert!((f2.entries()[(0, 1)] - c(h, 0.0)).norm() < 1e-15);
        let f4 = fourier_matrix(4).unwrap();
        // i^6 / 2
        assert!((f4.entries()[(2, 3)] - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((f4.entries()[(1, 3)] - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn fourier_columns_are_scaled_harmonics() {
        let m = 7;
        let f = fourier_matrix(m).unwrap();
        let s = (m as f64).sqrt();
        for k in 0..m {
            let e = harmonic_vector(k, m).unwrap();
            for (j, ej) in e.iter().enumerate() {
                assert!((f.entries()[(j, k)] * s - ej).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn harmonic_vector_examples() {
        assert_eq!(harmonic_vector(0, 5).unwrap(), vec![c(1.0, 0.0); 5]);
        assert_eq!(
            harmonic_vector(1, 4).unwrap(),
            vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        assert_eq!(
            harmonic_vector(2, 4).unwrap(),
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]
        );
        assert!(harmonic_vector(4, 4).is_err());
    }

    #[test]
    fn dft_examples() {
        let a = c(2.5, -1.0);
        let row = [a, c(0.0, 0.0), c(0.0, 0.0)];
        assert!(close(&dft_eigenvalues(&row).unwrap(), &[a, a, a], 1e-15));

        let shift = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let expect = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        assert!(close(&dft_eigenvalues(&shift).unwrap(), &expect, 1e-15));
        assert!(close(&idft_coefficients(&expect).unwrap(), &shift, 1e-15));

        let half = [c(0.5, 0.0), c(3.5, 0.0)];
        let eig = dft_eigenvalues(&half).unwrap();
        assert!(close(&eig, &[c(4.0, 0.0), c(-3.0, 0.0)], 1e-15));
        assert!(close(&idft_coefficients(&eig).unwrap(), &half, 1e-15));

        let flat = [c(1.5, 0.5); 6];
        let mut first = [c(0.0, 0.0); 6];
        first[0] = c(1.5, 0.5);
        assert!(close(&idft_coefficients(&flat).unwrap(), &first, 1e-15));

        assert!(dft_eigenvalues(&[]).is_err());
        assert!(idft_coefficients(&[]).is_err());
    }
}
