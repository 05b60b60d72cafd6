//! Matrices partitioned into an `n × n` grid of order-`m` circulant blocks.
//!
//! Each block `A(i, j) = circ(a(i, j))` is diagonalized by the harmonic
//! vectors, which splits the whole matrix into `m` small `n × n` problems:
//!
//! * `S_k[i][j] = e_kᵀ a(i, j) = Σ_ℓ a_ℓ(i, j) ω^{kℓ}` and `σ(A) = ⋃_k σ(S_k)`;
//! * `L_k = (1/m) Σ_ℓ S_ℓ ω^{-kℓ}` has `L_k[u][v] = a_k(u, v)`, so `A ≥ 0`
//!   exactly when every `L_k ≥ 0`, and any family `S_0, …, S_{m-1}` can be
//!   assembled back into a block matrix with prescribed spectrum.

use alloc::vec::Vec;

use crate::circulant::Circulant;
use crate::dft::{dft_eigenvalues, harmonic_vector, idft_coefficients, root_pow};
use crate::poly::{self, MAX_DEGREE};
use crate::spectra::SpectrumList;
use crate::{math, CMatrix, Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct CirculantBlockMatrix {
    n: usize,
    m: usize,
    /// First rows `a(i, j)`, row-major over the grid.
    blocks: Vec<Vec<Scalar>>,
}

impl CirculantBlockMatrix {
    /// `blocks` is the `n × n` grid in row-major order; every first row has length `m`.
    pub fn new(n: usize, m: usize, blocks: Vec<Vec<Scalar>>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::invalid("grid and block order must be positive"));
        }
        if blocks.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: blocks.len(),
            });
        }
        for b in &blocks {
            if b.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: b.len(),
                });
            }
            if b.iter().any(|&z| !math::is_finite(z)) {
                return Err(Error::invalid("block entries must be finite"));
            }
        }
        Ok(CirculantBlockMatrix { n, m, blocks })
    }

    /// Builds from a nested grid `grid[i][j] = a(i, j)`.
    pub fn from_grid(grid: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = grid.len();
        let m = grid.first().and_then(|r| r.first()).map_or(0, Vec::len);
        let mut blocks = Vec::with_capacity(n * n);
        for row in grid {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            blocks.extend(row);
        }
        CirculantBlockMatrix::new(n, m, blocks)
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    pub fn block_order(&self) -> usize {
        self.m
    }

    /// Total order `mn`.
    pub fn dimension(&self) -> usize {
        self.n * self.m
    }

    pub fn block(&self, i: usize, j: usize) -> &[Scalar] {
        &self.blocks[i * self.n + j]
    }

    pub fn block_circulant(&self, i: usize, j: usize) -> Circulant {
        Circulant::from_row(self.block(i, j).to_vec()).expect("blocks are validated")
    }

    pub fn blocks(&self) -> &[Vec<Scalar>] {
        &self.blocks
    }

    pub fn to_grid(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.block(i, j).to_vec()).collect())
            .collect()
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        let (i, p) = (r / self.m, r % self.m);
        let (j, q) = (c / self.m, c % self.m);
        self.block(i, j)[(q + self.m - p) % self.m]
    }

    pub fn to_dense(&self) -> CMatrix {
        let d = self.dimension();
        CMatrix::from_fn(d, d, |r, c| self.entry(r, c))
    }

    pub fn min_entry(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.blocks
            .iter()
            .flatten()
            .all(|z| z.re >= -tol && z.im.abs() <= tol)
    }

    pub fn max_abs_diff(&self, other: &CirculantBlockMatrix) -> Result<f64> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: other.dimension(),
            });
        }
        Ok(self
            .blocks
            .iter()
            .flatten()
            .zip(other.blocks.iter().flatten())
            .map(|(a, b)| math::abs(a - b))
            .fold(0.0, f64::max))
    }
}

macro_rules! matrix_family {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            matrices: Vec<CMatrix>,
        }

        impl $name {
            /// Requires at least one matrix; all must be square of one common order.
            pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
                let Some(first) = matrices.first() else {
                    return Err(Error::invalid("family must contain at least one matrix"));
                };
                let n = first.rows();
                if n == 0 {
                    return Err(Error::invalid("family matrices must be nonempty"));
                }
                for mat in &matrices {
                    if !mat.is_square() || mat.rows() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: if mat.rows() != n { mat.rows() } else { mat.cols() },
                        });
                    }
                    if mat.as_slice().iter().any(|&z| !math::is_finite(z)) {
                        return Err(Error::invalid("family entries must be finite"));
                    }
                }
                Ok($name { matrices })
            }

            /// Order of each matrix.
            pub fn n(&self) -> usize {
                self.matrices[0].rows()
            }

            /// Number of matrices.
            pub fn m(&self) -> usize {
                self.matrices.len()
            }

            pub fn get(&self, k: usize) -> &CMatrix {
                &self.matrices[k]
            }

            pub fn matrices(&self) -> &[CMatrix] {
                &self.matrices
            }

            pub fn into_inner(self) -> Vec<CMatrix> {
                self.matrices
            }
        }
    };
}

matrix_family!(
    /// `S_0, …, S_{m-1}`: one `n × n` matrix per harmonic.
    SFamily
);
matrix_family!(
    /// `L_0, …, L_{m-1}`: `L_k[u][v]` is the `k`-th first-row entry of block `(u, v)`.
    LFamily
);

/// Inverse DFT across the family index, `out_k = scale · Σ_ℓ in_ℓ ω^{sign·kℓ}`.
fn family_transform(input: &[CMatrix], sign: i64, scale: f64) -> Vec<CMatrix> {
    let m = input.len();
    let n = input[0].rows();
    (0..m)
        .map(|k| {
            let mut acc = CMatrix::zeros(n, n);
            for (l, s) in input.iter().enumerate() {
                let w = root_pow(sign * (k * l) as i64, m) * scale;
                acc.add_scaled(s, w).expect("family shapes agree");
            }
            acc
        })
        .collect()
}

pub fn s_matrices(a: &CirculantBlockMatrix) -> SFamily {
    let (n, m) = (a.n, a.m);
    let eig: Vec<Vec<Scalar>> = a
        .blocks
        .iter()
        .map(|row| dft_eigenvalues(row).expect("blocks are nonempty"))
        .collect();
    let mats = (0..m)
        .map(|k| CMatrix::from_fn(n, n, |i, j| eig[i * n + j][k]))
        .collect();
    SFamily { matrices: mats }
}

pub fn l_matrices(s: &SFamily) -> LFamily {
    LFamily {
        matrices: family_transform(&s.matrices, -1, 1.0 / s.m() as f64),
    }
}

/// `S_k = Σ_ℓ L_ℓ ω^{kℓ}`, the inverse of [`l_matrices`].
pub fn s_from_l(l: &LFamily) -> SFamily {
    SFamily {
        matrices: family_transform(&l.matrices, 1, 1.0),
    }
}

/// Block matrix with `a(u, v)_k = L_k[u][v]`.
pub fn assemble_from_l(l: &LFamily) -> CirculantBlockMatrix {
    let (n, m) = (l.n(), l.m());
    let blocks = (0..n * n)
        .map(|idx| (0..m).map(|k| l.matrices[k][(idx / n, idx % n)]).collect())
        .collect();
    CirculantBlockMatrix { n, m, blocks }
}

/// The block matrix whose `S` family is `s`; its spectrum is `⋃ σ(S_k)`.
pub fn assemble(s: &SFamily) -> CirculantBlockMatrix {
    assemble_from_l(&l_matrices(s))
}

/// Every `L_k` is entrywise real and `≥ -tol`; equivalent to `assemble(s) ≥ 0`.
pub fn is_nonnegative_family(s: &SFamily, tol: f64) -> bool {
    l_matrices(s).matrices.iter().all(|l| l.is_nonnegative(tol))
}

/// Whether `mat[i][j] = mat[0][(j - i) mod n]` within `tol`.
pub fn is_circulant_matrix(mat: &CMatrix, tol: f64) -> bool {
    let n = mat.rows();
    mat.is_square()
        && (0..n).all(|i| (0..n).all(|j| math::abs(mat[(i, j)] - mat[(0, (j + n - i) % n)]) <= tol))
}

/// Eigenvalues of one family member: closed form when it is circulant,
/// characteristic polynomial roots otherwise.
pub fn matrix_spectrum(mat: &CMatrix) -> Result<Vec<Scalar>> {
    let tol = 1e-13 * mat.max_abs().max(1.0);
    if is_circulant_matrix(mat, tol) {
        return dft_eigenvalues(mat.row(0));
    }
    if mat.rows() > MAX_DEGREE {
        return Err(Error::UnsupportedSize {
            what: "non-circulant family member order",
            size: mat.rows(),
            max: MAX_DEGREE,
        });
    }
    poly::eigenvalues(mat)
}

/// `⋃_k σ(S_k)` in order `k = 0, 1, …`.
pub fn family_spectrum(s: &SFamily) -> Result<SpectrumList> {
    let mut out = Vec::with_capacity(s.n() * s.m());
    for mat in &s.matrices {
        out.extend(matrix_spectrum(mat)?);
    }
    SpectrumList::new(out)
}

pub fn spectrum(a: &CirculantBlockMatrix) -> Result<SpectrumList> {
    family_spectrum(&s_matrices(a))
}

/// Eigenpair `(β, u)` of `S_k`; lifts to `(β, u ⊗ e_k)` for the block matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub k: usize,
    pub value: Scalar,
    pub vector: Vec<Scalar>,
}

/// `u ⊗ e_k`
pub fn lift_vector(u: &[Scalar], k: usize, m: usize) -> Result<Vec<Scalar>> {
    let e = harmonic_vector(k, m)?;
    Ok(u.iter().flat_map(|&x| e.iter().map(move |&y| x * y)).collect())
}

/// `max ‖A v - β v‖∞ / max(1, ‖v‖∞)` over the lifted pairs `v = u ⊗ e_k`.
pub fn eigenpair_residuals(a: &CirculantBlockMatrix, pairs: &[EigenPair]) -> Result<f64> {
    let dense = a.to_dense();
    let mut worst: f64 = 0.0;
    for pair in pairs {
        if pair.vector.len() != a.n {
            return Err(Error::DimensionMismatch {
                expected: a.n,
                found: pair.vector.len(),
            });
        }
        if pair.k >= a.m {
            return Err(Error::invalid("harmonic index out of range"));
        }
        let v = lift_vector(&pair.vector, pair.k, a.m)?;
        let av = dense.mul_vec(&v)?;
        let res = av
            .iter()
            .zip(&v)
            .map(|(x, y)| math::abs(x - pair.value * y))
            .fold(0.0, f64::max);
        let norm = v.iter().map(|&z| math::abs(z)).fold(0.0, f64::max);
        worst = worst.max(res / norm.max(1.0));
    }
    Ok(worst)
}

/// Block matrix whose every block is `circ(idft(λ))` on the diagonal and zero
/// elsewhere; a convenience for tests and demos.
pub fn block_diagonal(n: usize, diag: &[Scalar]) -> Result<CirculantBlockMatrix> {
    let row = idft_coefficients(diag)?;
    let m = row.len();
    let zero = alloc::vec![Scalar::new(0.0, 0.0); m];
    let blocks = (0..n * n)
        .map(|idx| if idx / n == idx % n { row.clone() } else { zero.clone() })
        .collect();
    CirculantBlockMatrix::new(n, m, blocks)
}
