//! Circulant matrices, their spectra, and the conjugate-pair Perron bound
//! with its companion-matrix cross-check.

use alloc::vec;
use alloc::vec::Vec;

use crate::dft::{dft_eigenvalues, idft_coefficients};
use crate::spectra::SpectrumList;
use crate::{math, CMatrix, Error, Result, Scalar};

/// Order-`m` circulant matrix stored by its first row; entry `(i, j)` is
/// `row[(j - i) mod m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    row: Vec<Scalar>,
}

/// Nonnegativity verdict together with the smallest real part, so boundary
/// cases can be inspected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nonnegativity {
    pub nonnegative: bool,
    pub min_entry: f64,
    pub max_imag: f64,
}

impl Circulant {
    pub fn from_row(row: Vec<Scalar>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::invalid("circulant first row must be nonempty"));
        }
        if row.iter().any(|&z| !math::is_finite(z)) {
            return Err(Error::invalid("circulant entries must be finite"));
        }
        Ok(Circulant { row })
    }

    pub fn from_real_row(row: &[f64]) -> Result<Self> {
        Circulant::from_row(row.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    /// The circulant whose DFT-ordered spectrum is `spectrum`.
    pub fn from_spectrum(spectrum: &SpectrumList) -> Result<Self> {
        Circulant::from_row(idft_coefficients(spectrum.entries())?)
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn first_row(&self) -> &[Scalar] {
        &self.row
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        let m = self.order();
        self.row[(j + m - i % m) % m]
    }

    pub fn to_dense(&self) -> CMatrix {
        let m = self.order();
        CMatrix::from_fn(m, m, |i, j| self.entry(i, j))
    }

    /// Eigenvalues in DFT order: position `k` belongs to `e_k`.
    pub fn eigenvalues(&self) -> SpectrumList {
        let eig = dft_eigenvalues(&self.row).expect("row is nonempty");
        SpectrumList::new(eig).expect("finite input has finite transform")
    }

    pub fn nonnegativity(&self, tol: f64) -> Nonnegativity {
        let min_entry = self.row.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let max_imag = self.row.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        Nonnegativity {
            nonnegative: min_entry >= -tol && max_imag <= tol,
            min_entry,
            max_imag,
        }
    }

    /// Every entry has `Re ≥ -tol` and `|Im| ≤ tol`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.nonnegativity(tol).nonnegative
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.row.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn min_entry(&self) -> f64 {
        self.nonnegativity(0.0).min_entry
    }
}

fn check_pair_params(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
        return Err(Error::invalid("a and b must be positive and finite"));
    }
    Ok(())
}

/// Least Perron value for the list `(λ_1, -a ± bi, …)` of length `n`:
/// `(n-1)a + n·max{0, b/√n - a}`.
pub fn conjugate_pair_guo_bound(n: usize, a: f64, b: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("order must be at least 2"));
    }
    check_pair_params(a, b)?;
    let nf = n as f64;
    Ok((nf - 1.0) * a + nf * (b / math::sqrt(nf) - a).max(0.0))
}

/// The circulant with diagonal `(λ_1 - (n-1)a)/n` and off-diagonal first-row
/// entries alternating `(λ_1 + a + √n b)/n`, `(λ_1 + a - √n b)/n`.
///
/// The alternation closes up circulantly only for odd `n`. For `n = 3` the
/// spectrum is exactly `{λ_1, -a ± bi}`; for odd `n ≥ 5` the eigenvalue at
/// position `k ≥ 1` is `-a + i·b·tan(πk/n)/√n`, not `-a ± bi`. The
/// nonnegativity threshold in `λ_1` equals [`conjugate_pair_guo_bound`] for
/// every odd `n`.
pub fn conjugate_pair_circulant(n: usize, lambda1: f64, a: f64, b: f64) -> Result<Circulant> {
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedParity(n));
    }
    if n < 3 {
        return Err(Error::invalid("order must be at least 3"));
    }
    check_pair_params(a, b)?;
    let nf = n as f64;
    let rb = math::sqrt(nf) * b;
    let mut row = Vec::with_capacity(n);
    row.push((lambda1 - (nf - 1.0) * a) / nf);
    for l in 1..n {
        let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
        row.push((lambda1 + a + sign * rb) / nf);
    }
    Circulant::from_real_row(&row)
}

/// Companion-form realization candidate for the shifted list
/// `σ' = ((n-1)(a+s), -(a+s) ± bi, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionWitness {
    pub n: usize,
    /// Monic characteristic polynomial of `σ'`, descending.
    pub coefficients: Vec<f64>,
    pub shift: f64,
    /// Ones on the superdiagonal, last row `(b_n, …, b_2, 0)` with
    /// `p(x) = x^n - b_2 x^{n-2} - … - b_n`.
    pub matrix: CMatrix,
}

impl CompanionWitness {
    /// `B + sI`, which realizes `((n-1)a + ns, -a ± bi, …)` when `B ≥ 0`.
    pub fn shifted_realization(&self) -> CMatrix {
        let mut m = self.matrix.clone();
        for i in 0..self.n {
            m[(i, i)] += Scalar::new(self.shift, 0.0);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompanionOracle {
    pub witness: CompanionWitness,
    /// All non-leading coefficients are `≤ 0` (scaled tolerance), i.e. the
    /// companion matrix is nonnegative.
    pub nonnegative: bool,
}

const COEFF_TOL: f64 = 1e-9;

/// Builds the characteristic polynomial of `σ'` and its companion matrix, and
/// reports whether the companion matrix is nonnegative. The verdict is true
/// exactly when `a + s ≥ b/√n`.
///
/// The polynomial is expanded as `(x - (n-1)c)(x² + 2cx + c² + b²)^{(n-1)/2}`
/// with `c = a + s`, which keeps every intermediate coefficient positive
/// until the final multiplication.
pub fn companion_oracle(n: usize, a: f64, b: f64, s: f64) -> Result<CompanionOracle> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::invalid("shift must be nonnegative"));
    }
    check_pair_params(a, b)?;
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedParity(n));
    }
    if n < 3 {
        return Err(Error::invalid("order must be at least 3"));
    }
    let c = a + s;
    let nf = n as f64;
    let quad = [1.0, 2.0 * c, c * c + b * b];
    let mut power = vec![1.0];
    for _ in 0..(n - 1) / 2 {
        power = poly_mul_real(&power, &quad);
    }
    let mut coefficients = poly_mul_real(&power, &[1.0, -(nf - 1.0) * c]);
    // the list has zero trace
    coefficients[1] = 0.0;

    let rho = ((nf - 1.0) * c).max(math::sqrt(c * c + b * b)).max(1.0);
    let nonnegative = coefficients
        .iter()
        .enumerate()
        .skip(1)
        .all(|(j, &cj)| cj <= COEFF_TOL * math::powi(rho, j as i32));

    let mut matrix = CMatrix::zeros(n, n);
    for i in 0..n - 1 {
        matrix[(i, i + 1)] = Scalar::new(1.0, 0.0);
    }
    // last row: column j holds b_{n-j} = -coefficients[n-j]
    for j in 0..n - 1 {
        matrix[(n - 1, j)] = Scalar::new(-coefficients[n - j], 0.0);
    }

    Ok(CompanionOracle {
        witness: CompanionWitness {
            n,
            coefficients,
            shift: s,
            matrix,
        },
        nonnegative,
    })
}

fn poly_mul_real(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, &x) in p.iter().enumerate() {
        for (j, &y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sign propagation check for `x^d - 2t x^{d-1} + α_2 x^{d-2} + … + α_d`:
/// true iff `α_2 ≤ 0` implies `α_j ≤ 0` for all `j ≥ 2` (absolute slack `1e-9`).
/// Returns true vacuously when `α_2 > 0`.
pub fn laffey_smigoc_sign_check(coefficients: &[f64]) -> bool {
    if coefficients.len() < 3 {
        return true;
    }
    if coefficients[2] > COEFF_TOL {
        return true;
    }
    coefficients[2..].iter().all(|&c| c <= COEFF_TOL)
}
