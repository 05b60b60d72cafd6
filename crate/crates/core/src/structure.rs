//! Structure of a block matrix read off its `S_k` family and vice versa.
//!
//! | family property (all `k`)                        | block matrix property            |
//! |--------------------------------------------------|----------------------------------|
//! | `S_k` diagonal                                   | block diagonal                   |
//! | `S_k` circulant                                  | block circulant                  |
//! | `S_k` permutatively equivalent with one tuple `ν`| block permutative with tuple `ν` |
//! | `S_k` Hermitian and `S_{m-k} = conj(S_k)`        | real symmetric                   |
//!
//! The last row is the exact form of the symmetry statement: a real symmetric
//! `A` gives `S_kᵀ = S_{m-k}` and `conj(S_k) = S_{m-k}`, so `S_k` itself need
//! not be real (two mutually transposed off-diagonal blocks `circ(0, 1, 0)`
//! and `circ(0, 0, 1)` give a complex `S_1`). When every `S_k` is real the
//! condition reads "real symmetric and `S_k = S_{m-k}`".

use alloc::vec::Vec;

use crate::block::{is_circulant_matrix, s_matrices, CirculantBlockMatrix, SFamily};
use crate::{math, CMatrix, Error, Result};

/// `ν = (ν_0, …, ν_{n-1})` with `ν_0 = id`; row `i` of a permutative matrix
/// `M` is `M[i][j] = M[0][ν_i(j)]`. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PermutationTuple {
    perms: Vec<Vec<usize>>,
}

impl PermutationTuple {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = perms.len();
        if n == 0 {
            return Err(Error::invalid("permutation tuple must be nonempty"));
        }
        for p in &perms {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            let mut seen = alloc::vec![false; n];
            for &x in p {
                if x >= n || seen[x] {
                    return Err(Error::invalid("tuple rows must be permutations"));
                }
                seen[x] = true;
            }
        }
        if perms[0].iter().enumerate().any(|(j, &x)| j != x) {
            return Err(Error::invalid("first permutation must be the identity"));
        }
        Ok(PermutationTuple { perms })
    }

    /// The cyclic tuple of an order-`n` circulant: `ν_i(j) = (j - i) mod n`.
    pub fn cyclic(n: usize) -> Self {
        PermutationTuple {
            perms: (0..n).map(|i| (0..n).map(|j| (j + n - i) % n).collect()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, i: usize) -> &[usize] {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// The matrix whose row `i` is `ν_i` applied to `first_row`.
    pub fn apply(&self, first_row: &[crate::Scalar]) -> Result<CMatrix> {
        let n = self.n();
        if first_row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: first_row.len(),
            });
        }
        Ok(CMatrix::from_fn(n, n, |i, j| first_row[self.perms[i][j]]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub diagonal: bool,
    pub circulant: bool,
    pub permutatively_equivalent: Option<PermutationTuple>,
    pub symmetric_real: bool,
}

/// Lexicographically smallest tuple with `matches(i, j, c)` for every
/// `(i, j) ↦ c = ν_i(j)`; rows are independent, so each is searched alone.
fn smallest_tuple(n: usize, matches: impl Fn(usize, usize, usize) -> bool) -> Option<PermutationTuple> {
    fn extend(
        i: usize,
        j: usize,
        n: usize,
        used: &mut [bool],
        perm: &mut Vec<usize>,
        matches: &impl Fn(usize, usize, usize) -> bool,
    ) -> bool {
        if j == n {
            return true;
        }
        for c in 0..n {
            if !used[c] && matches(i, j, c) {
                used[c] = true;
                perm.push(c);
                if extend(i, j + 1, n, used, perm, matches) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }

    let mut perms = Vec::with_capacity(n);
    perms.push((0..n).collect());
    for i in 1..n {
        let mut used = alloc::vec![false; n];
        let mut perm = Vec::with_capacity(n);
        if !extend(i, 0, n, &mut used, &mut perm, &matches) {
            return None;
        }
        perms.push(perm);
    }
    Some(PermutationTuple { perms })
}

/// A common tuple `ν` with `M[i][j] = M[0][ν_i(j)]` (within `tol`) for every
/// matrix in the list, or `None`. Ties between equal entries resolve to the
/// lexicographically smallest tuple.
pub fn permutative_equivalence(matrices: &[CMatrix], tol: f64) -> Option<PermutationTuple> {
    let n = matrices.first()?.rows();
    if matrices.iter().any(|m| !m.is_square() || m.rows() != n) || n == 0 {
        return None;
    }
    smallest_tuple(n, |i, j, c| {
        matrices
            .iter()
            .all(|m| math::abs(m[(i, j)] - m[(0, c)]) <= tol)
    })
}

fn is_diagonal(m: &CMatrix, tol: f64) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || math::abs(m[(i, j)]) <= tol))
}

fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    let n = m.rows();
    (0..n).all(|i| (i..n).all(|j| math::abs(m[(i, j)] - m[(j, i)].conj()) <= tol))
}

/// Flags holding for every member of the family.
pub fn classify_family(s: &SFamily, tol: f64) -> StructureReport {
    let mats = s.matrices();
    let m = mats.len();
    let circulant = mats.iter().all(|x| is_circulant_matrix(x, tol));
    let mut permutatively_equivalent = permutative_equivalence(mats, tol);
    if circulant && permutatively_equivalent.is_none() {
        // Ties within `tol` can defeat the per-entry search; the cyclic
        // tuple is always a witness for circulants.
        permutatively_equivalent = Some(PermutationTuple::cyclic(s.n()));
    }
    StructureReport {
        diagonal: mats.iter().all(|x| is_diagonal(x, tol)),
        circulant,
        permutatively_equivalent,
        symmetric_real: (0..m).all(|k| {
            is_hermitian(&mats[k], tol)
                && mats[(m - k) % m]
                    .max_abs_diff(&mats[k].conj())
                    .is_ok_and(|d| d <= tol)
        }),
    }
}

fn blocks_close(a: &[crate::Scalar], b: &[crate::Scalar], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| math::abs(x - y) <= tol)
}

/// Structure of the block grid itself:
///
/// * diagonal: every off-diagonal block vanishes;
/// * circulant: block `(u, v)` equals block `(0, (v - u) mod n)`;
/// * permutative: block row `u` is `ν_u` applied to block row 0;
/// * symmetric real: every entry is real and `A = Aᵀ`.
pub fn detect_block_structure(a: &CirculantBlockMatrix, tol: f64) -> StructureReport {
    let n = a.grid_size();
    let m = a.block_order();
    let zero_block = |b: &[crate::Scalar]| b.iter().all(|z| math::abs(*z) <= tol);
    let diagonal = (0..n).all(|u| (0..n).all(|v| u == v || zero_block(a.block(u, v))));
    let circulant = (0..n).all(|u| {
        (0..n).all(|v| blocks_close(a.block(u, v), a.block(0, (v + n - u) % n), tol))
    });
    let mut permutatively_equivalent =
        smallest_tuple(n, |u, v, c| blocks_close(a.block(u, v), a.block(0, c), tol));
    if circulant && permutatively_equivalent.is_none() {
        permutatively_equivalent = Some(PermutationTuple::cyclic(n));
    }
    // circ(x)ᵀ = circ(x_0, x_{m-1}, …, x_1)
    let symmetric_real = a.blocks().iter().flatten().all(|z| z.im.abs() <= tol)
        && (0..n).all(|u| {
            (0..n).all(|v| {
                let (x, y) = (a.block(u, v), a.block(v, u));
                (0..m).all(|k| math::abs(y[k] - x[(m - k) % m]) <= tol)
            })
        });
    StructureReport {
        diagonal,
        circulant,
        permutatively_equivalent,
        symmetric_real,
    }
}

/// `detect_block_structure` on the family side: classifies `s_matrices(a)`.
pub fn classify_matrix_family(a: &CirculantBlockMatrix, tol: f64) -> StructureReport {
    classify_family(&s_matrices(a), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::assemble;
    use crate::Scalar;
    use alloc::vec;

    fn real(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_real_rows(rows).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn worked_family_is_neither_circulant_nor_permutative() {
        let s0 = real(&[&[0.5, 3.5], &[3.5, 0.5]]);
        let s1 = real(&[&[0.5, -1.0], &[1.0, 0.5]]);
        let fam = SFamily::new(vec![s0, s1.clone(), s1]).unwrap();
        let rep = classify_family(&fam, 1e-12);
        assert!(!rep.circulant);
        assert!(!rep.diagonal);
        // row 1 of S_1 is (1, 1/2), not a rearrangement of (1/2, -1)
        assert!(rep.permutatively_equivalent.is_none());
    }

    #[test]
    fn ematrix_family_is_circulant_not_symmetric_real() {
        let s0 = real(&[&[1.5, 2.5], &[2.5, 1.5]]);
        let s1 = CMatrix::from_rows(vec![
            vec![c(-0.5, 1.0), c(-0.5, 0.0)],
            vec![c(-0.5, 0.0), c(-0.5, 1.0)],
        ])
        .unwrap();
        let s2 = s1.conj();
        let rep = classify_family(&SFamily::new(vec![s0, s1, s2]).unwrap(), 1e-12);
        assert!(rep.circulant);
        assert_eq!(rep.permutatively_equivalent, Some(PermutationTuple::cyclic(2)));
        assert!(!rep.symmetric_real);
    }

    #[test]
    fn diagonal_family() {
        let fam = SFamily::new(vec![real(&[&[1.0, 0.0], &[0.0, 2.0]]), real(&[&[3.0, 0.0], &[0.0, -1.0]])])
            .unwrap();
        assert!(classify_family(&fam, 1e-12).diagonal);
        assert!(detect_block_structure(&assemble(&fam), 1e-12).diagonal);
    }

    #[test]
    fn permutative_examples() {
        let circ = real(&[&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0], &[2.0, 3.0, 1.0]]);
        assert_eq!(permutative_equivalence(&[circ], 0.0), Some(PermutationTuple::cyclic(3)));

        let a = real(&[&[1.0, 2.0], &[2.0, 1.0]]);
        let b = real(&[&[5.0, 6.0], &[6.0, 5.0]]);
        let nu = permutative_equivalence(&[a.clone(), b], 0.0).unwrap();
        assert_eq!(nu.perms(), &[vec![0, 1], vec![1, 0]]);

        let b = real(&[&[5.0, 6.0], &[5.0, 6.0]]);
        assert!(permutative_equivalence(&[a, b], 0.0).is_none());
    }

    #[test]
    fn ties_resolve_to_smallest_tuple() {
        let m = real(&[&[1.0, 1.0, 2.0], &[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0]]);
        let nu = permutative_equivalence(std::slice::from_ref(&m), 0.0).unwrap();
        assert_eq!(nu.perm(1), &[2, 0, 1]);
        assert_eq!(nu.perm(2), &[0, 2, 1]);
        assert_eq!(nu.apply(m.row(0)).unwrap(), m);
    }

    #[test]
    fn tuple_validation() {
        assert!(PermutationTuple::new(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(PermutationTuple::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(PermutationTuple::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn circulant_family_gives_block_circulant() {
        let s0 = real(&[&[1.0, 2.0, 0.5], &[0.5, 1.0, 2.0], &[2.0, 0.5, 1.0]]);
        let s1 = real(&[&[0.0, -1.0, 3.0], &[3.0, 0.0, -1.0], &[-1.0, 3.0, 0.0]]);
        let a = assemble(&SFamily::new(vec![s0, s1]).unwrap());
        let rep = detect_block_structure(&a, 1e-10);
        assert!(rep.circulant);
        assert!(rep.permutatively_equivalent.is_some());

        let mut blocks = a.blocks().to_vec();
        blocks[4][0] += 0.1;
        let broken = CirculantBlockMatrix::new(3, 2, blocks).unwrap();
        assert!(!detect_block_structure(&broken, 1e-10).circulant);
    }

    #[test]
    fn symmetric_real_characterization() {
        // real symmetric S_k with S_1 = S_2
        let s0 = real(&[&[1.0, 2.0], &[2.0, 0.0]]);
        let s1 = real(&[&[0.5, -1.0], &[-1.0, 3.0]]);
        let fam = SFamily::new(vec![s0, s1.clone(), s1]).unwrap();
        assert!(classify_family(&fam, 1e-12).symmetric_real);
        assert!(detect_block_structure(&assemble(&fam), 1e-10).symmetric_real);

        // A(1,2) = circ(0,1,0), A(2,1) = its transpose: real symmetric A, complex S_1
        let z = vec![c(0.0, 0.0); 3];
        let a = CirculantBlockMatrix::new(
            2,
            3,
            vec![z.clone(), vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], z],
        )
        .unwrap();
        assert!(a.to_dense().max_abs_diff(&a.to_dense().transpose()).unwrap() == 0.0);
        assert!(detect_block_structure(&a, 1e-12).symmetric_real);
        let s = s_matrices(&a);
        assert!(s.get(1).max_abs_im() > 0.5);
        assert!(classify_family(&s, 1e-12).symmetric_real);
    }
}
