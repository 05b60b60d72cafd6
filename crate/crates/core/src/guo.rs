//! Least Perron value of a real circulant with a prescribed tail.
//!
//! For a DFT-ordered tail `(μ_1, …, μ_{n-1})`, `μ_{n-ℓ} = conj(μ_ℓ)`, the
//! circulant with spectrum `(λ_0, μ_1, …)` has first-row entries
//! `a_j = (λ_0 + Σ_ℓ μ_ℓ τ^{-jℓ}) / n`, so it is nonnegative exactly when
//! `λ_0 ≥ max_j -Σ_ℓ Re(μ_ℓ τ^{-jℓ})`. Reordering the tail by an assignment
//! `α` with `α(0) = 0`, `α(n-k) = n - α(k)` keeps the symmetry, and the index
//! is the minimum of that bound over all such `α`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::circulant::Circulant;
use crate::dft::root_pow;
use crate::spectra::{conjugate_pairing, is_dft_symmetric, SpectrumList};
use crate::{math, Error, Result, Scalar};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 11;

/// Imaginary residue allowed in the first-row sums, relative to the tail scale.
const RESIDUE_TOL: f64 = 1e-9;

/// A permutation `α` of `{0, …, n-1}` with `α(0) = 0` and `α(n-k) = n - α(k)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GuoAssignment {
    alpha: Vec<usize>,
}

impl GuoAssignment {
    pub fn new(alpha: Vec<usize>) -> Result<Self> {
        let n = alpha.len();
        if n == 0 || alpha[0] != 0 {
            return Err(Error::InvalidAssignment("α(0) must be 0".into()));
        }
        let mut seen = alloc::vec![false; n];
        for &x in &alpha {
            if x >= n || seen[x] {
                return Err(Error::InvalidAssignment("α must be a permutation".into()));
            }
            seen[x] = true;
        }
        for k in 1..n {
            if alpha[n - k] != n - alpha[k] {
                return Err(Error::InvalidAssignment(alloc::format!(
                    "α({}) must equal n - α({k})",
                    n - k
                )));
            }
        }
        Ok(GuoAssignment { alpha })
    }

    pub fn identity(n: usize) -> Self {
        GuoAssignment {
            alpha: (0..n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.alpha
    }

    /// `(λ_{α(1)}, …, λ_{α(n-1)})` for `tail = (λ_1, …, λ_{n-1})`.
    pub fn permute_tail(&self, tail: &[Scalar]) -> Vec<Scalar> {
        self.alpha[1..].iter().map(|&a| tail[a - 1]).collect()
    }
}

fn check_order(n: usize) -> Result<()> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::UnsupportedSize {
            what: "circulant order",
            size: n,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

/// Every assignment of order `n`, in lexicographic order.
///
/// The `h = ⌊(n-1)/2⌋` slots `{k, n-k}` are sent to the pairs `{p, n-p}` in
/// any order and orientation, giving `2^h · h!` assignments; for even `n` the
/// self-paired index `n/2` is fixed.
pub fn enumerate_assignments(n: usize) -> Result<Vec<GuoAssignment>> {
    check_order(n)?;
    let h = (n - 1) / 2;
    let mut out = Vec::new();
    let mut alpha = alloc::vec![0; n];
    if n.is_multiple_of(2) {
        alpha[n / 2] = n / 2;
    }
    fn fill(k: usize, h: usize, n: usize, used: &mut [bool], alpha: &mut [usize], out: &mut Vec<GuoAssignment>) {
        if k > h {
            out.push(GuoAssignment { alpha: alpha.to_vec() });
            return;
        }
        for p in 1..=h {
            if used[p] {
                continue;
            }
            used[p] = true;
            for target in [p, n - p] {
                alpha[k] = target;
                alpha[n - k] = n - target;
                fill(k + 1, h, n, used, alpha, out);
            }
            used[p] = false;
        }
    }
    let mut used = alloc::vec![false; h + 1];
    fill(1, h, n, &mut used, &mut alpha, &mut out);
    out.sort();
    Ok(out)
}

fn tail_scale(tail: &[Scalar]) -> f64 {
    tail.iter().map(|&z| math::abs(z)).sum::<f64>().max(1.0)
}

/// `max_j -Σ_ℓ Re(μ_ℓ τ^{-jℓ})` for a DFT-symmetric `μ`, checking that each
/// sum is real.
fn direct_bound(mu: &[Scalar]) -> Result<f64> {
    let n = mu.len() + 1;
    let scale = tail_scale(mu);
    let mut best = f64::NEG_INFINITY;
    for j in 0..n {
        let sum: Scalar = mu
            .iter()
            .enumerate()
            .map(|(i, &z)| z * root_pow(-((j * (i + 1)) as i64), n))
            .sum();
        if sum.im.abs() > RESIDUE_TOL * scale {
            return Err(Error::InvalidAssignment(alloc::format!(
                "first-row entry {j} has imaginary residue {:e}",
                sum.im.abs()
            )));
        }
        best = best.max(-sum.re);
    }
    Ok(best)
}

fn check_tail(tail: &[Scalar], n: usize) -> Result<()> {
    if tail.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: tail.len(),
        });
    }
    Ok(())
}

/// Least `λ_0` for which the circulant with spectrum
/// `(λ_0, λ_{α(1)}, …, λ_{α(n-1)})` is nonnegative.
pub fn lambda0_for_assignment(tail: &[Scalar], alpha: &GuoAssignment) -> Result<f64> {
    let n = alpha.order();
    check_tail(tail, n)?;
    let mu = alpha.permute_tail(tail);
    if !is_dft_symmetric(&mu, RESIDUE_TOL * tail_scale(tail)) {
        return Err(Error::InvalidAssignment(
            "permuted tail is not conjugation symmetric".into(),
        ));
    }
    direct_bound(&mu)
}

/// The same bound in trigonometric form,
/// `max_j -2 Σ_{ℓ=1}^{h} (Re μ_ℓ cos θ_{jℓ} + Im μ_ℓ sin θ_{jℓ}) - [n even] (-1)^j μ_{n/2}`
/// with `θ_{jℓ} = 2πjℓ/n` and `h = ⌊(n-1)/2⌋`.
pub fn lambda0_trigonometric(tail: &[Scalar], alpha: &GuoAssignment) -> Result<f64> {
    let n = alpha.order();
    check_tail(tail, n)?;
    let mu = alpha.permute_tail(tail);
    if !is_dft_symmetric(&mu, RESIDUE_TOL * tail_scale(tail)) {
        return Err(Error::InvalidAssignment(
            "permuted tail is not conjugation symmetric".into(),
        ));
    }
    let h = (n - 1) / 2;
    let best = (0..n)
        .map(|j| {
            let mut s = 0.0;
            for l in 1..=h {
                let theta = 2.0 * PI * ((j * l) % n) as f64 / n as f64;
                s += mu[l - 1].re * math::cos(theta) + mu[l - 1].im * math::sin(theta);
            }
            let mut v = -2.0 * s;
            if n.is_multiple_of(2) {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                v -= sign * mu[n / 2 - 1].re;
            }
            v
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(best)
}

/// Reorders a conjugation-closed tail so that `λ_{n-k} = conj(λ_k)`.
///
/// A tail that is already symmetric is returned unchanged. Otherwise slots
/// `k = 1, 2, …` are filled in order of first appearance: a non-real entry
/// takes slot `k` and its conjugate partner slot `n-k`; a real entry needs an
/// equal real partner, except that for even `n` one unpaired real goes to the
/// middle slot `n/2`.
pub fn canonical_tail(tail: &[Scalar], tol: f64) -> Result<Vec<Scalar>> {
    if is_dft_symmetric(tail, tol) {
        return Ok(tail.to_vec());
    }
    let n = tail.len() + 1;
    let partner = conjugate_pairing(tail, tol)
        .ok_or_else(|| Error::invalid("tail is not closed under conjugation"))?;
    let mut used = alloc::vec![false; tail.len()];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut middle: Option<usize> = None;
    for i in 0..tail.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if partner[i] != i {
            used[partner[i]] = true;
            let (u, l) = if tail[i].im >= 0.0 { (i, partner[i]) } else { (partner[i], i) };
            pairs.push((u, l));
            continue;
        }
        let twin = (i + 1..tail.len())
            .find(|&j| !used[j] && partner[j] == j && math::abs(tail[j] - tail[i]) <= tol);
        match twin {
            Some(j) => {
                used[j] = true;
                pairs.push((i, j));
            }
            None if n.is_multiple_of(2) && middle.is_none() => middle = Some(i),
            None => {
                return Err(Error::invalid(
                    "tail cannot be arranged with λ_{n-k} = conj(λ_k)",
                ))
            }
        }
    }
    let mut out = alloc::vec![Scalar::new(0.0, 0.0); tail.len()];
    for (k, &(u, l)) in pairs.iter().enumerate() {
        out[k] = tail[u];
        out[n - 2 - k] = tail[l];
    }
    if let Some(i) = middle {
        out[n / 2 - 1] = Scalar::new(tail[i].re, 0.0);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuoResult {
    pub lambda0: f64,
    pub assignment: GuoAssignment,
    /// Circulant with spectrum `(λ_0, λ_{α(1)}, …)` in DFT order.
    pub witness: Circulant,
    /// `max |λ_j|` over the tail, reported alongside `λ_0`.
    pub max_modulus: f64,
    /// The tail after canonical reordering, before `α` is applied.
    pub tail: Vec<Scalar>,
}

/// Minimum over all assignments of [`lambda0_for_assignment`], with the
/// lexicographically smallest minimizing `α`.
pub fn guo_index(tail: &[Scalar], tol: f64) -> Result<GuoResult> {
    let n = tail.len() + 1;
    check_order(n)?;
    if tail.iter().any(|&z| !math::is_finite(z)) {
        return Err(Error::invalid("tail entries must be finite"));
    }
    let tail = canonical_tail(tail, tol)?;
    let scale = tail_scale(&tail);
    let mut best: Option<(f64, GuoAssignment)> = None;
    for alpha in enumerate_assignments(n)? {
        let v = lambda0_for_assignment(&tail, &alpha)?;
        if best.as_ref().is_none_or(|(b, _)| v < b - 1e-13 * scale) {
            best = Some((v, alpha));
        }
    }
    let (lambda0, assignment) = best.expect("at least one assignment");
    let lambda0 = lambda0.max(0.0);
    let mut spectrum = Vec::with_capacity(n);
    spectrum.push(Scalar::new(lambda0, 0.0));
    spectrum.extend(assignment.permute_tail(&tail));
    let witness = Circulant::from_spectrum(&SpectrumList::new(spectrum)?)?;
    Ok(GuoResult {
        lambda0,
        assignment,
        witness,
        max_modulus: tail.iter().map(|&z| math::abs(z)).fold(0.0, f64::max),
        tail,
    })
}
