//! Candidate spectra and the classical necessary conditions for a list to be
//! the spectrum of an entrywise nonnegative matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{math, Error, Result, Scalar};

/// Ordered multiset of complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumList {
    entries: Vec<Scalar>,
}

impl SpectrumList {
    /// Rejects non-finite entries. The empty list is allowed here; operations
    /// that need data reject it themselves.
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|&z| !math::is_finite(z)) {
            return Err(Error::invalid(alloc::format!("entry {i} is not finite")));
        }
        Ok(SpectrumList { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        SpectrumList::new(values.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.entries
    }

    /// Largest modulus, zero for the empty list.
    pub fn spectral_radius(&self) -> f64 {
        self.entries
            .iter()
            .map(|&z| math::abs(z))
            .fold(0.0, f64::max)
    }
}

/// A list `(λ_0, …, λ_{n-1})` with `λ_0` real and of maximal modulus and
/// `λ_{n-k} = conj(λ_k)`: the shape of the DFT-ordered spectrum of a real
/// circulant with a Perron root in front.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantRealList {
    entries: Vec<Scalar>,
}

impl CirculantRealList {
    pub fn new(entries: Vec<Scalar>, tol: f64) -> Result<Self> {
        let Some(&first) = entries.first() else {
            return Err(Error::invalid("circulant real list must be nonempty"));
        };
        if first.im.abs() > tol {
            return Err(Error::invalid("λ_0 must be real"));
        }
        let rho = entries.iter().map(|&z| math::abs(z)).fold(0.0, f64::max);
        if first.re < rho - tol * rho.max(1.0) {
            return Err(Error::invalid("λ_0 must equal the largest modulus"));
        }
        if !is_dft_symmetric(&entries[1..], tol) {
            return Err(Error::invalid("λ_{n-k} must equal conj(λ_k)"));
        }
        Ok(CirculantRealList { entries })
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn perron(&self) -> f64 {
        self.entries[0].re
    }

    /// `(λ_1, …, λ_{n-1})`
    pub fn tail(&self) -> &[Scalar] {
        &self.entries[1..]
    }
}

/// Checks `tail[n-1-k] = conj(tail[k-1])`, i.e. `λ_{n-k} = conj(λ_k)` for the
/// list `(λ_0, tail…)` with `n = tail.len() + 1`.
pub fn is_dft_symmetric(tail: &[Scalar], tol: f64) -> bool {
    let len = tail.len();
    (0..len).all(|i| math::abs(tail[i] - tail[len - 1 - i].conj()) <= tol)
}

/// For every entry, the index of its conjugate partner (itself for real
/// entries), or `None` if the list is not closed under conjugation.
///
/// Entries with `|Im| ≤ tol` are real and self-paired. Upper half-plane
/// entries are visited in `(Re, |Im|, index)` order and each takes the
/// nearest unused lower half-plane entry whose conjugate lies within `tol`;
/// ties go to the smaller index.
pub fn conjugate_pairing(entries: &[Scalar], tol: f64) -> Option<Vec<usize>> {
    let mut partner: Vec<usize> = (0..entries.len()).collect();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (i, z) in entries.iter().enumerate() {
        if z.im > tol {
            upper.push(i);
        } else if z.im < -tol {
            lower.push(i);
        }
    }
    if upper.len() != lower.len() {
        return None;
    }
    let key = |&i: &usize, &j: &usize| -> Ordering {
        let (a, b) = (entries[i], entries[j]);
        a.re.total_cmp(&b.re)
            .then(a.im.abs().total_cmp(&b.im.abs()))
            .then(i.cmp(&j))
    };
    upper.sort_by(key);
    lower.sort_by(key);
    let mut used = vec![false; lower.len()];
    for &u in &upper {
        let target = entries[u].conj();
        let mut best: Option<(f64, usize)> = None;
        for (slot, &l) in lower.iter().enumerate() {
            if used[slot] {
                continue;
            }
            let d = math::abs(entries[l] - target);
            if d <= tol && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, slot));
            }
        }
        let (_, slot) = best?;
        used[slot] = true;
        partner[u] = lower[slot];
        partner[lower[slot]] = u;
    }
    Some(partner)
}

/// Multiset equality of the list with its conjugate, within `tol`.
/// The empty list is vacuously closed.
pub fn is_closed_under_conjugation(list: &SpectrumList, tol: f64) -> bool {
    conjugate_pairing(list.entries(), tol).is_some()
}

/// Power sums `(s_1, …, s_kmax)` with `s_k = Σ λ_i^k`.
pub fn moments(list: &SpectrumList, kmax: usize) -> Result<Vec<Scalar>> {
    if list.is_empty() {
        return Err(Error::invalid("moments of an empty list"));
    }
    if kmax == 0 {
        return Err(Error::invalid("kmax must be at least 1"));
    }
    let mut powers: Vec<Scalar> = list.entries().to_vec();
    let mut out = Vec::with_capacity(kmax);
    for _ in 0..kmax {
        out.push(powers.iter().sum());
        for (p, &z) in powers.iter_mut().zip(list.entries()) {
            *p *= z;
        }
    }
    Ok(out)
}

/// Verdicts of the four classical necessary conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryConditions {
    /// The largest modulus is attained by a real nonnegative member.
    pub perron_in_list: bool,
    pub conjugation_closed: bool,
    /// `Re s_k ≥ 0` for `k ≤ kmax`.
    pub moments_nonnegative: bool,
    /// `s_k^m ≤ n^{m-1} s_{km}` for `k ≤ kmax`, `m ≤ mmax`.
    pub jll: bool,
    pub spectral_radius: f64,
    /// First `k` with a negative moment.
    pub first_negative_moment: Option<usize>,
    /// First `(k, m)` violating the moment inequality.
    pub first_jll_violation: Option<(usize, usize)>,
}

impl NecessaryConditions {
    pub fn all_hold(&self) -> bool {
        self.perron_in_list && self.conjugation_closed && self.moments_nonnegative && self.jll
    }
}

/// Absolute slack used when comparing moments; scaled by the magnitude of
/// the quantities compared.
const MOMENT_TOL: f64 = 1e-9;

pub fn check_necessary_conditions(
    list: &SpectrumList,
    kmax: usize,
    mmax: usize,
) -> Result<NecessaryConditions> {
    if list.is_empty() {
        return Err(Error::invalid("necessary conditions of an empty list"));
    }
    if kmax == 0 || mmax == 0 {
        return Err(Error::invalid("kmax and mmax must be at least 1"));
    }
    let rho = list.spectral_radius();
    let scale_tol = MOMENT_TOL * rho.max(1.0);

    let perron_in_list = list
        .entries()
        .iter()
        .any(|z| z.im.abs() <= scale_tol && z.re >= -scale_tol && (z.re - rho).abs() <= scale_tol);
    let conjugation_closed = is_closed_under_conjugation(list, scale_tol);

    let n = list.len() as f64;
    let top = kmax * mmax;
    let s = moments(list, top)?;
    // Σ|λ|^k bounds |s_k| and sets the rounding scale of each moment.
    let abs_list = SpectrumList::new(
        list.entries()
            .iter()
            .map(|&z| Scalar::new(math::abs(z), 0.0))
            .collect(),
    )?;
    let abs_moments = moments(&abs_list, top)?;
    let slack = |k: usize| MOMENT_TOL * abs_moments[k - 1].re.max(1.0);

    let first_negative_moment = (1..=kmax).find(|&k| s[k - 1].re < -slack(k));

    let mut first_jll_violation = None;
    'outer: for k in 1..=kmax {
        for m in 1..=mmax {
            let (sk, skm) = (s[k - 1], s[k * m - 1]);
            if sk.im.abs() > slack(k) || skm.im.abs() > slack(k * m) {
                first_jll_violation = Some((k, m));
                break 'outer;
            }
            let lhs = math::powi(sk.re, m as i32);
            let rhs = math::powi(n, m as i32 - 1) * skm.re;
            let lhs_scale = math::powi(abs_moments[k - 1].re.max(1.0), m as i32);
            let rhs_scale = math::powi(n, m as i32 - 1) * abs_moments[k * m - 1].re.max(1.0);
            if lhs > rhs + MOMENT_TOL * lhs_scale.max(rhs_scale) {
                first_jll_violation = Some((k, m));
                break 'outer;
            }
        }
    }

    Ok(NecessaryConditions {
        perron_in_list,
        conjugation_closed,
        moments_nonnegative: first_negative_moment.is_none(),
        jll: first_jll_violation.is_none(),
        spectral_radius: rho,
        first_negative_moment,
        first_jll_violation,
    })
}
