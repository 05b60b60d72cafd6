//! Polynomial plumbing for verification: characteristic polynomials,
//! expansion from roots, simultaneous root iteration, and multiset matching.
//!
//! Coefficient vectors are monic and in descending order:
//! `[1, c_1, …, c_d]` stands for `x^d + c_1 x^{d-1} + … + c_d`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{math, CMatrix, Error, Result, Scalar};

/// Largest degree accepted by [`char_poly`] and [`poly_roots`].
pub const MAX_DEGREE: usize = 12;

const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-12;
const BACKWARD_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-6;

/// `det(xI - M)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &CMatrix) -> Result<Vec<Scalar>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_DEGREE {
        return Err(Error::UnsupportedSize {
            what: "matrix order",
            size: n,
            max: MAX_DEGREE,
        });
    }
    let mut coeffs = vec![Scalar::new(1.0, 0.0)];
    // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k
    let mut mk = CMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk)?;
        let prev = coeffs[k - 1];
        for i in 0..n {
            next[(i, i)] += prev;
        }
        mk = next;
        let c = -m.mul(&mk)?.trace() / (k as f64);
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Monic polynomial with the given roots, built from power sums through the
/// Newton identities.
pub fn poly_from_roots(roots: &[Scalar]) -> Vec<Scalar> {
    let d = roots.len();
    let mut power_sums = Vec::with_capacity(d);
    let mut powers = roots.to_vec();
    for _ in 0..d {
        power_sums.push(powers.iter().sum::<Scalar>());
        for (p, &z) in powers.iter_mut().zip(roots) {
            *p *= z;
        }
    }
    // e_k = (1/k) Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![Scalar::new(1.0, 0.0)];
    for k in 1..=d {
        let mut acc = Scalar::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / k as f64);
    }
    e.iter()
        .enumerate()
        .map(|(k, &ek)| if k % 2 == 1 { -ek } else { ek })
        .collect()
}

/// Horner evaluation.
pub fn poly_eval(coeffs: &[Scalar], z: Scalar) -> Scalar {
    coeffs
        .iter()
        .fold(Scalar::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn poly_eval_with_derivative(coeffs: &[Scalar], z: Scalar) -> (Scalar, Scalar) {
    let mut p = Scalar::new(0.0, 0.0);
    let mut dp = Scalar::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |c_k| |z|^{d-k}`: rounding scale of a Horner evaluation at `z`.
fn eval_scale(coeffs: &[Scalar], z: Scalar) -> f64 {
    let r = math::abs(z);
    coeffs
        .iter()
        .fold(0.0, |acc, &c| acc * r + math::abs(c))
}

/// All roots of a monic polynomial by Durand–Kerner iteration.
///
/// Iterates until the largest update drops below `1e-12` (relative to the
/// root's modulus once it exceeds one) or 500 sweeps have run. A run that
/// exhausts the sweeps is still accepted when every iterate has a backward
/// error below `1e-10`; this is the normal outcome around repeated roots,
/// where the updates stall at rounding level. Each root then gets one guarded
/// Newton step, and clusters tighter than `1e-6` are replaced by their
/// centroid, which recovers multiple roots to far better accuracy than the
/// individual iterates.
pub fn poly_roots(coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    let Some(&lead) = coeffs.first() else {
        return Err(Error::invalid("empty coefficient vector"));
    };
    if (lead - Scalar::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::invalid("polynomial must be monic"));
    }
    let d = coeffs.len() - 1;
    if d > MAX_DEGREE {
        return Err(Error::UnsupportedSize {
            what: "polynomial degree",
            size: d,
            max: MAX_DEGREE,
        });
    }
    if coeffs.iter().any(|&c| !math::is_finite(c)) {
        return Err(Error::invalid("coefficients must be finite"));
    }
    if d == 0 {
        return Ok(Vec::new());
    }

    // Fujiwara-style radius: every root has modulus at most 2·max |c_k|^{1/k}.
    let radius = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| libm::pow(math::abs(c), 1.0 / (i + 1) as f64))
        .fold(0.0, f64::max);
    if radius == 0.0 {
        return Ok(vec![Scalar::new(0.0, 0.0); d]);
    }

    let mut z: Vec<Scalar> = (0..d)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / d as f64 + 0.4;
            Scalar::new(math::cos(theta), math::sin(theta)) * radius
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let mut denom = Scalar::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    let mut diff = z[i] - z[j];
                    if diff == Scalar::new(0.0, 0.0) {
                        diff = Scalar::new(1e-14 * radius, 1e-14 * radius);
                    }
                    denom *= diff;
                }
            }
            let step = poly_eval(coeffs, z[i]) / denom;
            if !math::is_finite(step) {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(math::abs(step) / math::abs(z[i]).max(1.0));
        }
        if max_step < STEP_TOL {
            converged = true;
            break;
        }
    }

    if !converged {
        let worst = z
            .iter()
            .map(|&zi| math::abs(poly_eval(coeffs, zi)) / eval_scale(coeffs, zi).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        if worst.is_nan() || worst > BACKWARD_TOL {
            return Err(Error::NumericFailure {
                reason: format!(
                    "Durand-Kerner did not converge in {MAX_ITERATIONS} sweeps (backward error {worst:e})"
                ),
                partial: z,
            });
        }
    }

    for zi in z.iter_mut() {
        let (p, dp) = poly_eval_with_derivative(coeffs, *zi);
        if math::abs(dp) > 0.0 {
            let cand = *zi - p / dp;
            if math::is_finite(cand) && math::abs(poly_eval(coeffs, cand)) <= math::abs(p) {
                *zi = cand;
            }
        }
    }

    Ok(merge_clusters(coeffs, z))
}

/// Coefficients of `p^{(order)}`.
fn derivative(coeffs: &[Scalar], order: usize) -> Vec<Scalar> {
    let mut c = coeffs.to_vec();
    for _ in 0..order {
        let d = c.len() - 1;
        c = c[..d]
            .iter()
            .enumerate()
            .map(|(i, &a)| a * (d - i) as f64)
            .collect();
    }
    c
}

/// Replaces every group of `k` mutually close roots by one point repeated
/// `k` times: the group centroid, refined by Newton on `p^{(k-1)}`, for which
/// a `k`-fold root is simple.
fn merge_clusters(coeffs: &[Scalar], z: Vec<Scalar>) -> Vec<Scalar> {
    let d = z.len();
    let mut group: Vec<usize> = (0..d).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        g[i] = r;
        r
    }
    for i in 0..d {
        for j in i + 1..d {
            let scale = math::abs(z[i]).max(math::abs(z[j])).max(1.0);
            if math::abs(z[i] - z[j]) < CLUSTER_TOL * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                if a != b {
                    group[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..d).map(|i| find(&mut group, i)).collect();
    let mut out = z.clone();
    for i in 0..d {
        if roots[i] != i {
            continue;
        }
        let members: Vec<usize> = (0..d).filter(|&j| roots[j] == i).collect();
        if members.len() == 1 {
            continue;
        }
        let k = members.len();
        let centroid = members.iter().map(|&j| z[j]).sum::<Scalar>() / k as f64;
        let q = derivative(coeffs, k - 1);
        let scale = math::abs(centroid).max(1.0);
        let mut x = centroid;
        for _ in 0..8 {
            let (v, dv) = poly_eval_with_derivative(&q, x);
            if math::abs(dv) == 0.0 {
                break;
            }
            let step = v / dv;
            if !math::is_finite(step) || math::abs(x - step - centroid) > CLUSTER_TOL * scale {
                break;
            }
            x -= step;
            if math::abs(step) <= 1e-16 * scale {
                break;
            }
        }
        for &j in &members {
            out[j] = x;
        }
    }
    out
}

/// Eigenvalues of a general square matrix (order ≤ 12) through its
/// characteristic polynomial.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Scalar>> {
    poly_roots(&char_poly(m)?)
}

/// Greedy minimal-distance matching of two multisets: repeatedly pairs the
/// closest unmatched elements. Returns the largest matched distance.
pub fn match_multisets(a: &[Scalar], b: &[Scalar]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let n = a.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            pairs.push((math::abs(x - y), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut worst: f64 = 0.0;
    let mut matched = 0;
    for (dist, i, j) in pairs {
        if matched == n {
            break;
        }
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(dist);
            matched += 1;
        }
    }
    Ok(worst)
}
