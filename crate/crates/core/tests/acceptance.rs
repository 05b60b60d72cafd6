//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one line per criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use circblock_core::block::{
    assemble, is_nonnegative_family, l_matrices, s_from_l, s_matrices, spectrum, LFamily, SFamily,
};
use circblock_core::circulant::{
    companion_oracle, conjugate_pair_circulant, conjugate_pair_guo_bound, Circulant,
};
use circblock_core::dft::{dft_eigenvalues, fourier_matrix, harmonic_vector, idft_coefficients};
use circblock_core::ematrix::{min_perron, realize_ematrix, EMatrix, DEFAULT_BUDGET};
use circblock_core::exact::{exact_assemble, exact_spectrum, ExactMatrix, GaussianRational};
use circblock_core::guo::{enumerate_assignments, guo_index, GuoAssignment};
use circblock_core::poly::{eigenvalues, match_multisets};
use circblock_core::spectra::SpectrumList;
use circblock_core::structure::{classify_family, detect_block_structure, PermutationTuple};
use circblock_core::{CMatrix, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_c(r: &mut ChaCha8Rng, bound: f64) -> Scalar {
    c(r.gen_range(-bound..=bound), r.gen_range(-bound..=bound))
}

fn random_matrix(r: &mut ChaCha8Rng, n: usize, bound: f64) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| rand_c(r, bound))
}

fn worked_family() -> SFamily {
    let s0 = CMatrix::from_real_rows(&[&[0.5, 3.5], &[3.5, 0.5]]).unwrap();
    let s1 = CMatrix::from_real_rows(&[&[0.5, -1.0], &[1.0, 0.5]]).unwrap();
    SFamily::new(vec![s0, s1.clone(), s1]).unwrap()
}

fn worked_spectrum() -> Vec<Scalar> {
    vec![c(4.0, 0.0), c(-3.0, 0.0), c(0.5, 1.0), c(0.5, -1.0), c(0.5, 1.0), c(0.5, -1.0)]
}

fn criterion_1() -> Outcome {
    let g = |s: &str| GaussianRational::parse(s, "0").unwrap();
    let m = |rows: [[&str; 2]; 2]| {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| g(x)).collect()).collect()).unwrap()
    };
    let s0 = m([["1/2", "7/2"], ["7/2", "1/2"]]);
    let s1 = m([["1/2", "-1"], ["1", "1/2"]]);
    let a = exact_assemble(&[s0, s1.clone(), s1]).map_err(|e| e.to_string())?;
    let reference = [
        ["1/2", "0", "0"],
        ["1/2", "3/2", "3/2"],
        ["11/6", "5/6", "5/6"],
        ["1/2", "0", "0"],
    ];
    for (idx, want) in reference.iter().enumerate() {
        let want: Vec<_> = want.iter().map(|x| g(x)).collect();
        ensure(a.block(idx / 2, idx % 2) == want.as_slice(), format!("block {idx} differs from the reference matrix"))?;
    }
    let float = assemble(&worked_family());
    let dense = a.to_dense();
    ensure(
        float.to_dense().max_abs_diff(&dense.to_cmatrix()).unwrap() < 1e-14,
        "floating assembly disagrees with the exact one",
    )?;
    let exact_err = match_multisets(&exact_spectrum(&dense).map_err(|e| e.to_string())?, &worked_spectrum()).unwrap();
    let float_err = match_multisets(&eigenvalues(&float.to_dense()).map_err(|e| e.to_string())?, &worked_spectrum()).unwrap();
    ensure(exact_err <= 1e-8, format!("exact-polynomial oracle mismatch {exact_err:e}"))?;
    ensure(float_err <= 1e-8, format!("floating char-poly oracle mismatch {float_err:e}"))?;
    Ok(format!("blocks exact; spectrum match {exact_err:.1e} (exact poly), {float_err:.1e} (float poly)"))
}

fn criterion_2() -> Outcome {
    let r3 = 3f64.sqrt() / 3.0;
    let s0 = CMatrix::from_real_rows(&[
        &[5.0 / 3.0, r3 + 7.0 / 6.0, 7.0 / 6.0 - r3],
        &[7.0 / 6.0 - r3, 5.0 / 3.0, r3 + 7.0 / 6.0],
        &[r3 + 7.0 / 6.0, 7.0 / 6.0 - r3, 5.0 / 3.0],
    ])
    .unwrap();
    let s1 = CMatrix::from_real_rows(&[
        &[-2.0 / 3.0, r3 - 7.0 / 6.0, -r3 - 7.0 / 6.0],
        &[-r3 - 7.0 / 6.0, -2.0 / 3.0, r3 - 7.0 / 6.0],
        &[r3 - 7.0 / 6.0, -r3 - 7.0 / 6.0, -2.0 / 3.0],
    ])
    .unwrap();
    let e0 = eigenvalues(&s0).map_err(|e| e.to_string())?;
    let e1 = eigenvalues(&s1).map_err(|e| e.to_string())?;
    ensure(match_multisets(&e0, &[c(4.0, 0.0), c(0.5, 1.0), c(0.5, -1.0)]).unwrap() < 1e-9, "σ(S_0) differs")?;
    ensure(match_multisets(&e1, &[c(-3.0, 0.0), c(0.5, 1.0), c(0.5, -1.0)]).unwrap() < 1e-9, "σ(S_1) differs")?;
    let fam = SFamily::new(vec![s0.clone(), s1.clone()]).unwrap();
    let sum = s0.add(&s1).unwrap();
    let t = 2.0 * r3;
    let reference = CMatrix::from_real_rows(&[&[1.0, t, -t], &[-t, 1.0, t], &[t, -t, 1.0]]).unwrap();
    ensure(sum.max_abs_diff(&reference).unwrap() < 1e-12, "S_0 + S_1 differs from the reference matrix")?;
    ensure(!is_nonnegative_family(&fam, 1e-10), "family reported nonnegative")?;
    ensure(!assemble(&fam).is_nonnegative(1e-10), "assembled matrix reported nonnegative")?;
    Ok("is_nonnegative_family = false; S_0 + S_1 has entries -2/√3".into())
}

fn close_to(l: &CMatrix, rows: &[&[f64]], tol: f64) -> bool {
    l.max_abs_diff(&CMatrix::from_real_rows(rows).unwrap()).unwrap() <= tol
}

fn e4() -> EMatrix {
    EMatrix::from_rows(vec![
        vec![c(4.0, 0.0), c(-1.0, 1.0), c(-1.0, -1.0)],
        vec![c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)],
    ])
    .unwrap()
}

fn criterion_3() -> Outcome {
    let e3 = EMatrix::from_rows(vec![
        vec![c(3.0, 0.0), c(-1.0, 1.0), c(-1.0, -1.0)],
        vec![c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0)],
    ])
    .unwrap();
    let cases: [(&str, EMatrix, [[f64; 2]; 3]); 2] = [
        ("E4", e4(), [[0.1667, 0.5], [1.2440, 1.0], [0.0893, 1.0]]),
        ("E3", e3, [[0.0, 0.3333], [0.5, 1.4107], [0.5, 0.2560]]),
    ];
    let mut worst: f64 = 0.0;
    for (name, e, reference) in cases {
        let r = realize_ematrix(&e, 1e-10).map_err(|err| format!("{name}: {err}"))?;
        for (k, [d, o]) in reference.iter().enumerate() {
            ensure(close_to(r.l_family.get(k), &[&[*d, *o], &[*o, *d]], 1e-3), format!("{name}: L_{k} differs"))?;
        }
        let spec = spectrum(&r.matrix).map_err(|err| err.to_string())?;
        let err = match_multisets(spec.entries(), e.entries()).unwrap();
        ensure(err <= 1e-7, format!("{name}: spectrum mismatch {err:e}"))?;
        ensure(r.matrix.is_nonnegative(1e-10), format!("{name}: realization not nonnegative"))?;
        worst = worst.max(err);
    }
    Ok(format!("reference L_k reproduced to 1e-3; spectrum match {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let r = min_perron(&e4(), DEFAULT_BUDGET, 1e-10).map_err(|e| e.to_string())?;
    ensure((r.minimal_perron - 3.0).abs() <= 1e-9, format!("minimal Perron entry {}", r.minimal_perron))?;
    ensure(r.certified, "not certified by the trace floor")?;
    ensure((r.min_phi - r.trace_floor).abs() <= 1e-9, "trace floor not attained by Φ")?;
    ensure(r.witness.is_nonnegative(1e-10), "witness not nonnegative")?;
    let mut want = e4().entries().to_vec();
    want[0] = c(3.0, 0.0);
    let spec = spectrum(&r.witness).map_err(|e| e.to_string())?;
    ensure(match_multisets(spec.entries(), &want).unwrap() <= 1e-7, "witness spectrum differs")?;
    Ok(format!(
        "minimal Perron entry {} (Φ = {}, trace floor = {}, {} layouts)",
        r.minimal_perron, r.min_phi, r.trace_floor, r.candidates
    ))
}

fn bisect(mut lo: f64, mut hi: f64, ok: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-13 * hi.abs().max(1.0) {
            break;
        }
    }
    hi
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let n = *[3usize, 5, 7, 9].choose(&mut r).unwrap();
        let a = r.gen_range(1e-3..=3.0);
        let b = r.gen_range(1e-3..=3.0);
        let nf = n as f64;
        let bound = conjugate_pair_guo_bound(n, a, b).unwrap();
        let expect = (nf - 1.0) * a + nf * (b / nf.sqrt() - a).max(0.0);
        let threshold = bisect(0.0, 10.0 * nf * (a + b), |l| {
            conjugate_pair_circulant(n, l, a, b).unwrap().min_entry() >= 0.0
        });
        let shift = (b / nf.sqrt() - a).max(0.0);
        let flip = if companion_oracle(n, a, b, 0.0).unwrap().nonnegative {
            0.0
        } else {
            bisect(0.0, 2.0 * (a + b) + 1.0, |s| companion_oracle(n, a, b, s).unwrap().nonnegative)
        };
        let e1 = (threshold - expect).abs();
        let e2 = (flip - shift).abs();
        ensure(
            e1 <= 1e-7 && e2 <= 1e-7 && (bound - expect).abs() <= 1e-12,
            format!("trial {trial}: n={n} a={a} b={b}: threshold err {e1:e}, flip err {e2:e}"),
        )?;
        worst = worst.max(e1).max(e2);
    }
    Ok(format!("50 samples, worst deviation {worst:.1e}"))
}

fn random_symmetric_tail(r: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    let mut tail = vec![c(0.0, 0.0); n - 1];
    for k in 1..=(n - 1) / 2 {
        let z = rand_c(r, 2.0);
        tail[k - 1] = z;
        tail[n - k - 1] = z.conj();
    }
    if n.is_multiple_of(2) {
        tail[n / 2 - 1] = c(r.gen_range(-2.0..=2.0), 0.0);
    }
    tail
}

fn circulant_with(lambda0: f64, mu: &[Scalar]) -> Circulant {
    let mut spec = vec![c(lambda0, 0.0)];
    spec.extend_from_slice(mu);
    Circulant::from_spectrum(&SpectrumList::new(spec).unwrap()).unwrap()
}

fn bisection_guo(tail: &[Scalar]) -> f64 {
    let n = tail.len() + 1;
    let hi = 2.0 * n as f64 * tail.iter().map(|z| z.norm()).fold(0.0, f64::max) + 1.0;
    enumerate_assignments(n)
        .unwrap()
        .iter()
        .map(|alpha: &GuoAssignment| {
            let mu = alpha.permute_tail(tail);
            bisect(0.0, hi, |l| circulant_with(l, &mu).min_entry() >= 0.0)
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let n = r.gen_range(3..=9);
        let tail = random_symmetric_tail(&mut r, n);
        let res = guo_index(&tail, 1e-10).map_err(|e| format!("trial {trial}: {e}"))?;
        let oracle = bisection_guo(&tail);
        let err = (res.lambda0 - oracle).abs();
        let min = res.witness.min_entry();
        ensure(err <= 1e-7, format!("trial {trial}: n={n} index {} vs bisection {oracle}", res.lambda0))?;
        ensure((-1e-9..=1e-6).contains(&min), format!("trial {trial}: witness min entry {min:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("100 tails, worst deviation {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let (mut pos, mut neg) = (0, 0);
    for trial in 0..200 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=4);
        let s = match trial % 4 {
            // nonnegative L_k, some entries exactly zero
            0 | 1 => {
                let ls = (0..m)
                    .map(|_| {
                        CMatrix::from_fn(n, n, |_, _| {
                            if r.gen_bool(0.3) { c(0.0, 0.0) } else { c(r.gen_range(0.0..2.0), 0.0) }
                        })
                    })
                    .collect();
                s_from_l(&LFamily::new(ls).unwrap())
            }
            // one slightly negative entry
            2 => {
                let mut ls: Vec<CMatrix> =
                    (0..m).map(|_| CMatrix::from_fn(n, n, |_, _| c(r.gen_range(0.0..2.0), 0.0))).collect();
                let k = r.gen_range(0..m);
                let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
                ls[k][(i, j)] = c(-r.gen_range(1e-6..1e-3), 0.0);
                s_from_l(&LFamily::new(ls).unwrap())
            }
            _ => SFamily::new((0..m).map(|_| random_matrix(&mut r, n, 5.0)).collect()).unwrap(),
        };
        let fam = is_nonnegative_family(&s, 1e-10);
        let dense = assemble(&s).to_dense().is_nonnegative(1e-10);
        ensure(fam == dense, format!("trial {trial}: family {fam}, matrix {dense}"))?;
        if fam { pos += 1 } else { neg += 1 }
    }
    ensure(pos > 0 && neg > 0, "sample did not exercise both outcomes")?;
    Ok(format!("200 families ({pos} nonnegative, {neg} not), 0 disagreements"))
}

fn random_circulant(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let row: Vec<Scalar> = (0..n).map(|_| rand_c(r, 3.0)).collect();
    Circulant::from_row(row).unwrap().to_dense()
}

fn random_hermitian(r: &mut ChaCha8Rng, n: usize, real: bool) -> CMatrix {
    let mut h = CMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = c(r.gen_range(-3.0..3.0), 0.0);
        for j in i + 1..n {
            let z = if real { c(r.gen_range(-3.0..3.0), 0.0) } else { rand_c(r, 3.0) };
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

fn random_tuple(r: &mut ChaCha8Rng, n: usize) -> PermutationTuple {
    let mut perms = vec![(0..n).collect::<Vec<_>>()];
    for _ in 1..n {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(r);
        perms.push(p);
    }
    PermutationTuple::new(perms).unwrap()
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let tol = 1e-9;
    for trial in 0..100 {
        let n = r.gen_range(2..=4);
        let m = r.gen_range(1..=4);

        // circulant
        let mats: Vec<CMatrix> = (0..m).map(|_| random_circulant(&mut r, n)).collect();
        let fam = SFamily::new(mats.clone()).unwrap();
        let rep = detect_block_structure(&assemble(&fam), tol);
        ensure(rep.circulant && rep.permutatively_equivalent.is_some(), format!("circulant trial {trial}: not detected"))?;
        ensure(classify_family(&fam, tol).circulant, format!("circulant trial {trial}: family flag"))?;
        let mut broken = mats;
        let k = r.gen_range(0..m);
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        broken[k][(i, j)] += c(0.5, 0.0);
        let fam = SFamily::new(broken).unwrap();
        ensure(!detect_block_structure(&assemble(&fam), tol).circulant, format!("circulant trial {trial}: survives perturbation"))?;
        ensure(!classify_family(&fam, tol).circulant, format!("circulant trial {trial}: family flag survives"))?;

        // real symmetric: S_k Hermitian, S_{m-k} = conj(S_k)
        let mut mats = vec![CMatrix::zeros(n, n); m];
        for k in 0..m {
            let pair = (m - k) % m;
            if pair < k {
                continue;
            }
            let h = random_hermitian(&mut r, n, pair == k);
            mats[pair] = h.conj();
            mats[k] = h;
        }
        let fam = SFamily::new(mats.clone()).unwrap();
        let a = assemble(&fam);
        ensure(detect_block_structure(&a, tol).symmetric_real, format!("symmetric trial {trial}: not detected"))?;
        ensure(classify_family(&fam, tol).symmetric_real, format!("symmetric trial {trial}: family flag"))?;
        let d = a.to_dense();
        ensure(d.max_abs_im() <= tol && d.max_abs_diff(&d.transpose()).unwrap() <= tol, format!("symmetric trial {trial}: dense check"))?;
        let mut broken = mats;
        let k = r.gen_range(0..m);
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        broken[k][(i, j)] += c(0.5, 0.0);
        let fam = SFamily::new(broken).unwrap();
        ensure(!detect_block_structure(&assemble(&fam), tol).symmetric_real, format!("symmetric trial {trial}: survives perturbation"))?;
        ensure(!classify_family(&fam, tol).symmetric_real, format!("symmetric trial {trial}: family flag survives"))?;

        // permutatively equivalent with a common tuple
        let nu = random_tuple(&mut r, n);
        let mats: Vec<CMatrix> = (0..m)
            .map(|_| {
                let row: Vec<Scalar> = (0..n).map(|_| rand_c(&mut r, 3.0)).collect();
                nu.apply(&row).unwrap()
            })
            .collect();
        let fam = SFamily::new(mats.clone()).unwrap();
        let rep = detect_block_structure(&assemble(&fam), tol);
        ensure(rep.permutatively_equivalent.as_ref() == Some(&nu), format!("permutative trial {trial}: tuple {:?}", rep.permutatively_equivalent))?;
        ensure(classify_family(&fam, tol).permutatively_equivalent == Some(nu), format!("permutative trial {trial}: family tuple"))?;
        let mut broken = mats;
        let k = r.gen_range(0..m);
        let (i, j) = (r.gen_range(1..n), r.gen_range(0..n));
        broken[k][(i, j)] += c(0.5, 0.25);
        let fam = SFamily::new(broken).unwrap();
        ensure(detect_block_structure(&assemble(&fam), tol).permutatively_equivalent.is_none(), format!("permutative trial {trial}: survives perturbation"))?;
        ensure(classify_family(&fam, tol).permutatively_equivalent.is_none(), format!("permutative trial {trial}: family tuple survives"))?;
    }
    Ok("100 trials × 3 properties, 0 failures".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut worst = [0f64; 6];
    for m in 1..=12 {
        let row: Vec<Scalar> = (0..m).map(|_| rand_c(&mut r, 10.0)).collect();
        let back = idft_coefficients(&dft_eigenvalues(&row).unwrap()).unwrap();
        worst[0] = worst[0].max(row.iter().zip(&back).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max));
        let f = fourier_matrix(m).unwrap().into_inner();
        worst[1] = worst[1].max(f.mul(&f.conj_transpose()).unwrap().max_abs_diff(&CMatrix::identity(m)).unwrap());
        for j in 0..m {
            let ej = harmonic_vector(j, m).unwrap();
            for k in 0..m {
                let ek = harmonic_vector(k, m).unwrap();
                let dot: Scalar = ej.iter().zip(&ek).map(|(x, y)| x.conj() * y).sum();
                let want = if j == k { m as f64 } else { 0.0 };
                worst[2] = worst[2].max((dot - c(want, 0.0)).norm());
            }
        }
    }
    for n in 1..=12 {
        for m in 1..=12 {
            let s = SFamily::new((0..m).map(|_| random_matrix(&mut r, n, 5.0)).collect()).unwrap();
            let a = assemble(&s);
            let back = s_matrices(&a);
            for k in 0..m {
                worst[3] = worst[3].max(back.get(k).max_abs_diff(s.get(k)).unwrap());
            }
            let again = assemble(&back);
            worst[4] = worst[4].max(again.max_abs_diff(&a).unwrap());
            let l = l_matrices(&s);
            let sum = l.matrices().iter().fold(CMatrix::zeros(n, n), |acc, x| acc.add(x).unwrap());
            worst[5] = worst[5].max(sum.max_abs_diff(s.get(0)).unwrap());
        }
    }
    let limits = [1e-12, 1e-12, 1e-10, 1e-9, 1e-9, 1e-9];
    let names = ["dft roundtrip", "unitarity", "orthogonality", "S roundtrip", "A roundtrip", "ΣL_k = S_0"];
    for ((w, lim), name) in worst.iter().zip(limits).zip(names) {
        ensure(*w <= lim, format!("{name}: {w:e} > {lim:e}"))?;
    }
    // spectrum union against the dense matrix, mn ≤ 12
    let mut spec_worst: f64 = 0.0;
    for _ in 0..40 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=12 / n);
        let s = SFamily::new((0..m).map(|_| random_matrix(&mut r, n, 5.0)).collect()).unwrap();
        let a = assemble(&s);
        let dense = eigenvalues(&a.to_dense()).map_err(|e| e.to_string())?;
        let union = spectrum(&a).map_err(|e| e.to_string())?;
        spec_worst = spec_worst.max(match_multisets(&dense, union.entries()).unwrap());
    }
    ensure(spec_worst <= 1e-6, format!("spectrum union: {spec_worst:e}"))?;
    Ok(format!(
        "m,n ≤ 12: roundtrip {:.0e}, unitarity {:.0e}, S roundtrip {:.0e}, union {:.0e}",
        worst[0], worst[1], worst[3], spec_worst
    ))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("block assembly example, exact", criterion_1, Duration::from_secs(1)),
        ("second partition rejected", criterion_2, Duration::from_secs(1)),
        ("E4 / E3 realizations", criterion_3, Duration::from_secs(1)),
        ("E4 minimal Perron entry", criterion_4, Duration::from_secs(10)),
        ("conjugate-pair threshold", criterion_5, Duration::from_secs(5)),
        ("Guo index vs bisection", criterion_6, Duration::from_secs(30)),
        ("nonnegativity iff", criterion_7, Duration::from_secs(10)),
        ("structure iff", criterion_8, Duration::from_secs(10)),
        ("roundtrip and unitarity", criterion_9, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (idx, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}  [{elapsed:.2?}]  {detail}", idx + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  [{elapsed:.2?}]  {reason}", idx + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
