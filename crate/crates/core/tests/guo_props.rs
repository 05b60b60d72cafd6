use circblock_core::circulant::Circulant;
use circblock_core::guo::{enumerate_assignments, guo_index, lambda0_for_assignment, lambda0_trigonometric};
use circblock_core::spectra::SpectrumList;
use circblock_core::Scalar;
use proptest::prelude::*;

fn symmetric_tail() -> impl Strategy<Value = Vec<Scalar>> {
    (3..=9usize).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n).prop_map(move |v| {
            let mut tail = vec![Scalar::new(0.0, 0.0); n - 1];
            for k in 1..=(n - 1) / 2 {
                let z = Scalar::new(v[k].0, v[k].1);
                tail[k - 1] = z;
                tail[n - k - 1] = z.conj();
            }
            if n % 2 == 0 {
                tail[n / 2 - 1] = Scalar::new(v[0].0, 0.0);
            }
            tail
        })
    })
}

fn witness_at(lambda0: f64, mu: &[Scalar]) -> Circulant {
    let mut spec = vec![Scalar::new(lambda0, 0.0)];
    spec.extend_from_slice(mu);
    Circulant::from_spectrum(&SpectrumList::new(spec).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_is_tight(tail in symmetric_tail()) {
        let r = guo_index(&tail, 1e-10).unwrap();
        prop_assume!(r.lambda0 > 0.0);
        let mu = r.assignment.permute_tail(&r.tail);
        let min = r.witness.min_entry();
        prop_assert!((-1e-9..=1e-6).contains(&min));
        prop_assert!(witness_at(r.lambda0 + 0.01, &mu).min_entry() > 0.0);
        prop_assert!(witness_at(r.lambda0 - 0.01, &mu).min_entry() < 0.0);
    }

    #[test]
    fn index_is_homogeneous(tail in symmetric_tail(), c in 0.1f64..10.0) {
        let scaled: Vec<Scalar> = tail.iter().map(|z| z * c).collect();
        let a = guo_index(&tail, 1e-10).unwrap().lambda0;
        let b = guo_index(&scaled, 1e-10).unwrap().lambda0;
        prop_assert!((b - c * a).abs() <= 1e-9 * (c * a).max(1.0));
    }

    #[test]
    fn index_respects_upper_bound(tail in symmetric_tail()) {
        let r = guo_index(&tail, 1e-10).unwrap();
        let n = tail.len() + 1;
        prop_assert!(r.lambda0 <= 2.0 * n as f64 * r.max_modulus + 1e-9);
    }

    #[test]
    fn trigonometric_form_agrees(tail in symmetric_tail()) {
        for alpha in enumerate_assignments(tail.len() + 1).unwrap() {
            let a = lambda0_for_assignment(&tail, &alpha).unwrap();
            let b = lambda0_trigonometric(&tail, &alpha).unwrap();
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }
}
