use proptest::prelude::*;
use rrgbench::metrics::{bleu, cider_d, lcs_length, rouge_l, CiderParams, DEFAULT_BETA};

const VOCAB: &[&str] = &[
    "the", "lungs", "are", "clear", "no", "effusion", "heart", "size", "is", "normal",
];

fn sentence(max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::sample::select(VOCAB), 1..=max)
        .prop_map(|v| v.into_iter().map(str::to_string).collect())
}

fn corpus() -> impl Strategy<Value = (Vec<Vec<String>>, Vec<Vec<String>>)> {
    (1usize..8).prop_flat_map(|n| {
        (
            prop::collection::vec(sentence(10), n),
            prop::collection::vec(sentence(10), n),
        )
    })
}

proptest! {
    #[test]
    fn scores_stay_in_range((c, r) in corpus()) {
        let b = bleu(&c, &r, 4).unwrap();
        for v in b.per_n.iter().chain([&b.mean_b]) {
            prop_assert!((0.0..=1.0).contains(v));
        }
        let rl = rouge_l(&c, &r, DEFAULT_BETA).unwrap();
        prop_assert!((0.0..=1.0).contains(&rl.f));
        let cd = cider_d(&c, &r, &CiderParams::default()).unwrap();
        prop_assert!(cd.value >= 0.0 && cd.value <= 10.0 + 1e-9);
    }

    #[test]
    fn identity_maximizes((_, r) in corpus()) {
        let b = bleu(&r, &r, 4).unwrap();
        prop_assert!((b.per_n[0] - 1.0).abs() < 1e-12);
        prop_assert!((rouge_l(&r, &r, DEFAULT_BETA).unwrap().f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pair_order_does_not_matter((c, r) in corpus(), rot in 0usize..8) {
        let k = rot % c.len();
        let mut c2 = c.clone();
        let mut r2 = r.clone();
        c2.rotate_left(k);
        r2.rotate_left(k);
        let (b1, b2) = (bleu(&c, &r, 4).unwrap(), bleu(&c2, &r2, 4).unwrap());
        for n in 0..4 {
            prop_assert!((b1.per_n[n] - b2.per_n[n]).abs() < 1e-12);
        }
        let (r1, rr2) = (rouge_l(&c, &r, 1.2).unwrap(), rouge_l(&c2, &r2, 1.2).unwrap());
        prop_assert!((r1.f - rr2.f).abs() < 1e-12);
        let p = CiderParams::default();
        prop_assert!((cider_d(&c, &r, &p).unwrap().value - cider_d(&c2, &r2, &p).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn lcs_is_symmetric_and_bounded(a in sentence(12), b in sentence(12)) {
        let l = lcs_length(&a, &b);
        prop_assert_eq!(l, lcs_length(&b, &a));
        prop_assert!(l <= a.len().min(b.len()));
        prop_assert_eq!(lcs_length(&a, &a), a.len());
    }
}
