mod common;

use common::to_big;
use operand_fold::baselines::{classical_multiply, csd_multiply, csd_recode};
use operand_fold::trials::{bench_classical, bench_csd_weight};
use operand_fold::{multiply, random_bitnum, BitNum};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn naf_invariants(bits in 0usize..600, seed in any::<u64>()) {
        let b = random_bitnum(bits, seed);
        let naf = csd_recode(&b);
        prop_assert!(naf.is_non_adjacent());
        prop_assert_eq!(naf.value().unwrap(), b.clone());
        prop_assert!(naf.nonzero_count() <= b.weight());
    }

    #[test]
    fn all_multipliers_agree(m in 1usize..160, sa in any::<u64>(), sb in any::<u64>()) {
        let a = random_bitnum(m, sa);
        let b = random_bitnum(m, sb);
        let expected = to_big(&a) * to_big(&b);
        let (p, count) = classical_multiply(&a, &b);
        prop_assert_eq!(to_big(&p), expected.clone());
        prop_assert_eq!(count, b.weight());
        let (p, count) = csd_multiply(&a, &b);
        prop_assert_eq!(to_big(&p), expected.clone());
        prop_assert_eq!(count, csd_recode(&b).nonzero_count());
        for k in 1..=8 {
            prop_assert_eq!(to_big(&multiply(&a, &b, m, k).unwrap().0), expected.clone());
        }
    }
}

#[test]
fn classical_mean_is_half_the_width() {
    let s = bench_classical(1024, 1000, 31);
    // σ = 16 per operand, 3σ of the mean of 1000 is about 1.52.
    assert!((s.mean() - 512.0).abs() <= 1.6, "mean {}", s.mean());
    assert!(s.within(512.0, 3.0));
}

#[test]
fn naf_mean_weight_is_a_third_of_the_width() {
    let s = bench_csd_weight(1024, 1000, 32);
    assert!(s.within(1024.0 / 3.0, 3.0), "mean {} stderr {}", s.mean(), s.stderr());
}

#[test]
fn csd_small_product() {
    assert_eq!(
        csd_multiply(&BitNum::from(3u64), &BitNum::from(7u64)),
        (BitNum::from(21u64), 2)
    );
}
