use operand_fold::costmodel::{expected_total, f_avg, f_wst, memory_bits, optimal_k, to_f64};
use operand_fold::trials::bench_folded;
use operand_fold::{multiply, BitNum};

#[test]
fn measured_mean_tracks_f_avg_on_a_grid() {
    // Multiples of every k in 1..=6, so no part carries padding.
    for m in [60u64, 240, 1020] {
        for k in 1..=6 {
            let row = bench_folded(m, k, 1000, 0xC0FFEE).unwrap();
            let expected = to_f64(&f_avg(m, k).unwrap());
            // Accumulate additions are a sum of n Bernoulli(p) columns with
            // p = (2^k - 1)/2^k; the fixed part has no variance.
            let n = m.div_ceil(u64::from(k)) as f64;
            let p = 1.0 - 1.0 / f64::from(1u32 << k);
            let sigma_mean = (n * p * (1.0 - p) / 1000.0).sqrt();
            let mean = row.measured.mean();
            assert!(
                (mean - expected).abs() <= 3.0 * sigma_mean,
                "m={m} k={k}: mean {mean} expected {expected} sigma {sigma_mean}"
            );
        }
    }
}

#[test]
fn padded_widths_track_exact_expectation() {
    for (m, k) in [(64u64, 3u32), (200, 3), (1024, 5), (1000, 7), (100, 6)] {
        let row = bench_folded(m, k, 2000, 0xFEED).unwrap();
        let expected = to_f64(&expected_total(m, k).unwrap());
        assert!(
            row.measured.within(expected, 3.0),
            "m={m} k={k}: {} vs {expected}",
            row.measured.mean()
        );
        assert!(expected <= to_f64(&f_avg(m, k).unwrap()));
    }
}

#[test]
fn worst_case_is_reached_by_all_ones() {
    for m in [12u64, 60, 100, 1024] {
        for k in 1..=6 {
            let ones = BitNum::ones(m as usize);
            let (_, l) = multiply(&BitNum::one(), &ones, m as usize, k).unwrap();
            assert_eq!(u128::from(l.total()), f_wst(m, k).unwrap());
        }
    }
}

#[test]
fn optimal_k_is_monotone_over_the_tabulated_range() {
    let ks: Vec<u32> = (24..=2122).map(|m| optimal_k(m, 8)).collect();
    assert!(ks.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(ks.first(), Some(&2));
    assert_eq!(ks.last(), Some(&5));
}

#[test]
fn bank_width_stays_within_memory_estimate() {
    for (m, k) in [(1024usize, 5u32), (256, 8), (100, 3), (7, 4)] {
        let a = BitNum::ones(m);
        let (_, l) = multiply(&a, &a, m, k).unwrap();
        assert!(l.peak_bank_bits as u128 <= memory_bits(m as u64, k).unwrap());
        assert!(l.peak_cell_bits <= m + m.div_ceil(k as usize));
    }
}
