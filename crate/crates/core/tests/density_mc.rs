use operand_fold::density::{
    density_series, expected_full_residual, logistic_orbit, random_block, simulate_split, simulate_tree, split_gain,
    telescoping_sum, tree_gain, Sampling, SeriesKind, SeriesParams, TreeMode,
};
use operand_fold::random_bitnum;
use operand_fold::trials::{trial_rng, Summary};
use proptest::prelude::*;

proptest! {
    #[test]
    fn split_conserves_weight(half in 1usize..300, seed in any::<u64>()) {
        let b = 2 * half;
        let parent = random_bitnum(b, seed);
        let s = simulate_split(&parent, b).unwrap();
        prop_assert_eq!(parent.weight(), s.b10.weight() + s.b01.weight() + 2 * s.b11.weight());
    }
}

#[test]
fn telescoping_identity_holds() {
    for d0 in [0.1, 0.25, 0.5] {
        for n in [1usize, 10, 100, 1000, 10_000] {
            let direct = telescoping_sum(d0, n).unwrap();
            let closed = d0 - logistic_orbit(d0, n).unwrap()[n];
            assert!((direct - closed).abs() <= 1e-12, "δ0={d0} n={n}");
        }
    }
}

#[test]
fn split_densities_match_model_on_a_grid() {
    for delta in [0.1, 0.3, 0.5] {
        for b in [16usize, 64, 256] {
            let (mut s10, mut s01, mut s11) = (Summary::default(), Summary::default(), Summary::default());
            let mut rng = trial_rng(17, (b as u64) << 8 | (delta * 10.0) as u64);
            for _ in 0..10_000 {
                let parent = random_block(b, delta, Sampling::Bernoulli, &mut rng);
                let s = simulate_split(&parent, b).unwrap();
                s10.push(s.b10.weight());
                s01.push(s.b01.weight());
                s11.push(s.b11.weight());
            }
            let half = (b / 2) as f64;
            let node = delta * (1.0 - delta) * half;
            assert!(s10.within(node, 3.0), "b10 δ={delta} b={b}: {} vs {node}", s10.mean());
            assert!(s01.within(node, 3.0), "b01 δ={delta} b={b}: {} vs {node}", s01.mean());
            let leaf = split_gain(delta, b);
            assert!(s11.within(leaf, 3.0), "b11 δ={delta} b={b}: {} vs {leaf}", s11.mean());
        }
    }
}

#[test]
fn density_point_three_children() {
    let mut rng = trial_rng(3, 0);
    let (mut s10, mut s11) = (Summary::default(), Summary::default());
    for _ in 0..10_000 {
        let parent = random_block(64, 0.3, Sampling::Bernoulli, &mut rng);
        let s = simulate_split(&parent, 64).unwrap();
        s10.push(s.b10.weight());
        s11.push(s.b11.weight());
    }
    assert!(s10.within(0.21 * 32.0, 3.0));
    assert!(s11.within(0.09 * 32.0, 3.0));
}

#[test]
fn node_only_gain_follows_closed_form() {
    let params = SeriesParams {
        kind: SeriesKind::NodesGain,
        delta0: 0.5,
        b: 1024,
        depth: 10,
        trials: 400,
        seed: 8,
        sampling: Sampling::Bernoulli,
    };
    let series = density_series(&params).unwrap();
    for p in &series {
        assert!((p.measured - p.predicted).abs() <= 3.0 * p.stderr.max(1e-9), "{p:?}");
        assert_eq!(p.predicted, tree_gain(0.5, 1024, p.depth_or_iter as usize).unwrap());
    }
    // Gains rise toward b·δ0/2 = 256.
    assert!(series.windows(2).all(|w| w[1].measured > w[0].measured));
    assert!(series.last().unwrap().measured > 0.8 * 256.0);
}

#[test]
fn node_density_follows_logistic_orbit() {
    let params = SeriesParams {
        kind: SeriesKind::Iteration,
        delta0: 0.4,
        b: 2048,
        depth: 8,
        trials: 200,
        seed: 12,
        sampling: Sampling::Bernoulli,
    };
    for p in density_series(&params).unwrap() {
        assert!((p.measured - p.predicted).abs() <= 3.0 * p.stderr.max(1e-12), "{p:?}");
    }
}

#[test]
fn full_tree_residual_matches_recursion_and_decays() {
    let params = SeriesParams {
        kind: SeriesKind::FullResidual,
        delta0: 0.5,
        b: 4096,
        depth: 8,
        trials: 100,
        seed: 21,
        sampling: Sampling::Bernoulli,
    };
    let series = density_series(&params).unwrap();
    for p in &series {
        assert!((p.measured - p.predicted).abs() <= 3.0 * p.stderr.max(1e-9), "{p:?}");
    }
    assert!(series.windows(2).all(|w| w[1].measured < w[0].measured));
}

#[test]
fn full_tree_covers_more_than_node_tree() {
    let block = random_bitnum(1 << 14, 99);
    let nodes = simulate_tree(&block, 1 << 14, 10, TreeMode::NodesOnly).unwrap();
    let full = simulate_tree(&block, 1 << 14, 10, TreeMode::FullRecursive).unwrap();
    assert!(full.gain() > nodes.gain());
    assert_eq!(full.initial_weight, block.weight());
    for l in &full.levels {
        assert_eq!(l.gain + l.residual, full.initial_weight);
    }
    let ratio = full.residual() as f64 / full.initial_weight as f64;
    let expected = expected_full_residual(0.5, 1 << 14, 10) / (0.5 * f64::from(1 << 14));
    assert!((ratio - expected).abs() < 0.02, "{ratio} vs {expected}");
}

#[test]
fn exact_weight_sampling_runs() {
    let params = SeriesParams {
        kind: SeriesKind::NodesGain,
        delta0: 0.25,
        b: 256,
        depth: 4,
        trials: 50,
        seed: 1,
        sampling: Sampling::ExactWeight,
    };
    let s = density_series(&params).unwrap();
    assert_eq!(s.len(), 5);
    assert_eq!(s[0].measured, 0.0);
}
