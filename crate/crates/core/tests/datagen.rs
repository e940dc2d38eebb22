use std::collections::HashSet;

use dfaid::datagen::{flip_count, generate, GenConfig};
use dfaid::search::{find_min_dfa, min_dfa_size_oracle, SearchConfig};
use dfaid::{Apta, Exec};

fn config(states: usize, seed: u64, noise: f64) -> GenConfig {
    GenConfig {
        states,
        symbols: 2,
        count: 50 * states,
        noise_percent: noise,
        seed,
    }
}

#[test]
fn generation_is_deterministic_per_seed() {
    let a = generate(&config(6, 42, 2.0)).unwrap();
    let b = generate(&config(6, 42, 2.0)).unwrap();
    assert_eq!(a.target, b.target);
    assert_eq!(a.sample, b.sample);
    assert_eq!(a.flipped, b.flipped);
    let c = generate(&config(6, 43, 2.0)).unwrap();
    assert_ne!(a.sample, c.sample);
}

#[test]
fn instances_have_the_requested_shape() {
    for seed in 0..10 {
        let cfg = config(5, seed, 2.0);
        let inst = generate(&cfg).unwrap();
        assert_eq!(inst.target.size(), 5);
        assert_eq!(inst.target.minimized_size(), 5);
        assert_eq!(inst.sample.len(), cfg.count);
        let words: HashSet<_> = inst.sample.entries().iter().map(|(w, _)| w.clone()).collect();
        assert_eq!(words.len(), cfg.count);
        assert!(words.iter().all(|w| w.len() <= cfg.max_length()));
        assert_eq!(inst.flipped.len(), flip_count(2.0, cfg.count));
        assert_eq!(inst.target_errors(), inst.flipped.len());
        for (w, l) in inst.clean.entries() {
            assert_eq!(inst.target.label_of(w), *l);
        }
    }
}

#[test]
fn flip_count_rounds_half_up() {
    assert_eq!(flip_count(1.0, 150), 2);
    assert_eq!(flip_count(1.0, 149), 1);
    assert_eq!(flip_count(0.0, 1000), 0);
    assert_eq!(flip_count(100.0, 7), 7);
}

#[test]
fn noiseless_samples_are_explained_by_at_most_the_target_size() {
    for states in 2..=5 {
        for seed in 0..3 {
            let inst = generate(&config(states, seed, 0.0)).unwrap();
            let apta = Apta::build(&inst.sample);
            let truth = min_dfa_size_oracle(&apta, 0, Exec::default()).unwrap();
            assert!(truth <= states);
            let cfg = SearchConfig {
                time_limit: None,
                ..SearchConfig::default()
            };
            let found = find_min_dfa(&inst.sample, &cfg).unwrap();
            assert_eq!(found.dfa().unwrap().size(), truth, "N={states} seed={seed}");
        }
    }
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(generate(&config(0, 1, 0.0)).is_err());
    assert!(generate(&config(3, 1, 101.0)).is_err());
}
