//! Engine results against the brute-force oracles, with frozen counts.

mod common;

use std::collections::BTreeSet;

use geosat::gallery::gen_random;
use geosat::logic::find_models;
use geosat::site::{covering_closure, degeneracy, NodeSet};

#[test]
fn sequent_pool_sizes() {
    // frozen from the oracle enumeration
    let sizes: Vec<usize> = (0..=3)
        .map(|n| common::all_sequents(&common::universe(n), 2).len())
        .collect();
    assert_eq!(sizes, vec![2, 6, 21, 84]);
}

#[test]
fn two_symbol_theories_match_oracle() {
    let u = common::universe(2);
    let pool = common::all_sequents(&u, 2);
    let (mut total, mut degenerate) = (0usize, 0usize);
    common::for_each_theory(&u, &pool, 3, |t| {
        let tr = degeneracy(&t).unwrap();
        let z: BTreeSet<u64> = tr.zset.iter().map(|s| s.bits()).collect();
        assert_eq!(z, common::closure(&t, &BTreeSet::new()), "{t:?}");
        let models: Vec<u64> = find_models(&t, None).iter().map(|m| m.bits()).collect();
        let mut oracle = common::models(&t);
        let mut sorted = models.clone();
        sorted.sort_unstable();
        oracle.sort_unstable();
        assert_eq!(sorted, oracle);
        total += 1;
        assert_eq!(tr.verdict.is_degenerate(), common::degenerate(&t));
        degenerate += common::models(&t).is_empty() as usize;
    });
    assert_eq!(total, 1 + 21 + 210 + 1330);
    // frozen oracle value
    assert_eq!(degenerate, FROZEN_DEGENERATE_2);
}

const FROZEN_DEGENERATE_2: usize = 350;

#[test]
fn random_closures_match_oracle() {
    for seed in 0..300u64 {
        let n = (seed % 5) as usize;
        let t = gen_random(n, (seed % 7) as usize, 3, seed).unwrap();
        let u = t.universe();
        let seeds: BTreeSet<u64> = (0..u.full_mask() + 1)
            .filter(|m| (m.wrapping_mul(0x9e37_79b9) ^ seed) % 5 == 0)
            .collect();
        let r = NodeSet::from_nodes(u, seeds.iter().map(|&m| u.set_from_mask(m).unwrap())).unwrap();
        let engine: BTreeSet<u64> = covering_closure(&t, &r).unwrap().iter().map(|s| s.bits()).collect();
        assert_eq!(engine, common::closure(&t, &seeds), "seed {seed}");
    }
}
