use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumfree_core::canon::canonicalize;
use sumfree_core::search::{enumerate_maximal_sumfree, for_each_sum_free, EnumerationConfig};
use sumfree_core::sumfree::{in_nonzero_coset, is_maximal_sum_free, is_sum_free, is_two_coset};
use sumfree_core::theorems::{
    check_theorem, classify_aperiodic_maximal, replay_counterexample, verify_theorem_main, DriverOptions, Statement,
    Verdict,
};
use sumfree_core::{DenseSet, GroupSpec};

fn z(p: u32, n: u32) -> GroupSpec {
    GroupSpec::new(p, n).unwrap()
}

fn cfg(symmetry: bool) -> EnumerationConfig {
    EnumerationConfig { symmetry, threads: 1, ..Default::default() }
}

fn opts(min_size: Option<usize>) -> DriverOptions {
    DriverOptions { threads: 1, min_size, ..Default::default() }
}

// Counts from an independent subset-enumeration oracle.
const MAXIMAL: [(u32, u32, u64, &[(usize, u64)]); 5] = [
    (5, 1, 2, &[(2, 2)]),
    (3, 2, 8, &[(3, 8)]),
    (2, 4, 183, &[(5, 168), (8, 15)]),
    (5, 2, 372, &[(5, 360), (10, 12)]),
    (3, 3, 2366, &[(4, 468), (5, 1872), (9, 26)]),
];
const SUM_FREE: [(u32, u32, u64); 4] = [(5, 1, 7), (3, 2, 41), (2, 4, 3049), (5, 2, 12513)];

#[test]
fn maximal_counts_match_oracle() {
    for (p, n, total, hist) in MAXIMAL {
        let g = z(p, n);
        for symmetry in [true, false] {
            let run = enumerate_maximal_sumfree(g, &cfg(symmetry));
            assert!(run.exhaustive);
            assert_eq!(run.total_count(), total, "{g} symmetry {symmetry}");
            assert_eq!(run.size_histogram().into_iter().collect::<Vec<_>>(), hist.to_vec());
        }
    }
}

#[test]
fn sum_free_counts_match_oracle() {
    for (p, n, total) in SUM_FREE {
        let mut count = 0;
        for_each_sum_free(z(p, n), |s| {
            assert!(is_sum_free(s));
            count += 1;
        });
        assert_eq!(count, total);
    }
}

#[test]
fn representatives_are_canonical_and_maximal() {
    for (p, n) in [(5, 2), (3, 3), (2, 4), (2, 5)] {
        let run = enumerate_maximal_sumfree(z(p, n), &cfg(true));
        for r in &run.reps {
            assert!(is_maximal_sum_free(&r.set).unwrap());
            assert_eq!(canonicalize(&r.set), r.set);
        }
    }
}

#[test]
fn containment_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [z(5, 1), z(5, 2)] {
        let run = enumerate_maximal_sumfree(g, &cfg(false));
        for m in run.reps.iter().map(|r| &r.set) {
            let Some(w) = is_two_coset(m) else { continue };
            for _ in 0..100 {
                let sub = DenseSet::from_indices(g, m.iter().filter(|_| rng.gen_bool(0.5))).unwrap();
                assert!(w.covers(&sub));
                assert!(is_two_coset(&sub).is_some());
            }
        }
    }
    // the same reduction for nonzero-coset containment
    let g = z(3, 3);
    for m in enumerate_maximal_sumfree(g, &cfg(false)).reps.iter().map(|r| &r.set).filter(|s| s.len() >= 6) {
        let w = in_nonzero_coset(m).unwrap();
        for _ in 0..100 {
            let sub = DenseSet::from_indices(g, m.iter().filter(|_| rng.gen_bool(0.5))).unwrap();
            assert!(w.covers(&sub));
        }
    }
}

#[test]
fn exploration_counterexamples_replay() {
    // below the proven thresholds the drivers do find counterexamples
    let cases = [
        (Statement::Main, z(5, 2), 5),
        (Statement::Dtper, z(2, 4), 5),
        (Statement::Dt2, z(2, 4), 5),
        (Statement::L3, z(3, 3), 5),
    ];
    for (s, g, min) in cases {
        let r = check_theorem(s, g, &opts(Some(min))).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample, "{}", s.id());
        assert_eq!(r.witnesses.len(), 1);
        assert!(replay_counterexample(&r).unwrap());
    }
}

#[test]
fn verified_reports_do_not_replay() {
    let r = verify_theorem_main(z(5, 2), &opts(None)).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(!replay_counterexample(&r).unwrap());
}

#[test]
fn main_at_lower_thresholds() {
    // exploration toward the 6/5 threshold: sizes 6 and 7 have no maximal sets
    for min in [6, 7] {
        let r = verify_theorem_main(z(5, 2), &opts(Some(min))).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.counts["maximal_sets"], 12);
    }
}

#[test]
fn classification_in_rank_one() {
    let r = classify_aperiodic_maximal(z(5, 1), &opts(None)).unwrap();
    let c = r.classification.unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert_eq!(c.base_size, 2);
    assert_eq!(c.orbits_at_base, 1);
    assert!(c.single_orbit_at_base);
    assert_eq!(c.orbits[0].matches, vec!["rank-one".to_string()]);
}

#[test]
fn classification_in_rank_two() {
    let r = classify_aperiodic_maximal(z(5, 2), &opts(None)).unwrap();
    let c = r.classification.unwrap();
    assert!(r.exhaustive);
    assert_eq!(c.base_size, 6);
    assert!(!c.base_size_realized);
    assert!(!c.larger_exists);
    assert!(c.orbits.is_empty());
    // neither reading of the construction is sum-free
    assert_eq!(c.families.len(), 2);
    assert!(c.families.iter().all(|f| !f.sum_free));
    // the only aperiodic maximal sets have 5 elements
    let low = classify_aperiodic_maximal(z(5, 2), &opts(Some(1))).unwrap().classification.unwrap();
    assert_eq!(low.aperiodic_size_histogram.into_iter().collect::<Vec<_>>(), vec![(5, 360)]);
}

#[test]
fn budget_makes_runs_inconclusive() {
    let o = DriverOptions { budget: 1000, ..opts(None) };
    let r = verify_theorem_main(z(5, 3), &o).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(!r.exhaustive);
    assert_eq!(r.node_count, 1000);
}

#[test]
fn reports_are_reproducible() {
    for s in [Statement::Main, Statement::GreenRuzsa, Statement::Conjecture] {
        let a = check_theorem(s, z(5, 2), &opts(None)).unwrap().payload();
        let b = check_theorem(s, z(5, 2), &DriverOptions { threads: 3, ..opts(None) }).unwrap().payload();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
