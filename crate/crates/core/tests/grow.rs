use std::path::PathBuf;

use smallspan::grow::{compute_maximal, grow_all, GrowConfig};
use smallspan::report::load_lists;
use smallspan::ring::Ring;
use smallspan::EmbeddingCheck;

fn stored() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/table1")
}

/// The stored run is what the current code produces.
#[test]
fn stored_run_regrows_identically() {
    for d in [-11, 3] {
        let cfg = GrowConfig::new(Ring::new(d).unwrap(), 9);
        let fresh = grow_all(&cfg).unwrap();
        let old = load_lists(&stored(), d, EmbeddingCheck::Both).unwrap().unwrap();
        assert_eq!(fresh.levels.len(), old.levels.len());
        for (a, b) in fresh.levels.iter().zip(&old.levels) {
            let ja: Vec<String> = a.classes.iter().map(|g| g.to_json()).collect();
            let jb: Vec<String> = b.classes.iter().map(|g| g.to_json()).collect();
            assert_eq!(ja, jb, "d={d} n={}", a.n);
        }
    }
}

/// Growing without the row-support and seven-vertex pruning finds the same
/// classes, so the pruning loses nothing on this ring.
#[test]
fn structural_pruning_loses_nothing() {
    let ring = Ring::new(-11).unwrap();
    let mut cfg = GrowConfig::new(ring, 8);
    let pruned = grow_all(&cfg).unwrap();
    cfg.structural_filters = false;
    let full = grow_all(&cfg).unwrap();
    for (a, b) in pruned.levels.iter().zip(&full.levels) {
        assert_eq!(a.classes.len(), b.classes.len(), "n={}", a.n);
    }
}

#[test]
fn maximality_needs_the_next_level() {
    let cfg = GrowConfig::new(Ring::new(-7).unwrap(), 3);
    let mut lists = grow_all(&cfg).unwrap();
    compute_maximal(&mut lists, 1).unwrap();
    assert!(lists.level(2).unwrap().maximal.is_some());
    assert!(lists.level(3).unwrap().maximal.is_none());
    // the single edge of weight w extends to a path with small span
    let two = lists.level(2).unwrap();
    assert!(two.nonrational_count() > 0);
}
