use franklin::search::{search_with, FillOrder, Hooks, MAX_ORDER};
use franklin::*;

#[test]
fn order_4_is_empty() {
    let base = search_natural_franklin(&SearchOptions::new(4)).unwrap();
    assert_eq!((base.count, base.exhausted, base.leaves), (0, true, 0));
    for width in [2, 4] {
        let out = search_natural_franklin(&SearchOptions::new(4).workers(width)).unwrap();
        assert_eq!(out, base, "width {width}");
    }
    let rows = search_natural_franklin(&SearchOptions::new(4).fill_order(FillOrder::RowMajor)).unwrap();
    assert_eq!((rows.count, rows.exhausted), (0, true));
}

#[test]
fn semi_magic_cross_check_at_order_4() {
    let opts = SearchOptions::new(4).pruning(Pruning::SemiMagicOnly);
    let one = search_natural_franklin(&opts).unwrap();
    assert_eq!((one.count, one.exhausted), (0, true));
    // Total number of natural 4x4 semi-magic squares.
    assert_eq!(one.leaves, 549_504);
    let four = search_natural_franklin(&opts.clone().workers(4)).unwrap();
    assert_eq!(four, one);
}

#[test]
fn sequential_runs_are_repeatable() {
    let opts = SearchOptions::new(4).pruning(Pruning::SemiMagicOnly).node_budget(Some(50_000));
    let a = search_natural_franklin(&opts).unwrap();
    let b = search_natural_franklin(&opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.nodes_visited, 50_000);
    assert!(!a.exhausted);
}

#[test]
fn order_8_first_witness_reverifies() {
    let opts = SearchOptions::new(8).mode(SearchMode::First).node_budget(Some(200_000_000));
    let out = search_natural_franklin(&opts).unwrap();
    assert_eq!(out.count, 1);
    assert!(!out.exhausted);
    let witness = &out.witnesses[0];
    let report = verify(witness, &IndexTargets::natural(8)).unwrap();
    assert!(report.flags.natural && report.flags.franklin);
}

#[test]
fn stream_delivers_verified_witnesses() {
    let mut seen = Vec::new();
    let mut sink = |sq: &Square| seen.push(sq.clone());
    let opts = SearchOptions::new(8)
        .mode(SearchMode::Stream)
        .node_budget(Some(70_000_000));
    let hooks = Hooks { progress: None, sink: Some(&mut sink) };
    let out = search_with(&opts, hooks).unwrap();
    assert!(out.witnesses.is_empty());
    assert_eq!(out.count as usize, seen.len());
    assert!(!seen.is_empty());
    for sq in &seen {
        assert!(classify(sq).labels.contains(&Label::Franklin));
    }
}

#[test]
fn progress_hook_sees_every_task() {
    let mut calls = Vec::new();
    let mut progress = |p: &search::Progress| calls.push(*p);
    let hooks = Hooks { progress: Some(&mut progress), sink: None };
    search_with(&SearchOptions::new(4), hooks).unwrap();
    let last = calls.last().unwrap();
    assert_eq!(last.tasks_done, last.tasks_total);
    assert_eq!(calls.len(), last.tasks_total);
}

#[test]
fn order_limits() {
    assert!(matches!(
        search_natural_franklin(&SearchOptions::new(MAX_ORDER + 2)),
        Err(Error::SearchOrder { .. })
    ));
    assert_eq!(
        search_natural_franklin(&SearchOptions::new(12).mode(SearchMode::First)),
        Err(Error::LongRunRequired(12))
    );
}
