use franklin::pattern::{expand_quotient, expand_remainder};
use franklin::*;

// Walks every permutation of 0..n in lexicographic order and keeps the ones
// whose column expansion passes the verifier and is orthogonal to `q`.
fn unpruned(n: usize, q: &Square) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let r = expand_remainder(&perm, n).unwrap();
        let report = verify(&r, &IndexTargets::balanced(n)).unwrap();
        if report.flags.franklin && is_orthogonal(&AuxPair::new(q.clone(), r).unwrap()) {
            out.push(perm.clone());
        }
        // Next permutation.
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

#[test]
fn pruned_search_matches_unpruned_at_order_8() {
    let q = expand_quotient(&canonical_row_seed(8).unwrap(), 8).unwrap();
    let pruned = find_remainder_seeds(8, &q, None).unwrap();
    let oracle = unpruned(8, &q);
    assert_eq!(pruned, oracle);
    assert_eq!(pruned.len(), 384);
    assert!(pruned.contains(&vec![3, 5, 4, 2, 6, 0, 1, 7]));
}

#[test]
fn pruned_search_matches_unpruned_with_other_quotients() {
    for seed in [[0, 1, 2, 3, 4, 5, 6, 7], [7, 0, 6, 1, 5, 2, 4, 3]] {
        let q = expand_quotient(&seed, 8).unwrap();
        assert_eq!(find_remainder_seeds(8, &q, None).unwrap(), unpruned(8, &q));
    }
}

#[test]
fn order_4_has_no_seeds() {
    let q = expand_quotient(&canonical_row_seed(4).unwrap(), 4).unwrap();
    assert!(unpruned(4, &q).is_empty());
    assert!(find_remainder_seeds(4, &q, None).unwrap().is_empty());
}

#[test]
fn order_16_seeds_generate_franklin_squares() {
    let n = 16;
    let qseed = canonical_row_seed(n).unwrap();
    let q = expand_quotient(&qseed, n).unwrap();
    let seeds = find_remainder_seeds(n, &q, Some(3)).unwrap();
    assert_eq!(seeds.len(), 3);
    for seed in seeds {
        let g = generate(
            &SeedPattern::new(Archetype::RowAlternate, n, qseed.clone()).unwrap(),
            &SeedPattern::new(Archetype::ColumnAlternate, n, seed).unwrap(),
        )
        .unwrap();
        assert!(g.report.flags.natural && g.report.flags.franklin);
    }
}

#[test]
fn unbalanced_quotient_is_rejected() {
    let q = Square::new(8, vec![0; 64]).unwrap();
    assert_eq!(find_remainder_seeds(8, &q, None), Err(Error::Unbalanced("quotient")));
}
