mod common;

use std::collections::BTreeSet;

use common::{random_graph, random_subset, rng};
use mlbalance::cycles::{
    cycle_census, cycle_census_unguarded, cycle_graph, petersen, petersen_signings, search_petersen_signings,
    PETERSEN_SIGNINGS, PETERSEN_TARGETS,
};
use mlbalance::{Sign, SignedGraph};
use proptest::prelude::*;

/// Every simple cycle as its canonical vertex sequence, found by trying all
/// vertex orderings. Only for small graphs.
fn brute_force_cycles(g: &SignedGraph, max_length: usize) -> Vec<(usize, bool)> {
    fn permute(
        g: &SignedGraph,
        seq: &mut Vec<usize>,
        used: &mut [bool],
        max_length: usize,
        seen: &mut BTreeSet<Vec<usize>>,
        out: &mut Vec<(usize, bool)>,
    ) {
        if seq.len() >= 3 {
            let closes = g.sign_of(seq[0], *seq.last().unwrap()).is_some();
            if closes {
                let mut canon = seq.clone();
                let min_at = (0..canon.len()).min_by_key(|&i| canon[i]).unwrap();
                canon.rotate_left(min_at);
                if canon[1] > *canon.last().unwrap() {
                    canon[1..].reverse();
                }
                if seen.insert(canon) {
                    let mut negative = false;
                    for i in 0..seq.len() {
                        let s = g.sign_of(seq[i], seq[(i + 1) % seq.len()]).unwrap();
                        negative ^= s.is_negative();
                    }
                    out.push((seq.len(), negative));
                }
            }
        }
        if seq.len() == max_length {
            return;
        }
        let last = *seq.last().unwrap();
        for &(w, _) in g.neighbors(last) {
            if !used[w] {
                used[w] = true;
                seq.push(w);
                permute(g, seq, used, max_length, seen, out);
                seq.pop();
                used[w] = false;
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in 0..g.order() {
        let mut used = vec![false; g.order()];
        used[start] = true;
        permute(g, &mut vec![start], &mut used, max_length, &mut seen, &mut out);
    }
    out
}

#[test]
fn matches_brute_force_on_small_graphs() {
    let mut r = rng(21);
    for _ in 0..40 {
        let g = random_graph(&mut r, 7, 0.5, 0.5);
        let census = cycle_census(&g, 7).unwrap();
        let brute = brute_force_cycles(&g, 7);
        for l in 3..=7 {
            let neg = brute.iter().filter(|&&(len, n)| len == l && n).count() as u64;
            let pos = brute.iter().filter(|&&(len, n)| len == l && !n).count() as u64;
            assert_eq!((census.positive(l), census.negative(l)), (pos, neg), "length {l}");
        }
    }
}

#[test]
fn length_guard() {
    let g = petersen();
    assert!(cycle_census(&g, 13).is_err());
    assert_eq!(cycle_census_unguarded(&g, 12), cycle_census(&g, 12).unwrap());
    let long = cycle_census_unguarded(&g, 13);
    // Non-Hamiltonian: nothing beyond length 9.
    assert_eq!((3..=13).map(|l| long.total(l)).sum::<u64>(), 57);
    assert!((10..=13).all(|l| long.total(l) == 0));
}

#[test]
fn census_csv() {
    let c = cycle_census(&cycle_graph(4, 1).unwrap(), 5).unwrap();
    assert_eq!(c.to_csv(), "length,positive,negative\n3,0,0\n4,0,1\n5,0,0\n");
}

#[test]
fn signed_cycle_generators() {
    let c5 = cycle_graph(5, 1).unwrap();
    assert!(!c5.is_balanced());
    assert!(cycle_graph(4, 2).unwrap().is_balanced());
    assert!(cycle_graph(2, 0).is_err());
    assert!(cycle_graph(5, 6).is_err());
    let c = cycle_census(&c5, 5).unwrap();
    assert_eq!((c.positive(5), c.negative(5)), (0, 1));
}

#[test]
fn petersen_search_reproduces_the_constants() {
    let found = search_petersen_signings().expect("every letter has a matching signing");
    assert_eq!(found.len(), 5);
    for ((letter, neg), &(want_letter, want_neg)) in found.iter().zip(PETERSEN_SIGNINGS.iter()) {
        assert_eq!(*letter, want_letter);
        assert_eq!(neg.as_slice(), want_neg);
    }
}

#[test]
fn petersen_census_targets() {
    for ((letter, g), &(_, targets)) in petersen_signings().iter().zip(PETERSEN_TARGETS.iter()) {
        let c = cycle_census(g, 9).unwrap();
        for &(l, count) in targets {
            assert_eq!(c.negative(l), count, "{letter} length {l}");
        }
        assert_eq!([c.total(5), c.total(6), c.total(8), c.total(9)], [12, 10, 15, 20]);
    }
}

#[test]
fn petersen_c_and_d_full_table() {
    let signings = petersen_signings();
    let rows = |g: &SignedGraph| -> Vec<(u64, u64)> {
        let c = cycle_census(g, 9).unwrap();
        [5, 6, 8, 9]
            .iter()
            .map(|&l| (c.positive(l), c.negative(l)))
            .collect()
    };
    assert_eq!(rows(&signings[2].1), vec![(4, 8), (6, 4), (7, 8), (12, 8)]);
    assert_eq!(rows(&signings[3].1), vec![(6, 6), (0, 10), (15, 0), (10, 10)]);
    let e = cycle_census(&signings[4].1, 6).unwrap();
    assert_eq!((e.positive(5), e.negative(5)), (0, 12));
}

#[test]
fn petersen_signings_are_pairwise_inequivalent() {
    // Negative cycle counts are switching invariant, so distinct censuses
    // rule out switching equivalence.
    let censuses: Vec<Vec<u64>> = petersen_signings()
        .iter()
        .map(|(_, g)| {
            let c = cycle_census(g, 9).unwrap();
            (3..=9).map(|l| c.negative(l)).collect()
        })
        .collect();
    for i in 0..5 {
        for j in i + 1..5 {
            assert_ne!(censuses[i], censuses[j]);
        }
    }
}

/// Whether `h` is a switching of `g`, by trying every subset that fixes
/// vertex 0. Only for small graphs.
fn switching_equivalent(g: &SignedGraph, h: &SignedGraph) -> bool {
    let n = g.order();
    (0u32..1 << (n - 1)).any(|mask| {
        let s: Vec<usize> = (1..n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        &g.switch(&s).unwrap() == h
    })
}

#[test]
fn unbalanced_cycles_form_one_switching_class() {
    for n in 3..=9 {
        let reference = cycle_graph(n, 1).unwrap();
        for mask in 0u32..1 << n {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let edges = (0..n).map(|i| {
                let (u, v) = (i, (i + 1) % n);
                let s = if mask >> i & 1 == 1 {
                    Sign::Negative
                } else {
                    Sign::Positive
                };
                (u.min(v), u.max(v), s)
            });
            let g = SignedGraph::new(n, edges).unwrap();
            assert!(switching_equivalent(&reference, &g), "n={n} mask={mask:b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn census_is_switching_invariant(seed in any::<u64>(), n in 3usize..11) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.45, 0.5);
        let h = g.switch(&random_subset(&mut r, n)).unwrap();
        prop_assert_eq!(cycle_census(&g, n).unwrap(), cycle_census(&h, n).unwrap());
    }

    #[test]
    fn balanced_iff_no_negative_cycles(seed in any::<u64>(), n in 3usize..11, q in 0.0f64..0.4) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.35, q);
        let c = cycle_census(&g, n).unwrap();
        let negatives: u64 = (3..=n).map(|l| c.negative(l)).sum();
        prop_assert_eq!(g.is_balanced(), negatives == 0);
    }
}
