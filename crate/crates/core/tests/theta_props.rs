use std::collections::BTreeSet;
use std::sync::OnceLock;

use arboreal::theta::{classify_minimal, extraneous_leaves, minimize_marked, separated, separated_brute, ss2_witness};
use arboreal::tree::{enumerate_trees, Label, LeafLabeledTree, DEFAULT_LABEL_CAP};
use proptest::prelude::*;
use proptest::sample::select;

fn trees_up_to(max: usize) -> &'static [LeafLabeledTree] {
    static ALL: OnceLock<Vec<LeafLabeledTree>> = OnceLock::new();
    ALL.get_or_init(|| {
        (1..=6)
            .flat_map(|k| {
                let labels: BTreeSet<Label> = (1..=k).map(|i| i.to_string()).collect();
                enumerate_trees(&labels, None, DEFAULT_LABEL_CAP).unwrap()
            })
            .collect()
    });
    let all = ALL.get().unwrap();
    let end = all.iter().position(|t| t.label_count() > max).unwrap_or(all.len());
    &all[..end]
}

/// Deletes extraneous leaves in the order chosen by `seed` until none remain.
fn minimize_in_order(t: &LeafLabeledTree, mark: &str, mut seed: u64) -> LeafLabeledTree {
    let mut cur = t.clone();
    loop {
        let ext = extraneous_leaves(&cur, mark).unwrap();
        if ext.is_empty() {
            return cur;
        }
        let pick = &ext[(seed % ext.len() as u64) as usize];
        seed = seed / ext.len() as u64 + 17;
        cur = cur.delete_leaf(pick).unwrap();
    }
}

#[test]
fn separated_matches_brute_force_up_to_six_leaves() {
    for t in trees_up_to(6) {
        let ls: Vec<Label> = t.labels().into_iter().collect();
        for a in &ls {
            for b in &ls {
                if a != b {
                    assert_eq!(separated(t, a, b).unwrap(), separated_brute(t, a, b).unwrap(), "{t} {a} {b}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimization_ignores_deletion_order(
        t in select(trees_up_to(5).to_vec()),
        mark_ix in 0usize..5,
        seed in any::<u64>(),
    ) {
        let ls: Vec<Label> = t.labels().into_iter().collect();
        let mark = &ls[mark_ix % ls.len()];
        let (_, kind) = minimize_marked(&t, mark).unwrap();
        let other = minimize_in_order(&t, mark, seed);
        prop_assert_eq!(classify_minimal(&other, mark).unwrap(), kind);
    }

    #[test]
    fn witnesses_stay_within_level_three_and_grow(
        t in select(trees_up_to(5).to_vec()),
        fixed_mask in any::<u8>(),
        h in 1usize..4,
    ) {
        let ls: Vec<Label> = t.labels().into_iter().collect();
        let x: BTreeSet<Label> = ls.iter().enumerate().filter(|(i, _)| fixed_mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        prop_assume!(x.len() < ls.len());
        let (z, count) = ss2_witness(&t, &x, h).unwrap();
        prop_assert_eq!(z.leaf_count(), t.leaf_count() + 2 * h);
        prop_assert!(z.level() <= t.level().max(3), "{} -> {}", t, z);
        prop_assert!(count >= h, "{} fixing {:?}: {} < {}", t, x, count, h);
    }
}
