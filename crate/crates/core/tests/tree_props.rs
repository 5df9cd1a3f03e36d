use std::collections::BTreeSet;
use std::sync::OnceLock;

use arboreal::arith::BigRat;
use arboreal::measure::{infinity_along, mu_embedding, mu_symbolic, MeasureValue, ParamSpec};
use arboreal::tree::{enumerate_trees, parse_tree, Label, LeafLabeledTree, DEFAULT_LABEL_CAP};
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn labels(k: usize) -> BTreeSet<Label> {
    (1..=k).map(|i| i.to_string()).collect()
}

fn trees_on(k: usize) -> &'static [LeafLabeledTree] {
    static ALL: OnceLock<Vec<Vec<LeafLabeledTree>>> = OnceLock::new();
    &ALL.get_or_init(|| (0..=6).map(|k| enumerate_trees(&labels(k), None, DEFAULT_LABEL_CAP).unwrap()).collect())[k]
}

fn tree(max: usize) -> impl Strategy<Value = LeafLabeledTree> {
    (1..=max).prop_flat_map(|k| select(trees_on(k).to_vec()))
}

fn pair_on(k: usize) -> impl Strategy<Value = (LeafLabeledTree, LeafLabeledTree)> {
    (select(trees_on(k).to_vec()), select(trees_on(k).to_vec()))
}

fn quadruple_signature(t: &LeafLabeledTree) -> Vec<bool> {
    let ls: Vec<Label> = t.labels().into_iter().collect();
    let mut out = Vec::new();
    for a in &ls {
        for b in &ls {
            for c in &ls {
                for d in &ls {
                    if a < b && c < d && a != c && a != d && b != c && b != d {
                        out.push(t.quaternary(a, b, c, d).unwrap());
                    }
                }
            }
        }
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_round_trips(t in tree(6)) {
        let again = parse_tree(&t.to_string()).unwrap();
        prop_assert_eq!(again.canonical_key(), t.canonical_key());
        prop_assert_eq!(&again, &t);
    }

    #[test]
    fn restriction_composes(t in tree(6), seed in any::<u64>()) {
        let all: Vec<Label> = t.labels().into_iter().collect();
        let a: BTreeSet<Label> = all.iter().enumerate().filter(|(i, _)| seed >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        let b: BTreeSet<Label> = a.iter().enumerate().filter(|(i, _)| seed >> (i + 8) & 1 == 1).map(|(_, l)| l.clone()).collect();
        prop_assert_eq!(t.restrict(&a).unwrap().restrict(&b).unwrap(), t.restrict(&b).unwrap());
    }

    #[test]
    fn quaternary_relation_determines_the_tree((x, y) in (4usize..=6).prop_flat_map(pair_on)) {
        prop_assert_eq!(x == y, quadruple_signature(&x) == quadruple_signature(&y));
    }

    #[test]
    fn automorphism_primes_are_bounded_by_valence(t in tree(6)) {
        let max_degree = (0..t.vertex_count()).map(|v| t.neighbors(v).len()).max().unwrap_or(0).max(2) as u64;
        for p in prime_factors(t.aut_order()) {
            prop_assert!(p <= max_degree, "{} has automorphism prime {}", t, p);
        }
    }

    #[test]
    fn embedding_measures_multiply(t in tree(6), seed in any::<u64>()) {
        let all: Vec<Label> = t.labels().into_iter().collect();
        let mid: BTreeSet<Label> = all.iter().enumerate().filter(|(i, _)| seed >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        let low: BTreeSet<Label> = mid.iter().enumerate().filter(|(i, _)| seed >> (i + 8) & 1 == 1).map(|(_, l)| l.clone()).collect();
        let (t1, t0) = (t.restrict(&mid).unwrap(), t.restrict(&low).unwrap());
        let sym = ParamSpec::Symbolic;
        let direct = mu_embedding(&t0, &t, &sym).unwrap().to_ratfun();
        let chained = &mu_embedding(&t0, &t1, &sym).unwrap().to_ratfun() * &mu_embedding(&t1, &t, &sym).unwrap().to_ratfun();
        prop_assert_eq!(direct, chained);
    }

    #[test]
    fn infinity_ignores_deletion_order(t in tree(6), order in any::<u64>()) {
        let firsts: Vec<Label> = t.leaf_label_sets().into_iter().map(|ls| ls[0].clone()).collect();
        let mut shuffled = firsts.clone();
        let mut s = order;
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        prop_assert_eq!(infinity_along(&t, &firsts).unwrap(), infinity_along(&t, &shuffled).unwrap());
    }

    #[test]
    fn numeric_agrees_with_symbolic(t in tree(6), n in -40i64..40, d in 1i64..12) {
        let q = BigRat::new(n.into(), d.into());
        prop_assume!(q != BigRat::from_integer(1.into()));
        let numeric = mu_embedding(&LeafLabeledTree::empty(), &t, &ParamSpec::Numeric(q.clone())).unwrap();
        prop_assert_eq!(numeric, MeasureValue::Exact(mu_symbolic(&t).evaluate(&q).unwrap()));
    }

    #[test]
    fn sublabel_sets_give_valid_restrictions(t in tree(6), keep in subsequence((1..=6).collect::<Vec<usize>>(), 0..=6)) {
        let set: BTreeSet<Label> = keep.iter().map(|i| i.to_string()).filter(|l| t.labels().contains(l)).collect();
        let r = t.restrict(&set).unwrap();
        prop_assert_eq!(r.labels(), set);
        prop_assert!(r.level() <= t.level());
    }
}
