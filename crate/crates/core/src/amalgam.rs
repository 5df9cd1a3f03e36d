//! Amalgamations of trees over their shared labels.
//!
//! Two engines are provided. [`amalgamations`] grafts the free leaves of the
//! right tree onto the left one, one leaf at a time, pruning any partial tree
//! whose restriction already disagrees with the right tree.
//! [`amalgamations_brute`] enumerates every tree on every quotient point set
//! and filters; it serves as an oracle.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::tree::{enumerate_trees, Label, LeafLabeledTree};

/// A tree covered by two labeled subtrees that overlap in their shared labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgamation {
    pub whole: LeafLabeledTree,
    pub left: BTreeSet<Label>,
    pub right: BTreeSet<Label>,
}

impl Amalgamation {
    pub fn to_json(&self) -> Value {
        json!({
            "whole": self.whole.canonical_key(),
            "left": self.left.iter().collect::<Vec<_>>(),
            "right": self.right.iter().collect::<Vec<_>>(),
        })
    }
}

/// Prefixes every label with `tag`.
pub fn tag_tree(t: &LeafLabeledTree, tag: &str) -> LeafLabeledTree {
    t.map_labels(|l| format!("{tag}{l}")).expect("tagging keeps labels distinct")
}

struct Setup<'a> {
    right: &'a LeafLabeledTree,
    right_labels: BTreeSet<Label>,
    start: LeafLabeledTree,
    seen_right: BTreeSet<Label>,
    free_right: Vec<Vec<Label>>,
}

fn setup<'a>(t1: &LeafLabeledTree, t2: &'a LeafLabeledTree) -> Result<Setup<'a>> {
    let l1 = t1.labels();
    let l2 = t2.labels();
    let base: BTreeSet<Label> = l1.intersection(&l2).cloned().collect();
    let r1 = t1.restrict(&base)?;
    let r2 = t2.restrict(&base)?;
    if r1 != r2 {
        return Err(Error::BaseMismatch(r1.to_string(), r2.to_string()));
    }
    let mut start = t1.clone();
    let mut seen_right = BTreeSet::new();
    let mut free_right = Vec::new();
    for ls in t2.leaf_label_sets() {
        let (shared, extra): (Vec<Label>, Vec<Label>) = ls.iter().cloned().partition(|l| base.contains(l));
        match shared.first() {
            None => free_right.push(ls),
            Some(anchor) => {
                let v = start.leaf_of(anchor).expect("base label present on the left");
                if !extra.is_empty() {
                    start = start.with_labels_added(v, &extra);
                }
                seen_right.extend(ls);
            }
        }
    }
    free_right.sort();
    Ok(Setup { right: t2, right_labels: l2, start, seen_right, free_right })
}

fn within(level: Option<usize>, t: &LeafLabeledTree) -> bool {
    level.is_none_or(|n| t.level() <= n)
}

fn restrict_to(t: &LeafLabeledTree, keep: &BTreeSet<Label>) -> LeafLabeledTree {
    t.restrict_unchecked(|l| keep.contains(l))
}

fn wrap(wholes: Vec<LeafLabeledTree>, t1: &LeafLabeledTree, t2: &LeafLabeledTree) -> Vec<Amalgamation> {
    let sorted: BTreeMap<String, LeafLabeledTree> =
        wholes.into_iter().map(|w| (w.canonical_key().to_string(), w)).collect();
    let (left, right) = (t1.labels(), t2.labels());
    sorted
        .into_values()
        .map(|whole| Amalgamation { whole, left: left.clone(), right: right.clone() })
        .collect()
}

/// All amalgamations of `t1` and `t2` over their shared labels, sorted by the
/// canonical key of the whole. `max_level` keeps only wholes of bounded level.
pub fn amalgamations(t1: &LeafLabeledTree, t2: &LeafLabeledTree, max_level: Option<usize>) -> Result<Vec<Amalgamation>> {
    let s = setup(t1, t2)?;
    let mut out = Vec::new();
    if within(max_level, &s.start) {
        graft(&s, s.start.clone(), 0, s.seen_right.clone(), max_level, &mut out);
    }
    Ok(wrap(out, t1, t2))
}

fn graft(
    s: &Setup<'_>,
    w: LeafLabeledTree,
    idx: usize,
    mut seen: BTreeSet<Label>,
    max_level: Option<usize>,
    out: &mut Vec<LeafLabeledTree>,
) {
    let Some(leaf) = s.free_right.get(idx) else {
        out.push(w);
        return;
    };
    seen.extend(leaf.iter().cloned());
    let target = restrict_to(s.right, &seen);
    let mut candidates = Vec::new();
    for v in w.leaves() {
        if w.labels_at(v).iter().all(|l| !s.right_labels.contains(l)) {
            candidates.push(w.with_labels_added(v, leaf));
        }
    }
    for site in w.insertion_sites() {
        candidates.push(w.with_new_leaf(site, leaf.clone()));
    }
    for c in candidates {
        if within(max_level, &c) && restrict_to(&c, &seen).canonical_key() == target.canonical_key() {
            graft(s, c, idx + 1, seen.clone(), max_level, out);
        }
    }
}

/// Oracle: every partial matching of free leaves, every tree on the resulting
/// points, filtered by both restriction conditions.
pub fn amalgamations_brute(
    t1: &LeafLabeledTree,
    t2: &LeafLabeledTree,
    max_level: Option<usize>,
    cap: usize,
) -> Result<Vec<Amalgamation>> {
    let s = setup(t1, t2)?;
    let left_free: Vec<usize> = s
        .start
        .leaves()
        .into_iter()
        .filter(|&v| s.start.labels_at(v).iter().all(|l| !s.right_labels.contains(l)))
        .collect();
    let mut matchings = Vec::new();
    partial_matchings(left_free.len(), s.free_right.len(), &mut vec![None; left_free.len()], 0, &mut matchings);
    let (l1, l2) = (t1.labels(), t2.labels());
    let mut out = Vec::new();
    for m in matchings {
        let mut points: Vec<Vec<Label>> = Vec::new();
        let mut used = vec![false; s.free_right.len()];
        for v in s.start.leaves() {
            let mut ls = s.start.labels_at(v).to_vec();
            if let Some(i) = left_free.iter().position(|&x| x == v) {
                if let Some(j) = m[i] {
                    ls.extend(s.free_right[j].iter().cloned());
                    used[j] = true;
                }
            }
            points.push(ls);
        }
        for (j, ls) in s.free_right.iter().enumerate() {
            if !used[j] {
                points.push(ls.clone());
            }
        }
        let ids: BTreeSet<Label> = (0..points.len()).map(|i| format!("p{i}")).collect();
        for shape in enumerate_trees(&ids, max_level, cap)? {
            let w = shape.expand_labels(|id| points[id[1..].parse::<usize>().expect("point id")].clone());
            if restrict_to(&w, &l1) == *t1 && restrict_to(&w, &l2) == *t2 {
                out.push(w);
            }
        }
    }
    Ok(wrap(out, t1, t2))
}

fn partial_matchings(
    n_left: usize,
    n_right: usize,
    cur: &mut Vec<Option<usize>>,
    i: usize,
    out: &mut Vec<Vec<Option<usize>>>,
) {
    if i == n_left {
        out.push(cur.clone());
        return;
    }
    cur[i] = None;
    partial_matchings(n_left, n_right, cur, i + 1, out);
    for j in 0..n_right {
        if !cur[..i].contains(&Some(j)) {
            cur[i] = Some(j);
            partial_matchings(n_left, n_right, cur, i + 1, out);
        }
    }
    cur[i] = None;
}

/// Amalgamation counts grouped by the unlabeled shape of the whole.
pub fn count_by_shape(t1: &LeafLabeledTree, t2: &LeafLabeledTree, max_level: Option<usize>) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for a in amalgamations(t1, t2, max_level)? {
        *out.entry(a.whole.shape_key()).or_insert(0) += 1;
    }
    Ok(out)
}

pub const SOURCE_TAG: &str = "s:";
pub const TARGET_TAG: &str = "t:";

/// Amalgamations of `t` with a copy of itself; the copies carry the tags
/// `s:` and `t:`.
pub fn self_amalgamations(t: &LeafLabeledTree, max_level: Option<usize>) -> Result<Vec<Amalgamation>> {
    amalgamations(&tag_tree(t, SOURCE_TAG), &tag_tree(t, TARGET_TAG), max_level)
}

/// Trees covering `x` and `y` over their shared labels, each paired with its
/// restriction to the labels not shared.
pub fn triple_amalgamations(
    x: &LeafLabeledTree,
    y: &LeafLabeledTree,
    max_level: Option<usize>,
) -> Result<Vec<(LeafLabeledTree, LeafLabeledTree)>> {
    let lx = x.labels();
    let ly = y.labels();
    let outer: BTreeSet<Label> = lx.symmetric_difference(&ly).cloned().collect();
    Ok(amalgamations(x, y, max_level)?
        .into_iter()
        .map(|a| {
            let y3 = restrict_to(&a.whole, &outer);
            (a.whole, y3)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{label_set, parse_tree, DEFAULT_LABEL_CAP};

    fn t(s: &str) -> LeafLabeledTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn headline_counts() {
        assert_eq!(amalgamations(&t("(1,2)"), &t("(3,4,5)"), None).unwrap().len(), 56);
        assert_eq!(amalgamations(&t("(1,2)"), &t("(1,4,5)"), None).unwrap().len(), 6);
        assert_eq!(amalgamations(&t("a"), &t("a"), None).unwrap().len(), 1);
    }

    #[test]
    fn engines_agree() {
        let cases = [
            ("(1,2)", "(3,4,5)"),
            ("(1,2)", "(1,4,5)"),
            ("(a,b,c)", "(a,d)"),
            ("((a,b),(c,d))", "(a,b,e)"),
            ("(s:a,s:b,s:c)", "(t:a,t:b,t:c)"),
            ("(a/x,b,c)", "(x,y)"),
        ];
        for (a, b) in cases {
            let g = amalgamations(&t(a), &t(b), None).unwrap();
            let o = amalgamations_brute(&t(a), &t(b), None, DEFAULT_LABEL_CAP).unwrap();
            assert_eq!(g, o, "{a} {b}");
            let g3 = amalgamations(&t(a), &t(b), Some(3)).unwrap();
            let o3 = amalgamations_brute(&t(a), &t(b), Some(3), DEFAULT_LABEL_CAP).unwrap();
            assert_eq!(g3, o3, "{a} {b} level 3");
        }
    }

    #[test]
    fn shapes_of_small_pairs() {
        assert_eq!(count_by_shape(&t("()"), &t("(a,b,c)"), None).unwrap().into_iter().collect::<Vec<_>>(), vec![(t("(a,b,c)").shape_key(), 1)]);
        let by = count_by_shape(&t("1"), &t("2"), None).unwrap();
        assert_eq!(by.get(&t("(x,y)").shape_key()), Some(&1));
        assert_eq!(by.get(&t("x/y").shape_key()), Some(&1));
    }

    #[test]
    fn self_amalgamation_counts() {
        assert_eq!(self_amalgamations(&t("a"), None).unwrap().len(), 2);
        assert_eq!(self_amalgamations(&t("(1,2)"), None).unwrap().len(), 10);
    }

    #[test]
    fn sound_outputs() {
        let (a, b) = (t("((a,b),(c,d))"), t("((a,c),(b,(d,e)))"));
        let are = amalgamations(&a, &b, None);
        assert!(matches!(are, Err(Error::BaseMismatch(..))));
        let (a, b) = (t("((a,b),(c,d))"), t("((a,b),(c,e))"));
        for am in amalgamations(&a, &b, None).unwrap() {
            assert_eq!(am.whole.restrict(&am.left).unwrap(), a);
            assert_eq!(am.whole.restrict(&am.right).unwrap(), b);
        }
    }

    #[test]
    fn triple_restriction() {
        let x = t("(1:a/2:a,1:b/2:b)");
        let y = t("(2:a/3:a,2:b/3:b)");
        let outs = triple_amalgamations(&x, &y, None).unwrap();
        let diag = t("(1:a/2:a/3:a,1:b/2:b/3:b)");
        assert!(outs.iter().any(|(z, y3)| *z == diag && *y3 == t("(1:a/3:a,1:b/3:b)")));
        assert!(outs.iter().all(|(z, _)| z.restrict(&label_set(["1:a", "1:b", "2:a", "2:b"])).unwrap() == x));
    }
}
