//! Marked trees, separated leaves and the ring `Z[u,v]/(uv)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::amalgam::amalgamations;
use crate::arith::RatFun;
use crate::error::{Error, Result};
use crate::measure::{theta_generator_values, ParamSpec};
use crate::tree::{parse_tree, Label, LeafLabeledTree};

/// Type of a marked tree, read off the node next to the mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkType {
    /// At most three leaves (`m` leaves), or a marked node of valence `m >= 4`.
    I(usize),
    /// Marked node of valence three with two leaf neighbours.
    II,
    /// Marked node of valence three with one leaf neighbour.
    III,
}

pub const MARK: &str = "a";

impl MarkType {
    /// The minimal marked tree of this type, marked `a`, and its deletion.
    pub fn standard_pair(self) -> (LeafLabeledTree, LeafLabeledTree) {
        let sup = self.minimal_tree();
        let sub = sup.delete_leaf(MARK).expect("mark present");
        (sup, sub)
    }

    pub fn minimal_tree(self) -> LeafLabeledTree {
        let text = match self {
            MarkType::I(1) => MARK.to_string(),
            MarkType::I(m) => {
                let others: Vec<String> = (1..m).map(|i| format!("x{i}")).collect();
                format!("({MARK},{})", others.join(","))
            }
            MarkType::II => format!("(({MARK},y),(p,q))"),
            MarkType::III => format!("((p,q),{MARK},(r,s))"),
        };
        parse_tree(&text).expect("standard tree")
    }

    pub fn generator(self) -> Generator {
        match self {
            MarkType::I(m) => Generator::X(m),
            MarkType::II => Generator::Y,
            MarkType::III => Generator::Z,
        }
    }
}

impl fmt::Display for MarkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkType::I(m) => write!(f, "I{m}"),
            MarkType::II => f.write_str("II"),
            MarkType::III => f.write_str("III"),
        }
    }
}

pub fn mark_type(tree: &LeafLabeledTree, mark: &str) -> Result<MarkType> {
    let v = tree.leaf_of(mark).ok_or_else(|| Error::UnknownLabel(mark.to_string()))?;
    let l = tree.leaf_count();
    if l <= 3 {
        return Ok(MarkType::I(l));
    }
    let node = tree.neighbors(v)[0];
    let m = tree.neighbors(node).len();
    if m >= 4 {
        return Ok(MarkType::I(m));
    }
    let leafy = tree.neighbors(node).iter().filter(|&&w| tree.is_leaf(w)).count();
    Ok(if leafy == 2 { MarkType::II } else { MarkType::III })
}

fn distinct_leaves(tree: &LeafLabeledTree, a: &str, b: &str) -> Result<(usize, usize)> {
    let va = tree.leaf_of(a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
    let vb = tree.leaf_of(b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
    if va == vb {
        return Err(Error::InvalidParam(format!("`{a}` and `{b}` share a leaf")));
    }
    Ok((va, vb))
}

/// Separation by definition: `T` is the only amalgamation of `T\a` and `T\b`.
pub fn separated_brute(tree: &LeafLabeledTree, a: &str, b: &str) -> Result<bool> {
    distinct_leaves(tree, a, b)?;
    let ta = tree.delete_leaf(a)?;
    let tb = tree.delete_leaf(b)?;
    let all = amalgamations(&ta, &tb, None)?;
    Ok(all.len() == 1 && all[0].whole == *tree)
}

/// Separation by the local criterion: the nodes next to `a` and `b` differ,
/// and are not adjacent unless one of them has valence at least four.
pub fn separated(tree: &LeafLabeledTree, a: &str, b: &str) -> Result<bool> {
    let (va, vb) = distinct_leaves(tree, a, b)?;
    if tree.leaf_count() < 3 {
        return Ok(false);
    }
    let (na, nb) = (tree.neighbors(va)[0], tree.neighbors(vb)[0]);
    if na == nb {
        return Ok(false);
    }
    let adjacent = tree.neighbors(na).contains(&nb);
    Ok(!adjacent || tree.neighbors(na).len() >= 4 || tree.neighbors(nb).len() >= 4)
}

/// Minimal marked trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Minimal {
    X(usize),
    Y,
    Z,
}

impl Minimal {
    pub fn mark_type(self) -> MarkType {
        match self {
            Minimal::X(m) => MarkType::I(m),
            Minimal::Y => MarkType::II,
            Minimal::Z => MarkType::III,
        }
    }
}

impl fmt::Display for Minimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimal::X(m) => write!(f, "X{m}"),
            Minimal::Y => f.write_str("Y"),
            Minimal::Z => f.write_str("Z"),
        }
    }
}

fn first_label(tree: &LeafLabeledTree, v: usize) -> Label {
    tree.labels_at(v)[0].clone()
}

/// Labels (one per leaf) of the leaves separated from the mark.
pub fn extraneous_leaves(tree: &LeafLabeledTree, mark: &str) -> Result<Vec<Label>> {
    let vm = tree.leaf_of(mark).ok_or_else(|| Error::UnknownLabel(mark.to_string()))?;
    let mut out = Vec::new();
    for v in tree.leaves() {
        if v != vm {
            let l = first_label(tree, v);
            if separated(tree, mark, &l)? {
                out.push(l);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Deletes extraneous leaves, smallest label first, until none remain, and
/// identifies the resulting minimal tree.
pub fn minimize_marked(tree: &LeafLabeledTree, mark: &str) -> Result<(LeafLabeledTree, Minimal)> {
    let mut cur = tree.clone();
    while let Some(l) = extraneous_leaves(&cur, mark)?.into_iter().next() {
        cur = cur.delete_leaf(&l)?;
    }
    let kind = classify_minimal(&cur, mark)?;
    Ok((cur, kind))
}

/// Identifies a marked tree, up to isomorphism fixing the mark, with one of
/// the minimal trees.
pub fn classify_minimal(tree: &LeafLabeledTree, mark: &str) -> Result<Minimal> {
    let shape = marked_shape(tree, mark)?;
    let candidates = [Minimal::X(tree.leaf_count()), Minimal::Y, Minimal::Z];
    for c in candidates {
        if marked_shape(&c.mark_type().minimal_tree(), MARK)? == shape {
            return Ok(c);
        }
    }
    Err(Error::InvalidParam(format!("{tree} marked at {mark} is not minimal")))
}

/// Canonical key with one token per leaf: `m` on the marked leaf, `o` elsewhere.
fn marked_shape(t: &LeafLabeledTree, mark: &str) -> Result<String> {
    let vm = t.leaf_of(mark).ok_or_else(|| Error::UnknownLabel(mark.to_string()))?;
    let firsts: BTreeMap<Label, &str> = t
        .leaves()
        .into_iter()
        .map(|v| (first_label(t, v), if v == vm { "m" } else { "o" }))
        .collect();
    let reduced = t.expand_labels(|l| firsts.get(l).map(|s| vec![s.to_string()]).unwrap_or_default());
    Ok(reduced.canonical_key().to_string())
}

/// Generators of the ring of marked-tree classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X(usize),
    Y,
    Z,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(m) => write!(f, "x{m}"),
            Generator::Y => f.write_str("y"),
            Generator::Z => f.write_str("z"),
        }
    }
}

/// `c + p(u) + q(v)` in `Z[u,v]/(uv)`; `u[i]` and `v[i]` hold the
/// coefficients of `u^(i+1)` and `v^(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThetaElement {
    pub c: i64,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

fn trim(mut xs: Vec<i64>) -> Vec<i64> {
    while xs.last() == Some(&0) {
        xs.pop();
    }
    xs
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

/// Product of `c1 + p1` and `c2 + p2` restricted to one variable.
fn mul_side(c1: i64, p1: &[i64], c2: i64, p2: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p1.len() + p2.len() + 1];
    for (i, a) in p1.iter().enumerate() {
        out[i] += a * c2;
        for (j, b) in p2.iter().enumerate() {
            out[i + j + 1] += a * b;
        }
    }
    for (j, b) in p2.iter().enumerate() {
        out[j] += c1 * b;
    }
    trim(out)
}

impl ThetaElement {
    pub fn constant(c: i64) -> Self {
        ThetaElement { c, u: Vec::new(), v: Vec::new() }
    }

    pub fn u() -> Self {
        ThetaElement { c: 0, u: vec![1], v: Vec::new() }
    }

    pub fn v() -> Self {
        ThetaElement { c: 0, u: Vec::new(), v: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.u.is_empty() && self.v.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        ThetaElement {
            c: self.c * k,
            u: trim(self.u.iter().map(|x| x * k).collect()),
            v: trim(self.v.iter().map(|x| x * k).collect()),
        }
    }

    /// Image under `u -> u0`, `v -> 0`.
    pub fn substitute_u(&self, u0: &RatFun) -> RatFun {
        let mut acc = RatFun::from_int(self.c);
        let mut pw = RatFun::one();
        for &k in &self.u {
            pw = &pw * u0;
            acc = &acc + &(&pw * &RatFun::from_int(k));
        }
        acc
    }
}

impl Add for &ThetaElement {
    type Output = ThetaElement;
    fn add(self, o: &ThetaElement) -> ThetaElement {
        ThetaElement { c: self.c + o.c, u: add_vec(&self.u, &o.u), v: add_vec(&self.v, &o.v) }
    }
}

impl Neg for &ThetaElement {
    type Output = ThetaElement;
    fn neg(self) -> ThetaElement {
        self.scale(-1)
    }
}

impl Sub for &ThetaElement {
    type Output = ThetaElement;
    fn sub(self, o: &ThetaElement) -> ThetaElement {
        self + &(-o)
    }
}

impl Mul for &ThetaElement {
    type Output = ThetaElement;
    fn mul(self, o: &ThetaElement) -> ThetaElement {
        ThetaElement {
            c: self.c * o.c,
            u: mul_side(self.c, &self.u, o.c, &o.u),
            v: mul_side(self.c, &self.v, o.c, &o.v),
        }
    }
}

impl fmt::Display for ThetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        for (var, coeffs) in [("u", &self.u), ("v", &self.v)] {
            for (i, &k) in coeffs.iter().enumerate().rev() {
                if k != 0 {
                    let mono = if i == 0 { var.to_string() } else { format!("{var}^{}", i + 1) };
                    terms.push((k, mono));
                }
            }
        }
        if self.c != 0 {
            terms.push((self.c, String::new()));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, mono)) in terms.iter().enumerate() {
            let sign = if *k < 0 { "-" } else if i > 0 { "+" } else { "" };
            let a = k.abs();
            if mono.is_empty() {
                write!(f, "{sign}{a}")?;
            } else if a == 1 {
                write!(f, "{sign}{mono}")?;
            } else {
                write!(f, "{sign}{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

pub fn theta_image(g: Generator) -> ThetaElement {
    let (u, v, one) = (ThetaElement::u(), ThetaElement::v(), ThetaElement::constant(1));
    match g {
        Generator::X(1) => &(&u + &v) + &ThetaElement::constant(2),
        Generator::X(2) => &(&u + &v) + &one,
        Generator::X(3) => &u + &v,
        Generator::X(m) => &(&v + &one) - &(&u + &one).scale(m as i64 - 2),
        Generator::Y => u,
        Generator::Z => &u - &v,
    }
}

/// Integer polynomial in the generators: a list of `(coefficient, monomial)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenExpr {
    pub terms: Vec<(i64, Vec<Generator>)>,
}

impl GenExpr {
    pub fn constant(k: i64) -> Self {
        GenExpr { terms: vec![(k, Vec::new())] }
    }

    pub fn gen(g: Generator) -> Self {
        GenExpr { terms: vec![(1, vec![g])] }
    }

    pub fn plus(mut self, k: i64, mono: &[Generator]) -> Self {
        self.terms.push((k, mono.to_vec()));
        self
    }

    pub fn max_x(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|(_, m)| m.iter())
            .filter_map(|g| if let Generator::X(m) = g { Some(*m) } else { None })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for GenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, m)| {
                let mono: Vec<String> = m.iter().map(ToString::to_string).collect();
                if mono.is_empty() {
                    k.to_string()
                } else {
                    format!("{k}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn theta_eval(e: &GenExpr) -> ThetaElement {
    let mut acc = ThetaElement::default();
    for (k, mono) in &e.terms {
        let term = mono.iter().fold(ThetaElement::constant(1), |a, g| &a * &theta_image(*g));
        acc = &acc + &term.scale(*k);
    }
    acc
}

/// Value of `e` under the symbolic measure's generator table.
pub fn mu_eval(e: &GenExpr) -> Result<RatFun> {
    let table = theta_generator_values(&ParamSpec::Symbolic, e.max_x().max(4))?;
    let mut acc = RatFun::zero();
    for (k, mono) in &e.terms {
        let term = mono.iter().fold(RatFun::one(), |a, g| &a * &table.get(*g).to_ratfun());
        acc = &acc + &(&term * &RatFun::from_int(*k));
    }
    Ok(acc)
}

/// The substitution `u -> -(t-2)/(t-1)`, `v -> 0`.
pub fn u_specialization() -> RatFun {
    -(&RatFun::t_minus(2) / &RatFun::t_minus(1))
}

/// The linear forms `1+x2-x1`, `1+x3-x2`, `1+x4-x3+3y`, `1+x_{m+1}-x_m+y`
/// for `4 <= m <= m_max`, and `1+z+y+x4`, followed by `y(z-y)`.
pub fn presentation_relations(m_max: usize) -> Vec<GenExpr> {
    use Generator::*;
    let mut out = vec![
        GenExpr::constant(1).plus(1, &[X(2)]).plus(-1, &[X(1)]),
        GenExpr::constant(1).plus(1, &[X(3)]).plus(-1, &[X(2)]),
        GenExpr::constant(1).plus(1, &[X(4)]).plus(-1, &[X(3)]).plus(3, &[Y]),
    ];
    for m in 4..=m_max {
        out.push(GenExpr::constant(1).plus(1, &[X(m + 1)]).plus(-1, &[X(m)]).plus(1, &[Y]));
    }
    out.push(GenExpr::constant(1).plus(1, &[Z]).plus(1, &[Y]).plus(1, &[X(4)]));
    out.push(GenExpr::default().plus(1, &[Y, Z]).plus(-1, &[Y, Y]));
    out
}

/// A linear relation among marked-tree classes with its two residuals.
#[derive(Debug, Clone)]
pub struct LRelation {
    /// Coefficient per class; `None` is the class of the identity.
    pub terms: BTreeMap<Option<Generator>, i64>,
    pub amalgamation_count: usize,
    pub residual_mu: RatFun,
    pub residual_theta: ThetaElement,
}

impl LRelation {
    pub fn expr(&self) -> GenExpr {
        let mut e = GenExpr::default();
        for (g, k) in &self.terms {
            match g {
                None => e.terms.push((*k, Vec::new())),
                Some(g) => e.terms.push((*k, vec![*g])),
            }
        }
        e
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(g, k)| json!({"class": g.map_or("1".to_string(), |g| g.to_string()), "coeff": k}))
            .collect();
        json!({
            "generator_terms": terms,
            "residual_mu": self.residual_mu.to_string(),
            "residual_theta": self.residual_theta.to_string(),
        })
    }
}

/// The relation `[M] = sum [Z_k, a]` over the amalgamations `Z_k` of the
/// marked tree `M` with a copy of itself over `M` minus the mark.
pub fn verify_l_relation(m: &LeafLabeledTree, mark: &str) -> Result<LRelation> {
    let own = classify_minimal(m, mark)?.mark_type().generator();
    let others: BTreeSet<Label> = m.labels();
    let mut dup = format!("{mark}.dup");
    while others.contains(&dup) {
        dup.push('_');
    }
    let copy = m.map_labels(|l| if l == mark { dup.clone() } else { l.to_string() })?;
    let all = amalgamations(m, &copy, None)?;
    let mut terms: BTreeMap<Option<Generator>, i64> = BTreeMap::new();
    *terms.entry(Some(own)).or_insert(0) += 1;
    for a in &all {
        let same_leaf = a.whole.leaf_of(mark) == a.whole.leaf_of(&dup);
        let class = if same_leaf {
            None
        } else {
            Some(minimize_marked(&a.whole, mark)?.1.mark_type().generator())
        };
        *terms.entry(class).or_insert(0) -= 1;
    }
    terms.retain(|_, k| *k != 0);
    let mut rel = LRelation {
        terms,
        amalgamation_count: all.len(),
        residual_mu: RatFun::zero(),
        residual_theta: ThetaElement::default(),
    };
    let e = rel.expr();
    rel.residual_mu = mu_eval(&e)?;
    rel.residual_theta = theta_eval(&e);
    Ok(rel)
}

/// The caterpillar extension of `y` at a leaf outside `x_labels`, with `h`
/// new leaves, and the number of embeddings of `y` into it that fix every
/// leaf meeting `x_labels`.
pub fn ss2_witness(y: &LeafLabeledTree, x_labels: &BTreeSet<Label>, h: usize) -> Result<(LeafLabeledTree, usize)> {
    if h == 0 {
        return Err(Error::InvalidParam("h must be at least 1".into()));
    }
    let all = y.labels();
    if !x_labels.is_subset(&all) {
        let bad = x_labels.difference(&all).next().cloned().unwrap_or_default();
        return Err(Error::UnknownLabel(bad));
    }
    let free: Vec<Vec<Label>> = y
        .leaf_label_sets()
        .into_iter()
        .filter(|ls| ls.iter().all(|l| !x_labels.contains(l)))
        .collect();
    let Some(a_leaf) = free.iter().min().cloned() else { return Err(Error::NotProper) };
    let a = a_leaf[0].clone();
    let fresh = |i: usize| -> Label {
        let mut s = format!("{a}.{i}");
        while all.contains(&s) {
            s.push('_');
        }
        s
    };
    let z = caterpillar_at(y, &a, &(1..=2 * h).map(fresh).collect::<Vec<_>>())?;
    let count = count_extensions(y, &z, x_labels);
    Ok((z, count))
}

/// Replaces the leaf carrying `a` by a path of cherries ending in a leaf.
/// The first new leaf keeps the old labels; `new` supplies the other `2h`.
fn caterpillar_at(y: &LeafLabeledTree, a: &str, new: &[Label]) -> Result<LeafLabeledTree> {
    let va = y.leaf_of(a).expect("checked");
    let h = new.len() / 2;
    let mut labels: Vec<Vec<Label>> = (0..y.vertex_count()).map(|v| y.labels_at(v).to_vec()).collect();
    let mut edges = y.edges();
    let old = std::mem::take(&mut labels[va]);
    let mut fresh = std::iter::once(old).chain(new.iter().map(|l| vec![l.clone()]));
    let push = |labels: &mut Vec<Vec<Label>>, ls: Vec<Label>| {
        labels.push(ls);
        labels.len() - 1
    };
    let mut spine = va;
    for i in 0..h {
        let cherry = push(&mut labels, Vec::new());
        edges.push((spine, cherry));
        for _ in 0..2 {
            let leaf = push(&mut labels, fresh.next().expect("enough labels"));
            edges.push((cherry, leaf));
        }
        if i + 1 < h {
            let next = push(&mut labels, Vec::new());
            edges.push((spine, next));
            spine = next;
        }
    }
    let last = push(&mut labels, fresh.next().expect("enough labels"));
    edges.push((spine, last));
    LeafLabeledTree::from_edges(labels.len(), &edges, labels)
}

fn count_extensions(y: &LeafLabeledTree, z: &LeafLabeledTree, x_labels: &BTreeSet<Label>) -> usize {
    let y_free: Vec<Vec<Label>> = y
        .leaf_label_sets()
        .into_iter()
        .filter(|ls| ls.iter().all(|l| !x_labels.contains(l)))
        .collect();
    let z_free: Vec<usize> = z
        .leaves()
        .into_iter()
        .filter(|&v| z.labels_at(v).iter().all(|l| !x_labels.contains(l)))
        .collect();
    let fixed: Vec<usize> = z
        .leaves()
        .into_iter()
        .filter(|&v| z.labels_at(v).iter().any(|l| x_labels.contains(l)))
        .collect();
    let mut count = 0;
    let mut chosen = Vec::new();
    assign(y, z, &y_free, &z_free, &fixed, &mut chosen, &mut count);
    count
}

fn assign(
    y: &LeafLabeledTree,
    z: &LeafLabeledTree,
    y_free: &[Vec<Label>],
    z_free: &[usize],
    fixed: &[usize],
    chosen: &mut Vec<usize>,
    count: &mut usize,
) {
    if chosen.len() == y_free.len() {
        let mut image: BTreeMap<usize, Vec<Label>> = fixed.iter().map(|&v| (v, z.labels_at(v).to_vec())).collect();
        for (ls, &v) in y_free.iter().zip(chosen.iter()) {
            image.insert(v, ls.clone());
        }
        let keep: BTreeSet<Label> = image.values().flatten().cloned().collect();
        let relabeled = z
            .leaves()
            .into_iter()
            .fold(z.expand_labels(|_| Vec::new()), |acc, v| match image.get(&v) {
                Some(ls) => acc.with_labels_added(v, ls),
                None => acc.with_labels_added(v, &[format!("zz{v}")]),
            });
        let r = relabeled.restrict_unchecked(|l| keep.contains(l));
        if r == *y {
            *count += 1;
        }
        return;
    }
    for &v in z_free {
        if !chosen.contains(&v) {
            chosen.push(v);
            assign(y, z, y_free, z_free, fixed, chosen, count);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::label_set;

    fn t(s: &str) -> LeafLabeledTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn separation_examples() {
        let t8 = t("((a,b),c,(d,e))");
        assert!(separated(&t8, "a", "d").unwrap());
        assert!(separated_brute(&t8, "a", "d").unwrap());
        let t5 = t("((a,b),(c,d))");
        assert!(!separated(&t5, "a", "c").unwrap());
        assert!(!separated_brute(&t5, "a", "c").unwrap());
        let t10 = t("((a,b),(c,d,e,f))");
        assert!(separated(&t10, "a", "c").unwrap());
        assert!(separated_brute(&t10, "a", "c").unwrap());
        assert!(!separated_brute(&t("(a,b)"), "a", "b").unwrap());
        assert!(separated(&t("(a/b,c)"), "a", "b").is_err());
    }

    #[test]
    fn types_and_minimization() {
        assert_eq!(mark_type(&t("(a,b,c,d,e)"), "a").unwrap(), MarkType::I(5));
        assert_eq!(minimize_marked(&t("(a,b,c,d,e)"), "a").unwrap().1, Minimal::X(5));
        assert_eq!(mark_type(&t("((a,b),(c,d))"), "b").unwrap(), MarkType::II);
        assert_eq!(minimize_marked(&t("((a,b),(c,d))"), "b").unwrap().1, Minimal::Y);
        let t13 = t("((a,b,c),d,(e,f))");
        assert_eq!(mark_type(&t13, "d").unwrap(), MarkType::III);
        let (z, kind) = minimize_marked(&t13, "d").unwrap();
        assert_eq!(kind, Minimal::Z);
        assert_eq!(z.leaf_count(), 5);
        assert_eq!(mark_type(&t("(a,b)"), "a").unwrap(), MarkType::I(2));
        assert_eq!(minimize_marked(&t("((a,b),c,(d,e))"), "a").unwrap().1, Minimal::Y);
    }

    #[test]
    fn theta_arithmetic() {
        assert_eq!(theta_image(Generator::X(3)).to_string(), "u+v");
        let yzy = GenExpr::default().plus(1, &[Generator::Y, Generator::Z]).plus(-1, &[Generator::Y, Generator::Y]);
        assert!(theta_eval(&yzy).is_zero());
        for r in presentation_relations(7) {
            assert!(theta_eval(&r).is_zero(), "{r}");
            assert!(mu_eval(&r).unwrap().is_zero(), "{r}");
        }
        let sq = &(&ThetaElement::u() + &ThetaElement::constant(1)) * &(&ThetaElement::v() + &ThetaElement::constant(1));
        assert_eq!(sq.to_string(), "u+v+1");
    }

    #[test]
    fn specialization_matches_measure() {
        let table = theta_generator_values(&ParamSpec::Symbolic, 8).unwrap();
        let u0 = u_specialization();
        for g in (1..=8).map(Generator::X).chain([Generator::Y, Generator::Z]) {
            assert_eq!(theta_image(g).substitute_u(&u0), table.get(g).to_ratfun(), "{g}");
        }
    }

    #[test]
    fn l_relations() {
        let x3 = MarkType::I(3).minimal_tree();
        let rel = verify_l_relation(&x3, MARK).unwrap();
        assert_eq!(rel.amalgamation_count, 5);
        let expect: BTreeMap<Option<Generator>, i64> =
            [(Some(Generator::X(3)), 1), (None, -1), (Some(Generator::Y), -3), (Some(Generator::X(4)), -1)].into();
        assert_eq!(rel.terms, expect);
        assert!(rel.residual_mu.is_zero() && rel.residual_theta.is_zero());
        let x1 = verify_l_relation(&MarkType::I(1).minimal_tree(), MARK).unwrap();
        let expect: BTreeMap<Option<Generator>, i64> = [(Some(Generator::X(1)), 1), (None, -1), (Some(Generator::X(2)), -1)].into();
        assert_eq!(x1.terms, expect);
        let y = verify_l_relation(&MarkType::II.minimal_tree(), MARK).unwrap();
        let expect: BTreeMap<Option<Generator>, i64> =
            [(None, -1), (Some(Generator::Y), -1), (Some(Generator::Z), -1), (Some(Generator::X(4)), -1)].into();
        assert_eq!(y.terms, expect);
        assert!(y.residual_mu.is_zero() && y.residual_theta.is_zero());
    }

    #[test]
    fn witnesses() {
        let y = t("(a,b,c)");
        let (z, c) = ss2_witness(&y, &label_set(["b"]), 1).unwrap();
        assert_eq!(z.leaf_count(), 5);
        assert!(c >= 1);
        let (z, c) = ss2_witness(&y, &label_set(["b"]), 4).unwrap();
        assert_eq!(z.leaf_count(), 11);
        assert!(c >= 4, "count {c}");
        assert!(z.level() <= 3);
        assert_eq!(ss2_witness(&y, &label_set(["a", "b", "c"]), 2), Err(Error::NotProper));
    }
}
