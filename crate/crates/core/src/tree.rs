//! Reduced leaf-labeled trees.
//!
//! A [`LeafLabeledTree`] has no internal vertex of valence two. Every leaf
//! carries a nonempty set of labels and every label sits on exactly one leaf.
//! Trees are immutable; all operations return new trees.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A leaf label. Valid labels are nonempty strings over `[A-Za-z0-9_:.]`.
pub type Label = String;

/// Default cap on the number of labels handed to [`enumerate_trees`].
pub const DEFAULT_LABEL_CAP: usize = 9;

pub fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | ':' | '.')
}

pub fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::EmptyLabel(0));
    }
    if !label.chars().all(is_label_char) {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

/// Where a new leaf goes in [`LeafLabeledTree::with_new_leaf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    /// The tree is empty; the new leaf becomes the whole tree.
    Empty,
    /// Join the new leaf to vertex `v`.
    Vertex(usize),
    /// Subdivide edge `(u, v)` and hang the new leaf off the new node.
    Edge(usize, usize),
}

/// Leaf, node and valence counts of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub leaf_count: usize,
    pub node_count: usize,
    /// Maximum node valence, 0 when there are no nodes.
    pub level: usize,
    /// Node valences, sorted ascending.
    pub valences: Vec<usize>,
}

#[derive(Clone)]
pub struct LeafLabeledTree {
    adj: Vec<Vec<usize>>,
    labels: Vec<Vec<Label>>,
    key: OnceLock<String>,
}

impl LeafLabeledTree {
    pub fn empty() -> Self {
        Self::from_parts_unchecked(Vec::new(), Vec::new())
    }

    /// A single leaf carrying `labels`.
    pub fn leaf<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ls: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self::from_edges(1, &[], vec![ls])
    }

    /// Builds a tree from vertex count, edge list and per-vertex labels, then
    /// prunes unlabeled leaves and suppresses valence-2 nodes.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], labels: Vec<Vec<Label>>) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::Malformed { pos: 0, msg: "label table size mismatch".into() });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v || adj[u].contains(&v) {
                return Err(Error::Malformed { pos: 0, msg: format!("bad edge ({u},{v})") });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if n > 0 && edges.len() != n - 1 {
            return Err(Error::Malformed { pos: 0, msg: "edge count does not match a tree".into() });
        }
        let mut seen = BTreeSet::new();
        for ls in &labels {
            for l in ls {
                validate_label(l)?;
                if !seen.insert(l.clone()) {
                    return Err(Error::DuplicateLabel(l.clone()));
                }
            }
        }
        if n > 0 && !connected(&adj) {
            return Err(Error::Malformed { pos: 0, msg: "graph is not connected".into() });
        }
        for (v, ls) in labels.iter().enumerate() {
            if !ls.is_empty() && adj[v].len() >= 2 {
                return Err(Error::Malformed { pos: 0, msg: "labels on an internal vertex".into() });
            }
        }
        Ok(normalize(adj, labels))
    }

    fn from_parts_unchecked(adj: Vec<Vec<usize>>, mut labels: Vec<Vec<Label>>) -> Self {
        for ls in &mut labels {
            ls.sort();
        }
        LeafLabeledTree { adj, labels, key: OnceLock::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() <= 1
    }

    /// Labels on vertex `v` (empty for nodes), sorted.
    pub fn labels_at(&self, v: usize) -> &[Label] {
        &self.labels[v]
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn nodes(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            for &v in ns {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.labels.iter().flatten().cloned().collect()
    }

    pub fn label_count(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    /// The vertex carrying `label`.
    pub fn leaf_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|ls| ls.iter().any(|l| l == label))
    }

    fn require_leaf(&self, label: &str) -> Result<usize> {
        self.leaf_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Label sets of all leaves, each sorted, in vertex order.
    pub fn leaf_label_sets(&self) -> Vec<Vec<Label>> {
        self.leaves().into_iter().map(|v| self.labels[v].clone()).collect()
    }

    /// The node adjacent to the leaf carrying `label`, if the tree has at
    /// least three leaves.
    pub fn attachment_node(&self, label: &str) -> Result<Option<usize>> {
        let v = self.require_leaf(label)?;
        if self.leaf_count() < 3 {
            return Ok(None);
        }
        Ok(Some(self.adj[v][0]))
    }

    pub fn stats(&self) -> TreeStats {
        let mut valences: Vec<usize> = self.nodes().iter().map(|&v| self.adj[v].len()).collect();
        valences.sort_unstable();
        TreeStats {
            leaf_count: self.leaf_count(),
            node_count: valences.len(),
            level: valences.last().copied().unwrap_or(0),
            valences,
        }
    }

    pub fn level(&self) -> usize {
        self.adj.iter().map(Vec::len).filter(|&d| d >= 3).max().unwrap_or(0)
    }

    /// Label-preserving canonical serialization. Parses back to an equal tree.
    pub fn canonical_key(&self) -> &str {
        self.key.get_or_init(|| min_rooted_key(self, &|ls: &[Label]| ls.join("/")))
    }

    /// Canonical serialization with labels forgotten; a leaf with k labels
    /// becomes k stars joined by '/'.
    pub fn shape_key(&self) -> String {
        min_rooted_key(self, &|ls: &[Label]| vec!["*"; ls.len()].join("/"))
    }

    /// Minimal subtree spanning the leaves that carry labels in `subset`,
    /// reduced, with other labels dropped.
    pub fn restrict(&self, subset: &BTreeSet<Label>) -> Result<Self> {
        for l in subset {
            self.require_leaf(l)?;
        }
        Ok(self.restrict_unchecked(|l| subset.contains(l)))
    }

    /// Restriction to the labels accepted by `keep`; unknown labels are not
    /// reported.
    pub fn restrict_unchecked(&self, keep: impl Fn(&str) -> bool) -> Self {
        let labels: Vec<Vec<Label>> = self
            .labels
            .iter()
            .map(|ls| ls.iter().filter(|l| keep(l)).cloned().collect())
            .collect();
        normalize(self.adj.clone(), labels)
    }

    /// Deletes the whole leaf carrying `label`.
    pub fn delete_leaf(&self, label: &str) -> Result<Self> {
        let v = self.require_leaf(label)?;
        let gone: BTreeSet<&str> = self.labels[v].iter().map(String::as_str).collect();
        Ok(self.restrict_unchecked(|l| !gone.contains(l)))
    }

    /// True iff the four labels sit on four distinct leaves and the paths
    /// x1–x2 and y1–y2 share an edge.
    pub fn quaternary(&self, x1: &str, x2: &str, y1: &str, y2: &str) -> Result<bool> {
        let vs = [
            self.require_leaf(x1)?,
            self.require_leaf(x2)?,
            self.require_leaf(y1)?,
            self.require_leaf(y2)?,
        ];
        let distinct: BTreeSet<usize> = vs.iter().copied().collect();
        if distinct.len() < 4 {
            return Ok(false);
        }
        let p = self.path_edges(vs[0], vs[1]);
        let q = self.path_edges(vs[2], vs[3]);
        Ok(p.intersection(&q).next().is_some())
    }

    fn path_edges(&self, a: usize, b: usize) -> BTreeSet<(usize, usize)> {
        let parent = self.parents_from(b);
        let mut out = BTreeSet::new();
        let mut v = a;
        while v != b {
            let p = parent[v];
            out.insert((v.min(p), v.max(p)));
            v = p;
        }
        out
    }

    fn parents_from(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        parent[root] = root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        parent
    }

    /// Positions where a new leaf can be inserted, yielding every tree with
    /// one more leaf exactly once.
    pub fn insertion_sites(&self) -> Vec<Site> {
        match self.adj.len() {
            0 => vec![Site::Empty],
            1 => vec![Site::Vertex(0)],
            _ => {
                let mut out: Vec<Site> = self.nodes().into_iter().map(Site::Vertex).collect();
                out.extend(self.edges().into_iter().map(|(u, v)| Site::Edge(u, v)));
                out
            }
        }
    }

    /// Inserts a new leaf carrying `labels` at `site`. Labels are not
    /// revalidated.
    pub fn with_new_leaf(&self, site: Site, labels: Vec<Label>) -> Self {
        let mut adj = self.adj.clone();
        let mut lab = self.labels.clone();
        let x = adj.len();
        adj.push(Vec::new());
        lab.push(labels);
        match site {
            Site::Empty => {}
            Site::Vertex(v) => {
                adj[v].push(x);
                adj[x].push(v);
            }
            Site::Edge(u, v) => {
                let w = adj.len();
                adj.push(Vec::new());
                lab.push(Vec::new());
                for (a, b) in [(u, v), (v, u)] {
                    let slot = adj[a].iter().position(|&y| y == b).expect("edge exists");
                    adj[a][slot] = w;
                }
                adj[w] = vec![u, v, x];
                adj[x].push(w);
            }
        }
        Self::from_parts_unchecked(adj, lab)
    }

    /// Adds `extra` labels to leaf `v`.
    pub fn with_labels_added(&self, v: usize, extra: &[Label]) -> Self {
        let mut lab = self.labels.clone();
        lab[v].extend(extra.iter().cloned());
        Self::from_parts_unchecked(self.adj.clone(), lab)
    }

    /// Applies `f` to every label. Fails if the result has duplicates.
    pub fn map_labels(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        let lab: Vec<Vec<Label>> = self.labels.iter().map(|ls| ls.iter().map(|l| f(l)).collect()).collect();
        let mut seen = BTreeSet::new();
        for l in lab.iter().flatten() {
            validate_label(l)?;
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self::from_parts_unchecked(self.adj.clone(), lab))
    }

    /// Replaces every label by the label set `f(label)`. The caller keeps the
    /// images pairwise disjoint.
    pub fn expand_labels(&self, f: impl Fn(&str) -> Vec<Label>) -> Self {
        let lab = self.labels.iter().map(|ls| ls.iter().flat_map(|l| f(l)).collect()).collect();
        Self::from_parts_unchecked(self.adj.clone(), lab)
    }

    /// Number of graph automorphisms, labels forgotten.
    pub fn aut_order(&self) -> u64 {
        let n = self.adj.len();
        if n <= 1 {
            return 1;
        }
        let centers = self.centers();
        let mut memo = HashMap::new();
        match centers.as_slice() {
            [c] => self.rooted_aut(*c, usize::MAX, &mut memo).1,
            [a, b] => {
                let (ka, xa) = self.rooted_aut(*a, *b, &mut memo);
                let (kb, xb) = self.rooted_aut(*b, *a, &mut memo);
                xa * xb * if ka == kb { 2 } else { 1 }
            }
            _ => unreachable!("a tree has one or two centers"),
        }
    }

    fn rooted_aut(&self, v: usize, parent: usize, memo: &mut HashMap<(usize, usize), (String, u64)>) -> (String, u64) {
        if let Some(r) = memo.get(&(v, parent)) {
            return r.clone();
        }
        let mut kids: Vec<(String, u64)> = self.adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.rooted_aut(w, v, memo))
            .collect();
        kids.sort();
        let mut count: u64 = kids.iter().map(|k| k.1).product();
        let mut i = 0;
        while i < kids.len() {
            let mut j = i;
            while j < kids.len() && kids[j].0 == kids[i].0 {
                j += 1;
            }
            count *= (1..=(j - i) as u64).product::<u64>();
            i = j;
        }
        let key = format!("({})", kids.iter().map(|k| k.0.as_str()).collect::<Vec<_>>().join(""));
        memo.insert((v, parent), (key.clone(), count));
        (key, count)
    }

    fn centers(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    if deg[w] > 1 {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
                deg[v] = 0;
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }
}

impl PartialEq for LeafLabeledTree {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for LeafLabeledTree {}

impl std::hash::Hash for LeafLabeledTree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Display for LeafLabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical_key())
    }
}

impl fmt::Debug for LeafLabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.canonical_key())
    }
}

impl std::str::FromStr for LeafLabeledTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == adj.len()
}

/// Prunes unlabeled vertices of valence at most one, suppresses unlabeled
/// valence-2 vertices and compacts indices.
fn normalize(mut adj: Vec<Vec<usize>>, labels: Vec<Vec<Label>>) -> LeafLabeledTree {
    let n = adj.len();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| labels[v].is_empty() && adj[v].len() <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for w in std::mem::take(&mut adj[v]) {
            adj[w].retain(|&y| y != v);
            if alive[w] && labels[w].is_empty() && adj[w].len() <= 1 {
                stack.push(w);
            }
        }
    }
    for v in 0..n {
        if alive[v] && labels[v].is_empty() && adj[v].len() == 2 {
            let (a, b) = (adj[v][0], adj[v][1]);
            for (x, y) in [(a, b), (b, a)] {
                let slot = adj[x].iter().position(|&z| z == v).expect("symmetric adjacency");
                adj[x][slot] = y;
            }
            adj[v].clear();
            alive[v] = false;
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if alive[v] {
            index[v] = next;
            next += 1;
        }
    }
    let mut new_adj = vec![Vec::new(); next];
    let mut new_labels = vec![Vec::new(); next];
    for v in 0..n {
        if alive[v] {
            new_adj[index[v]] = adj[v].iter().map(|&w| index[w]).collect();
            new_labels[index[v]] = labels[v].clone();
        }
    }
    LeafLabeledTree::from_parts_unchecked(new_adj, new_labels)
}

fn min_rooted_key(t: &LeafLabeledTree, leaf_str: &dyn Fn(&[Label]) -> String) -> String {
    match t.adj.len() {
        0 => "()".to_string(),
        1 => leaf_str(&t.labels[0]),
        n => {
            let mut memo: HashMap<(usize, usize), String> = HashMap::new();
            // an edge is rooted at a leaf; larger trees only at nodes
            (0..n)
                .filter(|&r| n == 2 || !t.is_leaf(r))
                .map(|r| {
                    let mut parts: Vec<String> =
                        t.adj[r].iter().map(|&w| rooted_ser(t, w, r, leaf_str, &mut memo)).collect();
                    if t.is_leaf(r) {
                        parts.push(leaf_str(&t.labels[r]));
                    }
                    parts.sort();
                    format!("({})", parts.join(","))
                })
                .min()
                .expect("nonempty")
        }
    }
}

fn rooted_ser(
    t: &LeafLabeledTree,
    v: usize,
    parent: usize,
    leaf_str: &dyn Fn(&[Label]) -> String,
    memo: &mut HashMap<(usize, usize), String>,
) -> String {
    if let Some(s) = memo.get(&(v, parent)) {
        return s.clone();
    }
    let s = if t.is_leaf(v) {
        leaf_str(&t.labels[v])
    } else {
        let mut parts: Vec<String> = t.adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| rooted_ser(t, w, v, leaf_str, memo))
            .collect();
        parts.sort();
        format!("({})", parts.join(","))
    };
    memo.insert((v, parent), s.clone());
    s
}

/// Parses the tree grammar `tree := label_set | '(' tree (',' tree)+ ')'`,
/// `label_set := label ('/' label)*`, with "()" for the empty tree.
pub fn parse_tree(text: &str) -> Result<LeafLabeledTree> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let end = text.len();
    if chars.len() == 2 && chars[0].1 == '(' && chars[1].1 == ')' {
        return Ok(LeafLabeledTree::empty());
    }
    let mut p = Parser { chars: &chars, i: 0, end, adj: Vec::new(), labels: Vec::new(), seen: BTreeSet::new() };
    p.tree()?;
    if p.i < chars.len() {
        return Err(Error::Malformed { pos: chars[p.i].0, msg: format!("unexpected `{}`", chars[p.i].1) });
    }
    Ok(normalize(p.adj, p.labels))
}

struct Parser<'a> {
    chars: &'a [(usize, char)],
    i: usize,
    end: usize,
    adj: Vec<Vec<usize>>,
    labels: Vec<Vec<Label>>,
    seen: BTreeSet<Label>,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.end, |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn new_vertex(&mut self, labels: Vec<Label>) -> usize {
        self.adj.push(Vec::new());
        self.labels.push(labels);
        self.adj.len() - 1
    }

    fn tree(&mut self) -> Result<usize> {
        match self.peek() {
            Some('(') => {
                let open = self.pos();
                self.i += 1;
                let v = self.new_vertex(Vec::new());
                let mut kids = vec![self.tree()?];
                while self.peek() == Some(',') {
                    self.i += 1;
                    kids.push(self.tree()?);
                }
                match self.peek() {
                    Some(')') => self.i += 1,
                    Some(c) => return Err(Error::Malformed { pos: self.pos(), msg: format!("unexpected `{c}`") }),
                    None => return Err(Error::Malformed { pos: self.pos(), msg: format!("unclosed `(` at byte {open}") }),
                }
                if kids.len() < 2 {
                    return Err(Error::Malformed { pos: open, msg: "a group needs at least two members".into() });
                }
                for k in kids {
                    self.adj[v].push(k);
                    self.adj[k].push(v);
                }
                Ok(v)
            }
            _ => {
                let mut ls = vec![self.label()?];
                while self.peek() == Some('/') {
                    self.i += 1;
                    ls.push(self.label()?);
                }
                Ok(self.new_vertex(ls))
            }
        }
    }

    fn label(&mut self) -> Result<Label> {
        let start = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if is_label_char(c) {
                s.push(c);
                self.i += 1;
            } else {
                break;
            }
        }
        if s.is_empty() {
            return match self.peek() {
                None | Some(',') | Some(')') | Some('/') => Err(Error::EmptyLabel(start)),
                Some(c) => Err(Error::Malformed { pos: start, msg: format!("unexpected `{c}`") }),
            };
        }
        if !self.seen.insert(s.clone()) {
            return Err(Error::DuplicateLabel(s));
        }
        Ok(s)
    }
}

/// All reduced trees with one label per leaf on `labels`, sorted by
/// canonical key. `max_level` keeps only trees of level at most that value.
pub fn enumerate_trees(labels: &BTreeSet<Label>, max_level: Option<usize>, cap: usize) -> Result<Vec<LeafLabeledTree>> {
    if labels.len() > cap {
        return Err(Error::CapExceeded { size: labels.len(), cap });
    }
    for l in labels {
        validate_label(l)?;
    }
    let mut layer = vec![LeafLabeledTree::empty()];
    for l in labels {
        let mut next = Vec::new();
        for t in &layer {
            for site in t.insertion_sites() {
                let u = t.with_new_leaf(site, vec![l.clone()]);
                if max_level.is_none_or(|n| u.level() <= n) {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    let dedup: BTreeMap<String, LeafLabeledTree> =
        layer.into_iter().map(|t| (t.canonical_key().to_string(), t)).collect();
    Ok(dedup.into_values().collect())
}

/// Convenience for tests and fixtures: the label set `{l1, ..., ln}`.
pub fn label_set<I, S>(labels: I) -> BTreeSet<Label>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    labels.into_iter().map(Into::into).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LeafLabeledTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn parse_edge_and_suppression() {
        let e = t("(a,b)");
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.stats().node_count, 0);
        assert_eq!(t("((a,b),(c,d))"), t("(a,b,(c,d))"));
        assert_eq!(t("(a,(b,c))"), t("(a,b,c)"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_tree("(a,a)"), Err(Error::DuplicateLabel("a".into())));
        assert!(matches!(parse_tree("(a,,b)"), Err(Error::EmptyLabel(_))));
        assert!(matches!(parse_tree("(a,b"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_tree("(a)"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_tree("(a,b))"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_tree("a-b"), Err(Error::Malformed { .. })));
    }

    #[test]
    fn keys_reparse() {
        for s in ["()", "a", "a/b", "(a,b)", "(x/y,b,(c,d))", "((1,2),3,(4,(5,6)))"] {
            let tr = t(s);
            assert_eq!(t(tr.canonical_key()), tr, "{s}");
        }
        assert_eq!(t("a").canonical_key(), "a");
        assert_eq!(t("(a,b,(c,d))").canonical_key(), t("((d,c),b,a)").canonical_key());
        assert_eq!(t(" ( b / a , c ) ").canonical_key(), "(a/b,c)");
    }

    #[test]
    fn shapes() {
        let quartets = ["((a,b),(c,d))", "((a,c),(b,d))", "((a,d),(b,c))"];
        let k0 = t(quartets[0]).shape_key();
        assert!(quartets.iter().all(|q| t(q).shape_key() == k0));
        assert_ne!(t("(a,b,c,d)").shape_key(), k0);
        assert_ne!(t("(a,b,c)").shape_key(), t("(a,b)").shape_key());
        assert_ne!(t("(a/b,c)").shape_key(), t("(a,c)").shape_key());
    }

    #[test]
    fn restriction_examples() {
        let t5 = t("((a,b),(c,d))");
        assert_eq!(t5.restrict(&label_set(["a", "b", "c"])).unwrap(), t("(a,b,c)"));
        assert_eq!(t5.restrict(&t5.labels()).unwrap(), t5);
        assert!(t5.restrict(&label_set::<_, &str>([])).unwrap().is_empty());
        assert_eq!(t5.restrict(&label_set(["a"])).unwrap(), t("a"));
        assert_eq!(t5.restrict(&label_set(["z"])), Err(Error::UnknownLabel("z".into())));
        let t8 = t("((a,b),c,(d,e))");
        assert_eq!(t8.restrict(&label_set(["a", "b", "d", "e"])).unwrap(), t("((a,b),(d,e))"));
        let m = t("(a/x,b,c)");
        assert_eq!(m.restrict(&label_set(["x", "b"])).unwrap(), t("(x,b)"));
    }

    #[test]
    fn quaternary_examples() {
        let t5 = t("((a,b),(c,d))");
        assert!(t5.quaternary("a", "c", "b", "d").unwrap());
        assert!(!t5.quaternary("a", "b", "c", "d").unwrap());
        assert!(!t5.quaternary("a", "a", "c", "d").unwrap());
        assert!(!t("(a,b,c,d)").quaternary("a", "c", "b", "d").unwrap());
        assert!(t5.quaternary("a", "q", "b", "d").is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_trees(&(0..n).map(|i| format!("l{i}")).collect(), None, 9).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 4, 26, 236]);
        let four = enumerate_trees(&label_set(["a", "b", "c", "d"]), None, 9).unwrap();
        let keys: BTreeSet<&str> = four.iter().map(|t| t.canonical_key()).collect();
        assert_eq!(keys.len(), 4);
        assert!(matches!(
            enumerate_trees(&label_set(["a", "b", "c"]), None, 2),
            Err(Error::CapExceeded { size: 3, cap: 2 })
        ));
        let binary = enumerate_trees(&label_set(["a", "b", "c", "d", "e"]), Some(3), 9).unwrap();
        assert_eq!(binary.len(), 15);
    }

    #[test]
    fn stats_and_automorphisms() {
        let s = t("(a,b,c)").stats();
        assert_eq!((s.leaf_count, s.node_count, s.level), (3, 1, 3));
        let e = t("(a,b)").stats();
        assert_eq!((e.leaf_count, e.node_count, e.level), (2, 0, 0));
        assert_eq!(t("(a,b,c)").aut_order(), 6);
        assert_eq!(t("(a,b)").aut_order(), 2);
        assert_eq!(t("((a,b),(c,d))").aut_order(), 8);
        assert_eq!(t("a").aut_order(), 1);
        assert_eq!(t("()").aut_order(), 1);
        assert_eq!(t("((a,b),c,(d,e))").aut_order(), 8);
        assert_eq!(t("((a,b),(c,d),(e,f))").aut_order(), 48);
    }

    #[test]
    fn insertion_and_labels() {
        let e = t("(a,b)");
        let star = e.with_new_leaf(Site::Edge(0, 1), vec!["c".into()]);
        assert_eq!(star, t("(a,b,c)"));
        let v = star.leaf_of("a").unwrap();
        assert_eq!(star.with_labels_added(v, &["z".into()]), t("(a/z,b,c)"));
        assert_eq!(star.delete_leaf("a").unwrap(), t("(b,c)"));
        assert!(star.map_labels(|_| "q".into()).is_err());
    }
}
