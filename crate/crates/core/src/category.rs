//! Morphisms between tree objects and the arboreal algebras `End(T)`.
//!
//! A basis morphism `S -> T` is an amalgamation of `S` and `T` over no shared
//! labels, stored as one tree whose labels carry the block tags `s:` and `t:`.
//! `f.compose(g)` applies `g` first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::amalgam::{amalgamations, tag_tree, triple_amalgamations, SOURCE_TAG, TARGET_TAG};
use crate::arith::{determinant, BigRat, DependenceFinder, RatFun};
use crate::error::{Error, Result};
use crate::measure::{mu_embedding, mu_factored, mu_symbolic, perturbation_enabled, sum_factored, Factored, ParamSpec};
use crate::tree::{parse_tree, Label, LeafLabeledTree};

/// Largest total label count of a Hom space basis.
pub const HOM_LABEL_CAP: usize = 12;

/// Replaces the first matching tag prefix of every label.
pub fn retag(t: &LeafLabeledTree, map: &[(&str, &str)]) -> LeafLabeledTree {
    t.map_labels(|l| {
        for (from, to) in map {
            if let Some(rest) = l.strip_prefix(from) {
                return format!("{to}{rest}");
            }
        }
        l.to_string()
    })
    .expect("retagging keeps labels distinct")
}

fn block(t: &LeafLabeledTree, tag: &str) -> LeafLabeledTree {
    let r = t.restrict_unchecked(|l| l.starts_with(tag));
    r.map_labels(|l| l[tag.len()..].to_string()).expect("distinct after untagging")
}

/// A linear combination of basis morphisms `source -> target`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomElement {
    pub source: LeafLabeledTree,
    pub target: LeafLabeledTree,
    pub terms: BTreeMap<String, RatFun>,
}

impl HomElement {
    pub fn zero(source: &LeafLabeledTree, target: &LeafLabeledTree) -> Self {
        HomElement { source: source.clone(), target: target.clone(), terms: BTreeMap::new() }
    }

    /// The basis morphism given by `whole`, which must restrict to `source`
    /// on its `s:` labels and to `target` on its `t:` labels.
    pub fn basis(source: &LeafLabeledTree, target: &LeafLabeledTree, whole: &LeafLabeledTree) -> Result<Self> {
        if let Some(bad) = whole.labels().into_iter().find(|l| !l.starts_with(SOURCE_TAG) && !l.starts_with(TARGET_TAG)) {
            return Err(Error::InvalidLabel(bad));
        }
        if block(whole, SOURCE_TAG) != *source || block(whole, TARGET_TAG) != *target {
            return Err(Error::Incompatible(format!("{whole} is not an amalgamation of {source} and {target}")));
        }
        let mut out = Self::zero(source, target);
        out.terms.insert(whole.canonical_key().to_string(), RatFun::one());
        Ok(out)
    }

    pub fn parse_basis(source: &LeafLabeledTree, target: &LeafLabeledTree, whole: &str) -> Result<Self> {
        Self::basis(source, target, &parse_tree(whole)?)
    }

    pub fn add_term(&mut self, key: &str, c: &RatFun) {
        let e = self.terms.entry(key.to_string()).or_insert_with(RatFun::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(key);
        }
    }

    pub fn coeff(&self, key: &str) -> RatFun {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = Self::zero(&self.source, &self.target);
        if !c.is_zero() {
            for (k, v) in &self.terms {
                out.terms.insert(k.clone(), v * c);
            }
        }
        out
    }

    fn check_same_space(&self, o: &HomElement) -> Result<()> {
        if self.source != o.source || self.target != o.target {
            return Err(Error::Incompatible(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, o.source, o.target
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &HomElement) -> Result<Self> {
        self.check_same_space(o)?;
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k, v);
        }
        Ok(out)
    }

    pub fn wholes(&self) -> impl Iterator<Item = (LeafLabeledTree, &RatFun)> {
        self.terms.iter().map(|(k, v)| (parse_tree(k).expect("stored keys parse"), v))
    }

    /// Swaps the roles of source and target.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.target, &self.source);
        for (w, c) in self.wholes() {
            let tw = retag(&w, &[(SOURCE_TAG, TARGET_TAG), (TARGET_TAG, SOURCE_TAG)]);
            out.terms.insert(tw.canonical_key().to_string(), c.clone());
        }
        out
    }

    /// Composite `self . g`, applying `g` first.
    pub fn compose(&self, g: &HomElement, p: &ParamSpec) -> Result<HomElement> {
        compose(self, g, p)
    }

    /// Coefficients evaluated at `t`.
    pub fn evaluate_at(&self, t: &BigRat) -> Result<Self> {
        let mut out = Self::zero(&self.source, &self.target);
        for (k, v) in &self.terms {
            let c = RatFun::constant(v.evaluate(t)?);
            out.add_term(k, &c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, v)| json!({"amalgamation": k, "coeff": v.to_string()}))
            .collect();
        json!({"source": self.source.to_string(), "target": self.target.to_string(), "terms": terms})
    }
}

impl fmt::Debug for HomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: ", self.source, self.target)?;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, v)| format!("({}) {k}", v.display_factored())).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl std::ops::Add for &HomElement {
    type Output = HomElement;
    /// Panics if the spaces differ.
    fn add(self, o: &HomElement) -> HomElement {
        self.checked_add(o).expect("same Hom space")
    }
}

impl std::ops::Sub for &HomElement {
    type Output = HomElement;
    fn sub(self, o: &HomElement) -> HomElement {
        self.checked_add(&o.scale(&RatFun::from_int(-1))).expect("same Hom space")
    }
}

/// Basis of `Hom(source, target)`: the amalgamations of the tagged copies.
pub fn hom_basis(source: &LeafLabeledTree, target: &LeafLabeledTree, max_level: Option<usize>) -> Result<Vec<LeafLabeledTree>> {
    let size = source.label_count() + target.label_count();
    if size > HOM_LABEL_CAP {
        return Err(Error::CapExceeded { size, cap: HOM_LABEL_CAP });
    }
    let all = amalgamations(&tag_tree(source, SOURCE_TAG), &tag_tree(target, TARGET_TAG), max_level)?;
    Ok(all.into_iter().map(|a| a.whole).collect())
}

/// The summands of the tensor product of two tree objects.
pub fn tensor_summands(t1: &LeafLabeledTree, t2: &LeafLabeledTree) -> Result<Vec<LeafLabeledTree>> {
    hom_basis(t1, t2, None)
}

pub fn identity(t: &LeafLabeledTree) -> HomElement {
    let whole = t.expand_labels(|l| vec![format!("{SOURCE_TAG}{l}"), format!("{TARGET_TAG}{l}")]);
    let mut out = HomElement::zero(t, t);
    out.terms.insert(whole.canonical_key().to_string(), RatFun::one());
    out
}

/// The morphisms `sub -> sup` and `sup -> sub` attached to an embedding.
pub fn embedding_morphisms(sub: &LeafLabeledTree, sup: &LeafLabeledTree) -> Result<(HomElement, HomElement)> {
    let labels = sub.labels();
    if sup.restrict(&labels).ok().as_ref() != Some(sub) {
        return Err(Error::NotEmbedding(format!("{sub} in {sup}")));
    }
    let spread = |other: &str| {
        sup.expand_labels(|l| {
            if labels.contains(l) {
                vec![format!("{SOURCE_TAG}{l}"), format!("{TARGET_TAG}{l}")]
            } else {
                vec![format!("{other}{l}")]
            }
        })
    };
    let beta = HomElement::basis(sub, sup, &spread(TARGET_TAG))?;
    let alpha = HomElement::basis(sup, sub, &spread(SOURCE_TAG))?;
    Ok((beta, alpha))
}

type Product = Arc<Vec<(String, RatFun)>>;
/// Keyed by the two basis trees and the parameter mode.
type ProductCache = Mutex<HashMap<(String, String, String), Product>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `phi_f . phi_g` for basis trees `g: X1 -> X2` and `f: X2 -> X3`.
fn basis_product(g: &str, f: &str, p: &ParamSpec) -> Result<Product> {
    let key = (g.to_string(), f.to_string(), format!("{p:?}/{}", perturbation_enabled()));
    if let Some(hit) = product_cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let g1 = retag(&parse_tree(g)?, &[(SOURCE_TAG, "1:"), (TARGET_TAG, "2:")]);
    let f1 = retag(&parse_tree(f)?, &[(SOURCE_TAG, "2:"), (TARGET_TAG, "3:")]);
    let level = match p {
        ParamSpec::FiniteLevel(n) => Some(*n),
        _ => None,
    };
    let mut acc: BTreeMap<String, RatFun> = BTreeMap::new();
    let mut factored: BTreeMap<String, Vec<Factored>> = BTreeMap::new();
    for (z, y3) in triple_amalgamations(&g1, &f1, level)? {
        let k = retag(&y3, &[("1:", SOURCE_TAG), ("3:", TARGET_TAG)]).canonical_key().to_string();
        if *p == ParamSpec::Symbolic {
            factored.entry(k).or_default().push(mu_factored(&z).ratio(&mu_factored(&y3)));
        } else {
            let c = mu_embedding(&y3, &z, p)?.to_ratfun();
            let e = acc.entry(k).or_insert_with(RatFun::zero);
            *e = &*e + &c;
        }
    }
    for (k, terms) in factored {
        acc.insert(k, sum_factored(&terms));
    }
    let out: Product = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    product_cache().lock().expect("cache lock").insert(key, out.clone());
    Ok(out)
}

fn check_levels(e: &HomElement, n: usize) -> Result<()> {
    for (w, _) in e.wholes() {
        if w.level() > n {
            return Err(Error::LevelExceeded { tree: w.to_string(), level: w.level(), n });
        }
    }
    Ok(())
}

/// `f . g`, applying `g` first.
pub fn compose(f: &HomElement, g: &HomElement, p: &ParamSpec) -> Result<HomElement> {
    p.validate()?;
    if g.target != f.source {
        return Err(Error::Incompatible(format!("target {} vs source {}", g.target, f.source)));
    }
    if let ParamSpec::FiniteLevel(n) = p {
        check_levels(f, *n)?;
        check_levels(g, *n)?;
    }
    let mut out = HomElement::zero(&g.source, &f.target);
    for (kg, cg) in &g.terms {
        for (kf, cf) in &f.terms {
            let c = cg * cf;
            for (k, v) in basis_product(kg, kf, p)?.iter() {
                out.add_term(k, &(&c * v));
            }
        }
    }
    Ok(out)
}

/// The diagonal coefficient times `mu(T)`.
pub fn categorical_trace(e: &HomElement) -> Result<RatFun> {
    if e.source != e.target {
        return Err(Error::Incompatible("trace needs an endomorphism".into()));
    }
    let id = identity(&e.source);
    let key = id.terms.keys().next().expect("one term");
    Ok(&e.coeff(key) * &mu_symbolic(&e.source))
}

/// Sum of `mu` over the trees on three blocks that restrict to `u` on
/// blocks 1 and 2, to `v` on blocks 1 and 3 and to `w` on blocks 2 and 3,
/// with the number of such trees.
pub fn triple_trace(u: &LeafLabeledTree, v: &LeafLabeledTree, w: &LeafLabeledTree) -> Result<(RatFun, usize)> {
    let u1 = retag(u, &[(SOURCE_TAG, "1:"), (TARGET_TAG, "2:")]);
    let v1 = retag(v, &[(SOURCE_TAG, "1:"), (TARGET_TAG, "3:")]);
    let w1 = retag(w, &[(SOURCE_TAG, "2:"), (TARGET_TAG, "3:")]);
    let wl = w1.labels();
    let mut terms = Vec::new();
    for a in amalgamations(&u1, &v1, None)? {
        if a.whole.restrict(&wl)? == w1 {
            terms.push(mu_factored(&a.whole));
        }
    }
    Ok((sum_factored(&terms), terms.len()))
}

/// Drops terms of level above `n` and evaluates the rest at `t = n`.
pub fn truncate_level(f: &HomElement, n: usize) -> Result<HomElement> {
    if n < 3 {
        return Err(Error::InvalidParam(format!("level {n} < 3")));
    }
    let tn = BigRat::from_integer((n as i64).into());
    let mut out = HomElement::zero(&f.source, &f.target);
    for (w, c) in f.wholes() {
        if w.level() <= n {
            out.add_term(w.canonical_key(), &RatFun::constant(c.evaluate(&tn)?));
        }
    }
    Ok(out)
}

/// Verdict of the Gram determinant test at a numeric parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleVerdict {
    pub semisimple: bool,
    pub determinant_at_t: Option<BigRat>,
    /// First basis tree whose measure vanishes or has a pole at `t`.
    pub witness: Option<String>,
    pub factor: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub is_idempotent: bool,
    pub udim_image: RatFun,
}

/// `End(T)` with its basis of self-amalgamations and cached products.
pub struct ArborealAlgebra {
    pub tree: LeafLabeledTree,
    pub basis: Vec<LeafLabeledTree>,
    keys: Vec<String>,
    index: HashMap<String, usize>,
    identity: usize,
    /// `table[i][j]` holds `phi_i . phi_j` in coordinates.
    table: Vec<Vec<Vec<(usize, RatFun)>>>,
}

impl ArborealAlgebra {
    pub fn new(tree: &LeafLabeledTree) -> Result<Self> {
        let basis = hom_basis(tree, tree, None)?;
        let keys: Vec<String> = basis.iter().map(|b| b.canonical_key().to_string()).collect();
        let index: HashMap<String, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let id = identity(tree);
        let identity = index[id.terms.keys().next().expect("one term")];
        let n = keys.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let products: Vec<Result<Vec<(usize, RatFun)>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let prod = basis_product(&keys[j], &keys[i], &ParamSpec::Symbolic)?;
                Ok(prod.iter().map(|(k, c)| (index[k], c.clone())).collect())
            })
            .collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (&(i, j), r) in pairs.iter().zip(products) {
            table[i][j] = r?;
        }
        Ok(ArborealAlgebra { tree: tree.clone(), basis, keys, index, identity, table })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn index_of(&self, whole: &LeafLabeledTree) -> Option<usize> {
        self.index.get(whole.canonical_key()).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn basis_element(&self, i: usize) -> HomElement {
        self.element(&(0..self.dim()).map(|j| RatFun::from_int((i == j) as i64)).collect::<Vec<_>>())
    }

    pub fn one(&self) -> HomElement {
        self.basis_element(self.identity)
    }

    pub fn element(&self, coords: &[RatFun]) -> HomElement {
        let mut out = HomElement::zero(&self.tree, &self.tree);
        for (k, c) in self.keys.iter().zip(coords) {
            if !c.is_zero() {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    pub fn coords(&self, e: &HomElement) -> Result<Vec<RatFun>> {
        if e.source != self.tree || e.target != self.tree {
            return Err(Error::Incompatible(format!("{e:?} is not an endomorphism of {}", self.tree)));
        }
        let mut out = vec![RatFun::zero(); self.dim()];
        for (k, c) in &e.terms {
            let i = *self.index.get(k).ok_or_else(|| Error::Incompatible(format!("{k} is not a basis tree")))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    fn mul_coords(&self, a: &[RatFun], b: &[RatFun]) -> Vec<RatFun> {
        let mut out = vec![RatFun::zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    /// `a . b` from the cached table.
    pub fn mul(&self, a: &HomElement, b: &HomElement) -> Result<HomElement> {
        Ok(self.element(&self.mul_coords(&self.coords(a)?, &self.coords(b)?)))
    }

    pub fn pow(&self, a: &HomElement, k: u32) -> Result<HomElement> {
        let base = self.coords(a)?;
        let mut acc = self.coords(&self.one())?;
        for _ in 0..k {
            acc = self.mul_coords(&acc, &base);
        }
        Ok(self.element(&acc))
    }

    pub fn trace(&self, a: &HomElement) -> Result<RatFun> {
        let c = self.coords(a)?;
        Ok(&c[self.identity] * &mu_symbolic(&self.tree))
    }

    pub fn transpose_index(&self, i: usize) -> usize {
        let t = HomElement::basis(&self.tree, &self.tree, &self.basis[i]).expect("basis tree").transpose();
        self.index[t.terms.keys().next().expect("one term")]
    }

    /// `<phi_i, phi_j> = utr(phi_i phi_j)` from products.
    pub fn gram_matrix(&self) -> Vec<Vec<RatFun>> {
        let mu_t = mu_symbolic(&self.tree);
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        self.table[i][j]
                            .iter()
                            .find(|(k, _)| *k == self.identity)
                            .map(|(_, c)| c * &mu_t)
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect()
    }

    /// The pairing predicted by the transpose rule: `mu(U)` at `(U, U^t)`.
    pub fn gram_by_rule(&self) -> Vec<Vec<RatFun>> {
        let n = self.dim();
        let mut g = vec![vec![RatFun::zero(); n]; n];
        for i in 0..n {
            g[i][self.transpose_index(i)] = mu_symbolic(&self.basis[i]);
        }
        g
    }

    pub fn gram_determinant(&self) -> RatFun {
        determinant(&self.gram_matrix())
    }

    pub fn basis_mu_product(&self) -> RatFun {
        self.basis.iter().map(mu_symbolic).product()
    }

    pub fn is_semisimple_at(&self, t: &BigRat) -> Result<SemisimpleVerdict> {
        ParamSpec::Numeric(t.clone()).validate()?;
        let det = self.gram_determinant().evaluate(t).ok();
        let semisimple = det.as_ref().is_some_and(|d| !d.is_zero());
        let mut witness = None;
        let mut factor = None;
        if !semisimple {
            for b in &self.basis {
                let bad = mu_symbolic(b).evaluate(t).map_or(true, |v| v.is_zero());
                if bad {
                    witness = Some(b.to_string());
                    factor = Some(if t.is_zero() { "t".to_string() } else { format!("t-{t}") });
                    break;
                }
            }
        }
        Ok(SemisimpleVerdict { semisimple, determinant_at_t: det, witness, factor })
    }

    /// Coefficients `c_0..c_k` (low to high, `c_k = 1`) of the minimal
    /// polynomial of `e`.
    pub fn minimal_polynomial(&self, e: &HomElement) -> Result<Vec<RatFun>> {
        let base = self.coords(e)?;
        let mut finder = DependenceFinder::new();
        let mut power = self.coords(&self.one())?;
        loop {
            if let Some(c) = finder.push(power.clone()) {
                let mut poly: Vec<RatFun> = c.iter().map(|x| -x).collect();
                poly.push(RatFun::one());
                return Ok(poly);
            }
            power = self.mul_coords(&power, &base);
        }
    }

    pub fn idempotent_report(&self, e: &HomElement) -> Result<IdempotentReport> {
        let sq = self.mul(e, e)?;
        Ok(IdempotentReport { is_idempotent: sq == *e, udim_image: self.trace(e)? })
    }

    /// Coefficients of `phi_v phi_w` read off from traces of triple products.
    pub fn structure_constants_by_trace(&self, v: usize, w: usize) -> Result<Vec<RatFun>> {
        let vt = &self.basis[self.transpose_index(v)];
        (0..self.dim())
            .map(|i| {
                let ut = &self.basis[self.transpose_index(i)];
                let (s, _) = triple_trace(ut, vt, &self.basis[w])?;
                s.checked_div(&mu_symbolic(&self.basis[i]))
            })
            .collect()
    }

    /// Coefficients of `phi_v phi_w` from the cached table.
    pub fn structure_constants(&self, v: usize, w: usize) -> Vec<RatFun> {
        let mut out = vec![RatFun::zero(); self.dim()];
        for (k, c) in &self.table[v][w] {
            out[*k] = c.clone();
        }
        out
    }

    /// `e / k` where `e^2 = k e`.
    pub fn normalize_idempotent(&self, e: &HomElement) -> Result<HomElement> {
        let sq = self.mul(e, e)?;
        let (key, c) = e.terms.iter().next().ok_or(Error::DivisionByZero)?;
        let k = sq.coeff(key).checked_div(c)?;
        if sq != e.scale(&k) {
            return Err(Error::InvalidParam("not a multiple of an idempotent".into()));
        }
        Ok(e.scale(&k.inv()?))
    }

    /// Splits the unit `r` of a two-dimensional ideal into the eigen-
    /// idempotents of multiplication by `x`, with their eigenvalues.
    pub fn split_two(&self, r: &HomElement, x: &HomElement) -> Result<[(RatFun, HomElement); 2]> {
        let v1 = self.mul(r, x)?;
        let v2 = self.mul(&v1, x)?;
        let mut finder = DependenceFinder::new();
        finder.push(self.coords(r)?);
        if finder.push(self.coords(&v1)?).is_some() {
            return Err(Error::InvalidParam("multiplication is scalar on the ideal".into()));
        }
        let c = finder
            .push(self.coords(&v2)?)
            .ok_or_else(|| Error::InvalidParam("ideal is not two-dimensional".into()))?;
        let (alpha, beta) = (&c[0], &c[1]);
        let disc = &(beta * beta) + &(alpha * &RatFun::from_int(4));
        let s = disc.sqrt_exact().ok_or_else(|| Error::InvalidParam(format!("discriminant {disc} is not a square")))?;
        let half = RatFun::constant(BigRat::new(1.into(), 2.into()));
        let l1 = &(beta + &s) * &half;
        let l2 = &(beta - &s) * &half;
        let e1 = (&v1 - &r.scale(&l2)).scale(&(&l1 - &l2).inv()?);
        let e2 = (&v1 - &r.scale(&l1)).scale(&(&l2 - &l1).inv()?);
        Ok([(l1, e1), (l2, e2)])
    }
}

/// Minimal polynomial coefficients rendered as a polynomial in `x`.
pub fn format_polynomial(coeffs: &[RatFun]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let body = if mono.is_empty() {
            format!("({c})")
        } else if c.is_one() {
            mono
        } else {
            format!("({c})*{mono}")
        };
        parts.push(body);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Labels of the source block of a basis tree.
pub fn source_labels(whole: &LeafLabeledTree) -> Vec<Label> {
    whole.labels().into_iter().filter(|l| l.starts_with(SOURCE_TAG)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LeafLabeledTree {
        parse_tree(s).unwrap()
    }

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn hom_dimensions() {
        assert_eq!(hom_basis(&t("x"), &t("(1,2)"), None).unwrap().len(), 3);
        assert_eq!(hom_basis(&t("()"), &t("((a,b),(c,d))"), None).unwrap().len(), 1);
        assert_eq!(hom_basis(&t("(1,2)"), &t("(1,2)"), None).unwrap().len(), 10);
        assert_eq!(hom_basis(&t("x"), &t("x"), None).unwrap().len(), 2);
        let big = t("(a,b,c,d,e,f,g)");
        assert!(matches!(hom_basis(&big, &big, None), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn end_t1() {
        let x = t("x");
        let alg = ArborealAlgebra::new(&x).unwrap();
        assert_eq!(alg.dim(), 2);
        let id = alg.one();
        for i in 0..2 {
            let b = alg.basis_element(i);
            assert_eq!(alg.mul(&id, &b).unwrap(), b);
            assert_eq!(alg.mul(&b, &id).unwrap(), b);
        }
        assert_eq!(alg.trace(&id).unwrap(), rf("t/t-1"));
        assert_eq!(alg.gram_matrix(), alg.gram_by_rule());
        let det = alg.gram_determinant();
        assert!(det == alg.basis_mu_product() || det == -alg.basis_mu_product());
        let e0 = alg.element(&[RatFun::one(), RatFun::one()]).scale(&rf("t-1/t"));
        assert!(alg.idempotent_report(&e0).unwrap().is_idempotent);
        assert_eq!(alg.trace(&e0).unwrap(), RatFun::one());
    }

    #[test]
    fn compose_matches_table() {
        let y = t("(1,2)");
        let alg = ArborealAlgebra::new(&y).unwrap();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let (a, b) = (alg.basis_element(i), alg.basis_element(j));
                assert_eq!(compose(&a, &b, &ParamSpec::Symbolic).unwrap(), alg.mul(&a, &b).unwrap());
            }
        }
    }

    #[test]
    fn embeddings_and_transpose() {
        let (sub, sup) = (t("(a,b)"), t("(a,b,c)"));
        let (beta, alpha) = embedding_morphisms(&sub, &sup).unwrap();
        assert_eq!(beta.transpose(), alpha);
        let (b0, a0) = embedding_morphisms(&sub, &sub).unwrap();
        assert_eq!(b0, identity(&sub));
        assert_eq!(a0, identity(&sub));
        assert!(embedding_morphisms(&t("((a,b),(c,d))"), &t("((a,c),(b,d))")).is_err());
    }

    #[test]
    fn truncation_keeps_low_levels() {
        let y = t("(1,2)");
        let alg = ArborealAlgebra::new(&y).unwrap();
        let all: HomElement = (0..alg.dim()).fold(HomElement::zero(&y, &y), |acc, i| &acc + &alg.basis_element(i));
        assert_eq!(truncate_level(&all, 3).unwrap().terms.len(), 9);
        assert_eq!(truncate_level(&all, 6).unwrap().terms.len(), 10);
        assert_eq!(truncate_level(&alg.one(), 3).unwrap(), alg.one());
    }

    #[test]
    fn polynomial_format() {
        assert_eq!(format_polynomial(&[RatFun::from_int(-1), RatFun::one()]), "x + (-1)");
    }
}
