//! The measure `mu` on trees and embeddings.
//!
//! `mu(T) = (-1)^n(T) * t * prod_nodes [t]_v(x) / (t-1)^l(T)`, with the empty
//! tree sent to 1. Embedding values are ratios; finite-parameter values are
//! obtained by evaluating the symbolic ratio.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::amalgam::amalgamations;
use crate::arith::{int, BigRat, Poly, RatFun};
use crate::error::{Error, Result};
use crate::theta::{mark_type, Generator, MarkType};
use crate::tree::{enumerate_trees, parse_tree, Label, LeafLabeledTree, DEFAULT_LABEL_CAP};

/// Evaluation mode for measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSpec {
    Symbolic,
    Numeric(BigRat),
    FiniteLevel(usize),
    Infinity,
}

impl ParamSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ParamSpec::Numeric(t) if t.is_one() => Err(Error::InvalidParam("t = 1 is excluded".into())),
            ParamSpec::FiniteLevel(n) if *n < 3 => Err(Error::InvalidParam(format!("level {n} < 3"))),
            _ => Ok(()),
        }
    }
}

/// A symbolic or exact numeric measure value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureValue {
    Symbolic(RatFun),
    Exact(BigRat),
}

impl MeasureValue {
    pub fn is_zero(&self) -> bool {
        match self {
            MeasureValue::Symbolic(f) => f.is_zero(),
            MeasureValue::Exact(q) => q.is_zero(),
        }
    }

    pub fn to_ratfun(&self) -> RatFun {
        match self {
            MeasureValue::Symbolic(f) => f.clone(),
            MeasureValue::Exact(q) => RatFun::constant(q.clone()),
        }
    }

    fn lift(p: &ParamSpec, f: RatFun) -> Self {
        match p {
            ParamSpec::Symbolic => MeasureValue::Symbolic(f),
            _ => MeasureValue::Exact(f.as_constant().expect("constant value")),
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValue::Symbolic(r) => write!(f, "{r}"),
            MeasureValue::Exact(q) => write!(f, "{q}"),
        }
    }
}

static PERTURB: AtomicBool = AtomicBool::new(false);

/// Test hook: when enabled, `mu` of every tree with a node is doubled.
pub fn set_perturbation(on: bool) {
    PERTURB.store(on, Ordering::SeqCst);
}

pub fn perturbation_enabled() -> bool {
    PERTURB.load(Ordering::Relaxed)
}

/// `scalar * prod_k (t-k)^e_k` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub scalar: BigRat,
    pub powers: BTreeMap<i64, i32>,
}

impl Factored {
    pub fn one() -> Self {
        Factored { scalar: BigRat::one(), powers: BTreeMap::new() }
    }

    fn bump(&mut self, k: i64, e: i32) {
        let x = self.powers.entry(k).or_insert(0);
        *x += e;
        if *x == 0 {
            self.powers.remove(&k);
        }
    }

    pub fn ratio(&self, o: &Factored) -> Factored {
        let mut out = Factored { scalar: &self.scalar / &o.scalar, powers: self.powers.clone() };
        for (&k, &e) in &o.powers {
            out.bump(k, -e);
        }
        out
    }

    pub fn to_ratfun(&self) -> RatFun {
        sum_factored(std::slice::from_ref(self))
    }
}

/// Sum over a common denominator, normalized once.
pub fn sum_factored(terms: &[Factored]) -> RatFun {
    if terms.is_empty() {
        return RatFun::zero();
    }
    let mut low: BTreeMap<i64, i32> = BTreeMap::new();
    for f in terms {
        for (&k, &e) in &f.powers {
            let x = low.entry(k).or_insert(0);
            *x = (*x).min(e);
        }
    }
    for x in low.values_mut() {
        *x = (*x).min(0);
    }
    let lift = |powers: &BTreeMap<i64, i32>| -> Poly {
        let mut p = Poly::one();
        for (&k, &min) in &low {
            let e = powers.get(&k).copied().unwrap_or(0) - min;
            if e > 0 {
                p = &p * &Poly::linear_root(k).pow(e as u32);
            }
        }
        p
    };
    let mut num = Poly::zero();
    for f in terms {
        num = &num + &lift(&f.powers).scale(&f.scalar);
    }
    let mut den = Poly::one();
    for (&k, &min) in &low {
        if min < 0 {
            den = &den * &Poly::linear_root(k).pow((-min) as u32);
        }
    }
    RatFun::new(num, den).expect("nonzero denominator")
}

/// `mu(T)` in factored form.
pub fn mu_factored(tree: &LeafLabeledTree) -> Factored {
    let mut f = Factored::one();
    if tree.is_empty() {
        return f;
    }
    let st = tree.stats();
    f.bump(0, 1);
    for &v in &st.valences {
        for k in 2..v as i64 {
            f.bump(k, 1);
        }
    }
    if st.node_count % 2 == 1 {
        f.scalar = -f.scalar;
    }
    if PERTURB.load(Ordering::Relaxed) && st.node_count > 0 {
        f.scalar *= int(2);
    }
    f.bump(1, -(st.leaf_count as i32));
    f
}

/// `mu(T)` as a rational function of `t`.
pub fn mu_symbolic(tree: &LeafLabeledTree) -> RatFun {
    mu_factored(tree).to_ratfun()
}

/// `mu` of the one-point extension of the given type.
pub fn generator_symbolic(kind: MarkType) -> RatFun {
    let (sup, sub) = kind.standard_pair();
    &mu_symbolic(&sup) / &mu_symbolic(&sub)
}

fn check_level(t: &LeafLabeledTree, n: usize) -> Result<()> {
    let level = t.level();
    if level > n {
        return Err(Error::LevelExceeded { tree: t.to_string(), level, n });
    }
    Ok(())
}

/// `mu` of the embedding `sub -> sup`, where `sub` is the restriction of
/// `sup` to the labels of `sub`.
pub fn mu_embedding(sub: &LeafLabeledTree, sup: &LeafLabeledTree, p: &ParamSpec) -> Result<MeasureValue> {
    p.validate()?;
    let labels = sub.labels();
    let induced = sup.restrict(&labels).map_err(|_| Error::NotEmbedding(format!("{sub} in {sup}")))?;
    if induced != *sub {
        return Err(Error::NotEmbedding(format!("{sub} in {sup}")));
    }
    let ratio = || mu_factored(sup).ratio(&mu_factored(sub)).to_ratfun();
    match p {
        ParamSpec::Symbolic => Ok(MeasureValue::Symbolic(ratio())),
        ParamSpec::Numeric(t) => Ok(MeasureValue::Exact(ratio().evaluate(t)?)),
        ParamSpec::FiniteLevel(n) => {
            check_level(sub, *n)?;
            check_level(sup, *n)?;
            Ok(MeasureValue::Exact(ratio().evaluate(&int(*n as i64))?))
        }
        ParamSpec::Infinity => {
            let order: Vec<Label> = sup
                .leaf_label_sets()
                .into_iter()
                .filter(|ls| ls.iter().all(|l| !labels.contains(l)))
                .map(|ls| ls[0].clone())
                .collect();
            infinity_along(sup, &order).map(MeasureValue::Exact)
        }
    }
}

/// Product of generator limits at infinity along the deletion of the leaves
/// carrying `order`, taken in sequence starting from `sup`.
pub fn infinity_along(sup: &LeafLabeledTree, order: &[Label]) -> Result<BigRat> {
    let mut cur = sup.clone();
    let mut acc = BigRat::one();
    for a in order {
        let kind = mark_type(&cur, a)?;
        acc *= generator_at_infinity(kind);
        cur = cur.delete_leaf(a)?;
    }
    Ok(acc)
}

pub fn generator_at_infinity(kind: MarkType) -> BigRat {
    generator_symbolic(kind).limit_at_infinity().expect("generators are bounded at infinity")
}

/// Generator values `x_1..x_{m_max}`, `y`, `z` computed from embedding values.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    pub x: Vec<MeasureValue>,
    pub y: MeasureValue,
    pub z: MeasureValue,
}

impl GeneratorTable {
    pub fn get(&self, g: Generator) -> &MeasureValue {
        match g {
            Generator::X(m) => &self.x[m - 1],
            Generator::Y => &self.y,
            Generator::Z => &self.z,
        }
    }
}

pub fn theta_generator_values(p: &ParamSpec, m_max: usize) -> Result<GeneratorTable> {
    if m_max < 4 {
        return Err(Error::InvalidParam(format!("m_max = {m_max} < 4")));
    }
    let pair = |k: MarkType| -> Result<MeasureValue> {
        let (sup, sub) = k.standard_pair();
        mu_embedding(&sub, &sup, p)
    };
    let x = (1..=m_max).map(|m| pair(MarkType::I(m))).collect::<Result<Vec<_>>>()?;
    Ok(GeneratorTable { x, y: pair(MarkType::II)?, z: pair(MarkType::III)? })
}

fn mul_values(p: &ParamSpec, a: &MeasureValue, b: &MeasureValue) -> MeasureValue {
    MeasureValue::lift(p, &a.to_ratfun() * &b.to_ratfun())
}

/// `mu(T0->T1) mu(T0->T2) - sum_i mu(T0->U_i)` over the amalgamations `U_i`
/// of `t1` and `t2` over their shared labels.
pub fn verify_amalgamation_equation(t1: &LeafLabeledTree, t2: &LeafLabeledTree, p: &ParamSpec) -> Result<MeasureValue> {
    let base: BTreeSet<Label> = t1.labels().intersection(&t2.labels()).cloned().collect();
    let t0 = t1.restrict(&base)?;
    let level = match p {
        ParamSpec::FiniteLevel(n) => Some(*n),
        _ => None,
    };
    let lhs = mul_values(p, &mu_embedding(&t0, t1, p)?, &mu_embedding(&t0, t2, p)?);
    let mut acc = lhs.to_ratfun();
    for a in amalgamations(t1, t2, level)? {
        acc = &acc - &mu_embedding(&t0, &a.whole, p)?.to_ratfun();
    }
    Ok(MeasureValue::lift(p, acc))
}

/// One base diagram: two trees agreeing on their shared labels.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub left: LeafLabeledTree,
    pub right: LeafLabeledTree,
}

/// Every diagram with at most `max_total` labels in total, built from base
/// labels `b*`, left-only labels `p*` and right-only labels `q*`.
pub fn diagrams_up_to(max_total: usize) -> Result<Vec<Diagram>> {
    let names = |pre: &str, n: usize| -> BTreeSet<Label> { (0..n).map(|i| format!("{pre}{i}")).collect() };
    let mut out = Vec::new();
    for k in 0..=max_total {
        for n1 in 0..=(max_total - k) {
            for n2 in 0..=(max_total - k - n1) {
                let base = names("b", k);
                let left: BTreeSet<Label> = base.union(&names("p", n1)).cloned().collect();
                let right: BTreeSet<Label> = base.union(&names("q", n2)).cloned().collect();
                let lefts = enumerate_trees(&left, None, DEFAULT_LABEL_CAP)?;
                let rights = enumerate_trees(&right, None, DEFAULT_LABEL_CAP)?;
                for l in &lefts {
                    let lb = l.restrict(&base)?;
                    for r in &rights {
                        if r.restrict(&base)? == lb {
                            out.push(Diagram { left: l.clone(), right: r.clone() });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Result of an exhaustive sweep of the amalgamation equation.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub diagrams: usize,
    pub failures: Vec<(String, String, String)>,
}

pub fn measure_axiom_sweep(max_total: usize, p: &ParamSpec) -> Result<SweepReport> {
    let ds = diagrams_up_to(max_total)?;
    let results: Vec<Result<Option<(String, String, String)>>> = ds
        .par_iter()
        .map(|d| {
            if let ParamSpec::FiniteLevel(n) = p {
                if d.left.level() > *n || d.right.level() > *n {
                    return Ok(None);
                }
            }
            let r = verify_amalgamation_equation(&d.left, &d.right, p)?;
            Ok((!r.is_zero()).then(|| (d.left.to_string(), d.right.to_string(), r.to_string())))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(SweepReport { diagrams: ds.len(), failures })
}

/// Convenience: parse then take `mu`.
pub fn mu_of(text: &str) -> Result<RatFun> {
    Ok(mu_symbolic(&parse_tree(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn t(s: &str) -> LeafLabeledTree {
        parse_tree(s).unwrap()
    }

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    fn tk(k: i64) -> RatFun {
        RatFun::t_minus(k)
    }

    #[test]
    fn formula_examples() {
        let tau = RatFun::t();
        let star3 = -(&(&tau * &tk(2)) / &tk(1).pow(3).unwrap());
        assert_eq!(mu_symbolic(&t("(a,b,c)")), star3);
        let t5 = &(&tau * &tk(2).pow(2).unwrap()) / &tk(1).pow(4).unwrap();
        assert_eq!(mu_symbolic(&t("(a,b,(c,d))")), t5);
        let t9 = -(&[&tau, &tk(2), &tk(3), &tk(4), &tk(5)].into_iter().cloned().product::<RatFun>() / &tk(1).pow(6).unwrap());
        assert_eq!(mu_symbolic(&t("(a,b,c,d,e,f)")), t9);
        assert_eq!(mu_symbolic(&t("()")), RatFun::one());
        assert_eq!(mu_symbolic(&t("a")), &tau / &tk(1));
        assert_eq!(mu_symbolic(&t("(a,b)")), &tau / &tk(1).pow(2).unwrap());
    }

    #[test]
    fn embedding_values() {
        let z = t("((a,b),c)");
        assert_eq!(mu_embedding(&z, &z, &ParamSpec::Symbolic).unwrap(), MeasureValue::Symbolic(RatFun::one()));
        let sub = t("(a,b)");
        assert_eq!(
            mu_embedding(&sub, &z, &ParamSpec::Symbolic).unwrap().to_ratfun(),
            -(&tk(2) / &tk(1))
        );
        assert_eq!(mu_embedding(&sub, &z, &ParamSpec::Numeric(rat(1, 2))).unwrap(), MeasureValue::Exact(int(-3)));
        assert!(mu_embedding(&t("(a,c)"), &t("((a,b),(c,d))"), &ParamSpec::Symbolic).is_ok());
        assert!(matches!(
            mu_embedding(&t("((a,c),(b,d))"), &t("((a,b),(c,d))"), &ParamSpec::Symbolic),
            Err(Error::NotEmbedding(_))
        ));
        assert!(matches!(
            mu_embedding(&t("a"), &t("(a,b,c,d,e)"), &ParamSpec::FiniteLevel(4)),
            Err(Error::LevelExceeded { .. })
        ));
        assert!(mu_embedding(&sub, &z, &ParamSpec::Numeric(int(1))).is_err());
    }

    #[test]
    fn generator_table() {
        let g = theta_generator_values(&ParamSpec::Symbolic, 5).unwrap();
        assert_eq!(g.get(Generator::X(1)).to_ratfun(), &RatFun::t() / &tk(1));
        assert_eq!(g.get(Generator::X(2)).to_ratfun(), rf("1 / t-1"));
        assert_eq!(g.get(Generator::X(5)).to_ratfun(), &tk(4) / &tk(1));
        assert_eq!(g.y.to_ratfun(), -(&tk(2) / &tk(1)));
        assert_eq!(g.z.to_ratfun(), -(&tk(2) / &tk(1)));
        let inf = theta_generator_values(&ParamSpec::Infinity, 6).unwrap();
        let vals: Vec<MeasureValue> = inf.x.clone();
        let expect = [1, 0, -1, 1, 1, 1];
        for (v, e) in vals.iter().zip(expect) {
            assert_eq!(*v, MeasureValue::Exact(int(e)));
        }
        assert_eq!(inf.y, MeasureValue::Exact(int(-1)));
        assert_eq!(inf.z, MeasureValue::Exact(int(-1)));
    }

    #[test]
    fn small_equations() {
        let r = verify_amalgamation_equation(&t("(1,2)"), &t("(3,4,5)"), &ParamSpec::Symbolic).unwrap();
        assert!(r.is_zero());
        let b = t("((a,b),(c,d))");
        assert!(verify_amalgamation_equation(&b, &b, &ParamSpec::Symbolic).unwrap().is_zero());
        for p in [ParamSpec::Numeric(rat(7, 2)), ParamSpec::FiniteLevel(3), ParamSpec::Infinity] {
            let r = verify_amalgamation_equation(&t("(1,2)"), &t("(1,3,4)"), &p).unwrap();
            assert!(r.is_zero(), "{p:?}");
        }
    }

    #[test]
    fn sweep_four_labels() {
        for p in [ParamSpec::Symbolic, ParamSpec::FiniteLevel(3), ParamSpec::Infinity] {
            let rep = measure_axiom_sweep(4, &p).unwrap();
            assert!(rep.diagrams > 0);
            assert!(rep.failures.is_empty(), "{p:?}: {:?}", rep.failures);
        }
    }
}
