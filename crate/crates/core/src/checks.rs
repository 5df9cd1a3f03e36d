//! The acceptance checks `c01`..`c12`, each reporting expected against
//! computed values.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Display;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::amalgam::{amalgamations, amalgamations_brute, count_by_shape, self_amalgamations, triple_amalgamations};
use crate::arith::{int, parse_factored, rat, RatFun};
use crate::category::{categorical_trace, compose, hom_basis, identity, triple_trace, truncate_level, ArborealAlgebra, HomElement};
use crate::error::{Error, Result};
use crate::fixtures::{EndT2, PlusPart};
use crate::measure::{measure_axiom_sweep, mu_embedding, mu_symbolic, theta_generator_values, verify_amalgamation_equation, ParamSpec};
use crate::theta::{
    mark_type, minimize_marked, mu_eval, presentation_relations, separated, separated_brute, theta_eval, theta_image,
    u_specialization, Generator,
};
use crate::tree::{enumerate_trees, parse_tree, Label, LeafLabeledTree, DEFAULT_LABEL_CAP};

/// One compared quantity.
#[derive(Debug, Clone)]
pub struct Item {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: &'static str,
    pub scope: &'static str,
    pub title: &'static str,
    pub items: Vec<Item>,
    pub error: Option<String>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.items.iter().all(|i| i.pass)
    }

    pub fn summary_line(&self) -> String {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let failed: Vec<&str> = self.items.iter().filter(|i| !i.pass).map(|i| i.name.as_str()).collect();
        let mut line = format!("{verdict} {} [{}] {} ({} items)", self.id, self.scope, self.title, self.items.len());
        if let Some(e) = &self.error {
            line.push_str(&format!(": error: {e}"));
        } else if !failed.is_empty() {
            line.push_str(&format!(": failed: {}", failed.join(", ")));
        }
        line
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|i| json!({"name": i.name, "expected": i.expected, "computed": i.computed, "pass": i.pass}))
            .collect();
        json!({
            "id": self.id,
            "scope": self.scope,
            "title": self.title,
            "pass": self.pass(),
            "error": self.error,
            "items": items,
        })
    }
}

#[derive(Default)]
struct Ctx {
    items: Vec<Item>,
}

impl Ctx {
    fn eq<T: PartialEq + Display>(&mut self, name: &str, expected: T, computed: T) {
        let pass = expected == computed;
        self.items.push(Item { name: name.into(), expected: expected.to_string(), computed: computed.to_string(), pass });
    }

    fn rf(&mut self, name: &str, expected: &str, computed: &RatFun) {
        let e = parse_factored(expected).expect("expected values parse");
        let pass = e == *computed;
        self.items.push(Item {
            name: name.into(),
            expected: e.display_factored(),
            computed: computed.display_factored(),
            pass,
        });
    }

    fn truth(&mut self, name: &str, expected: &str, computed: String, pass: bool) {
        self.items.push(Item { name: name.into(), expected: expected.into(), computed, pass });
    }
}

type Runner = fn(&mut Ctx) -> Result<()>;

pub struct Check {
    pub id: &'static str,
    pub scope: &'static str,
    pub title: &'static str,
    run: Runner,
}

pub const SCOPES: &[&str] = &["amalgamation", "theta", "example", "algebra", "truncation", "properties"];

pub const CHECKS: &[Check] = &[
    Check { id: "c01", scope: "amalgamation", title: "amalgamation counts", run: c01 },
    Check { id: "c02", scope: "amalgamation", title: "amalgamation equation sweep", run: c02 },
    Check { id: "c03", scope: "theta", title: "generator table and relations", run: c03 },
    Check { id: "c04", scope: "theta", title: "separation and minimal marked trees", run: c04 },
    Check { id: "c05", scope: "theta", title: "finite-level vanishing", run: c05 },
    Check { id: "c06", scope: "example", title: "triple amalgamation example", run: c06 },
    Check { id: "c07", scope: "algebra", title: "dimensions", run: c07 },
    Check { id: "c08", scope: "algebra", title: "traces of triple products", run: c08 },
    Check { id: "c09", scope: "algebra", title: "algebra identities", run: c09 },
    Check { id: "c10", scope: "algebra", title: "idempotents and dimensions", run: c10 },
    Check { id: "c11", scope: "truncation", title: "truncation and Gram determinant", run: c11 },
    Check { id: "c12", scope: "properties", title: "randomized properties", run: c12 },
];

pub fn run_check(c: &Check) -> CheckReport {
    let mut ctx = Ctx::default();
    let error = (c.run)(&mut ctx).err().map(|e| e.to_string());
    CheckReport { id: c.id, scope: c.scope, title: c.title, items: ctx.items, error }
}

/// Checks selected by `all`, a scope name or a check id.
pub fn select(scope: &str) -> Result<Vec<&'static Check>> {
    let chosen: Vec<&Check> = CHECKS.iter().filter(|c| scope == "all" || c.scope == scope || c.id == scope).collect();
    if chosen.is_empty() {
        return Err(Error::InvalidParam(format!("unknown scope `{scope}`")));
    }
    Ok(chosen)
}

pub fn run_scope(scope: &str) -> Result<Vec<CheckReport>> {
    Ok(select(scope)?.into_iter().map(run_check).collect())
}

fn t(s: &str) -> LeafLabeledTree {
    parse_tree(s).expect("literal trees parse")
}

fn numbered(k: usize) -> BTreeSet<Label> {
    (1..=k).map(|i| i.to_string()).collect()
}

fn trees_up_to(max_leaves: usize) -> Result<Vec<LeafLabeledTree>> {
    let mut out = Vec::new();
    for k in 1..=max_leaves {
        out.extend(enumerate_trees(&numbered(k), None, DEFAULT_LABEL_CAP)?);
    }
    Ok(out)
}

fn c01(ctx: &mut Ctx) -> Result<()> {
    let (e, s) = (t("(1,2)"), t("(3,4,5)"));
    let all = amalgamations(&e, &s, None)?;
    ctx.eq("count over the empty base", 56, all.len());
    let brute = amalgamations_brute(&e, &s, None, DEFAULT_LABEL_CAP)?;
    ctx.truth("brute-force engine agrees", "equal", format!("{} trees", brute.len()), brute == all);
    let mut shapes: Vec<usize> = count_by_shape(&e, &s, None)?.into_values().collect();
    shapes.sort_unstable();
    ctx.eq("counts by shape", "[1, 6, 6, 10, 15, 18]".to_string(), format!("{shapes:?}"));
    ctx.eq("count over a one-point base", 6, amalgamations(&e, &t("(1,4,5)"), None)?.len());
    Ok(())
}

fn c02(ctx: &mut Ctx) -> Result<()> {
    let sym = ParamSpec::Symbolic;
    let r = verify_amalgamation_equation(&t("(1,2)"), &t("(3,4,5)"), &sym)?;
    ctx.rf("displayed equation residual", "0", &r.to_ratfun());
    let r = verify_amalgamation_equation(&t("(1,2)"), &t("(1,4,5)"), &sym)?;
    ctx.rf("one-point base residual", "0", &r.to_ratfun());
    let sweep = measure_axiom_sweep(6, &sym)?;
    let first = sweep.failures.first().map(|f| format!(" first: {} | {} -> {}", f.0, f.1, f.2)).unwrap_or_default();
    ctx.truth(
        "diagrams with at most 6 labels",
        "0 nonzero residuals",
        format!("{} nonzero of {}{first}", sweep.failures.len(), sweep.diagrams),
        sweep.failures.is_empty(),
    );
    Ok(())
}

fn c03(ctx: &mut Ctx) -> Result<()> {
    let table = theta_generator_values(&ParamSpec::Symbolic, 5)?;
    let expect = [
        (Generator::X(1), "t / (t-1)"),
        (Generator::X(2), "1 / (t-1)"),
        (Generator::X(3), "-(t-2) / (t-1)"),
        (Generator::X(4), "(t-3) / (t-1)"),
        (Generator::X(5), "(t-4) / (t-1)"),
        (Generator::Y, "-(t-2) / (t-1)"),
        (Generator::Z, "-(t-2) / (t-1)"),
    ];
    for (g, e) in expect {
        ctx.rf(&g.to_string(), e, &table.get(g).to_ratfun());
    }
    for r in presentation_relations(5) {
        let th = theta_eval(&r);
        ctx.truth(&format!("theta image of {r}"), "0", th.to_string(), th.is_zero());
        ctx.rf(&format!("measure image of {r}"), "0", &mu_eval(&r)?);
    }
    let u0 = u_specialization();
    let ok = (1..=5)
        .map(Generator::X)
        .chain([Generator::Y, Generator::Z])
        .all(|g| theta_image(g).substitute_u(&u0) == table.get(g).to_ratfun());
    ctx.truth("specialization matches the table", "true", ok.to_string(), ok);
    Ok(())
}

fn c04(ctx: &mut Ctx) -> Result<()> {
    let trees = trees_up_to(6)?;
    let outcome: Vec<Result<(usize, usize, Vec<String>)>> = trees
        .par_iter()
        .map(|tr| {
            let leaves: Vec<Label> = tr.leaf_label_sets().into_iter().map(|ls| ls[0].clone()).collect();
            let mut pairs = 0;
            let mut marks = 0;
            let mut bad = Vec::new();
            for a in &leaves {
                for b in &leaves {
                    if a < b {
                        pairs += 1;
                        if separated(tr, a, b)? != separated_brute(tr, a, b)? {
                            bad.push(format!("separation {tr} {a} {b}"));
                        }
                    }
                }
                marks += 1;
                let (m, _) = minimize_marked(tr, a)?;
                if mark_type(&m, a)? != mark_type(tr, a)? {
                    bad.push(format!("type change {tr} at {a}"));
                }
            }
            Ok((pairs, marks, bad))
        })
        .collect();
    let (mut pairs, mut marks, mut bad) = (0, 0, Vec::new());
    for r in outcome {
        let (p, m, b) = r?;
        pairs += p;
        marks += m;
        bad.extend(b);
    }
    let first = bad.first().cloned().unwrap_or_default();
    ctx.truth("separated agrees with the brute force", "all agree", format!("{pairs} pairs, {} mismatches {first}", bad.iter().filter(|b| b.starts_with("sep")).count()), !bad.iter().any(|b| b.starts_with("sep")));
    ctx.truth("minimization preserves the type", "all preserved", format!("{marks} marked trees"), !bad.iter().any(|b| b.starts_with("type")));
    Ok(())
}

fn c05(ctx: &mut Ctx) -> Result<()> {
    let trees = trees_up_to(6)?;
    for n in 3..=5usize {
        let tn = int(n as i64);
        let mut bad = 0;
        for tr in &trees {
            let zero = mu_symbolic(tr).evaluate(&tn)?.is_zero();
            if zero != (tr.level() > n) {
                bad += 1;
            }
        }
        ctx.truth(&format!("mu at t={n} vanishes iff level > {n}"), "0 exceptions", format!("{bad} exceptions in {}", trees.len()), bad == 0);
    }
    let sweep = measure_axiom_sweep(5, &ParamSpec::FiniteLevel(3))?;
    ctx.truth(
        "level-3 equation at t=3, at most 5 labels",
        "0 nonzero residuals",
        format!("{} nonzero of {}", sweep.failures.len(), sweep.diagrams),
        sweep.failures.is_empty(),
    );
    Ok(())
}

fn c06(ctx: &mut Ctx) -> Result<()> {
    use crate::category::retag;
    let x = t("(s:1,t:1,(s:2,(t:2,(s:3,(t:3,(s:4,t:4))))))");
    let y = t("(s:1,s:2/t:1,((s:3,t:2),(s:4/t:4,t:3)))");
    let x1 = retag(&x, &[("s:", "1:"), ("t:", "2:")]);
    let y1 = retag(&y, &[("s:", "2:"), ("t:", "3:")]);
    let z = t("(1:1,2:1,(1:2,(2:2/3:1,(1:3,((2:3,3:2),((1:4,3:3),2:4/3:4))))))");
    let zbar = t("(1:1,1:2,(3:1,(1:3,(3:2,(3:4,(1:4,3:3))))))");
    ctx.rf("mu(Z)", "t*(t-2)^8 / (t-1)^10", &mu_symbolic(&z));
    ctx.rf("mu(Zbar)", "t*(t-2)^6 / (t-1)^8", &mu_symbolic(&zbar));
    ctx.rf("mu(Zbar -> Z)", "(t-2)^2 / (t-1)^2", &mu_embedding(&zbar, &z, &ParamSpec::Symbolic)?.to_ratfun());
    let triples = triple_amalgamations(&x1, &y1, None)?;
    let found = triples.iter().find(|(w, _)| *w == z);
    ctx.truth("Z is a triple amalgamation", "present", format!("{} candidates", triples.len()), found.is_some());
    let r = found.map(|(_, r)| r.to_string()).unwrap_or_default();
    ctx.eq("restriction of Z to blocks 1 and 3", zbar.to_string(), r);
    Ok(())
}

fn c07(ctx: &mut Ctx) -> Result<()> {
    let (x, y) = (t("x"), t("(1,2)"));
    ctx.eq("self-amalgamations of one leaf", 2, self_amalgamations(&x, None)?.len());
    ctx.eq("self-amalgamations of an edge", 10, self_amalgamations(&y, None)?.len());
    ctx.eq("dim Hom(one leaf, edge)", 3, hom_basis(&x, &y, None)?.len());
    ctx.eq("dim Hom(empty, edge)", 1, hom_basis(&t("()"), &y, None)?.len());
    let alg = ArborealAlgebra::new(&x)?;
    ctx.rf("udim(X)", "t / (t-1)", &alg.trace(&alg.one())?);
    let all = &alg.basis_element(0) + &alg.basis_element(1);
    let l1 = &alg.one() - &all.scale(&mu_symbolic(&x).inv()?);
    ctx.rf("udim(L1)", "1 / (t-1)", &alg.trace(&l1)?);
    Ok(())
}

fn c08(ctx: &mut Ctx) -> Result<()> {
    let ex = EndT2::load()?;
    let g = |n: &str| ex.get(n);
    let b = |n: &str| ex.get(n).wholes().next().expect("basis element").0;
    let (a8, a9, c5) = (g("a8"), g("a9"), g("c5"));
    let (s, n) = triple_trace(&b("a8"), &b("a8"), &b("a8"))?;
    ctx.rf("utr(a8^3) by trees", "t*(t-2)^2*(4*t^2-12*t+9) / (t-1)^6", &s);
    ctx.eq("|S| for a8^3", 16, n);
    ctx.rf("utr(a8^3) by products", "t*(t-2)^2*(4*t^2-12*t+9) / (t-1)^6", &ex.trace(&ex.mul(a8, &ex.mul(a8, a8))));
    let (s, n) = triple_trace(&b("a8"), &b("a9"), &b("a8"))?;
    ctx.rf("utr(a8^2 a9) by trees", "2*t*(t-2)^4 / (t-1)^6", &s);
    ctx.eq("|S| for a8^2 a9", 2, n);
    ctx.rf("utr(a8^2 a9) by products", "2*t*(t-2)^4 / (t-1)^6", &ex.trace(&ex.mul(a8, &ex.mul(a8, a9))));
    let c55 = ex.mul(c5, c5);
    ctx.rf("utr(c5^2 c2)", "2*t*(t-2)*(t-3) / (t-1)^5", &ex.trace(&ex.mul(&c55, g("c2"))));
    ctx.rf("utr(c5^2 c4)", "t*(t-2)^2*(t-3)*(t-6) / (t-1)^6", &ex.trace(&ex.mul(&c55, g("c4"))));
    ctx.rf("utr(c5^3)", "-t*(t-2)*(t-3)*(t-4)*(t-5) / (t-1)^6", &ex.trace(&ex.mul(&c55, c5)));
    for (name, v, want) in [("a3", "a3", 2usize), ("a8", "a8", 3)] {
        let (_, n) = triple_trace(&b("a10"), &b(v), &b("a10"))?;
        ctx.eq(&format!("|S| for a10^2 {name}"), want, n);
    }
    let (_, n) = triple_trace(&b("a10"), &b("a10"), &b("a10"))?;
    ctx.eq("|S| for a10^3", 1, n);
    Ok(())
}

fn show(e: &HomElement) -> String {
    format!("{e:?}")
}

fn c09(ctx: &mut Ctx) -> Result<()> {
    let ex = EndT2::load()?;
    let g = |n: &str| ex.get(n);
    let ff = compose(&ex.f_prime, &ex.f, &ParamSpec::Symbolic)?;
    let want = g("a1") + g("a3");
    ctx.eq("f' f", show(&want), show(&ff));
    let b3 = g("b3");
    let sq = ex.mul(b3, b3);
    let rhs = &(&g("b1").scale(&parse_factored("(t-2)^2/(t-1)^2")?) + &g("b2").scale(&parse_factored("2*(t-2)/(t-1)")?))
        + &g("b3").scale(&parse_factored("(2*t^2-4*t+1)/(t-1)^2")?);
    ctx.eq("b3^2", show(&rhs), show(&sq));
    let mp = ex.alg.minimal_polynomial(b3)?;
    let xi = parse_factored("t*(t-2)/(t-1)^2")?;
    // x (x - 1)(x - xi) = x^3 - (1 + xi) x^2 + xi x
    let want = vec![RatFun::zero(), xi.clone(), -(&RatFun::one() + &xi), RatFun::one()];
    ctx.eq(
        "minimal polynomial of b3",
        crate::category::format_polynomial(&want),
        crate::category::format_polynomial(&mp),
    );
    let z = ex.mul(&(g("b1") + g("b2")), b3);
    ctx.truth("(b1+b2) b3", "0", show(&z), z.is_zero());
    let (a2, a8, a9) = (g("a2"), g("a8"), g("a9"));
    ctx.eq("a2 a8", show(a9), show(&ex.mul(a2, a8)));
    ctx.eq("a8 a2", show(a9), show(&ex.mul(a8, a2)));
    ctx.eq("a9^2", show(&ex.mul(a8, a8)), show(&ex.mul(a9, a9)));
    ctx.eq("a2^2", show(g("a1")), show(&ex.mul(a2, a2)));
    Ok(())
}

fn c10(ctx: &mut Ctx) -> Result<()> {
    let ex = EndT2::load()?;
    let g = |n: &str| ex.get(n);
    let names = ["e1", "e5", "e6"];
    let udims = ["1 / (t-1)", "-(t-2) / 2", "t*(t-2)^2 / 2*(t-1)^2"];
    for (n, u) in names.iter().zip(udims) {
        let r = ex.alg.idempotent_report(g(n))?;
        ctx.truth(&format!("{n} idempotent"), "true", r.is_idempotent.to_string(), r.is_idempotent);
        ctx.rf(&format!("utr({n})"), u, &r.udim_image);
    }
    for a in names {
        for b in names {
            if a != b {
                let p = ex.mul(g(a), g(b));
                ctx.truth(&format!("{a} {b}"), "0", show(&p), p.is_zero());
            }
        }
    }
    let sum = &(g("e1") + g("e5")) + g("e6");
    ctx.eq("e1+e5+e6", show(g("b1")), show(&sum));
    for (n, u) in [("f0", "1"), ("f3", "t*(t-2)^2 / 2*(t-1)^2")] {
        let r = ex.alg.idempotent_report(g(n))?;
        ctx.truth(&format!("{n} idempotent"), "true", r.is_idempotent.to_string(), r.is_idempotent);
        ctx.rf(&format!("utr({n})"), u, &r.udim_image);
    }
    let plus = PlusPart::derive(&ex)?;
    let r = ex.alg.idempotent_report(&plus.f_l1)?;
    ctx.truth("derived L1 idempotent", "true", r.is_idempotent.to_string(), r.is_idempotent);
    ctx.rf("udim(L1) in the plus part", "1 / (t-1)", &r.udim_image);
    let mut derived: Vec<String> = Vec::new();
    for (_, e) in &plus.split {
        let r = ex.alg.idempotent_report(e)?;
        ctx.truth("derived split idempotent", "true", r.is_idempotent.to_string(), r.is_idempotent);
        derived.push(r.udim_image.display_factored());
    }
    derived.sort();
    let mut want = [parse_factored("-t/(t-1)")?.display_factored(),
        parse_factored("-t*(t-3)/2*(t-1)")?.display_factored()];
    want.sort();
    ctx.eq("udim(L2), udim(L4)", want.join(", "), derived.join(", "));
    ctx.rf("udim(L3) = utr(f3)", "t*(t-2)^2 / 2*(t-1)^2", &ex.trace(g("f3")));
    let total = [g("f0").clone(), plus.f_l1.clone(), g("f3").clone(), plus.split[0].1.clone(), plus.split[1].1.clone()]
        .iter()
        .fold(HomElement::zero(&ex.alg.tree, &ex.alg.tree), |acc, e| &acc + e);
    ctx.eq("plus idempotents sum to c1", show(g("c1")), show(&total));
    // the printed f1, f2 and f4 refer to themselves and are not evaluated
    ctx.truth("printed f1, f2, f4", "flagged", "flagged, not asserted".into(), true);
    Ok(())
}

fn c11(ctx: &mut Ctx) -> Result<()> {
    let ex = EndT2::load()?;
    let alg = &ex.alg;
    let n = 3;
    let mut bad = 0;
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let (a, b) = (alg.basis_element(i), alg.basis_element(j));
            let lhs = truncate_level(&alg.mul(&a, &b)?, n)?;
            let rhs = compose(&truncate_level(&a, n)?, &truncate_level(&b, n)?, &ParamSpec::FiniteLevel(n))?;
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    ctx.truth("truncation at 3 is multiplicative", "100 of 100 pairs", format!("{} of 100 pairs", 100 - bad), bad == 0);
    let images: BTreeSet<String> = (0..alg.dim())
        .filter_map(|i| truncate_level(&alg.basis_element(i), n).ok())
        .flat_map(|e| e.terms.into_keys())
        .collect();
    let level3: BTreeSet<String> = hom_basis(&alg.tree, &alg.tree, Some(n))?.iter().map(|w| w.to_string()).collect();
    ctx.truth("truncation at 3 is onto", "images span the level-3 basis", format!("{} of {}", images.len(), level3.len()), images == level3);
    let survivors = (0..alg.dim()).filter(|&i| !truncate_level(&alg.basis_element(i), 6).map(|e| e.is_zero()).unwrap_or(true)).count();
    let level6 = hom_basis(&alg.tree, &alg.tree, Some(6))?.len();
    ctx.truth("truncation at 6 is a basis bijection", "10 -> 10", format!("{survivors} -> {level6}"), survivors == 10 && level6 == 10);
    let det = alg.gram_determinant();
    let prod = alg.basis_mu_product();
    ctx.truth("Gram determinant = +-prod mu(U)", "equal up to sign", det.display_factored(), det == prod || det == -&prod);
    ctx.eq("Gram matrix follows the transpose rule", true, alg.gram_matrix() == alg.gram_by_rule());
    let v = alg.is_semisimple_at(&rat(7, 2))?;
    ctx.eq("semisimple at 7/2", true, v.semisimple);
    let v = alg.is_semisimple_at(&int(3))?;
    ctx.eq("semisimple at 3", false, v.semisimple);
    ctx.eq("witness at 3", g_key(&ex, "a10"), v.witness.unwrap_or_default());
    Ok(())
}

fn g_key(ex: &EndT2, name: &str) -> String {
    ex.get(name).terms.keys().next().cloned().unwrap_or_default()
}

/// Random Hom elements between small trees, with cached bases.
pub struct HomSampler {
    pub objects: Vec<LeafLabeledTree>,
    bases: HashMap<(String, String), Vec<LeafLabeledTree>>,
    pub rng: ChaCha8Rng,
}

impl HomSampler {
    /// Objects with at most `max_leaves` leaves.
    pub fn new(seed: u64, max_leaves: usize) -> Self {
        let objects = ["()", "a", "(a,b)", "(a,b,c)", "((a,b),(c,d))", "(a,b,c,d)"]
            .iter()
            .map(|s| t(s))
            .filter(|o| o.leaf_count() <= max_leaves)
            .collect();
        HomSampler { objects, bases: HashMap::new(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn object(&mut self) -> LeafLabeledTree {
        let i = self.rng.gen_range(0..self.objects.len());
        self.objects[i].clone()
    }

    /// `n` objects with at most `max_total` leaves between them.
    pub fn chain(&mut self, n: usize, max_total: usize) -> Vec<LeafLabeledTree> {
        loop {
            let objs: Vec<LeafLabeledTree> = (0..n).map(|_| self.object()).collect();
            if objs.iter().map(|o| o.leaf_count()).sum::<usize>() <= max_total {
                return objs;
            }
        }
    }

    pub fn basis(&mut self, s: &LeafLabeledTree, t: &LeafLabeledTree) -> Result<Vec<LeafLabeledTree>> {
        let key = (s.to_string(), t.to_string());
        if let Some(b) = self.bases.get(&key) {
            return Ok(b.clone());
        }
        let b = hom_basis(s, t, None)?;
        self.bases.insert(key, b.clone());
        Ok(b)
    }

    /// A combination of up to `terms` basis elements with coefficients of the
    /// form `k` or `k/(t-1)` for small integers `k`.
    pub fn element(&mut self, s: &LeafLabeledTree, t: &LeafLabeledTree, terms: usize) -> Result<HomElement> {
        let basis = self.basis(s, t)?;
        let mut out = HomElement::zero(s, t);
        let k = self.rng.gen_range(1..=terms);
        for _ in 0..k {
            let w = &basis[self.rng.gen_range(0..basis.len())];
            let n = self.rng.gen_range(-3i64..=3);
            let c = if self.rng.gen_bool(0.5) {
                RatFun::from_int(n)
            } else {
                &RatFun::from_int(n) / &RatFun::t_minus(1)
            };
            out.add_term(w.canonical_key(), &c);
        }
        Ok(out)
    }
}

pub const PROPERTY_SEED: u64 = 0x5eed_a4b0;
/// Leaf budget for a sampled composable chain.
pub const CHAIN_LEAVES: usize = 10;

fn c12(ctx: &mut Ctx) -> Result<()> {
    let sym = ParamSpec::Symbolic;
    let mut s = HomSampler::new(PROPERTY_SEED, 4);
    let cases = 100;
    let mut bad = 0;
    for _ in 0..cases {
        let c = s.chain(4, CHAIN_LEAVES);
        let (x1, x2, x3, x4) = (&c[0], &c[1], &c[2], &c[3]);
        let h = s.element(x1, x2, 2)?;
        let g = s.element(x2, x3, 2)?;
        let f = s.element(x3, x4, 2)?;
        if compose(&compose(&f, &g, &sym)?, &h, &sym)? != compose(&f, &compose(&g, &h, &sym)?, &sym)? {
            bad += 1;
        }
    }
    let mut basis_bad = 0;
    let mut basis_triples = 0;
    for tree in ["x", "(1,2)"] {
        let alg = ArborealAlgebra::new(&t(tree))?;
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = alg.mul(&alg.basis_element(i), &alg.basis_element(j))?;
                for k in 0..n {
                    let kb = alg.basis_element(k);
                    let lhs = alg.mul(&ij, &kb)?;
                    let rhs = alg.mul(&alg.basis_element(i), &alg.mul(&alg.basis_element(j), &kb)?)?;
                    basis_triples += 1;
                    if lhs != rhs {
                        basis_bad += 1;
                    }
                }
            }
        }
    }
    ctx.truth(
        "associativity on basis triples",
        "1001 of 1001",
        format!("{} of {basis_triples}", basis_triples - basis_bad),
        basis_bad == 0,
    );
    ctx.truth("associativity", "100 of 100", format!("{} of {cases}", cases - bad), bad == 0);
    let mut bad = 0;
    for _ in 0..cases {
        let (x, y) = (s.object(), s.object());
        let f = s.element(&x, &y, 3)?;
        if compose(&identity(&y), &f, &sym)? != f || compose(&f, &identity(&x), &sym)? != f {
            bad += 1;
        }
    }
    for tree in ["x", "(1,2)"] {
        let alg = ArborealAlgebra::new(&t(tree))?;
        for i in 0..alg.dim() {
            let b = alg.basis_element(i);
            if alg.mul(&alg.one(), &b)? != b || alg.mul(&b, &alg.one())? != b {
                bad += 1;
            }
        }
    }
    ctx.truth("unit laws", "no failures", format!("{bad} failures"), bad == 0);
    let mut bad = 0;
    for _ in 0..cases {
        let (x, y, z) = (s.object(), s.object(), s.object());
        let g = s.element(&x, &y, 2)?;
        let f = s.element(&y, &z, 2)?;
        let lhs = compose(&f, &g, &sym)?.transpose();
        let rhs = compose(&g.transpose(), &f.transpose(), &sym)?;
        if lhs != rhs || f.transpose().transpose() != f {
            bad += 1;
        }
    }
    ctx.truth("transpose reverses products", "100 of 100", format!("{} of {cases}", cases - bad), bad == 0);
    let y = t("(1,2)");
    let mut bad = 0;
    for _ in 0..cases {
        let a = s.element(&y, &y, 3)?;
        let b = s.element(&y, &y, 3)?;
        if categorical_trace(&compose(&a, &b, &sym)?)? != categorical_trace(&compose(&b, &a, &sym)?)? {
            bad += 1;
        }
    }
    ctx.truth("trace symmetry", "100 of 100", format!("{} of {cases}", cases - bad), bad == 0);
    let alg = ArborealAlgebra::new(&y)?;
    let mut bad = 0;
    for v in 0..alg.dim() {
        for w in 0..alg.dim() {
            if alg.structure_constants_by_trace(v, w)? != alg.structure_constants(v, w) {
                bad += 1;
            }
        }
    }
    ctx.truth("structure constants by traces", "100 of 100", format!("{} of 100", 100 - bad), bad == 0);
    let counts: Vec<usize> =
        (3..=6).map(|k| enumerate_trees(&numbered(k), None, DEFAULT_LABEL_CAP).map(|v| v.len())).collect::<Result<_>>()?;
    ctx.eq("tree counts for 3..6 labels", "[1, 4, 26, 236]".to_string(), format!("{counts:?}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert_eq!(select("all").unwrap().len(), 12);
        assert_eq!(select("algebra").unwrap().len(), 4);
        assert_eq!(select("c07").unwrap()[0].id, "c07");
        assert!(select("nope").is_err());
    }

    #[test]
    fn fast_checks_pass() {
        for id in ["c01", "c03", "c06", "c07"] {
            let r = run_check(select(id).unwrap()[0]);
            assert!(r.pass(), "{}", r.summary_line());
        }
    }
}
