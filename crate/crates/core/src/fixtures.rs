//! The worked example `End((1,2))`: a named basis, named combinations and
//! the maps through the one-leaf tree, loaded from `fixtures/end_t2.json`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::arith::RatFun;
use crate::category::{compose, ArborealAlgebra, HomElement};
use crate::error::{Error, Result};
use crate::measure::{mu_symbolic, ParamSpec};
use crate::tree::{parse_tree, LeafLabeledTree};

const END_T2: &str = include_str!("../fixtures/end_t2.json");

#[derive(Deserialize)]
struct MapSpec {
    source: String,
    target: String,
    whole: String,
}

#[derive(Deserialize)]
struct Maps {
    x: String,
    f: MapSpec,
    f_prime: MapSpec,
}

#[derive(Deserialize)]
struct Raw {
    tree: String,
    basis: Vec<(String, String)>,
    combos: Vec<(String, Vec<(String, String)>)>,
    maps: Maps,
}

pub struct EndT2 {
    pub alg: ArborealAlgebra,
    pub x: LeafLabeledTree,
    /// `Y -> X`.
    pub f: HomElement,
    /// `X -> Y`.
    pub f_prime: HomElement,
    names: BTreeMap<String, HomElement>,
    order: Vec<String>,
}

impl EndT2 {
    pub fn load() -> Result<Self> {
        let raw: Raw = serde_json::from_str(END_T2).map_err(|e| Error::Parse(e.to_string()))?;
        let tree = parse_tree(&raw.tree)?;
        let alg = ArborealAlgebra::new(&tree)?;
        let mut names = BTreeMap::new();
        let mut order = Vec::new();
        for (name, whole) in &raw.basis {
            let e = HomElement::parse_basis(&tree, &tree, whole)?;
            alg.coords(&e)?;
            names.insert(name.clone(), e);
            order.push(name.clone());
        }
        if names.len() != alg.dim() {
            return Err(Error::Parse(format!("fixture lists {} of {} basis trees", names.len(), alg.dim())));
        }
        for (name, parts) in &raw.combos {
            let mut acc = HomElement::zero(&tree, &tree);
            for (coeff, of) in parts {
                let c: RatFun = coeff.parse()?;
                let e = names.get(of).ok_or_else(|| Error::Parse(format!("unknown fixture name {of}")))?;
                acc = &acc + &e.scale(&c);
            }
            names.insert(name.clone(), acc);
            order.push(name.clone());
        }
        let map = |m: &MapSpec| -> Result<HomElement> {
            HomElement::parse_basis(&parse_tree(&m.source)?, &parse_tree(&m.target)?, &m.whole)
        };
        Ok(EndT2 {
            x: parse_tree(&raw.maps.x)?,
            f: map(&raw.maps.f)?,
            f_prime: map(&raw.maps.f_prime)?,
            alg,
            names,
            order,
        })
    }

    /// Panics on an unknown name.
    pub fn get(&self, name: &str) -> &HomElement {
        self.names.get(name).unwrap_or_else(|| panic!("no fixture element {name}"))
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn mul(&self, a: &HomElement, b: &HomElement) -> HomElement {
        self.alg.mul(a, b).expect("fixture elements live in the algebra")
    }

    pub fn trace(&self, a: &HomElement) -> RatFun {
        self.alg.trace(a).expect("fixture elements live in the algebra")
    }
}

/// Idempotents of the plus part that the fixture does not list, derived
/// from the maps through `X` and from multiplication by `c5`.
pub struct PlusPart {
    pub f_l1: HomElement,
    /// Eigenvalue of `c5` and idempotent, for the two remaining summands.
    pub split: [(RatFun, HomElement); 2],
}

impl PlusPart {
    pub fn derive(ex: &EndT2) -> Result<Self> {
        let alg = &ex.alg;
        let x = &ex.x;
        let xalg = ArborealAlgebra::new(x)?;
        let all_x = (0..xalg.dim()).fold(HomElement::zero(x, x), |acc, i| &acc + &xalg.basis_element(i));
        let trivial_x = all_x.scale(&mu_symbolic(x).inv()?);
        let p1 = &xalg.one() - &trivial_x;
        let sym = &ParamSpec::Symbolic;
        let through = compose(&ex.f_prime, &compose(&p1, &ex.f, sym)?, sym)?;
        let c1 = ex.get("c1");
        let q = alg.mul(c1, &alg.mul(&through, c1)?)?;
        let f_l1 = alg.normalize_idempotent(&q)?;
        let rest = &(&(c1 - ex.get("f0")) - &f_l1) - ex.get("f3");
        let split = alg.split_two(&rest, ex.get("c5"))?;
        Ok(PlusPart { f_l1, split })
    }
}
