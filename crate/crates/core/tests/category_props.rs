use arboreal::category::{compose, embedding_morphisms, hom_basis, identity, HomElement};
use arboreal::measure::ParamSpec;
use arboreal::tree::{parse_tree, LeafLabeledTree};
use proptest::prelude::*;
use proptest::sample::select;

fn t(s: &str) -> LeafLabeledTree {
    parse_tree(s).unwrap()
}

const SOURCES: [&str; 4] = ["a", "(a,b)", "(a,b,c)", "((a,b),c,d)"];
const TARGETS: [&str; 4] = ["x", "(x,y)", "(x,y,z)", "(x,y,z,w)"];

/// The untagged whole of a basis morphism between trees on disjoint labels.
fn untagged(whole: &LeafLabeledTree) -> LeafLabeledTree {
    whole.map_labels(|l| l.split_once(':').map(|(_, r)| r.to_string()).unwrap_or_default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn basis_morphisms_factor_through_their_whole(s in select(SOURCES.to_vec()), tg in select(TARGETS.to_vec()), ix in any::<usize>()) {
        let (s, tg) = (t(s), t(tg));
        let basis = hom_basis(&s, &tg, None).unwrap();
        let whole = &basis[ix % basis.len()];
        let w = untagged(whole);
        let (beta, _) = embedding_morphisms(&s, &w).unwrap();
        let (_, alpha) = embedding_morphisms(&tg, &w).unwrap();
        let phi = HomElement::basis(&s, &tg, whole).unwrap();
        prop_assert_eq!(compose(&alpha, &beta, &ParamSpec::Symbolic).unwrap(), phi);
    }

    #[test]
    fn embedding_pairs_are_transposes(tg in select(TARGETS.to_vec()), mask in any::<u8>()) {
        let sup = t(tg);
        let keep = sup.labels().into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l).collect();
        let sub = sup.restrict(&keep).unwrap();
        let (beta, alpha) = embedding_morphisms(&sub, &sup).unwrap();
        prop_assert_eq!(beta.transpose(), alpha.clone());
        prop_assert_eq!(alpha.transpose(), beta);
    }

    #[test]
    fn identities_are_units(s in select(SOURCES.to_vec()), tg in select(TARGETS.to_vec()), ix in any::<usize>()) {
        let (s, tg) = (t(s), t(tg));
        let basis = hom_basis(&s, &tg, None).unwrap();
        let phi = HomElement::basis(&s, &tg, &basis[ix % basis.len()]).unwrap();
        let sym = ParamSpec::Symbolic;
        prop_assert_eq!(compose(&identity(&tg), &phi, &sym).unwrap(), phi.clone());
        prop_assert_eq!(compose(&phi, &identity(&s), &sym).unwrap(), phi);
    }
}
