use arboreal::arith::BigRat;
use arboreal::measure::{measure_axiom_sweep, ParamSpec};

#[test]
fn amalgamation_equation_holds_at_infinity() {
    let r = measure_axiom_sweep(5, &ParamSpec::Infinity).unwrap();
    assert!(r.diagrams > 0);
    assert!(r.failures.is_empty(), "{:?}", &r.failures[..r.failures.len().min(3)]);
}

#[test]
fn amalgamation_equation_holds_at_finite_levels() {
    for n in [3, 4] {
        let r = measure_axiom_sweep(5, &ParamSpec::FiniteLevel(n)).unwrap();
        assert!(r.failures.is_empty(), "level {n}: {:?}", &r.failures[..r.failures.len().min(3)]);
    }
}

#[test]
fn amalgamation_equation_holds_at_a_rational_point() {
    let r = measure_axiom_sweep(5, &ParamSpec::Numeric(BigRat::new(7.into(), 2.into()))).unwrap();
    assert!(r.failures.is_empty());
}
