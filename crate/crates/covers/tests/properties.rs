#[allow(dead_code)]
mod support;

use support::props;

fn check(r: Result<(), String>) {
    if let Err(e) = r {
        panic!("{}", e);
    }
}

#[test]
fn euler_formula() {
    check(props::euler_formula());
}

#[test]
fn covering_determinism() {
    check(props::covering_determinism());
}

#[test]
fn lift_concatenation() {
    check(props::lift_concatenation());
}

#[test]
fn member_invariant_under_reduction() {
    check(props::member_reduction());
}

#[test]
fn lift_class_homomorphism() {
    check(props::lift_class_homomorphism());
}

#[test]
fn isotopic_reflexive_and_symmetric() {
    check(props::isotopic_reflexive_symmetric());
}
