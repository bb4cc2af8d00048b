//! Exact expansions of the registered generating functions.

use num_rational::BigRational;
use rightward::series::{closed_form, registry, Substitution};

fn main() {
    for spec in registry() {
        let s = closed_form(spec.name, 5, &Substitution::symbolic()).unwrap();
        println!("{} ({}, variables [{}]): {s}", spec.name, spec.kind.kind_name(), spec.variables);
    }
    let half =
        Substitution { u: Some(BigRational::new(1.into(), 2.into())), v: Some(BigRational::from_integer(1.into())) };
    let n = closed_form(rightward::GfName::N, 6, &half).unwrap();
    println!("N(t, 1/2, 1) = {n}");
}
