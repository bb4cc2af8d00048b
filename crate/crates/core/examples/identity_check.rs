//! Checks each closed form against the refined succession-rule series, then
//! shows how a single wrong coefficient is reported.

use num_rational::BigRational;
use rightward::series::verify_identity;
use rightward::succession::{rule_series, ClassId};

fn main() {
    for class in ClassId::ALL {
        let series = rule_series(class, 15);
        println!("{class}: {}", verify_identity(class.gf(), &series, 15));
    }

    let mut series = rule_series(ClassId::C8, 12);
    let mut c = series.coeff(9).clone();
    c.add_term(2, 1, BigRational::from_integer(1.into()));
    series.set_coeff(9, c);
    println!("perturbed C8: {}", verify_identity(ClassId::C8.gf(), &series, 12));
}
