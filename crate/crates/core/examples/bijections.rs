//! The four bijections on their worked inputs, and the chained map from
//! {2-1-3, [2]-31} to {2-1-3, 12-3}.

use rightward::bijections::{callan, chain_bar_to_motzkin, phi, subdiag, udu_uuu};
use rightward::{LatticePath, Permutation};

fn main() {
    let pi: Permutation = "4675123".parse().unwrap();
    println!("phi({pi}) = {}", phi(&pi).unwrap());
    println!("subdiag({pi}) = {}", subdiag(&pi).unwrap());

    let d: LatticePath = "UUUUDDUUDDDDUUDD".parse().unwrap();
    println!("callan({d}) = {}", callan(&d).unwrap());
    println!("udu_uuu({d}) = {}", udu_uuu(&d).unwrap());

    let p: Permutation = "5672341".parse().unwrap();
    match chain_bar_to_motzkin(&p) {
        Ok(q) => println!("chain({p}) = {q}"),
        Err(e) => println!("chain({p}): {e}"),
    }
}
