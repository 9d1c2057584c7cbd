//! Inversion in a quotient ring with zero-divisors.
//!
//! Every nonzero element of `Q[z1, z2]/T` is either a unit or a
//! zero-divisor.  Inversion answers which one: a unit comes back with its
//! inverse, a zero-divisor comes back with the split of the triangular set
//! that it induces.
//!
//! Run with: `cargo run --example inverse_or_split`

use trigcd::cli::{format_poly, parse_poly, VarNames};
use trigcd::oracle::{inv_q, InvQOutcome};
use trigcd::ring::{mul_mod, TriangularSet};

fn main() {
    let names = VarNames::standard(2);
    let t = TriangularSet::new(vec![
        parse_poly("z1^2 + 1", &names).unwrap(),
        parse_poly("z2^2 + 1", &names).unwrap(),
    ])
    .unwrap();

    for src in ["1", "z1", "z1 + 18*z2", "z1 - z2"] {
        let u = parse_poly(src, &names).unwrap();
        match inv_q(&u, &t).unwrap() {
            InvQOutcome::Inverse(v) => {
                let check = mul_mod(&u, &v, &t);
                println!(
                    "{src}: unit, inverse {} (product {})",
                    format_poly(&v, &names),
                    format_poly(&check, &names)
                );
            }
            InvQOutcome::ZeroDivisor { signal, split } => {
                println!(
                    "{src}: zero-divisor with monic witness {} at level {}",
                    format_poly(&signal.witness, &names),
                    signal.level
                );
                for (label, part) in [("  first", &split.0), ("  second", &split.1)] {
                    let gens: Vec<String> =
                        part.gens().iter().map(|g| format_poly(g, &names)).collect();
                    println!("{label} split component: [{}]", gens.join(", "));
                }
            }
        }
    }
}
