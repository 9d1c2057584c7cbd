//! Which primes keep a triangular set radical?
//!
//! `{z1^2 - 3}` is radical over `Q` but its reduction is not squarefree mod
//! 2 or 3.  The second set stays problematic at every odd prime: the test
//! itself runs into the zero-divisor `z1 - 1`, which the gcd driver would
//! then resolve by splitting.
//!
//! Run with: `cargo run --example radical_primes`

use trigcd::cli::{format_poly, parse_poly, VarNames};
use trigcd::modp::{is_radical_prime, RadicalOutcome};
use trigcd::ring::TriangularSet;

fn main() {
    let n1 = VarNames::standard(1);
    let t = TriangularSet::new(vec![parse_poly("z1^2 - 3", &n1).unwrap()]).unwrap();
    print!("z1^2 - 3:");
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
        let tag = match is_radical_prime(&t, p).unwrap() {
            RadicalOutcome::Radical => "radical",
            RadicalOutcome::NotRadical => "NOT radical",
            RadicalOutcome::ZeroDivisor(_) => "zero-divisor",
        };
        print!("  {p}: {tag}");
    }
    println!();

    let n2 = VarNames::standard(2);
    let t = TriangularSet::new(vec![
        parse_poly("z1^2 - 1", &n2).unwrap(),
        parse_poly("z2^3 + 9*z2^2 + (3/2*z1 + 51/2)*z2 - 53/2*z1 - 3/2", &n2).unwrap(),
    ])
    .unwrap();
    println!("cubic tower with fractional coefficients:");
    for p in [2u64, 5, 7, 11] {
        match is_radical_prime(&t, p) {
            Err(e) => println!("  {p}: skipped ({e})"),
            Ok(RadicalOutcome::ZeroDivisor(sig)) => println!(
                "  {p}: zero-divisor {} at level {}",
                format_poly(&sig.witness, &n2),
                sig.level
            ),
            Ok(other) => println!("  {p}: {other:?}"),
        }
    }
}
