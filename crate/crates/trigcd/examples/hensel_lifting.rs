//! Lifting a factorization mod p to the rationals.
//!
//! `z2^2 + 1 = (z2 + 12 z1)(z2 + z1) mod (z1^2 + 1, 13)` lifts to the exact
//! factorization `(z2 - z1)(z2 + z1)` over `Q`.  Lifting is self-certifying:
//! a candidate factor is only returned after exact trial division, and an
//! irreducible input makes the loop run out of its bound and report `Fail`
//! instead of guessing.
//!
//! Run with: `cargo run --example hensel_lifting`

use num_bigint::BigInt;
use num_traits::One;
use trigcd::cli::{format_poly, parse_poly, VarNames};
use trigcd::hensel::{hensel_lift, LiftOutcome};
use trigcd::ring::{mul_mod, project_mod_p, TriangularSet};

fn main() {
    let names = VarNames::standard(2);
    let prefix = TriangularSet::new(vec![parse_poly("z1^2 + 1", &names).unwrap()]).unwrap();
    let f = parse_poly("z2^2 + 1", &names).unwrap();
    let a0 = project_mod_p(&parse_poly("z2 - z1", &names).unwrap(), 13).unwrap();
    let b0 = project_mod_p(&parse_poly("z2 + z1", &names).unwrap(), 13).unwrap();
    let bound = BigInt::one() << 60;

    println!(
        "lifting {} = ({}) * ({})  mod (z1^2 + 1, 13)",
        format_poly(&f, &names),
        format_poly(&a0, &names),
        format_poly(&b0, &names)
    );
    match hensel_lift(&f, &a0, &b0, &prefix, 13, &bound) {
        LiftOutcome::Lifted { u, v } => {
            println!(
                "lifted factors: ({}) * ({})",
                format_poly(&u, &names),
                format_poly(&v, &names)
            );
            let check = mul_mod(&u, &v, &prefix);
            println!("product check: {}", format_poly(&check, &names));
        }
        other => println!("unexpected outcome: {other:?}"),
    }

    // an irreducible polynomial has no monic factor over Q: the lift fails
    // once p^i outruns twice the bound, and never returns a wrong answer
    let n0 = VarNames::standard(1);
    let empty = TriangularSet::empty();
    let g = parse_poly("z1^2 + 2", &n0).unwrap();
    let g0 = project_mod_p(&parse_poly("z1 + 1", &n0).unwrap(), 3).unwrap();
    let g1 = project_mod_p(&parse_poly("z1 + 2", &n0).unwrap(), 3).unwrap();
    println!();
    println!("lifting the mod-3 factorization of z1^2 + 2 (irreducible over Q):");
    match hensel_lift(&g, &g0, &g1, &empty, 3, &bound) {
        LiftOutcome::Fail => println!("Fail, as it must"),
        other => println!("unexpected outcome: {other:?}"),
    }
}
