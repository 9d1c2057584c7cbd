//! End-to-end componentwise gcd over a reducible triangular set.
//!
//! The set `T = {x^3 - x, y^2 - 3/2 y x^2 - 3/2 y x + y + 2 x^2 - 2}` defines
//! a six-dimensional algebra that is a product of four fields, so the gcd of
//! two polynomials in `z` comes back as four components, each with its own
//! triangular set.
//!
//! Run with: `cargo run --example componentwise_gcd`

use trigcd::cgcd::{modular_cgcd, CGcdOptions};
use trigcd::cli::{format_poly, parse_poly, VarNames};
use trigcd::ring::TriangularSet;

fn main() {
    let names = VarNames::new(&["x", "y"], "z");
    let t = TriangularSet::new(vec![
        parse_poly("x^3 - x", &names).unwrap(),
        parse_poly("y^2 - 3/2*y*x^2 - 3/2*y*x + y + 2*x^2 - 2", &names).unwrap(),
    ])
    .unwrap();

    let a = parse_poly(
        "z^2 - 8/3*z*y*x^2 + 3*z*y*x - 7/3*z*y - 1/3*z*x^2 + 3*z*x - 5/3*z \
         + 25/6*y*x^2 - 13/2*y*x + 10/3*y + 16/3*x^2 - 2*x - 10/3",
        &names,
    )
    .unwrap();
    let b = parse_poly(
        "z^2 + 29/12*z*y*x^2 + 7/4*z*y*x - 11/3*z*y - 8/3*z*x^2 + 3*z*x + 2/3*z \
         + 67/12*y*x^2 - 11/4*y*x - 13/3*y - 13/3*x^2 - 2*x + 19/3",
        &names,
    )
    .unwrap();

    let (result, stats) = modular_cgcd(&a, &b, &t, &CGcdOptions::default()).unwrap();

    println!("input set of degree {}:", t.degree());
    for (i, g) in t.gens().iter().enumerate() {
        println!("  t{}: {}", i + 1, format_poly(g, &names));
    }
    println!();
    for (i, c) in result.components.iter().enumerate() {
        println!("component {} (degree {}):", i + 1, c.tset.degree());
        for (j, g) in c.tset.gens().iter().enumerate() {
            println!("  t{}: {}", j + 1, format_poly(g, &names));
        }
        println!("  gcd: {}", format_poly(&c.gcd, &names));
    }
    println!();
    println!("primes used: {}", stats.primes_used);
    println!("splits resolved: {}", stats.split_events.len());
}
