//! How the modular driver deals with zero-divisors.
//!
//! Over `T = {z1^2 + 1, z2^2 + 1}` the element `z1 - z2` annihilates
//! `z1 + z2`, so the Euclidean algorithm stalls when it tries to invert it.
//! Worse, the image of the offending leading coefficient depends on the
//! prime: mod 13 the blocker is `z2 + 12 z1`, mod 17 a different remainder
//! step dies first on `z2 + z1`.  Those images never combine by Chinese
//! remaindering, which is why each witness is instead Hensel lifted to a
//! true factor of `z2^2 + 1` and the set is split on the spot.
//!
//! Run with: `cargo run --example zero_divisor_split`

use trigcd::cgcd::{modular_cgcd, CGcdOptions};
use trigcd::cli::{format_poly, parse_poly, VarNames};
use trigcd::modp::{monic_euclidean_cgcd, project_tset, GcdOrZd};
use trigcd::ring::{project_mod_p, TriangularSet};

fn main() {
    let names = VarNames::standard(2);
    let t = TriangularSet::new(vec![
        parse_poly("z1^2 + 1", &names).unwrap(),
        parse_poly("z2^2 + 1", &names).unwrap(),
    ])
    .unwrap();
    let a = parse_poly(
        "x^4 + (z1 + 18*z2)*x^3 + (-z2 + 3*z1)*x^2 + 324*x + 323",
        &names,
    )
    .unwrap();
    let b = parse_poly("x^3 + (z1 + 18*z2)*x^2 + (-19*z2 + 2*z1)*x + 324", &names).unwrap();

    for p in [13u64, 17] {
        let tp = project_tset(&t, p).unwrap();
        let ap = project_mod_p(&a, p).unwrap();
        let bp = project_mod_p(&b, p).unwrap();
        match monic_euclidean_cgcd(&ap, &bp, &tp) {
            GcdOrZd::Zd(sig) => println!(
                "mod {p}: euclidean algorithm stops on the zero-divisor {} (level {})",
                format_poly(&sig.witness, &names),
                sig.level
            ),
            GcdOrZd::Gcd(g) => println!("mod {p}: gcd image {}", format_poly(&g, &names)),
        }
    }

    println!();
    let opts = CGcdOptions {
        record_zd: true,
        ..CGcdOptions::default()
    };
    let (result, stats) = modular_cgcd(&a, &b, &t, &opts).unwrap();
    for ev in &stats.split_events {
        println!(
            "split at level {}: ({}) * ({})",
            ev.level,
            format_poly(&ev.u, &names),
            format_poly(&ev.v, &names)
        );
    }
    for (i, c) in result.components.iter().enumerate() {
        let gens: Vec<String> = c
            .tset
            .gens()
            .iter()
            .map(|g| format_poly(g, &names))
            .collect();
        println!(
            "component {}: [{}], gcd {}",
            i + 1,
            gens.join(", "),
            format_poly(&c.gcd, &names)
        );
    }
}
