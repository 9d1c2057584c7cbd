//! Output sensitivity of the modular gcd on random inputs.
//!
//! All three profiles plant a degree-4 gcd into inputs of degree 6/5
//! (`table1`, `table2`) or 9/8 (`table3`).  With a monic planted gcd
//! (`table2`) the answer has small coefficients and two primes suffice no
//! matter how large the cofactors are; the non-monic profiles must recover
//! the fractions of the monic normalization and need more.
//!
//! Run with: `cargo run --release --example bench_profile`

use trigcd::cgcd::CGcdOptions;
use trigcd::cli::{run_bench, BenchProfile};

fn main() {
    let opts = CGcdOptions::default();
    println!("profile  degrees  seed  time(s)  divide(s)  #primes  components");
    for name in ["table1", "table2", "table3"] {
        for seed in 1..=3u64 {
            let profile = BenchProfile::by_name(name, vec![2, 2], seed).unwrap();
            let r = run_bench(&profile, &opts).unwrap();
            println!(
                "{:<8} {:<8} {:<5} {:<8.3} {:<10.3} {:<8} {}",
                r.profile,
                format!("{:?}", r.degrees),
                r.seed,
                r.total_secs,
                r.divide_secs,
                r.primes_used,
                r.components
            );
        }
    }
}
