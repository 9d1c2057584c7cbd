//! Instrumented multiplication versus the closed-form operation count.
//!
//! Multiplying two reduced dense elements and reducing by the set costs
//! `delta^2 + D(n)` base-field multiplications, where `D` follows the
//! recurrence `D(k) = (2 d_k - 1) D(k-1) + d_k (d_k - 1) delta_{k-1}^2`.
//! The count is exact for dense inputs because the division by each
//! generator performs a single reduction per coefficient equation, and it
//! never exceeds `3 delta^2`.
//!
//! Run with: `cargo run --example multiplication_count`

use trigcd::cli::{random_poly, random_tset, SplitMix64};
use trigcd::modp::project_tset;
use trigcd::ring::{mul_cost_bound, mul_mod, project_mod_p, with_mul_count, MulCostModel};

fn main() {
    let prime = 2147483647u64;
    let mut rng = SplitMix64::new(42);
    println!("degrees      delta  measured  formula  3*delta^2");
    for degrees in [vec![2u64], vec![4], vec![2, 2], vec![3, 3], vec![2, 3, 4]] {
        let t = random_tset(&mut rng, &degrees);
        let t_p = project_tset(&t, prime).unwrap();
        let a = project_mod_p(&random_poly(&mut rng, &t, &degrees, 0, false), prime).unwrap();
        let b = project_mod_p(&random_poly(&mut rng, &t, &degrees, 0, false), prime).unwrap();
        let (_, count) = with_mul_count(|| mul_mod(&a, &b, &t_p));
        let model = MulCostModel::new(degrees.clone()).unwrap();
        let delta = model.degree();
        println!(
            "{:<12} {:<6} {:<9} {:<8} {}",
            format!("{degrees:?}"),
            delta,
            count,
            mul_cost_bound(&model),
            3 * delta * delta
        );
    }
}
