//! Per-site kernel contributions of each inner structure, the resulting
//! tables, and the hook that caps what pairwise tests can prove.
//!
//!     cargo run --release --example contributions

use apolar::mamu_bounds::{barrier_check, contribution_table, hook_engine_kernel, hook_kernel, ContributionTable};

fn main() {
    for (v, stated) in [(2, ContributionTable::sl2()), (3, ContributionTable::sl3())] {
        let computed = contribution_table(v);
        println!("v = {v}: j, computed (a, b), stated (a, b)");
        for (j, (c, s)) in computed.rows.iter().zip(&stated.rows).enumerate() {
            println!("  {:>2}  ({:>2}, {:>8})  ({:>2}, {:>8})", j + 1, c.a, c.b.to_string(), s.a, s.b.to_string());
        }
    }
    println!("hook (σ, τ): engine vs C(στ+1,2)+στ");
    for sigma in 1..=3 {
        for tau in 1..=2 {
            println!("  ({sigma},{tau}) {:>3} {:>3}", hook_engine_kernel(6, 3, sigma, tau), hook_kernel(sigma, tau));
        }
    }
    for n in [10, 100, 1000] {
        let b = barrier_check(n);
        println!("n = {n}: pairwise tests stall at ρ = {} (ρ/n = {:.4})", b.rho, b.ratio);
    }
}
