//! Border rank of det₃ exceeds 16: of the 569 Borel-fixed families at r = 16
//! four pairwise survivors remain and no triple passes.
//!
//!     cargo run --release --example certify_det3

use std::time::Instant;

use apolar::apolarity_engine::{certify, Outcome, Problem, TensorId};

fn main() {
    let start = Instant::now();
    let problem = Problem::new(TensorId::Det3);
    let cert = certify(&problem, 16, 3).expect("cap 3 is supported");
    let first = &cert.stages[0];
    let params = first.details.iter().filter(|d| d.params > 0).count();
    println!("families: {} ({} parametric)", first.candidates, params);
    for d in first.details.iter().filter(|d| d.outcome != Outcome::Fail) {
        println!("  #{} params {} survivors {:?}", d.index, d.params, d.survivors);
    }
    println!("pairwise survivors: {}", first.passed);
    let t = &cert.triples;
    println!("triples: {} total, {} up to {:?}, {} pass", t.total, t.mod_symmetry, t.symmetries, t.passed);
    println!("intersection dims: {:?}", t.dims);
    println!("conclusion: {:?} ({:.1?})", cert.conclusion, start.elapsed());
}
