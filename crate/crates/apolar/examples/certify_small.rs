//! Refutes border rank 6 for M⟨2⟩, 9 for M⟨2,2,3⟩ and 13 for M⟨2,3,3⟩,
//! printing every candidate's skew kernels.
//!
//!     cargo run --release --example certify_small

use std::time::Instant;

use apolar::apolarity_engine::{certify, Problem, TensorId};

fn main() {
    for (id, r) in [(TensorId::Mamu(2, 2, 2), 6), (TensorId::Mamu(2, 2, 3), 9), (TensorId::Mamu(2, 3, 3), 13)] {
        let start = Instant::now();
        let problem = Problem::new(id);
        let cert = certify(&problem, r, 3).expect("cap 3 is supported");
        println!("{id} arranged as {:?}, r = {r}: {:?} in {:.2?}", cert.arrangement, cert.conclusion, start.elapsed());
        for stage in &cert.stages {
            println!("  grading {}: {} candidates, {} pass", stage.grading, stage.candidates, stage.passed);
            for d in &stage.details {
                let kernels: Vec<String> =
                    d.tests.iter().map(|t| format!("{}:{}", t.test, t.kernel.map_or("-".into(), |k| k.to_string()))).collect();
                let reduced = d.reduced.as_ref().map(|x| format!(" reduced rank {} of {}", x.rank, x.domain)).unwrap_or_default();
                println!("    #{} {}{} -> {:?}", d.index, kernels.join(" "), reduced, d.outcome);
            }
        }
    }
}
