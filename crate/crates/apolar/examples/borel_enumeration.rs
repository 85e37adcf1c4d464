//! Borel-fixed candidates for the (110) space: how many there are and how
//! their weight spaces split.
//!
//!     cargo run --release --example borel_enumeration

use apolar::apolarity_engine::{generate_110_candidates, Problem, TensorId};

fn main() {
    for (id, r) in [(TensorId::Mamu(2, 2, 2), 6), (TensorId::Mamu(2, 2, 3), 9), (TensorId::Mamu(3, 3, 3), 16), (TensorId::Det3, 16)] {
        let problem = Problem::new(id);
        let (families, names) = generate_110_candidates(&problem, r);
        let parametric = families.iter().filter(|f| !f.is_discrete()).count();
        println!("{id} at r={r}: {} families, {parametric} with parameters ({} names)", families.len(), names.len());
        for f in families.iter().take(4) {
            println!("  dim {} over {} weight spaces, {} parameter(s)", f.dim, f.dims.len(), f.params.len());
        }
    }
}
