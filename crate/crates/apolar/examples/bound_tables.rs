//! Border rank lower bounds for M⟨2,n,n⟩ and M⟨3,n,n⟩ from the grid-tableau
//! search, next to the closed-form ladder.
//!
//!     cargo run --release --example bound_tables

use std::time::Instant;

use apolar::mamu_bounds::{bound_at, search_bound, theorem_bound, Family};

fn main() {
    for (family, top) in [(Family::TwoNN, 16), (Family::ThreeNN, 12)] {
        let table = family.table();
        let start = Instant::now();
        println!("{family}: n, tableau, closed form, stated");
        for n in 4..=top {
            let row = search_bound(n, &table);
            let stated = theorem_bound(n, family).map_or("-".into(), |b| b.to_string());
            println!("  {n:>2} {:>4} {:>4} {:>4}", row.bound, bound_at(n, family), stated);
            if n == 14 && family == Family::TwoNN {
                println!("     r = {} passes both tests with {:?}", row.bound, row.witness.rows);
            }
        }
        println!("  ({:.2?})", start.elapsed());
    }
}
