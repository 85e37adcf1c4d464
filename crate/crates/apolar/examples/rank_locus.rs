//! Where does a polynomial matrix drop rank? Branches, exported ideals and
//! rational witnesses.
//!
//!     cargo run --release --example rank_locus

use apolar::poly::{Poly, VarNames};
use apolar::poly_rank::{export_ideal, import_ideal, locus_status, rank_locus, LocusStatus, PolyMatrix};

fn main() {
    let mut names = VarNames::new();
    let x = Poly::var(names.fresh("x"));
    let y = Poly::var(names.fresh("y"));
    // [[x, y], [y, x]] is singular on x = ±y
    let m = PolyMatrix::new(2, vec![vec![(0, x.clone()), (1, y.clone())], vec![(0, y), (1, x)]]);
    let records = rank_locus(&m, 2).expect("bound fits");
    println!("{} branch(es) with rank < 2", records.len());
    for (i, rec) in records.iter().enumerate() {
        let text = export_ideal(rec, &names);
        let status = match locus_status(rec) {
            LocusStatus::Witness(pt) => {
                let coords: Vec<String> = pt.iter().map(|(v, x)| format!("{} = {x}", names.name(*v))).collect();
                format!("witness {}", coords.join(", "))
            }
            other => format!("{other:?}"),
        };
        println!("branch {i}:\n{text}{status}");
        let mut again = names.clone();
        let back = import_ideal(&text, &mut again).expect("round trip");
        assert_eq!(&back, rec);
    }
}
