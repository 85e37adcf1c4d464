//! The quadratic terms bounding the smaller kernel, their values at a
//! sample point, and the asymptotic thresholds in exact surd arithmetic.
//!
//!     cargo run --release --example closed_forms

use apolar::exact_linalg::frac;
use apolar::mamu_bounds::{asymptotic_bound, closed_form_terms, threshold, threshold_n0, Family};

fn main() {
    for family in [Family::TwoNN, Family::ThreeNN] {
        println!("{family}:");
        for t in closed_form_terms(&family.table()) {
            println!("  j={}: {t}   at (n, ρ) = (25, 33): {}", t.j, t.eval(25, 33));
        }
        println!("  slope {:.6}", family.slope().to_f64());
        let eps = frac(1, 10);
        let th = threshold(family, &eps).expect("ε in range");
        let n0 = threshold_n0(family, &eps).expect("ε in range");
        println!("  ε = 1/10: threshold {:.3}, bound from n = {n0}: {}", th.to_f64(), asymptotic_bound(family, &eps, n0).expect("in range"));
    }
}
