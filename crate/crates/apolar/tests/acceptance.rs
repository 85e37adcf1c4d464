//! One line per reproduction check. Checks listed in `KNOWN_DIVERGENCES`
//! fail for reasons recorded alongside the project; they are reported but
//! do not fail the run. Any other failure does.

use apolar::checks::{run_all, CheckConfig};

const KNOWN_DIVERGENCES: [u8; 5] = [3, 4, 7, 8, 10];

fn main() {
    let results = run_all(&CheckConfig::default(), None);
    let mut unexpected = 0;
    for r in &results {
        let known = KNOWN_DIVERGENCES.contains(&r.id);
        let tag = match (r.passed, known) {
            (true, false) => "PASS",
            (true, true) => "PASS (listed as divergent)",
            (false, true) => "FAIL (known divergence)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2} [{}] {} ({} ms): {}", r.id, tag, r.name, r.millis, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria pass, {unexpected} unexpected failure(s)", results.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
