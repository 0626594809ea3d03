//! The headline computation: verify per-arity Koszulity of the built-in
//! operads by showing the augmented dual bar complex has zero homology.
//!
//! ```bash
//! cargo run --release --example koszul_verification
//! ```
//!
//! Bounds here are sized for a quick run; the acceptance suite pushes them
//! further (ass to 8, dend to 7, quad to 5, dend_pow(3) to 4).

use nsoperad::bar::koszul_check;
use nsoperad::operads::{ass, builtin, dend, dend_pow};
use nsoperad::quotient::BasisRule;

fn main() {
    let cases = [
        (ass(), 6, BasisRule::Split { power: 0 }),
        (dend(), 5, BasisRule::Split { power: 1 }),
        (builtin("quad").unwrap(), 4, BasisRule::Split { power: 2 }),
        (dend_pow(3), 4, BasisRule::Split { power: 3 }),
    ];
    for (pres, bound, rule) in cases {
        let report = koszul_check(&pres, bound, rule).expect("towers build");
        println!(
            "{} up to arity {}: {} ({} ms)",
            report.operad,
            report.max_arity,
            if report.koszul { "koszul" } else { "NOT koszul" },
            report.elapsed_ms
        );
        for arity in &report.per_arity {
            println!(
                "  n = {}: dims {:?}, homology {:?}, euler {}",
                arity.n, arity.dims, arity.homology, arity.euler
            );
        }
        assert!(report.koszul);
    }
    println!("\nFull JSON of the last report:\n");
    let report = koszul_check(&dend(), 4, BasisRule::Split { power: 1 }).unwrap();
    println!("{}", report.to_json());
}
