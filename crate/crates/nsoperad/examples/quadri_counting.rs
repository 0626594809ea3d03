//! Counting routes to the quadri-algebra dimensions: the closed binomial
//! formula against exact linear algebra, and the hypercube recurrences
//! behind the n^m spanning bound.
//!
//! ```bash
//! cargo run --release --example quadri_counting
//! ```

use num::BigUint;
use nsoperad::counting::{hypercube_representative, hypercube_total, quad_dim_formula};
use nsoperad::quotient::arity_component;
use nsoperad::report::hypercube_report;

fn main() {
    println!("d_n by the closed formula:");
    for n in 1..=8 {
        println!("  d_{} = {}", n, quad_dim_formula(n).unwrap());
    }

    println!("\ncross-check against dim Quad(n) by rank computation:");
    let quad = nsoperad::operads::builtin("quad").unwrap();
    for n in 2..=4 {
        let q = arity_component(&quad, n);
        let formula = quad_dim_formula(n).unwrap();
        println!("  n = {}: formula {}, linear algebra {}", n, formula, q.dim());
        assert_eq!(BigUint::from(q.dim()), formula);
    }

    println!("\nhypercube counts by root vector (m = 2, n = 3):");
    print!("{}", hypercube_report(2, 3).to_csv());
    for m in 1..=3 {
        for n in 2..=6 {
            assert_eq!(hypercube_total(m, n).unwrap(), BigUint::from(n).pow(m as u32));
        }
    }
    println!("totals n^m confirmed for m <= 3, n <= 6");

    println!("\nrepresentative degree-3 patterns for unit cube coordinates:");
    for coord in [[1u8, 2, 1], [3, 1, 2], [1, 1, 1], [3, 3, 3]] {
        let t = hypercube_representative(&coord);
        println!("  {:?} -> {}", coord, t.canonical_key());
    }
}
