//! Generating-series consistency: compositional inversion of dimension
//! series and the Koszul functional equation `g!(-g(-t)) = t`.
//!
//! ```bash
//! cargo run --release --example power_series
//! ```

use nsoperad::counting::{gk_check, TruncatedSeries};
use nsoperad::linalg::format_rational;
use nsoperad::operads::Builtin;

fn main() {
    // t/(1-t) inverts to t/(1+t).
    let s = TruncatedSeries::from_integers(&[1, 1, 1, 1, 1, 1]);
    let inv = s.inverse().unwrap();
    let coeffs: Vec<String> = inv.coeffs().iter().map(format_rational).collect();
    println!("inverse of t/(1-t): coefficients {:?}", coeffs);

    // The dialgebra series sum n t^n, twisted and inverted, gives the
    // dendriform (Catalan) dimensions.
    let dias = TruncatedSeries::from_integers(&[1, 2, 3, 4, 5, 6]);
    let dend = dias.alternating_twist().inverse().unwrap();
    let coeffs: Vec<String> = dend.coeffs().iter().map(format_rational).collect();
    println!("inverse of -g_dias(-t): coefficients {:?}", coeffs);

    for (b, order) in [(Builtin::Ass, 6), (Builtin::Dend, 6), (Builtin::Quad, 5)] {
        let ok = gk_check(b, order).unwrap();
        println!("gk check {:?} to order {}: {}", b, order, ok);
        assert!(ok);
    }
}
