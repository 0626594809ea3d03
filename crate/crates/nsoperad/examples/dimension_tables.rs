//! Dimension tables of the built-in operads and their quadratic duals,
//! computed by exact rank over the rationals.
//!
//! ```bash
//! cargo run --release --example dimension_tables
//! ```

use nsoperad::operads::builtin;
use nsoperad::report::dims_report;

fn main() {
    for (name, bound) in [("ass", 6), ("dend", 6), ("dias", 6), ("quad", 4), ("dend_pow(3)", 4)] {
        let pres = builtin(name).unwrap();
        let rep = dims_report(&pres, bound).expect("towers build");
        println!("{}:", name);
        print!("{}", rep.to_csv());
        println!();
    }
    // Catalan numbers for dend, linear dims for its dual; squares for the
    // dual of quad - the numbers behind the Koszulity bookkeeping.
}
