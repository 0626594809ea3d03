//! Working with a user-defined operad: parse a spec JSON document, compute
//! dimensions, take the quadratic dual and a black square, and run the
//! Koszulity check on it.
//!
//! ```bash
//! cargo run --release --example custom_operad
//! ```

use nsoperad::bar::koszul_check;
use nsoperad::operads::{black_square, parse_spec, quadratic_dual, to_spec_json};
use nsoperad::quotient::BasisRule;
use nsoperad::report::dims_report;

fn main() {
    // The dendriform presentation written out as a document; any quadratic
    // binary presentation with independent relations parses the same way.
    let document = r#"{
        "name": "dend-from-json",
        "generators": ["prec", "succ"],
        "relations": [
            [{"shape": "L", "root": 0, "upper": 0, "coeff": "1"},
             {"shape": "R", "root": 0, "upper": 0, "coeff": "-1"},
             {"shape": "R", "root": 0, "upper": 1, "coeff": "-1"}],
            [{"shape": "L", "root": 0, "upper": 1, "coeff": "1"},
             {"shape": "R", "root": 1, "upper": 0, "coeff": "-1"}],
            [{"shape": "L", "root": 1, "upper": 0, "coeff": "1"},
             {"shape": "L", "root": 1, "upper": 1, "coeff": "1"},
             {"shape": "R", "root": 1, "upper": 1, "coeff": "-1"}]
        ]
    }"#;
    let pres = parse_spec(document.as_bytes()).expect("valid spec");
    println!("parsed `{}`: {} generators, {} relations", pres.name(), pres.n_generators(), pres.n_relations());

    let rep = dims_report(&pres, 5).unwrap();
    print!("{}", rep.to_csv());

    let dual = quadratic_dual(&pres);
    println!("\nquadratic dual as spec JSON:\n{}", to_spec_json(&dual));

    let square = black_square(&pres, &pres).expect("independent product relations");
    println!(
        "black square: {} generators, {} relations",
        square.n_generators(),
        square.n_relations()
    );

    // User specs take the generic (greedy) dual basis in the bar complex.
    let report = koszul_check(&pres, 4, BasisRule::Greedy).unwrap();
    println!("koszul up to 4: {}", report.koszul);
}
