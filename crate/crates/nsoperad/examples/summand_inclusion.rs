//! The split complex as a direct summand of the augmented dual bar complex:
//! the star-resolution inclusion is a chain map, every bar basis element has
//! exactly one preimage with coefficient 1, a projection splits it, and for
//! quadri-algebras the inclusion is the tensor square of the dendriform one.
//!
//! ```bash
//! cargo run --release --example summand_inclusion
//! ```

use nsoperad::associahedron::summand_check;
use nsoperad::bar::BarContext;
use nsoperad::operads::{builtin, dend};
use nsoperad::quotient::BasisRule;

fn main() {
    let dend_ctx = BarContext::build(&dend(), 5, BasisRule::Split { power: 1 }).unwrap();
    for n in 2..=5 {
        let rep = summand_check(&dend_ctx, 1, n, None);
        println!(
            "dend n = {}: chain map {}, unique preimage {}, projection {}",
            n, rep.chain_map, rep.unique_preimage, rep.projection_exists
        );
        assert!(rep.pass);
    }

    let quad_ctx =
        BarContext::build(&builtin("quad").unwrap(), 4, BasisRule::Split { power: 2 }).unwrap();
    for n in 2..=4 {
        let rep = summand_check(&quad_ctx, 2, n, Some(&dend_ctx));
        println!(
            "quad n = {}: chain map {}, unique preimage {}, projection {}, tensor square {:?}",
            n, rep.chain_map, rep.unique_preimage, rep.projection_exists, rep.tuple_power
        );
        assert!(rep.pass);
        if n == 4 {
            println!("\nfull report:\n{}", serde_json::to_string_pretty(&rep).unwrap());
        }
    }
}
