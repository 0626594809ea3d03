//! Contracting homotopies and the dend-to-quad transport: build the
//! inclusion/retraction/idempotent/homotopy package certifying
//! `I - p = dh + hd` on the dendriform bar complex, then move it to the
//! quadri-algebra complex by pairing the inclusion and projection.
//!
//! ```bash
//! cargo run --release --example homotopy_transport
//! ```

use nsoperad::bar::{complement_of, pair_homotopy_transport, summand_data, BarContext};
use nsoperad::complexes::verify_homotopy_identity;
use nsoperad::operads::{builtin, dend};
use nsoperad::quotient::BasisRule;

fn main() {
    let dend_ctx = BarContext::build(&dend(), 5, BasisRule::Split { power: 1 }).unwrap();
    for n in 2..=5 {
        let data = summand_data(&dend_ctx, 1, n).expect("dend summand data");
        let rhs = complement_of(&data.idem);
        let ok = verify_homotopy_identity(&rhs, &data.homotopy, &data.bar.complex);
        println!("dend n = {}: I - p = dh + hd holds: {}", n, ok);
        assert!(ok);
    }

    let quad_ctx =
        BarContext::build(&builtin("quad").unwrap(), 4, BasisRule::Split { power: 2 }).unwrap();
    for n in 2..=4 {
        let report = pair_homotopy_transport(&dend_ctx, &quad_ctx, n);
        println!(
            "quad n = {}: paired idempotent chain {}, identity {}, per degree {:?}, paired h {:?}",
            n,
            report.idempotent_is_chain,
            report.identity_holds,
            report.per_position,
            report.paired_weight,
        );
        assert!(report.identity_holds);
        // The inclusion and projection pair componentwise; the homotopy is
        // solved against the paired idempotent (paired_weight reports None
        // when no entrywise pairing satisfies the identity).
    }
}
