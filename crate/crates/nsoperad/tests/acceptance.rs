//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use nsoperad::associahedron::{build_ca, summand_check};
use nsoperad::bar::{
    complement_of, koszul_check, pair_homotopy_transport, summand_data, BarContext,
};
use nsoperad::complexes::verify_homotopy_identity;
use nsoperad::counting::{gk_check, hypercube_count, hypercube_total, quad_dim_formula, RootLabel};
use nsoperad::linalg::rat;
use nsoperad::operads::{ass, builtin, dend, dend_pow, quadratic_dual, Builtin};
use nsoperad::quotient::{BasisRule, Tower};
use nsoperad::report::verdict_line;
use nsoperad::Rational;
use num::BigUint;
use std::sync::OnceLock;

fn verdict(name: &str, pass: bool) {
    println!("{}", verdict_line(name, pass));
    assert!(pass, "acceptance criterion failed: {}", name);
}

fn dend_ctx() -> &'static BarContext {
    static CTX: OnceLock<BarContext> = OnceLock::new();
    CTX.get_or_init(|| {
        BarContext::build(&dend(), 7, BasisRule::Split { power: 1 }).expect("dend context")
    })
}

fn quad_ctx() -> &'static BarContext {
    static CTX: OnceLock<BarContext> = OnceLock::new();
    CTX.get_or_init(|| {
        BarContext::build(&builtin("quad").unwrap(), 5, BasisRule::Split { power: 2 })
            .expect("quad context")
    })
}

#[test]
fn criterion_01_dual_dimensions_of_dend_are_linear() {
    let dims = dend_ctx().dual().dims();
    let pass = dims == vec![2, 3, 4, 5, 6, 7];
    verdict("1. dim Dend^!(n) = n for 2 <= n <= 7", pass);
}

#[test]
fn criterion_02_dual_dimensions_of_quad_are_squares() {
    let dims = quad_ctx().dual().dims();
    let pass = dims == vec![4, 9, 16, 25];
    verdict("2. dim Quad^!(n) = n^2 for 2 <= n <= 5", pass);
}

#[test]
fn criterion_03_dual_dimensions_of_dend_cubed_are_cubes() {
    let tower = Tower::build(
        quadratic_dual(&dend_pow(3)),
        4,
        BasisRule::Split { power: 3 },
    )
    .expect("dend^3 dual tower");
    let pass = tower.dims() == vec![8, 27, 64];
    verdict("3. dim (Dend#3)^!(n) = n^3 for 2 <= n <= 4", pass);
}

#[test]
fn criterion_04_koszulity_checks() {
    let cases: Vec<(&str, bool)> = vec![
        ("ass <= 8", {
            let r = koszul_check(&ass(), 8, BasisRule::Split { power: 0 }).unwrap();
            r.koszul
        }),
        ("dend <= 7", {
            let r = koszul_check(&dend(), 7, BasisRule::Split { power: 1 }).unwrap();
            r.koszul
        }),
        ("quad <= 5", {
            let r = koszul_check(&builtin("quad").unwrap(), 5, BasisRule::Split { power: 2 })
                .unwrap();
            r.koszul
        }),
        ("dend_pow(3) <= 4", {
            let r = koszul_check(&dend_pow(3), 4, BasisRule::Split { power: 3 }).unwrap();
            r.koszul
        }),
    ];
    for (name, ok) in &cases {
        println!("    koszul {}: {}", name, if *ok { "exact" } else { "FAILED" });
    }
    let pass = cases.iter().all(|(_, ok)| *ok);
    verdict("4. zero bar homology: ass<=8, dend<=7, quad<=5, dend_pow(3)<=4", pass);
}

#[test]
fn criterion_05_associahedron_complexes() {
    let mut pass = true;
    for n in 2..=8 {
        let ca = build_ca(n);
        pass &= ca.complex.verify();
        pass &= ca.complex.homology_dims().iter().all(|&h| h == 0);
    }
    // Pentagon shape: dims (1, 5, 5, 1), all coefficients +-1, the middle
    // matrix pairing each edge with two opposite-signed vertices.
    let ca4 = build_ca(4);
    pass &= ca4.complex.dims() == vec![1, 5, 5, 1];
    for d in ca4.complex.diffs() {
        pass &= d
            .iter_entries()
            .all(|(_, _, v)| v == &rat(1) || v == &rat(-1));
    }
    let mid = ca4.complex.diff(1);
    for c in 0..5 {
        let col = mid.column(c);
        pass &= col.nnz() == 2;
        let sum: Rational = col.iter().map(|(_, v)| v.clone()).sum();
        pass &= sum == rat(0);
    }
    for r in 0..5 {
        pass &= mid.row(r).nnz() == 2;
    }
    pass &= mid.rank() == 4;
    verdict("5. CA_n exact with +-1 incidences for 2 <= n <= 8; pentagon shape", pass);
}

#[test]
fn criterion_06_summand_checks() {
    let mut pass = true;
    for n in 2..=6 {
        let rep = summand_check(dend_ctx(), 1, n, None);
        if !rep.pass {
            println!("    dend summand n = {} failures: {:?}", n, rep.failures);
        }
        pass &= rep.pass;
    }
    for n in 2..=5 {
        let rep = summand_check(quad_ctx(), 2, n, Some(dend_ctx()));
        if !rep.pass {
            println!("    quad summand n = {} failures: {:?}", n, rep.failures);
        }
        pass &= rep.pass && rep.tuple_power == Some(true);
    }
    verdict("6. summand checks: dend n <= 6, quad n <= 5 (incl. tensor-square)", pass);
}

#[test]
fn criterion_07_homotopy_identities() {
    let mut pass = true;
    for n in 2..=5 {
        let data = summand_data(dend_ctx(), 1, n).expect("dend summand data");
        let rhs = complement_of(&data.idem);
        pass &= verify_homotopy_identity(&rhs, &data.homotopy, &data.bar.complex);
    }
    for n in 2..=4 {
        let rep = pair_homotopy_transport(dend_ctx(), quad_ctx(), n);
        pass &= rep.identity_holds && rep.idempotent_is_chain;
    }
    verdict("7. homotopy identity: dend data n <= 5, transported quad data n <= 4", pass);
}

#[test]
fn criterion_08_quad_dimension_formula() {
    let mut pass = true;
    let want = [4u32, 23, 156];
    for (k, &w) in want.iter().enumerate() {
        pass &= quad_dim_formula(k + 2).unwrap() == BigUint::from(w);
    }
    for n in 2..=5 {
        let formula = quad_dim_formula(n).unwrap();
        let linalg = BigUint::from(quad_ctx().primal().component(n).dim());
        pass &= formula == linalg;
    }
    verdict("8. d_n integral and equal to dim Quad(n) for n <= 5 (4, 23, 156, ...)", pass);
}

#[test]
fn criterion_09_hypercube_suite() {
    let mut pass = true;
    // Base case: every vector counts 1 at degree 2.
    for m in 1..=3 {
        let v = vec![RootLabel::Prec; m];
        pass &= hypercube_count(m, 2, &v).unwrap() == BigUint::from(1u32);
    }
    // Closed form for all-succ vectors (the recurrence cross-checks it
    // internally and hard-errors on mismatch).
    for j in 1..=3usize {
        for n in 2..=6usize {
            let v = vec![RootLabel::Succ; j];
            let closed = BigUint::from((n - 1).pow(j as u32) - (n - 2).pow(j as u32));
            pass &= hypercube_count(j, n, &v).unwrap() == closed;
        }
    }
    // Binomial recurrence identity.
    for j in 1..=6i64 {
        for n in 2..=8i64 {
            let lhs = n.pow(j as u32) - (n - 1).pow(j as u32);
            let rhs: i64 = (1..=j)
                .map(|k| {
                    let b: i64 = nsoperad::counting::binomial(j as usize, k as usize)
                        .try_into()
                        .unwrap();
                    b * ((n - 1).pow(k as u32) - (n - 2).pow(k as u32))
                })
                .sum();
            pass &= lhs == rhs;
        }
    }
    // Totals are n^m.
    for m in 1..=3usize {
        for n in 2..=6usize {
            pass &= hypercube_total(m, n).unwrap() == BigUint::from(n).pow(m as u32);
        }
    }
    verdict("9. hypercube counts: base, closed form, recurrence, totals n^m", pass);
}

#[test]
fn criterion_10_generating_series() {
    let mut pass = true;
    pass &= gk_check(Builtin::Ass, 6).unwrap();
    pass &= gk_check(Builtin::Dend, 6).unwrap();
    // gk_check(quad, 5) also pins the coefficients to the d_n formula.
    pass &= gk_check(Builtin::Quad, 5).unwrap();
    verdict("10. series: gk check for ass/dend to order 6, quad to order 5", pass);
}
