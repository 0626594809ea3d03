//! Property tests for the exact linear algebra substrate and the tree
//! serialization, plus a few structural invariants that want real inputs.

use nsoperad::linalg::{rat, SparseMatrix};
use nsoperad::trees::{enumerate_trees, parse_key, PlanarTree, Tree};
use proptest::prelude::*;
use std::collections::HashMap;

fn sparse_matrix(max_dim: usize, max_nnz: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(rows, cols)| {
        proptest::collection::hash_map((0..rows, 0..cols), -5i64..=5, 0..=max_nnz).prop_map(
            move |entries| {
                let triplets = entries
                    .into_iter()
                    .map(|((r, c), v)| (r, c, rat(v)))
                    .collect();
                SparseMatrix::from_triplets(rows, cols, triplets)
            },
        )
    })
}

proptest! {
    #[test]
    fn rank_bounded_by_shape(m in sparse_matrix(7, 14)) {
        let r = m.rank();
        prop_assert!(r <= m.rows().min(m.cols()));
        // Transposing preserves rank.
        prop_assert_eq!(r, m.transpose().rank());
    }

    #[test]
    fn rank_of_product_bounded(a in sparse_matrix(6, 10), b in sparse_matrix(6, 10)) {
        // Make shapes compose by multiplying a with b arranged compatibly.
        let bt = if a.cols() == b.rows() { b.clone() } else { b.transpose() };
        if a.cols() == bt.rows() {
            let p = a.mul(&bt);
            prop_assert!(p.rank() <= a.rank().min(bt.rank()));
        }
    }

    #[test]
    fn kernel_vectors_annihilate(m in sparse_matrix(7, 14)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_right_solves_constructed_systems(
        a in sparse_matrix(6, 10),
        x in sparse_matrix(6, 10),
    ) {
        let xt = if a.cols() == x.rows() { x.clone() } else { x.transpose() };
        if a.cols() == xt.rows() {
            let b = a.mul(&xt);
            let solved = a.solve_right(&b).expect("constructed system is solvable");
            prop_assert_eq!(a.mul(&solved), b);
        }
    }

    #[test]
    fn elimination_is_deterministic(m in sparse_matrix(7, 14)) {
        prop_assert_eq!(m.rank(), m.clone().rank());
        prop_assert_eq!(m.kernel_basis(), m.kernel_basis());
    }

    #[test]
    fn tree_keys_round_trip(n in 2usize..=7, pick in 0usize..1000) {
        for k in 1..n {
            let trees = enumerate_trees(n, k);
            let t = &trees[pick % trees.len()];
            let back: PlanarTree = parse_key(&t.canonical_key()).unwrap();
            prop_assert_eq!(&back, t);
        }
    }
}

#[test]
fn keys_injective_over_all_small_trees() {
    let mut seen: HashMap<String, PlanarTree> = HashMap::new();
    for n in 2..=7 {
        for k in 1..n {
            for t in enumerate_trees(n, k) {
                let key = t.canonical_key();
                if let Some(prev) = seen.insert(key.clone(), t.clone()) {
                    panic!("key collision: {} for {:?} and {:?}", key, prev, t);
                }
            }
        }
    }
    assert!(seen.len() > 1000);
}

#[test]
fn homology_invariant_under_basis_permutation() {
    use nsoperad::complexes::{BasisSpace, ChainComplex};
    let ca = nsoperad::associahedron::build_ca(4).complex;
    // Reverse the middle (degree -1) basis and conjugate the adjacent
    // differentials by the permutation.
    let dim = ca.piece(2).dim();
    let perm: Vec<usize> = (0..dim).rev().collect();
    let permute_rows = |m: &SparseMatrix| {
        let triplets = m
            .iter_entries()
            .map(|(r, c, v)| (perm[r], c, v.clone()))
            .collect();
        SparseMatrix::from_triplets(m.rows(), m.cols(), triplets)
    };
    let permute_cols = |m: &SparseMatrix| {
        let triplets = m
            .iter_entries()
            .map(|(r, c, v)| (r, perm[c], v.clone()))
            .collect();
        SparseMatrix::from_triplets(m.rows(), m.cols(), triplets)
    };
    let pieces: Vec<BasisSpace> = (0..4)
        .map(|i| {
            let mut keys = ca.piece(i).keys().to_vec();
            if i == 2 {
                keys.reverse();
            }
            BasisSpace::new(keys)
        })
        .collect();
    let permuted = ChainComplex::new(
        "permuted CA_4",
        ca.degrees().to_vec(),
        pieces,
        vec![
            ca.diff(0).clone(),
            permute_rows(ca.diff(1)),
            permute_cols(ca.diff(2)),
        ],
    );
    assert!(permuted.verify());
    assert_eq!(permuted.homology_dims(), ca.homology_dims());
}

#[test]
fn rank_results_stable_across_threads() {
    use rayon::prelude::*;
    let ca = nsoperad::associahedron::build_ca(5).complex;
    let baseline: Vec<usize> = ca.diffs().iter().map(SparseMatrix::rank).collect();
    let parallel: Vec<usize> = ca.diffs().par_iter().map(SparseMatrix::rank).collect();
    assert_eq!(baseline, parallel);
}

#[test]
fn contract_expand_inverse_on_bigger_trees() {
    use nsoperad::trees::{contract_edge, expansions};
    for t in enumerate_trees(7, 3) {
        for e in expansions(&t) {
            assert_eq!(contract_edge(&e.tree, e.edge).unwrap(), t);
        }
    }
}

#[test]
fn euler_characteristic_vanishes_for_exact_complexes() {
    for n in 2..=7 {
        let ca = nsoperad::associahedron::build_ca(n).complex;
        assert_eq!(ca.euler_characteristic(), 0, "CA_{}", n);
    }
    let s = nsoperad::associahedron::build_split_complex(2, 4).complex;
    assert_eq!(s.euler_characteristic(), 0);
}

#[test]
fn split_complex_tree_keys_unique_across_copies() {
    // The copy labelings of a fixed tree differ between copies, so the
    // tagged keys are redundant protection, not a correctness requirement.
    let s = nsoperad::associahedron::build_split_complex(1, 5);
    for pos in 1..s.complex.n_positions() {
        for t in &s.trees[pos] {
            let mut labelings: Vec<String> = (0..s.tuples.len())
                .map(|k| s.labeled_tree(k, t).canonical_key())
                .collect();
            labelings.sort();
            labelings.dedup();
            assert_eq!(labelings.len(), s.tuples.len());
        }
    }
}
