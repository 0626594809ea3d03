//! The associahedron chain complex `CA_n` with explicit orientation signs,
//! its n-fold and n^m-fold splittings, and the split-injection into the
//! augmented dual bar complex.
//!
//! Faces of the associahedron for `n` inputs are planar trees with `n`
//! leaves; binary trees are vertices, the corolla is the top cell. We grade
//! by minus the cell dimension and augment with an empty cell in degree +1,
//! so the augmented complex is exact.

use crate::complexes::{BasisSpace, ChainComplex, ChainMap};
use crate::linalg::{rat, Rational, SparseMatrix, SparseVec};
use crate::trees::{
    self, connecting_path, enumerate_trees, leaf_ancestor_chains, CopyMark, Expansion, Label,
    LabeledTree, PlanarTree, Tree,
};
use num::{One, Zero};

/// Orientation data of one tree, precomputed for sign evaluation.
pub struct SignData {
    arities: Vec<usize>,
    child_prefixes: Vec<Vec<usize>>,
}

impl SignData {
    pub fn of<L>(t: &Tree<L>) -> SignData {
        SignData { arities: t.arities(), child_prefixes: trees::child_degree_prefixes(t) }
    }
}

/// Orientation sign of the incidence `T -> T'` where `T'` expands
/// `exp.base_vertex` (arity `a+b-1`) of `T` into lower arity `a` with upper
/// arity `b` grafted at position `i`:
///
/// ```text
/// (-1)^{s(v) + (i-1) + b*(a-i) + (b-2)*D}
/// ```
///
/// Vertices carry cell degree `arity - 2` and are read in canonical order;
/// `s(v)` is the total degree before `v`, and `D` is the total degree of the
/// children of `v` left of the graft slot — the Koszul cost of moving the new
/// upper vertex from next-to-`v` to its depth-first position. `d^2 = 0` and
/// the pentagon shape checks pin the convention down in the tests.
pub fn expansion_sign(data: &SignData, exp: &Expansion) -> i64 {
    let v = exp.base_vertex.0;
    let prefix: usize = data.arities[..v].iter().map(|a| a - 2).sum();
    let local = (exp.position - 1) + exp.upper_arity * (exp.lower_arity - exp.position);
    let reorder = (exp.upper_arity - 2) * data.child_prefixes[v][exp.position - 1];
    if (prefix + local + reorder) % 2 == 0 { 1 } else { -1 }
}

/// The associahedron complex together with the face trees backing each basis.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub complex: ChainComplex,
    /// `trees[i]` lists the faces at position `i` in basis order; empty for
    /// the augmentation position 0.
    pub trees: Vec<Vec<PlanarTree>>,
}

/// Builds the augmented chain complex of the associahedron for `n` inputs:
/// degrees +1, 0, ..., -n+2 with every differential coefficient in {+1, -1}.
pub fn build_ca(n: usize) -> CellComplex {
    assert!(n >= 2);
    let degrees: Vec<i32> = (0..n).map(|k| 1 - k as i32).collect();
    let mut tree_lists: Vec<Vec<PlanarTree>> = vec![Vec::new()];
    for k in 1..n {
        // Degree 1 - k holds trees with n - k vertices.
        tree_lists.push(enumerate_trees(n, n - k));
    }
    let pieces: Vec<BasisSpace> = std::iter::once(BasisSpace::new(vec!["empty".into()]))
        .chain(
            tree_lists
                .iter()
                .skip(1)
                .map(|ts| BasisSpace::new(ts.iter().map(Tree::canonical_key).collect())),
        )
        .collect();
    let mut diffs = Vec::with_capacity(n - 1);
    // Augmentation: every vertex of the polytope maps to the empty cell.
    diffs.push(SparseMatrix::from_triplets(
        1,
        pieces[1].dim(),
        (0..pieces[1].dim()).map(|c| (0, c, rat(1))).collect(),
    ));
    for i in 1..n - 1 {
        diffs.push(boundary_matrix(&tree_lists[i + 1], &pieces[i]));
    }
    CellComplex {
        complex: ChainComplex::new(format!("CA_{}", n), degrees, pieces, diffs),
        trees: tree_lists,
    }
}

/// The boundary matrix from `sources` into the facet piece `target`: each
/// source cell maps to its codimension-one faces (vertex expansions) with
/// the orientation sign.
fn boundary_matrix(sources: &[PlanarTree], target: &BasisSpace) -> SparseMatrix {
    let mut triplets = Vec::new();
    for (c, t) in sources.iter().enumerate() {
        let data = SignData::of(t);
        for exp in trees::expansions(t) {
            let r = target
                .index_of(&exp.tree.canonical_key())
                .expect("expansion stays within the enumerated trees");
            triplets.push((r, c, rat(expansion_sign(&data, &exp))));
        }
    }
    SparseMatrix::from_triplets(target.dim(), sources.len(), triplets)
}

/// Per-vertex copy marks of `t` for the given copy (1-based, up to the leaf
/// count). Copy 1 labels the leftmost branch 1 and everything else `*`; the
/// step from copy `i` to `i+1` updates the path between leaves `i` and `i+1`:
/// an integer below the vertex arity increments, the arity itself becomes
/// `*`, and `*` becomes 1.
pub fn copy_marks(t: &PlanarTree, copy: usize) -> Vec<CopyMark> {
    let n = t.n_leaves();
    assert!(copy >= 1 && copy <= n, "copy index {} out of range 1..={}", copy, n);
    let arities = t.arities();
    let mut marks = vec![CopyMark::Star; arities.len()];
    for &v in &leaf_ancestor_chains(t)[0] {
        marks[v] = CopyMark::Int(1);
    }
    for step in 1..copy {
        for v in connecting_path(t, step).expect("step index is within range") {
            marks[v.0] = transition(marks[v.0], arities[v.0]);
        }
    }
    marks
}

fn transition(m: CopyMark, arity: usize) -> CopyMark {
    match m {
        CopyMark::Int(r) if (r as usize) < arity => CopyMark::Int(r + 1),
        CopyMark::Int(_) => CopyMark::Star,
        CopyMark::Star => CopyMark::Int(1),
    }
}

/// The copy labeling as a labeled tree with single-component marks.
pub fn copy_labeling(t: &PlanarTree, copy: usize) -> LabeledTree {
    let labels: Vec<Label> =
        copy_marks(t, copy).into_iter().map(|m| Label::Copy(vec![m])).collect();
    t.with_labels(&labels)
}

/// The split form of `CA_n`: `n^power` copies indexed by tuples
/// `(i_1..i_m) in {1..n}^m`, each basis tree carrying the tuple of copy
/// labelings, with the same signed differential in every copy.
#[derive(Clone, Debug)]
pub struct SplitComplex {
    pub complex: ChainComplex,
    /// Copy tuples in lexicographic order; `tuples[k]` backs basis prefix `c<k>:`.
    pub tuples: Vec<Vec<usize>>,
    /// Face trees per position, shared by all copies (position 0 is the
    /// augmentation).
    pub trees: Vec<Vec<PlanarTree>>,
    pub power: usize,
}

impl SplitComplex {
    /// The tuple-labeled tree backing copy `k` at face `tree`.
    pub fn labeled_tree(&self, copy: usize, tree: &PlanarTree) -> LabeledTree {
        labeled_by_tuple(tree, &self.tuples[copy])
    }
}

/// Labels `t` by the tuple of copy labelings for the given copy tuple.
pub fn labeled_by_tuple(t: &PlanarTree, tuple: &[usize]) -> LabeledTree {
    let per_copy: Vec<Vec<CopyMark>> = tuple.iter().map(|&i| copy_marks(t, i)).collect();
    let labels: Vec<Label> = (0..t.n_vertices())
        .map(|v| Label::Copy(per_copy.iter().map(|marks| marks[v]).collect()))
        .collect();
    t.with_labels(&labels)
}

/// Builds the split complex with `n^power` copies (`power` = 1 for the
/// dendriform splitting, 2 for quadri-algebras, m for the m-th black-square
/// power; 0 degenerates to `CA_n` itself).
pub fn build_split_complex(power: usize, n: usize) -> SplitComplex {
    let ca = build_ca(n);
    let tuples: Vec<Vec<usize>> = trees::assignments(&vec![n; power])
        .into_iter()
        .map(|a| a.into_iter().map(|x| x + 1).collect())
        .collect();
    let copies = tuples.len();
    let positions = ca.complex.n_positions();
    let mut pieces = Vec::with_capacity(positions);
    for i in 0..positions {
        let mut keys = Vec::new();
        for (k, tuple) in tuples.iter().enumerate() {
            if i == 0 {
                keys.push(format!("c{}:empty", k));
            } else {
                for t in &ca.trees[i] {
                    keys.push(format!("c{}:{}", k, labeled_by_tuple(t, tuple).canonical_key()));
                }
            }
        }
        pieces.push(BasisSpace::new(keys));
    }
    let diffs = (0..positions - 1)
        .map(|i| {
            let blocks: Vec<&SparseMatrix> = (0..copies).map(|_| ca.complex.diff(i)).collect();
            SparseMatrix::block_diag(&blocks)
        })
        .collect();
    SplitComplex {
        complex: ChainComplex::new(
            format!("split^{} CA_{}", power, n),
            ca.complex.degrees().to_vec(),
            pieces,
            diffs,
        ),
        tuples,
        trees: ca.trees,
        power,
    }
}

/// Expands every `*` component of every label into the integers `1..=arity`,
/// componentwise: all full integer labelings the starred tree stands for.
pub fn star_resolutions(t: &LabeledTree) -> Vec<LabeledTree> {
    let arities = t.shape().arities();
    let labels: Vec<&Label> = t.labels();
    let m = match labels.first() {
        Some(Label::Copy(marks)) => marks.len(),
        _ => 0,
    };
    // Per (vertex, component): the admissible integers.
    let mut slots: Vec<Vec<u32>> = Vec::with_capacity(labels.len() * m);
    for (v, label) in labels.iter().enumerate() {
        let Label::Copy(marks) = label else {
            panic!("star_resolutions expects copy labels");
        };
        for mark in marks {
            slots.push(match mark {
                CopyMark::Int(r) => vec![*r],
                CopyMark::Star => (1..=arities[v] as u32).collect(),
            });
        }
    }
    let bounds: Vec<usize> = slots.iter().map(Vec::len).collect();
    trees::assignments(&bounds)
        .into_iter()
        .map(|choice| {
            let labels: Vec<Label> = (0..arities.len())
                .map(|v| {
                    Label::Copy(
                        (0..m)
                            .map(|k| CopyMark::Int(slots[v * m + k][choice[v * m + k]]))
                            .collect(),
                    )
                })
                .collect();
            t.shape().with_labels(&labels)
        })
        .collect()
}

/// Lexicographic rank of a fully resolved tuple label within `{1..arity}^m`;
/// this is the index of the corresponding split-basis element of the dual.
pub fn tuple_rank(marks: &[CopyMark], arity: usize) -> usize {
    let mut rank = 0;
    for m in marks {
        let CopyMark::Int(r) = m else { panic!("tuple_rank needs a resolved label") };
        rank = rank * arity + (*r as usize - 1);
    }
    rank
}

/// The inclusion of the split complex into the augmented dual bar complex:
/// every starred label splits into the sum of its resolutions (coefficient 1
/// throughout), and the degree +1 component is the induced map on cokernels.
pub fn inclusion_map(split: &SplitComplex, bar: &crate::bar::BarComplex) -> ChainMap {
    let positions = split.complex.n_positions();
    assert_eq!(split.complex.degrees(), bar.complex.degrees());
    let mut maps = Vec::with_capacity(positions);
    // Degree +1: copy k's empty cell goes to the class of any binary tree of
    // that copy under the bar augmentation; the first binary tree serves.
    // Chain-map verification then certifies independence of the choice.
    let first_binary = &split.trees[1][0];
    let mut top = Vec::new();
    for (k, tuple) in split.tuples.iter().enumerate() {
        let labeled = labeled_by_tuple(first_binary, tuple);
        let mut class = SparseVec::zero(bar.complex.piece(0).dim());
        for resolution in star_resolutions(&labeled) {
            let col = bar.degree_zero_index(&resolution);
            class.add_scaled(&bar.reduction_column(col), &Rational::one());
        }
        for (r, v) in class.iter() {
            top.push((r, k, v.clone()));
        }
    }
    maps.push(SparseMatrix::from_triplets(
        bar.complex.piece(0).dim(),
        split.complex.piece(0).dim(),
        top,
    ));
    for i in 1..positions {
        let mut triplets = Vec::new();
        let mut col = 0;
        for tuple in &split.tuples {
            for t in &split.trees[i] {
                let labeled = labeled_by_tuple(t, tuple);
                for resolution in star_resolutions(&labeled) {
                    let key = bar.basis_key(&resolution);
                    let row = bar
                        .complex
                        .piece(i)
                        .index_of(&key)
                        .expect("resolved labeling is a bar basis element");
                    triplets.push((row, col, Rational::one()));
                }
                col += 1;
            }
        }
        maps.push(SparseMatrix::from_triplets(
            bar.complex.piece(i).dim(),
            split.complex.piece(i).dim(),
            triplets,
        ));
    }
    ChainMap { maps }
}

/// Report of the direct-summand verification.
#[derive(Debug, serde::Serialize)]
pub struct SummandReport {
    pub operad: String,
    pub arity: usize,
    /// The inclusion commutes with the differentials.
    pub chain_map: bool,
    /// Every bar basis element in degrees <= 0 appears in the image of
    /// exactly one split basis element, with coefficient 1.
    pub unique_preimage: bool,
    /// A degreewise projection with `p . f = I` exists.
    pub projection_exists: bool,
    /// For powers >= 2: the inclusion is degreewise the tuple power of the
    /// power-1 inclusion on matching tree shapes.
    pub tuple_power: Option<bool>,
    pub pass: bool,
    /// Failed assertions, naming the degree and basis key involved.
    pub failures: Vec<String>,
}

/// Verifies the direct-summand structure of the split complex inside the
/// augmented dual bar complex for the power-`m` built-in at arity `n`.
pub fn summand_check(
    ctx: &crate::bar::BarContext,
    power: usize,
    n: usize,
    dend_ctx: Option<&crate::bar::BarContext>,
) -> SummandReport {
    let split = build_split_complex(power, n);
    let bar = crate::bar::build_bar(ctx, n);
    let f = inclusion_map(&split, &bar);
    let mut failures = Vec::new();

    let chain_map = crate::complexes::verify_chain_map(&f, &split.complex, &bar.complex);
    if !chain_map {
        for i in 0..split.complex.n_positions() - 1 {
            let lhs = bar.complex.diff(i).mul(&f.maps[i + 1]);
            let rhs = f.maps[i].mul(&split.complex.diff(i));
            if lhs != rhs {
                failures.push(format!(
                    "chain map fails between degrees {} and {}",
                    bar.complex.degrees()[i + 1],
                    bar.complex.degrees()[i]
                ));
            }
        }
    }

    let mut unique_preimage = true;
    for i in 1..bar.complex.n_positions() {
        let m = &f.maps[i];
        let mut seen: Vec<usize> = vec![0; m.rows()];
        let mut ok = true;
        for (r, _, v) in m.iter_entries() {
            seen[r] += 1;
            if v != &Rational::one() {
                ok = false;
                failures.push(format!(
                    "degree {}: coefficient {} at {} is not 1",
                    bar.complex.degrees()[i],
                    v,
                    bar.complex.piece(i).keys()[r]
                ));
            }
        }
        for (r, &count) in seen.iter().enumerate() {
            if count != 1 {
                ok = false;
                failures.push(format!(
                    "degree {}: basis element {} has {} preimages",
                    bar.complex.degrees()[i],
                    bar.complex.piece(i).keys()[r],
                    count
                ));
            }
        }
        unique_preimage &= ok;
    }

    let mut projection_exists = true;
    for (i, fi) in f.maps.iter().enumerate() {
        if crate::bar::left_inverse(fi).is_none() {
            projection_exists = false;
            failures.push(format!(
                "degree {}: no left inverse (inclusion not injective)",
                bar.complex.degrees()[i]
            ));
        }
    }

    let tuple_power = dend_ctx.filter(|_| power >= 2).map(|dctx| {
        let ok = tuple_power_matches(&f, &split, &bar, ctx, dctx, power, n);
        if !ok {
            failures.push("inclusion is not the tuple power of the base inclusion".into());
        }
        ok
    });

    let pass =
        chain_map && unique_preimage && projection_exists && tuple_power.unwrap_or(true);
    SummandReport {
        operad: ctx.primal().presentation().name().to_string(),
        arity: n,
        chain_map,
        unique_preimage,
        projection_exists,
        tuple_power,
        pass,
        failures,
    }
}

/// Checks degreewise that the power-`m` inclusion entry at (tuple-labeled
/// tree, tuple copy) is the product of the power-1 entries componentwise on
/// the same tree shape.
fn tuple_power_matches(
    f_pow: &ChainMap,
    split_pow: &SplitComplex,
    bar_pow: &crate::bar::BarComplex,
    ctx_pow: &crate::bar::BarContext,
    ctx_dend: &crate::bar::BarContext,
    power: usize,
    n: usize,
) -> bool {
    use std::collections::HashMap;
    let split_dend = build_split_complex(1, n);
    let bar_dend = crate::bar::build_bar(ctx_dend, n);
    let f_dend = inclusion_map(&split_dend, &bar_dend);

    for i in 1..bar_pow.complex.n_positions() {
        let shapes = &bar_pow.shapes[i];
        let n_trees = shapes.len();
        // Dend entries keyed by (copy, tree index, label vector).
        let mut dend_entries: HashMap<(usize, usize, Vec<usize>), Rational> = HashMap::new();
        let dend_cols = bar_label_vectors(&bar_dend, ctx_dend, i);
        for (r, c, v) in f_dend.maps[i].iter_entries() {
            let copy = c / n_trees;
            let tree = c % n_trees;
            let (row_tree, labels) = &dend_cols[r];
            if *row_tree != tree {
                return false;
            }
            dend_entries.insert((copy, tree, labels.clone()), v.clone());
        }
        let pow_cols = bar_label_vectors(&bar_pow, ctx_pow, i);
        let dend_dims: Vec<Vec<usize>> = shapes
            .iter()
            .map(|t| t.arities().iter().map(|&a| ctx_dend.dual().component(a).dim()).collect())
            .collect();
        // Every entry of the power inclusion must be the product of the
        // component entries, and conversely.
        let mut expected: HashMap<(usize, usize), Rational> = HashMap::new();
        for (col_pow, tuple) in split_pow.tuples.iter().enumerate() {
            for tree in 0..n_trees {
                let col = col_pow * n_trees + tree;
                // All bar rows on this shape whose component labelings all
                // appear in the dend inclusion for the matching copies.
                for (row, (row_tree, labels)) in pow_cols.iter().enumerate() {
                    if *row_tree != tree {
                        continue;
                    }
                    let dims = &dend_dims[tree];
                    let mut product = Rational::one();
                    let mut ok = true;
                    for (k, &copy) in tuple.iter().enumerate() {
                        let comp: Vec<usize> = labels
                            .iter()
                            .zip(dims)
                            .map(|(&l, &d)| {
                                let mut digits = l;
                                for _ in 0..(power - 1 - k) {
                                    digits /= d;
                                }
                                digits % d
                            })
                            .collect();
                        match dend_entries.get(&(copy - 1, tree, comp)) {
                            Some(v) => product *= v,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok && !product.is_zero() {
                        expected.insert((row, col), product);
                    }
                }
            }
        }
        let actual: HashMap<(usize, usize), Rational> = f_pow.maps[i]
            .iter_entries()
            .map(|(r, c, v)| ((r, c), v.clone()))
            .collect();
        if expected != actual {
            return false;
        }
    }
    true
}

/// Bar basis columns at a position as (shape index, per-vertex label vector).
fn bar_label_vectors(
    bar: &crate::bar::BarComplex,
    ctx: &crate::bar::BarContext,
    pos: usize,
) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for (ti, t) in bar.shapes[pos].iter().enumerate() {
        let bounds: Vec<usize> =
            t.arities().iter().map(|&a| ctx.dual().component(a).dim()).collect();
        for assignment in trees::assignments(&bounds) {
            out.push((ti, assignment));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{corolla, left_comb3};

    #[test]
    fn ca2_is_a_point() {
        let ca = build_ca(2);
        assert_eq!(ca.complex.dims(), vec![1, 1]);
        assert!(ca.complex.verify());
        assert_eq!(ca.complex.homology_dims(), vec![0, 0]);
    }

    #[test]
    fn ca4_matches_the_pentagon() {
        let ca = build_ca(4);
        assert_eq!(ca.complex.dims(), vec![1, 5, 5, 1]);
        assert!(ca.complex.verify());
        assert_eq!(ca.complex.homology_dims(), vec![0; 4]);
        // Augmentation row is all ones.
        assert_eq!(ca.complex.diff(0).nnz(), 5);
        // Middle 5x5: each edge hits two vertices with opposite signs, each
        // vertex lies on two edges.
        let mid = ca.complex.diff(1);
        for c in 0..5 {
            let col = mid.column(c);
            assert_eq!(col.nnz(), 2);
            let vals: Vec<Rational> = col.iter().map(|(_, v)| v.clone()).collect();
            assert_eq!(&vals[0] + &vals[1], rat(0));
            assert!(vals.iter().all(|v| v == &rat(1) || v == &rat(-1)));
        }
        for r in 0..5 {
            assert_eq!(mid.row(r).nnz(), 2);
        }
        assert_eq!(mid.rank(), 4);
        // Pentagon boundary: three of one sign, two of the other.
        let top = ca.complex.diff(2);
        let mut pos = 0;
        let mut neg = 0;
        for (_, _, v) in top.iter_entries() {
            if v == &rat(1) {
                pos += 1;
            } else {
                assert_eq!(v, &rat(-1));
                neg += 1;
            }
        }
        assert_eq!(pos + neg, 5);
        assert_eq!(pos.min(neg), 2);
    }

    #[test]
    fn ca5_dims_and_euler() {
        let ca = build_ca(5);
        assert_eq!(ca.complex.dims(), vec![1, 14, 21, 9, 1]);
        assert_eq!(ca.complex.euler_characteristic(), 0);
        assert!(ca.complex.verify());
        assert_eq!(ca.complex.homology_dims(), vec![0; 5]);
    }

    #[test]
    fn ca_exact_through_seven() {
        for n in 2..=7 {
            let ca = build_ca(n);
            assert!(ca.complex.verify(), "d^2 = 0 for n = {}", n);
            assert_eq!(ca.complex.homology_dims(), vec![0; n], "exact for n = {}", n);
        }
    }

    #[test]
    fn sign_flip_breaks_d_squared() {
        let ca = build_ca(4);
        let mid = ca.complex.diff(1);
        let (r0, c0, v0) =
            mid.iter_entries().next().map(|(r, c, v)| (r, c, v.clone())).unwrap();
        let mut triplets: Vec<(usize, usize, Rational)> = mid
            .iter_entries()
            .filter(|(r, c, _)| !(*r == r0 && *c == c0))
            .map(|(r, c, v)| (r, c, v.clone()))
            .collect();
        triplets.push((r0, c0, -v0));
        let flipped = SparseMatrix::from_triplets(mid.rows(), mid.cols(), triplets);
        let broken = ChainComplex::new(
            "broken",
            ca.complex.degrees().to_vec(),
            (0..4).map(|i| BasisSpace::new(ca.complex.piece(i).keys().to_vec())).collect(),
            vec![ca.complex.diff(0).clone(), flipped, ca.complex.diff(2).clone()],
        );
        assert!(!broken.verify());
    }

    #[test]
    fn copy_marks_two_leaves() {
        let t = corolla(2);
        assert_eq!(copy_marks(&t, 1), vec![CopyMark::Int(1)]);
        assert_eq!(copy_marks(&t, 2), vec![CopyMark::Int(2)]);
    }

    #[test]
    fn copy_marks_left_comb() {
        // DFS order is (root, upper); the paper's (upper, root) triples
        // (1,1), (2,1), (*,2) read here as below.
        let t = left_comb3();
        assert_eq!(copy_marks(&t, 1), vec![CopyMark::Int(1), CopyMark::Int(1)]);
        assert_eq!(copy_marks(&t, 2), vec![CopyMark::Int(1), CopyMark::Int(2)]);
        assert_eq!(copy_marks(&t, 3), vec![CopyMark::Int(2), CopyMark::Star]);
    }

    #[test]
    fn copy_marks_seven_leaf_example() {
        // Root with three children: a 2-ary vertex over (leaf, 2-ary vertex),
        // a middle leaf, and a 3-corolla. DFS ids: root 0, A 1, B 2, C 3.
        let a = Tree::node((), vec![Tree::Leaf, corolla(2)]);
        let t = Tree::node((), vec![a, Tree::Leaf, corolla(3)]);
        use CopyMark::{Int, Star};
        let expected = [
            vec![Int(1), Int(1), Star, Star],
            vec![Int(1), Int(2), Int(1), Star],
            vec![Int(1), Int(2), Int(2), Star],
            vec![Int(2), Star, Star, Star],
            vec![Int(3), Star, Star, Int(1)],
            vec![Int(3), Star, Star, Int(2)],
            vec![Int(3), Star, Star, Int(3)],
        ];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(&copy_marks(&t, i + 1), want, "copy {}", i + 1);
        }
    }

    #[test]
    fn last_copy_labels_rightmost_leg_by_arity() {
        for n in 2..=6 {
            for k in 1..n {
                for t in enumerate_trees(n, k) {
                    let marks = copy_marks(&t, n);
                    let arities = t.arities();
                    let rightmost: Vec<usize> = leaf_ancestor_chains(&t).last().unwrap().clone();
                    for v in 0..arities.len() {
                        if rightmost.contains(&v) {
                            assert_eq!(marks[v], CopyMark::Int(arities[v] as u32));
                        } else {
                            assert_eq!(marks[v], CopyMark::Star);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn star_sum_covers_every_labeling_once() {
        // Over all copies, the resolutions of the copy labelings hit every
        // full integer labeling exactly once.
        for n in 2..=6 {
            for k in 1..n {
                for t in enumerate_trees(n, k) {
                    let mut seen: Vec<String> = Vec::new();
                    for copy in 1..=n {
                        let labeled = copy_labeling(&t, copy);
                        for r in star_resolutions(&labeled) {
                            seen.push(r.canonical_key());
                        }
                    }
                    let total: usize = t.arities().iter().product();
                    assert_eq!(seen.len(), total);
                    seen.sort();
                    seen.dedup();
                    assert_eq!(seen.len(), total, "tree {}", t.canonical_key());
                }
            }
        }
    }

    #[test]
    fn split_complex_dend_n4() {
        let s = build_split_complex(1, 4);
        assert_eq!(s.complex.dims(), vec![4, 20, 20, 4]);
        assert!(s.complex.verify());
        assert_eq!(s.complex.homology_dims(), vec![0; 4]);
    }

    #[test]
    fn split_complex_quad_n4() {
        let s = build_split_complex(2, 4);
        assert_eq!(s.complex.dims(), vec![16, 80, 80, 16]);
        assert!(s.complex.verify());
        assert_eq!(s.complex.homology_dims(), vec![0; 4]);
    }

    #[test]
    fn split_complex_quad_n2_labels_are_generator_pairs() {
        let s = build_split_complex(2, 2);
        assert_eq!(s.tuples.len(), 4);
        let keys = s.complex.piece(1).keys();
        assert_eq!(
            keys,
            &[
                "c0:(1,1:..)".to_string(),
                "c1:(1,2:..)".to_string(),
                "c2:(2,1:..)".to_string(),
                "c3:(2,2:..)".to_string(),
            ]
        );
    }

    #[test]
    fn tuple_rank_is_lexicographic() {
        use CopyMark::Int;
        assert_eq!(tuple_rank(&[Int(1), Int(1)], 3), 0);
        assert_eq!(tuple_rank(&[Int(1), Int(2)], 3), 1);
        assert_eq!(tuple_rank(&[Int(2), Int(1)], 3), 3);
        assert_eq!(tuple_rank(&[Int(3), Int(3)], 3), 8);
        assert_eq!(tuple_rank(&[], 5), 0);
    }
}
