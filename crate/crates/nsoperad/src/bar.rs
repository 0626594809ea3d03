//! The augmented dual bar complex of a presented operad, the per-arity
//! Koszulity check, and the homotopy data connecting the bar complex to the
//! split associahedron complexes.
//!
//! The degree +1 piece is the operad component `P(n)` itself; the degree `j`
//! piece (0 >= j >= -n+2) is spanned by trees with `n` leaves and `n+j-1`
//! vertices, each vertex labeled by an index into the chosen basis of the
//! dual component of its arity. The differential expands one vertex at a
//! time: geometric orientation sign times the structure constant of the dual
//! composition. Degree 0 maps onto `P(n)` by the free-to-quotient reduction.

use crate::associahedron::{expansion_sign, tuple_rank, SignData};
use crate::complexes::{BasisSpace, ChainComplex, ChainMap, Homotopy};
use crate::linalg::{Rational, SparseMatrix, SparseVec};
use crate::operads::{quadratic_dual, OperadPresentation};
use crate::quotient::{BasisRule, Tower, TowerError};
use crate::trees::{enumerate_trees, Label, LabeledTree, PlanarTree, Tree};
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::time::Instant;

/// Primal and dual towers for one presentation; everything a bar complex
/// needs, shared across arities.
pub struct BarContext {
    primal: Tower,
    dual: Tower,
}

impl BarContext {
    /// Builds both towers up to `max_arity`. `dual_rule` selects the dual
    /// basis: `Split { power }` for the built-ins, `Greedy` otherwise.
    pub fn build(
        pres: &OperadPresentation,
        max_arity: usize,
        dual_rule: BasisRule,
    ) -> Result<BarContext, TowerError> {
        let primal = Tower::build(pres.clone(), max_arity, BasisRule::Greedy)?;
        let dual = Tower::build(quadratic_dual(pres), max_arity, dual_rule)?;
        Ok(BarContext { primal, dual })
    }

    pub fn primal(&self) -> &Tower {
        &self.primal
    }

    pub fn dual(&self) -> &Tower {
        &self.dual
    }

    pub fn max_arity(&self) -> usize {
        self.primal.max_arity()
    }
}

/// The augmented dual bar complex at one arity.
pub struct BarComplex {
    pub operad: String,
    pub arity: usize,
    pub complex: ChainComplex,
    /// Tree shapes per position (position 0, the augmentation, is empty).
    pub shapes: Vec<Vec<PlanarTree>>,
}

impl BarComplex {
    /// Converts a fully resolved copy-labeled tree (integer tuples at every
    /// vertex) into the bar basis key, using the lexicographic rank of each
    /// tuple as the dual basis index.
    pub fn basis_key(&self, resolved: &LabeledTree) -> String {
        to_basis_labels(resolved).canonical_key()
    }

    /// Index of a resolved copy-labeled binary tree in the degree-0 piece.
    pub fn degree_zero_index(&self, resolved: &LabeledTree) -> usize {
        self.complex
            .piece(1)
            .index_of(&self.basis_key(resolved))
            .expect("resolved labeling indexes the degree-0 piece")
    }

    /// Column of the augmentation differential: the `P(n)` class of the
    /// degree-0 basis element `col`.
    pub fn reduction_column(&self, col: usize) -> SparseVec {
        self.complex.diff(0).column(col)
    }
}

/// Replaces resolved `Copy` labels by `Basis` labels via tuple rank.
fn to_basis_labels(t: &LabeledTree) -> LabeledTree {
    let arities = t.shape().arities();
    let labels: Vec<Label> = t
        .labels()
        .iter()
        .zip(&arities)
        .map(|(l, &ar)| {
            let Label::Copy(marks) = l else { panic!("expected copy labels") };
            Label::Basis(tuple_rank(marks, ar))
        })
        .collect();
    t.shape().with_labels(&labels)
}

/// Splits vertex `vid` of a labeled tree: children at `position-1 ..` move
/// under a new vertex labeled `upper`; the remaining vertex gets `lower`.
fn split_labeled(
    t: &LabeledTree,
    vid: usize,
    position: usize,
    upper_arity: usize,
    lower: &Label,
    upper: &Label,
    next: &mut usize,
) -> LabeledTree {
    match t {
        Tree::Leaf => Tree::Leaf,
        Tree::Node { label, children } => {
            let my_id = *next;
            *next += 1;
            if my_id == vid {
                let s = position - 1;
                let mut new_children: Vec<LabeledTree> = children[..s].to_vec();
                new_children.push(Tree::Node {
                    label: upper.clone(),
                    children: children[s..s + upper_arity].to_vec(),
                });
                new_children.extend(children[s + upper_arity..].iter().cloned());
                Tree::Node { label: lower.clone(), children: new_children }
            } else {
                Tree::Node {
                    label: label.clone(),
                    children: children
                        .iter()
                        .map(|c| split_labeled(c, vid, position, upper_arity, lower, upper, next))
                        .collect(),
                }
            }
        }
    }
}

/// Builds the augmented dual bar complex of `ctx`'s presentation at arity `n`.
pub fn build_bar(ctx: &BarContext, n: usize) -> BarComplex {
    assert!(n >= 2 && n <= ctx.max_arity());
    let pres = ctx.primal.presentation();
    let degrees: Vec<i32> = (0..n).map(|k| 1 - k as i32).collect();

    // Tree shapes and Basis-labeled bases per position.
    let mut shapes: Vec<Vec<PlanarTree>> = vec![Vec::new()];
    for k in 1..n {
        shapes.push(enumerate_trees(n, n - k));
    }
    let dual_dim = |arity: usize| ctx.dual.component(arity).dim();
    let mut pieces: Vec<BasisSpace> = Vec::with_capacity(n);
    pieces.push(BasisSpace::new(ctx.primal.component(n).basis_keys()));
    let mut labelings: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new()]; // (shape idx, labels)
    for pos in 1..n {
        let mut keys = Vec::new();
        let mut labs = Vec::new();
        for (ti, t) in shapes[pos].iter().enumerate() {
            let bounds: Vec<usize> = t.arities().iter().map(|&a| dual_dim(a)).collect();
            for assignment in crate::trees::assignments(&bounds) {
                let labels: Vec<Label> = assignment.iter().map(|&k| Label::Basis(k)).collect();
                keys.push(t.with_labels(&labels).canonical_key());
                labs.push((ti, assignment));
            }
        }
        pieces.push(BasisSpace::new(keys));
        labelings.push(labs);
    }

    // Reverse structure constants: for a vertex of arity l split into
    // (a, pos, b), list per target class c the pairs (x, y) with coefficient.
    let mut rev: HashMap<(usize, usize, usize), Vec<Vec<(usize, usize, Rational)>>> =
        HashMap::new();
    for l in 3..=n {
        let comp = ctx.dual.component(l);
        for (&(a, pos0, x, y), vec) in &comp.constants {
            let entry = rev
                .entry((l, a, pos0))
                .or_insert_with(|| vec![Vec::new(); comp.dim()]);
            for (c, coeff) in vec.iter() {
                entry[c].push((x, y, coeff.clone()));
            }
        }
    }

    // Augmentation differential: the primal reduction, with the degree-0
    // basis identified with the free span (dual arity-2 classes are the
    // generators in order).
    let primal_n = ctx.primal.component(n);
    assert_eq!(primal_n.ambient_dim(), pieces[1].dim());
    let mut diffs: Vec<SparseMatrix> = vec![primal_n.reduction.clone()];

    for pos in 1..n - 1 {
        // Source: position pos+1 (fewer vertices); target: position pos.
        let target = &pieces[pos];
        let source_trees = &shapes[pos + 1];
        let mut triplets = Vec::new();
        let sign_data: Vec<SignData> = source_trees.iter().map(SignData::of).collect();
        let expansions_by_tree: Vec<Vec<crate::trees::Expansion>> =
            source_trees.iter().map(crate::trees::expansions).collect();
        for (col, (ti, assignment)) in labelings[pos + 1].iter().enumerate() {
            let t = &source_trees[*ti];
            let labels: Vec<Label> = assignment.iter().map(|&k| Label::Basis(k)).collect();
            let labeled = t.with_labels(&labels);
            for exp in &expansions_by_tree[*ti] {
                let sign = expansion_sign(&sign_data[*ti], exp);
                let v = exp.base_vertex.0;
                let l = t.arities()[v];
                let c = assignment[v];
                let Some(table) = rev.get(&(l, exp.lower_arity, exp.position - 1)) else {
                    continue;
                };
                for (x, y, coeff) in &table[c] {
                    let target_tree = split_labeled(
                        &labeled,
                        v,
                        exp.position,
                        exp.upper_arity,
                        &Label::Basis(*x),
                        &Label::Basis(*y),
                        &mut 0,
                    );
                    let row = target
                        .index_of(&target_tree.canonical_key())
                        .expect("split labeling indexes the target piece");
                    let val = if sign == 1 { coeff.clone() } else { -coeff.clone() };
                    triplets.push((row, col, val));
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(
            target.dim(),
            pieces[pos + 1].dim(),
            triplets,
        ));
    }

    BarComplex {
        operad: pres.name().to_string(),
        arity: n,
        complex: ChainComplex::new(
            format!("bar({}, {})", pres.name(), n),
            degrees,
            pieces,
            diffs,
        ),
        shapes,
    }
}

/// Per-arity slice of a Koszulity report.
#[derive(Debug, Clone, Serialize)]
pub struct ArityReport {
    pub n: usize,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub euler: i64,
}

/// The verdict of [`koszul_check`], serialized as the report JSON.
#[derive(Debug, Clone, Serialize)]
pub struct KoszulReport {
    pub operad: String,
    pub max_arity: usize,
    pub per_arity: Vec<ArityReport>,
    pub koszul: bool,
    pub elapsed_ms: u128,
}

impl KoszulReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Arities with nonzero homology, with the offending degrees.
    pub fn failures(&self) -> Vec<(usize, Vec<(i32, usize)>)> {
        self.per_arity
            .iter()
            .filter_map(|a| {
                let bad: Vec<(i32, usize)> = a
                    .homology
                    .iter()
                    .enumerate()
                    .filter(|(_, &h)| h != 0)
                    .map(|(i, &h)| (1 - i as i32, h))
                    .collect();
                if bad.is_empty() { None } else { Some((a.n, bad)) }
            })
            .collect()
    }
}

/// Builds the augmented dual bar complex for every arity up to the bound and
/// reports homology. The verdict is `koszul` iff every homology group
/// vanishes (the augmented complex is exact everywhere).
pub fn koszul_check(
    pres: &OperadPresentation,
    max_arity: usize,
    dual_rule: BasisRule,
) -> Result<KoszulReport, TowerError> {
    let start = Instant::now();
    let ctx = BarContext::build(pres, max_arity, dual_rule)?;
    let per_arity: Vec<ArityReport> = (2..=max_arity)
        .into_par_iter()
        .map(|n| {
            let bar = build_bar(&ctx, n);
            ArityReport {
                n,
                dims: bar.complex.dims(),
                homology: bar.complex.homology_dims(),
                euler: bar.complex.euler_characteristic(),
            }
        })
        .collect();
    let koszul = per_arity.iter().all(|a| a.homology.iter().all(|&h| h == 0));
    Ok(KoszulReport {
        operad: pres.name().to_string(),
        max_arity,
        per_arity,
        koszul,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// A chain retraction onto the split summand: `r . f = I` degreewise and
/// `r` commutes with the differentials. Built top-down: each step solves the
/// particular chain condition and corrects inside the kernel to restore the
/// left-inverse property; solvability follows from `f` being a split
/// injection of complexes.
pub fn chain_retraction(
    f: &ChainMap,
    split: &ChainComplex,
    bar: &ChainComplex,
) -> Option<ChainMap> {
    let positions = split.n_positions();
    let mut maps: Vec<SparseMatrix> = Vec::with_capacity(positions);
    // Top degree: any left inverse.
    let pi0 = left_inverse(&f.maps[0])?;
    maps.push(pi0);
    for i in 0..positions - 1 {
        let r = maps[i].mul(bar.diff(i));
        let particular = split.diff(i).solve_right(&r)?;
        let want = SparseMatrix::identity(split.piece(i + 1).dim())
            .sub(&particular.mul(&f.maps[i + 1]));
        if want.is_zero() {
            maps.push(particular);
            continue;
        }
        let kernel = split.diff(i).kernel_basis();
        let kmat = SparseMatrix::from_rows(split.piece(i + 1).dim(), kernel).transpose();
        let z = kmat.solve_right(&want)?;
        let y_t = f.maps[i + 1].transpose().solve_right(&z.transpose())?;
        maps.push(particular.add(&kmat.mul(&y_t.transpose())));
    }
    Some(ChainMap { maps })
}

/// Degreewise least-index left inverse: solves `x . m = I` via transposes.
pub fn left_inverse(m: &SparseMatrix) -> Option<SparseMatrix> {
    m.transpose()
        .solve_right(&SparseMatrix::identity(m.cols()))
        .map(|x| x.transpose())
}

/// Builds the idempotent `p = f . r` on the bar complex, per position.
pub fn idempotent(f: &ChainMap, r: &ChainMap) -> Vec<SparseMatrix> {
    f.maps.iter().zip(&r.maps).map(|(fi, ri)| fi.mul(ri)).collect()
}

/// `I - p` per position.
pub fn complement_of(p: &[SparseMatrix]) -> Vec<SparseMatrix> {
    p.iter().map(|m| SparseMatrix::identity(m.rows()).sub(m)).collect()
}

/// The full homotopy package for one built-in at one arity: inclusion,
/// chain retraction, idempotent and homotopy certifying `I - p = dh + hd`.
pub struct SummandData {
    pub split: crate::associahedron::SplitComplex,
    pub bar: BarComplex,
    pub f: ChainMap,
    pub retraction: ChainMap,
    pub idem: Vec<SparseMatrix>,
    pub homotopy: Homotopy,
}

/// Builds inclusion, retraction, idempotent and homotopy for the power-`m`
/// built-in at arity `n`.
pub fn summand_data(ctx: &BarContext, power: usize, n: usize) -> Option<SummandData> {
    let split = crate::associahedron::build_split_complex(power, n);
    let bar = build_bar(ctx, n);
    let f = crate::associahedron::inclusion_map(&split, &bar);
    let retraction = chain_retraction(&f, &split.complex, &bar.complex)?;
    let idem = idempotent(&f, &retraction);
    let rhs = complement_of(&idem);
    let homotopy = crate::complexes::homotopy_for(&bar.complex, &rhs).ok()?;
    Some(SummandData { split, bar, f, retraction, idem, homotopy })
}

// ---------------------------------------------------------------------------
// Pair transport: dend data -> quad data.
// ---------------------------------------------------------------------------

/// How the paired homotopy entries are weighted on each shape transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairWeight {
    /// Plain entrywise products over matching shape pairs.
    One,
    /// Products carry the geometric incidence sign; products over
    /// non-incident shape pairs are dropped.
    Epsilon,
}

/// Outcome of the quad homotopy transport.
#[derive(Debug, Serialize)]
pub struct TransportReport {
    pub arity: usize,
    /// Weight under which the paired homotopy satisfied the identity, if any.
    pub paired_weight: Option<PairWeight>,
    /// Whether the transported idempotent is a chain map.
    pub idempotent_is_chain: bool,
    /// Whether the final (paired or solved) homotopy satisfies the identity.
    pub identity_holds: bool,
    /// Per-position verdicts for the homotopy identity with the reported data.
    pub per_position: Vec<bool>,
}

/// Indexes a bar piece of the pair operad by (shape, component labelings).
struct PairIndex {
    /// For each basis column: (shape index, dend label vector 1, vector 2).
    cols: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

fn pair_index(shapes: &[PlanarTree], ctx_dend: &BarContext, quad_piece_dim: usize) -> PairIndex {
    // Mirrors the basis enumeration of build_bar for the quad dual, whose
    // component dims are squares of the dend dual dims with lexicographic
    // pairing.
    let mut cols = Vec::new();
    for (ti, t) in shapes.iter().enumerate() {
        let dend_bounds: Vec<usize> =
            t.arities().iter().map(|&a| ctx_dend.dual.component(a).dim()).collect();
        let quad_bounds: Vec<usize> = dend_bounds.iter().map(|&d| d * d).collect();
        for assignment in crate::trees::assignments(&quad_bounds) {
            let first: Vec<usize> = assignment
                .iter()
                .zip(&dend_bounds)
                .map(|(&k, &d)| k / d)
                .collect();
            let second: Vec<usize> = assignment
                .iter()
                .zip(&dend_bounds)
                .map(|(&k, &d)| k % d)
                .collect();
            cols.push((ti, first, second));
        }
    }
    assert_eq!(cols.len(), quad_piece_dim, "pair index covers the quad piece");
    PairIndex { cols }
}

/// Labelings of each bar piece as (shape index, dual-basis labels), matching
/// the basis order of [`build_bar`].
fn bar_labelings(ctx: &BarContext, bar: &BarComplex, pos: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for (ti, t) in bar.shapes[pos].iter().enumerate() {
        let bounds: Vec<usize> =
            t.arities().iter().map(|&a| ctx.dual.component(a).dim()).collect();
        for assignment in crate::trees::assignments(&bounds) {
            out.push((ti, assignment));
        }
    }
    out
}

/// Transports the dendriform homotopy package to the quadri-algebra complex
/// by tuple pairing on matching tree shapes, then verifies the homotopy
/// identity. If no paired weight satisfies the identity, the homotopy is
/// solved directly against the paired idempotent and reported as such.
pub fn pair_homotopy_transport(
    ctx_dend: &BarContext,
    ctx_quad: &BarContext,
    n: usize,
) -> TransportReport {
    let dend = summand_data(ctx_dend, 1, n).expect("dend summand data exists");
    let quad_split = crate::associahedron::build_split_complex(2, n);
    let quad_bar = build_bar(ctx_quad, n);
    let f_quad = crate::associahedron::inclusion_map(&quad_split, &quad_bar);

    let positions = quad_bar.complex.n_positions();

    // Shape-indexed views of the dend data.
    let dend_bar_idx: Vec<Vec<(usize, Vec<usize>)>> =
        (0..positions).map(|i| bar_labelings(ctx_dend, &dend.bar, i)).collect();
    let quad_idx: Vec<PairIndex> = (0..positions)
        .map(|i| {
            if i == 0 {
                PairIndex { cols: Vec::new() }
            } else {
                pair_index(&quad_bar.shapes[i], ctx_dend, quad_bar.complex.piece(i).dim())
            }
        })
        .collect();

    // Split-side pairing: copy tuples of the quad split complex are pairs of
    // dend copies; basis order is copy-major then tree order.
    let dend_split_cols: Vec<Vec<(usize, usize)>> = (0..positions)
        .map(|i| {
            let trees = if i == 0 { 1 } else { dend.split.trees[i].len() };
            let mut v = Vec::new();
            for copy in 0..n {
                for t in 0..trees {
                    v.push((copy, t));
                }
            }
            v
        })
        .collect();

    // Paired retraction on positions >= 1.
    let mut r_maps: Vec<SparseMatrix> = Vec::with_capacity(positions);
    r_maps.push(SparseMatrix::zero(0, 0)); // placeholder, fixed below
    for i in 1..positions {
        let d_entries = dend_entries_for_retraction(&dend, &dend_bar_idx[i], &dend_split_cols[i], i);
        let rows = quad_split_rows(&quad_split, i);
        let mut triplets = Vec::new();
        for (col, (ts, l1, l2)) in quad_idx[i].cols.iter().enumerate() {
            for (row, &(c1, t1, c2, t2)) in rows.iter().enumerate() {
                if t1 != *ts || t2 != *ts {
                    continue;
                }
                let a = d_entries.get(&(c1, t1, *ts, l1.clone()));
                let b = d_entries.get(&(c2, t2, *ts, l2.clone()));
                if let (Some(a), Some(b)) = (a, b) {
                    let v = a * b;
                    if !v.is_zero() {
                        triplets.push((row, col, v));
                    }
                }
            }
        }
        r_maps.push(SparseMatrix::from_triplets(
            quad_split.complex.piece(i).dim(),
            quad_bar.complex.piece(i).dim(),
            triplets,
        ));
    }
    // Position 0: induced on cokernels. lift = chosen-basis matrix of Quad(n).
    let lift = basis_matrix(ctx_quad.primal.component(n));
    r_maps[0] = quad_split.complex.diff(0).mul(&r_maps[1]).mul(&lift);
    let retraction = ChainMap { maps: r_maps };

    let idem = idempotent(&f_quad, &retraction);
    let idempotent_is_chain = {
        let as_map = ChainMap { maps: idem.clone() };
        crate::complexes::verify_chain_map(&as_map, &quad_bar.complex, &quad_bar.complex)
    };
    let rhs = complement_of(&idem);

    // Candidate paired homotopies.
    let mut paired_weight = None;
    let mut homotopy: Option<Homotopy> = None;
    for weight in [PairWeight::Epsilon, PairWeight::One] {
        if let Some(h) = paired_homotopy(&dend, &quad_bar, &dend_bar_idx, &quad_idx, weight, &rhs)
        {
            if crate::complexes::verify_homotopy_identity(&rhs, &h, &quad_bar.complex) {
                paired_weight = Some(weight);
                homotopy = Some(h);
                break;
            }
        }
    }
    if homotopy.is_none() && idempotent_is_chain {
        homotopy = crate::complexes::homotopy_for(&quad_bar.complex, &rhs).ok();
    }

    let (identity_holds, per_position) = match &homotopy {
        Some(h) => {
            let per: Vec<bool> = (0..positions)
                .map(|i| verify_identity_at(&rhs, h, &quad_bar.complex, i))
                .collect();
            (per.iter().all(|&b| b), per)
        }
        None => (false, vec![false; positions]),
    };

    TransportReport {
        arity: n,
        paired_weight,
        idempotent_is_chain,
        identity_holds,
        per_position,
    }
}

fn verify_identity_at(
    rhs: &[SparseMatrix],
    h: &Homotopy,
    c: &ChainComplex,
    i: usize,
) -> bool {
    let n = c.n_positions();
    let dim = c.piece(i).dim();
    let mut acc = SparseMatrix::zero(dim, dim);
    if i < n - 1 {
        acc = acc.add(&c.diff(i).mul(&h.maps[i]));
    }
    if i > 0 {
        acc = acc.add(&h.maps[i - 1].mul(&c.diff(i - 1)));
    }
    acc == rhs[i]
}

/// The chosen basis of a quotient space as an ambient-span matrix
/// (ambient_dim x dim); a right inverse of the reduction.
fn basis_matrix(q: &crate::quotient::QuotientSpace) -> SparseMatrix {
    SparseMatrix::from_rows(q.ambient_dim(), q.basis.clone()).transpose()
}

/// Dend retraction entries keyed by (copy, tree shape, bar shape, bar labels).
fn dend_entries_for_retraction(
    dend: &SummandData,
    bar_cols: &[(usize, Vec<usize>)],
    split_rows: &[(usize, usize)],
    pos: usize,
) -> HashMap<(usize, usize, usize, Vec<usize>), Rational> {
    let m = &dend.retraction.maps[pos];
    let mut out = HashMap::new();
    for (r, c, v) in m.iter_entries() {
        let (copy, tree) = split_rows[r];
        let (shape, labels) = &bar_cols[c];
        out.insert((copy, tree, *shape, labels.clone()), v.clone());
    }
    out
}

/// Quad split basis rows at a position as (copy1, tree, copy2, tree) with the
/// pair of dend copies backing each quad copy tuple.
fn quad_split_rows(
    split: &crate::associahedron::SplitComplex,
    pos: usize,
) -> Vec<(usize, usize, usize, usize)> {
    let trees = split.trees[pos].len();
    let mut rows = Vec::new();
    for tuple in &split.tuples {
        let (c1, c2) = (tuple[0] - 1, tuple[1] - 1);
        for t in 0..trees {
            rows.push((c1, t, c2, t));
        }
    }
    rows
}

/// Builds the paired homotopy on positions >= 1 and solves position 0 from
/// the identity at the top; returns `None` when the position-0 solve fails.
fn paired_homotopy(
    dend: &SummandData,
    quad_bar: &BarComplex,
    dend_bar_idx: &[Vec<(usize, Vec<usize>)>],
    quad_idx: &[PairIndex],
    weight: PairWeight,
    rhs: &[SparseMatrix],
) -> Option<Homotopy> {
    let positions = quad_bar.complex.n_positions();
    // Incidence signs between shapes of adjacent positions: target shape
    // (more vertices, lower position index) from source shape.
    let mut maps: Vec<SparseMatrix> = Vec::with_capacity(positions - 1);
    maps.push(SparseMatrix::zero(0, 0)); // placeholder for position 0
    for i in 1..positions - 1 {
        // h.maps[i]: piece(i) -> piece(i+1).
        let h_d = &dend.homotopy.maps[i];
        let mut entries: HashMap<(usize, Vec<usize>, usize, Vec<usize>), Rational> =
            HashMap::new();
        for (r, c, v) in h_d.iter_entries() {
            let (ts, tl) = &dend_bar_idx[i + 1][r];
            let (ss, sl) = &dend_bar_idx[i][c];
            entries.insert((*ts, tl.clone(), *ss, sl.clone()), v.clone());
        }
        let incidence = incidence_signs(&quad_bar.shapes[i + 1], &quad_bar.shapes[i]);
        let mut triplets = Vec::new();
        for (col, (ss, s1, s2)) in quad_idx[i].cols.iter().enumerate() {
            for (row, (ts, t1, t2)) in quad_idx[i + 1].cols.iter().enumerate() {
                let a = entries.get(&(*ts, t1.clone(), *ss, s1.clone()));
                let b = entries.get(&(*ts, t2.clone(), *ss, s2.clone()));
                let (Some(a), Some(b)) = (a, b) else { continue };
                let mut v = a * b;
                if weight == PairWeight::Epsilon {
                    match incidence.get(&(*ts, *ss)) {
                        Some(&sign) => {
                            if sign < 0 {
                                v = -v;
                            }
                        }
                        None => continue,
                    }
                }
                if !v.is_zero() {
                    triplets.push((row, col, v));
                }
            }
        }
        maps.push(SparseMatrix::from_triplets(
            quad_bar.complex.piece(i + 1).dim(),
            quad_bar.complex.piece(i).dim(),
            triplets,
        ));
    }
    // Position 0: solve d0 . h0 = rhs0 (top-of-complex identity).
    let h0 = quad_bar.complex.diff(0).solve_right(&rhs[0])?;
    maps[0] = h0;
    Some(Homotopy { maps })
}

/// Signs of shape incidences, keyed `(base, expanded)`: expanding a vertex
/// of `bases[b]` yields `expanded[e]` with the orientation sign.
fn incidence_signs(
    bases: &[PlanarTree],
    expanded: &[PlanarTree],
) -> HashMap<(usize, usize), i64> {
    let expanded_index: HashMap<String, usize> =
        expanded.iter().enumerate().map(|(i, t)| (t.canonical_key(), i)).collect();
    let mut out = HashMap::new();
    for (bi, b) in bases.iter().enumerate() {
        let data = SignData::of(b);
        for exp in crate::trees::expansions(b) {
            let ei = expanded_index[&exp.tree.canonical_key()];
            out.insert((bi, ei), expansion_sign(&data, &exp));
        }
    }
    out
}
