//! Presentations of quadratic binary non-symmetric operads.
//!
//! A presentation is a list of binary generators and a list of quadratic
//! relations, each relation a rational combination of 3-leaf comb trees
//! (left comb `(xy)z` or right comb `x(yz)`, with generators at the two
//! vertices). Built-ins cover the associative, dendriform, dialgebra and
//! quadri-algebra operads plus arbitrary black-square powers of dendriform.

use crate::linalg::{format_rational, parse_rational, Rational, SparseMatrix, SparseVec};
use crate::trees::{self, enumerate_trees, Label, LabeledTree, PlanarTree, Tree};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index into a presentation's generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId(pub usize);

/// Shape of a 3-leaf comb: `Left` is `(x o_upper y) o_root z`, `Right` is
/// `x o_root (y o_upper z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CombShape {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

/// One term of a quadratic relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comb3Term {
    pub shape: CombShape,
    pub root: GeneratorId,
    pub upper: GeneratorId,
    pub coeff: Rational,
}

/// A relation is a sum of comb terms, understood as `sum = 0`. Stored as a
/// sparse vector over the comb basis, normalized so the first nonzero
/// coefficient is `+1`.
pub type Relation = SparseVec;

/// Dimension of the comb-term span for `n_gens` generators.
pub fn comb_span_dim(n_gens: usize) -> usize {
    2 * n_gens * n_gens
}

/// Basis index of a comb term: left combs first, each block ordered by
/// (root, upper). This matches the order of [`free_basis`] at arity 3.
pub fn comb_index(shape: CombShape, root: usize, upper: usize, n_gens: usize) -> usize {
    let block = match shape {
        CombShape::Left => 0,
        CombShape::Right => n_gens * n_gens,
    };
    block + root * n_gens + upper
}

/// Inverse of [`comb_index`].
pub fn comb_from_index(idx: usize, n_gens: usize) -> (CombShape, usize, usize) {
    let sq = n_gens * n_gens;
    let (shape, rest) = if idx < sq { (CombShape::Left, idx) } else { (CombShape::Right, idx - sq) };
    (shape, rest / n_gens, rest % n_gens)
}

#[derive(Debug, Error)]
pub enum OperadError {
    #[error("malformed operad spec: {0}")]
    Json(String),
    #[error("relation references generator {index} but only {count} generators are declared")]
    GeneratorIndexOutOfRange { index: usize, count: usize },
    #[error("relation {relation} contains an explicit zero coefficient")]
    ZeroCoefficient { relation: usize },
    #[error("relation {relation} is empty")]
    EmptyRelation { relation: usize },
    #[error("relations are linearly dependent (rank {rank} < {count})")]
    DependentRelations { rank: usize, count: usize },
    #[error("unknown builtin operad `{0}`")]
    UnknownBuiltin(String),
}

/// A quadratic binary ns operad presentation.
#[derive(Clone, Debug)]
pub struct OperadPresentation {
    name: String,
    generators: Vec<String>,
    relations: Vec<Relation>,
}

impl OperadPresentation {
    /// Validates and normalizes a presentation. Relations must be nonempty,
    /// have nonzero coefficients, reference declared generators, and be
    /// linearly independent.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relations: Vec<Vec<Comb3Term>>,
    ) -> Result<Self, OperadError> {
        let n_gens = generators.len();
        let dim = comb_span_dim(n_gens);
        let mut vecs = Vec::with_capacity(relations.len());
        for (k, terms) in relations.iter().enumerate() {
            if terms.is_empty() {
                return Err(OperadError::EmptyRelation { relation: k });
            }
            let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(terms.len());
            for t in terms {
                for g in [t.root.0, t.upper.0] {
                    if g >= n_gens {
                        return Err(OperadError::GeneratorIndexOutOfRange { index: g, count: n_gens });
                    }
                }
                if t.coeff.is_zero() {
                    return Err(OperadError::ZeroCoefficient { relation: k });
                }
                entries.push((comb_index(t.shape, t.root.0, t.upper.0, n_gens), t.coeff.clone()));
            }
            // Coincident terms combine; a fully cancelling relation is empty.
            let mut acc: std::collections::BTreeMap<usize, Rational> = std::collections::BTreeMap::new();
            for (i, c) in entries {
                *acc.entry(i).or_insert_with(Rational::zero) += c;
            }
            let mut v = SparseVec::from_entries(dim, acc.into_iter().collect());
            if v.is_zero() {
                return Err(OperadError::EmptyRelation { relation: k });
            }
            v.normalize_leading();
            vecs.push(v);
        }
        let pres = OperadPresentation { name: name.into(), generators, relations: vecs };
        let rank = pres.relation_matrix().rank();
        if rank < pres.relations.len() {
            return Err(OperadError::DependentRelations { rank, count: pres.relations.len() });
        }
        Ok(pres)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn n_relations(&self) -> usize {
        self.relations.len()
    }

    /// Relations as rows of a matrix over the comb basis.
    pub fn relation_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(comb_span_dim(self.n_generators()), self.relations.clone())
    }

    /// Same generators count and the same normalized relation vectors,
    /// ignoring names.
    pub fn same_presentation(&self, other: &OperadPresentation) -> bool {
        self.n_generators() == other.n_generators() && self.relations == other.relations
    }

    /// Relation terms in struct form (for display and JSON emission).
    pub fn relation_terms(&self, k: usize) -> Vec<Comb3Term> {
        self.relations[k]
            .iter()
            .map(|(i, c)| {
                let (shape, root, upper) = comb_from_index(i, self.n_generators());
                Comb3Term {
                    shape,
                    root: GeneratorId(root),
                    upper: GeneratorId(upper),
                    coeff: c.clone(),
                }
            })
            .collect()
    }
}

/// Built-in operads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Ass,
    Dend,
    Dias,
    Quad,
    DendPow(usize),
}

impl Builtin {
    /// Parses `ass`, `dend`, `dias`, `quad` or `dend_pow(m)`.
    pub fn parse(name: &str) -> Result<Builtin, OperadError> {
        match name {
            "ass" => Ok(Builtin::Ass),
            "dend" => Ok(Builtin::Dend),
            "dias" => Ok(Builtin::Dias),
            "quad" => Ok(Builtin::Quad),
            _ => {
                if let Some(rest) = name.strip_prefix("dend_pow(") {
                    if let Some(num) = rest.strip_suffix(')') {
                        if let Ok(m) = num.trim().parse::<usize>() {
                            if m >= 1 {
                                return Ok(Builtin::DendPow(m));
                            }
                        }
                    }
                }
                Err(OperadError::UnknownBuiltin(name.to_string()))
            }
        }
    }

    /// The black-square power: `ass` is the empty product, `dend` is 1,
    /// `quad` is 2. `dias` is not a power of dendriform.
    pub fn square_power(self) -> Option<usize> {
        match self {
            Builtin::Ass => Some(0),
            Builtin::Dend => Some(1),
            Builtin::Quad => Some(2),
            Builtin::DendPow(m) => Some(m),
            Builtin::Dias => None,
        }
    }

    pub fn presentation(self) -> OperadPresentation {
        match self {
            Builtin::Ass => ass(),
            Builtin::Dend => dend(),
            Builtin::Dias => quadratic_dual(&dend()).with_name("dias"),
            Builtin::Quad => black_square(&dend(), &dend())
                .expect("quad is a valid black square")
                .with_name("quad"),
            Builtin::DendPow(m) => dend_pow(m),
        }
    }
}

/// Looks up a built-in presentation by name.
pub fn builtin(name: &str) -> Result<OperadPresentation, OperadError> {
    Builtin::parse(name).map(Builtin::presentation)
}

/// The associative operad: one generator, one relation `(xy)z = x(yz)`.
pub fn ass() -> OperadPresentation {
    let term = |shape, coeff: i64| Comb3Term {
        shape,
        root: GeneratorId(0),
        upper: GeneratorId(0),
        coeff: Rational::from_integer(coeff.into()),
    };
    OperadPresentation::new(
        "ass",
        vec!["m".into()],
        vec![vec![term(CombShape::Left, 1), term(CombShape::Right, -1)]],
    )
    .expect("ass presentation is valid")
}

/// The dendriform operad: generators `prec` (0) and `succ` (1) with the
/// three axioms
///
/// ```text
/// (x<y)<z = x<(y*z),   (x>y)<z = x>(y<z),   (x*y)>z = x>(y>z)
/// ```
///
/// where `* = prec + succ`.
pub fn dend() -> OperadPresentation {
    let t = |shape, root: usize, upper: usize, coeff: i64| Comb3Term {
        shape,
        root: GeneratorId(root),
        upper: GeneratorId(upper),
        coeff: Rational::from_integer(coeff.into()),
    };
    use CombShape::{Left, Right};
    let (p, s) = (0, 1);
    OperadPresentation::new(
        "dend",
        vec!["prec".into(), "succ".into()],
        vec![
            vec![t(Left, p, p, 1), t(Right, p, p, -1), t(Right, p, s, -1)],
            vec![t(Left, p, s, 1), t(Right, s, p, -1)],
            vec![t(Left, s, p, 1), t(Left, s, s, 1), t(Right, s, s, -1)],
        ],
    )
    .expect("dend presentation is valid")
}

/// The m-th black-square power of dendriform, with generator names flattened
/// to m-tuples. `dend_pow(1)` is `dend`.
pub fn dend_pow(m: usize) -> OperadPresentation {
    assert!(m >= 1, "dend_pow needs m >= 1");
    let mut p = dend();
    for _ in 1..m {
        p = black_square(&dend(), &p).expect("dend powers stay independent");
    }
    if m == 1 {
        return p;
    }
    // Rebuild generator names as flat tuples (prec/succ by base-2 digits).
    let names: Vec<String> = (0..1usize << m)
        .map(|idx| {
            let parts: Vec<&str> = (0..m)
                .map(|k| if (idx >> (m - 1 - k)) & 1 == 0 { "prec" } else { "succ" })
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    OperadPresentation { name: format!("dend_pow({})", m), generators: names, relations: p.relations }
}

/// The quadratic dual `P(dual generators, orthogonal relations)`.
///
/// The pairing on the comb span is `+1` on matching left combs, `-1` on
/// matching right combs, `0` across shapes; the dual relations are the
/// canonical kernel basis of the pairing functionals of the relations.
pub fn quadratic_dual(p: &OperadPresentation) -> OperadPresentation {
    let n_gens = p.n_generators();
    let sq = n_gens * n_gens;
    let dim = comb_span_dim(n_gens);
    // Each relation yields the functional <r, -> with the right-comb block
    // negated.
    let rows: Vec<SparseVec> = p
        .relations
        .iter()
        .map(|r| {
            let entries = r
                .iter()
                .map(|(i, c)| (i, if i < sq { c.clone() } else { -c.clone() }))
                .collect();
            SparseVec::from_entries(dim, entries)
        })
        .collect();
    let pairing = SparseMatrix::from_rows(dim, rows);
    let mut duals = Vec::new();
    for mut v in pairing.kernel_basis() {
        v.normalize_leading();
        duals.push(v);
    }
    let generators = p.generators.iter().map(|g| format!("{}'", g)).collect();
    OperadPresentation {
        name: format!("{}!", p.name),
        generators,
        relations: duals,
    }
}

/// The black square product: generators are pairs (lexicographic,
/// first-factor major), and every pair of relations `(r, s)` contributes
/// `L(r) (x) L(s) - R(r) (x) R(s)` where `L`/`R` are the left/right comb
/// parts of the split form `r = L(r) - R(r)`.
///
/// Fails if the product relations come out linearly dependent, which means
/// the inputs do not have the split-form shape this construction assumes.
pub fn black_square(
    p: &OperadPresentation,
    q: &OperadPresentation,
) -> Result<OperadPresentation, OperadError> {
    let (np, nq) = (p.n_generators(), q.n_generators());
    let pair = |a: usize, b: usize| a * nq + b;
    let generators: Vec<String> = (0..np)
        .flat_map(|a| (0..nq).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", p.generators[a], q.generators[b]))
        .collect();
    let mut relations = Vec::with_capacity(p.n_relations() * q.n_relations());
    for r in &p.relations {
        for s in &q.relations {
            let mut terms = Vec::new();
            for (i, c) in r.iter() {
                let (sh_r, root_r, up_r) = comb_from_index(i, np);
                for (j, d) in s.iter() {
                    let (sh_s, root_s, up_s) = comb_from_index(j, nq);
                    if sh_r != sh_s {
                        continue;
                    }
                    // Left block keeps the product sign; the right blocks each
                    // carry an implicit minus whose product flips once more.
                    let coeff = match sh_r {
                        CombShape::Left => c * d,
                        CombShape::Right => -(c * d),
                    };
                    terms.push(Comb3Term {
                        shape: sh_r,
                        root: GeneratorId(pair(root_r, root_s)),
                        upper: GeneratorId(pair(up_r, up_s)),
                        coeff,
                    });
                }
            }
            relations.push(terms);
        }
    }
    OperadPresentation::new(
        format!("square({},{})", p.name, q.name),
        generators,
        relations,
    )
}

/// True iff the relations sum to the associativity of the total operation
/// `sigma = sum of all generators`: `L(sigma,sigma) - R(sigma,sigma)`.
pub fn relations_sum_check(p: &OperadPresentation) -> bool {
    let n_gens = p.n_generators();
    let dim = comb_span_dim(n_gens);
    let mut total = SparseVec::zero(dim);
    for r in &p.relations {
        total.add_scaled(r, &Rational::one());
    }
    let mut expect = Vec::with_capacity(dim);
    for root in 0..n_gens {
        for upper in 0..n_gens {
            expect.push((comb_index(CombShape::Left, root, upper, n_gens), Rational::one()));
            expect.push((comb_index(CombShape::Right, root, upper, n_gens), -Rational::one()));
        }
    }
    total == SparseVec::from_entries(dim, expect)
}

/// The free-operad basis at arity `n`: every binary tree with `n` leaves,
/// every vertex labeled by a generator. Tree-major, labelings lexicographic
/// in canonical vertex order.
pub fn free_basis(p: &OperadPresentation, n: usize) -> Vec<LabeledTree> {
    assert!(n >= 2);
    let n_gens = p.n_generators();
    let mut out = Vec::new();
    for shape in enumerate_trees(n, n - 1) {
        let k = shape.n_vertices();
        for labels in trees::assignments(&vec![n_gens; k]) {
            let labels: Vec<Label> = labels.into_iter().map(Label::Gen).collect();
            out.push(shape.with_labels(&labels));
        }
    }
    out
}

/// The arity-`n` slice of the operadic ideal: one column per embedding of a
/// relation into a binary tree. An embedding site is a tree with one ternary
/// vertex (all others binary), a generator labeling of the binary vertices,
/// and a relation to substitute at the ternary vertex. Rows are indexed by
/// [`free_basis`].
pub fn ideal_span(p: &OperadPresentation, n: usize) -> SparseMatrix {
    assert!(n >= 3);
    let n_gens = p.n_generators();
    let basis = free_basis(p, n);
    let index: std::collections::HashMap<String, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, t)| (t.canonical_key(), i))
        .collect();
    let mut columns: Vec<SparseVec> = Vec::new();
    for site in enumerate_trees(n, n - 2) {
        let arities = site.arities();
        let ternary = arities.iter().position(|&a| a == 3).expect("site has a ternary vertex");
        let binary: Vec<usize> = (0..arities.len()).filter(|&v| v != ternary).collect();
        for assignment in trees::assignments(&vec![n_gens; binary.len()]) {
            let labels: std::collections::HashMap<usize, usize> = binary
                .iter()
                .enumerate()
                .map(|(slot, &v)| (v, assignment[slot]))
                .collect();
            for rel in &p.relations {
                let mut entries = Vec::new();
                for (i, coeff) in rel.iter() {
                    let (shape, root, upper) = comb_from_index(i, n_gens);
                    let expanded =
                        expand_ternary(&site, ternary, shape, root, upper, &labels, &mut 0);
                    let row = index[&expanded.canonical_key()];
                    entries.push((row, coeff.clone()));
                }
                columns.push(SparseVec::from_entries(basis.len(), entries));
            }
        }
    }
    // Columns were built row-wise; assemble the matrix.
    let mut triplets = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter() {
            triplets.push((r, c, v.clone()));
        }
    }
    SparseMatrix::from_triplets(basis.len(), columns.len(), triplets)
}

/// Replaces the ternary vertex `ternary` (canonical id) of `site` by a comb
/// of the given shape, labeling the new pair `root`/`upper` and the binary
/// vertices per `binary_labels`.
fn expand_ternary(
    t: &PlanarTree,
    ternary: usize,
    shape: CombShape,
    root: usize,
    upper: usize,
    binary_labels: &std::collections::HashMap<usize, usize>,
    next: &mut usize,
) -> LabeledTree {
    match t {
        Tree::Leaf => Tree::Leaf,
        Tree::Node { children, .. } => {
            let my_id = *next;
            *next += 1;
            let new_children: Vec<LabeledTree> = children
                .iter()
                .map(|c| expand_ternary(c, ternary, shape, root, upper, binary_labels, next))
                .collect();
            if my_id == ternary {
                let mut it = new_children.into_iter();
                let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                let children = match shape {
                    CombShape::Left => vec![
                        Tree::Node { label: Label::Gen(upper), children: vec![a, b] },
                        c,
                    ],
                    CombShape::Right => vec![
                        a,
                        Tree::Node { label: Label::Gen(upper), children: vec![b, c] },
                    ],
                };
                Tree::Node { label: Label::Gen(root), children }
            } else {
                Tree::Node { label: Label::Gen(binary_labels[&my_id]), children: new_children }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Spec JSON interface.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SpecDoc {
    name: String,
    generators: Vec<String>,
    relations: Vec<Vec<SpecTerm>>,
}

#[derive(Serialize, Deserialize)]
struct SpecTerm {
    shape: CombShape,
    root: usize,
    upper: usize,
    coeff: String,
}

/// Parses an operad-spec JSON document:
///
/// ```json
/// {"name": "dend", "generators": ["prec", "succ"],
///  "relations": [[{"shape": "L", "root": 0, "upper": 0, "coeff": "1"}, ...], ...]}
/// ```
///
/// Coefficients are rational strings `"p"` or `"p/q"`; indices are 0-based
/// into `generators`.
pub fn parse_spec(document: &[u8]) -> Result<OperadPresentation, OperadError> {
    let doc: SpecDoc =
        serde_json::from_slice(document).map_err(|e| OperadError::Json(e.to_string()))?;
    let relations = doc
        .relations
        .iter()
        .enumerate()
        .map(|(k, terms)| {
            terms
                .iter()
                .map(|t| {
                    let coeff = parse_rational(&t.coeff)
                        .ok_or_else(|| OperadError::Json(format!("bad coefficient `{}`", t.coeff)))?;
                    if coeff.is_zero() {
                        return Err(OperadError::ZeroCoefficient { relation: k });
                    }
                    Ok(Comb3Term {
                        shape: t.shape,
                        root: GeneratorId(t.root),
                        upper: GeneratorId(t.upper),
                        coeff,
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    OperadPresentation::new(doc.name, doc.generators, relations)
}

/// Emits the spec JSON for a presentation; inverse of [`parse_spec`].
pub fn to_spec_json(p: &OperadPresentation) -> String {
    let doc = SpecDoc {
        name: p.name.clone(),
        generators: p.generators.clone(),
        relations: (0..p.n_relations())
            .map(|k| {
                p.relation_terms(k)
                    .into_iter()
                    .map(|t| SpecTerm {
                        shape: t.shape,
                        root: t.root.0,
                        upper: t.upper.0,
                        coeff: format_rational(&t.coeff),
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("spec serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn builtin_shapes() {
        let d = dend();
        assert_eq!(d.n_generators(), 2);
        assert_eq!(d.n_relations(), 3);
        let q = builtin("quad").unwrap();
        assert_eq!(q.n_generators(), 4);
        assert_eq!(q.n_relations(), 9);
        let a = builtin("ass").unwrap();
        assert_eq!(a.n_generators(), 1);
        assert_eq!(a.n_relations(), 1);
        assert!(builtin("nope").is_err());
        assert!(builtin("dend_pow(0)").is_err());
    }

    #[test]
    fn quad_is_dend_squared() {
        let q = black_square(&dend(), &dend()).unwrap();
        assert!(q.same_presentation(&builtin("quad").unwrap()));
    }

    #[test]
    fn quad_relation_1_2_matches_displayed_trees() {
        // Relation (1,2) of quad: left side has root (prec,prec) and upper
        // (prec,succ); right side splits over the first component.
        let q = builtin("quad").unwrap();
        // Relations are ordered pair-major: (1,2) is index 1.
        let terms = q.relation_terms(1);
        // Generator indices: (prec,prec)=0, (prec,succ)=1, (succ,prec)=2, (succ,succ)=3.
        let left: Vec<_> = terms.iter().filter(|t| t.shape == CombShape::Left).collect();
        assert_eq!(left.len(), 1);
        assert_eq!((left[0].root.0, left[0].upper.0), (0, 1));
        assert_eq!(left[0].coeff, rat(1));
        let mut right: Vec<_> = terms
            .iter()
            .filter(|t| t.shape == CombShape::Right)
            .map(|t| (t.root.0, t.upper.0, t.coeff.clone()))
            .collect();
        right.sort();
        assert_eq!(right, vec![(1, 0, rat(-1)), (1, 2, rat(-1))]);
    }

    #[test]
    fn dend_cubed_counts() {
        let c = black_square(&dend(), &black_square(&dend(), &dend()).unwrap()).unwrap();
        assert_eq!(c.n_generators(), 8);
        assert_eq!(c.n_relations(), 27);
        assert!(c.same_presentation(&dend_pow(3)));
    }

    #[test]
    fn square_counts_multiply() {
        let q = builtin("quad").unwrap();
        assert_eq!(q.n_generators(), dend().n_generators() * dend().n_generators());
        assert_eq!(q.n_relations(), dend().n_relations() * dend().n_relations());
    }

    #[test]
    fn sum_check_builtins() {
        assert!(relations_sum_check(&dend()));
        assert!(relations_sum_check(&builtin("quad").unwrap()));
        assert!(relations_sum_check(&dend_pow(3)));
        assert!(relations_sum_check(&ass()));
        // A free presentation fails.
        let free = OperadPresentation::new("free", vec!["a".into()], vec![]).unwrap();
        assert!(!relations_sum_check(&free));
    }

    #[test]
    fn dual_of_ass_is_ass() {
        let a = ass();
        assert!(quadratic_dual(&a).same_presentation(&a));
    }

    #[test]
    fn dual_of_dend_has_five_relations() {
        let d = quadratic_dual(&dend());
        assert_eq!(d.n_generators(), 2);
        assert_eq!(d.n_relations(), 5);
    }

    #[test]
    fn free_basis_counts() {
        assert_eq!(free_basis(&dend(), 3).len(), 8);
        assert_eq!(free_basis(&builtin("quad").unwrap(), 3).len(), 32);
        assert_eq!(free_basis(&ass(), 4).len(), 5);
    }

    #[test]
    fn ideal_ranks_small() {
        assert_eq!(ideal_span(&dend(), 3).rank(), 3);
        assert_eq!(ideal_span(&builtin("quad").unwrap(), 3).rank(), 9);
    }

    #[test]
    fn spec_json_round_trip() {
        let d = dend();
        let json = to_spec_json(&d);
        let back = parse_spec(json.as_bytes()).unwrap();
        assert!(back.same_presentation(&d));
        assert_eq!(back.name(), "dend");
    }

    #[test]
    fn spec_errors_are_distinct() {
        let bad_index = br#"{"name":"x","generators":["a","b"],
            "relations":[[{"shape":"L","root":5,"upper":0,"coeff":"1"}]]}"#;
        assert!(matches!(
            parse_spec(bad_index),
            Err(OperadError::GeneratorIndexOutOfRange { index: 5, count: 2 })
        ));
        let empty_relations = br#"{"name":"x","generators":["a"],"relations":[]}"#;
        let p = parse_spec(empty_relations).unwrap();
        assert_eq!(p.n_relations(), 0);
        let zero = br#"{"name":"x","generators":["a"],
            "relations":[[{"shape":"L","root":0,"upper":0,"coeff":"0"}]]}"#;
        assert!(matches!(parse_spec(zero), Err(OperadError::ZeroCoefficient { .. })));
        let dependent = br#"{"name":"x","generators":["a"],
            "relations":[[{"shape":"L","root":0,"upper":0,"coeff":"1"}],
                         [{"shape":"L","root":0,"upper":0,"coeff":"2"}]]}"#;
        assert!(matches!(parse_spec(dependent), Err(OperadError::DependentRelations { .. })));
        assert!(matches!(parse_spec(b"not json"), Err(OperadError::Json(_))));
    }
}
