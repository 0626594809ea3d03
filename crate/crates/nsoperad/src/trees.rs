//! Planar rooted trees: enumeration, edge contraction/expansion, leaf paths
//! and a canonical serialization.
//!
//! Trees index the bases of every vector space in this crate: faces of the
//! associahedron, free-operad spans, bar-complex pieces. Leaves are implicit
//! (numbered 1..n left to right, never labeled); internal vertices have
//! arity >= 2 and may carry a label.

use std::fmt::Write as _;
use thiserror::Error;

/// A planar rooted tree with a label of type `L` at every internal vertex.
///
/// `Tree<()>` is an unlabeled shape; see [`PlanarTree`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree<L> {
    Leaf,
    Node { label: L, children: Vec<Tree<L>> },
}

/// An unlabeled planar rooted tree.
pub type PlanarTree = Tree<()>;

/// A tree labeled by [`Label`] values.
pub type LabeledTree = Tree<Label>;

/// Index of an internal vertex in the canonical order: depth-first, root
/// first, children left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// One component of a copy labeling: an integer in 1..=arity, or `*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CopyMark {
    Int(u32),
    Star,
}

/// Vertex label domains used across the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Generator index: free-operad basis trees.
    Gen(usize),
    /// Index into the chosen basis of a dual arity component: bar complexes.
    Basis(usize),
    /// m-tuple copy labeling: split associahedron complexes.
    Copy(Vec<CopyMark>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex {0:?} is not the upper end of an internal edge")]
    NotInternalEdge(VertexId),
    #[error("leaf index {index} out of range 1..{limit}")]
    LeafIndexOutOfRange { index: usize, limit: usize },
    #[error("tree parse error: {0}")]
    Parse(String),
}

impl<L> Tree<L> {
    pub fn node(label: L, children: Vec<Tree<L>>) -> Self {
        debug_assert!(children.len() >= 2, "internal vertices need arity >= 2");
        Tree::Node { label, children }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node { children, .. } => children.iter().map(Tree::n_leaves).sum(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node { children, .. } => {
                1 + children.iter().map(Tree::n_vertices).sum::<usize>()
            }
        }
    }

    /// Arities of the internal vertices in canonical (depth-first) order.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk(&mut |node_children, _| out.push(node_children));
        out
    }

    /// Labels in canonical vertex order.
    pub fn labels(&self) -> Vec<&L> {
        fn go<'a, L>(t: &'a Tree<L>, out: &mut Vec<&'a L>) {
            if let Tree::Node { label, children } = t {
                out.push(label);
                for c in children {
                    go(c, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    fn walk(&self, f: &mut impl FnMut(usize, &L)) {
        if let Tree::Node { label, children } = self {
            f(children.len(), label);
            for c in children {
                c.walk(f);
            }
        }
    }

    /// Drops the labels, keeping the shape.
    pub fn shape(&self) -> PlanarTree {
        self.map_labels(&mut |_| ())
    }

    pub fn map_labels<M>(&self, f: &mut impl FnMut(&L) -> M) -> Tree<M> {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node { label, children } => Tree::Node {
                label: f(label),
                children: children.iter().map(|c| c.map_labels(f)).collect(),
            },
        }
    }

    /// Replaces the labels with `labels[vertex id]`.
    pub fn with_labels<M: Clone>(&self, labels: &[M]) -> Tree<M> {
        fn go<L, M: Clone>(t: &Tree<L>, labels: &[M], next: &mut usize) -> Tree<M> {
            match t {
                Tree::Leaf => Tree::Leaf,
                Tree::Node { children, .. } => {
                    let label = labels[*next].clone();
                    *next += 1;
                    Tree::Node {
                        label,
                        children: children.iter().map(|c| go(c, labels, next)).collect(),
                    }
                }
            }
        }
        let mut next = 0;
        let out = go(self, labels, &mut next);
        assert_eq!(next, labels.len(), "label count must match vertex count");
        out
    }

    /// Grafts `upper` into leaf `pos` (1-based) of `self`.
    pub fn graft(&self, pos: usize, upper: &Tree<L>) -> Tree<L>
    where
        L: Clone,
    {
        fn go<L: Clone>(t: &Tree<L>, pos: usize, next: &mut usize, upper: &Tree<L>) -> Tree<L> {
            match t {
                Tree::Leaf => {
                    *next += 1;
                    if *next == pos { upper.clone() } else { Tree::Leaf }
                }
                Tree::Node { label, children } => Tree::Node {
                    label: label.clone(),
                    children: children.iter().map(|c| go(c, pos, next, upper)).collect(),
                },
            }
        }
        assert!(pos >= 1 && pos <= self.n_leaves(), "graft position out of range");
        let mut next = 0;
        go(self, pos, &mut next, upper)
    }

    /// Canonical injective serialization: leaves are `.`, a vertex is
    /// `(label:children)` (just `(children)` for unlabeled trees).
    pub fn canonical_key(&self) -> String
    where
        L: KeyLabel,
    {
        let mut s = String::new();
        self.write_key(&mut s);
        s
    }

    fn write_key(&self, out: &mut String)
    where
        L: KeyLabel,
    {
        match self {
            Tree::Leaf => out.push('.'),
            Tree::Node { label, children } => {
                out.push('(');
                let frag = label.key_fragment();
                if !frag.is_empty() {
                    out.push_str(&frag);
                    out.push(':');
                }
                for c in children {
                    c.write_key(out);
                }
                out.push(')');
            }
        }
    }
}

/// Label types that can appear inside a canonical key.
pub trait KeyLabel: Sized {
    /// Rendered form; empty for unlabeled trees.
    fn key_fragment(&self) -> String;
    /// Inverse of `key_fragment`.
    fn parse_fragment(s: &str) -> Result<Self, TreeError>;
}

impl KeyLabel for () {
    fn key_fragment(&self) -> String {
        String::new()
    }
    fn parse_fragment(s: &str) -> Result<Self, TreeError> {
        if s.is_empty() {
            Ok(())
        } else {
            Err(TreeError::Parse(format!("unexpected label `{}` on plain tree", s)))
        }
    }
}

impl KeyLabel for Label {
    fn key_fragment(&self) -> String {
        match self {
            Label::Gen(i) => format!("g{}", i),
            Label::Basis(i) => format!("b{}", i),
            Label::Copy(marks) => {
                let mut s = String::new();
                for (k, m) in marks.iter().enumerate() {
                    if k > 0 {
                        s.push(',');
                    }
                    match m {
                        CopyMark::Int(r) => {
                            let _ = write!(s, "{}", r);
                        }
                        CopyMark::Star => s.push('*'),
                    }
                }
                s
            }
        }
    }

    fn parse_fragment(s: &str) -> Result<Self, TreeError> {
        let bad = |s: &str| TreeError::Parse(format!("bad label fragment `{}`", s));
        if let Some(rest) = s.strip_prefix('g') {
            return rest.parse().map(Label::Gen).map_err(|_| bad(s));
        }
        if let Some(rest) = s.strip_prefix('b') {
            return rest.parse().map(Label::Basis).map_err(|_| bad(s));
        }
        let mut marks = Vec::new();
        for part in s.split(',') {
            if part == "*" {
                marks.push(CopyMark::Star);
            } else {
                marks.push(CopyMark::Int(part.parse().map_err(|_| bad(s))?));
            }
        }
        if marks.is_empty() {
            return Err(bad(s));
        }
        Ok(Label::Copy(marks))
    }
}

/// Parses a canonical key back into a tree.
pub fn parse_key<L: KeyLabel + Clone>(key: &str) -> Result<Tree<L>, TreeError> {
    let bytes = key.as_bytes();
    let (tree, used) = parse_at(bytes, 0)?;
    if used != bytes.len() {
        return Err(TreeError::Parse(format!("trailing input at byte {}", used)));
    }
    Ok(tree)
}

fn parse_at<L: KeyLabel + Clone>(bytes: &[u8], at: usize) -> Result<(Tree<L>, usize), TreeError> {
    match bytes.get(at) {
        Some(b'.') => Ok((Tree::Leaf, at + 1)),
        Some(b'(') => {
            // The label fragment runs to the first ':' before any '.'/'('/')'.
            let mut k = at + 1;
            while k < bytes.len() && !matches!(bytes[k], b'.' | b'(' | b')' | b':') {
                k += 1;
            }
            let (label, mut pos) = if bytes.get(k) == Some(&b':') {
                let frag = std::str::from_utf8(&bytes[at + 1..k]).unwrap();
                (L::parse_fragment(frag)?, k + 1)
            } else {
                (L::parse_fragment("")?, at + 1)
            };
            let mut children = Vec::new();
            while bytes.get(pos) != Some(&b')') {
                if pos >= bytes.len() {
                    return Err(TreeError::Parse("unterminated vertex".into()));
                }
                let (child, next) = parse_at(bytes, pos)?;
                children.push(child);
                pos = next;
            }
            if children.len() < 2 {
                return Err(TreeError::Parse("vertex with arity < 2".into()));
            }
            Ok((Tree::Node { label, children }, pos + 1))
        }
        other => Err(TreeError::Parse(format!("unexpected byte {:?} at {}", other, at))),
    }
}

/// All planar trees with exactly `n_leaves` leaves and `n_vertices` internal
/// vertices, sorted by canonical key. Out-of-range counts give an empty list.
pub fn enumerate_trees(n_leaves: usize, n_vertices: usize) -> Vec<PlanarTree> {
    if n_leaves < 2 || n_vertices < 1 || n_vertices > n_leaves - 1 {
        return Vec::new();
    }
    let mut out = gen_trees(n_leaves, n_vertices);
    out.sort_by_key(|t| t.canonical_key());
    out
}

fn gen_trees(n_leaves: usize, n_vertices: usize) -> Vec<PlanarTree> {
    if n_leaves == 1 {
        return if n_vertices == 0 { vec![Tree::Leaf] } else { vec![] };
    }
    if n_vertices == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for arity in 2..=n_leaves {
        for forest in gen_forests(n_leaves, n_vertices - 1, arity) {
            out.push(Tree::Node { label: (), children: forest });
        }
    }
    out
}

/// All ordered forests of `parts` trees with the given leaf and vertex totals.
fn gen_forests(leaves: usize, vertices: usize, parts: usize) -> Vec<Vec<PlanarTree>> {
    if parts == 0 {
        return if leaves == 0 && vertices == 0 { vec![Vec::new()] } else { vec![] };
    }
    let mut out = Vec::new();
    // Remaining parts need at least one leaf each.
    for l in 1..=leaves.saturating_sub(parts - 1) {
        let max_v = if l == 1 { 0 } else { l - 1 };
        for v in 0..=max_v.min(vertices) {
            let heads = gen_trees(l, v);
            if heads.is_empty() {
                continue;
            }
            for tail in gen_forests(leaves - l, vertices - v, parts - 1) {
                for head in &heads {
                    let mut forest = Vec::with_capacity(parts);
                    forest.push(head.clone());
                    forest.extend(tail.iter().cloned());
                    out.push(forest);
                }
            }
        }
    }
    out
}

/// Contracts the internal edge whose upper endpoint is vertex `e`: the
/// children of `e` are spliced into its parent. Vertex count drops by one.
pub fn contract_edge<L: Clone>(t: &Tree<L>, e: VertexId) -> Result<Tree<L>, TreeError> {
    fn go<L: Clone>(t: &Tree<L>, e: usize, next: &mut usize) -> Result<Tree<L>, TreeError> {
        match t {
            Tree::Leaf => Ok(Tree::Leaf),
            Tree::Node { label, children } => {
                let my_id = *next;
                *next += 1;
                if my_id == e {
                    // The root cannot be contracted; the parent handles the
                    // merge, so reaching the target here means e was the root.
                    return Err(TreeError::NotInternalEdge(VertexId(e)));
                }
                let mut new_children = Vec::new();
                for c in children {
                    match c {
                        Tree::Node { label: _, children: grand } if *next == e => {
                            *next += 1;
                            for g in grand {
                                new_children.push(go(g, e, next)?);
                            }
                        }
                        _ => new_children.push(go(c, e, next)?),
                    }
                }
                Ok(Tree::Node { label: label.clone(), children: new_children })
            }
        }
    }
    let n = t.n_vertices();
    if e.0 >= n {
        return Err(TreeError::NotInternalEdge(e));
    }
    let mut next = 0;
    go(t, e.0, &mut next)
}

/// One way of expanding a vertex into an internal edge.
#[derive(Clone, Debug)]
pub struct Expansion {
    /// The expanded tree (one more vertex).
    pub tree: PlanarTree,
    /// Upper endpoint of the new edge, as a vertex of `tree`.
    pub edge: VertexId,
    /// The vertex of the original tree that was split.
    pub base_vertex: VertexId,
    /// Arity of the lower part after the split.
    pub lower_arity: usize,
    /// 1-based slot of the new edge among the lower part's children.
    pub position: usize,
    /// Arity of the upper part.
    pub upper_arity: usize,
}

/// All pairs `(t', e)` with `contract_edge(t', e) == t`, i.e. every way of
/// expanding one vertex of `t` into an internal edge. Binary trees are
/// maximal and return an empty list.
pub fn expansions(t: &PlanarTree) -> Vec<Expansion> {
    let mut out = Vec::new();
    let arities = t.arities();
    for (vid, &l) in arities.iter().enumerate() {
        if l < 3 {
            continue;
        }
        for upper_arity in 2..=l - 1 {
            let lower_arity = l + 1 - upper_arity;
            for position in 1..=lower_arity {
                let (tree, edge) = split_vertex(t, vid, position, upper_arity);
                out.push(Expansion {
                    tree,
                    edge,
                    base_vertex: VertexId(vid),
                    lower_arity,
                    position,
                    upper_arity,
                });
            }
        }
    }
    out
}

/// Splits vertex `vid`: children `position-1 .. position-1+upper_arity` move
/// under a new vertex inserted at that slot. Returns the tree and the new
/// vertex's id.
fn split_vertex(
    t: &PlanarTree,
    vid: usize,
    position: usize,
    upper_arity: usize,
) -> (PlanarTree, VertexId) {
    fn go(
        t: &PlanarTree,
        vid: usize,
        position: usize,
        upper_arity: usize,
        next: &mut usize,
        edge: &mut Option<usize>,
    ) -> PlanarTree {
        match t {
            Tree::Leaf => Tree::Leaf,
            Tree::Node { children, .. } => {
                let my_id = *next;
                *next += 1;
                if my_id == vid {
                    let s = position - 1;
                    // New-tree DFS id of the inserted vertex: everything before
                    // this vertex keeps its index, then the first s subtrees.
                    let offset: usize = children[..s].iter().map(Tree::n_vertices).sum();
                    *edge = Some(my_id + 1 + offset);
                    let mut new_children: Vec<PlanarTree> = children[..s].to_vec();
                    new_children.push(Tree::Node {
                        label: (),
                        children: children[s..s + upper_arity].to_vec(),
                    });
                    new_children.extend(children[s + upper_arity..].iter().cloned());
                    *next += t.n_vertices() - 1;
                    Tree::Node { label: (), children: new_children }
                } else {
                    Tree::Node {
                        label: (),
                        children: children
                            .iter()
                            .map(|c| go(c, vid, position, upper_arity, next, edge))
                            .collect(),
                    }
                }
            }
        }
    }
    let mut next = 0;
    let mut edge = None;
    let tree = go(t, vid, position, upper_arity, &mut next, &mut edge);
    (tree, VertexId(edge.expect("split vertex not found")))
}

/// The vertices on the unique shortest path from leaf `i` to leaf `i+1`
/// (1-based), listed from leaf `i`'s side; each vertex appears once.
pub fn connecting_path<L>(t: &Tree<L>, i: usize) -> Result<Vec<VertexId>, TreeError> {
    let n = t.n_leaves();
    if i < 1 || i >= n {
        return Err(TreeError::LeafIndexOutOfRange { index: i, limit: n });
    }
    let chains = leaf_ancestor_chains(t);
    let a = &chains[i - 1];
    let b = &chains[i];
    let mut common = 0;
    while common < a.len() && common < b.len() && a[common] == b[common] {
        common += 1;
    }
    debug_assert!(common >= 1, "all leaves share the root");
    let mut path: Vec<VertexId> = a[common - 1..].iter().rev().map(|&v| VertexId(v)).collect();
    path.extend(b[common..].iter().map(|&v| VertexId(v)));
    Ok(path)
}

/// Cell degree of the subtree: sum of `arity - 2` over its vertices.
pub fn subtree_degree<L>(t: &Tree<L>) -> usize {
    match t {
        Tree::Leaf => 0,
        Tree::Node { children, .. } => {
            children.len() - 2 + children.iter().map(subtree_degree).sum::<usize>()
        }
    }
}

/// For each vertex (canonical order), the prefix sums of its children's
/// subtree degrees: entry `i` is the total degree of children `0..i`.
pub fn child_degree_prefixes<L>(t: &Tree<L>) -> Vec<Vec<usize>> {
    fn go<L>(t: &Tree<L>, out: &mut Vec<Vec<usize>>) {
        if let Tree::Node { children, .. } = t {
            let mut prefix = Vec::with_capacity(children.len() + 1);
            let mut acc = 0;
            prefix.push(0);
            for c in children {
                acc += subtree_degree(c);
                prefix.push(acc);
            }
            out.push(prefix);
            for c in children {
                go(c, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out
}

/// For each leaf (left to right), the chain of vertex ids from the root down
/// to the leaf's parent.
pub fn leaf_ancestor_chains<L>(t: &Tree<L>) -> Vec<Vec<usize>> {
    fn go<L>(t: &Tree<L>, next: &mut usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match t {
            Tree::Leaf => out.push(prefix.clone()),
            Tree::Node { children, .. } => {
                prefix.push(*next);
                *next += 1;
                for c in children {
                    go(c, next, prefix, out);
                }
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut 0, &mut Vec::new(), &mut out);
    out
}

/// The corolla: a single vertex with `n` leaves.
pub fn corolla(n: usize) -> PlanarTree {
    Tree::Node { label: (), children: vec![Tree::Leaf; n] }
}

/// Left comb with 3 leaves: `(xy)z`.
pub fn left_comb3() -> PlanarTree {
    Tree::Node { label: (), children: vec![corolla(2), Tree::Leaf] }
}

/// Right comb with 3 leaves: `x(yz)`.
pub fn right_comb3() -> PlanarTree {
    Tree::Node { label: (), children: vec![Tree::Leaf, corolla(2)] }
}

/// All assignments from `bounds`: the k-th slot runs over `0..bounds[k]`,
/// enumerated lexicographically.
pub fn assignments(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if bounds.iter().any(|&b| b == 0) {
        return out;
    }
    let mut cur = vec![0usize; bounds.len()];
    loop {
        out.push(cur.clone());
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
        }
    }
}
