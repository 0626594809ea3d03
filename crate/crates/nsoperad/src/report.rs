//! Report emission: dimension tables (JSON/CSV), counting tables, and DOT
//! rendering of trees and face lattices. All output is deterministic: fixed
//! key order, fixed basis order, rationals as `p/q` strings.

use crate::associahedron::{expansion_sign, SignData};
use crate::counting::{hypercube_count, quad_dim_formula, RootLabel};
use crate::operads::{quadratic_dual, OperadPresentation};
use crate::quotient::{BasisRule, Tower, TowerError};
use crate::trees::{enumerate_trees, expansions, KeyLabel, Tree};
use serde::Serialize;
use std::fmt::Write as _;

/// Dimension table of an operad and its quadratic dual.
#[derive(Debug, Serialize)]
pub struct DimsReport {
    pub operad: String,
    pub rows: Vec<DimsRow>,
}

#[derive(Debug, Serialize)]
pub struct DimsRow {
    pub n: usize,
    pub dim: usize,
    pub dual_dim: usize,
}

pub fn dims_report(
    pres: &OperadPresentation,
    max_arity: usize,
) -> Result<DimsReport, TowerError> {
    let primal = Tower::build(pres.clone(), max_arity, BasisRule::Greedy)?;
    let dual = Tower::build(quadratic_dual(pres), max_arity, BasisRule::Greedy)?;
    let rows = (2..=max_arity)
        .map(|n| DimsRow {
            n,
            dim: primal.component(n).dim(),
            dual_dim: dual.component(n).dim(),
        })
        .collect();
    Ok(DimsReport { operad: pres.name().to_string(), rows })
}

impl DimsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,dim,dual_dim\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.n, r.dim, r.dual_dim);
        }
        out
    }
}

/// Table of the quadri-algebra dimension formula values.
#[derive(Debug, Serialize)]
pub struct QuadDimsReport {
    pub rows: Vec<QuadDimsRow>,
}

#[derive(Debug, Serialize)]
pub struct QuadDimsRow {
    pub n: usize,
    pub d_n: String,
}

pub fn quad_dims_report(max_n: usize) -> QuadDimsReport {
    let rows = (1..=max_n)
        .map(|n| QuadDimsRow {
            n,
            d_n: quad_dim_formula(n).expect("formula is integral").to_string(),
        })
        .collect();
    QuadDimsReport { rows }
}

impl QuadDimsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,d_n\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{}", r.n, r.d_n);
        }
        out
    }
}

/// Hypercube counts by root vector for one (m, n).
#[derive(Debug, Serialize)]
pub struct HypercubeReport {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<HypercubeRow>,
    pub total: String,
}

#[derive(Debug, Serialize)]
pub struct HypercubeRow {
    /// Root vector as a string of `<` and `>`.
    pub vector: String,
    pub count: String,
}

pub fn hypercube_report(m: usize, n: usize) -> HypercubeReport {
    let mut rows = Vec::new();
    let mut total = num::BigUint::ZERO;
    for bits in 0..(1usize << m) {
        let v: Vec<RootLabel> = (0..m)
            .map(|k| {
                if bits >> (m - 1 - k) & 1 == 0 { RootLabel::Prec } else { RootLabel::Succ }
            })
            .collect();
        let count = hypercube_count(m, n, &v).expect("recurrences agree with closed forms");
        let vector: String = v
            .iter()
            .map(|l| if *l == RootLabel::Prec { '<' } else { '>' })
            .collect();
        total += &count;
        rows.push(HypercubeRow { vector, count: count.to_string() });
    }
    HypercubeReport { m, n, rows, total: total.to_string() }
}

impl HypercubeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("vector,count\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{}", r.vector, r.count);
        }
        let _ = writeln!(out, "total,{}", self.total);
        out
    }
}

/// DOT rendering of a single tree: vertices and leaves as nodes.
pub fn tree_dot<L: KeyLabel + Clone>(t: &Tree<L>) -> String {
    let mut out = String::from("digraph tree {\n  node [shape=point];\n");
    let mut next_vertex = 0usize;
    let mut next_leaf = 0usize;
    fn go<L: KeyLabel>(
        t: &Tree<L>,
        parent: Option<String>,
        out: &mut String,
        next_vertex: &mut usize,
        next_leaf: &mut usize,
    ) {
        let id = match t {
            Tree::Leaf => {
                let id = format!("leaf{}", next_leaf);
                *next_leaf += 1;
                let _ = writeln!(out, "  {} [shape=none, label=\"\"];", id);
                id
            }
            Tree::Node { label, children } => {
                let id = format!("v{}", next_vertex);
                *next_vertex += 1;
                let frag = label.key_fragment();
                let _ = writeln!(
                    out,
                    "  {} [shape=circle, label=\"{}\"];",
                    id,
                    frag.replace('"', "'")
                );
                for c in children {
                    go(c, Some(id.clone()), out, next_vertex, next_leaf);
                }
                id
            }
        };
        if let Some(p) = parent {
            let _ = writeln!(out, "  {} -> {};", p, id);
        }
    }
    go(t, None, &mut out, &mut next_vertex, &mut next_leaf);
    out.push_str("}\n");
    out
}

/// DOT rendering of the face lattice of the associahedron for `n` inputs:
/// nodes are trees keyed by their canonical key, arcs are codimension-one
/// incidences annotated with the orientation sign.
pub fn face_lattice_dot(n: usize) -> String {
    assert!(n >= 2);
    let mut out = String::from("digraph face_lattice {\n  rankdir=BT;\n");
    for k in 1..n {
        let _ = writeln!(out, "  {{ rank=same;");
        for t in enumerate_trees(n, k) {
            let key = t.canonical_key();
            let _ = writeln!(out, "    \"{}\";", key);
        }
        let _ = writeln!(out, "  }}");
    }
    for k in 1..n - 1 {
        for t in enumerate_trees(n, k) {
            let data = SignData::of(&t);
            let key = t.canonical_key();
            for exp in expansions(&t) {
                let sign = expansion_sign(&data, &exp);
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    exp.tree.canonical_key(),
                    key,
                    if sign > 0 { "+1" } else { "-1" },
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// One pass/fail line, as used by the verification executables.
pub fn verdict_line(name: &str, pass: bool) -> String {
    format!("[{}] {}", if pass { "PASS" } else { "FAIL" }, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::dend;
    use crate::trees::corolla;

    #[test]
    fn dims_csv_has_header_and_rows() {
        let r = dims_report(&dend(), 4).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,dim,dual_dim");
        assert_eq!(lines[1], "2,2,2");
        assert_eq!(lines[2], "3,5,3");
        assert_eq!(lines[3], "4,14,4");
    }

    #[test]
    fn quad_dims_table() {
        let r = quad_dims_report(4);
        assert_eq!(r.rows[1].d_n, "4");
        assert_eq!(r.rows[2].d_n, "23");
        assert_eq!(r.rows[3].d_n, "156");
    }

    #[test]
    fn hypercube_table_m2_n3() {
        let r = hypercube_report(2, 3);
        assert_eq!(r.total, "9");
        let counts: Vec<&str> = r.rows.iter().map(|x| x.count.as_str()).collect();
        assert_eq!(counts, vec!["4", "1", "1", "3"]);
    }

    #[test]
    fn dot_outputs_are_stable() {
        let d1 = face_lattice_dot(4);
        let d2 = face_lattice_dot(4);
        assert_eq!(d1, d2);
        assert!(d1.contains("(..(..))") || d1.contains("((..).)"));
        let t = tree_dot(&corolla(3));
        assert!(t.starts_with("digraph tree"));
    }
}
