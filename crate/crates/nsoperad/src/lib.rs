//! Quadratic non-symmetric binary operads over exact rationals.
//!
//! The crate mechanizes a family of homological-algebra constructions at desk
//! scale: presentations of quadratic binary ns operads (dendriform,
//! dialgebras, quadri-algebras, black-square powers), their quadratic duals,
//! associahedron chain complexes and their n- and n^m-fold splittings,
//! augmented dual bar complexes, and per-arity Koszulity verification by
//! exact sparse linear algebra — no floating point anywhere.
//!
//! Start with the runnable examples (`cargo run --example <name>`), or the
//! `nsoperad` binary for JSON/CSV/DOT reports. The main entry points:
//!
//! * [`operads::builtin`] / [`operads::parse_spec`] — presentations in.
//! * [`quotient::Tower`] — arity components with bases and structure
//!   constants.
//! * [`associahedron::build_ca`] / [`associahedron::build_split_complex`] —
//!   the cell complexes.
//! * [`bar::koszul_check`] — the headline verification.
//! * [`counting`] — closed formulas, recurrences and power-series checks.

pub mod associahedron;
pub mod bar;
pub mod complexes;
pub mod counting;
pub mod linalg;
pub mod operads;
pub mod quotient;
pub mod report;
pub mod trees;

pub use linalg::{Rational, SparseMatrix, SparseVec};
pub use operads::{Builtin, OperadPresentation};
pub use trees::{LabeledTree, PlanarTree, Tree};
