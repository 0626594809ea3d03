//! Chain complexes of based rational vector spaces: verification, homology,
//! direct sums, chain maps, contracting homotopies.
//!
//! A complex stores its degrees in descending order (augmentation degree +1
//! first down to the top cell). The differential `diffs[i]` maps the piece at
//! `degrees[i+1]` into the piece at `degrees[i]`, i.e. from trees with fewer
//! vertices toward trees with more vertices — the geometric boundary reads a
//! cell off to its facets, and a facet tree expands a vertex.

use crate::linalg::SparseMatrix;
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

/// A named basis: keys are canonical (tree) keys, unique per piece.
#[derive(Clone, Debug)]
pub struct BasisSpace {
    keys: Vec<String>,
    index: HashMap<String, usize>,
}

impl BasisSpace {
    pub fn new(keys: Vec<String>) -> Self {
        let index: HashMap<String, usize> =
            keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        assert_eq!(index.len(), keys.len(), "basis keys must be unique");
        BasisSpace { keys, index }
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("degree ranges differ between summands")]
    DegreeMismatch,
    #[error("complex is not exact at degree {degree}")]
    NotExact { degree: i32 },
}

/// A bounded chain complex with named bases.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    name: String,
    degrees: Vec<i32>,
    pieces: Vec<BasisSpace>,
    diffs: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `diffs[i]` must be a `dim(pieces[i]) x dim(pieces[i+1])` matrix.
    pub fn new(
        name: impl Into<String>,
        degrees: Vec<i32>,
        pieces: Vec<BasisSpace>,
        diffs: Vec<SparseMatrix>,
    ) -> Self {
        assert_eq!(degrees.len(), pieces.len());
        assert_eq!(diffs.len(), degrees.len().saturating_sub(1));
        assert!(degrees.windows(2).all(|w| w[0] > w[1]), "degrees must descend");
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!(d.rows(), pieces[i].dim(), "differential {} row mismatch", i);
            assert_eq!(d.cols(), pieces[i + 1].dim(), "differential {} col mismatch", i);
        }
        ChainComplex { name: name.into(), degrees, pieces, diffs }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn n_positions(&self) -> usize {
        self.degrees.len()
    }

    pub fn piece(&self, i: usize) -> &BasisSpace {
        &self.pieces[i]
    }

    pub fn diff(&self, i: usize) -> &SparseMatrix {
        &self.diffs[i]
    }

    pub fn diffs(&self) -> &[SparseMatrix] {
        &self.diffs
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(BasisSpace::dim).collect()
    }

    /// Alternating sum of dimensions by degree parity.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .zip(&self.pieces)
            .map(|(d, p)| {
                let s = if d.rem_euclid(2) == 0 { 1 } else { -1 };
                s * p.dim() as i64
            })
            .sum()
    }

    /// True iff every adjacent composite vanishes.
    pub fn verify(&self) -> bool {
        (0..self.diffs.len().saturating_sub(1))
            .into_par_iter()
            .all(|i| self.diffs[i].mul(&self.diffs[i + 1]).is_zero())
    }

    /// Homology dimension at every stored degree, computed from the ranks of
    /// the adjacent differentials.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.par_iter().map(SparseMatrix::rank).collect();
        (0..self.pieces.len())
            .map(|i| {
                let dim = self.pieces[i].dim();
                let incoming = if i < ranks.len() { ranks[i] } else { 0 };
                let outgoing = if i > 0 { ranks[i - 1] } else { 0 };
                dim - incoming - outgoing
            })
            .collect()
    }

    /// Blockwise direct sum; bases are concatenated with `c<k>:` copy tags.
    pub fn direct_sum(
        name: impl Into<String>,
        summands: &[&ChainComplex],
    ) -> Result<ChainComplex, ComplexError> {
        assert!(!summands.is_empty());
        let degrees = summands[0].degrees.clone();
        if summands.iter().any(|c| c.degrees != degrees) {
            return Err(ComplexError::DegreeMismatch);
        }
        let pieces = (0..degrees.len())
            .map(|i| {
                let keys = summands
                    .iter()
                    .enumerate()
                    .flat_map(|(k, c)| {
                        c.pieces[i].keys.iter().map(move |key| format!("c{}:{}", k, key))
                    })
                    .collect();
                BasisSpace::new(keys)
            })
            .collect();
        let diffs = (0..degrees.len() - 1)
            .map(|i| {
                let blocks: Vec<&SparseMatrix> = summands.iter().map(|c| &c.diffs[i]).collect();
                SparseMatrix::block_diag(&blocks)
            })
            .collect();
        Ok(ChainComplex::new(name, degrees, pieces, diffs))
    }
}

/// A degree-preserving map between complexes with the same degree range:
/// `maps[i]` sends `source.piece(i)` into `target.piece(i)`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<SparseMatrix>,
}

/// True iff `target_diff . f = f . source_diff` in every degree.
pub fn verify_chain_map(f: &ChainMap, source: &ChainComplex, target: &ChainComplex) -> bool {
    if f.maps.len() != source.n_positions() || source.degrees() != target.degrees() {
        return false;
    }
    (0..source.diffs.len()).into_par_iter().all(|i| {
        let lhs = target.diffs[i].mul(&f.maps[i + 1]);
        let rhs = f.maps[i].mul(&source.diffs[i]);
        lhs == rhs
    })
}

/// A degree-one map against the differential: `maps[i]` sends `piece(i)` to
/// `piece(i+1)` (one vertex fewer).
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub maps: Vec<SparseMatrix>,
}

/// Checks `i_minus_p[i] == d . h + h . d` at every position.
pub fn verify_homotopy_identity(
    i_minus_p: &[SparseMatrix],
    h: &Homotopy,
    c: &ChainComplex,
) -> bool {
    let n = c.n_positions();
    if i_minus_p.len() != n || h.maps.len() + 1 != n {
        return false;
    }
    (0..n).into_par_iter().all(|i| {
        let dim = c.pieces[i].dim();
        let mut acc = SparseMatrix::zero(dim, dim);
        if i < n - 1 {
            acc = acc.add(&c.diffs[i].mul(&h.maps[i]));
        }
        if i > 0 {
            acc = acc.add(&h.maps[i - 1].mul(&c.diffs[i - 1]));
        }
        acc == i_minus_p[i]
    })
}

/// Builds a contracting homotopy (`d h + h d = I`) by solving degree by
/// degree from the augmentation end, or reports non-exactness.
pub fn contracting_homotopy(c: &ChainComplex) -> Result<Homotopy, ComplexError> {
    let identities: Vec<SparseMatrix> =
        c.pieces.iter().map(|p| SparseMatrix::identity(p.dim())).collect();
    homotopy_for(c, &identities)
}

/// Solves `d h + h d = rhs` degreewise (`rhs` is typically `I - p` for an
/// idempotent chain map `p`). The least-index pivot solution is taken at
/// every step, so the output is deterministic.
pub fn homotopy_for(c: &ChainComplex, rhs: &[SparseMatrix]) -> Result<Homotopy, ComplexError> {
    let n = c.n_positions();
    assert_eq!(rhs.len(), n);
    let mut maps: Vec<SparseMatrix> = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut want = rhs[i].clone();
        if i > 0 {
            want = want.sub(&maps[i - 1].mul(&c.diffs[i - 1]));
        }
        match c.diffs[i].solve_right(&want) {
            Some(h) => maps.push(h),
            None => return Err(ComplexError::NotExact { degree: c.degrees[i] }),
        }
    }
    // Bottom degree: the identity must already hold.
    let i = n - 1;
    let check = maps[i - 1].mul(&c.diffs[i - 1]);
    if check != rhs[i] {
        return Err(ComplexError::NotExact { degree: c.degrees[i] });
    }
    Ok(Homotopy { maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    /// k <- k: a point with its augmentation.
    fn point_complex() -> ChainComplex {
        ChainComplex::new(
            "point",
            vec![1, 0],
            vec![BasisSpace::new(vec!["e".into()]), BasisSpace::new(vec!["v".into()])],
            vec![SparseMatrix::from_triplets(1, 1, vec![(0, 0, rat(1))])],
        )
    }

    #[test]
    fn point_is_exact() {
        let c = point_complex();
        assert!(c.verify());
        assert_eq!(c.homology_dims(), vec![0, 0]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn two_term_zero_map_holds_homology() {
        let c = ChainComplex::new(
            "0 -> k -> 0",
            vec![0, -1],
            vec![BasisSpace::new(vec!["x".into()]), BasisSpace::new(vec![])],
            vec![SparseMatrix::zero(1, 0)],
        );
        assert!(c.verify());
        assert_eq!(c.homology_dims(), vec![1, 0]);
    }

    #[test]
    fn direct_sum_dims_add() {
        let c = point_complex();
        let s = ChainComplex::direct_sum("4 points", &[&c, &c, &c, &c]).unwrap();
        assert_eq!(s.dims(), vec![4, 4]);
        assert!(s.verify());
        assert_eq!(s.homology_dims(), vec![0, 0]);
        let single = ChainComplex::direct_sum("1 point", &[&c]).unwrap();
        assert_eq!(single.dims(), c.dims());
    }

    #[test]
    fn direct_sum_rejects_mismatched_ranges() {
        let a = point_complex();
        let b = ChainComplex::new(
            "other",
            vec![0, -1],
            vec![BasisSpace::new(vec!["x".into()]), BasisSpace::new(vec![])],
            vec![SparseMatrix::zero(1, 0)],
        );
        assert_eq!(
            ChainComplex::direct_sum("bad", &[&a, &b]).unwrap_err(),
            ComplexError::DegreeMismatch
        );
    }

    #[test]
    fn identity_and_zero_are_chain_maps() {
        let c = point_complex();
        let id = ChainMap { maps: vec![SparseMatrix::identity(1), SparseMatrix::identity(1)] };
        assert!(verify_chain_map(&id, &c, &c));
        let zero = ChainMap { maps: vec![SparseMatrix::zero(1, 1), SparseMatrix::zero(1, 1)] };
        assert!(verify_chain_map(&zero, &c, &c));
    }

    #[test]
    fn contracting_homotopy_of_point() {
        let c = point_complex();
        let h = contracting_homotopy(&c).unwrap();
        let identities: Vec<SparseMatrix> = vec![SparseMatrix::identity(1); 2];
        assert!(verify_homotopy_identity(&identities, &h, &c));
    }

    #[test]
    fn contracting_homotopy_detects_nonexactness() {
        let c = ChainComplex::new(
            "zero differential, nonzero pieces",
            vec![1, 0],
            vec![BasisSpace::new(vec!["a".into()]), BasisSpace::new(vec!["b".into()])],
            vec![SparseMatrix::zero(1, 1)],
        );
        assert!(contracting_homotopy(&c).is_err());
    }

    #[test]
    fn homotopy_identity_trivial_case() {
        // p = identity, h = 0: I - p = 0 = dh + hd.
        let c = point_complex();
        let zeros = vec![SparseMatrix::zero(1, 1), SparseMatrix::zero(1, 1)];
        let h = Homotopy { maps: vec![SparseMatrix::zero(1, 1)] };
        assert!(verify_homotopy_identity(&zeros, &h, &c));
    }
}
