//! Exact sparse linear algebra over arbitrary-precision rationals.
//!
//! Everything downstream (operad quotients, chain complexes, homology) reduces
//! to rank / kernel / solve questions about sparse matrices over ℚ. All
//! arithmetic is exact; there is no floating point anywhere in this crate.
//!
//! Matrices are immutable after construction. Elimination works on private
//! copies, so values can be shared freely across threads.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// The ground field: arbitrary-precision rationals, always in lowest terms
/// with a positive denominator (maintained by `num`).
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` into a rational. Used by the operad-spec JSON layer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// Renders a rational as `"p"` or `"p/q"`; the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A sparse vector: entries sorted by index, no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec {
    len: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zero(len: usize) -> Self {
        SparseVec { len, entries: Vec::new() }
    }

    pub fn unit(len: usize, idx: usize) -> Self {
        assert!(idx < len);
        SparseVec { len, entries: vec![(idx, Rational::one())] }
    }

    /// Builds from (index, value) pairs; drops zeros, panics on duplicates or
    /// out-of-range indices.
    pub fn from_entries(len: usize, mut entries: Vec<(usize, Rational)>) -> Self {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        for w in entries.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate index {} in sparse vector", w[0].0);
        }
        if let Some((i, _)) = entries.last() {
            assert!(*i < len, "index {} out of range for vector of length {}", i, len);
        }
        SparseVec { len, entries }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, idx: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&idx, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Index and value of the first nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    /// `self += factor * other` (merge of two sorted entry lists).
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Rational) {
        debug_assert_eq!(self.len, other.len);
        if factor.is_zero() || other.entries.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut x = a.next();
        let mut y = b.next();
        loop {
            match (x, y) {
                (None, None) => break,
                (Some((i, v)), None) => {
                    out.push((*i, v.clone()));
                    x = a.next();
                }
                (None, Some((j, w))) => {
                    out.push((*j, w * factor));
                    y = b.next();
                }
                (Some((i, v)), Some((j, w))) => {
                    if i < j {
                        out.push((*i, v.clone()));
                        x = a.next();
                    } else if j < i {
                        out.push((*j, w * factor));
                        y = b.next();
                    } else {
                        let s = v + w * factor;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        x = a.next();
                        y = b.next();
                    }
                }
            }
        }
        self.entries = out;
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
        } else {
            for (_, v) in &mut self.entries {
                *v *= factor;
            }
        }
    }

    /// First nonzero coefficient becomes `+1`.
    pub fn normalize_leading(&mut self) {
        if let Some((_, v)) = self.entries.first() {
            let inv = v.recip();
            if !inv.is_one() {
                self.scale(&inv);
            }
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        debug_assert_eq!(self.len, other.len);
        let mut acc = Rational::zero();
        let (short, long) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        for (i, v) in short.iter() {
            if let Some(w) = long.get(i) {
                acc += v * w;
            }
        }
        acc
    }
}

/// An immutable sparse matrix over ℚ, stored row-major with sorted rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 16 && self.cols <= 16 {
            for r in 0..self.rows {
                let line: Vec<String> = (0..self.cols)
                    .map(|c| self.entry(r, c).map_or_else(|| "0".into(), format_rational))
                    .collect();
                writeln!(f, "  [{}]", line.join(" "))?;
            }
        }
        Ok(())
    }
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::zero(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| SparseVec::unit(n, i)).collect(),
        }
    }

    /// Builds from (row, col, value) triplets. Zero values are dropped;
    /// duplicate positions and out-of-range indices are contract violations.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Rational)>) -> Self {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({}, {}) outside {}x{} matrix", r, c, rows, cols);
            if !v.is_zero() {
                per_row[r].push((c, v));
            }
        }
        let data = per_row
            .into_iter()
            .map(|entries| SparseVec::from_entries(cols, entries))
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        SparseMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Rational> {
        self.data[r].get(c)
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    /// Extracts column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec {
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(c).map(|v| (r, v.clone())))
            .collect();
        SparseVec { len: self.rows, entries }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter_entries() {
            per_row[c].push((r, v.clone()));
        }
        let data = per_row
            .into_iter()
            .map(|entries| SparseVec::from_entries(self.rows, entries))
            .collect();
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, v) in row.iter() {
                for (c, w) in rhs.data[k].iter() {
                    let slot = acc.entry(c).or_insert_with(Rational::zero);
                    *slot += v * w;
                }
            }
            let entries: Vec<(usize, Rational)> =
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            data.push(SparseVec { len: rhs.cols, entries });
        }
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(self.cols, v.len());
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let d = row.dot(v);
                if d.is_zero() { None } else { Some((r, d)) }
            })
            .collect();
        SparseVec { len: self.rows, entries }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut out = a.clone();
                out.add_scaled(b, &Rational::one());
                out
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut out = a.clone();
                out.add_scaled(b, &-Rational::one());
                out
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseMatrix {
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut out = r.clone();
                out.scale(factor);
                out
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Stacks blocks along the diagonal.
    pub fn block_diag(blocks: &[&SparseMatrix]) -> SparseMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut triplets = Vec::new();
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for (r, c, v) in b.iter_entries() {
                triplets.push((ro + r, co + c, v.clone()));
            }
            ro += b.rows;
            co += b.cols;
        }
        SparseMatrix::from_triplets(rows, cols, triplets)
    }

    /// Rank over ℚ. Deterministic: pivot choice depends only on the input.
    pub fn rank(&self) -> usize {
        let mut gauss = Gauss::new(self.cols);
        for row in &self.data {
            gauss.insert(row.clone());
        }
        gauss.rank()
    }

    /// A canonical basis of the right kernel: one vector per free column of
    /// the reduced row echelon form, with the free coordinate set to 1.
    /// The count is always `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let rref = Rref::compute(self.data.clone(), self.cols, self.cols);
        let pivot_set: HashMap<usize, usize> = rref
            .pivots
            .iter()
            .enumerate()
            .map(|(k, (c, _))| (*c, k))
            .collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains_key(&f) {
                continue;
            }
            let mut entries = vec![(f, Rational::one())];
            for (c, row) in &rref.pivots {
                if let Some(v) = row.get(f) {
                    entries.push((*c, -v));
                }
            }
            basis.push(SparseVec::from_entries(self.cols, entries));
        }
        basis
    }

    /// Solves `self * x = rhs`. Returns the least-index pivot solution (pivot
    /// columns are the lexicographically first independent set, free variables
    /// zero), or `None` when no solution exists. Shape mismatch is a contract
    /// violation.
    pub fn solve_right(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve_right: row count mismatch");
        let na = self.cols;
        let width = na + rhs.cols;
        let aug: Vec<SparseVec> = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut entries: Vec<(usize, Rational)> =
                    a.iter().map(|(i, v)| (i, v.clone())).collect();
                entries.extend(b.iter().map(|(i, v)| (na + i, v.clone())));
                SparseVec { len: width, entries }
            })
            .collect();
        let rref = Rref::compute(aug, width, na);
        if !rref.residue_zero {
            return None;
        }
        let mut triplets = Vec::new();
        for (c, row) in &rref.pivots {
            for (j, v) in row.iter() {
                if j >= na {
                    triplets.push((*c, j - na, v.clone()));
                }
            }
        }
        Some(SparseMatrix::from_triplets(na, rhs.cols, triplets))
    }
}

/// Left-looking Gaussian elimination: stores normalized pivot rows in creation
/// order. A new vector is reduced against existing pivots in that order, which
/// is sound because a pivot row is zero at all earlier pivot columns.
pub(crate) struct Gauss {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_cols: Vec<usize>,
    /// How often each column occurs among stored pivot rows; guides pivot
    /// selection toward low fill-in.
    col_load: Vec<u32>,
}

impl Gauss {
    pub fn new(ncols: usize) -> Self {
        Gauss { ncols, rows: Vec::new(), pivot_cols: Vec::new(), col_load: vec![0; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored pivot rows (in creation order).
    pub fn reduce(&self, v: &mut SparseVec) {
        for (k, col) in self.pivot_cols.iter().enumerate() {
            if let Some(c) = v.get(*col) {
                let factor = -c.clone();
                v.add_scaled(&self.rows[k], &factor);
            }
        }
    }

    /// Chooses the pivot column of a reduced nonzero row: the entry whose
    /// column occurs least often so far, preferring unit values, ties broken
    /// by column index.
    fn choose_pivot(&self, v: &SparseVec) -> usize {
        let mut best: Option<(u32, u32, usize)> = None;
        for (c, val) in v.iter() {
            let unit_penalty = if val.numer().abs().is_one() && val.denom().is_one() { 0 } else { 1 };
            let key = (self.col_load[c], unit_penalty, c);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        best.expect("choose_pivot on zero row").2
    }

    /// Reduces and, if nonzero, stores `v` as a new pivot row. Returns the
    /// pivot column, or `None` if `v` lies in the current row space.
    pub fn insert(&mut self, mut v: SparseVec) -> Option<usize> {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        if v.is_zero() {
            return None;
        }
        let col = self.choose_pivot(&v);
        let inv = v.get(col).unwrap().recip();
        v.scale(&inv);
        for (c, _) in v.iter() {
            self.col_load[c] += 1;
        }
        self.rows.push(v);
        self.pivot_cols.push(col);
        Some(col)
    }
}

/// Reduced row echelon form with leftmost-column pivoting, pivots restricted
/// to the first `pivot_limit` columns. `residue_zero` reports whether all
/// non-pivot content vanished (used for solvability checks).
struct Rref {
    pivots: Vec<(usize, SparseVec)>,
    residue_zero: bool,
}

impl Rref {
    fn compute(rows: Vec<SparseVec>, _width: usize, pivot_limit: usize) -> Rref {
        let mut active: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
        let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
        loop {
            // Leftmost leading column below the pivot limit; ties by sparsity
            // then order keep the procedure deterministic.
            let mut best: Option<(usize, usize, usize)> = None;
            for (idx, row) in active.iter().enumerate() {
                if let Some((lead, _)) = row.leading() {
                    if lead < pivot_limit {
                        let key = (lead, row.nnz(), idx);
                        if best.map_or(true, |b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((col, _, idx)) = best else { break };
            let mut piv = active.swap_remove(idx);
            let inv = piv.get(col).unwrap().recip();
            piv.scale(&inv);
            for row in active.iter_mut() {
                if let Some(c) = row.get(col) {
                    let factor = -c.clone();
                    row.add_scaled(&piv, &factor);
                }
            }
            for (_, row) in pivots.iter_mut() {
                if let Some(c) = row.get(col) {
                    let factor = -c.clone();
                    row.add_scaled(&piv, &factor);
                }
            }
            pivots.push((col, piv));
            active.retain(|r| !r.is_zero());
        }
        let residue_zero = active.iter().all(SparseVec::is_zero);
        pivots.sort_by_key(|(c, _)| *c);
        Rref { pivots, residue_zero }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon_middle() -> SparseMatrix {
        // Edge/vertex incidence of a pentagon: five columns with one +1 and
        // one -1 each, matching the displayed 5x5 boundary matrix.
        let e = |r: usize, c: usize, v: i64| (r, c, rat(v));
        SparseMatrix::from_triplets(
            5,
            5,
            vec![
                e(0, 0, 1),
                e(0, 4, 1),
                e(1, 0, -1),
                e(1, 1, 1),
                e(2, 1, -1),
                e(2, 2, -1),
                e(3, 2, 1),
                e(3, 3, -1),
                e(4, 3, 1),
                e(4, 4, -1),
            ],
        )
    }

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(SparseMatrix::zero(4, 7).rank(), 0);
    }

    #[test]
    fn rank_pentagon_boundary() {
        assert_eq!(pentagon_middle().rank(), 4);
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(SparseMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_ones_row() {
        let m = SparseMatrix::from_triplets(1, 2, vec![(0, 0, rat(1)), (0, 1, rat(1))]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // (1, -1) up to scale; canonical form puts 1 at the free column.
        let v = &k[0];
        assert_eq!(v.get(1), Some(&rat(1)));
        assert_eq!(v.get(0), Some(&rat(-1)));
        assert!(m.mul_vec(v).is_zero());
    }

    #[test]
    fn kernel_pentagon_is_one_dimensional() {
        let m = pentagon_middle();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = SparseMatrix::from_triplets(3, 2, vec![(0, 0, rat(5)), (2, 1, ratio(1, 3))]);
        let x = SparseMatrix::identity(3).solve_right(&b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_zero_matrix_nonzero_rhs_unsolvable() {
        let a = SparseMatrix::zero(2, 2);
        let b = SparseMatrix::from_triplets(2, 1, vec![(0, 0, rat(1))]);
        assert!(a.solve_right(&b).is_none());
    }

    #[test]
    fn solve_column_scaling() {
        let a = SparseMatrix::from_triplets(2, 1, vec![(0, 0, rat(1)), (1, 0, rat(1))]);
        let b = SparseMatrix::from_triplets(2, 1, vec![(0, 0, rat(2)), (1, 0, rat(2))]);
        let x = a.solve_right(&b).unwrap();
        assert_eq!(x.entry(0, 0), Some(&rat(2)));
    }

    #[test]
    fn solve_prefers_least_index_pivots() {
        // Columns 0 and 1 are parallel; the least-index solution uses only
        // column 0 and leaves the free column 1 at zero.
        let a = SparseMatrix::from_triplets(2, 3, vec![
            (0, 0, rat(1)),
            (0, 1, rat(2)),
            (1, 2, rat(1)),
        ]);
        let b = SparseMatrix::from_triplets(2, 1, vec![(0, 0, rat(4)), (1, 0, rat(7))]);
        let x = a.solve_right(&b).unwrap();
        assert_eq!(x.entry(0, 0), Some(&rat(4)));
        assert_eq!(x.entry(1, 0), None);
        assert_eq!(x.entry(2, 0), Some(&rat(7)));
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-11/4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
