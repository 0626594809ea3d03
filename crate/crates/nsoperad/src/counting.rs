//! Closed formulas, recurrences and power-series consistency checks for the
//! dimension sequences: the quadri-algebra dimension formula, the hypercube
//! counts behind the n^m bound, and compositional inversion of generating
//! series built from computed dimensions.

use crate::linalg::Rational;
use crate::operads::{quadratic_dual, Builtin};
use crate::quotient::{BasisRule, Tower};
use crate::trees::{left_comb3, right_comb3, Label, LabeledTree};
use num::{BigInt, BigUint, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountingError {
    #[error("dimension formula gave a non-integral value at n = {0}")]
    NonIntegral(usize),
    #[error("series has no invertible linear term")]
    ZeroLinearTerm,
    #[error("recurrence and closed form disagree for {context}")]
    RecurrenceMismatch { context: String },
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The quadri-algebra dimension formula
///
/// ```text
/// d_n = (1/n) * sum_{j=n}^{2n-1} C(3n, n+1+j) * C(j-1, j-n)
/// ```
///
/// evaluated exactly; a non-integral result would falsify the transcription.
pub fn quad_dim_formula(n: usize) -> Result<BigUint, CountingError> {
    assert!(n >= 1);
    let mut total = BigUint::zero();
    for j in n..=2 * n - 1 {
        total += binomial(3 * n, n + 1 + j) * binomial(j - 1, j - n);
    }
    if (&total % BigUint::from(n)).is_zero() {
        Ok(total / BigUint::from(n))
    } else {
        Err(CountingError::NonIntegral(n))
    }
}

/// A root-vector component for the hypercube counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootLabel {
    Prec,
    Succ,
}

/// Count of degree-`n` spanning elements whose root carries all-succ labels
/// in a `j`-dimensional hypercube, by the recurrence
/// `s(j, n+1) = sum_{k=1..j} C(j,k) s(k, n)` with `s(j, 2) = 1`;
/// cross-checked against the closed form `(n-1)^j - (n-2)^j`.
fn all_succ_count(j: usize, n: usize) -> Result<BigUint, CountingError> {
    assert!(j >= 1 && n >= 2);
    let mut table: Vec<BigUint> = vec![BigUint::one(); j + 1]; // degree 2 row
    for _deg in 3..=n {
        let mut next = vec![BigUint::zero(); j + 1];
        for dim in 1..=j {
            let mut acc = BigUint::zero();
            for k in 1..=dim {
                acc += binomial(dim, k) * &table[k];
            }
            next[dim] = acc;
        }
        table = next;
    }
    let closed = pow_minus(n, 1, j) - pow_minus(n, 2, j);
    if table[j] != closed {
        return Err(CountingError::RecurrenceMismatch {
            context: format!("all-succ count j = {}, n = {}", j, n),
        });
    }
    Ok(table[j].clone())
}

/// `(n - d)^j` as a BigUint (zero when `n <= d`).
fn pow_minus(n: usize, d: usize, j: usize) -> BigUint {
    if n <= d {
        // 0^0 = 1 keeps the degenerate closed forms right.
        return if j == 0 { BigUint::one() } else { BigUint::zero() };
    }
    BigUint::from(n - d).pow(j as u32)
}

/// Count of degree-`n` spanning elements with all-prec root vector in an
/// `m`-cube: `p(m, n+1) = p(m, n) + sum_j C(m,j) s(j, n)`, cross-checked
/// against `(n-1)^m`.
fn all_prec_count(m: usize, n: usize) -> Result<BigUint, CountingError> {
    assert!(n >= 2);
    let mut acc = BigUint::one(); // degree 2
    for deg in 2..n {
        let mut step = acc.clone();
        for j in 1..=m {
            step += binomial(m, j) * all_succ_count(j, deg)?;
        }
        acc = step;
    }
    let closed = pow_minus(n, 1, m);
    if acc != closed {
        return Err(CountingError::RecurrenceMismatch {
            context: format!("all-prec count m = {}, n = {}", m, n),
        });
    }
    Ok(acc)
}

/// The number of degree-`n` spanning-set elements with root vector `v` in the
/// `m`-dimensional hypercube pattern scheme: vectors with `j >= 1` succ
/// entries reduce to the all-succ count of the `j`-subcube; the all-prec
/// vector follows its own recurrence.
pub fn hypercube_count(m: usize, n: usize, v: &[RootLabel]) -> Result<BigUint, CountingError> {
    assert_eq!(v.len(), m);
    assert!(m >= 1 && n >= 2);
    if n == 2 {
        return Ok(BigUint::one());
    }
    let j = v.iter().filter(|&&l| l == RootLabel::Succ).count();
    if j == 0 {
        all_prec_count(m, n)
    } else {
        all_succ_count(j, n)
    }
}

/// Sum of [`hypercube_count`] over all `2^m` root vectors; equals `n^m`.
pub fn hypercube_total(m: usize, n: usize) -> Result<BigUint, CountingError> {
    let mut total = BigUint::zero();
    for bits in 0..(1usize << m) {
        let v: Vec<RootLabel> = (0..m)
            .map(|k| if bits >> k & 1 == 0 { RootLabel::Prec } else { RootLabel::Succ })
            .collect();
        total += hypercube_count(m, n, &v)?;
    }
    Ok(total)
}

/// The degree-3 representative pattern for a unit hypercube coordinate
/// (entries in {1,2,3}): left comb when no entry is 3, right comb otherwise;
/// entry 1 puts prec at both vertices, 3 puts succ at both, and 2 puts succ
/// at the leftmost vertex, prec at the rightmost. Labels are generator
/// indices of the m-th dendriform power (prec = 0, succ = 1 bits,
/// first component most significant).
pub fn hypercube_representative(coord: &[u8]) -> LabeledTree {
    assert!(!coord.is_empty());
    assert!(coord.iter().all(|&c| (1..=3).contains(&c)));
    let right = coord.iter().any(|&c| c == 3);
    let shape = if right { right_comb3() } else { left_comb3() };
    // DFS order is (root, upper). For the left comb the upper vertex is the
    // leftmost (its leftmost leaf is leaf 1); for the right comb the root is.
    let mut root_bits = 0usize;
    let mut upper_bits = 0usize;
    for &c in coord {
        let (leftmost, rightmost) = match c {
            1 => (0, 0),
            3 => (1, 1),
            _ => (1, 0),
        };
        let (root_bit, upper_bit) =
            if right { (leftmost, rightmost) } else { (rightmost, leftmost) };
        root_bits = (root_bits << 1) | root_bit;
        upper_bits = (upper_bits << 1) | upper_bit;
    }
    shape.with_labels(&[Label::Gen(root_bits), Label::Gen(upper_bits)])
}

/// A truncated power series with zero constant term: `coeffs[k]` is the
/// coefficient of `t^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(order: usize, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), order);
        TruncatedSeries { order, coeffs }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        TruncatedSeries::new(
            values.len(),
            values.iter().map(|&v| crate::linalg::rat(v)).collect(),
        )
    }

    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        if order >= 1 {
            coeffs[0] = Rational::one();
        }
        TruncatedSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^deg` (1-based degree).
    pub fn coeff(&self, deg: usize) -> &Rational {
        &self.coeffs[deg - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `-self(-t)`: flips the sign of every even-degree coefficient.
    pub fn alternating_twist(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let deg = k + 1;
                if deg % 2 == 0 { -c.clone() } else { c.clone() }
            })
            .collect();
        TruncatedSeries { order: self.order, coeffs }
    }

    /// Composition `self(other(t))` truncated at the common order; `other`
    /// has zero constant term so the composite is well defined.
    pub fn compose(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, other.order);
        let order = self.order;
        let mut result = vec![Rational::zero(); order];
        // Powers of `other` accumulated degree by degree.
        let mut power: Vec<Rational> = vec![Rational::zero(); order];
        if order >= 1 {
            power.clone_from_slice(&other.coeffs);
        }
        for k in 1..=order {
            if !self.coeffs[k - 1].is_zero() {
                for d in 0..order {
                    let term = &power[d] * &self.coeffs[k - 1];
                    result[d] += term;
                }
            }
            if k < order {
                power = mul_truncated(&power, &other.coeffs, order);
            }
        }
        TruncatedSeries { order, coeffs: result }
    }

    /// Compositional inverse: the unique `g` with `self(g(t)) = t` up to the
    /// truncation order. Errors when the linear coefficient vanishes.
    pub fn inverse(&self) -> Result<TruncatedSeries, CountingError> {
        if self.order == 0 {
            return Ok(self.clone());
        }
        let a1 = &self.coeffs[0];
        if a1.is_zero() {
            return Err(CountingError::ZeroLinearTerm);
        }
        let mut g = vec![Rational::zero(); self.order];
        g[0] = a1.recip();
        for k in 2..=self.order {
            // Coefficient of t^k in self(g) with g_k unknown appears only
            // through a1 * g_k; solve for it.
            let partial = TruncatedSeries { order: self.order, coeffs: g.clone() };
            let composed = self.compose(&partial);
            let want = if k == 1 { Rational::one() } else { Rational::zero() };
            let err = want - &composed.coeffs[k - 1];
            g[k - 1] = err / a1;
        }
        let g = TruncatedSeries { order: self.order, coeffs: g };
        debug_assert_eq!(self.compose(&g), TruncatedSeries::identity(self.order));
        Ok(g)
    }
}

fn mul_truncated(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    // Both series have zero constant term; index k holds degree k+1.
    let mut out = vec![Rational::zero(); order];
    for i in 0..order {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..order {
            let deg = (i + 1) + (j + 1);
            if deg > order {
                break;
            }
            let term = &a[i] * &b[j];
            out[deg - 1] += term;
        }
    }
    out
}

/// The generating series `t + sum_{n>=2} dim P(n) t^n` of a tower, truncated
/// at the tower's bound.
pub fn dimension_series(tower: &Tower) -> TruncatedSeries {
    let order = tower.max_arity();
    let mut coeffs = vec![Rational::zero(); order];
    coeffs[0] = Rational::one();
    for n in 2..=order {
        coeffs[n - 1] = crate::linalg::rat(tower.component(n).dim() as i64);
    }
    TruncatedSeries { order, coeffs }
}

/// The Koszul functional-equation check: with `g` and `g!` the dimension
/// series of a built-in and its quadratic dual (computed by linear algebra),
/// verifies `g!(-g(-t)) = t` up to the order. For `quad` the primal
/// coefficients are additionally checked against [`quad_dim_formula`].
pub fn gk_check(b: Builtin, order: usize) -> Result<bool, CountingError> {
    assert!(order >= 2);
    let pres = b.presentation();
    let primal = Tower::build(pres.clone(), order, BasisRule::Greedy)
        .expect("greedy towers cannot fail");
    let dual = Tower::build(quadratic_dual(&pres), order, BasisRule::Greedy)
        .expect("greedy towers cannot fail");
    let g = dimension_series(&primal);
    let g_dual = dimension_series(&dual);
    let composed = g_dual.compose(&g.alternating_twist());
    let functional = composed == TruncatedSeries::identity(order);
    if b == Builtin::Quad {
        for n in 2..=order {
            let formula = quad_dim_formula(n)?;
            if BigInt::from(formula) != *g.coeff(n).numer() || !g.coeff(n).denom().is_one() {
                return Ok(false);
            }
        }
    }
    Ok(functional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::arity_component;

    #[test]
    fn quad_dims_small() {
        let want = [4u32, 23, 156, 1162];
        for (k, &w) in want.iter().enumerate() {
            assert_eq!(quad_dim_formula(k + 2).unwrap(), BigUint::from(w));
        }
    }

    #[test]
    fn quad_formula_matches_linear_algebra_small() {
        let quad = crate::operads::builtin("quad").unwrap();
        for n in 2..=3 {
            let q = arity_component(&quad, n);
            assert_eq!(BigUint::from(q.dim()), quad_dim_formula(n).unwrap());
        }
    }

    #[test]
    fn hypercube_base_case() {
        use RootLabel::*;
        for v in [vec![Prec], vec![Succ]] {
            assert_eq!(hypercube_count(1, 2, &v).unwrap(), BigUint::one());
        }
        assert_eq!(hypercube_count(3, 2, &[Prec, Succ, Prec]).unwrap(), BigUint::one());
    }

    #[test]
    fn hypercube_all_succ_closed_form() {
        // j = 2, n = 3: 2^2 - 1^2 = 3.
        use RootLabel::Succ;
        assert_eq!(hypercube_count(2, 3, &[Succ, Succ]).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn hypercube_single_succ_is_one() {
        use RootLabel::*;
        for n in 2..=8 {
            assert_eq!(hypercube_count(3, n, &[Prec, Succ, Prec]).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn hypercube_sum_m2_n3() {
        assert_eq!(hypercube_total(2, 3).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn hypercube_totals_are_powers() {
        for m in 1..=3 {
            for n in 2..=6 {
                assert_eq!(
                    hypercube_total(m, n).unwrap(),
                    BigUint::from(n).pow(m as u32),
                    "m = {}, n = {}",
                    m,
                    n
                );
            }
        }
    }

    #[test]
    fn binomial_identity_of_the_recurrence() {
        // n^j - (n-1)^j = sum_k C(j,k) ((n-1)^k - (n-2)^k).
        for j in 1..=6usize {
            for n in 2..=8usize {
                let lhs = BigInt::from(n).pow(j as u32) - BigInt::from(n - 1).pow(j as u32);
                let mut rhs = BigInt::zero();
                for k in 1..=j {
                    let t = BigInt::from(n - 1).pow(k as u32)
                        - BigInt::from((n - 2) as u64).pow(k as u32);
                    rhs += BigInt::from(binomial(j, k)) * t;
                }
                assert_eq!(lhs, rhs, "j = {}, n = {}", j, n);
            }
        }
    }

    #[test]
    fn representative_patterns_match_figures() {
        // (1,2,1): left comb, root (prec,prec,prec), upper (prec,succ,prec).
        let t = hypercube_representative(&[1, 2, 1]);
        assert_eq!(t.canonical_key(), "(g0:(g2:..).)");
        // (3,1,2): right comb, root (succ,prec,succ), upper (succ,prec,prec).
        let t = hypercube_representative(&[3, 1, 2]);
        assert_eq!(t.canonical_key(), "(g5:.(g4:..))");
        // All ones: left comb, all prec.
        let t = hypercube_representative(&[1, 1, 1]);
        assert_eq!(t.canonical_key(), "(g0:(g0:..).)");
    }

    #[test]
    fn series_identity_self_inverse() {
        let id = TruncatedSeries::identity(5);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn series_geometric_pair() {
        // t/(1-t) and t/(1+t) are mutually inverse.
        let s = TruncatedSeries::from_integers(&[1, 1, 1, 1, 1, 1]);
        let inv = s.inverse().unwrap();
        let want = TruncatedSeries::from_integers(&[1, -1, 1, -1, 1, -1]);
        assert_eq!(inv, want);
    }

    #[test]
    fn series_inverse_of_dias_series_gives_catalan() {
        // -g_Dias(-t) with g_Dias = sum n t^n inverts to the dendriform dims.
        let dias = TruncatedSeries::from_integers(&[1, 2, 3, 4, 5, 6]);
        let inv = dias.alternating_twist().inverse().unwrap();
        let catalan = TruncatedSeries::from_integers(&[1, 2, 5, 14, 42, 132]);
        assert_eq!(inv, catalan);
    }

    #[test]
    fn series_zero_linear_term_errors() {
        let s = TruncatedSeries::from_integers(&[0, 1, 0]);
        assert_eq!(s.inverse().unwrap_err(), CountingError::ZeroLinearTerm);
    }

    #[test]
    fn gk_check_ass_small() {
        assert!(gk_check(Builtin::Ass, 5).unwrap());
    }

    #[test]
    fn gk_check_dend_small() {
        assert!(gk_check(Builtin::Dend, 4).unwrap());
    }
}
