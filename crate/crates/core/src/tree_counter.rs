//! Linear-time spanning-tree count for double nested graphs.
//!
//! After deleting the last V vertex, the Kirchhoff matrix is congruent to a
//! block diagonal matrix whose diagonal is
//!
//! * the telescoping cell factors `k·d/(k-1)`, `k = cell size..2`, of every U cell
//!   and every V cell (the last V cell shrunk by the deleted vertex),
//! * one representative `d_{m_i}/m_i` per U cell,
//! * a symmetric tridiagonal block `T` coupling the V representatives.
//!
//! `T` is factored by the LU pivot recurrence `g_1 = a_1`,
//! `g_i = a_i - b_{i-1}^2 / g_{i-1}`, and τ is the product of everything.
//! All arithmetic is exact.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chain_model::{degree_profile, ChainSpec, DegreeProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("ZeroPivot: pivot g_{index} vanished")]
    ZeroPivot { index: usize },
    #[error("NonPositivePivot: pivot g_{index} = {value} is not positive")]
    NonPositivePivot { index: usize, value: BigRational },
    #[error("NonIntegral: assembled product has denominator {denominator}")]
    NonIntegral { denominator: BigUint },
}

/// Counts exact rational operations (multiplications, divisions, additions and
/// subtractions) performed by the counter.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter(u64);

impl OpCounter {
    #[inline]
    fn tick(&mut self, n: u64) {
        self.0 += n;
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn ratio(numer: usize, denom: usize) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Where a diagonal factor came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorOrigin {
    /// Telescoping factor of U cell `i` (0-based).
    UCell(usize),
    /// Telescoping factor of V cell `j` (0-based).
    VCell(usize),
    /// Representative `d_{m_i}/m_i` of U cell `i` (0-based).
    Representative(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub origin: FactorOrigin,
    pub value: BigRational,
}

/// Closed-form diagonal factors produced by collapsing duplicate cell rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorList {
    factors: Vec<Factor>,
}

impl FactorList {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = &BigRational> {
        self.factors.iter().map(|f| &f.value)
    }

    /// Factors with the given origin, in generation order.
    pub fn by_origin(&self, origin: FactorOrigin) -> Vec<&BigRational> {
        self.factors.iter().filter(|f| f.origin == origin).map(|f| &f.value).collect()
    }

    pub fn product(&self) -> BigRational {
        self.values().fold(BigRational::one(), |acc, x| acc * x)
    }
}

/// Appends `k·d/(k-1)` for `k = size` down to `2`.
fn push_telescoping(out: &mut Vec<Factor>, origin: FactorOrigin, size: usize, degree: usize) {
    out.extend((2..=size).rev().map(|k| Factor { origin, value: ratio(k * degree, k - 1) }));
}

/// Diagonal factors of the collapsed cells, straight from the closed forms.
pub fn cell_factors(spec: &ChainSpec, prof: &DegreeProfile) -> FactorList {
    cell_factors_counted(spec, prof, &mut OpCounter::default())
}

fn cell_factors_counted(spec: &ChainSpec, prof: &DegreeProfile, ops: &mut OpCounter) -> FactorList {
    let h = spec.h();
    let mut factors = Vec::new();
    for (i, &mi) in spec.m().iter().enumerate() {
        push_telescoping(&mut factors, FactorOrigin::UCell(i), mi, prof.dm[i]);
    }
    for (j, &nj) in spec.n().iter().enumerate() {
        let size = if j + 1 == h { prof.nstar.unwrap_or(0) } else { nj };
        push_telescoping(&mut factors, FactorOrigin::VCell(j), size, prof.dn[j]);
    }
    for (i, &mi) in spec.m().iter().enumerate() {
        factors.push(Factor { origin: FactorOrigin::Representative(i), value: ratio(prof.dm[i], mi) });
    }
    // one division per generated factor
    ops.tick(factors.len() as u64);
    FactorList { factors }
}

/// Symmetric tridiagonal matrix given by its diagonal `a` and off-diagonal `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tridiagonal {
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
}

impl Tridiagonal {
    pub fn new(a: Vec<BigRational>, b: Vec<BigRational>) -> Self {
        assert!(
            b.len() + 1 == a.len() || (a.is_empty() && b.is_empty()),
            "off-diagonal must be one shorter than the diagonal"
        );
        Tridiagonal { a, b }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }
}

/// The tridiagonal block left after the V representatives are differenced and
/// the U representatives eliminated.
///
/// With `r_j = d_{n_j}/n_j` (the last one over `n*_h`):
/// `a_i = r_i + r_{i+1} - m_{h-i+1}/d_{m_{h-i+1}}`, `b_i = -r_{i+1}`,
/// `a_h = r_h - m_1/d_{m_1}`.
///
/// When `n_h = 1` the deleted vertex removes the whole last V cell, leaving
/// order `h - 1` and a last row coupled to both `U_1` and `U_2`:
/// `a_{h-1} = r_{h-1} - m_1/d_{m_1} - m_2/d_{m_2}`.
pub fn build_tridiagonal(spec: &ChainSpec, prof: &DegreeProfile) -> Tridiagonal {
    build_tridiagonal_counted(spec, prof, &mut OpCounter::default())
}

fn build_tridiagonal_counted(spec: &ChainSpec, prof: &DegreeProfile, ops: &mut OpCounter) -> Tridiagonal {
    let h = spec.h();
    let (m, n) = (spec.m(), spec.n());
    let order = if prof.nstar.is_some() { h } else { h - 1 };
    if order == 0 {
        return Tridiagonal::new(Vec::new(), Vec::new());
    }
    // V representative diagonals r_j and U elimination terms m_i/d_{m_i}.
    let r: Vec<BigRational> = (0..order)
        .map(|j| {
            let size = if j + 1 == h { prof.nstar.unwrap() } else { n[j] };
            ratio(prof.dn[j], size)
        })
        .collect();
    let u_term = |i: usize| ratio(m[i], prof.dm[i]);
    ops.tick(2 * order as u64);

    let mut a = Vec::with_capacity(order);
    for i in 0..order - 1 {
        a.push(&r[i] + &r[i + 1] - u_term(h - 1 - i));
    }
    let mut last = r[order - 1].clone() - u_term(0);
    if order + 1 == h {
        last -= u_term(1);
        ops.tick(1);
    }
    a.push(last);
    ops.tick(2 * order as u64 - 1);

    let b = r[1..].iter().map(|x| -x.clone()).collect();
    Tridiagonal::new(a, b)
}

/// Pivots `g_1..g_k` of the LU factorization of a tridiagonal matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PivotSequence {
    pub g: Vec<BigRational>,
}

impl PivotSequence {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    /// `det(T) = Π g_i` (1 for the empty matrix).
    pub fn product(&self) -> BigRational {
        self.g.iter().fold(BigRational::one(), |acc, x| acc * x)
    }

    /// Subdiagonal of `L`: `f_i = b_i / g_i`.
    pub fn multipliers(&self, t: &Tridiagonal) -> Vec<BigRational> {
        t.b.iter().zip(&self.g).map(|(b, g)| b / g).collect()
    }

    /// Superdiagonal of `U`, which is just `b`.
    pub fn superdiagonal(t: &Tridiagonal) -> Vec<BigRational> {
        t.b.clone()
    }
}

/// Single left-to-right pass of `g_1 = a_1`, `g_i = a_i - b_{i-1}^2/g_{i-1}`.
pub fn lu_pivots(t: &Tridiagonal) -> Result<PivotSequence, CountError> {
    lu_pivots_counted(t, &mut OpCounter::default())
}

fn lu_pivots_counted(t: &Tridiagonal, ops: &mut OpCounter) -> Result<PivotSequence, CountError> {
    let mut g: Vec<BigRational> = Vec::with_capacity(t.order());
    for (i, a) in t.a.iter().enumerate() {
        let gi = match g.last() {
            None => a.clone(),
            Some(prev) => {
                let b = &t.b[i - 1];
                ops.tick(3);
                a - b * b / prev
            }
        };
        if gi.is_zero() {
            return Err(CountError::ZeroPivot { index: i + 1 });
        }
        g.push(gi);
    }
    Ok(PivotSequence { g })
}

/// Everything computed on the way to τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Count {
    pub tau: BigUint,
    pub factors: FactorList,
    pub tridiagonal: Tridiagonal,
    pub pivots: PivotSequence,
    /// Exact rational operations performed.
    pub ops: u64,
    /// Largest numerator-plus-denominator bit length over all pivots.
    pub max_pivot_bits: u64,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tau)
    }
}

pub fn count_spanning_trees(spec: &ChainSpec) -> Result<BigUint, CountError> {
    count_with_details(spec).map(|c| c.tau)
}

/// Runs the counter and keeps every intermediate.
pub fn count_with_details(spec: &ChainSpec) -> Result<Count, CountError> {
    let mut ops = OpCounter::default();
    let prof = degree_profile(spec);
    let factors = cell_factors_counted(spec, &prof, &mut ops);
    let tridiagonal = build_tridiagonal_counted(spec, &prof, &mut ops);
    let pivots = lu_pivots_counted(&tridiagonal, &mut ops)?;

    let mut terms: Vec<(BigUint, BigUint)> = Vec::with_capacity(factors.len() + pivots.len());
    for value in factors.values() {
        terms.push(unsigned_parts(value).expect("cell factors are positive"));
    }
    for (i, g) in pivots.g.iter().enumerate() {
        match unsigned_parts(g) {
            Some(parts) => terms.push(parts),
            None => return Err(CountError::NonPositivePivot { index: i + 1, value: g.clone() }),
        }
    }
    ops.tick(terms.len().saturating_sub(1) as u64);
    let (numer, denom) = product_tree(terms);
    let (tau, rem) = numer.div_rem(&denom);
    if !rem.is_zero() {
        let gcd = numer.gcd(&denom);
        return Err(CountError::NonIntegral { denominator: denom / gcd });
    }
    let max_pivot_bits = pivots
        .g
        .iter()
        .map(|g| g.numer().bits() + g.denom().bits())
        .max()
        .unwrap_or(0);
    Ok(Count { tau, factors, tridiagonal, pivots, ops: ops.get(), max_pivot_bits })
}

fn unsigned_parts(x: &BigRational) -> Option<(BigUint, BigUint)> {
    if !x.is_positive() {
        return None;
    }
    Some((x.numer().magnitude().clone(), x.denom().magnitude().clone()))
}

/// Balanced product of unreduced fractions; keeps operands of similar size so
/// the big multiplications stay subquadratic.
fn product_tree(mut terms: Vec<(BigUint, BigUint)>) -> (BigUint, BigUint) {
    if terms.is_empty() {
        return (BigUint::one(), BigUint::one());
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some((n1, d1)) = it.next() {
            match it.next() {
                Some((n2, d2)) => next.push((n1 * n2, d1 * d2)),
                None => next.push((n1, d1)),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}

/// `m^{n-1} · n^{m-1}`, the number of spanning trees of `K_{m,n}`.
pub fn tau_complete_bipartite(m: u32, n: u32) -> BigUint {
    assert!(m >= 1 && n >= 1, "complete bipartite graph needs non-empty sides");
    BigUint::from(m).pow(n - 1) * BigUint::from(n).pow(m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: &[usize], n: &[usize]) -> ChainSpec {
        ChainSpec::new(m.to_vec(), n.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn cell_factor_examples() {
        let s = spec(&[1, 1], &[2, 2]);
        let f = cell_factors(&s, &degree_profile(&s));
        assert_eq!(f.by_origin(FactorOrigin::Representative(0)), vec![&q(4, 1)]);
        assert_eq!(f.by_origin(FactorOrigin::Representative(1)), vec![&q(2, 1)]);
        assert_eq!(f.by_origin(FactorOrigin::VCell(0)), vec![&q(4, 1)]);
        assert!(f.by_origin(FactorOrigin::VCell(1)).is_empty());
        assert_eq!(f.product(), q(32, 1));

        let s = spec(&[1, 2], &[2, 2]);
        let f = cell_factors(&s, &degree_profile(&s));
        assert_eq!(f.values().cloned().collect::<Vec<_>>(), ints(&[4, 6, 4, 1]));

        let s = spec(&[1], &[1]);
        let f = cell_factors(&s, &degree_profile(&s));
        assert_eq!(f.values().cloned().collect::<Vec<_>>(), ints(&[1]));
    }

    #[test]
    fn telescoping_products() {
        let s = spec(&[4, 3], &[5, 6]);
        let p = degree_profile(&s);
        let f = cell_factors(&s, &p);
        let prod = |o| f.by_origin(o).into_iter().fold(BigRational::one(), |acc, x| acc * x);
        assert_eq!(prod(FactorOrigin::UCell(0)), q(4 * 11 * 11 * 11, 1));
        assert_eq!(prod(FactorOrigin::UCell(1)), q(3 * 5 * 5, 1));
        assert_eq!(prod(FactorOrigin::VCell(0)), q(5 * 7i64.pow(4), 1));
        // last V cell shrinks to n* = 5 with degree m_1 = 4
        assert_eq!(prod(FactorOrigin::VCell(1)), q(5 * 4i64.pow(4), 1));
        assert_eq!(f.len(), 3 + 2 + 4 + 4 + 2);
    }

    #[test]
    fn tridiagonal_examples() {
        let s = spec(&[1, 1, 1], &[2, 1, 2]);
        let t = build_tridiagonal(&s, &degree_profile(&s));
        assert_eq!(t.a, vec![q(3, 1), q(8, 3), q(4, 5)]);
        assert_eq!(t.b, vec![q(-2, 1), q(-1, 1)]);

        let s = spec(&[1, 1], &[2, 2]);
        let t = build_tridiagonal(&s, &degree_profile(&s));
        assert_eq!(t.a, vec![q(3, 2), q(3, 4)]);
        assert_eq!(t.b, vec![q(-1, 1)]);

        let s = spec(&[1, 1], &[2, 1]);
        let t = build_tridiagonal(&s, &degree_profile(&s));
        assert_eq!(t.a, vec![q(1, 6)]);
        assert!(t.b.is_empty());

        // star: the only V vertex is the deleted one
        let s = spec(&[5], &[1]);
        assert_eq!(build_tridiagonal(&s, &degree_profile(&s)).order(), 0);
    }

    #[test]
    fn pivot_examples() {
        let t = Tridiagonal::new(vec![q(3, 1), q(8, 3), q(4, 5)], vec![q(-2, 1), q(-1, 1)]);
        let g = lu_pivots(&t).unwrap();
        assert_eq!(g.g, vec![q(3, 1), q(4, 3), q(1, 20)]);
        assert_eq!(g.product(), q(1, 5));
        assert_eq!(g.multipliers(&t), vec![q(-2, 3), q(-3, 4)]);

        let t = Tridiagonal::new(vec![q(3, 2), q(3, 4)], vec![q(-1, 1)]);
        let g = lu_pivots(&t).unwrap();
        assert_eq!(g.g, vec![q(3, 2), q(1, 12)]);
        assert_eq!(g.product(), q(1, 8));

        let t = Tridiagonal::new(ints(&[5]), vec![]);
        assert_eq!(lu_pivots(&t).unwrap().g, ints(&[5]));
    }

    #[test]
    fn zero_pivot_is_reported() {
        let t = Tridiagonal::new(ints(&[1, 1]), ints(&[1]));
        assert_eq!(lu_pivots(&t), Err(CountError::ZeroPivot { index: 2 }));
        let t = Tridiagonal::new(ints(&[0, 1]), ints(&[1]));
        assert_eq!(lu_pivots(&t), Err(CountError::ZeroPivot { index: 1 }));
    }

    #[test]
    fn counts_from_the_worked_theorems() {
        let cases: &[(&[usize], &[usize], u64)] = &[
            (&[1, 1], &[2, 2], 4),
            (&[1, 2], &[2, 2], 12),
            (&[1, 1], &[3, 3], 12),
            (&[1, 1], &[4, 4], 32),
            (&[1, 1, 1], &[2, 1, 2], 36),
            (&[1, 3], &[2, 2], 32),
            (&[1, 1], &[2, 1], 4),
            (&[1], &[1], 1),
            (&[7], &[1], 1),
        ];
        for &(m, n, tau) in cases {
            assert_eq!(count_spanning_trees(&spec(m, n)).unwrap(), BigUint::from(tau), "{m:?};{n:?}");
        }
    }

    #[test]
    fn complete_bipartite_closed_form() {
        assert_eq!(tau_complete_bipartite(2, 2), BigUint::from(4u32));
        assert_eq!(tau_complete_bipartite(1, 9), BigUint::from(1u32));
        assert_eq!(tau_complete_bipartite(3, 3), BigUint::from(81u32));
        for m in 1..=8u32 {
            for n in 1..=8u32 {
                let s = spec(&[m as usize], &[n as usize]);
                assert_eq!(count_spanning_trees(&s).unwrap(), tau_complete_bipartite(m, n));
            }
        }
    }

    #[test]
    fn details_are_consistent() {
        let c = count_with_details(&spec(&[2, 1, 3], &[1, 4, 2])).unwrap();
        let whole = c.factors.product() * c.pivots.product();
        assert!(whole.is_integer());
        assert_eq!(whole.to_integer().magnitude(), &c.tau);
        assert!(c.pivots.g.iter().all(|g| g.is_positive()));
        assert!(c.ops > 0);
    }
}
