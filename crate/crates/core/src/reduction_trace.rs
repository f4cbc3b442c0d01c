//! Literal replay of the congruence reduction on the dense cofactor matrix.
//!
//! Every step is a pair "row op, then the same column op" of the form
//! `R_t <- R_t + c·R_s`, which preserves symmetry and the determinant. The
//! scripted coefficients are the closed-form ones; after each stage the entry
//! the stage was meant to clear is checked, so any disagreement between the
//! script and the matrix surfaces as [`TraceError::TraceDivergence`].
//!
//! Test fixture only: dense rational arithmetic, small instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain_model::{degree_profile, expand, ChainSpec};
use crate::kirchhoff_oracle::kirchhoff_matrix;
use crate::tree_counter::count_with_details;

/// Largest expansion the trace accepts.
pub const MAX_TRACE_VERTICES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("spec expands to {0} vertices, trace limit is {MAX_TRACE_VERTICES}")]
    TooLarge(usize),
    #[error("TraceDivergence: {0}")]
    TraceDivergence(String),
    #[error("determinant changed after operation {step}")]
    DeterminantDrift { step: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    /// Final diagonal, in matrix order.
    pub diagonal: Vec<BigRational>,
    /// Number of row/column operation pairs applied.
    pub operations: usize,
}

impl ReductionTrace {
    pub fn sorted_diagonal(&self) -> Vec<BigRational> {
        let mut d = self.diagonal.clone();
        d.sort();
        d
    }

    pub fn product(&self) -> BigRational {
        self.diagonal.iter().fold(BigRational::one(), |acc, x| acc * x)
    }
}

struct DenseQ {
    n: usize,
    a: Vec<BigRational>,
    operations: usize,
    reference_det: Option<BigRational>,
}

impl DenseQ {
    fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.a[r * self.n + c]
    }

    /// `R_t <- R_t + c·R_s` followed by `C_t <- C_t + c·C_s`.
    fn add_multiple(&mut self, target: usize, source: usize, c: &BigRational) -> Result<(), TraceError> {
        let n = self.n;
        for col in 0..n {
            let delta = c * &self.a[source * n + col];
            self.a[target * n + col] += delta;
        }
        for row in 0..n {
            let delta = c * &self.a[row * n + source];
            self.a[row * n + target] += delta;
        }
        self.operations += 1;
        if let Some(reference) = &self.reference_det {
            if &rational_determinant(self.n, &self.a) != reference {
                return Err(TraceError::DeterminantDrift { step: self.operations });
            }
        }
        Ok(())
    }

    fn expect_zero(&self, r: usize, c: usize, stage: &str) -> Result<(), TraceError> {
        if self.at(r, c).is_zero() {
            Ok(())
        } else {
            Err(TraceError::TraceDivergence(format!(
                "{stage}: entry ({r},{c}) = {} should be 0",
                self.at(r, c)
            )))
        }
    }

    /// Merges the rows of one cell into its first row.
    fn collapse_cell(&mut self, rows: std::ops::Range<usize>, stage: &str) -> Result<(), TraceError> {
        let rows: Vec<usize> = rows.collect();
        for t in (1..rows.len()).rev() {
            let merged = (rows.len() - t) as i64;
            let (cur, prev) = (rows[t], rows[t - 1]);
            self.add_multiple(cur, prev, &-BigRational::one())?;
            let c = BigRational::new(merged.into(), (merged + 1).into());
            self.add_multiple(prev, cur, &c)?;
            self.expect_zero(prev, cur, stage)?;
            for col in 0..self.n {
                if col != cur {
                    self.expect_zero(cur, col, stage)?;
                }
            }
        }
        Ok(())
    }
}

/// Gaussian elimination over the rationals; only used to watch the determinant.
fn rational_determinant(n: usize, entries: &[BigRational]) -> BigRational {
    let mut a = entries.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det *= &pivot;
        for r in k + 1..n {
            let f = &a[r * n + k] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let delta = &f * &a[k * n + c];
                a[r * n + c] -= delta;
            }
        }
    }
    det
}

pub fn paper_reduction_trace(spec: &ChainSpec) -> Result<ReductionTrace, TraceError> {
    run_trace(spec, false)
}

/// As [`paper_reduction_trace`], recomputing the full determinant after every
/// operation pair. Cubic per step: keep to a dozen vertices or so.
pub fn paper_reduction_trace_tracked(spec: &ChainSpec) -> Result<ReductionTrace, TraceError> {
    run_trace(spec, true)
}

fn run_trace(spec: &ChainSpec, track: bool) -> Result<ReductionTrace, TraceError> {
    let total = spec.vertex_count();
    if total > MAX_TRACE_VERTICES {
        return Err(TraceError::TooLarge(total));
    }
    let graph = expand(spec).expect("small specs fit under the edge cap").to_graph();
    let k = kirchhoff_matrix(&graph).minor(total - 1);
    let n = k.order();
    let a = (0..n * n)
        .map(|idx| BigRational::from_integer(k.get(idx / n, idx % n).clone()))
        .collect::<Vec<_>>();
    let mut mat = DenseQ { n, a, operations: 0, reference_det: None };
    if track {
        mat.reference_det = Some(rational_determinant(n, &mat.a));
    }

    let h = spec.h();
    let prof = degree_profile(spec);
    let u_total = spec.u_count();
    let u_start = |i: usize| if i == 0 { 0 } else { prof.m_prefix[i - 1] };
    let v_start = |j: usize| u_total + if j == 0 { 0 } else { prof.n_prefix[j - 1] };

    // Step 1: U cells.
    for i in 0..h {
        mat.collapse_cell(u_start(i)..u_start(i) + spec.m()[i], "U cell collapse")?;
    }
    // Step 2: V cells; the last one lost the deleted vertex.
    let mut v_reps = Vec::with_capacity(h);
    for j in 0..h {
        let size = if j + 1 == h { spec.n()[j] - 1 } else { spec.n()[j] };
        if size == 0 {
            continue;
        }
        mat.collapse_cell(v_start(j)..v_start(j) + size, "V cell collapse")?;
        v_reps.push(v_start(j));
    }
    let u_reps: Vec<usize> = (0..h).map(u_start).collect();

    // Step 3: difference adjacent V representatives.
    for w in 0..v_reps.len().saturating_sub(1) {
        mat.add_multiple(v_reps[w], v_reps[w + 1], &-BigRational::one())?;
    }

    // Step 4: clear the U/V coupling with the U representatives as pivots.
    let k_rows = v_reps.len();
    if k_rows > 0 {
        for (i, &u) in u_reps.iter().enumerate() {
            let target = v_reps[(h - 1 - i).min(k_rows - 1)];
            let c = BigRational::new(BigInt::from(spec.m()[i]), BigInt::from(prof.dm[i]));
            mat.add_multiple(target, u, &c)?;
        }
        for &u in &u_reps {
            for &v in &v_reps {
                mat.expect_zero(v, u, "U representative elimination")?;
            }
        }
    }

    // LU of the remaining tridiagonal block, applied as congruences.
    for w in 0..k_rows.saturating_sub(1) {
        let (cur, next) = (v_reps[w], v_reps[w + 1]);
        if mat.at(cur, cur).is_zero() {
            return Err(TraceError::TraceDivergence(format!("zero pivot at row {cur}")));
        }
        let c = -(mat.at(next, cur) / mat.at(cur, cur));
        mat.add_multiple(next, cur, &c)?;
    }

    for r in 0..n {
        for c in 0..n {
            if r != c {
                mat.expect_zero(r, c, "final diagonal")?;
            }
        }
    }
    let diagonal = (0..n).map(|r| mat.at(r, r).clone()).collect();
    Ok(ReductionTrace { diagonal, operations: mat.operations })
}

/// Compares the trace diagonal with the counter's factors and pivots as
/// multisets, and its product with τ.
pub fn check_trace(spec: &ChainSpec) -> Result<ReductionTrace, TraceError> {
    let trace = paper_reduction_trace(spec)?;
    let count = count_with_details(spec).map_err(|e| TraceError::TraceDivergence(e.to_string()))?;
    let mut expected: Vec<BigRational> =
        count.factors.values().chain(count.pivots.g.iter()).cloned().collect();
    expected.sort();
    let got = trace.sorted_diagonal();
    if got != expected {
        return Err(TraceError::TraceDivergence(format!(
            "diagonal multiset {} differs from closed forms {}",
            show(&got),
            show(&expected)
        )));
    }
    if trace.product() != BigRational::from_integer(count.tau.clone().into()) {
        return Err(TraceError::TraceDivergence(format!("product differs from τ = {}", count.tau)));
    }
    Ok(trace)
}

fn show(xs: &[BigRational]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
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

    fn sorted(mut v: Vec<BigRational>) -> Vec<BigRational> {
        v.sort();
        v
    }

    #[test]
    fn worked_examples() {
        let t = paper_reduction_trace(&spec(&[1, 1], &[2, 2])).unwrap();
        assert_eq!(t.sorted_diagonal(), sorted(vec![q(4, 1), q(2, 1), q(4, 1), q(3, 2), q(1, 12)]));
        assert_eq!(t.product(), q(4, 1));

        let t = paper_reduction_trace(&spec(&[1], &[1])).unwrap();
        assert_eq!(t.diagonal, vec![q(1, 1)]);

        let t = paper_reduction_trace(&spec(&[1, 2], &[2, 2])).unwrap();
        assert_eq!(
            t.sorted_diagonal(),
            sorted(vec![q(4, 1), q(1, 1), q(4, 1), q(6, 1), q(3, 2), q(1, 12)])
        );
        assert_eq!(t.product(), q(12, 1));
    }

    #[test]
    fn collapse_produces_telescoping_entries() {
        // K_{4,1}: the U cell has degree 1, so the trace reproduces 1/4, 4/3, 3/2, 2.
        let t = paper_reduction_trace(&spec(&[4], &[1])).unwrap();
        assert_eq!(t.sorted_diagonal(), sorted(vec![q(1, 4), q(4, 3), q(3, 2), q(2, 1)]));
    }

    #[test]
    fn determinant_is_preserved() {
        for (m, n) in [(&[2, 1][..], &[1, 3][..]), (&[1, 2, 1], &[2, 1, 1]), (&[3], &[2])] {
            paper_reduction_trace_tracked(&spec(m, n)).unwrap();
        }
    }

    #[test]
    fn check_trace_agrees_with_counter() {
        check_trace(&spec(&[2, 1, 2], &[1, 2, 1])).unwrap();
        check_trace(&spec(&[1, 1], &[2, 1])).unwrap();
    }

    #[test]
    fn refuses_large_specs() {
        assert_eq!(paper_reduction_trace(&spec(&[150], &[51])), Err(TraceError::TooLarge(201)));
    }
}
