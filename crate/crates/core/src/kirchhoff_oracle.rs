//! Matrix-Tree-Theorem oracle: exact cofactors of the Kirchhoff matrix by
//! fraction-free (Bareiss) elimination. Works for any simple graph and shares
//! no code with the chain-graph counter.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("SingularInput: cofactor is 0, the graph is disconnected")]
    SingularInput,
    #[error("Disconnected: graph has no spanning tree (count 0)")]
    Disconnected,
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("cofactor came out negative; input is not a Kirchhoff matrix")]
    NotKirchhoff,
}

/// Dense square matrix of big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareIntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl SquareIntMatrix {
    pub fn zeros(order: usize) -> Self {
        SquareIntMatrix { order, entries: vec![BigInt::zero(); order * order] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "matrix must be square");
        SquareIntMatrix { order, entries: rows.into_iter().flatten().map(BigInt::from).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.order + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.order + c] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn row_sum(&self, r: usize) -> BigInt {
        self.entries[r * self.order..(r + 1) * self.order].iter().sum()
    }

    /// Copy with row and column `index` removed.
    pub fn minor(&self, index: usize) -> SquareIntMatrix {
        let n = self.order;
        let entries = (0..n)
            .filter(|&r| r != index)
            .flat_map(|r| (0..n).filter(move |&c| c != index).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        SquareIntMatrix { order: n - 1, entries }
    }
}

/// `K = D - A`.
pub fn kirchhoff_matrix(g: &Graph) -> SquareIntMatrix {
    let mut k = SquareIntMatrix::zeros(g.order());
    for v in 0..g.order() {
        k.set(v, v, BigInt::from(g.degree(v)));
        for &w in g.neighbors(v) {
            k.set(v, w, BigInt::from(-1));
        }
    }
    k
}

/// Determinant by Bareiss elimination; every division is exact. Returns the
/// number of big-integer operations alongside the value.
pub fn determinant_counted(m: &SquareIntMatrix) -> (BigInt, u64) {
    let n = m.order;
    if n == 0 {
        return (BigInt::one(), 0);
    }
    let mut a = m.entries.clone();
    let mut ops = 0u64;
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    negate = !negate;
                }
                None => return (BigInt::zero(), ops),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (&pivot * &a[i * n + j] - &lead * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
            ops += 4 * (n - k - 1) as u64;
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    (if negate { -det } else { det }, ops)
}

pub fn determinant(m: &SquareIntMatrix) -> BigInt {
    determinant_counted(m).0
}

/// Determinant of `k` with row and column `index` deleted.
pub fn cofactor(k: &SquareIntMatrix, index: usize) -> Result<BigUint, OracleError> {
    cofactor_counted(k, index).map(|(v, _)| v)
}

fn cofactor_counted(k: &SquareIntMatrix, index: usize) -> Result<(BigUint, u64), OracleError> {
    if index >= k.order() {
        return Err(OracleError::IndexOutOfRange { index, order: k.order() });
    }
    let (det, ops) = determinant_counted(&k.minor(index));
    match det.sign() {
        Sign::Plus => Ok((det.magnitude().clone(), ops)),
        Sign::NoSign => Err(OracleError::SingularInput),
        Sign::Minus => Err(OracleError::NotKirchhoff),
    }
}

/// Number of spanning trees, via the cofactor at the last vertex.
pub fn count_oracle(g: &Graph) -> Result<BigUint, OracleError> {
    count_oracle_counted(g).map(|(v, _)| v)
}

/// Like [`count_oracle`], also returning the big-integer operation count.
pub fn count_oracle_counted(g: &Graph) -> Result<(BigUint, u64), OracleError> {
    if g.order() == 0 {
        return Err(OracleError::Disconnected);
    }
    let k = kirchhoff_matrix(g);
    cofactor_counted(&k, g.order() - 1).map_err(|e| match e {
        OracleError::SingularInput => OracleError::Disconnected,
        other => other,
    })
}

/// All `n` cofactors; by the Matrix Tree Theorem they coincide.
pub fn all_cofactors(g: &Graph) -> Vec<Result<BigUint, OracleError>> {
    let k = kirchhoff_matrix(g);
    (0..k.order()).map(|i| cofactor(&k, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(order: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(order, edges.iter().copied()).unwrap()
    }

    #[test]
    fn kirchhoff_examples() {
        let k = kirchhoff_matrix(&graph(2, &[(0, 1)]));
        assert_eq!(k, SquareIntMatrix::from_rows(vec![vec![1, -1], vec![-1, 1]]));

        let k22 = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let k = kirchhoff_matrix(&k22);
        assert!(k.is_symmetric());
        for v in 0..4 {
            assert_eq!(k.get(v, v), &BigInt::from(2));
            assert!(k.row_sum(v).is_zero());
        }
        assert_eq!(k.get(0, 2), &BigInt::from(-1));
        assert_eq!(k.get(0, 1), &BigInt::zero());
    }

    #[test]
    fn cofactor_examples() {
        let edge = kirchhoff_matrix(&graph(2, &[(0, 1)]));
        assert_eq!(cofactor(&edge, 0).unwrap(), BigUint::one());
        assert_eq!(cofactor(&edge, 1).unwrap(), BigUint::one());

        let c4 = kirchhoff_matrix(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        for i in 0..4 {
            assert_eq!(cofactor(&c4, i).unwrap(), BigUint::from(4u32));
        }
        assert_eq!(cofactor(&c4, 4), Err(OracleError::IndexOutOfRange { index: 4, order: 4 }));
    }

    #[test]
    fn disconnected_is_reported() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(count_oracle(&g), Err(OracleError::Disconnected));
        assert_eq!(cofactor(&kirchhoff_matrix(&g), 0), Err(OracleError::SingularInput));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_oracle(&graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap(), BigUint::one());
        assert_eq!(count_oracle(&graph(1, &[])).unwrap(), BigUint::one());
        // K4 has 4^2 spanning trees
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(count_oracle(&k4).unwrap(), BigUint::from(16u32));
        // K_{3,4}
        let edges: Vec<_> = (0..3).flat_map(|u| (3..7).map(move |v| (u, v))).collect();
        assert_eq!(count_oracle(&graph(7, &edges)).unwrap(), BigUint::from(432u32));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = SquareIntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&m), BigInt::from(-1));
        let m = SquareIntMatrix::from_rows(vec![vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]]);
        assert_eq!(determinant(&m), BigInt::from(-3));
        let m = SquareIntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert!(determinant(&m).is_zero());
        assert!(determinant(&SquareIntMatrix::zeros(0)).is_one());
    }
}
