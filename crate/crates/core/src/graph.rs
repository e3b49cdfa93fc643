//! Simple undirected graphs on `n` vertices, stored as F2 adjacency matrices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliOperator, StabilizerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("adjacency matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("adjacency matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("vertex {0} has a loop")]
    Loop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
}

/// Symmetric, zero-diagonal adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: BitMatrix,
}

impl Graph {
    pub fn new(adjacency: BitMatrix) -> Result<Self, GraphError> {
        let (rows, cols) = (adjacency.rows(), adjacency.cols());
        if rows != cols {
            return Err(GraphError::NotSquare { rows, cols });
        }
        for r in 0..rows {
            if adjacency.get(r, r) {
                return Err(GraphError::Loop(r));
            }
            for c in r + 1..cols {
                if adjacency.get(r, c) != adjacency.get(c, r) {
                    return Err(GraphError::NotSymmetric { row: r, col: c });
                }
            }
        }
        Ok(Self { adjacency })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: BitMatrix::zeros(n, n),
        }
    }

    /// Edges as 0-based vertex pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = BitMatrix::zeros(n, n);
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::IndexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            adjacency.set(a, b, true);
            adjacency.set(b, a, true);
        }
        Ok(Self { adjacency })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = if n < 3 {
            (1..n).map(|v| (v - 1, v)).collect()
        } else {
            (0..n).map(|v| (v, (v + 1) % n)).collect()
        };
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn into_adjacency(self) -> BitMatrix {
        self.adjacency
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n() {
            return Err(GraphError::IndexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a, b)
    }

    /// Neighbourhood `N(v)` in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adjacency.row(v).ones().collect()
    }

    pub fn neighborhood(&self, v: usize) -> &BitVector {
        self.adjacency.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.row(v).weight()
    }

    /// Edges `(a, b)` with `a < b`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| {
                self.adjacency
                    .row(a)
                    .ones()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.adjacency.rank()
    }

    /// `rank(Γ) < n`, i.e. `det Γ = 0` over F2.
    pub fn is_singular(&self) -> bool {
        self.rank() < self.n()
    }

    /// `G_i = X^i Z^{N_i}` for every vertex.
    pub fn stabilizer_generators(&self) -> StabilizerMatrix {
        let n = self.n();
        let generators = (0..n)
            .map(|i| {
                PauliOperator::from_zx(
                    Default::default(),
                    self.adjacency.row(i).clone(),
                    BitVector::unit(n, i),
                )
                .expect("equal lengths")
            })
            .collect();
        StabilizerMatrix::new(n, generators).expect("equal lengths")
    }

    /// Relabels vertices so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::IndexOutOfRange {
                vertex: perm.len(),
                n,
            });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(GraphError::IndexOutOfRange { vertex: p, n });
            }
            seen[p] = true;
        }
        Ok(Graph {
            adjacency: self.adjacency.select(perm, perm),
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {:?}", self.adjacency)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.adjacency)
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.adjacency.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let adjacency = BitMatrix::deserialize(deserializer)?;
        Graph::new(adjacency).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_adjacency() {
        assert_eq!(
            Graph::new(BitMatrix::zeros(2, 3)),
            Err(GraphError::NotSquare { rows: 2, cols: 3 })
        );
        assert_eq!(Graph::new(BitMatrix::identity(2)), Err(GraphError::Loop(0)));
        let mut m = BitMatrix::zeros(3, 3);
        m.set(0, 2, true);
        assert_eq!(Graph::new(m), Err(GraphError::NotSymmetric { row: 0, col: 2 }));
    }

    #[test]
    fn constructors() {
        assert_eq!(Graph::complete(3).edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(Graph::cycle(5).edges().len(), 5);
        assert_eq!(Graph::path(4).neighbors(1), vec![0, 2]);
        assert_eq!(Graph::cycle(2), Graph::path(2));
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert_eq!(Graph::empty(0).n(), 0);
    }

    #[test]
    fn graph_stabilizers_commute() {
        let g = Graph::cycle(5);
        let s = g.stabilizer_generators();
        assert!(s.is_abelian());
        assert_eq!(s.generators()[0].to_string(), "XZIIZ");
    }

    #[test]
    fn singularity() {
        assert!(!Graph::complete(2).is_singular());
        assert!(Graph::complete(3).is_singular());
        assert!(Graph::empty(1).is_singular());
        assert!(!Graph::empty(0).is_singular());
    }

    #[test]
    fn permutation() {
        let g = Graph::path(3);
        let h = g.permuted(&[1, 0, 2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
        assert!(g.permuted(&[0, 0, 1]).is_err());
    }
}
