//! Coincidence matrices: a graph on `n` output vertices with `k` input
//! vertices attached through an input block `B†` (k × n),
//!
//! ```text
//! Ξ = ( 0_{k×k}  B†  )
//!     ( B†ᵀ      Γ   )
//! ```
//!
//! and the three attachment conditions on `(Γ, B†)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::graph::{Graph, GraphError};
use crate::pauli::{PauliOperator, StabilizerMatrix};
use crate::transform::lc_search;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoincidenceError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("x-support rows have rank {rank}, expected {expected}")]
    RankDeficientSupport { rank: usize, expected: usize },
    #[error("attachment condition {0} violated")]
    ConditionViolated(Condition),
    #[error("no singular graph within {0} LC-orbit members")]
    SearchExhausted(usize),
    #[error("invalid coincidence matrix: {0}")]
    InvalidXi(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    I,
    Ii,
    Iii,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "i",
            Condition::Ii => "ii",
            Condition::Iii => "iii",
        })
    }
}

/// Outcome of the attachment conditions.
///
/// * i: `rank(Γ) < n`
/// * ii: the rows of `B†` are independent and no nonzero vector of their
///   span lies in the row span of `Γ`
/// * iii: some nonzero `v_B` in the row span of `B†` is orthogonal to every
///   row of `Γ`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentReport {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub witness_vb: Option<BitVector>,
}

impl AttachmentReport {
    pub fn all_hold(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii
    }

    pub fn first_failure(&self) -> Option<Condition> {
        [
            (self.cond_i, Condition::I),
            (self.cond_ii, Condition::Ii),
            (self.cond_iii, Condition::Iii),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, c)| c)
    }
}

fn check_block_shape(gamma: &Graph, block: &BitMatrix) -> Result<(), CoincidenceError> {
    if block.cols() != gamma.n() {
        return Err(CoincidenceError::ShapeMismatch(format!(
            "input block has {} columns for {} output vertices",
            block.cols(),
            gamma.n()
        )));
    }
    Ok(())
}

/// With no inputs (`k = 0`) all three conditions hold vacuously.
pub fn check_conditions(gamma: &Graph, block: &BitMatrix) -> Result<AttachmentReport, CoincidenceError> {
    check_block_shape(gamma, block)?;
    if block.rows() == 0 {
        return Ok(AttachmentReport {
            cond_i: true,
            cond_ii: true,
            cond_iii: true,
            witness_vb: None,
        });
    }
    let adj = gamma.adjacency();
    let cond_i = gamma.is_singular();

    let block_rank = block.rank();
    let joint = block.vstack(adj).expect("column counts match").rank();
    let cond_ii = block_rank == block.rows() && block_rank + adj.rank() == joint;

    // v = B†ᵀc with Γv = 0 and v ≠ 0.
    let bt = block.transpose();
    let gamma_bt = adj.mul(&bt).expect("n x n times n x k");
    let witness_vb = gamma_bt
        .kernel()
        .into_iter()
        .map(|c| bt.mul_vec(&c).expect("k-vector"))
        .find(|v| !v.is_zero());

    Ok(AttachmentReport {
        cond_i,
        cond_ii,
        cond_iii: witness_vb.is_some(),
        witness_vb,
    })
}

/// Generators `X^k Z^{Γk}` (phase +1) for each vector `k`.
pub fn graph_form_stabilizer(
    gamma: &Graph,
    vectors: &[BitVector],
) -> Result<StabilizerMatrix, CoincidenceError> {
    let n = gamma.n();
    let generators = vectors
        .iter()
        .map(|k| {
            if k.len() != n {
                return Err(CoincidenceError::ShapeMismatch(format!(
                    "vector of length {} for {n} vertices",
                    k.len()
                )));
            }
            let gk = gamma.adjacency().mul_vec(k).expect("length checked");
            Ok(PauliOperator::from_zx(Default::default(), gk, k.clone()).expect("equal lengths"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StabilizerMatrix::new(n, generators).expect("equal lengths"))
}

/// Canonical (reduced row echelon) basis of the orthogonal complement of the
/// row span of `x_support`, so that `ker B† = span(x_support)`.
pub fn derive_input_block(gamma: &Graph, x_support: &BitMatrix) -> Result<BitMatrix, CoincidenceError> {
    if x_support.cols() != gamma.n() {
        return Err(CoincidenceError::ShapeMismatch(format!(
            "x-support rows have length {} for {} vertices",
            x_support.cols(),
            gamma.n()
        )));
    }
    let rank = x_support.rank();
    if rank != x_support.rows() {
        return Err(CoincidenceError::RankDeficientSupport {
            rank,
            expected: x_support.rows(),
        });
    }
    Ok(x_support.kernel_matrix().rref())
}

/// `Ξ` for `(Γ, B†)` together with its attachment report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceMatrix {
    k: usize,
    n: usize,
    xi: BitMatrix,
    input_block: BitMatrix,
    report: AttachmentReport,
}

fn assemble_xi(gamma: &Graph, block: &BitMatrix) -> BitMatrix {
    let k = block.rows();
    let top = BitMatrix::zeros(k, k).hstack(block).expect("k rows");
    let bottom = block.transpose().hstack(gamma.adjacency()).expect("n rows");
    top.vstack(&bottom).expect("n + k columns")
}

impl CoincidenceMatrix {
    /// Builds `Ξ` and records the attachment report without requiring the
    /// conditions to hold.
    pub fn assemble(gamma: &Graph, block: &BitMatrix) -> Result<Self, CoincidenceError> {
        let report = check_conditions(gamma, block)?;
        Ok(Self {
            k: block.rows(),
            n: gamma.n(),
            xi: assemble_xi(gamma, block),
            input_block: block.clone(),
            report,
        })
    }

    /// Reads `Ξ` with `k` inputs, checking every block invariant.
    pub fn from_xi(k: usize, xi: BitMatrix) -> Result<Self, CoincidenceError> {
        let size = xi.rows();
        if xi.cols() != size {
            return Err(CoincidenceError::InvalidXi(format!(
                "{}x{} is not square",
                size,
                xi.cols()
            )));
        }
        if k > size {
            return Err(CoincidenceError::InvalidXi(format!(
                "k = {k} exceeds dimension {size}"
            )));
        }
        let gamma_block = Graph::new(xi.clone()).map_err(|e| CoincidenceError::InvalidXi(e.to_string()))?;
        let inputs: Vec<usize> = (0..k).collect();
        let outputs: Vec<usize> = (k..size).collect();
        if !xi.select(&inputs, &inputs).is_zero() {
            return Err(CoincidenceError::InvalidXi(
                "input-input block is not zero".into(),
            ));
        }
        let gamma = Graph::new(gamma_block.adjacency().select(&outputs, &outputs))?;
        let block = xi.select(&inputs, &outputs);
        Self::assemble(&gamma, &block)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn xi(&self) -> &BitMatrix {
        &self.xi
    }

    pub fn input_block(&self) -> &BitMatrix {
        &self.input_block
    }

    pub fn report(&self) -> &AttachmentReport {
        &self.report
    }

    pub fn gamma(&self) -> Graph {
        let outputs: Vec<usize> = (self.k..self.k + self.n).collect();
        Graph::new(self.xi.select(&outputs, &outputs)).expect("validated at construction")
    }
}

/// Assembles `Ξ`, failing with the first violated attachment condition.
pub fn attach_inputs(gamma: &Graph, block: &BitMatrix) -> Result<CoincidenceMatrix, CoincidenceError> {
    let xi = CoincidenceMatrix::assemble(gamma, block)?;
    match xi.report.first_failure() {
        Some(c) => Err(CoincidenceError::ConditionViolated(c)),
        None => Ok(xi),
    }
}

/// Returns `gamma` unchanged when singular; otherwise the first singular
/// graph of its LC orbit (shortest sequence, lowest vertex first) with the
/// 0-based LC sequence reaching it.
pub fn ensure_singular(gamma: &Graph, bound: usize) -> Result<(Graph, Vec<usize>), CoincidenceError> {
    match lc_search(gamma, bound, |g, _| g.is_singular()) {
        Ok(Some(hit)) => Ok(hit),
        Ok(None) | Err(_) => Err(CoincidenceError::SearchExhausted(bound)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::transform::local_complement_sequence;

    fn m(text: &str) -> BitMatrix {
        BitMatrix::parse_rows(text).unwrap()
    }

    #[test]
    fn orthogonal_complement_examples() {
        let g = Graph::empty(2);
        assert_eq!(derive_input_block(&g, &m("11")).unwrap(), m("11"));
        let full = derive_input_block(&g, &BitMatrix::identity(2)).unwrap();
        assert_eq!((full.rows(), full.cols()), (0, 2));
        assert_eq!(
            derive_input_block(&g, &m("11\n11")),
            Err(CoincidenceError::RankDeficientSupport { rank: 1, expected: 2 })
        );
    }

    #[test]
    fn graph_form_examples() {
        let g = Graph::empty(3);
        let s = graph_form_stabilizer(&g, &[BitVector::unit(3, 0)]).unwrap();
        assert_eq!(s.generators()[0].to_string(), "XII");
        let s = graph_form_stabilizer(&Graph::cycle(3), &[BitVector::zeros(3)]).unwrap();
        assert!(s.generators()[0].is_identity_up_to_phase());
        assert!(graph_form_stabilizer(&g, &[BitVector::zeros(2)]).is_err());
    }

    #[test]
    fn conditions_on_simple_graphs() {
        let cube = catalog::cube();
        let r = check_conditions(&cube, &m("10000000")).unwrap();
        assert!(!r.cond_i);
        assert_eq!(
            attach_inputs(&cube, &m("10000000")),
            Err(CoincidenceError::ConditionViolated(Condition::I))
        );

        let empty = Graph::empty(4);
        let block = m("1000\n0100");
        let r = check_conditions(&empty, &block).unwrap();
        assert!(r.cond_i && r.cond_ii && r.cond_iii);
        assert!(r.witness_vb.is_some());

        assert!(check_conditions(&empty, &m("100")).is_err());
    }

    #[test]
    fn no_inputs_gives_gamma() {
        let g = Graph::cycle(5);
        let xi = attach_inputs(&g, &BitMatrix::zeros(0, 5)).unwrap();
        assert_eq!(xi.xi(), g.adjacency());
        assert_eq!(xi.gamma(), g);
        assert!(xi.report().witness_vb.is_none());
    }

    #[test]
    fn from_xi_round_trip_and_rejections() {
        let g = Graph::path(3);
        let xi = CoincidenceMatrix::assemble(&g, &m("101")).unwrap();
        assert_eq!(xi.xi(), &m("0101\n1010\n0101\n1010"));
        let back = CoincidenceMatrix::from_xi(1, xi.xi().clone()).unwrap();
        assert_eq!(back, xi);

        let mut bad = xi.xi().clone();
        bad.set(0, 1, false);
        assert!(matches!(
            CoincidenceMatrix::from_xi(1, bad),
            Err(CoincidenceError::InvalidXi(_))
        ));
        let mut inputs = BitMatrix::zeros(4, 4);
        inputs.set(0, 1, true);
        inputs.set(1, 0, true);
        assert!(matches!(
            CoincidenceMatrix::from_xi(2, inputs),
            Err(CoincidenceError::InvalidXi(_))
        ));
    }

    #[test]
    fn ensure_singular_examples() {
        let empty = Graph::empty(3);
        assert_eq!(ensure_singular(&empty, 10).unwrap(), (empty.clone(), vec![]));
        let cube = catalog::cube();
        let (g, seq) = ensure_singular(&cube, 1000).unwrap();
        assert!(g.is_singular());
        assert_eq!(local_complement_sequence(&cube, &seq).unwrap(), g);
        assert_eq!(
            ensure_singular(&cube, 1),
            Err(CoincidenceError::SearchExhausted(1))
        );
        let (c5, _) = ensure_singular(&Graph::cycle(5), 1000).unwrap();
        assert!(c5.is_singular());
    }
}
