//! From codeword stabilizers to graphs: the transpose-and-invert
//! standardization, local complementation, and LC-orbit search.

use std::collections::{HashMap, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::CwsRealization;
use crate::gf2::BitMatrix;
use crate::graph::{Graph, GraphError};
use crate::pauli::{Gate, StabilizerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no Hadamard subset makes the X block invertible; the stabilizer is not maximal")]
    NoHadamardSubsetFound,
    #[error("basis change Λ_vΓ + I is singular at vertex {0}")]
    SingularBasisChange(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `(A, B) = (Zᵀ, Xᵀ)` for an `n × 2n` binary form `(Z | X)`.
pub fn transpose_stabilizer(sm: &StabilizerMatrix) -> Result<(BitMatrix, BitMatrix), TransformError> {
    if sm.len() != sm.n() {
        return Err(TransformError::ShapeMismatch(format!(
            "expected {0} generators on {0} qubits, found {1}",
            sm.n(),
            sm.len()
        )));
    }
    Ok((sm.z_block().transpose(), sm.x_block().transpose()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardizationResult {
    pub graph: Graph,
    /// 0-based qubits that received a Hadamard, ascending.
    pub hadamard_set: Vec<usize>,
    /// Hadamards on `hadamard_set` followed by a phase gate on every entry of
    /// `diagonal_corrections`: the local Clifford taking the input stabilizer
    /// to one generating the same group as `(Γ | I)` up to signs.
    pub post_clifford: Vec<Gate>,
    /// Vertices where `AB⁻¹` had a one on the diagonal that was cleared.
    pub diagonal_corrections: Vec<usize>,
}

/// Hadamard subsets of `0..n` by increasing size, lexicographic within a size.
fn hadamard_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |size| (0..n).combinations(size))
}

fn with_hadamards(z: &BitMatrix, x: &BitMatrix, subset: &[usize]) -> (BitMatrix, BitMatrix) {
    let (mut z, mut x) = (z.clone(), x.clone());
    for r in 0..z.rows() {
        for &q in subset {
            let (zb, xb) = (z.get(r, q), x.get(r, q));
            z.set(r, q, xb);
            x.set(r, q, zb);
        }
    }
    (z, x)
}

/// Finds the first Hadamard subset making `B = Xᵀ` invertible and returns
/// `Γ = A B⁻¹` with its diagonal cleared.
pub fn standardize(cws: &CwsRealization) -> Result<StandardizationResult, TransformError> {
    standardize_stabilizer(cws.codeword_stabilizer())
}

pub fn standardize_stabilizer(sm: &StabilizerMatrix) -> Result<StandardizationResult, TransformError> {
    let n = sm.n();
    transpose_stabilizer(sm)?;
    if sm.rank() < n || !sm.is_abelian() {
        return Err(TransformError::NoHadamardSubsetFound);
    }
    let (z, x) = (sm.z_block(), sm.x_block());
    for subset in hadamard_subsets(n) {
        let (z_h, x_h) = with_hadamards(&z, &x, &subset);
        let (a, b) = (z_h.transpose(), x_h.transpose());
        let Ok(b_inv) = b.invert() else {
            continue;
        };
        let mut gamma = a.mul(&b_inv).expect("square blocks");
        let diagonal_corrections: Vec<usize> = gamma.diagonal().ones().collect();
        for &v in &diagonal_corrections {
            gamma.set(v, v, false);
        }
        let graph = Graph::new(gamma)?;
        let post_clifford = subset
            .iter()
            .map(|&q| Gate::H(q))
            .chain(diagonal_corrections.iter().map(|&q| Gate::P(q)))
            .collect();
        return Ok(StandardizationResult {
            graph,
            hadamard_set: subset,
            post_clifford,
            diagonal_corrections,
        });
    }
    Err(TransformError::NoHadamardSubsetFound)
}

/// Toggles every edge inside `N(v)`.
pub fn local_complement(g: &Graph, v: usize) -> Result<Graph, GraphError> {
    g.check_vertex(v)?;
    let nv = g.neighbors(v);
    let mut adj = g.adjacency().clone();
    for (i, &a) in nv.iter().enumerate() {
        for &b in &nv[i + 1..] {
            adj.flip(a, b);
            adj.flip(b, a);
        }
    }
    Graph::new(adj)
}

/// Applies local complementations in order.
pub fn local_complement_sequence(g: &Graph, vertices: &[usize]) -> Result<Graph, GraphError> {
    vertices
        .iter()
        .try_fold(g.clone(), |acc, &v| local_complement(&acc, v))
}

/// `(Γ + diag(Γ_v)) (Λ_v Γ + I)⁻¹`: the image of `Γ` under the symplectic
/// matrix `Q_v = (I, diag(Γ_v); Λ_v, I)`.
pub fn q_transform(g: &Graph, v: usize) -> Result<BitMatrix, TransformError> {
    g.check_vertex(v)?;
    let n = g.n();
    let gamma = g.adjacency();
    let mut diag = BitMatrix::zeros(n, n);
    for u in g.neighborhood(v).ones() {
        diag.set(u, u, true);
    }
    let mut lambda = BitMatrix::zeros(n, n);
    lambda.set(v, v, true);
    let numerator = gamma.add(&diag).expect("same shape");
    let denominator = lambda
        .mul(gamma)
        .and_then(|m| m.add(&BitMatrix::identity(n)))
        .expect("same shape");
    let inverse = denominator
        .invert()
        .map_err(|_| TransformError::SingularBasisChange(v))?;
    Ok(numerator.mul(&inverse).expect("square"))
}

/// Whether the symplectic `Q_v` image agrees with [`local_complement`].
pub fn verify_q_transform(g: &Graph, v: usize) -> Result<bool, TransformError> {
    let q = q_transform(g, v)?;
    Ok(&q == local_complement(g, v)?.adjacency())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcOrbit {
    /// Breadth-first discovery order; the start graph comes first.
    pub graphs: Vec<Graph>,
    pub truncated: bool,
}

impl LcOrbit {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.graphs.contains(g)
    }
}

/// Closure of `g` under local complementation, exact labeled equality,
/// at most `max_size` graphs.
pub fn lc_orbit(g: &Graph, max_size: usize) -> LcOrbit {
    let mut graphs = Vec::new();
    let truncated = lc_walk(g, max_size, |candidate, _| {
        graphs.push(candidate.clone());
        false
    })
    .is_err();
    LcOrbit { graphs, truncated }
}

/// Breadth-first search of the LC orbit for the first graph satisfying
/// `accept`; candidates are visited by shortest LC sequence, then lowest
/// vertex first. Returns the graph with its 0-based LC sequence, `Ok(None)`
/// when the orbit is exhausted, or `Err(bound)` when `max_size` distinct
/// graphs were visited without success.
pub fn lc_search<F>(g: &Graph, max_size: usize, mut accept: F) -> Result<Option<(Graph, Vec<usize>)>, usize>
where
    F: FnMut(&Graph, &[usize]) -> bool,
{
    let mut found = None;
    let outcome = lc_walk(g, max_size, |candidate, seq| {
        if accept(candidate, seq) {
            found = Some((candidate.clone(), seq.to_vec()));
            true
        } else {
            false
        }
    });
    match (found, outcome) {
        (Some(hit), _) => Ok(Some(hit)),
        (None, Ok(())) => Ok(None),
        (None, Err(())) => Err(max_size),
    }
}

/// Visits orbit members in breadth-first order until `visit` returns true.
/// `Err(())` means the size bound cut the walk short.
fn lc_walk<F>(g: &Graph, max_size: usize, mut visit: F) -> Result<(), ()>
where
    F: FnMut(&Graph, &[usize]) -> bool,
{
    if max_size == 0 {
        return Err(());
    }
    let mut sequences: HashMap<Graph, Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    sequences.insert(g.clone(), Vec::new());
    if visit(g, &[]) {
        return Ok(());
    }
    queue.push_back(g.clone());
    while let Some(current) = queue.pop_front() {
        let seq = sequences[&current].clone();
        for v in 0..current.n() {
            let next = local_complement(&current, v).expect("vertex in range");
            if sequences.contains_key(&next) {
                continue;
            }
            if sequences.len() == max_size {
                return Err(());
            }
            let mut next_seq = seq.clone();
            next_seq.push(v);
            if visit(&next, &next_seq) {
                return Ok(());
            }
            sequences.insert(next.clone(), next_seq);
            queue.push_back(next);
        }
    }
    Ok(())
}

/// The LC at `a` on graph `g` as a local Clifford circuit: `H P H` on `a`
/// (so `Z_a ↦ Y_a`) and `P†` on every neighbour (so `X_b ↦ -Y_b`).
pub fn lc_gates(g: &Graph, a: usize) -> Vec<Gate> {
    let mut gates = vec![Gate::H(a), Gate::P(a), Gate::H(a)];
    for b in g.neighbors(a) {
        gates.extend([Gate::P(b); 3]);
    }
    gates
}

/// Circuit for a whole LC sequence starting at `g`.
pub fn lc_sequence_gates(g: &Graph, vertices: &[usize]) -> Result<Vec<Gate>, GraphError> {
    let mut current = g.clone();
    let mut gates = Vec::new();
    for &v in vertices {
        current.check_vertex(v)?;
        gates.extend(lc_gates(&current, v));
        current = local_complement(&current, v)?;
    }
    Ok(gates)
}

/// Whether a stabilizer matrix generates the same group as the graph
/// stabilizer of `g`, ignoring signs.
pub fn stabilizes_graph_up_to_signs(sm: &StabilizerMatrix, g: &Graph) -> bool {
    sm.binary_form()
        .same_row_span(&g.stabilizer_generators().binary_form())
}

/// The binary vector `(z|x)` rows of a graph stabilizer: `(Γ | I)`.
pub fn graph_binary_form(g: &Graph) -> BitMatrix {
    g.adjacency()
        .hstack(&BitMatrix::identity(g.n()))
        .expect("same row count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::code::realize_cws;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                let mut edges = Vec::new();
                for a in 0..n {
                    for b in a + 1..n {
                        if it.next().unwrap() {
                            edges.push((a, b));
                        }
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    #[test]
    fn transpose_of_graph_stabilizer() {
        let g = Graph::cycle(5);
        let (a, b) = transpose_stabilizer(&g.stabilizer_generators()).unwrap();
        assert_eq!(&a, g.adjacency());
        assert_eq!(b, BitMatrix::identity(5));
        let empty = StabilizerMatrix::new(0, vec![]).unwrap();
        let (a, b) = transpose_stabilizer(&empty).unwrap();
        assert_eq!((a.rows(), b.rows()), (0, 0));
    }

    #[test]
    fn graph_stabilizer_standardizes_to_itself() {
        let g = Graph::cycle(5);
        let res = standardize_stabilizer(&g.stabilizer_generators()).unwrap();
        assert_eq!(res.graph, g);
        assert!(res.hadamard_set.is_empty());
        assert!(res.diagonal_corrections.is_empty());
    }

    #[test]
    fn gottesman_standardizes_to_cube() {
        let cws = realize_cws(&catalog::gottesman_8_3_3()).unwrap();
        let res = standardize(&cws).unwrap();
        assert_eq!(res.graph, catalog::cube());
        assert_eq!(res.hadamard_set, vec![0, 1, 2, 4]);
        let moved = cws
            .codeword_stabilizer()
            .apply_local_clifford(&res.post_clifford)
            .unwrap();
        assert!(stabilizes_graph_up_to_signs(&moved, &res.graph));
    }

    #[test]
    fn non_maximal_input_is_rejected() {
        let sm =
            StabilizerMatrix::new(2, vec![crate::pauli::PauliOperator::parse("ZZ", 2).unwrap(); 2]).unwrap();
        assert_eq!(
            standardize_stabilizer(&sm),
            Err(TransformError::NoHadamardSubsetFound)
        );
    }

    #[test]
    fn lc_small_cases() {
        let k3 = Graph::complete(3);
        let lc = local_complement(&k3, 0).unwrap();
        assert_eq!(lc.edges(), vec![(0, 1), (0, 2)]);
        let iso = Graph::empty(3);
        assert_eq!(local_complement(&iso, 1).unwrap(), iso);
        assert!(local_complement(&iso, 3).is_err());
    }

    #[test]
    fn orbits_of_small_graphs() {
        assert_eq!(lc_orbit(&Graph::complete(2), 100).len(), 1);
        let k3 = lc_orbit(&Graph::complete(3), 100);
        assert_eq!(k3.len(), 4);
        assert!(!k3.truncated);
        assert!(k3.contains(&Graph::path(3)));
        let cut = lc_orbit(&Graph::complete(3), 2);
        assert_eq!(cut.len(), 2);
        assert!(cut.truncated);
    }

    #[test]
    fn search_finds_shortest_sequence() {
        let cube = catalog::cube();
        let (g, seq) = lc_search(&cube, 10_000, |g, _| g.is_singular()).unwrap().unwrap();
        assert_eq!(seq, vec![0, 7]);
        assert_eq!(local_complement_sequence(&cube, &seq).unwrap(), g);
        assert_eq!(lc_search(&cube, 1, |_, _| false), Err(1));
        assert_eq!(lc_search(&Graph::complete(2), 10, |_, _| false), Ok(None));
    }

    #[test]
    fn q_transform_on_fixtures() {
        assert!(verify_q_transform(&catalog::cube(), 0).unwrap());
        assert!(verify_q_transform(&Graph::empty(4), 2).unwrap());
        for v in 0..5 {
            assert!(verify_q_transform(&Graph::cycle(5), v).unwrap());
        }
    }

    #[test]
    fn lc_gates_realize_lc() {
        let g = Graph::cycle(5);
        for a in 0..5 {
            let moved = g
                .stabilizer_generators()
                .apply_local_clifford(&lc_gates(&g, a))
                .unwrap();
            assert!(stabilizes_graph_up_to_signs(
                &moved,
                &local_complement(&g, a).unwrap()
            ));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn lc_is_an_involution(g in arb_graph(9), v in 0usize..9) {
            let v = v % g.n();
            let once = local_complement(&g, v).unwrap();
            prop_assert_eq!(local_complement(&once, v).unwrap(), g);
        }

        #[test]
        fn q_transform_matches_lc(g in arb_graph(8), v in 0usize..8) {
            let v = v % g.n();
            prop_assert!(verify_q_transform(&g, v).unwrap());
        }

        #[test]
        fn lc_gates_match_symplectic_action(g in arb_graph(7), seq in proptest::collection::vec(0usize..7, 0..4)) {
            let seq: Vec<usize> = seq.into_iter().map(|v| v % g.n()).collect();
            let gates = lc_sequence_gates(&g, &seq).unwrap();
            let moved = g.stabilizer_generators().apply_local_clifford(&gates).unwrap();
            prop_assert!(stabilizes_graph_up_to_signs(&moved, &local_complement_sequence(&g, &seq).unwrap()));
        }
    }
}
