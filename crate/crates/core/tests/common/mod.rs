//! Reference matrices for the [[8,3,3]] worked example, transcribed digit
//! for digit, plus independent brute-force helpers used as test oracles.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::Rng;
use stabgraph::{BitMatrix, BitVector, Gate, Graph, StabilizerCode};

pub fn m(text: &str) -> BitMatrix {
    BitMatrix::parse_rows(text).expect("fixture rows parse")
}

/// `(Z | X)` of `S_CWS` for the [[8,3,3]] code: 5 generators then 3 logical Z.
pub fn cws_z() -> BitMatrix {
    m("00000000
       11111111
       00001111
       00110011
       01010101
       01010101
       00110011
       00001111")
}

pub fn cws_x() -> BitMatrix {
    m("11111111
       00000000
       01011010
       01010101
       01101001
       00000000
       00000000
       00000000")
}

/// `(Z' | X')` after the local Hadamards.
pub fn rotated_z() -> BitMatrix {
    m("11101000
       00010111
       01001111
       01010011
       01111101
       00010101
       00010011
       00000111")
}

pub fn rotated_x() -> BitMatrix {
    m("00010111
       11101000
       00011010
       00110101
       01000001
       01000000
       00100000
       00001000")
}

/// The printed inverse of `B' = X'ᵀ`.
pub fn printed_b_inverse() -> BitMatrix {
    m("01000000
       01001000
       01010110
       10110000
       01100001
       10010000
       10100000
       10011000")
}

/// The cube adjacency.
pub fn cube() -> BitMatrix {
    m("00010110
       00010101
       00010011
       11100000
       00000111
       11001000
       10101000
       01101000")
}

/// The printed graph after local complementation at vertex 1.
pub fn printed_gamma_prime() -> BitMatrix {
    m("00010110
       00101010
       01001100
       10001111
       01110000
       10110011
       11010101
       00010110")
}

/// The printed input block `B†` (3 × 8).
pub fn printed_input_block() -> BitMatrix {
    m("11100111
       01011010
       00111100")
}

/// The printed 11 × 11 coincidence matrix.
pub fn printed_xi() -> BitMatrix {
    m("00011100111
       00001011010
       00000111100
       10000010110
       11000101010
       10101001100
       01110001111
       01101110000
       10110110011
       11011010101
       10000010110")
}

/// The printed six equations for `E = {5, 7}`; columns `d0, d0', d0'', d5, d7`,
/// rows the integration vertices 1, 2, 3, 4, 6, 8.
pub fn printed_system_5_7() -> BitMatrix {
    m("10001
       11011
       10110
       01111
       10101
       10001")
}

/// Rank by enumerating the row space: it has exactly `2^rank` elements.
pub fn brute_rank(a: &BitMatrix) -> usize {
    assert!(a.rows() < 24, "brute force only for small matrices");
    let mut span = HashSet::new();
    for mask in 0u32..(1 << a.rows()) {
        let mut acc = BitVector::zeros(a.cols());
        for r in 0..a.rows() {
            if mask >> r & 1 == 1 {
                acc.xor_assign(a.row(r));
            }
        }
        span.insert(acc);
    }
    span.len().trailing_zeros() as usize
}

/// Every vector of the row space.
pub fn brute_span(a: &BitMatrix) -> HashSet<BitVector> {
    let mut span = HashSet::new();
    for mask in 0u32..(1 << a.rows()) {
        let mut acc = BitVector::zeros(a.cols());
        for r in 0..a.rows() {
            if mask >> r & 1 == 1 {
                acc.xor_assign(a.row(r));
            }
        }
        span.insert(acc);
    }
    span
}

/// Whether `a · b = I` by direct entry-wise products.
pub fn is_inverse_pair(a: &BitMatrix, b: &BitMatrix) -> bool {
    let n = a.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let dot = (0..n).filter(|&t| a.get(i, t) && b.get(t, j)).count() % 2 == 1;
            dot == (i == j)
        })
    })
}

/// Local complementation straight from the definition, entry by entry.
pub fn brute_lc(g: &BitMatrix, v: usize) -> BitMatrix {
    let n = g.rows();
    let mut out = g.clone();
    for a in 0..n {
        for b in 0..n {
            if a != b && g.get(v, a) && g.get(v, b) {
                out.flip(a, b);
            }
        }
    }
    out
}

pub fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_clifford(rng: &mut StdRng, n: usize, depth: usize) -> Vec<Gate> {
    (0..depth)
        .map(|_| match rng.gen_range(0..if n > 1 { 4 } else { 2 }) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::P(rng.gen_range(0..n)),
            kind => {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                if kind == 2 {
                    Gate::Cnot(a, b)
                } else {
                    Gate::Cp(a, b)
                }
            }
        })
        .collect()
}

/// A random `[[n, k]]` code: the canonical code conjugated by a random
/// Clifford circuit.
pub fn random_code(rng: &mut StdRng, n: usize, k: usize) -> StabilizerCode {
    let circuit = random_clifford(rng, n, 6 * n);
    StabilizerCode::canonical(n, k)
        .unwrap()
        .conjugated(&circuit)
        .unwrap()
}
