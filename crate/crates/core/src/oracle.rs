//! Dense state-vector oracle: graph states, codewords, and a direct
//! Knill-Laflamme check by inner products.
//!
//! Amplitude index convention: qubit 0 (label 1) is the most significant bit.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use itertools::Itertools;

use crate::coincidence::CoincidenceMatrix;
use crate::detection::{detect, DetectionMode, ErrorConfiguration};
use crate::graph::Graph;
use crate::pauli::{PauliOperator, PauliSymbol, StabilizerMatrix};

pub const TOLERANCE: f64 = 1e-9;
pub const DEFAULT_QUBIT_CAP: usize = 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{n} qubits exceeds the oracle cap of {cap}; raise the cap to simulate larger codes")]
    TooManyQubits { n: usize, cap: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("codewords {i} and {j} are not orthonormal (inner product {value})")]
    NotOrthogonal { i: usize, j: usize, value: Complex64 },
    #[error("state has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("stabilizer generators do not fix a unique state")]
    NotAStabilizerState,
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        return Err(OracleError::TooManyQubits { n, cap });
    }
    Ok(())
}

/// A normalized `n`-qubit state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self, OracleError> {
        if amplitudes.len() != 1 << n {
            return Err(OracleError::ShapeMismatch(format!(
                "{} amplitudes for {n} qubits",
                amplitudes.len()
            )));
        }
        let s = Self { n, amplitudes };
        let norm = s.norm();
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(OracleError::NotNormalized(norm));
        }
        Ok(s)
    }

    /// Computational basis state; `bits[q]` is the value of qubit `q`.
    pub fn basis(bits: &[bool]) -> Self {
        let n = bits.len();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[index_of(bits)] = Complex64::new(1.0, 0.0);
        Self { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &[bool]) -> Complex64 {
        self.amplitudes[index_of(bits)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn overlap_modulus(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    pub fn equals_up_to_phase(&self, other: &StateVector) -> bool {
        self.n == other.n && (self.overlap_modulus(other) - 1.0).abs() < TOLERANCE
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// Applies a 2x2 matrix `[[a, b], [c, d]]` to one qubit.
    pub fn apply_single(&self, qubit: usize, u: [[Complex64; 2]; 2]) -> StateVector {
        let mask = 1usize << (self.n - 1 - qubit);
        let mut out = self.amplitudes.clone();
        for i in 0..self.amplitudes.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
                out[i] = u[0][0] * a0 + u[0][1] * a1;
                out[i | mask] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        StateVector {
            n: self.n,
            amplitudes: out,
        }
    }

    fn normalized(mut self) -> Option<StateVector> {
        let norm = self.norm();
        if norm < 1e-6 {
            return None;
        }
        for a in &mut self.amplitudes {
            *a /= norm;
        }
        Some(self)
    }
}

fn index_of(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

fn bit(index: usize, n: usize, qubit: usize) -> bool {
    index >> (n - 1 - qubit) & 1 == 1
}

/// `2^{-n/2} Σ_μ (-1)^{#edges inside supp μ} |μ⟩`.
pub fn graph_state(g: &Graph, cap: usize) -> Result<StateVector, OracleError> {
    let n = g.n();
    check_cap(n, cap)?;
    let edges = g.edges();
    let amp = (0.5f64).powf(n as f64 / 2.0);
    let amplitudes = (0..1usize << n)
        .map(|mu| {
            let inside = edges
                .iter()
                .filter(|&&(a, b)| bit(mu, n, a) && bit(mu, n, b))
                .count();
            Complex64::new(if inside % 2 == 0 { amp } else { -amp }, 0.0)
        })
        .collect();
    Ok(StateVector { n, amplitudes })
}

/// `P|μ⟩ = i^{k + #Y} (-1)^{z·μ} |μ ⊕ x⟩` for `P = i^k ⊗ σ` with `Y = iXZ`.
pub fn apply_pauli(s: &StateVector, p: &PauliOperator) -> Result<StateVector, OracleError> {
    if p.n() != s.n {
        return Err(OracleError::ShapeMismatch(format!(
            "{}-qubit operator on a {}-qubit state",
            p.n(),
            s.n
        )));
    }
    let n = s.n;
    let to_mask = |v: &crate::gf2::BitVector| v.ones().fold(0usize, |m, q| m | 1 << (n - 1 - q));
    let (zmask, xmask) = (to_mask(p.z()), to_mask(p.x()));
    let y_count = (0..n).filter(|&q| p.symbol(q) == PauliSymbol::Y).count() as u8;
    let prefactor = i_power(p.phase().exponent() + y_count);
    let mut out = vec![Complex64::new(0.0, 0.0); s.amplitudes.len()];
    for (mu, &a) in s.amplitudes.iter().enumerate() {
        let sign = if (mu & zmask).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        out[mu ^ xmask] = prefactor * a * sign;
    }
    Ok(StateVector { n, amplitudes: out })
}

fn i_power(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `τ_x = √(-iσ_x) = (1/√2) [[-1, i], [i, -1]]`.
pub fn tau_x() -> [[Complex64; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        [Complex64::new(-s, 0.0), Complex64::new(0.0, s)],
        [Complex64::new(0.0, s), Complex64::new(-s, 0.0)],
    ]
}

/// `τ_z = √(iσ_z) = diag(ω, ω³)` with `ω = e^{iπ/4}`.
pub fn tau_z() -> [[Complex64; 2]; 2] {
    let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let zero = Complex64::new(0.0, 0.0);
    [[w, zero], [zero, w.powu(3)]]
}

fn dagger(u: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]]
}

/// The local unitary `τ_x^{(a)} ⊗_{b ∈ N(a)} τ_z^{(b)†}` applied to `s`; it
/// maps `|G⟩` to `|g_a(G)⟩` up to a global phase.
pub fn apply_lc_unitary(s: &StateVector, g: &Graph, a: usize) -> StateVector {
    let tz_dag = dagger(tau_z());
    g.neighbors(a)
        .into_iter()
        .fold(s.apply_single(a, tau_x()), |acc, b| acc.apply_single(b, tz_dag))
}

/// `τ_x` on every neighbour of `a` and `τ_z` everywhere else, read literally.
pub fn apply_lc_unitary_literal(s: &StateVector, g: &Graph, a: usize) -> StateVector {
    let nbrs = g.neighborhood(a).clone();
    (0..g.n()).fold(s.clone(), |acc, q| {
        acc.apply_single(q, if nbrs.get(q) { tau_x() } else { tau_z() })
    })
}

/// The unique joint +1 eigenstate of `n` independent commuting generators,
/// by projecting a generic start vector.
pub fn stabilizer_state(sm: &StabilizerMatrix, cap: usize) -> Result<StateVector, OracleError> {
    let n = sm.n();
    check_cap(n, cap)?;
    if sm.len() != n || sm.rank() != n || !sm.is_abelian() {
        return Err(OracleError::NotAStabilizerState);
    }
    // Deterministic phases with no special structure keep the overlap with
    // the target away from zero.
    let golden = 0.618_033_988_749_894_9_f64;
    let start = StateVector {
        n,
        amplitudes: (0..1usize << n)
            .map(|i| Complex64::from_polar(1.0, std::f64::consts::TAU * ((i as f64 + 1.0) * golden).fract()))
            .collect(),
    };
    let projected = sm.generators().iter().try_fold(start, |acc, g| {
        let moved = apply_pauli(&acc, g)?;
        Ok::<_, OracleError>(StateVector {
            n,
            amplitudes: acc
                .amplitudes
                .iter()
                .zip(&moved.amplitudes)
                .map(|(a, b)| (a + b) * 0.5)
                .collect(),
        })
    })?;
    projected.normalized().ok_or(OracleError::NotAStabilizerState)
}

/// An orthonormal list of codewords.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeSpace {
    codewords: Vec<StateVector>,
}

impl CodeSpace {
    /// Checks orthonormality within [`TOLERANCE`]; never orthogonalizes.
    pub fn new(codewords: Vec<StateVector>) -> Result<Self, OracleError> {
        for i in 0..codewords.len() {
            if codewords[i].n != codewords[0].n {
                return Err(OracleError::ShapeMismatch(
                    "codewords differ in qubit count".into(),
                ));
            }
            for j in i..codewords.len() {
                let value = codewords[i].inner(&codewords[j]);
                let expected = if i == j { 1.0 } else { 0.0 };
                if (value - Complex64::new(expected, 0.0)).norm() > TOLERANCE {
                    return Err(OracleError::NotOrthogonal { i, j, value });
                }
            }
        }
        Ok(Self { codewords })
    }

    pub fn codewords(&self) -> &[StateVector] {
        &self.codewords
    }

    pub fn dim(&self) -> usize {
        self.codewords.len()
    }

    pub fn n(&self) -> usize {
        self.codewords.first().map_or(0, StateVector::n)
    }
}

/// Codewords `w|G⟩` for each word operator.
pub fn codespace_from_cws(
    g: &Graph,
    word_ops: &[PauliOperator],
    cap: usize,
) -> Result<CodeSpace, OracleError> {
    let base = graph_state(g, cap)?;
    let codewords = word_ops
        .iter()
        .map(|w| apply_pauli(&base, w))
        .collect::<Result<Vec<_>, _>>()?;
    CodeSpace::new(codewords)
}

/// Codewords `w|S⟩` where `|S⟩` is the state fixed by `stabilizer`.
pub fn codespace_from_stabilizer(
    stabilizer: &StabilizerMatrix,
    word_ops: &[PauliOperator],
    cap: usize,
) -> Result<CodeSpace, OracleError> {
    let base = stabilizer_state(stabilizer, cap)?;
    let codewords = word_ops
        .iter()
        .map(|w| apply_pauli(&base, w))
        .collect::<Result<Vec<_>, _>>()?;
    CodeSpace::new(codewords)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlWitness {
    pub error: PauliOperator,
    pub i: usize,
    pub j: usize,
    pub expected: Complex64,
    pub found: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlOutcome {
    pub holds: bool,
    pub witness: Option<KlWitness>,
}

/// `⟨c_i|F|c_j⟩ = ω(F) δ_ij` for every error `F`, with `ω(F) = ⟨c_0|F|c_0⟩`.
/// The witness is the first violation in error-list order.
pub fn kl_check(cs: &CodeSpace, errors: &[PauliOperator]) -> Result<KlOutcome, OracleError> {
    if let Some(e) = errors.iter().find(|e| e.n() != cs.n()) {
        return Err(OracleError::ShapeMismatch(format!(
            "{}-qubit error for a {}-qubit code",
            e.n(),
            cs.n()
        )));
    }
    let witness = errors.par_iter().find_map_first(|f| kl_violation(cs, f));
    Ok(KlOutcome {
        holds: witness.is_none(),
        witness,
    })
}

fn kl_violation(cs: &CodeSpace, f: &PauliOperator) -> Option<KlWitness> {
    let moved: Vec<StateVector> = cs
        .codewords
        .iter()
        .map(|c| apply_pauli(c, f).expect("lengths checked"))
        .collect();
    let omega = cs.codewords.first().map(|c0| c0.inner(&moved[0]))?;
    for (i, ci) in cs.codewords.iter().enumerate() {
        for (j, fcj) in moved.iter().enumerate() {
            let expected = if i == j { omega } else { Complex64::new(0.0, 0.0) };
            let found = ci.inner(fcj);
            if (found - expected).norm() > TOLERANCE {
                return Some(KlWitness {
                    error: f.clone(),
                    i,
                    j,
                    expected,
                    found,
                });
            }
        }
    }
    None
}

const NON_IDENTITY: [PauliSymbol; 3] = [PauliSymbol::X, PauliSymbol::Y, PauliSymbol::Z];

/// All `3^|support|` Paulis acting non-trivially on every qubit of `support`.
pub fn paulis_on(n: usize, support: &[usize]) -> Vec<PauliOperator> {
    support
        .iter()
        .map(|_| NON_IDENTITY)
        .multi_cartesian_product()
        .map(|choice| {
            let mut symbols = vec![PauliSymbol::I; n];
            for (&q, s) in support.iter().zip(choice) {
                symbols[q] = s;
            }
            PauliOperator::from_symbols(Default::default(), &symbols)
        })
        .collect()
}

/// Non-identity Paulis whose support lies within `support`, by weight then
/// support then symbol.
pub fn paulis_within(n: usize, support: &[usize]) -> Vec<PauliOperator> {
    (1..=support.len())
        .flat_map(|w| support.iter().copied().combinations(w))
        .flat_map(|sub| paulis_on(n, &sub))
        .collect()
}

/// Non-identity Paulis of weight `1..=max_weight`.
pub fn paulis_up_to_weight(n: usize, max_weight: usize) -> Vec<PauliOperator> {
    (1..=max_weight.min(n))
        .flat_map(|w| (0..n).combinations(w))
        .flat_map(|sub| paulis_on(n, &sub))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub config: ErrorConfiguration,
    pub graph: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub mode: DetectionMode,
    pub entries: Vec<Agreement>,
}

impl AgreementReport {
    pub fn disagreements(&self) -> Vec<&Agreement> {
        self.entries.iter().filter(|a| a.graph != a.oracle).collect()
    }

    pub fn agrees(&self) -> bool {
        self.entries.iter().all(|a| a.graph == a.oracle)
    }
}

/// For every `|E| ≤ 2e`, compares the graph verdict with the KL check over
/// all Paulis supported within `E`.
pub fn cross_validate(
    xi: &CoincidenceMatrix,
    cs: &CodeSpace,
    e: usize,
    mode: DetectionMode,
) -> Result<AgreementReport, OracleError> {
    if xi.n() != cs.n() {
        return Err(OracleError::ShapeMismatch(format!(
            "coincidence matrix has {} outputs, code space {} qubits",
            xi.n(),
            cs.n()
        )));
    }
    let configs = ErrorConfiguration::enumerate(xi.n(), 2 * e);
    let entries = configs
        .into_par_iter()
        .map(|config| {
            let graph = detect(xi, &config, mode).expect("enumerated in range");
            let errors = paulis_within(xi.n(), config.vertices());
            let oracle = kl_check(cs, &errors).map(|o| o.holds)?;
            Ok(Agreement {
                config,
                graph,
                oracle,
            })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(AgreementReport { mode, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn empty_graph_is_plus_state() {
        let s = graph_state(&Graph::empty(3), DEFAULT_QUBIT_CAP).unwrap();
        assert!(s
            .amplitudes()
            .iter()
            .all(|a| (a - c(0.5f64.powf(1.5))).norm() < TOLERANCE));
    }

    #[test]
    fn two_vertex_graph_state() {
        let s = graph_state(&Graph::complete(2), DEFAULT_QUBIT_CAP).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!((a - c(e)).norm() < TOLERANCE);
        }
        let g1 = apply_pauli(&s, &p("XZ")).unwrap();
        assert!(g1.distance(&s) < TOLERANCE);
    }

    #[test]
    fn pauli_action_and_bit_order() {
        let zero = StateVector::basis(&[false]);
        assert_eq!(apply_pauli(&zero, &p("X")).unwrap(), StateVector::basis(&[true]));
        let y0 = apply_pauli(&zero, &p("Y")).unwrap();
        assert!((y0.amplitude(&[true]) - Complex64::new(0.0, 1.0)).norm() < TOLERANCE);
        // Qubit 1 is the most significant bit.
        let s = apply_pauli(&StateVector::basis(&[false, false]), &p("XI")).unwrap();
        assert_eq!(s.amplitudes()[2], c(1.0));
        let id = apply_pauli(&s, &p("II")).unwrap();
        assert_eq!(id, s);
        assert!(apply_pauli(&s, &p("X")).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            graph_state(&Graph::empty(15), DEFAULT_QUBIT_CAP),
            Err(OracleError::TooManyQubits { n: 15, cap: 14 })
        );
    }

    #[test]
    fn tau_matrices_square_to_paulis() {
        let sq = |u: [[Complex64; 2]; 2]| {
            let mut out = [[c(0.0); 2]; 2];
            for (i, row) in out.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = u[i][0] * u[0][j] + u[i][1] * u[1][j];
                }
            }
            out
        };
        let tx2 = sq(tau_x());
        let i = Complex64::new(0.0, 1.0);
        // τ_x² = -iσ_x
        assert!((tx2[0][1] + i).norm() < TOLERANCE && tx2[0][0].norm() < TOLERANCE);
        let tz2 = sq(tau_z());
        // τ_z² = iσ_z
        assert!((tz2[0][0] - i).norm() < TOLERANCE && (tz2[1][1] + i).norm() < TOLERANCE);
    }

    #[test]
    fn lc_unitary_on_triangle() {
        let g = Graph::complete(3);
        let s = graph_state(&g, DEFAULT_QUBIT_CAP).unwrap();
        let lc = crate::transform::local_complement(&g, 0).unwrap();
        let target = graph_state(&lc, DEFAULT_QUBIT_CAP).unwrap();
        assert!(apply_lc_unitary(&s, &g, 0).equals_up_to_phase(&target));
    }

    #[test]
    fn stabilizer_state_of_graph_matches_graph_state() {
        let g = Graph::cycle(5);
        let s = stabilizer_state(&g.stabilizer_generators(), DEFAULT_QUBIT_CAP).unwrap();
        assert!(s.equals_up_to_phase(&graph_state(&g, DEFAULT_QUBIT_CAP).unwrap()));
        let bad = StabilizerMatrix::new(1, vec![p("X"), p("Z")]).unwrap();
        assert_eq!(stabilizer_state(&bad, 4), Err(OracleError::NotAStabilizerState));
    }

    #[test]
    fn codespace_checks() {
        let g = Graph::complete(2);
        let cs = codespace_from_cws(&g, &[p("II")], DEFAULT_QUBIT_CAP).unwrap();
        assert_eq!(cs.dim(), 1);
        // XZ stabilizes |G⟩, so the second codeword repeats the first.
        let dup = codespace_from_cws(&g, &[p("II"), p("XZ")], DEFAULT_QUBIT_CAP);
        assert!(matches!(dup, Err(OracleError::NotOrthogonal { i: 0, j: 1, .. })));
        let ok = kl_check(&cs, &[p("II")]).unwrap();
        assert!(ok.holds);
        assert!(kl_check(&cs, &[]).unwrap().holds);
    }

    #[test]
    fn kl_witness_on_bit_flip_code() {
        // Repetition code |000>, |111> on the empty graph frame: X1 maps codewords
        // out of the code (ω = 0), while Z1 separates them.
        let zero = StateVector::basis(&[false; 3]);
        let one = StateVector::basis(&[true; 3]);
        let cs = CodeSpace::new(vec![zero, one]).unwrap();
        assert!(kl_check(&cs, &[p("XII")]).unwrap().holds);
        let out = kl_check(&cs, &[p("XII"), p("ZII")]).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.error, p("ZII"));
        assert_eq!((w.i, w.j), (1, 1));
    }

    #[test]
    fn pauli_enumeration_counts() {
        assert_eq!(paulis_up_to_weight(8, 2).len(), 24 + 252);
        assert_eq!(paulis_within(4, &[1, 3]).len(), 3 + 3 + 9);
        assert!(paulis_within(4, &[]).is_empty());
        assert_eq!(paulis_on(2, &[1])[0], p("IX"));
    }
}
