//! n-qubit Pauli operators with exact phases, their binary symplectic form,
//! and conjugation by H, P, CNOT and CP.
//!
//! An operator is stored as `i^k · σ_1 ⊗ … ⊗ σ_n` where each `σ_j` is one
//! of the Hermitian matrices I, X, Y, Z and is encoded by the bit pair
//! `(z_j, x_j)`: I = (0,0), X = (0,1), Z = (1,0), Y = (1,1).
//!
//! Text syntax (qubits are 1-based in text, 0-based in the API):
//!
//! ```text
//! pauli   := sign? (dense | sparse)
//! sign    := "+" | "-" | "+i" | "-i" | "i"
//! dense   := [IXYZ]{n}                  e.g. "-XZZXI"
//! sparse  := term (whitespace term)*    e.g. "X2 X4 Y5 Z6 Y7 Z8"
//! term    := [IXYZ] [1-9][0-9]*
//! ```
//!
//! A bare `I` (or an empty body) is the identity on any number of qubits.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("bad Pauli symbol: {0}")]
    BadSymbol(String),
    #[error("length mismatch: expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("qubit {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("qubit {0} listed more than once")]
    RepeatedQubit(usize),
    #[error("two-qubit gate needs distinct targets, got qubit {0} twice")]
    DuplicateTarget(usize),
}

/// A power of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    /// `k` in `i^k`, in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn negate(self) -> Phase {
        Phase((self.0 + 2) % 4)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// `(re, im)` of the phase.
    pub fn as_pair(self) -> (f64, f64) {
        match self.0 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliSymbol {
    I,
    X,
    Y,
    Z,
}

impl PauliSymbol {
    fn from_bits(z: bool, x: bool) -> Self {
        match (z, x) {
            (false, false) => PauliSymbol::I,
            (false, true) => PauliSymbol::X,
            (true, false) => PauliSymbol::Z,
            (true, true) => PauliSymbol::Y,
        }
    }

    /// `(z, x)` encoding.
    fn bits(self) -> (bool, bool) {
        match self {
            PauliSymbol::I => (false, false),
            PauliSymbol::X => (false, true),
            PauliSymbol::Z => (true, false),
            PauliSymbol::Y => (true, true),
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliSymbol::I),
            'X' => Some(PauliSymbol::X),
            'Y' => Some(PauliSymbol::Y),
            'Z' => Some(PauliSymbol::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliSymbol::I => 'I',
            PauliSymbol::X => 'X',
            PauliSymbol::Y => 'Y',
            PauliSymbol::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    phase: Phase,
    z: BitVector,
    x: BitVector,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: Phase::ONE,
            z: BitVector::zeros(n),
            x: BitVector::zeros(n),
        }
    }

    pub fn from_zx(phase: Phase, z: BitVector, x: BitVector) -> Result<Self, PauliError> {
        if z.len() != x.len() {
            return Err(PauliError::LengthMismatch {
                expected: z.len(),
                found: x.len(),
            });
        }
        Ok(Self { phase, z, x })
    }

    /// `Z^v`.
    pub fn z_string(v: &BitVector) -> Self {
        Self {
            phase: Phase::ONE,
            z: v.clone(),
            x: BitVector::zeros(v.len()),
        }
    }

    /// `X^u`.
    pub fn x_string(u: &BitVector) -> Self {
        Self {
            phase: Phase::ONE,
            z: BitVector::zeros(u.len()),
            x: u.clone(),
        }
    }

    /// A single-qubit Pauli on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, symbol: PauliSymbol) -> Result<Self, PauliError> {
        if qubit >= n {
            return Err(PauliError::IndexOutOfRange { index: qubit, n });
        }
        let mut p = Self::identity(n);
        p.set_symbol(qubit, symbol);
        Ok(p)
    }

    pub fn from_symbols(phase: Phase, symbols: &[PauliSymbol]) -> Self {
        let mut p = Self::identity(symbols.len());
        p.phase = phase;
        for (q, &s) in symbols.iter().enumerate() {
            p.set_symbol(q, s);
        }
        p
    }

    /// Parses the text syntax described in the module docs against a known
    /// qubit count.
    pub fn parse(text: &str, n: usize) -> Result<Self, PauliError> {
        let (phase, body) = split_sign(text.trim());
        let body = body.trim();
        if body.is_empty() || body == "I" {
            return Ok(Self::identity(n).with_phase(phase));
        }
        if body.chars().any(|c| c.is_ascii_digit()) {
            parse_sparse(phase, body, n)
        } else {
            let p = parse_dense(phase, body)?;
            if p.n() != n {
                return Err(PauliError::LengthMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
            Ok(p)
        }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// The same operator with phase `+1`: the view graph-side code reads.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(Phase::ONE)
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    /// Binary symplectic vector `(z | x)`.
    pub fn to_binary(&self) -> BitVector {
        self.z.concat(&self.x)
    }

    pub fn symbol(&self, qubit: usize) -> PauliSymbol {
        PauliSymbol::from_bits(self.z.get(qubit), self.x.get(qubit))
    }

    fn set_symbol(&mut self, qubit: usize, symbol: PauliSymbol) {
        let (z, x) = symbol.bits();
        self.z.set(qubit, z);
        self.x.set(qubit, x);
    }

    pub fn symbols(&self) -> Vec<PauliSymbol> {
        (0..self.n()).map(|q| self.symbol(q)).collect()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.z.is_zero() && self.x.is_zero()
    }

    pub fn is_z_only(&self) -> bool {
        self.x.is_zero()
    }

    /// Qubits acted on non-trivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&q| self.z.get(q) || self.x.get(q))
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    fn check_len(&self, other: &PauliOperator) -> Result<(), PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::LengthMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// `z·x' + x·z' mod 2`; false iff the two operators commute.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool, PauliError> {
        self.check_len(other)?;
        Ok(self.z.dot(&other.x) ^ self.x.dot(&other.z))
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool, PauliError> {
        Ok(!self.symplectic_product(other)?)
    }

    /// The operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator, PauliError> {
        self.check_len(other)?;
        let mut k = i64::from(self.phase.0) + i64::from(other.phase.0);
        for q in 0..self.n() {
            k += single_qubit_product_exponent(
                (self.z.get(q), self.x.get(q)),
                (other.z.get(q), other.x.get(q)),
            );
        }
        Ok(PauliOperator {
            phase: Phase::from_exponent(k),
            z: self.z.xor(&other.z),
            x: self.x.xor(&other.x),
        })
    }

    /// `U · self · U†` for a single gate, with exact phase tracking.
    pub fn conjugate(&self, gate: &Gate) -> Result<PauliOperator, PauliError> {
        gate.validate(self.n())?;
        let mut p = self.clone();
        p.conjugate_in_place(gate);
        Ok(p)
    }

    /// Applies a circuit in order: the result is `U_m … U_1 · self · U_1† … U_m†`.
    pub fn conjugate_by_circuit(&self, circuit: &[Gate]) -> Result<PauliOperator, PauliError> {
        for gate in circuit {
            gate.validate(self.n())?;
        }
        let mut p = self.clone();
        for gate in circuit {
            p.conjugate_in_place(gate);
        }
        Ok(p)
    }

    fn conjugate_in_place(&mut self, gate: &Gate) {
        match *gate {
            Gate::H(a) => {
                let (z, x) = (self.z.get(a), self.x.get(a));
                if z && x {
                    self.phase = self.phase.negate();
                }
                self.z.set(a, x);
                self.x.set(a, z);
            }
            Gate::P(a) => {
                let (z, x) = (self.z.get(a), self.x.get(a));
                if z && x {
                    self.phase = self.phase.negate();
                }
                self.z.set(a, z ^ x);
            }
            Gate::Cnot(c, t) => {
                let (xc, zc, xt, zt) = (self.x.get(c), self.z.get(c), self.x.get(t), self.z.get(t));
                if xc && zt && (xt == zc) {
                    self.phase = self.phase.negate();
                }
                self.x.set(t, xt ^ xc);
                self.z.set(c, zc ^ zt);
            }
            Gate::Cp(a, b) => {
                self.conjugate_in_place(&Gate::H(b));
                self.conjugate_in_place(&Gate::Cnot(a, b));
                self.conjugate_in_place(&Gate::H(b));
            }
        }
    }

    /// 1-based sparse rendering such as `-X2 Y5`; the identity renders as `I`.
    pub fn to_sparse_string(&self) -> String {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| format!("{}{}", self.symbol(q).as_char(), q + 1))
            .collect();
        let body = if terms.is_empty() {
            "I".to_string()
        } else {
            terms.join(" ")
        };
        format!("{}{}", self.phase.prefix(), body)
    }
}

/// Exponent `g` with `σ_a σ_b = i^g σ_c` for single-qubit Paulis given as `(z, x)`.
fn single_qubit_product_exponent(a: (bool, bool), b: (bool, bool)) -> i64 {
    let (z1, x1) = a;
    let (z2, x2) = (i64::from(b.0), i64::from(b.1));
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

fn split_sign(text: &str) -> (Phase, &str) {
    for (prefix, phase) in [
        ("+i", Phase::I),
        ("-i", Phase::MINUS_I),
        ("i", Phase::I),
        ("+", Phase::ONE),
        ("-", Phase::MINUS_ONE),
    ] {
        if let Some(rest) = text.strip_prefix(prefix) {
            return (phase, rest);
        }
    }
    (Phase::ONE, text)
}

fn parse_dense(phase: Phase, body: &str) -> Result<PauliOperator, PauliError> {
    let symbols = body
        .chars()
        .map(|c| PauliSymbol::from_char(c).ok_or_else(|| PauliError::BadSymbol(c.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PauliOperator::from_symbols(phase, &symbols))
}

fn parse_sparse(phase: Phase, body: &str, n: usize) -> Result<PauliOperator, PauliError> {
    let mut p = PauliOperator::identity(n).with_phase(phase);
    let mut seen = vec![false; n];
    for term in body.split_whitespace() {
        let mut chars = term.chars();
        let symbol = chars
            .next()
            .and_then(PauliSymbol::from_char)
            .ok_or_else(|| PauliError::BadSymbol(term.to_string()))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(PauliError::BadSymbol(term.to_string()));
        }
        let label: usize = digits
            .parse()
            .map_err(|_| PauliError::BadSymbol(term.to_string()))?;
        if label == 0 || label > n {
            return Err(PauliError::IndexOutOfRange { index: label, n });
        }
        let q = label - 1;
        if seen[q] {
            return Err(PauliError::RepeatedQubit(label));
        }
        seen[q] = true;
        p.set_symbol(q, symbol);
    }
    Ok(p)
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for q in 0..self.n() {
            write!(f, "{}", self.symbol(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    /// Dense form only; the qubit count is the string length.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (phase, body) = split_sign(s.trim());
        parse_dense(phase, body.trim())
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Clifford gates with 0-based targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    P(usize),
    /// Control, target.
    Cnot(usize, usize),
    Cp(usize, usize),
}

impl Gate {
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::H(a) | Gate::P(a) => vec![a],
            Gate::Cnot(a, b) | Gate::Cp(a, b) => vec![a, b],
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, Gate::H(_) | Gate::P(_))
    }

    pub fn validate(&self, n: usize) -> Result<(), PauliError> {
        let t = self.targets();
        if let Some(&index) = t.iter().find(|&&q| q >= n) {
            return Err(PauliError::IndexOutOfRange { index, n });
        }
        if t.len() == 2 && t[0] == t[1] {
            return Err(PauliError::DuplicateTarget(t[0]));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(a) => write!(f, "H {}", a + 1),
            Gate::P(a) => write!(f, "P {}", a + 1),
            Gate::Cnot(a, b) => write!(f, "CNOT {} {}", a + 1, b + 1),
            Gate::Cp(a, b) => write!(f, "CP {} {}", a + 1, b + 1),
        }
    }
}

impl FromStr for Gate {
    type Err = PauliError;

    /// `"H 3"`, `"CNOT 1 2"`, ...; qubits 1-based.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PauliError::BadSymbol(s.to_string());
        let mut parts = s.split_whitespace();
        let name = parts.next().ok_or_else(bad)?;
        let qubits = parts
            .map(|t| match t.parse::<usize>() {
                Ok(q) if q >= 1 => Ok(q - 1),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        match (name.to_ascii_uppercase().as_str(), qubits.as_slice()) {
            ("H", &[a]) => Ok(Gate::H(a)),
            ("P", &[a]) => Ok(Gate::P(a)),
            ("CNOT", &[a, b]) => Ok(Gate::Cnot(a, b)),
            ("CP", &[a, b]) => Ok(Gate::Cp(a, b)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Gate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered list of Pauli generators together with its `(Z|X)` binary form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilizerMatrix {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerMatrix {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, PauliError> {
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(PauliError::LengthMismatch {
                expected: n,
                found: g.n(),
            });
        }
        Ok(Self { n, generators })
    }

    /// Generators with phase `+1` read from the rows `(z | x)` of a `rows × 2n` matrix.
    pub fn from_binary(binary: &BitMatrix) -> Result<Self, PauliError> {
        if binary.cols() % 2 != 0 {
            return Err(PauliError::LengthMismatch {
                expected: binary.cols() + 1,
                found: binary.cols(),
            });
        }
        let n = binary.cols() / 2;
        let z_cols: Vec<usize> = (0..n).collect();
        let x_cols: Vec<usize> = (n..2 * n).collect();
        let generators = binary
            .row_vectors()
            .iter()
            .map(|row| PauliOperator {
                phase: Phase::ONE,
                z: row.select(&z_cols),
                x: row.select(&x_cols),
            })
            .collect();
        Ok(Self { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// The `rows × 2n` matrix whose row `i` is `(z_i | x_i)`.
    pub fn binary_form(&self) -> BitMatrix {
        BitMatrix::from_rows(
            2 * self.n,
            self.generators.iter().map(PauliOperator::to_binary).collect(),
        )
        .expect("generator lengths checked at construction")
    }

    pub fn z_block(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.generators.iter().map(|g| g.z.clone()).collect())
            .expect("generator lengths checked at construction")
    }

    pub fn x_block(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.generators.iter().map(|g| g.x.clone()).collect())
            .expect("generator lengths checked at construction")
    }

    pub fn rank(&self) -> usize {
        self.binary_form().rank()
    }

    /// First pair `(i, j)`, `i < j`, of anticommuting generators.
    pub fn first_anticommuting_pair(&self) -> Option<(usize, usize)> {
        let g = &self.generators;
        (0..g.len())
            .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
            .find(|&(i, j)| g[i].symplectic_product(&g[j]).expect("same length"))
    }

    pub fn is_abelian(&self) -> bool {
        self.first_anticommuting_pair().is_none()
    }

    /// Conjugates every generator by the circuit, in order.
    pub fn apply_local_clifford(&self, circuit: &[Gate]) -> Result<StabilizerMatrix, PauliError> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.conjugate_by_circuit(circuit))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            n: self.n,
            generators,
        })
    }

    /// Same generator list with every phase set to `+1`.
    pub fn unsigned(&self) -> StabilizerMatrix {
        Self {
            n: self.n,
            generators: self.generators.iter().map(PauliOperator::unsigned).collect(),
        }
    }
}
