//! Binary stabilizer codes, their codeword-stabilized (CWS) realization, and
//! the CWS classical error map.
//!
//! Code files are line oriented:
//!
//! ```text
//! # comment
//! n k [d]
//! <n-k generator lines>
//! <k logical X lines>
//! <k logical Z lines>
//! ```
//!
//! Each operator line uses the Pauli text syntax of [`crate::pauli`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{Gate, PauliError, PauliOperator, StabilizerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected {expected} {what}, found {found}")]
    WrongCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid code: {0}")]
    InvalidCode(ValidationReport),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    claimed_distance: Option<usize>,
}

impl StabilizerCode {
    /// Checks counts and qubit numbers only; group structure is checked by
    /// [`StabilizerCode::validate`].
    pub fn new(
        n: usize,
        k: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self, CodeError> {
        if k > n {
            return Err(CodeError::ShapeMismatch(format!("k = {k} exceeds n = {n}")));
        }
        for (what, list, expected) in [
            ("generators", &generators, n - k),
            ("logical X operators", &logical_x, k),
            ("logical Z operators", &logical_z, k),
        ] {
            if list.len() != expected {
                return Err(CodeError::WrongCount {
                    what,
                    expected,
                    found: list.len(),
                });
            }
            if let Some(p) = list.iter().find(|p| p.n() != n) {
                return Err(PauliError::LengthMismatch {
                    expected: n,
                    found: p.n(),
                }
                .into());
            }
        }
        Ok(Self {
            n,
            k,
            generators,
            logical_x,
            logical_z,
            claimed_distance: None,
        })
    }

    pub fn with_claimed_distance(mut self, d: Option<usize>) -> Self {
        self.claimed_distance = d;
        self
    }

    /// `[[n, k]]` with `S = <Z_{k+1}, ..., Z_n>`, `X̄_i = X_i`, `Z̄_i = Z_i`.
    pub fn canonical(n: usize, k: usize) -> Result<Self, CodeError> {
        if k > n {
            return Err(CodeError::ShapeMismatch(format!("k = {k} exceeds n = {n}")));
        }
        let unit = |q| BitVector::unit(n, q);
        Self::new(
            n,
            k,
            (k..n).map(|q| PauliOperator::z_string(&unit(q))).collect(),
            (0..k).map(|q| PauliOperator::x_string(&unit(q))).collect(),
            (0..k).map(|q| PauliOperator::z_string(&unit(q))).collect(),
        )
    }

    /// Every operator of the code conjugated by the circuit.
    pub fn conjugated(&self, circuit: &[Gate]) -> Result<Self, CodeError> {
        let map = |list: &[PauliOperator]| -> Result<Vec<PauliOperator>, PauliError> {
            list.iter().map(|p| p.conjugate_by_circuit(circuit)).collect()
        };
        Ok(Self {
            n: self.n,
            k: self.k,
            generators: map(&self.generators)?,
            logical_x: map(&self.logical_x)?,
            logical_z: map(&self.logical_z)?,
            claimed_distance: self.claimed_distance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn claimed_distance(&self) -> Option<usize> {
        self.claimed_distance
    }

    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then_some((i + 1, content))
        });

        let (header_line, header) = lines.next().ok_or(CodeError::Parse {
            line: text.lines().count().max(1),
            message: "missing header line \"n k\"".into(),
        })?;
        let fields = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CodeError::Parse {
                line: header_line,
                message: format!("bad header: {e}"),
            })?;
        let (n, k, d) = match fields[..] {
            [n, k] => (n, k, None),
            [n, k, d] => (n, k, Some(d)),
            _ => {
                return Err(CodeError::Parse {
                    line: header_line,
                    message: "header must be \"n k\" or \"n k d\"".into(),
                })
            }
        };
        if k > n {
            return Err(CodeError::Parse {
                line: header_line,
                message: format!("k = {k} exceeds n = {n}"),
            });
        }

        let mut read = |count: usize, what: &'static str| -> Result<Vec<PauliOperator>, CodeError> {
            (0..count)
                .map(|i| {
                    let (line, content) = lines.next().ok_or(CodeError::Parse {
                        line: text.lines().count(),
                        message: format!("expected {count} {what}, found {i}"),
                    })?;
                    PauliOperator::parse(content, n).map_err(|e| CodeError::Parse {
                        line,
                        message: e.to_string(),
                    })
                })
                .collect()
        };
        let generators = read(n - k, "generators")?;
        let logical_x = read(k, "logical X operators")?;
        let logical_z = read(k, "logical Z operators")?;
        if let Some((line, _)) = lines.next() {
            return Err(CodeError::Parse {
                line,
                message: "unexpected trailing operator".into(),
            });
        }
        Ok(Self::new(n, k, generators, logical_x, logical_z)?.with_claimed_distance(d))
    }

    /// Inverse of [`StabilizerCode::parse`].
    pub fn to_text(&self) -> String {
        let mut out = match self.claimed_distance {
            Some(d) => format!("{} {} {}\n", self.n, self.k, d),
            None => format!("{} {}\n", self.n, self.k),
        };
        for p in self
            .generators
            .iter()
            .chain(&self.logical_x)
            .chain(&self.logical_z)
        {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if anticommute(&g[i], &g[j]) {
                    violations.push(Violation::GeneratorsAnticommute { i, j });
                }
            }
        }
        let rank = StabilizerMatrix::new(self.n, g.clone())
            .expect("lengths checked at construction")
            .rank();
        if rank != g.len() {
            violations.push(Violation::DependentGenerators {
                rank,
                expected: g.len(),
            });
        }
        let logicals = self
            .logical_x
            .iter()
            .enumerate()
            .map(|(i, p)| (Logical::X(i), p))
            .chain(self.logical_z.iter().enumerate().map(|(i, p)| (Logical::Z(i), p)));
        for (logical, p) in logicals {
            for (generator, s) in g.iter().enumerate() {
                if anticommute(p, s) {
                    violations.push(Violation::LogicalAnticommutesWithGenerator { logical, generator });
                }
            }
        }
        for i in 0..self.k {
            for j in 0..self.k {
                let expected = i == j;
                if anticommute(&self.logical_x[i], &self.logical_z[j]) != expected {
                    violations.push(Violation::LogicalPair {
                        first: Logical::X(i),
                        second: Logical::Z(j),
                        expected_anticommute: expected,
                    });
                }
                if i < j {
                    for (first, second, a, b) in [
                        (
                            Logical::X(i),
                            Logical::X(j),
                            &self.logical_x[i],
                            &self.logical_x[j],
                        ),
                        (
                            Logical::Z(i),
                            Logical::Z(j),
                            &self.logical_z[i],
                            &self.logical_z[j],
                        ),
                    ] {
                        if anticommute(a, b) {
                            violations.push(Violation::LogicalPair {
                                first,
                                second,
                                expected_anticommute: false,
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

fn anticommute(a: &PauliOperator, b: &PauliOperator) -> bool {
    a.symplectic_product(b).expect("lengths checked at construction")
}

/// A logical operator by 0-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Logical {
    X(usize),
    Z(usize),
}

impl fmt::Display for Logical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Logical::X(i) => write!(f, "logical X{}", i + 1),
            Logical::Z(i) => write!(f, "logical Z{}", i + 1),
        }
    }
}

/// One broken invariant; indices are 0-based, display is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    GeneratorsAnticommute {
        i: usize,
        j: usize,
    },
    DependentGenerators {
        rank: usize,
        expected: usize,
    },
    LogicalAnticommutesWithGenerator {
        logical: Logical,
        generator: usize,
    },
    LogicalPair {
        first: Logical,
        second: Logical,
        expected_anticommute: bool,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GeneratorsAnticommute { i, j } => {
                write!(f, "generators {} and {} anticommute", i + 1, j + 1)
            }
            Violation::DependentGenerators { rank, expected } => {
                write!(f, "generators have rank {rank}, expected {expected}")
            }
            Violation::LogicalAnticommutesWithGenerator { logical, generator } => {
                write!(f, "{logical} anticommutes with generator {}", generator + 1)
            }
            Violation::LogicalPair {
                first,
                second,
                expected_anticommute,
            } => {
                let want = if *expected_anticommute {
                    "anticommute"
                } else {
                    "commute"
                };
                write!(f, "{first} and {second} should {want}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A CWS description of a stabilizer code: a maximal Abelian codeword
/// stabilizer plus `2^k` word operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwsRealization {
    codeword_stabilizer: StabilizerMatrix,
    code_generators: usize,
    word_operators: Vec<PauliOperator>,
    clifford_record: Vec<Gate>,
    standard_form: bool,
}

/// `S_CWS = <generators, logical Z>` with word operators
/// `ω_v = X̄_1^{v_1} ⋯ X̄_k^{v_k}`, `v` counting `0..2^k` in binary with
/// bit 0 selecting `X̄_1`.
pub fn realize_cws(code: &StabilizerCode) -> Result<CwsRealization, CodeError> {
    let report = code.validate();
    if !report.is_valid() {
        return Err(CodeError::InvalidCode(report));
    }
    let n = code.n();
    let mut generators = code.generators().to_vec();
    generators.extend_from_slice(code.logical_z());
    let codeword_stabilizer = StabilizerMatrix::new(n, generators)?;

    let k = code.k();
    let word_operators = (0..1usize << k)
        .map(|v| {
            (0..k)
                .filter(|i| v >> i & 1 == 1)
                .try_fold(PauliOperator::identity(n), |acc, i| {
                    acc.multiply(&code.logical_x()[i])
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CwsRealization::from_parts(
        codeword_stabilizer,
        n - k,
        word_operators,
        Vec::new(),
    ))
}

impl CwsRealization {
    fn from_parts(
        codeword_stabilizer: StabilizerMatrix,
        code_generators: usize,
        word_operators: Vec<PauliOperator>,
        clifford_record: Vec<Gate>,
    ) -> Self {
        let standard_form = is_standard_form(&codeword_stabilizer, &word_operators);
        Self {
            codeword_stabilizer,
            code_generators,
            word_operators,
            clifford_record,
            standard_form,
        }
    }

    pub fn n(&self) -> usize {
        self.codeword_stabilizer.n()
    }

    /// Number of logical qubits.
    pub fn k(&self) -> usize {
        self.n() - self.code_generators
    }

    pub fn codeword_stabilizer(&self) -> &StabilizerMatrix {
        &self.codeword_stabilizer
    }

    /// The first `n - k` rows of the codeword stabilizer: the original code
    /// generators (as conjugated by the recorded circuit).
    pub fn code_generators(&self) -> &[PauliOperator] {
        &self.codeword_stabilizer.generators()[..self.code_generators]
    }

    pub fn word_operators(&self) -> &[PauliOperator] {
        &self.word_operators
    }

    pub fn clifford_record(&self) -> &[Gate] {
        &self.clifford_record
    }

    pub fn is_standard_form(&self) -> bool {
        self.standard_form
    }

    /// Conjugates the stabilizer and every word operator by the circuit and
    /// appends it to the record.
    pub fn apply_clifford(&self, circuit: &[Gate]) -> Result<CwsRealization, CodeError> {
        let stabilizer = self.codeword_stabilizer.apply_local_clifford(circuit)?;
        let words = self
            .word_operators
            .iter()
            .map(|w| w.conjugate_by_circuit(circuit))
            .collect::<Result<Vec<_>, _>>()?;
        let mut record = self.clifford_record.clone();
        record.extend_from_slice(circuit);
        Ok(Self::from_parts(stabilizer, self.code_generators, words, record))
    }
}

fn is_standard_form(stabilizer: &StabilizerMatrix, words: &[PauliOperator]) -> bool {
    let n = stabilizer.n();
    if stabilizer.len() != n || stabilizer.x_block() != BitMatrix::identity(n) {
        return false;
    }
    let gamma = stabilizer.z_block();
    gamma.is_symmetric() && gamma.diagonal().is_zero() && words.iter().all(PauliOperator::is_z_only)
}

/// `Cl(±Z^v X^u) = v ⊕ Γu`: the classical error a Pauli induces on a graph state.
pub fn classical_error_map(e: &PauliOperator, gamma: &BitMatrix) -> Result<BitVector, CodeError> {
    let n = e.n();
    if gamma.rows() != n || gamma.cols() != n {
        return Err(CodeError::ShapeMismatch(format!(
            "{}x{} adjacency for a {n}-qubit error",
            gamma.rows(),
            gamma.cols()
        )));
    }
    if !gamma.is_symmetric() || !gamma.diagonal().is_zero() {
        return Err(CodeError::ShapeMismatch(
            "adjacency must be symmetric with zero diagonal".into(),
        ));
    }
    let gu = gamma
        .mul_vec(e.x())
        .map_err(|err| CodeError::ShapeMismatch(err.to_string()))?;
    Ok(e.z().xor(&gu))
}
