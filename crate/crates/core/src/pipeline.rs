//! The full conversion: realize the code as a CWS code, standardize it to a
//! graph, pick an LC-equivalent graph to attach inputs to, assemble `Ξ`,
//! verify detection and, for small codes, cross-check against the oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{classical_error_map, realize_cws, CodeError, CwsRealization, StabilizerCode};
use crate::coincidence::{
    attach_inputs, check_conditions, derive_input_block, ensure_singular, AttachmentReport, CoincidenceError,
    CoincidenceMatrix,
};
use crate::detection::{verify_correction, DetectionMode, DetectionReport};
use crate::gf2::{BitMatrix, BitVector};
use crate::graph::Graph;
use crate::oracle::{
    codespace_from_cws, cross_validate, AgreementReport, CodeSpace, OracleError, DEFAULT_QUBIT_CAP,
};
use crate::pauli::{Gate, PauliOperator, StabilizerMatrix};
use crate::transform::{
    graph_binary_form, lc_search, lc_sequence_gates, standardize, StandardizationResult, TransformError,
};

pub const RECORD_SCHEMA: &str = "stabgraph.record/1";
pub const DEFAULT_LC_BOUND: usize = 100_000;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("realize: {0}")]
    Realize(#[from] CodeError),
    #[error("standardize: {0}")]
    Standardize(#[from] TransformError),
    #[error("attach: {0}")]
    Attach(#[from] CoincidenceError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub e: usize,
    pub mode: DetectionMode,
    pub lc_bound: usize,
    pub oracle_cap: usize,
    /// Run the state-vector cross-check when `n` is within `oracle_cap`.
    pub cross_check: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            e: 1,
            mode: DetectionMode::Strong,
            lc_bound: DEFAULT_LC_BOUND,
            oracle_cap: DEFAULT_QUBIT_CAP,
            cross_check: true,
        }
    }
}

/// Everything a run produced; re-running on `code` with `options`
/// reproduces it exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineRecord {
    pub schema: String,
    pub options: PipelineOptions,
    pub code: StabilizerCode,
    /// `(Z | X)` of `S_CWS`: code generators, then logical Z.
    pub cws_binary: BitMatrix,
    pub standardization: StandardizationResult,
    /// LC sequence (0-based) from the standardized graph to `gamma`.
    pub lc_sequence: Vec<usize>,
    /// Standardization circuit followed by the local Clifford of the LC sequence.
    pub local_clifford: Vec<Gate>,
    pub gamma: Graph,
    /// X parts of the code generators in the frame of `gamma`.
    pub x_support: BitMatrix,
    /// `Cl(U X̄_i U†, Γ)` for each logical X.
    pub word_vectors: BitMatrix,
    pub input_block: BitMatrix,
    pub attachment: AttachmentReport,
    /// Whether `gamma` was found with all attachment conditions holding; if
    /// not, `gamma` is the first singular graph of the orbit, or the
    /// standardized graph when the orbit has no singular graph.
    pub conforming: bool,
    pub k: usize,
    pub xi: BitMatrix,
    pub detection: DetectionReport,
    pub agreement: Option<AgreementReport>,
}

impl PipelineRecord {
    pub fn coincidence(&self) -> Result<CoincidenceMatrix, CoincidenceError> {
        CoincidenceMatrix::from_xi(self.k, self.xi.clone())
    }

    /// Re-runs the pipeline and reports whether every field matches.
    pub fn replay(&self) -> Result<bool, PipelineError> {
        Ok(run_pipeline(&self.code, &self.options)? == *self)
    }
}

/// Code generators of `cws` moved by `gates`, as X-part rows.
fn x_support_after(cws: &CwsRealization, gates: &[Gate]) -> Result<BitMatrix, PipelineError> {
    let n = cws.n();
    let code = StabilizerMatrix::new(n, cws.code_generators().to_vec()).map_err(CodeError::from)?;
    let moved = code.apply_local_clifford(gates).map_err(CodeError::from)?;
    Ok(moved.x_block())
}

fn attachment_for(
    cws: &CwsRealization,
    start: &Graph,
    graph: &Graph,
    seq: &[usize],
) -> Result<(BitMatrix, BitMatrix, AttachmentReport), PipelineError> {
    let gates = lc_sequence_gates(start, seq).map_err(CoincidenceError::from)?;
    let x_support = x_support_after(cws, &gates)?;
    let block = derive_input_block(graph, &x_support)?;
    let report = check_conditions(graph, &block)?;
    Ok((x_support, block, report))
}

/// Searches the LC orbit of the standardized graph for a graph meeting all
/// attachment conditions, falling back to the first singular graph, or to
/// `start` itself when the orbit has none.
fn choose_graph(
    cws: &CwsRealization,
    start: &Graph,
    bound: usize,
) -> Result<(Graph, Vec<usize>, bool), PipelineError> {
    let mut failure = None;
    let found = lc_search(start, bound, |g, seq| match attachment_for(cws, start, g, seq) {
        Ok((_, _, report)) => report.all_hold(),
        Err(e) => {
            failure.get_or_insert(e);
            true
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match found {
        Ok(Some((g, seq))) => Ok((g, seq, true)),
        Ok(None) | Err(_) => match ensure_singular(start, bound) {
            Ok((g, seq)) => Ok((g, seq, false)),
            Err(CoincidenceError::SearchExhausted(_)) => Ok((start.clone(), Vec::new(), false)),
            Err(e) => Err(e.into()),
        },
    }
}

/// Codewords `Z^{w}|G⟩` for every `w` in the span of the word vectors,
/// ordered like the word operators (bit `i` of the index selects row `i`).
pub fn standard_codespace(
    gamma: &Graph,
    word_vectors: &BitMatrix,
    cap: usize,
) -> Result<CodeSpace, OracleError> {
    let n = gamma.n();
    let k = word_vectors.rows();
    let words: Vec<PauliOperator> = (0..1usize << k)
        .map(|v| {
            let w = (0..k)
                .filter(|i| v >> i & 1 == 1)
                .fold(BitVector::zeros(n), |acc, i| acc.xor(word_vectors.row(i)));
            PauliOperator::z_string(&w)
        })
        .collect();
    codespace_from_cws(gamma, &words, cap)
}

pub fn run_pipeline(
    code: &StabilizerCode,
    options: &PipelineOptions,
) -> Result<PipelineRecord, PipelineError> {
    let cws = realize_cws(code)?;
    let standardization = standardize(&cws)?;
    let framed = cws.apply_clifford(&standardization.post_clifford)?;
    let start = standardization.graph.clone();

    let (gamma, lc_sequence, conforming) = choose_graph(&framed, &start, options.lc_bound)?;
    let lc_gates = lc_sequence_gates(&start, &lc_sequence).map_err(CoincidenceError::from)?;
    let final_frame = framed.apply_clifford(&lc_gates)?;
    let (x_support, input_block, attachment) = attachment_for(&framed, &start, &gamma, &lc_sequence)?;

    let graph_rows = graph_binary_form(&gamma);
    let binary = final_frame.codeword_stabilizer().binary_form();
    if !binary.same_row_span(&graph_rows) {
        return Err(PipelineError::Inconsistent(
            "moved codeword stabilizer does not generate the graph stabilizer".into(),
        ));
    }

    let k = code.k();
    let word_rows = (0..k)
        .map(|i| classical_error_map(&final_frame.word_operators()[1 << i], gamma.adjacency()))
        .collect::<Result<Vec<_>, _>>()?;
    let word_vectors = BitMatrix::from_rows(gamma.n(), word_rows).expect("n-bit rows");
    if !word_vectors.same_row_span(&input_block) {
        return Err(PipelineError::Inconsistent(
            "word vectors and input block span different spaces".into(),
        ));
    }

    let xi = if conforming {
        attach_inputs(&gamma, &input_block)?
    } else {
        CoincidenceMatrix::assemble(&gamma, &input_block)?
    };
    let detection = verify_correction(&xi, options.e, options.mode);

    let agreement = if options.cross_check && gamma.n() <= options.oracle_cap {
        let cs = standard_codespace(&gamma, &word_vectors, options.oracle_cap)?;
        Some(cross_validate(&xi, &cs, options.e, DetectionMode::Weak)?)
    } else {
        None
    };

    let mut local_clifford = standardization.post_clifford.clone();
    local_clifford.extend(lc_gates);
    Ok(PipelineRecord {
        schema: RECORD_SCHEMA.to_string(),
        options: options.clone(),
        code: code.clone(),
        cws_binary: cws.codeword_stabilizer().binary_form(),
        standardization,
        lc_sequence,
        local_clifford,
        gamma,
        x_support,
        word_vectors,
        input_block,
        attachment,
        conforming,
        k,
        xi: xi.xi().clone(),
        detection,
        agreement,
    })
}
