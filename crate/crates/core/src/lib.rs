//! Graph codes from binary stabilizer codes.
//!
//! A stabilizer code `[[n, k, d]]` is realized as a codeword-stabilized code,
//! standardized to a graph state by a local Clifford, attached to `k` input
//! vertices through a coincidence matrix `Ξ`, and then checked with the
//! graph-theoretic detection conditions. A dense state-vector oracle checks
//! the Knill-Laflamme conditions directly for small `n`.
//!
//! ```
//! use stabgraph::{catalog, run_pipeline, PipelineOptions};
//!
//! let record = run_pipeline(&catalog::five_qubit(), &PipelineOptions::default()).unwrap();
//! assert_eq!(record.xi.rows(), 6);
//! assert!(record.detection.corrects());
//! ```

pub mod catalog;
pub mod code;
pub mod coincidence;
pub mod detection;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pauli;
pub mod pipeline;
pub mod transform;

pub use code::{
    classical_error_map, realize_cws, CodeError, CwsRealization, StabilizerCode, ValidationReport,
};
pub use coincidence::{
    attach_inputs, check_conditions, derive_input_block, ensure_singular, graph_form_stabilizer,
    AttachmentReport, CoincidenceError, CoincidenceMatrix, Condition,
};
pub use detection::{
    constraint_system, detect_strong, detect_weak, verify_correction, ConfigVerdict, DetectionError,
    DetectionMode, DetectionReport, ErrorConfiguration,
};
pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use graph::{Graph, GraphError};
pub use io::{ExportFormat, IoError, XiDocument};
pub use oracle::{
    apply_pauli, codespace_from_cws, cross_validate, graph_state, kl_check, AgreementReport, CodeSpace,
    OracleError, StateVector,
};
pub use pauli::{Gate, PauliError, PauliOperator, Phase, StabilizerMatrix};
pub use pipeline::{run_pipeline, PipelineError, PipelineOptions, PipelineRecord};
pub use transform::{
    lc_orbit, local_complement, standardize, transpose_stabilizer, verify_q_transform, StandardizationResult,
    TransformError,
};
