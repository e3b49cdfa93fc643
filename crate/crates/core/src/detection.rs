//! Graph-theoretic error detection on a coincidence matrix.
//!
//! For an error configuration `E ⊆ Y` of output vertices, the integration
//! vertices are `I = Y \ E` and the unknowns are `d` on `X ∪ E` (inputs
//! first, then `E` ascending). The constraint system is `Ξ^I_{X∪E} d = 0`.
//!
//! * strong: the system has only the trivial solution.
//! * weak: every solution has `d^X = 0` and `Ξ^X_E d^E = 0`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coincidence::CoincidenceMatrix;
use crate::gf2::BitMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectionError {
    #[error("output vertex {vertex} out of range for {n} outputs")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("unknown detection mode {0:?}, expected strong or weak")]
    UnknownMode(String),
}

/// A set of output vertices, 0-based, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ErrorConfiguration {
    vertices: Vec<usize>,
}

impl ErrorConfiguration {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    /// From 1-based labels as written in text.
    pub fn from_labels(labels: &[usize]) -> Result<Self, DetectionError> {
        labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or(DetectionError::IndexOutOfRange { vertex: 0, n: 0 })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn check(&self, n: usize) -> Result<(), DetectionError> {
        match self.vertices.last() {
            Some(&v) if v >= n => Err(DetectionError::IndexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Every configuration of size `0..=max_size` on `n` outputs, by size
    /// then lexicographically.
    pub fn enumerate(n: usize, max_size: usize) -> Vec<ErrorConfiguration> {
        (0..=max_size.min(n))
            .flat_map(|size| (0..n).combinations(size).map(Self::new))
            .collect()
    }
}

impl fmt::Display for ErrorConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.vertices.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectionMode {
    #[default]
    Strong,
    Weak,
}

impl fmt::Display for DetectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectionMode::Strong => "strong",
            DetectionMode::Weak => "weak",
        })
    }
}

impl FromStr for DetectionMode {
    type Err = DetectionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strong" => Ok(DetectionMode::Strong),
            "weak" => Ok(DetectionMode::Weak),
            other => Err(DetectionError::UnknownMode(other.to_string())),
        }
    }
}

fn columns(xi: &CoincidenceMatrix, e: &ErrorConfiguration) -> Vec<usize> {
    (0..xi.k())
        .chain(e.vertices().iter().map(|&v| xi.k() + v))
        .collect()
}

fn integration_rows(xi: &CoincidenceMatrix, e: &ErrorConfiguration) -> Vec<usize> {
    (0..xi.n())
        .filter(|v| e.vertices().binary_search(v).is_err())
        .map(|v| xi.k() + v)
        .collect()
}

/// `Ξ^I_{X∪E}`: rows are the integration vertices ascending, columns the
/// inputs followed by `E` ascending.
pub fn constraint_system(
    xi: &CoincidenceMatrix,
    e: &ErrorConfiguration,
) -> Result<BitMatrix, DetectionError> {
    e.check(xi.n())?;
    Ok(xi.xi().select(&integration_rows(xi, e), &columns(xi, e)))
}

pub fn detect_strong(xi: &CoincidenceMatrix, e: &ErrorConfiguration) -> Result<bool, DetectionError> {
    Ok(constraint_system(xi, e)?.solve_homogeneous())
}

/// The kernel of the strong system must lie inside the kernel of the
/// stacked rows `[I_k 0]` (for `d^X = 0`) and `[0 Ξ^X_E]`; equivalently
/// appending those rows must not raise the rank.
pub fn detect_weak(xi: &CoincidenceMatrix, e: &ErrorConfiguration) -> Result<bool, DetectionError> {
    let system = constraint_system(xi, e)?;
    let k = xi.k();
    let cols = system.cols();
    let mut extra = BitMatrix::zeros(2 * k, cols);
    for i in 0..k {
        extra.set(i, i, true);
        for (j, &v) in e.vertices().iter().enumerate() {
            extra.set(k + i, k + j, xi.xi().get(i, k + v));
        }
    }
    let stacked = system.vstack(&extra).expect("same column count");
    Ok(stacked.rank() == system.rank())
}

pub fn detect(
    xi: &CoincidenceMatrix,
    e: &ErrorConfiguration,
    mode: DetectionMode,
) -> Result<bool, DetectionError> {
    match mode {
        DetectionMode::Strong => detect_strong(xi, e),
        DetectionMode::Weak => detect_weak(xi, e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigVerdict {
    pub config: ErrorConfiguration,
    pub strong: bool,
    pub weak: bool,
}

impl ConfigVerdict {
    pub fn detectable(&self, mode: DetectionMode) -> bool {
        match mode {
            DetectionMode::Strong => self.strong,
            DetectionMode::Weak => self.weak,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub mode: DetectionMode,
    /// Requested number of correctable errors.
    pub e: usize,
    pub per_config: Vec<ConfigVerdict>,
    /// Largest `e' ≤ e` with every `|E| ≤ 2e'` detectable in `mode`;
    /// `None` when even `E = ∅` fails.
    pub corrects_e: Option<usize>,
}

impl DetectionReport {
    pub fn corrects(&self) -> bool {
        self.corrects_e == Some(self.e)
    }

    pub fn detectable_count(&self) -> usize {
        self.per_config.iter().filter(|v| v.detectable(self.mode)).count()
    }

    pub fn first_failure(&self) -> Option<&ConfigVerdict> {
        self.per_config.iter().find(|v| !v.detectable(self.mode))
    }
}

fn verdict(xi: &CoincidenceMatrix, config: ErrorConfiguration) -> ConfigVerdict {
    let strong = detect_strong(xi, &config).expect("enumerated configurations are in range");
    let weak = strong || detect_weak(xi, &config).expect("enumerated configurations are in range");
    ConfigVerdict { config, strong, weak }
}

/// Evaluates every `|E| ≤ 2e` (capped at `n`) and derives `corrects_e`.
pub fn verify_correction(xi: &CoincidenceMatrix, e: usize, mode: DetectionMode) -> DetectionReport {
    verify_correction_streaming(xi, e, mode, |_, _| {})
}

/// Like [`verify_correction`], calling `on_size` with each finished size
/// class before larger sizes are evaluated.
pub fn verify_correction_streaming<F>(
    xi: &CoincidenceMatrix,
    e: usize,
    mode: DetectionMode,
    mut on_size: F,
) -> DetectionReport
where
    F: FnMut(usize, &[ConfigVerdict]),
{
    let max_size = (2 * e).min(xi.n());
    let mut per_config = Vec::new();
    for size in 0..=max_size {
        let configs: Vec<ErrorConfiguration> = (0..xi.n())
            .combinations(size)
            .map(ErrorConfiguration::new)
            .collect();
        let verdicts: Vec<ConfigVerdict> = configs.into_par_iter().map(|c| verdict(xi, c)).collect();
        on_size(size, &verdicts);
        per_config.extend(verdicts);
    }

    let size_ok = |size: usize| {
        per_config
            .iter()
            .filter(|v| v.config.len() == size)
            .all(|v| v.detectable(mode))
    };
    let mut corrects_e = None;
    for level in 0..=e {
        let sizes = if level == 0 {
            0..=0
        } else {
            2 * level - 1..=2 * level
        };
        if sizes.filter(|&s| s <= max_size).all(size_ok) {
            corrects_e = Some(level);
        } else {
            break;
        }
    }
    DetectionReport {
        mode,
        e,
        per_config,
        corrects_e,
    }
}
