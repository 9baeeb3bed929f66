//! Spectral certificates of `1/b`-toughness for regular graphs.
//!
//! The crate computes adjacency spectra, the thresholds `φ(d,b)` and
//! `ψ(d,b)`, exact toughness for small graphs, and the extremal graph
//! families on which the thresholds are attained.

pub mod certify;
pub mod constructions;
pub mod graph;
pub mod graph6;
pub mod spectral;
pub mod thresholds;
pub mod toughness;

pub use certify::{
    certify_thm3, certify_thm4, random_connected_regular, random_regular, verify_on_corpus, CertReport,
    CorpusSummary, CrossCheck, Theorem, Verdict,
};
pub use constructions::{build, Extremal, ExtremalSpec, Family};
pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{parse_graph6, to_graph6_string, Graph6Error};
pub use spectral::{eigenvalues, Spectrum, SPECTRAL_TOL};
pub use thresholds::{alpha_d, phi, psi, ThresholdParams, ThresholdValue};
pub use toughness::{is_one_over_b_tough, toughness_exact, SearchBudget, ToughnessResult};
