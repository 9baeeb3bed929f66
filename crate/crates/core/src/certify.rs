//! Eigenvalue certificates of `1/b`-toughness and their cross-validation
//! against the exact solver.
//!
//! Both certificates are one-directional: an eigenvalue below the threshold
//! proves `τ ≥ 1/b`, while an eigenvalue on or above it proves nothing.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6_string;
use crate::spectral::{eigenvalues, SPECTRAL_TOL};
use crate::thresholds::{compare_with_tolerance, phi, psi, Comparison, ThresholdParams, ThresholdValue};
use crate::toughness::{
    component_census, is_one_over_b_tough, toughness_exact, CensusMode, ComponentCensus, SearchBudget,
    ToughnessError,
};

/// Attempts allowed for the pairing model before giving up.
pub const MAX_PAIRING_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    /// `λ₂ < φ(d,b)`.
    #[serde(rename = "thm3")]
    SecondEigenvalue,
    /// `λ_{b+1} < ψ(d,b)`.
    #[serde(rename = "thm4")]
    HigherEigenvalue,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::SecondEigenvalue => "thm3",
            Theorem::HigherEigenvalue => "thm4",
        }
    }

    /// Index `k` of the eigenvalue `λ_k` the certificate inspects.
    pub fn eigenvalue_index(self, b: u32) -> usize {
        match self {
            Theorem::SecondEigenvalue => 2,
            Theorem::HigherEigenvalue => b as usize + 1,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "Certified",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::NotApplicable => "NotApplicable",
        })
    }
}

/// Exact-solver confirmation attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CrossCheck {
    /// `τ ≥ 1/b` holds. `tau` is absent for complete graphs, which have no
    /// vertex cut at all.
    Confirmed { tau: Option<String> },
    /// The solver found `S` with `c(G − S) ≥ b|S| + 1`.
    Refuted { witness: VertexSet, components: usize },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub theorem: Theorem,
    pub b: u32,
    pub d: Option<u32>,
    pub n: usize,
    pub eigenvalue_used: Option<f64>,
    pub threshold: Option<ThresholdValue>,
    pub comparison: Option<Comparison>,
    pub verdict: Verdict,
    /// `threshold − eigenvalue`.
    pub margin: Option<f64>,
    /// Why the certificate does not apply.
    pub reason: Option<String>,
    pub cross_check: Option<CrossCheck>,
}

impl CertReport {
    fn not_applicable(theorem: Theorem, g: &Graph, b: u32, d: Option<u32>, reason: &str) -> Self {
        CertReport {
            theorem,
            b,
            d,
            n: g.order(),
            eigenvalue_used: None,
            threshold: None,
            comparison: None,
            verdict: Verdict::NotApplicable,
            margin: None,
            reason: Some(reason.to_owned()),
            cross_check: None,
        }
    }
}

pub fn certify(g: &Graph, b: u32, theorem: Theorem) -> CertReport {
    if b == 0 {
        return CertReport::not_applicable(theorem, g, b, None, "b must be at least 1");
    }
    if g.order() == 0 || !g.is_connected() {
        return CertReport::not_applicable(theorem, g, b, None, "graph is not connected");
    }
    let Some(d) = g.is_regular() else {
        return CertReport::not_applicable(theorem, g, b, None, "graph is not regular");
    };
    let d = d as u32;
    if d == 0 {
        return CertReport::not_applicable(theorem, g, b, Some(d), "degree 0");
    }
    let k = theorem.eigenvalue_index(b);
    if g.order() < k {
        return CertReport::not_applicable(theorem, g, b, Some(d), "fewer vertices than the eigenvalue index");
    }

    let p = ThresholdParams::new(d, b).expect("d, b >= 1");
    let threshold = match theorem {
        Theorem::SecondEigenvalue => phi(p),
        Theorem::HigherEigenvalue => psi(p),
    };
    let spectrum = eigenvalues(g).expect("non-empty graph");
    let lambda = spectrum.values[k - 1];
    let cmp = compare_with_tolerance(lambda, &threshold);
    CertReport {
        theorem,
        b,
        d: Some(d),
        n: g.order(),
        eigenvalue_used: Some(lambda),
        threshold: Some(threshold),
        comparison: Some(cmp),
        verdict: if cmp == Comparison::Below {
            Verdict::Certified
        } else {
            Verdict::Inconclusive
        },
        margin: Some(threshold.value - lambda),
        reason: None,
        cross_check: None,
    }
}

pub fn certify_thm3(g: &Graph, b: u32) -> CertReport {
    certify(g, b, Theorem::SecondEigenvalue)
}

pub fn certify_thm4(g: &Graph, b: u32) -> CertReport {
    certify(g, b, Theorem::HigherEigenvalue)
}

/// Runs the exact `1/b` decision and packages it as a [`CrossCheck`].
pub fn cross_check(g: &Graph, b: u32, budget: SearchBudget) -> CrossCheck {
    if g.is_connected() && g.is_complete() {
        return CrossCheck::Confirmed { tau: None };
    }
    match is_one_over_b_tough(g, b as usize, budget) {
        Ok(dec) if dec.tough => {
            let tau = toughness_exact(g, budget).ok().map(|r| r.to_string());
            CrossCheck::Confirmed { tau }
        }
        Ok(dec) => CrossCheck::Refuted {
            witness: dec.witness.expect("witness present when not tough"),
            components: dec.component_count.unwrap_or(0),
        },
        Err(e) => CrossCheck::Skipped { reason: e.to_string() },
    }
}

/// Full diagnostic for a certified graph that the exact solver refutes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contradiction {
    pub index: usize,
    pub graph6: String,
    pub report: CertReport,
    pub witness: VertexSet,
    pub census: Vec<ComponentCensus>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("graph #{} ({}) is certified but not 1/b-tough: witness {}", .0.index, .0.graph6, .0.witness)]
    Contradiction(Box<Contradiction>),
    #[error("graph #{index}: exact solver failed: {source}")]
    Solver {
        index: usize,
        #[source]
        source: ToughnessError,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub certified_confirmed: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
}

impl CorpusSummary {
    fn merge(self, o: CorpusSummary) -> CorpusSummary {
        CorpusSummary {
            total: self.total + o.total,
            certified_confirmed: self.certified_confirmed + o.certified_confirmed,
            inconclusive: self.inconclusive + o.inconclusive,
            not_applicable: self.not_applicable + o.not_applicable,
        }
    }
}

fn verify_one(index: usize, g: &Graph, b: u32, theorem: Theorem, budget: SearchBudget) -> Result<CertReport, VerifyError> {
    let mut report = certify(g, b, theorem);
    if report.verdict != Verdict::Certified {
        return Ok(report);
    }
    let check = cross_check(g, b, budget);
    match &check {
        CrossCheck::Confirmed { .. } => {}
        CrossCheck::Refuted { witness, .. } => {
            let mode = match theorem {
                Theorem::SecondEigenvalue => CensusMode::Phi,
                Theorem::HigherEigenvalue => CensusMode::Psi,
            };
            let p = ThresholdParams::new(report.d.unwrap_or(1), b).expect("d, b >= 1");
            let census = component_census(g, witness, p, mode).unwrap_or_default();
            let witness = witness.clone();
            report.cross_check = Some(check);
            return Err(VerifyError::Contradiction(Box::new(Contradiction {
                index,
                graph6: to_graph6_string(g).unwrap_or_default(),
                report,
                witness,
                census,
            })));
        }
        CrossCheck::Skipped { .. } => {
            let source = match is_one_over_b_tough(g, b as usize, budget) {
                Err(e) => e,
                Ok(_) => unreachable!("skipped only on solver error"),
            };
            return Err(VerifyError::Solver { index, source });
        }
    }
    report.cross_check = Some(check);
    Ok(report)
}

/// Certifies every graph and cross-checks each Certified verdict with the
/// exact solver. Reports come back in input order; the first contradiction
/// in input order aborts the run.
pub fn verify_reports(
    graphs: &[Graph],
    b: u32,
    theorem: Theorem,
    budget: SearchBudget,
) -> Result<Vec<CertReport>, VerifyError> {
    graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| verify_one(i, g, b, theorem, budget))
        .collect()
}

pub fn verify_on_corpus(
    graphs: &[Graph],
    b: u32,
    theorem: Theorem,
    budget: SearchBudget,
) -> Result<CorpusSummary, VerifyError> {
    Ok(summarize(&verify_reports(graphs, b, theorem, budget)?))
}

pub fn summarize(reports: &[CertReport]) -> CorpusSummary {
    reports
        .iter()
        .map(|r| {
            let mut s = CorpusSummary { total: 1, ..Default::default() };
            match r.verdict {
                Verdict::Certified => s.certified_confirmed = 1,
                Verdict::Inconclusive => s.inconclusive = 1,
                Verdict::NotApplicable => s.not_applicable = 1,
            }
            s
        })
        .fold(CorpusSummary::default(), CorpusSummary::merge)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("n·d must be even (n = {n}, d = {d})")]
    OddDegreeSum { n: usize, d: usize },
    #[error("degree {d} must be smaller than n = {n}")]
    DegreeTooLarge { n: usize, d: usize },
    #[error("no simple pairing found in {attempts} attempts")]
    AttemptsExhausted { attempts: usize },
}

/// Random simple `d`-regular graph from the pairing model: `n·d` points are
/// matched uniformly at random and the draw is rejected if it produces a loop
/// or a repeated edge. The same seed always yields the same graph.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if n * d % 2 != 0 {
        return Err(GenerateError::OddDegreeSum { n, d });
    }
    if d >= n && !(n == 0 && d == 0) {
        return Err(GenerateError::DegreeTooLarge { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d.max(1)).collect();
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut g = Graph::edgeless(n);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v).expect("in range");
        }
        return Ok(g);
    }
    Err(GenerateError::AttemptsExhausted { attempts: MAX_PAIRING_ATTEMPTS })
}

/// Connected variant of [`random_regular`]: redraws with derived seeds until
/// the sample is connected.
pub fn random_connected_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    for k in 0..MAX_PAIRING_ATTEMPTS as u64 {
        let g = random_regular(n, d, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenerateError::AttemptsExhausted { attempts: MAX_PAIRING_ATTEMPTS })
}

/// `threshold − eigenvalue` recomputed from a report's stored fields.
pub fn recomputed_margin(r: &CertReport) -> Option<f64> {
    Some(r.threshold?.value - r.eigenvalue_used?)
}

/// Checks the internal consistency rules every report must satisfy.
pub fn report_is_consistent(r: &CertReport) -> bool {
    let margin_ok = match (r.margin, recomputed_margin(r)) {
        (Some(a), Some(b)) => (a - b).abs() <= SPECTRAL_TOL,
        (None, None) => true,
        _ => false,
    };
    let verdict_ok = match r.verdict {
        Verdict::Certified => r.margin.is_some_and(|m| m > SPECTRAL_TOL),
        Verdict::Inconclusive => r.margin.is_some_and(|m| m <= SPECTRAL_TOL),
        Verdict::NotApplicable => r.margin.is_none(),
    };
    let cross_ok = match (&r.verdict, &r.cross_check) {
        (Verdict::Certified, Some(c)) => matches!(c, CrossCheck::Confirmed { .. }),
        _ => true,
    };
    margin_ok && verdict_ok && cross_ok
}

/// Convenience: the hub witness of a non-tough graph as a checked fact,
/// `c(G − S) ≥ b|S| + 1`.
pub fn witness_refutes(g: &Graph, s: &VertexSet, b: u32) -> bool {
    !s.is_empty()
        && g
            .delete_vertices(s)
            .map(|r| r.components().count > b as usize * s.len())
            .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_g1star, build_g4star};
    use crate::graph::{complete, cycle, edgeless, path, petersen};
    use crate::thresholds::alpha_d;

    #[test]
    fn thm3_examples() {
        // λ₂(C₆) = 1 and φ(2,1) = α₂ ≈ 1.86
        assert!(1.0 < alpha_d(2));
        let r = certify_thm3(&cycle(6).unwrap(), 1);
        assert_eq!(r.verdict, Verdict::Certified);
        assert!((r.eigenvalue_used.unwrap() - 1.0).abs() < 1e-12);
        assert!(r.threshold.unwrap().vacuous);

        let e = build_g1star(3, 1).unwrap();
        let r = certify_thm3(&e.graph, 1);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.margin.unwrap().abs() <= SPECTRAL_TOL);

        assert_eq!(certify_thm3(&path(3), 1).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn thm4_examples() {
        let r = certify_thm4(&petersen(), 1);
        assert_eq!(r.verdict, Verdict::Certified);
        assert!((r.margin.unwrap() - ((1.0 + 17f64.sqrt()) / 2.0 - 1.0)).abs() < 1e-9);

        let e = build_g4star(3, 2).unwrap();
        let r = certify_thm4(&e.graph, 2);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.comparison, Some(Comparison::Boundary));

        assert_eq!(certify_thm4(&edgeless(5), 1).verdict, Verdict::NotApplicable);
        assert_eq!(certify_thm4(&complete(3), 5).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn corpus_examples() {
        let s = verify_on_corpus(&[], 1, Theorem::SecondEigenvalue, SearchBudget::default()).unwrap();
        assert_eq!(s, CorpusSummary::default());

        let e = build_g1star(3, 1).unwrap();
        let s = verify_on_corpus(&[e.graph], 1, Theorem::SecondEigenvalue, SearchBudget::default()).unwrap();
        assert_eq!(s.total, 1);
        assert_eq!(s.inconclusive, 1);

        let graphs = vec![petersen(), complete(4), path(4)];
        let reports = verify_reports(&graphs, 1, Theorem::SecondEigenvalue, SearchBudget::default()).unwrap();
        assert_eq!(reports[0].cross_check, Some(CrossCheck::Confirmed { tau: Some("4/3".into()) }));
        assert_eq!(reports[1].cross_check, Some(CrossCheck::Confirmed { tau: None }));
        assert_eq!(reports[2].verdict, Verdict::NotApplicable);
        assert!(reports.iter().all(report_is_consistent));
    }

    #[test]
    fn random_regular_examples() {
        for seed in 0..5 {
            assert_eq!(random_regular(4, 3, seed).unwrap(), complete(4));
            let g = random_regular(6, 2, seed).unwrap();
            assert_eq!(g.is_regular(), Some(2));
        }
        let g = random_regular(10, 3, 1).unwrap();
        assert_eq!(g.is_regular(), Some(3));
        assert_eq!(random_regular(10, 3, 1).unwrap(), g);
        assert_eq!(random_regular(11, 3, 0), Err(GenerateError::OddDegreeSum { n: 11, d: 3 }));
        assert_eq!(random_regular(4, 4, 0), Err(GenerateError::DegreeTooLarge { n: 4, d: 4 }));
        let g = random_connected_regular(16, 5, 3).unwrap();
        assert!(g.is_connected() && g.is_regular() == Some(5));
    }

    #[test]
    fn witness_helper() {
        let e = build_g4star(3, 2).unwrap();
        assert!(witness_refutes(&e.graph, &e.hubs, 2));
        assert!(!witness_refutes(&e.graph, &VertexSet::empty(), 2));
    }
}
