//! Exact toughness by exhaustive search over vertex cuts.
//!
//! `τ(G) = min |S| / c(G − S)` over all `S` with `c(G − S) ≥ 2`. Subsets are
//! visited by increasing size; since `c(G − S) ≤ n − |S|`, once
//! `s / (n − s)` reaches the incumbent ratio no larger cut can improve on it
//! and the search stops. Work inside one size is split across threads by the
//! smallest member of the subset.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::thresholds::ThresholdParams;

/// Largest order the exhaustive solver accepts.
pub const MAX_ORDER: usize = 30;
/// Default cap on the number of subsets examined.
pub const DEFAULT_BUDGET: u64 = 1 << 28;
/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "REGTOUGH_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToughnessError {
    #[error("graph is disconnected; toughness is defined for connected graphs only")]
    Disconnected,
    #[error("toughness undefined for complete graphs")]
    Complete,
    #[error("graph order {n} exceeds the exhaustive-search limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("search budget of {budget} subsets exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("graph is not {d}-regular")]
    NotRegular { d: u32 },
    #[error("vertex set must be non-empty")]
    EmptyCut,
    #[error("b must be at least 1")]
    ZeroB,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Upper bound on subsets the solver may examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_subsets: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_subsets: DEFAULT_BUDGET }
    }
}

impl SearchBudget {
    pub fn new(max_subsets: u64) -> Self {
        SearchBudget { max_subsets }
    }

    /// Default budget, overridden by `REGTOUGH_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(SearchBudget::new)
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToughnessResult {
    pub tau: Ratio<usize>,
    pub witness: VertexSet,
    pub component_count: usize,
}

impl fmt::Display for ToughnessResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.tau.numer(), self.tau.denom())
    }
}

/// Outcome of the `1/b`-toughness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToughnessDecision {
    pub tough: bool,
    /// A set with `c(G − S) ≥ b|S| + 1`, present iff `!tough`.
    pub witness: Option<VertexSet>,
    pub component_count: Option<usize>,
}

pub(crate) fn components_without(adj: &[u64], alive: u64) -> usize {
    let mut rest = alive;
    let mut count = 0;
    while rest != 0 {
        let mut frontier = rest & rest.wrapping_neg();
        let mut comp = frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & rest & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// `true` when `a` precedes `b` lexicographically as sorted member lists
/// (both of the same size).
#[inline]
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// Visits every `size`-subset of `0..n` whose smallest member is `first`, in
/// lexicographic order, until `visit` returns `false`.
fn for_each_with_first(n: usize, size: usize, first: usize, mut visit: impl FnMut(u64) -> bool) {
    debug_assert!(size >= 1 && first + size <= n);
    let rest = size - 1;
    let mut idx: Vec<usize> = (first + 1..first + 1 + rest).collect();
    loop {
        let mask = idx.iter().fold(1u64 << first, |m, &i| m | 1 << i);
        if !visit(mask) {
            return;
        }
        // advance to the next combination of `rest` elements from first+1..n
        let mut i = rest;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - rest + i {
                idx[i] += 1;
                for j in i + 1..rest {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn prepare(g: &Graph) -> Result<Vec<u64>, ToughnessError> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(ToughnessError::TooLarge { n, max: MAX_ORDER });
    }
    if !g.is_connected() {
        return Err(ToughnessError::Disconnected);
    }
    if g.is_complete() {
        return Err(ToughnessError::Complete);
    }
    Ok(g.adjacency_masks().expect("n ≤ 30"))
}

fn charge(spent: &mut u64, n: usize, s: usize, budget: SearchBudget) -> Result<(), ToughnessError> {
    *spent = spent.saturating_add(binomial(n, s));
    if *spent > budget.max_subsets {
        return Err(ToughnessError::BudgetExceeded { budget: budget.max_subsets });
    }
    Ok(())
}

/// Exact toughness of a connected non-complete graph on at most
/// [`MAX_ORDER`] vertices. Among minimising cuts the witness is the smallest,
/// then lexicographically first.
pub fn toughness_exact(g: &Graph, budget: SearchBudget) -> Result<ToughnessResult, ToughnessError> {
    let adj = prepare(g)?;
    let n = g.order();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<(usize, usize, u64)> = None; // (|S|, c, mask)
    let mut spent = 0u64;

    for s in 1..=n.saturating_sub(2) {
        if let Some((bs, bc, _)) = best {
            // s / (n - s) >= bs / bc
            if s * bc >= bs * (n - s) {
                break;
            }
        }
        charge(&mut spent, n, s, budget)?;
        let round = (0..=n - s)
            .into_par_iter()
            .map(|first| {
                let mut top: Option<(usize, u64)> = None;
                for_each_with_first(n, s, first, |mask| {
                    let c = components_without(&adj, full & !mask);
                    if c >= 2 && top.is_none_or(|(tc, _)| c > tc) {
                        top = Some((c, mask));
                    }
                    true
                });
                top
            })
            .reduce(
                || None,
                |a, b| match (a, b) {
                    (Some((ca, ma)), Some((cb, mb))) => {
                        if cb > ca || (cb == ca && lex_less(mb, ma)) {
                            Some((cb, mb))
                        } else {
                            Some((ca, ma))
                        }
                    }
                    (x, None) | (None, x) => x,
                },
            );
        if let Some((c, mask)) = round {
            let improves = match best {
                None => true,
                Some((bs, bc, _)) => s * bc < bs * c,
            };
            if improves {
                best = Some((s, c, mask));
            }
        }
    }

    let (s, c, mask) = best.expect("a connected non-complete graph has a vertex cut");
    Ok(ToughnessResult {
        tau: Ratio::new(s, c),
        witness: VertexSet::from_mask(mask),
        component_count: c,
    })
}

/// Decides `τ(G) ≥ 1/b` by searching directly for a set `S` with
/// `c(G − S) ≥ b|S| + 1`. The witness is the smallest such set, then
/// lexicographically first.
pub fn is_one_over_b_tough(
    g: &Graph,
    b: usize,
    budget: SearchBudget,
) -> Result<ToughnessDecision, ToughnessError> {
    if b == 0 {
        return Err(ToughnessError::ZeroB);
    }
    let adj = prepare(g)?;
    let n = g.order();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut spent = 0u64;

    let mut s = 1;
    while b * s < n - s {
        // need b*s + 1 <= c <= n - s
        charge(&mut spent, n, s, budget)?;
        let need = b * s + 1;
        let hit = (0..=n - s)
            .into_par_iter()
            .map(|first| {
                let mut found = None;
                for_each_with_first(n, s, first, |mask| {
                    let c = components_without(&adj, full & !mask);
                    if c >= need {
                        found = Some((mask, c));
                        false
                    } else {
                        true
                    }
                });
                found
            })
            .find_first(Option::is_some)
            .flatten();
        if let Some((mask, c)) = hit {
            return Ok(ToughnessDecision {
                tough: false,
                witness: Some(VertexSet::from_mask(mask)),
                component_count: Some(c),
            });
        }
        s += 1;
    }
    Ok(ToughnessDecision {
        tough: true,
        witness: None,
        component_count: None,
    })
}

/// Which lemma's cutoff and order/size table the census uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Components with `e(S,H) < ⌈d/b⌉`.
    Phi,
    /// Components with `e(S,H) ≤ d − b`.
    Psi,
}

/// One component `H` of `G − S` that falls under the census cutoff, with the
/// extremal order and size the census tables predict for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    pub vertices: VertexSet,
    pub order: usize,
    pub twice_edges: usize,
    pub boundary_edges: usize,
    pub expected_order: usize,
    pub expected_twice_edges: i64,
    pub order_matches: bool,
    pub size_matches: bool,
}

fn expected_twice_edges(mode: CensusMode, p: ThresholdParams, order: usize) -> i64 {
    let (d, b, c) = (p.d as i64, p.b as i64, p.c as i64);
    let same = (order as i64 - d) % 2 == 0;
    match mode {
        CensusMode::Phi => {
            let base = if same { d * (d + 2) } else { d * (d + 1) };
            let c_even = c % 2 == 0;
            let bonus = if same {
                // d, n_H and c all of one parity => +2, otherwise +1
                if (c - d) % 2 == 0 { 2 } else { 1 }
            } else if c_even {
                2
            } else {
                1
            };
            base - c + bonus
        }
        CensusMode::Psi => {
            if same {
                d * (d + 2) - d + b + i64::from(b % 2 == 1)
            } else {
                // +1 when d and b differ in parity
                d * (d + 1) - d + b + i64::from((d - b) % 2 != 0)
            }
        }
    }
}

/// Structure of every component of `G − S` below the mode's edge cutoff.
/// Components above the cutoff are omitted.
pub fn component_census(
    g: &Graph,
    s: &VertexSet,
    p: ThresholdParams,
    mode: CensusMode,
) -> Result<Vec<ComponentCensus>, ToughnessError> {
    if g.is_regular() != Some(p.d as usize) {
        return Err(ToughnessError::NotRegular { d: p.d });
    }
    if !g.is_connected() {
        return Err(ToughnessError::Disconnected);
    }
    if s.is_empty() {
        return Err(ToughnessError::EmptyCut);
    }
    s.validate(g.order())?;

    let d = p.d as usize;
    let survivors: Vec<usize> = (0..g.order()).filter(|&v| !s.contains(v)).collect();
    let rest = g.delete_vertices(s)?;
    let mut out = Vec::new();
    for block in rest.components().blocks() {
        let order = block.len();
        let inner = rest.induced_subgraph(&block)?;
        let twice_edges = 2 * inner.edge_count();
        let boundary_edges = d * order - twice_edges;
        let qualifies = match mode {
            CensusMode::Phi => boundary_edges < p.c as usize,
            CensusMode::Psi => p.d >= p.b && boundary_edges <= (p.d - p.b) as usize,
        };
        if !qualifies {
            continue;
        }
        let expected_order = if (order + d) % 2 == 0 { d + 2 } else { d + 1 };
        let expected = expected_twice_edges(mode, p, order);
        out.push(ComponentCensus {
            vertices: block.iter().map(|i| survivors[i]).collect(),
            order,
            twice_edges,
            boundary_edges,
            expected_order,
            expected_twice_edges: expected,
            order_matches: order == expected_order,
            size_matches: twice_edges as i64 == expected,
        });
    }
    Ok(out)
}
