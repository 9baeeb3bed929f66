//! Extremal graph families sitting exactly on the eigenvalue thresholds.
//!
//! Every `G*` graph is `d` disjoint copies of a near-regular block `H(d,b)`
//! plus a hub set `S`; hub `i` is joined to the `i`-th vertex of degree
//! `d − 1` (index order) in every copy. Hubs take indices `0..|S|`, copy `k`
//! occupies the next `|V(H)|` indices in order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{complete, copies_k2_complement, cycle, Graph, VertexSet};
use crate::thresholds::{ThresholdError, ThresholdParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    H,
    G1Star,
    G2Star,
    G3Star,
    G4Star,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::H, Family::G1Star, Family::G2Star, Family::G3Star, Family::G4Star];
    pub const STARS: [Family; 4] = [Family::G1Star, Family::G2Star, Family::G3Star, Family::G4Star];

    pub fn name(self) -> &'static str {
        match self {
            Family::H => "H",
            Family::G1Star => "G1star",
            Family::G2Star => "G2star",
            Family::G3Star => "G3star",
            Family::G4Star => "G4star",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(Family::H),
            "g1star" | "g1" => Ok(Family::G1Star),
            "g2star" | "g2" => Ok(Family::G2Star),
            "g3star" | "g3" => Ok(Family::G3Star),
            "g4star" | "g4" => Ok(Family::G4Star),
            _ => Err(format!("unknown family `{s}` (expected H, G1star, G2star, G3star or G4star)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Params(#[from] ThresholdError),
    #[error("{family}({d},{b}) is infeasible: {reason}")]
    Infeasible {
        family: Family,
        d: u32,
        b: u32,
        reason: String,
    },
    #[error("H({d},{b}) has {found} vertices of degree d-1, expected {expected}")]
    DeficiencyMismatch {
        d: u32,
        b: u32,
        expected: usize,
        found: usize,
    },
    #[error("{family}({d},{b}) failed its structural check: {reason}")]
    Structure {
        family: Family,
        d: u32,
        b: u32,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExtremalSpec {
    pub family: Family,
    pub d: u32,
    pub b: u32,
}

impl ExtremalSpec {
    pub fn new(family: Family, d: u32, b: u32) -> Self {
        ExtremalSpec { family, d, b }
    }
}

/// A built family member together with its hub set (empty for `H`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremal {
    pub spec: ExtremalSpec,
    pub graph: Graph,
    pub hubs: VertexSet,
    /// Order of each attached copy of `H(d,b)`; equals the graph order for `H`.
    pub block_order: usize,
}

/// The four shapes `H(d,b)` takes, keyed on `c = ⌈d/b⌉` and parities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HShape {
    /// `c ≤ 2`, `d` odd: `(K₁ ∪ K₂) ∨ cocktail((d−1)/2)`.
    SmallC,
    /// `c ≥ 3` odd: `K_{d−c+2} ∨ cocktail((c−1)/2)`.
    OddC,
    /// `c ≥ 3` even, `d` odd: `complement(C_{c−1}) ∨ cocktail((d−c+3)/2)`.
    EvenCOddD,
    /// `c ≥ 3` even, `d` even: `K_{d−c+3} ∨ cocktail((c−2)/2)`.
    EvenCEvenD,
}

impl HShape {
    fn of(p: ThresholdParams) -> Result<Self, String> {
        if p.c <= 2 {
            if p.d % 2 == 0 {
                return Err(format!("c = {} ≤ 2 needs d odd, got d = {}", p.c, p.d));
            }
            Ok(HShape::SmallC)
        } else if p.c % 2 == 1 {
            Ok(HShape::OddC)
        } else if p.d % 2 == 1 {
            Ok(HShape::EvenCOddD)
        } else {
            Ok(HShape::EvenCEvenD)
        }
    }

    /// Number of degree-`(d−1)` vertices the block must carry.
    fn deficiency(self, c: u32) -> usize {
        match self {
            HShape::SmallC => 1,
            HShape::OddC | HShape::EvenCOddD => c as usize - 1,
            // K_{d-c+3} vertices reach degree d; the c-2 cocktail vertices
            // have (c-4) + (d-c+3) = d-1
            HShape::EvenCEvenD => c as usize - 2,
        }
    }
}

fn infeasible(family: Family, p: ThresholdParams, reason: impl Into<String>) -> ConstructionError {
    ConstructionError::Infeasible {
        family,
        d: p.d,
        b: p.b,
        reason: reason.into(),
    }
}

/// Vertices of degree exactly `d − 1`, in index order.
pub fn deficient_vertices(h: &Graph, d: usize) -> VertexSet {
    (0..h.order()).filter(|&v| d >= 1 && h.degree(v) == d - 1).collect()
}

fn build_block(p: ThresholdParams) -> Result<(Graph, HShape), ConstructionError> {
    let shape = HShape::of(p).map_err(|r| infeasible(Family::H, p, r))?;
    let (d, c) = (p.d as usize, p.c as usize);
    let g = match shape {
        HShape::SmallC => complete(1)
            .disjoint_union(&complete(2))
            .join(&copies_k2_complement((d - 1) / 2)),
        HShape::OddC => complete(d + 2 - c).join(&copies_k2_complement((c - 1) / 2)),
        HShape::EvenCOddD => {
            let ring = cycle(c - 1).expect("c ≥ 4 here").complement();
            ring.join(&copies_k2_complement((d + 3 - c) / 2))
        }
        HShape::EvenCEvenD => complete(d + 3 - c).join(&copies_k2_complement((c - 2) / 2)),
    };

    let expected = shape.deficiency(p.c);
    let deficient = deficient_vertices(&g, d);
    if deficient.len() != expected {
        return Err(ConstructionError::DeficiencyMismatch {
            d: p.d,
            b: p.b,
            expected,
            found: deficient.len(),
        });
    }
    if let Some(v) = (0..g.order()).find(|&v| !deficient.contains(v) && g.degree(v) != d) {
        return Err(ConstructionError::Structure {
            family: Family::H,
            d: p.d,
            b: p.b,
            reason: format!("vertex {v} has degree {}", g.degree(v)),
        });
    }
    Ok((g, shape))
}

/// `H(d,b)`.
pub fn build_h(d: u32, b: u32) -> Result<Graph, ConstructionError> {
    Ok(build_block(ThresholdParams::new(d, b)?)?.0)
}

fn attach(spec: ExtremalSpec, block: &Graph, hubs: usize) -> Result<Extremal, ConstructionError> {
    let d = spec.d as usize;
    let deficient = deficient_vertices(block, d);
    if deficient.len() != hubs {
        return Err(ConstructionError::Structure {
            family: spec.family,
            d: spec.d,
            b: spec.b,
            reason: format!("{hubs} hubs but {} attachment vertices per copy", deficient.len()),
        });
    }
    let mut g = Graph::edgeless(hubs);
    for _ in 0..d {
        g = g.disjoint_union(block);
    }
    let m = block.order();
    for k in 0..d {
        let base = hubs + k * m;
        for (i, v) in deficient.iter().enumerate() {
            g.add_edge(i, base + v).expect("indices in range");
        }
    }

    if g.is_regular() != Some(d) || !g.is_connected() {
        return Err(ConstructionError::Structure {
            family: spec.family,
            d: spec.d,
            b: spec.b,
            reason: "result is not a connected d-regular graph".into(),
        });
    }
    Ok(Extremal {
        spec,
        graph: g,
        hubs: VertexSet::new(0..hubs),
        block_order: m,
    })
}

fn build_star(spec: ExtremalSpec) -> Result<Extremal, ConstructionError> {
    let p = ThresholdParams::new(spec.d, spec.b)?;
    let fam = spec.family;
    let wanted = match fam {
        Family::G1Star => p.c >= 3 && p.c % 2 == 1,
        Family::G2Star => p.c >= 3 && p.c % 2 == 0 && p.d % 2 == 1,
        Family::G3Star => p.c >= 3 && p.c % 2 == 0 && p.d % 2 == 0,
        Family::G4Star => p.c == 2 && p.d % 2 == 1,
        Family::H => unreachable!(),
    };
    if !wanted {
        let need = match fam {
            Family::G1Star => "c = ⌈d/b⌉ odd and at least 3",
            Family::G2Star => "c = ⌈d/b⌉ even and at least 3 with d odd",
            Family::G3Star => "c = ⌈d/b⌉ even and at least 3 with d even",
            _ => "c = ⌈d/b⌉ = 2 with d odd",
        };
        return Err(infeasible(fam, p, format!("needs {need}; have c = {}, d = {}", p.c, p.d)));
    }
    let (block, shape) = build_block(p)?;
    attach(spec, &block, shape.deficiency(p.c))
}

pub fn build_g1star(d: u32, b: u32) -> Result<Extremal, ConstructionError> {
    build_star(ExtremalSpec::new(Family::G1Star, d, b))
}

pub fn build_g2star(d: u32, b: u32) -> Result<Extremal, ConstructionError> {
    build_star(ExtremalSpec::new(Family::G2Star, d, b))
}

/// The hub set has `c − 2` vertices: that is the number of degree-`(d−1)`
/// vertices in each block, and any other hub count breaks regularity.
pub fn build_g3star(d: u32, b: u32) -> Result<Extremal, ConstructionError> {
    build_star(ExtremalSpec::new(Family::G3Star, d, b))
}

pub fn build_g4star(d: u32, b: u32) -> Result<Extremal, ConstructionError> {
    build_star(ExtremalSpec::new(Family::G4Star, d, b))
}

pub fn build(spec: ExtremalSpec) -> Result<Extremal, ConstructionError> {
    match spec.family {
        Family::H => {
            let g = build_h(spec.d, spec.b)?;
            let m = g.order();
            Ok(Extremal {
                spec,
                graph: g,
                hubs: VertexSet::empty(),
                block_order: m,
            })
        }
        _ => build_star(spec),
    }
}

/// The star family whose λ₂ sits on φ(d,b), if any.
pub fn sharp_family(d: u32, b: u32) -> Option<Family> {
    let p = ThresholdParams::new(d, b).ok()?;
    Family::STARS
        .into_iter()
        .find(|&f| build_star(ExtremalSpec::new(f, p.d, p.b)).is_ok())
}
