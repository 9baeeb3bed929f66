//! Dense undirected simple graphs.
//!
//! Adjacency is stored as one bitset row per vertex, so edge queries are O(1)
//! and row-wise operations (degree, neighbourhood masks) run word-at-a-time.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed in a simple graph")]
    SelfLoop(usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
}

/// Sorted, duplicate-free list of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        VertexSet((0..WORD_BITS).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Checks every member against the order of a host graph.
    pub fn validate(&self, n: usize) -> Result<(), GraphError> {
        match self.0.last() {
            Some(&v) if v >= n => Err(GraphError::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// Connected-component labelling. Component ids are assigned in order of the
/// smallest vertex they contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub labels: Vec<usize>,
    pub count: usize,
}

impl ComponentDecomposition {
    /// Vertex sets of each component, indexed by component id.
    pub fn blocks(&self) -> Vec<VertexSet> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out.into_iter().map(VertexSet).collect()
    }
}

/// Undirected simple graph on vertices `0..n` with dense bitset adjacency.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        let words = n.div_ceil(WORD_BITS);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set(u, v, true);
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (wu, bu) = (u * self.words + v / WORD_BITS, v % WORD_BITS);
        let (wv, bv) = (v * self.words + u / WORD_BITS, u % WORD_BITS);
        if on {
            self.rows[wu] |= 1 << bu;
            self.rows[wv] |= 1 << bv;
        } else {
            self.rows[wu] &= !(1 << bu);
            self.rows[wv] &= !(1 << bv);
        }
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Neighbourhood of every vertex as a single `u64` mask; `None` when `n > 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= WORD_BITS).then(|| {
            (0..self.n)
                .map(|v| if self.words == 0 { 0 } else { self.row(v)[0] })
                .collect()
        })
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (u, v) in self.edges() {
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;
        }
        a
    }

    pub fn is_complete(&self) -> bool {
        self.degrees().iter().all(|&d| d + 1 == self.n)
    }

    /// Returns `Some(d)` iff every vertex has degree `d`. The graph on zero
    /// vertices has no degree and yields `None`.
    pub fn is_regular(&self) -> Option<usize> {
        let mut degs = (0..self.n).map(|v| self.degree(v));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn components(&self) -> ComponentDecomposition {
        let mut labels = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if labels[v] == usize::MAX {
                        labels[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        ComponentDecomposition { labels, count }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count == 1
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` preserving order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        keep.validate(self.n)?;
        let m = keep.members();
        let mut g = Graph::edgeless(m.len());
        for (i, &u) in m.iter().enumerate() {
            for (j, &v) in m.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// `G - S`: the surviving vertices keep their relative order.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        s.validate(self.n)?;
        let keep: VertexSet = (0..self.n).filter(|&v| !s.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::edgeless(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g
    }

    /// Block-diagonal union; `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut g = Graph::edgeless(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set(u + shift, v + shift, true);
        }
        g
    }

    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set(u, self.n + v, true);
            }
        }
        g
    }
}

pub fn complete(n: usize) -> Graph {
    Graph::edgeless(n).complement()
}

pub fn edgeless(n: usize) -> Graph {
    Graph::edgeless(n)
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::edgeless(n);
    for v in 1..n {
        g.set(v - 1, v, true);
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::CycleTooShort(n));
    }
    let mut g = path(n);
    g.set(n - 1, 0, true);
    Ok(g)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::edgeless(a).join(&Graph::edgeless(b))
}

/// Complement of `k` disjoint edges (the cocktail-party graph on `2k` vertices).
pub fn copies_k2_complement(k: usize) -> Graph {
    let mut g = Graph::edgeless(2 * k);
    for i in 0..k {
        g.set(2 * i, 2 * i + 1, true);
    }
    g.complement()
}

/// Petersen graph as the Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let mut g = Graph::edgeless(pairs.len());
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                g.set(x, y, true);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_basic() {
        assert_eq!(edgeless(0).components().count, 0);
        assert_eq!(complete(4).components().count, 1);
        let two = complete(3).disjoint_union(&complete(3));
        assert_eq!(two.components().count, 2);
        assert_eq!(two.edge_count(), 6);
        assert_eq!(two.components().labels, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn delete_vertices_cases() {
        let k3 = complete(4).delete_vertices(&VertexSet::new([0])).unwrap();
        assert_eq!(k3, complete(3));

        let c6 = cycle(6).unwrap();
        let rest = c6.delete_vertices(&VertexSet::new([0, 3])).unwrap();
        assert_eq!(rest.order(), 4);
        // survivors 1,2,4,5 -> 0,1,2,3 with edges 1-2 and 4-5
        assert_eq!(rest.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert_eq!(rest.components().count, 2);

        assert_eq!(c6.delete_vertices(&VertexSet::empty()).unwrap(), c6);
        assert!(matches!(
            c6.delete_vertices(&VertexSet::new([6])),
            Err(GraphError::VertexOutOfRange { vertex: 6, n: 6 })
        ));
    }

    #[test]
    fn complement_cases() {
        assert_eq!(complete(5).complement(), edgeless(5));
        let p3 = path(3);
        assert_eq!(p3.complement().complement(), p3);
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let c4 = two_k2.complement();
        // 0-2, 0-3, 1-2, 1-3: a 4-cycle 0-2-1-3-0
        assert_eq!(c4.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(c4.is_regular(), Some(2));
        assert!(c4.is_connected());
    }

    #[test]
    fn union_and_join() {
        let g = complete(1).disjoint_union(&complete(2));
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        let p = path(4);
        assert_eq!(p.disjoint_union(&edgeless(0)), p);

        assert_eq!(complete(1).join(&complete(2)), complete(3));
        let k22 = edgeless(2).join(&edgeless(2));
        assert_eq!(k22.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);

        let lemma = complete(1)
            .disjoint_union(&complete(2))
            .join(&copies_k2_complement(1));
        let mut degs = lemma.degrees();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degs, vec![3, 3, 3, 3, 2]);
    }

    #[test]
    fn builders() {
        let k4 = complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.is_regular(), Some(3));
        assert_eq!(copies_k2_complement(1), edgeless(2));
        assert_eq!(copies_k2_complement(2).is_regular(), Some(2));
        assert!(copies_k2_complement(2).is_connected());
        assert_eq!(copies_k2_complement(3).is_regular(), Some(4));
        assert_eq!(cycle(2), Err(GraphError::CycleTooShort(2)));
        assert_eq!(cycle(0), Err(GraphError::CycleTooShort(0)));
    }

    #[test]
    fn regularity() {
        assert_eq!(cycle(5).unwrap().is_regular(), Some(2));
        assert_eq!(path(3).is_regular(), None);
        let p = petersen();
        assert_eq!(p.order(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.is_regular(), Some(3));
        assert_eq!(complete(3).join(&edgeless(0)).is_regular(), Some(2));
        assert_eq!(complete(3).join(&edgeless(2)).is_regular(), None);
        assert_eq!(edgeless(0).join(&edgeless(3)).is_regular(), Some(0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let c = cycle(130).unwrap();
        assert_eq!(c.is_regular(), Some(2));
        assert!(c.is_connected());
        assert!(c.has_edge(129, 0));
        assert!(c.has_edge(63, 64));
        assert_eq!(c.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert!(c.adjacency_masks().is_none());
    }
}
