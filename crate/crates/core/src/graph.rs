//! Finite simple graphs over dense vertex indices.

use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..order`.
///
/// Adjacency is stored as one [`VertexSet`] row per vertex; the rows are kept
/// symmetric and irreflexive by every constructor.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    rows: Vec<VertexSet>,
}

/// Which side of a vertex set [`Graph::cone_set`] looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Vertices adjacent to every member.
    Cone,
    /// Vertices outside the set adjacent to no member.
    Cocone,
}

impl Graph {
    /// Edgeless graph `I_n`.
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            rows: vec![VertexSet::empty(order); order],
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(order: usize) -> Self {
        let rows = (0..order)
            .map(|v| {
                let mut r = VertexSet::full(order);
                r.remove(v);
                r
            })
            .collect();
        Self { order, rows }
    }

    pub fn path(order: usize) -> Self {
        Self::from_edges(order, (1..order).map(|i| (i - 1, i))).expect("path edges in range")
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = Self::path(order);
        if order >= 3 {
            g.add_edge(0, order - 1);
        }
        g
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i–(i+5).
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Self::from_edges(10, edges).expect("petersen edges in range")
    }

    /// Builds a graph from an edge list; loops are rejected, duplicates merged.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds the graph whose adjacency is given by a symmetric predicate.
    pub fn from_fn(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(order);
        for v in 1..order {
            for u in 0..v {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// Number of vertices other than `v` that are not adjacent to `v`.
    pub fn codegree(&self, v: usize) -> usize {
        self.order - 1 - self.degree(v)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    /// Validates indices and converts them to a set over this graph's vertices.
    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, items: I) -> Result<VertexSet> {
        let mut s = VertexSet::empty(self.order);
        for v in items {
            self.check_vertex(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    pub fn complement(&self) -> Self {
        let rows = (0..self.order)
            .map(|v| {
                let mut r = self.rows[v].complement();
                r.remove(v);
                r
            })
            .collect();
        Self {
            order: self.order,
            rows,
        }
    }

    /// Lexicographic product `self[other]`: vertex `(a, x)` has index
    /// `a * other.order() + x`.
    pub fn lex_product(&self, other: &Graph) -> Self {
        let m = other.order;
        Self::from_fn(self.order * m, |p, q| {
            let (a, x) = (p / m, p % m);
            let (b, y) = (q / m, q % m);
            self.adjacent(a, b) || (a == b && other.adjacent(x, y))
        })
    }

    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.order;
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + n, v + n)));
        Self::from_edges(n + other.order, edges).expect("edges in range")
    }

    /// Subgraph induced by `set`. The returned map sends the `k`-th new vertex
    /// to its old index; new indices follow ascending old indices.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if let Some(bad) = set.iter().find(|&v| v >= self.order) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: self.order,
            });
        }
        let map = set.to_vec();
        Ok((self.induced_by_list(&map), map))
    }

    /// Induced subgraph on an explicit vertex list, in list order.
    pub fn induced_by_list(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |i, j| self.adjacent(vertices[i], vertices[j]))
    }

    /// `N(S)`: vertices adjacent to every member of `s`; all vertices when `s` is empty.
    pub fn common_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::full(self.order);
        for v in s {
            out.intersect_with(&self.rows[v]);
        }
        out
    }

    /// Cones (`N(x)`) or co-cones (vertices outside `x` with no neighbour in `x`).
    pub fn cone_set(&self, x: &VertexSet, polarity: Polarity) -> VertexSet {
        match polarity {
            Polarity::Cone => self.common_neighborhood(x),
            Polarity::Cocone => {
                let mut out = VertexSet::full(self.order);
                for v in x {
                    out.difference_with(&self.rows[v]);
                }
                out.difference_with(x);
                out
            }
        }
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.rows[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.rows[v])
        })
    }

    /// `d` dominates `x` when every member of `x` has a neighbour in `d`.
    pub fn dominates(&self, d: &VertexSet, x: &VertexSet) -> bool {
        x.iter().all(|v| !self.rows[v].is_disjoint(d))
    }

    /// `d` is a dominating set of the graph: it dominates everything outside it.
    pub fn is_dominating_set(&self, d: &VertexSet) -> bool {
        self.dominates(d, &d.complement())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each listed by ascending least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty(self.order);
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(self.order, start);
            let mut frontier = comp.clone();
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let fresh = self.rows[v].difference(&comp);
                comp.union_with(&fresh);
                frontier.union_with(&fresh);
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Relabels by `perm`: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.order, edges).expect("permutation in range")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order, self.edges().collect::<Vec<_>>())
    }
}
