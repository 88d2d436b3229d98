//! Canonical codes for small graphs and isomorphism-free enumeration.
//!
//! The code of a graph is the least upper-triangle adjacency string (graph6
//! bit order) over all vertex orderings that list the colour classes of an
//! equitable refinement in canonical order. Colour classes are computed from
//! labelling-invariant data only, so the set of admissible orderings, and the
//! minimum over it, does not depend on the input labelling.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default largest order accepted by [`canonical_code`].
pub const CANON_LIMIT: usize = 10;
/// Largest order accepted by [`enumerate_graphs`].
pub const ENUMERATION_LIMIT: usize = 8;

/// Complete isomorphism invariant: equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonical representative encoded by this code.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let bits = &self.0[1..];
        let mut k = 0;
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if bits[k / 8] >> (7 - k % 8) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges).expect("code decodes in range")
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if s.len() % 2 != 0 || s.is_empty() {
            return Err(Error::Parse(format!("bad canonical code {s:?}")));
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
            .collect::<Result<Vec<u8>, _>>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self(bytes))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Stable colouring by iterated neighbour-colour multisets.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|u| colour[u]).collect();
                nc.sort_unstable();
                (colour[v], nc)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("signature present"))
            .collect();
        colour = next;
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

struct Canon<'a> {
    g: &'a Graph,
    colour: Vec<usize>,
    /// Colour required at each position.
    slot: Vec<usize>,
    perm: Vec<usize>,
    placed: VertexSet,
    cur: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Canon<'_> {
    fn twins(&self, u: usize, v: usize) -> bool {
        let mut a = self.g.neighbors(u).clone();
        a.remove(v);
        let mut b = self.g.neighbors(v).clone();
        b.remove(u);
        a == b
    }

    fn go(&mut self, pos: usize) {
        let n = self.g.order();
        if pos == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.cur < *b) {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        let want = self.slot[pos];
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.placed.contains(v) || self.colour[v] != want {
                continue;
            }
            // Swapping unplaced twins is an automorphism fixing the prefix.
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let start = self.cur.len();
            for i in 0..pos {
                self.cur.push(self.g.adjacent(self.perm[i], v));
            }
            let worse = self
                .best
                .as_ref()
                .is_some_and(|(b, _)| self.cur[..] > b[..self.cur.len()]);
            if !worse {
                self.perm.push(v);
                self.placed.insert(v);
                self.go(pos + 1);
                self.placed.remove(v);
                self.perm.pop();
            }
            self.cur.truncate(start);
        }
    }
}

/// Canonical code together with a canonical ordering: `perm[p]` is the vertex
/// of `g` placed at position `p` of the canonical representative.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalCode, Vec<usize>)> {
    canonical_form_with_limit(g, CANON_LIMIT)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<(CanonicalCode, Vec<usize>)> {
    let n = g.order();
    if n > limit || n > 255 {
        return Err(Error::OrderTooLarge { order: n, limit });
    }
    let colour = refine(g);
    let mut slot = colour.clone();
    slot.sort_unstable();
    let mut c = Canon {
        g,
        colour,
        slot,
        perm: Vec::with_capacity(n),
        placed: VertexSet::empty(n),
        cur: Vec::new(),
        best: None,
    };
    c.go(0);
    let (bits, perm) = c.best.unwrap_or_default();
    let mut bytes = vec![n as u8];
    bytes.extend(bits.chunks(8).map(|ch| ch.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b as u8) << (7 - i))));
    Ok((CanonicalCode(bytes), perm))
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    canonical_form(g).map(|(c, _)| c)
}

/// One representative per isomorphism class of `n`-vertex graphs, ordered by
/// canonical code. Iterating consumes the stream; a clone starts over from the
/// first graph.
#[derive(Debug)]
pub struct GraphEnumeration {
    graphs: std::sync::Arc<Vec<Graph>>,
    next: usize,
}

impl Clone for GraphEnumeration {
    fn clone(&self) -> Self {
        Self {
            graphs: self.graphs.clone(),
            next: 0,
        }
    }
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let g = self.graphs.get(self.next).cloned();
        self.next += 1;
        g
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.graphs.len().saturating_sub(self.next);
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for GraphEnumeration {}

/// Representatives of all isomorphism classes on `n` vertices.
///
/// Every `n`-vertex graph is a one-vertex extension of some `(n−1)`-vertex
/// graph, so classes are grown level by level: each representative of the
/// previous level receives a new vertex with every possible neighbourhood, and
/// the results are deduplicated by canonical code.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumeration> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut next: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
        for base in &level {
            for mask in 0u32..1 << (m - 1) {
                let g = Graph::from_fn(m, |u, v| {
                    if v == m - 1 {
                        mask >> u & 1 == 1
                    } else {
                        base.adjacent(u, v)
                    }
                });
                let code = canonical_code(&g)?;
                next.entry(code).or_insert_with_key(|c| c.to_graph());
            }
        }
        level = next.into_values().collect();
    }
    Ok(GraphEnumeration {
        graphs: std::sync::Arc::new(level),
        next: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn four_cycle_codes_agree() {
        let c4 = Graph::cycle(4);
        let k2_i2 = Graph::complete(2).lex_product(&Graph::empty(2));
        assert_eq!(canonical_code(&c4).unwrap(), canonical_code(&k2_i2).unwrap());
        assert_ne!(canonical_code(&Graph::complete(3)).unwrap(), canonical_code(&Graph::path(3)).unwrap());
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = Graph::cycle(5);
        assert_eq!(canonical_code(&c5).unwrap(), canonical_code(&c5.complement()).unwrap());
    }

    #[test]
    fn complement_of_i2_k2_is_c4() {
        let g = Graph::empty(2).lex_product(&Graph::complete(2)).complement();
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&Graph::cycle(4)).unwrap());
    }

    #[test]
    fn representative_relabels_input() {
        let g = Graph::petersen();
        let (code, perm) = canonical_form(&g).unwrap();
        let rep = code.to_graph();
        for p in 0..10 {
            for q in 0..10 {
                assert_eq!(rep.adjacent(p, q), g.adjacent(perm[p], perm[q]));
            }
        }
    }

    #[test]
    fn order_limit_enforced() {
        assert!(matches!(
            canonical_code(&Graph::empty(11)),
            Err(Error::OrderTooLarge { order: 11, limit: 10 })
        ));
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn hex_round_trip() {
        let code = canonical_code(&Graph::petersen()).unwrap();
        assert_eq!(CanonicalCode::from_hex(&code.to_hex()).unwrap(), code);
        assert!(CanonicalCode::from_hex("abc").is_err());
    }

    #[test]
    fn enumeration_small_counts() {
        assert_eq!(enumerate_graphs(0).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(4).unwrap().count(), 11);
        assert_eq!(enumerate_graphs(5).unwrap().count(), 34);
    }

    #[test]
    fn clone_restarts_stream() {
        let mut e = enumerate_graphs(3).unwrap();
        let first = e.next().unwrap();
        let mut again = e.clone();
        assert_eq!(again.next().unwrap(), first);
        assert_eq!(e.len(), 3);
    }

    fn arb_graph_and_perm() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1usize..=9).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(move |(bits, perm)| {
                    let mut it = bits.into_iter();
                    (Graph::from_fn(n, |_, _| it.next().unwrap()), perm)
                })
        })
    }

    proptest! {
        #[test]
        fn code_is_relabelling_invariant((g, perm) in arb_graph_and_perm()) {
            prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&g.relabel(&perm)).unwrap());
        }

        #[test]
        fn representative_has_same_code((g, _) in arb_graph_and_perm()) {
            let code = canonical_code(&g).unwrap();
            prop_assert_eq!(canonical_code(&code.to_graph()).unwrap(), code);
        }
    }

    /// Distinct codes over every labelled graph on `n` vertices.
    fn brute_classes(n: usize) -> usize {
        let pairs = n * n.saturating_sub(1) / 2;
        let mut codes = std::collections::HashSet::new();
        for mask in 0u64..1 << pairs {
            let mut k = 0;
            let g = Graph::from_fn(n, |_, _| {
                k += 1;
                mask >> (k - 1) & 1 == 1
            });
            codes.insert(canonical_code(&g).unwrap());
        }
        codes.len()
    }

    #[test]
    fn enumeration_matches_brute_force_dedup() {
        for n in 0..=5 {
            let e: Vec<Graph> = enumerate_graphs(n).unwrap().collect();
            assert_eq!(e.len(), brute_classes(n), "n={n}");
            let mut codes: Vec<CanonicalCode> = e.iter().map(|g| canonical_code(g).unwrap()).collect();
            let len = codes.len();
            codes.sort();
            codes.dedup();
            assert_eq!(codes.len(), len);
        }
    }
}
