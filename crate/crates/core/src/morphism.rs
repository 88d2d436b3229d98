//! Backtracking search for graph morphisms with domain propagation.
//!
//! Source vertices are assigned in index order and targets are tried in
//! ascending order, so the first total map found is the lexicographically
//! least one among all maps satisfying the constraints.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A finite partial vertex map, sorted by source.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialMap {
    pairs: Vec<(usize, usize)>,
}

impl PartialMap {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateSource(w[0].0));
        }
        Ok(Self { pairs })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, source: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&source, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    /// Every edge among the sources maps to an edge of `target`.
    pub fn is_local_hom(&self, source: &Graph, target: &Graph) -> bool {
        self.pairs.iter().enumerate().all(|(i, &(u, fu))| {
            self.pairs[i + 1..]
                .iter()
                .all(|&(v, fv)| !source.adjacent(u, v) || target.adjacent(fu, fv))
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut img: Vec<usize> = self.image().collect();
        img.sort_unstable();
        img.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_local_mono(&self, source: &Graph, target: &Graph) -> bool {
        self.is_injective() && self.is_local_hom(source, target)
    }

    /// Local isomorphism: injective, and edges and non-edges are both preserved.
    pub fn is_local_iso(&self, source: &Graph, target: &Graph) -> bool {
        self.is_injective()
            && self.pairs.iter().enumerate().all(|(i, &(u, fu))| {
                self.pairs[i + 1..]
                    .iter()
                    .all(|&(v, fv)| source.adjacent(u, v) == target.adjacent(fu, fv))
            })
    }

    fn check_range(&self, source: &Graph, target: &Graph) -> Result<()> {
        for &(u, v) in &self.pairs {
            source.check_vertex(u)?;
            target.check_vertex(v)?;
        }
        Ok(())
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (u, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismConstraints {
    pub injective: bool,
    pub surjective: bool,
    /// Non-edges must map to non-edges (isomorphism onto the image).
    pub respect_nonedges: bool,
}

impl MorphismConstraints {
    pub const HOM: Self = Self {
        injective: false,
        surjective: false,
        respect_nonedges: false,
    };
    pub const SURJECTIVE: Self = Self {
        injective: false,
        surjective: true,
        respect_nonedges: false,
    };
    pub const ISO: Self = Self {
        injective: true,
        surjective: true,
        respect_nonedges: true,
    };
}

/// Morphism classes used on either side of an XY homogeneity question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MorphismKind {
    /// homomorphism
    H,
    /// monomorphism
    M,
    /// epimorphism (surjective homomorphism)
    E,
    /// bimorphism (bijective homomorphism)
    B,
    /// automorphism
    A,
    /// isomorphism onto the image (embedding)
    I,
}

impl MorphismKind {
    pub fn constraints(self) -> MorphismConstraints {
        use MorphismKind::*;
        match self {
            H => MorphismConstraints::HOM,
            M => MorphismConstraints {
                injective: true,
                ..MorphismConstraints::HOM
            },
            E => MorphismConstraints::SURJECTIVE,
            B => MorphismConstraints {
                injective: true,
                surjective: true,
                respect_nonedges: false,
            },
            A => MorphismConstraints::ISO,
            I => MorphismConstraints {
                injective: true,
                surjective: false,
                respect_nonedges: true,
            },
        }
    }

    pub fn letter(self) -> char {
        use MorphismKind::*;
        match self {
            H => 'H',
            M => 'M',
            E => 'E',
            B => 'B',
            A => 'A',
            I => 'I',
        }
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for MorphismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use MorphismKind::*;
        match s.to_ascii_uppercase().as_str() {
            "H" => Ok(H),
            "M" => Ok(M),
            "E" => Ok(E),
            "B" => Ok(B),
            "A" => Ok(A),
            "I" => Ok(I),
            _ => Err(Error::Parse(format!("unknown morphism kind {s:?}"))),
        }
    }
}

struct Search<'a> {
    src: &'a Graph,
    dst: &'a Graph,
    c: MorphismConstraints,
    assignment: Vec<usize>,
    fixed: Vec<bool>,
    dst_non_neighbors: Vec<VertexSet>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    /// Restricts the domains of unassigned vertices after `u ↦ t`.
    fn propagate(&self, u: usize, t: usize, domains: &mut [VertexSet]) -> bool {
        for w in 0..self.src.order() {
            if self.assignment[w] != UNSET || w == u {
                continue;
            }
            let d = &mut domains[w];
            if self.src.adjacent(u, w) {
                d.intersect_with(self.dst.neighbors(t));
            } else if self.c.respect_nonedges {
                d.intersect_with(&self.dst_non_neighbors[t]);
            }
            if self.c.injective {
                d.remove(t);
            }
            if d.is_empty() {
                return false;
            }
        }
        true
    }

    fn surjection_possible(&self, next: usize, domains: &[VertexSet]) -> bool {
        if !self.c.surjective {
            return true;
        }
        let mut covered = VertexSet::empty(self.dst.order());
        for w in 0..self.src.order() {
            if self.assignment[w] != UNSET {
                covered.insert(self.assignment[w]);
            }
        }
        let missing = covered.complement();
        let free = (next..self.src.order())
            .filter(|&w| self.assignment[w] == UNSET)
            .count();
        if missing.len() > free {
            return false;
        }
        let mut reachable = VertexSet::empty(self.dst.order());
        for w in next..self.src.order() {
            if self.assignment[w] == UNSET {
                reachable.union_with(&domains[w]);
            }
        }
        missing.is_subset(&reachable)
    }

    fn solve(&mut self, next: usize, domains: &[VertexSet]) -> bool {
        let mut u = next;
        while u < self.src.order() && self.fixed[u] {
            u += 1;
        }
        if u == self.src.order() {
            return !self.c.surjective || self.surjection_possible(u, domains);
        }
        for t in domains[u].iter() {
            let mut local = domains.to_vec();
            self.assignment[u] = t;
            if self.propagate(u, t, &mut local) && self.surjection_possible(u + 1, &local) && self.solve(u + 1, &local) {
                return true;
            }
            self.assignment[u] = UNSET;
        }
        false
    }
}

/// Lexicographically least total map `a → b` extending `seed` that preserves
/// edges and honours `c`, or `None` when no such map exists.
pub fn search_morphism(a: &Graph, b: &Graph, seed: &PartialMap, c: MorphismConstraints) -> Result<Option<Vec<usize>>> {
    seed.check_range(a, b)?;
    let seed_ok = if c.respect_nonedges {
        seed.is_local_iso(a, b)
    } else if c.injective {
        seed.is_local_mono(a, b)
    } else {
        seed.is_local_hom(a, b)
    };
    if !seed_ok {
        return Ok(None);
    }
    if (c.injective && a.order() > b.order()) || (c.surjective && b.order() > a.order()) {
        return Ok(None);
    }
    if a.order() == 0 {
        return Ok((!c.surjective || b.order() == 0).then(Vec::new));
    }
    let dst_non_neighbors = (0..b.order())
        .map(|t| {
            let mut s = b.neighbors(t).complement();
            s.remove(t);
            s
        })
        .collect();
    let mut search = Search {
        src: a,
        dst: b,
        c,
        assignment: vec![UNSET; a.order()],
        fixed: vec![false; a.order()],
        dst_non_neighbors,
    };
    let mut domains = vec![VertexSet::full(b.order()); a.order()];
    for &(u, t) in seed.pairs() {
        search.assignment[u] = t;
        search.fixed[u] = true;
        domains[u] = VertexSet::singleton(b.order(), t);
    }
    for &(u, t) in seed.pairs() {
        if !search.propagate(u, t, &mut domains) {
            return Ok(None);
        }
    }
    if !search.surjection_possible(0, &domains) {
        return Ok(None);
    }
    if search.solve(0, &domains) {
        Ok(Some(search.assignment))
    } else {
        Ok(None)
    }
}

/// Checks a total map against the constraints, independently of the search.
pub fn validate_map(a: &Graph, b: &Graph, map: &[usize], c: MorphismConstraints) -> bool {
    if map.len() != a.order() || map.iter().any(|&t| t >= b.order()) {
        return false;
    }
    if a.edges().any(|(u, v)| !b.adjacent(map[u], map[v])) {
        return false;
    }
    let mut seen = vec![false; b.order()];
    let mut distinct = true;
    for &t in map {
        distinct &= !std::mem::replace(&mut seen[t], true);
    }
    if c.injective && !distinct {
        return false;
    }
    if c.surjective && !seen.iter().all(|&s| s) {
        return false;
    }
    if c.respect_nonedges {
        for u in 0..a.order() {
            for v in u + 1..a.order() {
                if !a.adjacent(u, v) && (map[u] == map[v] || b.adjacent(map[u], map[v])) {
                    return false;
                }
            }
        }
    }
    true
}

/// Extends the local homomorphism `f` to a total endomorphism of `g` of the
/// given kind. Seeds that are not local homomorphisms are rejected; seeds that
/// are homomorphisms but cannot satisfy the kind (e.g. non-injective seeds for
/// `M`) simply yield `None`.
pub fn extends_in(g: &Graph, f: &PartialMap, kind: MorphismKind) -> Result<Option<Vec<usize>>> {
    f.check_range(g, g)?;
    if !f.is_local_hom(g, g) {
        return Err(Error::SeedNotLocalMorphism(f.to_string()));
    }
    search_morphism(g, g, f, kind.constraints())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pm(p: &[(usize, usize)]) -> PartialMap {
        PartialMap::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partial_map_rejects_duplicate_sources() {
        assert_eq!(PartialMap::new(vec![(1, 0), (1, 2)]), Err(Error::DuplicateSource(1)));
        assert_eq!(pm(&[(2, 0), (0, 1)]).pairs(), &[(0, 1), (2, 0)]);
    }

    #[test]
    fn no_hom_into_smaller_clique_or_from_odd_cycle() {
        let none = PartialMap::empty();
        assert_eq!(
            search_morphism(&Graph::complete(3), &Graph::complete(2), &none, MorphismConstraints::HOM).unwrap(),
            None
        );
        assert_eq!(
            search_morphism(&Graph::cycle(5), &Graph::complete(2), &none, MorphismConstraints::HOM).unwrap(),
            None
        );
    }

    #[test]
    fn path_folds_onto_edge() {
        let got = search_morphism(&Graph::path(3), &Graph::complete(2), &PartialMap::empty(), MorphismConstraints::SURJECTIVE)
            .unwrap()
            .unwrap();
        assert_eq!(got, vec![0, 1, 0]);
    }

    #[test]
    fn lexicographically_least_among_all_maps() {
        // Enumerate every map P_4 -> C_5 and compare against the search.
        let (a, b) = (Graph::path(4), Graph::cycle(5));
        for c in [MorphismConstraints::HOM, MorphismConstraints::SURJECTIVE, MorphismKind::M.constraints(), MorphismKind::I.constraints()] {
            let mut best = None;
            for code in 0..5usize.pow(4) {
                let map: Vec<usize> = (0..4).map(|i| code / 5usize.pow(3 - i as u32) % 5).collect();
                if validate_map(&a, &b, &map, c) {
                    best = Some(map);
                    break;
                }
            }
            assert_eq!(search_morphism(&a, &b, &PartialMap::empty(), c).unwrap(), best);
        }
    }

    #[test]
    fn extends_in_examples() {
        let k4 = Graph::complete(4);
        let f = pm(&[(0, 2), (3, 1)]);
        let ext = extends_in(&k4, &f, MorphismKind::A).unwrap().unwrap();
        assert!(validate_map(&k4, &k4, &ext, MorphismConstraints::ISO));
        assert_eq!((ext[0], ext[3]), (2, 1));

        let p5 = Graph::path(5);
        assert_eq!(extends_in(&p5, &pm(&[(0, 0), (2, 4)]), MorphismKind::H).unwrap(), None);

        let p3 = Graph::path(3);
        assert_eq!(extends_in(&p3, &pm(&[(0, 0), (2, 0)]), MorphismKind::H).unwrap(), Some(vec![0, 1, 0]));
    }

    #[test]
    fn extends_in_rejects_non_homomorphic_seed() {
        let p3 = Graph::path(3);
        assert!(matches!(
            extends_in(&p3, &pm(&[(0, 0), (1, 2)]), MorphismKind::H),
            Err(Error::SeedNotLocalMorphism(_))
        ));
        assert!(extends_in(&p3, &pm(&[(7, 0)]), MorphismKind::H).is_err());
    }

    #[test]
    fn bimorphism_and_automorphism_agree_on_small_graphs() {
        let g = Graph::cycle(6);
        for a in 0..6 {
            for b in 0..6 {
                let f = pm(&[(0, a), (1, b)]);
                if !f.is_local_hom(&g, &g) {
                    continue;
                }
                let bi = extends_in(&g, &f, MorphismKind::B).unwrap();
                let au = extends_in(&g, &f, MorphismKind::A).unwrap();
                assert_eq!(bi.is_some(), au.is_some());
            }
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("h".parse::<MorphismKind>().unwrap(), MorphismKind::H);
        assert!("Q".parse::<MorphismKind>().is_err());
    }

    fn all_total_maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
        // Lexicographic order: vertex 0 is the most significant digit.
        (0..n.pow(n as u32)).map(move |mut k| {
            let mut m: Vec<usize> = (0..n)
                .map(|_| {
                    let t = k % n;
                    k /= n;
                    t
                })
                .collect();
            m.reverse();
            m
        })
    }

    /// extends_in against enumeration of every total map, for all graphs up to
    /// five vertices and every seed on at most two vertices, plus all
    /// single-vertex seeds on six vertices.
    #[test]
    fn extends_in_matches_total_enumeration() {
        for n in 1..=6 {
            for g in crate::canon::enumerate_graphs(n).unwrap() {
                let totals: Vec<Vec<usize>> = all_total_maps(n).collect();
                let max_dom = if n <= 5 { 2 } else { 1 };
                let mut seeds = Vec::new();
                for u in 0..n {
                    for s in 0..n {
                        seeds.push(vec![(u, s)]);
                        if max_dom == 2 {
                            for v in u + 1..n {
                                for t in 0..n {
                                    seeds.push(vec![(u, s), (v, t)]);
                                }
                            }
                        }
                    }
                }
                for seed in seeds {
                    let f = pm(&seed);
                    if !f.is_local_hom(&g, &g) {
                        continue;
                    }
                    for kind in [MorphismKind::H, MorphismKind::M, MorphismKind::I, MorphismKind::A] {
                        let c = kind.constraints();
                        let want = totals
                            .iter()
                            .find(|m| seed.iter().all(|&(u, t)| m[u] == t) && validate_map(&g, &g, m, c))
                            .cloned();
                        assert_eq!(extends_in(&g, &f, kind).unwrap(), want, "{g:?} {f} {kind}");
                    }
                }
            }
        }
    }

    fn arb_pair() -> impl Strategy<Value = (Graph, Graph)> {
        let graph = (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Graph::from_fn(n, |_, _| it.next().unwrap())
            })
        });
        (graph.clone(), graph)
    }

    proptest! {
        #[test]
        fn returned_maps_validate((a, b) in arb_pair(), flags in any::<[bool; 3]>()) {
            let c = MorphismConstraints { injective: flags[0], surjective: flags[1], respect_nonedges: flags[2] };
            if let Some(m) = search_morphism(&a, &b, &PartialMap::empty(), c).unwrap() {
                prop_assert!(validate_map(&a, &b, &m, c));
            }
        }
    }
}
