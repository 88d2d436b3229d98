//! Independence and star numbers, directories, addresses, exact
//! neighbourhoods and directory domination numbers.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper bound on the independence number of `g[cand]` from a greedy
/// partition of `cand` into cliques.
fn clique_cover_bound(g: &Graph, cand: &VertexSet) -> usize {
    let mut remaining = cand.clone();
    let mut count = 0;
    while let Some(v) = remaining.first() {
        remaining.remove(v);
        let mut open = remaining.intersection(g.neighbors(v));
        while let Some(u) = open.first() {
            remaining.remove(u);
            open.remove(u);
            open.intersect_with(g.neighbors(u));
        }
        count += 1;
    }
    count
}

struct MaxIndependent<'a> {
    g: &'a Graph,
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl MaxIndependent<'_> {
    // Smallest candidate is branched on first (include, then exclude), so sets
    // are visited in lexicographic order and the first maximum found is the
    // lexicographically least one.
    fn expand(&mut self, mut cand: VertexSet) {
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
        }
        while let Some(v) = cand.first() {
            if self.cur.len() + clique_cover_bound(self.g, &cand) <= self.best.len() {
                return;
            }
            let mut next = cand.difference(self.g.neighbors(v));
            next.remove(v);
            self.cur.push(v);
            self.expand(next);
            self.cur.pop();
            cand.remove(v);
        }
    }
}

/// `α(g)` together with the lexicographically least maximum independent set.
pub fn independence_number(g: &Graph) -> (usize, VertexSet) {
    let mut search = MaxIndependent {
        g,
        cur: Vec::new(),
        best: Vec::new(),
    };
    search.expand(g.vertices());
    let witness = VertexSet::from_indices(g.order(), search.best.iter().copied());
    (search.best.len(), witness)
}

/// All independent sets of size exactly `target`, in lexicographic order.
fn independent_sets_of_size(g: &Graph, target: usize) -> Vec<VertexSet> {
    fn go(g: &Graph, target: usize, cur: &mut Vec<usize>, mut cand: VertexSet, out: &mut Vec<VertexSet>) {
        if cur.len() == target {
            out.push(VertexSet::from_indices(g.order(), cur.iter().copied()));
            return;
        }
        while let Some(v) = cand.first() {
            if cur.len() + clique_cover_bound(g, &cand) < target {
                return;
            }
            let mut next = cand.difference(g.neighbors(v));
            next.remove(v);
            cur.push(v);
            go(g, target, cur, next, out);
            cur.pop();
            cand.remove(v);
        }
    }
    let mut out = Vec::new();
    go(g, target, &mut Vec::new(), g.vertices(), &mut out);
    out
}

/// Witness for the star number: a vertex and an independent subset of its
/// neighbourhood of maximum size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub vertex: usize,
    pub set: VertexSet,
}

/// `σ(g) = max_v α(N(v))`, 0 for edgeless graphs. The witness is the least
/// vertex attaining the maximum with its lexicographically least set.
pub fn star_number(g: &Graph) -> (usize, Option<StarWitness>) {
    let mut best: Option<(usize, StarWitness)> = None;
    for v in 0..g.order() {
        let nbhd = g.neighbors(v);
        if nbhd.is_empty() {
            continue;
        }
        let (sub, map) = g.induced_subgraph(nbhd).expect("neighbourhood in range");
        let (a, w) = independence_number(&sub);
        if best.as_ref().is_none_or(|(b, _)| a > *b) {
            let set = VertexSet::from_indices(g.order(), w.iter().map(|i| map[i]));
            best = Some((a, StarWitness { vertex: v, set }));
        }
    }
    match best {
        Some((a, w)) => (a, Some(w)),
        None => (0, None),
    }
}

pub fn is_independent_dominating(g: &Graph, i: &VertexSet) -> bool {
    g.is_independent(i) && g.is_dominating_set(i)
}

fn require_directory_base(g: &Graph, i: &VertexSet) -> Result<()> {
    if let Some(v) = i.iter().find(|&v| v >= g.order()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    if !g.is_independent(i) {
        return Err(Error::NotADirectoryBase("set is not independent".into()));
    }
    if let Some(v) = i.complement().iter().find(|&v| g.neighbors(v).is_disjoint(i)) {
        return Err(Error::NotADirectoryBase(format!("vertex {v} is not dominated")));
    }
    Ok(())
}

/// All directories of a finite graph: independent dominating sets of size
/// `α(g)`, in lexicographic order.
pub fn directories(g: &Graph) -> Result<Vec<VertexSet>> {
    if star_number(g).0 == 0 {
        return Err(Error::StarNumberZero);
    }
    let (alpha, _) = independence_number(g);
    Ok(independent_sets_of_size(g, alpha)
        .into_iter()
        .filter(|s| g.is_dominating_set(s))
        .collect())
}

/// How strictly [`is_directory`] reads the size clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectoryMode {
    /// Finite graphs: size must equal `α(g)`.
    Exact,
    /// Finite windows onto infinite graphs: size at least `2σ − 1`
    /// ("truncation-directory").
    Truncation,
}

pub fn is_directory(g: &Graph, i: &VertexSet, mode: DirectoryMode) -> Result<bool> {
    let (sigma, _) = star_number(g);
    if sigma == 0 {
        return Err(Error::StarNumberZero);
    }
    if require_directory_base(g, i).is_err() {
        return Ok(false);
    }
    Ok(match mode {
        DirectoryMode::Exact => i.len() == independence_number(g).0,
        DirectoryMode::Truncation => i.len() + 1 >= 2 * sigma,
    })
}

/// `N(x) ∩ i` for `x ∉ i`, `{x}` otherwise.
pub fn address(g: &Graph, i: &VertexSet, x: usize) -> Result<VertexSet> {
    require_directory_base(g, i)?;
    g.check_vertex(x)?;
    Ok(address_unchecked(g, i, x))
}

pub(crate) fn address_unchecked(g: &Graph, i: &VertexSet, x: usize) -> VertexSet {
    if i.contains(x) {
        VertexSet::singleton(g.order(), x)
    } else {
        g.neighbors(x).intersection(i)
    }
}

/// `K_S = {v : N(v) ∩ i = s}`.
pub fn exact_neighborhood(g: &Graph, i: &VertexSet, s: &VertexSet) -> Result<VertexSet> {
    require_directory_base(g, i)?;
    if !s.is_subset(i) {
        return Err(Error::NotInDirectory);
    }
    Ok(exact_neighborhood_unchecked(g, i, s))
}

pub(crate) fn exact_neighborhood_unchecked(g: &Graph, i: &VertexSet, s: &VertexSet) -> VertexSet {
    VertexSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&v| &g.neighbors(v).intersection(i) == s),
    )
}

/// Least number of vertices of `pool` whose neighbourhoods cover `target`.
fn min_cover(g: &Graph, pool: &[usize], target: &VertexSet) -> usize {
    fn covers(g: &Graph, chosen: &[usize], target: &VertexSet) -> bool {
        let mut covered = VertexSet::empty(g.order());
        for &c in chosen {
            covered.union_with(g.neighbors(c));
        }
        target.is_subset(&covered)
    }
    fn pick(g: &Graph, pool: &[usize], k: usize, start: usize, chosen: &mut Vec<usize>, target: &VertexSet) -> bool {
        if chosen.len() == k {
            return covers(g, chosen, target);
        }
        for idx in start..pool.len() {
            chosen.push(pool[idx]);
            if pick(g, pool, k, idx + 1, chosen, target) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (0..=pool.len())
        .find(|&k| pick(g, pool, k, 0, &mut Vec::new(), target))
        .expect("the full pool covers a dominated target")
}

/// Directory domination number `d_I(S)`.
///
/// When `S ∩ I` is empty this is the least number of directory vertices that
/// dominate `S`. Otherwise it is `|S ∩ I| + d_I(S \ B_S)` where `B_S` is
/// `S ∩ I` together with every neighbour of a member of `S ∩ I`.
pub fn domination_number(g: &Graph, i: &VertexSet, s: &VertexSet) -> Result<usize> {
    require_directory_base(g, i)?;
    if let Some(v) = s.iter().find(|&v| v >= g.order()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    if let Some(v) = s.iter().find(|&v| !i.contains(v) && g.neighbors(v).is_disjoint(i)) {
        return Err(Error::Undominated(v));
    }
    Ok(domination_unchecked(g, i, s))
}

fn domination_unchecked(g: &Graph, i: &VertexSet, s: &VertexSet) -> usize {
    let inside = s.intersection(i);
    if inside.is_empty() {
        if s.is_empty() {
            return 0;
        }
        let mut pool = VertexSet::empty(g.order());
        for v in s {
            pool.union_with(&g.neighbors(v).intersection(i));
        }
        return min_cover(g, &pool.to_vec(), s);
    }
    let mut b = inside.clone();
    for x in &inside {
        b.union_with(g.neighbors(x));
    }
    inside.len() + domination_unchecked(g, i, &s.difference(&b))
}

/// Computed structural quantities of a finite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub edges: usize,
    pub independence_number: usize,
    pub alpha_witness: VertexSet,
    pub star_number: usize,
    pub sigma_witness: Option<StarWitness>,
    /// Empty for edgeless graphs, where directories are undefined.
    pub directories: Vec<VertexSet>,
    pub is_connected: bool,
}

pub fn analyze(g: &Graph) -> AnalysisReport {
    let (alpha, alpha_witness) = independence_number(g);
    let (sigma, sigma_witness) = star_number(g);
    let directories = if sigma == 0 { Vec::new() } else { directories(g).expect("sigma >= 1") };
    AnalysisReport {
        order: g.order(),
        edges: g.edge_count(),
        independence_number: alpha,
        alpha_witness,
        star_number: sigma,
        sigma_witness,
        directories,
        is_connected: g.is_connected(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::presentation::{Family, Presentation};

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, v.iter().copied())
    }

    fn rs3(parts: usize) -> Graph {
        Presentation::new(Family::Rs(3)).unwrap().truncate(3 + 3 * parts)
    }

    // Test-only oracle: brute force over all subsets.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|m| {
                let s = VertexSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1));
                g.is_independent(&s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn alpha_examples() {
        for n in 1..6 {
            assert_eq!(independence_number(&Graph::complete(n)).0, 1);
        }
        assert_eq!(independence_number(&Graph::empty(0)).0, 0);
        let p = Graph::petersen();
        assert_eq!(brute_alpha(&p), 4);
        let (a, w) = independence_number(&p);
        assert_eq!(a, 4);
        assert!(p.is_independent(&w));
        assert_eq!(independence_number(&rs3(2)).0, 3);
        assert_eq!(independence_number(&rs3(1)).0, 3);
    }

    #[test]
    fn alpha_witness_is_lexicographically_least() {
        // C_6: maximum independent sets are {0,2,4} and {1,3,5}.
        assert_eq!(independence_number(&Graph::cycle(6)).1.to_vec(), vec![0, 2, 4]);
        // P_4: {0,2}, {0,3}, {1,3}.
        assert_eq!(independence_number(&Graph::path(4)).1.to_vec(), vec![0, 2]);
    }

    #[test]
    fn star_number_examples() {
        assert_eq!(star_number(&rs3(2)).0, 2);
        assert_eq!(star_number(&Graph::complete(4)).0, 1);
        let (s, w) = star_number(&Graph::cycle(6));
        assert_eq!(s, 2);
        let w = w.unwrap();
        assert_eq!((w.vertex, w.set.to_vec()), (0, vec![1, 5]));
        assert_eq!(star_number(&Graph::empty(4)), (0, None));
    }

    #[test]
    fn directory_examples() {
        let g = rs3(2);
        assert_eq!(directories(&g).unwrap(), vec![set(9, &[0, 1, 2])]);
        assert_eq!(directories(&Graph::cycle(6)).unwrap(), vec![set(6, &[0, 2, 4]), set(6, &[1, 3, 5])]);
        assert_eq!(
            directories(&Graph::complete(3)).unwrap(),
            vec![set(3, &[0]), set(3, &[1]), set(3, &[2])]
        );
        assert_eq!(directories(&Graph::empty(3)), Err(Error::StarNumberZero));
    }

    #[test]
    fn truncation_directory_mode() {
        // C_6 has σ = 2, so any independent dominating set of size ≥ 3 qualifies.
        let c6 = Graph::cycle(6);
        assert!(is_directory(&c6, &set(6, &[0, 2, 4]), DirectoryMode::Truncation).unwrap());
        assert!(!is_directory(&c6, &set(6, &[0, 3]), DirectoryMode::Truncation).unwrap());
        assert!(!is_directory(&c6, &set(6, &[0, 3]), DirectoryMode::Exact).unwrap());
        assert!(!is_directory(&c6, &set(6, &[0, 1]), DirectoryMode::Exact).unwrap());
    }

    #[test]
    fn address_examples() {
        // RS(3) truncation with parts of size 2: a_0..a_2 then C_0,C_1,C_2 round-robin.
        let g = rs3(2);
        let a = set(9, &[0, 1, 2]);
        assert_eq!(address(&g, &a, 3).unwrap().to_vec(), vec![1, 2]);
        assert_eq!(address(&g, &a, 1).unwrap().to_vec(), vec![1]);
        let c6 = Graph::cycle(6);
        assert_eq!(address(&c6, &set(6, &[0, 2, 4]), 1).unwrap().to_vec(), vec![0, 2]);
        assert!(matches!(address(&c6, &set(6, &[0, 2]), 1), Err(Error::NotADirectoryBase(_))));
        assert!(matches!(address(&c6, &set(6, &[0, 1]), 3), Err(Error::NotADirectoryBase(_))));
    }

    #[test]
    fn exact_neighborhood_examples() {
        let g = rs3(2);
        let a = set(9, &[0, 1, 2]);
        // C_0 = {3, 6}: adjacent to a_1, a_2.
        assert_eq!(exact_neighborhood(&g, &a, &set(9, &[1, 2])).unwrap().to_vec(), vec![3, 6]);
        assert!(exact_neighborhood(&g, &a, &set(9, &[0])).unwrap().is_empty());
        assert_eq!(exact_neighborhood(&g, &a, &set(9, &[4])), Err(Error::NotInDirectory));
    }

    #[test]
    fn domination_examples() {
        let g = rs3(2);
        let a = set(9, &[0, 1, 2]);
        assert_eq!(domination_number(&g, &a, &set(9, &[])).unwrap(), 0);
        assert_eq!(domination_number(&g, &a, &set(9, &[3, 4, 5])).unwrap(), 2);
        assert_eq!(domination_number(&g, &a, &set(9, &[0, 3])).unwrap(), 2);
        // c ∈ C_1 is adjacent to a_0, so it lies in B_S and drops out.
        assert_eq!(domination_number(&g, &a, &set(9, &[0, 4])).unwrap(), 1);
        assert_eq!(domination_number(&g, &a, &set(9, &[3, 6])).unwrap(), 1);
    }

    #[test]
    fn domination_rejects_undominated() {
        // I = {0} in a graph where 2 hangs off 1: 2 is undominated, so the base check fails first.
        let g = Graph::path(3);
        assert!(domination_number(&g, &set(3, &[0]), &set(3, &[2])).is_err());
        let i = set(3, &[0, 2]);
        assert_eq!(domination_number(&g, &i, &set(3, &[1])).unwrap(), 1);
    }

    #[test]
    fn analyze_rs3() {
        let r = analyze(&rs3(2));
        assert_eq!((r.independence_number, r.star_number), (3, 2));
        assert_eq!(r.directories, vec![set(9, &[0, 1, 2])]);
        assert!(r.is_connected);
    }

    // Test-only oracle: maximum clique by plain recursion, without bounds.
    fn brute_clique(g: &Graph, cand: Vec<usize>, size: usize) -> usize {
        let mut best = size;
        for (idx, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[idx + 1..].iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            best = best.max(brute_clique(g, next, size + 1));
        }
        best
    }

    #[test]
    fn alpha_is_clique_number_of_complement_up_to_seven() {
        for n in 0..=7 {
            for g in crate::canon::enumerate_graphs(n).unwrap() {
                let co = g.complement();
                assert_eq!(independence_number(&g).0, brute_clique(&co, (0..n).collect(), 0), "{g:?}");
            }
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..14).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Graph::from_fn(n, |_, _| it.next().unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn report_invariants(g in arb_graph()) {
            let r = analyze(&g);
            prop_assert!(g.is_independent(&r.alpha_witness));
            prop_assert_eq!(r.alpha_witness.len(), r.independence_number);
            prop_assert_eq!(r.independence_number, brute_alpha(&g));
            if let Some(w) = &r.sigma_witness {
                prop_assert!(g.is_independent(&w.set));
                prop_assert!(w.set.is_subset(g.neighbors(w.vertex)));
                prop_assert_eq!(w.set.len(), r.star_number);
            } else {
                prop_assert_eq!(r.star_number, 0);
            }
            for d in &r.directories {
                prop_assert!(is_independent_dominating(&g, d));
                prop_assert_eq!(d.len(), r.independence_number);
                // Maximal: nothing outside can be added.
                prop_assert!(d.complement().iter().all(|v| !g.neighbors(v).is_disjoint(d)));
                for x in 0..g.order() {
                    prop_assert!(!address(&g, d, x).unwrap().is_empty());
                }
            }
            prop_assert_eq!(r.directories.is_empty(), r.star_number == 0);
        }

        #[test]
        fn exact_neighbourhood_of_full_sets_is_common_neighbourhood(g in arb_graph()) {
            let (sigma, _) = star_number(&g);
            if sigma > 0 {
                for d in directories(&g).unwrap() {
                    for s in independent_sets_of_size(&g, sigma).into_iter().filter(|s| s.is_subset(&d)) {
                        prop_assert_eq!(exact_neighborhood(&g, &d, &s).unwrap(), g.common_neighborhood(&s));
                    }
                }
            }
        }
    }
}
