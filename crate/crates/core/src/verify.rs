//! Verification suites for the directory lemmas, the independence-number
//! bound on the rs family and the agreement of the two HH deciders.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    address_unchecked, domination_number, exact_neighborhood_unchecked, independence_number,
    is_independent_dominating, star_number,
};
use crate::bitset::VertexSet;
use crate::canon::enumerate_graphs;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homogeneity::{decide_hh_conditions, decide_xy};
use crate::io::to_graph6;
use crate::morphism::MorphismKind;
use crate::presentation::{Family, Presentation};

/// Largest set of vertices checked by the cone-address clause.
pub const CONE_SET_CAP: usize = 4;
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteFailure {
    pub instance: String,
    pub clause: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<SuiteFailure>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            instances: 0,
            failures: Vec::new(),
            elapsed_ms: 0,
            seed: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    fn fail(&mut self, instance: &str, clause: &str, witness: String) {
        self.failures.push(SuiteFailure {
            instance: instance.into(),
            clause: clause.into(),
            witness,
        });
    }
}

fn require_base(g: &Graph, i: &VertexSet) -> Result<usize> {
    if !is_independent_dominating(g, i) {
        return Err(Error::NotADirectoryBase(format!("{i:?}")));
    }
    match star_number(g).0 {
        0 => Err(Error::StarNumberZero),
        s => Ok(s),
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            cur.push(items[idx]);
            rec(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks, for the directory base `i`:
///
/// * `K_S = N(S)` for every `S ⊆ i` with `|S| = σ`;
/// * no edge joins `K_S` and `K_T` for disjoint such `S`, `T`;
/// * for every set `X` of at most [`CONE_SET_CAP`] vertices that has a cone
///   `z` and contains a vertex `x` with a `σ`-sized address, `address(z)`
///   meets `address(x)`; when every member of `X` has a `σ`-sized address,
///   `address(z) ∩ address(X)` dominates `X` (a member of the set counts as
///   dominated by itself).
pub fn verify_directory_lemmas(g: &Graph, i: &VertexSet) -> Result<SuiteReport> {
    let sigma = require_base(g, i)?;
    let start = Instant::now();
    let name = to_graph6(g);
    let mut rep = SuiteReport::new("directory-lemmas");
    rep.instances = 1;
    let n = g.order();
    let dir = i.to_vec();
    let s_sets: Vec<VertexSet> = subsets_of_size(&dir, sigma)
        .into_iter()
        .map(|s| VertexSet::from_indices(n, s))
        .collect();
    let exact: Vec<VertexSet> = s_sets.iter().map(|s| exact_neighborhood_unchecked(g, i, s)).collect();
    for (s, k) in s_sets.iter().zip(&exact) {
        let common = g.common_neighborhood(s);
        if &common != k {
            rep.fail(&name, "K_S = N(S)", format!("S={s:?} K_S={k:?} N(S)={common:?}"));
        }
    }
    for a in 0..s_sets.len() {
        for b in a + 1..s_sets.len() {
            if !s_sets[a].is_disjoint(&s_sets[b]) {
                continue;
            }
            for v in &exact[a] {
                if let Some(w) = g.neighbors(v).intersection(&exact[b]).first() {
                    rep.fail(
                        &name,
                        "no edges between K_S and K_T for disjoint S, T",
                        format!("S={:?} T={:?} edge {v}-{w}", s_sets[a], s_sets[b]),
                    );
                }
            }
        }
    }

    let addr: Vec<VertexSet> = (0..n).map(|v| address_unchecked(g, i, v)).collect();
    let all: Vec<usize> = (0..n).collect();
    let mut x = Vec::new();
    cone_sets(g, &all, 0, &mut x, VertexSet::full(n), &mut |xs, cones| {
        let full: Vec<bool> = xs.iter().map(|&v| addr[v].len() == sigma).collect();
        if !full.iter().any(|&f| f) {
            return;
        }
        let mut union = VertexSet::empty(n);
        for &v in xs {
            union.union_with(&addr[v]);
        }
        for z in cones {
            for (&v, &f) in xs.iter().zip(&full) {
                if f && addr[z].is_disjoint(&addr[v]) {
                    rep.fail(&name, "cone address meets a sigma-address", format!("X={xs:?} x={v} z={z}"));
                }
            }
            let d = addr[z].intersection(&union);
            if full.iter().all(|&f| f) && !xs.iter().all(|&v| d.contains(v) || !g.neighbors(v).is_disjoint(&d)) {
                rep.fail(&name, "cone address dominates X", format!("X={xs:?} z={z}"));
            }
        }
    });
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(rep)
}

fn cone_sets(
    g: &Graph,
    pool: &[usize],
    start: usize,
    cur: &mut Vec<usize>,
    cones: VertexSet,
    visit: &mut dyn FnMut(&[usize], &VertexSet),
) {
    if !cur.is_empty() {
        visit(cur, &cones);
    }
    if cur.len() == CONE_SET_CAP {
        return;
    }
    for idx in start..pool.len() {
        let next = cones.intersection(g.neighbors(pool[idx]));
        if next.is_empty() {
            continue;
        }
        cur.push(pool[idx]);
        cone_sets(g, pool, idx + 1, cur, next, visit);
        cur.pop();
    }
}

/// Erdős–Rényi graph with at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, max_order: usize) -> Graph {
    loop {
        let n = rng.gen_range(5..=max_order);
        let p = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
        let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
        if g.edge_count() > 0 {
            return g;
        }
    }
}

/// Runs [`verify_directory_lemmas`] on `count` random graphs, each with its
/// lexicographically least maximum independent set as the base (a maximum
/// independent set is always dominating).
pub fn verify_directory_lemmas_random(count: usize, max_order: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..count).map(|_| random_graph(&mut rng, max_order)).collect();
    let parts: Vec<SuiteReport> = graphs
        .par_iter()
        .map(|g| {
            let (_, i) = independence_number(g);
            verify_directory_lemmas(g, &i).expect("maximum independent sets are directories")
        })
        .collect();
    let mut rep = SuiteReport::new("directory-lemmas");
    for p in parts {
        rep.absorb(p);
    }
    rep.seed = Some(seed);
    rep.notes.push(format!("{count} Erdős–Rényi graphs, 5..={max_order} vertices, p in {{0.2, 0.5, 0.8}}"));
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    rep
}

/// For all `S, T ⊆ i` of size `σ` that intersect, and every `v ∈ K_S`,
/// checks `|N(v) ∩ K_T| ≥ t`. On a finite graph a shortfall is a finding,
/// not a contradiction.
pub fn verify_neighbor_richness(g: &Graph, i: &VertexSet, t: usize) -> Result<SuiteReport> {
    let sigma = require_base(g, i)?;
    let start = Instant::now();
    let name = to_graph6(g);
    let mut rep = SuiteReport::new("richness");
    rep.instances = 1;
    let n = g.order();
    let sets: Vec<VertexSet> = subsets_of_size(&i.to_vec(), sigma)
        .into_iter()
        .map(|s| VertexSet::from_indices(n, s))
        .collect();
    for s in &sets {
        let ks = exact_neighborhood_unchecked(g, i, s);
        for tt in &sets {
            if s.is_disjoint(tt) {
                continue;
            }
            let kt = exact_neighborhood_unchecked(g, i, tt);
            for v in &ks {
                let got = g.neighbors(v).intersection_len(&kt);
                if got < t {
                    rep.fail(&name, "|N(v) ∩ K_T| >= t", format!("S={s:?} T={tt:?} v={v} count={got} t={t}"));
                }
            }
        }
    }
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TriangleDom2 {
    Found { triangle: [usize; 3], value: usize },
    Absent,
    /// The search presumes `σ ≥ 2`.
    PreconditionNote { star_number: usize },
}

/// Least triangle (lexicographically) whose directory domination number is 2.
pub fn find_triangle_dom2(g: &Graph, i: &VertexSet) -> Result<TriangleDom2> {
    if !is_independent_dominating(g, i) {
        return Err(Error::NotADirectoryBase(format!("{i:?}")));
    }
    let sigma = star_number(g).0;
    if sigma < 2 {
        return Ok(TriangleDom2::PreconditionNote { star_number: sigma });
    }
    let n = g.order();
    for a in 0..n {
        for b in g.neighbors(a).iter().filter(|&b| b > a) {
            for c in g.neighbors(a).intersection(g.neighbors(b)).iter().filter(|&c| c > b) {
                let d = domination_number(g, i, &VertexSet::from_indices(n, [a, b, c]))?;
                if d == 2 {
                    return Ok(TriangleDom2::Found { triangle: [a, b, c], value: d });
                }
            }
        }
    }
    Ok(TriangleDom2::Absent)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBoundRow {
    pub n: usize,
    pub parts: usize,
    pub alpha: usize,
    pub sigma: usize,
    /// `2σ + ⌈σ/2⌉ − 1`.
    pub bound: usize,
}

/// `α`, `σ` and the bound for the rs(n) truncation with `parts` vertices in
/// every clique part.
pub fn alpha_bound_row(n: usize, parts: usize) -> Result<AlphaBoundRow> {
    let p = Presentation::new(Family::Rs(n))?;
    let g = p.truncate(n + n * parts);
    let alpha = independence_number(&g).0;
    let sigma = star_number(&g).0;
    Ok(AlphaBoundRow {
        n,
        parts,
        alpha,
        sigma,
        bound: 2 * sigma + sigma.div_ceil(2) - 1,
    })
}

/// For each `n`, checks `α < bound` on rs(n) truncations with two different
/// part sizes, that the two agree, and that `α = bound − 1` exactly when `n = 3`.
pub fn verify_alpha_bound_family(range: std::ops::RangeInclusive<usize>, parts: [usize; 2]) -> Result<(SuiteReport, Vec<AlphaBoundRow>)> {
    if *range.start() < 3 || *range.end() > 8 || parts.iter().any(|&m| m < 2) {
        return Err(Error::BadParams("need 3 <= n <= 8 and part sizes >= 2".into()));
    }
    let start = Instant::now();
    let mut rep = SuiteReport::new("alpha-bound");
    let mut rows = Vec::new();
    for n in range {
        let r0 = alpha_bound_row(n, parts[0])?;
        let r1 = alpha_bound_row(n, parts[1])?;
        let inst = format!("rs:{n}");
        rep.instances += 1;
        if (r0.alpha, r0.sigma) != (r1.alpha, r1.sigma) {
            rep.fail(&inst, "independent of part size", format!("{r0:?} vs {r1:?}"));
        }
        if r0.alpha >= r0.bound {
            rep.fail(&inst, "alpha < 2σ+⌈σ/2⌉−1", format!("{r0:?}"));
        }
        if (r0.alpha + 1 == r0.bound) != (n == 3) {
            rep.fail(&inst, "tight exactly at n = 3", format!("{r0:?}"));
        }
        rows.push(r0);
    }
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok((rep, rows))
}

/// Per-order counts of the cross-validation run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCounts {
    pub order: usize,
    pub classes: usize,
    pub hh_positive: usize,
}

/// Over every isomorphism class with `1..=n_max` vertices: the two HH deciders
/// agree, every negative verdict's counterexample replays, and for HH graphs
/// each `N(S)` with `1 ≤ |S| ≤ 2` induces an HH graph.
pub fn cross_validate_hh(n_max: usize) -> Result<(SuiteReport, Vec<CrossCounts>)> {
    if n_max > 7 {
        return Err(Error::OrderTooLarge { order: n_max, limit: 7 });
    }
    let start = Instant::now();
    let mut rep = SuiteReport::new("cross-hh");
    let mut counts = Vec::new();
    for n in 1..=n_max {
        let graphs: Vec<Graph> = enumerate_graphs(n)?.collect();
        let parts: Vec<(bool, SuiteReport)> = graphs.par_iter().map(|g| cross_one(g)).collect::<Result<_>>()?;
        let mut c = CrossCounts {
            order: n,
            classes: graphs.len(),
            hh_positive: 0,
        };
        for (hh, p) in parts {
            c.hh_positive += hh as usize;
            rep.absorb(p);
        }
        counts.push(c);
    }
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok((rep, counts))
}

fn cross_one(g: &Graph) -> Result<(bool, SuiteReport)> {
    use MorphismKind::H;
    let name = to_graph6(g);
    let mut rep = SuiteReport::new("cross-hh");
    rep.instances = 1;
    let direct = decide_xy(g, H, H)?;
    let cond = decide_hh_conditions(g, g.order())?;
    if direct.verdict != cond.verdict {
        rep.fail(
            &name,
            "direct and conditions verdicts agree",
            format!("direct={} conditions={} ({:?} / {:?})", direct.verdict, cond.verdict, direct.counterexample, cond.counterexample),
        );
    }
    for r in [&direct, &cond] {
        if let Some(cx) = &r.counterexample {
            if !cx.replays(g, H, H) {
                rep.fail(&name, "counterexample replays", format!("{cx:?}"));
            }
        }
    }
    if direct.verdict {
        let n = g.order();
        for a in 0..n {
            for b in a..n {
                let s = VertexSet::from_indices(n, [a, b]);
                let ns = g.common_neighborhood(&s);
                if ns.is_empty() {
                    continue;
                }
                let (h, _) = g.induced_subgraph(&ns)?;
                if !decide_xy(&h, H, H)?.verdict {
                    rep.fail(&name, "N(S) induces an HH graph", format!("S={s:?} N(S)={ns:?}"));
                }
            }
        }
    }
    Ok((direct.verdict, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs3(parts: usize) -> Graph {
        Presentation::new(Family::Rs(3)).unwrap().truncate(3 + 3 * parts)
    }

    #[test]
    fn rs3_directory_lemmas_hold() {
        for parts in 1..=3 {
            let g = rs3(parts);
            let rep = verify_directory_lemmas(&g, &VertexSet::from_indices(g.order(), 0..3)).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }

    #[test]
    fn non_dominating_base_rejected() {
        let g = Graph::path(4);
        let i = VertexSet::from_indices(4, [0]);
        assert!(matches!(verify_directory_lemmas(&g, &i), Err(Error::NotADirectoryBase(_))));
    }

    #[test]
    fn random_suite_small_run() {
        let rep = verify_directory_lemmas_random(50, 20, 7);
        assert_eq!(rep.instances, 50);
        assert!(rep.passed(), "{:?}", rep.failures);
        // Same seed, same graphs.
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_graph(&mut a, 30), random_graph(&mut b, 30));
    }

    #[test]
    fn richness_on_rs3() {
        let m = 3;
        let g = rs3(m);
        let i = VertexSet::from_indices(g.order(), 0..3);
        assert!(verify_neighbor_richness(&g, &i, 1).unwrap().passed());
        assert!(verify_neighbor_richness(&g, &i, m - 1).unwrap().passed());
        // For S != T all m vertices of the other part are neighbours, but
        // within its own part a vertex only sees m - 1 others.
        let rep = verify_neighbor_richness(&g, &i, m).unwrap();
        assert_eq!(rep.failures.len(), 3 * m);
        for f in &rep.failures {
            let (s, t) = f.witness.split_once(" T=").unwrap();
            assert!(t.starts_with(&s[2..]), "{}", f.witness);
        }
    }

    #[test]
    fn triangle_dom2() {
        let g = rs3(2);
        let i = VertexSet::from_indices(g.order(), 0..3);
        assert_eq!(
            find_triangle_dom2(&g, &i).unwrap(),
            TriangleDom2::Found { triangle: [3, 4, 5], value: 2 }
        );
        let k4 = Graph::complete(4);
        assert_eq!(
            find_triangle_dom2(&k4, &VertexSet::singleton(4, 0)).unwrap(),
            TriangleDom2::PreconditionNote { star_number: 1 }
        );
        let c6 = Graph::cycle(6);
        assert_eq!(find_triangle_dom2(&c6, &VertexSet::from_indices(6, [0, 2, 4])).unwrap(), TriangleDom2::Absent);
    }

    #[test]
    fn alpha_bound_rows() {
        let want = [(3, 3, 2, 4), (4, 4, 3, 7), (5, 5, 4, 9), (6, 6, 5, 12)];
        for (n, alpha, sigma, bound) in want {
            let r = alpha_bound_row(n, 2).unwrap();
            assert_eq!((r.n, r.alpha, r.sigma, r.bound), (n, alpha, sigma, bound));
        }
        let (rep, _) = verify_alpha_bound_family(3..=6, [2, 3]).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verify_alpha_bound_family(2..=4, [2, 3]).is_err());
    }

    #[test]
    fn cross_validation_small() {
        let (rep, counts) = cross_validate_hh(5).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(counts.iter().map(|c| c.classes).sum::<usize>(), 52);
        assert_eq!(rep.instances, 52);
    }
}
