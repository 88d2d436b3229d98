//! Ages, the cone/coneless partition of an age, and XY-homogeneity deciders
//! for finite graphs.
//!
//! Two independent routes decide HH-homogeneity:
//!
//! * [`decide_xy`] works with labelled local morphisms of the graph and asks
//!   whether each one extends.
//! * [`decide_hh_conditions`] works with isomorphism classes only: the classes
//!   with a coned copy must never also have a coneless copy, and must be closed
//!   upwards under surjective homomorphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::canon::{canonical_form, CanonicalCode, CANON_LIMIT};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::morphism::{extends_in, search_morphism, MorphismConstraints, MorphismKind, PartialMap};

/// Largest order [`decide_xy`] accepts.
pub const DECIDE_LIMIT: usize = 10;

/// One isomorphism type of induced subgraph, with its copies in the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgeClass {
    pub code: CanonicalCode,
    pub order: usize,
    #[serde(skip)]
    pub representative: Graph,
    /// Vertex sets of the host inducing this type, in lexicographic order.
    pub embeddings: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AgeOptions {
    /// Keep at most this many embeddings per class.
    pub embedding_cap: Option<usize>,
}

/// Every vertex subset of size `1..=k`, by size and then lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=k.min(n) {
        rec(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

struct Embedding {
    vertices: Vec<usize>,
    /// `perm[p]` indexes `vertices` at canonical position `p`.
    perm: Vec<usize>,
}

fn check_age_args(g: &Graph, k: usize) -> Result<()> {
    if k > CANON_LIMIT {
        return Err(Error::OrderTooLarge { order: k, limit: CANON_LIMIT });
    }
    if k > g.order() {
        return Err(Error::BadParams(format!("age size {k} exceeds graph order {}", g.order())));
    }
    Ok(())
}

fn embeddings_by_class(g: &Graph, k: usize) -> Result<BTreeMap<CanonicalCode, Vec<Embedding>>> {
    check_age_args(g, k)?;
    let mut classes: BTreeMap<CanonicalCode, Vec<Embedding>> = BTreeMap::new();
    for s in subsets(g.order(), k) {
        let (code, perm) = canonical_form(&g.induced_by_list(&s))?;
        classes.entry(code).or_default().push(Embedding { vertices: s, perm });
    }
    Ok(classes)
}

/// Isomorphism types of induced subgraphs on `1..=k` vertices, ordered by
/// size and then by canonical code.
pub fn age(g: &Graph, k: usize) -> Result<Vec<AgeClass>> {
    age_with(g, k, AgeOptions::default())
}

pub fn age_with(g: &Graph, k: usize, opts: AgeOptions) -> Result<Vec<AgeClass>> {
    let classes = embeddings_by_class(g, k)?;
    let mut out: Vec<AgeClass> = classes
        .into_iter()
        .map(|(code, embs)| {
            let cap = opts.embedding_cap.unwrap_or(usize::MAX);
            AgeClass {
                order: code.order(),
                representative: code.to_graph(),
                embeddings: embs
                    .iter()
                    .take(cap)
                    .map(|e| VertexSet::from_indices(g.order(), e.vertices.iter().copied()))
                    .collect(),
                code,
            }
        })
        .collect();
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.code.cmp(&b.code)));
    Ok(out)
}

/// A class with both a coned and a coneless copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub code: CanonicalCode,
    pub coned: Vec<usize>,
    pub cone: usize,
    pub coneless: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgePartition {
    pub k: usize,
    /// Classes with some copy that has a cone.
    pub kk: Vec<CanonicalCode>,
    /// Classes with some copy that has no cone.
    pub okk: Vec<CanonicalCode>,
    pub conflicts: Vec<Conflict>,
}

struct ClassCones {
    code: CanonicalCode,
    coned: Option<(usize, usize)>,
    coneless: Option<usize>,
    embeddings: Vec<Embedding>,
}

fn classify_cones(g: &Graph, k: usize) -> Result<Vec<ClassCones>> {
    let classes = embeddings_by_class(g, k)?;
    let mut out = Vec::new();
    for (code, embeddings) in classes {
        let mut coned = None;
        let mut coneless = None;
        for (idx, e) in embeddings.iter().enumerate() {
            let set = VertexSet::from_indices(g.order(), e.vertices.iter().copied());
            match g.common_neighborhood(&set).first() {
                Some(z) => {
                    coned.get_or_insert((idx, z));
                }
                None => {
                    coneless.get_or_insert(idx);
                }
            }
        }
        out.push(ClassCones {
            code,
            coned,
            coneless,
            embeddings,
        });
    }
    out.sort_by(|a, b| a.code.order().cmp(&b.code.order()).then_with(|| a.code.cmp(&b.code)));
    Ok(out)
}

pub fn kk_okk(g: &Graph, k: usize) -> Result<AgePartition> {
    let classes = classify_cones(g, k)?;
    Ok(partition_of(&classes, k))
}

fn partition_of(classes: &[ClassCones], k: usize) -> AgePartition {
    let mut p = AgePartition {
        k,
        kk: Vec::new(),
        okk: Vec::new(),
        conflicts: Vec::new(),
    };
    for c in classes {
        if c.coned.is_some() {
            p.kk.push(c.code.clone());
        }
        if c.coneless.is_some() {
            p.okk.push(c.code.clone());
        }
        if let (Some((i, z)), Some(j)) = (c.coned, c.coneless) {
            p.conflicts.push(Conflict {
                code: c.code.clone(),
                coned: c.embeddings[i].vertices.clone(),
                cone: z,
                coneless: c.embeddings[j].vertices.clone(),
            });
        }
    }
    p
}

/// `a ⪯ b`: some homomorphism from `a` onto `b`.
pub fn preceq(a: &Graph, b: &Graph) -> bool {
    search_morphism(a, b, &PartialMap::empty(), MorphismConstraints::SURJECTIVE)
        .expect("empty seed is always well-formed")
        .is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Conditions,
}

/// A local morphism of the host with no extension of the requested kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub map: PartialMap,
    /// A vertex the map cannot be extended to, when one is singled out.
    pub vertex: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogReport {
    pub x_kind: MorphismKind,
    pub y_kind: MorphismKind,
    pub method: Method,
    pub verdict: bool,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl Counterexample {
    /// Confirms the counterexample against the host: the map is a local
    /// morphism of kind `x` and has no extension of kind `y`.
    pub fn replays(&self, g: &Graph, x: MorphismKind, y: MorphismKind) -> bool {
        let local = match x {
            MorphismKind::H => self.map.is_local_hom(g, g),
            MorphismKind::M => self.map.is_local_mono(g, g),
            MorphismKind::I => self.map.is_local_iso(g, g),
            _ => false,
        };
        local && matches!(extends_in(g, &self.map, y), Ok(None))
    }
}

/// Local morphisms of kind `x` with the given domain, in lexicographic order
/// of image tuples.
fn for_each_local(g: &Graph, domain: &[usize], x: MorphismKind, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(g: &Graph, domain: &[usize], x: MorphismKind, img: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let i = img.len();
        if i == domain.len() {
            return visit(img);
        }
        for t in 0..g.order() {
            let ok = (0..i).all(|j| {
                let (u, v, s) = (domain[j], domain[i], img[j]);
                let edge_ok = !g.adjacent(u, v) || g.adjacent(s, t);
                match x {
                    MorphismKind::H => edge_ok,
                    MorphismKind::M => edge_ok && s != t,
                    _ => s != t && g.adjacent(u, v) == g.adjacent(s, t),
                }
            });
            if ok {
                img.push(t);
                let cont = rec(g, domain, x, img, visit);
                img.pop();
                if !cont {
                    return false;
                }
            }
        }
        true
    }
    rec(g, domain, x, &mut Vec::new(), visit)
}

fn pairs(domain: &[usize], img: &[usize]) -> PartialMap {
    PartialMap::new(domain.iter().copied().zip(img.iter().copied()).collect()).expect("domain is duplicate-free")
}

/// Decides whether every local `x`-morphism of `g` extends to a `y`-endomorphism.
///
/// HH and MM use one-point extension. For HH a failing extension at `v`
/// already fails on the restriction to `N(v) ∩ A`, so only domains with a
/// cone need to be enumerated and the first failure is still the least one in
/// the (size, domain, image) order. Every other pair runs a full extension
/// search per local morphism.
pub fn decide_xy(g: &Graph, x: MorphismKind, y: MorphismKind) -> Result<HomogReport> {
    use MorphismKind::*;
    if !matches!(x, H | M | I) {
        return Err(Error::BadParams(format!("source kind must be H, M or I, got {x}")));
    }
    if g.order() > DECIDE_LIMIT {
        return Err(Error::OrderTooLarge {
            order: g.order(),
            limit: DECIDE_LIMIT,
        });
    }
    let mut notes = Vec::new();
    if y == B {
        notes.push("B is searched as a bijective homomorphism; on a finite graph it is an automorphism, so B and A agree".into());
    }
    if y == E {
        notes.push("a surjective endomorphism of a finite graph is an automorphism".into());
    }
    let mut counterexample = None;
    let n = g.order();
    let mut err = None;
    'outer: for dom in subsets(n, n) {
        let set = VertexSet::from_indices(n, dom.iter().copied());
        let cones = g.common_neighborhood(&set);
        if (x, y) == (H, H) && cones.is_empty() {
            continue;
        }
        let mut found = None;
        for_each_local(g, &dom, x, &mut |img| {
            let failure = match (x, y) {
                (H, H) => {
                    let mut common = VertexSet::full(n);
                    for &t in img {
                        common.intersect_with(g.neighbors(t));
                    }
                    common.is_empty().then(|| (cones.first(), "the image has no cone".to_string()))
                }
                (M, M) => one_point_mono(g, &dom, img).map(|v| (Some(v), "no unused common neighbour for the image".to_string())),
                _ => match extends_in(g, &pairs(&dom, img), y) {
                    Ok(Some(_)) => None,
                    Ok(None) => Some((None, format!("no {y}-endomorphism extends the map"))),
                    Err(e) => {
                        err = Some(e);
                        return false;
                    }
                },
            };
            match failure {
                Some((v, reason)) => {
                    found = Some(Counterexample {
                        map: pairs(&dom, img),
                        vertex: v,
                        reason,
                    });
                    false
                }
                None => true,
            }
        });
        if let Some(e) = err.take() {
            return Err(e);
        }
        if found.is_some() {
            counterexample = found;
            break 'outer;
        }
    }
    Ok(HomogReport {
        x_kind: x,
        y_kind: y,
        method: Method::Direct,
        verdict: counterexample.is_none(),
        counterexample,
        notes,
    })
}

/// First vertex outside the domain that the local monomorphism cannot reach.
fn one_point_mono(g: &Graph, dom: &[usize], img: &[usize]) -> Option<usize> {
    let n = g.order();
    let used = VertexSet::from_indices(n, img.iter().copied());
    (0..n).filter(|v| !dom.contains(v)).find(|&v| {
        let mut cand = used.complement();
        for (&a, &t) in dom.iter().zip(img) {
            if g.adjacent(v, a) {
                cand.intersect_with(g.neighbors(t));
            }
        }
        cand.is_empty()
    })
}

/// Builds the local map sending copy `from` onto copy `to` through the class
/// representatives and a homomorphism `h` between them.
fn transfer(from: &Embedding, h: &[usize], to: &Embedding) -> PartialMap {
    let mut pos_of = vec![0; from.perm.len()];
    for (p, &i) in from.perm.iter().enumerate() {
        pos_of[i] = p;
    }
    let pairs = from
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, to.vertices[to.perm[h[pos_of[i]]]]))
        .collect();
    PartialMap::new(pairs).expect("embedding vertices are distinct")
}

/// HH-homogeneity via the age: no class is both coned and coneless, and every
/// class a coned class maps onto is coned. Ages are taken up to size `k`; use
/// `k = order(g)` for a complete verdict.
pub fn decide_hh_conditions(g: &Graph, k: usize) -> Result<HomogReport> {
    let classes = classify_cones(g, k)?;
    let mut notes = Vec::new();
    if k < g.order() {
        notes.push(format!("age truncated at size {k}; the verdict covers only those classes"));
    }
    let report = |counterexample: Option<Counterexample>, notes| HomogReport {
        x_kind: MorphismKind::H,
        y_kind: MorphismKind::H,
        method: Method::Conditions,
        verdict: counterexample.is_none(),
        counterexample,
        notes,
    };
    for c in &classes {
        if let (Some((i, z)), Some(j)) = (c.coned, c.coneless) {
            let from = &c.embeddings[i];
            let id: Vec<usize> = (0..from.perm.len()).collect();
            let map = transfer(from, &id, &c.embeddings[j]);
            return Ok(report(
                Some(Counterexample {
                    map,
                    vertex: Some(z),
                    reason: format!("class {} has a coned and a coneless copy", c.code),
                }),
                notes,
            ));
        }
    }
    let reps: Vec<Graph> = classes.iter().map(|c| c.code.to_graph()).collect();
    for (ai, a) in classes.iter().enumerate() {
        let Some((i, z)) = a.coned else { continue };
        for (bi, b) in classes.iter().enumerate() {
            if b.coned.is_some() || b.code.order() > a.code.order() {
                continue;
            }
            let h = search_morphism(&reps[ai], &reps[bi], &PartialMap::empty(), MorphismConstraints::SURJECTIVE)?;
            if let Some(h) = h {
                let j = b.coneless.expect("every class has some copy");
                let map = transfer(&a.embeddings[i], &h, &b.embeddings[j]);
                return Ok(report(
                    Some(Counterexample {
                        map,
                        vertex: Some(z),
                        reason: format!("coned class {} maps onto coneless class {}", a.code, b.code),
                    }),
                    notes,
                ));
            }
        }
    }
    Ok(report(None, notes))
}
