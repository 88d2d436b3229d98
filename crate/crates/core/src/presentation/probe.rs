//! Bounded witness search for cones, co-cones and mixed extension requirements.

use serde::{Deserialize, Serialize};

use super::{clique_block, zigzag, cantor_unpair, Family, Presentation};
use crate::error::{Error, Result};

/// Result of a bounded search for a vertex adjacent to all of `A` and none of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WitnessOutcome {
    Found { vertex: usize },
    /// Nothing below the budget. Says nothing about larger vertices.
    Exhausted { budget: usize },
    /// No witness exists at all, by a finite argument about the family.
    ProvenAbsent { certificate: String },
}

impl WitnessOutcome {
    pub fn vertex(&self) -> Option<usize> {
        match self {
            WitnessOutcome::Found { vertex } => Some(*vertex),
            _ => None,
        }
    }
}

fn is_witness(p: &Presentation, v: usize, a: &[usize], b: &[usize]) -> bool {
    !a.contains(&v) && !b.contains(&v) && a.iter().all(|&x| p.adjacent(v, x)) && b.iter().all(|&x| !p.adjacent(v, x))
}

/// A finite reason why no vertex of the whole countable graph can be a
/// witness, for the families where one is easy to state.
fn certificate(f: &Family, a: &[usize], b: &[usize]) -> Option<String> {
    match f {
        Family::Rs(n) => {
            let n = *n;
            (0..n)
                .all(|i| a.contains(&i))
                .then(|| format!("cone set contains the independent set a_0..a_{}, which has no cone", n - 1))
        }
        Family::KOmega => (!b.is_empty()).then(|| "every vertex is adjacent to every other".to_string()),
        Family::Null => (!a.is_empty()).then(|| "the graph has no edges".to_string()),
        Family::IOmegaKOmega => {
            let mut cliques: Vec<usize> = a.iter().map(|&x| cantor_unpair(x).0).collect();
            cliques.sort_unstable();
            cliques.dedup();
            if cliques.len() >= 2 {
                return Some(format!("cone set meets cliques {cliques:?}; no vertex sees two cliques"));
            }
            let c = *cliques.first()?;
            b.iter()
                .find(|&&x| cantor_unpair(x).0 == c)
                .map(|x| format!("any cone lies in clique {c}, which also contains co-cone member {x}"))
        }
        Family::UnionCliquesComplement => {
            let mut blocks: Vec<usize> = b.iter().map(|&x| clique_block(x)).collect();
            blocks.sort_unstable();
            blocks.dedup();
            if blocks.len() >= 2 {
                return Some(format!("co-cone set meets blocks {blocks:?}; a witness would lie in all of them"));
            }
            let blk = *blocks.first()?;
            if let Some(x) = a.iter().find(|&&x| clique_block(x) == blk) {
                return Some(format!("a witness lies in block {blk}, which contains cone member {x}"));
            }
            let in_block = b.iter().filter(|&&x| clique_block(x) == blk).count();
            (in_block == blk + 1).then(|| format!("block {blk} is entirely inside the co-cone set"))
        }
        Family::TwoWayPath => {
            let first = *a.first()?;
            let z = zigzag(first);
            let to_index = |z: i64| if z > 0 { (2 * z - 1) as usize } else { (-2 * z) as usize };
            let candidates = [z - 1, z + 1].map(to_index);
            let ok = candidates.iter().any(|&v| {
                !a.contains(&v)
                    && !b.contains(&v)
                    && a.iter().all(|&x| (zigzag(x) - zigzag(v)).abs() == 1)
                    && b.iter().all(|&x| (zigzag(x) - zigzag(v)).abs() != 1)
            });
            (!ok).then(|| format!("only the two path neighbours of {first} can be cones, and neither qualifies"))
        }
        _ => None,
    }
}

/// Least vertex below `budget`, outside `a ∪ b`, adjacent to every member of
/// `a` and to no member of `b`.
pub fn extension_witness(p: &Presentation, a: &[usize], b: &[usize], budget: usize) -> Result<WitnessOutcome> {
    if let Some(&x) = a.iter().find(|x| b.contains(x)) {
        return Err(Error::OverlappingSets(x));
    }
    if let Some(v) = (0..budget).find(|&v| is_witness(p, v, a, b)) {
        return Ok(WitnessOutcome::Found { vertex: v });
    }
    Ok(match certificate(&p.family, a, b) {
        Some(certificate) => WitnessOutcome::ProvenAbsent { certificate },
        None => WitnessOutcome::Exhausted { budget },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyKind {
    /// Every finite set has a cone.
    Triangle,
    /// Every finite set has a co-cone.
    Cocone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeFailure {
    pub cone: Vec<usize>,
    pub cocone: Vec<usize>,
    pub outcome: WitnessOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub presentation: String,
    pub property: String,
    pub set_size: usize,
    pub base: usize,
    pub budget: usize,
    pub checked: usize,
    pub failures: Vec<ProbeFailure>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn subsets_up_to(base: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, base: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        visit(cur);
        if cur.len() == k {
            return;
        }
        for v in start..base {
            cur.push(v);
            rec(v + 1, base, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, base, k, &mut Vec::new(), &mut visit);
}

/// Runs [`extension_witness`] on every nonempty subset of `0..base` with at
/// most `k` elements, as a cone set or as a co-cone set.
pub fn check_property_bounded(
    p: &Presentation,
    prop: PropertyKind,
    k: usize,
    base: usize,
    budget: usize,
) -> Result<PropertyReport> {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut err = None;
    subsets_up_to(base, k, |s| {
        if s.is_empty() || err.is_some() {
            return;
        }
        checked += 1;
        let (a, b): (&[usize], &[usize]) = match prop {
            PropertyKind::Triangle => (s, &[]),
            PropertyKind::Cocone => (&[], s),
        };
        match extension_witness(p, a, b, budget) {
            Ok(WitnessOutcome::Found { .. }) => {}
            Ok(outcome) => failures.push(ProbeFailure {
                cone: a.to_vec(),
                cocone: b.to_vec(),
                outcome,
            }),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(PropertyReport {
        presentation: p.name(),
        property: match prop {
            PropertyKind::Triangle => "triangle".into(),
            PropertyKind::Cocone => "cocone".into(),
        },
        set_size: k,
        base,
        budget,
        checked,
        failures,
    })
}

/// Runs [`extension_witness`] on every disjoint pair `(A, B)` of subsets of
/// `0..base` with `|A ∪ B| ≤ max_union`.
pub fn check_extension_pairs(p: &Presentation, max_union: usize, base: usize, budget: usize) -> Result<PropertyReport> {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut err = None;
    subsets_up_to(base, max_union, |s| {
        if err.is_some() {
            return;
        }
        for mask in 0u32..1 << s.len() {
            let a: Vec<usize> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let b: Vec<usize> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &v)| v).collect();
            checked += 1;
            match extension_witness(p, &a, &b, budget) {
                Ok(WitnessOutcome::Found { .. }) => {}
                Ok(outcome) => failures.push(ProbeFailure {
                    cone: a,
                    cocone: b,
                    outcome,
                }),
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(PropertyReport {
        presentation: p.name(),
        property: "extension".into(),
        set_size: max_union,
        base,
        budget,
        checked,
        failures,
    })
}
