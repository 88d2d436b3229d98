//! Evidence-graded MB classification probes on truncations.
//!
//! Up to bimorphism-equivalence an MB graph is `K_ω`, `I_ω[K_ω]`, the Rado
//! graph, or the complement of one of these. The probes below look for
//! patterns of each case on two truncation sizes; nothing they report is a
//! proof about the infinite graph.

use serde::{Deserialize, Serialize};

use super::{check_property_bounded, Presentation, PropertyKind};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MbVerdict {
    KOmega,
    /// The edgeless graph `I_ω`.
    Null,
    IOmegaOfKOmega,
    KOmegaOfIOmega,
    Rado,
    NotMbEvidence,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub presentation: String,
    pub budget: usize,
    pub verdict: MbVerdict,
    pub evidence: Vec<String>,
}

const PROBED_VERTICES: usize = 8;

/// Component sizes when every component is a clique.
fn clique_components(g: &Graph) -> Option<Vec<usize>> {
    let comps = g.components();
    comps.iter().all(|c| g.is_clique(c)).then(|| {
        let mut of = vec![0; g.order()];
        for c in &comps {
            for v in c {
                of[v] = c.len();
            }
        }
        of
    })
}

/// Clique unions whose component count and every probed clique keep growing.
fn growing_clique_union(small: &Graph, large: &Graph) -> Option<String> {
    let s = clique_components(small)?;
    let l = clique_components(large)?;
    let (cs, cl) = (small.components().len(), large.components().len());
    let probed = PROBED_VERTICES.min(small.order());
    if cl > cs && (0..probed).all(|v| l[v] > s[v]) {
        Some(format!(
            "truncations {} and {} are disjoint unions of cliques; components {cs} -> {cl}; cliques of vertices 0..{probed} all grow",
            small.order(),
            large.order()
        ))
    } else {
        None
    }
}

pub fn classify_mb(p: &Presentation, budget: usize) -> Result<Classification> {
    let half = budget / 2;
    let small = p.truncate(half);
    let large = p.truncate(budget);
    let mut evidence = Vec::new();
    let done = |verdict, evidence| Classification {
        presentation: p.name(),
        budget,
        verdict,
        evidence,
    };

    let n = large.order();
    if n >= 2 && large.edge_count() == n * (n - 1) / 2 {
        evidence.push(format!("truncation {n} is complete"));
        return Ok(done(MbVerdict::KOmega, evidence));
    }
    if n >= 2 && large.edge_count() == 0 {
        evidence.push(format!("truncation {n} is edgeless"));
        return Ok(done(MbVerdict::Null, evidence));
    }

    if let Some(e) = growing_clique_union(&small, &large) {
        evidence.push(e);
        return Ok(done(MbVerdict::IOmegaOfKOmega, evidence));
    }
    if let Some(e) = growing_clique_union(&small.complement(), &large.complement()) {
        evidence.push(format!("complement: {e}"));
        return Ok(done(MbVerdict::KOmegaOfIOmega, evidence));
    }

    let probed = PROBED_VERTICES.min(small.order());
    for v in 0..probed {
        let (d0, d1) = (small.degree(v), large.degree(v));
        let (c0, c1) = (small.codegree(v), large.codegree(v));
        if d0 == d1 || c0 == c1 {
            let what = if d0 == d1 { ("degree", d0) } else { ("codegree", c0) };
            evidence.push(format!(
                "vertex {v} has {} {} at both truncations {half} and {budget}; MB graphs other than K_ω and I_ω have infinite degree and codegree (heuristic)",
                what.0, what.1
            ));
            return Ok(done(MbVerdict::NotMbEvidence, evidence));
        }
    }

    let tri = check_property_bounded(p, PropertyKind::Triangle, 3, PROBED_VERTICES, budget)?;
    let co = check_property_bounded(p, PropertyKind::Cocone, 3, PROBED_VERTICES, budget)?;
    if tri.passed() && co.passed() {
        evidence.push(format!(
            "every set of at most 3 of the first {PROBED_VERTICES} vertices has a cone and a co-cone below {budget} ({} + {} sets)",
            tri.checked, co.checked
        ));
        return Ok(done(MbVerdict::Rado, evidence));
    }
    evidence.push(format!(
        "no probe matched; {} cone and {} co-cone failures",
        tri.failures.len(),
        co.failures.len()
    ));
    Ok(done(MbVerdict::Unknown, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(s: &str) -> MbVerdict {
        classify_mb(&Presentation::parse(s).unwrap(), 512).unwrap().verdict
    }

    #[test]
    fn built_ins() {
        assert_eq!(verdict("k_omega"), MbVerdict::KOmega);
        assert_eq!(verdict("null"), MbVerdict::Null);
        assert_eq!(verdict("i_omega_k_omega"), MbVerdict::IOmegaOfKOmega);
        assert_eq!(verdict("complement:i_omega_k_omega"), MbVerdict::KOmegaOfIOmega);
        assert_eq!(verdict("rado_bit"), MbVerdict::Rado);
        assert_eq!(verdict("two_way_path"), MbVerdict::NotMbEvidence);
    }

    #[test]
    fn rs_and_clique_union_are_not_mb() {
        // Clique vertices of rs have codegree 1 in every truncation.
        assert_eq!(verdict("rs:3"), MbVerdict::NotMbEvidence);
        assert_eq!(verdict("union_cliques_complement"), MbVerdict::NotMbEvidence);
    }
}
