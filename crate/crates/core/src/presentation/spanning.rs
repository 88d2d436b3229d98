//! Greedy construction of a Rado-style spanning subgraph from cone witnesses.
//!
//! Host vertices `0..n` form the core. Stage `j` places core vertex `j` (if a
//! witness has not already claimed it) and then serves every requirement
//! `(A, B)` with `A ∪ B ⊆ 0..=j`, `j ∈ A ∪ B` and `|A ∪ B|` bounded, in order
//! of `(|A ∪ B|, A ∪ B, A)`. Each requirement gets a fresh witness: the least
//! unplaced host vertex that is a cone over `A`. Only the edges from the
//! witness to `A` are selected, so the witness is automatically a co-cone over
//! `B` in the selected subgraph. Cones alone suffice because dropping host
//! edges is allowed in a spanning subgraph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{extension_witness, Presentation, WitnessOutcome};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_REQUIREMENT: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirement {
    pub cone: Vec<usize>,
    pub cocone: Vec<usize>,
    pub witness: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadoConstruction {
    pub host: String,
    pub core: usize,
    pub max_requirement: usize,
    /// Host vertices in placement order.
    pub placed: Vec<usize>,
    pub selected_edges: Vec<(usize, usize)>,
    pub schedule: Vec<Requirement>,
}

impl RadoConstruction {
    /// Replays the construction against the host oracle. Returns the list of
    /// violated invariants (empty when the construction is sound).
    pub fn verify(&self, host: &Presentation) -> Vec<String> {
        let mut problems = Vec::new();
        let placed: BTreeSet<usize> = self.placed.iter().copied().collect();
        if placed.len() != self.placed.len() {
            problems.push("a vertex was placed twice".into());
        }
        if let Some(v) = (0..self.core).find(|v| !placed.contains(v)) {
            problems.push(format!("core vertex {v} was never placed"));
        }
        let edges: BTreeSet<(usize, usize)> = self.selected_edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for &(u, v) in &edges {
            if !host.adjacent(u, v) {
                problems.push(format!("selected edge {u}-{v} is not a host edge"));
            }
            if !placed.contains(&u) || !placed.contains(&v) {
                problems.push(format!("selected edge {u}-{v} leaves the placed set"));
            }
        }
        let has = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
        let mut served = BTreeSet::new();
        for r in &self.schedule {
            let w = r.witness;
            if !placed.contains(&w) || r.cone.contains(&w) || r.cocone.contains(&w) {
                problems.push(format!("witness {w} of {:?}/{:?} is misplaced", r.cone, r.cocone));
            }
            if let Some(a) = r.cone.iter().find(|&&a| !has(w, a)) {
                problems.push(format!("witness {w} misses cone member {a}"));
            }
            if let Some(b) = r.cocone.iter().find(|&&b| has(w, b)) {
                problems.push(format!("witness {w} is joined to co-cone member {b}"));
            }
            served.insert((r.cone.clone(), r.cocone.clone()));
        }
        for (a, b) in requirements(self.core, self.max_requirement) {
            if !served.contains(&(a.clone(), b.clone())) {
                problems.push(format!("requirement {a:?}/{b:?} over the core was not served"));
                break;
            }
        }
        problems
    }
}

/// Requirements of stage `j`, in service order.
fn stage_requirements(j: usize, max_req: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut unions: Vec<Vec<usize>> = Vec::new();
    fn rec(start: usize, j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut u = cur.clone();
        u.push(j);
        out.push(u);
        if left == 0 {
            return;
        }
        for v in start..j {
            cur.push(v);
            rec(v + 1, j, left - 1, cur, out);
            cur.pop();
        }
    }
    if max_req > 0 {
        rec(0, j, max_req - 1, &mut Vec::new(), &mut unions);
    }
    unions.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let mut out = Vec::new();
    for u in unions {
        let mut splits: Vec<(Vec<usize>, Vec<usize>)> = (0u32..1 << u.len())
            .map(|mask| {
                let a = u.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                let b = u.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &v)| v).collect();
                (a, b)
            })
            .collect();
        splits.sort();
        out.extend(splits);
    }
    out
}

fn requirements(core: usize, max_req: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..core).flat_map(move |j| stage_requirements(j, max_req))
}

pub fn spanning_rado(p: &Presentation, n: usize, budget: usize) -> Result<RadoConstruction> {
    spanning_rado_with(p, n, budget, DEFAULT_MAX_REQUIREMENT)
}

pub fn spanning_rado_with(p: &Presentation, n: usize, budget: usize, max_req: usize) -> Result<RadoConstruction> {
    let mut c = RadoConstruction {
        host: p.name(),
        core: n,
        max_requirement: max_req,
        placed: Vec::new(),
        selected_edges: Vec::new(),
        schedule: Vec::new(),
    };
    let mut is_placed = vec![false; budget.max(n)];
    for j in 0..n {
        if !is_placed[j] {
            is_placed[j] = true;
            c.placed.push(j);
        }
        for (a, b) in stage_requirements(j, max_req) {
            let w = (0..budget).find(|&v| !is_placed[v] && a.iter().all(|&x| p.adjacent(v, x)));
            let Some(w) = w else {
                let proven_absent =
                    matches!(extension_witness(p, &a, &[], budget)?, WitnessOutcome::ProvenAbsent { .. });
                return Err(Error::BudgetExhausted {
                    cone: a,
                    cocone: b,
                    budget,
                    proven_absent,
                });
            };
            is_placed[w] = true;
            c.placed.push(w);
            c.selected_edges.extend(a.iter().map(|&x| (x.min(w), x.max(w))));
            c.schedule.push(Requirement {
                cone: a,
                cocone: b,
                witness: w,
            });
        }
    }
    c.selected_edges.sort_unstable();
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    #[test]
    fn empty_construction() {
        let c = spanning_rado(&p("rado_bit"), 0, 16).unwrap();
        assert!(c.placed.is_empty() && c.schedule.is_empty());
        assert!(c.verify(&p("rado_bit")).is_empty());
    }

    #[test]
    fn stage_order() {
        let reqs = stage_requirements(1, 3);
        assert_eq!(
            reqs,
            vec![
                (vec![], vec![1]),
                (vec![1], vec![]),
                (vec![], vec![0, 1]),
                (vec![0], vec![1]),
                (vec![0, 1], vec![]),
                (vec![1], vec![0]),
            ]
        );
        assert_eq!(requirements(4, 3).count(), 2 + 6 + 18 + 38);
    }

    #[test]
    fn rado_bit_spans() {
        let host = p("rado_bit");
        let c = spanning_rado(&host, 8, 1 << 16).unwrap();
        assert!(c.placed.len() >= 8);
        assert_eq!(c.verify(&host), Vec::<String>::new());
    }

    #[test]
    fn rs3_fails_at_its_directory() {
        match spanning_rado(&p("rs:3"), 6, 1 << 12) {
            Err(Error::BudgetExhausted { cone, proven_absent, .. }) => {
                assert_eq!(cone, vec![0, 1, 2]);
                assert!(proven_absent);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn verify_catches_tampering() {
        let host = p("rado_bit");
        let mut c = spanning_rado(&host, 4, 1 << 12).unwrap();
        c.selected_edges.push((2, 3));
        assert!(!c.verify(&host).is_empty());
        let mut c = spanning_rado(&host, 4, 1 << 12).unwrap();
        let a = c.schedule[3].cone[0];
        c.schedule[3].cocone.push(a);
        assert!(!c.verify(&host).is_empty());
    }
}
