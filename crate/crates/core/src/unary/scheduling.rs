use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Jobs `0..n` with durations, relative deadlines and a horizon. A deadline
/// `r` on `(j1, j2)` demands `t(j1) <= t(j2) + r`; pairs without an entry are
/// unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchedulingInstance {
    pub durations: Vec<usize>,
    #[serde(with = "deadline_triples")]
    pub deadlines: BTreeMap<(usize, usize), i64>,
    pub horizon: usize,
}

mod deadline_triples {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Triple {
        first: usize,
        second: usize,
        r: i64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), i64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&(first, second), &r)| Triple { first, second, r }).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), i64>, D::Error> {
        Ok(Vec::<Triple>::deserialize(d)?.into_iter().map(|t| ((t.first, t.second), t.r)).collect())
    }
}

impl SchedulingInstance {
    pub fn job_count(&self) -> usize {
        self.durations.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }
}

/// One inequality of the difference system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DifferenceConstraint {
    /// `t(j) >= 0`
    Start(usize),
    /// `t(j) + d(j) <= horizon`
    Finish(usize),
    /// `t(j1) <= t(j2) + r`
    Deadline(usize, usize),
}

/// Constraints whose weights sum to a negative number around a cycle, so
/// no schedule satisfies all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeCycle {
    pub constraints: Vec<DifferenceConstraint>,
}

impl NegativeCycle {
    pub fn weight(&self, inst: &SchedulingInstance) -> i64 {
        self.constraints.iter().map(|&c| edge_of(inst, c).2).sum()
    }

    /// Consecutive constraints chain through shared variables and the total
    /// weight is negative.
    pub fn verify(&self, inst: &SchedulingInstance) -> bool {
        let edges: Vec<_> = self.constraints.iter().map(|&c| edge_of(inst, c)).collect();
        !edges.is_empty()
            && edges.iter().zip(edges.iter().cycle().skip(1)).all(|(a, b)| a.1 == b.0)
            && self.weight(inst) < 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleOutcome {
    Feasible(Vec<i64>),
    Infeasible(NegativeCycle),
}

/// Node `n` is the origin `z` with `t(z) = 0`. An edge `u -> v` of weight `w`
/// encodes `x_v <= x_u + w`.
fn edge_of(inst: &SchedulingInstance, c: DifferenceConstraint) -> (usize, usize, i64) {
    let z = inst.job_count();
    match c {
        DifferenceConstraint::Start(j) => (j, z, 0),
        DifferenceConstraint::Finish(j) => (z, j, inst.horizon as i64 - inst.durations[j] as i64),
        DifferenceConstraint::Deadline(j1, j2) => (j2, j1, inst.deadlines[&(j1, j2)]),
    }
}

fn constraints(inst: &SchedulingInstance) -> Vec<DifferenceConstraint> {
    let mut out = Vec::new();
    for j in 0..inst.job_count() {
        out.push(DifferenceConstraint::Start(j));
        out.push(DifferenceConstraint::Finish(j));
    }
    out.extend(inst.deadlines.keys().map(|&(a, b)| DifferenceConstraint::Deadline(a, b)));
    out
}

/// Bellman-Ford from the origin; a relaxation in round `n + 1` exposes a
/// negative cycle.
pub fn solve_scheduling(inst: &SchedulingInstance) -> ScheduleOutcome {
    let n = inst.job_count() + 1;
    let z = n - 1;
    let cons = constraints(inst);
    let edges: Vec<_> = cons.iter().map(|&c| edge_of(inst, c)).collect();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    dist[z] = Some(0);
    let mut changed_at = None;
    for _ in 0..n {
        changed_at = None;
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            if let Some(du) = dist[u] {
                if dist[v].is_none_or(|dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    pred[v] = Some(i);
                    changed_at = Some(v);
                }
            }
        }
        if changed_at.is_none() {
            break;
        }
    }
    if let Some(mut v) = changed_at {
        // walk back n steps to land on the cycle
        for _ in 0..n {
            v = edges[pred[v].expect("relaxed vertex has a predecessor")].0;
        }
        let start = v;
        let mut cycle = Vec::new();
        loop {
            let e = pred[v].expect("cycle vertex has a predecessor");
            cycle.push(cons[e]);
            v = edges[e].0;
            if v == start {
                break;
            }
        }
        cycle.reverse();
        return ScheduleOutcome::Infeasible(NegativeCycle { constraints: cycle });
    }
    let base = dist[z].expect("origin is reached");
    ScheduleOutcome::Feasible((0..n - 1).map(|j| dist[j].expect("every job is reached") - base).collect())
}

/// Direct re-check of every constraint.
pub fn check_schedule(inst: &SchedulingInstance, t: &[i64]) -> bool {
    t.len() == inst.job_count()
        && t.iter().zip(&inst.durations).all(|(&s, &d)| s >= 0 && s + d as i64 <= inst.horizon as i64)
        && inst.deadlines.iter().all(|(&(a, b), &r)| t[a] <= t[b] + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(durations: &[usize], deadlines: &[((usize, usize), i64)], horizon: usize) -> SchedulingInstance {
        SchedulingInstance { durations: durations.to_vec(), deadlines: deadlines.iter().copied().collect(), horizon }
    }

    /// Exhaustive search over start times in `0..=horizon`.
    fn brute(inst: &SchedulingInstance) -> bool {
        let k = inst.job_count();
        let h = inst.horizon as i64 + 1;
        (0..h.pow(k as u32)).any(|code| {
            let t: Vec<i64> = (0..k).map(|j| code / h.pow(j as u32) % h).collect();
            check_schedule(inst, &t)
        })
    }

    #[test]
    fn two_job_instance() {
        let i = inst(&[2, 1], &[((0, 1), -2)], 3);
        match solve_scheduling(&i) {
            ScheduleOutcome::Feasible(t) => assert!(check_schedule(&i, &t)),
            other => panic!("{other:?}"),
        }
        assert!(brute(&i));
        assert!(check_schedule(&i, &[0, 2]));
    }

    #[test]
    fn long_job_is_infeasible() {
        let i = inst(&[5], &[], 3);
        match solve_scheduling(&i) {
            ScheduleOutcome::Infeasible(c) => assert!(c.verify(&i), "{c:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_deadlines_are_infeasible() {
        let i = inst(&[0, 0], &[((0, 1), -1), ((1, 0), -1)], 10);
        match solve_scheduling(&i) {
            ScheduleOutcome::Infeasible(c) => {
                assert!(c.verify(&i));
                assert_eq!(c.weight(&i), -2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut seed = 7u64;
        let mut next = |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for _ in 0..300 {
            let k = 1 + next(3) as usize;
            let durations: Vec<usize> = (0..k).map(|_| next(3) as usize).collect();
            let mut deadlines = Vec::new();
            for a in 0..k {
                for b in 0..k {
                    if a != b && next(2) == 0 {
                        deadlines.push(((a, b), next(5) as i64 - 3));
                    }
                }
            }
            let i = inst(&durations, &deadlines, next(4) as usize);
            match solve_scheduling(&i) {
                ScheduleOutcome::Feasible(t) => assert!(check_schedule(&i, &t)),
                ScheduleOutcome::Infeasible(c) => {
                    assert!(c.verify(&i));
                    assert!(!brute(&i), "{i:?}");
                }
            }
        }
    }

    #[test]
    fn json_uses_triples() {
        let text = inst(&[1], &[((0, 0), 2)], 4).to_json();
        assert!(text.contains("\"first\": 0") && text.contains("\"horizon\": 4"));
    }
}
