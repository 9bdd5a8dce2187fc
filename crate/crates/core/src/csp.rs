//! Binary constraint satisfaction over a shared finite domain: maintained arc
//! consistency, smallest-domain-first branching (ties by variable index) and
//! node/time budgets.

use std::collections::VecDeque;
use std::sync::Arc;
use std::time::Instant;

use fixedbitset::FixedBitSet;

/// A binary relation on `0..m`, stored row-wise in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Relation {
    fwd: Vec<FixedBitSet>,
    bwd: Vec<FixedBitSet>,
}

impl Relation {
    pub fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let m = rows.len();
        let mut bwd = vec![FixedBitSet::with_capacity(m); m];
        for (u, row) in rows.iter().enumerate() {
            for v in row.ones() {
                bwd[v].insert(u);
            }
        }
        Relation { fwd: rows, bwd }
    }

    #[cfg(test)]
    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(m); m];
        for (u, v) in pairs {
            rows[u].insert(v);
        }
        Relation::from_rows(rows)
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.fwd[u].contains(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Limits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Exhausted {
    pub nodes: u64,
}

struct Constraint {
    x: usize,
    y: usize,
    rel: Arc<Relation>,
}

pub(crate) struct Csp {
    m: usize,
    domains: Vec<FixedBitSet>,
    constraints: Vec<Constraint>,
    /// Per variable: (constraint, variable is the constraint's `x`).
    incident: Vec<Vec<(usize, bool)>>,
    empty: bool,
}

impl Csp {
    pub fn new(vars: usize, m: usize) -> Self {
        let mut full = FixedBitSet::with_capacity(m);
        full.insert_range(..);
        Csp {
            m,
            domains: vec![full; vars],
            constraints: Vec::new(),
            incident: vec![Vec::new(); vars],
            empty: vars > 0 && m == 0,
        }
    }

    pub fn restrict(&mut self, x: usize, allowed: &FixedBitSet) {
        self.domains[x].intersect_with(allowed);
        self.empty |= self.domains[x].is_clear();
    }

    pub fn pin(&mut self, x: usize, value: usize) {
        let mut only = FixedBitSet::with_capacity(self.m);
        only.insert(value);
        self.restrict(x, &only);
    }

    /// Requires `(value(x), value(y)) ∈ rel`.
    pub fn add(&mut self, x: usize, y: usize, rel: Arc<Relation>) {
        if x == y {
            let mut diag = FixedBitSet::with_capacity(self.m);
            diag.extend((0..self.m).filter(|&u| rel.contains(u, u)));
            self.restrict(x, &diag);
            return;
        }
        let c = self.constraints.len();
        self.constraints.push(Constraint { x, y, rel });
        self.incident[x].push((c, true));
        self.incident[y].push((c, false));
    }

    /// Removes unsupported values of the variable on side `as_x` of `c`.
    fn revise(&self, domains: &mut [FixedBitSet], c: usize, as_x: bool) -> bool {
        let k = &self.constraints[c];
        let (me, other, rows) = if as_x { (k.x, k.y, &k.rel.fwd) } else { (k.y, k.x, &k.rel.bwd) };
        let dropped: Vec<usize> = domains[me].ones().filter(|&a| rows[a].is_disjoint(&domains[other])).collect();
        for &a in &dropped {
            domains[me].set(a, false);
        }
        !dropped.is_empty()
    }

    /// AC-3 from the given dirty variables; false on a wipe-out.
    fn propagate(&self, domains: &mut [FixedBitSet], dirty: impl IntoIterator<Item = usize>) -> bool {
        let mut queue: VecDeque<usize> = dirty.into_iter().collect();
        let mut queued = FixedBitSet::with_capacity(domains.len());
        for &v in &queue {
            queued.insert(v);
        }
        while let Some(v) = queue.pop_front() {
            queued.set(v, false);
            for &(c, v_is_x) in &self.incident[v] {
                let k = &self.constraints[c];
                let other = if v_is_x { k.y } else { k.x };
                if self.revise(domains, c, !v_is_x) {
                    if domains[other].is_clear() {
                        return false;
                    }
                    if !queued.put(other) {
                        queue.push_back(other);
                    }
                }
            }
        }
        true
    }

    pub fn solve(&self, limits: Limits) -> Result<Option<Vec<usize>>, Exhausted> {
        if self.empty {
            return Ok(None);
        }
        let mut domains = self.domains.clone();
        let vars = domains.len();
        if !self.propagate(&mut domains, 0..vars) {
            return Ok(None);
        }
        let mut nodes = 0u64;
        self.search(domains, &mut nodes, limits)
    }

    fn search(&self, domains: Vec<FixedBitSet>, nodes: &mut u64, limits: Limits) -> Result<Option<Vec<usize>>, Exhausted> {
        *nodes += 1;
        if *nodes > limits.max_nodes || (*nodes % 1024 == 0 && limits.deadline.is_some_and(|d| Instant::now() >= d)) {
            return Err(Exhausted { nodes: *nodes });
        }
        let pick = (0..domains.len())
            .filter(|&v| domains[v].count_ones(..) > 1)
            .min_by_key(|&v| (domains[v].count_ones(..), v));
        let Some(var) = pick else {
            return Ok(Some(domains.iter().map(|d| d.minimum().expect("nonempty domain")).collect()));
        };
        for value in domains[var].ones() {
            let mut next = domains.clone();
            next[var].clear();
            next[var].insert(value);
            if self.propagate(&mut next, [var]) {
                if let Some(sol) = self.search(next, nodes, limits)? {
                    return Ok(Some(sol));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unlimited() -> Limits {
        Limits { max_nodes: u64::MAX, deadline: None }
    }

    fn neq(m: usize) -> Arc<Relation> {
        Arc::new(Relation::from_pairs(m, (0..m).flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v)))))
    }

    #[test]
    fn colouring() {
        // triangle is 3-colourable, not 2-colourable
        for (m, expect) in [(2, false), (3, true)] {
            let mut csp = Csp::new(3, m);
            for (x, y) in [(0, 1), (1, 2), (2, 0)] {
                csp.add(x, y, neq(m));
            }
            let sol = csp.solve(unlimited()).unwrap();
            assert_eq!(sol.is_some(), expect);
            if let Some(s) = sol {
                assert!(s[0] != s[1] && s[1] != s[2] && s[2] != s[0]);
            }
        }
    }

    #[test]
    fn loops_restrict_domains() {
        let mut csp = Csp::new(1, 3);
        csp.add(0, 0, Arc::new(Relation::from_pairs(3, [(2, 2), (0, 1)])));
        assert_eq!(csp.solve(unlimited()).unwrap(), Some(vec![2]));
    }

    #[test]
    fn pins_and_budget() {
        let mut csp = Csp::new(2, 2);
        csp.pin(0, 1);
        csp.add(0, 1, neq(2));
        assert_eq!(csp.solve(unlimited()).unwrap(), Some(vec![1, 0]));
        let mut big = Csp::new(6, 5);
        for x in 0..6 {
            for y in x + 1..6 {
                big.add(x, y, neq(5));
            }
        }
        assert!(big.solve(Limits { max_nodes: 3, deadline: None }).is_err());
        assert_eq!(Csp::new(1, 0).solve(unlimited()).unwrap(), None);
        assert_eq!(Csp::new(0, 0).solve(unlimited()).unwrap(), Some(vec![]));
    }
}
