use std::collections::VecDeque;

use super::{ArcId, Rgp, VertexId};

/// Level of every vertex (0-based, minimum 0 in each weak component); every
/// arc `(x, y)` satisfies `level[y] = level[x] + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment(pub Vec<usize>);

impl LevelAssignment {
    pub fn level(&self, v: VertexId) -> usize {
        self.0[v]
    }

    /// Number of distinct levels (`1 + max level`); 0 for the empty pattern.
    pub fn level_count(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    pub fn holds_for(&self, p: &Rgp) -> bool {
        self.0.len() == p.vertex_count() && p.arcs().iter().all(|a| self.0[a.to] == self.0[a.from] + 1)
    }
}

/// One arc of an oriented cycle, traversed forward or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientedStep {
    pub arc: ArcId,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    Balanced(LevelAssignment),
    /// A closed oriented walk whose forward-minus-backward arc count is
    /// nonzero; directed cycles are the special case with no backward step.
    Unbalanced(Vec<OrientedStep>),
}

impl Balance {
    pub fn levels(&self) -> Option<&LevelAssignment> {
        match self {
            Balance::Balanced(l) => Some(l),
            Balance::Unbalanced(_) => None,
        }
    }
}

/// Checks that `steps` is closed in `p` and has nonzero net displacement.
pub fn verify_unbalanced_witness(p: &Rgp, steps: &[OrientedStep]) -> bool {
    let Some(first) = steps.first() else { return false };
    let ends = |s: &OrientedStep| {
        let a = p.arc(s.arc);
        if s.forward {
            (a.from, a.to)
        } else {
            (a.to, a.from)
        }
    };
    let start = ends(first).0;
    let mut at = start;
    let mut net: i64 = 0;
    for s in steps {
        let (x, y) = ends(s);
        if x != at {
            return false;
        }
        at = y;
        net += if s.forward { 1 } else { -1 };
    }
    at == start && net != 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub is_directed_path: bool,
    pub is_undirected: bool,
    pub is_connected: bool,
    pub is_acyclic: bool,
    pub balance: Balance,
}

pub fn structural_predicates(p: &Rgp) -> StructuralReport {
    StructuralReport {
        is_directed_path: directed_path_order(p).is_some(),
        is_undirected: is_undirected(p),
        is_connected: weak_components(p).len() <= 1,
        is_acyclic: is_acyclic(p),
        balance: balance(p),
    }
}

/// Vertices `v0..v(n-1)` such that the arcs are exactly `(v_i, v_{i+1})`.
pub fn directed_path_order(p: &Rgp) -> Option<Vec<VertexId>> {
    let n = p.vertex_count();
    if n == 0 || p.arc_count() != n - 1 {
        return None;
    }
    let mut indeg = vec![0usize; n];
    for a in p.arcs() {
        indeg[a.to] += 1;
    }
    let start = (0..n).find(|&v| indeg[v] == 0)?;
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut at = start;
    while order.len() < n {
        let [a] = p.out_arcs(at) else { return None };
        let next = p.arc(*a).to;
        if seen[next] {
            return None;
        }
        seen[next] = true;
        order.push(next);
        at = next;
    }
    p.out_arcs(at).is_empty().then_some(order)
}

/// Arcs pair up as `(x, y, E)` / `(y, x, E)`; a loop is its own partner.
pub(crate) fn is_undirected(p: &Rgp) -> bool {
    let mut used = vec![false; p.arc_count()];
    for (i, a) in p.arcs().iter().enumerate() {
        if used[i] || a.from == a.to {
            continue;
        }
        let partner = (i + 1..p.arc_count()).find(|&j| {
            let b = p.arc(j);
            !used[j] && b.from == a.to && b.to == a.from && b.label == a.label
        });
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => return false,
        }
    }
    true
}

/// Weakly connected components, each sorted, ordered by smallest vertex.
pub fn weak_components(p: &Rgp) -> Vec<Vec<VertexId>> {
    components_by(p, |_| true)
}

pub(crate) fn components_by(p: &Rgp, keep_arc: impl Fn(ArcId) -> bool) -> Vec<Vec<VertexId>> {
    let n = p.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (i, a) in p.arcs().iter().enumerate() {
        if keep_arc(i) {
            adj[a.from].push(a.to);
            adj[a.to].push(a.from);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub(crate) fn is_acyclic(p: &Rgp) -> bool {
    let n = p.vertex_count();
    let mut indeg = vec![0usize; n];
    for a in p.arcs() {
        indeg[a.to] += 1;
    }
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        for &a in p.out_arcs(v) {
            let t = p.arc(a).to;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    removed == n
}

/// Level assignment by breadth-first potential propagation; a conflicting
/// arc closes an oriented cycle with nonzero net displacement.
pub(crate) fn balance(p: &Rgp) -> Balance {
    balance_by(p, |_| true)
}

pub(crate) fn balance_by(p: &Rgp, keep_arc: impl Fn(ArcId) -> bool) -> Balance {
    let n = p.vertex_count();
    let mut incident: Vec<Vec<OrientedStep>> = vec![Vec::new(); n];
    for (i, a) in p.arcs().iter().enumerate() {
        if keep_arc(i) {
            incident[a.from].push(OrientedStep { arc: i, forward: true });
            incident[a.to].push(OrientedStep { arc: i, forward: false });
        }
    }
    let far_end = |s: &OrientedStep| {
        let a = p.arc(s.arc);
        if s.forward {
            a.to
        } else {
            a.from
        }
    };
    let mut pot: Vec<Option<i64>> = vec![None; n];
    // tree step used to reach each vertex
    let mut via: Vec<Option<OrientedStep>> = vec![None; n];
    let mut levels = vec![0usize; n];
    for root in 0..n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(0);
        let mut members = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let px = pot[x].expect("visited");
            for s in &incident[x] {
                let y = far_end(s);
                let want = px + if s.forward { 1 } else { -1 };
                match pot[y] {
                    None => {
                        pot[y] = Some(want);
                        via[y] = Some(*s);
                        members.push(y);
                        queue.push_back(y);
                    }
                    Some(py) if py != want => {
                        return Balance::Unbalanced(conflict_cycle(p, &via, x, y, *s, &far_end));
                    }
                    Some(_) => {}
                }
            }
        }
        let min = members.iter().map(|&v| pot[v].expect("visited")).min().unwrap_or(0);
        for &v in &members {
            levels[v] = (pot[v].expect("visited") - min) as usize;
        }
    }
    Balance::Balanced(LevelAssignment(levels))
}

fn conflict_cycle(
    p: &Rgp,
    via: &[Option<OrientedStep>],
    x: VertexId,
    y: VertexId,
    closing: OrientedStep,
    far_end: &impl Fn(&OrientedStep) -> VertexId,
) -> Vec<OrientedStep> {
    let near_end = |s: &OrientedStep| {
        let a = p.arc(s.arc);
        if s.forward {
            a.from
        } else {
            a.to
        }
    };
    let chain = |mut v: VertexId| {
        let mut out = vec![v];
        while let Some(s) = via[v] {
            v = near_end(&s);
            out.push(v);
        }
        out
    };
    // root-to-x, then the closing step, then y-to-root reversed
    let (cx, cy) = (chain(x), chain(y));
    let common = cx.iter().rev().zip(cy.iter().rev()).take_while(|(a, b)| a == b).count();
    let lca = cx[cx.len() - common];
    let mut steps = Vec::new();
    let mut v = x;
    let mut down = Vec::new();
    while v != lca {
        let s = via[v].expect("tree step");
        down.push(s);
        v = near_end(&s);
    }
    steps.extend(down.into_iter().rev());
    steps.push(closing);
    let mut v = y;
    while v != lca {
        let s = via[v].expect("tree step");
        steps.push(OrientedStep { arc: s.arc, forward: !s.forward });
        v = near_end(&s);
    }
    debug_assert_eq!(far_end(&closing), y);
    // a self-loop closes immediately
    if x == y {
        return vec![closing];
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let g = Rgp::build("a", &["u", "v"], &[("u", "v", "a")]).unwrap();
        let r = structural_predicates(&g);
        assert!(r.is_directed_path && r.is_acyclic && r.is_connected && !r.is_undirected);
        let levels = r.balance.levels().unwrap();
        assert_eq!(levels.level_count(), 2);
        assert!(levels.holds_for(&g));
    }

    #[test]
    fn directed_triangle_is_unbalanced() {
        let g = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a"), ("z", "x", "a")]).unwrap();
        let r = structural_predicates(&g);
        assert!(!r.is_acyclic && !r.is_directed_path);
        match &r.balance {
            Balance::Unbalanced(w) => assert!(verify_unbalanced_witness(&g, w)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oriented_unbalanced_cycle() {
        // x->y->z and x->z: acyclic but not balanced
        let g = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a"), ("x", "z", "a")]).unwrap();
        let r = structural_predicates(&g);
        assert!(r.is_acyclic);
        match &r.balance {
            Balance::Unbalanced(w) => assert!(verify_unbalanced_witness(&g, w)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn loop_is_unbalanced() {
        let g = Rgp::build("a", &["x"], &[("x", "x", "a")]).unwrap();
        match balance(&g) {
            Balance::Unbalanced(w) => assert!(verify_unbalanced_witness(&g, &w)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn path_order_and_undirected() {
        let path = Rgp::build("a", &["e", "d", "c"], &[("d", "c", "a"), ("e", "d", "a+")]).unwrap();
        assert_eq!(directed_path_order(&path), Some(vec![0, 1, 2]));
        let single = Rgp::build("a", &["v"], &[]).unwrap();
        assert_eq!(directed_path_order(&single), Some(vec![0]));
        let fork = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("z", "y", "a")]).unwrap();
        assert_eq!(directed_path_order(&fork), None);
        let sym = Rgp::build("a", &["x", "y"], &[("x", "y", "a+"), ("y", "x", "a+"), ("x", "x", "a")]).unwrap();
        assert!(is_undirected(&sym));
        let asym = Rgp::build("a", &["x", "y"], &[("x", "y", "a+"), ("y", "x", "a")]).unwrap();
        assert!(!is_undirected(&asym));
    }

    #[test]
    fn components_are_weak() {
        let g = Rgp::build("a", &["a", "b", "c", "d"], &[("b", "a", "a"), ("c", "b", "a")]).unwrap();
        assert_eq!(weak_components(&g), vec![vec![0, 1, 2], vec![3]]);
    }
}
