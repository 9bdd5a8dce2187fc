use std::collections::BTreeMap;

use super::majority::{median_polymorphism, path_consistency_solve, Majority};
use super::scheduling::{solve_scheduling, NegativeCycle, ScheduleOutcome, SchedulingInstance};
use super::two_labeled::{lift_to_n_hom, reduce_to_hom};
use super::UnaryError;
use crate::nhom::NHomomorphism;
use crate::rgp::{
    balance_by, directed_path_order, is_acyclic, is_plus_label, label_class, unary_symbol, ArcId, Balance, LabelClass,
    OrientedStep, Rgp, VertexId, Walk,
};

/// Why a directed-path instance has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoHomReason {
    SymbolMismatch,
    NotAcyclic,
    /// The `a`-arcs contain an oriented cycle with nonzero net length.
    NotBalanced(Vec<OrientedStep>),
    /// An `a+`-arc inside one `a`-path points backwards (arc of the collapsed pattern).
    BackwardPlusArc(ArcId),
    /// The relative-deadline system has a negative cycle.
    Schedule(NegativeCycle),
    /// The reduced classical instance has no homomorphism.
    NoClassicalHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathVerdict {
    Hom(NHomomorphism),
    NoHom(NoHomReason),
}

impl PathVerdict {
    pub fn hom(&self) -> Option<&NHomomorphism> {
        match self {
            PathVerdict::Hom(h) => Some(h),
            PathVerdict::NoHom(_) => None,
        }
    }
}

/// The pattern with each (a-component, level) class merged into one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapsed {
    pub rgp: Rgp,
    /// Per a-component, its merged vertices from first to last along the path.
    pub components: Vec<Vec<VertexId>>,
    /// Merged vertex of every original vertex.
    pub origin: Vec<VertexId>,
}

impl Collapsed {
    /// (component, 1-based position) of every merged vertex.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        positions_of(&self.components, self.rgp.vertex_count())
    }

    pub fn plus_arc_count(&self) -> usize {
        self.rgp.arcs().iter().filter(|a| is_plus_label(&a.label)).count()
    }
}

fn positions_of(components: &[Vec<VertexId>], n: usize) -> Vec<(usize, usize)> {
    let mut pos = vec![(0, 0); n];
    for (c, verts) in components.iter().enumerate() {
        for (k, &v) in verts.iter().enumerate() {
            pos[v] = (c, k + 1);
        }
    }
    pos
}

/// The collapsed pattern with redundant `a+`-arcs removed: none inside a
/// component, at most one per ordered component pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub rgp: Rgp,
    pub components: Vec<Vec<VertexId>>,
    pub origin: Vec<VertexId>,
}

impl Pruned {
    pub fn positions(&self) -> Vec<(usize, usize)> {
        positions_of(&self.components, self.rgp.vertex_count())
    }
}

/// Merges vertices sharing an `a`-component and a level. Labels other than
/// `s+` are read as `s`.
pub fn collapse_levels(p: &Rgp) -> Result<Collapsed, NoHomReason> {
    if !is_acyclic(p) {
        return Err(NoHomReason::NotAcyclic);
    }
    let is_a = |a: ArcId| !is_plus_label(&p.arc(a).label);
    let levels = match balance_by(p, is_a) {
        Balance::Balanced(l) => l,
        Balance::Unbalanced(w) => return Err(NoHomReason::NotBalanced(w)),
    };
    let comps = crate::rgp::components_by(p, is_a);
    let mut rgp = Rgp::new(p.alphabet().clone());
    let mut origin = vec![0; p.vertex_count()];
    let mut components = Vec::with_capacity(comps.len());
    for comp in &comps {
        let depth = comp.iter().map(|&v| levels.level(v)).max().unwrap_or(0) + 1;
        let mut merged = Vec::with_capacity(depth);
        for l in 0..depth {
            let members: Vec<&str> =
                comp.iter().filter(|&&v| levels.level(v) == l).map(|&v| p.vertex_name(v)).collect();
            let id = rgp.add_vertex(&members.join(",")).expect("merged names are unique");
            for &v in comp.iter().filter(|&&v| levels.level(v) == l) {
                origin[v] = id;
            }
            merged.push(id);
        }
        components.push(merged);
    }
    let mut seen = std::collections::HashSet::new();
    for (c, comp) in comps.iter().enumerate() {
        let a_label = p.arcs().iter().find(|a| comp.contains(&a.from) && !is_plus_label(&a.label)).map(|a| a.label.clone());
        if let Some(label) = a_label {
            for pair in components[c].windows(2) {
                rgp.add_arc(pair[0], pair[1], label.clone()).expect("valid arc");
            }
        }
    }
    for a in p.arcs().iter().filter(|a| is_plus_label(&a.label)) {
        let (u, v) = (origin[a.from], origin[a.to]);
        if seen.insert((u, v)) {
            rgp.add_arc(u, v, a.label.clone()).expect("valid arc");
        }
    }
    Ok(Collapsed { rgp, components, origin })
}

/// Drops forward `a+`-arcs inside a component and keeps, per ordered pair
/// of components, the arc `u_i -> v_j` maximizing `i - j` (first on ties).
pub fn prune_plus_arcs(c: &Collapsed) -> Result<Pruned, NoHomReason> {
    let pos = c.positions();
    let mut best: BTreeMap<(usize, usize), (i64, ArcId)> = BTreeMap::new();
    for (idx, a) in c.rgp.arcs().iter().enumerate() {
        if !is_plus_label(&a.label) {
            continue;
        }
        let ((c1, i), (c2, j)) = (pos[a.from], pos[a.to]);
        if c1 == c2 {
            if i >= j {
                return Err(NoHomReason::BackwardPlusArc(idx));
            }
            continue;
        }
        let score = i as i64 - j as i64;
        let slot = best.entry((c1, c2)).or_insert((score, idx));
        if score > slot.0 {
            *slot = (score, idx);
        }
    }
    let mut keep: Vec<ArcId> = best.values().map(|&(_, a)| a).collect();
    keep.sort_unstable();
    let (rgp, _) = c.rgp.sub_rgp(&c.rgp.vertices().collect::<Vec<_>>(), |a| {
        !is_plus_label(&c.rgp.arc(a).label) || keep.binary_search(&a).is_ok()
    });
    Ok(Pruned { rgp, components: c.components.clone(), origin: c.origin.clone() })
}

/// Jobs are components, durations their arc counts, `r(C1, C2) = j - i - 1`
/// for the surviving arc `u_i -> v_j`, horizon `n - 1`.
pub fn to_scheduling(p: &Pruned, n: usize) -> SchedulingInstance {
    let pos = p.positions();
    let mut deadlines = BTreeMap::new();
    for a in p.rgp.arcs().iter().filter(|a| is_plus_label(&a.label)) {
        let ((c1, i), (c2, j)) = (pos[a.from], pos[a.to]);
        deadlines.insert((c1, c2), j as i64 - i as i64 - 1);
    }
    SchedulingInstance {
        durations: p.components.iter().map(|c| c.len() - 1).collect(),
        deadlines,
        horizon: n.saturating_sub(1),
    }
}

/// Decides `p -n-> q` for a directed-path template `q` with labels in
/// `{s, s+}`.
pub fn solve_path_template(p: &Rgp, q: &Rgp) -> Result<PathVerdict, UnaryError> {
    let order = directed_path_order(q).ok_or(UnaryError::NotDirectedPath)?;
    for g in [p, q] {
        if label_class(g) == LabelClass::General {
            return Err(UnaryError::LabelClass(LabelClass::General));
        }
    }
    if p.arc_count() == 0 {
        let map = vec![order[0]; p.vertex_count()];
        return Ok(PathVerdict::Hom(NHomomorphism { map, witnesses: Vec::new() }));
    }
    if unary_symbol(p) != unary_symbol(q) {
        return Ok(PathVerdict::NoHom(NoHomReason::SymbolMismatch));
    }
    if label_class(q) == LabelClass::AllSingleA {
        return Ok(schedule_pipeline(p, q, &order));
    }
    let (g, h) = reduce_to_hom(p, q)?;
    // the median is checked exhaustively on small templates and trusted above
    let map = if order.len() <= 10 {
        let median = median_polymorphism(q)?;
        path_consistency_solve(&g, &h, Majority::Certified(&median))?
    } else {
        path_consistency_solve(&g, &h, Majority::Assumed)?
    };
    Ok(match map {
        Some(map) => PathVerdict::Hom(lift_to_n_hom(p, q, &map).expect("classical map lifts")),
        None => PathVerdict::NoHom(NoHomReason::NoClassicalHom),
    })
}

fn schedule_pipeline(p: &Rgp, q: &Rgp, order: &[VertexId]) -> PathVerdict {
    let pruned = match collapse_levels(p).and_then(|c| prune_plus_arcs(&c)) {
        Ok(pr) => pr,
        Err(reason) => return PathVerdict::NoHom(reason),
    };
    let inst = to_scheduling(&pruned, order.len());
    let starts = match solve_scheduling(&inst) {
        ScheduleOutcome::Feasible(t) => t,
        ScheduleOutcome::Infeasible(cycle) => return PathVerdict::NoHom(NoHomReason::Schedule(cycle)),
    };
    let pos = pruned.positions();
    let at: Vec<usize> = pruned
        .origin
        .iter()
        .map(|&m| {
            let (c, k) = pos[m];
            starts[c] as usize + k - 1
        })
        .collect();
    // arc from order[k] to order[k + 1]
    let steps: Vec<ArcId> = order[..order.len() - 1].iter().map(|&v| q.out_arcs(v)[0]).collect();
    let witnesses = p.arcs().iter().map(|a| Walk::from_arcs(steps[at[a.from]..at[a.to]].to_vec())).collect();
    PathVerdict::Hom(NHomomorphism { map: at.iter().map(|&k| order[k]).collect(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nhom::{n_hom, verify_n_hom};

    fn a_path(n: usize) -> Rgp {
        let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let arcs: Vec<_> = (1..n).map(|i| (refs[i - 1], refs[i], "a")).collect();
        Rgp::build("a", &refs, &arcs).unwrap()
    }

    fn two_components() -> Rgp {
        // C1 = u1 -> u2 -> u3, C2 = v1 -> v2, plus arc u2 -> v1
        Rgp::build("a", &["u1", "u2", "u3", "v1", "v2"], &[
            ("u1", "u2", "a"),
            ("u2", "u3", "a"),
            ("v1", "v2", "a"),
            ("u2", "v1", "a+"),
        ])
        .unwrap()
    }

    #[test]
    fn scheduling_instance_formula() {
        let pr = prune_plus_arcs(&collapse_levels(&two_components()).unwrap()).unwrap();
        let inst = to_scheduling(&pr, 4);
        assert_eq!(inst.durations, vec![2, 1]);
        assert_eq!(inst.deadlines, BTreeMap::from([((0, 1), -2)]));
        assert_eq!(inst.horizon, 3);
    }

    #[test]
    fn two_components_on_a_four_path() {
        let p = two_components();
        let q = a_path(4);
        let h = solve_path_template(&p, &q).unwrap().hom().cloned().unwrap();
        assert!(verify_n_hom(&p, &q, &h));
        assert_eq!(h.map, vec![0, 1, 2, 2, 3]);
    }

    #[test]
    fn parallel_plus_arcs_keep_the_tightest() {
        let p = Rgp::build("a", &["u1", "u2", "v1", "v2"], &[
            ("u1", "u2", "a"),
            ("v1", "v2", "a"),
            ("u2", "v1", "a+"),
            ("u1", "v2", "a+"),
        ])
        .unwrap();
        let pr = prune_plus_arcs(&collapse_levels(&p).unwrap()).unwrap();
        let kept: Vec<_> = pr.rgp.arcs().iter().filter(|a| is_plus_label(&a.label)).map(|a| (a.from, a.to)).collect();
        assert_eq!(kept, vec![(1, 2)]);
        let q = a_path(4);
        for g in [&p, &pr.rgp] {
            assert_eq!(n_hom(g, &q).unwrap().is_some(), n_hom(&p, &q).unwrap().is_some());
        }
    }

    #[test]
    fn failures() {
        let loop_plus = Rgp::build("a", &["x"], &[("x", "x", "a+")]).unwrap();
        assert!(matches!(collapse_levels(&loop_plus), Err(NoHomReason::NotAcyclic)));
        let two_cycle = Rgp::build("a", &["x", "y"], &[("x", "y", "a"), ("y", "x", "a")]).unwrap();
        assert!(matches!(collapse_levels(&two_cycle), Err(NoHomReason::NotAcyclic)));
        let unbalanced = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a"), ("x", "z", "a")]).unwrap();
        assert!(matches!(collapse_levels(&unbalanced), Err(NoHomReason::NotBalanced(_))));
        let long = a_path(7);
        assert_eq!(solve_path_template(&long, &a_path(5)).unwrap().hom(), None);
        let tip = Rgp::build("a", &["x", "y"], &[("x", "y", "a+")]).unwrap();
        let h = solve_path_template(&tip, &a_path(2)).unwrap().hom().cloned().unwrap();
        assert_eq!(h.map, vec![0, 1]);
    }

    #[test]
    fn mixed_template_uses_path_consistency() {
        let q = Rgp::build("a", &["a", "b", "c", "d", "e"], &[("e", "d", "a+"), ("d", "c", "a"), ("c", "b", "a+"), ("b", "a", "a")])
            .unwrap();
        let p = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a+")]).unwrap();
        let h = solve_path_template(&p, &q).unwrap().hom().cloned().unwrap();
        assert!(verify_n_hom(&p, &q, &h));
        let p2 = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a")]).unwrap();
        assert_eq!(solve_path_template(&p2, &q).unwrap(), PathVerdict::NoHom(NoHomReason::NoClassicalHom));
    }
}
