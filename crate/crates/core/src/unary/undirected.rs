use std::collections::VecDeque;

use serde::Serialize;

use super::UnaryError;
use crate::nhom::{is_n_core_with, n_hom_cached, n_hom_with, Budget, NHomomorphism};
use crate::rgp::{
    components_by, is_plus_label, is_undirected, label_class, unary_symbol, weak_components, ArcId, LabelClass, Rgp,
    VertexId, Walk,
};
use crate::walk::RelationCache;

/// Largest template whose n-core status the classifier checks itself.
const CORE_CHECK_ARCS: usize = 64;

/// A symmetric arc pair, or a single loop arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UndirectedEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub plus: bool,
    /// `u -> v` and `v -> u`; equal for a loop.
    pub arcs: (ArcId, ArcId),
}

impl UndirectedEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Pairs every arc with its reverse; fails when some arc has none.
pub fn undirected_edges(q: &Rgp) -> Result<Vec<UndirectedEdge>, UnaryError> {
    if !is_undirected(q) {
        return Err(UnaryError::NotUndirected);
    }
    let mut used = vec![false; q.arc_count()];
    let mut edges = Vec::new();
    for (i, a) in q.arcs().iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let j = if a.from == a.to {
            i
        } else {
            let j = (i + 1..q.arc_count())
                .find(|&j| {
                    let b = q.arc(j);
                    !used[j] && b.from == a.to && b.to == a.from && b.label == a.label
                })
                .expect("undirected patterns pair every arc");
            used[j] = true;
            j
        };
        edges.push(UndirectedEdge { u: a.from, v: a.to, plus: is_plus_label(&a.label), arcs: (i, j) });
    }
    Ok(edges)
}

/// Template classes of the undirected dichotomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TemplateClass {
    PolySingleVertexNoLoop,
    PolyLoopA,
    PolyLoopAPlus,
    PolySingleEdgeAPlus,
    PolySingleEdgeA,
    /// Vertices of an odd closed walk along `a`-edges, in order.
    NPComplete { odd_cycle: Vec<VertexId> },
}

impl TemplateClass {
    pub fn is_polynomial(&self) -> bool {
        !matches!(self, TemplateClass::NPComplete { .. })
    }
}

fn require_unary(p: &Rgp) -> Result<(), UnaryError> {
    match label_class(p) {
        LabelClass::General => Err(UnaryError::LabelClass(LabelClass::General)),
        _ => Ok(()),
    }
}

/// Classifies an undirected connected n-core template. With `assume_core`
/// false the core property is checked, which is only attempted for
/// templates of at most 64 arcs.
pub fn classify_undirected_template(q: &Rgp, assume_core: bool, budget: &Budget) -> Result<TemplateClass, UnaryError> {
    require_unary(q)?;
    let edges = undirected_edges(q)?;
    if weak_components(q).len() != 1 {
        return Err(UnaryError::NotConnected);
    }
    if !assume_core {
        if q.arc_count() > CORE_CHECK_ARCS {
            return Err(UnaryError::CoreUnverified);
        }
        if !is_n_core_with(q, budget)?.is_core() {
            return Err(UnaryError::NotCore);
        }
    }
    match edges.as_slice() {
        [] => Ok(TemplateClass::PolySingleVertexNoLoop),
        [e] if e.is_loop() && e.plus => Ok(TemplateClass::PolyLoopAPlus),
        [e] if e.is_loop() => Ok(TemplateClass::PolyLoopA),
        [e] if e.plus => Ok(TemplateClass::PolySingleEdgeAPlus),
        [_] => Ok(TemplateClass::PolySingleEdgeA),
        _ => odd_a_cycle(q).map(|odd_cycle| TemplateClass::NPComplete { odd_cycle }).ok_or(UnaryError::NoOddCycle),
    }
}

fn a_neighbours(p: &Rgp) -> Vec<Vec<VertexId>> {
    let mut adj = vec![Vec::new(); p.vertex_count()];
    for a in p.arcs().iter().filter(|a| !is_plus_label(&a.label)) {
        adj[a.from].push(a.to);
        adj[a.to].push(a.from);
    }
    adj
}

/// Breadth-first 2-colouring of the `a`-edges, ignoring direction.
fn two_colour(p: &Rgp) -> Result<Vec<bool>, Vec<VertexId>> {
    let n = p.vertex_count();
    let adj = a_neighbours(p);
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if depth[y] % 2 == depth[x] % 2 {
                    return Err(close_cycle(&parent, &depth, x, y));
                }
            }
        }
    }
    Ok(depth.iter().map(|d| d % 2 == 1).collect())
}

/// The two tree paths from `x` and `y` up to their common ancestor, joined
/// by the edge `x - y`. Equal depths make the length odd.
fn close_cycle(parent: &[usize], depth: &[usize], x: VertexId, y: VertexId) -> Vec<VertexId> {
    let (mut left, mut right) = (vec![x], vec![y]);
    let (mut a, mut b) = (x, y);
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

fn odd_a_cycle(q: &Rgp) -> Option<Vec<VertexId>> {
    two_colour(q).err()
}

/// The vertices form a closed walk of odd length along `a`-arcs.
pub fn verify_odd_cycle(q: &Rgp, cycle: &[VertexId]) -> bool {
    let adj = a_neighbours(q);
    cycle.len() % 2 == 1
        && cycle.iter().all(|&v| v < q.vertex_count())
        && cycle.iter().zip(cycle.iter().cycle().skip(1)).all(|(&x, &y)| adj[x].contains(&y))
}

/// Decides `p -n-> q` for a polynomial class by the case table of the
/// dichotomy: no arcs, always, no `a`-arcs, or a bipartite `a`-subgraph.
/// The pattern is assumed to share the template's symbol.
pub fn solve_undirected_easy(class: &TemplateClass, p: &Rgp) -> Result<bool, UnaryError> {
    require_unary(p)?;
    let has_a = p.arcs().iter().any(|a| !is_plus_label(&a.label));
    match class {
        TemplateClass::PolySingleVertexNoLoop => Ok(p.arc_count() == 0),
        TemplateClass::PolyLoopA => Ok(true),
        TemplateClass::PolyLoopAPlus | TemplateClass::PolySingleEdgeAPlus => Ok(!has_a),
        TemplateClass::PolySingleEdgeA => Ok(two_colour(p).is_ok()),
        TemplateClass::NPComplete { .. } => Err(UnaryError::NotEasy(class.clone())),
    }
}

/// An explicit n-homomorphism for a polynomial class, or `None` when the
/// case table says there is none.
pub fn easy_certificate(class: &TemplateClass, p: &Rgp, q: &Rgp) -> Result<Option<NHomomorphism>, UnaryError> {
    if p.arc_count() > 0 && unary_symbol(p) != unary_symbol(q) {
        return Ok(None);
    }
    if !solve_undirected_easy(class, p)? {
        return Ok(None);
    }
    let n = p.vertex_count();
    let edges = undirected_edges(q)?;
    let hom = match (class, edges.as_slice()) {
        (TemplateClass::PolySingleVertexNoLoop, _) => NHomomorphism { map: vec![0; n], witnesses: Vec::new() },
        (TemplateClass::PolyLoopA | TemplateClass::PolyLoopAPlus, [e]) => NHomomorphism {
            map: vec![e.u; n],
            witnesses: vec![Walk::from_arcs(vec![e.arcs.0]); p.arc_count()],
        },
        (TemplateClass::PolySingleEdgeAPlus, [e]) => NHomomorphism {
            map: vec![e.u; n],
            witnesses: vec![Walk::from_arcs(vec![e.arcs.0, e.arcs.1]); p.arc_count()],
        },
        (TemplateClass::PolySingleEdgeA, [e]) => {
            let colour = two_colour(p).expect("checked bipartite");
            let side = |x: VertexId| if colour[x] { e.v } else { e.u };
            let forward = |x: VertexId| if x == e.u { e.arcs.0 } else { e.arcs.1 };
            let witnesses = p
                .arcs()
                .iter()
                .map(|a| {
                    let first = forward(side(a.from));
                    if side(a.from) == side(a.to) {
                        Walk::from_arcs(vec![first, forward(side_other(e, side(a.from)))])
                    } else {
                        Walk::from_arcs(vec![first])
                    }
                })
                .collect();
            NHomomorphism { map: (0..n).map(side).collect(), witnesses }
        }
        _ => return Err(UnaryError::NotEasy(class.clone())),
    };
    Ok(Some(hom))
}

fn side_other(e: &UndirectedEdge, x: VertexId) -> VertexId {
    if x == e.u {
        e.v
    } else {
        e.u
    }
}

/// A failed necessary condition for an undirected n-core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// (a) No `a`-edge but more than one edge.
    NoAEdgeButManyEdges { edges: usize },
    /// (b) A loop on a template with more than one vertex.
    LoopWithOtherVertices { vertex: VertexId },
    /// (c) An `a+`-edge whose removal leaves the template connected.
    PlusEdgeNotBridge { edge: (VertexId, VertexId) },
    /// (d) An `a`-component with at most one attachment vertex maps into
    /// another component.
    ComponentMapsElsewhere { from: Vec<VertexId>, to: Vec<VertexId>, map: Vec<VertexId> },
    /// (e) An `a`-component has a non-bijective endomorphism fixing its
    /// attachment vertices.
    ComponentNotRigid { component: Vec<VertexId>, map: Vec<VertexId> },
}

/// Checks the necessary conditions (a) to (e) for an undirected n-core.
/// An empty list does not prove the template is a core.
///
/// Components are those of the `a`-subgraph, and each component's attachment
/// vertices are its endpoints of non-loop `a+`-edges. Condition (d) is only
/// checked for components with at least one edge: a lone vertex always maps
/// into any component, yet may sit between two `a+`-edges of a core.
pub fn audit_undirected_ncore(q: &Rgp, budget: &Budget) -> Result<Vec<Violation>, UnaryError> {
    require_unary(q)?;
    let edges = undirected_edges(q)?;
    if weak_components(q).len() > 1 {
        return Err(UnaryError::NotConnected);
    }
    let mut out = Vec::new();
    if edges.len() > 1 && edges.iter().all(|e| e.plus) {
        out.push(Violation::NoAEdgeButManyEdges { edges: edges.len() });
    }
    if q.vertex_count() > 1 {
        if let Some(e) = edges.iter().find(|e| e.is_loop()) {
            out.push(Violation::LoopWithOtherVertices { vertex: e.u });
        }
    }
    let links: Vec<&UndirectedEdge> = edges.iter().filter(|e| e.plus && !e.is_loop()).collect();
    for (i, e) in edges.iter().enumerate() {
        if e.plus && !e.is_loop() && still_connected_without(q, &edges, i) {
            out.push(Violation::PlusEdgeNotBridge { edge: (e.u, e.v) });
        }
    }
    let comps = components_by(q, |a| !is_plus_label(&q.arc(a).label));
    let subs: Vec<Rgp> =
        comps.iter().map(|c| q.sub_rgp(c, |a| !is_plus_label(&q.arc(a).label)).0).collect();
    let attach: Vec<Vec<VertexId>> = comps
        .iter()
        .map(|c| {
            let mut x: Vec<VertexId> = c.iter().copied().filter(|v| links.iter().any(|e| e.u == *v || e.v == *v)).collect();
            x.dedup();
            x
        })
        .collect();
    for (i, s) in subs.iter().enumerate() {
        if attach[i].len() > 1 || s.arc_count() == 0 {
            continue;
        }
        for (j, t) in subs.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(h) = n_hom_with(s, t, budget, 1)? {
                let map = h.map.iter().map(|&v| comps[j][v]).collect();
                out.push(Violation::ComponentMapsElsewhere { from: comps[i].clone(), to: comps[j].clone(), map });
            }
        }
    }
    for (i, s) in subs.iter().enumerate() {
        let local = |v: VertexId| comps[i].binary_search(&v).expect("attachment lies in its component");
        let pins: Vec<(VertexId, VertexId)> = attach[i].iter().map(|&v| (local(v), local(v))).collect();
        if let Some(map) = non_rigid_endomorphism(s, &pins, budget)? {
            out.push(Violation::ComponentNotRigid {
                component: comps[i].clone(),
                map: map.iter().map(|&v| comps[i][v]).collect(),
            });
        }
    }
    Ok(out)
}

fn still_connected_without(q: &Rgp, edges: &[UndirectedEdge], skip: usize) -> bool {
    let n = q.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        if i != skip {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// An endomorphism fixing `pins` that misses some arc. Images of symmetric
/// patterns are symmetric, so deleting one arc per edge covers every
/// non-surjective case; a connected component with an edge has no isolated
/// vertex to miss.
fn non_rigid_endomorphism(
    s: &Rgp,
    pins: &[(VertexId, VertexId)],
    budget: &Budget,
) -> Result<Option<Vec<VertexId>>, UnaryError> {
    for e in undirected_edges(s)? {
        let sub = s.without_arc(e.arcs.0);
        let cache = RelationCache::new(&sub);
        if let Some(h) = n_hom_cached(s, &cache, pins, budget, 1)? {
            return Ok(Some(h.map));
        }
    }
    Ok(None)
}
