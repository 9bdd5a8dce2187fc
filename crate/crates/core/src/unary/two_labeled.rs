use std::collections::VecDeque;
use std::fmt::Write;
use std::sync::Arc;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::UnaryError;
use crate::csp::{Csp, Relation};
use crate::nhom::{Budget, NHomomorphism, SolveError};
use crate::rgp::{is_plus_label, label_class, unary_symbol, LabelClass, Rgp, VertexId, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TwoLabel {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "t")]
    T,
}

/// A digraph with at most one `a`-arc and one `t`-arc per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLabeledDigraph {
    names: Vec<String>,
    a: Vec<FixedBitSet>,
    t: Vec<FixedBitSet>,
}

#[derive(Serialize)]
struct TwoLabeledDocument<'a> {
    vertices: &'a [String],
    arcs: Vec<TwoLabeledArc<'a>>,
}

#[derive(Serialize)]
struct TwoLabeledArc<'a> {
    from: &'a str,
    to: &'a str,
    label: TwoLabel,
}

impl TwoLabeledDigraph {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        TwoLabeledDigraph { names, a: vec![FixedBitSet::with_capacity(n); n], t: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn add(&mut self, u: VertexId, v: VertexId, label: TwoLabel) {
        self.rows_mut(label)[u].insert(v);
    }

    pub fn has(&self, u: VertexId, v: VertexId, label: TwoLabel) -> bool {
        self.rows(label)[u].contains(v)
    }

    pub fn rows(&self, label: TwoLabel) -> &[FixedBitSet] {
        match label {
            TwoLabel::A => &self.a,
            TwoLabel::T => &self.t,
        }
    }

    fn rows_mut(&mut self, label: TwoLabel) -> &mut [FixedBitSet] {
        match label {
            TwoLabel::A => &mut self.a,
            TwoLabel::T => &mut self.t,
        }
    }

    /// All arcs, `a` before `t`, each by source then target.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId, TwoLabel)> {
        let mut out = Vec::new();
        for label in [TwoLabel::A, TwoLabel::T] {
            for (u, row) in self.rows(label).iter().enumerate() {
                out.extend(row.ones().map(|v| (u, v, label)));
            }
        }
        out
    }

    pub fn arc_count(&self, label: TwoLabel) -> usize {
        self.rows(label).iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn to_json(&self) -> String {
        let g = self.arcs();
        let doc = TwoLabeledDocument {
            vertices: &self.names,
            arcs: g.iter().map(|&(u, v, label)| TwoLabeledArc { from: &self.names[u], to: &self.names[v], label }).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("documents always serialize")
    }

    /// `a`-arcs solid, `t`-arcs dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph d {\n");
        for name in &self.names {
            writeln!(out, "  {};", crate::rgp::quote_id(name)).unwrap();
        }
        for (u, v, label) in self.arcs() {
            let (text, style) = match label {
                TwoLabel::A => ("a", "solid"),
                TwoLabel::T => ("t", "dashed"),
            };
            writeln!(
                out,
                "  {} -> {} [label=\"{text}\", style={style}];",
                crate::rgp::quote_id(&self.names[u]),
                crate::rgp::quote_id(&self.names[v])
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn require_unary(p: &Rgp) -> Result<(), UnaryError> {
    match label_class(p) {
        LabelClass::General => Err(UnaryError::LabelClass(LabelClass::General)),
        _ => Ok(()),
    }
}

/// Vertices reachable from each vertex by a walk of length at least one.
pub(crate) fn reachability(q: &Rgp) -> Vec<FixedBitSet> {
    let n = q.vertex_count();
    (0..n)
        .map(|s| {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut stack: Vec<VertexId> = q.out_arcs(s).iter().map(|&a| q.arc(a).to).collect();
            while let Some(x) = stack.pop() {
                if !seen.put(x) {
                    stack.extend(q.out_arcs(x).iter().map(|&a| q.arc(a).to));
                }
            }
            seen
        })
        .collect()
}

/// Keeps the `a`-arcs and adds a `t`-arc for every pair joined by a walk.
pub fn d_of_q(q: &Rgp) -> Result<TwoLabeledDigraph, UnaryError> {
    require_unary(q)?;
    let mut d = TwoLabeledDigraph::new(q.vertex_names().to_vec());
    for a in q.arcs() {
        if !is_plus_label(&a.label) {
            d.add(a.from, a.to, TwoLabel::A);
        }
    }
    d.t = reachability(q);
    Ok(d)
}

/// The pattern relabelled (`a+` becomes `t`) and `D(Q)`. When the two
/// patterns use different symbols no pattern arc can be witnessed, so the
/// template keeps its vertices and loses every arc.
pub fn reduce_to_hom(p: &Rgp, q: &Rgp) -> Result<(TwoLabeledDigraph, TwoLabeledDigraph), UnaryError> {
    require_unary(p)?;
    let mut template = d_of_q(q)?;
    if let (Some(sp), Some(sq)) = (unary_symbol(p), unary_symbol(q)) {
        if sp != sq {
            template = TwoLabeledDigraph::new(q.vertex_names().to_vec());
        }
    }
    let mut pattern = TwoLabeledDigraph::new(p.vertex_names().to_vec());
    for a in p.arcs() {
        let label = if is_plus_label(&a.label) { TwoLabel::T } else { TwoLabel::A };
        pattern.add(a.from, a.to, label);
    }
    Ok((pattern, template))
}

/// Classical label-preserving homomorphism `g -> h`.
pub fn hom_two_labeled(
    g: &TwoLabeledDigraph,
    h: &TwoLabeledDigraph,
    budget: &Budget,
) -> Result<Option<Vec<VertexId>>, SolveError> {
    let started = Instant::now();
    let mut csp = Csp::new(g.vertex_count(), h.vertex_count());
    for label in [TwoLabel::A, TwoLabel::T] {
        let rel = Arc::new(Relation::from_rows(h.rows(label).to_vec()));
        for (u, row) in g.rows(label).iter().enumerate() {
            for v in row.ones() {
                csp.add(u, v, Arc::clone(&rel));
            }
        }
    }
    csp.solve(budget.limits(started)).map_err(|e| {
        if e.nodes > budget.max_nodes {
            SolveError::BudgetExceeded { nodes: budget.max_nodes }
        } else {
            SolveError::TimeExceeded
        }
    })
}

pub fn verify_two_labeled_hom(g: &TwoLabeledDigraph, h: &TwoLabeledDigraph, map: &[VertexId]) -> bool {
    map.len() == g.vertex_count()
        && map.iter().all(|&v| v < h.vertex_count())
        && g.arcs().into_iter().all(|(u, v, label)| h.has(map[u], map[v], label))
}

/// Turns a homomorphism of the reduced instance into an n-homomorphism:
/// `a`-arcs get the matching `a`-arc, `a+`-arcs a shortest walk.
pub fn lift_to_n_hom(p: &Rgp, q: &Rgp, map: &[VertexId]) -> Option<NHomomorphism> {
    let mut witnesses = Vec::with_capacity(p.arc_count());
    for arc in p.arcs() {
        let (u, v) = (map[arc.from], map[arc.to]);
        let walk = if is_plus_label(&arc.label) {
            shortest_walk(q, u, v)?
        } else {
            let a = q.out_arcs(u).iter().copied().find(|&a| q.arc(a).to == v && !is_plus_label(&q.arc(a).label))?;
            Walk::from_arcs(vec![a])
        };
        witnesses.push(walk);
    }
    Some(NHomomorphism { map: map.to_vec(), witnesses })
}

/// Fewest-arcs walk of length at least one, ties by arc index.
pub(crate) fn shortest_walk(q: &Rgp, u: VertexId, v: VertexId) -> Option<Walk> {
    let n = q.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = FixedBitSet::with_capacity(n);
    let mut queue = VecDeque::new();
    // seed with the first arcs so that u -> u needs a closed walk
    for &a in q.out_arcs(u) {
        let y = q.arc(a).to;
        if !seen.put(y) {
            parent[y] = Some(a);
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &a in q.out_arcs(x) {
            let y = q.arc(a).to;
            if !seen.put(y) {
                parent[y] = Some(a);
                queue.push_back(y);
            }
        }
    }
    let mut arcs = vec![parent[v]?];
    let mut at = q.arc(arcs[0]).from;
    while at != u {
        let a = parent[at].expect("tree arc");
        arcs.push(a);
        at = q.arc(a).from;
    }
    arcs.reverse();
    Some(Walk::from_arcs(arcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nhom::verify_n_hom;

    fn fig2() -> Rgp {
        Rgp::build("a", &["a", "b", "c", "d", "e"], &[("e", "d", "a+"), ("d", "c", "a"), ("c", "b", "a+"), ("b", "a", "a")])
            .unwrap()
    }

    #[test]
    fn figure_two_closure() {
        let d = d_of_q(&fig2()).unwrap();
        assert_eq!(d.arc_count(TwoLabel::A), 2);
        assert!(d.has(3, 2, TwoLabel::A) && d.has(1, 0, TwoLabel::A));
        assert_eq!(d.arc_count(TwoLabel::T), 10);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d.has(u, v, TwoLabel::T), u > v);
            }
        }
    }

    #[test]
    fn two_cycle_closure_has_loops() {
        let q = Rgp::build("a", &["x", "y"], &[("x", "y", "a"), ("y", "x", "a")]).unwrap();
        let d = d_of_q(&q).unwrap();
        assert_eq!(d.arc_count(TwoLabel::A), 2);
        assert_eq!(d.arc_count(TwoLabel::T), 4);
        let lone = Rgp::build("a", &["v"], &[]).unwrap();
        assert!(d_of_q(&lone).unwrap().arcs().is_empty());
    }

    #[test]
    fn general_labels_are_rejected() {
        let q = Rgp::build("ab", &["x"], &[("x", "x", "a|b")]).unwrap();
        assert_eq!(d_of_q(&q), Err(UnaryError::LabelClass(LabelClass::General)));
    }

    #[test]
    fn reduced_plus_arc_lifts() {
        let p = Rgp::build("a", &["x", "y"], &[("x", "y", "a+")]).unwrap();
        let q = fig2();
        let (g, h) = reduce_to_hom(&p, &q).unwrap();
        let map = hom_two_labeled(&g, &h, &Budget::default()).unwrap().unwrap();
        assert!(verify_two_labeled_hom(&g, &h, &map));
        let lifted = lift_to_n_hom(&p, &q, &map).unwrap();
        assert!(verify_n_hom(&p, &q, &lifted));
    }

    #[test]
    fn a_triangle_has_no_image_on_a_path() {
        let p = Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a"), ("z", "x", "a")]).unwrap();
        let (g, h) = reduce_to_hom(&p, &fig2()).unwrap();
        assert_eq!(hom_two_labeled(&g, &h, &Budget::default()).unwrap(), None);
        let (g, h) = reduce_to_hom(&p, &p).unwrap();
        assert!(hom_two_labeled(&g, &h, &Budget::default()).unwrap().is_some());
    }

    #[test]
    fn closed_walk_for_loops() {
        let q = Rgp::build("a", &["x", "y"], &[("x", "y", "a"), ("y", "x", "a+")]).unwrap();
        assert_eq!(shortest_walk(&q, 0, 0).unwrap().arcs(), &[0, 1]);
        assert_eq!(shortest_walk(&q, 0, 1).unwrap().arcs(), &[0]);
    }

    #[test]
    fn exports() {
        let d = d_of_q(&fig2()).unwrap();
        let dot = d.to_dot();
        assert_eq!(dot.matches("style=dashed").count(), 10);
        assert_eq!(dot.matches("style=solid").count(), 2);
        assert!(d.to_json().contains("\"label\": \"t\""));
    }
}
