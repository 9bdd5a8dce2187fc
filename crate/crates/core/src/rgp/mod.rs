//! Regular graph patterns.
//!
//! Vertices are addressed by dense indices ([`VertexId`]) and carry a unique,
//! nonempty string name; arcs are addressed by their position ([`ArcId`]).
//! Parallel arcs and loops are allowed.

mod dot;
mod json;
mod structure;

use std::collections::HashMap;

use thiserror::Error;

use crate::regex::{parse_regex, Alphabet, Regex, RegexError, Symbol};

pub use dot::export_dot;
pub(crate) use dot::quote as quote_id;
pub use json::{RgpArcDocument, RgpDocument};
pub use structure::{
    directed_path_order, structural_predicates, verify_unbalanced_witness, weak_components, Balance, LevelAssignment,
    OrientedStep, StructuralReport,
};
pub(crate) use structure::{balance_by, components_by, is_acyclic, is_undirected};

pub type VertexId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RgpError {
    #[error("malformed document: {0}")]
    Schema(String),
    #[error("alphabet entry {0:?} is not a single usable character")]
    InvalidSymbol(String),
    #[error("vertex id must be nonempty")]
    EmptyVertexId,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("arc {arc} references undeclared vertex {vertex:?}")]
    UndeclaredVertex { arc: usize, vertex: String },
    #[error("label of arc {arc}: {source}")]
    Label { arc: usize, source: RegexError },
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("arc index {0} out of range")]
    ArcOutOfRange(ArcId),
    #[error("a walk needs at least one arc")]
    EmptyWalk,
    #[error("walk breaks at position {position}: arcs do not share an endpoint")]
    BrokenWalk { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledArc {
    pub from: VertexId,
    pub to: VertexId,
    pub label: Regex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rgp {
    alphabet: Alphabet,
    names: Vec<String>,
    lookup: HashMap<String, VertexId>,
    arcs: Vec<LabeledArc>,
    out: Vec<Vec<ArcId>>,
}

impl Rgp {
    pub fn new(alphabet: Alphabet) -> Self {
        Rgp { alphabet, names: Vec::new(), lookup: HashMap::new(), arcs: Vec::new(), out: Vec::new() }
    }

    /// Compact constructor: `Rgp::build("ab", &["x", "y"], &[("x", "y", "a+")])`.
    pub fn build(alphabet: &str, vertices: &[&str], arcs: &[(&str, &str, &str)]) -> Result<Self, RgpError> {
        let mut g = Rgp::new(Alphabet::from_chars(alphabet));
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (i, (from, to, label)) in arcs.iter().enumerate() {
            let lookup = |name: &str| {
                g.vertex_id(name).ok_or_else(|| RgpError::UndeclaredVertex { arc: i, vertex: name.to_string() })
            };
            let (f, t) = (lookup(from)?, lookup(to)?);
            let label = parse_regex(label, &g.alphabet).map_err(|source| RgpError::Label { arc: i, source })?;
            g.add_arc(f, t, label)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, RgpError> {
        if name.is_empty() {
            return Err(RgpError::EmptyVertexId);
        }
        if self.lookup.contains_key(name) {
            return Err(RgpError::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        self.out.push(Vec::new());
        Ok(id)
    }

    pub fn add_arc(&mut self, from: VertexId, to: VertexId, label: Regex) -> Result<ArcId, RgpError> {
        for v in [from, to] {
            if v >= self.names.len() {
                return Err(RgpError::VertexOutOfRange(v));
            }
        }
        let arc = self.arcs.len();
        if let Some(symbol) = label.symbols().iter().find(|c| !self.alphabet.contains(*c)) {
            return Err(RgpError::Label { arc, source: RegexError::UnknownSymbol { symbol, position: 0 } });
        }
        self.arcs.push(LabeledArc { from, to, label });
        self.out[from].push(arc);
        Ok(arc)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.lookup.get(name).copied()
    }

    pub fn arcs(&self) -> &[LabeledArc] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> &LabeledArc {
        &self.arcs[a]
    }

    /// Outgoing arcs of `v`, in increasing index order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out[v]
    }

    /// Symbols actually used by some label.
    pub fn used_symbols(&self) -> Alphabet {
        self.arcs.iter().fold(Alphabet::new(), |acc, a| acc.union(&a.label.symbols()))
    }

    /// Distinct labels in order of first appearance.
    pub fn distinct_labels(&self) -> Vec<&Regex> {
        let mut out: Vec<&Regex> = Vec::new();
        for a in &self.arcs {
            if !out.contains(&&a.label) {
                out.push(&a.label);
            }
        }
        out
    }

    /// Same vertices, with arc `removed` deleted. Later arcs shift down by one.
    pub fn without_arc(&self, removed: ArcId) -> Rgp {
        let mut g = self.empty_copy();
        for (i, a) in self.arcs.iter().enumerate() {
            if i != removed {
                g.add_arc(a.from, a.to, a.label.clone()).expect("arc of a valid pattern");
            }
        }
        g
    }

    /// Induced sub-pattern on `keep` (in the given order), restricted to arcs
    /// accepted by `arc_filter`. Returns the pattern and the map from its
    /// vertex indices back to ours.
    pub fn sub_rgp(&self, keep: &[VertexId], arc_filter: impl Fn(ArcId) -> bool) -> (Rgp, Vec<VertexId>) {
        let mut g = Rgp::new(self.alphabet.clone());
        let mut index = vec![None; self.vertex_count()];
        for &v in keep {
            index[v] = Some(g.add_vertex(&self.names[v]).expect("names are unique"));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if let (Some(f), Some(t)) = (index[a.from], index[a.to]) {
                if arc_filter(i) {
                    g.add_arc(f, t, a.label.clone()).expect("arc of a valid pattern");
                }
            }
        }
        (g, keep.to_vec())
    }

    fn empty_copy(&self) -> Rgp {
        let mut g = Rgp::new(self.alphabet.clone());
        for n in &self.names {
            g.add_vertex(n).expect("names are unique");
        }
        g
    }

    /// Whether every label is a bare symbol.
    pub fn is_graph_database(&self) -> bool {
        self.arcs.iter().all(|a| a.label.as_symbol().is_some())
    }

    pub fn label_class(&self) -> LabelClass {
        label_class(self)
    }
}

/// A nonempty directed walk, as a sequence of arc indices of its host pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk(Vec<ArcId>);

impl Walk {
    /// Checks contiguity against `host`.
    pub fn new(host: &Rgp, arcs: Vec<ArcId>) -> Result<Walk, RgpError> {
        if arcs.is_empty() {
            return Err(RgpError::EmptyWalk);
        }
        for &a in &arcs {
            if a >= host.arc_count() {
                return Err(RgpError::ArcOutOfRange(a));
            }
        }
        for (position, pair) in arcs.windows(2).enumerate() {
            if host.arc(pair[0]).to != host.arc(pair[1]).from {
                return Err(RgpError::BrokenWalk { position: position + 1 });
            }
        }
        Ok(Walk(arcs))
    }

    /// For arcs already known to form a walk.
    pub(crate) fn from_arcs(arcs: Vec<ArcId>) -> Walk {
        debug_assert!(!arcs.is_empty());
        Walk(arcs)
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn source(&self, host: &Rgp) -> VertexId {
        host.arc(self.0[0]).from
    }

    pub fn target(&self, host: &Rgp) -> VertexId {
        host.arc(*self.0.last().expect("walks are nonempty")).to
    }

    /// Labels of the traversed arcs, in order.
    pub fn labels(&self, host: &Rgp) -> Vec<Regex> {
        self.0.iter().map(|&a| host.arc(a).label.clone()).collect()
    }

    pub(crate) fn concat(parts: impl IntoIterator<Item = Walk>) -> Walk {
        Walk(parts.into_iter().flat_map(|w| w.0).collect())
    }
}

/// Left-to-right concatenation of the walk's arc labels.
pub fn walk_label(host: &Rgp, walk: &Walk) -> Result<Regex, RgpError> {
    let checked = Walk::new(host, walk.0.clone())?;
    Ok(Regex::concat_all(checked.labels(host)).expect("walks are nonempty"))
}

/// Label shape of a pattern, by syntactic inspection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelClass {
    /// Every label is the same single symbol (vacuously true without arcs).
    AllSingleA,
    /// Every label is `s` or `s+` for one symbol `s`, and `s+` occurs.
    UnaryAAPlus,
    General,
}

fn unary_kind(label: &Regex) -> Option<(Symbol, bool)> {
    if let Some(c) = label.as_symbol() {
        return Some((c, false));
    }
    label.as_plus().and_then(Regex::as_symbol).map(|c| (c, true))
}

pub fn label_class(p: &Rgp) -> LabelClass {
    let mut symbol = None;
    let mut any_plus = false;
    for a in p.arcs() {
        match unary_kind(&a.label) {
            Some((c, plus)) if symbol.is_none_or(|s| s == c) => {
                symbol = Some(c);
                any_plus |= plus;
            }
            _ => return LabelClass::General,
        }
    }
    if any_plus {
        LabelClass::UnaryAAPlus
    } else {
        LabelClass::AllSingleA
    }
}

/// The symbol of a unary `{s, s+}` pattern; `None` for arcless or general patterns.
pub fn unary_symbol(p: &Rgp) -> Option<Symbol> {
    match label_class(p) {
        LabelClass::General => None,
        _ => p.arcs().first().and_then(|a| unary_kind(&a.label)).map(|(c, _)| c),
    }
}

/// Whether the arc's label is the plus form `s+` (as opposed to `s`).
pub fn is_plus_label(label: &Regex) -> bool {
    unary_kind(label).is_some_and(|(_, plus)| plus)
}
