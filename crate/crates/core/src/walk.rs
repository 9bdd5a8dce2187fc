//! Witness walks for one pattern label over a target pattern.
//!
//! The pattern label `E` is determinized. A search node is a pair `(S, v)`:
//! `S` is the exact set of DFA states reached by the words of the walk read
//! so far, and `v` is the current target vertex. Crossing an arc labelled `B`
//! maps `S` to the states reachable from `S` by some word of `L(B)`, so every
//! node has exactly one successor per outgoing arc and the search is a plain
//! breadth-first search. A walk qualifies iff its final `S` contains only
//! accepting states.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::regex::{compile_nfa, determinize, Dfa, Regex};
use crate::rgp::{ArcId, Rgp, RgpError, VertexId, Walk};

/// `2^d * n`, saturating.
pub fn walk_bound(dfa_states: usize, vertices: usize) -> usize {
    u32::try_from(dfa_states)
        .ok()
        .and_then(|d| 1usize.checked_shl(d))
        .filter(|&p| p != 0)
        .and_then(|p| p.checked_mul(vertices))
        .unwrap_or(usize::MAX)
}

/// Per target label `B` and DFA state `q`: the states reachable from `q` by
/// some word of `L(B)`.
#[derive(Clone, Debug)]
pub struct LabelImageTable {
    images: Vec<Vec<FixedBitSet>>,
    /// Index into `images` for every target arc.
    arc_label: Vec<usize>,
}

impl LabelImageTable {
    fn new(dfa: &Dfa, q: &Rgp) -> Self {
        let labels = q.distinct_labels();
        let images = labels.iter().map(|b| label_images(dfa, b)).collect();
        let arc_label =
            q.arcs().iter().map(|a| labels.iter().position(|&b| *b == a.label).expect("label is listed")).collect();
        LabelImageTable { images, arc_label }
    }

    pub fn image(&self, arc: ArcId, state: usize) -> &FixedBitSet {
        &self.images[self.arc_label[arc]][state]
    }

    fn image_of_set(&self, arc: ArcId, set: &FixedBitSet) -> FixedBitSet {
        let rows = &self.images[self.arc_label[arc]];
        let mut out = FixedBitSet::with_capacity(set.len());
        for s in set.ones() {
            out.union_with(&rows[s]);
        }
        out
    }
}

/// Reachability in the product of `dfa` with the automaton of `b`, from each
/// DFA state, collecting DFA states paired with accepting states of `b`.
fn label_images(dfa: &Dfa, b: &Regex) -> Vec<FixedBitSet> {
    let nfa = compile_nfa(b);
    let (nd, nb) = (dfa.num_states(), nfa.num_states());
    (0..nd)
        .map(|start| {
            let mut seen = FixedBitSet::with_capacity(nd * nb);
            let mut out = FixedBitSet::with_capacity(nd);
            let mut stack = vec![(start, nfa.initial())];
            seen.insert(start * nb + nfa.initial());
            while let Some((d, s)) = stack.pop() {
                if nfa.is_accepting(s) {
                    out.insert(d);
                }
                for &(c, t) in nfa.transitions_from(s) {
                    let d2 = dfa.step(d, c).expect("dfa alphabet covers target symbols");
                    if !seen.put(d2 * nb + t) {
                        stack.push((d2, t));
                    }
                }
            }
            out
        })
        .collect()
}

/// Search state shared by all queries for one label over one target.
#[derive(Clone, Debug)]
pub struct WalkSearch<'q> {
    q: &'q Rgp,
    dfa: Dfa,
    table: LabelImageTable,
}

struct Reached {
    /// Per target vertex, the first accepting node found (BFS order).
    hits: Vec<Option<usize>>,
    parent: Vec<Option<(usize, ArcId)>>,
}

impl<'q> WalkSearch<'q> {
    pub fn new(q: &'q Rgp, e: &Regex) -> Self {
        let sigma = q.alphabet().union(&q.used_symbols()).union(&e.symbols());
        let dfa = determinize(&compile_nfa(e), &sigma);
        let table = LabelImageTable::new(&dfa, q);
        WalkSearch { q, dfa, table }
    }

    pub fn dfa_state_count(&self) -> usize {
        self.dfa.num_states()
    }

    /// Upper bound on the length of any walk this search returns.
    pub fn bound(&self) -> usize {
        walk_bound(self.dfa.num_states(), self.q.vertex_count())
    }

    pub fn image_table(&self) -> &LabelImageTable {
        &self.table
    }

    fn accepting(&self, set: &FixedBitSet) -> bool {
        set.is_subset(self.dfa.accepting_set())
    }

    fn dead(&self, set: &FixedBitSet) -> bool {
        self.dfa.sink().is_some_and(|k| set.contains(k))
    }

    /// Breadth-first search from `u`; stops early once `stop_at` is reached.
    fn explore(&self, u: VertexId, stop_at: Option<VertexId>) -> Reached {
        let n = self.q.vertex_count();
        let mut start = FixedBitSet::with_capacity(self.dfa.num_states());
        start.insert(self.dfa.initial());
        let mut index: HashMap<(FixedBitSet, VertexId), usize> = HashMap::new();
        let mut nodes: Vec<(FixedBitSet, VertexId)> = Vec::new();
        let mut parent = Vec::new();
        let mut hits = vec![None; n];
        // the zero-length start is not indexed: walks need at least one arc,
        // so reaching ({initial}, u) again is a genuine new node
        nodes.push((start, u));
        parent.push(None);
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let x = nodes[id].1;
            for &arc in self.q.out_arcs(x) {
                let next = self.table.image_of_set(arc, &nodes[id].0);
                if self.dead(&next) {
                    continue;
                }
                let y = self.q.arc(arc).to;
                let accepting = self.accepting(&next);
                let fresh = match index.entry((next, y)) {
                    Entry::Occupied(_) => None,
                    Entry::Vacant(slot) => {
                        let new_id = nodes.len();
                        nodes.push(slot.key().clone());
                        slot.insert(new_id);
                        parent.push(Some((id, arc)));
                        Some(new_id)
                    }
                };
                let Some(new_id) = fresh else { continue };
                if accepting && hits[y].is_none() {
                    hits[y] = Some(new_id);
                    if stop_at == Some(y) {
                        return Reached { hits, parent };
                    }
                }
                queue.push_back(new_id);
            }
        }
        Reached { hits, parent }
    }

    fn rebuild(parent: &[Option<(usize, ArcId)>], mut node: usize) -> Walk {
        let mut arcs = Vec::new();
        while let Some((prev, arc)) = parent[node] {
            arcs.push(arc);
            node = prev;
        }
        arcs.reverse();
        Walk::from_arcs(arcs)
    }

    /// A shortest qualifying walk from `u` to `v`, if any.
    pub fn find(&self, u: VertexId, v: VertexId) -> Result<Option<Walk>, RgpError> {
        for x in [u, v] {
            if x >= self.q.vertex_count() {
                return Err(RgpError::VertexOutOfRange(x));
            }
        }
        let r = self.explore(u, Some(v));
        Ok(r.hits[v].map(|node| Self::rebuild(&r.parent, node)))
    }

    /// Shortest qualifying walks from `u` to every reachable target vertex.
    pub fn from_source(&self, u: VertexId) -> Vec<Option<Walk>> {
        let r = self.explore(u, None);
        r.hits.iter().map(|h| h.map(|node| Self::rebuild(&r.parent, node))).collect()
    }
}

/// A walk from `u` to `v` in `q` whose label language is included in `L(e)`.
pub fn find_walk(q: &Rgp, u: VertexId, v: VertexId, e: &Regex) -> Result<Option<Walk>, RgpError> {
    WalkSearch::new(q, e).find(u, v)
}

/// All pairs `(u, v)` of target vertices joined by a qualifying walk, with
/// one shortest witness each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRelation {
    label: Regex,
    n: usize,
    rows: Vec<FixedBitSet>,
    witnesses: Vec<Option<Walk>>,
    dfa_states: usize,
}

impl WalkRelation {
    pub fn label(&self) -> &Regex {
        &self.label
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u].contains(v)
    }

    /// Targets related to `u`, as a bitset over target vertices.
    pub fn row(&self, u: VertexId) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn witness(&self, u: VertexId, v: VertexId) -> Option<&Walk> {
        self.witnesses[u * self.n + v].as_ref()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].ones().map(move |v| (u, v)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// State count of the label's DFA, the `d` of the walk-length bound.
    pub fn dfa_state_count(&self) -> usize {
        self.dfa_states
    }
}

pub fn relation_for_label(q: &Rgp, e: &Regex) -> WalkRelation {
    let search = WalkSearch::new(q, e);
    let n = q.vertex_count();
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    let mut witnesses = vec![None; n * n];
    for u in 0..n {
        for (v, w) in search.from_source(u).into_iter().enumerate() {
            if let Some(w) = w {
                rows[u].insert(v);
                witnesses[u * n + v] = Some(w);
            }
        }
    }
    WalkRelation { label: e.clone(), n, rows, witnesses, dfa_states: search.dfa_state_count() }
}

/// Memo of walk relations over one target, keyed by label structure.
#[derive(Debug)]
pub struct RelationCache<'q> {
    q: &'q Rgp,
    memo: Mutex<HashMap<Regex, Arc<WalkRelation>>>,
}

impl<'q> RelationCache<'q> {
    pub fn new(q: &'q Rgp) -> Self {
        RelationCache { q, memo: Mutex::new(HashMap::new()) }
    }

    pub fn target(&self) -> &'q Rgp {
        self.q
    }

    pub fn get(&self, e: &Regex) -> Arc<WalkRelation> {
        if let Some(r) = self.memo.lock().expect("memo lock").get(e) {
            return Arc::clone(r);
        }
        let r = Arc::new(relation_for_label(self.q, e));
        Arc::clone(self.memo.lock().expect("memo lock").entry(e.clone()).or_insert(r))
    }

    /// Computes the relations of all `labels`, on `jobs` worker threads.
    pub fn precompute(&self, labels: &[&Regex], jobs: usize) {
        if jobs <= 1 || labels.len() <= 1 {
            for e in labels {
                self.get(e);
            }
            return;
        }
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| labels.par_iter().for_each(|e| drop(self.get(e)))),
            Err(_) => labels.iter().for_each(|e| drop(self.get(e))),
        }
    }

    pub fn len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
