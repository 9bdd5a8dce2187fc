use fixedbitset::FixedBitSet;

use super::two_labeled::{verify_two_labeled_hom, TwoLabel, TwoLabeledDigraph};
use super::UnaryError;
use crate::rgp::{directed_path_order, Rgp, VertexId};

/// A ternary operation on `0..n`, stored as a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityTable {
    n: usize,
    values: Vec<VertexId>,
}

impl MajorityTable {
    pub fn from_fn(n: usize, f: impl Fn(VertexId, VertexId, VertexId) -> VertexId) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    values.push(f(x, y, z));
                }
            }
        }
        MajorityTable { n, values }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: VertexId, y: VertexId, z: VertexId) -> VertexId {
        self.values[(x * self.n + y) * self.n + z]
    }
}

/// The median by position along the path.
pub fn median_polymorphism(q: &Rgp) -> Result<MajorityTable, UnaryError> {
    let order = directed_path_order(q).ok_or(UnaryError::NotDirectedPath)?;
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    Ok(MajorityTable::from_fn(order.len(), |x, y, z| {
        let mut p = [pos[x], pos[y], pos[z]];
        p.sort_unstable();
        order[p[1]]
    }))
}

/// Majority identities plus: for every label and every triple of arcs with
/// that label, the images of the tails and heads form an arc of that label.
pub fn is_majority_polymorphism(d: &TwoLabeledDigraph, f: &MajorityTable) -> bool {
    let n = d.vertex_count();
    if f.size() != n {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if f.get(x, x, y) != x || f.get(x, y, x) != x || f.get(y, x, x) != x {
                return false;
            }
        }
    }
    for label in [TwoLabel::A, TwoLabel::T] {
        let arcs: Vec<(VertexId, VertexId)> =
            d.arcs().into_iter().filter(|a| a.2 == label).map(|(u, v, _)| (u, v)).collect();
        for &(x1, y1) in &arcs {
            for &(x2, y2) in &arcs {
                for &(x3, y3) in &arcs {
                    if !d.has(f.get(x1, x2, x3), f.get(y1, y2, y3), label) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// How the template's majority polymorphism is vouched for.
#[derive(Clone, Copy, Debug)]
pub enum Majority<'a> {
    /// Checked with [`is_majority_polymorphism`] before solving.
    Certified(&'a MajorityTable),
    /// Taken on trust; a wrong assumption surfaces as a failed extraction.
    Assumed,
}

/// Pairwise value lists with unary domains.
struct PairState {
    n: usize,
    dom: Vec<FixedBitSet>,
    /// `pair[x * n + y][a]`: values of `y` compatible with `x = a`.
    pair: Vec<Vec<FixedBitSet>>,
}

impl PairState {
    fn new(g: &TwoLabeledDigraph, h: &TwoLabeledDigraph) -> Self {
        let (n, m) = (g.vertex_count(), h.vertex_count());
        let mut full = FixedBitSet::with_capacity(m);
        full.insert_range(..);
        let mut dom = vec![full.clone(); n];
        let mut pair = vec![vec![full; m]; n * n];
        for label in [TwoLabel::A, TwoLabel::T] {
            let fwd = h.rows(label);
            let mut bwd = vec![FixedBitSet::with_capacity(m); m];
            for (u, row) in fwd.iter().enumerate() {
                for v in row.ones() {
                    bwd[v].insert(u);
                }
            }
            for (x, y, _) in g.arcs().into_iter().filter(|a| a.2 == label) {
                if x == y {
                    let mut looped = FixedBitSet::with_capacity(m);
                    looped.extend((0..m).filter(|&u| fwd[u].contains(u)));
                    dom[x].intersect_with(&looped);
                    continue;
                }
                for a in 0..m {
                    pair[x * n + y][a].intersect_with(&fwd[a]);
                    pair[y * n + x][a].intersect_with(&bwd[a]);
                }
            }
        }
        PairState { n, dom, pair }
    }

    /// Path consistency to a fixpoint; false on a wipe-out.
    fn establish(&mut self) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    let xy = x * n + y;
                    for a in 0..self.pair[xy].len() {
                        if !self.dom[x].contains(a) {
                            if !self.pair[xy][a].is_clear() {
                                self.pair[xy][a].clear();
                                changed = true;
                            }
                            continue;
                        }
                        let before = self.pair[xy][a].count_ones(..);
                        self.pair[xy][a].intersect_with(&self.dom[y]);
                        for b in self.pair[xy][a].clone().ones() {
                            if !self.pair[y * n + x][b].contains(a) {
                                self.pair[xy][a].set(b, false);
                            }
                        }
                        for z in (0..n).filter(|&z| z != x && z != y) {
                            let mut via = FixedBitSet::with_capacity(self.dom[y].len());
                            for c in self.pair[x * n + z][a].ones() {
                                via.union_with(&self.pair[z * n + y][c]);
                            }
                            self.pair[xy][a].intersect_with(&via);
                        }
                        if self.pair[xy][a].count_ones(..) != before {
                            changed = true;
                        }
                        if self.pair[xy][a].is_clear() {
                            self.dom[x].set(a, false);
                            changed = true;
                        }
                    }
                }
            }
            if self.dom.iter().any(FixedBitSet::is_clear) {
                return false;
            }
            if !changed {
                return true;
            }
        }
    }
}

/// Path consistency followed by greedy value assignment in vertex order.
/// Under a majority polymorphism of `h` the greedy phase never backtracks.
pub fn path_consistency_solve(
    g: &TwoLabeledDigraph,
    h: &TwoLabeledDigraph,
    majority: Majority<'_>,
) -> Result<Option<Vec<VertexId>>, UnaryError> {
    if let Majority::Certified(f) = majority {
        if !is_majority_polymorphism(h, f) {
            return Err(UnaryError::MajorityNotCertified);
        }
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if h.vertex_count() == 0 {
        return Ok(None);
    }
    let mut state = PairState::new(g, h);
    if !state.establish() {
        return Ok(None);
    }
    for x in 0..n {
        let a = state.dom[x].minimum().expect("consistent domains are nonempty");
        state.dom[x].clear();
        state.dom[x].insert(a);
        if !state.establish() {
            return Err(UnaryError::ExtractionFailed);
        }
    }
    let map: Vec<VertexId> = state.dom.iter().map(|d| d.minimum().expect("assigned")).collect();
    if verify_two_labeled_hom(g, h, &map) {
        Ok(Some(map))
    } else {
        Err(UnaryError::ExtractionFailed)
    }
}
