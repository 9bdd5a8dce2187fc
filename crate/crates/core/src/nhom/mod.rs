//! Deciding `P -n-> Q` for arbitrary patterns.
//!
//! Each distinct pattern label is compiled once into its walk relation over
//! `Q`. The problem is then a classical homomorphism question: map the
//! vertices of `P` so that every arc lands on a pair of its label's relation.

mod certificate;
mod ncore;
mod dispatch;

use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::csp::{Csp, Limits, Relation};
use crate::regex::concat_inclusion;
use crate::rgp::{Rgp, VertexId, Walk};
use crate::walk::RelationCache;

pub use self::certificate::{Certificate, CertificateError};
pub use self::ncore::{find_core, find_retraction, is_n_core, is_n_core_with, n_hom_equivalent, NCoreVerdict, Removed};
pub use self::dispatch::{solve, Solver};

/// Search limits for one decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 10_000_000, time_limit: Duration::from_secs(60) }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, ..Budget::default() }
    }

    pub(crate) fn limits(&self, started: Instant) -> Limits {
        Limits { max_nodes: self.max_nodes, deadline: started.checked_add(self.time_limit) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("time limit exceeded")]
    TimeExceeded,
    #[error("solver not applicable: {0}")]
    NotApplicable(String),
}

/// A vertex map with one witness walk per pattern arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NHomomorphism {
    pub map: Vec<VertexId>,
    pub witnesses: Vec<Walk>,
}

impl NHomomorphism {
    /// Identity on `p`, each arc witnessed by itself.
    pub fn identity(p: &Rgp) -> Self {
        NHomomorphism { map: p.vertices().collect(), witnesses: (0..p.arc_count()).map(|a| Walk::from_arcs(vec![a])).collect() }
    }

    /// `other ∘ self`: each witness arc of `self` is replaced by `other`'s
    /// witness for it.
    pub fn then(&self, other: &NHomomorphism) -> NHomomorphism {
        NHomomorphism {
            map: self.map.iter().map(|&v| other.map[v]).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|w| Walk::concat(w.arcs().iter().map(|&b| other.witnesses[b].clone())))
                .collect(),
        }
    }
}

pub fn compose(h1: &NHomomorphism, h2: &NHomomorphism) -> NHomomorphism {
    h1.then(h2)
}

/// Checks every arc obligation of `h` from scratch.
pub fn verify_n_hom(p: &Rgp, q: &Rgp, h: &NHomomorphism) -> bool {
    if h.map.len() != p.vertex_count() || h.witnesses.len() != p.arc_count() {
        return false;
    }
    if h.map.iter().any(|&v| v >= q.vertex_count()) {
        return false;
    }
    p.arcs().iter().zip(&h.witnesses).all(|(arc, w)| {
        let Ok(w) = Walk::new(q, w.arcs().to_vec()) else { return false };
        w.source(q) == h.map[arc.from] && w.target(q) == h.map[arc.to] && concat_inclusion(&w.labels(q), &arc.label).holds()
    })
}

pub fn n_hom(p: &Rgp, q: &Rgp) -> Result<Option<NHomomorphism>, SolveError> {
    n_hom_with(p, q, &Budget::default(), 1)
}

/// As [`n_hom`], with explicit limits and `jobs` threads for relation
/// precomputation.
pub fn n_hom_with(p: &Rgp, q: &Rgp, budget: &Budget, jobs: usize) -> Result<Option<NHomomorphism>, SolveError> {
    let cache = RelationCache::new(q);
    n_hom_cached(p, &cache, &[], budget, jobs)
}

/// Core search against a shared relation cache; `pins` fixes images.
pub(crate) fn n_hom_cached(
    p: &Rgp,
    cache: &RelationCache<'_>,
    pins: &[(VertexId, VertexId)],
    budget: &Budget,
    jobs: usize,
) -> Result<Option<NHomomorphism>, SolveError> {
    let started = Instant::now();
    let q = cache.target();
    let labels = p.distinct_labels();
    cache.precompute(&labels, jobs);
    if Instant::now().duration_since(started) > budget.time_limit {
        return Err(SolveError::TimeExceeded);
    }
    let m = q.vertex_count();
    let mut csp = Csp::new(p.vertex_count(), m);
    let mut relations = Vec::with_capacity(labels.len());
    for e in &labels {
        let r = cache.get(e);
        relations.push((*e, Arc::new(Relation::from_rows((0..m).map(|u| r.row(u).clone()).collect()))));
    }
    for arc in p.arcs() {
        let (_, rel) = relations.iter().find(|(e, _)| **e == arc.label).expect("label was compiled");
        csp.add(arc.from, arc.to, Arc::clone(rel));
    }
    for &(x, v) in pins {
        csp.pin(x, v);
    }
    let map = match csp.solve(budget.limits(started)) {
        Ok(Some(map)) => map,
        Ok(None) => return Ok(None),
        Err(e) if e.nodes > budget.max_nodes => return Err(SolveError::BudgetExceeded { nodes: budget.max_nodes }),
        Err(_) => return Err(SolveError::TimeExceeded),
    };
    let witnesses = p
        .arcs()
        .iter()
        .map(|arc| cache.get(&arc.label).witness(map[arc.from], map[arc.to]).expect("pair is in the relation").clone())
        .collect();
    Ok(Some(NHomomorphism { map, witnesses }))
}
