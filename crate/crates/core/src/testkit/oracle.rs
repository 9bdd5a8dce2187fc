use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use super::derivative::{images, Term, WordCap};
use crate::nhom::NHomomorphism;
use crate::regex::Regex;
use crate::rgp::{ArcId, Rgp, VertexId, Walk};

/// Caps for the brute-force oracle. Hitting any of them is an error, never
/// a silent negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_walk_len: usize,
    pub max_word_len: usize,
    pub max_mappings: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_walk_len: 64, max_word_len: 64, max_mappings: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("walk search still growing at length {cap}")]
    WalkCap { cap: usize },
    #[error("derivative search still growing at word length {cap}")]
    WordCap { cap: usize },
    #[error("{count} vertex maps exceed the cap of {cap}")]
    MappingCap { count: u64, cap: u64 },
}

impl From<WordCap> for OracleError {
    fn from(e: WordCap) -> Self {
        OracleError::WordCap { cap: e.cap }
    }
}

/// `(u, v) -> walk` for every pair joined by a walk whose language lies in
/// `L(e)`.
pub type GoodPairs = HashMap<(VertexId, VertexId), Walk>;

/// Breadth-first search over `(vertex, {∂_w e : w ∈ L(walk)})`. A walk
/// qualifies when every derivative in its signature is nullable, and two
/// walks with equal signatures and endpoints have the same extensions.
pub fn oracle_walks(q: &Rgp, e: &Regex, budget: &OracleBudget) -> Result<GoodPairs, OracleError> {
    let target = Term::from(e);
    let labels: Vec<Term> = q.arcs().iter().map(|a| Term::from(&a.label)).collect();
    let mut step_cache: HashMap<(usize, Term), BTreeSet<Term>> = HashMap::new();
    let mut step = |arc: ArcId, d: &Term| -> Result<BTreeSet<Term>, OracleError> {
        if let Some(s) = step_cache.get(&(arc, d.clone())) {
            return Ok(s.clone());
        }
        let s = images(&labels[arc], d, budget.max_word_len)?;
        step_cache.insert((arc, d.clone()), s.clone());
        Ok(s)
    };
    let mut out = GoodPairs::new();
    for u in q.vertices() {
        let mut seen: HashSet<(VertexId, BTreeSet<Term>)> = HashSet::new();
        let mut layer: Vec<(VertexId, BTreeSet<Term>, Vec<ArcId>)> = Vec::new();
        let start = BTreeSet::from([target.clone()]);
        for depth in 0.. {
            let mut next = Vec::new();
            let frontier: Vec<(VertexId, &BTreeSet<Term>, Vec<ArcId>)> = if depth == 0 {
                vec![(u, &start, Vec::new())]
            } else {
                layer.iter().map(|(v, s, w)| (*v, s, w.clone())).collect()
            };
            for (v, sig, walk) in frontier {
                for &a in q.out_arcs(v) {
                    let mut succ = BTreeSet::new();
                    for d in sig {
                        succ.extend(step(a, d)?);
                    }
                    let to = q.arc(a).to;
                    if seen.insert((to, succ.clone())) {
                        let mut w = walk.clone();
                        w.push(a);
                        if succ.iter().all(Term::nullable) {
                            out.entry((u, to)).or_insert_with(|| Walk::from_arcs(w.clone()));
                        }
                        next.push((to, succ, w));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            if depth == budget.max_walk_len {
                return Err(OracleError::WalkCap { cap: budget.max_walk_len });
            }
            layer = next;
        }
    }
    Ok(out)
}

/// Exhaustive search over all vertex maps, with walks checked by
/// derivatives instead of automata.
pub fn oracle_n_hom(p: &Rgp, q: &Rgp, budget: &OracleBudget) -> Result<Option<NHomomorphism>, OracleError> {
    let (n, m) = (p.vertex_count(), q.vertex_count());
    let count = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if count > budget.max_mappings {
        return Err(OracleError::MappingCap { count, cap: budget.max_mappings });
    }
    let mut tables: HashMap<&Regex, GoodPairs> = HashMap::new();
    for a in p.arcs() {
        if !tables.contains_key(&a.label) {
            tables.insert(&a.label, oracle_walks(q, &a.label, budget)?);
        }
    }
    for code in 0..count {
        let map: Vec<VertexId> = (0..n).map(|i| (code / (m as u64).pow(i as u32) % m as u64) as usize).collect();
        let ok = p.arcs().iter().all(|a| tables[&a.label].contains_key(&(map[a.from], map[a.to])));
        if ok {
            let witnesses = p.arcs().iter().map(|a| tables[&a.label][&(map[a.from], map[a.to])].clone()).collect();
            return Ok(Some(NHomomorphism { map, witnesses }));
        }
    }
    Ok(None)
}
