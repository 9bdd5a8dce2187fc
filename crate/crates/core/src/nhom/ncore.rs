use super::{n_hom_cached, n_hom_with, Budget, NHomomorphism, SolveError};
use crate::walk::RelationCache;
use crate::rgp::{ArcId, Rgp, VertexId, Walk};

/// What was deleted to obtain the proper sub-pattern of a non-core.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Removed {
    Arc(ArcId),
    Vertex(VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NCoreVerdict {
    Core,
    /// `retraction` maps the pattern into `sub`, the pattern minus `removed`.
    NotCore { removed: Removed, sub: Rgp, retraction: NHomomorphism },
}

impl NCoreVerdict {
    pub fn is_core(&self) -> bool {
        matches!(self, NCoreVerdict::Core)
    }
}

pub fn is_n_core(p: &Rgp) -> Result<NCoreVerdict, SolveError> {
    is_n_core_with(p, &Budget::default())
}

/// Every proper sub-pattern embeds into one missing a single arc or a single
/// isolated vertex, and embeddings compose, so only those are tried.
pub fn is_n_core_with(p: &Rgp, budget: &Budget) -> Result<NCoreVerdict, SolveError> {
    if let Some(verdict) = isolated_vertex_retraction(p) {
        return Ok(verdict);
    }
    for a in 0..p.arc_count() {
        let sub = p.without_arc(a);
        if let Some(h) = n_hom_with(p, &sub, budget, 1)? {
            return Ok(NCoreVerdict::NotCore { removed: Removed::Arc(a), sub, retraction: h });
        }
    }
    Ok(NCoreVerdict::Core)
}

fn isolated_vertex_retraction(p: &Rgp) -> Option<NCoreVerdict> {
    if p.vertex_count() < 2 {
        return None;
    }
    let mut touched = vec![false; p.vertex_count()];
    for a in p.arcs() {
        touched[a.from] = true;
        touched[a.to] = true;
    }
    let v = touched.iter().position(|t| !t)?;
    let keep: Vec<VertexId> = p.vertices().filter(|&x| x != v).collect();
    let (sub, _) = p.sub_rgp(&keep, |_| true);
    let index = |x: VertexId| if x < v { x } else { x - 1 };
    let map = p.vertices().map(|x| if x == v { 0 } else { index(x) }).collect();
    let witnesses = (0..p.arc_count()).map(|a| Walk::from_arcs(vec![a])).collect();
    Some(NCoreVerdict::NotCore { removed: Removed::Vertex(v), sub, retraction: NHomomorphism { map, witnesses } })
}

/// Repeated retraction down to an n-core, with the composed map into it.
pub fn find_core(p: &Rgp, budget: &Budget) -> Result<(Rgp, NHomomorphism), SolveError> {
    let mut current = p.clone();
    let mut total = NHomomorphism::identity(p);
    loop {
        match is_n_core_with(&current, budget)? {
            NCoreVerdict::Core => return Ok((current, total)),
            NCoreVerdict::NotCore { sub, retraction, .. } => {
                total = total.then(&retraction);
                current = sub;
            }
        }
    }
}

/// An n-homomorphism from `p` onto the sub-pattern induced by `keep` that
/// fixes every kept vertex. The map is into the sub-pattern's indices.
pub fn find_retraction(
    p: &Rgp,
    keep: &[VertexId],
    budget: &Budget,
) -> Result<Option<(Rgp, NHomomorphism)>, SolveError> {
    let (sub, _) = p.sub_rgp(keep, |_| true);
    let cache = RelationCache::new(&sub);
    let pins: Vec<(VertexId, VertexId)> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Ok(n_hom_cached(p, &cache, &pins, budget, 1)?.map(|h| (sub, h)))
}

pub fn n_hom_equivalent(p: &Rgp, q: &Rgp, budget: &Budget) -> Result<bool, SolveError> {
    Ok(n_hom_with(p, q, budget, 1)?.is_some() && n_hom_with(q, p, budget, 1)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nhom::verify_n_hom;

    #[test]
    fn single_vertex_is_core() {
        let g = Rgp::build("a", &["v"], &[]).unwrap();
        assert!(is_n_core(&g).unwrap().is_core());
    }

    #[test]
    fn isolated_vertex_is_removed() {
        let g = Rgp::build("a", &["u", "v", "w"], &[("u", "w", "a")]).unwrap();
        match is_n_core(&g).unwrap() {
            NCoreVerdict::NotCore { removed: Removed::Vertex(1), sub, retraction } => {
                assert_eq!(sub.vertex_count(), 2);
                assert!(verify_n_hom(&g, &sub, &retraction));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parallel_arc_is_redundant() {
        let g = Rgp::build("ab", &["u", "v"], &[("u", "v", "a"), ("u", "v", "a|b")]).unwrap();
        match is_n_core(&g).unwrap() {
            NCoreVerdict::NotCore { removed, sub, retraction } => {
                assert_eq!(removed, Removed::Arc(1));
                assert!(verify_n_hom(&g, &sub, &retraction));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn glued_cycles_reduce_to_a_core() {
        let g = Rgp::build("a", &["o", "p", "q", "r"], &[
            ("o", "p", "a+"),
            ("p", "o", "a+"),
            ("o", "q", "a+"),
            ("q", "r", "a+"),
            ("r", "o", "a+"),
        ])
        .unwrap();
        assert!(!is_n_core(&g).unwrap().is_core());
        let (core, h) = find_core(&g, &Budget::default()).unwrap();
        assert!(verify_n_hom(&g, &core, &h));
        assert!(core.arc_count() < g.arc_count());
        assert!(n_hom_equivalent(&g, &core, &Budget::default()).unwrap());
    }
}
