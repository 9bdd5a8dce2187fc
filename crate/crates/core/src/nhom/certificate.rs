use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::NHomomorphism;
use crate::rgp::{Rgp, RgpError, Walk};

/// Wire form of an n-homomorphism: pattern vertex name to target vertex
/// name, and pattern arc index to the target arc indices of its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub map: BTreeMap<String, String>,
    pub witnesses: BTreeMap<usize, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Schema(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("pattern vertex {0:?} has no image")]
    Unmapped(String),
    #[error("pattern arc {0} has no witness")]
    MissingWitness(usize),
    #[error("witness of arc {arc}: {source}")]
    Walk { arc: usize, source: RgpError },
}

impl Certificate {
    pub fn from_hom(p: &Rgp, q: &Rgp, h: &NHomomorphism) -> Self {
        Certificate {
            map: p.vertices().map(|x| (p.vertex_name(x).to_string(), q.vertex_name(h.map[x]).to_string())).collect(),
            witnesses: h.witnesses.iter().enumerate().map(|(i, w)| (i, w.arcs().to_vec())).collect(),
        }
    }

    /// Resolves names and indices; walk contiguity is checked, the arc
    /// conditions are left to `verify_n_hom`.
    pub fn to_hom(&self, p: &Rgp, q: &Rgp) -> Result<NHomomorphism, CertificateError> {
        for name in self.map.keys() {
            if p.vertex_id(name).is_none() {
                return Err(CertificateError::UnknownVertex(name.clone()));
            }
        }
        let map = p
            .vertex_names()
            .iter()
            .map(|name| {
                let image = self.map.get(name).ok_or_else(|| CertificateError::Unmapped(name.clone()))?;
                q.vertex_id(image).ok_or_else(|| CertificateError::UnknownVertex(image.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let witnesses = (0..p.arc_count())
            .map(|arc| {
                let arcs = self.witnesses.get(&arc).ok_or(CertificateError::MissingWitness(arc))?;
                Walk::new(q, arcs.clone()).map_err(|source| CertificateError::Walk { arc, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NHomomorphism { map, witnesses })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Schema(e.to_string()))
    }
}
