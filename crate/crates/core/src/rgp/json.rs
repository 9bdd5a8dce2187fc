use serde::{Deserialize, Serialize};

use super::{Rgp, RgpError};
use crate::regex::{parse_regex, Alphabet};

/// Wire form of a pattern: `{"alphabet": [...], "vertices": [...], "arcs": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RgpDocument {
    pub alphabet: Vec<String>,
    pub vertices: Vec<String>,
    pub arcs: Vec<RgpArcDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RgpArcDocument {
    pub from: String,
    pub to: String,
    pub label: String,
}

impl RgpDocument {
    pub fn to_rgp(&self) -> Result<Rgp, RgpError> {
        let mut alphabet = Alphabet::new();
        for entry in &self.alphabet {
            let mut chars = entry.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if Alphabet::is_valid_symbol(c) => {
                    alphabet.insert(c);
                }
                _ => return Err(RgpError::InvalidSymbol(entry.clone())),
            }
        }
        let mut g = Rgp::new(alphabet);
        for v in &self.vertices {
            g.add_vertex(v)?;
        }
        for (i, arc) in self.arcs.iter().enumerate() {
            let lookup = |name: &str| {
                g.vertex_id(name).ok_or_else(|| RgpError::UndeclaredVertex { arc: i, vertex: name.to_string() })
            };
            let (from, to) = (lookup(&arc.from)?, lookup(&arc.to)?);
            let label = parse_regex(&arc.label, g.alphabet()).map_err(|source| RgpError::Label { arc: i, source })?;
            g.add_arc(from, to, label)?;
        }
        Ok(g)
    }

    pub fn from_rgp(p: &Rgp) -> Self {
        RgpDocument {
            alphabet: p.alphabet().iter().map(String::from).collect(),
            vertices: p.vertex_names().to_vec(),
            arcs: p
                .arcs()
                .iter()
                .map(|a| RgpArcDocument {
                    from: p.vertex_name(a.from).to_string(),
                    to: p.vertex_name(a.to).to_string(),
                    label: a.label.to_string(),
                })
                .collect(),
        }
    }
}

impl Rgp {
    pub fn from_json(text: &str) -> Result<Rgp, RgpError> {
        let doc: RgpDocument = serde_json::from_str(text).map_err(|e| RgpError::Schema(e.to_string()))?;
        doc.to_rgp()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RgpDocument::from_rgp(self)).expect("documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let g = Rgp::from_json(r#"{"alphabet":["a"],"vertices":["v"],"arcs":[]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.arc_count()), (1, 0));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"alphabet":["a","b"],"vertices":["x","y","s"],
            "arcs":[{"from":"x","to":"s","label":"b"},{"from":"y","to":"s","label":"a+"}]}"#;
        let g = Rgp::from_json(text).unwrap();
        assert_eq!(Rgp::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn validation_errors() {
        let undeclared = r#"{"alphabet":["a"],"vertices":["v"],"arcs":[{"from":"v","to":"w","label":"a"}]}"#;
        assert!(matches!(Rgp::from_json(undeclared), Err(RgpError::UndeclaredVertex { arc: 0, .. })));
        let foreign = r#"{"alphabet":["a"],"vertices":["v"],"arcs":[{"from":"v","to":"v","label":"b"}]}"#;
        assert!(matches!(Rgp::from_json(foreign), Err(RgpError::Label { arc: 0, .. })));
        let extra = r#"{"alphabet":["a"],"vertices":["v"],"arcs":[],"extra":1}"#;
        assert!(matches!(Rgp::from_json(extra), Err(RgpError::Schema(_))));
        let bad_symbol = r#"{"alphabet":["ab"],"vertices":["v"],"arcs":[]}"#;
        assert!(matches!(Rgp::from_json(bad_symbol), Err(RgpError::InvalidSymbol(_))));
        let meta = r#"{"alphabet":["*"],"vertices":["v"],"arcs":[]}"#;
        assert!(matches!(Rgp::from_json(meta), Err(RgpError::InvalidSymbol(_))));
        let empty_id = r#"{"alphabet":["a"],"vertices":[""],"arcs":[]}"#;
        assert!(matches!(Rgp::from_json(empty_id), Err(RgpError::EmptyVertexId)));
    }
}
