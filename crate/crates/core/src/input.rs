//! JSON input for arrangements.
//!
//! ```json
//! {"name": "braid", "kind": "normals", "normals": [[1,0,0], [0,1,0], ...]}
//! {"name": "x", "kind": "line-combinatorics", "n": 6, "flats": [[0,1,2], ...]}
//! {"name": "k4", "kind": "graph", "graph": {"vertices": 4, "edges": [[0,1], ...]}}
//! ```

use serde::{Deserialize, Serialize};

use crate::combinatorics::{from_normals, Graph, LineCombinatorics};
use crate::error::{Error, Result};
use crate::registry::Arrangement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    Normals,
    LineCombinatorics,
    Graph,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementInput {
    pub name: String,
    pub kind: InputKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flats: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphInput>,
}

/// Parses and schema-checks an input document; errors carry the JSON path.
pub fn parse_input(bytes: &[u8]) -> Result<ArrangementInput> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Input(format!("input is not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let input: ArrangementInput = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Input(format!("at {path}: {}", e.into_inner()))
    })?;
    input.check_payload()?;
    Ok(input)
}

impl ArrangementInput {
    fn check_payload(&self) -> Result<()> {
        let present = [
            ("normals", self.normals.is_some()),
            ("n", self.n.is_some()),
            ("flats", self.flats.is_some()),
            ("graph", self.graph.is_some()),
        ];
        let wanted: &[&str] = match self.kind {
            InputKind::Normals => &["normals"],
            InputKind::LineCombinatorics => &["n", "flats"],
            InputKind::Graph => &["graph"],
        };
        for (field, there) in present {
            let needed = wanted.contains(&field);
            if needed && !there {
                return Err(Error::Input(format!("at {field}: required for kind {:?}", self.kind)));
            }
            if !needed && there {
                return Err(Error::Input(format!("at {field}: not allowed for kind {:?}", self.kind)));
            }
        }
        Ok(())
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        match self.kind {
            InputKind::Normals => {
                let lc = from_normals(self.normals.as_deref().unwrap_or_default())?;
                Ok(Arrangement::from_lines(self.name.clone(), lc))
            }
            InputKind::LineCombinatorics => {
                let n = self.n.unwrap_or_default();
                let lc = LineCombinatorics::new(n, self.flats.as_deref().unwrap_or_default())?;
                Ok(Arrangement::from_lines(self.name.clone(), lc))
            }
            InputKind::Graph => {
                let g = self.graph.as_ref().expect("checked payload");
                let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
                Arrangement::from_graph(self.name.clone(), Graph::new(g.vertices, &edges)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn braid_normals() {
        let doc = serde_json::json!({"name": "braid", "kind": "normals", "normals": registry::braid_normals()});
        let a = parse_input(doc.to_string().as_bytes()).unwrap().to_arrangement().unwrap();
        assert_eq!(a.lc.multiple_flats().count(), 4);
        assert_eq!(a.lc, registry::braid().lc);
    }

    #[test]
    fn triangle_graph() {
        let doc = br#"{"name":"t","kind":"graph","graph":{"vertices":4,"edges":[[0,1],[1,2],[2,0]]}}"#;
        let a = parse_input(doc).unwrap().to_arrangement().unwrap();
        assert_eq!(a.n(), 3);
        assert_eq!(a.lc.multiple_flats().count(), 1);
    }

    #[test]
    fn overlapping_flats_rejected() {
        let doc = br#"{"name":"x","kind":"line-combinatorics","n":5,"flats":[[0,1,2],[0,1,3]]}"#;
        let err = parse_input(doc).unwrap().to_arrangement().unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn schema_errors_have_paths() {
        let err = parse_input(br#"{"name":"x","kind":"graph","graph":{"vertices":"4","edges":[]}}"#).unwrap_err();
        assert!(err.to_string().contains("graph.vertices"), "{err}");
        let err = parse_input(br#"{"name":"x","kind":"normals","n":3}"#).unwrap_err();
        assert!(err.to_string().contains("normals"), "{err}");
        let err = parse_input(br#"{"name":"x","kind":"planes"}"#).unwrap_err();
        assert!(err.to_string().contains("kind"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
}
