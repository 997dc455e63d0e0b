use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DeltaComplex, Edge, Tetrahedron, Triangle};
use crate::error::{from_json_str, Error, Result};

pub const TRIANGULATION_FORMAT: &str = "smfc-triangulation/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    id: usize,
    ends: [usize; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleEntry {
    id: usize,
    vertices: [usize; 3],
    edges: [usize; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TetEntry {
    id: usize,
    vertices: [usize; 4],
    edges: [usize; 6],
    faces: [usize; 4],
    sign: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TetraListEntry {
    vertices: [usize; 4],
    sign: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangulationFile {
    format: String,
    vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<EdgeEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triangles: Option<Vec<TriangleEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tetrahedra: Option<Vec<TetEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tetra_list: Option<Vec<TetraListEntry>>,
}

fn check_ids(section: &str, ids: impl Iterator<Item = usize>) -> Result<()> {
    for (pos, id) in ids.enumerate() {
        if pos != id {
            return Err(Error::Schema {
                pointer: format!("/{section}/{pos}/id"),
                message: format!("expected id {pos}, found {id}"),
            });
        }
    }
    Ok(())
}

impl DeltaComplex {
    /// Parses `smfc-triangulation/1`, either the full skeleton (`edges`, `triangles`,
    /// `tetrahedra`) or the compact `tetra_list` of strictly increasing vertex tuples.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TriangulationFile = from_json_str(text)?;
        if file.format != TRIANGULATION_FORMAT {
            return Err(Error::Schema {
                pointer: "/format".into(),
                message: format!("expected \"{TRIANGULATION_FORMAT}\", found \"{}\"", file.format),
            });
        }
        match (file.edges, file.triangles, file.tetrahedra, file.tetra_list) {
            (None, None, None, Some(list)) => {
                let tets: Vec<_> = list.into_iter().map(|t| (t.vertices, t.sign)).collect();
                DeltaComplex::from_ordered_tetra_list(file.vertices, &tets)
            }
            (Some(edges), Some(triangles), Some(tets), None) => {
                check_ids("edges", edges.iter().map(|e| e.id))?;
                check_ids("triangles", triangles.iter().map(|e| e.id))?;
                check_ids("tetrahedra", tets.iter().map(|e| e.id))?;
                DeltaComplex::new(
                    file.vertices,
                    edges.into_iter().map(|e| Edge { ends: e.ends }).collect(),
                    triangles.into_iter().map(|t| Triangle { vertices: t.vertices, edges: t.edges }).collect(),
                    tets.into_iter()
                        .map(|t| Tetrahedron { vertices: t.vertices, edges: t.edges, faces: t.faces, sign: t.sign })
                        .collect(),
                )
            }
            _ => Err(Error::Schema {
                pointer: "/".into(),
                message: "give either `tetra_list` or all of `edges`, `triangles` and `tetrahedra`".into(),
            }),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        DeltaComplex::from_json(&std::fs::read_to_string(path)?)
    }

    /// Full-skeleton JSON.
    pub fn to_json(&self) -> String {
        let file = TriangulationFile {
            format: TRIANGULATION_FORMAT.into(),
            vertices: self.num_vertices,
            edges: Some(self.edges.iter().enumerate().map(|(id, e)| EdgeEntry { id, ends: e.ends }).collect()),
            triangles: Some(
                self.triangles
                    .iter()
                    .enumerate()
                    .map(|(id, t)| TriangleEntry { id, vertices: t.vertices, edges: t.edges })
                    .collect(),
            ),
            tetrahedra: Some(
                self.tets
                    .iter()
                    .enumerate()
                    .map(|(id, t)| TetEntry { id, vertices: t.vertices, edges: t.edges, faces: t.faces, sign: t.sign })
                    .collect(),
            ),
            tetra_list: None,
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::builtin_manifold;

    #[test]
    fn full_round_trip() {
        for name in ["s3_two_tets", "t3_one_vertex", "s2xs1", "empty"] {
            let k = builtin_manifold(name).unwrap();
            assert_eq!(DeltaComplex::from_json(&k.to_json()).unwrap(), k);
        }
    }

    #[test]
    fn tetra_list_form() {
        let text = r#"{"format":"smfc-triangulation/1","vertices":4,
            "tetra_list":[{"vertices":[0,1,2,3],"sign":1},{"vertices":[0,1,2,3],"sign":-1}]}"#;
        assert_eq!(DeltaComplex::from_json(text).unwrap(), builtin_manifold("s3_two_tets").unwrap());
    }

    #[test]
    fn mixed_forms_rejected() {
        let text = r#"{"format":"smfc-triangulation/1","vertices":4,"edges":[],
            "tetra_list":[{"vertices":[0,1,2,3],"sign":1}]}"#;
        assert!(matches!(DeltaComplex::from_json(text), Err(Error::Schema { .. })));
    }

    #[test]
    fn wrong_id_has_pointer() {
        let k = builtin_manifold("s3_two_tets").unwrap();
        let text = k.to_json().replacen("\"id\": 1", "\"id\": 7", 1);
        match DeltaComplex::from_json(&text) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/edges/1/id"),
            other => panic!("{other:?}"),
        }
    }
}
