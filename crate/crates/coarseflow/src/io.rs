//! Reading and writing the JSON documents used by the command line: graph,
//! action, angle set, cover, complex and trace files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::angles::AngleSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDocument};
use crate::symmetry::{ActionDocument, GroupModel};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::File { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

/// Writes pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// A graph with the group generated by its action.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub generators: Vec<Vec<usize>>,
    pub group: GroupModel,
}

/// Loads a graph document. The action comes from `action` if given,
/// otherwise from the file named in the document (relative to it), and
/// defaults to the trivial group.
pub fn load_instance(graph_path: &Path, action: Option<&Path>, group_cap: usize) -> Result<Instance> {
    let doc: GraphDocument = read_json(graph_path)?;
    let graph = doc.to_graph()?;
    let action_path: Option<PathBuf> = match (action, &doc.action) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(name)) => Some(graph_path.parent().unwrap_or(Path::new(".")).join(name)),
        (None, None) => None,
    };
    let generators = match action_path {
        Some(p) => read_json::<ActionDocument>(&p)?.generators().to_vec(),
        None => Vec::new(),
    };
    let group = GroupModel::close(&graph, &generators, group_cap)?;
    Ok(Instance { graph, generators, group })
}

/// Reads an angle file (triples `[u, apex, w]`) on `g`; trivial angles are
/// implicit.
pub fn load_angles(path: &Path, g: &Graph) -> Result<AngleSet> {
    let triples: Vec<[usize; 3]> = read_json(path)?;
    AngleSet::from_triples(g, &triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn instance_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let g = corpus::cycle(6);
        let mut doc = g.to_document();
        doc.action = Some("c6.action.json".into());
        write_json(&dir.path().join("c6.json"), &doc).unwrap();
        write_json(&dir.path().join("c6.action.json"), &serde_json::json!({"generators": [corpus::rotation(6)]}))
            .unwrap();
        let inst = load_instance(&dir.path().join("c6.json"), None, 100).unwrap();
        assert_eq!(inst.group.order(), 6);
        assert_eq!(inst.graph, g.clone().with_cone_vertices([]).unwrap());
        let bare = dir.path().join("bare.json");
        write_json(&bare, &[corpus::reflection(6)]).unwrap();
        assert_eq!(load_instance(&dir.path().join("c6.json"), Some(&bare), 100).unwrap().group.order(), 2);
    }

    #[test]
    fn parse_errors_are_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        fs::write(&p, "{").unwrap();
        assert!(matches!(read_json::<GraphDocument>(&p), Err(Error::Malformed(_))));
        assert!(matches!(read_json::<GraphDocument>(&dir.path().join("missing.json")), Err(Error::File { .. })));
    }

    #[test]
    fn angle_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("theta.json");
        fs::write(&p, "[[1, 0, 5]]").unwrap();
        let g = corpus::cycle(6);
        let theta = load_angles(&p, &g).unwrap();
        assert!(theta.small(5, 0, 1));
        fs::write(&p, "[[1, 0, 3]]").unwrap();
        assert!(matches!(load_angles(&p, &g), Err(Error::BadAngle(..))));
    }
}
