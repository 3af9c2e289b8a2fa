//! Graphviz DOT export for graphs, geodesic DAGs, covers, complexes and
//! contraction traces.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::cover::Cover;
use crate::graph::{GeodesicDag, Graph, Vertex};
use crate::rips::{ContractionTrace, SimplicialComplex};

const PALETTE: [&str; 10] =
    ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

fn node_name(g: &Graph, v: Vertex) -> String {
    match g.label(v) {
        Some(l) => format!("{v} [label=\"{}\"]", l.replace('"', "\\\"")),
        None => v.to_string(),
    }
}

/// An undirected graph; cone vertices are drawn as boxes.
pub fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let shape = if g.is_cone(v) { " [shape=box]" } else { "" };
        let _ = writeln!(out, "  {}{shape};", node_name(g, v));
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.lo(), e.hi());
    }
    out.push_str("}\n");
    out
}

/// The geodesic DAG from source to target, ranked by layer.
pub fn dag_dot(dag: &GeodesicDag) -> String {
    let mut out = String::from("digraph geodesics {\n  rankdir=LR;\n");
    for layer in dag.layers() {
        let names: Vec<String> = layer.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
    }
    for (x, y) in dag.edges() {
        let _ = writeln!(out, "  {x} -> {y};");
    }
    out.push_str("}\n");
    out
}

/// Points of a cover as nodes labeled `v,z`, filled with the colors of the
/// members containing them.
pub fn cover_dot(cover: &Cover) -> String {
    let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, m) in cover.members.iter().enumerate() {
        for &p in &m.points {
            owners.entry(p).or_default().push(i);
        }
    }
    let mut out = String::from("graph cover {\n  node [style=wedged];\n");
    for ((v, z), ms) in &owners {
        let colors: Vec<&str> = ms.iter().map(|&i| PALETTE[i % PALETTE.len()]).collect();
        let _ = writeln!(out, "  \"{v},{z}\" [fillcolor=\"{}\"];", colors.join(":"));
    }
    out.push_str("}\n");
    out
}

/// The 1-skeleton of a complex, with each maximal simplex listed as a
/// comment.
pub fn complex_dot(k: &SimplicialComplex) -> String {
    let mut out = String::from("graph complex {\n");
    for s in &k.maximal_simplices {
        let names: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "  // simplex {}", names.join(" "));
    }
    for v in &k.vertices {
        let _ = writeln!(out, "  {v};");
    }
    let mut edges = std::collections::BTreeSet::new();
    for s in &k.maximal_simplices {
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                edges.insert((a, b));
            }
        }
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

/// Moves of a contraction trace as numbered arrows.
pub fn trace_dot(trace: &ContractionTrace) -> String {
    let mut out = String::from("digraph trace {\n");
    let _ = writeln!(out, "  {} [shape=doublecircle];", trace.base);
    for (i, m) in trace.moves.iter().enumerate() {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", m.vertex, m.replacement, i + 1);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cover::CoverMember;
    use crate::graph::distance_matrix;

    #[test]
    fn graph_and_dag() {
        let g = corpus::star(3).with_cone_vertices([0]).unwrap();
        let s = graph_dot(&g);
        assert!(s.starts_with("graph G {") && s.contains("0 [shape=box];") && s.contains("0 -- 3;"));
        let c = corpus::cycle(4);
        let d = distance_matrix(&c);
        let dag = GeodesicDag::new(&c, &d, 0, 2).unwrap();
        let s = dag_dot(&dag);
        assert!(s.contains("0 -> 1;") && s.contains("3 -> 2;") && s.contains("rank=same; 1; 3;"));
    }

    #[test]
    fn cover_overlay() {
        let cover = Cover {
            members: vec![
                CoverMember { points: vec![(0, 0), (1, 0)], stabilizer: vec![0], orbit_rep: true },
                CoverMember { points: vec![(1, 0)], stabilizer: vec![0], orbit_rep: true },
            ],
            alpha: None,
        };
        let s = cover_dot(&cover);
        assert!(s.contains("\"1,0\" [fillcolor=\"#1f77b4:#ff7f0e\"];"));
    }
}
