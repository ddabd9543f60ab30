//! DOT and JSON renderings of shapes.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Kind, ShapePoset};
use crate::fincat::dot::quote;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub floor: usize,
    pub kind: Kind,
    pub r: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub floors: Vec<String>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
}

impl ShapeJson {
    pub fn from_shape(p: &ShapePoset) -> Self {
        let vertices = p
            .labels()
            .iter()
            .enumerate()
            .map(|(id, l)| VertexJson { id, floor: l.floor, kind: l.kind, r: l.r, label: l.to_string() })
            .collect();
        let mut edges: Vec<[usize; 2]> = p.edges().iter().map(|&(u, v)| [u, v]).collect();
        edges.sort_unstable();
        ShapeJson { floors: p.floors().iter().map(|w| w.to_string()).collect(), vertices, edges }
    }
}

/// One rank per floor, vertices left to right in planar order.
pub fn shape_to_dot(p: &ShapePoset, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(name));
    s.push_str("  rankdir=TB;\n  node [shape=circle, fixedsize=true, width=0.45];\n");
    for (f, w) in p.floors().iter().enumerate() {
        let _ = writeln!(s, "  subgraph floor{f} {{");
        let _ = writeln!(s, "    rank=same; label={};", quote(&w.letters()));
        for v in p.floor_range(f) {
            let l = p.label(v);
            let style = if l.kind.is_black() { "filled" } else { "solid" };
            let _ = writeln!(s, "    v{v} [label={}, style={style}];", quote(&l.to_string()));
        }
        let ids: Vec<String> = p.floor_range(f).map(|v| format!("v{v}")).collect();
        if ids.len() > 1 {
            let _ = writeln!(s, "    {} [style=invis];", ids.join(" -> "));
        }
        s.push_str("  }\n");
    }
    let mut edges = p.edges().to_vec();
    edges.sort_unstable();
    for (u, v) in edges {
        let same = p.label(u).floor == p.label(v).floor;
        let attrs = if same { " [constraint=false]" } else { "" };
        let _ = writeln!(s, "  v{u} -> v{v}{attrs};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{parse_simplex, shape};

    #[test]
    fn json_lists_vertices_and_edges() {
        let p = shape(&parse_simplex("w=0000;phi=[0,3]").unwrap()).unwrap();
        let j = ShapeJson::from_shape(&p);
        assert_eq!((j.vertices.len(), j.edges.len()), (8, 4));
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(serde_json::from_str::<ShapeJson>(&text).unwrap(), j);
    }

    #[test]
    fn dot_has_one_rank_per_floor() {
        let p = shape(&parse_simplex("w=00000;phi=[1,2,3]").unwrap()).unwrap();
        let d = shape_to_dot(&p, "inert");
        assert_eq!(d.matches("rank=same").count(), 2);
        assert_eq!(d.lines().filter(|l| l.starts_with("  v") && l.contains("->")).count(), 4);
        assert!(d.contains("v8 -> v2;"));
        assert_eq!(shape_to_dot(&p, "inert"), d);
    }
}
