//! Hand-drawn shapes of single arrows and ladders, as edge lists.

use std::collections::BTreeSet;

use serde_json::json;

use super::{case_id, Recorder};
use crate::shapes::{parse_simplex, shape};

#[derive(Debug, Clone)]
pub struct FigureGolden {
    pub name: &'static str,
    pub simplex: &'static str,
    pub vertices: usize,
    pub edges: Vec<String>,
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn ladder(module: bool) -> Vec<String> {
    let mut edges = Vec::new();
    let rows = if module { 2 } else { 3 };
    for f in 0..2 {
        if module {
            edges.push(format!("y@{f}->y@{}", f + 1));
        }
        for r in 1..=rows {
            edges.push(format!("x{r}@{}->x{r}@{f}", f + 1));
            edges.push(format!("y{r}@{f}->y{r}@{}", f + 1));
        }
    }
    let tail: &[&str] = if module {
        &["y@2->x2@2", "y2@2->x1@2", "y1@2->y@3", "y@3->y@4"]
    } else {
        &["x1@3->x3@2", "y3@2->x2@2", "y2@2->x1@2", "y1@2->y1@3", "x1@4->x1@3", "y1@3->y1@4"]
    };
    edges.extend(strs(tail));
    edges
}

pub fn figure_goldens() -> Vec<FigureGolden> {
    vec![
        FigureGolden {
            name: "inert",
            simplex: "w=00000; phi=[1,2,3]",
            vertices: 12,
            edges: strs(&["x2@1->x3@0", "y3@0->y2@1", "x1@1->x2@0", "y2@0->y1@1"]),
        },
        FigureGolden {
            name: "active",
            simplex: "w=0000; phi=[0,3]",
            vertices: 8,
            edges: strs(&["x1@1->x3@0", "y3@0->x2@0", "y2@0->x1@0", "y1@0->y1@1"]),
        },
        FigureGolden {
            name: "general",
            simplex: "w=00000; phi=[1,3,3]",
            vertices: 12,
            edges: strs(&["x1@1->x3@0", "y2@0->y1@1", "y3@0->x2@0", "x2@1->y2@1"]),
        },
        FigureGolden {
            name: "module",
            simplex: "w=0001; phi=[0,1,3]",
            vertices: 8,
            edges: strs(&["y@0->x2@0", "y2@0->y@1", "x1@1->x1@0", "y1@0->y1@1"]),
        },
        FigureGolden {
            name: "ladder_a",
            simplex: "w=0000; phi=[0,1,2,3]; phi=[0,1,2,3]; phi=[0,3]; phi=[0,1]",
            vertices: 22,
            edges: ladder(false),
        },
        FigureGolden {
            name: "ladder_m",
            simplex: "w=0001; phi=[0,1,2,3]; phi=[0,1,2,3]; phi=[0,3]; phi=[0,1]",
            vertices: 17,
            edges: ladder(true),
        },
    ]
}

pub(super) fn run(rec: &mut Recorder) {
    for (i, g) in figure_goldens().into_iter().enumerate() {
        let got = parse_simplex(g.simplex).map_err(|e| e.to_string()).and_then(|s| shape(&s).map_err(|e| e.to_string()));
        let case = format!("{}:{}", case_id(i), g.name);
        match got {
            Ok(p) => {
                let have: BTreeSet<String> = p.edges().iter().map(|&(u, v)| format!("{}->{}", p.label(u), p.label(v))).collect();
                let want: BTreeSet<String> = g.edges.iter().cloned().collect();
                let ok = p.len() == g.vertices && have == want;
                rec.check("shapes.figures.golden", ok, || case, || {
                    json!({
                        "simplex": g.simplex,
                        "vertices": [p.len(), g.vertices],
                        "missing": want.difference(&have).collect::<Vec<_>>(),
                        "extra": have.difference(&want).collect::<Vec<_>>(),
                    })
                });
            }
            Err(e) => rec.fail("shapes.figures.golden", case, json!({ "simplex": g.simplex, "error": e })),
        }
    }
}
