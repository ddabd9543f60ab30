use std::sync::Arc;

use super::arrow::arrow_edges;
use super::{BmArrow, BmSimplex, BmWord, ShapeError, Vertex};
use crate::fincat::FinCat;

const NONE: usize = usize::MAX;

/// A labeled planar poset: floors of vertices in planar order, joined by a
/// covering graph in which every vertex has at most one predecessor and
/// one successor. Components are therefore chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapePoset {
    floors: Vec<BmWord>,
    start: Vec<usize>,
    labels: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    chain: Vec<usize>,
    level: Vec<usize>,
}

fn floor_labels(w: BmWord, floor: usize) -> impl Iterator<Item = Vertex> {
    let (k, a) = (w.k(), w.alpha());
    (0..w.num_vertices()).map(move |p| {
        if a == 1 && p == 0 {
            Vertex::m(floor)
        } else {
            let q = p - a;
            let r = k - q / 2;
            if q % 2 == 0 {
                Vertex::x(floor, r)
            } else {
                Vertex::y(floor, r)
            }
        }
    })
}

impl ShapePoset {
    /// Builds the poset from floors and covering edges given as global
    /// vertex ids (floor offset plus planar position).
    pub fn from_graph(floors: Vec<BmWord>, edges: Vec<(usize, usize)>) -> Result<Self, ShapeError> {
        let mut start = Vec::with_capacity(floors.len() + 1);
        let mut labels = Vec::new();
        for (f, &w) in floors.iter().enumerate() {
            start.push(labels.len());
            labels.extend(floor_labels(w, f));
        }
        start.push(labels.len());
        let n = labels.len();
        let mut succ = vec![NONE; n];
        let mut pred = vec![NONE; n];
        for &(u, v) in &edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            if succ[u] != NONE {
                return Err(ShapeError::Degree(labels[u].to_string()));
            }
            if pred[v] != NONE {
                return Err(ShapeError::Degree(labels[v].to_string()));
            }
            succ[u] = v;
            pred[v] = u;
        }
        let mut chain = vec![NONE; n];
        let mut level = vec![0; n];
        let mut seen = 0;
        for root in 0..n {
            if pred[root] != NONE {
                continue;
            }
            let (mut v, mut l) = (root, 0);
            while v != NONE {
                chain[v] = root;
                level[v] = l;
                l += 1;
                seen += 1;
                v = succ[v];
            }
        }
        if seen != n {
            return Err(ShapeError::Cycle);
        }
        Ok(ShapePoset { floors, start, labels, edges, succ, pred, chain, level })
    }

    pub fn floors(&self) -> &[BmWord] {
        &self.floors
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Vertex {
        self.labels[v]
    }

    /// Covering edges in construction order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Global id of the vertex at planar position `p` on `floor`.
    pub fn vertex_at(&self, floor: usize, p: usize) -> usize {
        debug_assert!(self.start[floor] + p < self.start[floor + 1]);
        self.start[floor] + p
    }

    /// Global ids of one floor, left to right.
    pub fn floor_range(&self, floor: usize) -> std::ops::Range<usize> {
        self.start[floor]..self.start[floor + 1]
    }

    /// Planar position within the vertex's floor.
    pub fn position(&self, v: usize) -> usize {
        v - self.start[self.labels[v].floor]
    }

    pub fn find(&self, label: Vertex) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn succ(&self, v: usize) -> Option<usize> {
        (self.succ[v] != NONE).then_some(self.succ[v])
    }

    pub fn pred(&self, v: usize) -> Option<usize> {
        (self.pred[v] != NONE).then_some(self.pred[v])
    }

    /// The order: `u ≤ v` iff `v` is reached from `u` along the chain.
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.chain[u] == self.chain[v] && self.level[u] <= self.level[v]
    }

    /// Connected components as chains, ordered by their least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![NONE; self.len()];
        for v in 0..self.len() {
            let root = self.chain[v];
            if index[root] == NONE {
                index[root] = out.len();
                let mut c = Vec::new();
                let mut u = root;
                while u != NONE {
                    c.push(u);
                    u = self.succ[u];
                }
                out.push(c);
            }
        }
        out.sort_by_key(|c| *c.iter().min().unwrap());
        out
    }

    /// The underlying finite category.
    pub fn to_fincat(&self) -> FinCat {
        let c = FinCat::poset(self.len(), |u, v| self.leq(u, v)).expect("chains form a poset");
        c.with_object_names(self.labels.iter().map(|l| l.to_string()).collect())
    }

    pub fn to_arc(&self) -> Arc<FinCat> {
        Arc::new(self.to_fincat())
    }
}

/// The discrete shape of a word: `2k + α` vertices.
pub fn shape_vertex(w: BmWord) -> ShapePoset {
    ShapePoset::from_graph(vec![w], Vec::new()).expect("no edges")
}

/// The two-floor shape of an arrow.
pub fn shape_arrow(f: &BmArrow) -> ShapePoset {
    shape(&BmSimplex::from_arrow(f)).expect("arrow shapes are disjoint edges")
}

/// The glued multi-floor shape of a simplex.
///
/// Fails only if the glued graph breaks the degree or acyclicity laws,
/// which the construction asserts rather than assumes.
pub fn shape(s: &BmSimplex) -> Result<ShapePoset, ShapeError> {
    let words = s.words();
    let mut start = Vec::with_capacity(words.len());
    let mut acc = 0;
    for w in words {
        start.push(acc);
        acc += w.num_vertices();
    }
    let mut edges = Vec::new();
    for (i, phi) in s.phis().iter().enumerate() {
        let base = [start[i], start[i + 1]];
        arrow_edges(words[i], phi, |(fa, pa), (fb, pb)| edges.push((base[fa] + pa, base[fb] + pb)));
    }
    ShapePoset::from_graph(words.to_vec(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_names(p: &ShapePoset) -> Vec<String> {
        let mut v: Vec<String> = p.edges().iter().map(|&(a, b)| format!("{}->{}", p.label(a), p.label(b))).collect();
        v.sort();
        v
    }

    fn arrow(w: &str, phi: &[usize]) -> BmArrow {
        BmArrow::new(BmWord::parse(w).unwrap(), phi.to_vec()).unwrap()
    }

    #[test]
    fn vertex_shapes() {
        let a = shape_vertex(BmWord::parse("00").unwrap());
        let names: Vec<String> = a.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["x1@0", "y1@0"]);
        assert_eq!(shape_vertex(BmWord::parse("01").unwrap()).labels(), &[Vertex::m(0)]);
        assert!(shape_vertex(BmWord::parse("0").unwrap()).is_empty());
        let amb = shape_vertex(BmWord::parse("0011").unwrap());
        assert_eq!(amb.len(), 3);
        assert!(amb.to_fincat().is_discrete());
    }

    #[test]
    fn planar_order_reads_right_to_left() {
        let p = shape_vertex(BmWord::parse("0001").unwrap());
        let names: Vec<String> = p.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["y@0", "x2@0", "y2@0", "x1@0", "y1@0"]);
    }

    #[test]
    fn identity_arrow_on_a() {
        let p = shape_arrow(&BmArrow::identity(BmWord::parse("00").unwrap()));
        assert_eq!(edge_names(&p), ["x1@1->x1@0", "y1@0->y1@1"]);
    }

    #[test]
    fn order_is_chain_reachability() {
        let s = BmSimplex::new(BmWord::parse("0000").unwrap(), vec![vec![0, 3], vec![0, 1]]).unwrap();
        let p = shape(&s).unwrap();
        let c = p.to_fincat();
        c.validate().unwrap();
        for u in 0..p.len() {
            for v in 0..p.len() {
                assert_eq!(c.leq(u, v), p.leq(u, v));
            }
        }
    }

    #[test]
    fn degree_violation_is_reported() {
        let w = BmWord::parse("00").unwrap();
        let e = ShapePoset::from_graph(vec![w], vec![(0, 1), (0, 1)]);
        assert!(matches!(e, Err(ShapeError::Degree(_))));
        let e = ShapePoset::from_graph(vec![w], vec![(0, 1), (1, 0)]);
        assert!(matches!(e, Err(ShapeError::Cycle)));
    }

    #[test]
    fn arrow_shape_vertex_count() {
        let p = shape_arrow(&arrow("00000", &[1, 2, 3]));
        assert_eq!(p.len(), 12);
        assert_eq!(p.edges().len(), 4);
    }
}
