use serde::{Deserialize, Serialize};

use super::{shape_arrow, BmArrow, Vertex};

/// The six component types of a one-arrow shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentKind {
    /// (1) an isolated white vertex.
    SingleX,
    /// (2) an isolated black vertex.
    SingleY,
    /// (3) an edge from the target floor up to the source floor.
    Upward,
    /// (4) an edge from the source floor down to the target floor.
    Downward,
    /// (5) an edge within the target floor.
    LowerHorizontal,
    /// (6) an edge within the source floor.
    UpperHorizontal,
}

impl ComponentKind {
    /// The type number, 1 to 6.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    /// The vertices in order: one for a single vertex, source then target for an edge.
    pub ends: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub arrow: BmArrow,
    pub components: Vec<Component>,
}

impl ComponentReport {
    pub fn count(&self, kind: ComponentKind) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }
}

/// Tags every component of the arrow's shape with its type.
pub fn classify_components(f: &BmArrow) -> ComponentReport {
    let p = shape_arrow(f);
    let components = p
        .components()
        .into_iter()
        .map(|c| {
            let ends: Vec<Vertex> = c.iter().map(|&v| p.label(v)).collect();
            let kind = match ends.as_slice() {
                [v] if v.kind.is_black() => ComponentKind::SingleY,
                [_] => ComponentKind::SingleX,
                [a, b] => match (a.floor, b.floor) {
                    (1, 0) => ComponentKind::Upward,
                    (0, 1) => ComponentKind::Downward,
                    (1, 1) => ComponentKind::LowerHorizontal,
                    _ => ComponentKind::UpperHorizontal,
                },
                _ => unreachable!("one-arrow shapes have disjoint edges"),
            };
            Component { kind, ends }
        })
        .collect();
    ComponentReport { arrow: f.clone(), components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::simplex::{monotone_maps, words_up_to};
    use crate::shapes::BmWord;
    use ComponentKind::*;

    fn report(w: &str, phi: &[usize]) -> ComponentReport {
        classify_components(&BmArrow::new(BmWord::parse(w).unwrap(), phi.to_vec()).unwrap())
    }

    #[test]
    fn identity_on_a() {
        let r = report("00", &[0, 1]);
        let kinds: Vec<_> = r.components.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, [Upward, Downward]);
    }

    #[test]
    fn active_arrow_components() {
        let r = report("0000", &[0, 3]);
        assert_eq!(r.components.len(), 4);
        assert_eq!((r.count(Upward), r.count(Downward), r.count(UpperHorizontal)), (1, 1, 2));
    }

    #[test]
    fn degeneracy_into_a_squared() {
        let r = report("00", &[0, 0, 1]);
        assert_eq!((r.count(LowerHorizontal), r.count(Upward), r.count(Downward)), (1, 1, 1));
        assert_eq!(r.count(UpperHorizontal), 0);
        let r = report("000", &[0, 2]);
        assert_eq!(r.count(UpperHorizontal), 1);
    }

    #[test]
    fn tags_partition_vertices() {
        for w in words_up_to(4) {
            for np in 0..3 {
                for phi in monotone_maps(np, w.len()) {
                    let f = BmArrow::new(w, phi).unwrap();
                    let r = classify_components(&f);
                    let total: usize = r.components.iter().map(|c| c.ends.len()).sum();
                    assert_eq!(total, w.num_vertices() + f.tgt().num_vertices());
                    let edges = r.components.iter().filter(|c| c.ends.len() == 2).count();
                    assert_eq!(edges, f.edge_count());
                    for c in &r.components {
                        if c.kind == Upward {
                            assert_eq!(c.ends[0].kind, crate::shapes::Kind::X);
                        }
                        assert_eq!(c.kind.number() as usize, c.kind as usize + 1);
                    }
                }
            }
        }
    }
}
