//! Structural laws of shapes, each checked directly on the glued graph.

use super::{shape, shape_arrow, BmSimplex, ShapeError, ShapePoset};

/// Reflexive-transitive closure of a relation on `n` points, as bitset rows.
pub(crate) fn closure(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64).max(1);
    let mut rows = vec![vec![0u64; words]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i / 64] |= 1 << (i % 64);
    }
    for (u, v) in pairs {
        rows[u][v / 64] |= 1 << (v % 64);
    }
    for k in 0..n {
        let rk = rows[k].clone();
        for row in rows.iter_mut() {
            if row[k / 64] >> (k % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&rk) {
                    *a |= *b;
                }
            }
        }
    }
    rows
}

pub(crate) fn has(rows: &[Vec<u64>], u: usize, v: usize) -> bool {
    rows[u][v / 64] >> (v % 64) & 1 == 1
}

/// Along every chain, a subpath with both ends on one floor that starts
/// up and ends down, or starts down and ends up, joins planar neighbours
/// provided it stays strictly off the ends' floor in between (an
/// excursion). Returns the number of turning subpaths that revisit the
/// floor and whose ends are not neighbours.
pub fn check_cap_cup(p: &ShapePoset) -> Result<usize, ShapeError> {
    let floor = |v: usize| p.label(v).floor;
    let mut revisiting = 0;
    for c in p.components() {
        for s in 0..c.len() {
            for t in s + 2..c.len() {
                let (a, b) = (c[s], c[t]);
                if floor(a) != floor(b) {
                    continue;
                }
                let first = floor(c[s + 1]).cmp(&floor(a));
                let last = floor(b).cmp(&floor(c[t - 1]));
                let turns = first != last && first != std::cmp::Ordering::Equal && last != std::cmp::Ordering::Equal;
                if !turns || p.position(a).abs_diff(p.position(b)) == 1 {
                    continue;
                }
                if c[s + 1..t].iter().all(|&v| floor(v) != floor(a)) {
                    return Err(ShapeError::Law(format!(
                        "excursion {} .. {} turns but its ends are not neighbours",
                        p.label(a),
                        p.label(b)
                    )));
                }
                revisiting += 1;
            }
        }
    }
    Ok(revisiting)
}

/// The inner face `d_i σ` with its vertex map into `shape(σ)`.
#[derive(Debug, Clone)]
pub struct InnerFace {
    pub face: ShapePoset,
    pub map: Vec<usize>,
    /// Whether comparability in `shape(σ)` implies comparability in the face.
    pub reflects: bool,
}

/// Builds the face map, which is always monotone, and records whether it
/// also reflects the order.
pub fn inner_face(s: &BmSimplex, i: usize) -> Result<InnerFace, ShapeError> {
    if i == 0 || i >= s.dim() {
        return Err(ShapeError::Precondition(format!("{i} is not an inner index of a {}-simplex", s.dim())));
    }
    let full = shape(s)?;
    let face = shape(&s.face(i)?)?;
    let map: Vec<usize> = (0..face.len())
        .map(|v| {
            let l = face.label(v);
            let f = if l.floor < i { l.floor } else { l.floor + 1 };
            full.vertex_at(f, face.position(v))
        })
        .collect();
    let mut reflects = true;
    for u in 0..face.len() {
        for v in 0..face.len() {
            match (face.leq(u, v), full.leq(map[u], map[v])) {
                (true, false) => {
                    return Err(ShapeError::Law(format!(
                        "face {i} of {s} is not monotone at {} <= {}",
                        face.label(u),
                        face.label(v)
                    )))
                }
                (false, true) => reflects = false,
                _ => {}
            }
        }
    }
    Ok(InnerFace { face, map, reflects })
}

/// Whether erasing floor `i` loses a source-floor multiplication edge:
/// some letter of `w_i` that `f_{i+1}` does not cover carries a chain
/// `y_j → x_{j−1}` in the shape of `f_i`. Exactly then the face fails to
/// reflect the order; in particular an active `f_{i+1}` never loses one.
pub fn loses_multiplication(s: &BmSimplex, i: usize) -> bool {
    let (w, wi) = (s.words()[i - 1], s.words()[i]);
    let (phi, psi) = (&s.phis()[i - 1], &s.phis()[i]);
    let covered = |seg: usize| psi[0] < seg && seg <= psi[psi.len() - 1];
    let segments = (1..=wi.k()).any(|seg| phi[seg] >= phi[seg - 1] + 2 && !covered(seg));
    let tail = wi.alpha() == 1 && w.k() + 1 >= phi[wi.k()] + 2 && !covered(wi.k() + 1);
    segments || tail
}

/// Every inner face is monotone, and reflects the order exactly when no
/// multiplication edge is lost. Returns the number of non-reflecting faces.
pub fn check_inner_faces(s: &BmSimplex) -> Result<usize, ShapeError> {
    let mut lossy = 0;
    for i in 1..s.dim() {
        let f = inner_face(s, i)?;
        let predicted = !loses_multiplication(s, i);
        if f.reflects != predicted {
            return Err(ShapeError::Law(format!("face {i} of {s}: reflects = {}, predicted {predicted}", f.reflects)));
        }
        if !f.reflects {
            if s.is_active_at(i + 1) {
                return Err(ShapeError::Law(format!("face {i} of {s} fails to reflect before an active arrow")));
            }
            lossy += 1;
        }
    }
    Ok(lossy)
}

/// The shape equals the closure of its independently built one-arrow
/// restrictions glued along shared floors.
pub fn check_dual_segal(s: &BmSimplex, p: &ShapePoset) -> Result<(), ShapeError> {
    let mut pairs = Vec::new();
    for i in 1..=s.dim() {
        let f = shape_arrow(&s.arrow(i));
        let to_global = |v: usize| {
            let l = f.label(v);
            let g = p.vertex_at(i - 1 + l.floor, f.position(v));
            (g, l, p.label(g))
        };
        for u in 0..f.len() {
            let (gu, lu, pu) = to_global(u);
            if (lu.kind, lu.r) != (pu.kind, pu.r) {
                return Err(ShapeError::Law(format!("floor labels of arrow {i} disagree at {pu}")));
            }
            for v in 0..f.len() {
                if u != v && f.leq(u, v) {
                    pairs.push((gu, to_global(v).0));
                }
            }
        }
    }
    let rows = closure(p.len(), pairs);
    for u in 0..p.len() {
        for v in 0..p.len() {
            if has(&rows, u, v) != p.leq(u, v) {
                return Err(ShapeError::Law(format!("gluing of {s} differs at {} <= {}", p.label(u), p.label(v))));
            }
            if u != v && has(&rows, u, v) && has(&rows, v, u) {
                return Err(ShapeError::Law("glued relation is not antisymmetric".into()));
            }
        }
    }
    Ok(())
}

/// Every law at once: degree and acyclicity (by construction), cap/cup,
/// edge counts, end floors, inner faces and the floor gluing. Returns the
/// counts of the two recorded exceptions.
pub fn check_structure(s: &BmSimplex) -> Result<StructureCounts, ShapeError> {
    let p = shape(s)?;
    let revisiting = check_cap_cup(&p)?;
    let mut edges = 0;
    for i in 1..=s.dim() {
        edges += s.arrow(i).edge_count();
    }
    if edges != p.edges().len() {
        return Err(ShapeError::Law(format!("{s}: {} edges, expected {edges}", p.edges().len())));
    }
    let (first, last) = (s.words()[0], s.words()[s.dim()]);
    if p.floor_range(0).len() != first.num_vertices() || p.floor_range(s.dim()).len() != last.num_vertices() {
        return Err(ShapeError::Law(format!("{s}: end floors differ from their vertex shapes")));
    }
    let lossy = check_inner_faces(s)?;
    check_dual_segal(s, &p)?;
    Ok(StructureCounts { revisiting_turns: revisiting, lossy_faces: lossy })
}

/// Instances of the two statements that hold only in restricted form.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StructureCounts {
    /// Turning subpaths that revisit their ends' floor and join non-neighbours.
    pub revisiting_turns: usize,
    /// Inner faces that are monotone but not order-reflecting.
    pub lossy_faces: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::simplex::simplices;
    use crate::shapes::BmWord;

    #[test]
    fn all_small_simplices_satisfy_the_laws() {
        for d in 0..=3 {
            for s in simplices(3, d) {
                check_structure(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
            }
        }
    }

    #[test]
    fn outer_index_is_rejected() {
        let s = BmSimplex::new(BmWord::parse("000").unwrap(), vec![vec![0, 2], vec![0, 1]]).unwrap();
        assert!(inner_face(&s, 0).is_err());
        assert!(inner_face(&s, 2).is_err());
        assert!(inner_face(&s, 1).is_ok());
    }

    #[test]
    fn cap_collapses_to_single_arrow() {
        // a → a² → a where the composite collapses the letter.
        let s = BmSimplex::new(BmWord::parse("00").unwrap(), vec![vec![0, 0, 1], vec![0, 1]]).unwrap();
        let InnerFace { face, map, reflects } = inner_face(&s, 1).unwrap();
        assert!(reflects);
        assert_eq!(face.len(), 4);
        assert_eq!(face.edges().len(), 1);
        let p = shape(&s).unwrap();
        assert_eq!(p.components().iter().map(|c| c.len()).max(), Some(4));
        let x = face.find(crate::shapes::Vertex::x(1, 1)).unwrap();
        let y = face.find(crate::shapes::Vertex::y(1, 1)).unwrap();
        assert!(p.leq(map[x], map[y]) && face.leq(x, y));
    }

    #[test]
    fn uncovered_multiplication_is_not_reflected() {
        // a³ → a² multiplies the first two letters, then a² → a keeps the second.
        let s = BmSimplex::new(BmWord::parse("0000").unwrap(), vec![vec![0, 2, 3], vec![1, 2]]).unwrap();
        let f = inner_face(&s, 1).unwrap();
        assert!(!f.reflects);
        assert!(loses_multiplication(&s, 1));
        let p = shape(&s).unwrap();
        let (y2, x1) = (p.find(crate::shapes::Vertex::y(0, 2)).unwrap(), p.find(crate::shapes::Vertex::x(0, 1)).unwrap());
        assert!(p.leq(y2, x1));
        assert_eq!(check_inner_faces(&s), Ok(1));
    }

    #[test]
    fn closure_is_transitive() {
        let rows = closure(70, (0..69).map(|i| (i, i + 1)));
        assert!(has(&rows, 0, 69));
        assert!(!has(&rows, 69, 0));
    }

    #[test]
    fn cap_cup_rejects_a_distant_turn() {
        let w = BmWord::parse("0000").unwrap();
        let p = ShapePoset::from_graph(vec![w, w], vec![(6, 0), (0, 8)]).unwrap();
        assert!(check_cap_cup(&p).is_err());
    }

    #[test]
    fn revisiting_turn_joins_distant_ends() {
        let s = BmSimplex::new(BmWord::parse("0").unwrap(), vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2]]).unwrap();
        let p = shape(&s).unwrap();
        assert!(check_cap_cup(&p).unwrap() > 0);
    }
}
