//! Functors from shapes into a finite category, and the fibrousness
//! checks of the resulting operad of `X`-valued shapes.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::simplex::{monotone_maps, words_up_to};
use super::{inner_face, shape, shape_arrow, BmArrow, BmSimplex, BmWord, Kind, ShapeError, ShapePoset, Vertex};
use crate::fincat::{enumerate_functors, Arr, FinCat, FinFunctor, Obj};

/// Every functor `shape(σ) → X`.
pub fn eval_shape(s: &BmSimplex, x: &Arc<FinCat>, cap: usize) -> Result<Vec<FinFunctor>, ShapeError> {
    let p = shape(s)?;
    Ok(enumerate_functors(&p.to_arc(), x, cap)?)
}

/// A functor out of a shape, given by vertex images and one arrow per
/// covering edge (edges in the shape's order). Components are free chains,
/// so this determines the functor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct GraphMap {
    pub objs: Vec<Obj>,
    pub arrows: Vec<Arr>,
}

/// Paths of `len` vertices in `X`: objects and the arrows between them.
fn paths(x: &FinCat, len: usize) -> Vec<(Vec<Obj>, Vec<Arr>)> {
    let mut out: Vec<(Vec<Obj>, Vec<Arr>)> = (0..x.num_objects()).map(|o| (vec![o], Vec::new())).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for (objs, arrs) in &out {
            let last = *objs.last().unwrap();
            for f in x.out_arrows(last) {
                let (mut o, mut a) = (objs.clone(), arrs.clone());
                o.push(x.tgt(f));
                a.push(f);
                next.push((o, a));
            }
        }
        out = next;
    }
    out
}

pub(crate) fn graph_maps(p: &ShapePoset, x: &FinCat, cap: usize) -> Result<Vec<GraphMap>, ShapeError> {
    let mut edge_index = HashMap::new();
    for (i, &(u, v)) in p.edges().iter().enumerate() {
        edge_index.insert((u, v), i);
    }
    let chains = p.components();
    let mut cache: BTreeMap<usize, Vec<(Vec<Obj>, Vec<Arr>)>> = BTreeMap::new();
    let mut out = vec![GraphMap { objs: vec![0; p.len()], arrows: vec![0; p.edges().len()] }];
    for c in &chains {
        let options = cache.entry(c.len()).or_insert_with(|| paths(x, c.len()));
        if out.len().saturating_mul(options.len()) > cap {
            return Err(crate::fincat::CatError::CapExceeded { what: "shape functors", cap }.into());
        }
        let mut next = Vec::with_capacity(out.len() * options.len());
        for g in &out {
            for (objs, arrs) in options.iter() {
                let mut h = g.clone();
                for (k, &v) in c.iter().enumerate() {
                    h.objs[v] = objs[k];
                    if k > 0 {
                        h.arrows[edge_index[&(c[k - 1], v)]] = arrs[k - 1];
                    }
                }
                next.push(h);
            }
        }
        out = next;
    }
    Ok(out)
}

/// The arrow `u → v` of the image of a comparable pair, composed along
/// the chain.
fn image_of(p: &ShapePoset, g: &GraphMap, x: &FinCat, edge_index: &HashMap<(usize, usize), usize>, u: usize, v: usize) -> Arr {
    let mut f = x.id(g.objs[u]);
    let mut w = u;
    while w != v {
        let next = p.succ(w).expect("comparable vertices lie on one chain");
        f = x.comp(g.arrows[edge_index[&(w, next)]], f);
        w = next;
    }
    f
}

fn edge_index(p: &ShapePoset) -> HashMap<(usize, usize), usize> {
    p.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct FibrousBounds {
    /// Largest number of bits of a word.
    pub max_bits: usize,
    /// Largest simplex dimension for the Segal bijection.
    pub max_dim: usize,
    /// Largest functor set enumerated for one shape.
    pub cap: usize,
}

impl Default for FibrousBounds {
    fn default() -> Self {
        FibrousBounds { max_bits: 3, max_dim: 2, cap: 2_000_000 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FibrousReport {
    pub segal_cases: usize,
    pub lifting_cases: usize,
    pub product_cases: usize,
    pub failures: Vec<String>,
}

impl FibrousReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

/// Checks, for every simplex and arrow within `bounds`:
/// (i) functors on a glued shape are exactly the compatible families of
/// functors on its one-arrow pieces; (ii) every inert arrow has the
/// identity lifting at every object, and it is cocartesian; (iii) mapping
/// sets over an arrow split as products over the letters of its target.
pub fn segal_fibrous_check(x: &Arc<FinCat>, bounds: FibrousBounds) -> Result<FibrousReport, ShapeError> {
    let mut report = FibrousReport::default();
    for d in 0..=bounds.max_dim {
        for s in super::simplices(bounds.max_bits, d) {
            segal_case(&s, x, bounds.cap, &mut report)?;
            report.segal_cases += 1;
        }
    }
    for u in words_up_to(bounds.max_bits) {
        for np in 0..=u.len() {
            for lo in 0..=u.len() - np {
                let f = BmArrow::new(u, (lo..=lo + np).collect())?;
                lifting_case(&f, x, bounds, &mut report)?;
            }
        }
    }
    for u in words_up_to(bounds.max_bits) {
        for np in 0..bounds.max_bits {
            for phi in monotone_maps(np, u.len()) {
                product_case(&BmArrow::new(u, phi)?, x, bounds.cap, &mut report)?;
                report.product_cases += 1;
            }
        }
    }
    Ok(report)
}

fn floor_tuple(p: &ShapePoset, g: &GraphMap, floor: usize) -> Vec<Obj> {
    p.floor_range(floor).map(|v| g.objs[v]).collect()
}

fn segal_case(s: &BmSimplex, x: &Arc<FinCat>, cap: usize, report: &mut FibrousReport) -> Result<(), ShapeError> {
    let p = shape(s)?;
    let all = graph_maps(&p, x, cap)?;
    if s.dim() <= 1 || p.len() <= 8 {
        let oracle = eval_shape(s, x, cap)?.len();
        if oracle != all.len() {
            report.fail(format!("{s}: {} graph maps but {oracle} functors", all.len()));
        }
    }
    if s.dim() == 0 {
        let expect = x.num_objects().pow(p.len() as u32);
        if all.len() != expect {
            report.fail(format!("{s}: {} maps on a discrete floor, expected {expect}", all.len()));
        }
        return Ok(());
    }
    // Count compatible families floor by floor.
    let mut counts: HashMap<Vec<Obj>, u64> = HashMap::new();
    let mut pieces = Vec::new();
    for i in 1..=s.dim() {
        let q = shape_arrow(&s.arrow(i));
        let maps = graph_maps(&q, x, cap)?;
        let mut next: HashMap<Vec<Obj>, u64> = HashMap::new();
        for g in &maps {
            let (a, b) = (floor_tuple(&q, g, 0), floor_tuple(&q, g, 1));
            let before = if i == 1 { 1 } else { counts.get(&a).copied().unwrap_or(0) };
            if before > 0 {
                *next.entry(b).or_default() += before;
            }
        }
        counts = next;
        pieces.push((q, maps.into_iter().collect::<HashSet<_>>()));
    }
    let families: u64 = counts.values().sum();
    if families != all.len() as u64 {
        report.fail(format!("{s}: {} functors but {families} compatible families", all.len()));
    }
    // Restriction is injective and lands in each piece.
    let mut seen = HashSet::with_capacity(all.len());
    let mut offset = 0;
    let blocks: Vec<(usize, usize)> = (1..=s.dim())
        .map(|i| {
            let n = s.arrow(i).edge_count();
            offset += n;
            (offset - n, n)
        })
        .collect();
    for g in &all {
        let mut parts = Vec::with_capacity(s.dim());
        for (i, (q, set)) in pieces.iter().enumerate() {
            let mut objs = floor_tuple(&p, g, i);
            objs.extend(floor_tuple(&p, g, i + 1));
            let (lo, n) = blocks[i];
            let r = GraphMap { objs, arrows: g.arrows[lo..lo + n].to_vec() };
            debug_assert_eq!(r.objs.len(), q.len());
            if !set.contains(&r) {
                report.fail(format!("{s}: a restriction to arrow {} is not a functor", i + 1));
            }
            parts.push(r);
        }
        if !seen.insert(parts) {
            report.fail(format!("{s}: restriction to the pieces is not injective"));
        }
    }
    Ok(())
}

/// The lifting of `x` along an inert arrow: every target vertex is joined
/// to exactly one source vertex, takes its object, and the edge goes to an
/// identity.
fn identity_lifting(q: &ShapePoset, src_objs: &[Obj], x: &FinCat) -> Option<GraphMap> {
    let n0 = q.floor_range(0).len();
    let mut objs = vec![usize::MAX; q.len()];
    objs[..n0].copy_from_slice(src_objs);
    for &(u, v) in q.edges() {
        let (s, t) = if u < n0 { (u, v) } else { (v, u) };
        if s >= n0 || t < n0 || objs[t] != usize::MAX {
            return None;
        }
        objs[t] = objs[s];
    }
    if objs.contains(&usize::MAX) {
        return None;
    }
    let arrows = q.edges().iter().map(|&(u, _)| x.id(objs[u])).collect();
    Some(GraphMap { objs, arrows })
}

fn tuples(n: usize, k: usize) -> Vec<Vec<Obj>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |o| [t.clone(), vec![o]].concat())).collect();
    }
    out
}

fn lifting_case(f: &BmArrow, x: &Arc<FinCat>, bounds: FibrousBounds, report: &mut FibrousReport) -> Result<(), ShapeError> {
    let q = shape_arrow(f);
    let u = f.src();
    let v = f.tgt();
    let nu = u.num_vertices();
    let mut betas = Vec::new();
    for nz in 0..bounds.max_bits {
        for phi in monotone_maps(nz, v.len()) {
            let beta = BmArrow::new(v, phi)?;
            let tau = BmSimplex::new(u, vec![f.phi().to_vec(), beta.phi().to_vec()])?;
            let t = shape(&tau)?;
            let face = inner_face(&tau, 1)?;
            let fb = graph_maps(&face.face, x, bounds.cap)?;
            let bm = graph_maps(&shape_arrow(&beta), x, bounds.cap)?;
            betas.push((beta, t, face, fb, bm));
        }
    }
    for xs in tuples(x.num_objects(), nu) {
        report.lifting_cases += 1;
        let Some(b) = identity_lifting(&q, &xs, x) else {
            report.fail(format!("{f}: no identity lifting at {xs:?}"));
            continue;
        };
        if b.objs[..nu] != xs[..] {
            report.fail(format!("{f}: lifting does not restrict to {xs:?}"));
        }
        let y = &b.objs[nu..];
        for (beta, t, face, fb, bm) in &betas {
            let nb = q.edges().len();
            let idx = edge_index(t);
            let mut image = HashSet::new();
            let mut sources = 0;
            for c in bm.iter().filter(|c| &c.objs[..y.len()] == y) {
                sources += 1;
                let mut objs = b.objs.clone();
                objs.extend_from_slice(&c.objs[y.len()..]);
                let mut arrows = b.arrows.clone();
                arrows.extend_from_slice(&c.arrows);
                debug_assert_eq!(arrows.len(), nb + c.arrows.len());
                let glued = GraphMap { objs, arrows };
                let objs: Vec<Obj> = face.map.iter().map(|&w| glued.objs[w]).collect();
                let arrows: Vec<Arr> = face
                    .face
                    .edges()
                    .iter()
                    .map(|&(a, bb)| image_of(t, &glued, x, &idx, face.map[a], face.map[bb]))
                    .collect();
                image.insert(GraphMap { objs, arrows });
            }
            let targets: HashSet<&GraphMap> = fb.iter().filter(|d| d.objs[..nu] == xs[..]).collect();
            let into = image.iter().all(|g| targets.contains(g));
            if image.len() != sources || image.len() != targets.len() || !into {
                report.fail(format!("{f} then {beta}: lifting at {xs:?} is not cocartesian"));
            }
        }
    }
    Ok(())
}

/// Vertices of the target of `f` belonging to its `i`-th letter, paired
/// with their names in the one-letter word.
fn letter_vertices(v: BmWord, i: usize) -> Vec<(Vertex, Vertex)> {
    if i <= v.k() {
        vec![(Vertex::x(1, i), Vertex::x(1, 1)), (Vertex::y(1, i), Vertex::y(1, 1))]
    } else if i == v.k() + 1 && v.alpha() == 1 {
        vec![(Vertex::m(1), Vertex::m(1))]
    } else {
        Vec::new()
    }
}

fn product_case(f: &BmArrow, x: &Arc<FinCat>, cap: usize, report: &mut FibrousReport) -> Result<(), ShapeError> {
    let q = shape_arrow(f);
    let (u, v) = (f.src(), f.tgt());
    let nu = u.num_vertices();
    // Edges of f split among the letters of its target.
    let mut owner = vec![usize::MAX; q.edges().len()];
    let idx = edge_index(&q);
    let mut letters = Vec::new();
    for i in 1..=v.len() {
        let g = BmArrow::new(u, vec![f.phi()[i - 1], f.phi()[i]])?;
        let r = shape_arrow(&g);
        let names = letter_vertices(v, i);
        let to_f = |w: usize| {
            let l = r.label(w);
            if l.floor == 0 {
                Some(w)
            } else {
                names.iter().find(|(_, small)| *small == l).and_then(|(big, _)| q.find(*big))
            }
        };
        for &(a, b) in r.edges() {
            match (to_f(a), to_f(b)) {
                (Some(a2), Some(b2)) if idx.contains_key(&(a2, b2)) => {
                    let e = idx[&(a2, b2)];
                    if owner[e] != usize::MAX {
                        report.fail(format!("{f}: edge {e} lies in two letters"));
                    }
                    owner[e] = i;
                }
                _ => report.fail(format!("{f}: an edge of letter {i} is not an edge of the arrow")),
            }
        }
        let vs: Vec<usize> = names.iter().map(|(big, _)| q.find(*big).expect("letter vertex")).collect();
        let mut by_pair: HashMap<(Vec<Obj>, Vec<Obj>), u64> = HashMap::new();
        for g in graph_maps(&r, x, cap)? {
            *by_pair.entry((g.objs[..nu].to_vec(), g.objs[nu..].to_vec())).or_default() += 1;
        }
        letters.push((vs, by_pair, r.labels()[nu..].iter().map(|l| l.kind).collect::<Vec<Kind>>()));
    }
    if owner.contains(&usize::MAX) {
        report.fail(format!("{f}: an edge belongs to no letter"));
    }
    let mut whole: HashMap<(Vec<Obj>, Vec<Obj>), u64> = HashMap::new();
    for g in graph_maps(&q, x, cap)? {
        *whole.entry((g.objs[..nu].to_vec(), g.objs[nu..].to_vec())).or_default() += 1;
    }
    let nv = v.num_vertices();
    for xs in tuples(x.num_objects(), nu) {
        for ys in tuples(x.num_objects(), nv) {
            let lhs = whole.get(&(xs.clone(), ys.clone())).copied().unwrap_or(0);
            let rhs: u64 = letters
                .iter()
                .map(|(vs, by_pair, _)| {
                    let yi: Vec<Obj> = vs.iter().map(|&w| ys[w - nu]).collect();
                    by_pair.get(&(xs.clone(), yi)).copied().unwrap_or(0)
                })
                .product();
            if lhs != rhs {
                report.fail(format!("{f}: mapping set at ({xs:?}, {ys:?}) has {lhs} elements, product {rhs}"));
            }
        }
    }
    Ok(())
}
