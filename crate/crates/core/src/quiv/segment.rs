use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::QuivError;
use crate::fincat::{Arr, Arrow, FinCat, FinFunctor, Obj, SetValuedFunctor};
use crate::shapes::{BmArrow, BmWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrowKind {
    /// `(i, j) → (i′, j′)` with `i ≤ i′ < j′ ≤ j`, including identities.
    Below,
    /// `(i, j) → g` for a groupoid object `g`, through the vertex `k`.
    Via(usize),
    /// The unique isomorphism between groupoid objects.
    Iso,
}

/// A commuting square `top → left → bottom`, `top → right → bottom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Square {
    pub top: Obj,
    pub left: Obj,
    pub right: Obj,
    pub bottom: Obj,
    /// `top → left`, `top → right`, `left → bottom`, `right → bottom`.
    pub arrows: [Arr; 4],
}

/// The segment category of a word `s: [n] → [1]`: pairs `(i, j)` ordered
/// by inclusion of intervals, glued to the groupoid on `L`, `R` and the
/// `(k, k)` along `(k, k) ≅ L` when `s(k) = 0` and `(k, k) ≅ R` otherwise.
#[derive(Debug, Clone)]
pub struct SegmentCat {
    pub word: BmWord,
    pub cat: Arc<FinCat>,
    /// One per triple `i ≤ j ≤ k`, in lexicographic order.
    pub squares: Vec<Square>,
    index: HashMap<(Obj, Obj, ArrowKind), Arr>,
    kinds: Vec<ArrowKind>,
}

impl SegmentCat {
    /// Index of `(i, j)`; pairs come first in lexicographic order.
    pub fn obj(&self, i: usize, j: usize) -> Obj {
        pair_index(self.word.len(), i, j)
    }

    pub fn l(&self) -> Obj {
        pairs(self.word.len())
    }

    pub fn r(&self) -> Obj {
        self.l() + 1
    }

    /// The arrow `(i, j) → (i′, j′)` for nested intervals with `i′ < j′`.
    pub fn below(&self, src: Obj, tgt: Obj) -> Option<Arr> {
        self.index.get(&(src, tgt, ArrowKind::Below)).copied()
    }

    /// The arrow `(i, j) → g` through vertex `k`.
    pub fn via(&self, src: Obj, tgt: Obj, k: usize) -> Option<Arr> {
        if src == tgt {
            return Some(self.cat.id(src));
        }
        self.index.get(&(src, tgt, ArrowKind::Via(k))).copied()
    }

    /// The isomorphism between two groupoid objects.
    pub fn iso(&self, src: Obj, tgt: Obj) -> Option<Arr> {
        self.index.get(&(src, tgt, ArrowKind::Iso)).copied()
    }

    pub fn kind(&self, a: Arr) -> ArrowKind {
        self.kinds[a]
    }

    /// The groupoid object `L` or `R` that `(k, k)` is identified with.
    pub fn side(&self, k: usize) -> Obj {
        if self.word.bit(k) == 0 {
            self.l()
        } else {
            self.r()
        }
    }
}

fn pairs(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

fn pair_index(n: usize, i: usize, j: usize) -> Obj {
    // Rows i = 0..i−1 hold n+1, n, …, n+2−i pairs.
    i * (n + 1) - i * (i.saturating_sub(1)) / 2 + (j - i)
}

pub fn segment_cat(s: BmWord) -> SegmentCat {
    let n = s.len();
    let np = pairs(n);
    let (l, r) = (np, np + 1);
    let mut names = Vec::with_capacity(np + 2);
    let mut pair_of = Vec::with_capacity(np);
    for i in 0..=n {
        for j in i..=n {
            names.push(format!("({i},{j})"));
            pair_of.push((i, j));
        }
    }
    names.push("L".into());
    names.push("R".into());
    // Groupoid component of an object, if it has one: 0 for L, 1 for R.
    let comp = |o: Obj| -> Option<u8> {
        match o {
            _ if o == l => Some(0),
            _ if o == r => Some(1),
            _ if pair_of[o].0 == pair_of[o].1 => Some(s.bit(pair_of[o].0)),
            _ => None,
        }
    };
    let mut arrows = Vec::new();
    let mut kinds = Vec::new();
    let mut index = HashMap::new();
    let mut push = |src: Obj, tgt: Obj, kind: ArrowKind, name: String| {
        index.insert((src, tgt, kind), arrows.len());
        arrows.push(Arrow { name, src, tgt });
        kinds.push(kind);
    };
    for src in 0..np + 2 {
        match comp(src) {
            Some(c) => {
                for tgt in (0..np + 2).filter(|&t| comp(t) == Some(c)) {
                    push(src, tgt, ArrowKind::Iso, format!("{}~{}", names[src], names[tgt]));
                }
            }
            None => {
                let (i, j) = pair_of[src];
                for (tgt, &(i2, j2)) in pair_of.iter().enumerate() {
                    if i <= i2 && i2 < j2 && j2 <= j {
                        push(src, tgt, ArrowKind::Below, format!("{}>{}", names[src], names[tgt]));
                    }
                }
                for tgt in (0..np + 2).filter(|&t| comp(t).is_some()) {
                    for k in (i..=j).filter(|&k| Some(s.bit(k)) == comp(tgt)) {
                        push(src, tgt, ArrowKind::Via(k), format!("{}>{}@{k}", names[src], names[tgt]));
                    }
                }
            }
        }
    }
    let identity = (0..np + 2)
        .map(|o| if comp(o).is_some() { index[&(o, o, ArrowKind::Iso)] } else { index[&(o, o, ArrowKind::Below)] })
        .collect();
    let kinds2 = kinds.clone();
    let cat = FinCat::from_parts(names, arrows.clone(), identity, |g, f| {
        let (x, z) = (arrows[f].src, arrows[g].tgt);
        let kind = match (kinds[f], kinds[g]) {
            (ArrowKind::Below, ArrowKind::Below) => ArrowKind::Below,
            (ArrowKind::Below, ArrowKind::Via(k)) | (ArrowKind::Via(k), ArrowKind::Iso) => ArrowKind::Via(k),
            (ArrowKind::Iso, ArrowKind::Iso) => ArrowKind::Iso,
            _ => return None,
        };
        index.get(&(x, z, kind)).copied()
    })
    .expect("segment category tables are consistent");
    let cat = Arc::new(cat);
    let mut seg = SegmentCat { word: s, cat, squares: Vec::new(), index, kinds: kinds2 };
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                let (top, left, right, bottom) = (seg.obj(i, k), seg.obj(i, j), seg.obj(j, k), seg.obj(j, j));
                let to = |a: Obj, b: Obj| if b == bottom || a == b { seg.via(a, b, j) } else { seg.below(a, b) };
                let arrows = [to(top, left), to(top, right), to(left, bottom), to(right, bottom)];
                seg.squares.push(Square {
                    top,
                    left,
                    right,
                    bottom,
                    arrows: arrows.map(|a| a.expect("square arrows exist")),
                });
            }
        }
    }
    seg
}

/// The functor `ℰ(tgt) → ℰ(src)` of an arrow `src → src ∘ φ`:
/// `(i, j) ↦ (φ(i), φ(j))`, fixing `L` and `R`.
pub fn segment_functor(f: &BmArrow) -> Result<(FinFunctor, SegmentCat, SegmentCat), QuivError> {
    let (dom, cod) = (segment_cat(f.tgt()), segment_cat(f.src()));
    let phi = f.phi();
    let n = f.tgt().len();
    let mut omap = vec![0; dom.cat.num_objects()];
    for i in 0..=n {
        for j in i..=n {
            omap[dom.obj(i, j)] = cod.obj(phi[i], phi[j]);
        }
    }
    omap[dom.l()] = cod.l();
    omap[dom.r()] = cod.r();
    let amap = (0..dom.cat.num_arrows())
        .map(|a| {
            let (x, y) = (dom.cat.src(a), dom.cat.tgt(a));
            let (fx, fy) = (omap[x], omap[y]);
            let kind = dom.kind(a);
            let img = match kind {
                ArrowKind::Below if fx == fy => Some(cod.cat.id(fx)),
                ArrowKind::Below if cod.below(fx, fy).is_some() => cod.below(fx, fy),
                // Intervals collapsing to a point land in the groupoid.
                ArrowKind::Below => y_collapse(&cod, fx, fy),
                ArrowKind::Via(k) => cod.via(fx, fy, phi[k]).or_else(|| cod.iso(fx, fy)),
                ArrowKind::Iso => cod.iso(fx, fy),
            };
            img.ok_or_else(|| QuivError::Invalid(format!("no image for arrow {}", dom.cat.arrows()[a].name)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let functor = FinFunctor::new(dom.cat.clone(), cod.cat.clone(), omap, amap)?;
    Ok((functor, dom, cod))
}

/// `(i, j) → (k, k)` arising from a nested interval that `φ` collapses.
fn y_collapse(cod: &SegmentCat, fx: Obj, fy: Obj) -> Option<Arr> {
    let n = cod.word.len();
    let k = (0..=n).find(|&k| cod.obj(k, k) == fy)?;
    cod.via(fx, fy, k)
}

/// The images of distinguished squares are distinguished.
pub fn preserves_squares(f: &FinFunctor, dom: &SegmentCat, cod: &SegmentCat) -> bool {
    dom.squares.iter().all(|sq| {
        let img = sq.arrows.map(|a| f.amap[a]);
        cod.squares.iter().any(|t| t.top == f.omap[sq.top] && t.left == f.omap[sq.left] && t.right == f.omap[sq.right] && t.arrows == img)
    })
}

/// Whether a functor `ℰ(s) → Set` with `F(L) = X`, `F(R) = Y` in size
/// carries every distinguished square to a pullback.
pub fn modot_check(seg: &SegmentCat, f: &SetValuedFunctor, x: usize, y: usize) -> bool {
    if *f.dom != *seg.cat || f.sizes[seg.l()] != x || f.sizes[seg.r()] != y {
        return false;
    }
    seg.squares.iter().all(|sq| {
        let [tl, tr, lb, rb] = sq.arrows;
        let mut seen = std::collections::HashSet::new();
        let injective = (0..f.sizes[sq.top]).all(|e| seen.insert((f.maps[tl][e], f.maps[tr][e])));
        let fiber = (0..f.sizes[sq.left])
            .flat_map(|a| (0..f.sizes[sq.right]).map(move |b| (a, b)))
            .filter(|&(a, b)| f.maps[lb][a] == f.maps[rb][b])
            .count();
        injective && fiber == f.sizes[sq.top]
    })
}

/// The functor on `ℰ(s)` determined by one span per letter: `spans[i]`
/// lists, for letter `(i, i+1)`, the elements with their endpoints in
/// `X` or `Y` according to `s(i)`, `s(i+1)`. `F(i, j)` is the set of
/// composable strings over `(i, j)`, as a right Kan extension would give.
pub fn spans_to_segment_functor(
    seg: &SegmentCat,
    x: usize,
    y: usize,
    spans: &[Vec<(usize, usize)>],
) -> Result<SetValuedFunctor, QuivError> {
    let s = seg.word;
    let n = s.len();
    if spans.len() != n {
        return Err(QuivError::Invalid(format!("{} spans for {n} letters", spans.len())));
    }
    let point = |k: usize| if s.bit(k) == 0 { x } else { y };
    for (i, sp) in spans.iter().enumerate() {
        if sp.iter().any(|&(a, b)| a >= point(i) || b >= point(i + 1)) {
            return Err(QuivError::Invalid(format!("span {i} leaves its endpoints")));
        }
    }
    let c = &seg.cat;
    // Elements of F(i, j): strings of span elements, lexicographic.
    let mut strings: Vec<Vec<Vec<usize>>> = vec![Vec::new(); c.num_objects()];
    for i in 0..=n {
        for j in i..=n {
            let o = seg.obj(i, j);
            if i == j {
                strings[o] = (0..point(i)).map(|v| vec![v]).collect();
                continue;
            }
            let mut acc: Vec<Vec<usize>> = (0..spans[i].len()).map(|t| vec![t]).collect();
            for l in i + 1..j {
                acc = acc
                    .into_iter()
                    .flat_map(|w| {
                        let end = spans[l - 1][*w.last().unwrap()].1;
                        (0..spans[l].len()).filter(move |&t| spans[l][t].0 == end).map(move |t| {
                            let mut w2 = w.clone();
                            w2.push(t);
                            w2
                        })
                    })
                    .collect();
            }
            strings[o] = acc;
        }
    }
    strings[seg.l()] = (0..x).map(|v| vec![v]).collect();
    strings[seg.r()] = (0..y).map(|v| vec![v]).collect();
    let lookup: Vec<HashMap<Vec<usize>, usize>> =
        strings.iter().map(|l| l.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let interval = |o: Obj| (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).find(|&(i, j)| seg.obj(i, j) == o);
    let vertex = |i: usize, w: &[usize], k: usize| if k == i { spans[i][w[0]].0 } else { spans[k - 1][w[k - i - 1]].1 };
    let maps = (0..c.num_arrows())
        .map(|a| {
            let (src, tgt) = (c.src(a), c.tgt(a));
            strings[src]
                .iter()
                .map(|w| match (interval(src), interval(tgt)) {
                    (Some((i, j)), Some((i2, j2))) if i < j && i2 < j2 => lookup[tgt][&w[i2 - i..j2 - i].to_vec()],
                    (Some((i, j)), _) if i < j => {
                        let k = (i..=j).find(|&k| seg.via(src, tgt, k) == Some(a)).expect("arrow through a vertex");
                        vertex(i, w, k)
                    }
                    _ => w[0],
                })
                .collect()
        })
        .collect();
    let sizes = strings.iter().map(Vec::len).collect();
    Ok(SetValuedFunctor::new(c.clone(), sizes, maps)?)
}
