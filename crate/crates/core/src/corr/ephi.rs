use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::CorrError;
use crate::fincat::{count_nat, Arr, Arrow, FinCat, FinFunctor, Obj, SetValuedFunctor};
use crate::quiv::{segment_cat, spans_to_segment_functor, ArrowKind, SegmentCat, Square};
use crate::shapes::BmWord;

/// A cone `apex → legs[t]` that should become a product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCone {
    pub apex: Obj,
    pub legs: Vec<Arr>,
}

/// A segment category glued into the target fiber.
#[derive(Debug, Clone)]
struct Piece {
    seg: SegmentCat,
    obj: Vec<Obj>,
    arr: Vec<Arr>,
}

/// One corepresentable summand `h^Y` of `Φ(X)`. `tags` lists the vertex
/// maps it carries: `0` is `k ↦ k`, `1` is `k ↦ N − k`.
#[derive(Debug, Clone)]
struct Summand {
    piece: usize,
    tags: Vec<u8>,
    obj: Obj,
}

/// The total category of the correspondence `ℰ(s) ⇸ ℰ′_φ(s)` for `s` in
/// `LM`, with its two families of distinguished diagrams.
///
/// Objects are those of `ℰ(s)` followed by those of `ℰ′_φ(s)`; arrows are
/// those of `ℰ(s)`, then of `ℰ′_φ(s)`, then the cross arrows.
#[derive(Debug, Clone)]
pub struct EPhi {
    pub word: BmWord,
    pub cat: Arc<FinCat>,
    pub source: SegmentCat,
    pub source_inclusion: FinFunctor,
    pub target: Arc<FinCat>,
    pub target_inclusion: FinFunctor,
    /// Distinguished squares of the target, in `cat`.
    pub squares: Vec<Square>,
    /// One cone per object of `ℰ(s)`, onto the summands of `Φ(X)`.
    pub products: Vec<ProductCone>,
    /// `phi[X]`: the objects `Y_t` of `cat` with `Φ(X) = ⊔ h^{Y_t}`.
    pub phi: Vec<Vec<Obj>>,
    pieces: Vec<Piece>,
}

pub fn build_e_phi(s: BmWord) -> Result<EPhi, CorrError> {
    if !s.is_lm() {
        return Err(CorrError::NotInLm(s.to_string()));
    }
    let n = s.len();
    let a = segment_cat(s);
    let (segs, marks, big_n) = if s.is_ass() {
        (vec![segment_cat(s), segment_cat(s.op())], ["'", "''"], n)
    } else {
        let star = s.star()?;
        (vec![segment_cat(star)], ["*", ""], star.len())
    };
    // The target: pieces glued along L and R.
    let mut names: Vec<String> = Vec::new();
    let mut b_arrows: Vec<Arrow> = Vec::new();
    let mut origin: Vec<(usize, Arr)> = Vec::new();
    let mut b_id: Vec<Arr> = Vec::new();
    let mut pieces: Vec<Piece> = Vec::new();
    let (mut gl, mut gr) = (None, None);
    for (p, seg) in segs.into_iter().enumerate() {
        let c = &seg.cat;
        let mut obj = vec![0; c.num_objects()];
        let mut fresh = vec![false; c.num_objects()];
        for o in 0..c.num_objects() {
            let glued = if o == seg.l() { &mut gl } else if o == seg.r() { &mut gr } else { &mut None };
            obj[o] = match *glued {
                Some(g) => g,
                None => {
                    let name = &c.object_names()[o];
                    names.push(if o == seg.l() || o == seg.r() { format!("{name}{}", marks[0]) } else { format!("{name}{}", marks[p]) });
                    fresh[o] = true;
                    if o == seg.l() || o == seg.r() {
                        *glued = Some(names.len() - 1);
                    }
                    names.len() - 1
                }
            };
        }
        b_id.resize(names.len(), usize::MAX);
        let mut arr = vec![0; c.num_arrows()];
        for (i, x) in c.arrows().iter().enumerate() {
            if c.is_identity(i) && !fresh[x.src] {
                arr[i] = b_id[obj[x.src]];
                continue;
            }
            arr[i] = b_arrows.len();
            b_arrows.push(Arrow { name: format!("{}{}", x.name, marks[p]), src: obj[x.src], tgt: obj[x.tgt] });
            origin.push((p, i));
            if c.is_identity(i) {
                b_id[obj[x.src]] = arr[i];
            }
        }
        pieces.push(Piece { seg, obj, arr });
    }
    let b = FinCat::from_parts(names, b_arrows.clone(), b_id.clone(), |g, f| {
        let is_id = |a: Arr| b_id[b_arrows[a].src] == a;
        if is_id(f) {
            return Some(g);
        }
        if is_id(g) {
            return Some(f);
        }
        let ((pg, g0), (pf, f0)) = (origin[g], origin[f]);
        (pg == pf).then(|| pieces[pg].arr[pieces[pg].seg.cat.comp(g0, f0)])
    })?;
    let b = Arc::new(b);

    // Summands of Φ(X) for each object X of ℰ(s).
    let ac = &a.cat;
    let na = ac.num_objects();
    let mut summands: Vec<Vec<Summand>> = vec![Vec::new(); na];
    let piece_of = |tag: u8| if s.is_ass() { tag as usize } else { 0 };
    for i in 0..=n {
        for j in i..=n {
            let x = a.obj(i, j);
            if a.side(i) == a.r() && i == j {
                continue;
            }
            summands[x] = if !s.is_ass() && j == n {
                vec![Summand { piece: 0, tags: vec![0, 1], obj: pieces[0].seg.obj(i, big_n - i) }]
            } else {
                vec![
                    Summand { piece: piece_of(0), tags: vec![0], obj: pieces[piece_of(0)].seg.obj(i, j) },
                    Summand { piece: piece_of(1), tags: vec![1], obj: pieces[piece_of(1)].seg.obj(big_n - j, big_n - i) },
                ]
            };
        }
    }
    summands[a.l()] = vec![
        Summand { piece: piece_of(0), tags: vec![0], obj: pieces[piece_of(0)].seg.l() },
        Summand { piece: piece_of(1), tags: vec![1], obj: pieces[piece_of(1)].seg.r() },
    ];
    let tau = |tag: u8, k: usize| if tag == 0 { k } else { big_n - k };

    // ρ(u, t): the summand of Φ(X′) and the arrow into the t-th summand of Φ(X).
    let mut rho: Vec<Vec<(usize, Arr)>> = Vec::with_capacity(ac.num_arrows());
    for u in 0..ac.num_arrows() {
        let (x2, x) = (ac.src(u), ac.tgt(u));
        let mut row = Vec::new();
        for sm in &summands[x] {
            let tag = sm.tags[0];
            let t2 = summands[x2].iter().position(|o| o.tags.contains(&tag) && o.piece == sm.piece).ok_or_else(|| {
                CorrError::Invalid(format!("no summand for {} along {}", ac.object_names()[x], ac.arrows()[u].name))
            })?;
            let piece = &pieces[sm.piece];
            let (y2, y) = (summands[x2][t2].obj, sm.obj);
            let arrow = match a.kind(u) {
                _ if y2 == y => Some(piece.seg.cat.id(y)),
                ArrowKind::Below => piece.seg.below(y2, y),
                ArrowKind::Via(k) => piece.seg.via(y2, y, tau(tag, k)),
                ArrowKind::Iso => piece.seg.iso(y2, y),
            }
            .ok_or_else(|| CorrError::Invalid(format!("no image of {}", ac.arrows()[u].name)))?;
            row.push((t2, piece.arr[arrow]));
        }
        rho.push(row);
    }

    // The total category.
    let nb = b.num_objects();
    let mut names: Vec<String> = ac.object_names().to_vec();
    names.extend(b.object_names().iter().cloned());
    let mut arrows: Vec<Arrow> = ac.arrows().to_vec();
    let a_arrows = arrows.len();
    arrows.extend(b.arrows().iter().map(|x| Arrow { name: x.name.clone(), src: x.src + na, tgt: x.tgt + na }));
    let mut cross: HashMap<(Obj, usize, Arr), Arr> = HashMap::new();
    let mut cross_of: Vec<(Obj, usize, Arr)> = Vec::new();
    let yb = |x: Obj, t: usize| pieces[summands[x][t].piece].obj[summands[x][t].obj];
    for x in 0..na {
        for t in 0..summands[x].len() {
            let y = yb(x, t);
            for z in 0..nb {
                for &beta in b.hom(y, z) {
                    cross.insert((x, t, beta), arrows.len());
                    cross_of.push((x, t, beta));
                    arrows.push(Arrow { name: format!("{}>{}#{t}", ac.object_names()[x], b.arrows()[beta].name), src: x, tgt: na + z });
                }
            }
        }
    }
    let cross_start = a_arrows + b.num_arrows();
    let identity: Vec<Arr> = (0..na).map(|x| ac.id(x)).chain((0..nb).map(|y| a_arrows + b.id(y))).collect();
    let part = |f: Arr| {
        if f < a_arrows {
            (0, f)
        } else if f < cross_start {
            (1, f - a_arrows)
        } else {
            (2, f - cross_start)
        }
    };
    let cat = FinCat::from_parts(names, arrows, identity, |g, f| match (part(g), part(f)) {
        ((0, g), (0, f)) => Some(ac.comp(g, f)),
        ((1, g), (1, f)) => Some(a_arrows + b.comp(g, f)),
        ((1, g), (2, f)) => {
            let (x, t, beta) = cross_of[f];
            cross.get(&(x, t, b.comp(g, beta))).copied()
        }
        ((2, g), (0, u)) => {
            let (_, t, beta) = cross_of[g];
            let (t2, r) = rho[u][t];
            cross.get(&(ac.src(u), t2, b.comp(beta, r))).copied()
        }
        _ => None,
    })?;
    let cat = Arc::new(cat);
    let source_inclusion = FinFunctor::new(ac.clone(), cat.clone(), (0..na).collect(), (0..a_arrows).collect())?;
    let target_inclusion =
        FinFunctor::new(b.clone(), cat.clone(), (na..na + nb).collect(), (a_arrows..a_arrows + b.num_arrows()).collect())?;
    let squares = pieces
        .iter()
        .flat_map(|p| {
            p.seg.squares.iter().map(move |sq| Square {
                top: na + p.obj[sq.top],
                left: na + p.obj[sq.left],
                right: na + p.obj[sq.right],
                bottom: na + p.obj[sq.bottom],
                arrows: sq.arrows.map(|x| a_arrows + p.arr[x]),
            })
        })
        .collect();
    let products = (0..na)
        .map(|x| ProductCone { apex: x, legs: (0..summands[x].len()).map(|t| cross[&(x, t, b.id(yb(x, t)))]).collect() })
        .collect();
    let phi = (0..na).map(|x| (0..summands[x].len()).map(|t| na + yb(x, t)).collect()).collect();
    Ok(EPhi { word: s, cat, source: a, source_inclusion, target: b, target_inclusion, squares, products, phi, pieces })
}

/// All multisets of at most `max` pairs from `0..a × 0..b`, sorted.
fn spans(a: usize, b: usize, max: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<(usize, usize)>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max {
        let mut next = Vec::new();
        for (sp, from) in frontier {
            for (k, &p) in pairs.iter().enumerate().skip(from) {
                let mut s2 = sp.clone();
                s2.push(p);
                out.push(s2.clone());
                next.push((s2, k));
            }
        }
        frontier = next;
    }
    out
}

/// Every functor on the target fiber that is cartesian on distinguished
/// squares, with `|F(L)|, |F(R)| ≤ max_point` and at most `max_span`
/// elements over each letter, in a fixed order.
pub fn cartesian_functors(e: &EPhi, max_point: usize, max_span: usize, cap: usize) -> Result<Vec<SetValuedFunctor>, CorrError> {
    let mut out = Vec::new();
    for x in 0..=max_point {
        for y in 0..=max_point {
            // One list of choices per letter, across all pieces.
            let mut letters: Vec<(usize, Vec<Vec<(usize, usize)>>)> = Vec::new();
            for (p, piece) in e.pieces.iter().enumerate() {
                let w = piece.seg.word;
                let point = |k: usize| if w.bit(k) == 0 { x } else { y };
                for i in 0..w.len() {
                    letters.push((p, spans(point(i), point(i + 1), max_span)));
                }
            }
            let mut choice = vec![0usize; letters.len()];
            loop {
                if out.len() >= cap {
                    return Err(crate::fincat::CatError::CapExceeded { what: "cartesian functors", cap }.into());
                }
                out.push(assemble(e, x, y, &letters, &choice)?);
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < letters[i].1.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn assemble(e: &EPhi, x: usize, y: usize, letters: &[(usize, Vec<Vec<(usize, usize)>>)], choice: &[usize]) -> Result<SetValuedFunctor, CorrError> {
    let b = &e.target;
    let mut sizes = vec![0; b.num_objects()];
    let mut maps = vec![Vec::new(); b.num_arrows()];
    for (p, piece) in e.pieces.iter().enumerate() {
        let sp: Vec<Vec<(usize, usize)>> =
            letters.iter().zip(choice).filter(|((q, _), _)| *q == p).map(|((_, l), &c)| l[c].clone()).collect();
        let f = spans_to_segment_functor(&piece.seg, x, y, &sp)?;
        for (o, &s) in f.sizes.iter().enumerate() {
            sizes[piece.obj[o]] = s;
        }
        for (a, m) in f.maps.into_iter().enumerate() {
            maps[piece.arr[a]] = m;
        }
    }
    Ok(SetValuedFunctor::new(b.clone(), sizes, maps)?)
}

/// The extension of `g` from the target fiber to the whole category:
/// `F(X) = ∏_t g(Y_t)`, tuples encoded in mixed radix with `t = 0` least.
pub fn extend(e: &EPhi, g: &SetValuedFunctor) -> Result<SetValuedFunctor, CorrError> {
    let c = &e.cat;
    let na = e.source.cat.num_objects();
    let a_arrows = e.source.cat.num_arrows();
    let b_arrows = e.target.num_arrows();
    let gs = |y: Obj| g.sizes[y - na];
    let mut sizes = vec![0; c.num_objects()];
    for x in 0..na {
        sizes[x] = e.phi[x].iter().map(|&y| gs(y)).product();
    }
    for y in na..c.num_objects() {
        sizes[y] = gs(y);
    }
    let decode = |x: Obj, mut v: usize| -> Vec<usize> {
        e.phi[x]
            .iter()
            .map(|&y| {
                let r = v % gs(y);
                v /= gs(y);
                r
            })
            .collect()
    };
    let encode = |x: Obj, t: &[usize]| -> usize {
        e.phi[x].iter().zip(t).rev().fold(0, |acc, (&y, &v)| acc * gs(y) + v)
    };
    let mut maps = Vec::with_capacity(c.num_arrows());
    for f in 0..c.num_arrows() {
        let (x, z) = (c.src(f), c.tgt(f));
        let m: Vec<usize> = if f < a_arrows {
            // Each leg of z composed with f factors through one leg of x.
            let legs_src = &e.products[x].legs;
            (0..sizes[x])
                .map(|v| {
                    let tup = decode(x, v);
                    let out: Vec<usize> = e.products[z]
                        .legs
                        .iter()
                        .map(|&leg_z| {
                            let h = c.comp(leg_z, f);
                            let (t2, beta) = factor(e, x, h, legs_src);
                            g.maps[beta][tup[t2]]
                        })
                        .collect();
                    encode(z, &out)
                })
                .collect()
        } else if f < a_arrows + b_arrows {
            g.maps[f - a_arrows].clone()
        } else {
            let (t, beta) = factor(e, x, f, &e.products[x].legs);
            (0..sizes[x]).map(|v| g.maps[beta][decode(x, v)[t]]).collect()
        };
        maps.push(m);
    }
    Ok(SetValuedFunctor::new(c.clone(), sizes, maps)?)
}

/// Writes a cross arrow `h: x → Y` as `β ∘ legs[t]` with `β` in the target.
fn factor(e: &EPhi, x: Obj, h: Arr, legs: &[Arr]) -> (usize, Arr) {
    let c = &e.cat;
    let a_arrows = e.source.cat.num_arrows();
    for (t, &l) in legs.iter().enumerate() {
        let (y, z) = (c.tgt(l), c.tgt(h));
        for &b in c.hom(y, z) {
            if c.comp(b, l) == h {
                return (t, b - a_arrows);
            }
        }
    }
    panic!("cross arrow from {x} does not factor through a leg")
}

fn is_pullback(f: &SetValuedFunctor, sq: &Square) -> bool {
    let [tl, tr, lb, rb] = sq.arrows;
    let mut seen = HashSet::new();
    let injective = (0..f.sizes[sq.top]).all(|e| seen.insert((f.maps[tl][e], f.maps[tr][e])));
    let fiber = (0..f.sizes[sq.left])
        .flat_map(|a| (0..f.sizes[sq.right]).map(move |b| (a, b)))
        .filter(|&(a, b)| f.maps[lb][a] == f.maps[rb][b])
        .count();
    injective && fiber == f.sizes[sq.top]
}

fn is_product(f: &SetValuedFunctor, cone: &ProductCone) -> bool {
    let total: usize = cone.legs.iter().map(|&l| f.sizes[f.dom.tgt(l)]).product();
    let mut seen = HashSet::new();
    total == f.sizes[cone.apex] && (0..f.sizes[cone.apex]).all(|v| seen.insert(cone.legs.iter().map(|&l| f.maps[l][v]).collect::<Vec<_>>()))
}

/// Evidence that restriction to the target fiber is an equivalence on
/// functors sending distinguished diagrams to limits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub functors: usize,
    /// Extensions that are functors restricting to the input.
    pub extended: usize,
    /// Extensions sending every distinguished diagram to a limit, and the
    /// source squares to pullbacks.
    pub cartesian: usize,
    /// Extensions whose values match `Nat(Hom(X, −)|, G)`, the pointwise
    /// right Kan extension.
    pub kan: usize,
    pub pairs: usize,
    /// Pairs with as many transformations upstairs as downstairs.
    pub full: usize,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.extended == self.functors && self.cartesian == self.functors && self.kan == self.functors && self.full == self.pairs
    }
}

/// Checks the restriction equivalence on the given target functors; the
/// fullness comparison runs on pairs among the first `pair_limit`.
pub fn e_phi_restriction_check(
    e: &EPhi,
    functors: &[SetValuedFunctor],
    pair_limit: usize,
    cap: usize,
) -> Result<RestrictionReport, CorrError> {
    let mut r = RestrictionReport { functors: functors.len(), ..Default::default() };
    let na = e.source.cat.num_objects();
    let corep: Vec<SetValuedFunctor> =
        (0..na).map(|x| SetValuedFunctor::corepresentable(e.cat.clone(), x).restrict(&e.target_inclusion)).collect();
    let mut ext = Vec::new();
    for g in functors {
        let f = extend(e, g)?;
        r.extended += (f.restrict(&e.target_inclusion) == *g) as usize;
        let src = f.restrict(&e.source_inclusion);
        let cart = e.squares.iter().all(|sq| is_pullback(&f, sq))
            && e.products.iter().all(|c| is_product(&f, c))
            && e.source.squares.iter().all(|sq| is_pullback(&src, sq));
        r.cartesian += cart as usize;
        let mut kan = true;
        for x in 0..na {
            kan &= count_nat(&corep[x], g, cap)? == f.sizes[x];
        }
        r.kan += kan as usize;
        ext.push(f);
    }
    let k = functors.len().min(pair_limit);
    for i in 0..k {
        for j in 0..k {
            r.pairs += 1;
            r.full += (count_nat(&ext[i], &ext[j], cap)? == count_nat(&functors[i], &functors[j], cap)?) as usize;
        }
    }
    Ok(r)
}
