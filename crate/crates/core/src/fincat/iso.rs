use std::ops::ControlFlow;
use std::sync::Arc;

use super::{FinCat, FinFunctor, FunctorSearch, Obj};

/// Per-object invariant: endomorphism count, then sorted out- and in-degree
/// profiles by hom-set size.
fn invariant(c: &FinCat, x: Obj) -> (usize, Vec<usize>, Vec<usize>) {
    let m = c.num_objects();
    let mut out: Vec<usize> = (0..m).map(|y| c.hom(x, y).len()).collect();
    let mut inn: Vec<usize> = (0..m).map(|y| c.hom(y, x).len()).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (c.hom(x, x).len(), out, inn)
}

/// Objects in breadth-first order over the underlying undirected graph,
/// starting each component from its least object.
fn bfs_order(c: &FinCat) -> Vec<Obj> {
    let m = c.num_objects();
    let mut seen = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for root in 0..m {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in 0..m {
                if !seen[y] && (!c.hom(x, y).is_empty() || !c.hom(y, x).is_empty()) {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

/// An isomorphism `C → D`, if one exists.
///
/// Object bijections are searched first, pruned by the invariant above and
/// by hom-set sizes against already placed objects; each candidate is then
/// completed to an arrow bijection by functor search.
pub fn find_isomorphism(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Option<FinFunctor> {
    let m = c.num_objects();
    if m != d.num_objects() || c.num_arrows() != d.num_arrows() {
        return None;
    }
    let ic: Vec<_> = (0..m).map(|x| invariant(c, x)).collect();
    let id: Vec<_> = (0..m).map(|y| invariant(d, y)).collect();
    let mut a = ic.clone();
    let mut b = id.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let order = bfs_order(c);
    let mut omap = vec![usize::MAX; m];
    let mut used = vec![false; m];
    let mut out = None;
    place(c, d, &order, 0, &ic, &id, &mut omap, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn place(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    order: &[Obj],
    k: usize,
    ic: &[(usize, Vec<usize>, Vec<usize>)],
    id: &[(usize, Vec<usize>, Vec<usize>)],
    omap: &mut Vec<Obj>,
    used: &mut Vec<bool>,
    out: &mut Option<FinFunctor>,
) {
    if k == order.len() {
        let mut s = FunctorSearch::new(c, d).injective(true);
        for (x, &y) in omap.iter().enumerate() {
            s = s.fix(x, y);
        }
        let _ = s.run(|o, a| {
            *out = Some(FinFunctor::new_unchecked(c.clone(), d.clone(), o.to_vec(), a.to_vec()));
            ControlFlow::Break(())
        });
        return;
    }
    let x = order[k];
    for y in 0..d.num_objects() {
        if used[y] || ic[x] != id[y] {
            continue;
        }
        let consistent = order[..k].iter().all(|&x2| {
            let y2 = omap[x2];
            c.hom(x, x2).len() == d.hom(y, y2).len() && c.hom(x2, x).len() == d.hom(y2, y).len()
        });
        if !consistent {
            continue;
        }
        omap[x] = y;
        used[y] = true;
        place(c, d, order, k + 1, ic, id, omap, used, out);
        used[y] = false;
        omap[x] = usize::MAX;
        if out.is_some() {
            return;
        }
    }
}
