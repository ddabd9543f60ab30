use std::ops::ControlFlow;
use std::sync::Arc;

use super::{Arr, CatError, FinCat, FinFunctor, Obj};

#[derive(Debug, Clone, Copy)]
enum Step {
    Obj(Obj),
    Arr(Arr),
}

/// Depth-first functor enumeration.
///
/// Objects are assigned in declared order; right after each object, every
/// non-identity arrow whose endpoints are both assigned is tried in declared
/// order. Composition constraints are checked as soon as all three arrows of
/// a composable triple are assigned.
pub struct FunctorSearch<'a> {
    dom: &'a FinCat,
    cod: &'a FinCat,
    fixed: Vec<Option<Obj>>,
    injective: bool,
    cap: usize,
}

struct State {
    omap: Vec<Obj>,
    amap: Vec<Arr>,
    used_obj: Vec<bool>,
    used_arr: Vec<bool>,
    found: usize,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a FinCat, cod: &'a FinCat) -> Self {
        FunctorSearch { dom, cod, fixed: vec![None; dom.num_objects()], injective: false, cap: usize::MAX }
    }

    /// Forces object `x` to map to `y`.
    pub fn fix(mut self, x: Obj, y: Obj) -> Self {
        self.fixed[x] = Some(y);
        self
    }

    /// Only functors injective on objects and arrows.
    pub fn injective(mut self, on: bool) -> Self {
        self.injective = on;
        self
    }

    /// Hard limit on the number of functors visited.
    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Visits every functor in deterministic order until `visit` breaks.
    /// Returns the number of functors visited.
    pub fn run(&self, mut visit: impl FnMut(&[Obj], &[Arr]) -> ControlFlow<()>) -> Result<usize, CatError> {
        let (c, d) = (self.dom, self.cod);
        let mut steps = Vec::new();
        let mut step_of = vec![0usize; c.num_arrows()];
        let mut seen_obj = vec![false; c.num_objects()];
        for x in 0..c.num_objects() {
            step_of[c.id(x)] = steps.len();
            steps.push(Step::Obj(x));
            seen_obj[x] = true;
            for f in 0..c.num_arrows() {
                if !c.is_identity(f) && seen_obj[c.src(f)] && seen_obj[c.tgt(f)] && c.src(f).max(c.tgt(f)) == x {
                    step_of[f] = steps.len();
                    steps.push(Step::Arr(f));
                }
            }
        }
        let mut checks: Vec<Vec<(Arr, Arr, Arr)>> = vec![Vec::new(); steps.len()];
        for (g, f, h) in c.composable_triples() {
            checks[step_of[g].max(step_of[f]).max(step_of[h])].push((g, f, h));
        }
        let mut st = State {
            omap: vec![usize::MAX; c.num_objects()],
            amap: vec![usize::MAX; c.num_arrows()],
            used_obj: vec![false; d.num_objects()],
            used_arr: vec![false; d.num_arrows()],
            found: 0,
        };
        let _ = self.dfs(0, &steps, &checks, &mut st, &mut visit)?;
        Ok(st.found)
    }

    fn dfs(
        &self,
        k: usize,
        steps: &[Step],
        checks: &[Vec<(Arr, Arr, Arr)>],
        st: &mut State,
        visit: &mut dyn FnMut(&[Obj], &[Arr]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, CatError> {
        let (c, d) = (self.dom, self.cod);
        if k == steps.len() {
            st.found += 1;
            if st.found > self.cap {
                return Err(CatError::CapExceeded { what: "functor count", cap: self.cap });
            }
            return Ok(visit(&st.omap, &st.amap));
        }
        let ok = |st: &State| checks[k].iter().all(|&(g, f, h)| d.comp(st.amap[g], st.amap[f]) == st.amap[h]);
        match steps[k] {
            Step::Obj(x) => {
                let cands: Vec<Obj> = match self.fixed[x] {
                    Some(y) => vec![y],
                    None => (0..d.num_objects()).collect(),
                };
                for y in cands {
                    if self.injective && st.used_obj[y] {
                        continue;
                    }
                    let i = c.id(x);
                    st.omap[x] = y;
                    st.amap[i] = d.id(y);
                    st.used_obj[y] = true;
                    st.used_arr[d.id(y)] = true;
                    let r = if ok(st) { self.dfs(k + 1, steps, checks, st, visit)? } else { ControlFlow::Continue(()) };
                    st.used_obj[y] = false;
                    st.used_arr[d.id(y)] = false;
                    st.omap[x] = usize::MAX;
                    st.amap[i] = usize::MAX;
                    if r.is_break() {
                        return Ok(r);
                    }
                }
            }
            Step::Arr(f) => {
                let (s, t) = (st.omap[c.src(f)], st.omap[c.tgt(f)]);
                for &g in d.hom(s, t) {
                    if self.injective && st.used_arr[g] {
                        continue;
                    }
                    st.amap[f] = g;
                    st.used_arr[g] = true;
                    let r = if ok(st) { self.dfs(k + 1, steps, checks, st, visit)? } else { ControlFlow::Continue(()) };
                    st.used_arr[g] = false;
                    st.amap[f] = usize::MAX;
                    if r.is_break() {
                        return Ok(r);
                    }
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `visit` on every functor `C → D` in enumeration order.
pub fn for_each_functor(
    dom: &FinCat,
    cod: &FinCat,
    cap: usize,
    visit: impl FnMut(&[Obj], &[Arr]) -> ControlFlow<()>,
) -> Result<usize, CatError> {
    FunctorSearch::new(dom, cod).cap(cap).run(visit)
}

/// Every functor `C → D`, in enumeration order.
pub fn enumerate_functors(dom: &Arc<FinCat>, cod: &Arc<FinCat>, cap: usize) -> Result<Vec<FinFunctor>, CatError> {
    let mut out = Vec::new();
    for_each_functor(dom, cod, cap, |o, a| {
        out.push(FinFunctor::new_unchecked(dom.clone(), cod.clone(), o.to_vec(), a.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
