//! Finite categories stored as explicit tables.
//!
//! Every category here has finitely many objects and arrows and a total
//! composition table on composable pairs, so equality and every law is
//! decidable by enumeration.

mod build;
mod colim;
pub mod dot;
mod enumerate;
mod flat;
mod functor;
mod iso;
pub mod json;
mod kan;
mod search;
mod setfun;
mod uf;

pub use build::{opposite, product, twisted_arrows, Twisted};
pub use colim::{colim_set, Cocone};
pub use enumerate::{enumerate_functors, for_each_functor, FunctorSearch};
pub use flat::flat_over_2_check;
pub use functor::FinFunctor;
pub use iso::find_isomorphism;
pub use kan::{left_kan, LeftKan};
pub use search::EquivariantSearch;
pub use setfun::{count_nat, nat_transformations, SetValuedFunctor};
pub use uf::UnionFind;

use thiserror::Error;

/// Index of an object in its category.
pub type Obj = usize;
/// Index of an arrow in its category.
pub type Arr = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("arrow {arrow} refers to an undeclared object")]
    BadEndpoint { arrow: usize },
    #[error("object {object} has no valid identity")]
    BadIdentity { object: usize },
    #[error("composite of {g} after {f} is missing or mistyped")]
    BadComposite { g: usize, f: usize },
    #[error("composition is not associative at ({h}, {g}, {f})")]
    NotAssociative { h: usize, g: usize, f: usize },
    #[error("identity law fails at arrow {arrow}")]
    NotUnital { arrow: usize },
    #[error("graph has a cycle; free categories need acyclic graphs")]
    Cyclic,
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("category is not a poset")]
    NotPoset,
    #[error("functor is invalid: {0}")]
    BadFunctor(String),
    #[error("set-valued functor is invalid: {0}")]
    BadSetFunctor(String),
    #[error("resource cap exceeded: {what} > {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category.
///
/// `comp[g * n + f]` holds `g ∘ f` when `tgt f == src g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<Arr>,
    comp: Vec<u32>,
    hom: Vec<Vec<Arr>>,
    hom_pos: Vec<usize>,
}

impl FinCat {
    /// Builds and validates a category.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<Arr>,
        compose: impl Fn(Arr, Arr) -> Option<Arr>,
    ) -> Result<Self, CatError> {
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(CatError::BadEndpoint { arrow: i });
            }
        }
        if identity.len() != objects.len() {
            return Err(CatError::BadIdentity { object: identity.len().min(objects.len()) });
        }
        for (x, &i) in identity.iter().enumerate() {
            if i >= arrows.len() || arrows[i].src != x || arrows[i].tgt != x {
                return Err(CatError::BadIdentity { object: x });
            }
        }
        let n = arrows.len();
        let mut comp = vec![NONE; n * n];
        for g in 0..n {
            for f in 0..n {
                if arrows[f].tgt != arrows[g].src {
                    continue;
                }
                match compose(g, f) {
                    Some(h) if h < n && arrows[h].src == arrows[f].src && arrows[h].tgt == arrows[g].tgt => {
                        comp[g * n + f] = h as u32;
                    }
                    _ => return Err(CatError::BadComposite { g, f }),
                }
            }
        }
        let c = Self::assemble(objects, arrows, identity, comp);
        c.validate()?;
        Ok(c)
    }

    /// Builds without the law checks. Callers guarantee a valid table.
    pub(crate) fn from_table_unchecked(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<Arr>,
        comp: Vec<u32>,
    ) -> Self {
        Self::assemble(objects, arrows, identity, comp)
    }

    fn assemble(objects: Vec<String>, arrows: Vec<Arrow>, identity: Vec<Arr>, comp: Vec<u32>) -> Self {
        let m = objects.len();
        let mut hom = vec![Vec::new(); m * m];
        let mut hom_pos = vec![0; arrows.len()];
        for (i, a) in arrows.iter().enumerate() {
            let cell = &mut hom[a.src * m + a.tgt];
            hom_pos[i] = cell.len();
            cell.push(i);
        }
        FinCat { objects, arrows, identity, comp, hom, hom_pos }
    }

    /// Checks typing, unit and associativity laws exhaustively.
    pub fn validate(&self) -> Result<(), CatError> {
        let n = self.arrows.len();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= self.objects.len() || a.tgt >= self.objects.len() {
                return Err(CatError::BadEndpoint { arrow: i });
            }
        }
        for (x, &i) in self.identity.iter().enumerate() {
            if self.arrows[i].src != x || self.arrows[i].tgt != x {
                return Err(CatError::BadIdentity { object: x });
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].tgt == self.arrows[g].src;
                let h = self.comp[g * n + f];
                if composable != (h != NONE) {
                    return Err(CatError::BadComposite { g, f });
                }
            }
        }
        for f in 0..n {
            let a = &self.arrows[f];
            if self.compose(f, self.identity[a.src]) != Some(f) || self.compose(self.identity[a.tgt], f) != Some(f) {
                return Err(CatError::NotUnital { arrow: f });
            }
        }
        for f in 0..n {
            let y = self.arrows[f].tgt;
            for g in self.out_arrows(y) {
                let gf = self.comp[g * n + f] as usize;
                let z = self.arrows[g].tgt;
                for h in self.out_arrows(z) {
                    let hg = self.comp[h * n + g] as usize;
                    if self.comp[h * n + gf] != self.comp[hg * n + f] {
                        return Err(CatError::NotAssociative { h, g, f });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn src(&self, f: Arr) -> Obj {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: Arr) -> Obj {
        self.arrows[f].tgt
    }

    pub fn id(&self, x: Obj) -> Arr {
        self.identity[x]
    }

    pub fn identities(&self) -> &[Arr] {
        &self.identity
    }

    pub fn is_identity(&self, f: Arr) -> bool {
        self.identity[self.arrows[f].src] == f
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Arr] {
        &self.hom[x * self.objects.len() + y]
    }

    /// Position of `f` inside its hom-set.
    pub fn hom_index(&self, f: Arr) -> usize {
        self.hom_pos[f]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        let h = self.comp[g * self.arrows.len() + f];
        (h != NONE).then_some(h as usize)
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: Arr, f: Arr) -> Arr {
        let h = self.comp[g * self.arrows.len() + f];
        debug_assert!(h != NONE);
        h as usize
    }

    /// Arrows with source `x`, in declared order.
    pub fn out_arrows(&self, x: Obj) -> impl Iterator<Item = Arr> + '_ {
        let m = self.objects.len();
        (0..m).flat_map(move |y| self.hom[x * m + y].iter().copied())
    }

    /// Arrows with target `y`, in declared order of sources.
    pub fn in_arrows(&self, y: Obj) -> impl Iterator<Item = Arr> + '_ {
        let m = self.objects.len();
        (0..m).flat_map(move |x| self.hom[x * m + y].iter().copied())
    }

    pub fn is_discrete(&self) -> bool {
        self.arrows.len() == self.objects.len()
    }

    /// Hom-sets of size at most one and no parallel pair of opposite arrows.
    pub fn is_poset(&self) -> bool {
        let m = self.objects.len();
        for x in 0..m {
            for y in 0..m {
                let n = self.hom(x, y).len();
                if n > 1 || (x != y && n == 1 && !self.hom(y, x).is_empty()) {
                    return false;
                }
            }
        }
        true
    }

    /// `x ≤ y` in a poset (any arrow x → y).
    pub fn leq(&self, x: Obj, y: Obj) -> bool {
        !self.hom(x, y).is_empty()
    }

    /// Pairs of composable non-identity arrows with their composite.
    pub(crate) fn composable_triples(&self) -> Vec<(Arr, Arr, Arr)> {
        let n = self.arrows.len();
        let mut out = Vec::new();
        for f in 0..n {
            if self.is_identity(f) {
                continue;
            }
            for g in self.out_arrows(self.arrows[f].tgt) {
                if self.is_identity(g) {
                    continue;
                }
                out.push((g, f, self.comp[g * n + f] as usize));
            }
        }
        out
    }

    pub fn discrete(n: usize) -> Self {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let arrows = (0..n).map(|i| Arrow { name: format!("id{i}"), src: i, tgt: i }).collect();
        let comp = (0..n * n).map(|k| if k / n == k % n { (k % n) as u32 } else { NONE }).collect();
        Self::from_table_unchecked(objects, arrows, (0..n).collect(), comp)
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    /// The chain `[n]` with objects `0..=n`.
    pub fn chain(n: usize) -> Self {
        Self::poset(n + 1, |i, j| i <= j).expect("chains are posets")
    }

    /// A poset on `0..n` given by a reflexive, transitive, antisymmetric relation.
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, CatError> {
        let rel: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        for i in 0..n {
            if !rel[i * n + i] {
                return Err(CatError::NotPartialOrder);
            }
            for j in 0..n {
                if i != j && rel[i * n + j] && rel[j * n + i] {
                    return Err(CatError::NotPartialOrder);
                }
                for k in 0..n {
                    if rel[i * n + j] && rel[j * n + k] && !rel[i * n + k] {
                        return Err(CatError::NotPartialOrder);
                    }
                }
            }
        }
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + j] {
                    index[i * n + j] = arrows.len();
                    let name = if i == j { format!("id{i}") } else { format!("{i}<={j}") };
                    arrows.push(Arrow { name, src: i, tgt: j });
                }
            }
        }
        let identity = (0..n).map(|i| index[i * n + i]).collect();
        let m = arrows.len();
        let mut comp = vec![NONE; m * m];
        for (f, af) in arrows.iter().enumerate() {
            for (g, ag) in arrows.iter().enumerate() {
                if af.tgt == ag.src {
                    comp[g * m + f] = index[af.src * n + ag.tgt] as u32;
                }
            }
        }
        Ok(Self::from_table_unchecked(objects, arrows, identity, comp))
    }

    /// The free category on an acyclic graph. Arrows are the paths, listed
    /// by length and then in edge order.
    pub fn free(num_objects: usize, edges: &[(Obj, Obj, String)]) -> Result<Self, CatError> {
        use std::collections::HashMap;
        for &(s, t, _) in edges {
            if s >= num_objects || t >= num_objects {
                return Err(CatError::BadEndpoint { arrow: 0 });
            }
        }
        // Kahn's algorithm rejects cycles before enumerating paths.
        let mut indeg = vec![0usize; num_objects];
        for &(_, t, _) in edges {
            indeg[t] += 1;
        }
        let mut queue: Vec<Obj> = (0..num_objects).filter(|&x| indeg[x] == 0).collect();
        let mut seen = 0;
        while let Some(x) = queue.pop() {
            seen += 1;
            for &(s, t, _) in edges {
                if s == x {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        if seen != num_objects {
            return Err(CatError::Cyclic);
        }
        let mut paths: Vec<(Obj, Obj, Vec<usize>)> = (0..num_objects).map(|x| (x, x, Vec::new())).collect();
        let mut frontier: Vec<usize> = Vec::new();
        for (e, &(s, t, _)) in edges.iter().enumerate() {
            frontier.push(paths.len());
            paths.push((s, t, vec![e]));
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &p in &frontier {
                for (e, &(s, t, _)) in edges.iter().enumerate() {
                    if s == paths[p].1 {
                        let mut path = paths[p].2.clone();
                        path.push(e);
                        next.push(paths.len());
                        paths.push((paths[p].0, t, path));
                    }
                }
            }
            frontier = next;
        }
        let lookup: HashMap<(Obj, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, (s, _, p))| ((*s, p.clone()), i)).collect();
        let objects = (0..num_objects).map(|i| i.to_string()).collect();
        let arrows: Vec<Arrow> = paths
            .iter()
            .map(|(s, t, p)| {
                let name = if p.is_empty() {
                    format!("id{s}")
                } else {
                    p.iter().rev().map(|&e| edges[e].2.as_str()).collect::<Vec<_>>().join("∘")
                };
                Arrow { name, src: *s, tgt: *t }
            })
            .collect();
        let m = arrows.len();
        let mut comp = vec![NONE; m * m];
        for f in 0..m {
            for g in 0..m {
                if paths[f].1 == paths[g].0 {
                    let mut p = paths[f].2.clone();
                    p.extend_from_slice(&paths[g].2);
                    comp[g * m + f] = lookup[&(paths[f].0, p)] as u32;
                }
            }
        }
        Ok(Self::from_table_unchecked(objects, arrows, (0..num_objects).collect(), comp))
    }

    /// A one-object category from a multiplication table `table[g][f] = g·f`.
    pub fn monoid(table: &[Vec<usize>], unit: usize) -> Result<Self, CatError> {
        let n = table.len();
        if unit >= n {
            return Err(CatError::BadIdentity { object: 0 });
        }
        let arrows = (0..n).map(|i| Arrow { name: format!("m{i}"), src: 0, tgt: 0 }).collect();
        Self::from_parts(vec!["*".into()], arrows, vec![unit], |g, f| table.get(g).and_then(|r| r.get(f)).copied())
    }

    /// Full subcategory on `objs` (in the given order) with its inclusion.
    pub fn full_subcategory(&self, objs: &[Obj]) -> (FinCat, Vec<Arr>) {
        let mut pos = vec![usize::MAX; self.num_objects()];
        for (i, &x) in objs.iter().enumerate() {
            pos[x] = i;
        }
        let mut amap = Vec::new();
        let mut back = vec![usize::MAX; self.num_arrows()];
        let mut arrows = Vec::new();
        for &x in objs {
            for &y in objs {
                for &f in self.hom(x, y) {
                    back[f] = arrows.len();
                    amap.push(f);
                    arrows.push(Arrow { name: self.arrows[f].name.clone(), src: pos[x], tgt: pos[y] });
                }
            }
        }
        let m = arrows.len();
        let mut comp = vec![NONE; m * m];
        for (f, &of) in amap.iter().enumerate() {
            for (g, &og) in amap.iter().enumerate() {
                if arrows[f].tgt == arrows[g].src {
                    comp[g * m + f] = back[self.comp(og, of)] as u32;
                }
            }
        }
        let objects = objs.iter().map(|&x| self.objects[x].clone()).collect();
        let identity = objs.iter().map(|&x| back[self.identity[x]]).collect();
        (Self::from_table_unchecked(objects, arrows, identity, comp), amap)
    }

    /// Renames objects; lengths must agree.
    pub fn with_object_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.objects.len());
        self.objects = names;
        self
    }

    /// Renames arrows; lengths must agree.
    pub fn with_arrow_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.arrows.len());
        for (a, n) in self.arrows.iter_mut().zip(names) {
            a.name = n;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_has_only_identities() {
        let c = FinCat::discrete(3);
        c.validate().unwrap();
        assert!(c.is_discrete());
        assert!(c.is_poset());
        assert_eq!(c.hom(0, 1).len(), 0);
    }

    #[test]
    fn chain_hom_sets() {
        let c = FinCat::chain(2);
        c.validate().unwrap();
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.num_arrows(), 6);
        assert!(c.leq(0, 2) && !c.leq(2, 0));
    }

    #[test]
    fn free_on_path_graph_counts_paths() {
        let edges = vec![(0, 1, "f".to_string()), (1, 2, "g".to_string())];
        let c = FinCat::free(3, &edges).unwrap();
        c.validate().unwrap();
        assert_eq!(c.num_arrows(), 6);
        let gf = c.hom(0, 2)[0];
        assert_eq!(c.arrows()[gf].name, "g∘f");
    }

    #[test]
    fn free_rejects_cycles() {
        let edges = vec![(0, 1, "f".to_string()), (1, 0, "g".to_string())];
        assert_eq!(FinCat::free(2, &edges), Err(CatError::Cyclic));
    }

    #[test]
    fn monoid_validation_catches_bad_tables() {
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(FinCat::monoid(&z2, 0).is_ok());
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FinCat::monoid(&bad, 1).is_err());
    }

    #[test]
    fn poset_rejects_non_transitive() {
        assert_eq!(
            FinCat::poset(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)).unwrap_err(),
            CatError::NotPartialOrder
        );
    }

    #[test]
    fn full_subcategory_of_chain() {
        let c = FinCat::chain(2);
        let (s, amap) = c.full_subcategory(&[0, 2]);
        s.validate().unwrap();
        assert_eq!(s.num_arrows(), 3);
        assert_eq!(amap.len(), 3);
    }
}
