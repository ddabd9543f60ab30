//! Backtracking search for families of functions commuting with given
//! operations. Shared by natural transformations and module maps.

use super::CatError;

/// Source elements carry a sort; an assignment sends each source element of
/// sort `s` to an element of `0..target_sizes[s]`. A constraint `(u, v, t)`
/// demands `img[v] == tables[t][img[u]]`.
#[derive(Debug, Clone, Default)]
pub struct EquivariantSearch {
    sorts: Vec<usize>,
    target_sizes: Vec<usize>,
    tables: Vec<Vec<usize>>,
    edges: Vec<Vec<(usize, usize)>>,
}

impl EquivariantSearch {
    pub fn new(sorts: Vec<usize>, target_sizes: Vec<usize>) -> Self {
        let n = sorts.len();
        EquivariantSearch { sorts, target_sizes, tables: Vec::new(), edges: vec![Vec::new(); n] }
    }

    pub fn add_table(&mut self, table: Vec<usize>) -> usize {
        self.tables.push(table);
        self.tables.len() - 1
    }

    pub fn constrain(&mut self, u: usize, v: usize, table: usize) {
        self.edges[u].push((v, table));
    }

    /// Every solution, in lexicographic order of the assignment vector.
    pub fn solve(&self, cap: usize) -> Result<Vec<Vec<usize>>, CatError> {
        let mut out = Vec::new();
        self.run(cap, &mut |a| out.push(a.to_vec()))?;
        Ok(out)
    }

    pub fn count(&self, cap: usize) -> Result<usize, CatError> {
        let mut n = 0;
        self.run(cap, &mut |_| n += 1)?;
        Ok(n)
    }

    fn run(&self, cap: usize, emit: &mut dyn FnMut(&[usize])) -> Result<(), CatError> {
        let n = self.sorts.len();
        let mut img = vec![usize::MAX; n];
        let mut trail = Vec::new();
        let mut found = 0usize;
        self.dfs(0, &mut img, &mut trail, &mut found, cap, emit)
    }

    fn dfs(
        &self,
        from: usize,
        img: &mut Vec<usize>,
        trail: &mut Vec<usize>,
        found: &mut usize,
        cap: usize,
        emit: &mut dyn FnMut(&[usize]),
    ) -> Result<(), CatError> {
        let mut u = from;
        while u < img.len() && img[u] != usize::MAX {
            u += 1;
        }
        if u == img.len() {
            *found += 1;
            if *found > cap {
                return Err(CatError::CapExceeded { what: "map count", cap });
            }
            emit(img);
            return Ok(());
        }
        for val in 0..self.target_sizes[self.sorts[u]] {
            let mark = trail.len();
            if self.assign(u, val, img, trail) {
                self.dfs(u + 1, img, trail, found, cap, emit)?;
            }
            while trail.len() > mark {
                let w = trail.pop().unwrap();
                img[w] = usize::MAX;
            }
        }
        Ok(())
    }

    fn assign(&self, u: usize, val: usize, img: &mut [usize], trail: &mut Vec<usize>) -> bool {
        let mut stack = vec![(u, val)];
        while let Some((w, x)) = stack.pop() {
            if img[w] != usize::MAX {
                if img[w] != x {
                    return false;
                }
                continue;
            }
            if x >= self.target_sizes[self.sorts[w]] {
                return false;
            }
            img[w] = x;
            trail.push(w);
            for &(v, t) in &self.edges[w] {
                stack.push((v, self.tables[t][x]));
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_counts_all_functions() {
        let s = EquivariantSearch::new(vec![0, 0, 1], vec![3, 2]);
        assert_eq!(s.count(1000).unwrap(), 3 * 3 * 2);
    }

    #[test]
    fn swap_equivariant_maps_on_two_points() {
        // Maps {0,1} → {0,1} commuting with the swap: identity and swap.
        let mut s = EquivariantSearch::new(vec![0, 0], vec![2]);
        let t = s.add_table(vec![1, 0]);
        s.constrain(0, 1, t);
        s.constrain(1, 0, t);
        assert_eq!(s.solve(10).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn cap_is_a_hard_error() {
        let s = EquivariantSearch::new(vec![0, 0, 0], vec![3]);
        assert!(matches!(s.count(5), Err(CatError::CapExceeded { .. })));
    }
}
