use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::precat::{check_precategory, Precategory};
use super::{Ambient, QuivError, Quiver, QuiverMap};
use crate::fincat::FinCat;

/// A simplicial finite set truncated at level `level`.
///
/// `faces[n][i]: A_n → A_{n−1}` for `1 ≤ n ≤ N` (`faces[0]` is empty) and
/// `degens[n][i]: A_n → A_{n+1}` for `n < N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegalObject {
    pub level: usize,
    pub sizes: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degens: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    /// Violated simplicial identities, as `"d{i}d{j}@{n}"` and similar.
    pub identities: Vec<String>,
    /// Levels whose Segal map is not a bijection.
    pub segal: Vec<usize>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.identities.is_empty() && self.segal.is_empty()
    }
}

impl SegalObject {
    fn validate(&self) -> Result<(), QuivError> {
        let n = self.level;
        let bad = |m: &str| Err(QuivError::Invalid(format!("simplicial tables: {m}")));
        if self.sizes.len() != n + 1 || self.faces.len() != n + 1 || self.degens.len() != n {
            return bad("level counts");
        }
        for k in 1..=n {
            if self.faces[k].len() != k + 1
                || self.faces[k].iter().any(|f| f.len() != self.sizes[k] || f.iter().any(|&e| e >= self.sizes[k - 1]))
            {
                return bad(&format!("faces at level {k}"));
            }
        }
        for k in 0..n {
            if self.degens[k].len() != k + 1
                || self.degens[k].iter().any(|s| s.len() != self.sizes[k] || s.iter().any(|&e| e >= self.sizes[k + 1]))
            {
                return bad(&format!("degeneracies at level {k}"));
            }
        }
        Ok(())
    }

    fn d(&self, n: usize, i: usize, e: usize) -> usize {
        self.faces[n][i][e]
    }

    fn s(&self, n: usize, i: usize, e: usize) -> usize {
        self.degens[n][i][e]
    }

    /// The `k`-th spine edge `{k−1, k}` of `e ∈ A_n`, for `1 ≤ k ≤ n`.
    pub fn edge(&self, n: usize, k: usize, mut e: usize) -> usize {
        for m in (k + 1..=n).rev() {
            e = self.d(m, m, e);
        }
        for m in (2..=k).rev() {
            e = self.d(m, 0, e);
        }
        e
    }

    pub fn spine(&self, n: usize, e: usize) -> Vec<usize> {
        (1..=n).map(|k| self.edge(n, k, e)).collect()
    }

    /// Number of composable strings of `n` edges in `A_1`.
    fn composable(&self, n: usize) -> usize {
        if n == 0 {
            return self.sizes[0];
        }
        let (src, tgt) = (&self.faces[1][1], &self.faces[1][0]);
        let mut ways = vec![0usize; self.sizes[0]];
        for t in 0..self.sizes[1] {
            ways[tgt[t]] += 1;
        }
        for _ in 1..n {
            let mut next = vec![0usize; self.sizes[0]];
            for t in 0..self.sizes[1] {
                next[tgt[t]] += ways[src[t]];
            }
            ways = next;
        }
        ways.iter().sum()
    }
}

/// Simplicial identities at every level and bijectivity of each Segal map.
pub fn check_segal_object(s: &SegalObject) -> Result<SegalReport, QuivError> {
    s.validate()?;
    let mut r = SegalReport::default();
    let top = s.level;
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                if (0..s.sizes[n]).any(|e| s.d(n - 1, i, s.d(n, j, e)) != s.d(n - 1, j - 1, s.d(n, i, e))) {
                    r.identities.push(format!("d{i}d{j}@{n}"));
                }
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let ok = (0..s.sizes[n]).all(|e| {
                    let lhs = s.d(n + 1, i, s.s(n, j, e));
                    let rhs = if i < j {
                        s.s(n - 1, j - 1, s.d(n, i, e))
                    } else if i == j || i == j + 1 {
                        e
                    } else {
                        s.s(n - 1, j, s.d(n, i - 1, e))
                    };
                    lhs == rhs
                });
                if !ok {
                    r.identities.push(format!("d{i}s{j}@{n}"));
                }
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                if (0..s.sizes[n]).any(|e| s.s(n + 1, i, s.s(n, j, e)) != s.s(n + 1, j + 1, s.s(n, i, e))) {
                    r.identities.push(format!("s{i}s{j}@{n}"));
                }
            }
        }
    }
    for n in 2..=top {
        let mut seen = std::collections::HashSet::new();
        let injective = (0..s.sizes[n]).all(|e| seen.insert(s.spine(n, e)));
        if !injective || s.sizes[n] != s.composable(n) {
            r.segal.push(n);
        }
    }
    Ok(r)
}

/// Elements of `A_n` for a precategory over a discrete set: object strings
/// `x₀…x_n` with arrows `a_i ∈ A(x_{i−1}, x_i)`, in lexicographic order.
fn simplices(p: &Precategory, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = p.n();
    let mut out = Vec::new();
    let mut objs = vec![0; n + 1];
    loop {
        let sizes: Vec<usize> = (0..n).map(|i| p.size(objs[i], objs[i + 1])).collect();
        if sizes.iter().all(|&m| m > 0) {
            let mut arr = vec![0; n];
            loop {
                out.push((objs.clone(), arr.clone()));
                let mut i = n;
                while i > 0 && arr[i - 1] + 1 == sizes[i - 1] {
                    arr[i - 1] = 0;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                arr[i - 1] += 1;
            }
        }
        let mut i = n + 1;
        while i > 0 && objs[i - 1] + 1 == k {
            objs[i - 1] = 0;
            i -= 1;
        }
        if i == 0 {
            break;
        }
        objs[i - 1] += 1;
    }
    out
}

/// The nerve of a precategory over a discrete set, truncated at `level`.
pub fn to_segal(p: &Precategory, level: usize) -> Result<SegalObject, QuivError> {
    if !p.amb().is_discrete() {
        return Err(QuivError::NotDiscrete("Segal objects".into()));
    }
    let levels: Vec<_> = (0..=level).map(|n| simplices(p, n)).collect();
    let index: Vec<HashMap<_, usize>> =
        levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=level {
        let per: Vec<Vec<usize>> = (0..=n)
            .map(|i| {
                levels[n]
                    .iter()
                    .map(|(xs, as_)| {
                        let mut ys = xs.clone();
                        ys.remove(i);
                        let mut bs = as_.clone();
                        if i == 0 {
                            bs.remove(0);
                        } else if i == n {
                            bs.pop();
                        } else {
                            let c = p.compose(xs[i - 1], xs[i], xs[i + 1], as_[i], as_[i - 1]);
                            bs.splice(i - 1..=i, [c]);
                        }
                        index[n - 1][&(ys, bs)]
                    })
                    .collect()
            })
            .collect();
        faces.push(per);
    }
    let degens = (0..level)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|(xs, as_)| {
                            let mut ys = xs.clone();
                            ys.insert(i, xs[i]);
                            let mut bs = as_.clone();
                            bs.insert(i, p.identity(xs[i]));
                            index[n + 1][&(ys, bs)]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let sizes = levels.iter().map(Vec::len).collect();
    Ok(SegalObject { level, sizes, faces, degens })
}

/// The precategory over `A₀` whose arrows are the fibers of
/// `(d₁, d₀): A₁ → A₀ × A₀`.
pub fn from_segal(s: &SegalObject) -> Result<Precategory, QuivError> {
    if s.level < 3 {
        return Err(QuivError::NotSegal(format!("level {} is below 3", s.level)));
    }
    let report = check_segal_object(s)?;
    if !report.passed() {
        return Err(QuivError::NotSegal(format!("identities {:?}, Segal maps at {:?}", report.identities, report.segal)));
    }
    let n = s.sizes[0];
    let (src, tgt) = (&s.faces[1][1], &s.faces[1][0]);
    let mut fiber = vec![Vec::new(); n * n];
    let mut pos = vec![0; s.sizes[1]];
    for t in 0..s.sizes[1] {
        let cell = src[t] * n + tgt[t];
        pos[t] = fiber[cell].len();
        fiber[cell].push(t);
    }
    let amb = Ambient::new(Arc::new(FinCat::discrete(n)));
    let sizes: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| fiber[x * n + y].len()).collect()).collect();
    let quiver = Quiver::discrete(amb, &sizes)?;
    let unit = QuiverMap {
        comps: (0..n * n).map(|c| if c / n == c % n { vec![pos[s.s(0, 0, c / n)]] } else { Vec::new() }).collect(),
    };
    let filler: HashMap<(usize, usize), usize> = (0..s.sizes[2]).map(|e| ((s.edge(2, 1, e), s.edge(2, 2, e)), e)).collect();
    let p = Precategory::from_pointwise(quiver, unit, |x, y, z, a, b| {
        let sigma = filler[&(fiber[x * n + y][b], fiber[y * n + z][a])];
        pos[s.d(2, 1, sigma)]
    })?;
    let laws = check_precategory(&p)?;
    if !laws.passed() {
        return Err(QuivError::NotSegal(format!("recovered composition fails {}", laws.failures[0].law)));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    /// `from_segal ∘ to_segal` is the identity up to the canonical bijection.
    pub precategory: bool,
    /// `to_segal ∘ from_segal` is the identity up to the canonical bijection
    /// at every level.
    pub segal: bool,
}

/// Both round trips through the Segal object of `p` at `level ≥ 3`.
pub fn segal_round_trip(p: &Precategory, level: usize) -> Result<RoundTrip, QuivError> {
    let s = to_segal(p, level)?;
    let q = from_segal(&s)?;
    let n = p.n();
    // Arrow (x, y, a) of p is element t of A₁; q sees it at its fiber position.
    let mut phi = QuiverMap { comps: vec![Vec::new(); n * n] };
    for (t, (xs, as_)) in simplices(p, 1).into_iter().enumerate() {
        let (x, y) = (xs[0], xs[1]);
        let before = (0..t).filter(|&u| s.faces[1][1][u] == x && s.faces[1][0][u] == y).count();
        let cell = &mut phi.comps[x * n + y];
        if cell.len() <= as_[0] {
            cell.resize(as_[0] + 1, usize::MAX);
        }
        cell[as_[0]] = before;
    }
    let precategory = q.quiver.body.sizes == p.quiver.body.sizes
        && phi.is_bijective(&q.quiver)
        && p.unit.then(&phi) == q.unit
        && (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    (0..p.size(y, z)).all(|a| {
                        (0..p.size(x, y)).all(|b| {
                            let c = phi.comps[x * n + z][p.compose(x, y, z, a, b)];
                            c == q.compose(x, y, z, phi.comps[y * n + z][a], phi.comps[x * n + y][b])
                        })
                    })
                })
            })
        });
    let s2 = to_segal(&q, level)?;
    Ok(RoundTrip { precategory, segal: segal_iso_by_spines(&s, &s2) })
}

/// Compares two Segal objects through the bijection determined by `A₀`,
/// `A₁` and spines: checks it is bijective and commutes with all faces and
/// degeneracies.
fn segal_iso_by_spines(s: &SegalObject, t: &SegalObject) -> bool {
    if s.level != t.level || s.sizes != t.sizes {
        return false;
    }
    let maps: Vec<Vec<usize>> = (0..=s.level)
        .map(|n| {
            if n <= 1 {
                return (0..s.sizes[n]).collect();
            }
            let index: HashMap<Vec<usize>, usize> = (0..t.sizes[n]).map(|e| (t.spine(n, e), e)).collect();
            (0..s.sizes[n]).map(|e| index.get(&s.spine(n, e)).copied().unwrap_or(usize::MAX)).collect()
        })
        .collect();
    let bijective = maps.iter().zip(&s.sizes).all(|(m, &k)| {
        let mut hit = vec![false; k];
        m.iter().all(|&e| e < k && !std::mem::replace(&mut hit[e], true))
    });
    bijective
        && (1..=s.level).all(|n| {
            (0..=n).all(|i| (0..s.sizes[n]).all(|e| maps[n - 1][s.d(n, i, e)] == t.d(n, i, maps[n][e])))
        })
        && (0..s.level).all(|n| {
            (0..=n).all(|i| (0..s.sizes[n]).all(|e| maps[n + 1][s.s(n, i, e)] == t.s(n, i, maps[n][e])))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idempotent_monoid() -> Precategory {
        Precategory::from_category(&FinCat::monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap()).unwrap()
    }

    #[test]
    fn monoid_levels_are_powers() {
        let s = to_segal(&idempotent_monoid(), 2).unwrap();
        assert_eq!(s.sizes, vec![1, 2, 4]);
        assert!(check_segal_object(&s).unwrap().passed());
    }

    #[test]
    fn unit_precategory_has_only_identities() {
        let amb = Ambient::new(Arc::new(FinCat::discrete(3)));
        let s = to_segal(&Precategory::unit_precategory(&amb), 4).unwrap();
        assert_eq!(s.sizes, vec![3; 5]);
        assert!(check_segal_object(&s).unwrap().passed());
    }

    /// Oracle: `|A_n|` of a nerve counts composable strings, i.e. functors
    /// `[n] → C`, by direct enumeration of arrow tuples.
    #[test]
    fn nerve_sizes_count_strings() {
        let c = FinCat::free(3, &[(0, 1, "f".into()), (1, 2, "g".into()), (0, 1, "h".into())]).unwrap();
        let s = to_segal(&Precategory::from_category(&c).unwrap(), 3).unwrap();
        let m = c.num_arrows();
        let brute2 = (0..m).flat_map(|f| (0..m).map(move |g| (f, g))).filter(|&(f, g)| c.tgt(f) == c.src(g)).count();
        assert_eq!(s.sizes[1], m);
        assert_eq!(s.sizes[2], brute2);
    }

    #[test]
    fn nerve_of_interval_recovers_one_cross_arrow() {
        let p = Precategory::from_category(&FinCat::chain(1)).unwrap();
        let s = to_segal(&p, 3).unwrap();
        assert_eq!(s.sizes[0], 2);
        let q = from_segal(&s).unwrap();
        assert_eq!((q.size(0, 0), q.size(0, 1), q.size(1, 0), q.size(1, 1)), (1, 1, 0, 1));
    }

    #[test]
    fn monoid_recovered() {
        let p = idempotent_monoid();
        let q = from_segal(&to_segal(&p, 3).unwrap()).unwrap();
        assert_eq!(q.size(0, 0), 2);
        let a = 1 - q.identity(0);
        assert_eq!(q.compose(0, 0, 0, a, a), a);
        assert_eq!(segal_round_trip(&p, 3).unwrap(), RoundTrip { precategory: true, segal: true });
    }

    #[test]
    fn duplicated_top_simplex_breaks_segal() {
        let mut s = to_segal(&idempotent_monoid(), 3).unwrap();
        s.sizes[3] += 1;
        for f in &mut s.faces[3] {
            let v = f[0];
            f.push(v);
        }
        let r = check_segal_object(&s).unwrap();
        assert!(r.identities.is_empty());
        assert_eq!(r.segal, vec![3]);
        assert!(matches!(from_segal(&s), Err(QuivError::NotSegal(_))));
    }

    #[test]
    fn low_level_rejected() {
        let s = to_segal(&idempotent_monoid(), 2).unwrap();
        assert!(from_segal(&s).is_err());
    }

    #[test]
    fn non_discrete_rejected() {
        let amb = Ambient::new(Arc::new(FinCat::chain(1)));
        assert!(matches!(to_segal(&Precategory::unit_precategory(&amb), 2), Err(QuivError::NotDiscrete(_))));
    }
}
