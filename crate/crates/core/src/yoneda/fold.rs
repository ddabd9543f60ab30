use std::collections::HashMap;

use serde::Serialize;

use super::YonedaError;
use crate::fincat::CatError;
use crate::quiv::Precategory;

/// The multiplication table `t[g][f] = g·f` and unit of a one-object
/// precategory.
pub fn monoid_table(p: &Precategory) -> Result<(Vec<Vec<usize>>, usize), YonedaError> {
    if p.n() != 1 || !p.amb().is_discrete() {
        return Err(YonedaError::NotMonoid);
    }
    let k = p.size(0, 0);
    Ok(((0..k).map(|g| (0..k).map(|f| p.compose(0, 0, 0, g, f)).collect()).collect(), p.identity(0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldReport {
    pub bimodules: usize,
    pub left_modules: usize,
    /// Folding `(l, r) ↦ ((a, b), e) ↦ a·e·b` is a bijection.
    pub bijective: bool,
    /// Folding commutes with relabeling the carrier by any permutation.
    pub natural: bool,
}

impl FoldReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.natural
    }
}

/// All functions `0..rows × 0..m → 0..m` with the unit row fixed to the
/// identity, as row-major tables.
fn tables(rows: usize, unit: usize, m: usize, cap: usize) -> Result<Vec<Vec<usize>>, YonedaError> {
    let free = (rows - 1) * m;
    let total = (m as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(CatError::CapExceeded { what: "action tables".into(), cap }.into());
    }
    let mut out = Vec::with_capacity(total as usize);
    for code in 0..total as usize {
        let mut c = code;
        let mut t = vec![0; rows * m];
        for r in 0..rows {
            for e in 0..m {
                t[r * m + e] = if r == unit {
                    e
                } else {
                    let v = c % m;
                    c /= m;
                    v
                };
            }
        }
        out.push(t);
    }
    Ok(out)
}

/// Left actions of a monoid on `0..m`: `t[g·m + e] = g·e`.
fn left_actions(mul: &[Vec<usize>], unit: usize, m: usize, cap: usize) -> Result<Vec<Vec<usize>>, YonedaError> {
    let k = mul.len();
    Ok(tables(k, unit, m, cap)?
        .into_iter()
        .filter(|t| (0..k).all(|g| (0..k).all(|f| (0..m).all(|e| t[g * m + t[f * m + e]] == t[mul[g][f] * m + e]))))
        .collect())
}

/// Enumerates `(A, B)`-bimodule structures and left `A ⊗ B^op`-module
/// structures on a carrier of size `m` and checks that folding is a
/// natural bijection between them.
pub fn fold_algebra_check(a: &Precategory, b: &Precategory, m: usize, cap: usize) -> Result<FoldReport, YonedaError> {
    let (ma, ua) = monoid_table(a)?;
    let (mb, ub) = monoid_table(b)?;
    let (ka, kb) = (ma.len(), mb.len());
    // Right B-actions are left B^op-actions: r[b·m + e] = e·b.
    let mb_op: Vec<Vec<usize>> = (0..kb).map(|g| (0..kb).map(|f| mb[f][g]).collect()).collect();
    let lefts = left_actions(&ma, ua, m, cap)?;
    let rights = left_actions(&mb_op, ub, m, cap)?;
    let mut bimods = Vec::new();
    for l in &lefts {
        for r in &rights {
            let commute = (0..ka).all(|x| (0..kb).all(|y| (0..m).all(|e| l[x * m + r[y * m + e]] == r[y * m + l[x * m + e]])));
            if commute {
                bimods.push((l.clone(), r.clone()));
            }
        }
    }
    // A ⊗ B^op: pairs (x, y) at x·kb + y, (x, y)(x′, y′) = (x x′, y′ y).
    let prod: Vec<Vec<usize>> = (0..ka * kb)
        .map(|g| (0..ka * kb).map(|f| ma[g / kb][f / kb] * kb + mb[f % kb][g % kb]).collect())
        .collect();
    let lms = left_actions(&prod, ua * kb + ub, m, cap)?;
    let fold = |l: &[usize], r: &[usize]| -> Vec<usize> {
        (0..ka * kb).flat_map(|g| (0..m).map(move |e| l[(g / kb) * m + r[(g % kb) * m + e]])).collect()
    };
    let index: HashMap<&Vec<usize>, usize> = lms.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut hit = vec![false; lms.len()];
    let mut bijective = bimods.len() == lms.len();
    for (l, r) in &bimods {
        match index.get(&fold(l, r)) {
            Some(&i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
    }
    let natural = permutations(m).iter().all(|s| {
        let relabel = |t: &[usize], rows: usize| -> Vec<usize> {
            let mut out = vec![0; t.len()];
            for g in 0..rows {
                for e in 0..m {
                    out[g * m + s[e]] = s[t[g * m + e]];
                }
            }
            out
        };
        bimods.iter().all(|(l, r)| fold(&relabel(l, ka), &relabel(r, kb)) == relabel(&fold(l, r), ka * kb))
    });
    Ok(FoldReport { bimodules: bimods.len(), left_modules: lms.len(), bijective, natural })
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..m {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out
}
