use super::{CatError, FinFunctor};

/// For a poset `C` over `[2]`, decides whether gluing the full subposets
/// over `{0,1}` and `{1,2}` along the one over `{1}` recovers `C`.
///
/// The glued order is the transitive closure of the two partial orders, so
/// the only possible loss is a relation `x ≤ z` from the 0-fiber to the
/// 2-fiber that does not factor through the 1-fiber.
pub fn flat_over_2_check(p: &FinFunctor) -> Result<bool, CatError> {
    let c = &p.dom;
    if !c.is_poset() {
        return Err(CatError::Unsupported("source of a flatness check must be a poset".into()));
    }
    let b = &p.cod;
    if b.num_objects() != 3 || !b.is_poset() || !(b.leq(0, 1) && b.leq(1, 2)) {
        return Err(CatError::Unsupported("target of a flatness check must be [2]".into()));
    }
    let m = c.num_objects();
    let level = &p.omap;
    let mut glued = vec![false; m * m];
    for x in 0..m {
        for y in 0..m {
            let both_low = level[x] <= 1 && level[y] <= 1;
            let both_high = level[x] >= 1 && level[y] >= 1;
            glued[x * m + y] = (both_low || both_high) && c.leq(x, y);
        }
    }
    for k in 0..m {
        for x in 0..m {
            if !glued[x * m + k] {
                continue;
            }
            for y in 0..m {
                if glued[k * m + y] {
                    glued[x * m + y] = true;
                }
            }
        }
    }
    Ok((0..m * m).all(|i| glued[i] == c.leq(i / m, i % m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use std::sync::Arc;

    fn over_chain(c: FinCat, levels: Vec<usize>) -> FinFunctor {
        let c = Arc::new(c);
        let b = Arc::new(FinCat::chain(2));
        let amap = (0..c.num_arrows()).map(|f| b.hom(levels[c.src(f)], levels[c.tgt(f)])[0]).collect();
        FinFunctor::new(c, b, levels, amap).unwrap()
    }

    #[test]
    fn chain_glues_to_itself() {
        assert!(flat_over_2_check(&over_chain(FinCat::chain(2), vec![0, 1, 2])).unwrap());
    }

    #[test]
    fn empty_middle_fiber_loses_the_arrow() {
        assert!(!flat_over_2_check(&over_chain(FinCat::chain(1), vec![0, 2])).unwrap());
    }

    #[test]
    fn non_poset_is_rejected() {
        let c = Arc::new(FinCat::monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap());
        let b = Arc::new(FinCat::chain(2));
        let p = FinFunctor::new(c, b.clone(), vec![0], vec![b.id(0), b.id(0)]).unwrap();
        assert!(matches!(flat_over_2_check(&p), Err(CatError::Unsupported(_))));
    }
}
