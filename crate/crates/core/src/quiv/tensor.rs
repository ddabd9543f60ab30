use std::sync::Arc;

use super::base::{CartBase, FinSets};
use super::{Ambient, QuivError, Quiver};
use crate::fincat::{Arr, Cocone, Obj, SetValuedFunctor};

/// The unit quiver `𝟙(x, y) = Hom_X(x, y)`.
pub fn unit_quiver(amb: &Arc<Ambient>) -> Quiver {
    let (x, xx) = (&amb.x, &amb.xx);
    let sizes = (0..xx.num_objects()).map(|c| x.hom(c / amb.n(), c % amb.n()).len()).collect();
    let maps = (0..xx.num_arrows())
        .map(|f| {
            let (p, q) = (f / x.num_arrows(), f % x.num_arrows());
            let c = xx.src(f);
            x.hom(c / amb.n(), c % amb.n()).iter().map(|&g| x.hom_index(x.comp(q, x.comp(g, p)))).collect()
        })
        .collect();
    Quiver { amb: amb.clone(), body: SetValuedFunctor::new(xx.clone(), sizes, maps).expect("hom functor") }
}

/// A functor `F` on `X` as the quiver `(u, x) ↦ F(x)`, constant in `u`.
pub fn lift(amb: &Arc<Ambient>, f: &SetValuedFunctor) -> Result<Quiver, QuivError> {
    if *f.dom != *amb.x {
        return Err(QuivError::Mismatch);
    }
    let xx = &amb.xx;
    let sizes = (0..xx.num_objects()).map(|c| f.sizes[c % amb.n()]).collect();
    let maps = (0..xx.num_arrows()).map(|a| f.maps[a % amb.x.num_arrows()].clone()).collect();
    Ok(Quiver { amb: amb.clone(), body: SetValuedFunctor::new(xx.clone(), sizes, maps)? })
}

/// `A ⊗ B` with the colimit data that defines it:
/// `(A ⊗ B)(u, v) = colim_{φ: x → y ∈ Tw(X)^op} A(y, v) × B(u, x)`.
/// Elements of the diagram at `φ` are pairs `(a, b)` at `a·|B(u, x)| + b`.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub quiver: Quiver,
    pub left: Quiver,
    pub right: Quiver,
    cocones: Vec<Cocone>,
}

impl Tensor {
    /// The class of `(φ, a, b)` in `(A ⊗ B)(u, v)`.
    pub fn class(&self, u: Obj, v: Obj, phi: Arr, a: usize, b: usize) -> usize {
        let nb = self.right.size(u, self.quiver.amb.x.src(phi));
        self.cocones[self.quiver.amb.cell(u, v)].legs[phi][a * nb + b]
    }

    /// The least representative `(φ, a, b)` of class `k`.
    pub fn rep(&self, u: Obj, v: Obj, k: usize) -> (Arr, usize, usize) {
        let (phi, e) = self.cocones[self.quiver.amb.cell(u, v)].reps[k];
        let nb = self.right.size(u, self.quiver.amb.x.src(phi));
        (phi, e / nb, e % nb)
    }

    /// Every diagram element `(φ, a, b)` over `(u, v)` with its class.
    pub fn elements(&self, u: Obj, v: Obj) -> Vec<(Arr, usize, usize, usize)> {
        let x = &self.quiver.amb.x;
        let mut out = Vec::new();
        for phi in 0..x.num_arrows() {
            let (s, t) = (x.src(phi), x.tgt(phi));
            for a in 0..self.left.size(t, v) {
                for b in 0..self.right.size(u, s) {
                    out.push((phi, a, b, self.class(u, v, phi, a, b)));
                }
            }
        }
        out
    }
}

fn cell_diagram(a: &Quiver, b: &Quiver, u: Obj, v: Obj) -> SetValuedFunctor {
    let amb = &a.amb;
    let x = &amb.x;
    let tw = &amb.tw;
    let sizes: Vec<usize> = (0..x.num_arrows()).map(|phi| a.size(x.tgt(phi), v) * b.size(u, x.src(phi))).collect();
    let maps = (0..tw.cat.num_arrows())
        .map(|t| {
            // In Tw^op the arrow runs g → f for the Tw arrow (p, q): f → g.
            let (p, q) = tw.pairs[t];
            let (f, g) = (tw.cat.src(t), tw.cat.tgt(t));
            let nb = b.size(u, x.src(f));
            let nb2 = b.size(u, x.src(g));
            (0..sizes[g])
                .map(|e| {
                    let (a2, b2) = (e / nb2, e % nb2);
                    a.act(q, x.id(v), a2) * nb + b.act(x.id(u), p, b2)
                })
                .collect()
        })
        .collect();
    SetValuedFunctor::new_unchecked(amb.tw_op.clone(), sizes, maps)
}

/// The coend tensor of two quivers over the same `X`.
pub fn tensor(a: &Quiver, b: &Quiver) -> Result<Tensor, QuivError> {
    if !a.amb.same(&b.amb) {
        return Err(QuivError::Mismatch);
    }
    let amb = a.amb.clone();
    let (x, xx) = (&amb.x, &amb.xx);
    let n = amb.n();
    let cocones: Vec<Cocone> = (0..n * n).map(|c| FinSets.colimit(&cell_diagram(a, b, c / n, c % n))).collect();
    let mut t = Tensor {
        quiver: Quiver { amb: amb.clone(), body: SetValuedFunctor::empty(xx.clone()) },
        left: a.clone(),
        right: b.clone(),
        cocones,
    };
    let sizes: Vec<usize> = t.cocones.iter().map(|c| c.apex).collect();
    let maps = (0..xx.num_arrows())
        .map(|f| {
            let (p0, q0) = (f / x.num_arrows(), f % x.num_arrows());
            let (src, tgt) = (xx.src(f), xx.tgt(f));
            let (u, v, u2, v2) = (src / n, src % n, tgt / n, tgt % n);
            (0..sizes[src])
                .map(|k| {
                    let (phi, ea, eb) = t.rep(u, v, k);
                    let ea = a.act(x.id(x.tgt(phi)), q0, ea);
                    let eb = b.act(p0, x.id(x.src(phi)), eb);
                    t.class(u2, v2, phi, ea, eb)
                })
                .collect()
        })
        .collect();
    t.quiver.body = SetValuedFunctor::new(xx.clone(), sizes, maps)?;
    Ok(t)
}

/// The action `A ⊗ F` on a functor `F: X → Set`, read off the tensor with
/// the lifted quiver at `u = 0`.
#[derive(Debug, Clone)]
pub struct Act {
    pub functor: SetValuedFunctor,
    pub tensor: Tensor,
}

pub fn act(a: &Quiver, f: &SetValuedFunctor) -> Result<Act, QuivError> {
    let amb = &a.amb;
    let t = tensor(a, &lift(amb, f)?)?;
    let x = &amb.x;
    let functor = if amb.n() == 0 {
        SetValuedFunctor::empty(x.clone())
    } else {
        let sizes = (0..amb.n()).map(|v| t.quiver.size(0, v)).collect();
        let maps = (0..x.num_arrows()).map(|q| t.quiver.body.maps[amb.arrow(x.id(0), q)].clone()).collect();
        SetValuedFunctor::new(x.clone(), sizes, maps)?
    };
    Ok(Act { functor, tensor: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{left_kan, product, FinCat, FinFunctor};

    fn amb(c: FinCat) -> Arc<Ambient> {
        Ambient::new(Arc::new(c))
    }

    #[test]
    fn unit_on_discrete_and_interval() {
        let d = amb(FinCat::discrete(2));
        let u = unit_quiver(&d);
        assert_eq!(u.body.sizes, vec![1, 0, 0, 1]);
        let c = amb(FinCat::chain(1));
        let u = unit_quiver(&c);
        assert_eq!((u.size(0, 1), u.size(1, 0)), (1, 0));
    }

    #[test]
    fn discrete_tensor_sums_over_middles() {
        // B(x,y) = {f,g}, A(y,z) = {h}: two composites x → z.
        let d = amb(FinCat::discrete(3));
        let b = Quiver::discrete(d.clone(), &[vec![0, 2, 0], vec![0; 3], vec![0; 3]]).unwrap();
        let a = Quiver::discrete(d.clone(), &[vec![0; 3], vec![0, 0, 1], vec![0; 3]]).unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.quiver.size(0, 2), 2);
        assert_eq!(t.quiver.total(), 2);
    }

    #[test]
    fn unit_squared_on_interval() {
        let c = amb(FinCat::chain(1));
        let u = unit_quiver(&c);
        let t = tensor(&u, &u).unwrap();
        assert_eq!(t.quiver.body.sizes, u.body.sizes);
        assert_eq!(t.quiver.size(0, 1), 1);
    }

    /// The tensor as a left Kan extension along `X^op × Tw(X)^op × X → X^op × X`.
    fn tensor_by_kan(a: &Quiver, b: &Quiver) -> Vec<usize> {
        let amb = &a.amb;
        let (x, n, m) = (&amb.x, amb.n(), amb.x.num_arrows());
        let xop = crate::fincat::opposite(x);
        let left = product(&xop, &amb.tw_op);
        let c = Arc::new(product(&left, x));
        let (tn, tm) = (amb.tw_op.num_objects(), amb.tw_op.num_arrows());
        // Object ((u, φ), v) at (u·tn + φ)·n + v; arrow ((p, t), q) at (p·tm + t)·m + q.
        let sizes: Vec<usize> = (0..c.num_objects())
            .map(|o| {
                let (uphi, v) = (o / n, o % n);
                let (u, phi) = (uphi / tn, uphi % tn);
                a.size(x.tgt(phi), v) * b.size(u, x.src(phi))
            })
            .collect();
        let maps = (0..c.num_arrows())
            .map(|f| {
                let (pt, q) = (f / m, f % m);
                let (p, t) = (pt / tm, pt % tm);
                let (s, o) = (c.src(f), c.tgt(f));
                let (us, gs) = ((s / n) / tn, (s / n) % tn);
                let (uo, fo) = ((o / n) / tn, (o / n) % tn);
                let (tp, tq) = amb.tw.pairs[t];
                let nb_s = b.size(us, x.src(gs));
                let nb_o = b.size(uo, x.src(fo));
                (0..sizes[s])
                    .map(|e| {
                        let (ea, eb) = (e / nb_s, e % nb_s);
                        a.act(tq, q, ea) * nb_o + b.act(p, tp, eb)
                    })
                    .collect()
            })
            .collect();
        let f = SetValuedFunctor::new(c.clone(), sizes, maps).unwrap();
        let omap = (0..c.num_objects()).map(|o| ((o / n) / tn) * n + o % n).collect();
        let amap = (0..c.num_arrows()).map(|f| ((f / m) / tm) * m + f % m).collect();
        let proj = FinFunctor::new(c, amb.xx.clone(), omap, amap).unwrap();
        left_kan(&f, &proj).functor.sizes
    }

    #[test]
    fn tensor_agrees_with_kan_extension() {
        for c in [FinCat::chain(1), FinCat::chain(2), FinCat::discrete(2)] {
            let d = amb(c);
            let u = unit_quiver(&d);
            let t = tensor(&u, &u).unwrap();
            assert_eq!(t.quiver.body.sizes, tensor_by_kan(&u, &u));
            let tt = tensor(&t.quiver, &u).unwrap();
            assert_eq!(tt.quiver.body.sizes, tensor_by_kan(&t.quiver, &u));
        }
    }

    #[test]
    fn action_of_unit_is_identity_sized() {
        let d = amb(FinCat::chain(2));
        let f = SetValuedFunctor::new(d.x.clone(), vec![1, 2, 2], {
            let x = &d.x;
            (0..x.num_arrows())
                .map(|g| match (x.src(g), x.tgt(g)) {
                    (0, 0) => vec![0],
                    (0, _) => vec![1],
                    _ => vec![0, 1],
                })
                .collect()
        })
        .unwrap();
        let r = act(&unit_quiver(&d), &f).unwrap();
        assert_eq!(r.functor.sizes, f.sizes);
    }
}
