//! Right Kan extension by the end presentation.

use std::sync::{Arc, OnceLock};

use super::lan::Blocks;
use super::{memo, over, precompose, ran_cache, usable, KanError};
use crate::burnside::{Burnside, BurnsideHom, ZLinFunctor};
use crate::mackey::{MackeyFunctor, MackeyMorphism, MackeySource};
use crate::zmod::{kernel_from_entries, AbGrp, AbHom, Int, Lifter, Mat};

pub(crate) struct RanLevel {
    pub blocks: Blocks,
    pub prod: AbGrp,
    pub incl: AbHom,
    lifter: Lifter,
}

impl RanLevel {
    /// Lifts a map `src → prod` landing in the end through the inclusion.
    fn lift(&self, src: &AbGrp, mat: Mat) -> AbHom {
        let g = AbHom::new_unchecked(src.clone(), self.prod.clone(), mat);
        self.lifter.lift(&g).expect("map lands in the end")
    }
}

pub struct RanData {
    f: ZLinFunctor,
    m: MackeyFunctor,
    levels: Vec<OnceLock<RanLevel>>,
}

impl RanData {
    fn target(&self) -> &Burnside {
        self.f.dst()
    }

    pub(crate) fn level(&self, b: usize) -> &RanLevel {
        self.levels[b].get_or_init(|| self.compute(b))
    }

    fn compute(&self, b: usize) -> RanLevel {
        let (f, m) = (&self.f, &self.m);
        let tb = self.target();
        let blocks = Blocks::new(f, m, |o| tb.basis(b, o).len());
        let parts: Vec<AbGrp> = blocks.list.iter().map(|(a, ..)| m.level(*a).clone()).collect();
        let prod = AbGrp::direct_sum(&parts);
        let sb = f.src();
        let n = sb.n_orbits();
        let mut entries = Vec::new();
        let mut rows: Vec<AbGrp> = Vec::new();
        let mut roff = 0;
        for a in 0..n {
            let na = m.level(a).n_gens();
            for a2 in 0..n {
                let n2 = m.level(a2).n_gens();
                if n2 == 0 {
                    continue;
                }
                let id = if a == a2 { Some(sb.identity(a).terms[0].0) } else { None };
                for idx in sb.generating(a, a2) {
                    if Some(idx) == id {
                        continue;
                    }
                    let fphi = f.on_basis(a, a2, idx);
                    let mphi = m.action(a, a2, idx).mat;
                    for (j, o) in f.object(a).iter().enumerate() {
                        for gamma in 0..tb.basis(b, *o).len() {
                            let gh = BurnsideHom::basis(b, *o, gamma);
                            let off = blocks.off(a, j, gamma);
                            for g in 0..na {
                                for r in 0..n2 {
                                    let v = mphi.get(r, g);
                                    if !v.is_zero() {
                                        entries.push((roff + r, off + g, v.clone()));
                                    }
                                }
                            }
                            for ((k, jj), h) in fphi.iter() {
                                if *jj != j {
                                    continue;
                                }
                                let c = tb.compose(h, &gh).expect("matching orbits");
                                for (delta, coef) in &c.terms {
                                    let off2 = blocks.off(a2, *k, *delta);
                                    for r in 0..n2 {
                                        entries.push((roff + r, off2 + r, Int::from(-*coef)));
                                    }
                                }
                            }
                            rows.push(m.level(a2).clone());
                            roff += n2;
                        }
                    }
                }
            }
        }
        let dst = AbGrp::direct_sum(&rows);
        let (_, incl) = kernel_from_entries(&prod, &dst, &entries);
        let lifter = Lifter::new(&incl);
        RanLevel { blocks, prod, incl, lifter }
    }
}

struct RanSource(Arc<RanData>);

impl MackeySource for RanSource {
    fn level(&self, b: usize) -> AbGrp {
        self.0.level(b).incl.src.clone()
    }

    fn action(&self, b: usize, b2: usize, idx: usize) -> AbHom {
        let d = &self.0;
        let tb = d.target();
        let (l1, l2) = (d.level(b), d.level(b2));
        let psi = BurnsideHom::basis(b, b2, idx);
        let mut p = Mat::zeros(l2.prod.n_gens(), l1.prod.n_gens());
        for &(a, j, gamma2, off2) in &l2.blocks.list {
            let o = d.f.object(a)[j];
            let na = d.m.level(a).n_gens();
            let c = tb.compose(&BurnsideHom::basis(b2, o, gamma2), &psi).expect("matching orbits");
            for (gamma, coef) in &c.terms {
                let off = l1.blocks.off(a, j, *gamma);
                for g in 0..na {
                    *p.at(off2 + g, off + g) += &Int::from(*coef);
                }
            }
        }
        let src = &l1.incl.src;
        let mat = p.mul(&l1.incl.mat);
        let h = l2.lift(src, mat);
        AbHom::new_unchecked(src.clone(), l2.incl.src.clone(), h.mat)
    }
}

/// `Ran_F M` with its adjunction data against `F^*`.
#[derive(Clone)]
pub struct Ran {
    pub functor: ZLinFunctor,
    pub base: MackeyFunctor,
    pub obj: MackeyFunctor,
    data: Arc<RanData>,
}

fn summand_offsets(f: &ZLinFunctor, n: &MackeyFunctor, a: usize) -> Vec<usize> {
    let mut v = Vec::new();
    let mut t = 0;
    for o in f.object(a) {
        v.push(t);
        t += n.level(o).n_gens();
    }
    v
}

impl Ran {
    pub fn of(f: &ZLinFunctor, m: &MackeyFunctor) -> Result<Ran, KanError> {
        usable(f)?;
        over(f, m, false)?;
        Ok(memo(ran_cache(), f, m, || {
            let n = f.dst().n_orbits();
            let data = Arc::new(RanData { f: f.clone(), m: m.clone(), levels: (0..n).map(|_| OnceLock::new()).collect() });
            let obj = MackeyFunctor::new(f.dst(), format!("ran({})", m.name()), RanSource(data.clone()));
            Ran { functor: f.clone(), base: m.clone(), obj, data }
        }))
    }

    /// `ε: F^* Ran_F M → M`, evaluation at the identity span in each summand.
    pub fn counit(&self) -> Result<MackeyMorphism, KanError> {
        let f = &self.functor;
        let tb = f.dst();
        let src = precompose(f, &self.obj)?;
        let mut cs = Vec::new();
        for a in 0..f.src().n_orbits() {
            let na = self.base.level(a).n_gens();
            let mut parts = Vec::new();
            for (j, o) in f.object(a).iter().enumerate() {
                let lv = self.data.level(*o);
                let off = lv.blocks.off(a, j, tb.identity(*o).terms[0].0);
                parts.push(lv.incl.mat.submatrix(off, off + na, 0, lv.incl.mat.cols()));
            }
            let refs: Vec<&Mat> = parts.iter().collect();
            let mat = Mat::hstack_rows(na, &refs);
            cs.push(AbHom::new_unchecked(src.level(a).clone(), self.base.level(a).clone(), mat));
        }
        Ok(MackeyMorphism { src, dst: self.base.clone(), components: cs })
    }

    /// The map `N → Ran_F M` adjunct to `ψ: F^*N → M`.
    pub fn adjunct(&self, n: &MackeyFunctor, psi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        let f = &self.functor;
        let offs: Vec<Vec<usize>> = (0..f.src().n_orbits()).map(|a| summand_offsets(f, n, a)).collect();
        let mut cs = Vec::new();
        for b in 0..f.dst().n_orbits() {
            let lv = self.data.level(b);
            let nb = n.level(b);
            let mut p = Mat::zeros(lv.prod.n_gens(), nb.n_gens());
            for &(a, j, gamma, off) in &lv.blocks.list {
                let o = f.object(a)[j];
                let nj = n.level(o).n_gens();
                let pa = &psi.components[a].mat;
                let pj = pa.submatrix(0, pa.rows(), offs[a][j], offs[a][j] + nj);
                p.paste(off, 0, &pj.mul(&n.action(b, o, gamma).mat));
            }
            let h = lv.lift(nb, p);
            cs.push(AbHom::new_unchecked(nb.clone(), lv.incl.src.clone(), h.mat));
        }
        Ok(MackeyMorphism::new(n, &self.obj, cs)?)
    }

    /// `η: N → Ran_F F^*N`.
    pub fn unit(f: &ZLinFunctor, n: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        let pn = precompose(f, n)?;
        Ran::of(f, &pn)?.adjunct(n, &MackeyMorphism::identity(&pn))
    }

    /// `Ran_F φ: Ran_F M → Ran_F M'`.
    pub fn map(&self, target: &Ran, phi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        if !self.functor.same(&target.functor) {
            return Err(KanError::Mismatch("extensions along different functors".into()));
        }
        let mut cs = Vec::new();
        for b in 0..self.functor.dst().n_orbits() {
            let (l1, l2) = (self.data.level(b), target.data.level(b));
            let mut p = Mat::zeros(l2.prod.n_gens(), l1.prod.n_gens());
            for &(a, j, gamma, off) in &l1.blocks.list {
                p.paste(l2.blocks.off(a, j, gamma), off, &phi.components[a].mat);
            }
            let src = &l1.incl.src;
            let h = l2.lift(src, p.mul(&l1.incl.mat));
            cs.push(AbHom::new_unchecked(src.clone(), l2.incl.src.clone(), h.mat));
        }
        Ok(MackeyMorphism::new(&self.obj, &target.obj, cs)?)
    }
}
