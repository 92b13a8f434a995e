//! Wirthmüller isomorphisms and the canonical comparison isos between
//! composites of induction, restriction, inflation and products.

use crate::burnside::{IndRes, ZLinError, ZLinFunctor, ZLinTrans};
use crate::grp::{mask_elems, GrpHom};
use crate::kan::{identification, precompose, precompose_trans, Adjunction, KanError, Lan, MackeyOp, NatTrans, Ran};
use crate::mackey::{MackeyFunctor, MackeyMorphism};

/// Span-level data of an injection, built once so Kan extensions along it
/// are shared.
#[derive(Clone, Debug)]
pub struct Inj {
    pub hom: GrpHom,
    pub ir: IndRes,
}

impl Inj {
    pub fn new(i: &GrpHom) -> Result<Inj, KanError> {
        Ok(Inj { hom: i.clone(), ir: IndRes::new(i)? })
    }

    pub fn ind(&self) -> &ZLinFunctor {
        &self.ir.ind
    }

    pub fn res(&self) -> &ZLinFunctor {
        &self.ir.res
    }

    /// `Lan_ind M → res^*M`, adjunct of the unit `id ⇒ res∘ind`.
    pub fn lan_to_res(&self, m: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        let unit = &self.ir.unit_h;
        let rm = precompose(self.res(), m)?;
        let irm = precompose(self.ind(), &rm)?;
        let step = precompose_trans(unit, m)?;
        let psi = identification(&step.dst, &irm)?.compose(&step).compose(&identification(m, &step.src)?);
        Lan::of(self.ind(), m)?.adjunct(&rm, &psi)
    }

    /// `res^*M → Ran_ind M`, adjunct of the counit `res∘ind ⇒ id`.
    pub fn res_to_ran(&self, m: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        let counit = self.ir.counit_h();
        let rm = precompose(self.res(), m)?;
        let irm = precompose(self.ind(), &rm)?;
        let step = precompose_trans(&counit, m)?;
        let psi = identification(&step.dst, m)?.compose(&step).compose(&identification(&irm, &step.src)?);
        Ran::of(self.ind(), m)?.adjunct(&rm, &psi)
    }

    /// `ind^* ⊣ res^*` from the span-level adjunction, a model of
    /// `ind^* ⊣ Ran_ind` through `res_to_ran`.
    pub fn restriction_adjunction(&self) -> Adjunction {
        let left = MackeyOp::Pre(self.ind().clone());
        let right = MackeyOp::Pre(self.res().clone());
        let (ir, ind, res) = (self.ir.clone(), self.ind().clone(), self.res().clone());
        let unit = NatTrans::new(MackeyOp::Id(self.ind().dst().clone()), MackeyOp::seq(&[&left, &right]), move |n| {
            let step = precompose_trans(&ir.unit_g(), n)?;
            let target = precompose(&res, &precompose(&ind, n)?)?;
            Ok(identification(&step.dst, &target)?.compose(&step).compose(&identification(n, &step.src)?))
        });
        let (ir, ind, res) = (self.ir.clone(), self.ind().clone(), self.res().clone());
        let counit = NatTrans::new(MackeyOp::seq(&[&right, &left]), MackeyOp::Id(self.ind().src().clone()), move |m| {
            let step = precompose_trans(&ir.counit_h(), m)?;
            let source = precompose(&ind, &precompose(&res, m)?)?;
            Ok(identification(&step.dst, m)?.compose(&step).compose(&identification(&source, &step.src)?))
        });
        Adjunction::new(left, right, unit, counit)
    }

    /// The Wirthmüller iso `Lan_ind M → Ran_ind M`.
    pub fn wirthmuller(&self, m: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        Ok(self.res_to_ran(m)?.compose(&self.lan_to_res(m)?))
    }
}

/// `Lan_{ind i} M → Ran_{ind i} M` for an injection `i`.
pub fn wirthmuller(i: &GrpHom, m: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
    Inj::new(i)?.wirthmuller(m)
}

/// `G ×_H T ≅ G/H × T`, `[g, t] ↦ (g·t, gH)`, as a transformation between
/// functors whose objects are these G-sets. `reps` are the coset
/// representatives of `G/H` used by induction; `act(a, g, t)` is the action
/// on `T` at orbit `a`.
pub fn induced_to_product(
    src: &ZLinFunctor,
    dst: &ZLinFunctor,
    reps: &[usize],
    act: impl Fn(usize, usize, usize) -> usize,
) -> Result<ZLinTrans, ZLinError> {
    let n = reps.len();
    ZLinTrans::from_gset_maps(src, dst, |a, x, _| {
        let nt = x.len() / n;
        (0..x.len()).map(|p| act(a, reps[p / nt], p % nt) * n + p / nt).collect()
    })
}

/// Identity on points between functors whose object G-sets coincide.
pub fn same_points(src: &ZLinFunctor, dst: &ZLinFunctor) -> Result<ZLinTrans, ZLinError> {
    let t = ZLinTrans::from_gset_maps(src, dst, |_, x, _| (0..x.len()).collect())?;
    for a in 0..src.src().n_orbits() {
        let (x, _) = src.object_gset(a).expect("G-set based");
        let (z, _) = dst.object_gset(a).expect("G-set based");
        if x != z {
            return Err(ZLinError::Mismatch(format!("object G-sets differ at orbit {a}")));
        }
    }
    Ok(t)
}

/// `F^*M ≅ F'^*M` through a transformation, with identifications at both
/// ends against the given functors.
pub fn transport(t: &ZLinTrans, m: &MackeyFunctor, src: &MackeyFunctor, dst: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
    let step = precompose_trans(t, m)?;
    Ok(identification(&step.dst, dst)?.compose(&step).compose(&identification(src, &step.src)?))
}

impl Inj {
    /// `res^* ⊣ ind^*` from the span-level adjunction `ind ⊣ res`.
    pub fn induction_adjunction(&self) -> Adjunction {
        let left = MackeyOp::Pre(self.res().clone());
        let right = MackeyOp::Pre(self.ind().clone());
        let (ir, ind, res) = (self.ir.clone(), self.ind().clone(), self.res().clone());
        let unit = NatTrans::new(MackeyOp::Id(self.ind().src().clone()), MackeyOp::seq(&[&left, &right]), move |m| {
            let step = precompose_trans(&ir.unit_h, m)?;
            let target = precompose(&ind, &precompose(&res, m)?)?;
            Ok(identification(&step.dst, &target)?.compose(&step).compose(&identification(m, &step.src)?))
        });
        let (ir, ind, res) = (self.ir.clone(), self.ind().clone(), self.res().clone());
        let counit = NatTrans::new(MackeyOp::seq(&[&right, &left]), MackeyOp::Id(self.ind().dst().clone()), move |n| {
            let step = precompose_trans(&ir.counit_g, n)?;
            let source = precompose(&res, &precompose(&ind, n)?)?;
            Ok(identification(&step.dst, n)?.compose(&step).compose(&identification(&source, &step.src)?))
        });
        Adjunction::new(left, right, unit, counit)
    }
}

/// Left cosets of the image of an injection, in the order used by induction.
struct Cosets {
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    pre: Vec<usize>,
}

impl Cosets {
    fn of(i: &GrpHom) -> Cosets {
        let g = &i.dst;
        let img = i.image_mask(i.src.full_mask());
        let reps = g.left_coset_reps(img);
        let mut coset_of = vec![0usize; g.order()];
        for (k, r) in reps.iter().enumerate() {
            for x in mask_elems(img) {
                coset_of[g.mul(*r, x)] = k;
            }
        }
        let mut pre = vec![usize::MAX; g.order()];
        for h in i.src.elements() {
            pre[i.apply(h)] = h;
        }
        Cosets { reps, coset_of, pre }
    }

    /// `y = reps[s]·i(h)`.
    fn split(&self, i: &GrpHom, y: usize) -> (usize, usize) {
        let s = self.coset_of[y];
        (s, self.pre[i.dst.mul(i.dst.inv(self.reps[s]), y)])
    }
}

/// `ind_i ∘ ind_j ≅ ind_{ij}`, `[g, [h, x]] ↦ [g·i(h), x]`.
pub fn induction_composite(j: &Inj, i: &Inj, ij: &Inj) -> Result<ZLinTrans, ZLinError> {
    let chain = ZLinFunctor::chain(j.ind(), i.ind())?;
    let (cj, ci, cij) = (Cosets::of(&j.hom), Cosets::of(&i.hom), Cosets::of(&ij.hom));
    let base = j.ind().src().clone();
    let g = i.hom.dst.clone();
    let t = ZLinTrans::from_gset_maps(&chain, ij.ind(), |a, x, _| {
        let orbit = &base.orbit(a).gset;
        let n = orbit.len();
        let inner = cj.reps.len() * n;
        (0..x.len())
            .map(|p| {
                let (ri, rest) = (p / inner, p % inner);
                let (rj, t) = (rest / n, rest % n);
                let y = g.mul(ci.reps[ri], i.hom.apply(cj.reps[rj]));
                let (s, k) = cij.split(&ij.hom, y);
                s * n + orbit.act(k, t)
            })
            .collect()
    })?;
    Ok(t.compose(&ZLinTrans::composite_to_chain(j.ind(), i.ind())?))
}

/// `K ×_H X → G ×_H X`, `[k, x] ↦ [φ(k), x]`, for injections `a: H → K`,
/// `b: H → G` with `φ∘a = b`. `dst` realizes `G ×_H X` as a K-set.
pub fn induced_along(a: &Inj, b: &Inj, phi: &GrpHom, dst: &ZLinFunctor) -> Result<ZLinTrans, ZLinError> {
    let (ca, cb) = (Cosets::of(&a.hom), Cosets::of(&b.hom));
    let base = a.ind().src().clone();
    ZLinTrans::from_gset_maps(a.ind(), dst, |o, x, _| {
        let orbit = &base.orbit(o).gset;
        let n = orbit.len();
        (0..x.len())
            .map(|p| {
                let (s, h) = cb.split(&b.hom, phi.apply(ca.reps[p / n]));
                s * n + orbit.act(h, p % n)
            })
            .collect()
    })
}
