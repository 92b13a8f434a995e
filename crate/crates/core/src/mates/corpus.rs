//! The shipped pasting instances and their sample functors.

use super::{check_horizontal, check_invariance, check_unit_counit, MatesReport, PastingInstance, Replacement};
use crate::adams::{induced_along, induction_composite, random_mackey, select_subgroup, transport, AdamsError, AdamsInstance, Inj};
use crate::burnside::{Burnside, ZLinFunctor, ZLinTrans};
use crate::grp::{catalog, FinGroup, Subgroup};
use crate::kan::{precompose, Adjunction, KanError, MackeyOp, NatTrans, Square};
use crate::mackey::{free_mackey, MackeyFunctor, MackeyMorphism};

/// The free functors at every orbit and three seeded random functors.
pub fn sample_corpus(b: &Burnside, seed: u64) -> Result<Vec<MackeyFunctor>, AdamsError> {
    let mut out: Vec<MackeyFunctor> = (0..b.n_orbits()).map(|h| free_mackey(b, h)).collect();
    for k in 0..3 {
        out.push(random_mackey(b, seed.wrapping_add(k), 2)?);
    }
    Ok(out)
}

fn identity_adjunction(b: &Burnside) -> Adjunction {
    let id = MackeyOp::Id(b.clone());
    Adjunction::new(id.clone(), id.clone(), NatTrans::identity(&id), NatTrans::identity(&id))
}

/// All four sides identities.
pub fn identity_square(g: &FinGroup, seed: u64) -> Result<PastingInstance, AdamsError> {
    let b = Burnside::of(g);
    let id = MackeyOp::Id(b.clone());
    let sq = Square::new(id.clone(), id.clone(), id.clone(), id.clone(), NatTrans::identity(&id))?;
    let samples = sample_corpus(&b, seed)?;
    let adj = identity_adjunction(&b);
    Ok(PastingInstance::new(&format!("identity {}", g.label()), sq, adj.clone(), adj, samples.clone(), samples)?)
}

/// Restriction along `i` against itself: `f^* = g^* = i^*`, `u^*`, `v^*`
/// identities, `σ` the identity.
pub fn restriction_square(i: &Inj, seed: u64) -> Result<PastingInstance, AdamsError> {
    let (h, g) = (i.ind().src().clone(), i.ind().dst().clone());
    let res = MackeyOp::Pre(i.ind().clone());
    let sq = Square::new(MackeyOp::Id(h.clone()), MackeyOp::Id(g.clone()), res.clone(), res.clone(), NatTrans::identity(&res))?;
    let adj = Adjunction::lan(i.ind());
    let name = format!("restriction {} -> {}", i.hom.src.label(), i.hom.dst.label());
    Ok(PastingInstance::new(&name, sq, adj.clone(), adj, sample_corpus(&h, seed)?, sample_corpus(&g, seed)?)?)
}

/// The Beck-Chevalley square of the fiber product `K = G ×_{G/N} G`:
/// `u^* = q^*`, `f^* = q_*`, `v^* = pr2^*`, `g^* = pr1_*`.
pub fn fiber_square(inst: &AdamsInstance, seed: u64) -> Result<PastingInstance, AdamsError> {
    let bc = inst.beck_chevalley()?;
    let q = &inst.infl;
    let sq = Square::new(
        MackeyOp::Lan(q.clone()),
        MackeyOp::Lan(bc.infl2.clone()),
        MackeyOp::Pre(q.clone()),
        MackeyOp::Pre(bc.infl1.clone()),
        bc.trans,
    )?;
    let name = format!("fiber product {}", inst.label());
    let (adj_f, adj_g) = (Adjunction::lan(q), Adjunction::lan(&bc.infl1));
    Ok(PastingInstance::new(&name, sq, adj_f, adj_g, sample_corpus(inst.quotient_burnside(), seed)?, sample_corpus(inst.burnside(), seed)?)?)
}

/// Two horizontally composable squares.
#[derive(Clone, Debug)]
pub struct Rectangle {
    pub first: PastingInstance,
    pub second: PastingInstance,
}

/// Restrictions along `K ≤ H ≤ G`: the square `(K ≤ H) ∘ (H ≤ G) ≅ (K ≤ G)`
/// pasted with its inverse.
pub fn induction_chain(g: &FinGroup, h: &Subgroup, k: &Subgroup, seed: u64) -> Result<Rectangle, AdamsError> {
    let (hg, i) = h.as_group(&h.label());
    let k_in_h = hg.subgroup(hg.closure(&k.elements().iter().map(|x| i.images.iter().position(|y| y == x).expect("K ≤ H")).collect::<Vec<_>>()));
    let (_, j) = k_in_h.as_group(&k.label());
    let (i, j) = (Inj::new(&i)?, Inj::new(&j)?);
    let ij = Inj::new(&i.hom.compose(&j.hom))?;
    let t = induction_composite(&j, &i, &ij)?;
    let (bk, bh, bg) = (j.ind().src().clone(), i.ind().src().clone(), Burnside::of(g));

    let (j1, i1, ij1, t1) = (j.clone(), i.clone(), ij.clone(), t.clone());
    let sigma = NatTrans::new(
        MackeyOp::seq(&[&MackeyOp::Pre(i.ind().clone()), &MackeyOp::Pre(j.ind().clone())]),
        MackeyOp::Pre(ij.ind().clone()),
        move |m| {
            let src = precompose(j1.ind(), &precompose(i1.ind(), m)?)?;
            transport(&t1, m, &src, &precompose(ij1.ind(), m)?)
        },
    );
    let sq1 = Square::new(
        MackeyOp::Pre(j.ind().clone()),
        MackeyOp::Id(bg.clone()),
        MackeyOp::Pre(i.ind().clone()),
        MackeyOp::Pre(ij.ind().clone()),
        sigma,
    )?;
    let (j2, i2, ij2, t2) = (j.clone(), i.clone(), ij.clone(), t.transpose());
    let tau = NatTrans::new(
        MackeyOp::Pre(ij.ind().clone()),
        MackeyOp::seq(&[&MackeyOp::Pre(i.ind().clone()), &MackeyOp::Pre(j.ind().clone())]),
        move |m| {
            let dst = precompose(j2.ind(), &precompose(i2.ind(), m)?)?;
            transport(&t2, m, &precompose(ij2.ind(), m)?, &dst)
        },
    );
    let sq2 = Square::new(MackeyOp::Id(bk.clone()), MackeyOp::Pre(i.ind().clone()), MackeyOp::Pre(ij.ind().clone()), MackeyOp::Pre(j.ind().clone()), tau)?;
    let name = |s: &str| format!("{s} {} <= {} <= {}", k.label(), h.label(), g.label());
    let (adj_i, adj_ij, adj_j) = (Adjunction::lan(i.ind()), Adjunction::lan(ij.ind()), Adjunction::lan(j.ind()));
    let first = PastingInstance::new(&name("composite"), sq1, adj_i, adj_ij.clone(), sample_corpus(&bh, seed)?, sample_corpus(&bg, seed)?)?;
    let second = PastingInstance::new(&name("inverse"), sq2, adj_ij, adj_j, sample_corpus(&bk, seed)?, Vec::new())?;
    Ok(Rectangle { first, second })
}

/// The fiber-product square pasted with restriction to member `m`:
/// `w^* = p^*`, `x^* = (Δp)^*`, `h^*` the identity, and
/// `τ: p^* pr1_* ⇒ (Δp)^*` from `K ×_H X → G ×_H X`.
pub fn inflation_restriction(inst: &AdamsInstance, m: usize, seed: u64) -> Result<Rectangle, AdamsError> {
    let first = fiber_square(inst, seed)?;
    let member = &inst.members[m];
    let p = member.p.clone();
    let dp = Inj::new(&inst.fiber.diag.compose(&p.hom))?;
    let infl1 = match &first.square.g {
        MackeyOp::Pre(f) => f.clone(),
        _ => unreachable!("fiber square has a precomposition on the right"),
    };
    let chain = ZLinFunctor::chain(p.ind(), &infl1)?;
    let t = induced_along(&dp, &p, &inst.fiber.pr1, &chain)?
        .transpose()
        .compose(&ZLinTrans::composite_to_chain(p.ind(), &infl1)?);
    let (p1, dp1, f1) = (p.clone(), dp.clone(), infl1.clone());
    let tau = NatTrans::new(
        MackeyOp::seq(&[&MackeyOp::Pre(infl1.clone()), &MackeyOp::Pre(p.ind().clone())]),
        MackeyOp::Pre(dp.ind().clone()),
        move |x| {
            let src = precompose(p1.ind(), &precompose(&f1, x)?)?;
            transport(&t, x, &src, &precompose(dp1.ind(), x)?)
        },
    );
    let bh = p.ind().src().clone();
    let sq = Square::new(MackeyOp::Pre(p.ind().clone()), MackeyOp::Pre(dp.ind().clone()), first.square.g.clone(), MackeyOp::Id(bh.clone()), tau)?;
    let name = format!("restriction to {}", inst.family.labels()[m]);
    let second = PastingInstance::new(&name, sq, first.adj_g.clone(), identity_adjunction(&bh), sample_corpus(inst.burnside(), seed)?, Vec::new())?;
    Ok(Rectangle { first, second })
}

/// `res^* ⊣ ind^*` in place of `Lan_ind ⊣ ind^*` on both sides of a
/// restriction square; the induced iso is the Wirthmüller comparison
/// `Lan_ind ≅ res^*`.
pub fn wirthmuller_replacement(i: &Inj, inst: &PastingInstance) -> Replacement {
    let adj = i.induction_adjunction();
    Replacement {
        name: "wirthmuller".into(),
        adj_f: adj.clone(),
        adj_g: adj,
        alpha: NatTrans::identity(&inst.square.f),
        beta: NatTrans::identity(&inst.square.g),
    }
}

/// `α = −1` on `f^*`, `β` the identity.
pub fn sign_twist(inst: &PastingInstance) -> Replacement {
    let f = inst.square.f.clone();
    let alpha = NatTrans::new(f.clone(), f.clone(), move |m| Ok(MackeyMorphism::identity(&f.apply(m)?).neg()));
    Replacement { name: "sign".into(), alpha, ..Replacement::identity(inst) }
}

/// The identity square pasted on the right of `inst`.
pub fn identity_extension(inst: &PastingInstance) -> Result<PastingInstance, KanError> {
    let sq = &inst.square;
    let (b, d) = (MackeyOp::Id(sq.u.dst().clone()), MackeyOp::Id(sq.v.dst().clone()));
    let square = Square::new(b, d, sq.g.clone(), sq.g.clone(), NatTrans::identity(&sq.g))?;
    PastingInstance::new("identity", square, inst.adj_g.clone(), inst.adj_g.clone(), Vec::new(), Vec::new())
}

fn inclusion(g: &str, sel: &str) -> Result<Inj, AdamsError> {
    let g = catalog(g)?;
    let h = select_subgroup(&g, sel)?;
    Ok(Inj::new(&h.as_group("H").1)?)
}

fn instance(g: &str, n: &str) -> Result<AdamsInstance, AdamsError> {
    let g = catalog(g)?;
    AdamsInstance::new(&g, &select_subgroup(&g, n)?)
}

/// Runs every mates check on the shipped instances.
pub fn shipped_corpus(seed: u64) -> Result<Vec<MatesReport>, AdamsError> {
    let mut out = Vec::new();
    for g in ["C2", "S3"] {
        let inst = identity_square(&catalog(g)?, seed)?;
        out.push(inst.check_triangles());
        out.push(check_unit_counit(&inst));
        out.push(check_horizontal(&inst, &inst));
        out.push(check_invariance(&inst, &Replacement::identity(&inst)));
    }
    for (g, h) in [("C2", "e"), ("S3", "(0 1)"), ("C4", "(0 2)(1 3)")] {
        let i = inclusion(g, h)?;
        let inst = restriction_square(&i, seed)?;
        out.push(inst.check_triangles());
        out.push(check_unit_counit(&inst));
        out.push(check_horizontal(&inst, &identity_extension(&inst)?));
        out.push(check_invariance(&inst, &wirthmuller_replacement(&i, &inst)));
        out.push(check_invariance(&inst, &sign_twist(&inst)));
    }
    for (g, n) in [("C4", "(0 2)(1 3)"), ("C2xC2", "(0 1)")] {
        let inst = instance(g, n)?;
        let sq = fiber_square(&inst, seed)?;
        out.push(sq.check_triangles());
        out.push(check_unit_counit(&sq));
        out.push(check_invariance(&sq, &sign_twist(&sq)));
        for m in 0..inst.members.len() {
            let r = inflation_restriction(&inst, m, seed)?;
            out.push(check_horizontal(&r.first, &r.second));
        }
    }
    for (g, h) in [("S3", "(0 1)"), ("S3", "(0 1 2)"), ("C4", "(0 2)(1 3)")] {
        let gr = catalog(g)?;
        let r = induction_chain(&gr, &select_subgroup(&gr, h)?, &gr.trivial(), seed)?;
        out.push(check_unit_counit(&r.first));
        out.push(check_horizontal(&r.first, &r.second));
    }
    Ok(out)
}
