//! The Adams norm `X/N → X^N` for N-free Mackey functors.
//!
//! `X/N` is built as a colimit over the orbit diagram of the N-free family
//! of the objects `(fp)_! p^*X`, one per member `p: H ↪ G`, with
//! `f: G → G/N`. On each node the norm is
//!
//! ```text
//! (fp)_! Y → (fp)_* Y ≅ f_* p_* Y → f_* p_! Y → f_* X
//! ```
//!
//! and the node maps are checked to form a cocone before inducing the map
//! out of the colimit.

mod campaign;
mod demo;
mod wirth;
mod zigzag;
#[cfg(test)]
mod tests;

use std::sync::OnceLock;

use crate::burnside::{Burnside, ZLinError, ZLinFunctor, ZLinTrans};
use crate::family::{is_torsion, tensor_ef, Family, FamilyError, TorsionPart};
use crate::grp::{fiber_product, quotient, FiberProduct, FinGroup, GrpError, GrpHom, Subgroup};
use crate::kan::{precompose, precompose_map, Adjunction, KanError, Lan, MackeyOp, NatTrans};
use crate::mackey::{
    mackey_colimit, mackey_iso_test, LevelCertificate, MackeyColimit, MackeyDiagram, MackeyError, MackeyFunctor,
    MackeyMorphism,
};

pub use campaign::{
    default_instances, random_mackey, random_morphism, random_torsion, run_campaign, run_pair, select_subgroup, verify_item,
    CampaignConfig, CampaignReport, Item, NaturalityItem, PairReport, DEFAULT_PAIRS,
};
pub use demo::{rep_counterexample, FixedPointMap, RepDemo};
pub use wirth::{induced_along, induced_to_product, induction_composite, same_points, transport, wirthmuller, Inj};
pub use zigzag::{zigzag_consistency, BeckChevalley, ZigzagReport};

#[derive(Debug, Clone, thiserror::Error)]
pub enum AdamsError {
    #[error("object is not N-free")]
    NotTorsion,
    #[error("node maps do not form a cocone at edge {0}")]
    CoconeFailure(usize),
    #[error("zig-zag mismatch: {0}")]
    ZigzagMismatch(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Kan(#[from] KanError),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
    #[error(transparent)]
    Group(#[from] GrpError),
    #[error(transparent)]
    Functor(#[from] ZLinError),
}

fn inverse(m: &MackeyMorphism, what: &str) -> Result<MackeyMorphism, AdamsError> {
    m.inverse().ok_or_else(|| AdamsError::NotIso(what.into()))
}

/// Per-member data: `p: H ↪ G`, `fp: H ↪ G/N` and the comparison
/// transformations between the composites they produce.
#[derive(Clone)]
pub struct Member {
    pub orbit: usize,
    pub p: Inj,
    pub fp: Inj,
    /// `res_{fp} ⇒ res_p ∘ infl_q`.
    to_chain: ZLinTrans,
    /// `ind_p ∘ res_{fp} ⇒ (- × G/H) ∘ infl_q`.
    to_times: ZLinTrans,
    /// `ind_p ∘ res_p ⇒ - × G/H`.
    proj: ZLinTrans,
}

pub struct AdamsInstance {
    pub g: FinGroup,
    pub n: Subgroup,
    pub quot: FinGroup,
    pub q: GrpHom,
    pub family: Family,
    pub fiber: FiberProduct,
    pub infl: ZLinFunctor,
    pub members: Vec<Member>,
    zig: OnceLock<zigzag::ZigData>,
}

impl std::fmt::Debug for AdamsInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AdamsInstance({}, {})", self.g.label(), self.n.label())
    }
}

impl AdamsInstance {
    pub fn new(g: &FinGroup, n: &Subgroup) -> Result<AdamsInstance, AdamsError> {
        let (quot, q) = quotient(g, n)?;
        let family = Family::from_normal(g, n)?;
        let fiber = fiber_product(&q)?;
        let infl = ZLinFunctor::infl(&q)?;
        let bg = Burnside::of(g);
        let bq = Burnside::of(&quot);
        let mut members = Vec::new();
        for (o, incl) in family.members().iter().zip(family.inclusions()) {
            let fp_hom = q.compose(&incl);
            if !fp_hom.is_injective() {
                return Err(AdamsError::Instance(format!("{} meets N", bg.orbit(*o).label)));
            }
            let p = Inj::new(&incl)?;
            let fp = Inj::new(&fp_hom)?;
            let d = family.diagram();
            let times = d.times(members.len()).clone();
            let reps = g.left_coset_reps(bg.orbit(*o).rep);
            let chain = ZLinFunctor::chain(&infl, p.res())?;
            let to_chain = ZLinTrans::composite_to_chain(&infl, p.res())?.transpose().compose(&same_points(fp.res(), &chain)?);
            let src = ZLinFunctor::chain(fp.res(), p.ind())?;
            let dst = ZLinFunctor::chain(&infl, &times)?;
            let qq = q.clone();
            let bq2 = bq.clone();
            let iso = induced_to_product(&src, &dst, &reps, |a, x, t| bq2.orbit(a).gset.act(qq.apply(x), t))?;
            let to_times = ZLinTrans::composite_to_chain(&infl, &times)?
                .transpose()
                .compose(&iso)
                .compose(&ZLinTrans::composite_to_chain(fp.res(), p.ind())?);
            let src = ZLinFunctor::chain(p.res(), p.ind())?;
            let bg2 = bg.clone();
            let iso = induced_to_product(&src, &times, &reps, |a, x, t| bg2.orbit(a).gset.act(x, t))?;
            let proj = iso.compose(&ZLinTrans::composite_to_chain(p.res(), p.ind())?);
            members.push(Member { orbit: *o, p, fp, to_chain, to_times, proj });
        }
        Ok(AdamsInstance { g: g.clone(), n: n.clone(), quot, q, family, fiber, infl, members, zig: OnceLock::new() })
    }

    pub fn burnside(&self) -> &Burnside {
        self.family.burnside()
    }

    pub fn quotient_burnside(&self) -> &Burnside {
        self.infl.src()
    }

    pub fn label(&self) -> String {
        format!("({}, {})", self.g.label(), self.n.label())
    }

    fn zig(&self) -> Result<&zigzag::ZigData, AdamsError> {
        if let Some(z) = self.zig.get() {
            return Ok(z);
        }
        let z = zigzag::ZigData::new(self)?;
        Ok(self.zig.get_or_init(|| z))
    }

    /// `θ` as a transformation `Ran_{fp} ⇒ f_* ∘ Ran_p`.
    fn theta_trans(&self, i: usize) -> NatTrans {
        let m = self.members[i].clone();
        let infl = self.infl.clone();
        let src = MackeyOp::Ran(m.fp.ind().clone());
        let dst = MackeyOp::seq(&[&MackeyOp::Ran(m.p.ind().clone()), &MackeyOp::Pre(infl.clone())]);
        NatTrans::new(src, dst, move |y| theta(&infl, &m, y).map_err(|e| KanError::NotIso(e.to_string())))
    }

    /// `(fp)_! p^*X ≅ f_*(X ⊗ G/H)`.
    fn node_iso(&self, i: usize, x: &MackeyFunctor) -> Result<MackeyMorphism, AdamsError> {
        let m = &self.members[i];
        let y = precompose(m.p.ind(), x)?;
        let a = m.fp.lan_to_res(&y)?;
        let xs = precompose(self.family.diagram().times(i), x)?;
        let b = transport(&m.to_times, x, &precompose(m.fp.res(), &y)?, &precompose(&self.infl, &xs)?)?;
        Ok(b.compose(&a))
    }

    /// The projection formula `p_! p^*X ≅ X ⊗ G/H`.
    fn projection_iso(&self, i: usize, x: &MackeyFunctor) -> Result<MackeyMorphism, AdamsError> {
        let m = &self.members[i];
        let y = precompose(m.p.ind(), x)?;
        let a = m.p.lan_to_res(&y)?;
        let xs = precompose(self.family.diagram().times(i), x)?;
        Ok(transport(&m.proj, x, &precompose(m.p.res(), &y)?, &xs)?.compose(&a))
    }

    /// The norm on the node of member `i`: `(fp)_! p^*X → f_* X`.
    fn node_map(&self, i: usize, x: &MackeyFunctor) -> Result<MackeyMorphism, AdamsError> {
        let m = &self.members[i];
        let y = precompose(m.p.ind(), x)?;
        let w_fp = m.fp.wirthmuller(&y)?;
        let theta = theta(&self.infl, m, &y)?;
        let w_p = inverse(&m.p.wirthmuller(&y)?, "Wirthmüller map")?;
        let eps = Lan::counit(m.p.ind(), x)?;
        let tail = precompose_map(&self.infl, &eps.compose(&w_p))?;
        Ok(tail.compose(&theta).compose(&w_fp))
    }
}

/// `θ: (fp)_* ≅ f_* p_*` at `Y`.
fn theta(infl: &ZLinFunctor, m: &Member, y: &MackeyFunctor) -> Result<MackeyMorphism, AdamsError> {
    let a = inverse(&m.fp.res_to_ran(y)?, "res to ran")?;
    let py = precompose(m.p.res(), y)?;
    let b = transport(&m.to_chain, y, &precompose(m.fp.res(), y)?, &precompose(infl, &py)?)?;
    let c = precompose_map(infl, &m.p.res_to_ran(y)?)?;
    Ok(c.compose(&b).compose(&a))
}

/// `X^N`, precomposition with inflation of orbits.
pub fn fixed_points(inst: &AdamsInstance, x: &MackeyFunctor) -> Result<MackeyFunctor, AdamsError> {
    Ok(precompose(&inst.infl, x)?)
}

/// Inflation `Lan_{infl}`, with the adjunction against fixed points.
pub fn inflation(inst: &AdamsInstance, m: &MackeyFunctor) -> Result<(MackeyFunctor, Adjunction), AdamsError> {
    Ok((Lan::of(&inst.infl, m)?.obj, Adjunction::lan(&inst.infl)))
}

/// `X/N` as a colimit of `(fp)_! p^*X`, with the comparison isos to the
/// fixed points of the torsion diagram of `X`.
pub struct OrbitsFree {
    pub x: MackeyFunctor,
    pub torsion: TorsionPart,
    pub nodes: Vec<MackeyFunctor>,
    pub node_iso: Vec<MackeyMorphism>,
    pub diagram: MackeyDiagram,
    pub colimit: MackeyColimit,
}

impl OrbitsFree {
    pub fn obj(&self) -> &MackeyFunctor {
        &self.colimit.obj
    }
}

fn orbits_of(inst: &AdamsInstance, x: &MackeyFunctor, torsion: TorsionPart) -> Result<OrbitsFree, AdamsError> {
    let mut nodes = Vec::new();
    let mut node_iso = Vec::new();
    let mut inv = Vec::new();
    for (i, m) in inst.members.iter().enumerate() {
        let y = precompose(m.p.ind(), x)?;
        nodes.push(Lan::of(m.fp.ind(), &y)?.obj);
        let phi = inst.node_iso(i, x)?;
        inv.push(inverse(&phi, "node comparison")?);
        node_iso.push(phi);
    }
    let mut edges = Vec::new();
    for (s, t, e) in &torsion.diagram.edges {
        let mid = precompose_map(&inst.infl, e)?;
        edges.push((*s, *t, inv[*t].compose(&mid).compose(&node_iso[*s])));
    }
    let diagram = MackeyDiagram { objects: nodes.clone(), edges };
    let colimit = mackey_colimit(&diagram)?;
    Ok(OrbitsFree { x: x.clone(), torsion, nodes, node_iso, diagram, colimit })
}

/// `X/N` for N-free `X`.
pub fn orbits_free(inst: &AdamsInstance, x: &MackeyFunctor) -> Result<OrbitsFree, AdamsError> {
    let torsion = tensor_ef(x, &inst.family)?;
    if !mackey_iso_test(&torsion.kappa)? {
        return Err(AdamsError::NotTorsion);
    }
    orbits_of(inst, x, torsion)
}

pub struct AdamsNorm {
    pub orbits: OrbitsFree,
    pub fixed: MackeyFunctor,
    pub node_maps: Vec<MackeyMorphism>,
    /// `X/N → X^N`.
    pub map: MackeyMorphism,
}

fn norm_of(inst: &AdamsInstance, orbits: OrbitsFree) -> Result<AdamsNorm, AdamsError> {
    let x = orbits.x.clone();
    let fixed = fixed_points(inst, &x)?;
    let node_maps = (0..inst.members.len()).map(|i| inst.node_map(i, &x)).collect::<Result<Vec<_>, _>>()?;
    for (k, (s, t, e)) in orbits.diagram.edges.iter().enumerate() {
        if !node_maps[*t].compose(e).eq_map(&node_maps[*s]) {
            return Err(AdamsError::CoconeFailure(k));
        }
    }
    let map = orbits.colimit.induced(&fixed, &node_maps);
    Ok(AdamsNorm { orbits, fixed, node_maps, map })
}

pub fn adams_norm(inst: &AdamsInstance, x: &MackeyFunctor) -> Result<AdamsNorm, AdamsError> {
    norm_of(inst, orbits_free(inst, x)?)
}

/// `φ/N: X/N → X'/N`, induced on nodes by `(fp)_! p^*φ`.
pub fn orbits_map(inst: &AdamsInstance, a: &AdamsNorm, b: &AdamsNorm, phi: &MackeyMorphism) -> Result<MackeyMorphism, AdamsError> {
    let mut legs = Vec::new();
    for (i, m) in inst.members.iter().enumerate() {
        let py = precompose_map(m.p.ind(), phi)?;
        let l1 = Lan::of(m.fp.ind(), &py.src)?;
        let l2 = Lan::of(m.fp.ind(), &py.dst)?;
        legs.push(b.orbits.colimit.legs[i].compose(&l1.map(&l2, &py)?));
    }
    for (s, t, e) in &a.orbits.diagram.edges {
        if !legs[*t].compose(e).eq_map(&legs[*s]) {
            return Err(AdamsError::NotIso("induced map is not a cocone".into()));
        }
    }
    Ok(a.orbits.colimit.induced(b.orbits.obj(), &legs))
}

/// The naturality square of the norm along `φ: X → X'`.
pub fn norm_is_natural(inst: &AdamsInstance, a: &AdamsNorm, b: &AdamsNorm, phi: &MackeyMorphism) -> Result<bool, AdamsError> {
    let left = b.map.compose(&orbits_map(inst, a, b, phi)?);
    let right = precompose_map(&inst.infl, phi)?.compose(&a.map);
    Ok(left.eq_map(&right))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

/// Free ranks per level of `X^N` and of `(X ⊗ E𝓕)/N`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RankDiagnostic {
    pub fixed_points: Vec<usize>,
    pub orbits_of_torsion_part: Vec<usize>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Verdict {
    pub status: Status,
    pub certificates: Vec<LevelCertificate>,
    pub zigzag: Option<ZigzagReport>,
    pub diagnostic: Option<RankDiagnostic>,
    pub note: Option<String>,
}

fn ranks(m: &MackeyFunctor) -> Vec<usize> {
    (0..m.n_levels()).map(|h| m.level(h).invariants().free_rank).collect()
}

pub fn rank_diagnostic(inst: &AdamsInstance, x: &MackeyFunctor) -> Result<RankDiagnostic, AdamsError> {
    let t = tensor_ef(x, &inst.family)?;
    let tx = t.obj().clone();
    let o = orbits_of(inst, &tx, tensor_ef(&tx, &inst.family)?)?;
    Ok(RankDiagnostic { fixed_points: ranks(&fixed_points(inst, x)?), orbits_of_torsion_part: ranks(o.obj()) })
}

/// Runs the norm, its iso test and the zig-zag check; `NOT_APPLICABLE` for
/// objects that are not N-free.
pub fn verify_adams(inst: &AdamsInstance, x: &MackeyFunctor) -> Verdict {
    match verify_inner(inst, x) {
        Ok(v) => v,
        Err(e) => Verdict { status: Status::Fail, certificates: Vec::new(), zigzag: None, diagnostic: None, note: Some(e.to_string()) },
    }
}

fn verify_inner(inst: &AdamsInstance, x: &MackeyFunctor) -> Result<Verdict, AdamsError> {
    if !is_torsion(x, &inst.family)? {
        return Ok(Verdict {
            status: Status::NotApplicable,
            certificates: Vec::new(),
            zigzag: None,
            diagnostic: Some(rank_diagnostic(inst, x)?),
            note: Some("object is not N-free".into()),
        });
    }
    let norm = adams_norm(inst, x)?;
    let iso = mackey_iso_test(&norm.map)?;
    let certificates = norm.map.certificates();
    let zz = zigzag_consistency(inst, &norm)?;
    let status = if iso && zz.is_clean() { Status::Pass } else { Status::Fail };
    let note = (!iso).then(|| "norm is not an isomorphism".to_string());
    Ok(Verdict { status, certificates, zigzag: Some(zz), diagnostic: None, note })
}

/// Checks that `inflation ⊣ fixed points` satisfies the triangle identities
/// at `m` over `G/N` and `x` over `G`.
pub fn check_inflation(inst: &AdamsInstance, m: &MackeyFunctor, x: &MackeyFunctor) -> Result<bool, AdamsError> {
    Ok(Adjunction::lan(&inst.infl).check_triangles(m, x)?)
}
