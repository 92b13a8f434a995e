//! Families of subgroups and the torsion/complete parts of Mackey functors.
//!
//! `E𝓕` only appears through its orbit diagram: one orbit per member class
//! and every G-map between them. Tensoring with a finite G-set `S` is
//! precomposition along `- × S`.

#[cfg(test)]
mod tests;

use std::sync::{Arc, OnceLock};

use crate::burnside::{Burnside, GSet, ZLinFunctor, ZLinTrans};
use crate::grp::{mask_elems, FinGroup, GrpError, GrpHom, Mask, Subgroup};
use crate::kan::{precompose, precompose_trans, KanError};
use crate::mackey::{
    mackey_colimit, mackey_iso_test, mackey_limit, MackeyColimit, MackeyDiagram, MackeyError, MackeyFunctor,
    MackeyLimit, MackeyMorphism,
};

#[derive(Debug, Clone, thiserror::Error)]
pub enum FamilyError {
    #[error("family is empty")]
    Empty,
    #[error("not closed under subconjugacy: {0} is missing")]
    NotClosed(String),
    #[error("object is not torsion for the family")]
    NotTorsion,
    #[error("morphism is not natural")]
    NotNatural,
    #[error(transparent)]
    Group(#[from] GrpError),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
    #[error(transparent)]
    Kan(#[from] KanError),
}

/// A G-map `G/H → G/K` between member orbits, `gH ↦ g r K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMap {
    pub src: usize,
    pub dst: usize,
    /// Coset of `r` in `G/K`.
    pub coset: usize,
}

fn point_map(b: &Burnside, members: &[usize], m: &OrbitMap) -> Vec<usize> {
    let (oh, ok) = (b.orbit(members[m.src]), b.orbit(members[m.dst]));
    let r = ok.cosets[m.coset];
    oh.cosets.iter().map(|t| ok.coset_of[b.group().mul(*t, r)] as usize).collect()
}

/// The orbit category of a family on representatives.
pub struct OrbitDiagram {
    /// Orbit indices of the members.
    pub objects: Vec<usize>,
    /// All G-maps, indexed; `src` and `dst` index into `objects`.
    pub morphisms: Vec<OrbitMap>,
    /// `compose[i][j]` is the index of `morphisms[j] ∘ morphisms[i]` when
    /// composable.
    pub compose: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
    times: Vec<ZLinFunctor>,
    proj: Vec<ZLinTrans>,
    along: Vec<ZLinTrans>,
}

impl OrbitDiagram {
    fn build(b: &Burnside, members: &[usize]) -> OrbitDiagram {
        let g = b.group();
        let mut morphisms = Vec::new();
        for (i, h) in members.iter().enumerate() {
            for (j, k) in members.iter().enumerate() {
                let ok = &b.orbit(*k);
                for (c, r) in ok.cosets.iter().enumerate() {
                    if mask_elems(b.orbit(*h).rep).all(|x| ok.coset_of[g.mul(x, *r)] as usize == c) {
                        morphisms.push(OrbitMap { src: i, dst: j, coset: c });
                    }
                }
            }
        }
        let find = |m: &OrbitMap| morphisms.iter().position(|n| n == m).expect("closed under composition");
        let mut compose = vec![vec![None; morphisms.len()]; morphisms.len()];
        for (i, m1) in morphisms.iter().enumerate() {
            for (j, m2) in morphisms.iter().enumerate() {
                if m1.dst != m2.src {
                    continue;
                }
                let (ok, ol) = (b.orbit(members[m1.dst]), b.orbit(members[m2.dst]));
                let r = ok.cosets[m1.coset];
                let s = ol.cosets[m2.coset];
                let c = ol.coset_of[g.mul(r, s)] as usize;
                compose[i][j] = Some(find(&OrbitMap { src: m1.src, dst: m2.dst, coset: c }));
            }
        }
        let identities = (0..members.len())
            .map(|i| {
                let c = b.orbit(members[i]).coset_of[0] as usize;
                find(&OrbitMap { src: i, dst: i, coset: c })
            })
            .collect();
        let times: Vec<ZLinFunctor> = members.iter().map(|h| ZLinFunctor::times(&b.orbit(*h).gset)).collect();
        let id = ZLinFunctor::identity(b);
        let proj = times
            .iter()
            .zip(members)
            .map(|(t, h)| {
                let n = b.orbit(*h).size();
                ZLinTrans::from_gset_maps(t, &id, |_, x, _| (0..x.len()).map(|p| p / n).collect())
                    .expect("G-set based")
            })
            .collect();
        let along = morphisms
            .iter()
            .map(|m| {
                let img = point_map(b, members, m);
                let (nh, nk) = (b.orbit(members[m.src]).size(), b.orbit(members[m.dst]).size());
                ZLinTrans::from_gset_maps(&times[m.src], &times[m.dst], |_, x, _| {
                    (0..x.len()).map(|p| (p / nh) * nk + img[p % nh]).collect()
                })
                .expect("G-set based")
            })
            .collect();
        OrbitDiagram { objects: members.to_vec(), morphisms, compose, identities, times, proj, along }
    }

    /// The G-map of a morphism on points of the orbits.
    pub fn point_map(&self, b: &Burnside, m: usize) -> Vec<usize> {
        point_map(b, &self.objects, &self.morphisms[m])
    }

    /// The functor `- × G/H` for the `i`-th object.
    pub fn times(&self, i: usize) -> &ZLinFunctor {
        &self.times[i]
    }

    /// Non-identity morphisms.
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(|m| !self.identities.contains(m))
    }
}

#[derive(Clone)]
pub struct Family {
    burnside: Burnside,
    members: Vec<usize>,
    diagram: Arc<OnceLock<OrbitDiagram>>,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Family({}: {:?})", self.group().label(), self.labels())
    }
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.burnside == other.burnside && self.members == other.members
    }
}

impl Family {
    /// A family from orbit indices (subgroup classes).
    pub fn new(g: &FinGroup, members: impl IntoIterator<Item = usize>) -> Result<Family, FamilyError> {
        let b = Burnside::of(g);
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        let lat = g.lattice();
        for m in &members {
            let rep = b.orbit(*m).rep;
            for s in lat.all_subgroups() {
                if s & rep == s && !members.contains(&lat.class_of(s)) {
                    return Err(FamilyError::NotClosed(g.subgroup_label(s)));
                }
            }
        }
        Ok(Family { burnside: b, members, diagram: Arc::new(OnceLock::new()) })
    }

    pub fn all(g: &FinGroup) -> Family {
        Family::new(g, 0..Burnside::of(g).n_orbits()).expect("all subgroups")
    }

    /// Subgroups meeting `n` trivially.
    pub fn from_normal(g: &FinGroup, n: &Subgroup) -> Result<Family, FamilyError> {
        if n.group != *g {
            return Err(GrpError::ParentMismatch.into());
        }
        if !n.is_normal() {
            return Err(GrpError::NotNormal.into());
        }
        let e = g.trivial().mask;
        let b = Burnside::of(g);
        Family::new(g, (0..b.n_orbits()).filter(|o| b.orbit(*o).rep & n.mask == e))
    }

    pub fn group(&self) -> &FinGroup {
        self.burnside.group()
    }

    pub fn burnside(&self) -> &Burnside {
        &self.burnside
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| self.burnside.orbit(*m).label.clone()).collect()
    }

    pub fn contains(&self, s: Mask) -> bool {
        self.members.contains(&self.burnside.orbit_of_subgroup(s))
    }

    /// `(E𝓕)^H` is contractible (1) or empty (0), per orbit.
    pub fn indicator(&self) -> Vec<u8> {
        (0..self.burnside.n_orbits()).map(|o| self.members.contains(&o) as u8).collect()
    }

    pub fn diagram(&self) -> &OrbitDiagram {
        self.diagram.get_or_init(|| OrbitDiagram::build(&self.burnside, &self.members))
    }

    /// Inclusions of the member representatives.
    pub fn inclusions(&self) -> Vec<GrpHom> {
        let g = self.group();
        self.members.iter().map(|m| g.subgroup(self.burnside.orbit(*m).rep).as_group("H").1).collect()
    }
}

pub fn family_from_n(g: &FinGroup, n: &Subgroup) -> Result<Family, FamilyError> {
    Family::from_normal(g, n)
}

fn same_group(x: &MackeyFunctor, f: &Family) -> Result<(), FamilyError> {
    if x.burnside() != f.burnside() {
        return Err(KanError::Mismatch("family and functor over different groups".into()).into());
    }
    Ok(())
}

/// `X ⊗ S` with the map to `X` induced by `S → *`.
pub fn tensor_gset(x: &MackeyFunctor, s: &GSet) -> Result<(MackeyFunctor, MackeyMorphism), FamilyError> {
    let t = ZLinFunctor::times(s);
    let b = x.burnside();
    let trans = ZLinTrans::from_gset_maps(&t, &ZLinFunctor::identity(b), |_, p, _| {
        (0..p.len()).map(|i| i / s.len().max(1)).collect()
    })
    .map_err(KanError::from)?;
    tensor_along(x, &t, &trans)
}

fn tensor_along(x: &MackeyFunctor, t: &ZLinFunctor, proj: &ZLinTrans) -> Result<(MackeyFunctor, MackeyMorphism), FamilyError> {
    let xs = precompose(t, x)?;
    let m = precompose_trans(proj, x)?;
    Ok((xs.clone(), MackeyMorphism::new(&xs, x, m.components)?))
}

/// The diagram `G/H ↦ X ⊗ G/H` over the orbit category of `f`, with the
/// canonical cocone to `X`.
pub fn torsion_diagram(x: &MackeyFunctor, f: &Family) -> Result<(MackeyDiagram, Vec<MackeyMorphism>), FamilyError> {
    same_group(x, f)?;
    let d = f.diagram();
    let mut objects = Vec::new();
    let mut cocone = Vec::new();
    for (t, p) in d.times.iter().zip(&d.proj) {
        let (o, c) = tensor_along(x, t, p)?;
        objects.push(o);
        cocone.push(c);
    }
    let mut edges = Vec::new();
    for m in d.edges() {
        let mm = &d.morphisms[m];
        let phi = precompose_trans(&d.along[m], x)?;
        edges.push((mm.src, mm.dst, phi));
    }
    Ok((MackeyDiagram { objects, edges }, cocone))
}

pub struct TorsionPart {
    pub diagram: MackeyDiagram,
    pub colimit: MackeyColimit,
    /// `κ: X ⊗ E𝓕 → X`.
    pub kappa: MackeyMorphism,
}

impl TorsionPart {
    pub fn obj(&self) -> &MackeyFunctor {
        &self.colimit.obj
    }
}

pub fn tensor_ef(x: &MackeyFunctor, f: &Family) -> Result<TorsionPart, FamilyError> {
    let (diagram, cocone) = torsion_diagram(x, f)?;
    let colimit = mackey_colimit(&diagram)?;
    let kappa = colimit.induced(x, &cocone);
    Ok(TorsionPart { diagram, colimit, kappa })
}

pub fn is_torsion(x: &MackeyFunctor, f: &Family) -> Result<bool, FamilyError> {
    let t = tensor_ef(x, f)?;
    Ok(mackey_iso_test(&t.kappa)?)
}

pub struct Completion {
    pub limit: MackeyLimit,
    /// `X → X^{E𝓕}`.
    pub eta: MackeyMorphism,
}

/// The limit of the cotensors `G/H ↦ X^{G/H}` with the canonical map from `X`.
pub fn completion(x: &MackeyFunctor, f: &Family) -> Result<Completion, FamilyError> {
    same_group(x, f)?;
    let d = f.diagram();
    let mut objects = Vec::new();
    let mut cone = Vec::new();
    for (t, p) in d.times.iter().zip(&d.proj) {
        let o = precompose(t, x)?;
        let m = precompose_trans(&p.transpose(), x)?;
        cone.push(MackeyMorphism::new(x, &o, m.components)?);
        objects.push(o);
    }
    let mut edges = Vec::new();
    for m in d.edges() {
        let mm = &d.morphisms[m];
        edges.push((mm.dst, mm.src, precompose_trans(&d.along[m].transpose(), x)?));
    }
    let limit = mackey_limit(&MackeyDiagram { objects, edges })?;
    let eta = limit.induced(x, &cone).ok_or(FamilyError::NotNatural)?;
    Ok(Completion { limit, eta })
}

pub fn is_complete(x: &MackeyFunctor, f: &Family) -> Result<bool, FamilyError> {
    Ok(mackey_iso_test(&completion(x, f)?.eta)?)
}

/// `φ` restricts to an isomorphism along every member inclusion.
pub fn family_weak_equiv(phi: &MackeyMorphism, f: &Family) -> Result<bool, FamilyError> {
    if !phi.is_natural() {
        return Err(FamilyError::NotNatural);
    }
    for i in f.inclusions() {
        let ind = ZLinFunctor::ind(&i).map_err(KanError::from)?;
        let r = crate::kan::precompose_map(&ind, phi)?;
        if !r.is_iso() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The torsion diagram of a torsion object with its witnessing iso.
pub fn torsion_generators(x: &MackeyFunctor, f: &Family) -> Result<TorsionPart, FamilyError> {
    let t = tensor_ef(x, f)?;
    if !mackey_iso_test(&t.kappa)? {
        return Err(FamilyError::NotTorsion);
    }
    Ok(t)
}
