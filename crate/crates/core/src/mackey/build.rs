//! Standard constructions: zero, free (representable), direct sums,
//! tabulated functors, and fixed-point functors of G-modules.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::{MackeyError, MackeyFunctor, MackeyMorphism, MackeySource};
use crate::burnside::{Burnside, GSet};
use crate::grp::{minimal_generators, FinGroup, GrpHom, Mask};
use crate::zmod::{kernel, AbGrp, AbHom, Int, Lifter, Mat};

/// Levels and actions held in memory.
pub struct TableSource {
    pub levels: Vec<AbGrp>,
    pub actions: HashMap<(usize, usize, usize), AbHom>,
}

impl MackeySource for TableSource {
    fn level(&self, h: usize) -> AbGrp {
        self.levels[h].clone()
    }

    fn action(&self, h: usize, k: usize, idx: usize) -> AbHom {
        self.actions[&(h, k, idx)].clone()
    }
}

struct ZeroSource;

impl MackeySource for ZeroSource {
    fn level(&self, _: usize) -> AbGrp {
        AbGrp::zero()
    }

    fn action(&self, _: usize, _: usize, _: usize) -> AbHom {
        AbHom::zero(&AbGrp::zero(), &AbGrp::zero())
    }
}

pub fn zero_mackey(b: &Burnside) -> MackeyFunctor {
    MackeyFunctor::new(b, "0", ZeroSource)
}

struct FreeSource {
    b: Burnside,
    h: usize,
}

impl MackeySource for FreeSource {
    fn level(&self, k: usize) -> AbGrp {
        AbGrp::free(self.b.basis(self.h, k).len())
    }

    fn action(&self, k: usize, k2: usize, idx: usize) -> AbHom {
        let n1 = self.b.basis(self.h, k).len();
        let n2 = self.b.basis(self.h, k2).len();
        let mut m = Mat::zeros(n2, n1);
        for beta in 0..n1 {
            for (t, c) in &self.b.compose_basis(self.h, k, k2, beta, idx).terms {
                m.set(*t, beta, Int::from(*c));
            }
        }
        AbHom::new_unchecked(AbGrp::free(n1), AbGrp::free(n2), m)
    }
}

/// The representable functor `B(G/H, -)`; its generator at level `h` is the
/// identity span.
pub fn free_mackey(b: &Burnside, h: usize) -> MackeyFunctor {
    MackeyFunctor::new(b, format!("A[{}]", b.orbit(h).label), FreeSource { b: b.clone(), h })
}

struct SumSource {
    parts: Vec<MackeyFunctor>,
}

impl MackeySource for SumSource {
    fn level(&self, h: usize) -> AbGrp {
        AbGrp::direct_sum(&self.parts.iter().map(|p| p.level(h).clone()).collect::<Vec<_>>())
    }

    fn action(&self, h: usize, k: usize, idx: usize) -> AbHom {
        AbHom::direct_sum(&self.parts.iter().map(|p| p.action(h, k, idx)).collect::<Vec<_>>())
    }
}

pub fn direct_sum(parts: &[MackeyFunctor]) -> MackeyFunctor {
    let name = parts.iter().map(|p| p.name().to_string()).collect::<Vec<_>>().join(" + ");
    MackeyFunctor::new(parts[0].burnside(), name, SumSource { parts: parts.to_vec() })
}

impl MackeyFunctor {
    /// Builds a functor from actions on generating (forward or backward)
    /// spans. Identity spans default to identities; every other generating
    /// span must be given. Remaining basis spans act through their
    /// factorization, and with `check` the result must pass the axioms.
    pub fn from_generators(
        b: &Burnside,
        name: &str,
        levels: Vec<AbGrp>,
        gens: HashMap<(usize, usize, usize), Mat>,
        check: bool,
    ) -> Result<MackeyFunctor, MackeyError> {
        let n = b.n_orbits();
        if levels.len() != n {
            return Err(MackeyError::Shape(format!("{} levels for {n} orbits", levels.len())));
        }
        let mut actions = HashMap::new();
        for ((h, k, i), m) in gens {
            if h >= n || k >= n || i >= b.basis(h, k).len() {
                return Err(MackeyError::Shape(format!("no span {i} between orbits {h} and {k}")));
            }
            let e = b.elt(h, k, i);
            if !b.is_forward(&e) && !b.is_backward(&e) {
                return Err(MackeyError::NotGenerating((h, k, i)));
            }
            let a = AbHom::new(levels[h].clone(), levels[k].clone(), m).map_err(|e| {
                MackeyError::Axiom(format!("span {i} of ({h},{k}): {e}"))
            })?;
            actions.insert((h, k, i), a);
        }
        for h in 0..n {
            let id = b.identity(h).terms[0].0;
            actions.entry((h, h, id)).or_insert_with(|| AbHom::identity(&levels[h]));
        }
        for h in 0..n {
            for k in 0..n {
                for i in b.generating(h, k) {
                    if !actions.contains_key(&(h, k, i)) {
                        return Err(MackeyError::MissingSpan((h, k, i)));
                    }
                }
            }
        }
        for h in 0..n {
            for k in 0..n {
                for i in 0..b.basis(h, k).len() {
                    if actions.contains_key(&(h, k, i)) {
                        continue;
                    }
                    let (r, bwd, fwd) = b.factor(h, k, i);
                    let a = actions[&(r, k, fwd)].compose(&actions[&(h, r, bwd)]);
                    actions.insert((h, k, i), a);
                }
            }
        }
        let m = MackeyFunctor::new(b, name, TableSource { levels, actions });
        if check {
            if let Some(v) = m.check_axioms().violations.first() {
                return Err(MackeyError::Axiom(v.to_string()));
            }
        }
        Ok(m)
    }
}

/// A finitely generated abelian group with a G-action.
#[derive(Clone, Debug)]
pub struct GModule {
    pub group: FinGroup,
    pub carrier: AbGrp,
    /// Automorphism for every group element.
    pub action: Vec<AbHom>,
}

impl GModule {
    /// Extends images of the generators to the whole group and checks that
    /// the result is an action.
    pub fn new(group: &FinGroup, carrier: &AbGrp, gen_images: &[Mat]) -> Result<GModule, MackeyError> {
        let gens = group.generators();
        if gen_images.len() != gens.len() {
            return Err(MackeyError::Shape(format!("{} images for {} generators", gen_images.len(), gens.len())));
        }
        let imgs: Vec<AbHom> = gen_images
            .iter()
            .map(|m| AbHom::new(carrier.clone(), carrier.clone(), m.clone()))
            .collect::<Result<_, _>>()
            .map_err(|e| MackeyError::Axiom(e.to_string()))?;
        let mut action: Vec<Option<AbHom>> = vec![None; group.order()];
        action[0] = Some(AbHom::identity(carrier));
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = group.mul(*g, x);
                if action[y].is_none() {
                    action[y] = Some(imgs[gi].compose(action[x].as_ref().unwrap()));
                    q.push_back(y);
                }
            }
        }
        let v = GModule { group: group.clone(), carrier: carrier.clone(), action: action.into_iter().map(Option::unwrap).collect() };
        for a in group.elements() {
            for b in group.elements() {
                if !v.action[group.mul(a, b)].eq_map(&v.action[a].compose(&v.action[b])) {
                    return Err(MackeyError::Axiom(format!("elements {a} and {b} do not act compatibly")));
                }
            }
        }
        Ok(v)
    }

    pub fn trivial(group: &FinGroup, carrier: &AbGrp) -> GModule {
        GModule {
            group: group.clone(),
            carrier: carrier.clone(),
            action: group.elements().map(|_| AbHom::identity(carrier)).collect(),
        }
    }

    /// Permutation module on a G-set with coefficients `Z/modulus`
    /// (`modulus = 0` for integer coefficients).
    pub fn permutation(x: &GSet, modulus: i64) -> GModule {
        let n = x.len();
        let carrier = AbGrp::diagonal(vec![Int::from(modulus); n]);
        let action = x
            .group
            .elements()
            .map(|g| {
                let mut m = Mat::zeros(n, n);
                for p in 0..n {
                    m.set(x.act(g, p), p, Int::one());
                }
                AbHom::new_unchecked(carrier.clone(), carrier.clone(), m)
            })
            .collect();
        GModule { group: x.group.clone(), carrier, action }
    }

    /// `V^H` with its inclusion into `V`.
    pub fn fixed_subgroup(&self, h: Mask) -> (AbGrp, AbHom) {
        let gens = minimal_generators(&self.group, h);
        if gens.is_empty() {
            return (self.carrier.clone(), AbHom::identity(&self.carrier));
        }
        let parts: Vec<AbGrp> = gens.iter().map(|_| self.carrier.clone()).collect();
        let sum = AbGrp::direct_sum(&parts);
        let diffs: Vec<AbHom> = gens.iter().map(|g| self.action[*g].sub(&AbHom::identity(&self.carrier))).collect();
        kernel(&AbHom::pair(&self.carrier, &sum, &diffs))
    }
}

/// An equivariant map of G-modules.
#[derive(Clone, Debug)]
pub struct GModuleMap {
    pub src: GModule,
    pub dst: GModule,
    pub map: AbHom,
}

impl GModuleMap {
    pub fn new(src: &GModule, dst: &GModule, mat: Mat) -> Result<GModuleMap, MackeyError> {
        let map = AbHom::new(src.carrier.clone(), dst.carrier.clone(), mat).map_err(|e| MackeyError::Axiom(e.to_string()))?;
        for g in src.group.elements() {
            if !map.compose(&src.action[g]).eq_map(&dst.action[g].compose(&map)) {
                return Err(MackeyError::Axiom(format!("map is not equivariant at element {g}")));
            }
        }
        Ok(GModuleMap { src: src.clone(), dst: dst.clone(), map })
    }
}

/// `V^N` as a module over `Q = G/N` for a surjection `q` with kernel `N`,
/// with its inclusion into `V`.
pub fn gmodule_fixed_points(q: &GrpHom, v: &GModule) -> (GModule, AbHom) {
    let (f, incl) = v.fixed_subgroup(q.kernel_mask());
    let lifter = Lifter::new(&incl);
    let qg = &q.dst;
    let mut action = Vec::with_capacity(qg.order());
    for x in qg.elements() {
        let g = q.src.elements().find(|g| q.apply(*g) == x).expect("q surjective");
        let a = lifter.lift(&v.action[g].compose(&incl)).expect("fixed points are invariant");
        action.push(a);
    }
    (GModule { group: qg.clone(), carrier: f, action }, incl)
}

impl GModuleMap {
    /// The induced map on `N`-fixed points.
    pub fn fixed_points(&self, q: &GrpHom) -> GModuleMap {
        let (fs, is) = gmodule_fixed_points(q, &self.src);
        let (fd, id) = gmodule_fixed_points(q, &self.dst);
        let map = Lifter::new(&id).lift(&self.map.compose(&is)).expect("equivariant maps preserve fixed points");
        GModuleMap { src: fs, dst: fd, map }
    }
}

struct FixedSource {
    b: Burnside,
    v: GModule,
    data: Vec<OnceLock<(AbGrp, AbHom, Lifter)>>,
}

impl FixedSource {
    fn data(&self, h: usize) -> &(AbGrp, AbHom, Lifter) {
        self.data[h].get_or_init(|| {
            let (f, i) = self.v.fixed_subgroup(self.b.orbit(h).rep);
            let l = Lifter::new(&i);
            (f, i, l)
        })
    }
}

impl MackeySource for FixedSource {
    fn level(&self, h: usize) -> AbGrp {
        self.data(h).0.clone()
    }

    /// For `G/H ← G/L → G/K`: restrict along the left leg, then sum over the
    /// fibre of the right leg above the base coset.
    fn action(&self, h: usize, k: usize, idx: usize) -> AbHom {
        let g = self.b.group();
        let e = self.b.elt(h, k, idx);
        let ko = self.b.orbit(k);
        let v = &self.v.carrier;
        let mut sum = AbHom::zero(v, v);
        for r in g.left_coset_reps(e.middle) {
            if ko.coset_of[g.mul(r, e.b)] == 0 {
                sum = sum.add(&self.v.action[g.mul(r, e.a)]);
            }
        }
        let (_, ih, _) = self.data(h);
        let (_, _, lk) = self.data(k);
        lk.lift(&sum.compose(ih)).expect("transfer lands in fixed points")
    }
}

/// The fixed-point functor `G/H ↦ V^H`.
pub fn fixed_point_mackey(v: &GModule) -> MackeyFunctor {
    let b = Burnside::of(&v.group);
    let n = b.n_orbits();
    let src = FixedSource { b: b.clone(), v: v.clone(), data: (0..n).map(|_| OnceLock::new()).collect() };
    MackeyFunctor::new(&b, "fixed points", src)
}

/// The morphism `free_mackey(h) → M` sending the identity span to `x ∈ M(h)`.
pub fn yoneda(m: &MackeyFunctor, h: usize, x: &[Int]) -> MackeyMorphism {
    let b = m.burnside();
    let free = free_mackey(b, h);
    let cs = (0..b.n_orbits())
        .map(|k| {
            let n = b.basis(h, k).len();
            let cols: Vec<Vec<Int>> = (0..n).map(|beta| m.action(h, k, beta).mat.mul_vec(x)).collect();
            AbHom::new_unchecked(free.level(k).clone(), m.level(k).clone(), Mat::from_cols(m.level(k).n_gens(), &cols))
        })
        .collect();
    MackeyMorphism { src: free, dst: m.clone(), components: cs }
}

/// The element of `M(h)` classifying a morphism out of `free_mackey(h)`.
pub fn yoneda_element(phi: &MackeyMorphism, h: usize) -> Vec<Int> {
    let id = phi.src.burnside().identity(h).terms[0].0;
    phi.components[h].mat.col(id)
}
