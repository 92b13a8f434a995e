//! Z-linear functors between Burnside categories.
//!
//! Objects go to formal sums of orbits. Every built-in functor is computed
//! from explicit G-sets: an orbit `a` is sent to a G-set `X_a` decomposed
//! into orbits, and a basis span `G/H ← G/M → G/K` to the G-set `Y` over
//! `X_H × X_K` obtained by applying the same construction to the middle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Burnside, BurnsideHom, GSet, OrbitDecomp, Summand};
use crate::grp::GrpHom;

/// Matrix of a span image: `(k, j)` is the span from summand `j` of the
/// source object to summand `k` of the target object.
pub type SpanImage = BTreeMap<(usize, usize), BurnsideHom>;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ZLinError {
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("functor does not preserve identities at orbit {0}")]
    Identity(usize),
    #[error("functor does not preserve the composite of spans {0:?}")]
    Composition((usize, usize, usize, usize, usize)),
    #[error("functor has not been verified")]
    Unverified,
    #[error("incompatible categories: {0}")]
    Mismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorStatus {
    /// Built-in construction; composition preservation is covered by the
    /// exhaustive test suite.
    Trusted,
    Verified,
    Unchecked,
}

#[derive(Clone)]
pub enum FunctorKind {
    Identity,
    /// Induction along an injection `H → G`: `B_H → B_G`.
    Ind(GrpHom),
    /// Restriction along an injection `H → G`: `B_G → B_H`.
    Res(GrpHom),
    /// Inflation along a surjection `G → Q`: `B_Q → B_G`.
    Infl(GrpHom),
    /// Product with a fixed G-set: `B_G → B_G`.
    Times(GSet),
    /// Restriction of actions along an arbitrary homomorphism `G → Q`:
    /// `B_Q → B_G`.
    Pull(GrpHom),
    /// First functor, then the second, evaluated on G-sets.
    Chain(ZLinFunctor, ZLinFunctor),
    /// First functor, then the second.
    Composite(ZLinFunctor, ZLinFunctor),
    /// Tabulated object map and basis images.
    Explicit {
        objects: Vec<Vec<usize>>,
        spans: HashMap<(usize, usize, usize), SpanImage>,
    },
}

impl fmt::Debug for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorKind::Identity => write!(f, "id"),
            FunctorKind::Ind(i) => write!(f, "ind[{}→{}]", i.src.label(), i.dst.label()),
            FunctorKind::Res(i) => write!(f, "res[{}→{}]", i.src.label(), i.dst.label()),
            FunctorKind::Infl(q) => write!(f, "infl[{}→{}]", q.src.label(), q.dst.label()),
            FunctorKind::Times(s) => write!(f, "times[{} pts]", s.len()),
            FunctorKind::Pull(q) => write!(f, "pull[{}→{}]", q.src.label(), q.dst.label()),
            FunctorKind::Chain(a, b) => write!(f, "({:?} · {:?})", a.kind(), b.kind()),
            FunctorKind::Composite(a, b) => write!(f, "({:?} ; {:?})", a.kind(), b.kind()),
            FunctorKind::Explicit { .. } => write!(f, "explicit"),
        }
    }
}

struct ObjData {
    gset: Option<GSet>,
    dec: OrbitDecomp,
}

struct Inner {
    src: Burnside,
    dst: Burnside,
    kind: FunctorKind,
    status: Mutex<FunctorStatus>,
    objects: Vec<OnceLock<ObjData>>,
    spans: Mutex<HashMap<(usize, usize, usize), Arc<SpanImage>>>,
}

#[derive(Clone)]
pub struct ZLinFunctor(Arc<Inner>);

impl fmt::Debug for ZLinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZLinFunctor({:?})", self.0.kind)
    }
}

impl ZLinFunctor {
    fn build(src: Burnside, dst: Burnside, kind: FunctorKind, status: FunctorStatus) -> ZLinFunctor {
        let n = src.n_orbits();
        ZLinFunctor(Arc::new(Inner {
            src,
            dst,
            kind,
            status: Mutex::new(status),
            objects: (0..n).map(|_| OnceLock::new()).collect(),
            spans: Mutex::new(HashMap::new()),
        }))
    }

    pub fn identity(b: &Burnside) -> ZLinFunctor {
        ZLinFunctor::build(b.clone(), b.clone(), FunctorKind::Identity, FunctorStatus::Trusted)
    }

    pub fn ind(i: &GrpHom) -> Result<ZLinFunctor, ZLinError> {
        if !i.is_injective() {
            return Err(ZLinError::NotInjective);
        }
        Ok(ZLinFunctor::build(
            Burnside::of(&i.src),
            Burnside::of(&i.dst),
            FunctorKind::Ind(i.clone()),
            FunctorStatus::Trusted,
        ))
    }

    pub fn res(i: &GrpHom) -> Result<ZLinFunctor, ZLinError> {
        if !i.is_injective() {
            return Err(ZLinError::NotInjective);
        }
        Ok(ZLinFunctor::build(
            Burnside::of(&i.dst),
            Burnside::of(&i.src),
            FunctorKind::Res(i.clone()),
            FunctorStatus::Trusted,
        ))
    }

    pub fn infl(q: &GrpHom) -> Result<ZLinFunctor, ZLinError> {
        if !q.is_surjective() {
            return Err(ZLinError::NotSurjective);
        }
        Ok(ZLinFunctor::build(
            Burnside::of(&q.dst),
            Burnside::of(&q.src),
            FunctorKind::Infl(q.clone()),
            FunctorStatus::Trusted,
        ))
    }

    pub fn times(s: &GSet) -> ZLinFunctor {
        let b = Burnside::of(&s.group);
        ZLinFunctor::build(b.clone(), b, FunctorKind::Times(s.clone()), FunctorStatus::Trusted)
    }

    /// Pullback of actions along any homomorphism `f: G → Q`, `B_Q → B_G`.
    pub fn pull(f: &GrpHom) -> ZLinFunctor {
        ZLinFunctor::build(
            Burnside::of(&f.dst),
            Burnside::of(&f.src),
            FunctorKind::Pull(f.clone()),
            FunctorStatus::Trusted,
        )
    }

    /// `second ∘ first` computed on G-sets; both must be G-set based.
    pub fn chain(first: &ZLinFunctor, second: &ZLinFunctor) -> Result<ZLinFunctor, ZLinError> {
        if first.dst() != second.src() {
            return Err(ZLinError::Mismatch("composite of functors with different middle categories".into()));
        }
        if !first.is_gset_based() || !second.is_gset_based() {
            return Err(ZLinError::Mismatch("chain needs G-set based functors".into()));
        }
        Ok(ZLinFunctor::build(
            first.src().clone(),
            second.dst().clone(),
            FunctorKind::Chain(first.clone(), second.clone()),
            FunctorStatus::Trusted,
        ))
    }

    /// `second ∘ first`.
    pub fn then(first: &ZLinFunctor, second: &ZLinFunctor) -> Result<ZLinFunctor, ZLinError> {
        if first.dst() != second.src() {
            return Err(ZLinError::Mismatch("composite of functors with different middle categories".into()));
        }
        let status = match (first.status(), second.status()) {
            (FunctorStatus::Unchecked, _) | (_, FunctorStatus::Unchecked) => FunctorStatus::Unchecked,
            _ => FunctorStatus::Trusted,
        };
        Ok(ZLinFunctor::build(
            first.src().clone(),
            second.dst().clone(),
            FunctorKind::Composite(first.clone(), second.clone()),
            status,
        ))
    }

    /// A tabulated functor; must pass [`verify`](Self::verify) before use.
    pub fn explicit(
        src: &Burnside,
        dst: &Burnside,
        objects: Vec<Vec<usize>>,
        spans: HashMap<(usize, usize, usize), SpanImage>,
    ) -> ZLinFunctor {
        ZLinFunctor::build(src.clone(), dst.clone(), FunctorKind::Explicit { objects, spans }, FunctorStatus::Unchecked)
    }

    pub fn src(&self) -> &Burnside {
        &self.0.src
    }

    pub fn dst(&self) -> &Burnside {
        &self.0.dst
    }

    pub fn kind(&self) -> &FunctorKind {
        &self.0.kind
    }

    pub fn status(&self) -> FunctorStatus {
        *self.0.status.lock().unwrap()
    }

    pub fn is_usable(&self) -> bool {
        self.status() != FunctorStatus::Unchecked
    }

    /// Stable identity of this functor object.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as *const () as usize
    }

    pub fn same(&self, other: &ZLinFunctor) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_gset_based(&self) -> bool {
        !matches!(self.0.kind, FunctorKind::Composite(..) | FunctorKind::Explicit { .. })
    }

    /// The underlying construction on an arbitrary G-set of the source group.
    pub fn apply_gset(&self, x: &GSet) -> Option<GSet> {
        Some(match &self.0.kind {
            FunctorKind::Identity => x.clone(),
            FunctorKind::Ind(i) => x.induce(i),
            FunctorKind::Res(i) | FunctorKind::Infl(i) | FunctorKind::Pull(i) => x.restrict(i),
            FunctorKind::Times(s) => x.product(s),
            FunctorKind::Chain(f, g) => g.apply_gset(&f.apply_gset(x)?)?,
            FunctorKind::Composite(..) | FunctorKind::Explicit { .. } => return None,
        })
    }

    /// The construction on a G-map `f: x → y` given by point images.
    pub fn apply_map(&self, x: &GSet, y: &GSet, f: &[usize]) -> Option<Vec<usize>> {
        Some(match &self.0.kind {
            FunctorKind::Identity | FunctorKind::Res(_) | FunctorKind::Infl(_) | FunctorKind::Pull(_) => f.to_vec(),
            FunctorKind::Ind(i) => {
                let r = i.dst.order() / i.src.order();
                let (n, m) = (x.len(), y.len());
                (0..r * n).map(|p| (p / n) * m + f[p % n]).collect()
            }
            FunctorKind::Times(s) => {
                let k = s.len();
                (0..x.len() * k).map(|p| f[p / k] * k + p % k).collect()
            }
            FunctorKind::Chain(a, b) => {
                let fx = a.apply_gset(x)?;
                let fy = a.apply_gset(y)?;
                b.apply_map(&fx, &fy, &a.apply_map(x, y, f)?)?
            }
            FunctorKind::Composite(..) | FunctorKind::Explicit { .. } => return None,
        })
    }

    fn obj_data(&self, a: usize) -> &ObjData {
        self.0.objects[a].get_or_init(|| self.compute_object(a))
    }

    fn compute_object(&self, a: usize) -> ObjData {
        let src = &self.0.src;
        let dst = &self.0.dst;
        let gset = self.apply_gset(&src.orbit(a).gset);
        match gset {
            Some(x) => {
                let dec = dst.decompose(&x);
                ObjData { gset: Some(x), dec }
            }
            None => {
                let orbits: Vec<usize> = match &self.0.kind {
                    FunctorKind::Composite(f, g) => {
                        f.object(a).iter().flat_map(|o| g.object(*o)).collect()
                    }
                    FunctorKind::Explicit { objects, .. } => objects[a].clone(),
                    _ => unreachable!(),
                };
                let summands = orbits
                    .into_iter()
                    .map(|o| Summand { orbit: o, concrete: dst.orbit(o).rep, ident: 0, base: 0 })
                    .collect();
                ObjData { gset: None, dec: OrbitDecomp { summands, loc: Vec::new() } }
            }
        }
    }

    /// Orbit list of `F(a)`.
    pub fn object(&self, a: usize) -> Vec<usize> {
        self.obj_data(a).dec.orbit_list()
    }

    /// Explicit G-set realizing `F(a)`, when the functor is G-set based.
    pub fn object_gset(&self, a: usize) -> Option<(&GSet, &OrbitDecomp)> {
        let d = self.obj_data(a);
        d.gset.as_ref().map(|g| (g, &d.dec))
    }

    pub fn summands(&self, a: usize) -> &[Summand] {
        &self.obj_data(a).dec.summands
    }

    /// Image of basis span `idx` of `B(a, a2)`.
    pub fn on_basis(&self, a: usize, a2: usize, idx: usize) -> Arc<SpanImage> {
        let key = (a, a2, idx);
        if let Some(r) = self.0.spans.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = Arc::new(self.compute_span(a, a2, idx));
        self.0.spans.lock().unwrap().insert(key, r.clone());
        r
    }

    fn compute_span(&self, a: usize, a2: usize, idx: usize) -> SpanImage {
        let src = &self.0.src;
        match &self.0.kind {
            FunctorKind::Identity => {
                let mut m = SpanImage::new();
                m.insert((0, 0), BurnsideHom::basis(a, a2, idx));
                return m;
            }
            FunctorKind::Composite(f, g) => return self.composite_span(f, g, a, a2, idx),
            FunctorKind::Explicit { spans, .. } => {
                return spans.get(&(a, a2, idx)).cloned().unwrap_or_default();
            }
            _ => {}
        }
        let (y0, l1, l2) = src.to_gset_span(a, a2, idx);
        let y = self.apply_gset(&y0).expect("G-set based");
        let l1 = self.apply_map(&y0, &src.orbit(a).gset, &l1).expect("G-set based");
        let l2 = self.apply_map(&y0, &src.orbit(a2).gset, &l2).expect("G-set based");
        let d1 = &self.obj_data(a).dec;
        let d2 = &self.obj_data(a2).dec;
        self.0.dst.span_from_gset(&y, &l1, d1, &l2, d2)
    }

    fn composite_span(&self, f: &ZLinFunctor, g: &ZLinFunctor, a: usize, a2: usize, idx: usize) -> SpanImage {
        let fo1 = f.object(a);
        let fo2 = f.object(a2);
        let off = |objs: &[usize]| -> Vec<usize> {
            let mut o = Vec::new();
            let mut n = 0;
            for x in objs {
                o.push(n);
                n += g.object(*x).len();
            }
            o
        };
        let (off1, off2) = (off(&fo1), off(&fo2));
        let mut out = SpanImage::new();
        for ((k, j), h) in f.on_basis(a, a2, idx).iter() {
            let img = g.on_hom(h);
            for ((kk, jj), hh) in img {
                let key = (off2[*k] + kk, off1[*j] + jj);
                match out.get_mut(&key) {
                    Some(v) => *v = v.add(&hh),
                    None => {
                        out.insert(key, hh);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Image of an arbitrary linear combination of spans.
    pub fn on_hom(&self, h: &BurnsideHom) -> SpanImage {
        let mut out = SpanImage::new();
        for (i, c) in &h.terms {
            for (key, v) in self.on_basis(h.src, h.dst, *i).iter() {
                let v = v.scale(*c);
                match out.get_mut(key) {
                    Some(w) => *w = w.add(&v),
                    None => {
                        out.insert(*key, v);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Matrix product of span images between formal sums: `ψ · φ`.
    pub fn compose_images(&self, psi: &SpanImage, phi: &SpanImage) -> SpanImage {
        let dst = &self.0.dst;
        let mut out = SpanImage::new();
        for ((k, j), p) in phi {
            for ((l, k2), q) in psi.range((0, *k)..) {
                if k2 != k {
                    continue;
                }
                let c = dst.compose(q, p).expect("matching summands");
                match out.get_mut(&(*l, *j)) {
                    Some(w) => *w = w.add(&c),
                    None => {
                        out.insert((*l, *j), c);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Exhaustive check of identities and all basis composites.
    pub fn check(&self) -> Result<(), ZLinError> {
        let src = &self.0.src;
        let dst = &self.0.dst;
        let n = src.n_orbits();
        for a in 0..n {
            let id = src.identity(a);
            let img = self.on_hom(&id);
            let objs = self.object(a);
            let ok = img.len() == objs.len()
                && objs.iter().enumerate().all(|(j, o)| img.get(&(j, j)) == Some(&dst.identity(*o)));
            if !ok {
                return Err(ZLinError::Identity(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let bab = src.basis(a, b);
                for c in 0..n {
                    let bbc = src.basis(b, c);
                    for i in 0..bab.len() {
                        let fi = self.on_basis(a, b, i);
                        for j in 0..bbc.len() {
                            let comp = src.compose_basis(a, b, c, i, j);
                            let lhs = self.on_hom(&comp);
                            let rhs = self.compose_images(&self.on_basis(b, c, j), &fi);
                            if lhs != rhs {
                                return Err(ZLinError::Composition((a, b, c, i, j)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Runs [`check`](Self::check) and marks the functor verified on success.
    pub fn verify(&self) -> Result<(), ZLinError> {
        self.check()?;
        let mut s = self.0.status.lock().unwrap();
        if *s == FunctorStatus::Unchecked {
            *s = FunctorStatus::Verified;
        }
        Ok(())
    }
}
