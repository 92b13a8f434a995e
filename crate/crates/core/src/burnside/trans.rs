//! Natural transformations between Z-linear functors.
//!
//! A component at orbit `a` is a span matrix `F(a) → F'(a)`. Components
//! built from G-maps or spans of G-sets between the object G-sets are
//! natural whenever the construction is, which [`ZLinTrans::check`] confirms
//! exhaustively.

use std::fmt;

use super::{Burnside, BurnsideHom, GSet, SpanImage, ZLinError, ZLinFunctor};

#[derive(Clone)]
pub struct ZLinTrans {
    pub src: ZLinFunctor,
    pub dst: ZLinFunctor,
    pub comps: Vec<SpanImage>,
}

impl fmt::Debug for ZLinTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} => {:?}", self.src, self.dst)
    }
}

fn add_into(out: &mut SpanImage, key: (usize, usize), h: BurnsideHom) {
    match out.get_mut(&key) {
        Some(v) => *v = v.add(&h),
        None => {
            out.insert(key, h);
        }
    }
}

/// Offsets of the `g`-images of a list of orbits, concatenated.
fn offsets(g: &ZLinFunctor, objs: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(objs.len());
    let mut n = 0;
    for x in objs {
        o.push(n);
        n += g.object(*x).len();
    }
    o
}

fn transpose_image(b: &Burnside, m: &SpanImage) -> SpanImage {
    m.iter().map(|((k, j), h)| ((*j, *k), b.transpose(h))).collect()
}

impl ZLinTrans {
    fn check_ends(src: &ZLinFunctor, dst: &ZLinFunctor) -> Result<(), ZLinError> {
        if src.src() != dst.src() || src.dst() != dst.dst() {
            return Err(ZLinError::Mismatch("transformation between functors of different shape".into()));
        }
        Ok(())
    }

    pub fn identity(f: &ZLinFunctor) -> ZLinTrans {
        let b = f.dst();
        let comps = (0..f.src().n_orbits())
            .map(|a| f.object(a).iter().enumerate().map(|(j, o)| ((j, j), b.identity(*o))).collect())
            .collect();
        ZLinTrans { src: f.clone(), dst: f.clone(), comps }
    }

    /// Components from spans of G-sets `F(a) ← Y_a → F'(a)`.
    pub fn from_gset_spans(
        src: &ZLinFunctor,
        dst: &ZLinFunctor,
        span: impl Fn(usize, &GSet, &GSet) -> (GSet, Vec<usize>, Vec<usize>),
    ) -> Result<ZLinTrans, ZLinError> {
        ZLinTrans::check_ends(src, dst)?;
        let b = src.dst();
        let mut comps = Vec::new();
        for a in 0..src.src().n_orbits() {
            let (x, dx) = src.object_gset(a).ok_or(ZLinError::Mismatch("source is not G-set based".into()))?;
            let (z, dz) = dst.object_gset(a).ok_or(ZLinError::Mismatch("target is not G-set based".into()))?;
            let (y, l1, l2) = span(a, x, z);
            comps.push(b.span_from_gset(&y, &l1, dx, &l2, dz));
        }
        Ok(ZLinTrans { src: src.clone(), dst: dst.clone(), comps })
    }

    /// Components from G-maps `F(a) → F'(a)` given by point images.
    pub fn from_gset_maps(
        src: &ZLinFunctor,
        dst: &ZLinFunctor,
        map: impl Fn(usize, &GSet, &GSet) -> Vec<usize>,
    ) -> Result<ZLinTrans, ZLinError> {
        ZLinTrans::from_gset_spans(src, dst, |a, x, z| (x.clone(), (0..x.len()).collect(), map(a, x, z)))
    }

    /// Componentwise transpose, a transformation `F' ⇒ F`; the inverse when
    /// every component is the graph of a bijection.
    pub fn transpose(&self) -> ZLinTrans {
        let b = self.src.dst();
        let comps = self.comps.iter().map(|m| transpose_image(b, m)).collect();
        ZLinTrans { src: self.dst.clone(), dst: self.src.clone(), comps }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ZLinTrans) -> ZLinTrans {
        let comps = self.comps.iter().zip(&other.comps).map(|(p, q)| self.src.compose_images(p, q)).collect();
        ZLinTrans { src: other.src.clone(), dst: self.dst.clone(), comps }
    }

    /// `Gθ: G∘F ⇒ G∘F'` on formal composites.
    pub fn whisker_after(&self, g: &ZLinFunctor) -> Result<ZLinTrans, ZLinError> {
        let src = ZLinFunctor::then(&self.src, g)?;
        let dst = ZLinFunctor::then(&self.dst, g)?;
        let mut comps = Vec::new();
        for (a, m) in self.comps.iter().enumerate() {
            let (o1, o2) = (offsets(g, &self.src.object(a)), offsets(g, &self.dst.object(a)));
            let mut out = SpanImage::new();
            for ((k, j), h) in m {
                for ((kk, jj), hh) in g.on_hom(h) {
                    add_into(&mut out, (o2[*k] + kk, o1[*j] + jj), hh);
                }
            }
            out.retain(|_, v| !v.is_zero());
            comps.push(out);
        }
        Ok(ZLinTrans { src, dst, comps })
    }

    /// `θE: F∘E ⇒ F'∘E` on formal composites.
    pub fn whisker_before(&self, e: &ZLinFunctor) -> Result<ZLinTrans, ZLinError> {
        let src = ZLinFunctor::then(e, &self.src)?;
        let dst = ZLinFunctor::then(e, &self.dst)?;
        let mut comps = Vec::new();
        for a in 0..e.src().n_orbits() {
            let objs = e.object(a);
            let (o1, o2) = (offsets(&self.src, &objs), offsets(&self.dst, &objs));
            let mut out = SpanImage::new();
            for (i, o) in objs.iter().enumerate() {
                for ((k, j), h) in &self.comps[*o] {
                    out.insert((o2[i] + k, o1[i] + j), h.clone());
                }
            }
            comps.push(out);
        }
        Ok(ZLinTrans { src, dst, comps })
    }

    /// The comparison from the formal composite to the composite computed on
    /// G-sets: `then(f, g) ⇒ chain(f, g)`.
    pub fn composite_to_chain(f: &ZLinFunctor, g: &ZLinFunctor) -> Result<ZLinTrans, ZLinError> {
        let src = ZLinFunctor::then(f, g)?;
        let dst = ZLinFunctor::chain(f, g)?;
        let mid = f.dst();
        let last = g.dst();
        let mut comps = Vec::new();
        for a in 0..f.src().n_orbits() {
            let (x, dx) = f.object_gset(a).expect("G-set based");
            let (_, dz) = dst.object_gset(a).expect("G-set based");
            let objs = f.object(a);
            let offs = offsets(g, &objs);
            let mut out = SpanImage::new();
            for (j, o) in objs.iter().enumerate() {
                let orb = &mid.orbit(*o).gset;
                let e: Vec<usize> = (0..orb.len()).map(|t| mid.point_of(x, dx, j, t)).collect();
                let (y, dy) = g.object_gset(*o).expect("G-set based");
                let leg2 = g.apply_map(orb, x, &e).expect("G-set based");
                let leg1: Vec<usize> = (0..y.len()).collect();
                for ((k, jj), h) in last.span_from_gset(y, &leg1, dy, &leg2, dz) {
                    out.insert((k, offs[j] + jj), h);
                }
            }
            comps.push(out);
        }
        Ok(ZLinTrans { src, dst, comps })
    }

    /// Basis spans `(a, a2, idx)` at which the naturality square fails.
    pub fn naturality_failures(&self) -> Vec<(usize, usize, usize)> {
        let b = self.src.src();
        let n = b.n_orbits();
        let mut bad = Vec::new();
        for a in 0..n {
            for a2 in 0..n {
                for idx in 0..b.basis(a, a2).len() {
                    let lhs = self.src.compose_images(&self.dst.on_basis(a, a2, idx), &self.comps[a]);
                    let rhs = self.src.compose_images(&self.comps[a2], &self.src.on_basis(a, a2, idx));
                    if lhs != rhs {
                        bad.push((a, a2, idx));
                    }
                }
            }
        }
        bad
    }

    pub fn check(&self) -> Result<(), ZLinError> {
        match self.naturality_failures().first() {
            Some(&(a, b, i)) => Err(ZLinError::Mismatch(format!("not natural at span ({a}, {b}, {i})"))),
            None => Ok(()),
        }
    }
}

/// Span-level adjunction data for an injection `i: H → G`, with
/// `ind ⊣ res` and `res ⊣ ind` at once.
#[derive(Clone, Debug)]
pub struct IndRes {
    pub ind: ZLinFunctor,
    pub res: ZLinFunctor,
    /// `id_{B_H} ⇒ res∘ind`, the unit of `ind ⊣ res`.
    pub unit_h: ZLinTrans,
    /// `ind∘res ⇒ id_{B_G}`, the counit of `ind ⊣ res`.
    pub counit_g: ZLinTrans,
}

impl IndRes {
    pub fn new(i: &crate::grp::GrpHom) -> Result<IndRes, ZLinError> {
        let ind = ZLinFunctor::ind(i)?;
        let res = ZLinFunctor::res(i)?;
        let (h, g) = (&i.src, &i.dst);
        let reps = g.left_coset_reps(i.image_mask(h.full_mask()));
        let r0 = reps.iter().position(|r| *r == 0).expect("identity coset");
        let ri = ZLinFunctor::chain(&ind, &res)?;
        let unit = ZLinTrans::from_gset_maps(&ZLinFunctor::identity(ind.src()), &ri, |_, x, _| {
            (0..x.len()).map(|p| r0 * x.len() + p).collect()
        })?;
        let ir = ZLinFunctor::chain(&res, &ind)?;
        let counit = ZLinTrans::from_gset_maps(&ir, &ZLinFunctor::identity(ind.dst()), |_, x, y| {
            let n = y.len();
            (0..x.len()).map(|p| y.act(reps[p / n], p % n)).collect()
        })?;
        let unit_h = ZLinTrans::composite_to_chain(&ind, &res)?.transpose().compose(&unit);
        let counit_g = counit.compose(&ZLinTrans::composite_to_chain(&res, &ind)?);
        Ok(IndRes { ind, res, unit_h, counit_g })
    }

    /// `id_{B_G} ⇒ ind∘res`, the unit of `res ⊣ ind`.
    pub fn unit_g(&self) -> ZLinTrans {
        self.counit_g.transpose()
    }

    /// `res∘ind ⇒ id_{B_H}`, the counit of `res ⊣ ind`.
    pub fn counit_h(&self) -> ZLinTrans {
        self.unit_h.transpose()
    }
}
