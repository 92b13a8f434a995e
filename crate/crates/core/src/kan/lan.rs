//! Left Kan extension by the coend presentation.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use super::{lan_cache, memo, over, precompose, usable, KanError};
use crate::burnside::{Burnside, BurnsideHom, ZLinFunctor};
use crate::mackey::{MackeyFunctor, MackeyMorphism, MackeySource};
use crate::zmod::sparse::SparseMat;
use crate::zmod::{add_mul, simplify_presentation, AbGrp, AbHom, Int, Mat};

/// Generator blocks `(a, j, s) × gens M(a)`: `a` an orbit of the source,
/// `j` a summand of `F(a)`, `s` a basis span between `F(a)_j` and the level.
pub(crate) struct Blocks {
    pub list: Vec<(usize, usize, usize, usize)>,
    pub index: HashMap<(usize, usize, usize), usize>,
    pub total: usize,
}

impl Blocks {
    pub fn new(f: &ZLinFunctor, m: &MackeyFunctor, count: impl Fn(usize) -> usize) -> Blocks {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        let mut total = 0;
        for a in 0..f.src().n_orbits() {
            let n = m.level(a).n_gens();
            for (j, o) in f.object(a).iter().enumerate() {
                for s in 0..count(*o) {
                    list.push((a, j, s, total));
                    index.insert((a, j, s), total);
                    total += n;
                }
            }
        }
        Blocks { list, index, total }
    }

    pub fn off(&self, a: usize, j: usize, s: usize) -> usize {
        self.index[&(a, j, s)]
    }

    /// Block containing raw generator `p`, and the position inside it.
    pub fn locate(&self, p: usize) -> ((usize, usize, usize), usize) {
        let k = self.list.partition_point(|b| b.3 <= p) - 1;
        let (a, j, s, off) = self.list[k];
        ((a, j, s), p - off)
    }
}

pub(crate) fn sparse_col(v: &Mat, c: usize) -> Vec<(usize, Int)> {
    (0..v.rows()).filter_map(|i| {
        let x = v.get(i, c);
        if x.is_zero() {
            None
        } else {
            Some((i, x.clone()))
        }
    })
    .collect()
}

/// `to · w` for a sparse vector `w` of raw coordinates.
fn apply_to(to: &Mat, w: &BTreeMap<usize, Int>) -> Vec<Int> {
    let mut out = vec![Int::zero(); to.rows()];
    for (p, c) in w {
        for (r, o) in out.iter_mut().enumerate() {
            let t = to.get(r, *p);
            if !t.is_zero() {
                add_mul(o, t, c);
            }
        }
    }
    out
}

fn push(w: &mut BTreeMap<usize, Int>, p: usize, c: &Int) {
    let e = w.entry(p).or_insert_with(Int::zero);
    *e += c;
}

pub(crate) struct LanLevel {
    pub blocks: Blocks,
    pub grp: AbGrp,
    pub to: Mat,
    pub from: Mat,
}

pub struct LanData {
    f: ZLinFunctor,
    m: MackeyFunctor,
    levels: Vec<OnceLock<LanLevel>>,
}

impl LanData {
    fn target(&self) -> &Burnside {
        self.f.dst()
    }

    pub(crate) fn level(&self, b: usize) -> &LanLevel {
        self.levels[b].get_or_init(|| self.compute(b))
    }

    fn compute(&self, b: usize) -> LanLevel {
        let (f, m) = (&self.f, &self.m);
        let tb = self.target();
        let blocks = Blocks::new(f, m, |o| tb.basis(o, b).len());
        let mut cols: Vec<BTreeMap<usize, Int>> = Vec::new();
        for &(a, _, _, off) in &blocks.list {
            let rels = m.level(a).rels();
            for c in 0..rels.cols() {
                let mut w = BTreeMap::new();
                for r in 0..rels.rows() {
                    push(&mut w, off + r, rels.get(r, c));
                }
                cols.push(w);
            }
        }
        let sb = f.src();
        let n = sb.n_orbits();
        for a in 0..n {
            let na = m.level(a).n_gens();
            if na == 0 {
                continue;
            }
            for a2 in 0..n {
                let id = if a == a2 { Some(sb.identity(a).terms[0].0) } else { None };
                for idx in sb.generating(a, a2) {
                    if Some(idx) == id {
                        continue;
                    }
                    let fphi = f.on_basis(a, a2, idx);
                    let mphi = m.action(a, a2, idx).mat;
                    let mut by_row: HashMap<usize, Vec<(usize, &BurnsideHom)>> = HashMap::new();
                    for ((k, j), h) in fphi.iter() {
                        by_row.entry(*k).or_default().push((*j, h));
                    }
                    for (j2, o2) in f.object(a2).iter().enumerate() {
                        for beta2 in 0..tb.basis(*o2, b).len() {
                            let bh = BurnsideHom::basis(*o2, b, beta2);
                            let mut comps = Vec::new();
                            for (j, h) in by_row.get(&j2).map(|v| v.as_slice()).unwrap_or(&[]) {
                                comps.push((*j, tb.compose(&bh, h).expect("matching orbits")));
                            }
                            let off2 = blocks.off(a2, j2, beta2);
                            for g in 0..na {
                                let mut w = BTreeMap::new();
                                for (j, c) in &comps {
                                    for (gamma, k) in &c.terms {
                                        push(&mut w, blocks.off(a, *j, *gamma) + g, &Int::from(*k));
                                    }
                                }
                                for r in 0..mphi.rows() {
                                    push(&mut w, off2 + r, &-mphi.get(r, g));
                                }
                                w.retain(|_, v| !v.is_zero());
                                if !w.is_empty() {
                                    cols.push(w);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut s = SparseMat::new(blocks.total, cols.len());
        for (c, w) in cols.iter().enumerate() {
            for (r, v) in w {
                s.add(*r, c, v);
            }
        }
        let simp = simplify_presentation(blocks.total, s);
        LanLevel { blocks, grp: simp.grp, to: simp.to, from: simp.from }
    }

    /// Map between levels induced by a raw map given per generator.
    fn induced(
        &self,
        src: &LanLevel,
        dst: &LanLevel,
        raw: impl Fn((usize, usize, usize), usize, &mut BTreeMap<usize, Int>, &Int),
    ) -> Mat {
        let mut out = Mat::zeros(dst.grp.n_gens(), src.grp.n_gens());
        for c in 0..src.grp.n_gens() {
            let mut w = BTreeMap::new();
            for (p, v) in sparse_col(&src.from, c) {
                let (blk, g) = src.blocks.locate(p);
                raw(blk, g, &mut w, &v);
            }
            for (r, x) in apply_to(&dst.to, &w).into_iter().enumerate() {
                out.set(r, c, x);
            }
        }
        out
    }
}

struct LanSource(Arc<LanData>);

impl MackeySource for LanSource {
    fn level(&self, b: usize) -> AbGrp {
        self.0.level(b).grp.clone()
    }

    fn action(&self, b: usize, b2: usize, idx: usize) -> AbHom {
        let d = &self.0;
        let tb = d.target();
        let (l1, l2) = (d.level(b), d.level(b2));
        let psi = BurnsideHom::basis(b, b2, idx);
        let objs: Vec<Vec<usize>> = (0..d.f.src().n_orbits()).map(|a| d.f.object(a)).collect();
        let mat = d.induced(l1, l2, |(a, j, beta), g, w, v| {
            let o = objs[a][j];
            let c = tb.compose(&psi, &BurnsideHom::basis(o, b, beta)).expect("matching orbits");
            for (gamma, k) in &c.terms {
                let mut x = v.clone();
                x *= &Int::from(*k);
                push(w, l2.blocks.off(a, j, *gamma) + g, &x);
            }
        });
        AbHom::new_unchecked(l1.grp.clone(), l2.grp.clone(), mat)
    }
}

/// `Lan_F M` with its adjunction data against `F^*`.
#[derive(Clone)]
pub struct Lan {
    pub functor: ZLinFunctor,
    pub base: MackeyFunctor,
    pub obj: MackeyFunctor,
    data: Arc<LanData>,
}

impl Lan {
    pub fn of(f: &ZLinFunctor, m: &MackeyFunctor) -> Result<Lan, KanError> {
        usable(f)?;
        over(f, m, false)?;
        Ok(memo(lan_cache(), f, m, || {
            let n = f.dst().n_orbits();
            let data = Arc::new(LanData { f: f.clone(), m: m.clone(), levels: (0..n).map(|_| OnceLock::new()).collect() });
            let obj = MackeyFunctor::new(f.dst(), format!("lan({})", m.name()), LanSource(data.clone()));
            Lan { functor: f.clone(), base: m.clone(), obj, data }
        }))
    }

    /// Size of the raw presentation at level `b`.
    pub fn raw_size(&self, b: usize) -> usize {
        self.data.level(b).blocks.total
    }

    /// `η: M → F^* Lan_F M`, sending `g ∈ M(a)` to `id_{F(a)_j} ⊗ g` in
    /// each summand.
    pub fn unit(&self) -> Result<MackeyMorphism, KanError> {
        let f = &self.functor;
        let tb = f.dst();
        let target = precompose(f, &self.obj)?;
        let mut cs = Vec::new();
        for a in 0..f.src().n_orbits() {
            let na = self.base.level(a).n_gens();
            let mut blocks = Vec::new();
            for (j, o) in f.object(a).iter().enumerate() {
                let lv = self.data.level(*o);
                let off = lv.blocks.off(a, j, tb.identity(*o).terms[0].0);
                blocks.push(lv.to.submatrix(0, lv.to.rows(), off, off + na));
            }
            let refs: Vec<&Mat> = blocks.iter().collect();
            let mat = Mat::vstack_cols(na, &refs);
            cs.push(AbHom::new_unchecked(self.base.level(a).clone(), target.level(a).clone(), mat));
        }
        Ok(MackeyMorphism { src: self.base.clone(), dst: target, components: cs })
    }

    /// The map `Lan_F M → N` adjunct to `ψ: M → F^*N`.
    pub fn adjunct(&self, n: &MackeyFunctor, psi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        let f = &self.functor;
        let sb = f.src();
        let objs: Vec<Vec<usize>> = (0..sb.n_orbits()).map(|a| f.object(a)).collect();
        // row offsets of each summand inside F^*N(a)
        let offs: Vec<Vec<usize>> = objs
            .iter()
            .map(|os| {
                let mut v = Vec::new();
                let mut t = 0;
                for o in os {
                    v.push(t);
                    t += n.level(*o).n_gens();
                }
                v
            })
            .collect();
        let mut cs = Vec::new();
        for b in 0..f.dst().n_orbits() {
            let lv = self.data.level(b);
            let nb = n.level(b).n_gens();
            let mut mat = Mat::zeros(nb, lv.grp.n_gens());
            let mut cache: HashMap<(usize, usize, usize), Mat> = HashMap::new();
            for c in 0..lv.grp.n_gens() {
                let mut col = vec![Int::zero(); nb];
                for (p, v) in sparse_col(&lv.from, c) {
                    let ((a, j, beta), g) = lv.blocks.locate(p);
                    let blk = cache.entry((a, j, beta)).or_insert_with(|| {
                        let o = objs[a][j];
                        let nj = n.level(o).n_gens();
                        let pj = psi.components[a].mat.submatrix(offs[a][j], offs[a][j] + nj, 0, psi.components[a].mat.cols());
                        n.action(o, b, beta).mat.mul(&pj)
                    });
                    for (r, x) in col.iter_mut().enumerate() {
                        add_mul(x, blk.get(r, g), &v);
                    }
                }
                for (r, x) in col.into_iter().enumerate() {
                    mat.set(r, c, x);
                }
            }
            cs.push(AbHom::new_unchecked(lv.grp.clone(), n.level(b).clone(), mat));
        }
        Ok(MackeyMorphism::new(&self.obj, n, cs)?)
    }

    /// `ε: Lan_F F^*N → N`.
    pub fn counit(f: &ZLinFunctor, n: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        let pn = precompose(f, n)?;
        Lan::of(f, &pn)?.adjunct(n, &MackeyMorphism::identity(&pn))
    }

    /// `Lan_F φ: Lan_F M → Lan_F M'`.
    pub fn map(&self, target: &Lan, phi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        if !self.functor.same(&target.functor) {
            return Err(KanError::Mismatch("extensions along different functors".into()));
        }
        let mut cs = Vec::new();
        for b in 0..self.functor.dst().n_orbits() {
            let (l1, l2) = (self.data.level(b), target.data.level(b));
            let mat = self.data.induced(l1, l2, |(a, j, beta), g, w, v| {
                let pa = &phi.components[a].mat;
                let off = l2.blocks.off(a, j, beta);
                for r in 0..pa.rows() {
                    let x = pa.get(r, g);
                    if !x.is_zero() {
                        let mut y = x.clone();
                        y *= v;
                        push(w, off + r, &y);
                    }
                }
            });
            cs.push(AbHom::new_unchecked(l1.grp.clone(), l2.grp.clone(), mat));
        }
        Ok(MackeyMorphism::new(&self.obj, &target.obj, cs)?)
    }
}
