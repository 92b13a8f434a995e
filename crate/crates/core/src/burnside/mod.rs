//! The Z-linear Burnside category of a finite group.
//!
//! Objects are the orbits `G/H`, one per conjugacy class of subgroups
//! (indexed like the lattice classes). A concrete span `(M, a, b)` relative
//! to orbits `(H, K)` is `G/H ← G/M → G/K` with legs `xM ↦ xaH` and
//! `xM ↦ xbK`; it needs `M ⊆ aHa⁻¹ ∩ bKb⁻¹`. Iso classes form the hom bases.
//! For each double coset rep `d ∈ H\G/K` the basis spans are `(L, e, d)`,
//! `L` running over conjugacy classes of subgroups of `S_d = H ∩ dKd⁻¹`
//! under `S_d`.

mod functor;
mod gset;
mod trans;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::grp::{mask_elems, mask_order, FinGroup, Mask};

pub use functor::{FunctorKind, FunctorStatus, SpanImage, ZLinError, ZLinFunctor};
pub use gset::{GSet, GSetError};
pub use trans::{IndRes, ZLinTrans};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum BurnsideError {
    #[error("cannot compose: {0}")]
    Compose(String),
}

/// An orbit object `G/R` with its coset data.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub rep: Mask,
    pub label: String,
    /// Minimal coset representatives, sorted.
    pub cosets: Vec<usize>,
    /// Element → index of its coset.
    pub coset_of: Vec<u32>,
    pub gset: GSet,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.cosets.len()
    }

    pub fn subgroup_order(&self) -> usize {
        mask_order(self.rep)
    }
}

/// Canonical basis span `(middle, a, b)` between orbits `src` and `dst`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SpanBasisElt {
    pub src: usize,
    pub dst: usize,
    pub middle: Mask,
    pub a: usize,
    pub b: usize,
}

/// Basis of `B_G(G/H, G/K)` with canonicalization tables.
#[derive(Debug)]
pub struct HomBasis {
    pub src: usize,
    pub dst: usize,
    pub elts: Vec<SpanBasisElt>,
    /// Double coset representatives, sorted.
    pub dreps: Vec<usize>,
    /// For coset pair `(α, β)`: (double coset index, g) with g·(α, β) = (H, dK).
    pair: Vec<(u16, u8)>,
    /// Per double coset: any subgroup of `S_d` → basis index.
    lookup: Vec<HashMap<Mask, u32>>,
    n_dst_cosets: usize,
}

impl HomBasis {
    pub fn len(&self) -> usize {
        self.elts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elts.is_empty()
    }
}

/// A Z-linear combination of basis spans.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BurnsideHom {
    pub src: usize,
    pub dst: usize,
    /// Sorted by basis index; no zero coefficients.
    pub terms: Vec<(usize, i64)>,
}

impl fmt::Debug for BurnsideHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}→{}]{:?}", self.src, self.dst, self.terms)
    }
}

impl BurnsideHom {
    pub fn zero(src: usize, dst: usize) -> BurnsideHom {
        BurnsideHom { src, dst, terms: Vec::new() }
    }

    pub fn basis(src: usize, dst: usize, idx: usize) -> BurnsideHom {
        BurnsideHom { src, dst, terms: vec![(idx, 1)] }
    }

    pub fn from_map(src: usize, dst: usize, m: BTreeMap<usize, i64>) -> BurnsideHom {
        BurnsideHom { src, dst, terms: m.into_iter().filter(|(_, c)| *c != 0).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BurnsideHom) -> BurnsideHom {
        assert_eq!((self.src, self.dst), (other.src, other.dst), "adding spans with different ends");
        let mut m: BTreeMap<usize, i64> = self.terms.iter().copied().collect();
        for (k, c) in &other.terms {
            let e = m.entry(*k).or_insert(0);
            *e = e.checked_add(*c).expect("span coefficient overflow");
        }
        BurnsideHom::from_map(self.src, self.dst, m)
    }

    pub fn scale(&self, c: i64) -> BurnsideHom {
        let m = self.terms.iter().map(|(k, v)| (*k, v.checked_mul(c).expect("span coefficient overflow"))).collect();
        BurnsideHom::from_map(self.src, self.dst, m)
    }

    pub fn neg(&self) -> BurnsideHom {
        self.scale(-1)
    }

    pub fn coeff(&self, idx: usize) -> i64 {
        self.terms.binary_search_by_key(&idx, |t| t.0).map(|p| self.terms[p].1).unwrap_or(0)
    }
}

/// One orbit of a decomposed G-set.
#[derive(Clone, Debug)]
pub struct Summand {
    /// Orbit object index.
    pub orbit: usize,
    /// Stabilizer of the base point.
    pub concrete: Mask,
    /// `concrete = ident · rep · ident⁻¹`.
    pub ident: usize,
    pub base: usize,
}

/// Decomposition of a G-set into orbit objects. The orbit of `base_j` is
/// identified with `G/R_j` by `yR_j ↦ y·ident_j⁻¹·base_j`.
#[derive(Clone, Debug)]
pub struct OrbitDecomp {
    pub summands: Vec<Summand>,
    /// Point → (summand, coset index in `G/R_j`).
    pub loc: Vec<(u32, u32)>,
}

impl OrbitDecomp {
    pub fn orbit_list(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.orbit).collect()
    }
}

struct Inner {
    group: FinGroup,
    orbits: Vec<Orbit>,
    bases: Mutex<HashMap<(usize, usize), Arc<HomBasis>>>,
    compose_cache: Mutex<HashMap<(usize, usize, usize, usize, usize), Arc<BurnsideHom>>>,
}

/// The Burnside category of a group, with memoized bases and composites.
#[derive(Clone)]
pub struct Burnside(Arc<Inner>);

impl fmt::Debug for Burnside {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Burnside({:?})", self.0.group)
    }
}

impl PartialEq for Burnside {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.group == other.0.group
    }
}

impl Eq for Burnside {}

fn registry() -> &'static Mutex<Vec<Burnside>> {
    static REG: OnceLock<Mutex<Vec<Burnside>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

impl Burnside {
    /// The Burnside category of `g`; shared per group so caches are reused.
    pub fn of(g: &FinGroup) -> Burnside {
        let mut reg = registry().lock().unwrap();
        if let Some(b) = reg.iter().find(|b| b.0.group == *g) {
            return b.clone();
        }
        let b = Burnside::build(g);
        reg.push(b.clone());
        b
    }

    fn build(g: &FinGroup) -> Burnside {
        let lat = g.lattice();
        let orbits = lat
            .classes
            .iter()
            .map(|c| {
                let cosets = g.left_coset_reps(c.rep);
                let mut coset_of = vec![0u32; g.order()];
                for (i, r) in cosets.iter().enumerate() {
                    for x in mask_elems(c.rep) {
                        coset_of[g.mul(*r, x)] = i as u32;
                    }
                }
                let gset = GSet::cosets(g, c.rep);
                Orbit { rep: c.rep, label: g.subgroup_label(c.rep), cosets, coset_of, gset }
            })
            .collect();
        Burnside(Arc::new(Inner {
            group: g.clone(),
            orbits,
            bases: Mutex::new(HashMap::new()),
            compose_cache: Mutex::new(HashMap::new()),
        }))
    }

    pub fn group(&self) -> &FinGroup {
        &self.0.group
    }

    pub fn n_orbits(&self) -> usize {
        self.0.orbits.len()
    }

    pub fn orbit(&self, i: usize) -> &Orbit {
        &self.0.orbits[i]
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.0.orbits
    }

    /// Index of the orbit `G/G`.
    pub fn top(&self) -> usize {
        self.n_orbits() - 1
    }

    /// Index of the free orbit `G/e`.
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn orbit_of_subgroup(&self, s: Mask) -> usize {
        self.group().lattice().class_of(s)
    }

    pub fn basis(&self, h: usize, k: usize) -> Arc<HomBasis> {
        if let Some(b) = self.0.bases.lock().unwrap().get(&(h, k)) {
            return b.clone();
        }
        let b = Arc::new(self.build_basis(h, k));
        self.0.bases.lock().unwrap().insert((h, k), b.clone());
        b
    }

    fn build_basis(&self, hi: usize, ki: usize) -> HomBasis {
        let g = self.group();
        let (ho, ko) = (&self.0.orbits[hi], &self.0.orbits[ki]);
        let (h, k) = (ho.rep, ko.rep);
        let dreps = g.double_coset_reps(h, k);
        let nk = ko.size();
        let mut pair = vec![(u16::MAX, 0u8); ho.size() * nk];
        for (di, d) in dreps.iter().enumerate() {
            for x in g.elements() {
                let a = ho.coset_of[x] as usize;
                let b = ko.coset_of[g.mul(x, *d)] as usize;
                let slot = &mut pair[a * nk + b];
                if slot.0 == u16::MAX {
                    *slot = (di as u16, g.inv(x) as u8);
                }
            }
        }
        let mut elts = Vec::new();
        let mut lookup = Vec::new();
        for d in &dreps {
            let s = h & g.conjugate_mask(*d, k);
            // S-classes of subgroups of S, rep = least mask in the class
            let subs: Vec<Mask> = g.lattice().all_subgroups().filter(|l| l & !s == 0).collect();
            let mut table: HashMap<Mask, u32> = HashMap::new();
            let mut reps: Vec<Mask> = Vec::new();
            let mut sorted = subs.clone();
            sorted.sort_by_key(|m| (mask_order(*m), *m));
            let mut class_of: HashMap<Mask, Mask> = HashMap::new();
            for l in &sorted {
                if class_of.contains_key(l) {
                    continue;
                }
                reps.push(*l);
                for x in mask_elems(s) {
                    class_of.entry(g.conjugate_mask(x, *l)).or_insert(*l);
                }
            }
            let base = elts.len() as u32;
            for (j, r) in reps.iter().enumerate() {
                elts.push(SpanBasisElt { src: hi, dst: ki, middle: *r, a: 0, b: *d });
                table.insert(*r, base + j as u32);
            }
            for (l, r) in &class_of {
                let idx = table[r];
                table.insert(*l, idx);
            }
            lookup.push(table);
        }
        HomBasis { src: hi, dst: ki, elts, dreps, pair, lookup, n_dst_cosets: nk }
    }

    /// Basis index of the concrete span `(m, a, b)` relative to `(h, k)`.
    pub fn span_to_basis(&self, h: usize, k: usize, m: Mask, a: usize, b: usize) -> usize {
        let g = self.group();
        let basis = self.basis(h, k);
        let alpha = self.0.orbits[h].coset_of[a] as usize;
        let beta = self.0.orbits[k].coset_of[b] as usize;
        let (di, x) = basis.pair[alpha * basis.n_dst_cosets + beta];
        let l = g.conjugate_mask(x as usize, m);
        debug_assert!(self.is_valid_span(h, k, m, a, b), "invalid concrete span");
        basis.lookup[di as usize][&l] as usize
    }

    pub fn is_valid_span(&self, h: usize, k: usize, m: Mask, a: usize, b: usize) -> bool {
        let g = self.group();
        let ha = g.conjugate_mask(a, self.0.orbits[h].rep);
        let kb = g.conjugate_mask(b, self.0.orbits[k].rep);
        g.is_subgroup_mask(m) && m & !ha == 0 && m & !kb == 0
    }

    pub fn elt(&self, h: usize, k: usize, idx: usize) -> SpanBasisElt {
        self.basis(h, k).elts[idx].clone()
    }

    pub fn identity(&self, h: usize) -> BurnsideHom {
        let rep = self.0.orbits[h].rep;
        BurnsideHom::basis(h, h, self.span_to_basis(h, h, rep, 0, 0))
    }

    /// Forward span of the G-map `G/H → G/K`, `xH ↦ xbK` (needs `H ⊆ bKb⁻¹`).
    pub fn forward(&self, h: usize, k: usize, b: usize) -> BurnsideHom {
        let rep = self.0.orbits[h].rep;
        BurnsideHom::basis(h, k, self.span_to_basis(h, k, rep, 0, b))
    }

    /// Transpose of the forward span: `G/K ← G/H = G/H`.
    pub fn backward(&self, k: usize, h: usize, b: usize) -> BurnsideHom {
        let rep = self.0.orbits[h].rep;
        BurnsideHom::basis(k, h, self.span_to_basis(k, h, rep, b, 0))
    }

    pub fn is_forward(&self, e: &SpanBasisElt) -> bool {
        mask_order(e.middle) == self.0.orbits[e.src].subgroup_order()
    }

    pub fn is_backward(&self, e: &SpanBasisElt) -> bool {
        mask_order(e.middle) == self.0.orbits[e.dst].subgroup_order()
    }

    /// Generating spans out of or into each orbit pair: forward and backward
    /// basis elements. Every basis span factors as forward ∘ backward.
    pub fn generating(&self, h: usize, k: usize) -> Vec<usize> {
        let b = self.basis(h, k);
        (0..b.len()).filter(|i| self.is_forward(&b.elts[*i]) || self.is_backward(&b.elts[*i])).collect()
    }

    /// `(mid, backward part in B(h, mid), forward part in B(mid, k))` with
    /// `basis[idx] = fwd ∘ bwd`.
    pub fn factor(&self, h: usize, k: usize, idx: usize) -> (usize, usize, usize) {
        let g = self.group();
        let e = self.elt(h, k, idx);
        let (r, c) = g.lattice().locate(e.middle);
        let bwd = self.span_to_basis(h, r, e.middle, e.a, c);
        let fwd = self.span_to_basis(r, k, e.middle, c, e.b);
        (r, bwd, fwd)
    }

    /// Maps a G-set `y` with legs into two decomposed G-sets to the matrix of
    /// spans between their summands: entry `(k, j)` is from summand `j` of the
    /// first decomposition to summand `k` of the second.
    pub fn span_from_gset(
        &self,
        y: &GSet,
        leg1: &[usize],
        dec1: &OrbitDecomp,
        leg2: &[usize],
        dec2: &OrbitDecomp,
    ) -> BTreeMap<(usize, usize), BurnsideHom> {
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, i64>> = BTreeMap::new();
        for orb in y.orbits() {
            let p = orb[0];
            let stab = y.stabilizer(p);
            let (j, a) = dec1.loc[leg1[p]];
            let (k, b) = dec2.loc[leg2[p]];
            let (j, k) = (j as usize, k as usize);
            let oj = dec1.summands[j].orbit;
            let ok = dec2.summands[k].orbit;
            let ra = self.0.orbits[oj].cosets[a as usize];
            let rb = self.0.orbits[ok].cosets[b as usize];
            let idx = self.span_to_basis(oj, ok, stab, ra, rb);
            *acc.entry((k, j)).or_default().entry(idx).or_insert(0) += 1;
        }
        acc.into_iter()
            .map(|((k, j), m)| {
                let (oj, ok) = (dec1.summands[j].orbit, dec2.summands[k].orbit);
                ((k, j), BurnsideHom::from_map(oj, ok, m))
            })
            .collect()
    }

    /// The decomposition of an orbit object into itself.
    pub fn trivial_decomp(&self, h: usize) -> OrbitDecomp {
        let n = self.0.orbits[h].size();
        OrbitDecomp {
            summands: vec![Summand { orbit: h, concrete: self.0.orbits[h].rep, ident: 0, base: 0 }],
            loc: (0..n).map(|i| (0, i as u32)).collect(),
        }
    }

    pub fn decompose(&self, x: &GSet) -> OrbitDecomp {
        debug_assert_eq!(&x.group, self.group());
        let g = self.group();
        let lat = g.lattice();
        let mut summands = Vec::new();
        let mut loc = vec![(0u32, 0u32); x.len()];
        for orb in x.orbits() {
            let base = orb[0];
            let stab = x.stabilizer(base);
            let (cls, c) = lat.locate(stab);
            let j = summands.len() as u32;
            let tr = x.transversal(base);
            let o = &self.0.orbits[cls];
            for p in &orb {
                let gp = tr[*p].expect("point in orbit");
                loc[*p] = (j, o.coset_of[g.mul(gp, c)]);
            }
            summands.push(Summand { orbit: cls, concrete: stab, ident: c, base });
        }
        OrbitDecomp { summands, loc }
    }

    /// Point of `x` at coset `t` of summand `j`: `r_t · ident⁻¹ · base`.
    pub fn point_of(&self, x: &GSet, dec: &OrbitDecomp, j: usize, t: usize) -> usize {
        let g = self.group();
        let s = &dec.summands[j];
        let r = self.0.orbits[s.orbit].cosets[t];
        x.act(g.mul(r, g.inv(s.ident)), s.base)
    }

    /// `ψ ∘ φ` for basis elements, cached; computed by an explicit pullback.
    pub fn compose_basis(&self, h: usize, k: usize, j: usize, phi: usize, psi: usize) -> Arc<BurnsideHom> {
        let key = (h, k, j, phi, psi);
        if let Some(r) = self.0.compose_cache.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = Arc::new(self.pullback_compose(h, k, j, phi, psi));
        self.0.compose_cache.lock().unwrap().insert(key, r.clone());
        r
    }

    fn pullback_compose(&self, h: usize, k: usize, j: usize, phi: usize, psi: usize) -> BurnsideHom {
        let g = self.group();
        let e1 = self.elt(h, k, phi);
        let e2 = self.elt(k, j, psi);
        let m1 = GSet::cosets(g, e1.middle);
        let m2 = GSet::cosets(g, e2.middle);
        let r1 = g.left_coset_reps(e1.middle);
        let r2 = g.left_coset_reps(e2.middle);
        let (oh, ok, oj) = (&self.0.orbits[h], &self.0.orbits[k], &self.0.orbits[j]);
        // points of G/M1 ×_{G/K} G/M2
        let mut pts = Vec::new();
        for (a, x) in r1.iter().enumerate() {
            let kx = ok.coset_of[g.mul(*x, e1.b)];
            for (b, y) in r2.iter().enumerate() {
                if ok.coset_of[g.mul(*y, e2.a)] == kx {
                    pts.push(a * r2.len() + b);
                }
            }
        }
        let prod = m1.product(&m2);
        let y = prod.subset(&pts);
        let leg1: Vec<usize> = pts.iter().map(|p| oh.coset_of[g.mul(r1[p / r2.len()], e1.a)] as usize).collect();
        let leg2: Vec<usize> = pts.iter().map(|p| oj.coset_of[g.mul(r2[p % r2.len()], e2.b)] as usize).collect();
        let d1 = self.trivial_decomp(h);
        let d2 = self.trivial_decomp(j);
        self.span_from_gset(&y, &leg1, &d1, &leg2, &d2).remove(&(0, 0)).unwrap_or_else(|| BurnsideHom::zero(h, j))
    }

    /// `ψ ∘ φ`.
    pub fn compose(&self, psi: &BurnsideHom, phi: &BurnsideHom) -> Result<BurnsideHom, BurnsideError> {
        if phi.dst != psi.src {
            return Err(BurnsideError::Compose(format!("{} -> {} then {} -> {}", phi.src, phi.dst, psi.src, psi.dst)));
        }
        let (h, k, j) = (phi.src, phi.dst, psi.dst);
        let mut m: BTreeMap<usize, i64> = BTreeMap::new();
        for (a, ca) in &phi.terms {
            for (b, cb) in &psi.terms {
                let c = ca * cb;
                for (t, ct) in &self.compose_basis(h, k, j, *a, *b).terms {
                    *m.entry(*t).or_insert(0) += c * ct;
                }
            }
        }
        Ok(BurnsideHom::from_map(h, j, m))
    }

    pub fn transpose_basis(&self, h: usize, k: usize, idx: usize) -> usize {
        let e = self.elt(h, k, idx);
        self.span_to_basis(k, h, e.middle, e.b, e.a)
    }

    pub fn transpose(&self, phi: &BurnsideHom) -> BurnsideHom {
        let m = phi.terms.iter().map(|(i, c)| (self.transpose_basis(phi.src, phi.dst, *i), *c)).collect();
        BurnsideHom::from_map(phi.dst, phi.src, m)
    }

    pub fn to_gset_span(&self, h: usize, k: usize, idx: usize) -> (GSet, Vec<usize>, Vec<usize>) {
        let g = self.group();
        let e = self.elt(h, k, idx);
        let y = GSet::cosets(g, e.middle);
        let reps = g.left_coset_reps(e.middle);
        let l1 = reps.iter().map(|x| self.0.orbits[h].coset_of[g.mul(*x, e.a)] as usize).collect();
        let l2 = reps.iter().map(|x| self.0.orbits[k].coset_of[g.mul(*x, e.b)] as usize).collect();
        (y, l1, l2)
    }
}

/// Convenience: basis in terms of the group and class representatives.
pub fn hom_basis(g: &FinGroup, h: Mask, k: Mask) -> Vec<SpanBasisElt> {
    let b = Burnside::of(g);
    let hi = b.orbit_of_subgroup(h);
    let ki = b.orbit_of_subgroup(k);
    b.basis(hi, ki).elts.clone()
}

#[cfg(test)]
mod tests;
