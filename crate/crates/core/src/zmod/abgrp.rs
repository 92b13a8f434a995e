//! Finitely generated abelian groups by presentation, and homomorphisms.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::int::{add_mul, Int};
use super::mat::Mat;
use super::snf::{col_echelon, snf_with, Smith, Track};
use super::sparse::{self, SparseMat};
use super::ZError;

struct Inner {
    n: usize,
    rels: Mat,
    /// Set when the relation matrix is diagonal: gen i has order `orders[i]`
    /// (zero meaning infinite order).
    orders: Option<Vec<Int>>,
    tester: OnceLock<Tester>,
    invariants: OnceLock<Invariants>,
}

struct Tester {
    u: Mat,
    d: Vec<Int>,
}

/// Isomorphism type: `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// `Z^n / (column span of rels)`.
#[derive(Clone)]
pub struct AbGrp(Arc<Inner>);

impl PartialEq for AbGrp {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.n == other.0.n && self.0.rels == other.0.rels)
    }
}

impl Eq for AbGrp {}

impl fmt::Debug for AbGrp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.orders {
            Some(o) => write!(f, "AbGrp{o:?}"),
            None => write!(f, "AbGrp(n={}, rels={})", self.0.n, self.0.rels),
        }
    }
}

impl AbGrp {
    fn build(n: usize, rels: Mat, orders: Option<Vec<Int>>) -> AbGrp {
        AbGrp(Arc::new(Inner {
            n,
            rels,
            orders,
            tester: OnceLock::new(),
            invariants: OnceLock::new(),
        }))
    }

    pub fn zero() -> AbGrp {
        AbGrp::diagonal(Vec::new())
    }

    pub fn free(n: usize) -> AbGrp {
        AbGrp::diagonal(vec![Int::zero(); n])
    }

    pub fn cyclic(d: i64) -> AbGrp {
        AbGrp::diagonal(vec![Int::from(d.abs())])
    }

    /// `⊕ Z/orders[i]`; order zero is a free summand.
    pub fn diagonal(orders: Vec<Int>) -> AbGrp {
        let n = orders.len();
        let torsion: Vec<usize> = (0..n).filter(|i| !orders[*i].is_zero()).collect();
        let mut rels = Mat::zeros(n, torsion.len());
        for (c, i) in torsion.iter().enumerate() {
            rels.set(*i, c, orders[*i].abs());
        }
        let orders = orders.into_iter().map(|d| d.abs()).collect();
        AbGrp::build(n, rels, Some(orders))
    }

    pub fn presented(n: usize, rels: Mat) -> Result<AbGrp, ZError> {
        if rels.rows() != n {
            return Err(ZError::ShapeMismatch(format!(
                "relations have {} rows for {} generators",
                rels.rows(),
                n
            )));
        }
        Ok(AbGrp::build(n, rels, None))
    }

    pub fn n_gens(&self) -> usize {
        self.0.n
    }

    pub fn rels(&self) -> &Mat {
        &self.0.rels
    }

    pub fn orders(&self) -> Option<&[Int]> {
        self.0.orders.as_deref()
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.orders.is_some()
    }

    fn tester(&self) -> &Tester {
        self.0.tester.get_or_init(|| {
            let s = snf_with(&self.0.rels, Track { u: true, ..Track::NONE });
            Tester { u: s.u.expect("tracked"), d: s.diag }
        })
    }

    pub fn invariants(&self) -> &Invariants {
        self.0.invariants.get_or_init(|| {
            let s: Smith = match &self.0.orders {
                Some(o) => snf_with(&Mat::diag(o), Track::NONE),
                None => snf_with(&self.0.rels, Track::NONE),
            };
            let free_rank = self.0.n - s.rank();
            let torsion = s.diag.into_iter().filter(|d| !d.is_one()).collect();
            Invariants { free_rank, torsion }
        })
    }

    pub fn is_trivial(&self) -> bool {
        if let Some(o) = &self.0.orders {
            return o.iter().all(Int::is_one);
        }
        let inv = self.invariants();
        inv.free_rank == 0 && inv.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        let inv = self.invariants();
        if inv.free_rank > 0 {
            return None;
        }
        Some(inv.torsion.iter().fold(Int::one(), |a, b| &a * b))
    }

    /// Whether the coordinate vector `x` represents the zero element.
    pub fn is_zero_elem(&self, x: &[Int]) -> bool {
        assert_eq!(x.len(), self.0.n);
        if let Some(o) = &self.0.orders {
            return x.iter().zip(o).all(|(v, d)| {
                if d.is_zero() {
                    v.is_zero()
                } else {
                    d.divides(v)
                }
            });
        }
        let t = self.tester();
        let y = t.u.mul_vec(x);
        y.iter().enumerate().all(|(i, v)| match t.d.get(i) {
            Some(d) => d.divides(v),
            None => v.is_zero(),
        })
    }

    /// Reduces coordinates into canonical ranges when the group is diagonal.
    pub fn reduce(&self, m: &mut Mat) {
        if let Some(o) = &self.0.orders {
            m.reduce_rows(o);
        }
    }

    pub fn direct_sum(parts: &[AbGrp]) -> AbGrp {
        if parts.len() == 1 {
            return parts[0].clone();
        }
        if parts.iter().all(|p| p.is_diagonal()) {
            let orders = parts.iter().flat_map(|p| p.orders().unwrap().iter().cloned()).collect();
            return AbGrp::diagonal(orders);
        }
        let n = parts.iter().map(|p| p.n_gens()).sum();
        let blocks: Vec<&Mat> = parts.iter().map(|p| p.rels()).collect();
        let rels = Mat::block_diag(&blocks);
        AbGrp::build(n, rels, None)
    }

    /// Simplifies to a diagonal presentation with explicit inverse isos.
    pub fn simplify(&self) -> Simplified {
        if let Some(o) = &self.0.orders {
            if o.iter().all(|d| !d.is_one()) {
                return Simplified {
                    grp: self.clone(),
                    to: Mat::identity(self.0.n),
                    from: Mat::identity(self.0.n),
                };
            }
        }
        simplify_presentation(self.0.n, SparseMat::from_dense(&self.0.rels))
    }

    pub fn describe(&self) -> String {
        self.invariants().to_string()
    }
}

/// Result of presentation simplification: `grp` is diagonal; `to` maps old
/// generators to the new ones (new x old), `from` maps back (old x new).
#[derive(Clone, Debug)]
pub struct Simplified {
    pub grp: AbGrp,
    pub to: Mat,
    pub from: Mat,
}

/// Tietze elimination on unit relations followed by Smith reduction of the
/// remaining core.
pub fn simplify_presentation(n: usize, mut rels: SparseMat) -> Simplified {
    assert_eq!(rels.nrows(), n);
    let pivots = rels.eliminate();
    let surv = rels.alive_rows();
    let cols = rels.nonzero_alive_cols();
    let core = rels.residual(&surv, &cols);
    let s = snf_with(&core, Track { u: true, uinv: true, ..Track::NONE });
    let u = s.u.expect("tracked");
    let uinv = s.uinv.expect("tracked");
    let m = surv.len();
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for k in 0..m {
        let d = s.diag.get(k).cloned().unwrap_or_else(Int::zero);
        if !d.is_one() {
            kept.push(k);
            orders.push(d);
        }
    }
    let mut pos = vec![usize::MAX; n];
    for (k, g) in surv.iter().enumerate() {
        pos[*g] = k;
    }
    // expression of each old generator in surviving coordinates
    let mut expr: Vec<Option<Vec<(usize, Int)>>> = vec![None; n];
    for g in &surv {
        expr[*g] = Some(vec![(pos[*g], Int::one())]);
    }
    for pv in pivots.iter().rev() {
        let mut acc: std::collections::BTreeMap<usize, Int> = Default::default();
        let f = -&pv.u;
        for (h, a) in &pv.col_rest {
            let coef = a * &f;
            for (k, c) in expr[*h].as_ref().expect("later pivot resolved first") {
                let e = acc.entry(*k).or_insert_with(Int::zero);
                add_mul(e, &coef, c);
            }
        }
        expr[pv.row] = Some(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }
    let new_n = kept.len();
    let mut to = Mat::zeros(new_n, n);
    for g in 0..n {
        for (k, c) in expr[g].as_ref().expect("every generator resolved") {
            for (r, kk) in kept.iter().enumerate() {
                let uv = u.get(*kk, *k);
                if !uv.is_zero() {
                    add_mul(to.at(r, g), uv, c);
                }
            }
        }
    }
    to.reduce_rows(&orders);
    let mut from = Mat::zeros(n, new_n);
    for (k, g) in surv.iter().enumerate() {
        for (r, kk) in kept.iter().enumerate() {
            from.set(*g, r, uinv.get(k, *kk).clone());
        }
    }
    Simplified { grp: AbGrp::diagonal(orders), to, from }
}

/// A homomorphism given on generators; `mat` is (target gens) x (source gens).
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    pub src: AbGrp,
    pub dst: AbGrp,
    pub mat: Mat,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({:?} -> {:?}: {})", self.src, self.dst, self.mat)
    }
}

impl AbHom {
    /// Checked constructor: shapes must match and relations must map to zero.
    pub fn new(src: AbGrp, dst: AbGrp, mat: Mat) -> Result<AbHom, ZError> {
        if mat.shape() != (dst.n_gens(), src.n_gens()) {
            return Err(ZError::ShapeMismatch(format!(
                "matrix {}x{} for map {}-gen -> {}-gen",
                mat.rows(),
                mat.cols(),
                src.n_gens(),
                dst.n_gens()
            )));
        }
        let h = AbHom::new_unchecked(src, dst, mat);
        if !h.is_well_defined() {
            return Err(ZError::NotWellDefined);
        }
        Ok(h)
    }

    pub fn new_unchecked(src: AbGrp, dst: AbGrp, mut mat: Mat) -> AbHom {
        debug_assert_eq!(mat.shape(), (dst.n_gens(), src.n_gens()));
        dst.reduce(&mut mat);
        AbHom { src, dst, mat }
    }

    pub fn is_well_defined(&self) -> bool {
        let img = self.mat.mul(self.src.rels());
        (0..img.cols()).all(|j| self.dst.is_zero_elem(&img.col(j)))
    }

    pub fn identity(a: &AbGrp) -> AbHom {
        AbHom { src: a.clone(), dst: a.clone(), mat: Mat::identity(a.n_gens()) }
    }

    pub fn zero(src: &AbGrp, dst: &AbGrp) -> AbHom {
        AbHom { src: src.clone(), dst: dst.clone(), mat: Mat::zeros(dst.n_gens(), src.n_gens()) }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &AbHom) -> AbHom {
        debug_assert_eq!(g.dst.n_gens(), self.src.n_gens());
        AbHom::new_unchecked(g.src.clone(), self.dst.clone(), self.mat.mul(&g.mat))
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.src.clone(), self.dst.clone(), self.mat.add(&other.mat))
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.src.clone(), self.dst.clone(), self.mat.sub(&other.mat))
    }

    pub fn neg(&self) -> AbHom {
        AbHom::new_unchecked(self.src.clone(), self.dst.clone(), self.mat.neg())
    }

    pub fn scale(&self, c: &Int) -> AbHom {
        AbHom::new_unchecked(self.src.clone(), self.dst.clone(), self.mat.scale(c))
    }

    /// Zero as a map: every column lies in the target's relation lattice.
    pub fn is_zero(&self) -> bool {
        (0..self.mat.cols()).all(|j| self.dst.is_zero_elem(&self.mat.col(j)))
    }

    /// Equality as maps, not as matrices.
    pub fn eq_map(&self, other: &AbHom) -> bool {
        self.mat.shape() == other.mat.shape() && self.sub(other).is_zero()
    }

    pub fn is_identity_map(&self) -> bool {
        self.src.n_gens() == self.dst.n_gens() && self.eq_map(&AbHom::identity(&self.dst))
    }

    /// Block-diagonal map between direct sums.
    pub fn direct_sum(parts: &[AbHom]) -> AbHom {
        let src = AbGrp::direct_sum(&parts.iter().map(|h| h.src.clone()).collect::<Vec<_>>());
        let dst = AbGrp::direct_sum(&parts.iter().map(|h| h.dst.clone()).collect::<Vec<_>>());
        let blocks: Vec<&Mat> = parts.iter().map(|h| &h.mat).collect();
        AbHom { src, dst, mat: Mat::block_diag(&blocks) }
    }

    /// The map out of `⊕ src_i` given by the parts (common target).
    pub fn copair(dst: &AbGrp, src_sum: &AbGrp, parts: &[AbHom]) -> AbHom {
        let blocks: Vec<&Mat> = parts.iter().map(|h| &h.mat).collect();
        AbHom::new_unchecked(src_sum.clone(), dst.clone(), Mat::hstack_rows(dst.n_gens(), &blocks))
    }

    /// The map into `⊕ dst_i` given by the parts (common source).
    pub fn pair(src: &AbGrp, dst_sum: &AbGrp, parts: &[AbHom]) -> AbHom {
        let blocks: Vec<&Mat> = parts.iter().map(|h| &h.mat).collect();
        AbHom::new_unchecked(src.clone(), dst_sum.clone(), Mat::vstack_cols(src.n_gens(), &blocks))
    }

    /// Rebases onto alternative source/target objects with identical generators.
    pub fn retyped(&self, src: &AbGrp, dst: &AbGrp) -> AbHom {
        AbHom::new_unchecked(src.clone(), dst.clone(), self.mat.clone())
    }
}

/// Injection of summand `i` into the direct sum of `parts`.
pub fn injection(parts: &[AbGrp], sum: &AbGrp, i: usize) -> AbHom {
    let off: usize = parts[..i].iter().map(|p| p.n_gens()).sum();
    let mut m = Mat::zeros(sum.n_gens(), parts[i].n_gens());
    for k in 0..parts[i].n_gens() {
        m.set(off + k, k, Int::one());
    }
    AbHom { src: parts[i].clone(), dst: sum.clone(), mat: m }
}

/// Projection of the direct sum of `parts` onto summand `i`.
pub fn projection(parts: &[AbGrp], sum: &AbGrp, i: usize) -> AbHom {
    let off: usize = parts[..i].iter().map(|p| p.n_gens()).sum();
    let mut m = Mat::zeros(parts[i].n_gens(), sum.n_gens());
    for k in 0..parts[i].n_gens() {
        m.set(k, off + k, Int::one());
    }
    AbHom { src: sum.clone(), dst: parts[i].clone(), mat: m }
}

/// Cokernel with its projection.
pub fn cokernel(h: &AbHom) -> (AbGrp, AbHom) {
    let (c, p, _) = cokernel_with_section(h);
    (c, p)
}

/// Cokernel, projection, and a set-theoretic section on generators
/// (matrix from cokernel generators to target generators).
pub fn cokernel_with_section(h: &AbHom) -> (AbGrp, AbHom, Mat) {
    let b = &h.dst;
    let n = b.n_gens();
    let br = b.rels();
    let mut s = SparseMat::new(n, br.cols() + h.mat.cols());
    for i in 0..n {
        for j in 0..br.cols() {
            s.add(i, j, br.get(i, j));
        }
        for j in 0..h.mat.cols() {
            s.add(i, br.cols() + j, h.mat.get(i, j));
        }
    }
    let simp = simplify_presentation(n, s);
    let proj = AbHom::new_unchecked(b.clone(), simp.grp.clone(), simp.to);
    (simp.grp, proj, simp.from)
}

/// The subgroup of `a` generated by the columns of `gens`, with its inclusion.
pub fn subgroup(a: &AbGrp, gens: &Mat) -> (AbGrp, AbHom) {
    let n = a.n_gens();
    assert_eq!(gens.rows(), n);
    let ar = a.rels();
    let t = gens.cols();
    let stacked = Mat::hstack_rows(n, &[gens, ar]);
    let ech = col_echelon(&stacked, false, true);
    let s = ech.rank;
    let lb = ech.e.submatrix(0, n, 0, s);
    let vinv = ech.vinv.expect("tracked");
    let c = vinv.submatrix(0, s, t, t + ar.cols());
    let simp = simplify_presentation(s, SparseMat::from_dense(&c));
    let incl = AbHom::new_unchecked(simp.grp.clone(), a.clone(), lb.mul(&simp.from));
    (simp.grp, incl)
}

/// Kernel with its inclusion.
pub fn kernel(h: &AbHom) -> (AbGrp, AbHom) {
    let na = h.src.n_gens();
    let br = h.dst.rels();
    let nb = h.dst.n_gens();
    let mut s = SparseMat::new(nb, na + br.cols());
    for i in 0..nb {
        for j in 0..na {
            s.add(i, j, h.mat.get(i, j));
        }
        for j in 0..br.cols() {
            s.add(i, na + j, br.get(i, j));
        }
    }
    let ns = sparse::nullspace(s);
    let kgen = ns.submatrix(0, na, 0, ns.cols());
    subgroup(&h.src, &kgen)
}

/// Kernel of the map `src → dst` given by sparse entries `(row, col, value)`.
pub fn kernel_from_entries(src: &AbGrp, dst: &AbGrp, entries: &[(usize, usize, Int)]) -> (AbGrp, AbHom) {
    let na = src.n_gens();
    let nb = dst.n_gens();
    let br = dst.rels();
    let mut s = SparseMat::new(nb, na + br.cols());
    for (i, j, v) in entries {
        s.add(*i, *j, v);
    }
    for i in 0..nb {
        for j in 0..br.cols() {
            s.add(i, na + j, br.get(i, j));
        }
    }
    let ns = sparse::nullspace(s);
    let kgen = ns.submatrix(0, na, 0, ns.cols());
    subgroup(src, &kgen)
}

pub fn image(h: &AbHom) -> (AbGrp, AbHom) {
    subgroup(&h.dst, &h.mat)
}

/// Solves `f ∘ x = g` for `x`, reusing one Smith reduction across calls.
pub struct Lifter {
    f: AbHom,
    u: Mat,
    v: Mat,
    d: Vec<Int>,
}

impl Lifter {
    pub fn new(f: &AbHom) -> Lifter {
        let stacked = Mat::hstack_rows(f.dst.n_gens(), &[&f.mat, f.dst.rels()]);
        let s = snf_with(&stacked, Track { u: true, v: true, ..Track::NONE });
        Lifter { f: f.clone(), u: s.u.expect("tracked"), v: s.v.expect("tracked"), d: s.diag }
    }

    pub fn lift_vec(&self, b: &[Int]) -> Option<Vec<Int>> {
        let y = self.u.mul_vec(b);
        let mut w = vec![Int::zero(); self.v.rows()];
        for (i, yi) in y.iter().enumerate() {
            match self.d.get(i) {
                Some(d) => {
                    if !d.divides(yi) {
                        return None;
                    }
                    w[i] = yi.div_floor(d);
                }
                None => {
                    if !yi.is_zero() {
                        return None;
                    }
                }
            }
        }
        let z = self.v.mul_vec(&w);
        Some(z[..self.f.src.n_gens()].to_vec())
    }

    pub fn lift(&self, g: &AbHom) -> Option<AbHom> {
        let na = self.f.src.n_gens();
        let mut out = Mat::zeros(na, g.src.n_gens());
        for j in 0..g.mat.cols() {
            let x = self.lift_vec(&g.mat.col(j))?;
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(AbHom::new_unchecked(g.src.clone(), self.f.src.clone(), out))
    }
}

/// Solves `f ∘ x = g` once.
pub fn lift(f: &AbHom, g: &AbHom) -> Option<AbHom> {
    Lifter::new(f).lift(g)
}

#[derive(Clone, Debug)]
pub struct HomInvariants {
    pub kernel: AbGrp,
    pub kernel_incl: AbHom,
    pub cokernel: AbGrp,
    pub cokernel_proj: AbHom,
    pub image: AbGrp,
    pub is_iso: bool,
    pub is_epi: bool,
    pub is_mono: bool,
}

pub fn hom_invariants(h: &AbHom) -> HomInvariants {
    let (k, ki) = kernel(h);
    let (c, cp) = cokernel(h);
    let (im, _) = image(h);
    let is_mono = k.is_trivial();
    let is_epi = c.is_trivial();
    HomInvariants {
        kernel: k,
        kernel_incl: ki,
        cokernel: c,
        cokernel_proj: cp,
        image: im,
        is_iso: is_mono && is_epi,
        is_epi,
        is_mono,
    }
}

pub fn is_epi(h: &AbHom) -> bool {
    cokernel(h).0.is_trivial()
}

/// Isomorphism test. A surjection between groups with equal invariants is
/// bijective (finitely generated abelian groups are Hopfian), so the kernel
/// is only computed when the invariants disagree.
pub fn is_iso(h: &AbHom) -> bool {
    if !is_epi(h) {
        return false;
    }
    if h.src.invariants() == h.dst.invariants() {
        return true;
    }
    kernel(h).0.is_trivial()
}

/// Inverse of an isomorphism.
pub fn inverse(h: &AbHom) -> Option<AbHom> {
    if !is_iso(h) {
        return None;
    }
    lift(h, &AbHom::identity(&h.dst))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(src: AbGrp, dst: AbGrp, rows: &[Vec<i64>]) -> AbHom {
        AbHom::new(src, dst, Mat::from_rows(rows)).unwrap()
    }

    #[test]
    fn times_two_on_z() {
        let z = AbGrp::free(1);
        let h = hom(z.clone(), z, &[vec![2]]);
        let inv = hom_invariants(&h);
        assert!(inv.kernel.is_trivial());
        assert_eq!(inv.cokernel.invariants().torsion, vec![Int::from(2)]);
        assert!(inv.is_mono && !inv.is_epi && !inv.is_iso);
    }

    #[test]
    fn identity_on_z6() {
        let g = AbGrp::cyclic(6);
        assert!(hom_invariants(&AbHom::identity(&g)).is_iso);
        assert!(is_iso(&AbHom::identity(&g)));
    }

    #[test]
    fn sum_map_z2_to_z() {
        let h = hom(AbGrp::free(2), AbGrp::free(1), &[vec![1, 1]]);
        let inv = hom_invariants(&h);
        assert_eq!(inv.kernel.invariants(), &Invariants { free_rank: 1, torsion: vec![] });
        assert!(inv.cokernel.is_trivial());
        assert!(h.compose(&inv.kernel_incl).is_zero());
    }

    #[test]
    fn z2_plus_z3_is_z6() {
        let d = AbGrp::diagonal(vec![Int::from(2), Int::from(3)]);
        assert_eq!(d.invariants().torsion, vec![Int::from(6)]);
        let g = AbGrp::presented(2, Mat::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        let s = g.simplify();
        assert_eq!(s.grp.n_gens(), 1);
        let back = AbHom::new(s.grp.clone(), g.clone(), s.from.clone()).unwrap();
        let to = AbHom::new(g.clone(), s.grp.clone(), s.to.clone()).unwrap();
        assert!(to.compose(&back).is_identity_map());
        assert!(back.compose(&to).is_identity_map());
    }

    #[test]
    fn ill_defined_map_rejected() {
        let r = AbHom::new(AbGrp::cyclic(2), AbGrp::free(1), Mat::from_rows(&[vec![1]]));
        assert!(matches!(r, Err(ZError::NotWellDefined)));
        let r = AbHom::new(AbGrp::cyclic(2), AbGrp::free(1), Mat::zeros(2, 1));
        assert!(matches!(r, Err(ZError::ShapeMismatch(_))));
    }

    #[test]
    fn general_presentation_membership() {
        // Z^2 / <(2,2), (0,4)>
        let g = AbGrp::presented(2, Mat::from_rows(&[vec![2, 0], vec![2, 4]])).unwrap();
        assert!(g.is_zero_elem(&[Int::from(2), Int::from(6)]));
        assert!(!g.is_zero_elem(&[Int::from(2), Int::from(0)]));
        assert_eq!(g.order(), Some(Int::from(8)));
    }

    #[test]
    fn lift_through_inclusion() {
        let z = AbGrp::free(1);
        let two = hom(z.clone(), z.clone(), &[vec![2]]);
        let four = hom(z.clone(), z.clone(), &[vec![4]]);
        let x = lift(&two, &four).unwrap();
        assert_eq!(x.mat, Mat::from_rows(&[vec![2]]));
        assert!(lift(&two, &AbHom::identity(&z)).is_none());
    }
}
