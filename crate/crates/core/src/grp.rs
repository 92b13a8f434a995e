//! Finite permutation groups, subgroup lattices, quotients and fiber products.
//!
//! Elements are indexed `0..order` in lexicographic order of their
//! permutations, so index 0 is always the identity. Products follow
//! function composition: `mul(a, b)` is `x ↦ a(b(x))`. Subgroups are
//! bitmasks over element indices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

pub type Perm = Vec<u16>;
pub type Mask = u128;

/// Hard limit imposed by the `u128` subgroup masks.
pub const MAX_ORDER: usize = 128;
pub const DEFAULT_ORDER_CAP: usize = 128;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum GrpError {
    #[error("group order exceeds cap {0}")]
    OrderCapExceeded(usize),
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("permutation parse error: {0}")]
    Parse(String),
    #[error("unknown catalog group {0:?}")]
    UnknownGroup(String),
}

struct Inner {
    label: String,
    degree: usize,
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    gens: Vec<usize>,
    fingerprint: u64,
    lattice: OnceLock<Lattice>,
}

#[derive(Clone)]
pub struct FinGroup(Arc<Inner>);

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fingerprint == other.0.fingerprint && self.0.elems == other.0.elems)
    }
}

impl Eq for FinGroup {}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(order {})", self.0.label, self.order())
    }
}

fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|x| a[*x as usize]).collect()
}

fn invert(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, x) in a.iter().enumerate() {
        out[*x as usize] = i as u16;
    }
    out
}

fn short_hash(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    h[..4].iter().map(|b| format!("{b:02x}")).collect()
}

/// Generates the group closure of `gens` (all of degree `degree`).
pub fn make_group(label: &str, degree: usize, gens: &[Perm]) -> Result<FinGroup, GrpError> {
    make_group_capped(label, degree, gens, DEFAULT_ORDER_CAP)
}

pub fn make_group_capped(
    label: &str,
    degree: usize,
    gens: &[Perm],
    cap: usize,
) -> Result<FinGroup, GrpError> {
    let cap = cap.min(MAX_ORDER);
    for g in gens {
        if g.len() != degree {
            return Err(GrpError::Parse(format!("generator of degree {} in degree {degree}", g.len())));
        }
        let set: BTreeSet<u16> = g.iter().copied().collect();
        if set.len() != degree || set.iter().any(|x| *x as usize >= degree) {
            return Err(GrpError::Parse("generator is not a permutation".into()));
        }
    }
    let id: Perm = (0..degree as u16).collect();
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(GrpError::OrderCapExceeded(cap));
                }
                frontier.push(y);
            }
        }
    }
    let elems: Vec<Perm> = seen.into_iter().collect();
    let index: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elems.len();
    let mut mul = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = index[&compose(&elems[a], &elems[b])] as u8;
        }
    }
    let inv = elems.iter().map(|p| index[&invert(p)] as u8).collect();
    let gen_idx = gens.iter().map(|g| index[g]).collect();
    let mut bytes = Vec::with_capacity(n * degree * 2 + 8);
    bytes.extend_from_slice(&(degree as u64).to_le_bytes());
    for p in &elems {
        for x in p {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
    }
    let h = Sha256::digest(&bytes);
    let fingerprint = u64::from_le_bytes(h[..8].try_into().unwrap());
    Ok(FinGroup(Arc::new(Inner {
        label: label.to_string(),
        degree,
        elems,
        index,
        mul,
        inv,
        gens: gen_idx,
        fingerprint,
        lattice: OnceLock::new(),
    })))
}

/// Parses one permutation in cycle notation, e.g. `(0 1)(2 3)`; `()` is the identity.
pub fn parse_cycles(s: &str, degree: Option<usize>) -> Result<Perm, GrpError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| GrpError::Parse(format!("expected '(' in {s:?}")))?;
        let close = open.find(')').ok_or_else(|| GrpError::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = &open[..close];
        let pts: Result<Vec<usize>, _> =
            body.split(|c: char| c == ' ' || c == ',').filter(|t| !t.is_empty()).map(str::parse).collect();
        let pts = pts.map_err(|_| GrpError::Parse(format!("bad point in {s:?}")))?;
        let uniq: BTreeSet<usize> = pts.iter().copied().collect();
        if uniq.len() != pts.len() {
            return Err(GrpError::Parse(format!("repeated point in {s:?}")));
        }
        cycles.push(pts);
        rest = open[close + 1..].trim_start();
    }
    let maxpt = cycles.iter().flatten().map(|x| x + 1).max().unwrap_or(0);
    let deg = degree.unwrap_or(maxpt);
    if maxpt > deg {
        return Err(GrpError::Parse(format!("point exceeds degree {deg} in {s:?}")));
    }
    let mut p: Perm = (0..deg as u16).collect();
    // apply the rightmost cycle first
    for c in cycles.iter().rev() {
        let mut step: Perm = (0..deg as u16).collect();
        for k in 0..c.len() {
            step[c[k]] = c[(k + 1) % c.len()] as u16;
        }
        p = compose(&step, &p);
    }
    Ok(p)
}

/// Parses a group spec: one generator per line; blank text is the trivial group.
pub fn parse_group_spec(label: &str, text: &str) -> Result<FinGroup, GrpError> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let mut raw = Vec::new();
    let mut degree = 0;
    for l in &lines {
        let p = parse_cycles(l, None)?;
        degree = degree.max(p.len());
        raw.push(l);
    }
    let gens: Result<Vec<Perm>, _> = raw.iter().map(|l| parse_cycles(l, Some(degree))).collect();
    make_group(label, degree, &gens?)
}

pub const CATALOG: &[(&str, &[&str])] = &[
    ("C1", &[]),
    ("C2", &["(0 1)"]),
    ("C3", &["(0 1 2)"]),
    ("C4", &["(0 1 2 3)"]),
    ("C2xC2", &["(0 1)", "(2 3)"]),
    ("S3", &["(0 1 2)", "(0 1)"]),
    ("C6", &["(0 1 2)(3 4)"]),
    ("D8", &["(0 1 2 3)", "(0 2)"]),
    // regular representation of the quaternion group
    ("Q8", &["(0 1 3 6)(2 5 7 4)", "(0 2 3 7)(1 4 6 5)"]),
    ("C2xC4", &["(0 1)", "(2 3 4 5)"]),
    ("A4", &["(0 1 2)", "(0 1)(2 3)"]),
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

pub fn catalog(name: &str) -> Result<FinGroup, GrpError> {
    let (_, gens) =
        CATALOG.iter().find(|(n, _)| *n == name).ok_or_else(|| GrpError::UnknownGroup(name.into()))?;
    parse_group_spec(name, &gens.join("\n"))
}

pub fn trivial_group() -> FinGroup {
    make_group("C1", 1, &[]).expect("trivial group")
}

pub fn mask_of(elems: impl IntoIterator<Item = usize>) -> Mask {
    elems.into_iter().fold(0, |m, e| m | (1u128 << e))
}

pub fn mask_elems(m: Mask) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(e)
        }
    })
}

pub fn mask_order(m: Mask) -> usize {
    m.count_ones() as usize
}

impl FinGroup {
    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn with_label(&self, label: &str) -> FinGroup {
        let g = &self.0;
        let gens: Vec<Perm> = g.gens.iter().map(|i| g.elems[*i].clone()).collect();
        make_group(label, g.degree, &gens).expect("relabel")
    }

    pub fn order(&self) -> usize {
        self.0.elems.len()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn fingerprint(&self) -> u64 {
        self.0.fingerprint
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.gens
    }

    pub fn perm(&self, g: usize) -> &Perm {
        &self.0.elems[g]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.0.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn full_mask(&self) -> Mask {
        if self.order() == 128 {
            u128::MAX
        } else {
            (1u128 << self.order()) - 1
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn cycle_string(&self, g: usize) -> String {
        let p = &self.0.elems[g];
        let mut seen = vec![false; p.len()];
        let mut out = String::new();
        for s in 0..p.len() {
            if seen[s] || p[s] as usize == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = p[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x);
                x = p[x] as usize;
            }
            out.push('(');
            out.push_str(&c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            out.push(')');
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Mask {
        let mut m: Mask = 1;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.mul(*g, x);
                if m & (1u128 << y) == 0 {
                    m |= 1u128 << y;
                    stack.push(y);
                }
            }
        }
        m
    }

    pub fn is_subgroup_mask(&self, m: Mask) -> bool {
        if m & 1 == 0 {
            return false;
        }
        mask_elems(m).all(|a| mask_elems(m).all(|b| m & (1u128 << self.mul(a, self.inv(b))) != 0))
    }

    pub fn conjugate_mask(&self, g: usize, m: Mask) -> Mask {
        mask_elems(m).fold(0, |acc, x| acc | (1u128 << self.conj(g, x)))
    }

    pub fn is_normal_mask(&self, m: Mask) -> bool {
        self.0.gens.iter().all(|g| self.conjugate_mask(*g, m) == m)
    }

    pub fn normalizer(&self, m: Mask) -> Mask {
        self.elements().filter(|g| self.conjugate_mask(*g, m) == m).fold(0, |a, g| a | (1u128 << g))
    }

    /// Minimal element of the left coset `gH`.
    pub fn left_coset_min(&self, g: usize, h: Mask) -> usize {
        mask_elems(h).map(|x| self.mul(g, x)).min().expect("nonempty subgroup")
    }

    /// Sorted minimal representatives of the left cosets `G/H`.
    pub fn left_coset_reps(&self, h: Mask) -> Vec<usize> {
        let mut seen: Mask = 0;
        let mut reps = Vec::new();
        for g in self.elements() {
            if seen & (1u128 << g) != 0 {
                continue;
            }
            reps.push(g);
            for x in mask_elems(h) {
                seen |= 1u128 << self.mul(g, x);
            }
        }
        reps
    }

    /// Minimal representatives of the double cosets `H\G/K`, sorted.
    pub fn double_coset_reps(&self, h: Mask, k: Mask) -> Vec<usize> {
        let mut seen: Mask = 0;
        let mut reps = Vec::new();
        for g in self.elements() {
            if seen & (1u128 << g) != 0 {
                continue;
            }
            reps.push(g);
            for a in mask_elems(h) {
                let ag = self.mul(a, g);
                for b in mask_elems(k) {
                    seen |= 1u128 << self.mul(ag, b);
                }
            }
        }
        reps
    }

    pub fn subgroup(&self, m: Mask) -> Subgroup {
        debug_assert!(self.is_subgroup_mask(m));
        Subgroup { group: self.clone(), mask: m }
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup(self.full_mask())
    }

    pub fn trivial(&self) -> Subgroup {
        self.subgroup(1)
    }

    pub fn lattice(&self) -> &Lattice {
        self.0.lattice.get_or_init(|| Lattice::compute(self))
    }

    /// Deterministic short label for a subgroup: order plus a hash of its
    /// sorted element indices.
    pub fn subgroup_label(&self, m: Mask) -> String {
        let mut bytes = Vec::new();
        for e in mask_elems(m) {
            bytes.extend_from_slice(&(e as u16).to_le_bytes());
        }
        format!("{}:{}", mask_order(m), short_hash(&bytes))
    }
}

/// A subgroup, carrying its parent group.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FinGroup,
    pub mask: Mask,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} of {})", self.label(), self.group.label())
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        mask_order(self.mask)
    }

    pub fn elements(&self) -> Vec<usize> {
        mask_elems(self.mask).collect()
    }

    pub fn label(&self) -> String {
        self.group.subgroup_label(self.mask)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask & (1u128 << g) != 0
    }

    pub fn is_normal(&self) -> bool {
        self.group.is_normal_mask(self.mask)
    }

    fn same_parent(&self, other: &Subgroup) -> Result<(), GrpError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(GrpError::ParentMismatch)
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup, GrpError> {
        self.same_parent(other)?;
        Ok(Subgroup { group: self.group.clone(), mask: self.mask & other.mask })
    }

    /// Realizes the subgroup as a permutation group of its own, with the
    /// inclusion homomorphism.
    pub fn as_group(&self, label: &str) -> (FinGroup, GrpHom) {
        let g = &self.group;
        let elems = self.elements();
        let gens = minimal_generators(g, self.mask);
        let perms: Vec<Perm> = gens.iter().map(|x| g.perm(*x).clone()).collect();
        let h = make_group(label, g.degree(), &perms).expect("subgroup of capped group");
        let images = h.elements().map(|i| g.index_of(h.perm(i)).expect("same perms")).collect();
        debug_assert_eq!(elems.len(), h.order());
        (h.clone(), GrpHom { src: h, dst: g.clone(), images })
    }
}

/// A small generating set chosen greedily in element order.
pub fn minimal_generators(g: &FinGroup, m: Mask) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur: Mask = 1;
    for e in mask_elems(m) {
        if cur & (1u128 << e) == 0 {
            gens.push(e);
            cur = g.closure(&gens);
        }
    }
    gens
}

pub fn double_cosets(h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>, GrpError> {
    h.same_parent(k)?;
    Ok(h.group.double_coset_reps(h.mask, k.mask))
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Mask,
    pub order: usize,
    /// All conjugates, sorted.
    pub members: Vec<Mask>,
}

/// All subgroups grouped into conjugacy classes. Each subgroup `S` carries a
/// fixed element `c` with `S = c R c⁻¹`, `R` the class representative.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub classes: Vec<SubgroupClass>,
    lookup: HashMap<Mask, (usize, usize)>,
}

impl Lattice {
    fn compute(g: &FinGroup) -> Lattice {
        let mut all: BTreeSet<Mask> = BTreeSet::new();
        let cyclic: BTreeSet<Mask> = g.elements().map(|x| g.closure(&[x])).collect();
        all.extend(cyclic.iter().copied());
        let mut frontier: Vec<Mask> = all.iter().copied().collect();
        while let Some(s) = frontier.pop() {
            for c in &cyclic {
                if c & !s == 0 {
                    continue;
                }
                let gens: Vec<usize> = mask_elems(s | c).collect();
                let j = g.closure(&gens);
                if all.insert(j) {
                    frontier.push(j);
                }
            }
        }
        let mut lookup = HashMap::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for s in &all {
            if lookup.contains_key(s) {
                continue;
            }
            // s is minimal in its class because `all` is iterated in order
            let idx = classes.len();
            let mut members = BTreeSet::new();
            for c in g.elements() {
                let t = g.conjugate_mask(c, *s);
                members.insert(t);
                lookup.entry(t).or_insert((idx, c));
            }
            classes.push(SubgroupClass { rep: *s, order: mask_order(*s), members: members.into_iter().collect() });
        }
        // order classes by (order, rep) and renumber
        let mut perm: Vec<usize> = (0..classes.len()).collect();
        perm.sort_by_key(|i| (classes[*i].order, classes[*i].rep));
        let mut newpos = vec![0; classes.len()];
        for (new, old) in perm.iter().enumerate() {
            newpos[*old] = new;
        }
        let classes: Vec<SubgroupClass> = perm.iter().map(|i| classes[*i].clone()).collect();
        let lookup = lookup.into_iter().map(|(m, (c, e))| (m, (newpos[c], e))).collect();
        Lattice { classes, lookup }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `(class index, c)` with `S = c · rep · c⁻¹`.
    pub fn locate(&self, s: Mask) -> (usize, usize) {
        *self.lookup.get(&s).expect("mask is a subgroup")
    }

    pub fn class_of(&self, s: Mask) -> usize {
        self.locate(s).0
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn all_subgroups(&self) -> impl Iterator<Item = Mask> + '_ {
        self.classes.iter().flat_map(|c| c.members.iter().copied())
    }
}

pub fn subgroup_classes(g: &FinGroup) -> &[SubgroupClass] {
    &g.lattice().classes
}

/// A group homomorphism given on all elements.
#[derive(Clone, PartialEq, Eq)]
pub struct GrpHom {
    pub src: FinGroup,
    pub dst: FinGroup,
    pub images: Vec<usize>,
}

impl fmt::Debug for GrpHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrpHom({:?} -> {:?})", self.src, self.dst)
    }
}

impl GrpHom {
    pub fn new(src: FinGroup, dst: FinGroup, images: Vec<usize>) -> Result<GrpHom, GrpError> {
        let h = GrpHom { src, dst, images };
        if h.images.len() != h.src.order() || !h.is_homomorphism() {
            return Err(GrpError::NotHomomorphism);
        }
        Ok(h)
    }

    pub fn identity(g: &FinGroup) -> GrpHom {
        GrpHom { src: g.clone(), dst: g.clone(), images: g.elements().collect() }
    }

    pub fn is_homomorphism(&self) -> bool {
        let s = &self.src;
        let t = &self.dst;
        self.images[0] == 0
            && s.elements().all(|a| s.elements().all(|b| self.images[s.mul(a, b)] == t.mul(self.images[a], self.images[b])))
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_injective(&self) -> bool {
        let k = self.kernel_mask();
        k == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask(self.src.full_mask()) == self.dst.full_mask()
    }

    pub fn kernel_mask(&self) -> Mask {
        self.src.elements().filter(|g| self.images[*g] == 0).fold(0, |m, g| m | (1u128 << g))
    }

    pub fn image_mask(&self, m: Mask) -> Mask {
        mask_elems(m).fold(0, |acc, g| acc | (1u128 << self.images[g]))
    }

    pub fn preimage_mask(&self, m: Mask) -> Mask {
        self.src.elements().filter(|g| m & (1u128 << self.images[*g]) != 0).fold(0, |a, g| a | (1u128 << g))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GrpHom) -> GrpHom {
        debug_assert_eq!(other.dst, self.src);
        GrpHom {
            src: other.src.clone(),
            dst: self.dst.clone(),
            images: other.images.iter().map(|x| self.images[*x]).collect(),
        }
    }
}

/// `G → G/N` realized through the action on left cosets.
pub fn quotient(g: &FinGroup, n: &Subgroup) -> Result<(FinGroup, GrpHom), GrpError> {
    if n.group != *g {
        return Err(GrpError::ParentMismatch);
    }
    if !n.is_normal() {
        return Err(GrpError::NotNormal);
    }
    let reps = g.left_coset_reps(n.mask);
    let pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let degree = reps.len().max(1);
    let act = |x: usize| -> Perm {
        let mut p: Perm = vec![0; degree];
        if reps.len() == 1 {
            return p;
        }
        for (i, r) in reps.iter().enumerate() {
            let y = g.left_coset_min(g.mul(x, *r), n.mask);
            p[i] = pos[&y] as u16;
        }
        p
    };
    let gens: Vec<Perm> = g.generators().iter().map(|x| act(*x)).collect();
    let label = format!("{}/{}", g.label(), n.label());
    let q = make_group(&label, degree, &gens)?;
    let images = g.elements().map(|x| q.index_of(&act(x)).expect("image in quotient")).collect();
    let hom = GrpHom { src: g.clone(), dst: q.clone(), images };
    Ok((q, hom))
}

pub fn preimage(q: &GrpHom, kbar: &Subgroup) -> Result<Subgroup, GrpError> {
    if kbar.group != q.dst {
        return Err(GrpError::ParentMismatch);
    }
    Ok(q.src.subgroup(q.preimage_mask(kbar.mask)))
}

/// The fiber product `K = G ×_Q G` of a surjection `q: G → Q`.
pub struct FiberProduct {
    pub k: FinGroup,
    pub pr1: GrpHom,
    pub pr2: GrpHom,
    pub diag: GrpHom,
}

pub fn fiber_product(q: &GrpHom) -> Result<FiberProduct, GrpError> {
    if !q.is_surjective() {
        return Err(GrpError::NotSurjective);
    }
    let g = &q.src;
    let d = g.degree();
    let pair = |a: usize, b: usize| -> Perm {
        let mut p = g.perm(a).clone();
        p.extend(g.perm(b).iter().map(|x| x + d as u16));
        p
    };
    let n = q.kernel_mask();
    if g.order() * mask_order(n) > DEFAULT_ORDER_CAP {
        return Err(GrpError::OrderCapExceeded(DEFAULT_ORDER_CAP));
    }
    let mut gens: Vec<Perm> = g.generators().iter().map(|x| pair(*x, *x)).collect();
    for x in minimal_generators(g, n) {
        gens.push(pair(x, 0));
    }
    let label = format!("{}x_{}{}", g.label(), q.dst.label(), g.label());
    let k = make_group(&label, 2 * d, &gens)?;
    let split = |e: usize| -> (usize, usize) {
        let p = k.perm(e);
        let a: Perm = p[..d].to_vec();
        let b: Perm = p[d..].iter().map(|x| x - d as u16).collect();
        (g.index_of(&a).unwrap(), g.index_of(&b).unwrap())
    };
    let parts: Vec<(usize, usize)> = k.elements().map(split).collect();
    let pr1 = GrpHom { src: k.clone(), dst: g.clone(), images: parts.iter().map(|p| p.0).collect() };
    let pr2 = GrpHom { src: k.clone(), dst: g.clone(), images: parts.iter().map(|p| p.1).collect() };
    let diag = GrpHom {
        src: g.clone(),
        dst: k.clone(),
        images: g.elements().map(|a| k.index_of(&pair(a, a)).unwrap()).collect(),
    };
    Ok(FiberProduct { k, pr1, pr2, diag })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: brute-force all closed subsets.
    fn brute_subgroup_count(g: &FinGroup) -> usize {
        assert!(g.order() <= 12);
        (0u32..(1 << g.order())).filter(|m| g.is_subgroup_mask(*m as Mask)).count()
    }

    #[test]
    fn catalog_orders() {
        let expect = [
            ("C1", 1),
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("C2xC2", 4),
            ("S3", 6),
            ("C6", 6),
            ("D8", 8),
            ("Q8", 8),
            ("C2xC4", 8),
            ("A4", 12),
        ];
        for (n, o) in expect {
            let g = catalog(n).unwrap();
            assert_eq!(g.order(), o, "{n}");
            assert_eq!(g.perm(0), &(0..g.degree() as u16).collect::<Perm>());
        }
    }

    #[test]
    fn q8_has_unique_involution() {
        let g = catalog("Q8").unwrap();
        let involutions = g.elements().filter(|x| *x != 0 && g.mul(*x, *x) == 0).count();
        assert_eq!(involutions, 1);
        // not abelian
        assert!(g.elements().any(|a| g.elements().any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("(0 1 2)", None).unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_cycles("()", Some(3)).unwrap(), vec![0, 1, 2]);
        assert!(parse_cycles("(0 0)", None).is_err());
        assert!(parse_cycles("0 1", None).is_err());
        assert_eq!(parse_group_spec("T", "").unwrap().order(), 1);
    }

    #[test]
    fn order_cap() {
        let s5 = vec![parse_cycles("(0 1 2 3 4)", None).unwrap(), parse_cycles("(0 1)", Some(5)).unwrap()];
        assert_eq!(make_group_capped("S5", 5, &s5, 100).unwrap_err(), GrpError::OrderCapExceeded(100));
    }

    #[test]
    fn subgroup_class_counts() {
        let counts = [("C2", 2, 2), ("S3", 4, 6), ("C2xC2", 5, 5), ("D8", 8, 10), ("Q8", 6, 6), ("A4", 5, 10)];
        for (n, classes, total) in counts {
            let g = catalog(n).unwrap();
            let lat = g.lattice();
            assert_eq!(lat.len(), classes, "{n}");
            assert_eq!(lat.subgroup_count(), total, "{n}");
            assert_eq!(brute_subgroup_count(&g), total, "{n}");
        }
    }

    #[test]
    fn locate_conjugator() {
        let g = catalog("S3").unwrap();
        let lat = g.lattice();
        for s in lat.all_subgroups() {
            let (c, x) = lat.locate(s);
            assert_eq!(g.conjugate_mask(x, lat.classes[c].rep), s);
        }
    }

    #[test]
    fn double_coset_examples() {
        let g = catalog("S3").unwrap();
        let h = g.subgroup(g.closure(&[g.index_of(&parse_cycles("(0 1)", Some(3)).unwrap()).unwrap()]));
        assert_eq!(double_cosets(&h, &h).unwrap().len(), 2);
        let c2 = catalog("C2").unwrap();
        assert_eq!(double_cosets(&c2.trivial(), &c2.trivial()).unwrap().len(), 2);
        assert_eq!(double_cosets(&g.whole(), &g.whole()).unwrap().len(), 1);
        assert_eq!(double_cosets(&g.whole(), &c2.whole()).unwrap_err(), GrpError::ParentMismatch);
    }

    #[test]
    fn quotients() {
        let c4 = catalog("C4").unwrap();
        let n = c4.subgroup(c4.closure(&[c4.mul(c4.generators()[0], c4.generators()[0])]));
        let (q, hom) = quotient(&c4, &n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(hom.kernel_mask(), n.mask);
        assert!(hom.is_homomorphism() && hom.is_surjective());
        let (q, hom) = quotient(&c4, &c4.trivial()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(hom.is_injective());
        let (q, _) = quotient(&c4, &c4.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let s3 = catalog("S3").unwrap();
        let t = s3.subgroup(s3.closure(&[s3.index_of(&parse_cycles("(0 1)", Some(3)).unwrap()).unwrap()]));
        assert_eq!(quotient(&s3, &t).unwrap_err(), GrpError::NotNormal);
        // preimage of the whole quotient is everything
        let (q, hom) = quotient(&c4, &n).unwrap();
        assert_eq!(preimage(&hom, &q.whole()).unwrap().mask, c4.full_mask());
        assert_eq!(preimage(&hom, &q.trivial()).unwrap().mask, n.mask);
    }

    #[test]
    fn fiber_products() {
        let c2 = catalog("C2").unwrap();
        let (_, q) = quotient(&c2, &c2.whole()).unwrap();
        let fp = fiber_product(&q).unwrap();
        assert_eq!(fp.k.order(), 4);
        let c4 = catalog("C4").unwrap();
        let n = c4.subgroup(c4.closure(&[c4.mul(c4.generators()[0], c4.generators()[0])]));
        let (_, q) = quotient(&c4, &n).unwrap();
        let fp = fiber_product(&q).unwrap();
        assert_eq!(fp.k.order(), 8);
        for h in [&fp.pr1, &fp.pr2, &fp.diag] {
            assert!(h.is_homomorphism());
        }
        assert!(fp.pr1.compose(&fp.diag).images == GrpHom::identity(&c4).images);
        assert!(fp.pr2.compose(&fp.diag).images == GrpHom::identity(&c4).images);
        assert!(fp.diag.is_injective() && fp.pr1.is_surjective());
        assert_eq!(mask_order(fp.pr1.kernel_mask()), 2);
        let (_, id) = quotient(&c4, &c4.trivial()).unwrap();
        let fp = fiber_product(&id).unwrap();
        assert_eq!(fp.k.order(), 4);
    }

    #[test]
    fn labels_are_stable() {
        let g = catalog("S3").unwrap();
        let a = g.subgroup_label(g.full_mask());
        let b = catalog("S3").unwrap().subgroup_label(g.full_mask());
        assert_eq!(a, b);
        assert!(a.starts_with("6:"));
    }
}
