//! Mackey functors: additive functors from the Burnside category to abelian
//! groups, evaluated covariantly on spans (`G/H ← G/L → G/K` acts as a map
//! `M(G/H) → M(G/K)`, so forward spans are transfers and backward spans
//! restrictions).
//!
//! A functor is a level per orbit plus an action per basis span. Both come
//! from a [`MackeySource`] and are memoized on first use.

mod build;
mod io;
mod limits;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::burnside::{Burnside, BurnsideHom, SpanImage};
use crate::grp::FinGroup;
use crate::zmod::{
    injection, is_iso, projection, snf_with, verify_smith, AbGrp, AbHom, Int, Mat, Smith, Track,
};

pub use build::{
    direct_sum, fixed_point_mackey, free_mackey, gmodule_fixed_points, yoneda, yoneda_element, zero_mackey,
    GModule, GModuleMap, TableSource,
};
pub use io::{parse_mackey, parse_mackey_file, write_mackey};
pub use limits::{mackey_colimit, mackey_limit, MackeyColimit, MackeyDiagram, MackeyLimit};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum MackeyError {
    #[error("morphism is not natural at span {0:?}")]
    NotNatural((usize, usize, usize)),
    #[error("axiom violation: {0}")]
    Axiom(String),
    #[error("no action given for generating span {0:?}")]
    MissingSpan((usize, usize, usize)),
    #[error("span {0:?} is not a generating span")]
    NotGenerating((usize, usize, usize)),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("io error: {0}")]
    Io(String),
}

/// Lazily evaluated data of a Mackey functor. `level` must be deterministic
/// and `action(h, k, i)` must map `level(h)` to `level(k)`.
pub trait MackeySource: Send + Sync {
    fn level(&self, h: usize) -> AbGrp;
    fn action(&self, h: usize, k: usize, idx: usize) -> AbHom;
}

struct Inner {
    burnside: Burnside,
    name: String,
    levels: Vec<OnceLock<AbGrp>>,
    actions: Mutex<HashMap<(usize, usize, usize), AbHom>>,
    source: Box<dyn MackeySource>,
}

#[derive(Clone)]
pub struct MackeyFunctor(Arc<Inner>);

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mackey[{}]({})", self.group().label(), self.0.name)
    }
}

impl MackeyFunctor {
    pub fn new(burnside: &Burnside, name: impl Into<String>, source: impl MackeySource + 'static) -> MackeyFunctor {
        let n = burnside.n_orbits();
        MackeyFunctor(Arc::new(Inner {
            burnside: burnside.clone(),
            name: name.into(),
            levels: (0..n).map(|_| OnceLock::new()).collect(),
            actions: Mutex::new(HashMap::new()),
            source: Box::new(source),
        }))
    }

    pub fn burnside(&self) -> &Burnside {
        &self.0.burnside
    }

    pub fn group(&self) -> &FinGroup {
        self.0.burnside.group()
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn n_levels(&self) -> usize {
        self.0.levels.len()
    }

    /// Stable identity of this functor object.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as *const () as usize
    }

    pub fn same(&self, other: &MackeyFunctor) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn level(&self, h: usize) -> &AbGrp {
        self.0.levels[h].get_or_init(|| self.0.source.level(h))
    }

    pub fn levels(&self) -> Vec<AbGrp> {
        (0..self.n_levels()).map(|h| self.level(h).clone()).collect()
    }

    /// Action of basis span `idx` of `B(h, k)`.
    pub fn action(&self, h: usize, k: usize, idx: usize) -> AbHom {
        if let Some(a) = self.0.actions.lock().unwrap().get(&(h, k, idx)) {
            return a.clone();
        }
        let mut a = self.0.source.action(h, k, idx);
        // share the memoized level objects
        a = a.retyped(self.level(h), self.level(k));
        self.0.actions.lock().unwrap().insert((h, k, idx), a.clone());
        a
    }

    pub fn act(&self, f: &BurnsideHom) -> AbHom {
        let mut out = AbHom::zero(self.level(f.src), self.level(f.dst));
        for (i, c) in &f.terms {
            out = out.add(&self.action(f.src, f.dst, *i).scale(&Int::from(*c)));
        }
        out
    }

    /// Value on a formal sum of orbits.
    pub fn sum_level(&self, objs: &[usize]) -> AbGrp {
        AbGrp::direct_sum(&objs.iter().map(|o| self.level(*o).clone()).collect::<Vec<_>>())
    }

    /// Block map `⊕ M(src_j) → ⊕ M(dst_k)` of a span matrix.
    pub fn act_image(&self, img: &SpanImage, src: &[usize], dst: &[usize], src_sum: &AbGrp, dst_sum: &AbGrp) -> AbHom {
        let mut m = Mat::zeros(dst_sum.n_gens(), src_sum.n_gens());
        let offs = |objs: &[usize]| -> Vec<usize> {
            let mut o = Vec::with_capacity(objs.len());
            let mut n = 0;
            for x in objs {
                o.push(n);
                n += self.level(*x).n_gens();
            }
            o
        };
        let (so, dof) = (offs(src), offs(dst));
        for ((k, j), h) in img {
            debug_assert_eq!((h.src, h.dst), (src[*j], dst[*k]));
            let a = self.act(h);
            m.paste(dof[*k], so[*j], &a.mat);
        }
        AbHom::new_unchecked(src_sum.clone(), dst_sum.clone(), m)
    }

    pub fn transfer(&self, h: usize, k: usize, b: usize) -> AbHom {
        self.act(&self.burnside().forward(h, k, b))
    }

    pub fn restriction(&self, k: usize, h: usize, b: usize) -> AbHom {
        self.act(&self.burnside().backward(k, h, b))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.n_levels()).all(|h| self.level(h).is_trivial())
    }

    /// Rank and torsion of each level, e.g. `["Z", "Z^2"]`.
    pub fn level_summary(&self) -> Vec<String> {
        (0..self.n_levels()).map(|h| self.level(h).describe()).collect()
    }

    /// Exhaustive axiom check: well-defined actions, identities, and the
    /// composite of every composable pair of basis spans.
    pub fn check_axioms(&self) -> AxiomReport {
        let b = self.burnside();
        let n = b.n_orbits();
        let mut rep = AxiomReport::default();
        for h in 0..n {
            for k in 0..n {
                for i in 0..b.basis(h, k).len() {
                    if !self.action(h, k, i).is_well_defined() {
                        rep.violations.push(Violation::NotWellDefined((h, k, i)));
                    }
                }
            }
        }
        for h in 0..n {
            if !self.act(&b.identity(h)).is_identity_map() {
                rep.violations.push(Violation::Identity(h));
            }
        }
        for h in 0..n {
            for k in 0..n {
                let nk = b.basis(h, k).len();
                for j in 0..n {
                    let nj = b.basis(k, j).len();
                    for phi in 0..nk {
                        let a1 = self.action(h, k, phi);
                        for psi in 0..nj {
                            let lhs = self.act(&b.compose_basis(h, k, j, phi, psi));
                            let rhs = self.action(k, j, psi).compose(&a1);
                            if !lhs.eq_map(&rhs) {
                                rep.violations.push(Violation::Composite { h, k, j, phi, psi });
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    /// Copies every level and action into a table-backed functor.
    pub fn tabulate(&self) -> MackeyFunctor {
        let b = self.burnside();
        let n = b.n_orbits();
        let mut actions = HashMap::new();
        for h in 0..n {
            for k in 0..n {
                for i in 0..b.basis(h, k).len() {
                    actions.insert((h, k, i), self.action(h, k, i));
                }
            }
        }
        MackeyFunctor::new(b, self.name(), TableSource { levels: self.levels(), actions })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotWellDefined((usize, usize, usize)),
    Identity(usize),
    Composite { h: usize, k: usize, j: usize, phi: usize, psi: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotWellDefined((h, k, i)) => write!(f, "span {i} of ({h},{k}) is not well defined"),
            Violation::Identity(h) => write!(f, "identity of orbit {h} does not act as the identity"),
            Violation::Composite { h, k, j, phi, psi } => {
                write!(f, "composite of span {phi} of ({h},{k}) with span {psi} of ({k},{j})")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A natural transformation, by components per orbit.
#[derive(Clone)]
pub struct MackeyMorphism {
    pub src: MackeyFunctor,
    pub dst: MackeyFunctor,
    pub components: Vec<AbHom>,
}

impl fmt::Debug for MackeyMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.src, self.dst)
    }
}

/// Which spans a naturality check covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanScope {
    /// Forward and backward spans; enough when both ends are functors.
    Generating,
    All,
}

impl MackeyMorphism {
    pub fn new(src: &MackeyFunctor, dst: &MackeyFunctor, components: Vec<AbHom>) -> Result<MackeyMorphism, MackeyError> {
        if src.burnside() != dst.burnside() {
            return Err(MackeyError::Shape("functors over different groups".into()));
        }
        if components.len() != src.n_levels() {
            return Err(MackeyError::Shape(format!("{} components for {} levels", components.len(), src.n_levels())));
        }
        let mut cs = Vec::with_capacity(components.len());
        for (h, c) in components.into_iter().enumerate() {
            if c.mat.shape() != (dst.level(h).n_gens(), src.level(h).n_gens()) {
                return Err(MackeyError::Shape(format!("component {h}")));
            }
            cs.push(c.retyped(src.level(h), dst.level(h)));
        }
        Ok(MackeyMorphism { src: src.clone(), dst: dst.clone(), components: cs })
    }

    pub fn identity(m: &MackeyFunctor) -> MackeyMorphism {
        let cs = (0..m.n_levels()).map(|h| AbHom::identity(m.level(h))).collect();
        MackeyMorphism { src: m.clone(), dst: m.clone(), components: cs }
    }

    pub fn zero(src: &MackeyFunctor, dst: &MackeyFunctor) -> MackeyMorphism {
        let cs = (0..src.n_levels()).map(|h| AbHom::zero(src.level(h), dst.level(h))).collect();
        MackeyMorphism { src: src.clone(), dst: dst.clone(), components: cs }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MackeyMorphism) -> MackeyMorphism {
        let cs = self.components.iter().zip(&other.components).map(|(a, b)| a.compose(b)).collect();
        MackeyMorphism { src: other.src.clone(), dst: self.dst.clone(), components: cs }
    }

    pub fn add(&self, other: &MackeyMorphism) -> MackeyMorphism {
        let cs = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        MackeyMorphism { src: self.src.clone(), dst: self.dst.clone(), components: cs }
    }

    pub fn sub(&self, other: &MackeyMorphism) -> MackeyMorphism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MackeyMorphism {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> MackeyMorphism {
        let c = Int::from(c);
        let cs = self.components.iter().map(|a| a.scale(&c)).collect();
        MackeyMorphism { src: self.src.clone(), dst: self.dst.clone(), components: cs }
    }

    /// Same endpoints (by level shape) and equal components as maps.
    pub fn eq_map(&self, other: &MackeyMorphism) -> bool {
        self.components.len() == other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.eq_map(b))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn naturality_failures(&self, scope: SpanScope) -> Vec<(usize, usize, usize)> {
        let b = self.src.burnside();
        let n = b.n_orbits();
        let mut bad = Vec::new();
        for h in 0..n {
            for k in 0..n {
                let idxs: Vec<usize> = match scope {
                    SpanScope::All => (0..b.basis(h, k).len()).collect(),
                    SpanScope::Generating => b.generating(h, k),
                };
                for i in idxs {
                    let lhs = self.dst.action(h, k, i).compose(&self.components[h]);
                    let rhs = self.components[k].compose(&self.src.action(h, k, i));
                    if !lhs.eq_map(&rhs) {
                        bad.push((h, k, i));
                    }
                }
            }
        }
        bad
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failures(SpanScope::Generating).is_empty()
    }

    pub fn check_natural(&self) -> Result<(), MackeyError> {
        match self.naturality_failures(SpanScope::Generating).first() {
            Some(s) => Err(MackeyError::NotNatural(*s)),
            None => Ok(()),
        }
    }

    /// Componentwise isomorphism test, without the naturality check.
    pub fn is_iso(&self) -> bool {
        self.components.iter().all(is_iso)
    }

    /// Inverse of an isomorphism, levelwise.
    pub fn inverse(&self) -> Option<MackeyMorphism> {
        let cs: Option<Vec<AbHom>> = self.components.iter().map(crate::zmod::inverse).collect();
        Some(MackeyMorphism { src: self.dst.clone(), dst: self.src.clone(), components: cs? })
    }

    /// Smith certificates for every component.
    pub fn certificates(&self) -> Vec<LevelCertificate> {
        self.components.iter().enumerate().map(|(h, c)| LevelCertificate::of(h, c)).collect()
    }
}

/// Isomorphism test with naturality check.
pub fn mackey_iso_test(phi: &MackeyMorphism) -> Result<bool, MackeyError> {
    phi.check_natural()?;
    Ok(phi.is_iso())
}

/// Smith data of one component: the matrix `[f | R_target]` and its
/// diagonalization, from which the cokernel of `f` is read off.
#[derive(Clone, Debug, serde::Serialize)]
pub struct LevelCertificate {
    pub level: usize,
    pub source: String,
    pub target: String,
    pub cokernel: String,
    pub is_iso: bool,
    #[serde(skip)]
    pub matrix: Mat,
    #[serde(skip)]
    pub smith: Smith,
}

impl LevelCertificate {
    pub fn of(level: usize, f: &AbHom) -> LevelCertificate {
        let m = Mat::hstack_rows(f.dst.n_gens(), &[&f.mat, f.dst.rels()]);
        let smith = snf_with(&m, Track::ALL);
        let coker = crate::zmod::cokernel(f).0;
        LevelCertificate {
            level,
            source: f.src.describe(),
            target: f.dst.describe(),
            cokernel: coker.describe(),
            is_iso: is_iso(f),
            matrix: m,
            smith,
        }
    }

    pub fn verify(&self) -> bool {
        verify_smith(&self.matrix, &self.smith)
    }
}

/// Injections and projections of a binary direct sum of functors.
pub struct Biproduct {
    pub sum: MackeyFunctor,
    pub inj: Vec<MackeyMorphism>,
    pub proj: Vec<MackeyMorphism>,
}

impl Biproduct {
    pub fn of(parts: &[MackeyFunctor]) -> Biproduct {
        let sum = direct_sum(parts);
        let n = sum.n_levels();
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for i in 0..parts.len() {
            let mut ci = Vec::new();
            let mut cp = Vec::new();
            for h in 0..n {
                let ls: Vec<AbGrp> = parts.iter().map(|p| p.level(h).clone()).collect();
                ci.push(injection(&ls, sum.level(h), i));
                cp.push(projection(&ls, sum.level(h), i));
            }
            inj.push(MackeyMorphism { src: parts[i].clone(), dst: sum.clone(), components: ci });
            proj.push(MackeyMorphism { src: sum.clone(), dst: parts[i].clone(), components: cp });
        }
        Biproduct { sum, inj, proj }
    }
}

#[cfg(test)]
mod tests;
