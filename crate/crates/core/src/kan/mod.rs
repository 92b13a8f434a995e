//! Precomposition and Kan extensions of Mackey functors along Z-linear
//! functors between Burnside categories.
//!
//! For `F: B_A → B_B`, precomposition `F^*` has both adjoints. The left
//! adjoint is computed pointwise as the cokernel of the coend presentation
//!
//! ```text
//! ⊕_{φ: a→a'} B(Fa', b) ⊗ M(a)  →  ⊕_a B(Fa, b) ⊗ M(a)
//! ```
//!
//! and the right adjoint as the kernel of the dual end presentation.
//! Relations run over generating spans only; they generate all others
//! under composition.

mod lan;
mod ops;
mod ran;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::burnside::{ZLinError, ZLinFunctor, ZLinTrans};
use crate::mackey::{MackeyError, MackeyFunctor, MackeyMorphism, MackeySource};
use crate::zmod::{AbGrp, AbHom, Mat};

pub use lan::Lan;
pub use ops::{mate, mate_bc, Adjunction, BcDirection, MackeyOp, NatTrans, Square};
pub use ran::Ran;

#[derive(Debug, Clone, thiserror::Error)]
pub enum KanError {
    #[error("functor has not been verified")]
    UnverifiedFunctor,
    #[error("mismatched categories: {0}")]
    Mismatch(String),
    #[error("square does not match: {0}")]
    Square(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error(transparent)]
    Functor(#[from] ZLinError),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
}

fn usable(f: &ZLinFunctor) -> Result<(), KanError> {
    if f.is_usable() {
        Ok(())
    } else {
        Err(KanError::UnverifiedFunctor)
    }
}

fn over(f: &ZLinFunctor, m: &MackeyFunctor, src_side: bool) -> Result<(), KanError> {
    let want = if src_side { f.dst() } else { f.src() };
    if m.burnside() != want {
        return Err(KanError::Mismatch(format!(
            "functor over {} applied to {}",
            want.group().label(),
            m.group().label()
        )));
    }
    Ok(())
}

type Memo<T> = Mutex<HashMap<(usize, usize), (ZLinFunctor, MackeyFunctor, T)>>;

/// Memoizes per (functor, functor object). Keys hold both objects, so an
/// identity is never reused while its entry is alive.
fn memo<T: Clone>(cache: &Memo<T>, f: &ZLinFunctor, m: &MackeyFunctor, make: impl FnOnce() -> T) -> T {
    let key = (f.id(), m.id());
    if let Some((_, _, v)) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = make();
    let mut c = cache.lock().unwrap();
    if c.len() > 4096 {
        c.clear();
    }
    c.entry(key).or_insert_with(|| (f.clone(), m.clone(), v)).2.clone()
}

struct PreSource {
    f: ZLinFunctor,
    m: MackeyFunctor,
}

impl MackeySource for PreSource {
    fn level(&self, a: usize) -> AbGrp {
        self.m.sum_level(&self.f.object(a))
    }

    fn action(&self, a: usize, a2: usize, idx: usize) -> AbHom {
        let (o1, o2) = (self.f.object(a), self.f.object(a2));
        let (l1, l2) = (self.m.sum_level(&o1), self.m.sum_level(&o2));
        self.m.act_image(&self.f.on_basis(a, a2, idx), &o1, &o2, &l1, &l2)
    }
}

fn pre_cache() -> &'static Memo<MackeyFunctor> {
    static C: OnceLock<Memo<MackeyFunctor>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `F^*M = M ∘ F`.
pub fn precompose(f: &ZLinFunctor, m: &MackeyFunctor) -> Result<MackeyFunctor, KanError> {
    usable(f)?;
    over(f, m, true)?;
    Ok(memo(pre_cache(), f, m, || {
        MackeyFunctor::new(f.src(), format!("pre({})", m.name()), PreSource { f: f.clone(), m: m.clone() })
    }))
}

/// `F^*φ`, block diagonal over the summands of each `F(a)`.
pub fn precompose_map(f: &ZLinFunctor, phi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
    let src = precompose(f, &phi.src)?;
    let dst = precompose(f, &phi.dst)?;
    let cs = (0..f.src().n_orbits())
        .map(|a| {
            let parts: Vec<AbHom> = f.object(a).iter().map(|o| phi.components[*o].clone()).collect();
            AbHom::direct_sum(&parts).retyped(src.level(a), dst.level(a))
        })
        .collect();
    Ok(MackeyMorphism { src, dst, components: cs })
}

/// `θ^*: F^*M → F'^*M` for a transformation `θ: F ⇒ F'`.
pub fn precompose_trans(t: &ZLinTrans, m: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
    let src = precompose(&t.src, m)?;
    let dst = precompose(&t.dst, m)?;
    let cs = (0..t.src.src().n_orbits())
        .map(|a| m.act_image(&t.comps[a], &t.src.object(a), &t.dst.object(a), src.level(a), dst.level(a)))
        .collect();
    Ok(MackeyMorphism { src, dst, components: cs })
}

/// The identity map between two functors with identical presentations,
/// e.g. `E^*F^*M` and `(F∘E)^*M`.
pub fn identification(src: &MackeyFunctor, dst: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
    let cs = (0..src.n_levels())
        .map(|h| {
            let (a, b) = (src.level(h), dst.level(h));
            if a != b {
                let n = a.n_gens();
                let same = n == b.n_gens()
                    && AbHom::new(a.clone(), b.clone(), Mat::identity(n)).is_ok()
                    && AbHom::new(b.clone(), a.clone(), Mat::identity(n)).is_ok();
                if !same {
                    return Err(KanError::NotIso(format!("levels {h} differ")));
                }
            }
            Ok(AbHom::identity(a).retyped(a, b))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MackeyMorphism::new(src, dst, cs)?)
}

pub(crate) fn lan_cache() -> &'static Memo<Lan> {
    static C: OnceLock<Memo<Lan>> = OnceLock::new();
    C.get_or_init(Default::default)
}

pub(crate) fn ran_cache() -> &'static Memo<Ran> {
    static C: OnceLock<Memo<Ran>> = OnceLock::new();
    C.get_or_init(Default::default)
}

pub fn lan(f: &ZLinFunctor, m: &MackeyFunctor) -> Result<Lan, KanError> {
    Lan::of(f, m)
}

pub fn ran(f: &ZLinFunctor, m: &MackeyFunctor) -> Result<Ran, KanError> {
    Ran::of(f, m)
}
