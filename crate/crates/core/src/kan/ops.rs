//! Functors between categories of Mackey functors, natural transformations
//! between them, adjunctions, and mates.

use std::fmt;
use std::sync::Arc;

use super::{precompose, precompose_map, precompose_trans, KanError, Lan, Ran};
use crate::burnside::{Burnside, ZLinFunctor, ZLinTrans};
use crate::mackey::{MackeyFunctor, MackeyMorphism};

/// A functor `Mack(G) → Mack(G')` built from precompositions and Kan
/// extensions. `Seq` applies its parts left to right.
#[derive(Clone)]
pub enum MackeyOp {
    Id(Burnside),
    Pre(ZLinFunctor),
    Lan(ZLinFunctor),
    Ran(ZLinFunctor),
    Seq(Vec<MackeyOp>),
}

impl fmt::Debug for MackeyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl MackeyOp {
    pub fn seq(parts: &[&MackeyOp]) -> MackeyOp {
        let mut v = Vec::new();
        for p in parts {
            match p {
                MackeyOp::Seq(q) => v.extend(q.iter().cloned()),
                MackeyOp::Id(_) => {}
                other => v.push((*other).clone()),
            }
        }
        if v.is_empty() {
            return MackeyOp::Id(parts[0].src().clone());
        }
        if v.len() == 1 {
            return v.pop().unwrap();
        }
        MackeyOp::Seq(v)
    }

    pub fn src(&self) -> &Burnside {
        match self {
            MackeyOp::Id(b) => b,
            MackeyOp::Pre(f) => f.dst(),
            MackeyOp::Lan(f) | MackeyOp::Ran(f) => f.src(),
            MackeyOp::Seq(v) => v[0].src(),
        }
    }

    pub fn dst(&self) -> &Burnside {
        match self {
            MackeyOp::Id(b) => b,
            MackeyOp::Pre(f) => f.src(),
            MackeyOp::Lan(f) | MackeyOp::Ran(f) => f.dst(),
            MackeyOp::Seq(v) => v[v.len() - 1].dst(),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            MackeyOp::Id(b) => format!("id[{}]", b.group().label()),
            MackeyOp::Pre(f) => format!("pre[{f:?}]"),
            MackeyOp::Lan(f) => format!("lan[{f:?}]"),
            MackeyOp::Ran(f) => format!("ran[{f:?}]"),
            MackeyOp::Seq(v) => v.iter().map(|p| p.tag()).collect::<Vec<_>>().join(" ; "),
        }
    }

    pub fn apply(&self, m: &MackeyFunctor) -> Result<MackeyFunctor, KanError> {
        Ok(match self {
            MackeyOp::Id(_) => m.clone(),
            MackeyOp::Pre(f) => precompose(f, m)?,
            MackeyOp::Lan(f) => Lan::of(f, m)?.obj,
            MackeyOp::Ran(f) => Ran::of(f, m)?.obj,
            MackeyOp::Seq(v) => {
                let mut x = m.clone();
                for p in v {
                    x = p.apply(&x)?;
                }
                x
            }
        })
    }

    pub fn apply_map(&self, phi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        Ok(match self {
            MackeyOp::Id(_) => phi.clone(),
            MackeyOp::Pre(f) => precompose_map(f, phi)?,
            MackeyOp::Lan(f) => Lan::of(f, &phi.src)?.map(&Lan::of(f, &phi.dst)?, phi)?,
            MackeyOp::Ran(f) => Ran::of(f, &phi.src)?.map(&Ran::of(f, &phi.dst)?, phi)?,
            MackeyOp::Seq(v) => {
                let mut x = phi.clone();
                for p in v {
                    x = p.apply_map(&x)?;
                }
                x
            }
        })
    }
}

type Component = dyn Fn(&MackeyFunctor) -> Result<MackeyMorphism, KanError> + Send + Sync;

/// A natural transformation `src ⇒ dst`, evaluated on demand.
#[derive(Clone)]
pub struct NatTrans {
    pub src: MackeyOp,
    pub dst: MackeyOp,
    comp: Arc<Component>,
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} => {:?}", self.src, self.dst)
    }
}

impl NatTrans {
    pub fn new(
        src: MackeyOp,
        dst: MackeyOp,
        comp: impl Fn(&MackeyFunctor) -> Result<MackeyMorphism, KanError> + Send + Sync + 'static,
    ) -> NatTrans {
        NatTrans { src, dst, comp: Arc::new(comp) }
    }

    pub fn at(&self, m: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        (self.comp)(m)
    }

    pub fn identity(op: &MackeyOp) -> NatTrans {
        let o = op.clone();
        NatTrans::new(op.clone(), op.clone(), move |m| Ok(MackeyMorphism::identity(&o.apply(m)?)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NatTrans) -> NatTrans {
        let (a, b) = (self.clone(), other.clone());
        NatTrans::new(other.src.clone(), self.dst.clone(), move |m| Ok(a.at(m)?.compose(&b.at(m)?)))
    }

    /// `H θ`: apply `h` after both ends.
    pub fn then_op(&self, h: &MackeyOp) -> NatTrans {
        let (t, h2) = (self.clone(), h.clone());
        NatTrans::new(MackeyOp::seq(&[&self.src, h]), MackeyOp::seq(&[&self.dst, h]), move |m| h2.apply_map(&t.at(m)?))
    }

    /// `θ H`: apply `h` before both ends.
    pub fn op_then(&self, h: &MackeyOp) -> NatTrans {
        let (t, h2) = (self.clone(), h.clone());
        NatTrans::new(MackeyOp::seq(&[h, &self.src]), MackeyOp::seq(&[h, &self.dst]), move |m| t.at(&h2.apply(m)?))
    }

    /// Componentwise inverse; fails at components that are not invertible.
    pub fn inverse(&self) -> NatTrans {
        let t = self.clone();
        NatTrans::new(self.dst.clone(), self.src.clone(), move |m| {
            t.at(m)?.inverse().ok_or_else(|| KanError::NotIso(format!("{:?} at {}", t, m.name())))
        })
    }

    /// `θ^*: F^* ⇒ F'^*` for `θ: F ⇒ F'`.
    pub fn pre_trans(t: &ZLinTrans) -> NatTrans {
        let t2 = t.clone();
        NatTrans::new(MackeyOp::Pre(t.src.clone()), MackeyOp::Pre(t.dst.clone()), move |m| precompose_trans(&t2, m))
    }

    /// Relabels the ends, for functors that agree on the nose.
    pub fn retagged(&self, src: MackeyOp, dst: MackeyOp) -> NatTrans {
        NatTrans { src, dst, comp: self.comp.clone() }
    }
}

#[derive(Clone, Debug)]
enum AdjKind {
    Lan(ZLinFunctor),
    Ran(ZLinFunctor),
    Composite(Box<Adjunction>, Box<Adjunction>),
    Generic,
}

/// `left ⊣ right` with unit `id ⇒ right∘left` and counit `left∘right ⇒ id`.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: MackeyOp,
    pub right: MackeyOp,
    pub unit: NatTrans,
    pub counit: NatTrans,
    kind: AdjKind,
}

impl Adjunction {
    pub fn new(left: MackeyOp, right: MackeyOp, unit: NatTrans, counit: NatTrans) -> Adjunction {
        Adjunction { left, right, unit, counit, kind: AdjKind::Generic }
    }

    /// `Lan_F ⊣ F^*`.
    pub fn lan(f: &ZLinFunctor) -> Adjunction {
        let (left, right) = (MackeyOp::Lan(f.clone()), MackeyOp::Pre(f.clone()));
        let (f1, f2) = (f.clone(), f.clone());
        let unit = NatTrans::new(MackeyOp::Id(f.src().clone()), MackeyOp::seq(&[&left, &right]), move |m| {
            Lan::of(&f1, m)?.unit()
        });
        let counit = NatTrans::new(MackeyOp::seq(&[&right, &left]), MackeyOp::Id(f.dst().clone()), move |n| {
            Lan::counit(&f2, n)
        });
        Adjunction { left, right, unit, counit, kind: AdjKind::Lan(f.clone()) }
    }

    /// `F^* ⊣ Ran_F`.
    pub fn ran(f: &ZLinFunctor) -> Adjunction {
        let (left, right) = (MackeyOp::Pre(f.clone()), MackeyOp::Ran(f.clone()));
        let (f1, f2) = (f.clone(), f.clone());
        let unit = NatTrans::new(MackeyOp::Id(f.dst().clone()), MackeyOp::seq(&[&left, &right]), move |n| {
            Ran::unit(&f1, n)
        });
        let counit = NatTrans::new(MackeyOp::seq(&[&right, &left]), MackeyOp::Id(f.src().clone()), move |m| {
            Ran::of(&f2, m)?.counit()
        });
        Adjunction { left, right, unit, counit, kind: AdjKind::Ran(f.clone()) }
    }

    /// `L2∘L1 ⊣ R1∘R2` from `self = L1 ⊣ R1` and `other = L2 ⊣ R2`.
    pub fn compose(&self, other: &Adjunction) -> Adjunction {
        let left = MackeyOp::seq(&[&self.left, &other.left]);
        let right = MackeyOp::seq(&[&other.right, &self.right]);
        let (a1, a2) = (self.clone(), other.clone());
        let unit = NatTrans::new(MackeyOp::Id(self.left.src().clone()), MackeyOp::seq(&[&left, &right]), move |x| {
            let e1 = a1.unit.at(x)?;
            let l1x = a1.left.apply(x)?;
            let e2 = a2.unit.at(&l1x)?;
            Ok(a1.right.apply_map(&e2)?.compose(&e1))
        });
        let (a1, a2) = (self.clone(), other.clone());
        let counit = NatTrans::new(MackeyOp::seq(&[&right, &left]), MackeyOp::Id(other.left.dst().clone()), move |y| {
            let r2y = a2.right.apply(y)?;
            let e1 = a1.counit.at(&r2y)?;
            Ok(a2.counit.at(y)?.compose(&a2.left.apply_map(&e1)?))
        });
        Adjunction { left, right, unit, counit, kind: AdjKind::Composite(Box::new(self.clone()), Box::new(other.clone())) }
    }

    /// `L X → Y` from `ψ: X → R Y`.
    pub fn left_adjunct(&self, y: &MackeyFunctor, psi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        match &self.kind {
            AdjKind::Lan(f) => Lan::of(f, &psi.src)?.adjunct(y, psi),
            AdjKind::Composite(a1, a2) => {
                let r2y = a2.right.apply(y)?;
                a2.left_adjunct(y, &a1.left_adjunct(&r2y, psi)?)
            }
            _ => Ok(self.counit.at(y)?.compose(&self.left.apply_map(psi)?)),
        }
    }

    /// `X → R Y` from `φ: L X → Y`.
    pub fn right_adjunct(&self, x: &MackeyFunctor, phi: &MackeyMorphism) -> Result<MackeyMorphism, KanError> {
        match &self.kind {
            AdjKind::Ran(f) => Ran::of(f, &phi.dst)?.adjunct(x, phi),
            AdjKind::Composite(a1, a2) => {
                let l1x = a1.left.apply(x)?;
                a1.right_adjunct(x, &a2.right_adjunct(&l1x, phi)?)
            }
            _ => Ok(self.right.apply_map(phi)?.compose(&self.unit.at(x)?)),
        }
    }

    /// Both triangle identities at `x` (source side) and `y` (target side).
    pub fn check_triangles(&self, x: &MackeyFunctor, y: &MackeyFunctor) -> Result<bool, KanError> {
        let lx = self.left.apply(x)?;
        let t1 = self.counit.at(&lx)?.compose(&self.left.apply_map(&self.unit.at(x)?)?);
        let ry = self.right.apply(y)?;
        let t2 = self.right.apply_map(&self.counit.at(y)?)?.compose(&self.unit.at(&ry)?);
        Ok(t1.eq_map(&MackeyMorphism::identity(&lx)) && t2.eq_map(&MackeyMorphism::identity(&ry)))
    }
}

/// The mate `σ: L1 ⇒ L2` of `τ: R2 ⇒ R1`, for `L1 ⊣ R1` and `L2 ⊣ R2`.
pub fn mate(tau: &NatTrans, adj1: &Adjunction, adj2: &Adjunction) -> NatTrans {
    let (t, a1, a2) = (tau.clone(), adj1.clone(), adj2.clone());
    NatTrans::new(adj1.left.clone(), adj2.left.clone(), move |x| {
        let l2x = a2.left.apply(x)?;
        let psi = t.at(&l2x)?.compose(&a2.unit.at(x)?);
        a1.left_adjunct(&l2x, &psi)
    })
}

/// A square of restriction functors `u^*: A → B`, `v^*: C → D`,
/// `f^*: C → A`, `g^*: D → B` with `σ: u^*f^* ⇒ g^*v^*`.
#[derive(Clone, Debug)]
pub struct Square {
    pub u: MackeyOp,
    pub v: MackeyOp,
    pub f: MackeyOp,
    pub g: MackeyOp,
    pub sigma: NatTrans,
}

impl Square {
    pub fn new(u: MackeyOp, v: MackeyOp, f: MackeyOp, g: MackeyOp, sigma: NatTrans) -> Result<Square, KanError> {
        let ok = u.dst() == g.dst()
            && f.dst() == u.src()
            && v.dst() == g.src()
            && f.src() == v.src()
            && sigma.src.src() == f.src()
            && sigma.dst.dst() == g.dst();
        if !ok {
            return Err(KanError::Square("ends do not match".into()));
        }
        Ok(Square { u, v, f, g, sigma })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcDirection {
    /// `g_! u^* X → v^* f_! X` for `X` over `A`, from `f_! ⊣ f^*`, `g_! ⊣ g^*`.
    Left,
    /// `f^* v_* Y → u_* g^* Y` for `Y` over `D`, from `u^* ⊣ u_*`, `v^* ⊣ v_*`.
    Right,
}

/// The Beck-Chevalley map of a square at one object.
pub fn mate_bc(
    sq: &Square,
    dir: BcDirection,
    adj1: &Adjunction,
    adj2: &Adjunction,
    x: &MackeyFunctor,
) -> Result<MackeyMorphism, KanError> {
    match dir {
        BcDirection::Left => {
            let (adj_f, adj_g) = (adj1, adj2);
            let fx = adj_f.left.apply(x)?;
            let eta = adj_f.unit.at(x)?;
            let psi = sq.sigma.at(&fx)?.compose(&sq.u.apply_map(&eta)?);
            let target = sq.v.apply(&fx)?;
            adj_g.left_adjunct(&target, &psi)
        }
        BcDirection::Right => {
            let (adj_u, adj_v) = (adj1, adj2);
            let vy = adj_v.right.apply(x)?;
            let eps = adj_v.counit.at(x)?;
            let phi = sq.g.apply_map(&eps)?.compose(&sq.sigma.at(&vy)?);
            let src = sq.f.apply(&vy)?;
            adj_u.right_adjunct(&src, &phi)
        }
    }
}
