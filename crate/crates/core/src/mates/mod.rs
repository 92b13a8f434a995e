//! Beck-Chevalley maps of squares of restriction functors, and the
//! identities of the calculus of mates, checked at sample Mackey functors.

mod corpus;
#[cfg(test)]
mod tests;

pub use corpus::{
    fiber_square, identity_extension, identity_square, induction_chain, inflation_restriction, restriction_square, sample_corpus, shipped_corpus, sign_twist,
    wirthmuller_replacement, Rectangle,
};

use serde::Serialize;

use crate::kan::{mate, mate_bc, Adjunction, BcDirection, KanError, MackeyOp, NatTrans, Square};
use crate::mackey::{MackeyFunctor, MackeyMorphism};

/// A square `σ: u^*f^* ⇒ g^*v^*` with `f_! ⊣ f^*`, `g_! ⊣ g^*` and samples
/// over `A` (source of `u^*`) and `C` (source of `f^*`).
#[derive(Clone, Debug)]
pub struct PastingInstance {
    pub name: String,
    pub square: Square,
    pub adj_f: Adjunction,
    pub adj_g: Adjunction,
    pub samples_a: Vec<MackeyFunctor>,
    pub samples_c: Vec<MackeyFunctor>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MatesReport {
    pub instance: String,
    pub check: String,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl MatesReport {
    fn new(instance: &str, check: &str) -> MatesReport {
        MatesReport { instance: instance.to_string(), check: check.to_string(), ..Default::default() }
    }

    fn record(&mut self, what: String, r: Result<bool, KanError>) {
        self.samples += 1;
        match r {
            Ok(true) => {}
            Ok(false) => self.failures.push(what),
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.samples > 0 && self.failures.is_empty()
    }
}

fn same_ends(a: &MackeyOp, b: &MackeyOp) -> bool {
    a.src() == b.src() && a.dst() == b.dst()
}

impl PastingInstance {
    pub fn new(
        name: &str,
        square: Square,
        adj_f: Adjunction,
        adj_g: Adjunction,
        samples_a: Vec<MackeyFunctor>,
        samples_c: Vec<MackeyFunctor>,
    ) -> Result<PastingInstance, KanError> {
        if !same_ends(&adj_f.right, &square.f) || !same_ends(&adj_g.right, &square.g) {
            return Err(KanError::Square("adjunctions do not match the vertical sides".into()));
        }
        Ok(PastingInstance { name: name.to_string(), square, adj_f, adj_g, samples_a, samples_c })
    }

    /// `BC_!: g_!u^*X → v^*f_!X`.
    pub fn bc(&self, x: &MackeyFunctor) -> Result<MackeyMorphism, KanError> {
        mate_bc(&self.square, BcDirection::Left, &self.adj_f, &self.adj_g, x)
    }

    /// Triangle identities of both adjunctions at the samples and their images.
    pub fn check_triangles(&self) -> MatesReport {
        let mut r = MatesReport::new(&self.name, "triangles");
        let sq = &self.square;
        for (k, x) in self.samples_a.iter().enumerate() {
            let run = || -> Result<bool, KanError> {
                let y = self.adj_f.left.apply(x)?;
                let ux = sq.u.apply(x)?;
                let gux = self.adj_g.left.apply(&ux)?;
                Ok(self.adj_f.check_triangles(x, &y)? && self.adj_g.check_triangles(&ux, &gux)?)
            };
            r.record(format!("A sample {k}"), run());
        }
        for (k, y) in self.samples_c.iter().enumerate() {
            let run = || -> Result<bool, KanError> {
                let fy = sq.f.apply(y)?;
                let vy = sq.v.apply(y)?;
                let gvy = sq.g.apply(&vy)?;
                Ok(self.adj_f.check_triangles(&fy, y)? && self.adj_g.check_triangles(&gvy, &vy)?)
            };
            r.record(format!("C sample {k}"), run());
        }
        r
    }
}

/// Both unit-counit cancellation squares:
/// `v^*ε ∘ BC_!(f^*Y) = ε_{v^*Y} ∘ g_!σ_Y` and
/// `g^*BC_!(X) ∘ η_{u^*X} = σ_{f_!X} ∘ u^*η_X`.
pub fn check_unit_counit(inst: &PastingInstance) -> MatesReport {
    let mut r = MatesReport::new(&inst.name, "unit-counit");
    let sq = &inst.square;
    for (k, y) in inst.samples_c.iter().enumerate() {
        let run = || -> Result<bool, KanError> {
            let fy = sq.f.apply(y)?;
            let lhs = sq.v.apply_map(&inst.adj_f.counit.at(y)?)?.compose(&inst.bc(&fy)?);
            let vy = sq.v.apply(y)?;
            let rhs = inst.adj_g.counit.at(&vy)?.compose(&inst.adj_g.left.apply_map(&sq.sigma.at(y)?)?);
            Ok(lhs.eq_map(&rhs))
        };
        r.record(format!("counit square at C sample {k}"), run());
    }
    for (k, x) in inst.samples_a.iter().enumerate() {
        let run = || -> Result<bool, KanError> {
            let ux = sq.u.apply(x)?;
            let lhs = sq.g.apply_map(&inst.bc(x)?)?.compose(&inst.adj_g.unit.at(&ux)?);
            let fx = inst.adj_f.left.apply(x)?;
            let rhs = sq.sigma.at(&fx)?.compose(&sq.u.apply_map(&inst.adj_f.unit.at(x)?)?);
            Ok(lhs.eq_map(&rhs))
        };
        r.record(format!("unit square at A sample {k}"), run());
    }
    r
}

/// The rectangle obtained by pasting `second` to the right of `first`:
/// `second.f` is `first.g`, with the same adjunction.
pub fn paste_horizontal(first: &PastingInstance, second: &PastingInstance) -> Result<PastingInstance, KanError> {
    let (s1, s2) = (&first.square, &second.square);
    if !same_ends(&s1.g, &s2.f) {
        return Err(KanError::Square("squares are not horizontally composable".into()));
    }
    let (sigma, tau, w, v) = (s1.sigma.clone(), s2.sigma.clone(), s2.u.clone(), s1.v.clone());
    let total = NatTrans::new(
        MackeyOp::seq(&[&s1.f, &s1.u, &s2.u]),
        MackeyOp::seq(&[&s1.v, &s2.v, &s2.g]),
        move |m| {
            let vm = v.apply(m)?;
            Ok(tau.at(&vm)?.compose(&w.apply_map(&sigma.at(m)?)?))
        },
    );
    let square = Square::new(
        MackeyOp::seq(&[&s1.u, &s2.u]),
        MackeyOp::seq(&[&s1.v, &s2.v]),
        s1.f.clone(),
        s2.g.clone(),
        total,
    )?;
    PastingInstance::new(
        &format!("{} | {}", first.name, second.name),
        square,
        first.adj_f.clone(),
        second.adj_g.clone(),
        first.samples_a.clone(),
        first.samples_c.clone(),
    )
}

/// `BC_!(rectangle) = x^*BC_!(σ) ∘ BC_!(τ)_{u^*X}` at the samples of `first`.
pub fn check_horizontal(first: &PastingInstance, second: &PastingInstance) -> MatesReport {
    let mut r = MatesReport::new(&format!("{} | {}", first.name, second.name), "horizontal");
    let total = match paste_horizontal(first, second) {
        Ok(t) => t,
        Err(e) => {
            r.record("pasting".into(), Err(e));
            return r;
        }
    };
    for (k, x) in first.samples_a.iter().enumerate() {
        let run = || -> Result<bool, KanError> {
            let ux = first.square.u.apply(x)?;
            let step = second.square.v.apply_map(&first.bc(x)?)?.compose(&second.bc(&ux)?);
            Ok(total.bc(x)?.eq_map(&step))
        };
        r.record(format!("A sample {k}"), run());
    }
    r
}

/// Replacement of the vertical sides by isomorphic functors:
/// `α: f'^* ⇒ f^*`, `β: g'^* ⇒ g^*`, with `f'_! ⊣ f'^*`, `g'_! ⊣ g'^*`.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub name: String,
    pub adj_f: Adjunction,
    pub adj_g: Adjunction,
    pub alpha: NatTrans,
    pub beta: NatTrans,
}

impl Replacement {
    /// Keeps both sides and adjunctions.
    pub fn identity(inst: &PastingInstance) -> Replacement {
        Replacement {
            name: "identity".into(),
            adj_f: inst.adj_f.clone(),
            adj_g: inst.adj_g.clone(),
            alpha: NatTrans::identity(&inst.square.f),
            beta: NatTrans::identity(&inst.square.g),
        }
    }

    /// The square `β^{-1}v^* ∘ σ ∘ u^*α: u^*f'^* ⇒ g'^*v^*`.
    pub fn apply(&self, inst: &PastingInstance) -> Result<PastingInstance, KanError> {
        let sq = &inst.square;
        let (alpha, beta, sigma, u, v) = (self.alpha.clone(), self.beta.clone(), sq.sigma.clone(), sq.u.clone(), sq.v.clone());
        let f2 = self.adj_f.right.clone();
        let g2 = self.adj_g.right.clone();
        let sigma2 = NatTrans::new(MackeyOp::seq(&[&f2, &u]), MackeyOp::seq(&[&v, &g2]), move |m| {
            let vm = v.apply(m)?;
            let b = beta.at(&vm)?.inverse().ok_or_else(|| KanError::NotIso("replacement of g^*".into()))?;
            Ok(b.compose(&sigma.at(m)?).compose(&u.apply_map(&alpha.at(m)?)?))
        });
        let square = Square::new(sq.u.clone(), sq.v.clone(), f2, g2, sigma2)?;
        PastingInstance::new(
            &format!("{} / {}", inst.name, self.name),
            square,
            self.adj_f.clone(),
            self.adj_g.clone(),
            inst.samples_a.clone(),
            inst.samples_c.clone(),
        )
    }
}

/// `v^*(mate α) ∘ BC_! = BC'_! ∘ (mate β)_{u^*X}`, with both mates isos.
pub fn check_invariance(inst: &PastingInstance, rep: &Replacement) -> MatesReport {
    let mut r = MatesReport::new(&format!("{} / {}", inst.name, rep.name), "invariance");
    let replaced = match rep.apply(inst) {
        Ok(t) => t,
        Err(e) => {
            r.record("replacement".into(), Err(e));
            return r;
        }
    };
    let mf = mate(&rep.alpha, &inst.adj_f, &rep.adj_f);
    let mg = mate(&rep.beta, &inst.adj_g, &rep.adj_g);
    for (k, x) in inst.samples_a.iter().enumerate() {
        let run = || -> Result<bool, KanError> {
            let ux = inst.square.u.apply(x)?;
            let (a, b) = (mf.at(x)?, mg.at(&ux)?);
            if !a.is_iso() || !b.is_iso() {
                return Ok(false);
            }
            let lhs = inst.square.v.apply_map(&a)?.compose(&inst.bc(x)?);
            let rhs = replaced.bc(x)?.compose(&b);
            Ok(lhs.eq_map(&rhs))
        };
        r.record(format!("A sample {k}"), run());
    }
    r
}
