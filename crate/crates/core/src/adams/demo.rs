//! Fixed points of G-modules do not preserve surjections, while the Adams
//! norm for Mackey functors on the same group is an iso.

use serde::Serialize;

use super::{campaign::verify_item, AdamsError, AdamsInstance, Status};
use crate::burnside::Burnside;
use crate::grp::{catalog, quotient};
use crate::mackey::{free_mackey, GModule, GModuleMap};
use crate::zmod::{hom_invariants, is_epi, AbGrp, AbHom, Mat};

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointMap {
    pub source: String,
    pub target: String,
    pub matrix: Mat,
    pub injective: bool,
    pub surjective: bool,
}

impl FixedPointMap {
    fn of(f: &AbHom) -> FixedPointMap {
        let h = hom_invariants(f);
        FixedPointMap { source: f.src.describe(), target: f.dst.describe(), matrix: f.mat.clone(), injective: h.is_mono, surjective: h.is_epi }
    }

    /// `0` for the zero map, otherwise the matrix literal.
    pub fn display(&self) -> String {
        if self.matrix.is_zero() {
            "0".into()
        } else {
            self.matrix.to_string()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RepDemo {
    /// `F2[C2] → F2` is surjective.
    pub augmentation_surjective: bool,
    /// Its map on C2-fixed points.
    pub fixed: FixedPointMap,
    /// Identity of the trivial module `F2`, on fixed points.
    pub trivial: FixedPointMap,
    /// `Z[C2] → Z` on fixed points.
    pub integral: FixedPointMap,
    /// Adams norm for `(C2, C2)` at the free functor on `C2/e`.
    pub mackey_status: Status,
}

impl RepDemo {
    pub fn holds(&self) -> bool {
        self.augmentation_surjective
            && self.fixed.matrix.is_zero()
            && !self.fixed.surjective
            && self.trivial.surjective
            && self.integral.injective
            && !self.integral.surjective
            && self.mackey_status == Status::Pass
    }

    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("augmentation F2[C2] -> F2 surjective: {}", self.augmentation_surjective),
            format!("induced map on fixed points: {}", self.fixed.display()),
            format!("  {} -> {}, surjective: {}", self.fixed.source, self.fixed.target, self.fixed.surjective),
            format!("trivial module F2, induced map surjective: {}", self.trivial.surjective),
            format!(
                "Z[C2] -> Z, induced map on fixed points: {} (injective: {}, surjective: {})",
                self.integral.display(),
                self.integral.injective,
                self.integral.surjective
            ),
            format!("Mackey functors, Adams norm for (C2, C2) at the free functor on C2/e: {}", self.mackey_status),
        ]
    }
}

fn augmentation(v: &GModule, w: &GModule) -> Result<GModuleMap, AdamsError> {
    GModuleMap::new(v, w, Mat::from_rows(&[vec![1, 1]])).map_err(|e| AdamsError::Instance(e.to_string()))
}

pub fn rep_counterexample() -> Result<RepDemo, AdamsError> {
    let c2 = catalog("C2")?;
    let b = Burnside::of(&c2);
    let (_, q) = quotient(&c2, &c2.whole())?;
    let regular = &b.orbit(b.bottom()).gset;
    let f2 = GModule::trivial(&c2, &AbGrp::cyclic(2));
    let aug = augmentation(&GModule::permutation(regular, 2), &f2)?;
    let trivial = GModuleMap::new(&f2, &f2, Mat::identity(1)).map_err(|e| AdamsError::Instance(e.to_string()))?;
    let integral = augmentation(&GModule::permutation(regular, 0), &GModule::trivial(&c2, &AbGrp::free(1)))?;
    let inst = AdamsInstance::new(&c2, &c2.whole())?;
    let item = verify_item(&inst, "free at C2/e", &free_mackey(&b, b.bottom()));
    Ok(RepDemo {
        augmentation_surjective: is_epi(&aug.map),
        fixed: FixedPointMap::of(&aug.fixed_points(&q).map),
        trivial: FixedPointMap::of(&trivial.fixed_points(&q).map),
        integral: FixedPointMap::of(&integral.fixed_points(&q).map),
        mackey_status: item.status,
    })
}
