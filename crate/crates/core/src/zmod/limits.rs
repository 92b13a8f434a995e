//! Finite limits and colimits of abelian groups.

use super::abgrp::{cokernel_with_section, injection, kernel, projection, AbGrp, AbHom, Lifter};
use super::mat::Mat;
use super::ZError;

/// A finite diagram: objects and edges `(src, dst, map)`.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub objects: Vec<AbGrp>,
    pub edges: Vec<(usize, usize, AbHom)>,
}

impl Diagram {
    pub fn validate(&self) -> Result<(), ZError> {
        for (k, (s, t, h)) in self.edges.iter().enumerate() {
            if *s >= self.objects.len() || *t >= self.objects.len() {
                return Err(ZError::Diagram(format!("edge {k} references a missing object")));
            }
            if h.src.n_gens() != self.objects[*s].n_gens()
                || h.dst.n_gens() != self.objects[*t].n_gens()
            {
                return Err(ZError::Diagram(format!("edge {k} does not match its endpoints")));
            }
        }
        Ok(())
    }
}

pub struct Colimit {
    pub obj: AbGrp,
    pub legs: Vec<AbHom>,
    /// Section of the quotient map, from the colimit generators back to the
    /// direct sum of the objects.
    from: Mat,
}

impl Colimit {
    /// The map out of the colimit induced by a cocone `c_i: D_i -> T`.
    pub fn induced(&self, target: &AbGrp, cocone: &[AbHom]) -> AbHom {
        let blocks: Vec<&Mat> = cocone.iter().map(|h| &h.mat).collect();
        let total = Mat::hstack_rows(target.n_gens(), &blocks);
        AbHom::new_unchecked(self.obj.clone(), target.clone(), total.mul(&self.from))
    }
}

/// Cokernel of `⊕_edges D_s -> ⊕_objects D_i`, `x ↦ ι_t f(x) - ι_s x`.
pub fn finite_colimit(d: &Diagram) -> Result<Colimit, ZError> {
    d.validate()?;
    let sum = AbGrp::direct_sum(&d.objects);
    let esrc: Vec<AbGrp> = d.edges.iter().map(|(s, _, _)| d.objects[*s].clone()).collect();
    let esum = AbGrp::direct_sum(&esrc);
    let parts: Vec<AbHom> = d
        .edges
        .iter()
        .map(|(s, t, h)| {
            injection(&d.objects, &sum, *t).compose(h).sub(&injection(&d.objects, &sum, *s))
        })
        .collect();
    let diff = AbHom::copair(&sum, &esum, &parts);
    let (obj, proj, from) = cokernel_with_section(&diff);
    let legs = (0..d.objects.len()).map(|i| proj.compose(&injection(&d.objects, &sum, i))).collect();
    Ok(Colimit { obj, legs, from })
}

pub struct Limit {
    pub obj: AbGrp,
    pub legs: Vec<AbHom>,
    incl: AbHom,
    lifter: Lifter,
}

impl Limit {
    /// The map into the limit induced by a cone `c_i: T -> D_i`.
    pub fn induced(&self, source: &AbGrp, cone: &[AbHom]) -> Option<AbHom> {
        let g = AbHom::pair(source, &self.incl.dst, cone);
        self.lifter.lift(&g)
    }
}

/// Kernel of `⊕_objects D_i -> ⊕_edges D_t`, `x ↦ f(x_s) - x_t`.
pub fn finite_limit(d: &Diagram) -> Result<Limit, ZError> {
    d.validate()?;
    let sum = AbGrp::direct_sum(&d.objects);
    let etgt: Vec<AbGrp> = d.edges.iter().map(|(_, t, _)| d.objects[*t].clone()).collect();
    let esum = AbGrp::direct_sum(&etgt);
    let parts: Vec<AbHom> = d
        .edges
        .iter()
        .map(|(s, t, h)| {
            h.compose(&projection(&d.objects, &sum, *s)).sub(&projection(&d.objects, &sum, *t))
        })
        .collect();
    let diff = AbHom::pair(&sum, &esum, &parts);
    let (obj, incl) = kernel(&diff);
    let legs = (0..d.objects.len()).map(|i| projection(&d.objects, &sum, i).compose(&incl)).collect();
    let lifter = Lifter::new(&incl);
    Ok(Limit { obj, legs, incl, lifter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::abgrp::is_iso;
    use crate::zmod::Int;

    fn z() -> AbGrp {
        AbGrp::free(1)
    }

    fn scal(k: i64) -> AbHom {
        AbHom::new(z(), z(), Mat::from_rows(&[vec![k]])).unwrap()
    }

    #[test]
    fn single_object() {
        let d = Diagram { objects: vec![AbGrp::cyclic(4)], edges: vec![] };
        let c = finite_colimit(&d).unwrap();
        assert!(is_iso(&c.legs[0]));
        let l = finite_limit(&d).unwrap();
        assert!(is_iso(&l.legs[0]));
    }

    #[test]
    fn coequalizer_of_id_and_minus_id() {
        let d = Diagram { objects: vec![z(), z()], edges: vec![(0, 1, scal(1)), (0, 1, scal(-1))] };
        let c = finite_colimit(&d).unwrap();
        assert_eq!(c.obj.invariants().torsion, vec![Int::from(2)]);
        assert_eq!(c.obj.invariants().free_rank, 0);
    }

    #[test]
    fn pushout_two_three() {
        let d = Diagram { objects: vec![z(), z(), z()], edges: vec![(0, 1, scal(2)), (0, 2, scal(3))] };
        let c = finite_colimit(&d).unwrap();
        assert_eq!(c.obj.invariants().free_rank, 1);
        assert!(c.obj.invariants().torsion.is_empty());
    }

    #[test]
    fn equalizer_and_pullback() {
        let d = Diagram { objects: vec![z(), z()], edges: vec![(0, 1, scal(1)), (0, 1, scal(-1))] };
        assert!(finite_limit(&d).unwrap().obj.is_trivial());
        let d = Diagram { objects: vec![z(), z(), z()], edges: vec![(0, 2, scal(2)), (1, 2, scal(3))] };
        let l = finite_limit(&d).unwrap();
        assert_eq!(l.obj.invariants().free_rank, 1);
        // the generator goes to (3k, 2k) up to sign
        let a = l.legs[0].mat.get(0, 0).abs();
        let b = l.legs[1].mat.get(0, 0).abs();
        assert_eq!((a, b), (Int::from(3), Int::from(2)));
    }

    #[test]
    fn colimit_universal_property() {
        // coequalizer of 1 and -1 on Z, tested against the cocone Z -> Z/2
        let d = Diagram { objects: vec![z(), z()], edges: vec![(0, 1, scal(1)), (0, 1, scal(-1))] };
        let c = finite_colimit(&d).unwrap();
        let t = AbGrp::cyclic(2);
        let m = AbHom::new(z(), t.clone(), Mat::from_rows(&[vec![1]])).unwrap();
        let ind = c.induced(&t, &[m.clone(), m.clone()]);
        assert!(ind.is_well_defined());
        assert!(ind.compose(&c.legs[1]).eq_map(&m));
        assert!(is_iso(&ind));
    }
}
