use std::collections::HashMap;

use super::*;
use crate::burnside::GSet;
use crate::grp::{catalog, quotient};
use crate::zmod::{hom_invariants, Int};

fn b(name: &str) -> Burnside {
    Burnside::of(&catalog(name).unwrap())
}

fn ranks(m: &MackeyFunctor) -> Vec<usize> {
    (0..m.n_levels()).map(|h| m.level(h).invariants().free_rank).collect()
}

fn z() -> AbGrp {
    AbGrp::free(1)
}

fn m1(v: i64) -> Mat {
    Mat::from_rows(&[vec![v]])
}

#[test]
fn free_levels_c2() {
    let c2 = b("C2");
    assert_eq!(ranks(&free_mackey(&c2, 0)), vec![2, 1]);
    assert_eq!(ranks(&free_mackey(&c2, 1)), vec![1, 2]);
    let c1 = b("C1");
    assert_eq!(ranks(&free_mackey(&c1, 0)), vec![1]);
}

#[test]
fn constructors_pass_axioms() {
    for g in ["C2", "C3", "S3", "C2xC2", "C4"] {
        let bg = b(g);
        for h in 0..bg.n_orbits() {
            assert!(free_mackey(&bg, h).check_axioms().is_clean(), "{g} {h}");
        }
        assert!(zero_mackey(&bg).check_axioms().is_clean());
        let x = bg.orbit(0).gset.clone();
        assert!(fixed_point_mackey(&GModule::permutation(&x, 0)).check_axioms().is_clean(), "{g}");
        assert!(fixed_point_mackey(&GModule::permutation(&x, 3)).check_axioms().is_clean(), "{g}");
    }
}

#[test]
fn broken_transfer_is_reported() {
    let c2 = b("C2");
    // levels Z, Z with conjugation 1, transfer 1 and restriction 1: res∘tr
    // must be 1 + c = 2 but is 1
    let conj = c2.forward(0, 0, 1).terms[0].0;
    let tr = c2.forward(0, 1, 0).terms[0].0;
    let res = c2.backward(1, 0, 0).terms[0].0;
    assert_ne!(conj, c2.identity(0).terms[0].0);
    let gens: HashMap<_, _> = [((0, 0, conj), m1(1)), ((0, 1, tr), m1(1)), ((1, 0, res), m1(1))].into_iter().collect();
    let m = MackeyFunctor::from_generators(&c2, "bad", vec![z(), z()], gens.clone(), false).unwrap();
    let rep = m.check_axioms();
    assert!(!rep.is_clean());
    let expect = Violation::Composite { h: 0, k: 1, j: 0, phi: tr, psi: res };
    assert!(rep.violations.contains(&expect), "{:?}", rep.violations);
    assert!(matches!(
        MackeyFunctor::from_generators(&c2, "bad", vec![z(), z()], gens, true),
        Err(MackeyError::Axiom(_))
    ));
}

#[test]
fn constant_fixed_points_c2() {
    let c2 = b("C2");
    let v = GModule::trivial(c2.group(), &z());
    let m = fixed_point_mackey(&v);
    assert!(m.check_axioms().is_clean());
    assert_eq!(m.transfer(0, 1, 0).mat, m1(2));
    assert_eq!(m.restriction(1, 0, 0).mat, m1(1));
}

#[test]
fn swap_fixed_points_c2() {
    let c2 = b("C2");
    let v = GModule::permutation(&c2.orbit(0).gset, 0);
    let m = fixed_point_mackey(&v);
    assert_eq!(m.level(1).invariants().free_rank, 1);
    let r = m.restriction(1, 0, 0);
    // restriction is the diagonal inclusion Z → Z²
    let (_, incl) = v.fixed_subgroup(c2.orbit(1).rep);
    assert!(r.eq_map(&incl.retyped(m.level(1), m.level(0))));
    assert!(hom_invariants(&r).is_mono);
    assert!(fixed_point_mackey(&GModule::trivial(c2.group(), &AbGrp::zero())).is_zero());
}

#[test]
fn rep_theory_counterexample() {
    let c2 = catalog("C2").unwrap();
    let bc = Burnside::of(&c2);
    let (_, q) = quotient(&c2, &c2.whole()).unwrap();
    // augmentation F2[C2] → F2
    let v = GModule::permutation(&bc.orbit(0).gset, 2);
    let w = GModule::trivial(&c2, &AbGrp::cyclic(2));
    let aug = GModuleMap::new(&v, &w, Mat::from_rows(&[vec![1, 1]])).unwrap();
    assert!(crate::zmod::is_epi(&aug.map));
    let fp = aug.fixed_points(&q);
    assert_eq!(fp.src.carrier.describe(), "Z/2");
    assert!(fp.map.is_zero());
    // integral version: the norm element maps to 2
    let vz = GModule::permutation(&bc.orbit(0).gset, 0);
    let augz = GModuleMap::new(&vz, &GModule::trivial(&c2, &z()), Mat::from_rows(&[vec![1, 1]])).unwrap();
    let fz = augz.fixed_points(&q);
    let hi = hom_invariants(&fz.map);
    assert!(hi.is_mono && !hi.is_epi);
    assert_eq!(hi.cokernel.describe(), "Z/2");
    // trivial action: identity carrier
    let t = GModule::trivial(&c2, &z());
    let (ft, _) = gmodule_fixed_points(&q, &t);
    assert_eq!(ft.carrier.describe(), "Z");
}

#[test]
fn regular_module_fixed_points() {
    let c2 = catalog("C2").unwrap();
    let (_, q) = quotient(&c2, &c2.whole()).unwrap();
    let v = GModule::permutation(&Burnside::of(&c2).orbit(0).gset, 0);
    let (f, incl) = gmodule_fixed_points(&q, &v);
    assert_eq!(f.carrier.describe(), "Z");
    let gen = incl.mat.col(0);
    assert_eq!(gen[0], gen[1]);
    assert!(gen[0].is_unit());
}

#[test]
fn iso_test_basics() {
    let c2 = b("C2");
    let f = free_mackey(&c2, 0);
    assert_eq!(mackey_iso_test(&MackeyMorphism::identity(&f)), Ok(true));
    let two = MackeyMorphism::identity(&f).scale(2);
    assert_eq!(mackey_iso_test(&two), Ok(false));
    for c in two.certificates() {
        assert!(c.verify());
        assert!(!c.is_iso);
    }
    // a non-natural endomorphism: swap the two generators at level e only
    let mut cs = MackeyMorphism::identity(&f).components;
    cs[0] = AbHom::new_unchecked(f.level(0).clone(), f.level(0).clone(), Mat::from_rows(&[vec![2, 0], vec![0, 1]]));
    let bad = MackeyMorphism::new(&f, &f, cs).unwrap();
    assert!(matches!(mackey_iso_test(&bad), Err(MackeyError::NotNatural(_))));
}

#[test]
fn yoneda_round_trip() {
    let s3 = b("S3");
    let v = GModule::permutation(&s3.orbit(1).gset, 0);
    let m = fixed_point_mackey(&v);
    for h in 0..s3.n_orbits() {
        let n = m.level(h).n_gens();
        for i in 0..n {
            let x: Vec<Int> = (0..n).map(|j| Int::from((i == j) as i64 * 3 - 1)).collect();
            let phi = yoneda(&m, h, &x);
            assert!(phi.naturality_failures(SpanScope::All).is_empty());
            assert_eq!(yoneda_element(&phi, h), x);
        }
    }
    // and back: a morphism out of a free functor is determined by its element
    let f = free_mackey(&s3, 1);
    let id = MackeyMorphism::identity(&f);
    let x = yoneda_element(&id, 1);
    assert!(yoneda(&f, 1, &x).eq_map(&id));
}

#[test]
fn direct_sum_adds_ranks() {
    let c2 = b("C2");
    let bp = Biproduct::of(&[free_mackey(&c2, 0), free_mackey(&c2, 1)]);
    assert_eq!(ranks(&bp.sum), vec![3, 3]);
    assert!(bp.sum.check_axioms().is_clean());
    for i in 0..2 {
        assert!(bp.inj[i].is_natural() && bp.proj[i].is_natural());
        assert!(bp.proj[i].compose(&bp.inj[i]).eq_map(&MackeyMorphism::identity(&bp.inj[i].src)));
    }
}

#[test]
fn coequalizer_reduces_mod_two() {
    let c2 = b("C2");
    let f = free_mackey(&c2, 0);
    let id = MackeyMorphism::identity(&f);
    let d = MackeyDiagram { objects: vec![f.clone(), f.clone()], edges: vec![(0, 1, id.clone()), (0, 1, id.neg())] };
    let c = mackey_colimit(&d).unwrap();
    assert_eq!(c.obj.level_summary(), vec!["Z/2+Z/2".to_string(), "Z/2".to_string()]);
    assert!(c.obj.check_axioms().is_clean());
    for l in &c.legs {
        assert!(l.is_natural());
    }
    // universality against the reduction-mod-2 cocone into the colimit itself
    let u = c.induced(&c.obj, &c.legs);
    assert!(u.eq_map(&MackeyMorphism::identity(&c.obj)));
    assert!(u.compose(&c.legs[1]).eq_map(&c.legs[1]));
}

#[test]
fn constant_diagram_limits() {
    let s3 = b("S3");
    let f = free_mackey(&s3, 1);
    let id = MackeyMorphism::identity(&f);
    let d = MackeyDiagram { objects: vec![f.clone(), f.clone()], edges: vec![(0, 1, id.clone())] };
    let c = mackey_colimit(&d).unwrap();
    assert!(mackey_iso_test(&c.legs[0]).unwrap());
    let l = mackey_limit(&d).unwrap();
    assert!(mackey_iso_test(&l.legs[0]).unwrap());
    assert!(l.obj.check_axioms().is_clean());
    let cone = l.induced(&f, &[id.clone(), id.clone()]).unwrap();
    assert!(l.legs[0].compose(&cone).eq_map(&id));
}

#[test]
fn file_round_trip() {
    let c2 = b("C2");
    let f = free_mackey(&c2, 0);
    let text = write_mackey(&f);
    let g = parse_mackey(&text).unwrap();
    let cs = (0..2).map(|h| AbHom::identity(f.level(h))).collect();
    let phi = MackeyMorphism::new(&f, &g, cs).unwrap();
    assert_eq!(mackey_iso_test(&phi), Ok(true));
    let s3 = b("S3");
    let m = fixed_point_mackey(&GModule::permutation(&s3.orbit(2).gset, 4));
    let back = parse_mackey(&write_mackey(&m)).unwrap();
    assert_eq!(back.level_summary(), m.level_summary());
}

#[test]
fn file_errors() {
    assert!(matches!(parse_mackey(""), Err(MackeyError::Parse { .. })));
    assert!(matches!(parse_mackey("mackey v1\ngroup C2\n"), Err(MackeyError::Parse { .. })));
    let bad = "mackey v1\ngroup C2\nlevel 0 1\nlevel 1 1\nspan 0 0 1 1\nspan 0 1 0 1\nspan 1 0 0 1\n";
    assert!(matches!(parse_mackey(bad), Err(MackeyError::Axiom(_))));
    let good = "mackey v1\ngroup C2\nlevel 0 1\nlevel 1 1\nspan 0 0 1 1\nspan 0 1 0 2\nspan 1 0 0 1\n";
    let m = parse_mackey(good).unwrap();
    assert_eq!(m.transfer(0, 1, 0).mat, m1(2));
    let missing = "mackey v1\ngroup C2\nlevel 0 1\nlevel 1 1\nspan 0 1 0 2\n";
    assert!(matches!(parse_mackey(missing), Err(MackeyError::MissingSpan(_))));
    let custom = "mackey v1\ngroup P\ngen (0 1)\nlevel 0 1\nlevel 1 1\nspan 0 0 1 1\nspan 0 1 0 2\nspan 1 0 0 1\n";
    assert!(parse_mackey(custom).is_ok());
}

#[test]
fn tensor_like_permutation_module() {
    // Z[G/H] fixed points have level at G/G of rank = number of orbits
    let s3 = b("S3");
    let x = s3.orbit(1).gset.product(&s3.orbit(1).gset);
    let m = fixed_point_mackey(&GModule::permutation(&x, 0));
    assert_eq!(m.level(s3.top()).invariants().free_rank, x.orbits().len());
    let _ = GSet::point(s3.group());
}
