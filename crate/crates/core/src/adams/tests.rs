use super::*;
use crate::grp::{catalog, subgroup_classes};
use crate::mackey::{direct_sum, free_mackey, zero_mackey};
use proptest::prelude::*;

fn g(name: &str) -> FinGroup {
    catalog(name).unwrap()
}

fn rank(m: &MackeyFunctor, h: usize) -> usize {
    m.level(h).invariants().free_rank
}

fn normal_of_order(gr: &FinGroup, n: usize) -> Subgroup {
    let c = subgroup_classes(gr).iter().find(|c| c.order == n && gr.is_normal_mask(c.rep)).unwrap();
    gr.subgroup(c.rep)
}

#[test]
fn wirthmuller_for_small_injections() {
    let c2 = g("C2");
    let triv = crate::grp::trivial_group();
    let i = GrpHom::new(triv.clone(), c2.clone(), vec![0]).unwrap();
    let bt = Burnside::of(&triv);
    let w = wirthmuller(&i, &free_mackey(&bt, 0)).unwrap();
    assert!(w.is_iso());
    assert!(w.is_natural());
    assert_eq!(rank(&w.src, 0), 2);
    assert_eq!(rank(&w.src, 1), 1);
    let id = GrpHom::identity(&c2);
    let b = Burnside::of(&c2);
    assert!(wirthmuller(&id, &free_mackey(&b, 1)).unwrap().is_iso());
    let s3 = g("S3");
    let c2s = subgroup_classes(&s3).iter().find(|c| c.order == 2).unwrap().rep;
    let (_, incl) = s3.subgroup(c2s).as_group("H");
    let bh = Burnside::of(&incl.src);
    let x = direct_sum(&[free_mackey(&bh, 0), free_mackey(&bh, bh.top())]);
    assert!(wirthmuller(&incl, &x).unwrap().is_iso());
}

#[test]
fn inflation_triangles() {
    let c4 = g("C4");
    let inst = AdamsInstance::new(&c4, &normal_of_order(&c4, 2)).unwrap();
    let bq = inst.quotient_burnside().clone();
    let b = inst.burnside().clone();
    assert!(check_inflation(&inst, &free_mackey(&bq, 0), &free_mackey(&b, 1)).unwrap());
    let fp = fixed_points(&inst, &free_mackey(&b, b.top())).unwrap();
    assert_eq!(fp.n_levels(), bq.n_orbits());
}

#[test]
fn norm_for_c2() {
    let c2 = g("C2");
    let inst = AdamsInstance::new(&c2, &c2.whole()).unwrap();
    let b = inst.burnside().clone();
    let x = free_mackey(&b, 0);
    let v = verify_adams(&inst, &x);
    assert_eq!(v.status, Status::Pass, "{:?}", v.note);
    let v = verify_adams(&inst, &free_mackey(&b, b.top()));
    assert_eq!(v.status, Status::NotApplicable);
    let d = v.diagnostic.unwrap();
    assert_eq!(d.fixed_points, vec![2]);
    assert_eq!(d.orbits_of_torsion_part, vec![1]);
}

#[test]
fn diagonal_model_matches_right_kan_extension() {
    for (gn, nn) in [("C2", "G"), ("C4", "(0 2)(1 3)"), ("S3", "(0 1 2)")] {
        let gr = g(gn);
        let inst = AdamsInstance::new(&gr, &select_subgroup(&gr, nn).unwrap()).unwrap();
        let x = random_torsion(&inst, 3, 2).unwrap();
        let fast = inst.zig().unwrap().n_map(&x).unwrap();
        let slow = zigzag::n_map_via_ran(&inst, &x).unwrap();
        assert!(fast.eq_map(&slow), "{gn}");
    }
}

#[test]
fn trivial_normal_subgroup() {
    let s3 = g("S3");
    let inst = AdamsInstance::new(&s3, &s3.trivial()).unwrap();
    let b = inst.burnside().clone();
    let x = free_mackey(&b, b.top());
    let fp = fixed_points(&inst, &x).unwrap();
    for h in 0..b.n_orbits() {
        assert_eq!(fp.level(h).invariants(), x.level(h).invariants());
    }
    let v = verify_adams(&inst, &x);
    assert_eq!(v.status, Status::Pass, "{:?}", v.note);
    assert!(v.zigzag.unwrap().full_agreement);
}

#[test]
fn c2_levels() {
    let c2 = g("C2");
    let inst = AdamsInstance::new(&c2, &c2.whole()).unwrap();
    let b = inst.burnside().clone();
    assert_eq!(rank(&fixed_points(&inst, &free_mackey(&b, 0)).unwrap(), 0), 1);
    assert_eq!(rank(&fixed_points(&inst, &free_mackey(&b, 1)).unwrap(), 0), 2);
    let o = orbits_free(&inst, &free_mackey(&b, 0)).unwrap();
    assert_eq!(o.obj().n_levels(), 1);
    assert_eq!(rank(o.obj(), 0), 1);
    assert!(o.obj().level(0).invariants().torsion.is_empty());
    assert!(orbits_free(&inst, &zero_mackey(&b)).unwrap().obj().is_zero());
    assert!(matches!(orbits_free(&inst, &free_mackey(&b, 1)), Err(AdamsError::NotTorsion)));
    // inflating Z gives the Burnside functor, so the unit is Z → A(C2)
    let bq = inst.quotient_burnside().clone();
    let (m, adj) = inflation(&inst, &free_mackey(&bq, 0)).unwrap();
    let unit = adj.unit.at(&free_mackey(&bq, 0)).unwrap();
    assert!(!unit.is_iso());
    assert_eq!(rank(&m, b.top()), 2);
    assert_eq!(rank(&m, 0), 1);
    let (coker, _) = crate::zmod::cokernel(&unit.components[0]);
    assert_eq!(coker.invariants().free_rank, 1);
}

#[test]
fn generators_for_d8_and_c4() {
    let d8 = g("D8");
    let inst = AdamsInstance::new(&d8, &select_subgroup(&d8, "center").unwrap()).unwrap();
    let b = inst.burnside().clone();
    for h in inst.family.members() {
        let n = adams_norm(&inst, &free_mackey(&b, *h)).unwrap();
        assert!(mackey_iso_test(&n.map).unwrap());
        assert!(n.map.is_natural());
    }
    let c4 = g("C4");
    let inst = AdamsInstance::new(&c4, &normal_of_order(&c4, 2)).unwrap();
    assert_eq!(inst.fiber.k.order(), 8);
    let n = adams_norm(&inst, &free_mackey(inst.burnside(), 0)).unwrap();
    let z = zigzag_consistency(&inst, &n).unwrap();
    assert!(z.is_clean() && z.full_agreement);
}

#[test]
fn norm_is_natural_on_samples() {
    for (gn, nn) in [("C2xC2", "(0 1)"), ("S3", "(0 1 2)"), ("C4", "(0 2)(1 3)")] {
        let gr = g(gn);
        let inst = AdamsInstance::new(&gr, &select_subgroup(&gr, nn).unwrap()).unwrap();
        for seed in 0..3 {
            let phi = random_morphism(&inst, seed, 2).unwrap();
            assert!(phi.is_natural());
            let a = adams_norm(&inst, &phi.src).unwrap();
            let b = adams_norm(&inst, &phi.dst).unwrap();
            assert!(norm_is_natural(&inst, &a, &b, &phi).unwrap(), "{gn} seed {seed}");
        }
    }
}

#[test]
fn selectors() {
    let c2c4 = g("C2xC4");
    assert_eq!(select_subgroup(&c2c4, "(0 1)").unwrap().order(), 2);
    assert_eq!(select_subgroup(&c2c4, "(2 4)(3 5)").unwrap().order(), 2);
    assert_eq!(select_subgroup(&c2c4, "e").unwrap().order(), 1);
    assert!(select_subgroup(&c2c4, "(0 2)").is_err());
    assert_eq!(default_instances().unwrap().len(), DEFAULT_PAIRS.len());
}

#[test]
fn members_meet_n_trivially() {
    for inst in default_instances().unwrap() {
        for m in &inst.members {
            assert!(m.fp.hom.is_injective());
            assert!(inst.q.compose(&m.p.hom).images == m.fp.hom.images);
        }
        let f = &inst.fiber;
        assert_eq!(f.pr1.compose(&f.diag), GrpHom::identity(&inst.g));
        assert_eq!(f.pr2.compose(&f.diag), GrpHom::identity(&inst.g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn random_torsion_objects_pass(seed in 0u64..1000, size in 1usize..3) {
        let gr = g("C2xC2");
        let inst = AdamsInstance::new(&gr, &select_subgroup(&gr, "(0 1)(2 3)").unwrap()).unwrap();
        let x = random_torsion(&inst, seed, size).unwrap();
        let v = verify_adams(&inst, &x);
        prop_assert_eq!(v.status, Status::Pass);
        prop_assert!(v.certificates.iter().all(|c| c.verify()));
    }
}
