use proptest::prelude::*;

use super::*;
use crate::adams::{select_subgroup, AdamsInstance, Inj};
use crate::burnside::Burnside;
use crate::grp::catalog;
use crate::mackey::free_mackey;

fn inclusion(g: &str, sel: &str) -> Inj {
    let g = catalog(g).unwrap();
    let h = select_subgroup(&g, sel).unwrap();
    Inj::new(&h.as_group("H").1).unwrap()
}

fn instance(g: &str, n: &str) -> AdamsInstance {
    let g = catalog(g).unwrap();
    let n = select_subgroup(&g, n).unwrap();
    AdamsInstance::new(&g, &n).unwrap()
}

fn assert_clean(r: &MatesReport) {
    assert!(r.is_clean(), "{} {}: {:?}", r.instance, r.check, r.failures);
}

#[test]
fn identity_square_is_clean() {
    let inst = identity_square(&catalog("C2").unwrap(), 1).unwrap();
    assert_clean(&inst.check_triangles());
    assert_clean(&check_unit_counit(&inst));
    assert_clean(&check_invariance(&inst, &Replacement::identity(&inst)));
    assert_clean(&check_horizontal(&inst, &inst));
    for x in &inst.samples_a {
        assert!(inst.bc(x).unwrap().eq_map(&MackeyMorphism::identity(x)));
    }
}

#[test]
fn restriction_square_for_e_in_c2() {
    let i = inclusion("C2", "e");
    let inst = restriction_square(&i, 7).unwrap();
    let c2 = Burnside::of(&catalog("C2").unwrap());
    assert!(inst.samples_c.iter().any(|y| y.name() == free_mackey(&c2, 0).name()));
    assert_clean(&inst.check_triangles());
    assert_clean(&check_unit_counit(&inst));
    assert_clean(&check_horizontal(&inst, &identity_extension(&inst).unwrap()));
    assert_clean(&check_invariance(&inst, &Replacement::identity(&inst)));
    assert_clean(&check_invariance(&inst, &wirthmuller_replacement(&i, &inst)));
    assert_clean(&check_invariance(&inst, &sign_twist(&inst)));
}

#[test]
fn replacement_by_restriction_along_s3() {
    let i = inclusion("S3", "(0 1)");
    let inst = restriction_square(&i, 3).unwrap();
    let rep = wirthmuller_replacement(&i, &inst);
    assert_clean(&rep.apply(&inst).unwrap().check_triangles());
    assert_clean(&check_invariance(&inst, &rep));
    let y = &inst.samples_a[1];
    let m = mate(&rep.alpha, &inst.adj_f, &rep.adj_f).at(y).unwrap();
    assert!(m.eq_map(&i.lan_to_res(y).unwrap()));
}

#[test]
fn sign_twist_negates_the_beck_chevalley_map() {
    let inst = restriction_square(&inclusion("C4", "(0 2)(1 3)"), 2).unwrap();
    let twisted = sign_twist(&inst).apply(&inst).unwrap();
    for x in &inst.samples_a {
        assert!(twisted.bc(x).unwrap().eq_map(&inst.bc(x).unwrap().neg()));
    }
    assert_clean(&check_invariance(&inst, &sign_twist(&inst)));
}

#[test]
fn fiber_square_for_c4() {
    let inst = fiber_square(&instance("C4", "(0 2)(1 3)"), 5).unwrap();
    let c4 = Burnside::of(&catalog("C4").unwrap());
    assert!(inst.samples_c.iter().any(|y| y.name() == free_mackey(&c4, 0).name()));
    assert_clean(&inst.check_triangles());
    assert_clean(&check_unit_counit(&inst));
    assert_clean(&check_invariance(&inst, &sign_twist(&inst)));
}

#[test]
fn chains_in_s3() {
    let g = catalog("S3").unwrap();
    for h in ["(0 1)", "(0 1 2)"] {
        let h = select_subgroup(&g, h).unwrap();
        let r = induction_chain(&g, &h, &g.trivial(), 11).unwrap();
        assert_clean(&r.first.check_triangles());
        assert_clean(&check_unit_counit(&r.first));
        assert_clean(&check_horizontal(&r.first, &r.second));
    }
}

#[test]
fn chain_in_c4() {
    let g = catalog("C4").unwrap();
    let h = select_subgroup(&g, "(0 2)(1 3)").unwrap();
    let r = induction_chain(&g, &h, &g.trivial(), 4).unwrap();
    assert_clean(&check_unit_counit(&r.first));
    assert_clean(&check_horizontal(&r.first, &r.second));
}

#[test]
fn inflation_then_restriction() {
    for (g, n) in [("C4", "(0 2)(1 3)"), ("C2xC2", "(0 1)")] {
        let inst = instance(g, n);
        for m in 0..inst.members.len() {
            let r = inflation_restriction(&inst, m, 9).unwrap();
            assert_clean(&check_horizontal(&r.first, &r.second));
        }
    }
}

#[test]
fn broken_counit_fails_triangles() {
    let inst = restriction_square(&inclusion("C2", "e"), 1).unwrap();
    let adj = &inst.adj_f;
    let c = adj.counit.clone();
    let bad = NatTrans::new(c.src.clone(), c.dst.clone(), move |m| Ok(c.at(m)?.neg()));
    let broken = Adjunction::new(adj.left.clone(), adj.right.clone(), adj.unit.clone(), bad);
    let inst = PastingInstance { adj_f: broken, ..inst };
    assert!(!inst.check_triangles().is_clean());
    assert!(!check_unit_counit(&inst).is_clean());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn random_samples_are_clean(seed in 0u64..1000) {
        let i = inclusion("C2xC2", "(0 1)");
        let inst = restriction_square(&i, seed).unwrap();
        prop_assert!(check_unit_counit(&inst).is_clean());
        prop_assert!(check_invariance(&inst, &wirthmuller_replacement(&i, &inst)).is_clean());
    }
}

#[test]
fn shipped_corpus_is_clean() {
    let reports = shipped_corpus(0).unwrap();
    assert!(reports.len() > 20);
    for r in &reports {
        assert_clean(r);
    }
}
