use super::*;
use crate::grp::{catalog, subgroup_classes};
use crate::kan::Lan;
use crate::mackey::{direct_sum, free_mackey, zero_mackey};

fn g(name: &str) -> FinGroup {
    catalog(name).unwrap()
}

fn rank(m: &MackeyFunctor, h: usize) -> usize {
    m.level(h).invariants().free_rank
}

fn same_levels(a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
    (0..a.n_levels()).all(|h| a.level(h).invariants() == b.level(h).invariants())
}

fn center(gr: &FinGroup) -> Subgroup {
    let z: Vec<usize> = gr.elements().filter(|x| gr.elements().all(|y| gr.mul(*x, y) == gr.mul(y, *x))).collect();
    gr.subgroup(gr.closure(&z))
}

#[test]
fn families_from_normal_subgroups() {
    let c2 = g("C2");
    assert_eq!(Family::from_normal(&c2, &c2.trivial()).unwrap(), Family::all(&c2));
    assert_eq!(Family::from_normal(&c2, &c2.whole()).unwrap().members(), &[0]);
    let d8 = g("D8");
    let z = center(&d8);
    assert_eq!(z.order(), 2);
    let f = Family::from_normal(&d8, &z).unwrap();
    // oracle: classes whose representative avoids the central involution
    let expect: Vec<usize> = subgroup_classes(&d8)
        .iter()
        .enumerate()
        .filter(|(_, c)| mask_elems(c.rep).all(|x| x == 0 || !z.contains(x)))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(f.members(), &expect[..]);
    assert_eq!(f.indicator().iter().filter(|x| **x == 1).count(), expect.len());
    let c4 = g("C4");
    let sub = c4.subgroup(c4.closure(&[c4.generators()[0]]));
    assert!(Family::from_normal(&c4, &sub).is_ok());
}

#[test]
fn rejects_open_sets() {
    let c2 = g("C2");
    assert!(matches!(Family::new(&c2, [1]), Err(FamilyError::NotClosed(_))));
    assert!(matches!(Family::new(&c2, []), Err(FamilyError::Empty)));
}

#[test]
fn orbit_diagram_is_a_category() {
    for name in ["C2", "S3", "D8", "C2xC2"] {
        let gr = g(name);
        let d = Family::all(&gr);
        let d = d.diagram();
        for (i, m) in d.morphisms.iter().enumerate() {
            assert_eq!(d.compose[d.identities[m.src]][i], Some(i));
            assert_eq!(d.compose[i][d.identities[m.dst]], Some(i));
        }
        let n = d.morphisms.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if let (Some(ab), Some(bc)) = (d.compose[a][b], d.compose[b][c]) {
                        assert_eq!(d.compose[ab][c], d.compose[a][bc]);
                    }
                }
            }
        }
    }
}

#[test]
fn tensoring_with_gsets() {
    let c2 = g("C2");
    let b = Burnside::of(&c2);
    let x = free_mackey(&b, b.top());
    let (t, k) = tensor_gset(&x, &GSet::point(&c2)).unwrap();
    assert!(k.is_iso());
    assert!(same_levels(&t, &x));
    let (t, k) = tensor_gset(&x, &b.orbit(0).gset).unwrap();
    assert_eq!(rank(&t, b.top()), 1);
    assert!(k.is_natural());
    // projection formula
    for name in ["C2", "S3"] {
        let gr = g(name);
        let b = Burnside::of(&gr);
        let x = direct_sum(&[free_mackey(&b, 0), free_mackey(&b, b.top())]);
        for (o, i) in Family::all(&gr).inclusions().iter().enumerate() {
            let ind = ZLinFunctor::ind(i).unwrap();
            let l = Lan::of(&ind, &precompose(&ind, &x).unwrap()).unwrap();
            let (t, _) = tensor_gset(&x, &b.orbit(o).gset).unwrap();
            assert!(same_levels(&l.obj, &t));
        }
        // additivity in S
        let s1 = &b.orbit(0).gset;
        let s2 = &b.orbit(b.top()).gset;
        let (t, _) = tensor_gset(&x, &GSet::disjoint_union(&[s1.clone(), s2.clone()])).unwrap();
        let sum = direct_sum(&[tensor_gset(&x, s1).unwrap().0, tensor_gset(&x, s2).unwrap().0]);
        assert!(same_levels(&t, &sum));
    }
}

#[test]
fn torsion_for_c2() {
    let c2 = g("C2");
    let b = Burnside::of(&c2);
    let free = Family::from_normal(&c2, &c2.whole()).unwrap();
    let burn = free_mackey(&b, b.top());
    let t = tensor_ef(&burn, &free).unwrap();
    assert_eq!(rank(t.obj(), b.top()), 1);
    assert_eq!(rank(&burn, b.top()), 2);
    assert!(!mackey_iso_test(&t.kappa).unwrap());
    assert!(family_weak_equiv(&t.kappa, &free).unwrap());
    assert!(is_torsion(&free_mackey(&b, 0), &free).unwrap());
    assert!(matches!(torsion_generators(&burn, &free), Err(FamilyError::NotTorsion)));
    // idempotent
    assert!(is_torsion(t.obj(), &free).unwrap());
    let zero = MackeyMorphism::zero(&burn, &burn);
    assert!(!family_weak_equiv(&zero, &free).unwrap());
}

#[test]
fn everything_is_torsion_for_all_subgroups() {
    for name in ["C2", "S3", "C4"] {
        let gr = g(name);
        let b = Burnside::of(&gr);
        let all = Family::all(&gr);
        for h in 0..b.n_orbits() {
            let x = free_mackey(&b, h);
            assert!(is_torsion(&x, &all).unwrap());
            assert!(is_complete(&x, &all).unwrap());
        }
    }
}

#[test]
fn free_functors_at_members_are_torsion() {
    for (name, sub) in [("S3", 3usize), ("D8", 2), ("C4", 2)] {
        let gr = g(name);
        let b = Burnside::of(&gr);
        let n = if name == "D8" {
            center(&gr)
        } else {
            let cls = subgroup_classes(&gr).iter().find(|c| c.order == sub && gr.is_normal_mask(c.rep)).unwrap();
            gr.subgroup(cls.rep)
        };
        let f = Family::from_normal(&gr, &n).unwrap();
        for h in f.members() {
            let x = free_mackey(&b, *h);
            let t = torsion_generators(&x, &f).unwrap();
            assert!(t.kappa.is_iso(), "{name} at {h}");
        }
        for h in 0..b.n_orbits() {
            if !f.members().contains(&h) {
                assert!(!is_torsion(&free_mackey(&b, h), &f).unwrap());
            }
        }
    }
}

#[test]
fn completion_for_c2() {
    let c2 = g("C2");
    let b = Burnside::of(&c2);
    let free = Family::from_normal(&c2, &c2.whole()).unwrap();
    let c = completion(&free_mackey(&b, b.top()), &free).unwrap();
    assert!(c.eta.is_natural());
    assert!(!is_complete(&free_mackey(&b, b.top()), &free).unwrap());
    assert!(family_weak_equiv(&c.eta, &free).unwrap());
}

#[test]
fn zero_has_zero_diagram() {
    let c2 = g("C2");
    let b = Burnside::of(&c2);
    let f = Family::from_normal(&c2, &c2.whole()).unwrap();
    let t = torsion_generators(&zero_mackey(&b), &f).unwrap();
    assert!(t.diagram.objects.iter().all(|o| o.is_zero()));
}
