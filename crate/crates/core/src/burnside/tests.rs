use std::collections::BTreeMap;

use super::*;
use crate::grp::{catalog, fiber_product, quotient, GrpHom};

/// Fibered marks of a span `X ← Y → Z`: `(U, x, z) ↦ #{y ∈ Y^U over (x, z)}`.
/// These determine a G-set over `X × Z` up to isomorphism.
type Marks = BTreeMap<(Mask, usize, usize), i64>;

fn span_marks(g: &FinGroup, pts: &[(usize, usize)], act: impl Fn(usize, usize) -> usize, coef: i64, out: &mut Marks) {
    for u in g.lattice().all_subgroups() {
        for (p, (x, z)) in pts.iter().enumerate() {
            if mask_elems(u).all(|h| act(h, p) == p) {
                *out.entry((u, *x, *z)).or_insert(0) += coef;
            }
        }
    }
}

fn hom_marks(b: &Burnside, h: &BurnsideHom) -> Marks {
    let mut m = Marks::new();
    for (i, c) in &h.terms {
        let (y, l1, l2) = b.to_gset_span(h.src, h.dst, *i);
        let pts: Vec<_> = l1.iter().zip(&l2).map(|(a, c)| (*a, *c)).collect();
        span_marks(b.group(), &pts, |g, p| y.act(g, p), *c, &mut m);
    }
    m.retain(|_, v| *v != 0);
    m
}

/// Marks of `ψ ∘ φ` computed from the brute-force pullback.
fn composite_marks(b: &Burnside, h: usize, k: usize, j: usize, phi: usize, psi: usize) -> Marks {
    let (y1, a1, b1) = b.to_gset_span(h, k, phi);
    let (y2, a2, b2) = b.to_gset_span(k, j, psi);
    let mut pairs = Vec::new();
    let mut legs = Vec::new();
    for p in 0..y1.len() {
        for q in 0..y2.len() {
            if b1[p] == a2[q] {
                pairs.push((p, q));
                legs.push((a1[p], b2[q]));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut m = Marks::new();
    span_marks(
        b.group(),
        &legs,
        |g, i| {
            let (p, q) = pairs[i];
            index[&(y1.act(g, p), y2.act(g, q))]
        },
        1,
        &mut m,
    );
    m
}

/// Number of iso classes of transitive G-sets over `G/H × G/K`.
fn brute_basis_size(b: &Burnside, h: usize, k: usize) -> usize {
    let g = b.group();
    let prod = b.orbit(h).gset.product(&b.orbit(k).gset);
    prod.orbits()
        .iter()
        .map(|o| {
            let s = prod.stabilizer(o[0]);
            let subs: Vec<Mask> = g.lattice().all_subgroups().filter(|l| l & !s == 0).collect();
            let mut classes: Vec<Mask> = Vec::new();
            for l in &subs {
                let least = mask_elems(s).map(|x| g.conjugate_mask(x, *l)).min().unwrap();
                if !classes.contains(&least) {
                    classes.push(least);
                }
            }
            classes.len()
        })
        .sum()
}

fn small_groups() -> Vec<FinGroup> {
    ["C1", "C2", "C3", "C4", "C2xC2", "S3", "D8", "Q8"].iter().map(|n| catalog(n).unwrap()).collect()
}

#[test]
fn basis_sizes_small() {
    let c2 = Burnside::of(&catalog("C2").unwrap());
    assert_eq!(c2.basis(0, 0).len(), 2);
    assert_eq!(c2.basis(1, 1).len(), 2);
    assert_eq!(c2.basis(0, 1).len(), 1);
    let c1 = Burnside::of(&catalog("C1").unwrap());
    assert_eq!(c1.n_orbits(), 1);
    assert_eq!(c1.basis(0, 0).len(), 1);
    let s3 = Burnside::of(&catalog("S3").unwrap());
    assert_eq!(s3.basis(0, 0).len(), 6);
    assert_eq!(s3.basis(s3.top(), s3.top()).len(), 4);
}

#[test]
fn basis_sizes_match_orbit_count() {
    for g in small_groups() {
        let b = Burnside::of(&g);
        for h in 0..b.n_orbits() {
            for k in 0..b.n_orbits() {
                assert_eq!(b.basis(h, k).len(), brute_basis_size(&b, h, k), "{} {h} {k}", g.label());
            }
        }
    }
}

#[test]
fn basis_marks_distinct() {
    for g in small_groups() {
        let b = Burnside::of(&g);
        for h in 0..b.n_orbits() {
            for k in 0..b.n_orbits() {
                let ms: Vec<Marks> =
                    (0..b.basis(h, k).len()).map(|i| hom_marks(&b, &BurnsideHom::basis(h, k, i))).collect();
                for i in 0..ms.len() {
                    for j in 0..i {
                        assert_ne!(ms[i], ms[j]);
                    }
                }
            }
        }
    }
}

#[test]
fn composition_matches_marks_oracle() {
    for g in small_groups() {
        let b = Burnside::of(&g);
        let n = b.n_orbits();
        for h in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for phi in 0..b.basis(h, k).len() {
                        for psi in 0..b.basis(k, j).len() {
                            let c = b.compose_basis(h, k, j, phi, psi);
                            assert_eq!(
                                hom_marks(&b, &c),
                                composite_marks(&b, h, k, j, phi, psi),
                                "{} ({h},{k},{j}) {phi} {psi}",
                                g.label()
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn res_after_tr_is_one_plus_conjugation() {
    let b = Burnside::of(&catalog("C2").unwrap());
    let tr = b.forward(0, 1, 0);
    let res = b.backward(1, 0, 0);
    let rt = b.compose(&res, &tr).unwrap();
    assert_eq!(rt.terms.len(), 2);
    assert!(rt.terms.iter().all(|(_, c)| *c == 1));
    assert_eq!(rt.coeff(b.identity(0).terms[0].0), 1);
    // tr ∘ res is [C2/e] as an endomorphism of G/G
    let tres = b.compose(&tr, &res).unwrap();
    assert_eq!(tres.terms.len(), 1);
    assert_eq!(b.elt(1, 1, tres.terms[0].0).middle, 1);
}

#[test]
fn identity_is_neutral() {
    for g in small_groups() {
        let b = Burnside::of(&g);
        for h in 0..b.n_orbits() {
            for k in 0..b.n_orbits() {
                for i in 0..b.basis(h, k).len() {
                    let f = BurnsideHom::basis(h, k, i);
                    assert_eq!(b.compose(&f, &b.identity(h)).unwrap(), f);
                    assert_eq!(b.compose(&b.identity(k), &f).unwrap(), f);
                }
            }
        }
    }
}

#[test]
fn transpose_is_involution_and_antihomomorphism() {
    let b = Burnside::of(&catalog("S3").unwrap());
    let n = b.n_orbits();
    for h in 0..n {
        for k in 0..n {
            for i in 0..b.basis(h, k).len() {
                let f = BurnsideHom::basis(h, k, i);
                assert_eq!(b.transpose(&b.transpose(&f)), f);
                for j in 0..n {
                    for l in 0..b.basis(k, j).len() {
                        let gg = BurnsideHom::basis(k, j, l);
                        let lhs = b.transpose(&b.compose(&gg, &f).unwrap());
                        let rhs = b.compose(&b.transpose(&f), &b.transpose(&gg)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn every_span_factors() {
    for g in small_groups() {
        let b = Burnside::of(&g);
        for h in 0..b.n_orbits() {
            for k in 0..b.n_orbits() {
                for i in 0..b.basis(h, k).len() {
                    let (r, bwd, fwd) = b.factor(h, k, i);
                    assert!(b.is_backward(&b.elt(h, r, bwd)));
                    assert!(b.is_forward(&b.elt(r, k, fwd)));
                    let c = b.compose(&BurnsideHom::basis(r, k, fwd), &BurnsideHom::basis(h, r, bwd)).unwrap();
                    assert_eq!(c, BurnsideHom::basis(h, k, i));
                }
            }
        }
    }
}

#[test]
fn decompose_round_trip() {
    let g = catalog("D8").unwrap();
    let b = Burnside::of(&g);
    let x = b.orbit(2).gset.product(&b.orbit(3).gset);
    let d = b.decompose(&x);
    let total: usize = d.summands.iter().map(|s| b.orbit(s.orbit).size()).sum();
    assert_eq!(total, x.len());
    for p in 0..x.len() {
        let (j, t) = d.loc[p];
        assert_eq!(b.point_of(&x, &d, j as usize, t as usize), p);
    }
    // identification is equivariant
    for p in 0..x.len() {
        for h in g.elements() {
            let (j, t) = d.loc[p];
            let (j2, t2) = d.loc[x.act(h, p)];
            assert_eq!(j, j2);
            let o = b.orbit(d.summands[j as usize].orbit);
            assert_eq!(o.coset_of[g.mul(h, o.cosets[t as usize])], t2);
        }
    }
}

fn inclusion(g: &FinGroup, m: Mask) -> GrpHom {
    g.subgroup(m).as_group("H").1
}

#[test]
fn builtin_functors_are_functorial() {
    let s3 = catalog("S3").unwrap();
    let d8 = catalog("D8").unwrap();
    let b = Burnside::of(&s3);
    for cls in [1, 2] {
        let i = inclusion(&s3, b.orbit(cls).rep);
        ZLinFunctor::ind(&i).unwrap().check().unwrap();
        ZLinFunctor::res(&i).unwrap().check().unwrap();
    }
    let n = b.orbit(2).rep;
    assert!(s3.is_normal_mask(n));
    let (_, q) = quotient(&s3, &s3.subgroup(n)).unwrap();
    ZLinFunctor::infl(&q).unwrap().check().unwrap();
    ZLinFunctor::times(&b.orbit(1).gset).check().unwrap();
    let bd = Burnside::of(&d8);
    let z = d8.lattice().classes.iter().position(|c| c.order == 2 && d8.is_normal_mask(c.rep)).unwrap();
    let (_, q) = quotient(&d8, &d8.subgroup(bd.orbit(z).rep)).unwrap();
    ZLinFunctor::infl(&q).unwrap().check().unwrap();
}

#[test]
fn composite_functor_matches_direct_route() {
    let s3 = catalog("S3").unwrap();
    let b = Burnside::of(&s3);
    let i = inclusion(&s3, b.orbit(1).rep);
    let ind = ZLinFunctor::ind(&i).unwrap();
    let res = ZLinFunctor::res(&i).unwrap();
    let rc = ZLinFunctor::then(&ind, &res).unwrap();
    rc.check().unwrap();
    let src = rc.src().clone();
    for a in 0..src.n_orbits() {
        // res ∘ ind(H/L) has |H\G/L|-many summands counted with sizes
        let total: usize = rc.object(a).iter().map(|o| rc.dst().orbit(*o).size()).sum();
        assert_eq!(total, s3.order() / src.orbit(a).subgroup_order());
    }
    let fp = fiber_product(&quotient(&s3, &s3.subgroup(b.orbit(2).rep)).unwrap().1).unwrap();
    assert_eq!(fp.k.order(), 18);
}

#[test]
fn explicit_functor_needs_verification() {
    let b = Burnside::of(&catalog("C2").unwrap());
    let id = ZLinFunctor::identity(&b);
    let mut spans = std::collections::HashMap::new();
    for h in 0..b.n_orbits() {
        for k in 0..b.n_orbits() {
            for i in 0..b.basis(h, k).len() {
                spans.insert((h, k, i), (*id.on_basis(h, k, i)).clone());
            }
        }
    }
    let e = ZLinFunctor::explicit(&b, &b, vec![vec![0], vec![1]], spans.clone());
    assert_eq!(e.status(), FunctorStatus::Unchecked);
    e.verify().unwrap();
    assert_eq!(e.status(), FunctorStatus::Verified);
    // doubling every span breaks identities
    let doubled = spans.into_iter().map(|(k, v)| (k, v.into_iter().map(|(p, h)| (p, h.scale(2))).collect())).collect();
    let bad = ZLinFunctor::explicit(&b, &b, vec![vec![0], vec![1]], doubled);
    assert!(bad.verify().is_err());
    assert_eq!(bad.status(), FunctorStatus::Unchecked);
}

#[test]
fn restriction_of_sign_orbit() {
    let s3 = catalog("S3").unwrap();
    let b = Burnside::of(&s3);
    let c2 = inclusion(&s3, b.orbit(1).rep);
    let res = ZLinFunctor::res(&c2).unwrap();
    // S3/C3 restricted to C2 is a single free orbit
    assert_eq!(res.object(2), vec![0]);
    // S3/S3 restricts to a point
    assert_eq!(res.object(b.top()), vec![res.dst().top()]);
}

#[test]
fn induced_orbit_is_transitive() {
    let s3 = catalog("S3").unwrap();
    let b = Burnside::of(&s3);
    for c in 0..b.n_orbits() {
        let (h, i) = s3.subgroup(b.orbit(c).rep).as_group("H");
        let bh = Burnside::of(&h);
        for o in 0..bh.n_orbits() {
            let x = bh.orbit(o).gset.induce(&i);
            x.check_axioms().unwrap();
            assert_eq!(x.orbits().len(), 1);
            assert_eq!(x.len(), s3.order() / bh.orbit(o).subgroup_order());
        }
    }
}

fn quotient_pairs() -> Vec<(FinGroup, GrpHom)> {
    let mut out = Vec::new();
    for (name, sub) in [("C4", 1usize), ("S3", 2), ("C2xC2", 1)] {
        let g = catalog(name).unwrap();
        let b = Burnside::of(&g);
        let n = g.subgroup(b.orbit(sub).rep);
        let (_, q) = quotient(&g, &n).unwrap();
        out.push((g, q));
    }
    out
}

#[test]
fn chains_and_pulls_are_functorial() {
    for (g, q) in quotient_pairs() {
        let b = Burnside::of(&g);
        let infl = ZLinFunctor::infl(&q).unwrap();
        for c in 0..b.n_orbits() {
            let i = inclusion(&g, b.orbit(c).rep);
            let res = ZLinFunctor::res(&i).unwrap();
            let ch = ZLinFunctor::chain(&infl, &res).unwrap();
            ch.check().unwrap();
            let pl = ZLinFunctor::pull(&q.compose(&i));
            pl.check().unwrap();
            // literally the same G-sets, so the identity maps give a transformation
            let t = ZLinTrans::from_gset_maps(&ch, &pl, |_, x, _| (0..x.len()).collect()).unwrap();
            t.check().unwrap();
            assert!(t.compose(&t.transpose()).comps == ZLinTrans::identity(&pl).comps);
        }
    }
}

#[test]
fn composite_to_chain_is_natural_iso() {
    let s3 = catalog("S3").unwrap();
    let b = Burnside::of(&s3);
    for c in [0, 1, 2] {
        let i = inclusion(&s3, b.orbit(c).rep);
        let ind = ZLinFunctor::ind(&i).unwrap();
        let res = ZLinFunctor::res(&i).unwrap();
        for (f, g) in [(&ind, &res), (&res, &ind)] {
            let t = ZLinTrans::composite_to_chain(f, g).unwrap();
            t.check().unwrap();
            let back = t.transpose();
            back.check().unwrap();
            assert!(back.compose(&t).comps == ZLinTrans::identity(&t.src).comps);
            assert!(t.compose(&back).comps == ZLinTrans::identity(&t.dst).comps);
        }
    }
    for (_, q) in quotient_pairs() {
        let infl = ZLinFunctor::infl(&q).unwrap();
        let t = ZLinTrans::composite_to_chain(&infl, &infl.clone()).err();
        assert!(t.is_some(), "middle categories differ");
    }
}

#[test]
fn ind_res_triangle_identities() {
    for name in ["C2", "S3", "D8"] {
        let g = catalog(name).unwrap();
        let b = Burnside::of(&g);
        for c in 0..b.n_orbits() {
            let i = inclusion(&g, b.orbit(c).rep);
            let ir = IndRes::new(&i).unwrap();
            let units = [ir.unit_h.clone(), ir.counit_g.clone(), ir.unit_g(), ir.counit_h()];
            for t in &units {
                t.check().unwrap();
            }
            let (ind, res) = (&ir.ind, &ir.res);
            // ind ⊣ res: (ε ind) ∘ (ind η) = id_ind and (res ε) ∘ (η res) = id_res
            let a = ir.counit_g.whisker_before(ind).unwrap().compose(&ir.unit_h.whisker_after(ind).unwrap());
            assert!(a.comps == ZLinTrans::identity(ind).comps, "{name} class {c}");
            let r = ir.counit_g.whisker_after(res).unwrap().compose(&ir.unit_h.whisker_before(res).unwrap());
            assert!(r.comps == ZLinTrans::identity(res).comps, "{name} class {c}");
            // res ⊣ ind
            let a = ir.counit_h().whisker_before(res).unwrap().compose(&ir.unit_g().whisker_after(res).unwrap());
            assert!(a.comps == ZLinTrans::identity(res).comps, "{name} class {c}");
            let r = ir.counit_h().whisker_after(ind).unwrap().compose(&ir.unit_g().whisker_before(ind).unwrap());
            assert!(r.comps == ZLinTrans::identity(ind).comps, "{name} class {c}");
        }
    }
}
