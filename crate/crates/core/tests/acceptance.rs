//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time budget.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use mackey::adams::{
    check_inflation, default_instances, rep_counterexample, run_campaign, run_pair, select_subgroup, verify_adams,
    AdamsInstance, CampaignConfig, CampaignReport, Inj, Item, PairReport, Status,
};
use mackey::burnside::{Burnside, BurnsideHom, ZLinFunctor};
use mackey::grp::{catalog, catalog_names, mask_elems, quotient, FinGroup, Mask};
use mackey::kan::Adjunction;
use mackey::mackey::{free_mackey, mackey_iso_test, LevelCertificate, MackeyFunctor};
use mackey::mates::{sample_corpus, shipped_corpus};
use mackey::zmod::Mat;

/// A summary of what was checked, or the first failure.
type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn small_groups() -> Vec<FinGroup> {
    catalog_names().into_iter().map(|n| catalog(n).unwrap()).filter(|g| g.order() <= 8).collect()
}

// Brute-force span composition through G-set pullbacks, compared by marks.

/// A span of G-sets `X ← Y → Z` with points of `X`, `Z` named by the
/// minimal element of their coset.
struct GSpan {
    act: Vec<Vec<usize>>,
    legs: Vec<(usize, usize)>,
}

fn coset_min(g: &FinGroup, x: usize, m: Mask) -> usize {
    mask_elems(m).map(|s| g.mul(x, s)).min().unwrap()
}

fn basis_span(b: &Burnside, h: usize, k: usize, idx: usize) -> GSpan {
    let g = b.group();
    let e = b.elt(h, k, idx);
    let (hr, kr) = (b.orbit(h).rep, b.orbit(k).rep);
    let mut pts: Vec<usize> = g.elements().map(|x| coset_min(g, x, e.middle)).collect();
    pts.sort_unstable();
    pts.dedup();
    let pos: BTreeMap<usize, usize> = pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let act = g.elements().map(|x| pts.iter().map(|y| pos[&coset_min(g, g.mul(x, *y), e.middle)]).collect()).collect();
    let legs = pts.iter().map(|y| (coset_min(g, g.mul(*y, e.a), hr), coset_min(g, g.mul(*y, e.b), kr))).collect();
    GSpan { act, legs }
}

fn pullback(g: &FinGroup, s1: &GSpan, s2: &GSpan) -> GSpan {
    let mut pairs = Vec::new();
    for (p, (_, z)) in s1.legs.iter().enumerate() {
        for (q, (x, _)) in s2.legs.iter().enumerate() {
            if z == x {
                pairs.push((p, q));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, pq)| (*pq, i)).collect();
    let act = g.elements().map(|x| pairs.iter().map(|(p, q)| index[&(s1.act[x][*p], s2.act[x][*q])]).collect()).collect();
    let legs = pairs.iter().map(|(p, q)| (s1.legs[*p].0, s2.legs[*q].1)).collect();
    GSpan { act, legs }
}

type Marks = BTreeMap<(Mask, usize, usize), i64>;

fn add_marks(g: &FinGroup, s: &GSpan, coef: i64, out: &mut Marks) {
    for u in g.lattice().all_subgroups() {
        for (p, leg) in s.legs.iter().enumerate() {
            if mask_elems(u).all(|x| s.act[x][p] == p) {
                *out.entry((u, leg.0, leg.1)).or_insert(0) += coef;
            }
        }
    }
}

fn hom_marks(b: &Burnside, f: &BurnsideHom) -> Marks {
    let mut m = Marks::new();
    for (i, c) in &f.terms {
        add_marks(b.group(), &basis_span(b, f.src, f.dst, *i), *c, &mut m);
    }
    m.retain(|_, v| *v != 0);
    m
}

fn inclusion(g: &FinGroup, m: Mask) -> mackey::grp::GrpHom {
    g.subgroup(m).as_group("H").1
}

fn burnside_soundness() -> Outcome {
    let (mut pairs, mut functors) = (0usize, 0usize);
    for g in small_groups() {
        let b = Burnside::of(&g);
        let n = b.n_orbits();
        let spans: Vec<Vec<Vec<GSpan>>> = (0..n)
            .map(|h| (0..n).map(|k| (0..b.basis(h, k).len()).map(|i| basis_span(&b, h, k, i)).collect()).collect())
            .collect();
        for h in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for (phi, s1) in spans[h][k].iter().enumerate() {
                        for (psi, s2) in spans[k][j].iter().enumerate() {
                            let mut want = Marks::new();
                            add_marks(&g, &pullback(&g, s1, s2), 1, &mut want);
                            let got = hom_marks(&b, &b.compose_basis(h, k, j, phi, psi));
                            ensure(got == want, || format!("{}: composite ({h},{k},{j}) {phi} {psi}", g.label()))?;
                            pairs += 1;
                        }
                    }
                }
            }
        }
        for c in 0..n {
            let i = inclusion(&g, b.orbit(c).rep);
            for f in [ZLinFunctor::ind(&i), ZLinFunctor::res(&i)] {
                f.map_err(|e| e.to_string())?.check().map_err(|e| format!("{}: {e}", g.label()))?;
                functors += 1;
            }
            if g.is_normal_mask(b.orbit(c).rep) {
                let (_, q) = quotient(&g, &g.subgroup(b.orbit(c).rep)).map_err(|e| e.to_string())?;
                ZLinFunctor::infl(&q).map_err(|e| e.to_string())?.check().map_err(|e| format!("{}: {e}", g.label()))?;
                functors += 1;
            }
        }
    }
    ensure(pairs > 0, || "no basis pairs".into())?;
    Ok(format!("{pairs} basis pairs, {functors} functors"))
}

fn ambidexterity() -> Outcome {
    let mut checked = 0usize;
    for name in catalog_names() {
        let g = catalog(name).unwrap();
        let b = Burnside::of(&g);
        for c in 0..b.n_orbits() {
            let i = Inj::new(&inclusion(&g, b.orbit(c).rep)).map_err(|e| e.to_string())?;
            let bh = i.ind().src().clone();
            for h in 0..bh.n_orbits() {
                let m = free_mackey(&bh, h);
                let w = i.wirthmuller(&m).map_err(|e| format!("{name} {}: {e}", b.orbit(c).label))?;
                let iso = mackey_iso_test(&w).map_err(|e| e.to_string())?;
                ensure(iso, || format!("{name}: Wirthmüller map for {} at free {h} is not an iso", b.orbit(c).label))?;
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no injections".into())?;
    Ok(format!("{checked} samples"))
}

/// Pairs every sample on one side with one on the other, cycling the
/// shorter list.
fn zip_cycle<'a>(xs: &'a [MackeyFunctor], ys: &'a [MackeyFunctor]) -> impl Iterator<Item = (&'a MackeyFunctor, &'a MackeyFunctor)> {
    let n = xs.len().max(ys.len());
    (0..n).map(move |k| (&xs[k % xs.len()], &ys[k % ys.len()]))
}

fn adjunctions() -> Outcome {
    let seed = 3;
    let mut checked = 0usize;
    for name in ["C2", "C4", "C2xC2", "S3"] {
        let g = catalog(name).unwrap();
        let b = Burnside::of(&g);
        let sg = sample_corpus(&b, seed).map_err(|e| e.to_string())?;
        for c in 0..b.n_orbits() {
            let i = inclusion(&g, b.orbit(c).rep);
            let sh = sample_corpus(&Burnside::of(&i.src), seed).map_err(|e| e.to_string())?;
            let ind = ZLinFunctor::ind(&i).map_err(|e| e.to_string())?;
            let res = ZLinFunctor::res(&i).map_err(|e| e.to_string())?;
            for (x, y) in zip_cycle(&sh, &sg) {
                let what = |s: &str| format!("{s} {name} {} at {} / {}", b.orbit(c).label, x.name(), y.name());
                ensure(Adjunction::lan(&ind).check_triangles(x, y).map_err(|e| e.to_string())?, || what("Lan ind"))?;
                ensure(Adjunction::ran(&ind).check_triangles(y, x).map_err(|e| e.to_string())?, || what("Ran ind"))?;
                ensure(Adjunction::lan(&res).check_triangles(y, x).map_err(|e| e.to_string())?, || what("Lan res"))?;
                ensure(Adjunction::ran(&res).check_triangles(x, y).map_err(|e| e.to_string())?, || what("Ran res"))?;
                checked += 4;
            }
        }
    }
    for inst in default_instances().map_err(|e| e.to_string())? {
        let sq = sample_corpus(inst.quotient_burnside(), seed).map_err(|e| e.to_string())?;
        let sg = sample_corpus(inst.burnside(), seed).map_err(|e| e.to_string())?;
        for (m, x) in zip_cycle(&sq, &sg) {
            let ok = check_inflation(&inst, m, x).map_err(|e| e.to_string())?;
            ensure(ok, || format!("inflation {} at {} / {}", inst.label(), m.name(), x.name()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} adjunction checks"))
}

fn item_ok(i: &Item) -> bool {
    i.status == Status::Pass && i.certificates_verified
}

fn generators(reports: &[PairReport]) -> Outcome {
    let mut n = 0usize;
    for p in reports {
        ensure(!p.generators.is_empty(), || format!("{}: no generators", p.pair))?;
        for i in &p.generators {
            ensure(item_ok(i), || format!("{} {}: {:?} {:?}", p.pair, i.name, i.status, i.note))?;
            n += 1;
        }
    }
    Ok(format!("{n} generators over {} pairs", reports.len()))
}

fn campaign(report: &CampaignReport) -> Outcome {
    ensure(report.pairs.len() == report.config.pairs.len(), || "missing pairs".into())?;
    for p in &report.pairs {
        ensure(p.random.len() >= 20, || format!("{}: only {} random objects", p.pair, p.random.len()))?;
        ensure(p.naturality.len() >= 5, || format!("{}: only {} naturality squares", p.pair, p.naturality.len()))?;
        for i in p.generators.iter().chain(&p.random) {
            ensure(item_ok(i), || format!("{} {}: {:?} {:?}", p.pair, i.name, i.status, i.note))?;
        }
        for n in &p.naturality {
            ensure(n.natural, || format!("{} seed {}: square does not commute {:?}", p.pair, n.seed, n.note))?;
        }
        ensure(p.passed, || format!("{} did not pass", p.pair))?;
    }
    let objects: usize = report.pairs.iter().map(|p| p.generators.len() + p.random.len()).sum();
    let squares: usize = report.pairs.iter().map(|p| p.naturality.len()).sum();
    Ok(format!("{} pairs, {objects} objects, {squares} naturality squares", report.pairs.len()))
}

fn zigzag(reports: &[&PairReport]) -> Outcome {
    let mut seen = 0usize;
    for p in reports {
        for i in p.generators.iter().chain(&p.random).filter(|i| i.status == Status::Pass) {
            ensure(i.zigzag_clean == Some(true), || format!("{} {}: zig-zag not clean", p.pair, i.name))?;
            seen += 1;
        }
    }
    ensure(seen > 0, || "no PASS items".into())?;
    Ok(format!("{seen} PASS items"))
}

fn necessity() -> Outcome {
    let g = catalog("C2").unwrap();
    let inst = AdamsInstance::new(&g, &g.whole()).map_err(|e| e.to_string())?;
    let b = inst.burnside();
    let v = verify_adams(&inst, &free_mackey(b, b.top()));
    ensure(v.status == Status::NotApplicable, || format!("Burnside functor verdict {:?}", v.status))?;
    let d = v.diagnostic.ok_or("no rank diagnostic")?;
    ensure(d.fixed_points == vec![2] && d.orbits_of_torsion_part == vec![1], || {
        format!("ranks {:?} vs {:?}", d.fixed_points, d.orbits_of_torsion_part)
    })?;
    let demo = rep_counterexample().map_err(|e| e.to_string())?;
    ensure(demo.holds(), || "rep-theory counterexample does not hold".into())?;
    ensure(demo.lines().iter().any(|l| l.contains("induced map on fixed points: 0")), || "no zero map reported".into())?;
    Ok("ranks [2] vs [1], NOT_APPLICABLE; zero map on fixed points".into())
}

fn mates() -> Outcome {
    let reports = shipped_corpus(0).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(r.is_clean(), || format!("{} {}: {:?}", r.instance, r.check, r.failures))?;
    }
    let kinds = ["unit-counit", "horizontal", "invariance"];
    for k in kinds {
        ensure(reports.iter().any(|r| r.check.contains(k)), || format!("no {k} check ran"))?;
    }
    let samples: usize = reports.iter().map(|r| r.samples).sum();
    Ok(format!("{} checks, {samples} samples", reports.len()))
}

// Independent certificate checker: exact big-integer products.

fn big(m: &Mat) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string().parse().unwrap()).collect()).collect()
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

fn is_identity(m: &[Vec<BigInt>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.len() == m.len() && r.iter().enumerate().all(|(j, x)| *x == BigInt::from((i == j) as i32)))
}

fn certificate_ok(c: &LevelCertificate) -> bool {
    let s = &c.smith;
    let (Some(u), Some(ui), Some(v), Some(vi)) = (&s.u, &s.uinv, &s.v, &s.vinv) else {
        return false;
    };
    let (r, n) = c.matrix.shape();
    if u.shape() != (r, r) || v.shape() != (n, n) || s.d.shape() != (r, n) {
        return false;
    }
    let (m, u, ui, v, vi, d) = (big(&c.matrix), big(u), big(ui), big(v), big(vi), big(&s.d));
    if mul(&mul(&u, &m, r, n), &v, n, n) != d || !is_identity(&mul(&u, &ui, r, r)) || !is_identity(&mul(&v, &vi, n, n)) {
        return false;
    }
    let zero = BigInt::from(0);
    let diagonal = d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || *x == zero));
    let diag: Vec<&BigInt> = (0..r.min(n)).map(|i| &d[i][i]).collect();
    let divides = diag.windows(2).all(|w| {
        if *w[0] == zero {
            *w[1] == zero
        } else {
            (w[1] % w[0]) == zero
        }
    });
    diagonal && divides && diag.iter().all(|x| **x >= zero)
}

fn determinism() -> Outcome {
    let cfg = CampaignConfig {
        pairs: [("C2", "G"), ("C2xC2", "(0 1)"), ("S3", "(0 1 2)")].iter().map(|(g, n)| (g.to_string(), n.to_string())).collect(),
        seed: 17,
        random: 3,
        naturality: 2,
        ..CampaignConfig::default()
    };
    let a = serde_json::to_string(&run_campaign(&cfg).map_err(|e| e.to_string())?).unwrap();
    let b = serde_json::to_string(&run_campaign(&cfg).map_err(|e| e.to_string())?).unwrap();
    ensure(a == b, || "campaign reports differ between runs".into())?;
    let a = serde_json::to_string(&shipped_corpus(5).map_err(|e| e.to_string())?).unwrap();
    let b = serde_json::to_string(&shipped_corpus(5).map_err(|e| e.to_string())?).unwrap();
    ensure(a == b, || "mates reports differ between runs".into())?;

    let mut certs = 0usize;
    for (g, n) in &cfg.pairs {
        let g = catalog(g).unwrap();
        let inst = AdamsInstance::new(&g, &select_subgroup(&g, n).unwrap()).map_err(|e| e.to_string())?;
        let b = inst.burnside();
        for h in inst.family.members() {
            let v = verify_adams(&inst, &free_mackey(b, *h));
            for c in &v.certificates {
                ensure(certificate_ok(c), || format!("{} level {}: certificate rejected", inst.label(), c.level))?;
                certs += 1;
            }
        }
    }
    ensure(certs > 0, || "no certificates".into())?;
    Ok(format!("{certs} certificates"))
}

struct Runner {
    failed: usize,
}

impl Runner {
    fn run(&mut self, id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let r = f();
        let t = start.elapsed();
        let r = r.and_then(|s| ensure(t <= budget, || "over budget".into()).map(|()| s));
        let status = if r.is_ok() { "PASS" } else { "FAIL" };
        println!("{status} {id} {name} ({:.1} s, budget {} s)", t.as_secs_f64(), budget.as_secs());
        match r {
            Ok(s) => println!("       {s}"),
            Err(e) => {
                println!("       {e}");
                self.failed += 1;
            }
        }
    }
}

fn main() {
    let mut run = Runner { failed: 0 };
    let secs = Duration::from_secs;
    run.run(1, "Burnside category matches the pullback oracle", secs(60), burnside_soundness);
    run.run(2, "Wirthmüller maps are isomorphisms", secs(120), ambidexterity);
    run.run(3, "adjunction triangle identities", secs(120), adjunctions);

    let instances = default_instances().expect("default instances");
    let gen_cfg = CampaignConfig { random: 0, naturality: 0, negative: false, ..CampaignConfig::default() };
    let mut gen_reports = Vec::new();
    run.run(4, "Adams norm on generators", secs(300), || {
        gen_reports = instances.iter().map(|i| run_pair(i, &gen_cfg)).collect();
        generators(&gen_reports)
    });
    let mut full = None;
    run.run(5, "Adams norm on random N-free objects with naturality", secs(900), || {
        let r = run_campaign(&CampaignConfig::default()).map_err(|e| e.to_string())?;
        let out = campaign(&r);
        full = Some(r);
        out
    });
    run.run(6, "zig-zag consistency on every PASS item", secs(5), || {
        let mut all: Vec<&PairReport> = gen_reports.iter().collect();
        if let Some(r) = &full {
            all.extend(&r.pairs);
        }
        zigzag(&all)
    });
    run.run(7, "necessity of N-freeness", secs(5), necessity);
    run.run(8, "calculus of mates on the shipped corpus", secs(60), mates);
    run.run(9, "determinism and certificate re-verification", secs(60), determinism);

    if run.failed > 0 {
        println!("{} criteria failed", run.failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
