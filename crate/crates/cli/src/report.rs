//! Text and JSON renderings of each subcommand's result.

use std::fmt::{Display, Write as _};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use mackey::adams::{self, AdamsInstance, CampaignReport, Item, Status};
use mackey::burnside::Burnside;
use mackey::grp::{subgroup_classes, FinGroup, GrpError, Subgroup};
use mackey::mackey::{free_mackey, mackey_iso_test, MackeyError, MackeyFunctor};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(command: &str, text: String, data: impl Serialize, ok: bool) -> Outcome {
        let mut json = json!({ "command": command, "ok": ok });
        json["result"] = serde_json::to_value(data).expect("serializable report");
        Outcome { text, json, ok }
    }

    pub fn json_text(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("valid JSON")
    }
}

/// A usage-level error: bad arguments or unreadable input.
pub struct Failure(pub String);

impl Failure {
    pub fn usage(e: impl Display) -> Failure {
        Failure(e.to_string())
    }
}

impl From<GrpError> for Failure {
    fn from(e: GrpError) -> Self {
        Failure(e.to_string())
    }
}

#[derive(Serialize)]
struct ClassRow {
    label: String,
    order: usize,
    conjugates: usize,
    normal: bool,
}

pub fn group(g: &FinGroup) -> Outcome {
    let classes: Vec<ClassRow> = subgroup_classes(g)
        .iter()
        .map(|c| {
            let s = g.subgroup(c.rep);
            ClassRow { label: s.label(), order: c.order, conjugates: c.members.len(), normal: s.is_normal() }
        })
        .collect();
    let total: usize = classes.iter().map(|c| c.conjugates).sum();
    let mut t = format!("group {}: order {}, degree {}\n", g.label(), g.order(), g.degree());
    writeln!(t, "{} subgroups in {} conjugacy classes", total, classes.len()).unwrap();
    for c in &classes {
        writeln!(t, "  {:<14} order {:<3} conjugates {:<2}{}", c.label, c.order, c.conjugates, if c.normal { " normal" } else { "" }).unwrap();
    }
    let data = json!({ "group": g.label(), "order": g.order(), "degree": g.degree(), "subgroups": total, "classes": classes });
    Outcome::new("check-group", t, data, true)
}

pub fn burnside(b: &Burnside) -> Outcome {
    let n = b.n_orbits();
    let orbits: Vec<Value> = (0..n)
        .map(|i| json!({ "index": i, "subgroup": b.orbit(i).label, "size": b.orbit(i).size() }))
        .collect();
    let sizes: Vec<Vec<usize>> = (0..n).map(|h| (0..n).map(|k| b.basis(h, k).len()).collect()).collect();
    let mut t = format!("Burnside category of {}: {} orbits\n", b.group().label(), n);
    for (i, o) in b.orbits().iter().enumerate() {
        writeln!(t, "  orbit {i}: G/{} ({} points)", o.label, o.size()).unwrap();
    }
    writeln!(t, "hom-basis sizes (row: source orbit, column: target orbit)").unwrap();
    for row in &sizes {
        writeln!(t, "  {}", row.iter().map(|s| format!("{s:>3}")).collect::<String>()).unwrap();
    }
    Outcome::new("burnside-table", t, json!({ "group": b.group().label(), "orbits": orbits, "hom_basis": sizes }), true)
}

pub fn mackey(m: &MackeyFunctor) -> Outcome {
    let rep = m.check_axioms();
    let levels = m.level_summary();
    let mut t = format!("Mackey functor over {}\n", m.group().label());
    for (i, l) in levels.iter().enumerate() {
        writeln!(t, "  level {i}: {l}").unwrap();
    }
    writeln!(t, "axioms: {}", if rep.is_clean() { "clean" } else { "violated" }).unwrap();
    let data = json!({ "group": m.group().label(), "levels": levels, "axioms_clean": rep.is_clean(), "violations": rep.violations.len() });
    Outcome::new("mackey-check", t, data, rep.is_clean())
}

pub fn load_failure(file: &Path, e: &MackeyError) -> Outcome {
    let t = format!("{}: load failed: {e}\n", file.display());
    Outcome::new("mackey-check", t, json!({ "file": file.display().to_string(), "error": e.to_string() }), false)
}

pub fn family(inst: &AdamsInstance) -> Outcome {
    let labels = inst.family.labels();
    let mut t = format!("family of subgroups meeting N trivially for {}\n", inst.label());
    writeln!(t, "quotient order {}, fiber product order {}", inst.quot.order(), inst.fiber.k.order()).unwrap();
    for l in &labels {
        writeln!(t, "  {l}").unwrap();
    }
    let data = json!({
        "pair": inst.label(),
        "members": labels,
        "quotient_order": inst.quot.order(),
        "fiber_product_order": inst.fiber.k.order(),
    });
    Outcome::new("family", t, data, true)
}

#[derive(Serialize)]
struct WirthRow {
    subgroup: String,
    sample: String,
    iso: bool,
    note: Option<String>,
}

pub fn wirthmuller(g: &FinGroup, subs: &[Subgroup]) -> Outcome {
    let mut rows = Vec::new();
    for s in subs {
        let (h, i) = s.as_group(&s.label());
        let b = Burnside::of(&h);
        for o in 0..b.n_orbits() {
            let x = free_mackey(&b, o);
            let r = adams::wirthmuller(&i, &x).map_err(|e| e.to_string()).and_then(|w| mackey_iso_test(&w).map_err(|e| e.to_string()));
            let (iso, note) = match r {
                Ok(v) => (v, None),
                Err(e) => (false, Some(e)),
            };
            rows.push(WirthRow { subgroup: s.label(), sample: format!("free at {}", b.orbit(o).label), iso, note });
        }
    }
    let ok = rows.iter().all(|r| r.iso);
    let mut t = format!("Wirthmüller isos into {}\n", g.label());
    for r in &rows {
        writeln!(t, "  {:<14} {:<20} {}", r.subgroup, r.sample, if r.iso { "iso" } else { "NOT ISO" }).unwrap();
    }
    Outcome::new("wirthmuller", t, json!({ "group": g.label(), "checks": rows }), ok)
}

fn item_line(i: &Item) -> String {
    let mut s = format!("{:<28} {}", i.name, i.status);
    if let Some(z) = i.zigzag_clean {
        write!(s, "  zigzag {}", if z { "clean" } else { "MISMATCH" }).unwrap();
    }
    if let Some(d) = &i.diagnostic {
        write!(s, "  fixed points ranks {:?} vs orbits of torsion part {:?}", d.fixed_points, d.orbits_of_torsion_part).unwrap();
    }
    if let Some(n) = &i.note {
        write!(s, "  ({n})").unwrap();
    }
    s
}

fn meets(i: &Item, expect: Status) -> bool {
    i.status == expect && (expect != Status::Pass || (i.certificates_verified && i.zigzag_clean == Some(true)))
}

pub fn adams(inst: &AdamsInstance, items: Vec<Item>, expect: Status) -> Outcome {
    let ok = items.iter().all(|i| meets(i, expect));
    let mut t = format!("Adams norm for {}\n", inst.label());
    for i in &items {
        writeln!(t, "  {}", item_line(i)).unwrap();
    }
    writeln!(t, "expected {expect}: {}", if ok { "met" } else { "NOT MET" }).unwrap();
    Outcome::new("adams", t, json!({ "pair": inst.label(), "expect": expect, "items": items }), ok)
}

fn tally(items: &[Item]) -> String {
    let pass = items.iter().filter(|i| i.status == Status::Pass).count();
    format!("{pass}/{} PASS", items.len())
}

pub fn campaign(r: &CampaignReport) -> Outcome {
    let mut t = String::new();
    for p in &r.pairs {
        writeln!(t, "{}  {}", p.pair, if p.passed { "PASS" } else { "FAIL" }).unwrap();
        writeln!(t, "  family: {}", p.family.join(", ")).unwrap();
        writeln!(t, "  generators: {}", tally(&p.generators)).unwrap();
        writeln!(t, "  random N-free objects: {}", tally(&p.random)).unwrap();
        let nat = p.naturality.iter().filter(|n| n.natural).count();
        writeln!(t, "  naturality squares: {nat}/{} commute", p.naturality.len()).unwrap();
        if let Some(n) = &p.negative {
            writeln!(t, "  negative: {}", item_line(n)).unwrap();
        }
        for i in p.generators.iter().chain(&p.random).filter(|i| i.status != Status::Pass) {
            writeln!(t, "  failed: {}", item_line(i)).unwrap();
        }
    }
    writeln!(t, "campaign: {}", if r.passed { "PASS" } else { "FAIL" }).unwrap();
    Outcome::new("campaign", t, r, r.passed)
}

pub fn rep_counterexample() -> Outcome {
    match adams::rep_counterexample() {
        Ok(d) => {
            let mut t = String::from("fixed points of C2-modules versus the Adams norm\n");
            for l in d.lines() {
                writeln!(t, "{l}").unwrap();
            }
            let ok = d.holds();
            Outcome::new("demo rep-counterexample", t, d, ok)
        }
        Err(e) => Outcome::new("demo rep-counterexample", format!("demo failed: {e}\n"), json!({ "error": e.to_string() }), false),
    }
}
