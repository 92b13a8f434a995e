//! Default (G, N) catalog and seeded random N-free objects.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use serde::Serialize;

use super::{adams_norm, norm_is_natural, verify_adams, AdamsError, AdamsInstance, RankDiagnostic, Status};
use crate::grp::{catalog, parse_cycles, FinGroup, GrpError, Subgroup};
use crate::mackey::{mackey_colimit, MackeyColimit, yoneda, Biproduct, MackeyDiagram, MackeyFunctor, MackeyMorphism};
use crate::burnside::Burnside;
use crate::zmod::Int;

fn center(g: &FinGroup) -> Subgroup {
    let z: Vec<usize> = g.elements().filter(|x| g.elements().all(|y| g.mul(*x, y) == g.mul(y, *x))).collect();
    g.subgroup(g.closure(&z))
}

fn generated(g: &FinGroup, cycles: &[&str]) -> Result<Subgroup, GrpError> {
    let mut gens = Vec::new();
    for c in cycles {
        let p = parse_cycles(c, Some(g.degree()))?;
        gens.push(g.index_of(&p).ok_or_else(|| GrpError::Parse(format!("{c} is not in {}", g.label())))?);
    }
    Ok(g.subgroup(g.closure(&gens)))
}

/// Resolves a normal subgroup selector: `e`, `G`, `center`, or
/// generators in cycle notation separated by `;`.
pub fn select_subgroup(g: &FinGroup, sel: &str) -> Result<Subgroup, GrpError> {
    match sel.trim() {
        "e" | "1" | "trivial" => Ok(g.trivial()),
        "G" | "whole" => Ok(g.whole()),
        "center" | "Z" => Ok(center(g)),
        s => generated(g, &s.split(';').map(str::trim).filter(|c| !c.is_empty()).collect::<Vec<_>>()),
    }
}

/// The default campaign pairs, as (group, selector).
pub const DEFAULT_PAIRS: &[(&str, &str)] = &[
    ("C2", "G"),
    ("C4", "(0 2)(1 3)"),
    ("C2xC2", "(0 1)"),
    ("C2xC2", "(2 3)"),
    ("C2xC2", "(0 1)(2 3)"),
    ("S3", "(0 1 2)"),
    ("C6", "(3 4)"),
    ("C6", "(0 1 2)"),
    ("D8", "center"),
    ("Q8", "center"),
    ("C2xC4", "(0 1)"),
    ("C2xC4", "(2 4)(3 5)"),
];

pub fn default_instances() -> Result<Vec<AdamsInstance>, AdamsError> {
    DEFAULT_PAIRS
        .iter()
        .map(|(g, n)| {
            let g = catalog(g)?;
            let n = select_subgroup(&g, n)?;
            AdamsInstance::new(&g, &n)
        })
        .collect()
}

fn random_sum(inst: &AdamsInstance, rng: &mut ChaCha8Rng, size: usize) -> (Biproduct, Vec<usize>) {
    random_sum_over(inst.burnside(), &inst.family.members(), rng, size)
}

fn random_sum_over(b: &Burnside, members: &[usize], rng: &mut ChaCha8Rng, size: usize) -> (Biproduct, Vec<usize>) {
    let orbits: Vec<usize> = (0..size).map(|_| members[rng.gen_range(0..members.len())]).collect();
    let parts: Vec<MackeyFunctor> = orbits.iter().map(|h| crate::mackey::free_mackey(b, *h)).collect();
    (Biproduct::of(&parts), orbits)
}

/// A map out of a sum of frees with random small coefficients.
fn random_map(rng: &mut ChaCha8Rng, src: &(Biproduct, Vec<usize>), dst: &MackeyFunctor) -> MackeyMorphism {
    let (bp, orbits) = src;
    let mut out = MackeyMorphism::zero(&bp.sum, dst);
    for (i, h) in orbits.iter().enumerate() {
        let x: Vec<Int> = (0..dst.level(*h).n_gens()).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
        out = out.add(&yoneda(dst, *h, &x).compose(&bp.proj[i]));
    }
    out
}

fn cokernel(phi: &MackeyMorphism) -> Result<MackeyColimit, AdamsError> {
    let zero = MackeyMorphism::zero(&phi.src, &phi.dst);
    let d = MackeyDiagram { objects: vec![phi.src.clone(), phi.dst.clone()], edges: vec![(0, 1, phi.clone()), (0, 1, zero)] };
    Ok(mackey_colimit(&d)?)
}

/// A cokernel of a random map between sums of free functors at members of
/// the family; `size` bounds the number of generators.
pub fn random_torsion(inst: &AdamsInstance, seed: u64, size: usize) -> Result<MackeyFunctor, AdamsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = size.max(1);
    let gens = random_sum(inst, &mut rng, size);
    let rels = rng.gen_range(1..=size);
    let rels = random_sum(inst, &mut rng, rels);
    let phi = random_map(&mut rng, &rels, &gens.0.sum);
    Ok(cokernel(&phi)?.obj)
}

/// A random morphism `X → X'` of N-free objects: `X = coker(R → P)`,
/// `X' = coker(R ⊕ R' → P')` with `R → P'` factoring through `α: P → P'`.
pub fn random_morphism(inst: &AdamsInstance, seed: u64, size: usize) -> Result<MackeyMorphism, AdamsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = size.max(1);
    let p = random_sum(inst, &mut rng, size);
    let n = rng.gen_range(1..=size);
    let r = random_sum(inst, &mut rng, n);
    let phi = random_map(&mut rng, &r, &p.0.sum);
    let p2 = random_sum(inst, &mut rng, size);
    let alpha = random_map(&mut rng, &p, &p2.0.sum);
    let n = rng.gen_range(1..=size);
    let r2 = random_sum(inst, &mut rng, n);
    let phi2 = random_map(&mut rng, &r2, &p2.0.sum);
    let both = Biproduct::of(&[r.0.sum.clone(), r2.0.sum.clone()]);
    let rel = alpha.compose(&phi).compose(&both.proj[0]).add(&phi2.compose(&both.proj[1]));
    let c = cokernel(&phi)?;
    let c2 = cokernel(&rel)?;
    let top = c2.legs[1].compose(&alpha);
    Ok(c.induced(&c2.obj, &[top.compose(&phi), top]))
}

/// A cokernel of a random map between sums of free functors at any orbits.
pub fn random_mackey(b: &Burnside, seed: u64, size: usize) -> Result<MackeyFunctor, AdamsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = size.max(1);
    let all: Vec<usize> = (0..b.n_orbits()).collect();
    let gens = random_sum_over(b, &all, &mut rng, size);
    let rels = rng.gen_range(1..=size);
    let rels = random_sum_over(b, &all, &mut rng, rels);
    let phi = random_map(&mut rng, &rels, &gens.0.sum);
    Ok(cokernel(&phi)?.obj)
}

/// A campaign over (group, selector) pairs.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignConfig {
    pub pairs: Vec<(String, String)>,
    pub seed: u64,
    /// Random N-free objects per pair.
    pub random: usize,
    /// Generator bound for random objects.
    pub size: usize,
    /// Random morphisms per pair for naturality squares.
    pub naturality: usize,
    /// Also run the Burnside functor, expected `NOT_APPLICABLE`.
    pub negative: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            pairs: DEFAULT_PAIRS.iter().map(|(g, n)| (g.to_string(), n.to_string())).collect(),
            seed: 0,
            random: 20,
            size: 2,
            naturality: 5,
            negative: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub zigzag_clean: Option<bool>,
    pub full_agreement: Option<bool>,
    pub certificates_verified: bool,
    pub diagnostic: Option<RankDiagnostic>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalityItem {
    pub seed: u64,
    pub natural: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub pair: String,
    pub family: Vec<String>,
    pub generators: Vec<Item>,
    pub random: Vec<Item>,
    pub naturality: Vec<NaturalityItem>,
    pub negative: Option<Item>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub pairs: Vec<PairReport>,
    pub passed: bool,
}

/// Verifies one object and records the verdict.
pub fn verify_item(inst: &AdamsInstance, name: &str, x: &MackeyFunctor) -> Item {
    let v = verify_adams(inst, x);
    Item {
        name: name.to_string(),
        status: v.status,
        zigzag_clean: v.zigzag.as_ref().map(|z| z.is_clean()),
        full_agreement: v.zigzag.as_ref().map(|z| z.full_agreement),
        certificates_verified: v.certificates.iter().all(|c| c.verify()),
        diagnostic: v.diagnostic,
        note: v.note,
    }
}

fn naturality(inst: &AdamsInstance, seed: u64, size: usize) -> NaturalityItem {
    let run = || -> Result<bool, AdamsError> {
        let phi = random_morphism(inst, seed, size)?;
        let a = adams_norm(inst, &phi.src)?;
        let b = adams_norm(inst, &phi.dst)?;
        norm_is_natural(inst, &a, &b, &phi)
    };
    match run() {
        Ok(natural) => NaturalityItem { seed, natural, note: None },
        Err(e) => NaturalityItem { seed, natural: false, note: Some(e.to_string()) },
    }
}

fn passes(i: &Item) -> bool {
    i.status == Status::Pass && i.certificates_verified
}

pub fn run_pair(inst: &AdamsInstance, cfg: &CampaignConfig) -> PairReport {
    let b = inst.burnside();
    let labels = inst.family.labels();
    let generators: Vec<Item> = inst
        .family
        .members()
        .iter()
        .zip(&labels)
        .map(|(h, l)| verify_item(inst, &format!("free at {l}"), &crate::mackey::free_mackey(b, *h)))
        .collect();
    let random: Vec<Item> = (0..cfg.random as u64)
        .map(|k| {
            let seed = cfg.seed.wrapping_add(k);
            match random_torsion(inst, seed, cfg.size) {
                Ok(x) => verify_item(inst, &format!("random seed {seed}"), &x),
                Err(e) => Item {
                    name: format!("random seed {seed}"),
                    status: Status::Fail,
                    zigzag_clean: None,
                    full_agreement: None,
                    certificates_verified: false,
                    diagnostic: None,
                    note: Some(e.to_string()),
                },
            }
        })
        .collect();
    let naturality: Vec<NaturalityItem> =
        (0..cfg.naturality as u64).map(|k| naturality(inst, cfg.seed.wrapping_add(k), cfg.size)).collect();
    let negative = (cfg.negative && !inst.family.members().contains(&b.top()))
        .then(|| verify_item(inst, "Burnside functor", &crate::mackey::free_mackey(b, b.top())));
    let passed = generators.iter().all(passes)
        && random.iter().all(passes)
        && naturality.iter().all(|n| n.natural)
        && negative.as_ref().is_none_or(|n| n.status == Status::NotApplicable && n.diagnostic.is_some());
    PairReport { pair: inst.label(), family: labels, generators, random, naturality, negative, passed }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport, AdamsError> {
    let mut pairs = Vec::new();
    for (g, n) in &cfg.pairs {
        let g = catalog(g)?;
        let n = select_subgroup(&g, n)?;
        pairs.push(run_pair(&AdamsInstance::new(&g, &n)?, cfg));
    }
    let passed = pairs.iter().all(|p| p.passed);
    Ok(CampaignReport { config: cfg.clone(), pairs, passed })
}
