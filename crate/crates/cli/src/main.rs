//! `adams-mackey`: group and Mackey functor checks, Adams norm campaigns,
//! and the representation-theory counterexample.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mackey::adams::{
    random_torsion, run_campaign, run_pair, select_subgroup, verify_item, AdamsInstance, CampaignConfig, Status,
    DEFAULT_PAIRS,
};
use mackey::burnside::Burnside;
use mackey::grp::{catalog, parse_group_spec, FinGroup};
use mackey::mackey::{free_mackey, parse_mackey_file, MackeyError};

use report::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "adams-mackey", version, about = "Exact checks of the Adams isomorphism for Mackey functors")]
struct Cli {
    /// Print the structured JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Group order and subgroup classes.
    CheckGroup {
        /// Catalog name, or a label when --gens is given.
        group: String,
        /// Generators in cycle notation separated by `;`.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Orbits of the Burnside category and hom-basis sizes.
    BurnsideTable {
        group: String,
    },
    /// Loads a Mackey functor file and checks the axioms.
    MackeyCheck {
        file: PathBuf,
    },
    /// The family of subgroups meeting N trivially.
    Family {
        #[arg(short = 'G', long)]
        group: String,
        #[arg(short = 'N', long)]
        normal: String,
    },
    /// Wirthmüller isos for the inclusions of subgroups at free samples.
    Wirthmuller {
        #[arg(short = 'G', long)]
        group: String,
        /// Subgroup selector; all subgroup class representatives by default.
        #[arg(short = 'H', long)]
        sub: Option<String>,
    },
    /// Verifies the Adams norm at one object or at all generators.
    Adams {
        #[arg(short = 'G', long)]
        group: String,
        #[arg(short = 'N', long)]
        normal: String,
        /// Mackey functor file.
        #[arg(short = 'X', long, conflicts_with = "random_torsion")]
        file: Option<PathBuf>,
        /// Seed and generator bound of a random N-free object.
        #[arg(long, num_args = 2, value_names = ["SEED", "SIZE"])]
        random_torsion: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "pass")]
        expect: Expect,
    },
    /// Runs the verification campaign over (group, normal subgroup) pairs.
    Campaign {
        /// `GROUP:SELECTOR`; the default catalog when omitted.
        #[arg(long = "pair")]
        pairs: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 5)]
        naturality: usize,
        /// Skip the Burnside functor check.
        #[arg(long)]
        no_negative: bool,
    },
    /// Worked demonstrations.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Pass,
    NotApplicable,
    Fail,
}

impl Expect {
    fn status(self) -> Status {
        match self {
            Expect::Pass => Status::Pass,
            Expect::NotApplicable => Status::NotApplicable,
            Expect::Fail => Status::Fail,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    RepCounterexample,
}

fn group_of(name: &str, gens: Option<&str>) -> Result<FinGroup, Failure> {
    match gens {
        Some(g) => Ok(parse_group_spec(name, &g.replace(';', "\n"))?),
        None => Ok(catalog(name)?),
    }
}

fn instance(g: &str, n: &str) -> Result<AdamsInstance, Failure> {
    let g = catalog(g)?;
    let n = select_subgroup(&g, n)?;
    Ok(AdamsInstance::new(&g, &n).map_err(Failure::usage)?)
}

fn run(cmd: &Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::CheckGroup { group, gens } => Ok(report::group(&group_of(group, gens.as_deref())?)),
        Cmd::BurnsideTable { group } => Ok(report::burnside(&Burnside::of(&catalog(group)?))),
        Cmd::MackeyCheck { file } => match parse_mackey_file(file) {
            Ok(m) => Ok(report::mackey(&m)),
            Err(e @ (MackeyError::Parse { .. } | MackeyError::Io(_))) => Err(Failure::usage(e)),
            Err(e) => Ok(report::load_failure(file, &e)),
        },
        Cmd::Family { group, normal } => Ok(report::family(&instance(group, normal)?)),
        Cmd::Wirthmuller { group, sub } => {
            let g = catalog(group)?;
            let subs = match sub {
                Some(s) => vec![select_subgroup(&g, s)?],
                None => mackey::grp::subgroup_classes(&g).iter().map(|c| g.subgroup(c.rep)).collect(),
            };
            Ok(report::wirthmuller(&g, &subs))
        }
        Cmd::Adams { group, normal, file, random_torsion: rt, expect } => {
            let inst = instance(group, normal)?;
            let items = match (file, rt) {
                (Some(f), _) => {
                    let x = parse_mackey_file(f).map_err(Failure::usage)?;
                    if x.burnside() != inst.burnside() {
                        return Err(Failure::usage(format!("{} is not over {}", f.display(), group)));
                    }
                    vec![verify_item(&inst, &f.display().to_string(), &x)]
                }
                (None, Some(v)) => {
                    let x = random_torsion(&inst, v[0], v[1] as usize).map_err(Failure::usage)?;
                    vec![verify_item(&inst, &format!("random seed {} size {}", v[0], v[1]), &x)]
                }
                (None, None) => {
                    let b = inst.burnside();
                    inst.family
                        .members()
                        .iter()
                        .zip(inst.family.labels())
                        .map(|(h, l)| verify_item(&inst, &format!("free at {l}"), &free_mackey(b, *h)))
                        .collect()
                }
            };
            Ok(report::adams(&inst, items, expect.status()))
        }
        Cmd::Campaign { pairs, seed, random, size, naturality, no_negative } => {
            let pairs = if pairs.is_empty() {
                DEFAULT_PAIRS.iter().map(|(g, n)| (g.to_string(), n.to_string())).collect()
            } else {
                pairs
                    .iter()
                    .map(|p| {
                        p.split_once(':')
                            .map(|(g, n)| (g.to_string(), n.to_string()))
                            .ok_or_else(|| Failure::usage(format!("pair {p} is not GROUP:SELECTOR")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let cfg = CampaignConfig { pairs, seed: *seed, random: *random, size: *size, naturality: *naturality, negative: !no_negative };
            for (g, n) in &cfg.pairs {
                instance(g, n)?;
            }
            let r = if cfg.pairs.len() == 1 {
                let (g, n) = &cfg.pairs[0];
                let p = run_pair(&instance(g, n)?, &cfg);
                let passed = p.passed;
                mackey::adams::CampaignReport { config: cfg.clone(), pairs: vec![p], passed }
            } else {
                run_campaign(&cfg).map_err(Failure::usage)?
            };
            Ok(report::campaign(&r))
        }
        Cmd::Demo { which: Demo::RepCounterexample } => Ok(report::rep_counterexample()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, out.json_text()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json { writeln!(stdout, "{}", out.json_text()) } else { write!(stdout, "{}", out.text) };
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.0);
            ExitCode::from(2)
        }
    }
}
