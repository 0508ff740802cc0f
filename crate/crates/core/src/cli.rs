//! Command-line front end.
//!
//! Exit codes: 0 success, 1 an audit found a violation or disagreement,
//! 2 invalid input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cayley::ConnectionSet;
use crate::corpus::{connected_sets, dedupe_by_units, sample_sets};
use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::isotest::{audit_iso_pairs, iso_pairs_exhaustive, iso_pairs_sampled, muzychuk_iso_with};
use crate::keys::{audit_phi_on_classes, PhiReading, TwicePrimePower};
use crate::par::Exec;
use crate::poschel::{
    brute_force_srings, build_ssystem_partition, compare_with_brute_force, enumerate_ssystems, odd_prime_power,
    BRUTE_FORCE_CAP,
};
use crate::stability::analyze_with;
use crate::stability::audit::{audit_theorems, Check};

/// Atom count up to which `verify --theorem muzychuk` runs all pairs.
const EXHAUSTIVE_PAIR_ATOMS: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "caylab", version, about = "Stability of Cayley graphs on finite abelian groups")]
pub struct Cli {
    /// Apply generalized multipliers digit by digit instead of through CRT.
    #[arg(long, global = true)]
    pub debug_literal_phi: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stability report for one connection set.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Reports for every (or a sample of) connected non-bipartite set.
    Enumerate {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Keep one set per orbit under unit multiplication.
        #[arg(long)]
        dedupe: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Isomorphism of two circulants of order 2p^e.
    Iso {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: String,
        #[arg(long)]
        set2: String,
    },
    /// Runs one audit and prints its violations.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// All S-rings over a small cyclic p-group.
    Srings {
        #[arg(long)]
        group: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CorpusArgs {
    /// Sample this many sets (or pairs) instead of enumerating.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to CAYLAB_JOBS, then 1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Main1,
    Main2,
    Main3,
    Main4,
    Wm,
    Poschel,
    Muzychuk,
    #[value(name = "prop5_7")]
    Prop57,
}

impl Theorem {
    fn checks(&self) -> &'static [Check] {
        match self {
            Theorem::Main1 => &[Check::Equivalence, Check::Axioms],
            Theorem::Main2 => &[Check::Wreath],
            Theorem::Main3 => &[Check::PairOrRadical, Check::ClassShape],
            Theorem::Main4 => &[Check::Criterion],
            Theorem::Wm => &[Check::Twins],
            _ => &[],
        }
    }
}

pub fn parse_set(g: &AbelianGroup, text: &str) -> Result<ConnectionSet> {
    let mut elems = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let x: usize = part.parse().map_err(|_| Error::Precondition(format!("bad set element {part:?}")))?;
        elems.push(x);
    }
    ConnectionSet::new(g, &elems)
}

fn jobs(corpus: &CorpusArgs) -> usize {
    corpus
        .jobs
        .map(|j| j as usize)
        .or_else(|| std::env::var("CAYLAB_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

fn corpus_sets(g: &AbelianGroup, corpus: &CorpusArgs) -> Result<Vec<ConnectionSet>> {
    match corpus.sample {
        Some(k) => sample_sets(g, k, corpus.seed),
        None => connected_sets(g),
    }
}

/// Parses `argv` (program name first) and runs; returns the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 2 { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(CliError::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum CliError {
    Input(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn reading(cli: &Cli) -> PhiReading {
    if cli.debug_literal_phi {
        PhiReading::Literal
    } else {
        PhiReading::Crt
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, CliError> {
    let reading = reading(cli);
    match &cli.command {
        Command::Analyze { group, set } => {
            let g: AbelianGroup = group.parse()?;
            let s = parse_set(&g, set)?;
            let report = analyze_with(&g, &s, reading)?;
            writeln!(out, "{}", report.to_json())?;
            Ok(if report.agreement { 0 } else { 1 })
        }
        Command::Enumerate { group, corpus, dedupe, output } => {
            let g: AbelianGroup = group.parse()?;
            let mut sets = corpus_sets(&g, corpus)?;
            if *dedupe {
                sets = dedupe_by_units(&g, sets);
            }
            let exec = Exec::new(jobs(corpus));
            let reports = exec.map(&sets, |s| analyze_with(&g, s, reading));
            let mut file;
            let mut stdout_sink;
            let sink: &mut dyn Write = match output {
                Some(path) => {
                    file = BufWriter::new(File::create(path)?);
                    &mut file
                }
                None => {
                    stdout_sink = out;
                    &mut stdout_sink
                }
            };
            let (mut stable, mut applicable, mut agree) = (0, 0, 0);
            for r in reports {
                let r = r?;
                stable += r.stable as usize;
                applicable += r.criterion.applicable as usize;
                agree += (r.criterion.applicable && r.agreement) as usize;
                writeln!(sink, "{}", r.to_json())?;
            }
            let total = sets.len();
            writeln!(
                sink,
                "# group={g} instances={total} stable={stable} unstable={} applicable={applicable} agree={agree} disagree={}",
                total - stable,
                applicable - agree
            )?;
            sink.flush()?;
            Ok(if applicable == agree { 0 } else { 1 })
        }
        Command::Iso { n, set, set2 } => {
            let g = AbelianGroup::cyclic(*n)?;
            let h = TwicePrimePower::new(&g)?;
            let (s, s2) = (parse_set(&g, set)?, parse_set(&g, set2)?);
            let r = muzychuk_iso_with(&h, &s, &s2, reading)?;
            #[derive(Serialize)]
            struct IsoLine {
                isomorphic: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness_multiplier: Option<String>,
                keys: [Option<String>; 2],
            }
            let line = IsoLine {
                isomorphic: r.isomorphic,
                witness_multiplier: r.witness.map(|m| m.to_string()),
                keys: [r.key_s.map(|k| k.to_string()), r.key_s2.map(|k| k.to_string())],
            };
            writeln!(out, "{}", json(&line))?;
            Ok(0)
        }
        Command::Verify { theorem, group, corpus } => {
            let g: AbelianGroup = group.parse()?;
            let exec = Exec::new(jobs(corpus));
            let (violations, instances) = verify(*theorem, &g, corpus, reading, &exec)?;
            for v in &violations {
                writeln!(out, "{v}")?;
            }
            writeln!(out, "{} violations / {instances} instances", violations.len())?;
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Srings { group } => {
            let g: AbelianGroup = group.parse()?;
            match odd_prime_power(&g) {
                Some((p, e)) => {
                    let systems = enumerate_ssystems(p, e)?;
                    for s in &systems {
                        writeln!(out, "# {s}")?;
                        write!(out, "{}", build_ssystem_partition(&g, s)?.dump())?;
                    }
                    writeln!(out, "# {} S-rings", systems.len())?;
                }
                None if g.order() <= BRUTE_FORCE_CAP => {
                    let rings = brute_force_srings(&g)?;
                    for a in &rings {
                        writeln!(out, "#")?;
                        write!(out, "{}", a.dump())?;
                    }
                    writeln!(out, "# {} S-rings", rings.len())?;
                }
                None => {
                    return Err(Error::Precondition(format!(
                        "{g} is neither a cyclic odd p-group nor of order at most {BRUTE_FORCE_CAP}"
                    ))
                    .into())
                }
            }
            Ok(0)
        }
    }
}

/// Violations as JSON lines plus the number of instances examined.
fn verify(
    theorem: Theorem,
    g: &AbelianGroup,
    corpus: &CorpusArgs,
    reading: PhiReading,
    exec: &Exec,
) -> Result<(Vec<String>, usize)> {
    let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Precondition(format!("{g}: {what}"))) };
    match theorem {
        Theorem::Poschel => {
            let c = compare_with_brute_force(g)?;
            let mut lines: Vec<String> =
                c.only_brute.iter().map(|p| format!("{{\"missing_ssystem\":{}}}", json(p))).collect();
            lines.extend(c.only_systems.iter().map(|p| format!("{{\"not_brute\":{}}}", json(p))));
            Ok((lines, c.brute.len()))
        }
        Theorem::Muzychuk => {
            let h = TwicePrimePower::new(g)?;
            let pairs = match corpus.sample {
                None if crate::corpus::atoms(g).len() <= EXHAUSTIVE_PAIR_ATOMS => iso_pairs_exhaustive(&h)?,
                None => iso_pairs_sampled(&h, 200, corpus.seed)?,
                Some(k) => iso_pairs_sampled(&h, k, corpus.seed)?,
            };
            let bad = audit_iso_pairs(&h, &pairs, reading, exec)?;
            Ok((bad.iter().map(json).collect(), pairs.len()))
        }
        Theorem::Prop57 => {
            let h = TwicePrimePower::new(g)?;
            let (checks, bad) = audit_phi_on_classes(&h, reading)?;
            let lines = bad
                .iter()
                .map(|v| {
                    format!(
                        "{{\"key\":\"{}\",\"multiplier\":\"{}\",\"class\":{}}}",
                        v.key,
                        v.multiplier,
                        json(&v.class)
                    )
                })
                .collect();
            Ok((lines, checks))
        }
        _ => {
            let checks = theorem.checks();
            need(checks.iter().all(|c| c.applies_to(g)), "the audit does not apply to this group")?;
            let sets = corpus_sets(g, corpus)?;
            let outcome = audit_theorems(g, &sets, checks, exec)?;
            Ok((outcome.violations.iter().map(json).collect(), outcome.instances))
        }
    }
}
