//! `alcove`: command-line front end for the alcove toolkit.

mod commands;
mod output;

use std::process::ExitCode;

use alcove::rootsys::{Family, RootSystem, RootSystemId};
use alcove::{Error, Result};
use clap::{Args, Parser, Subcommand};

use commands::{GroupChoice, PolytopeChoice, SliceOverride, SupportChoice, SweepChecks};
use output::{Format, Report};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "alcove", version, about = "Alcove automorphisms and fundamental polytopes of affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

/// A root system given as `A 3` or `A3`.
#[derive(Args, Debug)]
struct System {
    /// Family letter (A-G), optionally with the rank attached.
    family: String,
    rank: Option<usize>,
}

impl System {
    fn build(&self) -> Result<RootSystem> {
        let text = match self.rank {
            Some(n) => format!("{}{n}", self.family),
            None => self.family.clone(),
        };
        let id: RootSystemId = text.parse()?;
        Ok(RootSystem::build(id))
    }
}

/// Replaces the standard slicing root.
#[derive(Args, Debug, Default)]
struct Slice {
    /// Simple roots with coefficient +1 in v₀.
    #[arg(long, value_delimiter = ',')]
    plus: Vec<usize>,
    /// Simple roots with coefficient −1 in v₀.
    #[arg(long, value_delimiter = ',')]
    minus: Vec<usize>,
    /// Diagram involution in cycle notation, e.g. "(16)(35)".
    #[arg(long)]
    involution: Option<String>,
    /// Allowed support of v₀.
    #[arg(long, value_enum)]
    support: Option<SupportChoice>,
}

impl Slice {
    fn to_override(&self) -> SliceOverride {
        SliceOverride {
            plus: self.plus.clone(),
            minus: self.minus.clone(),
            involution: self.involution.clone(),
            support: self.support,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan data, marks, minuscule nodes and coweights.
    Info(System),
    /// The fundamental group Ω with its multiplication table.
    Omega(System),
    /// Aut(𝒜) with (ω, φ) decompositions and Coxeter generators.
    AutAlcove(System),
    /// Vertices and bounding hyperplanes of the Komrakov-Premet polytope.
    Kp(System),
    /// The fundamental polytope for Aut(𝒜).
    FundPolytope {
        #[command(flatten)]
        system: System,
        #[command(flatten)]
        slice: Slice,
    },
    /// The Dirichlet domain of Ω at 0 and its volume ratio.
    Dirichlet(System),
    /// Checks that a polytope is a fundamental domain.
    CheckFund {
        #[command(flatten)]
        system: System,
        #[arg(long, value_enum)]
        polytope: Option<PolytopeChoice>,
        #[arg(long, value_enum)]
        group: Option<GroupChoice>,
        #[command(flatten)]
        slice: Slice,
    },
    /// Checks stratification of centralizers and reports witnesses.
    CheckStratified {
        #[command(flatten)]
        system: System,
        #[arg(long, value_enum, default_value = "omega")]
        group: GroupChoice,
        #[arg(long, value_enum, default_value = "kp")]
        polytope: PolytopeChoice,
        #[command(flatten)]
        slice: Slice,
    },
    /// Diagram automorphisms and Coxeter generators of Aut(𝒜).
    TableA(System),
    /// Slicing root, vertices and bounding hyperplanes of the fundamental polytope.
    TableB {
        #[command(flatten)]
        system: System,
        #[command(flatten)]
        slice: Slice,
    },
    /// Exact volume of a polytope.
    Volume {
        #[command(flatten)]
        system: System,
        #[arg(long, value_enum, default_value = "alcove")]
        polytope: PolytopeChoice,
        #[command(flatten)]
        slice: Slice,
    },
    /// One summary row per rank.
    Sweep {
        /// Family letter.
        family: Family,
        /// Rank range, e.g. 2..6 (inclusive) or a single rank.
        #[arg(long, default_value = "2..6", value_parser = parse_ranks)]
        ranks: std::ops::RangeInclusive<usize>,
        #[arg(long, value_enum, default_value = "all")]
        checks: SweepChecks,
    },
}

fn parse_ranks(text: &str) -> std::result::Result<std::ops::RangeInclusive<usize>, String> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {text}"));
            }
            Ok(a..=b)
        }
        None => {
            let n = parse(text)?;
            Ok(n..=n)
        }
    }
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Info(s) => Ok(commands::info(&s.build()?)),
        Command::Omega(s) => commands::omega(&s.build()?),
        Command::AutAlcove(s) => commands::aut_alcove(&s.build()?),
        Command::Kp(s) => commands::kp(&s.build()?),
        Command::FundPolytope { system, slice } => commands::fund_polytope(&system.build()?, &slice.to_override()),
        Command::Dirichlet(s) => commands::dirichlet(&s.build()?),
        Command::CheckFund {
            system,
            polytope,
            group,
            slice,
        } => commands::check_fund(&system.build()?, *polytope, *group, &slice.to_override()),
        Command::CheckStratified {
            system,
            group,
            polytope,
            slice,
        } => commands::check_stratified(&system.build()?, *group, *polytope, &slice.to_override()),
        Command::TableA(s) => commands::table_a(&s.build()?),
        Command::TableB { system, slice } => commands::table_b(&system.build()?, &slice.to_override()),
        Command::Volume {
            system,
            polytope,
            slice,
        } => commands::volume_cmd(&system.build()?, *polytope, &slice.to_override()),
        Command::Sweep { family, ranks, checks } => commands::sweep(*family, ranks.clone(), *checks),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::Parse(_)) { EXIT_USAGE } else { EXIT_DOMAIN };
            return ExitCode::from(code);
        }
    };
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_DOMAIN);
            }
        }
        None => print!("{text}"),
    }
    if report.failed {
        eprintln!("verification failed");
        return ExitCode::from(EXIT_VERIFICATION);
    }
    ExitCode::SUCCESS
}
