//! Command-line front end. Exit codes: 0 success, 1 usage or parse error,
//! 2 domain error, 3 internal consistency or axiom failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::alcove;
use crate::algebra::Style;
use crate::catalog::{Catalog, GroupId, Provenance, Z3Lift, DEFAULT_DEGREE_CAP};
use crate::report::{
    table_text, AlcoveReport, HopfReport, L0Report, LevelReport, MarkedReport, PhiStarReport,
};
use crate::{Error, ErrorKind};

pub const DEGREE_CAP_VAR: &str = "PREQUANT_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(name = "prequant", version, about = "Minimal pre-quantizable levels for compact simple Lie groups")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Use `(x)` instead of `⊗` in symbolic output.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal level l0 of a group, with its per-prime breakdown.
    L0 { group: String },
    /// l0 for every catalog group with parameter at most N.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_n: u64,
    },
    /// Pullback of the degree-3 generator under the commutator map.
    PhiStar {
        group: String,
        #[arg(long)]
        prime: u64,
    },
    /// Check the Hopf algebra axioms on all basis elements up to a degree.
    VerifyHopf {
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        max_degree: u32,
    },
    /// Decide whether a level admits a pre-quantization.
    CheckLevel {
        group: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        genus: u64,
    },
    /// Pre-quantization verdict for PU(n) with marked conjugacy classes.
    MarkedPoints {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        /// One class per line: n rationals p/q summing to zero.
        #[arg(long)]
        classes: PathBuf,
    },
    /// Vertices and barycenter of the SU(n) alcove, or reduce a point into it.
    Alcove {
        #[arg(long)]
        n: usize,
        /// Space-separated coordinates, e.g. "1 -1 0".
        #[arg(long, allow_hyphen_values = true)]
        reduce: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Engine(Error),
    /// A completed check that found violations; the report has been written.
    Axioms,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

macro_rules! engine {
    ($e:expr) => {
        $e.map_err(|e| Failure::Engine(Error::from(e)))
    };
}

/// Run the CLI on `args` (including the program name).
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|a| a.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let text = e.render().to_string();
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{text}");
                    if e.kind() == K::DisplayHelpOnMissingArgumentOrSubcommand {
                        1
                    } else {
                        0
                    }
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Axioms) => 3,
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e.kind() {
                ErrorKind::Parse => 1,
                ErrorKind::Domain => 2,
                ErrorKind::Internal => 3,
            }
        }
    }
}

fn degree_cap() -> Result<u32, Failure> {
    match std::env::var(DEGREE_CAP_VAR) {
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map_err(|_| Failure::Usage(format!("{DEGREE_CAP_VAR} must be an integer, got `{v}`"))),
    }
}

fn catalog_with(cap: u32) -> Result<Catalog, Failure> {
    engine!(Catalog::new(cap))
}

fn parse_group(text: &str) -> Result<GroupId, Failure> {
    engine!(text.parse::<GroupId>())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn emit_text(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let style = if cli.ascii { Style::Ascii } else { Style::Unicode };
    match &cli.command {
        Command::L0 { group } => {
            let g = parse_group(group)?;
            let r = engine!(catalog_with(degree_cap()?)?.l0(&g))?;
            if cli.json {
                emit_json(out, &L0Report::new(&r))
            } else {
                emit_text(out, &L0Report::text(&r))
            }
        }
        Command::Table { max_n } => {
            let rows = engine!(catalog_with(degree_cap()?)?.table(*max_n))?;
            if cli.json {
                let reports: Vec<L0Report> = rows.iter().map(L0Report::new).collect();
                emit_json(out, &reports)
            } else {
                emit_text(out, &table_text(&rows))
            }
        }
        Command::PhiStar { group, prime } => {
            let g = parse_group(group)?;
            let catalog = catalog_with(degree_cap()?)?;
            let data = engine!(catalog.entry(&g, *prime))?;
            let pres = data.presentation();
            let (class, value, provenance) = match &data.lift {
                Z3Lift::Algebraic { class } => {
                    let x = engine!(pres.generator(class))?;
                    (class.clone(), engine!(data.hopf.phi_star(&x))?, Provenance::Computed)
                }
                Z3Lift::Pinned(pin) => match &pin.result {
                    Some(r) => ("z3".to_string(), r.clone(), Provenance::Pinned(pin.citation.into())),
                    None => {
                        let msg = format!(
                            "{g} at p={prime}: only the order {} is known; provenance: pinned({})",
                            pin.order, pin.citation
                        );
                        return emit_phi_without_class(cli, out, &g, *prime, &msg, pin.citation);
                    }
                },
                Z3Lift::Pushforward { .. } => {
                    let order = engine!(catalog.prime_order(&g, *prime))?;
                    let msg = format!(
                        "{g} at p={prime}: no algebraic lift of the degree-3 generator; order {} (tor-formula)",
                        order.order
                    );
                    return emit_phi_without_class(cli, out, &g, *prime, &msg, "tor-formula");
                }
            };
            let text = pres.format_tensor(&value, style);
            if cli.json {
                emit_json(
                    out,
                    &PhiStarReport {
                        group: g.to_string(),
                        prime: *prime,
                        class,
                        phi_star: text,
                        provenance: provenance.to_string(),
                    },
                )
            } else {
                emit_text(out, &text)?;
                if let Provenance::Pinned(_) = provenance {
                    emit_text(out, &format!("provenance: {provenance}"))?;
                }
                Ok(())
            }
        }
        Command::VerifyHopf { group, prime, max_degree } => {
            let g = parse_group(group)?;
            let cap = degree_cap()?.max(*max_degree);
            let data = engine!(catalog_with(cap)?.entry(&g, *prime))?;
            let report = engine!(data.hopf.verify_axioms(*max_degree))?;
            let rendered = HopfReport::new(&g.to_string(), *prime, *max_degree, &report);
            if cli.json {
                emit_json(out, &rendered)?;
            } else {
                emit_text(out, &rendered.text())?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Axioms)
            }
        }
        Command::CheckLevel { group, level, genus } => {
            let g = parse_group(group)?;
            let c = engine!(catalog_with(degree_cap()?)?.check_level(&g, *level, *genus))?;
            if cli.json {
                emit_json(out, &LevelReport::new(&g.to_string(), &c))
            } else {
                emit_text(out, &LevelReport::text(&c))
            }
        }
        Command::MarkedPoints { n, level, classes } => {
            let text = std::fs::read_to_string(classes)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", classes.display())))?;
            let points = engine!(alcove::parse_classes(&text, *n))?;
            let v = engine!(alcove::marked_points_check(*n, *level, &points))?;
            let report = MarkedReport::new(*n, *level, &v);
            if cli.json {
                emit_json(out, &report)
            } else {
                emit_text(out, &report.text())
            }
        }
        Command::Alcove { n, reduce } => {
            let data = engine!(alcove::alcove_vertices(*n))?;
            let reduced = match reduce {
                Some(text) => {
                    let x = engine!(alcove::parse_point(text, *n))?;
                    Some(engine!(alcove::alcove_reduce(&x))?)
                }
                None => None,
            };
            let report = AlcoveReport::new(&data, reduced.as_ref());
            if cli.json {
                emit_json(out, &report)
            } else {
                emit_text(out, &report.text())
            }
        }
    }
}

fn emit_phi_without_class(
    cli: &Cli,
    out: &mut dyn Write,
    g: &GroupId,
    prime: u64,
    msg: &str,
    provenance: &str,
) -> Result<(), Failure> {
    if cli.json {
        #[derive(Serialize)]
        struct NoClass<'a> {
            group: String,
            prime: u64,
            phi_star: Option<String>,
            provenance: &'a str,
        }
        let provenance = if provenance == "tor-formula" { provenance.to_string() } else { format!("pinned({provenance})") };
        emit_json(out, &NoClass { group: g.to_string(), prime, phi_star: None, provenance: &provenance })
    } else {
        emit_text(out, msg)
    }
}
