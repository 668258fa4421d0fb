//! The `cyclops` command line: check, translate and export presentations.
//!
//! Exit codes: 0 when every law holds, 1 when a law is violated, 2 for
//! usage, parse and semantic errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebraic::{check_algebraic_entries_only, check_d_axioms};
use crate::bounds::Bounds;
use crate::componential::{
    check_entries_only, check_entries_only_derived, check_exchangeable_output,
    check_exchangeable_output_derived,
};
use crate::error::{Error, Result};
use crate::format::{Kind, Loaded, PresentationFile};
use crate::report::Report;
use crate::translations::{
    alg_eo_to_alg_exo, alg_exo_to_alg_eo, check_alg_eo_morphism, check_alg_exo_morphism,
    check_eo_isomorphism, check_exo_isomorphism, check_same_entries_only, check_same_map,
    descent_counit, eo_algebraic_to_componential, eo_componential_to_algebraic, eo_to_exo,
    exo_to_eo, iso_cc, iso_oo,
};
use crate::zoo::ZooModel;

#[derive(Debug, Parser)]
#[command(
    name = "cyclops",
    version,
    about = "Check and translate finite cyclic operads"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of the presentation in a file.
    Check {
        file: PathBuf,
        /// Expected kind; a mismatch is an error.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Largest set size to quantify over (defaults to what the file supports).
        #[arg(long)]
        max_size: Option<usize>,
        /// Also check the derived componential laws.
        #[arg(long)]
        derived_laws: bool,
        /// Check associativity through all six summands.
        #[arg(long)]
        full_ca1: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Translate a presentation into another kind.
    Translate {
        file: PathBuf,
        #[arg(value_enum)]
        direction: Direction,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Translate back and compare with the input.
        #[arg(long)]
        verify_roundtrip: bool,
        #[arg(long)]
        json: bool,
    },
    /// Export a zoo model.
    Zoo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(ZooModel::NAMES))]
        model: String,
        #[arg(long, default_value_t = 4)]
        size_cap: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    EntriesOnly,
    ExchangeableOutput,
    AlgebraicEntriesOnly,
    AlgebraicExchangeableOutput,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::EntriesOnly => Kind::EntriesOnly,
            KindArg::ExchangeableOutput => Kind::ExchangeableOutput,
            KindArg::AlgebraicEntriesOnly => Kind::AlgebraicEntriesOnly,
            KindArg::AlgebraicExchangeableOutput => Kind::AlgebraicExchangeableOutput,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    #[value(name = "eo2exo")]
    Eo2Exo,
    #[value(name = "exo2eo")]
    Exo2Eo,
    #[value(name = "comp2alg")]
    Comp2Alg,
    #[value(name = "alg2comp")]
    Alg2Comp,
    #[value(name = "alg-eo2alg-exo")]
    AlgEo2AlgExo,
    #[value(name = "alg-exo2alg-eo")]
    AlgExo2AlgEo,
}

impl Direction {
    fn source(self) -> Kind {
        match self {
            Direction::Eo2Exo | Direction::Comp2Alg => Kind::EntriesOnly,
            Direction::Exo2Eo => Kind::ExchangeableOutput,
            Direction::Alg2Comp | Direction::AlgEo2AlgExo => Kind::AlgebraicEntriesOnly,
            Direction::AlgExo2AlgEo => Kind::AlgebraicExchangeableOutput,
        }
    }
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    passed: bool,
    reports: &'a [Report],
}

/// Parses the process arguments and runs the command.
pub fn main() -> ExitCode {
    run(Cli::parse())
}

pub fn run(cli: Cli) -> ExitCode {
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cyclops: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(file: &PathBuf) -> Result<PresentationFile> {
    let text =
        fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    PresentationFile::parse(&text)
}

fn write(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(reports: &[Report], json: bool, to_stderr: bool) -> bool {
    let passed = reports.iter().all(Report::passed);
    let text = if json {
        serde_json::to_string_pretty(&JsonOutput { passed, reports }).expect("reports serialize")
    } else {
        reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    if to_stderr {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    passed
}

/// The largest size the checkers of `kind` can use on a file tabulated up to
/// `max_size`: algebraic laws look two derivatives deep.
pub fn default_check_size(kind: Kind, max_size: usize) -> usize {
    match kind {
        Kind::EntriesOnly | Kind::ExchangeableOutput => max_size,
        _ => max_size.saturating_sub(2).max(1),
    }
}

/// Runs every checker that applies to `loaded`.
pub fn check_loaded(
    loaded: &Loaded,
    bounds: &Bounds,
    derived_laws: bool,
    full_ca1: bool,
) -> Vec<Report> {
    match loaded {
        Loaded::EntriesOnly(p) => {
            let mut out = vec![check_entries_only(p, bounds)];
            if derived_laws {
                out.push(check_entries_only_derived(p, bounds));
            }
            out
        }
        Loaded::ExchangeableOutput(o) => {
            let mut out = vec![check_exchangeable_output(o, bounds)];
            if derived_laws {
                out.push(check_exchangeable_output_derived(o, bounds));
            }
            out
        }
        Loaded::AlgebraicEntriesOnly(a) => vec![check_algebraic_entries_only(a, bounds, full_ca1)],
        Loaded::AlgebraicExchangeableOutput(a) => vec![check_d_axioms(a, bounds)],
    }
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check {
            file,
            kind,
            max_size,
            derived_laws,
            full_ca1,
            json,
        } => {
            let parsed = read(&file)?;
            if let Some(k) = kind {
                let k = Kind::from(k);
                if k != parsed.kind {
                    return Err(Error::Semantic(format!(
                        "{} holds kind {}, not {k}",
                        file.display(),
                        parsed.kind
                    )));
                }
            }
            let loaded = parsed.load()?;
            let size = max_size.unwrap_or_else(|| default_check_size(parsed.kind, parsed.max_size));
            if size > parsed.max_size {
                return Err(Error::Semantic(format!(
                    "--max-size {size} exceeds the tabulated size {}",
                    parsed.max_size
                )));
            }
            let bounds = parsed.bounds().with_max_size(size);
            let reports = check_loaded(&loaded, &bounds, derived_laws, full_ca1);
            Ok(emit(&reports, json, false))
        }
        Command::Translate {
            file,
            direction,
            out,
            verify_roundtrip,
            json,
        } => {
            let parsed = read(&file)?;
            if parsed.kind != direction.source() {
                return Err(Error::Semantic(format!(
                    "{} holds kind {}; {direction:?} expects {}",
                    file.display(),
                    parsed.kind,
                    direction.source()
                )));
            }
            let loaded = parsed.load()?;
            let (translated, reports) = translate(&loaded, &parsed, direction, verify_roundtrip)?;
            write(&out, &translated.render())?;
            if verify_roundtrip {
                Ok(emit(&reports, json, out.is_none()))
            } else {
                Ok(true)
            }
        }
        Command::Zoo {
            model,
            size_cap,
            out,
        } => {
            let model = ZooModel::parse(&model, size_cap)
                .ok_or_else(|| Error::Semantic(format!("unknown zoo model {model:?}")))?;
            let file = export_zoo(&model, size_cap)?;
            write(&out, &file.render())?;
            Ok(true)
        }
    }
}

/// A zoo model tabulated on the first `size_cap` atoms.
pub fn export_zoo(model: &ZooModel, size_cap: usize) -> Result<PresentationFile> {
    PresentationFile::from_entries_only(&model.presentation()?, &Bounds::atoms(size_cap, size_cap))
}

/// Runs a translation; with `verify`, also the way back and the comparison.
pub fn translate(
    loaded: &Loaded,
    file: &PresentationFile,
    direction: Direction,
    verify: bool,
) -> Result<(PresentationFile, Vec<Report>)> {
    let bounds = file.bounds();
    let smaller = bounds.with_max_size(file.max_size.saturating_sub(1).max(1));
    let checks = bounds.with_max_size(default_check_size(direction.source(), file.max_size).min(3));
    let mut reports = Vec::new();
    let out = match (direction, loaded) {
        (Direction::Eo2Exo, Loaded::EntriesOnly(c)) => {
            let o = eo_to_exo(c);
            if verify {
                let cc = exo_to_eo(&o);
                reports.push(check_eo_isomorphism(&iso_cc(c, &cc), &cc, c, &checks));
            }
            PresentationFile::from_exchangeable_output(&o, &smaller)?
        }
        (Direction::Exo2Eo, Loaded::ExchangeableOutput(o)) => {
            let c = exo_to_eo(o);
            if verify {
                let oo = eo_to_exo(&c);
                reports.push(check_exo_isomorphism(&iso_oo(o, &oo), o, &oo, &checks));
            }
            PresentationFile::from_entries_only(&c, &bounds)?
        }
        (Direction::Comp2Alg, Loaded::EntriesOnly(c)) => {
            let a = eo_componential_to_algebraic(c);
            if verify {
                let back = eo_algebraic_to_componential(&a);
                reports.push(check_same_entries_only(c, &back, &bounds));
            }
            PresentationFile::from_algebraic_entries_only(&a, &bounds)?
        }
        (Direction::Alg2Comp, Loaded::AlgebraicEntriesOnly(a)) => {
            let c = eo_algebraic_to_componential(a);
            if verify {
                let back = eo_componential_to_algebraic(&c);
                let mut r = check_same_map(&back.rho, &a.rho, "ρ", &checks);
                r.merge(check_same_map(&back.eta2, &a.eta2, "η2", &checks));
                reports.push(r);
            }
            PresentationFile::from_entries_only(&c, &bounds)?
        }
        (Direction::AlgEo2AlgExo, Loaded::AlgebraicEntriesOnly(a)) => {
            let exo = alg_eo_to_alg_exo(a);
            if verify {
                let (normal, n) = alg_exo_to_alg_eo(&exo);
                let phi = descent_counit(&a.species, &n.species);
                reports.push(check_alg_eo_morphism(&phi, &normal, a, &checks));
            }
            PresentationFile::from_algebraic_exchangeable_output(&exo, &smaller)?
        }
        (Direction::AlgExo2AlgEo, Loaded::AlgebraicExchangeableOutput(b)) => {
            let (eo, n) = alg_exo_to_alg_eo(b);
            if verify {
                let back = alg_eo_to_alg_exo(&eo);
                reports.push(check_alg_exo_morphism(&n.psi, b, &back, &checks));
            }
            PresentationFile::from_algebraic_entries_only(&eo, &bounds)?
        }
        _ => unreachable!("the source kind was checked"),
    };
    Ok((out, reports))
}
