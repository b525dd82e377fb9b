//! `toric`: compute and verify Gröbner bases of toric ideals.
//!
//! Exit codes: 0 success, 1 I/O error, 2 parse error, 3 precondition
//! violation, 4 verification failure. A JSON run report goes to stderr.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use toric_core::fiber::fiber_walk;
use toric_core::groebner::check_groebner_basis;
use toric_core::io::{format_basis, parse_basis, parse_sv, ConfigFile, NestedFile};
use toric_core::{
    buchberger, build_nested, sorting_gb, sv_configuration, toric_generators, verify_marking, Configuration, Error,
    MarkedBasis, MonomialOrder, NestedOrders, TieBreak,
};

use report::{InputDigest, RunReport};

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Gröbner bases of toric ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of a configuration's toric ideal.
    Toric {
        config: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quadratic Gröbner basis of a nested configuration.
    Nested {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Main1)]
        mode: Mode,
        /// Order used by oracle mode and for sorting the output.
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sorting Gröbner basis of a Segre-Veronese configuration.
    Sv {
        spec: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a basis file against a configuration's toric ideal.
    Verify { config: PathBuf, basis: PathBuf },
    /// Random walk on a fiber using basis elements as moves.
    FiberWalk {
        config: PathBuf,
        /// Comma separated counts, one per member.
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Basis file; the grevlex oracle basis when omitted.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Main1,
    Main2,
    Oracle,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Io { .. } => return 1,
            CliError::Usage(_) => return 2,
            CliError::Input { source, .. } => source,
            CliError::Core(e) => e,
        };
        match core {
            Error::Parse { .. }
            | Error::UnknownVariable(_)
            | Error::DuplicateVariable(_)
            | Error::InvalidVariableName(_)
            | Error::ArityMismatch { .. }
            | Error::ZeroBinomial
            | Error::BadWeight(_) => 2,
            Error::ClaimFailed(_) | Error::LemmaDisagreement(_) | Error::IncoherentMarking => 4,
            _ => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Input {
    path: String,
    text: String,
}

fn read(path: &PathBuf, report: &mut RunReport) -> CliResult<Input> {
    let p = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: p.clone(),
        source,
    })?;
    report.inputs.push(InputDigest::new(&p, &bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{p}: not UTF-8")))?;
    Ok(Input { path: p, text })
}

fn in_file<T>(input: &Input, r: toric_core::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::Input {
        path: input.path.clone(),
        source,
    })
}

fn write_output(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(input: &Input) -> CliResult<Configuration> {
    let file = in_file(input, ConfigFile::parse(&input.text))?;
    in_file(input, file.to_configuration())
}

/// Records verdicts for `basis` against the toric oracle of `c`.
fn verify_into(report: &mut RunReport, c: &Configuration, basis: &MarkedBasis) -> CliResult<()> {
    let Some(cert) = verify_marking(basis) else {
        report.verdicts.insert("marking_certificate".into(), false);
        return Ok(());
    };
    report.verdicts.insert("marking_certificate".into(), true);
    report.certificate = Some(cert.weights.iter().map(ToString::to_string).collect());
    let gens = toric_generators(c)?;
    let check = check_groebner_basis(basis, &gens, Some(c.presentation()))?;
    report
        .verdicts
        .insert("elements_in_ideal".into(), check.elements_in_ideal);
    report.verdicts.insert("s_pairs_zero".into(), check.s_pairs_reduce);
    report
        .verdicts
        .insert("oracle_generators_reduce".into(), check.generators_reduce);
    let order = cert.to_order(c.source(), TieBreak::Grevlex)?;
    let again = buchberger(&gens, &order)?;
    report
        .verdicts
        .insert("certified_order_reproduces".into(), again.same_marked_set(basis));
    Ok(())
}

fn run(command: Command, report: &mut RunReport) -> CliResult<()> {
    match command {
        Command::Toric {
            config,
            order,
            verify,
            out,
        } => {
            let input = read(&config, report)?;
            let c = load_config(&input)?;
            let order = MonomialOrder::parse(&order, c.source())?;
            let g = buchberger(&toric_generators(&c)?, &order)?;
            report.basis_size = Some(g.len());
            if verify {
                verify_into(report, &c, &g)?;
            }
            write_output(&out, &format_basis(&g, &order))
        }
        Command::Nested {
            system,
            mode,
            order,
            verify,
            out,
        } => {
            let input = read(&system, report)?;
            let file = in_file(&input, NestedFile::parse(&input.text))?;
            let base = in_file(&input, file.base.to_configuration())?;
            let inner = file
                .inner
                .iter()
                .map(|(c, _)| in_file(&input, c.to_configuration()))
                .collect::<CliResult<Vec<_>>>()?;
            let mut orders = NestedOrders::lex(inner.len());
            if let Some(o) = &file.base_order {
                orders.base = o.clone();
            }
            for (slot, (_, o)) in orders.inner.iter_mut().zip(&file.inner) {
                if let Some(o) = o {
                    *slot = o.clone();
                }
            }
            let sys = build_nested(base, inner, &orders)?;
            let order = MonomialOrder::parse(&order, sys.result().source())?;
            let g = match mode {
                Mode::Main1 => sys.main1_basis()?,
                Mode::Main2 => sys.main2_basis()?,
                Mode::Oracle => buchberger(&toric_generators(sys.result())?, &order)?,
            };
            report.basis_size = Some(g.len());
            if verify {
                verify_into(report, sys.result(), &g)?;
            }
            write_output(&out, &format_basis(&g, &order))
        }
        Command::Sv {
            spec,
            order,
            verify,
            out,
        } => {
            let input = read(&spec, report)?;
            let spec = in_file(&input, parse_sv(&input.text))?;
            let c = sv_configuration(&spec)?;
            let g = sorting_gb(&c)?;
            report.basis_size = Some(g.len());
            if verify {
                verify_into(report, &c, &g)?;
            }
            let order = MonomialOrder::parse(&order, c.source())?;
            write_output(&out, &format_basis(&g, &order))
        }
        Command::Verify { config, basis } => {
            let cin = read(&config, report)?;
            let c = load_config(&cin)?;
            let bin = read(&basis, report)?;
            let gens = in_file(&bin, parse_basis(&bin.text, c.source()))?;
            let g = MarkedBasis::marked(c.source(), gens)?;
            report.basis_size = Some(g.len());
            verify_into(report, &c, &g)
        }
        Command::FiberWalk {
            config,
            start,
            steps,
            seed,
            basis,
            out,
        } => {
            let cin = read(&config, report)?;
            let c = load_config(&cin)?;
            let start: Vec<u32> = start
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad start vector `{start}`")))?;
            let g = match basis {
                Some(path) => {
                    let bin = read(&path, report)?;
                    let gens = in_file(&bin, parse_basis(&bin.text, c.source()))?;
                    MarkedBasis::marked(c.source(), gens)?
                }
                None => buchberger(&toric_generators(&c)?, &MonomialOrder::grevlex(c.source()))?,
            };
            let walk = fiber_walk(&c, &g, &start, steps, seed, cfg!(debug_assertions))?;
            let mut text = String::new();
            for s in walk {
                let line: Vec<String> = s.iter().map(u32::to_string).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            write_output(&out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut report = RunReport {
        command: std::env::args().skip(1).collect(),
        ..Default::default()
    };
    let result = run(cli.command, &mut report);
    report.wall_time_ms = started.elapsed().as_millis();
    let code = match &result {
        Ok(()) if report.passed() => 0,
        Ok(()) => 4,
        Err(e) => {
            report.error = Some(e.to_string());
            e.exit_code()
        }
    };
    eprintln!("{}", serde_json::to_string(&report).expect("report serializes"));
    ExitCode::from(code)
}
