//! Command-line front end for the lbseries library.
//!
//! Every invocation is deterministic given its arguments and `--seed`; all
//! arithmetic is exact. Exit codes: 0 on success, 1 on usage errors, 2 on
//! domain errors (malformed input, violated preconditions, failed selftest).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use lbseries::cuts::left_admissible_cuts;
use lbseries::flows::{
    alpha_exact, backward_error, convert, gamma_exact, method_euler, midpoint_character,
    FlowRepresentation,
};
use lbseries::forest::{forests_of_order, Forest};
use lbseries::hopf::HopfStructure;
use lbseries::idempotents::{bell, bell_part, dynkin, eulerian, grading_y_inverse, q_polynomial};
use lbseries::json::{bell_to_json, series_from_json, series_to_json, tensor_to_json};
use lbseries::render::{render_bell, render_series, render_tensor};
use lbseries::sampling::{random_character, random_infinitesimal_character};
use lbseries::selftest::run_selftest;
use lbseries::series::Series;
use lbseries::substitution::{
    substitute, substitute_dual, substitute_dual_strict, substitute_strict,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] lbseries::Error),
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("forest has order {found}, above the truncation order {order}; raise --order")]
    ForestAboveOrder { found: usize, order: usize },
    #[error(
        "cannot interpret {0:?}: expected a parentheses word, a builtin series \
         (euler, exact, midpoint, random-infinitesimal, random-character), or a JSON file"
    )]
    UnknownInput(String),
}

/// Exact Lie-Butcher series calculator on planar rooted forests.
#[derive(Parser)]
#[command(name = "lbseries", version, disable_help_subcommand = true)]
struct Cli {
    /// Truncation order for all series arithmetic.
    #[arg(short = 'n', long, global = true, default_value_t = 4)]
    order: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the pseudorandom builtin series.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Reject substitution data that are not infinitesimal characters.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    /// Concatenation of forests.
    Concat,
    /// Shuffle product.
    Shuffle,
    /// Left grafting.
    Graft,
    /// Planar Grossman-Larson product.
    Gl,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoproductKind {
    /// Deconcatenation.
    Dc,
    /// Deshuffle.
    Desh,
    /// Magmatic coproduct (dual to the GL product).
    Dn,
    /// Magmatic coproduct computed through admissible cuts.
    DnCuts,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureKind {
    /// Shuffle product with deconcatenation.
    Dc,
    /// Concatenation product with deshuffle.
    Desh,
    /// Shuffle product with the magmatic coproduct.
    Dn,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdempotentKind {
    /// Eulerian (first) idempotent.
    Eulerian,
    /// Dynkin map S ∗ Y.
    Dynkin,
    /// Dynkin map normalized by the grading, an idempotent.
    DynkinNormalized,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodKind {
    Exact,
    Euler,
    Midpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum BeaMethod {
    Euler,
    Midpoint,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two series.
    Product {
        #[arg(long, value_enum)]
        kind: ProductKind,
        /// Left factor: forest word, builtin name, or JSON file.
        a: String,
        /// Right factor: forest word, builtin name, or JSON file.
        b: String,
    },
    /// Expand a coproduct of a single forest.
    Coproduct {
        #[arg(long, value_enum)]
        kind: CoproductKind,
        #[arg(long)]
        forest: String,
    },
    /// List the left admissible cuts of a forest.
    Cuts {
        #[arg(long)]
        forest: String,
        /// Include the full cut (everything pruned).
        #[arg(long)]
        include_full: bool,
    },
    /// Apply a Hopf-algebra antipode to a forest.
    Antipode {
        #[arg(long, value_enum, default_value_t = StructureKind::Dn)]
        kind: StructureKind,
        #[arg(long)]
        forest: String,
    },
    /// Apply a Lie idempotent (or the Dynkin map) to a forest.
    Idempotent {
        #[arg(long, value_enum)]
        which: IdempotentKind,
        #[arg(long)]
        forest: String,
    },
    /// Print a noncommutative Bell polynomial.
    Bell {
        /// Degree of the polynomial.
        #[arg(long)]
        n: usize,
        /// Restrict to the terms of the given length.
        #[arg(long, conflicts_with = "q")]
        part: Option<usize>,
        /// Print the factorial-rescaled polynomial driving the Q-operator.
        #[arg(long)]
        q: bool,
    },
    /// Substitute an infinitesimal datum into a series.
    Subst {
        #[arg(long)]
        datum: String,
        #[arg(long)]
        target: String,
    },
    /// Dual substitution image of a single forest.
    SubstDual {
        #[arg(long)]
        datum: String,
        #[arg(long)]
        forest: String,
    },
    /// Print a builtin flow map in one of the three representations.
    Flow {
        #[arg(long, value_enum)]
        method: MethodKind,
        /// 1 = character, 2 = Lie series, 3 = Q-operator preimage.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        repr: u8,
    },
    /// Backward error analysis: the modified field of a builtin method.
    Bea {
        #[arg(long, value_enum)]
        method: BeaMethod,
    },
    /// Convert a series between flow representations.
    Convert {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        from: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        to: u8,
        #[arg(long)]
        input: String,
    },
    /// List every forest through the truncation order.
    Enumerate {
        /// Print per-order counts instead of the forests themselves.
        #[arg(long)]
        counts: bool,
    },
    /// Run the built-in diagnostic battery.
    Selftest,
}

struct CommandOutput {
    text: String,
    failed: bool,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput { text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(output) => {
            if !emit(&output.text) {
                return ExitCode::from(2);
            }
            if output.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, treating a vanished reader as a silent success.
fn emit(text: &str) -> bool {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        Ok(()) => true,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => true,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            false
        }
    }
}

/// Parses a forest argument and enforces the truncation order.
fn parse_forest(raw: &str, order: usize) -> Result<Forest, CliError> {
    let forest = Forest::parse(raw)?;
    if forest.order() > order {
        return Err(CliError::ForestAboveOrder { found: forest.order(), order });
    }
    Ok(forest)
}

/// Resolves a series argument: builtin name, forest literal, or JSON file.
/// File input is re-truncated to the requested order.
fn parse_series(raw: &str, cli: &Cli) -> Result<Series, CliError> {
    match raw {
        "euler" => return Ok(method_euler(cli.order)),
        "exact" => return Ok(alpha_exact(cli.order)),
        "midpoint" => return Ok(midpoint_character(cli.order)),
        "random-infinitesimal" => {
            return Ok(random_infinitesimal_character(cli.order, cli.seed))
        }
        "random-character" => return Ok(random_character(cli.order, cli.seed)),
        _ => {}
    }
    if raw.chars().all(|c| c == '(' || c == ')') {
        let forest = parse_forest(raw, cli.order)?;
        return Ok(Series::basis(cli.order, &forest));
    }
    if Path::new(raw).is_file() {
        let text = fs::read_to_string(raw).map_err(|source| CliError::Unreadable {
            path: raw.to_string(),
            source,
        })?;
        return Ok(series_from_json(&text)?.with_order(cli.order));
    }
    Err(CliError::UnknownInput(raw.to_string()))
}

fn representation(code: u8) -> FlowRepresentation {
    match code {
        1 => FlowRepresentation::Type1,
        2 => FlowRepresentation::Type2,
        _ => FlowRepresentation::Type3,
    }
}

fn hopf_structure(kind: StructureKind) -> HopfStructure {
    match kind {
        StructureKind::Dc => HopfStructure::ShuffleDeconcat,
        StructureKind::Desh => HopfStructure::ConcatDeshuffle,
        StructureKind::Dn => HopfStructure::ShuffleDn,
    }
}

/// Forest display that writes the empty forest as the unit symbol.
fn word_or_one(forest: &Forest) -> &str {
    if forest.is_empty() {
        "1"
    } else {
        forest.word()
    }
}

fn series_output(series: &Series, format: Format) -> CommandOutput {
    let text = match format {
        Format::Text => render_series(series),
        Format::Json => series_to_json(series),
    };
    CommandOutput::ok(format!("{text}\n"))
}

fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::Product { kind, a, b } => {
            let left = parse_series(a, cli)?;
            let right = parse_series(b, cli)?;
            let product = match kind {
                ProductKind::Concat => left.concat_mul(&right)?,
                ProductKind::Shuffle => left.shuffle_mul(&right)?,
                ProductKind::Graft => left.graft(&right)?,
                ProductKind::Gl => left.gl_mul(&right)?,
            };
            Ok(series_output(&product, cli.format))
        }
        Command::Coproduct { kind, forest } => {
            let w = parse_forest(forest, cli.order)?;
            let tensor = match kind {
                CoproductKind::Dc => {
                    HopfStructure::ShuffleDeconcat.coproduct(&w, cli.order)
                }
                CoproductKind::Desh => {
                    HopfStructure::ConcatDeshuffle.coproduct(&w, cli.order)
                }
                CoproductKind::Dn => HopfStructure::ShuffleDn.coproduct(&w, cli.order),
                CoproductKind::DnCuts => lbseries::cuts::coproduct_dn_cuts(&w, cli.order),
            };
            let text = match cli.format {
                Format::Text => render_tensor(&tensor),
                Format::Json => tensor_to_json(&tensor),
            };
            Ok(CommandOutput::ok(format!("{text}\n")))
        }
        Command::Cuts { forest, include_full } => {
            let w = parse_forest(forest, cli.order)?;
            let data = left_admissible_cuts(&w, *include_full);
            let text = match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for datum in &data {
                        writeln!(
                            out,
                            "cuts={} full={} pruned={} remainder={}",
                            datum.cuts.len(),
                            datum.is_full,
                            render_series(&datum.pruned),
                            word_or_one(&datum.remainder),
                        )
                        .expect("string write");
                    }
                    out
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = data
                        .iter()
                        .map(|datum| {
                            let pruned: serde_json::Value =
                                serde_json::from_str(&series_to_json(&datum.pruned))
                                    .expect("serializer emits valid JSON");
                            serde_json::json!({
                                "cuts": datum.cuts.len(),
                                "full": datum.is_full,
                                "pruned": pruned,
                                "remainder": datum.remainder.word(),
                            })
                        })
                        .collect();
                    let mut text = serde_json::to_string(&rows).expect("serialization");
                    text.push('\n');
                    text
                }
            };
            Ok(CommandOutput::ok(text))
        }
        Command::Antipode { kind, forest } => {
            let w = parse_forest(forest, cli.order)?;
            let image = hopf_structure(*kind).antipode(&w, cli.order);
            Ok(series_output(&image, cli.format))
        }
        Command::Idempotent { which, forest } => {
            let w = parse_forest(forest, cli.order)?;
            let map = match which {
                IdempotentKind::Eulerian => eulerian(cli.order),
                IdempotentKind::Dynkin => dynkin(cli.order),
                IdempotentKind::DynkinNormalized => {
                    grading_y_inverse(cli.order).compose(&dynkin(cli.order))?
                }
            };
            Ok(series_output(&map.image(&w), cli.format))
        }
        Command::Bell { n, part, q } => {
            let element = if *q {
                q_polynomial(*n)
            } else if let Some(k) = part {
                bell_part(*n, *k)
            } else {
                bell(*n)
            };
            let text = match cli.format {
                Format::Text => render_bell(&element),
                Format::Json => bell_to_json(&element),
            };
            Ok(CommandOutput::ok(format!("{text}\n")))
        }
        Command::Subst { datum, target } => {
            let a = parse_series(datum, cli)?;
            let s = parse_series(target, cli)?;
            let result = if cli.strict {
                substitute_strict(&a, &s)?
            } else {
                substitute(&a, &s)?
            };
            Ok(series_output(&result, cli.format))
        }
        Command::SubstDual { datum, forest } => {
            let a = parse_series(datum, cli)?;
            let w = parse_forest(forest, cli.order)?;
            let result = if cli.strict {
                substitute_dual_strict(&a, &w)?
            } else {
                substitute_dual(&a, &w)?
            };
            Ok(series_output(&result, cli.format))
        }
        Command::Flow { method, repr } => {
            let target = representation(*repr);
            let character = match method {
                MethodKind::Exact => alpha_exact(cli.order),
                MethodKind::Euler => method_euler(cli.order),
                MethodKind::Midpoint => midpoint_character(cli.order),
            };
            let series = match (method, target) {
                (MethodKind::Exact, FlowRepresentation::Type3) => gamma_exact(cli.order),
                (_, FlowRepresentation::Type1) => character,
                _ => convert(&character, FlowRepresentation::Type1, target)?,
            };
            Ok(series_output(&series, cli.format))
        }
        Command::Bea { method } => {
            let character = match method {
                BeaMethod::Euler => method_euler(cli.order),
                BeaMethod::Midpoint => midpoint_character(cli.order),
            };
            Ok(series_output(&backward_error(&character)?, cli.format))
        }
        Command::Convert { from, to, input } => {
            let series = parse_series(input, cli)?;
            let converted = convert(&series, representation(*from), representation(*to))?;
            Ok(series_output(&converted, cli.format))
        }
        Command::Enumerate { counts } => {
            let mut out = String::new();
            match (cli.format, counts) {
                (Format::Text, false) => {
                    for n in 0..=cli.order {
                        for w in forests_of_order(n) {
                            out.push_str(word_or_one(&w));
                            out.push('\n');
                        }
                    }
                }
                (Format::Text, true) => {
                    for n in 0..=cli.order {
                        writeln!(out, "order {n}: {}", forests_of_order(n).len())
                            .expect("string write");
                    }
                }
                (Format::Json, false) => {
                    let words: Vec<String> = (0..=cli.order)
                        .flat_map(|n| {
                            forests_of_order(n).into_iter().map(|w| w.word().to_string())
                        })
                        .collect();
                    out = serde_json::to_string(&words).expect("serialization");
                    out.push('\n');
                }
                (Format::Json, true) => {
                    let sizes: Vec<usize> =
                        (0..=cli.order).map(|n| forests_of_order(n).len()).collect();
                    out = serde_json::to_string(&sizes).expect("serialization");
                    out.push('\n');
                }
            }
            Ok(CommandOutput::ok(out))
        }
        Command::Selftest => {
            let reports = run_selftest(cli.order, cli.seed);
            let failed = reports.iter().any(|r| !r.passed);
            let text = match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for report in &reports {
                        writeln!(
                            out,
                            "{:<4} {:<26} {:>5} ms  {}",
                            if report.passed { "ok" } else { "FAIL" },
                            report.name,
                            report.millis,
                            report.detail,
                        )
                        .expect("string write");
                    }
                    let passed = reports.iter().filter(|r| r.passed).count();
                    writeln!(
                        out,
                        "selftest: {passed}/{} checks passed (order {}, seed {})",
                        reports.len(),
                        cli.order,
                        cli.seed,
                    )
                    .expect("string write");
                    out
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = reports
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "name": r.name,
                                "passed": r.passed,
                                "millis": r.millis,
                                "detail": r.detail,
                            })
                        })
                        .collect();
                    let mut text = serde_json::to_string(&rows).expect("serialization");
                    text.push('\n');
                    text
                }
            };
            Ok(CommandOutput { text, failed })
        }
    }
}
