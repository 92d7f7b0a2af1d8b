//! Command-line laboratory for pattern-avoiding stack-sorting experiments.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stacklab::checks::{run_verify, CheckContext, CheckError, VerifyTarget};
use stacklab::config;
use stacklab::report::{OutputFormat, Report};
use stacklab_core::dynamics::{orbit, ord_census, shard_fold_with_ord, EnumerationOptions};
use stacklab_core::machine::{apply, apply_traced, PatternSet};
use stacklab_core::perm::Permutation;
use stacklab_core::{delta, gamma};

#[derive(Parser)]
#[command(
    name = "stacklab",
    version,
    about = "Pattern-avoiding stack-sorting: single passes, orbits, exhaustive verification, and enumeration reports"
)]
struct Cli {
    /// Forbidden stack patterns, comma-joined (e.g. 21 or 123,132).
    #[arg(long, global = true)]
    patterns: Option<String>,

    /// Worker threads for exhaustive scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest n an exhaustive scan may take on (default 11).
    #[arg(long, global = true)]
    ceiling: Option<usize>,

    /// Report format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Flat key=value config file (default: ./stacklab.conf when present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply s_T one or more times to a permutation.
    Sort {
        /// Input permutation, compact (52431) or comma-separated (5,2,4,3,1).
        #[arg(long)]
        perm: String,
        /// Number of passes.
        #[arg(long, default_value_t = 1)]
        passes: usize,
        /// Print the event log of the final pass.
        #[arg(long)]
        trace: bool,
    },
    /// Tail length, cycle length, and entry point of one orbit.
    Orbit {
        #[arg(long)]
        perm: String,
    },
    /// Run an exhaustive checker and emit a report.
    Verify {
        /// One of: theorem-1-2, theorem-1-1, west-bound, catalan, zeilberger,
        /// lemma-3-8, lemma-3-9, conj-4-1, conj-4-2, conj-4-3, conj-4-4,
        /// conj-4-5.
        target: String,
        #[arg(long)]
        min_n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Enumerate a quantity over S_n and write rows or a listing.
    Enumerate {
        /// One of: ord-distribution, minimally-sorted, periodic-points,
        /// sortable-count.
        quantity: String,
        #[arg(long)]
        n: usize,
        /// Pass count for sortable-count.
        #[arg(long, default_value_t = 1)]
        passes: usize,
        /// For sortable-count: `periodic` counts permutations whose image
        /// after the passes lies on a cycle; `image` counts distinct images
        /// (the t-sorted reading).
        #[arg(long, default_value = "periodic")]
        reading: String,
    },
    /// Dump family members, one permutation per line.
    Families {
        /// gamma or delta.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        min_n: usize,
        /// Defaults to min-n.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_patterns(arg: &Option<String>) -> Result<PatternSet, String> {
    match arg {
        Some(s) => s.parse::<PatternSet>().map_err(|e| e.to_string()),
        None => Ok(PatternSet::west()),
    }
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse::<Permutation>().map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_report(
    report: &Report,
    format: OutputFormat,
    out: &Option<PathBuf>,
) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, report.render(format))
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!(
                "{}: {} (report written to {})",
                report.target,
                report.overall_verdict(),
                path.display()
            );
            Ok(())
        }
        None => {
            print!("{}", report.body(format));
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format_flag = match &cli.format {
        Some(s) => Some(s.parse::<OutputFormat>()?),
        None => None,
    };
    let settings = config::resolve(cli.threads, cli.ceiling, format_flag, cli.config.as_deref())?;
    let opts = EnumerationOptions {
        threads: settings.threads,
        ceiling: settings.ceiling,
    };

    match &cli.cmd {
        Cmd::Sort {
            perm,
            passes,
            trace,
        } => {
            let t = parse_patterns(&cli.patterns)?;
            let start = parse_perm(perm)?;
            let mut cur = start;
            let mut last_trace = None;
            for _ in 0..*passes {
                if *trace {
                    let (next, tr) = apply_traced(&cur, &t);
                    cur = next;
                    last_trace = Some(tr);
                } else {
                    cur = apply(&cur, &t);
                }
            }
            if *passes == 0 && *trace {
                return Err("--trace needs at least one pass".to_string());
            }
            let mut text = format!("{cur}\n");
            if let Some(tr) = last_trace {
                text.push_str(&tr.to_string());
            }
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Orbit { perm } => {
            let t = parse_patterns(&cli.patterns)?;
            let start = parse_perm(perm)?;
            let summary = orbit(&start, &t);
            let text = format!(
                "start {}\ntail {}\ncycle {}\nentry {}\n",
                summary.start, summary.tail_length, summary.cycle_length, summary.entry_point
            );
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            target,
            min_n,
            max_n,
        } => {
            if cli.patterns.is_some() {
                return Err(
                    "verify targets pin their own pattern sets; --patterns is not accepted here"
                        .to_string(),
                );
            }
            let target: VerifyTarget = target.parse()?;
            let (d_lo, d_hi) = target.default_range();
            let ctx = CheckContext {
                n_min: min_n.unwrap_or(d_lo),
                n_max: max_n.unwrap_or(d_hi),
                opts: opts.clone(),
            };
            let report = run_verify(target, &ctx).map_err(|e| match e {
                CheckError::Dynamics(d) => d.to_string(),
                CheckError::BadRequest(s) => s,
            })?;
            write_report(&report, settings.format, &cli.out)?;
            if report.any_fail() {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Cmd::Enumerate {
            quantity,
            n,
            passes,
            reading,
        } => {
            let t = match &cli.patterns {
                Some(s) => s.parse::<PatternSet>().map_err(|e| e.to_string())?,
                None => PatternSet::west(),
            };
            run_enumerate(
                quantity,
                *n,
                *passes,
                reading,
                &t,
                &opts,
                settings.format,
                &cli.out,
            )
        }
        Cmd::Families { kind, min_n, max_n } => {
            let hi = max_n.unwrap_or(*min_n);
            let mut text = String::new();
            for n in *min_n..=hi {
                let member = match kind.as_str() {
                    "gamma" => gamma(n),
                    "delta" => delta(n),
                    other => {
                        return Err(format!(
                            "unknown family kind {other:?}; expected gamma or delta"
                        ))
                    }
                }
                .map_err(|e| e.to_string())?;
                text.push_str(&member.to_string());
                text.push('\n');
            }
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_enumerate(
    quantity: &str,
    n: usize,
    passes: usize,
    reading: &str,
    t: &PatternSet,
    opts: &EnumerationOptions,
    format: OutputFormat,
    out: &Option<PathBuf>,
) -> Result<ExitCode, String> {
    let t_str = t.to_string();
    match quantity {
        "ord-distribution" => {
            let census = ord_census(n, t, opts).map_err(|e| e.to_string())?;
            let mut report = Report::new("enumerate:ord-distribution", &t_str);
            for (k, &c) in census.counts.iter().enumerate() {
                report.push(n, &t_str, &format!("ord-{k:02}"), c, "pass", "");
            }
            report.finish();
            write_report(&report, format, out)?;
            Ok(ExitCode::SUCCESS)
        }
        "sortable-count" => {
            let count = match reading {
                "periodic" => ord_census(n, t, opts)
                    .map_err(|e| e.to_string())?
                    .count_with_ord_at_most(passes),
                "image" => image_count(n, passes, t, opts).map_err(|e| e.to_string())?,
                other => {
                    return Err(format!(
                        "unknown reading {other:?}; expected periodic or image"
                    ))
                }
            };
            let mut report = Report::new("enumerate:sortable-count", &t_str);
            report.push(
                n,
                &t_str,
                &format!("sortable-count-t{passes}-{reading}"),
                count,
                "pass",
                "",
            );
            report.finish();
            write_report(&report, format, out)?;
            Ok(ExitCode::SUCCESS)
        }
        "minimally-sorted" => {
            opts.guard(n).map_err(|e| e.to_string())?;
            let census = ord_census(n, t, opts).map_err(|e| e.to_string())?;
            let max = census.max_ord();
            stream_listing(n, t, out, |ord| ord == max)?;
            eprintln!(
                "minimally-sorted n={n} patterns={t_str}: {} permutations (ord {max})",
                census.count_with_ord(max)
            );
            Ok(ExitCode::SUCCESS)
        }
        "periodic-points" => {
            opts.guard(n).map_err(|e| e.to_string())?;
            stream_listing(n, t, out, |ord| ord == 0)?;
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!(
            "unknown quantity {other:?}; expected ord-distribution, minimally-sorted, periodic-points, or sortable-count"
        )),
    }
}

/// |s_T^t(S_n)|: distinct images after `passes` passes (the t-sorted count).
fn image_count(
    n: usize,
    passes: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<u64, stacklab_core::DynamicsError> {
    opts.guard(n)?;
    if passes == 0 {
        return Ok(stacklab_core::counting::factorial(n as u64));
    }
    let mut images: std::collections::HashSet<Permutation> = stacklab_core::symmetric_group(n)
        .map(|q| apply(&q, t))
        .collect();
    for _ in 1..passes {
        images = images.iter().map(|q| apply(q, t)).collect();
    }
    Ok(images.len() as u64)
}

/// Writes matching permutations one per line in lexicographic order without
/// materializing the set; shards run serially so large n stays streamable.
fn stream_listing(
    n: usize,
    t: &PatternSet,
    out: &Option<PathBuf>,
    pred: impl Fn(usize) -> bool,
) -> Result<(), String> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut sink = std::io::BufWriter::new(sink);
    let mut io_err: Option<std::io::Error> = None;
    for first in 1..=n as u32 {
        shard_fold_with_ord(n, first, t, |vals, ord| {
            if io_err.is_none() && pred(ord) {
                let q = Permutation::new(vals.to_vec()).expect("valid");
                if let Err(e) = writeln!(sink, "{q}") {
                    io_err = Some(e);
                }
            }
        });
    }
    sink.flush().map_err(|e| e.to_string())?;
    if let Some(e) = io_err {
        return Err(e.to_string());
    }
    Ok(())
}
