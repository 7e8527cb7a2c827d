//! Command-line front end for the braid-closure invariant engine.
//!
//! Exit codes: 0 on success, 2 on input errors (bad flags, malformed braids,
//! closures that are not knots), 3 on internal-consistency failures (an exact
//! identity that the engine checks at runtime failed to hold).

mod cache;
mod doc;
mod run;

use clap::{Parser, ValueEnum};
use doc::{BatchDocument, NamedResult, TableRecord};
use run::JobSpec;
use std::panic::AssertUnwindSafe;
use std::path::PathBuf;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact quantum invariants of knots presented as braid closures: colored
/// Jones polynomials, the Alexander-Conway polynomial, the Melvin-Morton
/// coefficient table, and its diagonal lines with an optional independent
/// cross-check of the first lines.
#[derive(Parser, Debug)]
#[command(name = "mmr", version, disable_help_subcommand = true)]
struct Args {
    /// Braid word as comma-separated nonzero integers, e.g. "1,1,1"
    /// (positive i means strand i crosses over strand i+1).
    #[arg(long, conflicts_with = "table")]
    braid: Option<String>,

    /// Number of strands (default: smallest count the word fits in).
    #[arg(long)]
    strands: Option<usize>,

    /// Colors to evaluate: a value "3", a list "2,3,5", or a range "1..6".
    #[arg(long, default_value = "1..4")]
    alpha: String,

    /// Highest h-order of the Melvin-Morton table (row bound for d_{m,n}).
    #[arg(long = "h-order", default_value_t = 4)]
    h_order: usize,

    /// How many lines n to recover (0..=lines); defaults to min(2, h-order).
    #[arg(long)]
    lines: Option<usize>,

    /// Re-derive lines n <= 2 through the perturbed Burau pipeline and
    /// report agreement with the sample-extraction pipeline.
    #[arg(long)]
    cross_check: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Skip the result cache entirely.
    #[arg(long)]
    no_cache: bool,

    /// Cache directory (default: $MMR_CACHE, else the platform cache dir).
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Batch mode: JSON file holding an array of {name, braid, strands}
    /// records, each run with the same alpha/h-order/lines settings.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn main() {
    // Panics signal violated internal identities; they are caught below and
    // reported once, so suppress the default hook's duplicate message.
    std::panic::set_hook(Box::new(|_| {}));
    let args = Args::parse();
    std::process::exit(real_main(&args));
}

fn real_main(args: &Args) -> i32 {
    let alpha = match run::parse_alpha(&args.alpha) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let lines = args.lines.unwrap_or_else(|| args.h_order.min(2));
    let cache_dir = cache::resolve_dir(args.cache_dir.as_deref());

    let jobs: Vec<(Option<String>, JobSpec)> = if let Some(table_path) = &args.table {
        let text = match std::fs::read_to_string(table_path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", table_path.display());
                return 2;
            }
        };
        let records: Vec<TableRecord> = match serde_json::from_str(&text) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {} is not a table of records: {e}", table_path.display());
                return 2;
            }
        };
        let mut jobs = Vec::new();
        for r in records {
            let strands = match r.strands {
                Some(s) => s,
                None => match run::infer_strands(&r.braid) {
                    Ok(s) => s,
                    Err(e) => {
                        eprintln!("error: record {}: {e}", r.name);
                        return 2;
                    }
                },
            };
            jobs.push((
                Some(r.name),
                JobSpec {
                    braid: r.braid,
                    strands,
                    alpha: alpha.clone(),
                    h_order: args.h_order,
                    lines,
                    cross_check: args.cross_check,
                },
            ));
        }
        jobs
    } else {
        let Some(braid) = &args.braid else {
            eprintln!("error: provide --braid or --table");
            return 2;
        };
        let strands = match args.strands {
            Some(s) => s,
            None => match run::infer_strands(braid) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            },
        };
        vec![(
            None,
            JobSpec {
                braid: braid.clone(),
                strands,
                alpha,
                h_order: args.h_order,
                lines,
                cross_check: args.cross_check,
            },
        )]
    };

    let mut results: Vec<NamedResult> = Vec::new();
    for (name, job) in jobs {
        if !args.no_cache {
            if let Some(doc) = cache::lookup(&cache_dir, &job) {
                results.push(NamedResult {
                    name: name.unwrap_or_default(),
                    result: doc,
                });
                continue;
            }
        }
        let outcome = std::panic::catch_unwind(AssertUnwindSafe(|| run::run(&job)));
        match outcome {
            Ok(Ok(docm)) => {
                if !args.no_cache {
                    cache::store(&cache_dir, &job, &docm);
                }
                results.push(NamedResult {
                    name: name.unwrap_or_default(),
                    result: docm,
                });
            }
            Ok(Err(e)) => {
                eprintln!("error: {e}");
                return 2;
            }
            Err(payload) => {
                let msg = panic_message(payload.as_ref());
                eprintln!("internal consistency failure: {msg}");
                return 3;
            }
        }
    }

    if args.table.is_some() {
        let batch = BatchDocument {
            schema: doc::SCHEMA,
            version: run::VERSION.to_string(),
            jobs: results,
        };
        match args.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&batch).unwrap()),
            Format::Text => {
                for item in &batch.jobs {
                    println!("== {} ==", item.name);
                    print!("{}", doc::render_text(&item.result));
                    println!();
                }
            }
        }
    } else {
        let single = &results[0].result;
        match args.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(single).unwrap()),
            Format::Text => print!("{}", doc::render_text(single)),
        }
    }
    0
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> &str {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s
    } else {
        "unknown panic payload"
    }
}
