//! `untangle`: decide whether a knot is trivial from a triangulation of its
//! complement.

mod stats;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use untangle::corpus::{self, CorpusEntry};
use untangle::lp::SolverOptions;
use untangle::pipeline::{recognize, Answer, RecognizeOptions, Verdict};
use untangle::search::SearchOptions;
use untangle::tri::Triangulation;

use stats::{append_record, profile_points, write_csv, StatsRecord};

#[derive(Parser)]
#[command(name = "untangle", version, about = "Unknot recognition by normal surface search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one input: a gluing-table file or `corpus:NAME`.
    /// Exit status 0 for the unknot, 1 for a non-trivial knot, 2 on error.
    Recognize {
        input: String,
        /// Write the disc certificate (one line of 7n coordinates) here, and
        /// the triangulation it lives in to FILE.tri.
        #[arg(long, value_name = "FILE")]
        emit_certificate: Option<PathBuf>,
        /// Append a CSV stats record to this file.
        #[arg(long, value_name = "FILE")]
        stats: Option<PathBuf>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Run the corpus (or the entries whose names match PATTERN) and print
    /// one CSV stats record per entry, sorted by name.
    Bench {
        /// Glob over entry names.
        #[arg(default_value = "*")]
        pattern: String,
        /// Runs per entry; the median time is reported.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        repeat: u32,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the stats CSV here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write `name,n,nodes` per search, for a nodes-versus-size plot.
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Run the oracle suites and report pass/fail per suite.
    Verify {
        /// Only the fast subset.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct RunFlags {
    /// Simplify with local moves before each search.
    #[arg(long)]
    simplify: bool,
    /// Use exact rationals throughout, skipping the machine-integer path.
    #[arg(long)]
    force_exact: bool,
}

impl RunFlags {
    fn options(self) -> RecognizeOptions {
        RecognizeOptions {
            search: SearchOptions { solver: SolverOptions { force_exact: self.force_exact, ..SolverOptions::default() } },
            simplify: self.simplify,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Recognize { input, emit_certificate, stats, run } => {
            cmd_recognize(&input, emit_certificate.as_deref(), stats.as_deref(), run)
        }
        Command::Bench { pattern, repeat, jobs, out, profile, run } => {
            cmd_bench(&pattern, repeat, jobs, out.as_deref(), profile.as_deref(), run)
        }
        Command::Verify { quick } => Ok(cmd_verify(quick)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_input(input: &str) -> Result<(String, Triangulation)> {
    if let Some(name) = input.strip_prefix("corpus:") {
        let e = corpus::entry(name)?;
        return Ok((e.name, e.triangulation));
    }
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    let tri = Triangulation::parse(&text).with_context(|| format!("parsing {input}"))?;
    let name = Path::new(input).file_stem().map_or(input.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, tri))
}

fn cmd_recognize(input: &str, cert: Option<&Path>, stats: Option<&Path>, run: RunFlags) -> Result<ExitCode> {
    let (name, tri) = load_input(input)?;
    let v = recognize(&tri, &run.options())?;
    let total = v.total_stats();
    println!("{}", v.answer);
    println!(
        "n={} nodes={} feas_tests={} iterations={} time_ms={:.3}",
        tri.size(),
        total.nodes,
        total.feas_tests,
        v.trace.len(),
        v.time.as_secs_f64() * 1e3
    );
    if let Some(path) = cert {
        let Some(c) = &v.certificate else {
            bail!("no disc certificate: the verdict is {}", v.answer);
        };
        std::fs::write(path, format!("{}\n", c.disc)).with_context(|| format!("writing {}", path.display()))?;
        let mut tri_path = path.as_os_str().to_owned();
        tri_path.push(".tri");
        std::fs::write(&tri_path, c.triangulation.to_text())
            .with_context(|| format!("writing {}", Path::new(&tri_path).display()))?;
    }
    if let Some(path) = stats {
        append_record(path, &StatsRecord::from_verdict(&name, tri.size(), &v))?;
    }
    Ok(ExitCode::from(match v.answer {
        Answer::Trivial => 0,
        Answer::NonTrivial => 1,
    }))
}

struct BenchRow {
    record: StatsRecord,
    verdict: Option<Verdict>,
    expected: Answer,
}

fn bench_one(e: &CorpusEntry, repeat: u32, opts: &RecognizeOptions) -> BenchRow {
    let mut runs = Vec::new();
    for _ in 0..repeat {
        match recognize(&e.triangulation, opts) {
            Ok(v) => runs.push(v),
            Err(err) => {
                eprintln!("{}: {err}", e.name);
                return BenchRow { record: StatsRecord::failed(&e.name, e.n), verdict: None, expected: e.expected };
            }
        }
    }
    let mut times: Vec<Duration> = runs.iter().map(|v| v.time).collect();
    times.sort();
    let mut v = runs.swap_remove(0);
    v.time = times[times.len() / 2];
    BenchRow { record: StatsRecord::from_verdict(&e.name, e.n, &v), verdict: Some(v), expected: e.expected }
}

fn cmd_bench(
    pattern: &str,
    repeat: u32,
    jobs: Option<usize>,
    out: Option<&Path>,
    profile: Option<&Path>,
    run: RunFlags,
) -> Result<ExitCode> {
    let glob = glob::Pattern::new(pattern).with_context(|| format!("bad pattern {pattern:?}"))?;
    let entries: Vec<CorpusEntry> = corpus::load()?.into_iter().filter(|e| glob.matches(&e.name)).collect();
    if entries.is_empty() {
        bail!("no corpus entry matches {pattern:?}");
    }
    let opts = run.options();
    // Rows arrive in completion order and are sorted afterwards.
    let rows = Mutex::new(Vec::with_capacity(entries.len()));
    let work = || {
        run_entries(&entries, |e| {
            let row = bench_one(e, repeat, &opts);
            rows.lock().expect("no panics while locked").push(row);
        })
    };
    match jobs {
        #[cfg(feature = "parallel")]
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build()?.install(work),
        #[cfg(not(feature = "parallel"))]
        Some(_) => work(),
        None => work(),
    }
    let mut rows = rows.into_inner().expect("no panics while locked");
    rows.sort_by(|a, b| a.record.name.cmp(&b.record.name));

    let records: Vec<StatsRecord> = rows.iter().map(|r| r.record.clone()).collect();
    match out {
        Some(path) => write_csv(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?, &records)?,
        None => write_csv(std::io::stdout().lock(), &records)?,
    }
    if let Some(path) = profile {
        let points: Vec<_> =
            rows.iter().filter_map(|r| r.verdict.as_ref().map(|v| profile_points(&r.record.name, v))).flatten().collect();
        write_csv(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?, &points)?;
    }
    let wrong: Vec<&str> = rows
        .iter()
        .filter(|r| r.verdict.as_ref().map(|v| v.answer) != Some(r.expected))
        .map(|r| r.record.name.as_str())
        .collect();
    if wrong.is_empty() {
        eprintln!("{} entries, all verdicts match the manifest", rows.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failed or wrong verdict: {}", wrong.join(", "));
        Ok(ExitCode::from(1))
    }
}

#[cfg(feature = "parallel")]
fn run_entries(entries: &[CorpusEntry], f: impl Fn(&CorpusEntry) + Sync + Send) {
    use rayon::prelude::*;
    entries.par_iter().for_each(f);
}

#[cfg(not(feature = "parallel"))]
fn run_entries(entries: &[CorpusEntry], f: impl Fn(&CorpusEntry)) {
    entries.iter().for_each(f);
}

fn cmd_verify(quick: bool) -> ExitCode {
    let mut ok = true;
    for o in verify::run(quick) {
        match o.result {
            Ok(detail) => println!("PASS {:<16} {detail}", o.name),
            Err(e) => {
                ok = false;
                println!("FAIL {:<16} {e:#}", o.name);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
