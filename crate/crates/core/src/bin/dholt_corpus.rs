use clap::{Parser, ValueEnum};
use dholt_core::corpus::{build_corpus, corpus_dir, run_suite_with, SuiteMode};
use dholt_core::tableau::RuleMode;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    NativeOnly,
    ErasureOnly,
    Staged,
    Unstaged,
    Typecheck,
}

impl From<Mode> for SuiteMode {
    fn from(m: Mode) -> SuiteMode {
        match m {
            Mode::NativeOnly => SuiteMode::Prove(RuleMode::NativeOnly),
            Mode::ErasureOnly => SuiteMode::Prove(RuleMode::ErasureOnly),
            Mode::Staged => SuiteMode::Prove(RuleMode::Staged),
            Mode::Unstaged => SuiteMode::Prove(RuleMode::Unstaged),
            Mode::Typecheck => SuiteMode::Typecheck,
        }
    }
}

/// Runs the list case-study corpus and prints a results table.
#[derive(Debug, Parser)]
#[command(name = "dholt-corpus", version)]
struct Args {
    /// Sweeps to run, in order.
    #[arg(long = "mode", value_enum, default_values = ["native-only"])]
    modes: Vec<Mode>,
    /// Per-problem budget in seconds (default: the entry's own budget).
    #[arg(short, long, value_parser = clap::value_parser!(u64).range(1..))]
    timeout: Option<u64>,
    /// Only entries whose name contains this string.
    #[arg(long)]
    filter: Option<String>,
    /// Write the CSV report here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Report each entry on standard error as it finishes.
    #[arg(short, long)]
    verbose: bool,
    /// Write the corpus files into this directory and exit.
    #[arg(long)]
    write: Option<Option<PathBuf>>,
}

fn main() {
    let args = Args::parse();
    let mut entries = build_corpus();
    if let Some(dir) = &args.write {
        let dir = dir.clone().unwrap_or_else(corpus_dir);
        for e in &entries {
            let path = dir.join(&e.file);
            std::fs::create_dir_all(path.parent().unwrap()).expect("create corpus directory");
            std::fs::write(&path, &e.text).expect("write corpus file");
        }
        println!("wrote {} files to {}", entries.len(), dir.display());
        return;
    }
    if let Some(f) = &args.filter {
        entries.retain(|e| e.name.contains(f.as_str()));
    }
    let modes: Vec<SuiteMode> = args.modes.iter().map(|&m| m.into()).collect();
    let report = run_suite_with(&entries, &modes, args.timeout.map(Duration::from_secs), |r| {
        if args.verbose {
            eprintln!("{} {} {} {:.3}s", r.name, r.mode.label(), r.status, r.seconds);
        }
    });
    print!("{}", report.table());
    for &m in &modes {
        let total = report.rows.iter().filter(|r| r.mode == m).count();
        println!("{}: {}/{} as expected", m.label(), report.solved(m), total);
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, report.csv()).expect("write csv");
    }
    let native = SuiteMode::Prove(RuleMode::NativeOnly);
    let failed = report.rows.iter().any(|r| (r.mode == native || r.mode == SuiteMode::Typecheck) && !r.passed());
    std::process::exit(if failed { 1 } else { 0 });
}
