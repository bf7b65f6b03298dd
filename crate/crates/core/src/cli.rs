//! The `dholt` command line.

use crate::checker::generate_tccs;
use crate::erasure::erase_problem;
use crate::prover::{prove, tcc_problem, typecheck_skeleton, ProveConfig, TypecheckMode};
use crate::tableau::{RuleMode, SearchConfig};
use crate::tptp::{parse_problem, problem_to_string, szs_line, ParseError, SzsStatus};
use clap::{Parser, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rules {
    NativeOnly,
    ErasureOnly,
    Staged,
    Unstaged,
}

impl From<Rules> for RuleMode {
    fn from(r: Rules) -> RuleMode {
        match r {
            Rules::NativeOnly => RuleMode::NativeOnly,
            Rules::ErasureOnly => RuleMode::ErasureOnly,
            Rules::Staged => RuleMode::Staged,
            Rules::Unstaged => RuleMode::Unstaged,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dholt", version, about = "Tableau prover for dependently typed higher-order logic")]
pub struct Args {
    /// THF problem file.
    pub input: PathBuf,
    /// Rule families available to the search.
    #[arg(long, value_enum, default_value = "native-only")]
    pub rules: Rules,
    /// Prove all type-checking conditions before the conjecture.
    #[arg(long)]
    pub typecheck_exact: bool,
    /// Prove all type-checking conditions and discard the conjecture.
    #[arg(long, conflicts_with = "typecheck_exact")]
    pub typecheck_only: bool,
    /// Check skeletons only and report InexactTypecheck.
    #[arg(long, conflicts_with_all = ["typecheck_exact", "typecheck_only"])]
    pub typecheck_skeleton: bool,
    /// Print the erased HOL problem instead of proving.
    #[arg(long, conflicts_with_all = ["typecheck_exact", "typecheck_only", "typecheck_skeleton"])]
    pub translate: bool,
    /// Do not seed instantiations with subterms of the problem.
    #[arg(long)]
    pub no_subterm_instantiations: bool,
    /// Wall-clock limit in seconds.
    #[arg(short, long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,
    /// Limit per type-checking condition in seconds (default: --timeout).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub tcc_timeout: Option<u64>,
    /// Write the refutation trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write each type-checking condition as a THF problem into this directory.
    #[arg(long)]
    pub export_tccs: Option<PathBuf>,
}

fn problem_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "problem".into())
}

pub fn exit_code(status: SzsStatus) -> i32 {
    match status {
        s if s.is_success() => 0,
        SzsStatus::SyntaxError => 2,
        _ => 1,
    }
}

/// Runs the command line; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    run_args(&args, out, err)
}

pub fn run_args(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let name = problem_name(&args.input);
    let src = match std::fs::read_to_string(&args.input) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "dholt: cannot read {}: {}", args.input.display(), e);
            return 2;
        }
    };
    let problem = match parse_problem(&src, &name) {
        Ok(p) => p,
        Err(e) => {
            let status = match e {
                ParseError::Syntax { .. } => SzsStatus::SyntaxError,
                _ => SzsStatus::TypeError,
            };
            let _ = writeln!(err, "dholt: {}", e);
            let _ = writeln!(out, "{}", szs_line(status, &name));
            return 2;
        }
    };

    if args.translate {
        let _ = writeln!(out, "{}", szs_line(SzsStatus::Success, &name));
        let _ = write!(out, "{}", problem_to_string(&erase_problem(&problem)));
        return 0;
    }

    if let Some(dir) = &args.export_tccs {
        if let Err(e) = export_tccs(&problem, dir) {
            let _ = writeln!(err, "dholt: {}", e);
            return 2;
        }
    }

    if args.typecheck_skeleton {
        let status = typecheck_skeleton(&problem).unwrap_or_else(|e| {
            let _ = writeln!(err, "dholt: {}", e);
            SzsStatus::TypeError
        });
        let _ = writeln!(out, "{}", szs_line(status, &name));
        return exit_code(status);
    }

    let typecheck = if args.typecheck_only {
        TypecheckMode::ExactOnly
    } else if args.typecheck_exact {
        TypecheckMode::Exact
    } else {
        TypecheckMode::Skeleton
    };
    let cfg = ProveConfig {
        search: SearchConfig {
            mode: args.rules.into(),
            timeout: Duration::from_secs(args.timeout),
            subterms: !args.no_subterm_instantiations,
        },
        typecheck,
        tcc_timeout: args.tcc_timeout.map(Duration::from_secs),
    };
    let result = prove(&problem, &cfg);
    if let Some(msg) = &result.message {
        let _ = writeln!(err, "dholt: {}", msg);
    }
    if let (Some(path), Some(trace)) = (&args.trace, &result.trace) {
        if let Err(e) = std::fs::write(path, trace.to_text()) {
            let _ = writeln!(err, "dholt: cannot write {}: {}", path.display(), e);
        }
    }
    let _ = writeln!(out, "{}", szs_line(result.status, &name));
    exit_code(result.status)
}

fn export_tccs(problem: &crate::problem::Problem, dir: &Path) -> Result<(), String> {
    let tccs = generate_tccs(problem).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    for (i, tcc) in tccs.iter().enumerate() {
        let p = tcc_problem(problem, tcc, i);
        let path = dir.join(format!("{}.p", p.name));
        std::fs::write(&path, problem_to_string(&p)).map_err(|e| format!("cannot write {}: {}", path.display(), e))?;
    }
    Ok(())
}
