//! Top-level driver: type checking, TCC proving and the main refutation.

use crate::checker::{check_theory, generate_tccs, Tcc};
use crate::problem::{Decl, Problem};
use crate::tableau::{search, validate_trace, SearchConfig, Trace, Verdict};
use crate::tptp::SzsStatus;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypecheckMode {
    /// Skeleton check only; TCCs are not proved.
    Skeleton,
    /// Prove every TCC, then the conjecture.
    Exact,
    /// Prove every TCC and discard the conjecture.
    ExactOnly,
}

#[derive(Debug, Clone)]
pub struct ProveConfig {
    pub search: SearchConfig,
    pub typecheck: TypecheckMode,
    /// Budget per TCC; defaults to the search timeout.
    pub tcc_timeout: Option<Duration>,
}

impl Default for ProveConfig {
    fn default() -> ProveConfig {
        ProveConfig { search: SearchConfig::default(), typecheck: TypecheckMode::Skeleton, tcc_timeout: None }
    }
}

#[derive(Debug, Clone)]
pub struct TccOutcome {
    pub tcc: Tcc,
    pub status: SzsStatus,
    pub steps: usize,
    pub elapsed: Duration,
    pub trace: Option<Trace>,
}

#[derive(Debug, Clone)]
pub struct ProveResult {
    pub status: SzsStatus,
    /// Refutation of the main problem, present only for Theorem/Unsatisfiable.
    pub trace: Option<Trace>,
    pub tccs: Vec<TccOutcome>,
    pub steps: usize,
    pub elapsed: Duration,
    /// Human-readable reason for a failure, if any.
    pub message: Option<String>,
}

/// The problem whose refutation proves `tcc`: the declarations before the
/// axioms it may use, with the TCC as conjecture.
pub fn tcc_problem(problem: &Problem, tcc: &Tcc, index: usize) -> Problem {
    let mut decls = problem.prefix_before_axiom(tcc.axioms_available);
    // Later declarations may be needed to state the TCC of the conjecture.
    for d in &problem.decls {
        if !matches!(d, Decl::Axiom { .. }) && !decls.contains(d) {
            decls.push(d.clone());
        }
    }
    let mut p = Problem::new(&format!("{}_tcc{}", problem.name, index + 1));
    p.decls = decls;
    p.with_conjecture(&format!("tcc{}", index + 1), tcc.formula.clone())
}

/// Runs one search and checks any refutation independently.
fn refute(problem: &Problem, cfg: &SearchConfig) -> (SzsStatus, Option<Trace>, usize, Option<String>) {
    let out = search(problem, cfg);
    match out.verdict {
        Verdict::Refuted(trace) => match validate_trace(problem, &trace) {
            Ok(_) => (SzsStatus::Theorem, Some(trace), out.steps, None),
            Err(e) => (SzsStatus::GaveUp, None, out.steps, Some(format!("trace rejected: {}", e))),
        },
        Verdict::Exhausted => (SzsStatus::GaveUp, None, out.steps, None),
        Verdict::Timeout => (SzsStatus::Timeout, None, out.steps, None),
    }
}

pub fn prove(problem: &Problem, cfg: &ProveConfig) -> ProveResult {
    let start = Instant::now();
    let mut result = ProveResult {
        status: SzsStatus::GaveUp,
        trace: None,
        tccs: Vec::new(),
        steps: 0,
        elapsed: Duration::ZERO,
        message: None,
    };
    let finish = |mut r: ProveResult, status: SzsStatus| {
        r.status = status;
        r.elapsed = start.elapsed();
        r
    };
    if let Err(e) = check_theory(problem) {
        result.message = Some(e.to_string());
        return finish(result, SzsStatus::TypeError);
    }
    if cfg.typecheck != TypecheckMode::Skeleton {
        let tccs = match generate_tccs(problem) {
            Ok(t) => t,
            Err(e) => {
                result.message = Some(e.to_string());
                return finish(result, SzsStatus::TypeError);
            }
        };
        let budget = cfg.tcc_timeout.unwrap_or(cfg.search.timeout);
        for (i, tcc) in tccs.into_iter().enumerate() {
            let p = tcc_problem(problem, &tcc, i);
            let scfg = SearchConfig { timeout: budget, ..cfg.search.clone() };
            let t0 = Instant::now();
            let (status, trace, steps, msg) = refute(&p, &scfg);
            result.steps += steps;
            let ok = status == SzsStatus::Theorem;
            result.tccs.push(TccOutcome { tcc, status, steps, elapsed: t0.elapsed(), trace });
            if !ok {
                let origin = &result.tccs.last().unwrap().tcc.origin;
                result.message = Some(msg.unwrap_or_else(|| format!("TCC {} of {} not proved", i + 1, origin)));
                return finish(result, status);
            }
        }
        if cfg.typecheck == TypecheckMode::ExactOnly {
            return finish(result, SzsStatus::TypeCheck);
        }
    }
    let (status, trace, steps, msg) = refute(problem, &cfg.search);
    result.steps += steps;
    result.trace = trace;
    result.message = msg;
    let status = match status {
        SzsStatus::Theorem if problem.conjecture.is_none() => SzsStatus::Unsatisfiable,
        s => s,
    };
    finish(result, status)
}

/// Skeleton check only: InexactTypecheck when the theory is well-formed.
pub fn typecheck_skeleton(problem: &Problem) -> Result<SzsStatus, String> {
    check_theory(problem).map(|_| SzsStatus::InexactTypecheck).map_err(|e| e.to_string())
}
