//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p dholt-core --test acceptance`.

mod common;

use common::gen::{dependent_formula, list_problem, node_count, simple_formula, simple_problem};
use common::{dhol_small, hol_problems, problem, run, satisfiable_problems, ALL_MODES};
use dholt_core::checker::generate_tccs;
use dholt_core::corpus::{build_corpus, corpus_dir, Group};
use dholt_core::erasure::{erase_term, erase_theory, phi, phi_with, PerTable, PhiStrategy};
use dholt_core::problem::Problem;
use dholt_core::prover::{prove, tcc_problem, ProveConfig, ProveResult, TypecheckMode};
use dholt_core::tableau::{search, validate_trace, RuleMode, SearchConfig, Trace, Verdict};
use dholt_core::tptp::{parse_formula, parse_problem, term_to_string, SzsStatus};
use dholt_core::typing::Context;
use std::path::PathBuf;
use std::time::Duration;

/// Every Theorem trace seen by any criterion, for the validity check.
#[derive(Default)]
struct Traces {
    all: Vec<(Problem, Trace)>,
}

impl Traces {
    fn keep(&mut self, p: &Problem, r: &ProveResult) {
        if let Some(t) = &r.trace {
            self.all.push((p.clone(), t.clone()));
        }
        for (i, o) in r.tccs.iter().enumerate() {
            if let Some(t) = &o.trace {
                self.all.push((tcc_problem(p, &o.tcc, i), t.clone()));
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn config(mode: RuleMode, typecheck: TypecheckMode, secs: u64) -> ProveConfig {
    ProveConfig {
        search: SearchConfig { mode, timeout: Duration::from_secs(secs), subterms: true },
        typecheck,
        tcc_timeout: None,
    }
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn corpus_file(file: &str) -> Problem {
    parse_problem(&std::fs::read_to_string(corpus_dir().join(file)).unwrap(), "golden").unwrap()
}

fn corpus_proving(traces: &mut Traces) -> Outcome {
    let entries: Vec<_> = build_corpus().into_iter().filter(|e| e.group != Group::Typecheck).collect();
    let mut failed = Vec::new();
    let mut slowest = 0.0f64;
    for e in &entries {
        let p = e.problem().unwrap();
        let r = prove(&p, &config(RuleMode::NativeOnly, TypecheckMode::Skeleton, 60));
        let secs = r.elapsed.as_secs_f64();
        slowest = slowest.max(secs);
        if r.status != SzsStatus::Theorem || secs > 60.0 {
            failed.push(format!("{} {} {:.1}s", e.name, r.status, secs));
        }
        traces.keep(&p, &r);
    }
    let solved = entries.len() - failed.len();
    outcome(
        entries.len() == 34 && failed.is_empty(),
        format!("{}/{} Theorem in native-only, slowest {:.2}s {}", solved, entries.len(), slowest, failed.join(", ")),
    )
}

fn corpus_typechecking(traces: &mut Traces) -> Outcome {
    let entries = build_corpus();
    let mut failed = Vec::new();
    let mut slowest = 0.0f64;
    for e in &entries {
        let p = e.problem().unwrap();
        let r = prove(&p, &config(RuleMode::NativeOnly, TypecheckMode::ExactOnly, 60));
        let secs = r.elapsed.as_secs_f64();
        slowest = slowest.max(secs);
        if r.status != SzsStatus::TypeCheck || secs > 60.0 {
            failed.push(format!("{} {} {:.1}s", e.name, r.status, secs));
        }
        traces.keep(&p, &r);
    }
    outcome(
        failed.is_empty(),
        format!("{}/{} TypeCheck, slowest {:.2}s {}", entries.len() - failed.len(), entries.len(), slowest, failed.join(", ")),
    )
}

fn tcc_exactness() -> Outcome {
    let lines = |p: &Problem| -> Vec<String> { generate_tccs(p).unwrap().iter().map(|t| term_to_string(&t.formula)).collect() };
    let app = lines(&corpus_file("typecheck/ex1.p"));
    let want_app: Vec<String> = golden("ex1_tccs.txt").lines().map(String::from).collect();
    let conj = lines(&corpus_file("typecheck/ex1_conj.p"));
    let want_conj: Vec<String> = golden("ex1_conj_tccs.txt").lines().map(String::from).collect();
    let conj_own: Vec<String> = conj.iter().skip(app.len()).cloned().collect();
    outcome(app == want_app && conj_own == want_conj, format!("{} app obligations, conjecture: {}", app.len(), conj_own.join("; ")))
}

fn guard_order(traces: &mut Traces) -> Outcome {
    let sig = "thf(nat_type, type, nat: $tType).\nthf(lst_type, type, lst: nat > $tType).\n";
    let make = |name: &str, body: &str| {
        problem(name, &format!("{}thf(c, conjecture, ![N:nat,M:nat,X:lst @ N,Y:lst @ M]: ({})).\n", sig, body))
    };
    let mut cfg = config(RuleMode::NativeOnly, TypecheckMode::ExactOnly, 60);
    cfg.tcc_timeout = Some(Duration::from_secs(10));
    let left = make("guard_left", "(M != N) | (X = Y)");
    let l = prove(&left, &cfg);
    traces.keep(&left, &l);
    let right = make("guard_right", "(X = Y) | (M != N)");
    let r = prove(&right, &cfg);
    outcome(
        l.status == SzsStatus::TypeCheck && r.status != SzsStatus::TypeCheck,
        format!("m != n | x = y: {}, x = y | m != n: {} after {:.1}s", l.status, r.status, r.elapsed.as_secs_f64()),
    )
}

fn erasure_golden() -> Outcome {
    let p = corpus_file("typecheck/ex1.p");
    let th = erase_theory(&p);
    let s_app = p.axioms().find(|(n, _)| *n == "app_cons").unwrap().1.clone();
    let got = phi(&th.table, &erase_term(&th.table, &s_app).normalize()).normalize();
    let want = parse_formula(golden("s_app_erased.txt").trim(), &th.sig, &Context::new()).unwrap().normalize();
    outcome(got == want, term_to_string(&got))
}

fn hol_identity(traces: &mut Traces) -> Outcome {
    let table = PerTable::from_signature(&simple_problem().signature());
    let mut mismatches = 0;
    for seed in 0..500u64 {
        let s = simple_formula(seed);
        if phi(&table, &erase_term(&table, &s).normalize()).normalize() != s.normalize() {
            mismatches += 1;
        }
    }
    let mut failed = Vec::new();
    for (name, src) in hol_problems() {
        let p = problem(name, &src);
        let rs: Vec<_> = [RuleMode::NativeOnly, RuleMode::ErasureOnly].iter().map(|&m| run(&p, m, 60)).collect();
        if rs.iter().any(|r| r.status != SzsStatus::Theorem) {
            failed.push(name);
        }
        for r in &rs {
            traces.keep(&p, r);
        }
    }
    outcome(
        mismatches == 0 && failed.is_empty(),
        format!("500 formulas, {} mismatches; 20 HOL problems, {} not proved in both modes {:?}", mismatches, failed.len(), failed),
    )
}

fn phi_properties() -> Outcome {
    let table = PerTable::from_signature(&list_problem().signature());
    let (mut idem, mut strat, mut bound) = (0, 0, 0);
    for seed in 0..1000u64 {
        let t = erase_term(&table, &dependent_formula(seed)).normalize();
        let (l, steps) = phi_with(&table, &t, PhiStrategy::InnermostLeftmost);
        let (r, _) = phi_with(&table, &t, PhiStrategy::InnermostRightmost);
        if phi(&table, &l) != l {
            idem += 1;
        }
        if l != r {
            strat += 1;
        }
        if steps > node_count(&t) {
            bound += 1;
        }
    }
    outcome(
        idem + strat + bound == 0,
        format!("1000 terms: {} not idempotent, {} strategy-dependent, {} over the step bound", idem, strat, bound),
    )
}

fn soundness_guard() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, src) in satisfiable_problems() {
        let p = problem(name, &src);
        for mode in ALL_MODES {
            for subterms in [true, false] {
                runs += 1;
                let cfg = SearchConfig { mode, timeout: Duration::from_secs(2), subterms };
                if let Verdict::Refuted(_) = search(&p, &cfg).verdict {
                    bad.push(format!("{} {}", name, mode.name()));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{} runs over 10 problems, {} refuted {}", runs, bad.len(), bad.join(", ")))
}

fn trace_validity(traces: &Traces) -> Outcome {
    let bad: Vec<String> = traces
        .all
        .iter()
        .filter_map(|(p, t)| validate_trace(p, t).err().map(|e| format!("{}: {}", p.name, e)))
        .collect();
    outcome(bad.is_empty(), format!("{}/{} traces accepted {}", traces.all.len() - bad.len(), traces.all.len(), bad.join("; ")))
}

fn lemma_equivalence(traces: &mut Traces) -> Outcome {
    let mut failed = Vec::new();
    let mut slowest = 0.0f64;
    for (name, src) in dhol_small() {
        let p = problem(name, &src);
        for mode in [RuleMode::NativeOnly, RuleMode::ErasureOnly] {
            let r = run(&p, mode, 600);
            slowest = slowest.max(r.elapsed.as_secs_f64());
            if r.status != SzsStatus::Theorem {
                failed.push(format!("{} {} {}", name, mode.name(), r.status));
            }
            traces.keep(&p, &r);
        }
    }
    outcome(failed.is_empty(), format!("10 theorems in both modes, slowest {:.2}s {}", slowest, failed.join(", ")))
}

fn main() {
    let mut traces = Traces::default();
    // Criterion 9 checks the traces the other criteria collect, so it runs last.
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "corpus proving", corpus_proving(&mut traces)),
        (2, "corpus typechecking", corpus_typechecking(&mut traces)),
        (3, "TCC exactness", tcc_exactness()),
        (4, "guard order", guard_order(&mut traces)),
        (5, "erasure golden", erasure_golden()),
        (6, "HOL-fragment identity", hol_identity(&mut traces)),
        (7, "phi properties", phi_properties()),
        (8, "soundness guard", soundness_guard()),
        (10, "native/erasure equivalence", lemma_equivalence(&mut traces)),
    ];
    results.push((9, "trace validity", trace_validity(&traces)));
    results.sort_by_key(|r| r.0);
    for (n, what, o) in &results {
        println!("criterion {:>2} {} {}: {}", n, if o.pass { "PASS" } else { "FAIL" }, what, o.detail);
    }
    let failed = results.iter().filter(|(_, _, o)| !o.pass).count();
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
