mod common;

use common::{dhol_small, hol_problems, problem, run, satisfiable_problems, ALL_MODES};
use dholt_core::tableau::{search, validate_trace, RuleMode, SearchConfig, Verdict};
use dholt_core::tptp::SzsStatus;
use std::time::Duration;

#[test]
fn hol_problems_prove_in_both_modes() {
    for (name, src) in hol_problems() {
        let p = problem(name, &src);
        for mode in [RuleMode::NativeOnly, RuleMode::ErasureOnly] {
            let r = run(&p, mode, 10);
            assert_eq!(r.status, SzsStatus::Theorem, "{} in {}", name, mode.name());
            validate_trace(&p, r.trace.as_ref().unwrap()).unwrap();
        }
    }
}

#[test]
fn small_dependent_theorems_prove_in_both_modes() {
    for (name, src) in dhol_small() {
        let p = problem(name, &src);
        for mode in [RuleMode::NativeOnly, RuleMode::ErasureOnly, RuleMode::Staged] {
            let r = run(&p, mode, 30);
            assert_eq!(r.status, SzsStatus::Theorem, "{} in {}", name, mode.name());
            validate_trace(&p, r.trace.as_ref().unwrap()).unwrap();
        }
    }
}

#[test]
fn satisfiable_problems_are_never_refuted() {
    for (name, src) in satisfiable_problems() {
        let p = problem(name, &src);
        for mode in ALL_MODES {
            for subterms in [true, false] {
                let cfg = SearchConfig { mode, timeout: Duration::from_secs(1), subterms };
                let v = search(&p, &cfg).verdict;
                assert!(matches!(v, Verdict::Exhausted | Verdict::Timeout), "{} in {}", name, mode.name());
            }
        }
    }
}

#[test]
fn propositional_countermodels_exhaust() {
    for name in ["atom", "implication", "converse", "not_middle"] {
        let src = satisfiable_problems().into_iter().find(|(n, _)| *n == name).unwrap().1;
        let p = problem(name, &src);
        for mode in ALL_MODES {
            let r = run(&p, mode, 5);
            assert_eq!(r.status, SzsStatus::GaveUp, "{} in {}", name, mode.name());
        }
    }
}

#[test]
fn refuting_an_axiom_set_reports_unsatisfiable() {
    let p = problem("clash", "thf(p_decl, type, p: $o).\nthf(a1, axiom, p).\nthf(a2, axiom, ~ p).\n");
    assert_eq!(run(&p, RuleMode::NativeOnly, 5).status, SzsStatus::Unsatisfiable);
}

#[test]
fn root_contradiction_needs_no_steps() {
    let p = problem("bot", "thf(a1, axiom, $false).\n");
    let out = search(&p, &SearchConfig::default());
    match out.verdict {
        Verdict::Refuted(t) => {
            assert_eq!(t.step_count(), 0);
            validate_trace(&p, &t).unwrap();
        }
        _ => panic!("not refuted"),
    }
}

#[test]
fn discriminating_terms_supply_instances_without_subterm_seeding() {
    // With seeding off, `f a` only reaches the pool as a side of the
    // disequation that matching produces.
    let src = "thf(i_type, type, i: $tType).\nthf(a_decl, type, a: i).\nthf(f_decl, type, f: i > i).\nthf(g_decl, type, g: i > $o).\nthf(c, conjecture, (![X:i]: (g @ X)) => (g @ (f @ a))).\n";
    let p = problem("seed", src);
    for subterms in [true, false] {
        let cfg = SearchConfig { mode: RuleMode::NativeOnly, timeout: Duration::from_secs(5), subterms };
        match search(&p, &cfg).verdict {
            Verdict::Refuted(t) => {
                validate_trace(&p, &t).unwrap();
            }
            _ => panic!("subterms {}", subterms),
        }
    }
}
