mod common;

use common::problem;
use dholt_core::erasure::erase_theory;
use dholt_core::tptp::term_to_string;
use dholt_core::tableau::{parse_trace, validate_trace, validate_trace_text, RuleMode};

const CON: &str = "thf(nat_type, type, nat: $tType).
thf(lst_type, type, lst: nat > $tType).
thf(n_decl, type, n: nat).
thf(m_decl, type, m: nat).
thf(k_decl, type, k: lst @ n).
thf(l_decl, type, l: lst @ n).
thf(u_decl, type, u: lst @ m).
thf(v_decl, type, v: lst @ m).
thf(uv, axiom, u != v).
thf(kl, axiom, k = l).
thf(c, conjecture, l = k).
";

const CON_TRACE: &str = "% dholt trace con mode native-only
init f0 d theory u !=[lst @ m] v
init f1 d theory k =[lst @ n] l
init f2 d goal l !=[lst @ n] k
step 0 parent root rule t_con side d premises f1,f2 alt 0: add f3 k !=[lst @ n] l ; add f4 l !=[lst @ n] l
step 0 parent root rule t_con side d premises f1,f2 alt 1: add f6 k !=[lst @ n] k
step 1 parent 0.0 rule t_neg side d premises f1,f3 alt 0: add f5 $false
step 2 parent 0.1 rule t_neq side d premises f6 alt 0: add f7 $false
";

const FRESH: &str = "thf(i_type, type, i: $tType).
thf(g_decl, type, g: i > $o).
thf(h_decl, type, h: i > $o).
thf(ax, axiom, ![X:i,Y:i]: ((g @ X) | (h @ Y))).
thf(c, conjecture, (![X:i]: (g @ X)) | (![Y:i]: (h @ Y))).
";

const FRESH_TRACE: &str = "% dholt trace fresh mode native-only
init f0 d theory ![X:i,Y:i]: ((~ (g @ X)) => (h @ Y))
init f1 d goal ~ ((~ (![X:i]: (g @ X))) => (![Y:i]: (h @ Y)))
step 0 parent root rule t_nimp side d premises f1 alt 0: add f2 ~ (![X:i]: (g @ X)) ; add f3 ~ (![Y:i]: (h @ Y))
step 1 parent 0.0 rule t_nforall side d premises f2 alt 0: decl sk1 : i ; add f4 ~ (g @ sk1)
step 2 parent 1.0 rule t_nforall side d premises f3 alt 0: decl sk2 : i ; add f5 ~ (h @ sk2)
step 3 parent 2.0 rule t_forall side d premises f0 with {sk1} alt 0: add f6 ![Y:i]: ((~ (g @ sk1)) => (h @ Y))
step 4 parent 3.0 rule t_forall side d premises f6 with {sk2} alt 0: add f7 (~ (g @ sk1)) => (h @ sk2)
step 5 parent 4.0 rule t_imp side d premises f7 alt 0: add f8 ~ (~ (g @ sk1))
step 5 parent 4.0 rule t_imp side d premises f7 alt 1: add f10 h @ sk2
step 6 parent 5.0 rule t_neg side d premises f4,f8 alt 0: add f9 $false
step 7 parent 5.1 rule t_neg side d premises f10,f5 alt 0: add f11 $false
";

const ER: &str = "thf(nat_type, type, nat: $tType).
thf(zero_decl, type, zero: nat).
thf(lst_type, type, lst: nat > $tType).
thf(nil_decl, type, nil: lst @ zero).
thf(pz_decl, type, pz: (lst @ zero) > $o).
thf(ax, axiom, ![X:lst @ zero]: (pz @ X)).
thf(c, conjecture, ![Y:lst @ zero]: (pz @ Y)).
";

const ER_INIT: &str = "init f0 d theory ![X:lst @ zero]: (pz @ X)
init f1 d goal ~ (![X:lst @ zero]: (pz @ X))
init f2 h theory ![X:nat,U:lst,V:lst]: ((lst_star @ X @ U @ V) => (U = V))
init f3 h theory lst_star @ zero @ nil @ nil
init f4 h theory ![X:lst,X1:lst]: ((lst_star @ zero @ X @ X1) => ((pz @ X) = (pz @ X1)))
init f5 h theory ![X:lst]: ((lst_star @ zero @ X @ X) => (pz @ X))
";

/// Native eigenvariable, erased declaration, erased formula, then a HOL refutation.
const ER_STEPS: &str = "step 0 parent root rule t_nforall side d premises f1 alt 0: decl sk1 : lst @ zero ; add f6 ~ (pz @ sk1)
step 1 parent 0.0 rule t_er2 side h premises v:sk1 alt 0: decl sk1 : lst ; add f7 lst_star @ zero @ sk1 @ sk1
step 2 parent 1.0 rule t_er1 side h premises f6 alt 0: add f8 ~ (pz @ sk1)
step 3 parent 2.0 rule t_forall side h premises f5 with {sk1} alt 0: add f9 (lst_star @ zero @ sk1 @ sk1) => (pz @ sk1)
step 4 parent 3.0 rule t_imp side h premises f9 alt 0: add f10 ~ (lst_star @ zero @ sk1 @ sk1)
step 4 parent 3.0 rule t_imp side h premises f9 alt 1: add f12 pz @ sk1
step 5 parent 4.0 rule t_neg side h premises f7,f10 alt 0: add f11 $false
step 6 parent 4.1 rule t_neg side h premises f12,f8 alt 0: add f13 $false
";

fn er_trace(mode: &str, steps: &str) -> String {
    format!("% dholt trace er mode {}\n{}{}", mode, ER_INIT, steps)
}

/// The problem, named as the trace header expects.
fn for_trace(src: &str, trace: &str) -> dholt_core::problem::Problem {
    let name = trace.lines().next().and_then(|l| l.split_whitespace().nth(3)).unwrap();
    problem(name, src)
}

fn rejected(src: &str, trace: &str, needle: &str) {
    let p = for_trace(src, trace);
    match validate_trace_text(&p, trace) {
        Ok(_) => panic!("accepted a bad trace:\n{}", trace),
        Err(e) => assert!(e.to_string().contains(needle), "expected '{}', got: {}", needle, e),
    }
}

fn accepted(src: &str, trace: &str) {
    let p = for_trace(src, trace);
    if let Err(e) = validate_trace_text(&p, trace) {
        panic!("{}\n{}", e, trace);
    }
}

#[test]
fn recorded_traces_replay() {
    accepted(CON, CON_TRACE);
    accepted(FRESH, FRESH_TRACE);
    accepted(ER, &er_trace("unstaged", ER_STEPS));
    accepted(ER, &er_trace("staged", ER_STEPS));
}

#[test]
fn confrontation_needs_identical_types() {
    let bad = CON_TRACE.replace("premises f1,f2", "premises f1,f0");
    rejected(CON, &bad, "same base type");
}

#[test]
fn eigenvariables_must_be_fresh() {
    let bad = FRESH_TRACE.replace("decl sk2 : i ; add f5 ~ (h @ sk2)", "decl sk1 : i ; add f5 ~ (h @ sk1)");
    rejected(FRESH, &bad, "not fresh");
}

#[test]
fn instances_must_have_the_binder_type() {
    let src = "thf(nat_type, type, nat: $tType).
thf(lst_type, type, lst: nat > $tType).
thf(n_decl, type, n: nat).
thf(m_decl, type, m: nat).
thf(k_decl, type, k: lst @ n).
thf(u_decl, type, u: lst @ m).
thf(pn_decl, type, pn: (lst @ n) > $o).
thf(ax, axiom, ![X:lst @ n]: (pn @ X)).
thf(c, conjecture, pn @ k).
";
    let good = "% dholt trace t mode native-only
init f0 d theory ![X:lst @ n]: (pn @ X)
init f1 d goal ~ (pn @ k)
step 0 parent root rule t_forall side d premises f0 with {k} alt 0: add f2 pn @ k
step 1 parent 0.0 rule t_neg side d premises f2,f1 alt 0: add f3 $false
";
    accepted(src, good);
    let bad = good.replace("with {k} alt 0: add f2 pn @ k", "with {u} alt 0: add f2 pn @ u");
    rejected(src, &bad, "instance");
}

#[test]
fn decomposition_needs_arguments() {
    let bad = CON_TRACE.replace("rule t_neq side d premises f6 alt 0: add f7 $false", "rule t_dec side d premises f6 alt 0: add f7 $false");
    rejected(CON, &bad, "at least one argument");
}

#[test]
fn erasure_of_a_formula_waits_for_its_declarations() {
    let swapped = ER_STEPS
        .replace(
            "step 1 parent 0.0 rule t_er2 side h premises v:sk1 alt 0: decl sk1 : lst ; add f7 lst_star @ zero @ sk1 @ sk1\nstep 2 parent 1.0 rule t_er1 side h premises f6 alt 0: add f8 ~ (pz @ sk1)",
            "step 1 parent 0.0 rule t_er1 side h premises f6 alt 0: add f8 ~ (pz @ sk1)\nstep 2 parent 1.0 rule t_er2 side h premises v:sk1 alt 0: decl sk1 : lst ; add f7 lst_star @ zero @ sk1 @ sk1",
        );
    assert_ne!(swapped, ER_STEPS);
    rejected(ER, &er_trace("unstaged", &swapped), "not well typed");
}

#[test]
fn modes_restrict_rules() {
    rejected(ER, &er_trace("native-only", ER_STEPS), "native-only");
    rejected(ER, &er_trace("erasure-only", ER_STEPS), "not allowed");
}

#[test]
fn added_formulas_must_follow_the_schema() {
    let bad = FRESH_TRACE.replace("add f4 ~ (g @ sk1)", "add f4 ~ (h @ sk1)");
    rejected(FRESH, &bad, "should add");
}

#[test]
fn open_leaves_are_rejected() {
    let bad: String = CON_TRACE.lines().filter(|l| !l.starts_with("step 2")).map(|l| format!("{}\n", l)).collect();
    rejected(CON, &bad, "open leaf");
}

#[test]
fn native_refutations_are_valid_under_every_rule_set() {
    for (name, src) in common::dhol_small().into_iter().chain(common::hol_problems()) {
        let p = problem(name, &src);
        let r = common::run(&p, RuleMode::NativeOnly, 10);
        let trace = r.trace.unwrap_or_else(|| panic!("{}: {:?}", name, r.status));
        validate_trace(&p, &trace).unwrap();
        let text = trace.to_text();
        // The full rule sets also start from the erased theory.
        let erased: String = erase_theory(&p)
            .axioms()
            .iter()
            .enumerate()
            .map(|(k, f)| format!("init f{} h theory {}\n", 1_000_000 + k, term_to_string(&f.normalize())))
            .collect();
        let header = format!("mode {}", RuleMode::NativeOnly.name());
        for mode in ["unstaged", "staged"] {
            let mut relabeled = String::new();
            for (k, line) in text.lines().enumerate() {
                if k == 0 {
                    relabeled.push_str(&line.replacen(&header, &format!("mode {}", mode), 1));
                    relabeled.push('\n');
                    relabeled.push_str(&erased);
                } else {
                    relabeled.push_str(line);
                    relabeled.push('\n');
                }
            }
            validate_trace_text(&p, &relabeled).unwrap_or_else(|e| panic!("{} as {}: {}", name, mode, e));
        }
        // Text round trip.
        assert_eq!(parse_trace(&text).unwrap().steps.len(), text.lines().filter(|l| l.starts_with("step ")).count());
    }
}
