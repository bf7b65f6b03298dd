//! Problem fixtures and helpers shared by the integration tests.
#![allow(dead_code)]

pub mod gen;

use dholt_core::problem::Problem;
use dholt_core::prover::{prove, ProveConfig, ProveResult, TypecheckMode};
use dholt_core::tableau::{RuleMode, SearchConfig};
use dholt_core::tptp::parse_problem;
use std::time::Duration;

pub const ALL_MODES: [RuleMode; 4] = [RuleMode::NativeOnly, RuleMode::ErasureOnly, RuleMode::Staged, RuleMode::Unstaged];

pub fn problem(name: &str, src: &str) -> Problem {
    parse_problem(src, name).unwrap_or_else(|e| panic!("{}: {}", name, e))
}

pub fn run(p: &Problem, mode: RuleMode, secs: u64) -> ProveResult {
    let cfg = ProveConfig {
        search: SearchConfig { mode, timeout: Duration::from_secs(secs), subterms: true },
        typecheck: TypecheckMode::Skeleton,
        tcc_timeout: None,
    };
    prove(p, &cfg)
}

const PROP: &str = "thf(p_decl, type, p: $o).
thf(q_decl, type, q: $o).
thf(r_decl, type, r: $o).
";

const IND: &str = "thf(i_type, type, i: $tType).
thf(a_decl, type, a: i).
thf(b_decl, type, b: i).
thf(f_decl, type, f: i > i).
thf(g_decl, type, g: i > $o).
";

/// Simply typed theorems: propositional tautologies and extensionality exercises.
pub fn hol_problems() -> Vec<(&'static str, String)> {
    let prop = |c: &str| format!("{}thf(c, conjecture, {}).\n", PROP, c);
    let ind = |c: &str| format!("{}thf(c, conjecture, {}).\n", IND, c);
    vec![
        ("excluded_middle", prop("p | ~ p")),
        ("peirce", prop("((p => q) => p) => p")),
        ("double_negation", prop("(~ (~ p)) => p")),
        ("contraposition", prop("(p => q) => ((~ q) => (~ p))")),
        ("de_morgan", prop("(~ (p & q)) <=> ((~ p) | (~ q))")),
        ("and_comm", prop("(p & q) => (q & p)")),
        ("distribution", prop("(p & (q | r)) => ((p & q) | (p & r))")),
        ("syllogism", prop("((p => q) & (q => r)) => (p => r)")),
        ("bool_ext", prop("![P:$o,Q:$o]: ((P <=> Q) => (P = Q))")),
        ("bool_eq_iff", prop("(p = q) => (p <=> q)")),
        ("bool_cases", format!("{}thf(h_decl, type, h: $o > $o).\nthf(c, conjecture, ((h @ $true) & (h @ $false)) => (h @ p)).\n", PROP)),
        ("func_ext", ind("![F:i>i,G:i>i]: ((![X:i]: ((F @ X) = (G @ X))) => (F = G))")),
        ("pred_ext", ind("![P:i>$o,Q:i>$o]: ((![X:i]: ((P @ X) <=> (Q @ X))) => (P = Q))")),
        ("beta", ind("((^[X:i]: (f @ X)) @ a) = (f @ a)")),
        ("eta", ind("![F:i>i]: (F = (^[X:i]: (F @ X)))")),
        ("congruence", ind("![X:i,Y:i]: ((X = Y) => ((f @ X) = (f @ Y)))")),
        ("eq_trans", ind("![X:i,Y:i,Z:i]: (((X = Y) & (Y = Z)) => (X = Z))")),
        ("exists_intro", ind("(g @ a) => (?[X:i]: (g @ X))")),
        ("comprehension", ind("?[P:i>$o]: (![X:i]: ((P @ X) <=> (g @ X)))")),
        ("fixpoint_twice", ind("(![X:i]: ((f @ X) = X)) => ((f @ (f @ a)) = a)")),
    ]
}

/// Problems with a model in which the conjecture fails (or no conjecture at all).
pub fn satisfiable_problems() -> Vec<(&'static str, String)> {
    let nat = "thf(nat_type, type, nat: $tType).
thf(zero_decl, type, zero: nat).
thf(s_decl, type, s: nat > nat).
thf(plus_decl, type, plus: nat > nat > nat).
";
    vec![
        ("atom", format!("{}thf(ax, axiom, p).\n", PROP)),
        ("implication", format!("{}thf(ax, axiom, p => q).\n", PROP)),
        ("converse", format!("{}thf(ax, axiom, p => q).\nthf(c, conjecture, q => p).\n", PROP)),
        ("not_middle", format!("{}thf(c, conjecture, p & (~ p)).\n", PROP)),
        ("distinct_ind", format!("{}thf(c, conjecture, a = b).\n", IND)),
        ("func_not_const", format!("{}thf(c, conjecture, ![X:i]: ((f @ X) = a)).\n", IND)),
        ("pred_some", format!("{}thf(c, conjecture, ![X:i]: (g @ X)).\n", IND)),
        (
            "nonstandard_plus",
            format!("{}thf(plus_zero, axiom, ![N:nat]: ((plus @ zero @ N) = N)).\nthf(plus_succ, axiom, ![N:nat,M:nat]: ((plus @ (s @ N) @ M) = (s @ (plus @ N @ M)))).\nthf(c, conjecture, ![N:nat]: ((plus @ N @ zero) = N)).\n", nat),
        ),
        ("succ_fixpoint", format!("{}thf(c, conjecture, ?[N:nat]: ((s @ N) = N)).\n", nat)),
        (
            "dependent_lists",
            format!(
                "{}thf(elem_type, type, elem: $tType).\nthf(lst_type, type, lst: nat > $tType).\nthf(nil_decl, type, nil: lst @ zero).\nthf(c, conjecture, ![X:lst @ zero]: (X = nil)).\n",
                nat
            ),
        ),
    ]
}

pub const LIST_SIG: &str = "thf(nat_type, type, nat: $tType).
thf(zero_decl, type, zero: nat).
thf(s_decl, type, s: nat > nat).
thf(plus_decl, type, plus: nat > nat > nat).
thf(elem_type, type, elem: $tType).
thf(lst_type, type, lst: nat > $tType).
thf(nil_decl, type, nil: lst @ zero).
thf(cons_decl, type, cons: !>[N:nat]: (elem > (lst @ N) > (lst @ (s @ N)))).
thf(app_decl, type, app: !>[N:nat,M:nat]: ((lst @ N) > (lst @ M) > (lst @ (plus @ N @ M)))).
";

const PLUS_ZERO: &str = "thf(plus_zero, axiom, ![N:nat]: ((plus @ zero @ N) = N)).\n";
const PLUS_SUCC: &str = "thf(plus_succ, axiom, ![N:nat,M:nat]: ((plus @ (s @ N) @ M) = (s @ (plus @ N @ M)))).\n";
const APP_NIL: &str = "thf(app_nil, axiom, ![N:nat,X:lst @ N]: ((app @ zero @ N @ nil @ X) = X)).\n";

/// Small theorems over dependent lists.
pub fn dhol_small() -> Vec<(&'static str, String)> {
    let with = |axs: &[&str], c: &str| format!("{}{}thf(c, conjecture, {}).\n", LIST_SIG, axs.concat(), c);
    vec![
        ("app_nil_nil", with(&[PLUS_ZERO, APP_NIL], "(app @ zero @ zero @ nil @ nil) = nil")),
        ("app_nil_again", with(&[PLUS_ZERO, APP_NIL], "![N:nat,X:lst @ N]: ((app @ zero @ N @ nil @ X) = X)")),
        ("list_eq_sym", with(&[], "![N:nat,L:lst @ N,K:lst @ N]: ((L = K) => (K = L))")),
        ("list_eq_trans", with(&[], "![N:nat,L:lst @ N,K:lst @ N,J:lst @ N]: (((L = K) & (K = J)) => (L = J))")),
        ("nat_eq_sym", with(&[], "![N:nat,M:nat]: ((N = M) => (M = N))")),
        ("cons_cong", with(&[], "![N:nat,X:elem,L:lst @ N,K:lst @ N]: ((L = K) => ((cons @ N @ X @ L) = (cons @ N @ X @ K)))")),
        ("plus_one_zero", with(&[PLUS_ZERO, PLUS_SUCC], "(plus @ (s @ zero) @ zero) = (s @ zero)")),
        ("app_nil_cong", with(&[PLUS_ZERO, APP_NIL], "![N:nat,L:lst @ N,K:lst @ N]: ((L = K) => ((app @ zero @ N @ nil @ L) = K))")),
        ("plus_two_zero", with(&[PLUS_ZERO, PLUS_SUCC], "(plus @ (s @ (s @ zero)) @ zero) = (s @ (s @ zero))")),
        ("exists_nil", with(&[PLUS_ZERO, APP_NIL], "?[L:lst @ zero]: ((app @ zero @ zero @ L @ L) = nil)")),
    ]
}
