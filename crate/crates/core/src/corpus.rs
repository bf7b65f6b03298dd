//! The list case study: lemmas about `app` and `rev` on length-indexed
//! lists, split into small subproblems, plus the Example-1 typecheck files.
//!
//! Every problem shares one signature. Axioms come from a fixed library in a
//! fixed order, so the TCCs of an axiom can only use the axioms before it.
//! Dependent equations carry the type of their left-hand side.

use crate::prover::{prove, ProveConfig, TypecheckMode};
use crate::tableau::{RuleMode, SearchConfig};
use crate::tptp::{parse_problem, ParseError, SzsStatus};
use crate::problem::Problem;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    AppNil,
    AppAssoc,
    AppAssocM1,
    RevInvolLem,
    RevInvol,
    Typecheck,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::AppNil => "app-nil",
            Group::AppAssoc => "app-assoc",
            Group::AppAssocM1 => "app-assoc-m1",
            Group::RevInvolLem => "rev-invol-lem",
            Group::RevInvol => "rev-invol",
            Group::Typecheck => "typecheck",
        }
    }

    pub const PROVING: [Group; 5] =
        [Group::AppNil, Group::AppAssoc, Group::AppAssocM1, Group::RevInvolLem, Group::RevInvol];
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Group,
    /// Path relative to the corpus root.
    pub file: PathBuf,
    pub expected: SzsStatus,
    pub budget: Duration,
    pub text: String,
}

impl CorpusEntry {
    pub fn problem(&self) -> Result<Problem, ParseError> {
        parse_problem(&self.text, &self.name)
    }
}

const SIGNATURE: &str = "\
thf(nat_type, type, nat: $tType).
thf(zero_decl, type, zero: nat).
thf(s_decl, type, s: nat > nat).
thf(plus_decl, type, plus: nat > nat > nat).
thf(elem_type, type, elem: $tType).
thf(lst_type, type, lst: nat > $tType).
thf(nil_decl, type, nil: lst @ zero).
thf(cons_decl, type, cons: !>[N:nat]: (elem > (lst @ N) > (lst @ (s @ N)))).
thf(app_decl, type, app: !>[N:nat,M:nat]: ((lst @ N) > (lst @ M) > (lst @ (plus @ N @ M)))).
thf(rev_decl, type, rev: !>[N:nat]: ((lst @ N) > (lst @ N))).
";

/// Formula library in dependency order.
const LIBRARY: &[(&str, &str)] = &[
    // Peano
    ("succ_ne_zero", "![N:nat]: ((s @ N) != zero)"),
    ("succ_inj", "![N:nat,M:nat]: (((s @ N) = (s @ M)) => (N = M))"),
    ("nat_ind", "![P:nat > $o]: (((P @ zero) & (![N:nat]: ((P @ N) => (P @ (s @ N))))) => (![N:nat]: (P @ N)))"),
    // addition
    ("plus_zero", "![N:nat]: ((plus @ zero @ N) = N)"),
    ("plus_succ", "![N:nat,M:nat]: ((plus @ (s @ N) @ M) = (s @ (plus @ N @ M)))"),
    ("plus_n_zero", "![N:nat]: ((plus @ N @ zero) = N)"),
    ("plus_n_succ", "![N:nat,M:nat]: ((plus @ N @ (s @ M)) = (s @ (plus @ N @ M)))"),
    ("plus_one", "![N:nat]: ((plus @ N @ (s @ zero)) = (s @ N))"),
    ("plus_assoc", "![N:nat,M:nat,K:nat]: ((plus @ N @ (plus @ M @ K)) = (plus @ (plus @ N @ M) @ K))"),
    ("plus_comm", "![N:nat,M:nat]: ((plus @ N @ M) = (plus @ M @ N))"),
    ("plus_succ_shift", "![N:nat,M:nat]: ((plus @ (s @ N) @ M) = (plus @ N @ (s @ M)))"),
    ("plus_one_assoc", "![N:nat,M:nat]: ((plus @ (plus @ N @ (s @ zero)) @ M) = (plus @ N @ (s @ M)))"),
    // lists
    ("app_nil", "![N:nat,X:lst @ N]: ((app @ zero @ N @ nil @ X) =[lst @ (plus @ zero @ N)] X)"),
    ("app_cons", "![N:nat,M:nat,X:elem,L:lst @ N,K:lst @ M]: ((app @ (s @ N) @ M @ (cons @ N @ X @ L) @ K) =[lst @ (plus @ (s @ N) @ M)] (cons @ (plus @ N @ M) @ X @ (app @ N @ M @ L @ K)))"),
    ("rev_nil", "((rev @ zero @ nil) = nil)"),
    ("rev_cons", "![N:nat,X:elem,L:lst @ N]: ((rev @ (s @ N) @ (cons @ N @ X @ L)) =[lst @ (s @ N)] (app @ N @ (s @ zero) @ (rev @ N @ L) @ (cons @ zero @ X @ nil)))"),
    ("list_ind", "![P:!>[N:nat]: ((lst @ N) > $o)]: (((P @ zero @ nil) & (![N:nat,X:elem,L:lst @ N]: ((P @ N @ L) => (P @ (s @ N) @ (cons @ N @ X @ L))))) => (![N:nat,L:lst @ N]: (P @ N @ L)))"),
    // app-nil
    ("app_nil_base", "((app @ zero @ zero @ nil @ nil) =[lst @ (plus @ zero @ zero)] nil)"),
    ("app_nil_unfold", "![N:nat,X:elem,L:lst @ N]: ((app @ (s @ N) @ zero @ (cons @ N @ X @ L) @ nil) =[lst @ (plus @ (s @ N) @ zero)] (cons @ (plus @ N @ zero) @ X @ (app @ N @ zero @ L @ nil)))"),
    ("app_nil_step", "![N:nat,X:elem,L:lst @ N]: (((app @ N @ zero @ L @ nil) =[lst @ (plus @ N @ zero)] L) => ((app @ (s @ N) @ zero @ (cons @ N @ X @ L) @ nil) =[lst @ (plus @ (s @ N) @ zero)] (cons @ N @ X @ L)))"),
    ("app_nil_r", "![N:nat,L:lst @ N]: ((app @ N @ zero @ L @ nil) =[lst @ (plus @ N @ zero)] L)"),
    // app-assoc
    ("app_assoc_base_lhs", "![M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ zero @ (plus @ M @ K) @ nil @ (app @ M @ K @ Y @ Z)) =[lst @ (plus @ zero @ (plus @ M @ K))] (app @ M @ K @ Y @ Z))"),
    ("app_assoc_base_rhs", "![M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ (plus @ zero @ M) @ K @ (app @ zero @ M @ nil @ Y) @ Z) =[lst @ (plus @ (plus @ zero @ M) @ K)] (app @ M @ K @ Y @ Z))"),
    ("app_assoc_base", "![M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ zero @ (plus @ M @ K) @ nil @ (app @ M @ K @ Y @ Z)) =[lst @ (plus @ zero @ (plus @ M @ K))] (app @ (plus @ zero @ M) @ K @ (app @ zero @ M @ nil @ Y) @ Z))"),
    ("app_assoc_step_lhs", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ (s @ N) @ (plus @ M @ K) @ (cons @ N @ X @ L) @ (app @ M @ K @ Y @ Z)) =[lst @ (plus @ (s @ N) @ (plus @ M @ K))] (cons @ (plus @ N @ (plus @ M @ K)) @ X @ (app @ N @ (plus @ M @ K) @ L @ (app @ M @ K @ Y @ Z))))"),
    ("app_assoc_step_cong", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ (plus @ (s @ N) @ M) @ K @ (app @ (s @ N) @ M @ (cons @ N @ X @ L) @ Y) @ Z) =[lst @ (plus @ (plus @ (s @ N) @ M) @ K)] (app @ (s @ (plus @ N @ M)) @ K @ (cons @ (plus @ N @ M) @ X @ (app @ N @ M @ L @ Y)) @ Z))"),
    ("app_assoc_step_rhs", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ (s @ (plus @ N @ M)) @ K @ (cons @ (plus @ N @ M) @ X @ (app @ N @ M @ L @ Y)) @ Z) =[lst @ (plus @ (s @ (plus @ N @ M)) @ K)] (cons @ (plus @ (plus @ N @ M) @ K) @ X @ (app @ (plus @ N @ M) @ K @ (app @ N @ M @ L @ Y) @ Z)))"),
    ("app_assoc_step", "![N:nat,X:elem,L:lst @ N]: ((![M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ N @ (plus @ M @ K) @ L @ (app @ M @ K @ Y @ Z)) =[lst @ (plus @ N @ (plus @ M @ K))] (app @ (plus @ N @ M) @ K @ (app @ N @ M @ L @ Y) @ Z))) => (![M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ (s @ N) @ (plus @ M @ K) @ (cons @ N @ X @ L) @ (app @ M @ K @ Y @ Z)) =[lst @ (plus @ (s @ N) @ (plus @ M @ K))] (app @ (plus @ (s @ N) @ M) @ K @ (app @ (s @ N) @ M @ (cons @ N @ X @ L) @ Y) @ Z))))"),
    ("app_assoc", "![N:nat,L:lst @ N,M:nat,Y:lst @ M,K:nat,Z:lst @ K]: ((app @ N @ (plus @ M @ K) @ L @ (app @ M @ K @ Y @ Z)) =[lst @ (plus @ N @ (plus @ M @ K))] (app @ (plus @ N @ M) @ K @ (app @ N @ M @ L @ Y) @ Z))"),
    // app-assoc-m1
    ("cons_one_unfold", "![M:nat,Y:elem,Z:lst @ M]: ((app @ (s @ zero) @ M @ (cons @ zero @ Y @ nil) @ Z) =[lst @ (plus @ (s @ zero) @ M)] (cons @ (plus @ zero @ M) @ Y @ (app @ zero @ M @ nil @ Z)))"),
    ("cons_one", "![M:nat,Y:elem,Z:lst @ M]: ((app @ (s @ zero) @ M @ (cons @ zero @ Y @ nil) @ Z) =[lst @ (plus @ (s @ zero) @ M)] (cons @ M @ Y @ Z))"),
    ("app_assoc_one", "![N:nat,L:lst @ N,Y:elem,M:nat,Z:lst @ M]: ((app @ N @ (plus @ (s @ zero) @ M) @ L @ (app @ (s @ zero) @ M @ (cons @ zero @ Y @ nil) @ Z)) =[lst @ (plus @ N @ (plus @ (s @ zero) @ M))] (app @ N @ (s @ M) @ L @ (cons @ M @ Y @ Z)))"),
    ("app_assoc_inst", "![N:nat,L:lst @ N,Y:elem,M:nat,Z:lst @ M]: ((app @ N @ (plus @ (s @ zero) @ M) @ L @ (app @ (s @ zero) @ M @ (cons @ zero @ Y @ nil) @ Z)) =[lst @ (plus @ N @ (plus @ (s @ zero) @ M))] (app @ (plus @ N @ (s @ zero)) @ M @ (app @ N @ (s @ zero) @ L @ (cons @ zero @ Y @ nil)) @ Z))"),
    ("app_assoc_m1", "![N:nat,L:lst @ N,Y:elem,M:nat,Z:lst @ M]: ((app @ (plus @ N @ (s @ zero)) @ M @ (app @ N @ (s @ zero) @ L @ (cons @ zero @ Y @ nil)) @ Z) =[lst @ (plus @ (plus @ N @ (s @ zero)) @ M)] (app @ N @ (s @ M) @ L @ (cons @ M @ Y @ Z)))"),
    // rev-invol-lem
    ("rev_base_inner", "![M:nat,Y:lst @ M]: ((app @ zero @ M @ (rev @ zero @ nil) @ Y) =[lst @ (plus @ zero @ M)] Y)"),
    ("rev_base_lhs", "![M:nat,Y:lst @ M]: ((rev @ (plus @ zero @ M) @ (app @ zero @ M @ (rev @ zero @ nil) @ Y)) =[lst @ (plus @ zero @ M)] (rev @ M @ Y))"),
    ("rev_base_rhs", "![M:nat,Y:lst @ M]: ((app @ M @ zero @ (rev @ M @ Y) @ nil) =[lst @ (plus @ M @ zero)] (rev @ M @ Y))"),
    ("rev_lem_base", "![M:nat,Y:lst @ M]: ((rev @ (plus @ zero @ M) @ (app @ zero @ M @ (rev @ zero @ nil) @ Y)) =[lst @ (plus @ zero @ M)] (app @ M @ zero @ (rev @ M @ Y) @ nil))"),
    ("rev_step_unfold", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: ((app @ (s @ N) @ M @ (rev @ (s @ N) @ (cons @ N @ X @ L)) @ Y) =[lst @ (plus @ (s @ N) @ M)] (app @ (plus @ N @ (s @ zero)) @ M @ (app @ N @ (s @ zero) @ (rev @ N @ L) @ (cons @ zero @ X @ nil)) @ Y))"),
    ("rev_step_m1", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: ((app @ (plus @ N @ (s @ zero)) @ M @ (app @ N @ (s @ zero) @ (rev @ N @ L) @ (cons @ zero @ X @ nil)) @ Y) =[lst @ (plus @ (plus @ N @ (s @ zero)) @ M)] (app @ N @ (s @ M) @ (rev @ N @ L) @ (cons @ M @ X @ Y)))"),
    ("rev_step_inner", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: ((app @ (s @ N) @ M @ (rev @ (s @ N) @ (cons @ N @ X @ L)) @ Y) =[lst @ (plus @ (s @ N) @ M)] (app @ N @ (s @ M) @ (rev @ N @ L) @ (cons @ M @ X @ Y)))"),
    ("rev_step_lhs", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: ((rev @ (plus @ (s @ N) @ M) @ (app @ (s @ N) @ M @ (rev @ (s @ N) @ (cons @ N @ X @ L)) @ Y)) =[lst @ (plus @ (s @ N) @ M)] (rev @ (plus @ N @ (s @ M)) @ (app @ N @ (s @ M) @ (rev @ N @ L) @ (cons @ M @ X @ Y))))"),
    ("rev_step_rhs_unfold", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: ((app @ (s @ M) @ N @ (rev @ (s @ M) @ (cons @ M @ X @ Y)) @ L) =[lst @ (plus @ (s @ M) @ N)] (app @ (plus @ M @ (s @ zero)) @ N @ (app @ M @ (s @ zero) @ (rev @ M @ Y) @ (cons @ zero @ X @ nil)) @ L))"),
    ("rev_step_rhs_m1", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: ((app @ (plus @ M @ (s @ zero)) @ N @ (app @ M @ (s @ zero) @ (rev @ M @ Y) @ (cons @ zero @ X @ nil)) @ L) =[lst @ (plus @ (plus @ M @ (s @ zero)) @ N)] (app @ M @ (s @ N) @ (rev @ M @ Y) @ (cons @ N @ X @ L)))"),
    ("rev_step_mid", "![N:nat,X:elem,L:lst @ N,M:nat,Y:lst @ M]: (((rev @ (plus @ N @ (s @ M)) @ (app @ N @ (s @ M) @ (rev @ N @ L) @ (cons @ M @ X @ Y))) =[lst @ (plus @ N @ (s @ M))] (app @ (s @ M) @ N @ (rev @ (s @ M) @ (cons @ M @ X @ Y)) @ L)) => ((rev @ (plus @ (s @ N) @ M) @ (app @ (s @ N) @ M @ (rev @ (s @ N) @ (cons @ N @ X @ L)) @ Y)) =[lst @ (plus @ (s @ N) @ M)] (app @ M @ (s @ N) @ (rev @ M @ Y) @ (cons @ N @ X @ L))))"),
    ("rev_lem_step", "![N:nat,X:elem,L:lst @ N]: ((![M:nat,Y:lst @ M]: ((rev @ (plus @ N @ M) @ (app @ N @ M @ (rev @ N @ L) @ Y)) =[lst @ (plus @ N @ M)] (app @ M @ N @ (rev @ M @ Y) @ L))) => (![M:nat,Y:lst @ M]: ((rev @ (plus @ (s @ N) @ M) @ (app @ (s @ N) @ M @ (rev @ (s @ N) @ (cons @ N @ X @ L)) @ Y)) =[lst @ (plus @ (s @ N) @ M)] (app @ M @ (s @ N) @ (rev @ M @ Y) @ (cons @ N @ X @ L)))))"),
    ("rev_invol_lem", "![N:nat,L:lst @ N,M:nat,Y:lst @ M]: ((rev @ (plus @ N @ M) @ (app @ N @ M @ (rev @ N @ L) @ Y)) =[lst @ (plus @ N @ M)] (app @ M @ N @ (rev @ M @ Y) @ L))"),
    // rev-invol
    ("rev_invol_inst", "![N:nat,L:lst @ N]: ((rev @ (plus @ N @ zero) @ (app @ N @ zero @ (rev @ N @ L) @ nil)) =[lst @ (plus @ N @ zero)] (app @ zero @ N @ (rev @ zero @ nil) @ L))"),
    ("rev_invol_lhs", "![N:nat,L:lst @ N]: ((rev @ (plus @ N @ zero) @ (app @ N @ zero @ (rev @ N @ L) @ nil)) =[lst @ (plus @ N @ zero)] (rev @ N @ (rev @ N @ L)))"),
    ("rev_invol_rhs", "![N:nat,L:lst @ N]: ((app @ zero @ N @ (rev @ zero @ nil) @ L) =[lst @ (plus @ zero @ N)] L)"),
    ("rev_invol_chain", "![N:nat,L:lst @ N]: ((rev @ (plus @ N @ zero) @ (app @ N @ zero @ (rev @ N @ L) @ nil)) =[lst @ (plus @ N @ zero)] L)"),
    ("rev_invol", "![N:nat,L:lst @ N]: ((rev @ N @ (rev @ N @ L)) = L)"),
];

struct Recipe {
    name: &'static str,
    group: Group,
    axioms: &'static [&'static str],
    /// Library entry used as conjecture.
    goal: &'static str,
}

const RECIPES: &[Recipe] = &[
    // app-nil
    Recipe { name: "app_nil_base", group: Group::AppNil, axioms: &["plus_zero", "app_nil"], goal: "app_nil_base" },
    Recipe { name: "app_nil_unfold", group: Group::AppNil, axioms: &["plus_succ", "app_cons"], goal: "app_nil_unfold" },
    Recipe { name: "app_nil_step", group: Group::AppNil, axioms: &["plus_succ", "plus_n_zero", "app_nil_unfold"], goal: "app_nil_step" },
    Recipe { name: "app_nil_ind", group: Group::AppNil, axioms: &["plus_zero", "plus_succ", "plus_n_zero", "list_ind", "app_nil_base", "app_nil_step"], goal: "app_nil_r" },
    // app-assoc
    Recipe { name: "app_assoc_base_lhs", group: Group::AppAssoc, axioms: &["plus_zero", "app_nil"], goal: "app_assoc_base_lhs" },
    Recipe { name: "app_assoc_base_rhs", group: Group::AppAssoc, axioms: &["plus_zero", "app_nil"], goal: "app_assoc_base_rhs" },
    Recipe { name: "app_assoc_base", group: Group::AppAssoc, axioms: &["plus_zero", "app_assoc_base_lhs", "app_assoc_base_rhs"], goal: "app_assoc_base" },
    Recipe { name: "app_assoc_step_lhs", group: Group::AppAssoc, axioms: &["plus_succ", "app_cons"], goal: "app_assoc_step_lhs" },
    Recipe { name: "app_assoc_step_cong", group: Group::AppAssoc, axioms: &["plus_succ", "app_cons"], goal: "app_assoc_step_cong" },
    Recipe { name: "app_assoc_step_rhs", group: Group::AppAssoc, axioms: &["plus_succ", "app_cons"], goal: "app_assoc_step_rhs" },
    Recipe { name: "app_assoc_step", group: Group::AppAssoc, axioms: &["plus_succ", "plus_assoc", "app_assoc_step_lhs", "app_assoc_step_cong", "app_assoc_step_rhs"], goal: "app_assoc_step" },
    Recipe { name: "app_assoc_ind", group: Group::AppAssoc, axioms: &["plus_zero", "plus_succ", "plus_assoc", "list_ind", "app_assoc_base", "app_assoc_step"], goal: "app_assoc" },
    // app-assoc-m1
    Recipe { name: "cons_one_unfold", group: Group::AppAssocM1, axioms: &["plus_succ", "app_cons"], goal: "cons_one_unfold" },
    Recipe { name: "cons_one", group: Group::AppAssocM1, axioms: &["plus_zero", "plus_succ", "app_nil", "cons_one_unfold"], goal: "cons_one" },
    Recipe { name: "app_assoc_one", group: Group::AppAssocM1, axioms: &["plus_zero", "plus_succ", "cons_one"], goal: "app_assoc_one" },
    Recipe { name: "app_assoc_inst", group: Group::AppAssocM1, axioms: &["plus_assoc", "app_assoc"], goal: "app_assoc_inst" },
    Recipe { name: "app_assoc_m1", group: Group::AppAssocM1, axioms: &["plus_zero", "plus_succ", "plus_assoc", "plus_one_assoc", "app_assoc_inst", "app_assoc_one"], goal: "app_assoc_m1" },
    // rev-invol-lem
    Recipe { name: "rev_base_inner", group: Group::RevInvolLem, axioms: &["plus_zero", "app_nil", "rev_nil"], goal: "rev_base_inner" },
    Recipe { name: "rev_base_lhs", group: Group::RevInvolLem, axioms: &["plus_zero", "rev_base_inner"], goal: "rev_base_lhs" },
    Recipe { name: "rev_base_rhs", group: Group::RevInvolLem, axioms: &["plus_n_zero", "app_nil_r"], goal: "rev_base_rhs" },
    Recipe { name: "rev_lem_base", group: Group::RevInvolLem, axioms: &["plus_zero", "plus_n_zero", "plus_comm", "rev_base_lhs", "rev_base_rhs"], goal: "rev_lem_base" },
    Recipe { name: "rev_step_unfold", group: Group::RevInvolLem, axioms: &["plus_one", "rev_cons"], goal: "rev_step_unfold" },
    Recipe { name: "rev_step_inner", group: Group::RevInvolLem, axioms: &["plus_one", "plus_succ_shift", "plus_one_assoc", "app_assoc_m1", "rev_step_unfold"], goal: "rev_step_inner" },
    Recipe { name: "rev_step_lhs", group: Group::RevInvolLem, axioms: &["plus_succ_shift", "rev_step_inner"], goal: "rev_step_lhs" },
    Recipe { name: "rev_step_rhs_unfold", group: Group::RevInvolLem, axioms: &["plus_one", "rev_cons"], goal: "rev_step_rhs_unfold" },
    Recipe { name: "rev_step_rhs_m1", group: Group::RevInvolLem, axioms: &["plus_one_assoc", "app_assoc_m1"], goal: "rev_step_rhs_m1" },
    Recipe { name: "rev_step_mid", group: Group::RevInvolLem, axioms: &["plus_one", "plus_comm", "plus_succ_shift", "plus_one_assoc", "rev_step_lhs", "rev_step_rhs_unfold", "rev_step_rhs_m1"], goal: "rev_step_mid" },
    Recipe { name: "rev_lem_step", group: Group::RevInvolLem, axioms: &["plus_comm", "rev_step_mid"], goal: "rev_lem_step" },
    Recipe { name: "rev_lem_ind", group: Group::RevInvolLem, axioms: &["plus_zero", "plus_succ", "plus_comm", "list_ind", "rev_lem_base", "rev_lem_step"], goal: "rev_invol_lem" },
    // rev-invol
    Recipe { name: "rev_invol_inst", group: Group::RevInvol, axioms: &["plus_n_zero", "plus_comm", "rev_invol_lem"], goal: "rev_invol_inst" },
    Recipe { name: "rev_invol_lhs", group: Group::RevInvol, axioms: &["plus_n_zero", "app_nil_r"], goal: "rev_invol_lhs" },
    Recipe { name: "rev_invol_rhs", group: Group::RevInvol, axioms: &["plus_zero", "app_nil", "rev_nil"], goal: "rev_invol_rhs" },
    Recipe { name: "rev_invol_chain", group: Group::RevInvol, axioms: &["plus_zero", "plus_n_zero", "rev_invol_inst", "rev_invol_rhs"], goal: "rev_invol_chain" },
    Recipe { name: "rev_invol", group: Group::RevInvol, axioms: &["plus_n_zero", "rev_invol_lhs", "rev_invol_chain"], goal: "rev_invol" },
];

const EX1_AXIOMS: &str = "\
thf(app_nil, axiom, ![N:nat,X:lst @ N]: ((app @ zero @ N @ nil @ X) = X)).
thf(app_cons, axiom, ![N:nat,M:nat,X:elem,L:lst @ N,K:lst @ M]: ((app @ (s @ N) @ M @ (cons @ N @ X @ L) @ K) = (cons @ (plus @ N @ M) @ X @ (app @ N @ M @ L @ K)))).
";

const EX1_PLUS: &str = "\
thf(plus_zero, axiom, ![N:nat]: ((plus @ zero @ N) = N)).
thf(plus_succ, axiom, ![N:nat,M:nat]: ((plus @ (s @ N) @ M) = (s @ (plus @ N @ M)))).
";

fn library(name: &str) -> &'static str {
    LIBRARY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
        .unwrap_or_else(|| panic!("no library formula {}", name))
}

fn library_index(name: &str) -> usize {
    LIBRARY.iter().position(|(n, _)| *n == name).unwrap_or_else(|| panic!("no library formula {}", name))
}

fn signature_for(group: Group) -> String {
    // The app groups do not mention rev.
    match group {
        Group::RevInvolLem | Group::RevInvol => SIGNATURE.to_string(),
        _ => SIGNATURE.lines().filter(|l| !l.starts_with("thf(rev_decl")).map(|l| format!("{}\n", l)).collect(),
    }
}

fn render(recipe: &Recipe) -> String {
    let mut axioms: Vec<&str> = recipe.axioms.to_vec();
    axioms.sort_by_key(|a| library_index(a));
    let mut out = String::new();
    let _ = writeln!(out, "% {} ({})", recipe.name, recipe.group.name());
    out.push_str(&signature_for(recipe.group));
    for a in axioms {
        let _ = writeln!(out, "thf({}, axiom, {}).", a, library(a));
    }
    let _ = writeln!(out, "thf({}, conjecture, {}).", recipe.name, library(recipe.goal));
    out
}

fn typecheck_entries() -> Vec<(&'static str, String)> {
    let sig = signature_for(Group::AppNil);
    vec![
        ("ex1", format!("% ex1 (typecheck)\n{}{}{}", sig, EX1_PLUS, EX1_AXIOMS)),
        (
            "ex1_conj",
            format!(
                "% ex1_conj (typecheck)\n{}{}{}thf(ex1_conj, conjecture, ![N:nat,X:lst @ N]: ((N = zero) => ((app @ N @ N @ X @ X) = X))).\n",
                sig, EX1_PLUS, EX1_AXIOMS
            ),
        ),
        (
            "guard_left",
            format!(
                "% guard_left (typecheck)\n{}thf(guard_left, conjecture, ![N:nat,M:nat,X:lst @ N,Y:lst @ M]: ((M != N) | (X = Y))).\n",
                sig
            ),
        ),
    ]
}

/// Every corpus entry: 34 proving problems, then the typecheck files.
pub fn build_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = RECIPES
        .iter()
        .map(|s| CorpusEntry {
            name: s.name.to_string(),
            group: s.group,
            file: PathBuf::from(s.group.name()).join(format!("{}.p", s.name)),
            expected: SzsStatus::Theorem,
            budget: Duration::from_secs(60),
            text: render(s),
        })
        .collect();
    for (name, text) in typecheck_entries() {
        out.push(CorpusEntry {
            name: name.to_string(),
            group: Group::Typecheck,
            file: PathBuf::from("typecheck").join(format!("{}.p", name)),
            expected: SzsStatus::TypeCheck,
            budget: Duration::from_secs(60),
            text,
        });
    }
    out
}

/// Directory holding the frozen corpus files.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteMode {
    /// Prove every Theorem entry under the given rules.
    Prove(RuleMode),
    /// Exact type checking of every entry.
    Typecheck,
}

impl SuiteMode {
    pub fn label(self) -> &'static str {
        match self {
            SuiteMode::Prove(m) => m.name(),
            SuiteMode::Typecheck => "typecheck",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub name: String,
    pub group: Group,
    pub mode: SuiteMode,
    pub status: SzsStatus,
    pub expected: SzsStatus,
    pub seconds: f64,
    pub steps: usize,
}

impl SuiteRow {
    pub fn passed(&self) -> bool {
        self.status == self.expected
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn solved(&self, mode: SuiteMode) -> usize {
        self.rows.iter().filter(|r| r.mode == mode && r.passed()).count()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("name,group,mode,status,seconds,steps\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{:.3},{}", r.name, r.group.name(), r.mode.label(), r.status, r.seconds, r.steps);
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<22} {:<14} {:<13} {:<17} {:>8} {:>9}\n", "name", "group", "mode", "status", "seconds", "steps");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<22} {:<14} {:<13} {:<17} {:>8.3} {:>9}",
                r.name, r.group.name(), r.mode.label(), r.status.to_string(), r.seconds, r.steps
            );
        }
        out
    }
}

/// Runs `entries` under `mode`. Typecheck entries are skipped in prove
/// modes; in typecheck mode every entry is checked.
pub fn run_entry(entry: &CorpusEntry, mode: SuiteMode, budget: Duration) -> SuiteRow {
    let problem = entry.problem();
    let (typecheck, rules, expected) = match mode {
        SuiteMode::Prove(m) => (TypecheckMode::Skeleton, m, entry.expected),
        SuiteMode::Typecheck => (TypecheckMode::ExactOnly, RuleMode::NativeOnly, SzsStatus::TypeCheck),
    };
    let (status, seconds, steps) = match problem {
        Err(_) => (SzsStatus::SyntaxError, 0.0, 0),
        Ok(p) => {
            let cfg = ProveConfig {
                search: SearchConfig { mode: rules, timeout: budget, subterms: true },
                typecheck,
                tcc_timeout: None,
            };
            let r = prove(&p, &cfg);
            (r.status, r.elapsed.as_secs_f64(), r.steps)
        }
    };
    SuiteRow { name: entry.name.clone(), group: entry.group, mode, status, expected, seconds, steps }
}

pub fn run_suite(entries: &[CorpusEntry], modes: &[SuiteMode], budget: Option<Duration>) -> SuiteReport {
    run_suite_with(entries, modes, budget, |_| {})
}

/// Like [`run_suite`], calling `progress` after each entry.
pub fn run_suite_with(
    entries: &[CorpusEntry],
    modes: &[SuiteMode],
    budget: Option<Duration>,
    mut progress: impl FnMut(&SuiteRow),
) -> SuiteReport {
    let mut rows = Vec::new();
    for &mode in modes {
        for e in entries {
            if matches!(mode, SuiteMode::Prove(_)) && e.expected != SzsStatus::Theorem {
                continue;
            }
            let row = run_entry(e, mode, budget.unwrap_or(e.budget));
            progress(&row);
            rows.push(row);
        }
    }
    SuiteReport { rows }
}
