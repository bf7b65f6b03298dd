use dholt_core::corpus::corpus_dir;
use dholt_core::tableau::validate_trace_text;
use dholt_core::tptp::{parse_problem, parse_szs_line, SzsStatus};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dholt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dholt")).args(args).output().unwrap()
}

fn corpus(file: &str) -> String {
    corpus_dir().join(file).to_string_lossy().into_owned()
}

/// The single SZS line on stdout.
fn status(out: &Output) -> SzsStatus {
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<_> = stdout.lines().filter_map(parse_szs_line).collect();
    assert_eq!(lines.len(), 1, "stdout: {}", stdout);
    lines[0].0
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dholt-cli-{}-{}", std::process::id(), name));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn theorem_exits_zero() {
    let out = dholt(&[&corpus("app-nil/app_nil_base.p")]);
    assert_eq!(status(&out), SzsStatus::Theorem);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8_lossy(&out.stdout).lines().next().unwrap().to_string();
    assert_eq!(line, "% SZS status Theorem for app_nil_base");
}

#[test]
fn countersatisfiable_exits_one() {
    let dir = scratch("sat");
    let f = write(&dir, "sat.p", "thf(p_decl, type, p: $o).\nthf(q_decl, type, q: $o).\nthf(c, conjecture, p => q).\n");
    let out = dholt(&[&f, "-t", "2"]);
    assert_eq!(status(&out), SzsStatus::GaveUp);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn syntax_errors_exit_two() {
    let dir = scratch("syntax");
    let f = write(&dir, "bad.p", "thf(p_decl, type, p: $o).\nthf(c, conjecture, (p => ).\n");
    let out = dholt(&[&f]);
    assert_eq!(status(&out), SzsStatus::SyntaxError);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn type_errors_are_reported() {
    let dir = scratch("type");
    let f = write(&dir, "bad.p", "thf(i_type, type, i: $tType).\nthf(a_decl, type, a: i).\nthf(c, conjecture, a).\n");
    let out = dholt(&[&f]);
    assert_eq!(status(&out), SzsStatus::TypeError);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn typecheck_flags() {
    let ex1 = corpus("typecheck/ex1.p");
    assert_eq!(status(&dholt(&[&ex1, "--typecheck-only"])), SzsStatus::TypeCheck);
    assert_eq!(status(&dholt(&[&ex1, "--typecheck-skeleton"])), SzsStatus::InexactTypecheck);
    let base = corpus("app-nil/app_nil_base.p");
    assert_eq!(status(&dholt(&[&base, "--typecheck-exact"])), SzsStatus::Theorem);

    let dir = scratch("guard");
    let f = write(
        &dir,
        "right.p",
        "thf(nat_type, type, nat: $tType).\nthf(lst_type, type, lst: nat > $tType).\nthf(c, conjecture, ![N:nat,M:nat,X:lst @ N,Y:lst @ M]: ((X = Y) | (M != N))).\n",
    );
    let out = dholt(&[&f, "--typecheck-only", "--tcc-timeout", "1"]);
    assert!(matches!(status(&out), SzsStatus::Timeout | SzsStatus::GaveUp));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rule_sets_and_pool_flag() {
    let f = corpus("app-nil/app_nil_base.p");
    for rules in ["native-only", "erasure-only", "staged", "unstaged"] {
        let out = dholt(&[&f, "--rules", rules, "-t", "30"]);
        assert_eq!(status(&out), SzsStatus::Theorem, "{}", rules);
    }
    assert_eq!(status(&dholt(&[&f, "--no-subterm-instantiations"])), SzsStatus::Theorem);
}

#[test]
fn bad_arguments_exit_two() {
    let f = corpus("app-nil/app_nil_base.p");
    assert_eq!(dholt(&[&f, "--rules", "everything"]).status.code(), Some(2));
    assert_eq!(dholt(&[&f, "--typecheck-only", "--typecheck-exact"]).status.code(), Some(2));
    assert_eq!(dholt(&[&f, "-t", "0"]).status.code(), Some(2));
    assert_eq!(dholt(&["/nonexistent/problem.p"]).status.code(), Some(2));
}

#[test]
fn translate_prints_the_erased_problem() {
    let f = corpus("typecheck/ex1.p");
    let out = dholt(&[&f, "--translate"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(status(&out), SzsStatus::Success);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("lst_star"));
    let body: String = text.lines().filter(|l| parse_szs_line(l).is_none()).map(|l| format!("{}\n", l)).collect();
    let hol = parse_problem(&body, "erased").unwrap();
    assert!(hol.signature().base_types().all(|(_, k)| dholt_core::typing::telescope_len(k) == 0));
}

#[test]
fn traces_and_tccs_are_written() {
    let dir = scratch("out");
    let trace = dir.join("run.trace");
    let f = corpus("app-nil/app_nil_step.p");
    let out = dholt(&[&f, "--trace", trace.to_str().unwrap(), "--export-tccs", dir.to_str().unwrap()]);
    assert_eq!(status(&out), SzsStatus::Theorem);
    let text = std::fs::read_to_string(&trace).unwrap();
    let src = std::fs::read_to_string(&f).unwrap();
    validate_trace_text(&parse_problem(&src, "app_nil_step").unwrap(), &text).unwrap();
    let tccs: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".p"))
        .collect();
    assert!(!tccs.is_empty());
    for e in tccs {
        let text = std::fs::read_to_string(e.path()).unwrap();
        parse_problem(&text, "tcc").unwrap();
    }
}

#[test]
fn in_process_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dholt_core::cli::run(["dholt", &corpus("app-nil/app_nil_base.p")], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "% SZS status Theorem for app_nil_base\n");
}

#[test]
fn corpus_runner_filters_and_reports() {
    let out = Command::new(env!("CARGO_BIN_EXE_dholt-corpus"))
        .args(["--filter", "app_nil_base", "--mode", "native-only", "--mode", "typecheck", "-t", "30"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("app_nil_base"));
    assert!(stdout.contains("native-only: 1/1"));
}
