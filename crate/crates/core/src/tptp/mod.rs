//! THF reading and writing, plus SZS status lines.

mod lexer;
mod parser;
mod printer;

pub use parser::{parse_formula, parse_problem, parse_type};
pub use printer::{decl_to_string, kind_to_string, problem_to_string, term_to_string, type_to_string};

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown identifier {name}")]
    Unknown { line: usize, name: String },
    #[error("line {line}: {name} is used before its declaration")]
    UseBeforeDeclaration { line: usize, name: String },
    #[error("line {line}: base type {name} expects {expected} arguments, got {got}")]
    Arity { line: usize, name: String, expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Type { line: usize, msg: String },
}

impl ParseError {
    pub fn syntax(line: usize, msg: &str) -> ParseError {
        ParseError::Syntax { line, msg: msg.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SzsStatus {
    Theorem,
    TypeCheck,
    InexactTypecheck,
    Timeout,
    GaveUp,
    Unsatisfiable,
    Success,
    SyntaxError,
    TypeError,
}

impl SzsStatus {
    pub fn is_success(self) -> bool {
        matches!(
            self,
            SzsStatus::Theorem
                | SzsStatus::TypeCheck
                | SzsStatus::InexactTypecheck
                | SzsStatus::Unsatisfiable
                | SzsStatus::Success
        )
    }

    pub fn parse(s: &str) -> Option<SzsStatus> {
        Some(match s {
            "Theorem" => SzsStatus::Theorem,
            "TypeCheck" => SzsStatus::TypeCheck,
            "InexactTypecheck" => SzsStatus::InexactTypecheck,
            "Timeout" => SzsStatus::Timeout,
            "GaveUp" => SzsStatus::GaveUp,
            "Unsatisfiable" => SzsStatus::Unsatisfiable,
            "Success" => SzsStatus::Success,
            "SyntaxError" => SzsStatus::SyntaxError,
            "TypeError" => SzsStatus::TypeError,
            _ => return None,
        })
    }
}

impl fmt::Display for SzsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SzsStatus::Theorem => "Theorem",
            SzsStatus::TypeCheck => "TypeCheck",
            SzsStatus::InexactTypecheck => "InexactTypecheck",
            SzsStatus::Timeout => "Timeout",
            SzsStatus::GaveUp => "GaveUp",
            SzsStatus::Unsatisfiable => "Unsatisfiable",
            SzsStatus::Success => "Success",
            SzsStatus::SyntaxError => "SyntaxError",
            SzsStatus::TypeError => "TypeError",
        };
        f.write_str(s)
    }
}

pub fn szs_line(status: SzsStatus, name: &str) -> String {
    format!("% SZS status {} for {}", status, name)
}

/// Reads back the status of an SZS line.
pub fn parse_szs_line(line: &str) -> Option<(SzsStatus, String)> {
    let rest = line.trim().strip_prefix("% SZS status ")?;
    let (st, name) = rest.split_once(" for ")?;
    Some((SzsStatus::parse(st.trim())?, name.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Term, TermKind, Type};
    use crate::typing::{Context, Signature};

    const LISTS: &str = "
thf(nat_type, type, nat: $tType).
thf(zero_decl, type, zero: nat).
thf(s_decl, type, s: nat > nat).
thf(plus_decl, type, plus: nat > nat > nat).
thf(elem_type, type, elem: $tType).
thf(lst_type, type, lst: nat > $tType).
thf(nil_decl, type, nil: lst @ zero).
thf(cons_decl, type, cons: !>[N:nat]: (elem > (lst @ N) > (lst @ (s @ N)))).
thf(app_decl, type, app: !>[N:nat,M:nat]: ((lst @ N) > (lst @ M) > (lst @ (plus @ N @ M)))).
thf(plus_zero, axiom, ![N:nat]: ((plus @ zero @ N) = N)).
thf(app_nil, axiom, ![N:nat,X:lst @ N]: ((app @ zero @ N @ nil @ X) = X)).
thf(c, conjecture, ![N:nat,X:lst @ N]: ((app @ N @ zero @ X @ nil) = X)).
";

    #[test]
    fn parses_dependent_signature() {
        let p = parse_problem(LISTS, "lists").unwrap();
        assert_eq!(p.decls.len(), 11);
        let sig = p.signature();
        assert_eq!(sig.base_arity(&"lst".into()), Some(1));
        let c = p.conjecture.unwrap().formula;
        // the equation is annotated with the type of its right side
        let (_, _, body) = c.open_binder().unwrap();
        let (_, _, eq) = body.open_binder().unwrap();
        match eq.kind() {
            TermKind::Eq(ty, _, _) => assert!(ty.as_base().unwrap().1.len() == 1),
            _ => panic!("expected an equation"),
        }
    }

    #[test]
    fn round_trip() {
        let p = parse_problem(LISTS, "lists").unwrap();
        let text = problem_to_string(&p);
        let q = parse_problem(&text, "lists").unwrap();
        assert_eq!(p, q);
        assert_eq!(text, problem_to_string(&q));
    }

    #[test]
    fn annotated_equations_round_trip() {
        let p = parse_problem(LISTS, "lists").unwrap();
        let sig = p.signature();
        let f = parse_formula(
            "![N:nat,X:lst @ (plus @ N @ zero)]: ((app @ N @ zero @ X @ nil) =[lst @ (plus @ N @ zero)] X)",
            &sig,
            &Context::new(),
        )
        .unwrap();
        let s = term_to_string(&f);
        assert!(s.contains("=[lst @ (plus @ N @ zero)]"), "{}", s);
        assert_eq!(parse_formula(&s, &sig, &Context::new()).unwrap(), f);
    }

    #[test]
    fn connectives_desugar() {
        let mut sig = Signature::new();
        sig.add_const(&"p".into(), Type::bool());
        sig.add_const(&"q".into(), Type::bool());
        let ctx = Context::new();
        let p = Term::cnst(&"p".into());
        let q = Term::cnst(&"q".into());
        assert_eq!(parse_formula("p & q", &sig, &ctx).unwrap(), Term::and(&p, &q));
        assert_eq!(parse_formula("p | q", &sig, &ctx).unwrap(), Term::or(&p, &q));
        assert_eq!(parse_formula("$true", &sig, &ctx).unwrap(), Term::top());
        assert_eq!(parse_formula("~ p = q", &sig, &ctx).unwrap(), Term::neq(&Type::bool(), &p, &q));
    }

    #[test]
    fn errors() {
        let bad_arity = "thf(n, type, nat: $tType).\nthf(l, type, lst: nat > $tType).\nthf(c, type, c: lst).";
        assert!(matches!(parse_problem(bad_arity, "x"), Err(ParseError::Arity { .. })));
        let early = "thf(l, type, lst: nat > $tType).\nthf(n, type, nat: $tType).";
        assert!(matches!(parse_problem(early, "x"), Err(ParseError::UseBeforeDeclaration { .. })));
        let unknown = "thf(a, axiom, foo).";
        assert!(matches!(parse_problem(unknown, "x"), Err(ParseError::Unknown { .. })));
        assert!(matches!(parse_problem("thf(a, axiom", "x"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn szs_lines() {
        let l = szs_line(SzsStatus::Theorem, "app_nil_1");
        assert_eq!(l, "% SZS status Theorem for app_nil_1");
        assert_eq!(parse_szs_line(&l), Some((SzsStatus::Theorem, "app_nil_1".into())));
    }
}
