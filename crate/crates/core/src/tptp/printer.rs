use crate::problem::{Decl, Problem};
use crate::term::{Term, TermKind, Type, TypeKind};
use rustc_hash::FxHashSet;
use std::fmt;

/// Prints THF with generated binder names that avoid every free name.
struct Printer {
    taken: FxHashSet<String>,
    stack: Vec<String>,
}

impl Printer {
    fn for_names(names: impl Iterator<Item = String>) -> Printer {
        Printer { taken: names.collect(), stack: Vec::new() }
    }

    fn fresh(&self, hint: &str) -> String {
        let mut base: String = hint.chars().filter(|c| c.is_alphanumeric() || *c == '_').collect();
        if base.is_empty() || !base.chars().next().unwrap().is_alphabetic() {
            base = "X".into();
        }
        let mut chars = base.chars();
        let first = chars.next().unwrap().to_uppercase().collect::<String>();
        let base = first + chars.as_str();
        if !self.clash(&base) {
            return base;
        }
        (1..).map(|i| format!("{}{}", base, i)).find(|c| !self.clash(c)).unwrap()
    }

    fn clash(&self, n: &str) -> bool {
        self.taken.contains(n) || self.stack.iter().any(|s| s == n)
    }

    fn bvar(&self, i: u32) -> String {
        let n = self.stack.len();
        if (i as usize) < n {
            self.stack[n - 1 - i as usize].clone()
        } else {
            format!("_loose{}", i as usize - n)
        }
    }

    fn term(&mut self, t: &Term, top: bool, out: &mut String) {
        let wrap = |s: String, out: &mut String| {
            if top {
                out.push_str(&s)
            } else {
                out.push('(');
                out.push_str(&s);
                out.push(')');
            }
        };
        match t.kind() {
            TermKind::BVar(i) => out.push_str(&self.bvar(*i)),
            TermKind::Var(x) => out.push_str(&x.as_str().replace('#', "_")),
            TermKind::Const(c) => out.push_str(c.as_str()),
            TermKind::Bot => out.push_str("$false"),
            TermKind::App(..) => {
                let (h, args) = t.decompose_spine();
                let mut s = String::new();
                self.term(&h, false, &mut s);
                for a in &args {
                    s.push_str(" @ ");
                    self.term(a, false, &mut s);
                }
                wrap(s, out);
            }
            TermKind::Lam(..) | TermKind::Forall(..) => {
                let is_lam = matches!(t.kind(), TermKind::Lam(..));
                let mut s = String::from(if is_lam { "^[" } else { "![" });
                let mut cur = t.clone();
                let mut pushed = 0;
                while let (TermKind::Lam(ty, b), true) | (TermKind::Forall(ty, b), false) = (cur.kind(), is_lam) {
                    let (ty, body) = (ty.clone(), b.clone());
                    let name = self.fresh(&cur.binder_name());
                    if pushed > 0 {
                        s.push(',');
                    }
                    s.push_str(&name);
                    s.push(':');
                    self.ty(&ty, true, &mut s);
                    self.stack.push(name);
                    pushed += 1;
                    cur = body;
                }
                s.push_str("]: ");
                self.term(&cur, false, &mut s);
                for _ in 0..pushed {
                    self.stack.pop();
                }
                wrap(s, out);
            }
            TermKind::Neg(s) => {
                if let TermKind::Eq(ty, a, b) = s.kind() {
                    self.equation(ty, a, b, "!=", top, out);
                } else {
                    let mut r = String::from("~ ");
                    self.term(s, false, &mut r);
                    wrap(r, out);
                }
            }
            TermKind::Imp(a, b) => {
                let mut r = String::new();
                self.term(a, false, &mut r);
                r.push_str(" => ");
                self.term(b, false, &mut r);
                wrap(r, out);
            }
            TermKind::Eq(ty, a, b) => self.equation(ty, a, b, "=", top, out),
        }
    }

    fn equation(&mut self, ty: &Type, a: &Term, b: &Term, op: &str, top: bool, out: &mut String) {
        let mut r = String::new();
        self.term(a, false, &mut r);
        r.push(' ');
        r.push_str(op);
        if !ty.is_simple() {
            r.push('[');
            self.ty(ty, true, &mut r);
            r.push(']');
        }
        r.push(' ');
        self.term(b, false, &mut r);
        if top {
            out.push_str(&r);
        } else {
            out.push('(');
            out.push_str(&r);
            out.push(')');
        }
    }

    fn ty(&mut self, t: &Type, top: bool, out: &mut String) {
        self.ty_with(t, top, "$o", out)
    }

    fn ty_with(&mut self, t: &Type, top: bool, bool_name: &str, out: &mut String) {
        match t.kind() {
            TypeKind::Bool => out.push_str(bool_name),
            TypeKind::Base(a, args) => {
                if args.is_empty() {
                    out.push_str(a.as_str());
                } else {
                    let mut s = a.as_str().to_string();
                    for x in args {
                        s.push_str(" @ ");
                        self.term(x, false, &mut s);
                    }
                    if top {
                        out.push_str(&s)
                    } else {
                        out.push('(');
                        out.push_str(&s);
                        out.push(')');
                    }
                }
            }
            TypeKind::Pi(..) => {
                let mut s = String::new();
                let mut cur = t.clone();
                let mut pushed = 0;
                let dependent = |c: &Type| matches!(c.kind(), TypeKind::Pi(_, b) if b.has_loose(0));
                if dependent(&cur) {
                    s.push_str("!>[");
                    while dependent(&cur) {
                        let (d, b) = match cur.kind() {
                            TypeKind::Pi(d, b) => (d.clone(), b.clone()),
                            _ => unreachable!(),
                        };
                        let name = self.fresh(&cur.binder_name());
                        if pushed > 0 {
                            s.push(',');
                        }
                        s.push_str(&name);
                        s.push(':');
                        self.ty(&d, true, &mut s);
                        self.stack.push(name);
                        pushed += 1;
                        cur = b;
                    }
                    s.push_str("]: ");
                    self.ty_with(&cur, false, bool_name, &mut s);
                } else {
                    let mut first = true;
                    while let TypeKind::Pi(d, b) = cur.kind().clone() {
                        if b.has_loose(0) {
                            break;
                        }
                        if !first {
                            s.push_str(" > ");
                        }
                        first = false;
                        self.ty(&d, false, &mut s);
                        self.stack.push("_".into());
                        pushed += 1;
                        cur = b;
                    }
                    s.push_str(" > ");
                    self.ty_with(&cur, false, bool_name, &mut s);
                }
                for _ in 0..pushed {
                    self.stack.pop();
                }
                if top {
                    out.push_str(&s)
                } else {
                    out.push('(');
                    out.push_str(&s);
                    out.push(')');
                }
            }
        }
    }
}

fn names_of_term(t: &Term) -> impl Iterator<Item = String> {
    let mut v: Vec<String> = t.free_vars().iter().map(|s| s.as_str().replace('#', "_")).collect();
    v.extend(t.constants().iter().map(|s| s.as_str().to_string()));
    v.into_iter()
}

fn names_of_type(t: &Type) -> impl Iterator<Item = String> {
    let mut v: Vec<String> = t.free_vars().iter().map(|s| s.as_str().replace('#', "_")).collect();
    v.extend(t.constants().iter().map(|s| s.as_str().to_string()));
    v.into_iter()
}

pub fn term_to_string(t: &Term) -> String {
    let mut p = Printer::for_names(names_of_term(t));
    let mut out = String::new();
    p.term(t, true, &mut out);
    out
}

pub fn type_to_string(t: &Type) -> String {
    let mut p = Printer::for_names(names_of_type(t));
    let mut out = String::new();
    p.ty(t, true, &mut out);
    out
}

/// A base type telescope, ending in `$tType`.
pub fn kind_to_string(k: &Type) -> String {
    let mut p = Printer::for_names(names_of_type(k));
    let mut out = String::new();
    p.ty_with(k, true, "$tType", &mut out);
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&term_to_string(self))
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&type_to_string(self))
    }
}

pub fn decl_to_string(d: &Decl) -> String {
    match d {
        Decl::Type { name, kind } => format!("thf({}_type, type, {}: {}).", name, name, kind_to_string(kind)),
        Decl::Const { name, ty } => format!("thf({}_decl, type, {}: {}).", name, name, type_to_string(ty)),
        Decl::Axiom { name, formula } => format!("thf({}, axiom, {}).", name, term_to_string(formula)),
    }
}

pub fn problem_to_string(p: &Problem) -> String {
    let mut out = String::new();
    for d in &p.decls {
        out.push_str(&decl_to_string(d));
        out.push('\n');
    }
    if let Some(c) = &p.conjecture {
        out.push_str(&format!("thf({}, conjecture, {}).\n", c.name, term_to_string(&c.formula)));
    }
    out
}
