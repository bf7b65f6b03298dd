//! Well-formedness of theories and type-checking conditions (TCCs).
//!
//! Applications are checked up to skeletons; wherever two representative
//! types differ only in their term arguments, the equalities between those
//! arguments become proof obligations, closed under the binders and
//! implication guards in scope.

use crate::problem::{signature_of, Decl, Problem};
use crate::term::{fresh_symbol, Symbol, Term, TermKind, Type, TypeKind};
use crate::typing::{
    infer_skeleton_type, skeleton, telescope_types, Context, Signature, TypeError,
};
use rustc_hash::FxHashSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("{decl}: {name} is used before its declaration")]
    UseBeforeDeclaration { decl: String, name: String },
    #[error("{decl}: not a formula")]
    NotBoolean { decl: String },
    #[error("{decl}: {name} is declared twice")]
    Duplicate { decl: String, name: String },
    #[error("{decl}: {err}")]
    IllTyped { decl: String, err: TypeError },
}

fn decl_label(d: &Decl) -> String {
    match d {
        Decl::Type { name, .. } | Decl::Const { name, .. } => name.to_string(),
        Decl::Axiom { name, .. } => name.clone(),
    }
}

/// Checks each declaration against the declarations before it.
pub fn check_theory(problem: &Problem) -> Result<(), CheckError> {
    let all: FxHashSet<Symbol> = problem
        .decls
        .iter()
        .filter_map(|d| match d {
            Decl::Type { name, .. } | Decl::Const { name, .. } => Some(name.clone()),
            Decl::Axiom { .. } => None,
        })
        .collect();
    let mut sig = Signature::new();
    for d in &problem.decls {
        let label = decl_label(d);
        let wrap = |err: TypeError| classify(err, &label, &all);
        match d {
            Decl::Type { name, kind } => {
                if sig.contains(name) {
                    return Err(CheckError::Duplicate { decl: label, name: name.to_string() });
                }
                check_kind(&sig, kind).map_err(wrap)?;
                sig.add_base_type(name, kind.clone());
            }
            Decl::Const { name, ty } => {
                if sig.contains(name) {
                    return Err(CheckError::Duplicate { decl: label, name: name.to_string() });
                }
                crate::typing::check_type(&sig, &mut Context::new(), ty).map_err(wrap)?;
                sig.add_const(name, ty.clone());
            }
            Decl::Axiom { formula, .. } => check_formula(&sig, formula, &label, &all)?,
        }
    }
    if let Some(c) = &problem.conjecture {
        check_formula(&sig, &c.formula, &c.name, &all)?;
    }
    Ok(())
}

fn check_formula(sig: &Signature, f: &Term, label: &str, all: &FxHashSet<Symbol>) -> Result<(), CheckError> {
    let ty = infer_skeleton_type(sig, &mut Context::new(), f).map_err(|e| classify(e, label, all))?;
    if ty.is_bool() {
        Ok(())
    } else {
        Err(CheckError::NotBoolean { decl: label.to_string() })
    }
}

fn classify(err: TypeError, label: &str, all: &FxHashSet<Symbol>) -> CheckError {
    match &err {
        TypeError::UnknownConst(n) | TypeError::UnknownType(n) if all.contains(&Symbol::new(n)) => {
            CheckError::UseBeforeDeclaration { decl: label.to_string(), name: n.clone() }
        }
        _ => CheckError::IllTyped { decl: label.to_string(), err },
    }
}

fn check_kind(sig: &Signature, kind: &Type) -> Result<(), TypeError> {
    let mut ctx = Context::new();
    let mut k = kind.clone();
    while let TypeKind::Pi(d, b) = k.kind().clone() {
        crate::typing::check_type(sig, &mut ctx, &d)?;
        let x = fresh_symbol(&k.binder_name());
        ctx.push(&x, &d);
        k = b.instantiate(&Term::var(&x));
    }
    Ok(())
}

/// Result of comparing two representative types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeEquality {
    Identical,
    /// Equal if these (open) formulas hold.
    Conditional(Vec<Term>),
    Mismatch,
}

/// Compares `a` and `b`; argument equations are oriented from `a` to `b`.
pub fn types_equal(sig: &Signature, a: &Type, b: &Type) -> TypeEquality {
    let a = a.normalize();
    let b = b.normalize();
    if a == b {
        return TypeEquality::Identical;
    }
    if skeleton(&a) != skeleton(&b) {
        return TypeEquality::Mismatch;
    }
    let mut out = Vec::new();
    type_constraints(sig, &a, &b, &mut out);
    if out.is_empty() {
        TypeEquality::Identical
    } else {
        TypeEquality::Conditional(out)
    }
}

fn type_constraints(sig: &Signature, a: &Type, b: &Type, out: &mut Vec<Term>) {
    if a == b {
        return;
    }
    match (a.kind(), b.kind()) {
        (TypeKind::Base(n, xs), TypeKind::Base(_, ys)) => {
            let params = match sig.base_kind(n) {
                Some(k) => telescope_types(k, xs),
                None => return,
            };
            for ((x, y), p) in xs.iter().zip(ys).zip(params) {
                if x != y {
                    out.push(Term::eq(&p.normalize(), x, y));
                }
            }
        }
        (TypeKind::Pi(a1, b1), TypeKind::Pi(a2, b2)) => {
            type_constraints(sig, a1, a2, out);
            let x = fresh_symbol(&a.binder_name());
            let v = Term::var(&x);
            let mut inner = Vec::new();
            type_constraints(sig, &b1.instantiate(&v).normalize(), &b2.instantiate(&v).normalize(), &mut inner);
            out.extend(inner.iter().map(|c| if c.contains_var(&x) { Term::forall_over(&x, a1, c) } else { c.clone() }));
        }
        _ => {}
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tcc {
    /// Closed formula in normal form.
    pub formula: Term,
    /// Declaration that produced it.
    pub origin: String,
    /// Number of leading axioms it may be proved from.
    pub axioms_available: usize,
}

#[derive(Debug, Clone)]
enum Entry {
    Binder(Symbol, Type),
    Guard(Term),
}

struct TccGen<'a> {
    sig: &'a Signature,
    ctx: Context,
    entries: Vec<Entry>,
    out: Vec<Term>,
}

/// Obligations for every axiom, declaration and the conjecture, in order,
/// without duplicates.
pub fn generate_tccs(problem: &Problem) -> Result<Vec<Tcc>, TypeError> {
    let sig = problem.signature();
    let mut tccs: Vec<Tcc> = Vec::new();
    let mut seen = FxHashSet::default();
    let mut axioms_seen = 0;
    let mut push = |forms: Vec<Term>, origin: &str, avail: usize, tccs: &mut Vec<Tcc>| {
        for f in forms {
            if seen.insert(f.clone()) {
                tccs.push(Tcc { formula: f, origin: origin.to_string(), axioms_available: avail });
            }
        }
    };
    for (i, d) in problem.decls.iter().enumerate() {
        let prefix = signature_of(&problem.decls[..i]);
        match d {
            Decl::Type { name, kind } => {
                let forms = tccs_of_type(&prefix, kind)?;
                push(forms, name.as_str(), axioms_seen, &mut tccs);
            }
            Decl::Const { name, ty } => {
                let forms = tccs_of_type(&prefix, ty)?;
                push(forms, name.as_str(), axioms_seen, &mut tccs);
            }
            Decl::Axiom { name, formula } => {
                let forms = tccs_of_term(&prefix, formula)?;
                push(forms, name, axioms_seen, &mut tccs);
                axioms_seen += 1;
            }
        }
    }
    if let Some(c) = &problem.conjecture {
        let forms = tccs_of_term(&sig, &c.formula)?;
        push(forms, &c.name, axioms_seen, &mut tccs);
    }
    Ok(tccs)
}

/// Obligations of a single closed formula, in traversal order.
pub fn tccs_of_term(sig: &Signature, t: &Term) -> Result<Vec<Term>, TypeError> {
    let mut g = TccGen { sig, ctx: Context::new(), entries: Vec::new(), out: Vec::new() };
    g.term(t)?;
    Ok(dedup(g.out))
}

pub fn tccs_of_type(sig: &Signature, t: &Type) -> Result<Vec<Term>, TypeError> {
    let mut g = TccGen { sig, ctx: Context::new(), entries: Vec::new(), out: Vec::new() };
    g.ty(t)?;
    Ok(dedup(g.out))
}

fn dedup(v: Vec<Term>) -> Vec<Term> {
    let mut seen = FxHashSet::default();
    v.into_iter().filter(|t| seen.insert(t.clone())).collect()
}

impl TccGen<'_> {
    fn open(&mut self, hint: &str, ty: &Type, body: &Term) -> (Symbol, Term) {
        let x = fresh_symbol(hint);
        self.ctx.push(&x, ty);
        self.entries.push(Entry::Binder(x.clone(), ty.clone()));
        let b = body.instantiate(&Term::var(&x));
        (x, b)
    }

    fn close(&mut self, x: &Symbol) {
        self.entries.pop();
        self.ctx.pop(x);
    }

    fn require(&mut self, found: &Type, expected: &Type, what: &str) -> Result<(), TypeError> {
        match types_equal(self.sig, found, expected) {
            TypeEquality::Identical => Ok(()),
            TypeEquality::Conditional(cs) => {
                for c in cs {
                    let f = self.closure(&c);
                    self.out.push(f);
                }
                Ok(())
            }
            TypeEquality::Mismatch => Err(TypeError::Mismatch {
                context: what.to_string(),
                expected: format!("{}", expected),
                found: format!("{}", found),
            }),
        }
    }

    /// Universal closure over the binders in scope, guarded by the implications
    /// in scope. Binders after the last guard that nothing depends on are dropped.
    fn closure(&self, c: &Term) -> Term {
        let last_guard = self.entries.iter().rposition(|e| matches!(e, Entry::Guard(_)));
        let mut needed: FxHashSet<Symbol> = c.free_vars().into_iter().collect();
        let mut acc = c.clone();
        for (i, e) in self.entries.iter().enumerate().rev() {
            match e {
                Entry::Guard(g) => {
                    needed.extend(g.free_vars());
                    acc = Term::imp(g, &acc);
                }
                Entry::Binder(x, ty) => {
                    let before_guard = last_guard.is_some_and(|l| i < l);
                    if before_guard || needed.contains(x) {
                        needed.extend(ty.free_vars());
                        acc = Term::forall_over(x, ty, &acc);
                    }
                }
            }
        }
        acc.normalize()
    }

    fn term(&mut self, t: &Term) -> Result<Type, TypeError> {
        match t.kind() {
            TermKind::BVar(_) => Err(TypeError::LooseIndex),
            TermKind::Var(x) => self.ctx.get(x).cloned().ok_or_else(|| TypeError::Unbound(x.to_string())),
            TermKind::Const(c) => self
                .sig
                .const_type(c)
                .cloned()
                .ok_or_else(|| TypeError::UnknownConst(c.to_string())),
            TermKind::App(f, a) => {
                let tf = self.term(f)?;
                let (dom, cod) = match tf.kind() {
                    TypeKind::Pi(d, c) => (d.clone(), c.clone()),
                    _ => return Err(TypeError::NotFunction(format!("{}", f))),
                };
                let ta = self.term(a)?;
                self.require(&ta, &dom, &format!("argument {}", a))?;
                Ok(cod.instantiate(a).normalize())
            }
            TermKind::Lam(ty, b) => {
                self.ty(ty)?;
                let (x, body) = self.open(&t.binder_name(), ty, b);
                let tb = self.term(&body);
                self.close(&x);
                Ok(Type::pi_over(&x, ty, &tb?))
            }
            TermKind::Forall(ty, b) => {
                self.ty(ty)?;
                let (x, body) = self.open(&t.binder_name(), ty, b);
                let r = self.formula(&body);
                self.close(&x);
                r?;
                Ok(Type::bool())
            }
            TermKind::Bot => Ok(Type::bool()),
            TermKind::Neg(s) => {
                self.formula(s)?;
                Ok(Type::bool())
            }
            TermKind::Imp(s, u) => {
                self.formula(s)?;
                self.entries.push(Entry::Guard(s.clone()));
                let r = self.formula(u);
                self.entries.pop();
                r?;
                Ok(Type::bool())
            }
            TermKind::Eq(ty, s, u) => {
                self.ty(ty)?;
                let ts = self.term(s)?;
                self.require(&ts, ty, "left side of equation")?;
                let tu = self.term(u)?;
                self.require(&tu, ty, "right side of equation")?;
                Ok(Type::bool())
            }
        }
    }

    fn formula(&mut self, s: &Term) -> Result<(), TypeError> {
        let t = self.term(s)?;
        if t.is_bool() {
            Ok(())
        } else {
            Err(TypeError::NotBoolean(format!("{}", s)))
        }
    }

    fn ty(&mut self, t: &Type) -> Result<(), TypeError> {
        match t.kind() {
            TypeKind::Bool => Ok(()),
            TypeKind::Base(a, args) => {
                let kind = self.sig.base_kind(a).ok_or_else(|| TypeError::UnknownType(a.to_string()))?;
                let n = crate::typing::telescope_len(kind);
                if n != args.len() {
                    return Err(TypeError::Arity { name: a.to_string(), expected: n, got: args.len() });
                }
                let params = telescope_types(kind, args);
                for (arg, p) in args.iter().zip(params) {
                    let ta = self.term(arg)?;
                    self.require(&ta, &p, &format!("argument of {}", a))?;
                }
                Ok(())
            }
            TypeKind::Pi(d, b) => {
                self.ty(d)?;
                let x = fresh_symbol(&t.binder_name());
                self.ctx.push(&x, d);
                self.entries.push(Entry::Binder(x.clone(), d.clone()));
                let r = self.ty(&b.instantiate(&Term::var(&x)));
                self.close(&x);
                r
            }
        }
    }
}
