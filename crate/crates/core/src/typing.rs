//! Signatures, contexts and type inference.

use crate::term::{Symbol, Term, TermKind, Type, TypeKind};
use indexmap::IndexMap;
use rustc_hash::FxHashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("unknown constant {0}")]
    UnknownConst(String),
    #[error("unknown base type {0}")]
    UnknownType(String),
    #[error("base type {name} expects {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("{0} is applied but is not a function")]
    NotFunction(String),
    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    Mismatch { context: String, expected: String, found: String },
    #[error("{0} must be a formula")]
    NotBoolean(String),
    #[error("term is not locally closed")]
    LooseIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigEntry {
    /// Telescope as a Pi chain ending in `$o`.
    BaseType(Type),
    Const(Type),
}

#[derive(Debug, Clone, Default)]
pub struct Signature {
    entries: IndexMap<Symbol, SigEntry>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_base_type(&mut self, name: &Symbol, kind: Type) {
        self.entries.insert(name.clone(), SigEntry::BaseType(kind));
    }

    pub fn add_const(&mut self, name: &Symbol, ty: Type) {
        self.entries.insert(name.clone(), SigEntry::Const(ty));
    }

    pub fn get(&self, name: &Symbol) -> Option<&SigEntry> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &Symbol) -> bool {
        self.entries.contains_key(name)
    }

    pub fn const_type(&self, name: &Symbol) -> Option<&Type> {
        match self.entries.get(name) {
            Some(SigEntry::Const(t)) => Some(t),
            _ => None,
        }
    }

    pub fn base_kind(&self, name: &Symbol) -> Option<&Type> {
        match self.entries.get(name) {
            Some(SigEntry::BaseType(k)) => Some(k),
            _ => None,
        }
    }

    pub fn is_base_type(&self, name: &Symbol) -> bool {
        self.base_kind(name).is_some()
    }

    pub fn base_arity(&self, name: &Symbol) -> Option<usize> {
        self.base_kind(name).map(telescope_len)
    }

    pub fn consts(&self) -> impl Iterator<Item = (&Symbol, &Type)> {
        self.entries.iter().filter_map(|(n, e)| match e {
            SigEntry::Const(t) => Some((n, t)),
            _ => None,
        })
    }

    pub fn base_types(&self) -> impl Iterator<Item = (&Symbol, &Type)> {
        self.entries.iter().filter_map(|(n, e)| match e {
            SigEntry::BaseType(k) => Some((n, k)),
            _ => None,
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &Symbol> {
        self.entries.keys()
    }
}

pub fn telescope_len(kind: &Type) -> usize {
    let mut n = 0;
    let mut k = kind;
    while let TypeKind::Pi(_, b) = k.kind() {
        n += 1;
        k = b;
    }
    n
}

/// Parameter types of a telescope instantiated left to right with `args`.
pub fn telescope_types(kind: &Type, args: &[Term]) -> Vec<Type> {
    let mut out = Vec::new();
    let mut k = kind.clone();
    for a in args {
        match k.kind().clone() {
            TypeKind::Pi(d, b) => {
                out.push(d.clone());
                k = b.instantiate(a);
            }
            _ => break,
        }
    }
    out
}

/// Local typing context: free variables and their types.
#[derive(Debug, Clone, Default)]
pub struct Context {
    vars: FxHashMap<Symbol, Type>,
    order: Vec<Symbol>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }
    pub fn push(&mut self, x: &Symbol, ty: &Type) {
        if self.vars.insert(x.clone(), ty.clone()).is_none() {
            self.order.push(x.clone());
        }
    }
    pub fn pop(&mut self, x: &Symbol) {
        if self.vars.remove(x).is_some() {
            if let Some(i) = self.order.iter().rposition(|y| y == x) {
                self.order.remove(i);
            }
        }
    }
    pub fn get(&self, x: &Symbol) -> Option<&Type> {
        self.vars.get(x)
    }
    pub fn contains(&self, x: &Symbol) -> bool {
        self.vars.contains_key(x)
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Type)> {
        self.order.iter().map(move |x| (x, &self.vars[x]))
    }
    pub fn len(&self) -> usize {
        self.order.len()
    }
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Erases term arguments from base types.
pub fn skeleton(ty: &Type) -> Type {
    match ty.kind() {
        TypeKind::Bool => ty.clone(),
        TypeKind::Base(a, args) => {
            if args.is_empty() {
                ty.clone()
            } else {
                Type::base(a, Vec::new())
            }
        }
        TypeKind::Pi(a, b) => Type::pi(&skeleton(a), &skeleton(b)),
    }
}

fn show_ty(t: &Type) -> String {
    format!("{}", t)
}

fn expect_skeleton(expected: &Type, found: &Type, what: &str) -> Result<(), TypeError> {
    if skeleton(expected) == skeleton(found) {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            context: what.to_string(),
            expected: show_ty(expected),
            found: show_ty(found),
        })
    }
}

/// Checks that a type is well formed up to skeletons of its term arguments.
pub fn check_type(sig: &Signature, ctx: &mut Context, ty: &Type) -> Result<(), TypeError> {
    match ty.kind() {
        TypeKind::Bool => Ok(()),
        TypeKind::Base(a, args) => {
            let kind = sig.base_kind(a).ok_or_else(|| TypeError::UnknownType(a.to_string()))?;
            let n = telescope_len(kind);
            if n != args.len() {
                return Err(TypeError::Arity { name: a.to_string(), expected: n, got: args.len() });
            }
            let params = telescope_types(kind, args);
            for (arg, p) in args.iter().zip(params.iter()) {
                let t = infer_type(sig, ctx, arg)?;
                expect_skeleton(p, &t, &format!("argument of {}", a))?;
            }
            Ok(())
        }
        TypeKind::Pi(d, b) => {
            check_type(sig, ctx, d)?;
            let x = crate::term::fresh_symbol(&ty.binder_name());
            ctx.push(&x, d);
            let r = check_type(sig, ctx, &b.instantiate(&Term::var(&x)));
            ctx.pop(&x);
            r
        }
    }
}

/// Representative type of a locally closed term.
///
/// Applications are only checked up to skeletons; the result of `f a` with
/// `f : Pi x:A. B` is `B[x/a]` in normal form.
pub fn infer_type(sig: &Signature, ctx: &mut Context, t: &Term) -> Result<Type, TypeError> {
    match t.kind() {
        TermKind::BVar(_) => Err(TypeError::LooseIndex),
        TermKind::Var(x) => ctx.get(x).cloned().ok_or_else(|| TypeError::Unbound(x.to_string())),
        TermKind::Const(c) => {
            sig.const_type(c).cloned().ok_or_else(|| TypeError::UnknownConst(c.to_string()))
        }
        TermKind::App(f, a) => {
            let tf = infer_type(sig, ctx, f)?;
            match tf.kind() {
                TypeKind::Pi(dom, cod) => {
                    let ta = infer_type(sig, ctx, a)?;
                    expect_skeleton(dom, &ta, &format!("argument {}", a))?;
                    Ok(cod.instantiate(a).normalize())
                }
                _ => Err(TypeError::NotFunction(format!("{}", f))),
            }
        }
        TermKind::Lam(ty, b) => {
            check_type(sig, ctx, ty)?;
            let x = crate::term::fresh_symbol(&t.binder_name());
            ctx.push(&x, ty);
            let r = infer_type(sig, ctx, &b.instantiate(&Term::var(&x)));
            ctx.pop(&x);
            Ok(Type::pi_over(&x, ty, &r?))
        }
        TermKind::Bot => Ok(Type::bool()),
        TermKind::Neg(s) => {
            expect_bool(sig, ctx, s)?;
            Ok(Type::bool())
        }
        TermKind::Imp(s, u) => {
            expect_bool(sig, ctx, s)?;
            expect_bool(sig, ctx, u)?;
            Ok(Type::bool())
        }
        TermKind::Eq(ty, s, u) => {
            check_type(sig, ctx, ty)?;
            let ts = infer_type(sig, ctx, s)?;
            expect_skeleton(ty, &ts, "left side of equation")?;
            let tu = infer_type(sig, ctx, u)?;
            expect_skeleton(ty, &tu, "right side of equation")?;
            Ok(Type::bool())
        }
        TermKind::Forall(ty, b) => {
            check_type(sig, ctx, ty)?;
            let x = crate::term::fresh_symbol(&t.binder_name());
            ctx.push(&x, ty);
            let r = expect_bool(sig, ctx, &b.instantiate(&Term::var(&x)));
            ctx.pop(&x);
            r?;
            Ok(Type::bool())
        }
    }
}

fn expect_bool(sig: &Signature, ctx: &mut Context, s: &Term) -> Result<(), TypeError> {
    let ts = infer_skeleton_type(sig, ctx, s)?;
    if ts.is_bool() {
        Ok(())
    } else {
        Err(TypeError::NotBoolean(format!("{}", s)))
    }
}

/// Simple type of a term after erasing all term arguments of base types.
pub fn infer_skeleton_type(sig: &Signature, ctx: &mut Context, t: &Term) -> Result<Type, TypeError> {
    match t.kind() {
        TermKind::App(f, a) => {
            let tf = infer_skeleton_type(sig, ctx, f)?;
            match tf.kind() {
                TypeKind::Pi(dom, cod) => {
                    let ta = infer_skeleton_type(sig, ctx, a)?;
                    expect_skeleton(dom, &ta, &format!("argument {}", a))?;
                    Ok(cod.clone())
                }
                _ => Err(TypeError::NotFunction(format!("{}", f))),
            }
        }
        TermKind::Lam(ty, b) => {
            check_type(sig, ctx, ty)?;
            let x = crate::term::fresh_symbol(&t.binder_name());
            ctx.push(&x, ty);
            let r = infer_skeleton_type(sig, ctx, &b.instantiate(&Term::var(&x)));
            ctx.pop(&x);
            Ok(Type::arrow(&skeleton(ty), &r?))
        }
        _ => infer_type(sig, ctx, t).map(|ty| skeleton(&ty)),
    }
}

/// Whether `t` has exactly type `ty` syntactically (after normalization).
pub fn has_type(sig: &Signature, ctx: &mut Context, t: &Term, ty: &Type) -> bool {
    match infer_type(sig, ctx, t) {
        Ok(found) => found.normalize() == ty.normalize(),
        Err(_) => false,
    }
}
