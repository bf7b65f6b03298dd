//! Erasure of DHOL into HOL and the simplification Φ.
//!
//! Each base type `a` gets a partial equivalence relation `a*` that takes
//! the erased telescope arguments first. Typing information survives as
//! `A* x x` guards, which Φ removes again wherever they are trivial.

use crate::problem::{Conjecture, Decl, Problem};
use crate::term::{eta_body, fresh_symbol, Symbol, Term, TermKind, Type, TypeKind};
use crate::typing::Signature;
use indexmap::IndexMap;

/// Names of the PER constants, by base type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerTable {
    star: IndexMap<Symbol, Symbol>,
    arity: IndexMap<Symbol, usize>,
}

impl PerTable {
    pub fn from_signature(sig: &Signature) -> PerTable {
        let mut t = PerTable::default();
        let taken = |n: &str| sig.contains(&Symbol::new(n));
        for (a, kind) in sig.base_types() {
            let mut name = format!("{}_star", a);
            while taken(&name) || t.star.values().any(|s| s.as_str() == name) {
                name.push('_');
            }
            t.star.insert(a.clone(), Symbol::new(&name));
            t.arity.insert(a.clone(), crate::typing::telescope_len(kind));
        }
        t
    }

    pub fn star(&self, a: &Symbol) -> Option<&Symbol> {
        self.star.get(a)
    }

    /// Base type whose PER is `c`, if `c` is one of ours and that type has no parameters.
    pub fn simple_type_of(&self, c: &Symbol) -> Option<&Symbol> {
        self.star.iter().find(|(a, s)| *s == c && self.arity.get(*a) == Some(&0)).map(|(a, _)| a)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.star.iter()
    }
}

pub fn erase_type(ty: &Type) -> Type {
    match ty.kind() {
        TypeKind::Bool => ty.clone(),
        TypeKind::Base(a, args) => {
            if args.is_empty() {
                ty.clone()
            } else {
                Type::base(a, Vec::new())
            }
        }
        TypeKind::Pi(a, b) => Type::pi(&erase_type(a), &erase_type(b)),
    }
}

/// `A* s t` for terms `s`, `t` that are already erased.
pub fn per(table: &PerTable, ty: &Type, s: &Term, t: &Term) -> Term {
    match ty.kind() {
        TypeKind::Bool => Term::eq(ty, s, t),
        TypeKind::Base(a, args) => {
            let star = table.star(a).expect("base type without PER");
            let mut xs: Vec<Term> = args.iter().map(|x| erase_term(table, x)).collect();
            xs.push(s.clone());
            xs.push(t.clone());
            Term::apps(&Term::cnst(star), &xs)
        }
        TypeKind::Pi(dom, cod) => {
            let hint = ty.binder_name();
            let x = fresh_symbol(&hint);
            let y = fresh_symbol(&hint);
            let (vx, vy) = (Term::var(&x), Term::var(&y));
            let ed = erase_type(dom);
            let guard = per(table, dom, &vx, &vy);
            let body = per(table, &cod.instantiate(&vx), &Term::app(s, &vx), &Term::app(t, &vy));
            let inner = Term::forall_over(&y, &ed, &Term::imp(&guard, &body));
            Term::forall_over(&x, &ed, &inner)
        }
    }
}

/// Homomorphic except on equations and quantifiers, which go through PERs.
pub fn erase_term(table: &PerTable, t: &Term) -> Term {
    match t.kind() {
        TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => t.clone(),
        TermKind::App(f, a) => Term::app(&erase_term(table, f), &erase_term(table, a)),
        TermKind::Lam(ty, _) => {
            let (x, _, body) = t.open_binder().unwrap();
            Term::lam_over(&x, &erase_type(ty), &erase_term(table, &body))
        }
        TermKind::Neg(s) => Term::neg(&erase_term(table, s)),
        TermKind::Imp(s, u) => Term::imp(&erase_term(table, s), &erase_term(table, u)),
        TermKind::Eq(ty, s, u) => per(table, ty, &erase_term(table, s), &erase_term(table, u)),
        TermKind::Forall(ty, _) => {
            let (x, _, body) = t.open_binder().unwrap();
            let vx = Term::var(&x);
            let guard = per(table, ty, &vx, &vx);
            Term::forall_over(&x, &erase_type(ty), &Term::imp(&guard, &erase_term(table, &body)))
        }
    }
}

/// Erases a formula and simplifies it: `Φ(erase s)` in normal form.
pub fn erase_formula(table: &PerTable, t: &Term) -> Term {
    phi(table, &erase_term(table, t).normalize()).normalize()
}

/// Erased declaration of `x : A` together with its simplified typing axiom.
pub fn erase_context_entry(table: &PerTable, x: &Term, ty: &Type) -> (Type, Term) {
    let ax = phi(table, &per(table, ty, x, x).normalize()).normalize();
    (erase_type(ty), ax)
}

/// `s = s` carries no information and is left out of erased theories.
pub fn is_trivial(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Eq(_, a, b) if a == b)
}

#[derive(Debug, Clone)]
pub struct ErasedTheory {
    pub table: PerTable,
    pub sig: Signature,
    pub decls: Vec<Decl>,
}

impl ErasedTheory {
    pub fn axioms(&self) -> Vec<Term> {
        self.decls
            .iter()
            .filter_map(|d| match d {
                Decl::Axiom { formula, .. } => Some(formula.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Erases all declarations in order. Trivial typing axioms are dropped.
pub fn erase_theory(problem: &Problem) -> ErasedTheory {
    let sig = problem.signature();
    let table = PerTable::from_signature(&sig);
    let mut decls = Vec::new();
    for d in &problem.decls {
        match d {
            Decl::Type { name, kind } => {
                decls.push(Decl::Type { name: name.clone(), kind: Type::bool() });
                let star = table.star(name).unwrap().clone();
                let mut params = Vec::new();
                let mut k = kind.clone();
                while let TypeKind::Pi(dom, cod) = k.kind().clone() {
                    let x = fresh_symbol(&k.binder_name());
                    params.push((x.clone(), erase_type(&dom)));
                    k = cod.instantiate(&Term::var(&x));
                }
                let a = Type::base(name, Vec::new());
                let mut doms: Vec<Type> = params.iter().map(|(_, t)| t.clone()).collect();
                doms.push(a.clone());
                doms.push(a.clone());
                decls.push(Decl::Const { name: star.clone(), ty: Type::arrows(&doms, &Type::bool()) });
                let u = fresh_symbol("U");
                let v = fresh_symbol("V");
                let mut args: Vec<Term> = params.iter().map(|(x, _)| Term::var(x)).collect();
                args.push(Term::var(&u));
                args.push(Term::var(&v));
                let body = Term::imp(
                    &Term::apps(&Term::cnst(&star), &args),
                    &Term::eq(&a, &Term::var(&u), &Term::var(&v)),
                );
                let mut binders = params.clone();
                binders.push((u, a.clone()));
                binders.push((v, a));
                let ax = phi(&table, &Term::forall_many(&binders, &body)).normalize();
                if !is_trivial(&ax) {
                    decls.push(Decl::Axiom { name: format!("{}_per", name), formula: ax });
                }
            }
            Decl::Const { name, ty } => {
                let (ety, ax) = erase_context_entry(&table, &Term::cnst(name), ty);
                decls.push(Decl::Const { name: name.clone(), ty: ety });
                if !is_trivial(&ax) {
                    decls.push(Decl::Axiom { name: format!("{}_typing", name), formula: ax });
                }
            }
            Decl::Axiom { name, formula } => {
                decls.push(Decl::Axiom { name: name.clone(), formula: erase_formula(&table, formula) });
            }
        }
    }
    let mut esig = crate::problem::signature_of(&decls);
    for (a, _) in sig.base_types() {
        esig.add_base_type(a, Type::bool());
    }
    ErasedTheory { table, sig: esig, decls }
}

/// The HOL problem: erased theory and erased conjecture.
pub fn erase_problem(problem: &Problem) -> Problem {
    let th = erase_theory(problem);
    let conjecture = problem.conjecture.as_ref().map(|c| Conjecture {
        name: c.name.clone(),
        formula: erase_formula(&th.table, &c.formula),
    });
    Problem { name: problem.name.clone(), decls: th.decls, conjecture }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiStrategy {
    /// Children first, left to right.
    InnermostLeftmost,
    /// Children first, right to left.
    InnermostRightmost,
    /// Repeatedly rewrite the leftmost outermost redex.
    OutermostLeftmost,
}

pub fn phi(table: &PerTable, t: &Term) -> Term {
    phi_with(table, t, PhiStrategy::InnermostLeftmost).0
}

/// Rewrites to Φ-normal form; also returns the number of rule applications.
pub fn phi_with(table: &PerTable, t: &Term, strategy: PhiStrategy) -> (Term, usize) {
    let mut steps = 0;
    let r = match strategy {
        PhiStrategy::InnermostLeftmost => innermost(table, t, false, &mut steps),
        PhiStrategy::InnermostRightmost => innermost(table, t, true, &mut steps),
        PhiStrategy::OutermostLeftmost => {
            let mut cur = t.clone();
            while let Some(next) = outermost_step(table, &cur) {
                steps += 1;
                cur = next;
            }
            cur
        }
    };
    (r, steps)
}

fn innermost(table: &PerTable, t: &Term, rtl: bool, steps: &mut usize) -> Term {
    let mut go = |x: &Term| innermost(table, x, rtl, steps);
    let rebuilt = match t.kind() {
        TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => t.clone(),
        TermKind::App(f, a) => {
            if rtl {
                let a2 = go(a);
                Term::app(&go(f), &a2)
            } else {
                let f2 = go(f);
                Term::app(&f2, &go(a))
            }
        }
        TermKind::Lam(ty, b) => Term::lam_hinted(&t.binder_name(), ty, &go(b)),
        TermKind::Forall(ty, b) => Term::forall_hinted(&t.binder_name(), ty, &go(b)),
        TermKind::Neg(s) => Term::neg(&go(s)),
        TermKind::Imp(s, u) => {
            if rtl {
                let u2 = go(u);
                Term::imp(&go(s), &u2)
            } else {
                let s2 = go(s);
                Term::imp(&s2, &go(u))
            }
        }
        TermKind::Eq(ty, s, u) => {
            if rtl {
                let u2 = go(u);
                Term::eq(ty, &go(s), &u2)
            } else {
                let s2 = go(s);
                Term::eq(ty, &s2, &go(u))
            }
        }
    };
    let mut cur = rebuilt;
    while let Some(next) = rewrite_at(table, &cur) {
        *steps += 1;
        cur = next;
    }
    cur
}

fn outermost_step(table: &PerTable, t: &Term) -> Option<Term> {
    if let Some(r) = rewrite_at(table, t) {
        return Some(r);
    }
    match t.kind() {
        TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => None,
        TermKind::App(f, a) => outermost_step(table, f)
            .map(|f2| Term::app(&f2, a))
            .or_else(|| outermost_step(table, a).map(|a2| Term::app(f, &a2))),
        TermKind::Lam(ty, b) => outermost_step(table, b).map(|b2| Term::lam_hinted(&t.binder_name(), ty, &b2)),
        TermKind::Forall(ty, b) => {
            outermost_step(table, b).map(|b2| Term::forall_hinted(&t.binder_name(), ty, &b2))
        }
        TermKind::Neg(s) => outermost_step(table, s).map(|s2| Term::neg(&s2)),
        TermKind::Imp(s, u) => outermost_step(table, s)
            .map(|s2| Term::imp(&s2, u))
            .or_else(|| outermost_step(table, u).map(|u2| Term::imp(s, &u2))),
        TermKind::Eq(ty, s, u) => outermost_step(table, s)
            .map(|s2| Term::eq(ty, &s2, u))
            .or_else(|| outermost_step(table, u).map(|u2| Term::eq(ty, s, &u2))),
    }
}

fn is_bvar(t: &Term, i: u32) -> bool {
    matches!(t.kind(), TermKind::BVar(j) if *j == i)
}

/// One Φ step at the root, if a rule applies.
///
/// Side conditions are checked on variable occurrences, so `s` and `t` in
/// the extensionality rule may be any terms in which the other bound
/// variable does not occur.
fn rewrite_at(table: &PerTable, t: &Term) -> Option<Term> {
    match t.kind() {
        // a* F G  ~>  F = G
        TermKind::App(h, g) => {
            if let TermKind::App(c, f) = h.kind() {
                if let TermKind::Const(c) = c.kind() {
                    if let Some(a) = table.simple_type_of(c) {
                        return Some(Term::eq(&Type::base(a, Vec::new()), f, g));
                    }
                }
            }
            None
        }
        TermKind::Forall(a, body) => {
            // !x:A. x = x => s  ~>  !x:A. s
            if let TermKind::Imp(guard, s) = body.kind() {
                if let TermKind::Eq(a2, l, r) = guard.kind() {
                    if *a2 == a.shift(1, 0) && is_bvar(l, 0) && is_bvar(r, 0) {
                        return Some(Term::forall_hinted(&t.binder_name(), a, s));
                    }
                }
            }
            // !x,y:A. x = y => s = t  ~>  (^x. s) = (^y. t)
            if let TermKind::Forall(a1, inner) = body.kind() {
                if *a1 != a.shift(1, 0) {
                    return None;
                }
                if let TermKind::Imp(guard, concl) = inner.kind() {
                    if let (TermKind::Eq(a2, l, r), TermKind::Eq(b, s, u)) = (guard.kind(), concl.kind()) {
                        if *a2 == a.shift(2, 0)
                            && is_bvar(l, 1)
                            && is_bvar(r, 0)
                            && b.is_closed()
                            && !s.has_loose(0)
                            && !u.has_loose(1)
                        {
                            let ls = contract(&t.binder_name(), a, &s.drop_loose(0));
                            let lu = contract(&body.binder_name(), a, &u.drop_loose(1));
                            return Some(Term::eq(&Type::arrow(a, b), &ls, &lu));
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

fn contract(hint: &str, ty: &Type, body: &Term) -> Term {
    eta_body(body).unwrap_or_else(|| Term::lam_hinted(hint, ty, body))
}
