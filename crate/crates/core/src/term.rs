//! Hash-consed terms and types with de Bruijn binders.
//!
//! Every node is interned once, so structural equality (and alpha-equivalence)
//! is an id comparison. Binder names are only display hints.

use rustc_hash::{FxHashMap, FxHashSet};
use std::cell::RefCell;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: &str) -> Symbol {
        Symbol(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Name used when printing a binder that was opened as this variable.
    pub fn hint(&self) -> &str {
        match self.0.find('#') {
            Some(i) => &self.0[..i],
            None => &self.0,
        }
    }

    pub fn is_internal(&self) -> bool {
        self.0.contains('#')
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Symbol {
        Symbol::new(s)
    }
}

static FRESH: AtomicU64 = AtomicU64::new(0);

/// A variable name that cannot clash with anything a user can write.
pub fn fresh_symbol(hint: &str) -> Symbol {
    let n = FRESH.fetch_add(1, Ordering::Relaxed);
    Symbol::new(&format!("{}#{}", hint, n))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    BVar(u32),
    Var(Symbol),
    Const(Symbol),
    App(Term, Term),
    Lam(Type, Term),
    Bot,
    Neg(Term),
    Imp(Term, Term),
    Eq(Type, Term, Term),
    Forall(Type, Term),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TypeKind {
    Bool,
    Base(Symbol, Vec<Term>),
    Pi(Type, Type),
}

#[derive(PartialEq, Eq, Hash)]
enum Shape {
    Tm(TermKind),
    Ty(TypeKind),
}

struct Node {
    shape: Shape,
    id: u32,
    /// One more than the largest loose de Bruijn index.
    loose: u32,
    /// Contains a free `Var`.
    free: bool,
    size: u32,
}

#[derive(Clone)]
pub struct Term(Arc<Node>);

#[derive(Clone)]
pub struct Type(Arc<Node>);

#[derive(Default)]
struct Store {
    table: FxHashMap<ShapeKey, Arc<Node>>,
    hints: FxHashMap<u32, Symbol>,
    next: u32,
}

/// Hashing a shape only looks at child ids, which is cheap.
struct ShapeKey(Arc<Node>);

impl PartialEq for ShapeKey {
    fn eq(&self, other: &Self) -> bool {
        self.0.shape == other.0.shape
    }
}
impl Eq for ShapeKey {}
impl Hash for ShapeKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.shape.hash(state)
    }
}
impl std::borrow::Borrow<Shape> for ShapeKey {
    fn borrow(&self) -> &Shape {
        &self.0.shape
    }
}

fn store() -> &'static Mutex<Store> {
    static STORE: OnceLock<Mutex<Store>> = OnceLock::new();
    STORE.get_or_init(|| Mutex::new(Store::default()))
}

fn intern(shape: Shape, hint: Option<&str>) -> Arc<Node> {
    let mut st = store().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(k) = st.table.get(&shape) {
        let node = k.clone();
        if let Some(h) = hint {
            st.hints.entry(node.id).or_insert_with(|| Symbol::new(h));
        }
        return node;
    }
    let (loose, free, size) = summarize(&shape);
    let id = st.next;
    st.next += 1;
    let node = Arc::new(Node { shape, id, loose, free, size });
    if let Some(h) = hint {
        st.hints.insert(id, Symbol::new(h));
    }
    st.table.insert(ShapeKey(node.clone()), node.clone());
    node
}

fn summarize(shape: &Shape) -> (u32, bool, u32) {
    fn under(n: &Node) -> u32 {
        n.loose.saturating_sub(1)
    }
    match shape {
        Shape::Tm(k) => match k {
            TermKind::BVar(i) => (i + 1, false, 1),
            TermKind::Var(_) => (0, true, 1),
            TermKind::Const(_) | TermKind::Bot => (0, false, 1),
            TermKind::App(f, a) => (
                f.0.loose.max(a.0.loose),
                f.0.free || a.0.free,
                1 + f.0.size.saturating_add(a.0.size),
            ),
            TermKind::Lam(ty, b) | TermKind::Forall(ty, b) => (
                ty.0.loose.max(under(&b.0)),
                ty.0.free || b.0.free,
                1 + ty.0.size.saturating_add(b.0.size),
            ),
            TermKind::Neg(s) => (s.0.loose, s.0.free, 1 + s.0.size),
            TermKind::Imp(s, t) => (
                s.0.loose.max(t.0.loose),
                s.0.free || t.0.free,
                1 + s.0.size.saturating_add(t.0.size),
            ),
            TermKind::Eq(ty, s, t) => (
                ty.0.loose.max(s.0.loose).max(t.0.loose),
                ty.0.free || s.0.free || t.0.free,
                1 + ty.0.size.saturating_add(s.0.size).saturating_add(t.0.size),
            ),
        },
        Shape::Ty(k) => match k {
            TypeKind::Bool => (0, false, 1),
            TypeKind::Base(_, args) => args.iter().fold((0, false, 1), |(l, f, s), a| {
                (l.max(a.0.loose), f || a.0.free, s.saturating_add(a.0.size))
            }),
            TypeKind::Pi(a, b) => (
                a.0.loose.max(under(&b.0)),
                a.0.free || b.0.free,
                1 + a.0.size.saturating_add(b.0.size),
            ),
        },
    }
}

fn hint_of(id: u32) -> Option<Symbol> {
    store().lock().unwrap_or_else(|e| e.into_inner()).hints.get(&id).cloned()
}

macro_rules! node_identity {
    ($t:ty) => {
        impl PartialEq for $t {
            fn eq(&self, other: &Self) -> bool {
                self.0.id == other.0.id
            }
        }
        impl Eq for $t {}
        impl Hash for $t {
            fn hash<H: Hasher>(&self, state: &mut H) {
                self.0.id.hash(state)
            }
        }
        impl PartialOrd for $t {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for $t {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.0.id.cmp(&other.0.id)
            }
        }
        impl $t {
            pub fn id(&self) -> u32 {
                self.0.id
            }
            /// Tree size, counting term and type nodes.
            pub fn size(&self) -> u32 {
                self.0.size
            }
            pub fn loose_bound(&self) -> u32 {
                self.0.loose
            }
            pub fn is_closed(&self) -> bool {
                self.0.loose == 0
            }
            pub fn has_free_vars(&self) -> bool {
                self.0.free
            }
            /// Display name recorded for this binder node, if any.
            pub fn binder_hint(&self) -> Option<Symbol> {
                hint_of(self.0.id)
            }
        }
    };
}

node_identity!(Term);
node_identity!(Type);

impl Term {
    fn mk(kind: TermKind) -> Term {
        Term(intern(Shape::Tm(kind), None))
    }

    fn mk_hinted(kind: TermKind, hint: &str) -> Term {
        Term(intern(Shape::Tm(kind), Some(hint)))
    }

    pub fn kind(&self) -> &TermKind {
        match &self.0.shape {
            Shape::Tm(k) => k,
            Shape::Ty(_) => unreachable!(),
        }
    }

    pub fn bvar(i: u32) -> Term {
        Term::mk(TermKind::BVar(i))
    }
    pub fn var(s: &Symbol) -> Term {
        Term::mk(TermKind::Var(s.clone()))
    }
    pub fn cnst(s: &Symbol) -> Term {
        Term::mk(TermKind::Const(s.clone()))
    }
    pub fn app(f: &Term, a: &Term) -> Term {
        Term::mk(TermKind::App(f.clone(), a.clone()))
    }
    pub fn apps(f: &Term, args: &[Term]) -> Term {
        args.iter().fold(f.clone(), |acc, a| Term::app(&acc, a))
    }
    pub fn lam(ty: &Type, body: &Term) -> Term {
        Term::mk(TermKind::Lam(ty.clone(), body.clone()))
    }
    pub fn lam_hinted(hint: &str, ty: &Type, body: &Term) -> Term {
        Term::mk_hinted(TermKind::Lam(ty.clone(), body.clone()), hint)
    }
    pub fn bot() -> Term {
        Term::mk(TermKind::Bot)
    }
    pub fn top() -> Term {
        Term::neg(&Term::bot())
    }
    pub fn neg(s: &Term) -> Term {
        Term::mk(TermKind::Neg(s.clone()))
    }
    pub fn imp(s: &Term, t: &Term) -> Term {
        Term::mk(TermKind::Imp(s.clone(), t.clone()))
    }
    pub fn eq(ty: &Type, s: &Term, t: &Term) -> Term {
        Term::mk(TermKind::Eq(ty.clone(), s.clone(), t.clone()))
    }
    pub fn neq(ty: &Type, s: &Term, t: &Term) -> Term {
        Term::neg(&Term::eq(ty, s, t))
    }
    pub fn forall(ty: &Type, body: &Term) -> Term {
        Term::mk(TermKind::Forall(ty.clone(), body.clone()))
    }
    pub fn forall_hinted(hint: &str, ty: &Type, body: &Term) -> Term {
        Term::mk_hinted(TermKind::Forall(ty.clone(), body.clone()), hint)
    }
    /// `s & t` as `~(s => ~t)`.
    pub fn and(s: &Term, t: &Term) -> Term {
        Term::neg(&Term::imp(s, &Term::neg(t)))
    }
    /// `s | t` as `~s => t`.
    pub fn or(s: &Term, t: &Term) -> Term {
        Term::imp(&Term::neg(s), t)
    }

    /// `\x:ty. body` where `x` is a free variable of `body`.
    pub fn lam_over(x: &Symbol, ty: &Type, body: &Term) -> Term {
        Term::lam_hinted(x.hint(), ty, &body.abstract_var(x))
    }
    /// `!x:ty. body` where `x` is a free variable of `body`.
    pub fn forall_over(x: &Symbol, ty: &Type, body: &Term) -> Term {
        Term::forall_hinted(x.hint(), ty, &body.abstract_var(x))
    }
    pub fn forall_many(binders: &[(Symbol, Type)], body: &Term) -> Term {
        binders.iter().rev().fold(body.clone(), |acc, (x, ty)| Term::forall_over(x, ty, &acc))
    }

    pub fn as_var(&self) -> Option<&Symbol> {
        match self.kind() {
            TermKind::Var(s) => Some(s),
            _ => None,
        }
    }
    pub fn as_const(&self) -> Option<&Symbol> {
        match self.kind() {
            TermKind::Const(s) => Some(s),
            _ => None,
        }
    }
    /// Name of a variable or constant.
    pub fn as_name(&self) -> Option<&Symbol> {
        match self.kind() {
            TermKind::Var(s) | TermKind::Const(s) => Some(s),
            _ => None,
        }
    }
    pub fn is_bot(&self) -> bool {
        matches!(self.kind(), TermKind::Bot)
    }
    pub fn as_neg(&self) -> Option<&Term> {
        match self.kind() {
            TermKind::Neg(s) => Some(s),
            _ => None,
        }
    }

    /// Head and arguments of an application spine.
    pub fn decompose_spine(&self) -> (Term, Vec<Term>) {
        let mut args = Vec::new();
        let mut cur = self.clone();
        while let TermKind::App(f, a) = cur.kind() {
            args.push(a.clone());
            let next = f.clone();
            cur = next;
        }
        args.reverse();
        (cur, args)
    }

    pub fn binder_name(&self) -> String {
        self.binder_hint().map(|s| s.as_str().to_string()).unwrap_or_else(|| "X".to_string())
    }

    /// Opens a `Lam` or `Forall` with a fresh variable.
    pub fn open_binder(&self) -> Option<(Symbol, Type, Term)> {
        match self.kind() {
            TermKind::Lam(ty, b) | TermKind::Forall(ty, b) => {
                let x = fresh_symbol(&self.binder_name());
                Some((x.clone(), ty.clone(), b.instantiate(&Term::var(&x))))
            }
            _ => None,
        }
    }

    pub fn shift(&self, d: i32, cutoff: u32) -> Term {
        if d == 0 {
            return self.clone();
        }
        map_tm(self, 0, &mut Shift { d, cutoff })
    }

    /// Replaces loose index 0 with `v` and lowers the other loose indices.
    pub fn instantiate(&self, v: &Term) -> Term {
        map_tm(self, 0, &mut Inst { v })
    }

    /// Removes loose index `k`, which must not occur, lowering the ones above it.
    pub fn drop_loose(&self, k: u32) -> Term {
        map_tm(self, 0, &mut Drop { k })
    }

    /// Turns free occurrences of `x` into loose index 0.
    pub fn abstract_var(&self, x: &Symbol) -> Term {
        map_tm(&self.shift(1, 0), 0, &mut Abstract { x })
    }

    /// Simultaneous substitution of free variables.
    pub fn subst(&self, map: &FxHashMap<Symbol, Term>) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        map_tm(self, 0, &mut Subst { map })
    }

    pub fn subst1(&self, x: &Symbol, v: &Term) -> Term {
        let mut m = FxHashMap::default();
        m.insert(x.clone(), v.clone());
        self.subst(&m)
    }

    /// Whether loose index `i` occurs.
    pub fn has_loose(&self, i: u32) -> bool {
        let mut found = false;
        visit_tm(self, 0, &mut |n, depth| {
            if found || n.loose <= i + depth {
                return false;
            }
            if let Shape::Tm(TermKind::BVar(j)) = &n.shape {
                if *j == i + depth {
                    found = true;
                }
            }
            true
        });
        found
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        let mut seen = FxHashSet::default();
        collect_names(&self.0, true, &mut out, &mut seen);
        out
    }

    pub fn constants(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        let mut seen = FxHashSet::default();
        collect_names(&self.0, false, &mut out, &mut seen);
        out
    }

    pub fn contains_var(&self, x: &Symbol) -> bool {
        self.has_free_vars() && self.free_vars().iter().any(|y| y == x)
    }

    /// All subterms, including those inside types, each listed once.
    pub fn subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        let mut seen = FxHashSet::default();
        fn go(n: &Arc<Node>, out: &mut Vec<Term>, seen: &mut FxHashSet<u32>) {
            if !seen.insert(n.id) {
                return;
            }
            for c in children(n) {
                go(&c, out, seen);
            }
            if let Shape::Tm(_) = n.shape {
                out.push(Term(n.clone()));
            }
        }
        go(&self.0, &mut out, &mut seen);
        out
    }

    /// Beta-eta normal form.
    pub fn normalize(&self) -> Term {
        norm_tm(self)
    }
}

impl Type {
    fn mk(kind: TypeKind) -> Type {
        Type(intern(Shape::Ty(kind), None))
    }

    pub fn kind(&self) -> &TypeKind {
        match &self.0.shape {
            Shape::Ty(k) => k,
            Shape::Tm(_) => unreachable!(),
        }
    }

    pub fn bool() -> Type {
        Type::mk(TypeKind::Bool)
    }
    pub fn base(name: &Symbol, args: Vec<Term>) -> Type {
        Type::mk(TypeKind::Base(name.clone(), args))
    }
    pub fn simple(name: &str) -> Type {
        Type::base(&Symbol::new(name), Vec::new())
    }
    pub fn pi(dom: &Type, cod: &Type) -> Type {
        Type::mk(TypeKind::Pi(dom.clone(), cod.clone()))
    }
    pub fn pi_hinted(hint: &str, dom: &Type, cod: &Type) -> Type {
        Type(intern(Shape::Ty(TypeKind::Pi(dom.clone(), cod.clone())), Some(hint)))
    }
    /// Non-dependent function type.
    pub fn arrow(dom: &Type, cod: &Type) -> Type {
        Type::pi(dom, &cod.shift(1, 0))
    }
    pub fn arrows(doms: &[Type], cod: &Type) -> Type {
        doms.iter().rev().fold(cod.clone(), |acc, d| Type::arrow(d, &acc))
    }
    pub fn pi_over(x: &Symbol, dom: &Type, cod: &Type) -> Type {
        Type::pi_hinted(x.hint(), dom, &cod.abstract_var(x))
    }

    pub fn is_bool(&self) -> bool {
        matches!(self.kind(), TypeKind::Bool)
    }

    /// Contains no term arguments anywhere, so it is its own skeleton.
    pub fn is_simple(&self) -> bool {
        match self.kind() {
            TypeKind::Bool => true,
            TypeKind::Base(_, args) => args.is_empty(),
            TypeKind::Pi(a, b) => a.is_simple() && b.is_simple(),
        }
    }

    /// Base type applied to arguments: `a t1 .. tn`.
    pub fn as_base(&self) -> Option<(&Symbol, &[Term])> {
        match self.kind() {
            TypeKind::Base(a, args) => Some((a, args)),
            _ => None,
        }
    }

    pub fn as_pi(&self) -> Option<(&Type, &Type)> {
        match self.kind() {
            TypeKind::Pi(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn binder_name(&self) -> String {
        self.binder_hint().map(|s| s.as_str().to_string()).unwrap_or_else(|| "X".to_string())
    }

    pub fn shift(&self, d: i32, cutoff: u32) -> Type {
        if d == 0 {
            return self.clone();
        }
        map_ty(self, 0, &mut Shift { d, cutoff })
    }
    pub fn instantiate(&self, v: &Term) -> Type {
        map_ty(self, 0, &mut Inst { v })
    }
    pub fn abstract_var(&self, x: &Symbol) -> Type {
        map_ty(&self.shift(1, 0), 0, &mut Abstract { x })
    }
    pub fn subst(&self, map: &FxHashMap<Symbol, Term>) -> Type {
        if map.is_empty() {
            return self.clone();
        }
        map_ty(self, 0, &mut Subst { map })
    }
    pub fn subst1(&self, x: &Symbol, v: &Term) -> Type {
        let mut m = FxHashMap::default();
        m.insert(x.clone(), v.clone());
        self.subst(&m)
    }
    pub fn free_vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        let mut seen = FxHashSet::default();
        collect_names(&self.0, true, &mut out, &mut seen);
        out
    }
    pub fn constants(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        let mut seen = FxHashSet::default();
        collect_names(&self.0, false, &mut out, &mut seen);
        out
    }
    /// Base type names occurring in this type.
    pub fn base_names(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        fn go(t: &Type, out: &mut Vec<Symbol>) {
            match t.kind() {
                TypeKind::Bool => {}
                TypeKind::Base(a, _) => {
                    if !out.contains(a) {
                        out.push(a.clone())
                    }
                }
                TypeKind::Pi(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
    pub fn has_loose(&self, i: u32) -> bool {
        let mut found = false;
        visit_ty(self, 0, &mut |n, depth| {
            if found || n.loose <= i + depth {
                return false;
            }
            if let Shape::Tm(TermKind::BVar(j)) = &n.shape {
                if *j == i + depth {
                    found = true;
                }
            }
            true
        });
        found
    }
    pub fn normalize(&self) -> Type {
        norm_ty(self)
    }
}

fn children(n: &Node) -> Vec<Arc<Node>> {
    match &n.shape {
        Shape::Tm(k) => match k {
            TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => vec![],
            TermKind::App(f, a) => vec![f.0.clone(), a.0.clone()],
            TermKind::Lam(ty, b) | TermKind::Forall(ty, b) => vec![ty.0.clone(), b.0.clone()],
            TermKind::Neg(s) => vec![s.0.clone()],
            TermKind::Imp(s, t) => vec![s.0.clone(), t.0.clone()],
            TermKind::Eq(ty, s, t) => vec![ty.0.clone(), s.0.clone(), t.0.clone()],
        },
        Shape::Ty(k) => match k {
            TypeKind::Bool => vec![],
            TypeKind::Base(_, args) => args.iter().map(|a| a.0.clone()).collect(),
            TypeKind::Pi(a, b) => vec![a.0.clone(), b.0.clone()],
        },
    }
}

fn collect_names(n: &Arc<Node>, vars: bool, out: &mut Vec<Symbol>, seen: &mut FxHashSet<u32>) {
    if (vars && !n.free) || !seen.insert(n.id) {
        return;
    }
    match &n.shape {
        Shape::Tm(TermKind::Var(s)) if vars => {
            if !out.contains(s) {
                out.push(s.clone())
            }
        }
        Shape::Tm(TermKind::Const(s)) if !vars => {
            if !out.contains(s) {
                out.push(s.clone())
            }
        }
        _ => {
            for c in children(n) {
                collect_names(&c, vars, out, seen);
            }
        }
    }
}

/// Pre-order walk with binder depth; the callback returns whether to descend.
fn visit_tm(t: &Term, depth: u32, f: &mut impl FnMut(&Node, u32) -> bool) {
    visit_node(&t.0, depth, f)
}
fn visit_ty(t: &Type, depth: u32, f: &mut impl FnMut(&Node, u32) -> bool) {
    visit_node(&t.0, depth, f)
}
fn visit_node(n: &Arc<Node>, depth: u32, f: &mut impl FnMut(&Node, u32) -> bool) {
    if !f(n, depth) {
        return;
    }
    match &n.shape {
        Shape::Tm(TermKind::Lam(ty, b)) | Shape::Tm(TermKind::Forall(ty, b)) => {
            visit_node(&ty.0, depth, f);
            visit_node(&b.0, depth + 1, f);
        }
        Shape::Ty(TypeKind::Pi(a, b)) => {
            visit_node(&a.0, depth, f);
            visit_node(&b.0, depth + 1, f);
        }
        _ => {
            for c in children(n) {
                visit_node(&c, depth, f);
            }
        }
    }
}

trait Mapper {
    fn skip(&self, n: &Node, depth: u32) -> bool;
    fn leaf(&mut self, t: &TermKind, depth: u32) -> Option<Term>;
}

struct Shift {
    d: i32,
    cutoff: u32,
}
impl Mapper for Shift {
    fn skip(&self, n: &Node, depth: u32) -> bool {
        n.loose <= self.cutoff + depth
    }
    fn leaf(&mut self, t: &TermKind, depth: u32) -> Option<Term> {
        match t {
            TermKind::BVar(i) if *i >= self.cutoff + depth => {
                let j = *i as i64 + self.d as i64;
                assert!(j >= 0, "shift produced a negative index");
                Some(Term::bvar(j as u32))
            }
            _ => None,
        }
    }
}

struct Inst<'a> {
    v: &'a Term,
}
impl Mapper for Inst<'_> {
    fn skip(&self, n: &Node, depth: u32) -> bool {
        n.loose <= depth
    }
    fn leaf(&mut self, t: &TermKind, depth: u32) -> Option<Term> {
        match t {
            TermKind::BVar(i) if *i == depth => Some(self.v.shift(depth as i32, 0)),
            TermKind::BVar(i) if *i > depth => Some(Term::bvar(i - 1)),
            _ => None,
        }
    }
}

struct Drop {
    k: u32,
}
impl Mapper for Drop {
    fn skip(&self, n: &Node, depth: u32) -> bool {
        n.loose <= self.k + depth
    }
    fn leaf(&mut self, t: &TermKind, depth: u32) -> Option<Term> {
        match t {
            TermKind::BVar(i) if *i > self.k + depth => Some(Term::bvar(i - 1)),
            TermKind::BVar(i) if *i == self.k + depth => panic!("dropped index occurs"),
            _ => None,
        }
    }
}

struct Abstract<'a> {
    x: &'a Symbol,
}
impl Mapper for Abstract<'_> {
    fn skip(&self, n: &Node, _: u32) -> bool {
        !n.free
    }
    fn leaf(&mut self, t: &TermKind, depth: u32) -> Option<Term> {
        match t {
            TermKind::Var(y) if y == self.x => Some(Term::bvar(depth)),
            _ => None,
        }
    }
}

struct Subst<'a> {
    map: &'a FxHashMap<Symbol, Term>,
}
impl Mapper for Subst<'_> {
    fn skip(&self, n: &Node, _: u32) -> bool {
        !n.free
    }
    fn leaf(&mut self, t: &TermKind, depth: u32) -> Option<Term> {
        match t {
            TermKind::Var(y) => self.map.get(y).map(|v| v.shift(depth as i32, 0)),
            _ => None,
        }
    }
}

fn map_tm(t: &Term, depth: u32, m: &mut impl Mapper) -> Term {
    if m.skip(&t.0, depth) {
        return t.clone();
    }
    let hint = || t.binder_hint();
    match t.kind() {
        TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => {
            m.leaf(t.kind(), depth).unwrap_or_else(|| t.clone())
        }
        TermKind::App(f, a) => Term::app(&map_tm(f, depth, m), &map_tm(a, depth, m)),
        TermKind::Lam(ty, b) => {
            let r = Term::lam(&map_ty(ty, depth, m), &map_tm(b, depth + 1, m));
            carry_hint(&r, hint)
        }
        TermKind::Forall(ty, b) => {
            let r = Term::forall(&map_ty(ty, depth, m), &map_tm(b, depth + 1, m));
            carry_hint(&r, hint)
        }
        TermKind::Neg(s) => Term::neg(&map_tm(s, depth, m)),
        TermKind::Imp(s, u) => Term::imp(&map_tm(s, depth, m), &map_tm(u, depth, m)),
        TermKind::Eq(ty, s, u) => {
            Term::eq(&map_ty(ty, depth, m), &map_tm(s, depth, m), &map_tm(u, depth, m))
        }
    }
}

fn map_ty(t: &Type, depth: u32, m: &mut impl Mapper) -> Type {
    if m.skip(&t.0, depth) {
        return t.clone();
    }
    match t.kind() {
        TypeKind::Bool => t.clone(),
        TypeKind::Base(a, args) => Type::base(a, args.iter().map(|x| map_tm(x, depth, m)).collect()),
        TypeKind::Pi(a, b) => {
            let r = Type::pi(&map_ty(a, depth, m), &map_ty(b, depth + 1, m));
            if let Some(h) = t.binder_hint() {
                set_hint(r.0.id, &h);
            }
            r
        }
    }
}

fn set_hint(id: u32, h: &Symbol) {
    store().lock().unwrap_or_else(|e| e.into_inner()).hints.entry(id).or_insert_with(|| h.clone());
}

fn carry_hint(r: &Term, hint: impl FnOnce() -> Option<Symbol>) -> Term {
    if let Some(h) = hint() {
        set_hint(r.0.id, &h);
    }
    r.clone()
}

thread_local! {
    static NORM_TM: RefCell<FxHashMap<u32, Term>> = RefCell::new(FxHashMap::default());
    static NORM_TY: RefCell<FxHashMap<u32, Type>> = RefCell::new(FxHashMap::default());
}

/// Drops the per-thread normalization memo.
pub fn clear_normalize_cache() {
    NORM_TM.with(|c| c.borrow_mut().clear());
    NORM_TY.with(|c| c.borrow_mut().clear());
}

fn norm_tm(t: &Term) -> Term {
    if let Some(r) = NORM_TM.with(|c| c.borrow().get(&t.0.id).cloned()) {
        return r;
    }
    let r = match t.kind() {
        TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => t.clone(),
        TermKind::App(f, a) => {
            let f2 = norm_tm(f);
            let a2 = norm_tm(a);
            match f2.kind() {
                TermKind::Lam(_, body) => norm_tm(&body.instantiate(&a2)),
                _ => Term::app(&f2, &a2),
            }
        }
        TermKind::Lam(ty, b) => {
            let b2 = norm_tm(b);
            match eta_body(&b2) {
                Some(g) => g,
                None => carry_hint(&Term::lam(&norm_ty(ty), &b2), || t.binder_hint()),
            }
        }
        TermKind::Forall(ty, b) => {
            carry_hint(&Term::forall(&norm_ty(ty), &norm_tm(b)), || t.binder_hint())
        }
        TermKind::Neg(s) => Term::neg(&norm_tm(s)),
        TermKind::Imp(s, u) => Term::imp(&norm_tm(s), &norm_tm(u)),
        TermKind::Eq(ty, s, u) => Term::eq(&norm_ty(ty), &norm_tm(s), &norm_tm(u)),
    };
    NORM_TM.with(|c| c.borrow_mut().insert(t.0.id, r.clone()));
    r
}

/// `g` when `body` is `g 0` with index 0 not free in `g`, lowered out of the binder.
pub fn eta_body(body: &Term) -> Option<Term> {
    if let TermKind::App(g, x) = body.kind() {
        if matches!(x.kind(), TermKind::BVar(0)) && !g.has_loose(0) {
            return Some(g.shift(-1, 0));
        }
    }
    None
}

fn norm_ty(t: &Type) -> Type {
    if let Some(r) = NORM_TY.with(|c| c.borrow().get(&t.0.id).cloned()) {
        return r;
    }
    let r = match t.kind() {
        TypeKind::Bool => t.clone(),
        TypeKind::Base(a, args) => Type::base(a, args.iter().map(norm_tm).collect()),
        TypeKind::Pi(a, b) => {
            let r = Type::pi(&norm_ty(a), &norm_ty(b));
            if let Some(h) = t.binder_hint() {
                set_hint(r.0.id, &h);
            }
            r
        }
    };
    NORM_TY.with(|c| c.borrow_mut().insert(t.0.id, r.clone()));
    r
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
