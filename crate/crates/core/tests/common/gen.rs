//! Random well-typed formulas for property tests.

use super::LIST_SIG;
use dholt_core::problem::Problem;
use dholt_core::term::{Symbol, Term, TermKind, Type};
use dholt_core::tptp::parse_problem;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SIMPLE_SIG: &str = "thf(i_type, type, i: $tType).
thf(a_decl, type, a: i).
thf(b_decl, type, b: i).
thf(f_decl, type, f: i > i).
thf(h_decl, type, h: i > i > i).
thf(g_decl, type, g: i > $o).
thf(p_decl, type, p: $o).
thf(q_decl, type, q: $o).
";

pub fn simple_problem() -> Problem {
    parse_problem(SIMPLE_SIG, "simple").unwrap()
}

pub fn list_problem() -> Problem {
    parse_problem(LIST_SIG, "lists").unwrap()
}

/// Number of term nodes, types not included.
pub fn node_count(t: &Term) -> usize {
    1 + match t.kind() {
        TermKind::BVar(_) | TermKind::Var(_) | TermKind::Const(_) | TermKind::Bot => 0,
        TermKind::App(x, y) | TermKind::Imp(x, y) | TermKind::Eq(_, x, y) => node_count(x) + node_count(y),
        TermKind::Lam(_, x) | TermKind::Forall(_, x) | TermKind::Neg(x) => node_count(x),
    }
}

fn c(name: &str) -> Term {
    Term::cnst(&Symbol::new(name))
}

struct Gen {
    rng: ChaCha8Rng,
    next: usize,
}

impl Gen {
    fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), next: 0 }
    }

    fn var(&mut self, hint: &str) -> Symbol {
        self.next += 1;
        Symbol::new(&format!("{}{}", hint, self.next))
    }
}

/// Simply typed: i, $o, i > i.
struct Simple {
    g: Gen,
    ind: Vec<Term>,
    funs: Vec<Term>,
    props: Vec<Term>,
}

impl Simple {
    fn i(&self) -> Type {
        Type::simple("i")
    }
    fn ii(&self) -> Type {
        Type::arrow(&self.i(), &self.i())
    }

    fn ind(&mut self, d: u32) -> Term {
        let k = if d == 0 { self.g.rng.gen_range(0..3) } else { self.g.rng.gen_range(0..7) };
        match k {
            0 => c("a"),
            1 => c("b"),
            2 => self.ind.choose(&mut self.g.rng).cloned().unwrap_or_else(|| c("a")),
            3 => Term::app(&c("f"), &self.ind(d - 1)),
            4 => Term::apps(&c("h"), &[self.ind(d - 1), self.ind(d - 1)]),
            5 => {
                let fun = self.fun(d - 1);
                Term::app(&fun, &self.ind(d - 1))
            }
            _ => {
                let x = self.g.var("X");
                self.ind.push(Term::var(&x));
                let body = self.ind(d - 1);
                self.ind.pop();
                Term::app(&Term::lam_over(&x, &self.i(), &body), &self.ind(d - 1))
            }
        }
    }

    fn fun(&mut self, d: u32) -> Term {
        match self.g.rng.gen_range(0..4) {
            0 => c("f"),
            1 if !self.funs.is_empty() => self.funs.choose(&mut self.g.rng).cloned().unwrap(),
            2 => Term::app(&c("h"), &self.ind(d)),
            _ => {
                let x = self.g.var("X");
                self.ind.push(Term::var(&x));
                let body = self.ind(d);
                self.ind.pop();
                Term::lam_over(&x, &self.i(), &body)
            }
        }
    }

    fn prop(&mut self, d: u32) -> Term {
        let k = if d == 0 { self.g.rng.gen_range(0..4) } else { self.g.rng.gen_range(0..12) };
        match k {
            0 => c("p"),
            1 => c("q"),
            2 => self.props.choose(&mut self.g.rng).cloned().unwrap_or_else(Term::top),
            3 => Term::app(&c("g"), &self.ind(0)),
            4 => Term::neg(&self.prop(d - 1)),
            5 => Term::imp(&self.prop(d - 1), &self.prop(d - 1)),
            6 => Term::eq(&self.i(), &self.ind(d - 1), &self.ind(d - 1)),
            7 => Term::eq(&Type::bool(), &self.prop(d - 1), &self.prop(d - 1)),
            8 => {
                let ty = self.ii();
                Term::eq(&ty, &self.fun(d - 1), &self.fun(d - 1))
            }
            9 => {
                let x = self.g.var("X");
                self.ind.push(Term::var(&x));
                let body = self.prop(d - 1);
                self.ind.pop();
                Term::forall_over(&x, &self.i(), &body)
            }
            10 => {
                let x = self.g.var("F");
                self.funs.push(Term::var(&x));
                let body = self.prop(d - 1);
                self.funs.pop();
                Term::forall_over(&x, &self.ii(), &body)
            }
            _ => {
                let x = self.g.var("P");
                self.props.push(Term::var(&x));
                let body = self.prop(d - 1);
                self.props.pop();
                Term::forall_over(&x, &Type::bool(), &body)
            }
        }
    }
}

/// A closed formula over `SIMPLE_SIG`.
pub fn simple_formula(seed: u64) -> Term {
    let mut s = Simple { g: Gen::new(seed), ind: Vec::new(), funs: Vec::new(), props: Vec::new() };
    let d = s.g.rng.gen_range(1..5);
    s.prop(d)
}

/// Dependent lists: nat, elem, lst n.
struct Dep {
    g: Gen,
    nats: Vec<Term>,
    elems: Vec<Term>,
    /// List variables with their length.
    lists: Vec<(Term, Term)>,
    /// Length-preserving function variables with their length.
    maps: Vec<(Term, Term)>,
}

fn lst(n: &Term) -> Type {
    Type::base(&Symbol::new("lst"), vec![n.clone()])
}

fn nat() -> Type {
    Type::simple("nat")
}

impl Dep {
    fn nat(&mut self, d: u32) -> Term {
        let k = if d == 0 { self.g.rng.gen_range(0..2) } else { self.g.rng.gen_range(0..4) };
        match k {
            0 => c("zero"),
            1 => self.nats.choose(&mut self.g.rng).cloned().unwrap_or_else(|| c("zero")),
            2 => Term::app(&c("s"), &self.nat(d - 1)),
            _ => Term::apps(&c("plus"), &[self.nat(d - 1), self.nat(d - 1)]),
        }
    }

    fn elem(&mut self) -> Term {
        match self.elems.choose(&mut self.g.rng) {
            Some(e) => e.clone(),
            None => {
                let x = self.g.var("E");
                // Free elements are fine: the property tests erase open terms too.
                Term::var(&x)
            }
        }
    }

    /// A list and its length.
    fn list(&mut self, d: u32) -> (Term, Term) {
        let k = if d == 0 { self.g.rng.gen_range(0..2) } else { self.g.rng.gen_range(0..5) };
        match k {
            0 => (c("nil"), c("zero")),
            1 => self.lists.choose(&mut self.g.rng).cloned().unwrap_or_else(|| (c("nil"), c("zero"))),
            2 => {
                let (l, n) = self.list(d - 1);
                let e = self.elem();
                (Term::apps(&c("cons"), &[n.clone(), e, l]), Term::app(&c("s"), &n))
            }
            3 => {
                let (l, n) = self.list(d - 1);
                let (k, m) = self.list(d - 1);
                (Term::apps(&c("app"), &[n.clone(), m.clone(), l, k]), Term::apps(&c("plus"), &[n, m]))
            }
            _ => match self.maps.choose(&mut self.g.rng).cloned() {
                Some((f, n)) => {
                    let arg = self.lists.iter().find(|(_, m)| *m == n).cloned();
                    match arg {
                        Some((l, _)) => (Term::app(&f, &l), n),
                        None => (c("nil"), c("zero")),
                    }
                }
                None => self.list(d - 1),
            },
        }
    }

    fn prop(&mut self, d: u32) -> Term {
        let k = if d == 0 { self.g.rng.gen_range(0..2) } else { self.g.rng.gen_range(0..11) };
        match k {
            0 => {
                let (a, b) = (self.nat(1), self.nat(1));
                Term::eq(&nat(), &a, &b)
            }
            1 => {
                let (l, n) = self.list(1);
                let (k, _) = self.list(1);
                Term::eq(&lst(&n), &l, &k)
            }
            2 => Term::neg(&self.prop(d - 1)),
            3 => Term::imp(&self.prop(d - 1), &self.prop(d - 1)),
            4 => {
                let x = self.g.var("N");
                self.nats.push(Term::var(&x));
                let body = self.prop(d - 1);
                self.nats.pop();
                Term::forall_over(&x, &nat(), &body)
            }
            5 | 6 => {
                let n = self.nat(1);
                let x = self.g.var("L");
                self.lists.push((Term::var(&x), n.clone()));
                let body = self.prop(d - 1);
                self.lists.pop();
                Term::forall_over(&x, &lst(&n), &body)
            }
            7 => {
                let x = self.g.var("E");
                self.elems.push(Term::var(&x));
                let body = self.prop(d - 1);
                self.elems.pop();
                Term::forall_over(&x, &Type::simple("elem"), &body)
            }
            8 => {
                let n = self.nat(0);
                let ty = Type::arrow(&lst(&n), &lst(&n));
                let x = self.g.var("F");
                self.maps.push((Term::var(&x), n));
                let body = self.prop(d - 1);
                self.maps.pop();
                Term::forall_over(&x, &ty, &body)
            }
            9 => {
                // Equation at a dependent function type.
                let x = self.g.var("N");
                let y = self.g.var("L");
                let vx = Term::var(&x);
                let ty = Type::pi_over(&x, &nat(), &Type::arrow(&lst(&vx), &lst(&vx)));
                let id = Term::lam_over(&x, &nat(), &Term::lam_over(&y, &lst(&vx), &Term::var(&y)));
                let pad = Term::apps(&c("app"), &[vx.clone(), c("zero"), Term::var(&y), c("nil")]);
                let other = if self.g.rng.gen_bool(0.5) {
                    id.clone()
                } else {
                    Term::lam_over(&x, &nat(), &Term::lam_over(&y, &lst(&vx), &pad))
                };
                Term::eq(&ty, &id, &other)
            }
            _ => {
                let x = self.g.var("G");
                let ty = Type::arrow(&nat(), &nat());
                self.nats.push(Term::app(&Term::var(&x), &c("zero")));
                let body = self.prop(d - 1);
                self.nats.pop();
                Term::forall_over(&x, &ty, &body)
            }
        }
    }
}

/// A formula over `LIST_SIG`; element variables may be left free.
pub fn dependent_formula(seed: u64) -> Term {
    let mut s = Dep { g: Gen::new(seed), nats: Vec::new(), elems: Vec::new(), lists: Vec::new(), maps: Vec::new() };
    let d = s.g.rng.gen_range(1..5);
    s.prop(d)
}
