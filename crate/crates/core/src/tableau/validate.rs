//! Independent checker for refutation traces.
//!
//! Works from the text form only: formulas are re-parsed against the DHOL or
//! the erased signature, and every step is recomputed from its premises.

use super::trace::{parse_trace, InitRole, RawAdd, RawPremise, RawStepLine, Rule, Trace, TraceParseError};
use super::{stratum, RuleMode, Side, Stratum};
use crate::erasure::{erase_context_entry, erase_formula, erase_theory, PerTable};
use crate::problem::Problem;
use crate::term::{Symbol, Term, TermKind, Type, TypeKind};
use crate::tptp::{parse_formula, parse_type};
use crate::typing::{infer_skeleton_type, infer_type, Context, Signature};
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Parse(#[from] TraceParseError),
    #[error("trace is for problem {found}, expected {expected}")]
    WrongProblem { expected: String, found: String },
    #[error("initial branch: {0}")]
    Init(String),
    #[error("tree structure: {0}")]
    Structure(String),
    #[error("step {id} (line {line}): {msg}")]
    Step { id: usize, line: usize, msg: String },
    #[error("open leaf below step {id} alternative {alt}")]
    OpenLeaf { id: usize, alt: usize },
}

/// Summary of a validated trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub steps: usize,
    pub rules: Vec<String>,
}

pub fn validate_trace(problem: &Problem, trace: &Trace) -> Result<ValidationReport, ValidationError> {
    validate_trace_text(problem, &trace.to_text())
}

#[derive(Clone)]
struct PathState {
    forms: FxHashMap<usize, (Side, Term)>,
    present: FxHashSet<(Side, Term)>,
    ctx: [Context; 2],
    last: Option<Stratum>,
}

struct StepNode<'a> {
    lines: Vec<&'a RawStepLine>,
}

struct Checker<'a> {
    mode: RuleMode,
    sigs: [Signature; 2],
    table: PerTable,
    nodes: FxHashMap<usize, StepNode<'a>>,
    children: FxHashMap<(usize, usize), usize>,
    steps: usize,
    rules: Vec<String>,
}

fn serr(l: &RawStepLine, msg: impl Into<String>) -> ValidationError {
    ValidationError::Step { id: l.id, line: l.line, msg: msg.into() }
}

fn neg_of(t: &Term) -> Option<&Term> {
    match t.kind() {
        TermKind::Neg(s) => Some(s),
        _ => None,
    }
}

fn eq_parts(t: &Term) -> Option<(Type, Term, Term)> {
    match t.kind() {
        TermKind::Eq(ty, a, b) => Some((ty.clone(), a.clone(), b.clone())),
        _ => None,
    }
}

fn spine(t: &Term) -> (Term, Vec<Term>) {
    let mut args = Vec::new();
    let mut cur = t.clone();
    while let TermKind::App(f, a) = cur.kind().clone() {
        args.push(a);
        cur = f;
    }
    args.reverse();
    (cur, args)
}

fn is_name(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Var(_) | TermKind::Const(_))
}

pub fn validate_trace_text(problem: &Problem, text: &str) -> Result<ValidationReport, ValidationError> {
    let raw = parse_trace(text)?;
    if raw.problem != problem.name {
        return Err(ValidationError::WrongProblem { expected: problem.name.clone(), found: raw.problem });
    }
    let uses_h = raw.mode != RuleMode::NativeOnly;
    let sig_d = problem.signature();
    let (sig_h, table, axioms_h) = if uses_h {
        let th = erase_theory(problem);
        let ax = th.axioms();
        (th.sig, th.table, ax)
    } else {
        (Signature::new(), PerTable::default(), Vec::new())
    };
    let mut ck = Checker {
        mode: raw.mode,
        sigs: [sig_d, sig_h],
        table,
        nodes: FxHashMap::default(),
        children: FxHashMap::default(),
        steps: 0,
        rules: Vec::new(),
    };

    // Initial branch.
    let mut expected: Vec<(Side, InitRole, Term)> = Vec::new();
    for f in problem.axiom_formulas() {
        expected.push((Side::D, InitRole::Theory, f.normalize()));
    }
    if let Some(c) = &problem.conjecture {
        expected.push((Side::D, InitRole::Goal, Term::neg(&c.formula).normalize()));
    }
    for f in axioms_h {
        expected.push((Side::H, InitRole::Theory, f.normalize()));
    }
    let mut st = PathState {
        forms: FxHashMap::default(),
        present: FxHashSet::default(),
        ctx: [Context::new(), Context::new()],
        last: None,
    };
    let mut found = Vec::new();
    for i in &raw.init {
        if i.side == Side::H && !uses_h {
            return Err(ValidationError::Init("erased formula in a native-only trace".into()));
        }
        let t = parse_formula(&i.text, &ck.sigs[i.side.index()], &Context::new())
            .map_err(|e| ValidationError::Init(format!("f{}: {}", i.fid, e)))?
            .normalize();
        if st.forms.insert(i.fid, (i.side, t.clone())).is_some() {
            return Err(ValidationError::Init(format!("duplicate id f{}", i.fid)));
        }
        st.present.insert((i.side, t.clone()));
        found.push((i.side, i.role, t));
    }
    for e in &expected {
        if !found.contains(e) {
            return Err(ValidationError::Init(format!("missing {} formula {}", e.0.letter(), e.2)));
        }
    }
    for f in &found {
        if !expected.contains(f) {
            return Err(ValidationError::Init(format!("unexpected formula {}", f.2)));
        }
    }

    // Tree structure.
    for l in &raw.steps {
        ck.nodes.entry(l.id).or_insert_with(|| StepNode { lines: Vec::new() }).lines.push(l);
    }
    let mut roots = Vec::new();
    for (id, node) in ck.nodes.iter_mut() {
        node.lines.sort_by_key(|l| l.alt);
        let first = node.lines[0];
        for (k, l) in node.lines.iter().enumerate() {
            if l.alt != k {
                return Err(ValidationError::Structure(format!("step {} has a gap at alternative {}", id, k)));
            }
            if l.parent != first.parent
                || l.rule != first.rule
                || l.side != first.side
                || l.premises != first.premises
                || l.inst != first.inst
            {
                return Err(ValidationError::Structure(format!("step {} lines disagree", id)));
            }
        }
        match first.parent {
            None => roots.push(*id),
            Some(p) => {
                if ck.children.insert(p, *id).is_some() {
                    return Err(ValidationError::Structure(format!("two steps below {}.{}", p.0, p.1)));
                }
            }
        }
    }
    for (p, a) in ck.children.keys() {
        let ok = ck.nodes.get(p).map(|n| *a < n.lines.len()).unwrap_or(false);
        if !ok {
            return Err(ValidationError::Structure(format!("parent {}.{} does not exist", p, a)));
        }
    }
    let has_bot = st.present.iter().any(|(_, t)| t.is_bot());
    match roots.len() {
        0 if has_bot => {}
        0 => return Err(ValidationError::Structure("no root step and no contradiction".into())),
        1 => ck.check(roots[0], st)?,
        _ => return Err(ValidationError::Structure("several root steps".into())),
    }
    if ck.steps != ck.nodes.len() {
        return Err(ValidationError::Structure("unreachable steps".into()));
    }
    Ok(ValidationReport { steps: ck.steps, rules: ck.rules })
}

/// What an alternative of a step must add.
#[derive(Default)]
struct Expect {
    decl: Option<Type>,
    forms: Vec<Term>,
}

impl<'a> Checker<'a> {
    fn premise(&self, st: &PathState, l: &RawStepLine, k: usize) -> Result<(Side, Term), ValidationError> {
        match l.premises.get(k) {
            Some(RawPremise::Formula(f)) => {
                st.forms.get(f).cloned().ok_or_else(|| serr(l, format!("premise f{} is not on the branch", f)))
            }
            _ => Err(serr(l, format!("missing formula premise {}", k))),
        }
    }

    fn arity(&self, l: &RawStepLine, n: usize) -> Result<(), ValidationError> {
        if l.premises.len() != n {
            return Err(serr(l, format!("expected {} premises", n)));
        }
        Ok(())
    }

    fn infer(&self, st: &mut PathState, side: Side, t: &Term) -> Option<Type> {
        infer_type(&self.sigs[side.index()], &mut st.ctx[side.index()], t).ok().map(|t| t.normalize())
    }

    fn name_used(&self, st: &PathState, x: &str) -> bool {
        let s = Symbol::new(x);
        self.sigs.iter().any(|g| g.contains(&s)) || st.ctx.iter().any(|c| c.contains(&s))
    }

    fn check_mode(&self, st: &mut PathState, l: &RawStepLine, rule: Rule) -> Result<(), ValidationError> {
        let s = stratum(rule, l.side);
        let allowed = match self.mode {
            RuleMode::NativeOnly => s == Stratum::Native,
            RuleMode::ErasureOnly => s != Stratum::Native,
            RuleMode::Staged | RuleMode::Unstaged => true,
        };
        if !allowed {
            return Err(serr(l, format!("rule {} not allowed in {} mode", rule.tag(), self.mode.name())));
        }
        if self.mode != RuleMode::Unstaged {
            if let Some(prev) = st.last {
                if s < prev {
                    return Err(serr(l, "steps are not stratified"));
                }
            }
            st.last = Some(s);
        }
        Ok(())
    }

    /// Alternatives prescribed by the rule, before removing formulas already present.
    fn expected(&self, st: &mut PathState, l: &RawStepLine, rule: Rule) -> Result<Vec<Expect>, ValidationError> {
        let side = l.side;
        let one = |forms: Vec<Term>| vec![Expect { decl: None, forms }];
        let same_side = |p: &(Side, Term)| -> Result<(), ValidationError> {
            if p.0 != side {
                Err(serr(l, "premise on the wrong side"))
            } else {
                Ok(())
            }
        };
        if matches!(rule, Rule::Er1 | Rule::Er2) && side != Side::H {
            return Err(serr(l, "erasure rules add to the HOL side"));
        }
        if matches!(rule, Rule::Symcast1 | Rule::Symcast2) && side != Side::D {
            return Err(serr(l, "symcast works on the DHOL side"));
        }
        if l.inst.is_some() && rule != Rule::Forall {
            return Err(serr(l, "unexpected instance"));
        }
        match rule {
            Rule::Neg => {
                self.arity(l, 2)?;
                let p = self.premise(st, l, 0)?;
                let n = self.premise(st, l, 1)?;
                same_side(&p)?;
                same_side(&n)?;
                if neg_of(&n.1) != Some(&p.1) {
                    return Err(serr(l, "premises are not complementary"));
                }
                Ok(one(vec![Term::bot()]))
            }
            Rule::Neq => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                match neg_of(&p.1).and_then(eq_parts) {
                    Some((ty, a, b)) if a == b && matches!(ty.kind(), TypeKind::Base(..)) => {
                        Ok(one(vec![Term::bot()]))
                    }
                    _ => Err(serr(l, "premise is not a reflexive base-type disequation")),
                }
            }
            Rule::DNeg => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let s = neg_of(&p.1).and_then(neg_of).ok_or_else(|| serr(l, "not a double negation"))?;
                Ok(one(vec![s.clone()]))
            }
            Rule::Imp => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                match p.1.kind() {
                    TermKind::Imp(a, b) => Ok(vec![
                        Expect { decl: None, forms: vec![Term::neg(a)] },
                        Expect { decl: None, forms: vec![b.clone()] },
                    ]),
                    _ => Err(serr(l, "not an implication")),
                }
            }
            Rule::NImp => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                match neg_of(&p.1).map(|t| t.kind()) {
                    Some(TermKind::Imp(a, b)) => Ok(one(vec![a.clone(), Term::neg(b)])),
                    _ => Err(serr(l, "not a negated implication")),
                }
            }
            Rule::Forall => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let TermKind::Forall(ty, body) = p.1.kind() else {
                    return Err(serr(l, "not a universal formula"));
                };
                let src = l.inst.as_ref().ok_or_else(|| serr(l, "missing instance"))?;
                let t = self.parse_term(st, l, side, src)?;
                let tt = self.infer(st, side, &t).ok_or_else(|| serr(l, "instance is ill-typed"))?;
                if tt != ty.normalize() {
                    return Err(serr(l, format!("instance has type {}, binder has {}", tt, ty)));
                }
                Ok(one(vec![body.instantiate(&t)]))
            }
            Rule::NForall => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let Some(TermKind::Forall(ty, body)) = neg_of(&p.1).map(|t| t.kind()) else {
                    return Err(serr(l, "not a negated universal formula"));
                };
                let si = side.index();
                let mut names: Vec<Term> = self.sigs[si].consts().map(|(c, _)| Term::cnst(c)).collect();
                names.extend(st.ctx[si].iter().map(|(x, _)| Term::var(x)));
                for n in names {
                    let w = Term::neg(&body.instantiate(&n)).normalize();
                    if st.present.contains(&(side, w)) {
                        return Err(serr(l, format!("a witness {} is already on the branch", n)));
                    }
                }
                let y = match l.adds.iter().find_map(|a| match a {
                    RawAdd::Decl(x, _) => Some(x.clone()),
                    _ => None,
                }) {
                    Some(y) => y,
                    None => return Err(serr(l, "missing eigenvariable declaration")),
                };
                if self.name_used(st, &y) {
                    return Err(serr(l, format!("eigenvariable {} is not fresh", y)));
                }
                let v = Term::var(&Symbol::new(&y));
                Ok(vec![Expect { decl: Some(ty.clone()), forms: vec![Term::neg(&body.instantiate(&v))] }])
            }
            Rule::Be | Rule::Bq => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let eq = if rule == Rule::Be { neg_of(&p.1).and_then(eq_parts) } else { eq_parts(&p.1) };
                match eq {
                    Some((ty, a, b)) if ty.is_bool() => {
                        let alts = if rule == Rule::Be {
                            [vec![a.clone(), Term::neg(&b)], vec![Term::neg(&a), b.clone()]]
                        } else {
                            [vec![a.clone(), b.clone()], vec![Term::neg(&a), Term::neg(&b)]]
                        };
                        Ok(alts.into_iter().map(|forms| Expect { decl: None, forms }).collect())
                    }
                    _ => Err(serr(l, "not a boolean equation")),
                }
            }
            Rule::Fe | Rule::Fq => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let eq = if rule == Rule::Fe { neg_of(&p.1).and_then(eq_parts) } else { eq_parts(&p.1) };
                let Some((ty, a, b)) = eq else { return Err(serr(l, "not an equation")) };
                let TypeKind::Pi(dom, cod) = ty.kind() else { return Err(serr(l, "not a function equation")) };
                let x = crate::term::fresh_symbol("X");
                let vx = Term::var(&x);
                let inner = Term::eq(&cod.instantiate(&vx), &Term::app(&a, &vx), &Term::app(&b, &vx));
                let q = Term::forall_over(&x, dom, &inner);
                Ok(one(vec![if rule == Rule::Fe { Term::neg(&q) } else { q }]))
            }
            Rule::Mat => {
                self.arity(l, 2)?;
                let p = self.premise(st, l, 0)?;
                let n = self.premise(st, l, 1)?;
                same_side(&p)?;
                same_side(&n)?;
                let neg = neg_of(&n.1).ok_or_else(|| serr(l, "second premise is not negated"))?;
                let (h1, ss) = spine(&p.1);
                let (h2, ts) = spine(neg);
                if ss.is_empty() {
                    return Err(serr(l, "matching needs at least one argument"));
                }
                if !is_name(&h1) || h1 != h2 || ss.len() != ts.len() {
                    return Err(serr(l, "premises are not matching atoms"));
                }
                self.pairwise(st, l, side, &h1, &ss, &ts)
            }
            Rule::Dec => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let Some((ty, a, b)) = neg_of(&p.1).and_then(eq_parts) else {
                    return Err(serr(l, "not a disequation"));
                };
                if !matches!(ty.kind(), TypeKind::Base(..)) {
                    return Err(serr(l, "decomposition needs a base type"));
                }
                let (h1, ss) = spine(&a);
                let (h2, ts) = spine(&b);
                if ss.is_empty() {
                    return Err(serr(l, "decomposition needs at least one argument"));
                }
                if !is_name(&h1) || h1 != h2 || ss.len() != ts.len() {
                    return Err(serr(l, "sides do not share a head"));
                }
                self.pairwise(st, l, side, &h1, &ss, &ts)
            }
            Rule::Con => {
                self.arity(l, 2)?;
                let e = self.premise(st, l, 0)?;
                let d = self.premise(st, l, 1)?;
                same_side(&e)?;
                same_side(&d)?;
                let (Some((t1, s, t)), Some((t2, u, v))) = (eq_parts(&e.1), neg_of(&d.1).and_then(eq_parts)) else {
                    return Err(serr(l, "premises are not an equation and a disequation"));
                };
                if t1 != t2 || !matches!(t1.kind(), TypeKind::Base(..)) {
                    return Err(serr(l, "confrontation needs the same base type"));
                }
                let ne = |x: &Term, y: &Term| Term::neg(&Term::eq(&t1, x, y));
                Ok(vec![
                    Expect { decl: None, forms: vec![ne(&s, &u), ne(&t, &u)] },
                    Expect { decl: None, forms: vec![ne(&s, &v), ne(&t, &v)] },
                ])
            }
            Rule::Symcast1 | Rule::Symcast2 => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                same_side(&p)?;
                let eq = if rule == Rule::Symcast2 { neg_of(&p.1).and_then(eq_parts) } else { eq_parts(&p.1) };
                let Some((_, a, b)) = eq else { return Err(serr(l, "not an equation")) };
                let bt = self.infer(st, Side::D, &b).ok_or_else(|| serr(l, "right side is ill-typed"))?;
                let f = Term::eq(&bt, &b, &a);
                Ok(one(vec![if rule == Rule::Symcast2 { Term::neg(&f) } else { f }]))
            }
            Rule::Er1 => {
                self.arity(l, 1)?;
                let p = self.premise(st, l, 0)?;
                if p.0 != Side::D {
                    return Err(serr(l, "erasure premise must be on the DHOL side"));
                }
                let e = erase_formula(&self.table, &p.1);
                let ok = infer_skeleton_type(&self.sigs[1], &mut st.ctx[1], &e).map(|t| t.is_bool()).unwrap_or(false);
                if !ok {
                    return Err(serr(l, "erased formula is not well typed on the HOL side"));
                }
                Ok(one(vec![e]))
            }
            Rule::Er2 => {
                self.arity(l, 1)?;
                let Some(RawPremise::Decl(x)) = l.premises.first() else {
                    return Err(serr(l, "premise must be a declaration"));
                };
                let xs = Symbol::new(x);
                let (head, ty) = match st.ctx[0].get(&xs) {
                    Some(t) => (Term::var(&xs), t.clone()),
                    None => match self.sigs[0].const_type(&xs) {
                        Some(t) => (Term::cnst(&xs), t.clone()),
                        None => return Err(serr(l, format!("{} is not declared", x))),
                    },
                };
                if st.ctx[1].contains(&xs) || self.sigs[1].contains(&xs) && head.as_var().is_some() {
                    return Err(serr(l, format!("{} is already declared on the HOL side", x)));
                }
                let (ety, ax) = erase_context_entry(&self.table, &head, &ty);
                let decl = if head.as_var().is_some() { Some(ety) } else { None };
                Ok(vec![Expect { decl, forms: vec![ax] }])
            }
        }
    }

    fn pairwise(
        &self,
        st: &mut PathState,
        l: &RawStepLine,
        side: Side,
        head: &Term,
        ss: &[Term],
        ts: &[Term],
    ) -> Result<Vec<Expect>, ValidationError> {
        let mut ty = self.infer(st, side, head).ok_or_else(|| serr(l, "head is ill-typed"))?;
        let mut out = Vec::new();
        for (s, t) in ss.iter().zip(ts) {
            let TypeKind::Pi(d, c) = ty.kind().clone() else { return Err(serr(l, "too many arguments")) };
            out.push(Expect { decl: None, forms: vec![Term::neg(&Term::eq(&d, s, t))] });
            ty = c.instantiate(s).normalize();
        }
        Ok(out)
    }

    fn parse_term(&self, st: &PathState, l: &RawStepLine, side: Side, src: &str) -> Result<Term, ValidationError> {
        parse_formula(src, &self.sigs[side.index()], &st.ctx[side.index()])
            .map(|t| t.normalize())
            .map_err(|e| serr(l, format!("cannot parse '{}': {}", src, e)))
    }

    fn check(&mut self, id: usize, mut st: PathState) -> Result<(), ValidationError> {
        self.steps += 1;
        let lines = self.nodes[&id].lines.clone();
        let l0 = lines[0];
        if st.present.iter().any(|(_, t)| t.is_bot()) {
            return Err(serr(l0, "step below a closed branch"));
        }
        let rule = Rule::from_tag(&l0.rule).ok_or_else(|| serr(l0, format!("unknown rule {}", l0.rule)))?;
        if !self.rules.iter().any(|r| r == rule.tag()) {
            self.rules.push(rule.tag().to_string());
        }
        self.check_mode(&mut st, l0, rule)?;
        let expected = self.expected(&mut st, l0, rule)?;
        if expected.len() != lines.len() {
            return Err(serr(l0, format!("expected {} alternatives, found {}", expected.len(), lines.len())));
        }
        for (k, (l, exp)) in lines.iter().zip(expected).enumerate() {
            let mut child = st.clone();
            let side = l.side;
            let mut grew = false;
            let mut got_decl = None;
            let mut got = Vec::new();
            for a in &l.adds {
                match a {
                    RawAdd::Decl(x, tsrc) => {
                        if got_decl.is_some() {
                            return Err(serr(l, "more than one declaration"));
                        }
                        let ty = parse_type(tsrc, &self.sigs[side.index()], &child.ctx[side.index()])
                            .map_err(|e| serr(l, format!("cannot parse type '{}': {}", tsrc, e)))?
                            .normalize();
                        let xs = Symbol::new(x);
                        if child.ctx[side.index()].contains(&xs) {
                            return Err(serr(l, format!("{} declared twice", x)));
                        }
                        child.ctx[side.index()].push(&xs, &ty);
                        got_decl = Some(ty);
                        grew = true;
                    }
                    RawAdd::Formula(f, src) => {
                        let t = self.parse_term(&child, l, side, src)?;
                        if child.forms.contains_key(f) {
                            return Err(serr(l, format!("formula id f{} reused", f)));
                        }
                        child.forms.insert(*f, (side, t.clone()));
                        got.push(t);
                    }
                }
            }
            match (&exp.decl, &got_decl) {
                (None, None) => {}
                (Some(a), Some(b)) if a.normalize() == *b => {}
                _ => return Err(serr(l, "declaration does not match the rule")),
            }
            let want: Vec<Term> = exp
                .forms
                .iter()
                .map(|f| f.normalize())
                .filter(|f| !st.present.contains(&(side, f.clone())))
                .collect();
            let want_set: FxHashSet<Term> = want.iter().cloned().collect();
            let got_set: FxHashSet<Term> = got.iter().cloned().collect();
            if want_set != got_set || got.len() != got_set.len() {
                let show: Vec<String> = want.iter().map(|t| t.to_string()).collect();
                return Err(serr(l, format!("alternative {} should add [{}]", k, show.join(", "))));
            }
            for t in got {
                child.present.insert((side, t));
                grew = true;
            }
            if !grew {
                return Err(serr(l, format!("alternative {} adds nothing", k)));
            }
            match self.children.get(&(id, k)).copied() {
                Some(c) => self.check(c, child)?,
                None => {
                    if !child.present.iter().any(|(_, t)| t.is_bot()) {
                        return Err(ValidationError::OpenLeaf { id, alt: k });
                    }
                }
            }
        }
        Ok(())
    }
}
