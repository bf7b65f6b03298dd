//! Iterative-deepening ground tableau search.
//!
//! Every formula carries a depth. Alpha rules keep the depth of their premise,
//! branching rules and instantiations add to it. A round explores everything
//! up to a depth bound, depth first over splits; the bound grows until a
//! refutation is found, the search saturates, or time runs out.

use super::trace::{Added, Alt, InitFormula, InitRole, Premise, Rule, Step, Trace};
use super::{RuleMode, Side};
use crate::erasure::{erase_context_entry, erase_formula, erase_theory, PerTable};
use crate::problem::Problem;
use crate::term::{Symbol, Term, TermKind, Type, TypeKind};
use crate::typing::{infer_skeleton_type, infer_type, Context, Signature};
use rustc_hash::FxHasher;
use std::cmp::Ordering;
use std::hash::BuildHasherDefault;
use std::sync::Arc;
use std::time::{Duration, Instant};

// Persistent collections keep branch copies at splits cheap.
type Fx = BuildHasherDefault<FxHasher>;
type PMap<K, V> = im::HashMap<K, V, Fx>;
type PSet<K> = im::HashSet<K, Fx>;
type PVec<T> = im::Vector<T>;

/// Alternative index and the formulas it adds, with their depths.
type Continuation = (usize, Vec<(Term, usize)>);

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: RuleMode,
    pub timeout: Duration,
    /// Seed the instantiation pools with closed subterms of the problem and
    /// with lambda abstractions of its quantifier prefixes.
    pub subterms: bool,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig { mode: RuleMode::NativeOnly, timeout: Duration::from_secs(60), subterms: true }
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Refuted(Trace),
    /// Saturated without closing: no refutation exists within the pools.
    Exhausted,
    Timeout,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    /// Rule applications over all rounds.
    pub steps: usize,
    pub elapsed: Duration,
}

/// Refutes the axioms of `problem` together with the negated conjecture.
pub fn search(problem: &Problem, cfg: &SearchConfig) -> SearchOutcome {
    let start = Instant::now();
    let deadline = start + cfg.timeout;
    let mut steps = 0;
    let verdict = match cfg.mode {
        RuleMode::Staged => {
            let half = start + cfg.timeout / 2;
            let v = run_mode(problem, RuleMode::NativeOnly, cfg.subterms, half, &mut steps);
            match v {
                Verdict::Refuted(_) => v,
                _ => run_mode(problem, RuleMode::ErasureOnly, cfg.subterms, deadline, &mut steps),
            }
        }
        m => run_mode(problem, m, cfg.subterms, deadline, &mut steps),
    };
    SearchOutcome { verdict, steps, elapsed: start.elapsed() }
}

fn run_mode(problem: &Problem, mode: RuleMode, subterms: bool, deadline: Instant, steps: &mut usize) -> Verdict {
    let sig_d = problem.signature();
    let (sig_h, table, theory_h) = if mode.erasure() {
        let th = erase_theory(problem);
        let axioms = th.axioms();
        (th.sig, th.table, axioms)
    } else {
        (Signature::new(), PerTable::default(), Vec::new())
    };
    let mut init = Vec::new();
    for f in problem.axiom_formulas() {
        init.push((Side::D, InitRole::Theory, f.normalize()));
    }
    if let Some(c) = &problem.conjecture {
        init.push((Side::D, InitRole::Goal, Term::neg(&c.formula).normalize()));
    }
    for f in theory_h {
        init.push((Side::H, InitRole::Theory, f));
    }
    let mut s = Searcher {
        mode,
        subterms,
        sigs: [sig_d, sig_h],
        table,
        deadline,
        bound: 0,
        steps: 0,
        ticks: 0,
        timed_out: false,
        problem: problem.name.clone(),
    };
    let mut bound = 1;
    loop {
        s.bound = bound;
        let mut br = s.initial_branch(&init);
        let r = s.run(&mut br);
        *steps += s.steps;
        s.steps = 0;
        match r {
            RunResult::Closed(root) => {
                let init = br_init(&init);
                return Verdict::Refuted(Trace { problem: s.problem.clone(), mode, init, root });
            }
            RunResult::Open { pruned } => {
                if s.timed_out {
                    return Verdict::Timeout;
                }
                if !pruned {
                    return Verdict::Exhausted;
                }
            }
        }
        bound += 1;
    }
}

fn br_init(init: &[(Side, InitRole, Term)]) -> Vec<InitFormula> {
    init.iter()
        .enumerate()
        .map(|(i, (side, role, f))| InitFormula { fid: i, side: *side, role: *role, formula: f.clone() })
        .collect()
}

enum RunResult {
    Closed(Option<Box<Step>>),
    Open { pruned: bool },
}

#[derive(Clone)]
struct Form {
    side: Side,
    term: Term,
    depth: u32,
    fid: usize,
    theory: bool,
}

#[derive(Clone)]
enum Task {
    Alpha(Rule, usize),
    Inst(usize, Term),
    Er2(Symbol, Type, u32),
}

#[derive(Clone)]
struct Queued {
    cost: u32,
    seq: u64,
    task: Task,
}

impl PartialEq for Queued {
    fn eq(&self, o: &Self) -> bool {
        self.cost == o.cost && self.seq == o.seq
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Queued {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.cost, self.seq).cmp(&(o.cost, o.seq))
    }
}

#[derive(Clone)]
struct Beta {
    rule: Rule,
    side: Side,
    premises: Arc<Vec<Premise>>,
    alts: Arc<Vec<Vec<Term>>>,
    closed: Vec<bool>,
    cost: u32,
    /// Cost used when choosing a split; speculative rules pay extra.
    split_cost: u32,
    dead: bool,
}

impl Beta {
    fn open(&self) -> usize {
        self.closed.iter().filter(|c| !**c).count()
    }
}

#[derive(Clone, Default)]
struct Pool {
    by_type: PMap<Type, PVec<(Term, u32)>>,
    seen: PSet<(Type, Term)>,
}

#[derive(Clone, Default)]
struct SideState {
    ctx: Context,
    pool: Pool,
    foralls: PMap<Type, PVec<usize>>,
    /// Atoms by head and argument count: positive, negative.
    atoms: PMap<(Symbol, usize), (PVec<usize>, PVec<usize>)>,
    /// Base-type equations by annotation: equations, disequations.
    eqs: PMap<Type, (PVec<usize>, PVec<usize>)>,
}

#[derive(Clone)]
struct LogEntry {
    step: Step,
    /// Alternative continued by the rest of the log, if any.
    cont: Option<usize>,
}

#[derive(Clone, Default)]
struct Branch {
    forms: PVec<Form>,
    index: PMap<(Side, Term), usize>,
    sides: [SideState; 2],
    agenda: im::OrdSet<Queued>,
    urgent: Vec<Task>,
    seq: u64,
    betas: PVec<Beta>,
    watch: PMap<(Side, Term), PVec<(usize, usize)>>,
    ready: Vec<usize>,
    /// Split candidates keyed by open alternatives and cost; stale keys are skipped.
    splits: im::OrdSet<(usize, u32, usize)>,
    /// Inferred types; per branch because eigenvariable names are reused across branches.
    types: PMap<(Side, Term), Type>,
    er1_waiting: Vec<usize>,
    next_fid: usize,
    next_sk: usize,
    closed: bool,
    pruned: bool,
    log: Vec<LogEntry>,
}

struct Searcher {
    mode: RuleMode,
    subterms: bool,
    sigs: [Signature; 2],
    table: PerTable,
    deadline: Instant,
    bound: u32,
    steps: usize,
    ticks: u64,
    timed_out: bool,
    problem: String,
}

fn complement(t: &Term) -> Term {
    match t.as_neg() {
        Some(s) => s.clone(),
        None => Term::neg(t),
    }
}

fn is_refl_neq(t: &Term) -> bool {
    match t.as_neg().map(|s| s.kind()) {
        Some(TermKind::Eq(ty, a, b)) => a == b && ty.as_base().is_some(),
        _ => false,
    }
}

/// Depth of an instance. Partial instances of a quantifier prefix are free;
/// the instance that leaves the prefix pays one.
fn inst_cost(f: &Form, w: u32) -> u32 {
    match f.term.kind() {
        TermKind::Forall(_, b) if matches!(b.kind(), TermKind::Forall(..)) => f.depth + w,
        _ => f.depth + 1 + w,
    }
}

/// Instantiation cost of a term: its number of applications and abstractions, capped.
fn weight(t: &Term) -> u32 {
    raw_weight(t).min(2)
}

fn raw_weight(t: &Term) -> u32 {
    match t.kind() {
        TermKind::App(f, a) => 1 + raw_weight(f) + raw_weight(a),
        TermKind::Lam(_, b) => 1 + raw_weight(b),
        _ => 0,
    }
}

/// Parameter types of `head` applied to `args`, instantiated left to right.
fn arg_types(head_ty: &Type, args: &[Term]) -> Option<Vec<Type>> {
    let mut out = Vec::new();
    let mut ty = head_ty.clone();
    for a in args {
        match ty.kind().clone() {
            TypeKind::Pi(d, c) => {
                out.push(d);
                ty = c.instantiate(a).normalize();
            }
            _ => return None,
        }
    }
    Some(out)
}

fn pairwise_neq(tys: &[Type], ss: &[Term], ts: &[Term]) -> Vec<Vec<Term>> {
    tys.iter()
        .zip(ss.iter().zip(ts.iter()))
        .map(|(ty, (s, t))| vec![Term::neq(ty, s, t)])
        .collect()
}

/// Head name and arguments of an atomic formula.
fn atom_parts(t: &Term) -> Option<(Symbol, Vec<Term>)> {
    let (h, args) = t.decompose_spine();
    h.as_name().map(|n| (n.clone(), args))
}

impl Searcher {
    fn initial_branch(&mut self, init: &[(Side, InitRole, Term)]) -> Branch {
        let mut br = Branch::default();
        for side in [Side::D, Side::H] {
            if side == Side::H && !self.mode.erasure() {
                continue;
            }
            let consts: Vec<(Symbol, Type)> =
                self.sigs[side.index()].consts().map(|(c, t)| (c.clone(), t.normalize())).collect();
            for (c, ty) in consts {
                self.pool_add(&mut br, side, &ty, &Term::cnst(&c), 0);
            }
            self.pool_add(&mut br, side, &Type::bool(), &Term::bot(), 1);
            self.pool_add(&mut br, side, &Type::bool(), &Term::top(), 1);
        }
        if self.subterms {
            let mut seeds: Vec<(Side, Term)> = init.iter().map(|(s, _, f)| (*s, f.clone())).collect();
            if self.mode.erasure() {
                for (s, role, f) in init {
                    if *s == Side::D && *role == InitRole::Goal {
                        seeds.push((Side::H, erase_formula(&self.table, f)));
                    }
                }
            }
            for (side, f) in seeds {
                if side == Side::D && !self.mode.native() && !self.mode.erasure() {
                    continue;
                }
                self.harvest(&mut br, side, &f);
            }
        }
        br.next_fid = init.len();
        for (i, (side, role, f)) in init.iter().enumerate() {
            br.forms.push_back(Form { side: *side, term: f.clone(), depth: 0, fid: i, theory: *role == InitRole::Theory });
            br.index.entry((*side, f.clone())).or_insert(i);
        }
        for i in 0..init.len() {
            self.classify(&mut br, i);
        }
        for i in 0..init.len() {
            if br.closed {
                break;
            }
            self.check_closure(&mut br, i);
        }
        br
    }

    /// Closed subterms and quantifier-prefix abstractions go into the pool.
    fn harvest(&mut self, br: &mut Branch, side: Side, f: &Term) {
        for sub in f.subterms() {
            if !sub.is_closed() {
                continue;
            }
            match sub.kind() {
                TermKind::App(..) | TermKind::Lam(..) => {
                    if let Ok(ty) = self.infer(br, side, &sub) {
                        if !ty.is_bool() {
                            self.pool_add(br, side, &ty.normalize(), &sub, weight(&sub));
                        }
                    }
                }
                TermKind::Forall(..) => {
                    let mut binders = Vec::new();
                    let mut cur = sub.clone();
                    while let Some((x, ty, body)) = match cur.kind() {
                        TermKind::Forall(..) => cur.open_binder(),
                        _ => None,
                    } {
                        binders.push((x, ty));
                        cur = body;
                    }
                    // One abstraction per prefix length: an induction predicate
                    // may abstract only the leading binders.
                    for k in 1..=binders.len() {
                        let mut lam = cur.clone();
                        for (x, ty) in binders[k..].iter().rev() {
                            lam = Term::forall_over(x, ty, &lam);
                        }
                        for (x, ty) in binders[..k].iter().rev() {
                            lam = Term::lam_over(x, ty, &lam);
                        }
                        let lam = lam.normalize();
                        if let Ok(ty) = self.infer(br, side, &lam) {
                            self.pool_add(br, side, &ty, &lam, 0);
                        }
                    }
                }
                _ => {}
            }
        }
    }

    fn infer(&self, br: &mut Branch, side: Side, t: &Term) -> Result<Type, crate::typing::TypeError> {
        let key = (side, t.clone());
        if let Some(ty) = br.types.get(&key) {
            return Ok(ty.clone());
        }
        let ty = infer_type(&self.sigs[side.index()], &mut br.sides[side.index()].ctx, t)?.normalize();
        br.types.insert(key, ty.clone());
        Ok(ty)
    }

    fn push_task(&mut self, br: &mut Branch, cost: u32, task: Task) {
        if cost > self.bound {
            br.pruned = true;
            return;
        }
        if matches!(task, Task::Er2(..) | Task::Alpha(Rule::Er1, _)) {
            // Erasure comes before any HOL reasoning on the same branch.
            br.urgent.push(task);
            return;
        }
        br.seq += 1;
        let seq = br.seq;
        br.agenda.insert(Queued { cost, seq, task });
    }

    fn pool_add(&mut self, br: &mut Branch, side: Side, ty: &Type, t: &Term, w: u32) {
        let st = &mut br.sides[side.index()];
        if st.pool.seen.insert((ty.clone(), t.clone())).is_some() {
            return;
        }
        st.pool.by_type.entry(ty.clone()).or_default().push_back((t.clone(), w));
        let fs = st.foralls.get(ty).cloned().unwrap_or_default();
        for i in fs {
            let cost = inst_cost(&br.forms[i], w);
            self.push_task(br, cost, Task::Inst(i, t.clone()));
        }
    }

    fn native_on(&self, side: Side) -> bool {
        match side {
            Side::D => self.mode.native(),
            Side::H => self.mode.erasure(),
        }
    }

    /// Registers the rules that a newly added formula enables.
    fn classify(&mut self, br: &mut Branch, i: usize) {
        let Form { side, term: t, depth, theory, .. } = br.forms[i].clone();
        if side == Side::D && self.mode.erasure() && !theory {
            self.push_task(br, depth, Task::Alpha(Rule::Er1, i));
        }
        if !self.native_on(side) {
            return;
        }
        let si = side.index();
        match t.kind() {
            TermKind::Bot => {}
            TermKind::Neg(u) => match u.kind() {
                TermKind::Bot => {}
                TermKind::Neg(_) => self.push_task(br, depth, Task::Alpha(Rule::DNeg, i)),
                TermKind::Imp(..) => self.push_task(br, depth, Task::Alpha(Rule::NImp, i)),
                TermKind::Forall(..) => self.push_task(br, depth, Task::Alpha(Rule::NForall, i)),
                TermKind::Eq(ty, a, b) => match ty.kind() {
                    TypeKind::Bool => {
                        let alts = vec![vec![a.clone(), Term::neg(b)], vec![Term::neg(a), b.clone()]];
                        self.register_beta(br, Rule::Be, side, vec![Premise::Formula(br.forms[i].fid)], alts, depth + 1);
                    }
                    TypeKind::Pi(..) => self.push_task(br, depth, Task::Alpha(Rule::Fe, i)),
                    TypeKind::Base(..) => {
                        if side == Side::D {
                            self.push_task(br, depth, Task::Alpha(Rule::Symcast2, i));
                        }
                        // Discriminating terms, with their subterms when seeding
                        // from subterms is on.
                        for x in [a, b] {
                            let subs = if self.subterms { x.subterms() } else { vec![x.clone()] };
                            for y in subs {
                                if !y.is_closed() || !matches!(y.kind(), TermKind::App(..)) && &y != x {
                                    continue;
                                }
                                if let Ok(yt) = self.infer(br, side, &y) {
                                    if !yt.is_bool() && !matches!(yt.kind(), TypeKind::Pi(..)) {
                                        self.pool_add(br, side, &yt, &y, weight(&y));
                                    }
                                }
                            }
                        }
                        self.dec(br, side, i, ty, a, b);
                        let eqs = br.sides[si].eqs.entry(ty.clone()).or_default();
                        eqs.1.push_back(i);
                        let others = eqs.0.clone();
                        for e in others {
                            self.con(br, side, e, i);
                        }
                    }
                },
                _ => {
                    if let Some((h, args)) = atom_parts(u) {
                        if !args.is_empty() {
                            let entry = br.sides[si].atoms.entry((h, args.len())).or_default();
                            entry.1.push_back(i);
                            let others = entry.0.clone();
                            for p in others {
                                self.mat(br, side, p, i);
                            }
                        }
                    }
                }
            },
            TermKind::Imp(a, b) => {
                let alts = vec![vec![Term::neg(a)], vec![b.clone()]];
                self.register_beta(br, Rule::Imp, side, vec![Premise::Formula(br.forms[i].fid)], alts, depth + 1);
            }
            TermKind::Forall(ty, _) => {
                let st = &mut br.sides[si];
                st.foralls.entry(ty.clone()).or_default().push_back(i);
                let terms = st.pool.by_type.get(ty).cloned().unwrap_or_default();
                let f = br.forms[i].clone();
                for (x, w) in terms {
                    self.push_task(br, inst_cost(&f, w), Task::Inst(i, x));
                }
            }
            TermKind::Eq(ty, a, b) => match ty.kind() {
                TypeKind::Bool => {
                    let alts = vec![vec![a.clone(), b.clone()], vec![Term::neg(a), Term::neg(b)]];
                    self.register_beta(br, Rule::Bq, side, vec![Premise::Formula(br.forms[i].fid)], alts, depth + 1);
                }
                TypeKind::Pi(..) => self.push_task(br, depth, Task::Alpha(Rule::Fq, i)),
                TypeKind::Base(..) => {
                    if side == Side::D {
                        self.push_task(br, depth, Task::Alpha(Rule::Symcast1, i));
                    }
                    let eqs = br.sides[si].eqs.entry(ty.clone()).or_default();
                    eqs.0.push_back(i);
                    let others = eqs.1.clone();
                    for d in others {
                        self.con(br, side, i, d);
                    }
                }
            },
            _ => {
                if let Some((h, args)) = atom_parts(&t) {
                    if !args.is_empty() {
                        let entry = br.sides[si].atoms.entry((h, args.len())).or_default();
                        entry.0.push_back(i);
                        let others = entry.1.clone();
                        for n in others {
                            self.mat(br, side, i, n);
                        }
                    }
                }
            }
        }
    }

    fn mat(&mut self, br: &mut Branch, side: Side, p: usize, n: usize) {
        let (pos, neg) = (br.forms[p].term.clone(), br.forms[n].term.clone());
        let neg = neg.as_neg().unwrap().clone();
        let (h, ss) = pos.decompose_spine();
        let (_, ts) = neg.decompose_spine();
        let Ok(hty) = self.infer(br, side, &h) else { return };
        let Some(tys) = arg_types(&hty, &ss) else { return };
        let alts = pairwise_neq(&tys, &ss, &ts);
        let cost = br.forms[p].depth.max(br.forms[n].depth) + 1;
        let prem = vec![Premise::Formula(br.forms[p].fid), Premise::Formula(br.forms[n].fid)];
        self.register_beta(br, Rule::Mat, side, prem, alts, cost);
    }

    fn dec(&mut self, br: &mut Branch, side: Side, i: usize, _ty: &Type, a: &Term, b: &Term) {
        let (ha, ss) = a.decompose_spine();
        let (hb, ts) = b.decompose_spine();
        if ss.is_empty() || ss.len() != ts.len() || ha != hb || ha.as_name().is_none() {
            return;
        }
        let Ok(hty) = self.infer(br, side, &ha) else { return };
        let Some(tys) = arg_types(&hty, &ss) else { return };
        let alts = pairwise_neq(&tys, &ss, &ts);
        let cost = br.forms[i].depth + 1;
        self.register_beta(br, Rule::Dec, side, vec![Premise::Formula(br.forms[i].fid)], alts, cost);
    }

    fn con(&mut self, br: &mut Branch, side: Side, e: usize, d: usize) {
        let TermKind::Eq(ty, s, t) = br.forms[e].term.kind().clone() else { return };
        let Some(TermKind::Eq(_, u, v)) = br.forms[d].term.as_neg().map(|x| x.kind().clone()) else { return };
        let alts = vec![
            vec![Term::neq(&ty, &s, &u), Term::neq(&ty, &t, &u)],
            vec![Term::neq(&ty, &s, &v), Term::neq(&ty, &t, &v)],
        ];
        let cost = br.forms[e].depth.max(br.forms[d].depth) + 1;
        let prem = vec![Premise::Formula(br.forms[e].fid), Premise::Formula(br.forms[d].fid)];
        self.register_beta(br, Rule::Con, side, prem, alts, cost);
    }

    fn present(br: &Branch, side: Side, t: &Term) -> bool {
        br.index.contains_key(&(side, t.clone()))
    }

    fn alt_closes(br: &Branch, side: Side, alt: &[Term]) -> bool {
        alt.iter().any(|f| {
            f.is_bot()
                || is_refl_neq(f)
                || Self::present(br, side, &complement(f))
                || alt.iter().any(|g| *g == complement(f))
        })
    }

    fn satisfied(br: &Branch, b: &Beta) -> bool {
        b.alts.iter().any(|alt| alt.iter().all(|f| Self::present(br, b.side, f)))
    }

    fn register_beta(
        &mut self,
        br: &mut Branch,
        rule: Rule,
        side: Side,
        premises: Vec<Premise>,
        alts: Vec<Vec<Term>>,
        cost: u32,
    ) {
        if alts.is_empty() {
            return;
        }
        // `cost` is the depth of a split; a forced expansion keeps the
        // depth of its premises.
        let limit = if rule == Rule::Con { self.bound } else { self.bound + 1 };
        if cost > limit {
            br.pruned = true;
            return;
        }
        let alts: Vec<Vec<Term>> = alts.into_iter().map(|a| a.iter().map(|f| f.normalize()).collect()).collect();
        let closed: Vec<bool> = alts.iter().map(|a| Self::alt_closes(br, side, a)).collect();
        let split_cost = if rule == Rule::Con { cost + 2 } else { cost };
        let b = Beta {
            rule,
            side,
            premises: Arc::new(premises),
            alts: Arc::new(alts),
            closed,
            cost,
            split_cost,
            dead: false,
        };
        if Self::satisfied(br, &b) {
            return;
        }
        let id = br.betas.len();
        for (k, alt) in b.alts.iter().enumerate() {
            if b.closed[k] {
                continue;
            }
            for f in alt {
                br.watch.entry((side, complement(f))).or_default().push_back((id, k));
            }
        }
        let open = b.open();
        if open <= 1 {
            br.ready.push(id);
        } else if split_cost <= self.bound {
            br.splits.insert((open, split_cost, id));
        } else {
            br.pruned = true;
        }
        br.betas.push_back(b);
    }

    fn fresh_fid(br: &mut Branch) -> usize {
        br.next_fid += 1;
        br.next_fid - 1
    }

    /// Adds a formula (already known to be new); returns its index.
    fn insert(&mut self, br: &mut Branch, side: Side, t: &Term, depth: u32, fid: usize) -> usize {
        let i = br.forms.len();
        br.forms.push_back(Form { side, term: t.clone(), depth, fid, theory: false });
        br.index.insert((side, t.clone()), i);
        if let Some(ws) = br.watch.remove(&(side, t.clone())) {
            for (b, k) in ws {
                let beta = &mut br.betas[b];
                if !beta.dead && !beta.closed[k] {
                    beta.closed[k] = true;
                    let open = beta.open();
                    let key = (open, beta.split_cost, b);
                    if open <= 1 {
                        br.ready.push(b);
                    } else if key.1 <= self.bound {
                        br.splits.insert(key);
                    } else {
                        br.pruned = true;
                    }
                }
            }
        }
        self.classify(br, i);
        i
    }

    fn declare(&mut self, br: &mut Branch, side: Side, x: &Symbol, ty: &Type, depth: u32) {
        br.sides[side.index()].ctx.push(x, ty);
        self.pool_add(br, side, &ty.normalize(), &Term::var(x), 0);
        if side == Side::D && self.mode.erasure() {
            self.push_task(br, depth, Task::Er2(x.clone(), ty.clone(), depth));
        }
    }

    fn fid_of(br: &Branch, side: Side, t: &Term) -> Option<usize> {
        br.index.get(&(side, t.clone())).map(|&i| br.forms[i].fid)
    }

    /// Closing step for the formula at index `i`, if it contradicts the branch.
    fn closing_step(br: &mut Branch, i: usize) -> Option<Step> {
        let Form { side, term, fid, .. } = br.forms[i].clone();
        if term.is_bot() {
            return None;
        }
        let premises = if is_refl_neq(&term) {
            (Rule::Neq, vec![Premise::Formula(fid)])
        } else {
            let other = Self::fid_of(br, side, &complement(&term))?;
            let (p, n) = if term.as_neg().is_some() { (other, fid) } else { (fid, other) };
            (Rule::Neg, vec![Premise::Formula(p), Premise::Formula(n)])
        };
        let bot = Self::fresh_fid(br);
        Some(Step {
            rule: premises.0,
            side,
            premises: premises.1,
            inst: None,
            alts: vec![Alt { adds: vec![Added::Formula(bot, Term::bot())], next: None }],
        })
    }

    fn check_closure(&mut self, br: &mut Branch, i: usize) {
        let t = br.forms[i].term.clone();
        if t.is_bot() {
            br.closed = true;
            return;
        }
        if !self.native_on(br.forms[i].side) {
            return;
        }
        if let Some(step) = Self::closing_step(br, i) {
            self.steps += 1;
            Self::log(br, step, None);
            br.closed = true;
        }
    }

    fn log(br: &mut Branch, step: Step, cont: Option<usize>) {
        br.log.push(LogEntry { step, cont });
    }

    /// Applies a non-branching step. Returns false if it would add nothing.
    #[allow(clippy::too_many_arguments)]
    fn commit(
        &mut self,
        br: &mut Branch,
        rule: Rule,
        side: Side,
        premises: Vec<Premise>,
        inst: Option<Term>,
        forms: Vec<Term>,
        decl: Option<(Symbol, Type)>,
        depth: u32,
    ) -> bool {
        let mut new: Vec<Term> = Vec::new();
        for f in forms {
            if !Self::present(br, side, &f) && !new.contains(&f) {
                new.push(f);
            }
        }
        if new.is_empty() && decl.is_none() {
            return false;
        }
        self.steps += 1;
        let mut adds = Vec::new();
        if let Some((x, ty)) = &decl {
            adds.push(Added::Decl(x.clone(), ty.clone()));
        }
        let fids: Vec<usize> = new.iter().map(|_| Self::fresh_fid(br)).collect();
        for (f, id) in new.iter().zip(&fids) {
            adds.push(Added::Formula(*id, f.clone()));
        }
        Self::log(br, Step { rule, side, premises, inst, alts: vec![Alt { adds, next: None }] }, Some(0));
        if let Some((x, ty)) = &decl {
            self.declare(br, side, x, ty, depth);
        }
        let idx: Vec<usize> = new.iter().zip(&fids).map(|(f, id)| self.insert(br, side, f, depth, *id)).collect();
        for i in idx {
            if br.closed {
                break;
            }
            self.check_closure(br, i);
        }
        true
    }

    fn fresh_eigen(&self, br: &mut Branch) -> Symbol {
        loop {
            br.next_sk += 1;
            let s = Symbol::new(&format!("sk{}", br.next_sk));
            let used = self.sigs.iter().any(|g| g.contains(&s))
                || br.sides.iter().any(|st| st.ctx.contains(&s));
            if !used {
                return s;
            }
        }
    }

    fn run_task(&mut self, br: &mut Branch, task: Task, cost: u32) {
        match task {
            Task::Alpha(rule, i) => self.alpha(br, rule, i),
            Task::Inst(i, t) => {
                let f = &br.forms[i];
                let (side, fid) = (f.side, f.fid);
                let TermKind::Forall(_, body) = f.term.kind() else { return };
                let inst = body.instantiate(&t).normalize();
                self.commit(br, Rule::Forall, side, vec![Premise::Formula(fid)], Some(t), vec![inst], None, cost);
            }
            Task::Er2(x, ty, depth) => {
                if br.sides[Side::H.index()].ctx.contains(&x) {
                    return;
                }
                let (ety, ax) = erase_context_entry(&self.table, &Term::var(&x), &ty);
                let decl = Some((x.clone(), ety));
                self.commit(br, Rule::Er2, Side::H, vec![Premise::Decl(x)], None, vec![ax], decl, depth);
                for i in std::mem::take(&mut br.er1_waiting) {
                    let d = br.forms[i].depth;
                    self.push_task(br, d, Task::Alpha(Rule::Er1, i));
                }
            }
        }
    }

    fn alpha(&mut self, br: &mut Branch, rule: Rule, i: usize) {
        let Form { side, term: t, depth, fid, .. } = br.forms[i].clone();
        let prem = vec![Premise::Formula(fid)];
        match rule {
            Rule::DNeg => {
                let s = t.as_neg().and_then(|u| u.as_neg()).unwrap().clone();
                self.commit(br, rule, side, prem, None, vec![s], None, depth);
            }
            Rule::NImp => {
                let Some(TermKind::Imp(a, b)) = t.as_neg().map(|u| u.kind().clone()) else { return };
                self.commit(br, rule, side, prem, None, vec![a, Term::neg(&b)], None, depth);
            }
            Rule::NForall => {
                let Some(TermKind::Forall(ty, body)) = t.as_neg().map(|u| u.kind().clone()) else { return };
                let si = side.index();
                let names: Vec<Symbol> = self.sigs[si]
                    .consts()
                    .map(|(c, _)| c.clone())
                    .chain(br.sides[si].ctx.iter().map(|(x, _)| x.clone()))
                    .collect();
                for n in names {
                    let head = if self.sigs[si].const_type(&n).is_some() { Term::cnst(&n) } else { Term::var(&n) };
                    let w = Term::neg(&body.instantiate(&head)).normalize();
                    if Self::present(br, side, &w) {
                        return;
                    }
                }
                let y = self.fresh_eigen(br);
                let w = Term::neg(&body.instantiate(&Term::var(&y))).normalize();
                self.commit(br, rule, side, prem, None, vec![w.clone()], Some((y, ty)), depth);
                // Witnesses of the negated conjecture are seeds like the initial problem.
                if self.subterms && !br.closed {
                    self.harvest(br, side, &w);
                }
            }
            Rule::Fe | Rule::Fq => {
                let eq = match t.as_neg() {
                    Some(u) => u.clone(),
                    None => t.clone(),
                };
                let TermKind::Eq(ty, a, b) = eq.kind().clone() else { return };
                let TypeKind::Pi(dom, cod) = ty.kind().clone() else { return };
                let x = Term::bvar(0);
                let body = Term::eq(&cod, &Term::app(&a.shift(1, 0), &x), &Term::app(&b.shift(1, 0), &x));
                let q = Term::forall_hinted(&ty.binder_name(), &dom, &body);
                let f = if rule == Rule::Fe { Term::neg(&q) } else { q };
                self.commit(br, rule, side, prem, None, vec![f.normalize()], None, depth);
            }
            Rule::Symcast1 | Rule::Symcast2 => {
                let eq = match t.as_neg() {
                    Some(u) => u.clone(),
                    None => t.clone(),
                };
                let TermKind::Eq(ann, a, b) = eq.kind().clone() else { return };
                let Ok(bt) = self.infer(br, side, &b) else { return };
                // Same type: the flipped copy is subsumed, CON is symmetric.
                if bt == ann {
                    return;
                }
                let f = Term::eq(&bt, &b, &a);
                let f = if rule == Rule::Symcast2 { Term::neg(&f) } else { f };
                self.commit(br, rule, side, prem, None, vec![f], None, depth);
            }
            Rule::Er1 => {
                let e = erase_formula(&self.table, &t);
                let ok = infer_skeleton_type(&self.sigs[1], &mut br.sides[1].ctx, &e)
                    .map(|ty| ty.is_bool())
                    .unwrap_or(false);
                if !ok {
                    br.er1_waiting.push(i);
                    return;
                }
                self.commit(br, rule, Side::H, prem, None, vec![e], None, depth);
            }
            _ => {}
        }
    }

    /// Applies the beta with all alternatives; returns the continuing ones.
    fn expand_beta(&mut self, br: &mut Branch, b: usize) -> Option<(Step, Vec<Continuation>)> {
        let beta = br.betas[b].clone();
        br.betas[b].dead = true;
        if Self::satisfied(br, &beta) {
            return None;
        }
        self.steps += 1;
        let side = beta.side;
        let mut alts = Vec::new();
        let mut open = Vec::new();
        for (k, alt) in beta.alts.iter().enumerate() {
            let mut new: Vec<(Term, usize)> = Vec::new();
            for f in alt {
                if !Self::present(br, side, f) && !new.iter().any(|(g, _)| g == f) {
                    let id = Self::fresh_fid(br);
                    new.push((f.clone(), id));
                }
            }
            let adds: Vec<Added> = new.iter().map(|(f, id)| Added::Formula(*id, f.clone())).collect();
            let mut next = None;
            if beta.closed[k] {
                next = self.close_alt(br, side, &new);
            } else {
                open.push((k, new));
            }
            alts.push(Alt { adds, next });
        }
        let step = Step { rule: beta.rule, side, premises: beta.premises.as_ref().clone(), inst: None, alts };
        Some((step, open))
    }

    /// Closing step for an alternative that contradicts itself or the branch.
    fn close_alt(&mut self, br: &mut Branch, side: Side, new: &[(Term, usize)]) -> Option<Box<Step>> {
        let lookup = |br: &Branch, t: &Term| -> Option<usize> {
            new.iter().find(|(g, _)| g == t).map(|(_, id)| *id).or_else(|| Self::fid_of(br, side, t))
        };
        for (f, id) in new {
            if f.is_bot() {
                return None;
            }
            let (rule, premises) = if is_refl_neq(f) {
                (Rule::Neq, vec![Premise::Formula(*id)])
            } else if let Some(o) = lookup(br, &complement(f)) {
                let (p, n) = if f.as_neg().is_some() { (o, *id) } else { (*id, o) };
                (Rule::Neg, vec![Premise::Formula(p), Premise::Formula(n)])
            } else {
                continue;
            };
            self.steps += 1;
            let bot = Self::fresh_fid(br);
            return Some(Box::new(Step {
                rule,
                side,
                premises,
                inst: None,
                alts: vec![Alt { adds: vec![Added::Formula(bot, Term::bot())], next: None }],
            }));
        }
        None
    }

    fn enter_alt(&mut self, br: &mut Branch, side: Side, depth: u32, new: &[(Term, usize)]) {
        let idx: Vec<usize> = new.iter().map(|(f, id)| self.insert(br, side, f, depth, *id)).collect();
        for i in idx {
            if br.closed {
                break;
            }
            self.check_closure(br, i);
        }
    }

    fn out_of_time(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks.is_multiple_of(8) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn run(&mut self, br: &mut Branch) -> RunResult {
        loop {
            if br.closed {
                return RunResult::Closed(build(std::mem::take(&mut br.log)));
            }
            if self.out_of_time() {
                return RunResult::Open { pruned: true };
            }
            if !br.urgent.is_empty() {
                let t = br.urgent.remove(0);
                self.run_task(br, t, 0);
                continue;
            }
            if let Some(b) = br.ready.pop() {
                if br.betas[b].dead || br.betas[b].open() > 1 {
                    continue;
                }
                // Forced confrontations still pay one level; they are the
                // main source of new disequations.
                let beta = &br.betas[b];
                let depth = if beta.rule == Rule::Con { beta.cost } else { beta.cost - 1 };
                let Some((step, open)) = self.expand_beta(br, b) else { continue };
                match open.into_iter().next() {
                    None => {
                        Self::log(br, step, None);
                        br.closed = true;
                    }
                    Some((k, new)) => {
                        let side = step.side;
                        Self::log(br, step, Some(k));
                        self.enter_alt(br, side, depth, &new);
                    }
                }
                continue;
            }
            if let Some(q) = br.agenda.remove_min() {
                self.run_task(br, q.task, q.cost);
                continue;
            }
            // Split on the open beta with the fewest alternatives.
            let Some((open, _, b)) = br.splits.remove_min() else {
                return RunResult::Open { pruned: br.pruned };
            };
            let beta = &br.betas[b];
            if beta.dead || beta.open() != open {
                continue;
            }
            if Self::satisfied(br, beta) {
                br.betas[b].dead = true;
                continue;
            }
            let depth = beta.cost;
            let Some((mut step, open)) = self.expand_beta(br, b) else { continue };
            let side = step.side;
            let log = std::mem::take(&mut br.log);
            for (k, new) in open {
                let mut child = br.clone();
                self.enter_alt(&mut child, side, depth, &new);
                match self.run(&mut child) {
                    RunResult::Closed(sub) => step.alts[k].next = sub,
                    open @ RunResult::Open { .. } => return open,
                }
            }
            br.log = log;
            Self::log(br, step, None);
            br.closed = true;
        }
    }
}

fn build(log: Vec<LogEntry>) -> Option<Box<Step>> {
    let mut next: Option<Box<Step>> = None;
    for e in log.into_iter().rev() {
        let mut s = e.step;
        if let Some(k) = e.cont {
            s.alts[k].next = next;
        }
        next = Some(Box::new(s));
    }
    next
}

