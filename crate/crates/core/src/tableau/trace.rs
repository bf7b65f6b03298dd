//! Refutation traces and their line-oriented text form.
//!
//! ```text
//! % dholt trace <problem> mode <mode>
//! init f0 d theory <formula>
//! step 0 parent root rule t_nimp side d premises f1 alt 0: add f3 <formula> ; add f4 <formula>
//! step 1 parent 0.0 rule t_forall side d premises f0 with {<term>} alt 0: add f5 <formula>
//! step 2 parent 1.0 rule t_nforall side d premises f6 alt 0: decl sk1 : <type> ; add f7 <formula>
//! ```
//!
//! One line per alternative; `parent <step>.<alt>` links the tree.

use super::{RuleMode, Side};
use crate::term::{Symbol, Term, Type};
use crate::tptp::{term_to_string, type_to_string};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Neg,
    Neq,
    DNeg,
    Imp,
    NImp,
    Forall,
    NForall,
    Be,
    Bq,
    Fe,
    Fq,
    Mat,
    Dec,
    Con,
    Er1,
    Er2,
    Symcast1,
    Symcast2,
}

pub const ALL_RULES: [Rule; 18] = [
    Rule::Neg,
    Rule::Neq,
    Rule::DNeg,
    Rule::Imp,
    Rule::NImp,
    Rule::Forall,
    Rule::NForall,
    Rule::Be,
    Rule::Bq,
    Rule::Fe,
    Rule::Fq,
    Rule::Mat,
    Rule::Dec,
    Rule::Con,
    Rule::Er1,
    Rule::Er2,
    Rule::Symcast1,
    Rule::Symcast2,
];

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::Neg => "t_neg",
            Rule::Neq => "t_neq",
            Rule::DNeg => "t_dneg",
            Rule::Imp => "t_imp",
            Rule::NImp => "t_nimp",
            Rule::Forall => "t_forall",
            Rule::NForall => "t_nforall",
            Rule::Be => "t_be",
            Rule::Bq => "t_bq",
            Rule::Fe => "t_fe",
            Rule::Fq => "t_fq",
            Rule::Mat => "t_mat",
            Rule::Dec => "t_dec",
            Rule::Con => "t_con",
            Rule::Er1 => "t_er1",
            Rule::Er2 => "t_er2",
            Rule::Symcast1 => "symcast1",
            Rule::Symcast2 => "symcast2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Rule> {
        ALL_RULES.iter().copied().find(|r| r.tag() == s)
    }

    pub fn is_erasure(self) -> bool {
        matches!(self, Rule::Er1 | Rule::Er2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    Formula(usize),
    Decl(Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Added {
    Formula(usize, Term),
    Decl(Symbol, Type),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alt {
    pub adds: Vec<Added>,
    pub next: Option<Box<Step>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub side: Side,
    pub premises: Vec<Premise>,
    pub inst: Option<Term>,
    pub alts: Vec<Alt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitRole {
    Theory,
    Goal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitFormula {
    pub fid: usize,
    pub side: Side,
    pub role: InitRole,
    pub formula: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub problem: String,
    pub mode: RuleMode,
    pub init: Vec<InitFormula>,
    /// `None` when the initial branch already contains a contradiction at the root.
    pub root: Option<Box<Step>>,
}

impl Trace {
    pub fn step_count(&self) -> usize {
        fn count(s: &Step) -> usize {
            1 + s.alts.iter().filter_map(|a| a.next.as_ref()).map(|n| count(n)).sum::<usize>()
        }
        self.root.as_ref().map(|r| count(r)).unwrap_or(0)
    }

    /// Rules used anywhere in the trace.
    pub fn rules_used(&self) -> Vec<Rule> {
        let mut out = Vec::new();
        fn go(s: &Step, out: &mut Vec<Rule>) {
            if !out.contains(&s.rule) {
                out.push(s.rule);
            }
            for a in &s.alts {
                if let Some(n) = &a.next {
                    go(n, out);
                }
            }
        }
        if let Some(r) = &self.root {
            go(r, &mut out);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% dholt trace {} mode {}", self.problem, self.mode.name());
        for i in &self.init {
            let role = match i.role {
                InitRole::Theory => "theory",
                InitRole::Goal => "goal",
            };
            let _ = writeln!(out, "init f{} {} {} {}", i.fid, i.side.letter(), role, term_to_string(&i.formula));
        }
        let mut next_id = 0;
        if let Some(r) = &self.root {
            write_step(r, None, &mut next_id, &mut out);
        }
        out
    }
}

fn write_step(s: &Step, parent: Option<(usize, usize)>, next_id: &mut usize, out: &mut String) {
    let id = *next_id;
    *next_id += 1;
    let parent = match parent {
        Some((p, a)) => format!("{}.{}", p, a),
        None => "root".to_string(),
    };
    let premises: Vec<String> = s
        .premises
        .iter()
        .map(|p| match p {
            Premise::Formula(f) => format!("f{}", f),
            Premise::Decl(x) => format!("v:{}", x),
        })
        .collect();
    let premises = if premises.is_empty() { "-".to_string() } else { premises.join(",") };
    let inst = match &s.inst {
        Some(t) => format!(" with {{{}}}", term_to_string(t)),
        None => String::new(),
    };
    for (k, a) in s.alts.iter().enumerate() {
        let items: Vec<String> = a
            .adds
            .iter()
            .map(|x| match x {
                Added::Formula(f, t) => format!("add f{} {}", f, term_to_string(t)),
                Added::Decl(x, ty) => format!("decl {} : {}", x, type_to_string(ty)),
            })
            .collect();
        let _ = writeln!(
            out,
            "step {} parent {} rule {} side {} premises {}{} alt {}: {}",
            id,
            parent,
            s.rule.tag(),
            s.side.letter(),
            premises,
            inst,
            k,
            items.join(" ; ")
        );
    }
    for (k, a) in s.alts.iter().enumerate() {
        if let Some(n) = &a.next {
            write_step(n, Some((id, k)), next_id, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace line {line}: {msg}")]
pub struct TraceParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawAdd {
    Formula(usize, String),
    Decl(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawPremise {
    Formula(usize),
    Decl(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawStepLine {
    pub line: usize,
    pub id: usize,
    pub parent: Option<(usize, usize)>,
    pub rule: String,
    pub side: Side,
    pub premises: Vec<RawPremise>,
    pub inst: Option<String>,
    pub alt: usize,
    pub adds: Vec<RawAdd>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInit {
    pub fid: usize,
    pub side: Side,
    pub role: InitRole,
    pub text: String,
}

/// A trace as text fields; formulas are parsed later against the right signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTrace {
    pub problem: String,
    pub mode: RuleMode,
    pub init: Vec<RawInit>,
    pub steps: Vec<RawStepLine>,
}

fn fid(s: &str, line: usize) -> Result<usize, TraceParseError> {
    s.strip_prefix('f')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| TraceParseError { line, msg: format!("bad formula id '{}'", s) })
}

fn side_of(s: &str, line: usize) -> Result<Side, TraceParseError> {
    match s {
        "d" => Ok(Side::D),
        "h" => Ok(Side::H),
        _ => Err(TraceParseError { line, msg: format!("bad side '{}'", s) }),
    }
}

pub fn parse_trace(text: &str) -> Result<RawTrace, TraceParseError> {
    let mut problem = None;
    let mut init = Vec::new();
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        let err = |msg: &str| TraceParseError { line, msg: msg.to_string() };
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("% dholt trace ") {
            let (name, mode) = rest.split_once(" mode ").ok_or_else(|| err("bad header"))?;
            let mode = RuleMode::from_name(mode.trim()).ok_or_else(|| err("unknown mode"))?;
            problem = Some((name.trim().to_string(), mode));
            continue;
        }
        if l.starts_with('%') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("init ") {
            let mut it = rest.splitn(4, ' ');
            let f = fid(it.next().unwrap_or(""), line)?;
            let side = side_of(it.next().unwrap_or(""), line)?;
            let role = match it.next() {
                Some("theory") => InitRole::Theory,
                Some("goal") => InitRole::Goal,
                _ => return Err(err("bad init role")),
            };
            let text = it.next().ok_or_else(|| err("missing formula"))?.to_string();
            init.push(RawInit { fid: f, side, role, text });
            continue;
        }
        let rest = l.strip_prefix("step ").ok_or_else(|| err("unrecognized line"))?;
        // Instances may contain ": " themselves; terms never contain braces.
        let (rest, inst) = match rest.find(" with {") {
            Some(p) => {
                let close = rest[p..].find('}').ok_or_else(|| err("unclosed instance"))? + p;
                let inst = rest[p + 7..close].to_string();
                (format!("{}{}", &rest[..p], &rest[close + 1..]), Some(inst))
            }
            None => (rest.to_string(), None),
        };
        let (head, body) = rest.split_once(": ").ok_or_else(|| err("missing ': '"))?;
        let head = head.to_string();
        let toks: Vec<&str> = head.split_whitespace().collect();
        if toks.len() != 11
            || toks[1] != "parent"
            || toks[3] != "rule"
            || toks[5] != "side"
            || toks[7] != "premises"
            || toks[9] != "alt"
        {
            return Err(err("malformed step header"));
        }
        let id = toks[0].parse().map_err(|_| err("bad step id"))?;
        let parent = if toks[2] == "root" {
            None
        } else {
            let (p, a) = toks[2].split_once('.').ok_or_else(|| err("bad parent"))?;
            Some((p.parse().map_err(|_| err("bad parent"))?, a.parse().map_err(|_| err("bad parent"))?))
        };
        let premises = if toks[8] == "-" {
            Vec::new()
        } else {
            toks[8]
                .split(',')
                .map(|p| match p.strip_prefix("v:") {
                    Some(x) => Ok(RawPremise::Decl(x.to_string())),
                    None => fid(p, line).map(RawPremise::Formula),
                })
                .collect::<Result<_, _>>()?
        };
        let alt = toks[10].parse().map_err(|_| err("bad alternative"))?;
        let mut adds = Vec::new();
        for item in body.split(" ; ") {
            let item = item.trim();
            if let Some(r) = item.strip_prefix("add ") {
                let (f, t) = r.split_once(' ').ok_or_else(|| err("bad addition"))?;
                adds.push(RawAdd::Formula(fid(f, line)?, t.to_string()));
            } else if let Some(r) = item.strip_prefix("decl ") {
                let (x, t) = r.split_once(" : ").ok_or_else(|| err("bad declaration"))?;
                adds.push(RawAdd::Decl(x.trim().to_string(), t.to_string()));
            } else {
                return Err(err("bad addition"));
            }
        }
        steps.push(RawStepLine {
            line,
            id,
            parent,
            rule: toks[4].to_string(),
            side: side_of(toks[6], line)?,
            premises,
            inst,
            alt,
            adds,
        });
    }
    let (problem, mode) = problem.ok_or(TraceParseError { line: 1, msg: "missing header".into() })?;
    Ok(RawTrace { problem, mode, init, steps })
}
