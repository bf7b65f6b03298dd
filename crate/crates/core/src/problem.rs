//! Problems: an ordered theory plus an optional conjecture.

use crate::term::{Symbol, Term, Type};
use crate::typing::Signature;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    /// Base type with its telescope, a Pi chain ending in `$o`.
    Type { name: Symbol, kind: Type },
    Const { name: Symbol, ty: Type },
    Axiom { name: String, formula: Term },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture {
    pub name: String,
    pub formula: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Problem {
    pub name: String,
    pub decls: Vec<Decl>,
    pub conjecture: Option<Conjecture>,
}

impl Problem {
    pub fn new(name: &str) -> Problem {
        Problem { name: name.to_string(), ..Problem::default() }
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.decls)
    }

    pub fn axioms(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Axiom { name, formula } => Some((name.as_str(), formula)),
            _ => None,
        })
    }

    pub fn axiom_formulas(&self) -> Vec<Term> {
        self.axioms().map(|(_, f)| f.clone()).collect()
    }

    pub fn with_conjecture(&self, name: &str, formula: Term) -> Problem {
        let mut p = self.clone();
        p.conjecture = Some(Conjecture { name: name.to_string(), formula });
        p
    }

    /// Declarations up to (excluding) the `k`-th axiom.
    pub fn prefix_before_axiom(&self, k: usize) -> Vec<Decl> {
        let mut seen = 0;
        let mut out = Vec::new();
        for d in &self.decls {
            if let Decl::Axiom { .. } = d {
                if seen == k {
                    break;
                }
                seen += 1;
            }
            out.push(d.clone());
        }
        out
    }
}

pub fn signature_of(decls: &[Decl]) -> Signature {
    let mut sig = Signature::new();
    for d in decls {
        match d {
            Decl::Type { name, kind } => sig.add_base_type(name, kind.clone()),
            Decl::Const { name, ty } => sig.add_const(name, ty.clone()),
            Decl::Axiom { .. } => {}
        }
    }
    sig
}
