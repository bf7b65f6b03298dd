use super::lexer::{lex, Tok};
use super::ParseError;
use crate::problem::{Conjecture, Decl, Problem};
use crate::term::{fresh_symbol, Symbol, Term, Type};
use crate::typing::{infer_type, Context, Signature};
use rustc_hash::{FxHashMap, FxHashSet};

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: Signature,
    ctx: Context,
    scope: Vec<(String, Symbol)>,
    free: FxHashMap<String, Symbol>,
    declared_later: FxHashSet<String>,
}

pub fn parse_problem(src: &str, name: &str) -> Result<Problem, ParseError> {
    let toks = lex(src)?;
    let declared_later = prescan_declarations(&toks);
    let mut p = Parser {
        toks,
        pos: 0,
        sig: Signature::new(),
        ctx: Context::new(),
        scope: Vec::new(),
        free: FxHashMap::default(),
        declared_later,
    };
    let mut problem = Problem::new(name);
    while !p.at_end() {
        p.statement(&mut problem)?;
    }
    Ok(problem)
}

/// Parses a formula over `sig`, with the variables of `ctx` in scope by name.
pub fn parse_formula(src: &str, sig: &Signature, ctx: &Context) -> Result<Term, ParseError> {
    let mut p = Parser::fragment(src, sig, ctx)?;
    let t = p.formula()?;
    p.expect_end()?;
    Ok(t)
}

pub fn parse_type(src: &str, sig: &Signature, ctx: &Context) -> Result<Type, ParseError> {
    let mut p = Parser::fragment(src, sig, ctx)?;
    let (t, kinds) = p.ty()?;
    if kinds > 0 {
        return Err(ParseError::syntax(1, "$tType is not a type"));
    }
    p.expect_end()?;
    Ok(t)
}

fn prescan_declarations(toks: &[(Tok, usize)]) -> FxHashSet<String> {
    let mut out = FxHashSet::default();
    let mut i = 0;
    while i + 5 < toks.len() {
        if toks[i].0 == Tok::Lower("thf".into())
            && toks[i + 1].0 == Tok::LParen
            && toks[i + 3].0 == Tok::Comma
            && toks[i + 4].0 == Tok::Lower("type".into())
            && toks[i + 5].0 == Tok::Comma
        {
            let mut j = i + 6;
            while j < toks.len() && toks[j].0 == Tok::LParen {
                j += 1;
            }
            if let (Some((Tok::Lower(n), _)), Some((Tok::Colon, _))) = (toks.get(j), toks.get(j + 1)) {
                out.insert(n.clone());
            }
        }
        i += 1;
    }
    out
}

impl Parser {
    fn fragment(src: &str, sig: &Signature, ctx: &Context) -> Result<Parser, ParseError> {
        let free = ctx.iter().map(|(x, _)| (x.as_str().to_string(), x.clone())).collect();
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            sig: sig.clone(),
            ctx: ctx.clone(),
            scope: Vec::new(),
            free,
            declared_later: FxHashSet::default(),
        })
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|t| t.1)
            .unwrap_or(1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::syntax(self.line(), msg))
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => {
                let m = format!("expected '{}', found '{}'", t.describe(), x.describe());
                self.err(&m)
            }
            None => self.err(&format!("expected '{}', found end of input", t.describe())),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(&format!("unexpected '{}'", t.describe())),
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            Some(Tok::Lower(s)) | Some(Tok::Upper(s)) | Some(Tok::Int(s)) => Ok(s),
            Some(t) => self.err(&format!("expected a name, found '{}'", t.describe())),
            None => self.err("expected a name"),
        }
    }

    fn statement(&mut self, problem: &mut Problem) -> Result<(), ParseError> {
        match self.bump() {
            Some(Tok::Lower(w)) if w == "thf" => {}
            Some(Tok::Lower(w)) if w == "include" => return self.err("include directives are not supported"),
            Some(t) => return self.err(&format!("expected 'thf', found '{}'", t.describe())),
            None => return self.err("unexpected end of input"),
        }
        self.expect(Tok::LParen)?;
        let name = self.name()?;
        self.expect(Tok::Comma)?;
        let role = self.name()?;
        self.expect(Tok::Comma)?;
        match role.as_str() {
            "type" => {
                let d = self.type_decl()?;
                problem.decls.push(d);
            }
            "axiom" | "hypothesis" | "definition" | "lemma" | "theorem" | "assumption" => {
                let f = self.formula()?;
                problem.decls.push(Decl::Axiom { name, formula: f });
            }
            "conjecture" => {
                if problem.conjecture.is_some() {
                    return self.err("more than one conjecture");
                }
                let f = self.formula()?;
                problem.conjecture = Some(Conjecture { name, formula: f });
            }
            r => return self.err(&format!("unsupported role '{}'", r)),
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Dot)
    }

    fn type_decl(&mut self) -> Result<Decl, ParseError> {
        let mut parens = 0;
        while self.peek() == Some(&Tok::LParen) {
            self.bump();
            parens += 1;
        }
        let line = self.line();
        let name = match self.bump() {
            Some(Tok::Lower(s)) => s,
            _ => return self.err("expected a lower-case name in type declaration"),
        };
        self.expect(Tok::Colon)?;
        let (ty, kinds) = self.ty()?;
        for _ in 0..parens {
            self.expect(Tok::RParen)?;
        }
        let sym = Symbol::new(&name);
        if self.sig.contains(&sym) {
            return Err(ParseError::syntax(line, &format!("{} is declared twice", name)));
        }
        if kinds > 0 {
            let mut k = &ty;
            while let Some((_, b)) = k.as_pi() {
                k = b;
            }
            if kinds != 1 || !k.is_bool() {
                return Err(ParseError::syntax(line, "malformed kind"));
            }
            self.sig.add_base_type(&sym, ty.clone());
            Ok(Decl::Type { name: sym, kind: ty })
        } else {
            self.sig.add_const(&sym, ty.clone());
            Ok(Decl::Const { name: sym, ty })
        }
    }

    /// Returns the type and the number of `$tType` occurrences, which stand for `$o`.
    fn ty(&mut self) -> Result<(Type, usize), ParseError> {
        if self.peek() == Some(&Tok::PiBang) {
            self.bump();
            let binders = self.binders()?;
            let (body, k) = self.ty()?;
            let out = self.close_binders(binders, |x, a, b| Type::pi_over(x, a, &b), body);
            return Ok((out, k));
        }
        let (dom, k1) = self.type_app()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let (cod, k2) = self.ty()?;
            return Ok((Type::arrow(&dom, &cod), k1 + k2));
        }
        Ok((dom, k1))
    }

    fn type_app(&mut self) -> Result<(Type, usize), ParseError> {
        let line = self.line();
        match self.bump() {
            Some(Tok::LParen) => {
                let r = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(r)
            }
            Some(Tok::Dollar(w)) => match w.as_str() {
                "$o" => Ok((Type::bool(), 0)),
                "$tType" | "$tp" => Ok((Type::bool(), 1)),
                _ => Err(ParseError::syntax(line, &format!("unsupported type {}", w))),
            },
            Some(Tok::Lower(w)) => {
                let sym = Symbol::new(&w);
                let arity = match self.sig.base_arity(&sym) {
                    Some(n) => n,
                    None => return Err(self.unknown(&w, line)),
                };
                let mut args = Vec::new();
                while self.peek() == Some(&Tok::At) {
                    self.bump();
                    args.push(self.atom()?);
                }
                if args.len() != arity {
                    return Err(ParseError::Arity { line, name: w, expected: arity, got: args.len() });
                }
                Ok((Type::base(&sym, args), 0))
            }
            Some(t) => Err(ParseError::syntax(line, &format!("expected a type, found '{}'", t.describe()))),
            None => Err(ParseError::syntax(line, "expected a type")),
        }
    }

    fn unknown(&self, w: &str, line: usize) -> ParseError {
        if self.declared_later.contains(w) {
            ParseError::UseBeforeDeclaration { line, name: w.to_string() }
        } else {
            ParseError::Unknown { line, name: w.to_string() }
        }
    }

    /// `[X:A, Y:B] :` with each binder in scope for the following ones.
    fn binders(&mut self) -> Result<Vec<(Symbol, Type)>, ParseError> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        loop {
            let n = self.name()?;
            self.expect(Tok::Colon)?;
            let (a, k) = self.ty()?;
            if k > 0 {
                return self.err("binder of kind $tType is not supported");
            }
            let x = fresh_symbol(&n);
            self.scope.push((n, x.clone()));
            self.ctx.push(&x, &a);
            out.push((x, a));
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrack) => break,
                _ => return self.err("expected ',' or ']' in binder list"),
            }
        }
        self.expect(Tok::Colon)?;
        Ok(out)
    }

    fn close_binders<T>(
        &mut self,
        binders: Vec<(Symbol, Type)>,
        mk: impl Fn(&Symbol, &Type, T) -> T,
        body: T,
    ) -> T {
        let mut acc = body;
        for (x, a) in binders.into_iter().rev() {
            acc = mk(&x, &a, acc);
            self.scope.pop();
            self.ctx.pop(&x);
        }
        acc
    }

    fn formula(&mut self) -> Result<Term, ParseError> {
        let lhs = self.unit_eq()?;
        match self.peek() {
            Some(Tok::Implies) => {
                self.bump();
                let rhs = self.formula()?;
                Ok(Term::imp(&lhs, &rhs))
            }
            Some(Tok::RevImplies) => {
                self.bump();
                let rhs = self.unit_eq()?;
                Ok(Term::imp(&rhs, &lhs))
            }
            Some(Tok::Iff) => {
                self.bump();
                let rhs = self.unit_eq()?;
                Ok(Term::eq(&Type::bool(), &lhs, &rhs))
            }
            Some(Tok::And) | Some(Tok::Or) => {
                let op = self.peek().cloned();
                let mut acc = lhs;
                while self.peek() == op.as_ref() {
                    self.bump();
                    let r = self.unit_eq()?;
                    acc = if op == Some(Tok::And) { Term::and(&acc, &r) } else { Term::or(&acc, &r) };
                }
                if matches!(self.peek(), Some(Tok::And) | Some(Tok::Or) | Some(Tok::Implies)) {
                    return self.err("mixed connectives need parentheses");
                }
                Ok(acc)
            }
            _ => Ok(lhs),
        }
    }

    fn unit_eq(&mut self) -> Result<Term, ParseError> {
        let lhs = self.prefix()?;
        let negate = match self.peek() {
            Some(Tok::Equals) => false,
            Some(Tok::NotEquals) => true,
            _ => return Ok(lhs),
        };
        self.bump();
        let annot = if self.peek() == Some(&Tok::LBrack) {
            self.bump();
            let (a, _) = self.ty()?;
            self.expect(Tok::RBrack)?;
            Some(a)
        } else {
            None
        };
        let line = self.line();
        let rhs = self.prefix()?;
        let ty = match annot {
            Some(a) => a,
            None => infer_type(&self.sig, &mut self.ctx, &rhs)
                .map_err(|e| ParseError::Type { line, msg: e.to_string() })?,
        };
        let e = Term::eq(&ty, &lhs, &rhs);
        Ok(if negate { Term::neg(&e) } else { e })
    }

    fn prefix(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.bump();
                Ok(Term::neg(&self.unit_eq()?))
            }
            Some(Tok::Bang) => {
                self.bump();
                let bs = self.binders()?;
                let body = self.unit_eq()?;
                Ok(self.close_binders(bs, |x, a, b| Term::forall_over(x, a, &b), body))
            }
            Some(Tok::Question) => {
                self.bump();
                let bs = self.binders()?;
                let body = Term::neg(&self.unit_eq()?);
                let all = self.close_binders(bs, |x, a, b| Term::forall_over(x, a, &b), body);
                Ok(Term::neg(&all))
            }
            Some(Tok::Caret) => {
                self.bump();
                let bs = self.binders()?;
                let body = self.unit_eq()?;
                Ok(self.close_binders(bs, |x, a, b| Term::lam_over(x, a, &b), body))
            }
            _ => self.app(),
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::At) {
            self.bump();
            let a = self.atom()?;
            t = Term::app(&t, &a);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let line = self.line();
        match self.bump() {
            Some(Tok::LParen) => {
                let t = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Dollar(w)) => match w.as_str() {
                "$false" => Ok(Term::bot()),
                "$true" => Ok(Term::top()),
                _ => Err(ParseError::syntax(line, &format!("unsupported constant {}", w))),
            },
            Some(Tok::Lower(w)) | Some(Tok::Upper(w)) => self.resolve(&w, line),
            Some(t) => Err(ParseError::syntax(line, &format!("unexpected '{}'", t.describe()))),
            None => Err(ParseError::syntax(line, "unexpected end of input")),
        }
    }

    fn resolve(&self, w: &str, line: usize) -> Result<Term, ParseError> {
        if let Some((_, x)) = self.scope.iter().rev().find(|(n, _)| n == w) {
            return Ok(Term::var(x));
        }
        if let Some(x) = self.free.get(w) {
            return Ok(Term::var(x));
        }
        let sym = Symbol::new(w);
        if self.sig.const_type(&sym).is_some() {
            return Ok(Term::cnst(&sym));
        }
        if self.sig.is_base_type(&sym) {
            return Err(ParseError::syntax(line, &format!("type {} used as a term", w)));
        }
        Err(self.unknown(w, line))
    }
}

