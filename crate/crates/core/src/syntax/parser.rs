//! Recursive-descent parser for `.phl` documents.
//!
//! ```text
//! theory pos {
//!   sorts *;
//!   relations leq : * * *;
//!   axioms
//!     [x:*] top |- leq(x, x);
//!     [x:*, y:*] leq(x, y) & leq(y, x) |- x = y;
//! }
//! ```
//!
//! `def(t)` abbreviates `t = t` and `phi -||- psi` expands into the two
//! sequents `phi |- psi` and `psi |- phi`. `#` starts a line comment.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{
    FormulaInContext, Formula, HornSequent, Operation, RelativeTheory, Signature, SortId, Term, Theory, TheoryFlag,
    TheoryMorphism, Variable,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    /// `file:line:col: message`
    pub fn with_file(&self, file: &str) -> String {
        format!("{file}:{self}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Theory(Arc<Theory>),
    Morphism(TheoryMorphism),
    Relative(RelativeTheory),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn theories(&self) -> impl Iterator<Item = &Arc<Theory>> {
        self.items.iter().filter_map(|i| match i {
            Item::Theory(t) => Some(t),
            _ => None,
        })
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &TheoryMorphism> {
        self.items.iter().filter_map(|i| match i {
            Item::Morphism(m) => Some(m),
            _ => None,
        })
    }

    pub fn relatives(&self) -> impl Iterator<Item = &RelativeTheory> {
        self.items.iter().filter_map(|i| match i {
            Item::Relative(r) => Some(r),
            _ => None,
        })
    }

    pub fn theory(&self, name: &str) -> Option<&Arc<Theory>> {
        self.theories().find(|t| t.name == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&TheoryMorphism> {
        self.morphisms().find(|m| m.name == name)
    }

    pub fn relative(&self, name: &str) -> Option<&RelativeTheory> {
        self.relatives().find(|r| r.name == name)
    }
}

/// Parses a source containing exactly one `theory` block.
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let doc = parse_document(text)?;
    let mut theories = doc.theories();
    match (theories.next(), theories.next()) {
        (Some(t), None) => Ok((**t).clone()),
        (None, _) => Err(ParseError { line: 1, col: 1, message: "no theory block found".into() }),
        (Some(_), Some(t)) => Err(ParseError {
            line: 1,
            col: 1,
            message: format!("expected a single theory, found another one named `{}`", t.name),
        }),
    }
}

/// Parses a list of `;`-terminated sequents over `sig`, as written in an
/// `axioms` section.
pub fn parse_sequents(text: &str, sig: &Signature) -> Result<Vec<HornSequent>, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, known: BTreeMap::new() };
    let mut out = Vec::new();
    while !p.at(&Tok::Eof) {
        out.extend(p.sequent(sig)?);
    }
    Ok(out)
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    parse_document_with(text, &[])
}

/// Parses a document whose morphisms and relative theories may refer to the
/// theories in `env` as well as to those defined earlier in the text.
pub fn parse_document_with(text: &str, env: &[Arc<Theory>]) -> Result<Document, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, known: env.iter().map(|t| (t.name.clone(), t.clone())).collect() };
    let mut doc = Document::default();
    while !p.at(&Tok::Eof) {
        let item = p.item()?;
        match &item {
            Item::Theory(t) => {
                p.known.insert(t.name.clone(), t.clone());
            }
            Item::Relative(r) => {
                let compiled = r.compile().map_err(|e| ParseError { line: 1, col: 1, message: e.to_string() })?;
                p.known.insert(r.name.clone(), Arc::new(compiled));
            }
            Item::Morphism(_) => {}
        }
        doc.items.push(item);
    }
    Ok(doc)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Star,
    Arrow,
    Turnstile,
    BiTurnstile,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Amp,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Star => "`*`",
            Tok::Arrow => "`->`",
            Tok::Turnstile => "`|-`",
            Tok::BiTurnstile => "`-||-`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Colon => "`:`",
            Tok::Semi => "`;`",
            Tok::Comma => "`,`",
            Tok::Amp => "`&`",
            Tok::Equals => "`=`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let bump = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                bump(c, &mut line, &mut col);
            }
            continue;
        }
        let err = |message: String| ParseError { line: l, col: k, message };
        if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                s.push(c);
                chars.next();
                bump(c, &mut line, &mut col);
            }
            out.push(Spanned { tok: Tok::Ident(s), line: l, col: k });
            continue;
        }
        chars.next();
        bump(c, &mut line, &mut col);
        let tok = match c {
            '*' => Tok::Star,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '&' => Tok::Amp,
            '=' => Tok::Equals,
            '|' => {
                if chars.peek() == Some(&'-') {
                    chars.next();
                    bump('-', &mut line, &mut col);
                    Tok::Turnstile
                } else {
                    return Err(err("expected `|-`".into()));
                }
            }
            '-' => match chars.peek() {
                Some('>') => {
                    chars.next();
                    bump('>', &mut line, &mut col);
                    Tok::Arrow
                }
                Some('|') => {
                    for want in ['|', '|', '-'] {
                        if chars.peek() != Some(&want) {
                            return Err(err("expected `-||-`".into()));
                        }
                        chars.next();
                        bump(want, &mut line, &mut col);
                    }
                    Tok::BiTurnstile
                }
                _ => return Err(err("unexpected `-`".into())),
            },
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line: l, col: k });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "theory",
    "sorts",
    "functions",
    "relations",
    "axioms",
    "flags",
    "morphism",
    "relative",
    "over",
    "operations",
    "judgments",
    "top",
    "def",
];

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    known: BTreeMap<String, Arc<Theory>>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].tok
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn advance(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let s = &self.tokens[self.pos];
        ParseError { line: s.line, col: s.col, message: message.into() }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let s = &self.tokens[pos];
        ParseError { line: s.line, col: s.col, message: message.into() }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.at(&t) {
            self.advance();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {t}, found {}", self.peek())))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.at_keyword(kw) {
            self.advance();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{kw}`, found {}", self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.advance();
                Ok(s)
            }
            Tok::Ident(s) => Err(self.error_here(format!("`{s}` is a reserved word"))),
            other => Err(self.error_here(format!("expected an identifier, found {other}"))),
        }
    }

    fn sort_name(&mut self) -> Result<String, ParseError> {
        if self.at(&Tok::Star) {
            self.advance();
            Ok("*".into())
        } else {
            self.ident()
        }
    }

    fn sort_ref(&mut self, sig: &Signature) -> Result<SortId, ParseError> {
        let pos = self.pos;
        let name = self.sort_name()?;
        sig.sort_id(&name)
            .ok_or_else(|| self.error_at(pos, format!("unknown sort `{name}`")))
    }

    fn theory_ref(&mut self) -> Result<Arc<Theory>, ParseError> {
        let pos = self.pos;
        let name = self.ident()?;
        self.known
            .get(&name)
            .cloned()
            .ok_or_else(|| self.error_at(pos, format!("unknown theory `{name}`")))
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        if self.at_keyword("theory") {
            self.theory().map(|t| Item::Theory(Arc::new(t)))
        } else if self.at_keyword("morphism") {
            self.morphism().map(Item::Morphism)
        } else if self.at_keyword("relative") {
            self.relative().map(Item::Relative)
        } else {
            Err(self.error_here(format!(
                "expected `theory`, `morphism` or `relative`, found {}",
                self.peek()
            )))
        }
    }

    fn theory(&mut self) -> Result<Theory, ParseError> {
        self.keyword("theory")?;
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut sig = Signature::new();
        let mut axioms = Vec::new();
        let mut flags = std::collections::BTreeSet::new();
        loop {
            if self.at(&Tok::RBrace) {
                self.advance();
                break;
            }
            if self.at_keyword("sorts") {
                self.advance();
                loop {
                    let pos = self.pos;
                    let s = self.sort_name()?;
                    if sig.sort_id(&s).is_some() {
                        return Err(self.error_at(pos, format!("duplicate sort `{s}`")));
                    }
                    sig.sorts.push(s);
                    if !self.comma_or_semi()? {
                        break;
                    }
                }
            } else if self.at_keyword("functions") {
                self.advance();
                loop {
                    let pos = self.pos;
                    let fname = self.ident()?;
                    self.check_fresh_symbol(&sig, &fname, pos)?;
                    self.expect(Tok::Colon)?;
                    let mut args = Vec::new();
                    if !self.at(&Tok::Arrow) {
                        args.push(self.sort_ref(&sig)?);
                        while self.at(&Tok::Star) {
                            self.advance();
                            args.push(self.sort_ref(&sig)?);
                        }
                    }
                    self.expect(Tok::Arrow)?;
                    let result = self.sort_ref(&sig)?;
                    sig.add_function(fname, args, result);
                    if !self.comma_or_semi()? {
                        break;
                    }
                }
            } else if self.at_keyword("relations") {
                self.advance();
                loop {
                    let pos = self.pos;
                    let rname = self.ident()?;
                    self.check_fresh_symbol(&sig, &rname, pos)?;
                    let mut args = Vec::new();
                    if self.at(&Tok::Colon) {
                        self.advance();
                        args.push(self.sort_ref(&sig)?);
                        while self.at(&Tok::Star) {
                            self.advance();
                            args.push(self.sort_ref(&sig)?);
                        }
                    }
                    sig.add_relation(rname, args);
                    if !self.comma_or_semi()? {
                        break;
                    }
                }
            } else if self.at_keyword("flags") {
                self.advance();
                loop {
                    let pos = self.pos;
                    let f = self.ident()?;
                    let flag = TheoryFlag::from_keyword(&f)
                        .ok_or_else(|| self.error_at(pos, format!("unknown flag `{f}`")))?;
                    flags.insert(flag);
                    if !self.comma_or_semi()? {
                        break;
                    }
                }
            } else if self.at_keyword("axioms") {
                self.advance();
                while self.at(&Tok::LBracket) {
                    axioms.extend(self.sequent(&sig)?);
                }
            } else {
                return Err(self.error_here(format!(
                    "expected a section (`sorts`, `functions`, `relations`, `flags`, `axioms`) or `}}`, found {}",
                    self.peek()
                )));
            }
        }
        let mut t = Theory::new(name, sig).with_axioms(axioms);
        t.flags = flags;
        Ok(t)
    }

    fn check_fresh_symbol(&self, sig: &Signature, name: &str, pos: usize) -> Result<(), ParseError> {
        if sig.function_id(name).is_some() || sig.relation_id(name).is_some() {
            Err(self.error_at(pos, format!("duplicate symbol `{name}`")))
        } else {
            Ok(())
        }
    }

    /// Consumes `,` (returns true: list continues) or `;` (returns false).
    fn comma_or_semi(&mut self) -> Result<bool, ParseError> {
        match self.peek() {
            Tok::Comma => {
                self.advance();
                Ok(true)
            }
            Tok::Semi => {
                self.advance();
                Ok(false)
            }
            other => Err(self.error_here(format!("expected `,` or `;`, found {other}"))),
        }
    }

    fn context(&mut self, sig: &Signature) -> Result<Vec<Variable>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut ctx: Vec<Variable> = Vec::new();
        if !self.at(&Tok::RBracket) {
            loop {
                let pos = self.pos;
                let name = self.ident()?;
                if ctx.iter().any(|v| v.name == name) {
                    return Err(self.error_at(pos, "context variables must be distinct"));
                }
                self.expect(Tok::Colon)?;
                let sort = self.sort_ref(sig)?;
                ctx.push(Variable { name, sort });
                if self.at(&Tok::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(ctx)
    }

    fn sequent(&mut self, sig: &Signature) -> Result<Vec<HornSequent>, ParseError> {
        let ctx = self.context(sig)?;
        let premise = self.formula(sig, &ctx)?;
        let bi = match self.peek() {
            Tok::Turnstile => false,
            Tok::BiTurnstile => true,
            other => return Err(self.error_here(format!("expected `|-` or `-||-`, found {other}"))),
        };
        self.advance();
        let conclusion = self.formula(sig, &ctx)?;
        self.expect(Tok::Semi)?;
        let mut out = vec![HornSequent::new(ctx.clone(), premise.clone(), conclusion.clone())];
        if bi {
            out.push(HornSequent::new(ctx, conclusion, premise));
        }
        Ok(out)
    }

    fn formula(&mut self, sig: &Signature, ctx: &[Variable]) -> Result<Formula, ParseError> {
        let mut phi = self.conjunct(sig, ctx)?;
        while self.at(&Tok::Amp) {
            self.advance();
            let rhs = self.conjunct(sig, ctx)?;
            phi = Formula::and(phi, rhs);
        }
        Ok(phi)
    }

    fn conjunct(&mut self, sig: &Signature, ctx: &[Variable]) -> Result<Formula, ParseError> {
        if self.at_keyword("top") {
            self.advance();
            return Ok(Formula::Top);
        }
        if self.at_keyword("def") {
            self.advance();
            self.expect(Tok::LParen)?;
            let start = self.pos;
            let t = self.term(sig, ctx)?;
            t.sort(sig, ctx).map_err(|e| self.error_at(start, e))?;
            self.expect(Tok::RParen)?;
            return Ok(Formula::defined(t));
        }
        if self.at(&Tok::LParen) {
            self.advance();
            let phi = self.formula(sig, ctx)?;
            self.expect(Tok::RParen)?;
            return Ok(phi);
        }
        if let Tok::Ident(name) = self.peek().clone() {
            // a context variable hides a relation of the same name unless applied
            let shadowed = ctx.iter().any(|v| v.name == name) && self.peek2() != &Tok::LParen;
            if let (false, Some(r)) = (shadowed, sig.relation_id(&name)) {
                let pos = self.pos;
                self.advance();
                let args = if self.at(&Tok::LParen) { self.arg_list(sig, ctx)? } else { Vec::new() };
                let phi = Formula::Rel(r, args);
                let mut errs = Vec::new();
                super::validate::formula_violations(sig, ctx, &phi, &mut errs);
                if let Some(e) = errs.into_iter().next() {
                    return Err(self.error_at(pos, e));
                }
                return Ok(phi);
            }
        }
        let start = self.pos;
        let lhs = self.term(sig, ctx)?;
        self.expect(Tok::Equals)?;
        let rhs = self.term(sig, ctx)?;
        let (sl, sr) = (
            lhs.sort(sig, ctx).map_err(|e| self.error_at(start, e))?,
            rhs.sort(sig, ctx).map_err(|e| self.error_at(start, e))?,
        );
        if sl != sr {
            return Err(self.error_at(
                start,
                format!("equation between terms of different sorts `{}` and `{}`", sig.sorts[sl], sig.sorts[sr]),
            ));
        }
        Ok(Formula::Eq(lhs, rhs))
    }

    fn arg_list(&mut self, sig: &Signature, ctx: &[Variable]) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if !self.at(&Tok::RParen) {
            loop {
                args.push(self.term(sig, ctx)?);
                if self.at(&Tok::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self, sig: &Signature, ctx: &[Variable]) -> Result<Term, ParseError> {
        let pos = self.pos;
        let name = self.ident()?;
        if let Some(i) = ctx.iter().position(|v| v.name == name) {
            if !self.at(&Tok::LParen) {
                return Ok(Term::Var(i));
            }
            if sig.function_id(&name).is_none() {
                return Err(self.error_here(format!("variable `{name}` cannot be applied")));
            }
        }
        if let Some(f) = sig.function_id(&name) {
            let args = if self.at(&Tok::LParen) { self.arg_list(sig, ctx)? } else { Vec::new() };
            let t = Term::App(f, args);
            t.sort(sig, ctx).map_err(|e| self.error_at(pos, e))?;
            return Ok(t);
        }
        if sig.relation_id(&name).is_some() {
            return Err(self.error_at(pos, format!("relation `{name}` used as a term")));
        }
        Err(self.error_at(pos, format!("unbound variable `{name}`")))
    }

    fn morphism(&mut self) -> Result<TheoryMorphism, ParseError> {
        let head = self.pos;
        self.keyword("morphism")?;
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let source = self.theory_ref()?;
        self.expect(Tok::Arrow)?;
        let target = self.theory_ref()?;
        self.expect(Tok::LBrace)?;
        let (ss, ts) = (source.sig(), target.sig());
        let mut sort_map: Vec<Option<usize>> = ss.sorts.iter().map(|s| ts.sort_id(s)).collect();
        let mut func_map: Vec<Option<usize>> = ss.functions.iter().map(|f| ts.function_id(&f.name)).collect();
        let mut rel_map: Vec<Option<usize>> = ss.relations.iter().map(|r| ts.relation_id(&r.name)).collect();
        loop {
            if self.at(&Tok::RBrace) {
                self.advance();
                break;
            }
            let section = self.ident_or_keyword()?;
            loop {
                if section == "sorts" {
                    let from = self.sort_ref(ss)?;
                    self.expect(Tok::Arrow)?;
                    sort_map[from] = Some(self.sort_ref(ts)?);
                } else if section == "functions" {
                    let (from, to) = self.symbol_pair(
                        |n| ss.function_id(n),
                        |n| ts.function_id(n),
                        "function",
                    )?;
                    func_map[from] = Some(to);
                } else if section == "relations" {
                    let (from, to) = self.symbol_pair(
                        |n| ss.relation_id(n),
                        |n| ts.relation_id(n),
                        "relation",
                    )?;
                    rel_map[from] = Some(to);
                } else {
                    return Err(self.error_here(format!("unknown morphism section `{section}`")));
                }
                if !self.comma_or_semi()? {
                    break;
                }
            }
        }
        let unwrap = |m: Vec<Option<usize>>, names: Vec<&String>, kind: &str| {
            m.into_iter()
                .zip(names)
                .map(|(x, n)| x.ok_or_else(|| format!("{kind} `{n}` is not mapped")))
                .collect::<Result<Vec<_>, _>>()
        };
        let built = (|| {
            let sorts = unwrap(sort_map, ss.sorts.iter().collect(), "sort")?;
            let funcs = unwrap(func_map, ss.functions.iter().map(|f| &f.name).collect(), "function")?;
            let rels = unwrap(rel_map, ss.relations.iter().map(|r| &r.name).collect(), "relation")?;
            TheoryMorphism::new(name, source.clone(), target.clone(), sorts, funcs, rels).map_err(|e| e.to_string())
        })();
        built.map_err(|e| self.error_at(head, e))
    }

    fn ident_or_keyword(&mut self) -> Result<String, ParseError> {
        match self.advance() {
            Tok::Ident(s) => Ok(s),
            other => Err(self.error_at(self.pos.saturating_sub(1), format!("expected a section name, found {other}"))),
        }
    }

    fn symbol_pair(
        &mut self,
        from: impl Fn(&str) -> Option<usize>,
        to: impl Fn(&str) -> Option<usize>,
        kind: &str,
    ) -> Result<(usize, usize), ParseError> {
        let p0 = self.pos;
        let a = self.ident()?;
        let a = from(&a).ok_or_else(|| self.error_at(p0, format!("unknown source {kind} `{a}`")))?;
        self.expect(Tok::Arrow)?;
        let p1 = self.pos;
        let b = self.ident()?;
        let b = to(&b).ok_or_else(|| self.error_at(p1, format!("unknown target {kind} `{b}`")))?;
        Ok((a, b))
    }

    fn relative(&mut self) -> Result<RelativeTheory, ParseError> {
        let head = self.pos;
        self.keyword("relative")?;
        let name = self.ident()?;
        self.keyword("over")?;
        let base = self.theory_ref()?;
        self.expect(Tok::LBrace)?;
        let mut rt = RelativeTheory::new(name, base.clone());
        loop {
            if self.at(&Tok::RBrace) {
                self.advance();
                break;
            }
            if self.at_keyword("operations") {
                self.advance();
                loop {
                    let pos = self.pos;
                    let op = self.ident()?;
                    let combined = rt.combined_signature();
                    self.check_fresh_symbol(&combined, &op, pos)?;
                    self.expect(Tok::Colon)?;
                    let context = self.context(base.sig())?;
                    let formula = self.formula(base.sig(), &context)?;
                    self.expect(Tok::Arrow)?;
                    let result = self.sort_ref(base.sig())?;
                    rt.operations.push(Operation { name: op, arity: FormulaInContext { context, formula }, result });
                    if !self.comma_or_semi()? {
                        break;
                    }
                }
            } else if self.at_keyword("judgments") {
                self.advance();
                let combined = rt.combined_signature();
                while self.at(&Tok::LBracket) {
                    rt.judgments.extend(self.sequent(&combined)?);
                }
            } else {
                return Err(self.error_here(format!(
                    "expected `operations`, `judgments` or `}}`, found {}",
                    self.peek()
                )));
            }
        }
        if let Some(bad) = rt.non_relative_judgment() {
            return Err(self.error_at(head, format!("judgment {} mentions an operation in its premise", bad + 1)));
        }
        Ok(rt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const POS: &str = include_str!("../../corpus/pos.phl");

    #[test]
    fn pos_file_parses_with_expected_shape() {
        let t = parse_theory(POS).unwrap();
        assert_eq!(t.sig().sorts.len(), 1);
        assert_eq!(t.sig().functions.len(), 0);
        assert_eq!(t.sig().relations.len(), 1);
        assert_eq!(t.axioms.len(), 3);
    }

    #[test]
    fn empty_theory() {
        let t = parse_theory("theory Triv { sorts s; }").unwrap();
        assert_eq!(t.sig().sorts, vec!["s".to_string()]);
        assert!(t.sig().functions.is_empty() && t.sig().relations.is_empty() && t.axioms.is_empty());
    }

    #[test]
    fn unbound_variable_is_rejected_with_position() {
        let src = "theory T {\n  sorts s;\n  relations r : s * s;\n  axioms [x:s] top |- r(x, y);\n}";
        let e = parse_theory(src).unwrap_err();
        assert_eq!((e.line, e.col), (4, 28));
        assert!(e.message.contains("unbound variable"), "{e}");
        assert_eq!(e.with_file("t.phl"), "t.phl:4:28: unbound variable `y`");
    }

    #[test]
    fn unknown_sort_and_duplicate_symbol_are_rejected() {
        let e = parse_theory("theory T { sorts s; functions f : t -> s; }").unwrap_err();
        assert!(e.message.contains("unknown sort `t`"));
        let e = parse_theory("theory T { sorts s; functions f : s -> s; relations f : s; }").unwrap_err();
        assert!(e.message.contains("duplicate symbol `f`"));
    }

    #[test]
    fn sugar_is_expanded() {
        let t = parse_theory("theory T { sorts s; functions f : s -> s; axioms [x:s] def(f(x)) -||- top; }").unwrap();
        assert_eq!(t.axioms.len(), 2);
        let fx = Term::App(0, vec![Term::Var(0)]);
        assert_eq!(t.axioms[0].premise, Formula::Eq(fx.clone(), fx.clone()));
        assert_eq!(t.axioms[1].conclusion, Formula::Eq(fx.clone(), fx));
        assert_eq!(t.axioms[1].premise, Formula::Top);
    }

    #[test]
    fn constants_may_omit_parentheses() {
        let t = parse_theory("theory T { sorts s; functions e : -> s; axioms [] top |- e = e(); }").unwrap();
        assert_eq!(t.axioms[0].conclusion, Formula::Eq(Term::constant(0), Term::constant(0)));
    }

    #[test]
    fn comments_are_skipped() {
        let t = parse_theory("# header\ntheory T { # trailing\n sorts s; }\n").unwrap();
        assert_eq!(t.name, "T");
    }

    #[test]
    fn morphisms_resolve_theories_and_default_by_name() {
        let src = format!(
            "{POS}\ntheory brel {{ sorts *; relations r : * * *; }}\nmorphism m : pos -> brel {{ relations leq -> r; }}"
        );
        let doc = parse_document(&src).unwrap();
        let m = doc.morphism("m").unwrap();
        assert_eq!(m.sort_map, vec![0]);
        assert_eq!(m.rel_map, vec![0]);
        let e = parse_document(&format!("{POS}\ntheory b {{ sorts *; }}\nmorphism m : pos -> b {{ }}")).unwrap_err();
        assert!(e.message.contains("relation `leq` is not mapped"), "{e}");
    }
}
