//! The `.dat` instance format.
//!
//! ```text
//! k = 5;
//! b = 2;
//! AtomicConstraints = {<3,4>, <4,1>, <5,4>};
//! SoftAtomicConstraints = {};
//! DisjunctiveConstraints = {<2,5,2,1>};
//! DirectSuccessors = {4};
//! ```
//!
//! Whitespace and line breaks are free, `//` and `/* */` comments are
//! skipped, a trailing comma before `}` is accepted and so is `...` as an
//! element (an elided listing); elisions are reported as warnings. Missing
//! sets default to empty, `k` and `b` are required.

use std::fmt;

use ctw_core::{ConstraintKind, DuplicateWarning, Instance, InstanceError};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DatError {
    #[error("{at}: {message}")]
    Syntax { at: Span, message: String },
    #[error("{at}: unknown parameter `{name}`")]
    UnknownParameter { at: Span, name: String },
    #[error("{at}: parameter `{name}` assigned twice")]
    Reassigned { at: Span, name: String },
    #[error("missing parameter `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Semantic(#[from] InstanceError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatWarning {
    Elided { at: Span, parameter: ConstraintKind },
    Duplicates(DuplicateWarning),
}

impl fmt::Display for DatWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatWarning::Elided { at, parameter } => {
                write!(f, "{at}: `...` in {parameter} skipped; the listing is incomplete")
            }
            DatWarning::Duplicates(d) => d.fmt(f),
        }
    }
}

/// The raw content of a `.dat` file before instance validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatDocument {
    pub k: usize,
    pub b: usize,
    pub atomic: Vec<[usize; 2]>,
    pub soft_atomic: Vec<[usize; 2]>,
    pub disjunctive: Vec<[usize; 4]>,
    pub direct_successors: Vec<usize>,
}

impl DatDocument {
    pub fn into_instance(self) -> Result<(Instance, Vec<DuplicateWarning>), InstanceError> {
        let mut builder = Instance::builder(self.k, self.b);
        for [a, b] in self.atomic {
            builder.push_atomic(a, b);
        }
        for [a, b] in self.soft_atomic {
            builder.push_soft(a, b);
        }
        for [a, b, c, d] in self.disjunctive {
            builder.push_disjunctive(a, b, c, d);
        }
        for i in self.direct_successors {
            builder.push_direct_successor(i);
        }
        builder.build_with_warnings()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Eq,
    Semi,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Comma,
    Ellipsis,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Ellipsis => f.write_str("`...`"),
        }
    }
}

fn syntax(at: Span, message: impl Into<String>) -> DatError {
    DatError::Syntax {
        at,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DatError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let bump = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let at = Span { line, col };
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
            continue;
        }
        if c == '/' {
            chars.next();
            bump(c, &mut line, &mut col);
            match chars.peek() {
                Some('/') => {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        chars.next();
                        bump(c, &mut line, &mut col);
                    }
                }
                Some('*') => {
                    chars.next();
                    bump('*', &mut line, &mut col);
                    let mut prev = '\0';
                    loop {
                        let Some(c) = chars.next() else {
                            return Err(syntax(at, "unterminated block comment"));
                        };
                        bump(c, &mut line, &mut col);
                        if prev == '*' && c == '/' {
                            break;
                        }
                        prev = c;
                    }
                }
                _ => return Err(syntax(at, "unexpected `/`")),
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut value: usize = 0;
            while let Some(&d) = chars.peek() {
                let Some(digit) = d.to_digit(10) else { break };
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit as usize))
                    .ok_or_else(|| syntax(at, "integer too large"))?;
                chars.next();
                bump(d, &mut line, &mut col);
            }
            out.push((Tok::Int(value), at));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                ident.push(d);
                chars.next();
                bump(d, &mut line, &mut col);
            }
            out.push((Tok::Ident(ident), at));
            continue;
        }
        if c == '.' {
            for _ in 0..3 {
                if chars.next_if_eq(&'.').is_none() {
                    return Err(syntax(at, "expected `...`"));
                }
                bump('.', &mut line, &mut col);
            }
            out.push((Tok::Ellipsis, at));
            continue;
        }
        let tok = match c {
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            ',' => Tok::Comma,
            '\u{2026}' => Tok::Ellipsis,
            '-' => return Err(syntax(at, "negative values are not allowed")),
            other => return Err(syntax(at, format!("unexpected character {other:?}"))),
        };
        chars.next();
        bump(c, &mut line, &mut col);
        out.push((tok, at));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Span)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Span), DatError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(syntax(self.end, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Span, DatError> {
        let (tok, at) = self.next(&want.to_string())?;
        if tok == want {
            Ok(at)
        } else {
            Err(syntax(at, format!("expected {want}, found {tok}")))
        }
    }

    fn int(&mut self) -> Result<usize, DatError> {
        match self.next("an integer")? {
            (Tok::Int(v), _) => Ok(v),
            (tok, at) => Err(syntax(at, format!("expected an integer, found {tok}"))),
        }
    }

    /// `{ elem, elem, ... }` where each element is an `arity`-tuple, or a
    /// bare integer when `arity` is 1.
    fn set(
        &mut self,
        arity: usize,
        kind: ConstraintKind,
        warnings: &mut Vec<DatWarning>,
    ) -> Result<Vec<Vec<usize>>, DatError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        loop {
            match self.next("a set element or `}`")? {
                (Tok::RBrace, _) => return Ok(out),
                (Tok::Ellipsis, at) => warnings.push(DatWarning::Elided { at, parameter: kind }),
                (Tok::Int(v), at) => {
                    if arity != 1 {
                        return Err(syntax(at, format!("{kind} expects {arity}-tuples <...>")));
                    }
                    out.push(vec![v]);
                }
                (Tok::Lt, at) => {
                    if arity == 1 {
                        return Err(syntax(at, format!("{kind} expects plain integers")));
                    }
                    let mut tuple = vec![self.int()?];
                    loop {
                        match self.next("`,` or `>`")? {
                            (Tok::Gt, _) => break,
                            (Tok::Comma, _) => tuple.push(self.int()?),
                            (tok, at) => {
                                return Err(syntax(at, format!("expected `,` or `>`, found {tok}")))
                            }
                        }
                    }
                    if tuple.len() != arity {
                        return Err(syntax(
                            at,
                            format!("{kind} expects {arity}-tuples, found {} values", tuple.len()),
                        ));
                    }
                    out.push(tuple);
                }
                (tok, at) => return Err(syntax(at, format!("unexpected {tok} in set"))),
            }
            match self.next("`,` or `}`")? {
                (Tok::Comma, _) => {}
                (Tok::RBrace, _) => return Ok(out),
                (tok, at) => return Err(syntax(at, format!("expected `,` or `}}`, found {tok}"))),
            }
        }
    }
}

fn end_span(text: &str) -> Span {
    let line = text.matches('\n').count() + 1;
    let col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Span { line, col }
}

/// Parses the syntax only; no instance invariants are checked.
pub fn parse_dat_document(text: &str) -> Result<(DatDocument, Vec<DatWarning>), DatError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: end_span(text),
    };
    let mut doc = DatDocument::default();
    let mut warnings = Vec::new();
    let mut seen: Vec<&'static str> = Vec::new();
    let (mut have_k, mut have_b) = (false, false);

    while p.peek().is_some() {
        let (name, at) = match p.next("a parameter name")? {
            (Tok::Ident(name), at) => (name, at),
            (tok, at) => return Err(syntax(at, format!("expected a parameter name, found {tok}"))),
        };
        let key: &'static str = match name.as_str() {
            "k" => "k",
            "b" => "b",
            "AtomicConstraints" => "AtomicConstraints",
            "SoftAtomicConstraints" => "SoftAtomicConstraints",
            "DisjunctiveConstraints" => "DisjunctiveConstraints",
            "DirectSuccessors" => "DirectSuccessors",
            _ => return Err(DatError::UnknownParameter { at, name }),
        };
        if seen.contains(&key) {
            return Err(DatError::Reassigned { at, name });
        }
        seen.push(key);
        p.expect(Tok::Eq)?;
        match key {
            "k" => {
                doc.k = p.int()?;
                have_k = true;
            }
            "b" => {
                doc.b = p.int()?;
                have_b = true;
            }
            "AtomicConstraints" => {
                let set = p.set(2, ConstraintKind::Atomic, &mut warnings)?;
                doc.atomic = set.into_iter().map(|t| [t[0], t[1]]).collect();
            }
            "SoftAtomicConstraints" => {
                let set = p.set(2, ConstraintKind::SoftAtomic, &mut warnings)?;
                doc.soft_atomic = set.into_iter().map(|t| [t[0], t[1]]).collect();
            }
            "DisjunctiveConstraints" => {
                let set = p.set(4, ConstraintKind::Disjunctive, &mut warnings)?;
                doc.disjunctive = set.into_iter().map(|t| [t[0], t[1], t[2], t[3]]).collect();
            }
            _ => {
                let set = p.set(1, ConstraintKind::DirectSuccessor, &mut warnings)?;
                doc.direct_successors = set.into_iter().map(|t| t[0]).collect();
            }
        }
        p.expect(Tok::Semi)?;
    }
    if !have_k {
        return Err(DatError::Missing("k"));
    }
    if !have_b {
        return Err(DatError::Missing("b"));
    }
    Ok((doc, warnings))
}

pub fn parse_dat_with_warnings(text: &str) -> Result<(Instance, Vec<DatWarning>), DatError> {
    let (doc, mut warnings) = parse_dat_document(text)?;
    let (inst, dups) = doc.into_instance()?;
    warnings.extend(dups.into_iter().map(DatWarning::Duplicates));
    Ok((inst, warnings))
}

pub fn parse_dat(text: &str) -> Result<Instance, DatError> {
    parse_dat_with_warnings(text).map(|(inst, _)| inst)
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

/// Sets are written in ascending order.
pub fn emit_dat(inst: &Instance) -> String {
    let pair = |c: &ctw_core::AtomicConstraint| format!("<{},{}>", c.before.get(), c.after.get());
    let quad = |d: &ctw_core::DisjunctiveConstraint| {
        let [a, b, c, e] = d.as_tuple();
        format!("<{a},{b},{c},{e}>")
    };
    format!(
        "k = {};\nb = {};\nAtomicConstraints = {{{}}};\nSoftAtomicConstraints = {{{}}};\n\
         DisjunctiveConstraints = {{{}}};\nDirectSuccessors = {{{}}};\n",
        inst.k(),
        inst.b(),
        join(inst.atomic(), pair),
        join(inst.soft_atomic(), pair),
        join(inst.disjunctive(), quad),
        join(inst.direct_successors(), |j| j.get().to_string()),
    )
}
