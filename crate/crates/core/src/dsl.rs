//! Problem-file language: lexer, recursive-descent parser and canonical
//! printer.
//!
//! ```text
//! # two people, birth months uniform over 12
//! space person[2] uniform(12)
//! event p1: person[0] != person[1]
//! event p2: not (person[0] == may and person[1] == may)
//! ```
//!
//! `not` binds tighter than `and`, which binds tighter than `or`. A chain
//! `a and b and c` becomes one n-ary node; a parenthesized group stays a
//! separate node. Month names (`jan`..`dec`, or spelled out, any case) stand
//! for 1..12 when compared against a family of cardinality 12.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{validate, Atom, CategoricalFamily, Cmp, EventExpr, Operand, SampleSpace, VarRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    fn cover(self, end: SourceSpan) -> SourceSpan {
        let length = if end.line == self.line {
            (end.column + end.length).saturating_sub(self.column)
        } else {
            self.length
        };
        SourceSpan { length, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    fn error(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseDiagnostic { span, message: message.into(), severity: Severity::Error }
    }

    fn warning(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseDiagnostic { span, message: message.into(), severity: Severity::Warning }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {level}: {}", self.span.line, self.span.column, self.message)
    }
}

/// A parsed and validated problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSet {
    pub space: SampleSpace,
    pub events: Vec<(String, EventExpr)>,
    pub source_name: String,
    /// Non-fatal diagnostics, such as families no event refers to.
    pub warnings: Vec<ParseDiagnostic>,
}

impl ProblemSet {
    pub fn event(&self, name: &str) -> Option<&EventExpr> {
        self.events.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemSet, Vec<ParseDiagnostic>> {
    parse_problem_named(text, "<input>")
}

pub fn parse_problem_named(text: &str, source_name: &str) -> Result<ProblemSet, Vec<ParseDiagnostic>> {
    let tokens = lex(text).map_err(|d| vec![d])?;
    let decls = Parser::new(tokens).file().map_err(|d| vec![d])?;
    lower_file(decls, source_name)
}

/// Parses a comma-separated list of atoms such as
/// `person[0] == may, person[1] == may` against an existing space.
pub fn parse_atom_list(text: &str, space: &SampleSpace) -> Result<Vec<EventExpr>, Vec<ParseDiagnostic>> {
    let tokens = lex(text).map_err(|d| vec![d])?;
    let raws = Parser::new(tokens).atom_list().map_err(|d| vec![d])?;
    let mut diags = Vec::new();
    let atoms = raws.iter().map(|raw| lower_checked(raw, space, &mut diags)).collect();
    if diags.iter().any(ParseDiagnostic::is_error) {
        sort_diags(&mut diags);
        Err(diags)
    } else {
        Ok(atoms)
    }
}

/// Renders a diagnostic list one per line, prefixed with the source name.
pub fn render_diagnostics(source_name: &str, diags: &[ParseDiagnostic]) -> String {
    diags.iter().map(|d| format!("{source_name}:{d}\n")).collect()
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Space,
    Uniform,
    Event,
    And,
    Or,
    Not,
    True,
    False,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Comma,
    EqEq,
    NotEq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", other.text()),
        }
    }
}

impl Tok {
    fn text(&self) -> &'static str {
        match self {
            Tok::Space => "space",
            Tok::Uniform => "uniform",
            Tok::Event => "event",
            Tok::And => "and",
            Tok::Or => "or",
            Tok::Not => "not",
            Tok::True => "true",
            Tok::False => "false",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::EqEq => "==",
            Tok::NotEq => "!=",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let start = SourceSpan { line, column, length: 1 };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                word.push(c);
                chars.next();
            }
            let length = word.len();
            let tok = match word.as_str() {
                "space" => Tok::Space,
                "uniform" => Tok::Uniform,
                "event" => Tok::Event,
                "and" => Tok::And,
                "or" => Tok::Or,
                "not" => Tok::Not,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            };
            tokens.push(Token { tok, span: SourceSpan { length, ..start } });
            column += length;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(c);
                chars.next();
            }
            let span = SourceSpan { length: digits.len(), ..start };
            let value = digits
                .parse::<u64>()
                .map_err(|_| ParseDiagnostic::error(span, format!("integer `{digits}` is too large")))?;
            tokens.push(Token { tok: Tok::Int(value), span });
            column += digits.len();
            continue;
        }
        chars.next();
        let two = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>, tok: Tok| {
            if chars.peek() == Some(&'=') {
                chars.next();
                Some(tok)
            } else {
                None
            }
        };
        let tok = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '=' => two(&mut chars, Tok::EqEq),
            '!' => two(&mut chars, Tok::NotEq),
            _ => None,
        };
        let Some(tok) = tok else {
            let message = match c {
                '=' => "expected `==`".to_string(),
                '!' => "expected `!=`".to_string(),
                _ => format!("unexpected character `{c}`"),
            };
            return Err(ParseDiagnostic::error(start, message));
        };
        let length = tok.text().len();
        tokens.push(Token { tok, span: SourceSpan { length, ..start } });
        column += length;
    }
    tokens.push(Token { tok: Tok::Eof, span: SourceSpan { line, column, length: 0 } });
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Clone, Debug)]
struct RawRef {
    family: String,
    family_span: SourceSpan,
    index: usize,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
enum RawRhs {
    Ref(RawRef),
    Int(u64, SourceSpan),
    Month(String, SourceSpan),
}

#[derive(Clone, Debug)]
enum RawExpr {
    True(SourceSpan),
    False(SourceSpan),
    Atom { lhs: RawRef, cmp: Cmp, rhs: RawRhs, span: SourceSpan },
    Not(Box<RawExpr>, SourceSpan),
    And(Vec<RawExpr>, SourceSpan),
    Or(Vec<RawExpr>, SourceSpan),
}

impl RawExpr {
    fn span(&self) -> SourceSpan {
        match self {
            RawExpr::True(s) | RawExpr::False(s) | RawExpr::Not(_, s) | RawExpr::And(_, s) | RawExpr::Or(_, s) => *s,
            RawExpr::Atom { span, .. } => *span,
        }
    }

    /// Families compared against a month name somewhere in this expression.
    fn month_families<'a>(&'a self, out: &mut HashSet<&'a str>) {
        match self {
            RawExpr::Atom { lhs, rhs: RawRhs::Month(..), .. } => {
                out.insert(&lhs.family);
            }
            RawExpr::Not(c, _) => c.month_families(out),
            RawExpr::And(cs, _) | RawExpr::Or(cs, _) => cs.iter().for_each(|c| c.month_families(out)),
            _ => {}
        }
    }

    fn at_path(&self, path: &[usize]) -> &RawExpr {
        let Some((&head, rest)) = path.split_first() else {
            return self;
        };
        match self {
            RawExpr::Not(c, _) => c.at_path(rest),
            RawExpr::And(cs, _) | RawExpr::Or(cs, _) => match cs.get(head) {
                Some(c) => c.at_path(rest),
                None => self,
            },
            _ => self,
        }
    }
}

#[derive(Debug)]
enum RawDecl {
    Space { name: String, name_span: SourceSpan, count: u64, count_span: SourceSpan, cardinality: u64, card_span: SourceSpan },
    Event { name: String, name_span: SourceSpan, expr: RawExpr },
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    /// Error for the current token. When the offending token sits on a later
    /// line than the previous one, the declaration was cut short, so point
    /// just past the previous token instead.
    fn unexpected(&self, expected: &str) -> ParseDiagnostic {
        let here = &self.tokens[self.pos];
        if self.pos > 0 {
            let prev = &self.tokens[self.pos - 1];
            if here.span.line > prev.span.line {
                let span = SourceSpan { column: prev.span.column + prev.span.length, length: 0, ..prev.span };
                return ParseDiagnostic::error(span, format!("expected {expected} before end of line"));
            }
        }
        ParseDiagnostic::error(here.span, format!("expected {expected}, found {}", here.tok))
    }

    fn expect(&mut self, tok: Tok) -> PResult<SourceSpan> {
        if *self.peek() == tok {
            Ok(self.advance().span)
        } else {
            Err(self.unexpected(&format!("`{}`", tok.text())))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match self.peek().clone() {
            Tok::Ident(name) => Ok((name, self.advance().span)),
            _ => Err(self.unexpected(what)),
        }
    }

    fn int(&mut self, what: &str) -> PResult<(u64, SourceSpan)> {
        match *self.peek() {
            Tok::Int(n) => Ok((n, self.advance().span)),
            _ => Err(self.unexpected(what)),
        }
    }

    fn file(&mut self) -> PResult<Vec<RawDecl>> {
        let mut decls = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(decls),
                Tok::Space => decls.push(self.space_decl()?),
                Tok::Event => decls.push(self.event_decl()?),
                // a new declaration starts here, so the previous line is not at fault
                tok => {
                    let msg = format!("expected `space` or `event`, found {tok}");
                    return Err(ParseDiagnostic::error(self.tokens[self.pos].span, msg));
                }
            }
        }
    }

    fn space_decl(&mut self) -> PResult<RawDecl> {
        self.expect(Tok::Space)?;
        let (name, name_span) = self.ident("a family name")?;
        self.expect(Tok::LBracket)?;
        let (count, count_span) = self.int("a draw count")?;
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Uniform)?;
        self.expect(Tok::LParen)?;
        let (cardinality, card_span) = self.int("a cardinality")?;
        self.expect(Tok::RParen)?;
        Ok(RawDecl::Space { name, name_span, count, count_span, cardinality, card_span })
    }

    fn event_decl(&mut self) -> PResult<RawDecl> {
        self.expect(Tok::Event)?;
        let (name, name_span) = self.ident("an event name")?;
        self.expect(Tok::Colon)?;
        let expr = self.expr()?;
        Ok(RawDecl::Event { name, name_span, expr })
    }

    fn atom_list(&mut self) -> PResult<Vec<RawExpr>> {
        let mut atoms = vec![self.atom()?];
        while *self.peek() == Tok::Comma {
            self.advance();
            atoms.push(self.atom()?);
        }
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("`,` or end of input"));
        }
        Ok(atoms)
    }

    fn expr(&mut self) -> PResult<RawExpr> {
        self.chain(Tok::Or, Self::and_expr, RawExpr::Or)
    }

    fn and_expr(&mut self) -> PResult<RawExpr> {
        self.chain(Tok::And, Self::unary, RawExpr::And)
    }

    fn chain(
        &mut self,
        op: Tok,
        operand: fn(&mut Self) -> PResult<RawExpr>,
        build: fn(Vec<RawExpr>, SourceSpan) -> RawExpr,
    ) -> PResult<RawExpr> {
        let first = operand(self)?;
        if *self.peek() != op {
            return Ok(first);
        }
        let mut items = vec![first];
        while *self.peek() == op {
            self.advance();
            items.push(operand(self)?);
        }
        let span = items[0].span().cover(items[items.len() - 1].span());
        Ok(build(items, span))
    }

    fn unary(&mut self) -> PResult<RawExpr> {
        match self.peek() {
            Tok::Not => {
                let start = self.advance().span;
                let child = self.unary()?;
                let span = start.cover(child.span());
                Ok(RawExpr::Not(Box::new(child), span))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::True => Ok(RawExpr::True(self.advance().span)),
            Tok::False => Ok(RawExpr::False(self.advance().span)),
            Tok::Ident(_) => self.atom(),
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn atom(&mut self) -> PResult<RawExpr> {
        let lhs = self.reference()?;
        let cmp = match self.peek() {
            Tok::EqEq => Cmp::Eq,
            Tok::NotEq => Cmp::Neq,
            _ => return Err(self.unexpected("`==` or `!=`")),
        };
        self.advance();
        let rhs = match self.peek().clone() {
            Tok::Int(n) => RawRhs::Int(n, self.advance().span),
            Tok::Ident(name) => {
                if matches!(self.tokens.get(self.pos + 1).map(|t| &t.tok), Some(Tok::LBracket)) {
                    RawRhs::Ref(self.reference()?)
                } else {
                    RawRhs::Month(name, self.advance().span)
                }
            }
            _ => return Err(self.unexpected("a draw, an integer or a month name")),
        };
        let end = match &rhs {
            RawRhs::Ref(r) => r.span,
            RawRhs::Int(_, s) | RawRhs::Month(_, s) => *s,
        };
        let span = lhs.span.cover(end);
        Ok(RawExpr::Atom { lhs, cmp, rhs, span })
    }

    fn reference(&mut self) -> PResult<RawRef> {
        let (family, family_span) = self.ident("a draw such as `person[0]`")?;
        self.expect(Tok::LBracket)?;
        let (index, _) = self.int("a draw index")?;
        let close = self.expect(Tok::RBracket)?;
        Ok(RawRef { family, family_span, index: index as usize, span: family_span.cover(close) })
    }
}

// ---------------------------------------------------------------------------
// Lowering and semantic checks

const MONTHS: [(&str, &str); 12] = [
    ("jan", "january"),
    ("feb", "february"),
    ("mar", "march"),
    ("apr", "april"),
    ("may", "may"),
    ("jun", "june"),
    ("jul", "july"),
    ("aug", "august"),
    ("sep", "september"),
    ("oct", "october"),
    ("nov", "november"),
    ("dec", "december"),
];

/// Month number for a month name, case-insensitively.
pub fn month_number(name: &str) -> Option<u32> {
    let lower = name.to_ascii_lowercase();
    MONTHS
        .iter()
        .position(|(short, long)| lower == *short || lower == *long)
        .map(|i| i as u32 + 1)
}

fn sort_diags(diags: &mut [ParseDiagnostic]) {
    diags.sort_by_key(|d| (d.severity != Severity::Error, d.span.line, d.span.column));
}

fn lower_file(decls: Vec<RawDecl>, source_name: &str) -> Result<ProblemSet, Vec<ParseDiagnostic>> {
    let mut diags = Vec::new();
    let mut families = Vec::new();
    let mut family_spans = Vec::new();

    for decl in &decls {
        if let RawDecl::Space { name, name_span, count, count_span, cardinality, card_span } = decl {
            if families.iter().any(|f: &CategoricalFamily| f.name() == name) {
                diags.push(ParseDiagnostic::error(*name_span, format!("duplicate name: family `{name}` is already declared")));
                continue;
            }
            if *count == 0 {
                diags.push(ParseDiagnostic::error(*count_span, "draw count must be at least 1"));
                continue;
            }
            let Ok(cardinality) = u32::try_from(*cardinality) else {
                diags.push(ParseDiagnostic::error(*card_span, "cardinality is too large"));
                continue;
            };
            match CategoricalFamily::new(name.clone(), *count as usize, cardinality) {
                Ok(f) => {
                    families.push(f);
                    family_spans.push((*name_span, *card_span));
                }
                Err(e) => diags.push(ParseDiagnostic::error(*card_span, e.to_string())),
            }
        }
    }
    let space = SampleSpace::new(families).expect("family names checked above");

    let mut seen = HashSet::new();
    let mut events = Vec::new();
    let mut used = HashSet::new();
    let errors_before_events = diags.len();
    for decl in &decls {
        if let RawDecl::Event { name, name_span, expr } = decl {
            if !seen.insert(name.clone()) {
                diags.push(ParseDiagnostic::error(*name_span, format!("duplicate name: event `{name}` is already defined")));
                continue;
            }
            let lowered = lower_checked(expr, &space, &mut diags);
            used.extend(crate::model::free_vars(&lowered).into_iter().map(|v| v.family));
            events.push((name.clone(), lowered));
        }
    }

    // An unused declaration next to references to an undeclared family is
    // most likely a misspelled name, so it is reported as an error at the
    // declaration as well as at each reference.
    let unknown_referenced = diags[errors_before_events..].iter().any(|d| d.message.starts_with("unknown family"));
    let mut month_users = HashSet::new();
    for decl in &decls {
        if let RawDecl::Event { expr, .. } = decl {
            expr.month_families(&mut month_users);
        }
    }
    for (f, (_, card_span)) in space.families().iter().zip(&family_spans) {
        if f.cardinality() != 12 && month_users.contains(f.name()) {
            diags.push(ParseDiagnostic::error(
                *card_span,
                format!("family `{}` has cardinality {}, but events compare it with month names", f.name(), f.cardinality()),
            ));
        }
    }

    for (f, (span, _)) in space.families().iter().zip(&family_spans) {
        if used.contains(f.name()) {
            continue;
        }
        if unknown_referenced {
            diags.push(ParseDiagnostic::error(
                *span,
                format!("family `{}` is not used by any event, but undeclared families are referenced", f.name()),
            ));
        } else {
            diags.push(ParseDiagnostic::warning(*span, format!("family `{}` is not used by any event", f.name())));
        }
    }

    sort_diags(&mut diags);
    if diags.iter().any(ParseDiagnostic::is_error) {
        return Err(diags);
    }
    Ok(ProblemSet { space, events, source_name: source_name.to_string(), warnings: diags })
}

/// Lowers one expression and appends its semantic diagnostics.
fn lower_checked(raw: &RawExpr, space: &SampleSpace, diags: &mut Vec<ParseDiagnostic>) -> EventExpr {
    let expr = lower(raw, space, diags);
    let mut previous: Option<(Vec<usize>, String)> = None;
    for d in validate(&expr, space) {
        let node = raw.at_path(&d.path);
        let message = d.to_string();
        // both sides of one atom can name the same unknown family
        let repeat = previous.as_ref().is_some_and(|(path, m)| *path == d.path && *m == message);
        previous = Some((d.path.clone(), message));
        let span = match (node, &d.kind) {
            (RawExpr::Atom { lhs, .. }, crate::model::DiagnosticKind::UnknownFamily(name)) if lhs.family == *name && !repeat => {
                lhs.family_span
            }
            (RawExpr::Atom { rhs: RawRhs::Ref(r), .. }, crate::model::DiagnosticKind::UnknownFamily(name)) if r.family == *name => {
                r.family_span
            }
            _ => node.span(),
        };
        diags.push(ParseDiagnostic::error(span, d.to_string()));
    }
    expr
}

fn lower(raw: &RawExpr, space: &SampleSpace, diags: &mut Vec<ParseDiagnostic>) -> EventExpr {
    let var = |r: &RawRef| VarRef::new(r.family.clone(), r.index);
    match raw {
        RawExpr::True(_) => EventExpr::True,
        RawExpr::False(_) => EventExpr::False,
        RawExpr::Not(c, _) => EventExpr::not(lower(c, space, diags)),
        RawExpr::And(cs, _) => EventExpr::And(cs.iter().map(|c| lower(c, space, diags)).collect()),
        RawExpr::Or(cs, _) => EventExpr::Or(cs.iter().map(|c| lower(c, space, diags)).collect()),
        RawExpr::Atom { lhs, cmp, rhs, .. } => {
            let rhs = match rhs {
                RawRhs::Ref(r) => Operand::Var(var(r)),
                RawRhs::Int(n, span) => match u32::try_from(*n) {
                    Ok(v) => Operand::Const(v),
                    Err(_) => {
                        diags.push(ParseDiagnostic::error(*span, format!("constant out of range: {n}")));
                        Operand::Const(1)
                    }
                },
                RawRhs::Month(name, span) => {
                    let card = space.family(&lhs.family).map(CategoricalFamily::cardinality);
                    match (month_number(name), card) {
                        (Some(m), Some(12)) => Operand::Const(m),
                        // reported as an unknown family by validation
                        (_, None) => Operand::Const(1),
                        (Some(_), Some(k)) => {
                            diags.push(ParseDiagnostic::error(
                                *span,
                                format!("month name `{name}` needs a family of cardinality 12, `{}` has {k}", lhs.family),
                            ));
                            Operand::Const(1)
                        }
                        (None, _) => {
                            diags.push(ParseDiagnostic::error(
                                *span,
                                format!("`{name}` is not a month name; write a draw as `{name}[i]`"),
                            ));
                            Operand::Const(1)
                        }
                    }
                }
            };
            EventExpr::Atom(Atom { lhs: var(lhs), cmp: *cmp, rhs })
        }
    }
}

// ---------------------------------------------------------------------------
// Printer

/// Canonical text for `expr` with the fewest parentheses that reparse to
/// the same tree.
pub fn pretty_print(expr: &EventExpr) -> String {
    let mut out = String::new();
    print_into(expr, &mut out);
    out
}

/// Canonical problem-file text for a whole problem set.
pub fn print_problem(problem: &ProblemSet) -> String {
    let mut out = String::new();
    for f in problem.space.families() {
        out.push_str(&format!("space {}[{}] uniform({})\n", f.name(), f.count(), f.cardinality()));
    }
    for (name, expr) in &problem.events {
        out.push_str(&format!("event {name}: {}\n", pretty_print(expr)));
    }
    out
}

fn print_into(expr: &EventExpr, out: &mut String) {
    match expr {
        EventExpr::True => out.push_str("true"),
        EventExpr::False => out.push_str("false"),
        EventExpr::Atom(a) => {
            out.push_str(&a.lhs.to_string());
            out.push(' ');
            out.push_str(a.cmp.symbol());
            out.push(' ');
            match &a.rhs {
                Operand::Var(v) => out.push_str(&v.to_string()),
                Operand::Const(c) => out.push_str(&c.to_string()),
            }
        }
        EventExpr::Not(c) => {
            out.push_str("not ");
            print_child(c, matches!(**c, EventExpr::And(_) | EventExpr::Or(_)), out);
        }
        EventExpr::And(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" and ");
                }
                print_child(c, matches!(c, EventExpr::And(_) | EventExpr::Or(_)), out);
            }
        }
        EventExpr::Or(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" or ");
                }
                print_child(c, matches!(c, EventExpr::Or(_)), out);
            }
        }
    }
}

fn print_child(expr: &EventExpr, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        print_into(expr, out);
        out.push(')');
    } else {
        print_into(expr, out);
    }
}
