//! Line-oriented `.quiv` reader and writer.
//!
//! Grammar, one directive per line, `#` starts a comment:
//!
//! ```text
//! field Q | F<p>
//! vertex <id>...
//! arrow <id> <src> <tgt>
//! truncate <L> nilpotent <N>
//! relation <term> (+|-) <term>...
//! ```
//!
//! A term is `[<coef>*]<arrowid>(*<arrowid>)*`; the arrows read
//! left-to-right in composition order, so the rightmost acts first.
//! Coefficients are integers or fractions, optionally negative.  Vertices
//! must be declared before the arrows that use them, and arrows before the
//! relations.  [`emit`] writes the canonical form: one `field` line, one
//! `vertex` line, arrows and relations one per line in declaration order;
//! `parse` after `emit` is the identity on presentations.

use std::fmt;

use modvar_core::algebra::{AlgebraError, Presentation, Relation};
use modvar_core::field::{Field, PrimeField};
use modvar_core::quiver::{Path, Quiver, QuiverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuivErrorKind {
    Syntax,
    UnknownSymbol,
    InvalidRelation,
}

#[derive(Clone, Debug)]
pub struct QuivError {
    pub kind: QuivErrorKind,
    /// 1-based; 0 marks whole-file errors.
    pub line: usize,
    /// 1-based column of the offending token.
    pub col: usize,
    pub message: String,
}

impl QuivError {
    fn new(kind: QuivErrorKind, line: usize, col: usize, message: impl Into<String>) -> Self {
        QuivError {
            kind,
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for QuivError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            QuivErrorKind::Syntax => "syntax error",
            QuivErrorKind::UnknownSymbol => "unknown symbol",
            QuivErrorKind::InvalidRelation => "invalid relation",
        };
        if self.line == 0 {
            write!(out, "{kind}: {}", self.message)
        } else {
            write!(
                out,
                "line {}, column {}: {kind}: {}",
                self.line, self.col, self.message
            )
        }
    }
}

impl std::error::Error for QuivError {}

/// Ground field named in a file or on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    pub fn parse(token: &str) -> Result<FieldChoice, String> {
        if token == "Q" {
            return Ok(FieldChoice::Rationals);
        }
        if let Some(digits) = token.strip_prefix('F') {
            let p: u64 = digits
                .parse()
                .map_err(|_| format!("expected Q or F<p>, got `{token}`"))?;
            PrimeField::new(p).map_err(|e| e.to_string())?;
            return Ok(FieldChoice::Prime(p));
        }
        Err(format!("expected Q or F<p>, got `{token}`"))
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(out, "Q"),
            FieldChoice::Prime(p) => write!(out, "F{p}"),
        }
    }
}

/// One relation term: `num/den * (arrow word in composition order)`.
#[derive(Clone, Debug)]
struct RawTerm {
    num: i64,
    den: i64,
    word: Vec<usize>,
    col: usize,
}

#[derive(Clone, Debug)]
struct RawRelation {
    line: usize,
    terms: Vec<RawTerm>,
}

/// A parsed file, not yet tied to a concrete field type.
#[derive(Clone, Debug)]
pub struct ParsedQuiv {
    quiver: Quiver,
    field: Option<FieldChoice>,
    truncate: Option<(usize, usize, usize)>,
    relations: Vec<RawRelation>,
}

impl ParsedQuiv {
    pub fn field(&self) -> Option<FieldChoice> {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(cut) => &line[..cut],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn valid_id(token: &str) -> bool {
    !token.is_empty() && !token.contains(['*', '+', '-', '/', '#'])
}

/// An arrow id must not be mistakable for a coefficient.
fn valid_arrow_id(token: &str) -> bool {
    valid_id(token) && !token.starts_with(|c: char| c.is_ascii_digit())
}

fn parse_coefficient(token: &str) -> Option<(i64, i64)> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: i64 = num.parse().ok()?;
    let den: i64 = den.parse().ok()?;
    (den > 0).then_some((num, den))
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> QuivError {
    QuivError::new(QuivErrorKind::Syntax, line, col, message)
}

pub fn parse(text: &str) -> Result<ParsedQuiv, QuivError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut field = None;
    let mut truncate = None;
    let mut relation_lines = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = tokens(line);
        let Some(&(_, keyword)) = toks.first() else {
            continue;
        };
        let rest = &toks[1..];
        match keyword {
            "vertex" => {
                for &(col, name) in rest {
                    if !valid_id(name) {
                        return Err(syntax(lineno, col, format!("bad vertex id `{name}`")));
                    }
                    if vertices.iter().any(|v| v == name) {
                        return Err(syntax(lineno, col, format!("duplicate vertex `{name}`")));
                    }
                    vertices.push(name.to_string());
                }
            }
            "arrow" => {
                let [(ncol, name), (scol, src), (tcol, tgt)] = rest else {
                    return Err(syntax(lineno, 1, "expected `arrow <id> <src> <tgt>`"));
                };
                if !valid_arrow_id(name) {
                    return Err(syntax(lineno, *ncol, format!("bad arrow id `{name}`")));
                }
                if arrows.iter().any(|(n, _, _)| n == name) {
                    return Err(syntax(lineno, *ncol, format!("duplicate arrow `{name}`")));
                }
                let lookup = |col: usize, v: &str| {
                    vertices.iter().position(|x| x == v).ok_or_else(|| {
                        QuivError::new(
                            QuivErrorKind::UnknownSymbol,
                            lineno,
                            col,
                            format!("unknown vertex `{v}`"),
                        )
                    })
                };
                let s = lookup(*scol, src)?;
                let t = lookup(*tcol, tgt)?;
                arrows.push((name.to_string(), s, t));
            }
            "field" => {
                let [(col, token)] = rest else {
                    return Err(syntax(lineno, 1, "expected `field Q` or `field F<p>`"));
                };
                if field.is_some() {
                    return Err(syntax(lineno, *col, "duplicate field line"));
                }
                field = Some(FieldChoice::parse(token).map_err(|m| syntax(lineno, *col, m))?);
            }
            "truncate" => {
                let [(lcol, l), (_, kw), (ncol, n)] = rest else {
                    return Err(syntax(lineno, 1, "expected `truncate <L> nilpotent <N>`"));
                };
                if *kw != "nilpotent" {
                    return Err(syntax(lineno, 1, "expected `truncate <L> nilpotent <N>`"));
                }
                if truncate.is_some() {
                    return Err(syntax(lineno, 1, "duplicate truncate line"));
                }
                let l: usize = l
                    .parse()
                    .map_err(|_| syntax(lineno, *lcol, format!("bad truncation level `{l}`")))?;
                let n: usize = n
                    .parse()
                    .map_err(|_| syntax(lineno, *ncol, format!("bad nilpotency `{n}`")))?;
                truncate = Some((lineno, l, n));
            }
            "relation" => {
                if rest.is_empty() {
                    return Err(syntax(lineno, 1, "relation line has no terms"));
                }
                relation_lines.push((lineno, rest.to_vec()));
            }
            other => {
                return Err(syntax(
                    lineno,
                    toks[0].0,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    if vertices.is_empty() {
        return Err(syntax(0, 0, "no vertices declared"));
    }
    let mut quiver = Quiver::new(vertices).map_err(|e| syntax(0, 0, e.to_string()))?;
    for (name, s, t) in arrows {
        quiver
            .add_arrow(&name, s, t)
            .map_err(|e| syntax(0, 0, e.to_string()))?;
    }
    let mut relations = Vec::new();
    for (line, toks) in relation_lines {
        relations.push(parse_relation(&quiver, line, &toks)?);
    }
    Ok(ParsedQuiv {
        quiver,
        field,
        truncate,
        relations,
    })
}

fn parse_relation(
    quiver: &Quiver,
    line: usize,
    toks: &[(usize, &str)],
) -> Result<RawRelation, QuivError> {
    let mut terms = Vec::new();
    let mut expect_term = true;
    let mut sign = 1i64;
    for &(col, token) in toks {
        if expect_term {
            let mut term = parse_term(quiver, line, col, token)?;
            term.num *= sign;
            terms.push(term);
            expect_term = false;
        } else {
            sign = match token {
                "+" => 1,
                "-" => -1,
                other => {
                    return Err(syntax(line, col, format!("expected + or -, got `{other}`")));
                }
            };
            expect_term = true;
        }
    }
    if expect_term {
        return Err(syntax(line, 1, "relation ends with a dangling sign"));
    }
    Ok(RawRelation { line, terms })
}

fn parse_term(
    quiver: &Quiver,
    line: usize,
    col: usize,
    token: &str,
) -> Result<RawTerm, QuivError> {
    let factors: Vec<&str> = token.split('*').collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(syntax(line, col, format!("empty factor in `{token}`")));
    }
    let (coef, names) = match parse_coefficient(factors[0]) {
        Some(c) => (c, &factors[1..]),
        None => ((1, 1), &factors[..]),
    };
    if names.is_empty() {
        return Err(QuivError::new(
            QuivErrorKind::InvalidRelation,
            line,
            col,
            format!("term `{token}` names no arrows"),
        ));
    }
    let mut word = Vec::with_capacity(names.len());
    for name in names {
        word.push(quiver.arrow_index(name).ok_or_else(|| {
            QuivError::new(
                QuivErrorKind::UnknownSymbol,
                line,
                col,
                format!("unknown arrow `{name}`"),
            )
        })?);
    }
    if word.len() < 2 {
        return Err(QuivError::new(
            QuivErrorKind::InvalidRelation,
            line,
            col,
            "a relation path needs length at least two",
        ));
    }
    // composability check; the path itself is rebuilt during instantiation
    quiver.path(&word).map_err(|e| {
        QuivError::new(QuivErrorKind::InvalidRelation, line, col, e.to_string())
    })?;
    Ok(RawTerm {
        num: coef.0,
        den: coef.1,
        word,
        col,
    })
}

/// Build a typed presentation from a parsed file.  The caller picks `F`,
/// normally from [`ParsedQuiv::field`] unless a flag overrides the file.
pub fn instantiate<F: Field>(parsed: &ParsedQuiv, field: &F) -> Result<Presentation<F>, QuivError> {
    let Some((trunc_line, level, nilpotency)) = parsed.truncate else {
        return Err(syntax(0, 0, "missing `truncate <L> nilpotent <N>` line"));
    };
    let quiver = parsed.quiver.clone();
    let mut relations = Vec::new();
    for raw in &parsed.relations {
        let mut terms: Vec<(F::Elem, Path)> = Vec::with_capacity(raw.terms.len());
        for term in &raw.terms {
            let coef = field.ratio(term.num, term.den).map_err(|e| {
                QuivError::new(
                    QuivErrorKind::InvalidRelation,
                    raw.line,
                    term.col,
                    format!("coefficient {}/{}: {e}", term.num, term.den),
                )
            })?;
            let path = quiver
                .path(&term.word)
                .map_err(|e: QuiverError| invalid(raw.line, term.col, e.to_string()))?;
            terms.push((coef, path));
        }
        relations.push(
            Relation::new(field, &quiver, terms)
                .map_err(|e| invalid(raw.line, 1, e.to_string()))?,
        );
    }
    Presentation::new(field.clone(), quiver, relations, level, nilpotency)
        .map_err(|e: AlgebraError| syntax(trunc_line, 1, e.to_string()))
}

fn invalid(line: usize, col: usize, message: String) -> QuivError {
    QuivError::new(QuivErrorKind::InvalidRelation, line, col, message)
}

/// Canonical `.quiv` text for a presentation; [`parse`] of the output
/// reproduces the presentation byte-stably.
pub fn emit<F: Field>(p: &Presentation<F>) -> String {
    let f = p.field();
    let q = p.quiver();
    let mut out = String::new();
    out.push_str(&format!("field {}\n", f.name()));
    let names: Vec<&str> = (0..q.vertex_count()).map(|v| q.vertex_name(v)).collect();
    out.push_str(&format!("vertex {}\n", names.join(" ")));
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        out.push_str(&format!(
            "arrow {} {} {}\n",
            arr.name,
            q.vertex_name(arr.source),
            q.vertex_name(arr.target)
        ));
    }
    out.push_str(&format!(
        "truncate {} nilpotent {}\n",
        p.level(),
        p.nilpotency()
    ));
    for rel in p.relations() {
        out.push_str(&format!("relation {}\n", rel.display(f, q)));
    }
    out
}
