//! Line-oriented text formats.
//!
//! Theories:
//!
//! ```text
//! # comment
//! symbols a b c
//! axiom a b -> {c} | {a c}
//! axiom -> false
//! ```
//!
//! Inductive constructions (`elements` line, then one line per step) and
//! order files (`le x y` lines) share the same lexical rules: `#` starts a
//! comment, tokens are separated by whitespace, and `{ } | , #` never occur
//! inside a token.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::inductive::{ConstructionStep, InductiveConstruction, StratOrder};
use crate::logic::{Sequent, Theory, Universe, DEFAULT_MAX_UNIVERSE};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Arrow,
    FatArrow,
    Open,
    Close,
    Bar,
    Colon,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Splits one line into tokens with 1-based columns. `:` and `=>` are only
/// produced when `colon` is set (inductive files).
fn lex(line_no: usize, line: &str, colon: bool) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '{' => Some(Tok::Open),
            '}' => Some(Tok::Close),
            '|' => Some(Tok::Bar),
            ':' if colon => Some(Tok::Colon),
            ',' => return Err(syntax(line_no, col, "`,` is not allowed here")),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((col, Tok::Arrow));
            i += 2;
            continue;
        }
        if colon && c == '=' && chars.get(i + 1) == Some(&'>') {
            out.push((col, Tok::FatArrow));
            i += 2;
            continue;
        }
        let start = i;
        while i < chars.len() {
            let d = chars[i];
            let boundary = d.is_whitespace()
                || matches!(d, '{' | '}' | '|' | '#' | ',')
                || (colon && d == ':')
                || (d == '-' && chars.get(i + 1) == Some(&'>'))
                || (colon && d == '=' && chars.get(i + 1) == Some(&'>'));
            if boundary {
                break;
            }
            i += 1;
        }
        out.push((col, Tok::Word(chars[start..i].iter().collect())));
    }
    Ok(out)
}

/// A parsed theory together with where each axiom came from.
#[derive(Clone, Debug)]
pub struct TheoryDocument {
    pub source: String,
    pub theory: Theory,
    /// 1-based source line of each axiom.
    pub axiom_lines: Vec<usize>,
}

impl TheoryDocument {
    pub fn parse(source: &str) -> Result<Self> {
        Self::parse_with_max(source, DEFAULT_MAX_UNIVERSE)
    }

    pub fn parse_with_max(source: &str, max_universe: usize) -> Result<Self> {
        let mut universe: Option<Universe> = None;
        let mut axioms = Vec::new();
        let mut axiom_lines = Vec::new();
        for (idx, line) in source.lines().enumerate() {
            let ln = idx + 1;
            let toks = lex(ln, line, false)?;
            let Some((col, first)) = toks.first() else {
                continue;
            };
            match first {
                Tok::Word(w) if w == "symbols" => {
                    if universe.is_some() {
                        return Err(syntax(ln, *col, "second `symbols` line"));
                    }
                    let mut names = Vec::new();
                    for (c, t) in &toks[1..] {
                        match t {
                            Tok::Word(w) if w == "false" => {
                                return Err(syntax(ln, *c, "`false` is reserved"))
                            }
                            Tok::Word(w) => names.push(w.clone()),
                            _ => return Err(syntax(ln, *c, "expected a symbol name")),
                        }
                    }
                    universe = Some(Universe::with_max(names, max_universe)?);
                }
                Tok::Word(w) if w == "axiom" => {
                    let u = universe
                        .as_ref()
                        .ok_or_else(|| syntax(ln, *col, "`axiom` before `symbols`"))?;
                    axioms.push(parse_axiom(ln, line, u, &toks[1..])?);
                    axiom_lines.push(ln);
                }
                _ => return Err(syntax(ln, *col, "expected `symbols` or `axiom`")),
            }
        }
        let universe = universe.ok_or_else(|| syntax(1, 1, "missing `symbols` line"))?;
        Ok(TheoryDocument {
            source: source.to_string(),
            theory: Theory::new(universe, axioms)?,
            axiom_lines,
        })
    }
}

fn parse_axiom(ln: usize, line: &str, u: &Universe, toks: &[(usize, Tok)]) -> Result<Sequent> {
    let end_col = line.chars().count() + 1;
    let mut i = 0;
    let mut premise = Vec::new();
    while let Some((c, t)) = toks.get(i) {
        match t {
            Tok::Arrow => break,
            Tok::Word(w) if w != "false" => premise.push(w.as_str()),
            _ => return Err(syntax(ln, *c, "expected a symbol or `->`")),
        }
        i += 1;
    }
    if i == toks.len() {
        return Err(syntax(ln, end_col, "missing `->`"));
    }
    i += 1;
    let premise = u.set_of(premise)?;
    match toks.get(i) {
        None => return Err(syntax(ln, end_col, "expected `false` or `{`")),
        Some((_, Tok::Word(w))) if w == "false" => {
            if let Some((c, _)) = toks.get(i + 1) {
                return Err(syntax(ln, *c, "unexpected token after `false`"));
            }
            return Ok(Sequent::refutation(premise));
        }
        _ => {}
    }
    let mut disjuncts = Vec::new();
    loop {
        match toks.get(i) {
            Some((_, Tok::Open)) => i += 1,
            Some((c, _)) => return Err(syntax(ln, *c, "expected `{`")),
            None => return Err(syntax(ln, end_col, "expected `{`")),
        }
        let mut names = Vec::new();
        loop {
            match toks.get(i) {
                Some((_, Tok::Close)) => {
                    i += 1;
                    break;
                }
                Some((_, Tok::Word(w))) if w != "false" => {
                    names.push(w.as_str());
                    i += 1;
                }
                Some((c, _)) => return Err(syntax(ln, *c, "expected a symbol or `}`")),
                None => return Err(syntax(ln, end_col, "unclosed `{`")),
            }
        }
        disjuncts.push(u.set_of(names)?);
        match toks.get(i) {
            None => break,
            Some((_, Tok::Bar)) => i += 1,
            Some((c, _)) => return Err(syntax(ln, *c, "expected `|` or end of line")),
        }
    }
    Sequent::new(premise, disjuncts)
}

pub fn parse_theory(text: &str) -> Result<Theory> {
    Ok(TheoryDocument::parse(text)?.theory)
}

pub fn parse_theory_with_max(text: &str, max_universe: usize) -> Result<Theory> {
    Ok(TheoryDocument::parse_with_max(text, max_universe)?.theory)
}

fn names_of(u: &Universe, mask: u64) -> String {
    crate::bits::indices(mask)
        .map(|i| u.name(i))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text of a theory: normalized axioms in stored order, symbols
/// in declaration order. Parsing it back gives an equal theory.
pub fn serialize_theory(theory: &Theory) -> String {
    let u = theory.universe();
    let mut out = String::from("symbols");
    for name in u.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for ax in theory.axioms() {
        let ax = ax.normalize();
        out.push_str("axiom");
        let p = names_of(u, ax.premise_bits());
        if !p.is_empty() {
            out.push(' ');
            out.push_str(&p);
        }
        out.push_str(" ->");
        if ax.is_bottom() {
            out.push_str(" false");
        } else {
            let groups: Vec<String> = ax
                .disjunct_bits()
                .iter()
                .map(|&q| format!("{{{}}}", names_of(u, q)))
                .collect();
            let _ = write!(out, " {}", groups.join(" | "));
        }
        out.push('\n');
    }
    out
}

/// Parses an inductive construction:
///
/// ```text
/// elements x y z
/// step s1: => x
/// step s2: x => y
/// ```
///
/// `steps` is accepted as a synonym of `step`.
pub fn parse_inductive(text: &str) -> Result<InductiveConstruction> {
    let mut elements: Option<Vec<String>> = None;
    let mut steps = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let ln = idx + 1;
        let toks = lex(ln, line, true)?;
        let Some((col, first)) = toks.first() else {
            continue;
        };
        let word = |t: &(usize, Tok)| match &t.1 {
            Tok::Word(w) => Ok(w.clone()),
            _ => Err(syntax(ln, t.0, "expected a name")),
        };
        match first {
            Tok::Word(w) if w == "elements" => {
                if elements.is_some() {
                    return Err(syntax(ln, *col, "second `elements` line"));
                }
                elements = Some(toks[1..].iter().map(word).collect::<Result<_>>()?);
            }
            Tok::Word(w) if w == "step" || w == "steps" => {
                let xs = elements
                    .as_ref()
                    .ok_or_else(|| syntax(ln, *col, "`step` before `elements`"))?;
                let lookup = |t: &(usize, Tok)| -> Result<usize> {
                    let w = word(t)?;
                    xs.iter()
                        .position(|x| *x == w)
                        .ok_or(Error::UnknownSymbol(w))
                };
                let name = toks
                    .get(1)
                    .ok_or_else(|| syntax(ln, line.len() + 1, "missing step name"))
                    .and_then(word)?;
                match toks.get(2) {
                    Some((_, Tok::Colon)) => {}
                    Some((c, _)) => return Err(syntax(ln, *c, "expected `:`")),
                    None => return Err(syntax(ln, line.len() + 1, "expected `:`")),
                }
                let arrow = toks[3..]
                    .iter()
                    .position(|t| t.1 == Tok::FatArrow)
                    .map(|p| p + 3)
                    .ok_or_else(|| syntax(ln, line.len() + 1, "missing `=>`"))?;
                let prereqs = toks[3..arrow].iter().map(lookup).collect::<Result<_>>()?;
                let rest = &toks[arrow + 1..];
                if rest.len() != 1 {
                    let c = rest.get(1).map_or(line.len() + 1, |t| t.0);
                    return Err(syntax(ln, c, "expected exactly one result"));
                }
                steps.push(ConstructionStep {
                    name,
                    prereqs,
                    result: lookup(&rest[0])?,
                });
            }
            _ => return Err(syntax(ln, *col, "expected `elements` or `step`")),
        }
    }
    let elements = elements.ok_or_else(|| syntax(1, 1, "missing `elements` line"))?;
    InductiveConstruction::new(elements, steps)
}

pub fn serialize_inductive(ic: &InductiveConstruction) -> String {
    let mut out = String::from("elements");
    for e in ic.elements() {
        out.push(' ');
        out.push_str(e);
    }
    out.push('\n');
    for s in ic.steps() {
        let _ = write!(out, "step {}:", s.name);
        for &p in &s.prereqs {
            let _ = write!(out, " {}", ic.elements()[p]);
        }
        let _ = writeln!(out, " => {}", ic.elements()[s.result]);
    }
    out
}

/// Parses `le x y` lines into name pairs.
pub fn parse_order_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let ln = idx + 1;
        let toks = lex(ln, line, false)?;
        if toks.is_empty() {
            continue;
        }
        let words: Vec<&str> = toks
            .iter()
            .map(|(c, t)| match t {
                Tok::Word(w) => Ok(w.as_str()),
                _ => Err(syntax(ln, *c, "expected a name")),
            })
            .collect::<Result<_>>()?;
        match words.as_slice() {
            ["le", x, y] => pairs.push((x.to_string(), y.to_string())),
            _ => return Err(syntax(ln, toks[0].0, "expected `le x y`")),
        }
    }
    Ok(pairs)
}

/// Reads an order file against the elements of `ic`; the relation is
/// closed reflexively and transitively, then checked for antisymmetry.
pub fn parse_order(text: &str, ic: &InductiveConstruction) -> Result<StratOrder> {
    let pairs = crate::inductive::resolve_pairs(ic, &parse_order_pairs(text)?)?;
    StratOrder::from_pairs(ic.len(), &pairs)
}
