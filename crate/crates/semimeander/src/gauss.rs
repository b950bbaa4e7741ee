//! Textual Gauss-code format for annotated chord diagrams.
//!
//! Circular diagrams: `@[B] ( [W] LABEL )* [W]?`
//! Windows:           `| ( [W] LABEL )* @[B] ( [W] LABEL )* [W]? |`
//!
//! Tokens are whitespace separated. `B` is `*` (the symbol `m`), a
//! nonnegative rational, or a full linear form such as `m+2w1+1`. `W` is `w`
//! (auto-indexed left to right by slot), a nonnegative rational, an explicit
//! symbol `wN`, or a `+`-joined linear form. Labels are alphanumeric and name
//! each chord; a label appears exactly twice in a circular diagram and at
//! most twice in a window. A missing trailing weight denotes the fresh
//! positional symbol for that slot.

use thiserror::Error;

use crate::acd::{Acd, Diagram, PreAcd};
use crate::linear_form::LinearForm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("label `{0}` occurs more than twice")]
    LabelTooOften(String),
    #[error("label `{0}` occurs only once in a circular diagram")]
    UnpairedLabel(String),
    #[error("missing basepoint token `@[...]`")]
    MissingBasepoint,
    #[error("more than one basepoint token")]
    DuplicateBasepoint,
    #[error("invalid weight: {0}")]
    Weight(String),
    #[error("window delimiter `|` inside a circular diagram")]
    StrayDelimiter,
    #[error("unterminated window")]
    UnterminatedWindow,
    #[error("expected a label or weight, found `{0}`")]
    Structure(String),
}

#[derive(Debug, PartialEq, Eq)]
enum Token {
    Basepoint(String),
    Weight(String),
    Label(String),
    Bar,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for raw in text.split_whitespace() {
        if raw == "|" {
            out.push(Token::Bar);
        } else if let Some(rest) = raw.strip_prefix("@[") {
            let inner = rest.strip_suffix(']').ok_or_else(|| ParseError::MalformedToken(raw.into()))?;
            out.push(Token::Basepoint(inner.to_string()));
        } else if let Some(rest) = raw.strip_prefix('[') {
            let inner = rest.strip_suffix(']').ok_or_else(|| ParseError::MalformedToken(raw.into()))?;
            out.push(Token::Weight(inner.to_string()));
        } else if raw.chars().all(|c| c.is_ascii_alphanumeric()) {
            out.push(Token::Label(raw.to_string()));
        } else {
            return Err(ParseError::MalformedToken(raw.into()));
        }
    }
    Ok(out)
}

/// Parses one diagram. Input with window delimiters yields a [`PreAcd`],
/// circular input an [`Acd`].
pub fn parse_gauss(text: &str) -> Result<Diagram, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.first() == Some(&Token::Bar) {
        if tokens.len() < 2 || tokens.last() != Some(&Token::Bar) {
            return Err(ParseError::UnterminatedWindow);
        }
        if tokens[1..tokens.len() - 1].contains(&Token::Bar) {
            return Err(ParseError::StrayDelimiter);
        }
        parse_window(&tokens[1..tokens.len() - 1]).map(Diagram::Pre)
    } else {
        if tokens.contains(&Token::Bar) {
            return Err(ParseError::StrayDelimiter);
        }
        parse_circular(&tokens).map(Diagram::Acd)
    }
}

/// One (weight?, label) step of the alternation, or a trailing weight.
struct Scanner {
    next_slot: usize,
    labels: Vec<String>,
    segments: Vec<LinearForm>,
    pending_weight: Option<LinearForm>,
}

impl Scanner {
    fn new() -> Self {
        Scanner { next_slot: 1, labels: Vec::new(), segments: Vec::new(), pending_weight: None }
    }

    fn weight(&mut self, text: &str) -> Result<(), ParseError> {
        if self.pending_weight.is_some() {
            return Err(ParseError::Structure(format!("[{text}]")));
        }
        let form =
            LinearForm::parse_bracket(text, self.next_slot).map_err(ParseError::Weight)?;
        self.next_slot += 1;
        self.pending_weight = Some(form);
        Ok(())
    }

    fn label(&mut self, name: &str) {
        let seg = self
            .pending_weight
            .take()
            .unwrap_or_else(|| {
                let j = self.next_slot;
                self.next_slot += 1;
                LinearForm::symbol_w(j)
            });
        self.segments.push(seg);
        self.labels.push(name.to_string());
    }

    /// Closes a run, returning the trailing weight (fresh if absent).
    fn finish(&mut self) -> LinearForm {
        self.pending_weight.take().unwrap_or_else(|| {
            let j = self.next_slot;
            self.next_slot += 1;
            LinearForm::symbol_w(j)
        })
    }
}

fn pair_labels(labels: &[String], circular: bool) -> Result<Vec<Option<usize>>, ParseError> {
    let mut partner: Vec<Option<usize>> = vec![None; labels.len()];
    let mut seen: std::collections::HashMap<&str, usize> = Default::default();
    let mut done: std::collections::HashSet<&str> = Default::default();
    for (p, name) in labels.iter().enumerate() {
        if done.contains(name.as_str()) {
            return Err(ParseError::LabelTooOften(name.clone()));
        }
        if let Some(q) = seen.remove(name.as_str()) {
            partner[p] = Some(q);
            partner[q] = Some(p);
            done.insert(name);
        } else {
            seen.insert(name, p);
        }
    }
    if circular {
        if let Some(name) = seen.keys().min() {
            return Err(ParseError::UnpairedLabel(name.to_string()));
        }
    }
    Ok(partner)
}

fn parse_circular(tokens: &[Token]) -> Result<Acd, ParseError> {
    let mut iter = tokens.iter();
    let basepoint = match iter.next() {
        Some(Token::Basepoint(b)) => LinearForm::parse_bracket(b, 0).map_err(ParseError::Weight)?,
        _ => return Err(ParseError::MissingBasepoint),
    };
    let mut scan = Scanner::new();
    for tok in iter {
        match tok {
            Token::Weight(w) => scan.weight(w)?,
            Token::Label(name) => scan.label(name),
            Token::Basepoint(_) => return Err(ParseError::DuplicateBasepoint),
            Token::Bar => unreachable!(),
        }
    }
    let trailing = scan.finish();
    let partner = pair_labels(&scan.labels, true)?;
    let partner: Vec<usize> = partner.into_iter().map(|q| q.unwrap()).collect();
    let mut segments = scan.segments;
    segments.push(trailing);
    Ok(Acd::from_parts(partner, segments, basepoint))
}

fn parse_window(tokens: &[Token]) -> Result<PreAcd, ParseError> {
    let bp_at = tokens
        .iter()
        .position(|t| matches!(t, Token::Basepoint(_)))
        .ok_or(ParseError::MissingBasepoint)?;
    if tokens.iter().skip(bp_at + 1).any(|t| matches!(t, Token::Basepoint(_))) {
        return Err(ParseError::DuplicateBasepoint);
    }
    let basepoint = match &tokens[bp_at] {
        Token::Basepoint(b) => LinearForm::parse_bracket(b, 0).map_err(ParseError::Weight)?,
        _ => unreachable!(),
    };
    let mut scan = Scanner::new();
    // Left half: (weight label)*; a weight with no following label is
    // malformed on the left (the untracked outer flank is never written).
    for tok in &tokens[..bp_at] {
        match tok {
            Token::Weight(w) => scan.weight(w)?,
            Token::Label(name) => scan.label(name),
            _ => unreachable!(),
        }
    }
    if scan.pending_weight.is_some() {
        return Err(ParseError::Structure("weight before the basepoint with no label".into()));
    }
    let left = scan.labels.len();
    for tok in &tokens[bp_at + 1..] {
        match tok {
            Token::Weight(w) => scan.weight(w)?,
            Token::Label(name) => scan.label(name),
            _ => unreachable!(),
        }
    }
    let flank = scan.finish();
    let partner = pair_labels(&scan.labels, false)?;
    let mut segments = scan.segments;
    segments.push(flank);
    Ok(PreAcd::from_parts(left, partner, segments, basepoint))
}

fn label_for(idx: usize) -> String {
    if idx < 26 {
        ((b'a' + idx as u8) as char).to_string()
    } else {
        format!("z{idx}")
    }
}

/// Assigns chord labels in first-occurrence order.
fn assign_labels<I: Iterator<Item = Option<usize>>>(pairing: I, total: usize) -> Vec<String> {
    let mut names: Vec<Option<String>> = vec![None; total];
    let mut next = 0usize;
    let pairing: Vec<Option<usize>> = pairing.collect();
    for p in 0..total {
        if names[p].is_some() {
            continue;
        }
        let name = label_for(next);
        next += 1;
        if let Some(q) = pairing[p] {
            names[q] = Some(name.clone());
        }
        names[p] = Some(name);
    }
    names.into_iter().map(Option::unwrap).collect()
}

pub fn serialize_acd(x: &Acd) -> String {
    let mut out = format!("@[{}]", x.basepoint().to_bracket(None));
    let total = x.positions();
    let labels = assign_labels((1..=total).map(|p| Some(x.partner(p) - 1)), total);
    if total == 0 {
        if !x.segment(1).is_pure_symbol_w(1) {
            out.push_str(&format!(" [{}]", x.segment(1).to_bracket(Some(1))));
        }
        return out;
    }
    for p in 1..=total {
        out.push_str(&format!(" [{}] {}", x.segment(p).to_bracket(Some(p)), labels[p - 1]));
    }
    out.push_str(&format!(" [{}]", x.segment(total + 1).to_bracket(Some(total + 1))));
    out
}

pub fn serialize_pre(x: &PreAcd) -> String {
    let total = x.symbol_count();
    let labels = assign_labels((0..total).map(|p| x.partner(p)), total);
    let mut out = String::from("|");
    let mut slot = 0usize;
    for p in 0..x.left_count() {
        out.push_str(&format!(" [{}] {}", x.segment(slot).to_bracket(Some(slot + 1)), labels[p]));
        slot += 1;
    }
    out.push_str(&format!(" @[{}]", x.basepoint().to_bracket(None)));
    for p in x.left_count()..total {
        out.push_str(&format!(" [{}] {}", x.segment(slot).to_bracket(Some(slot + 1)), labels[p]));
        slot += 1;
    }
    if total > 0 || !x.segment(slot).is_pure_symbol_w(slot + 1) {
        out.push_str(&format!(" [{}]", x.segment(slot).to_bracket(Some(slot + 1))));
    }
    out.push_str(" |");
    out
}

/// Deterministic textual form; `parse_gauss(serialize(x))` is structurally `x`.
pub fn serialize(x: &Diagram) -> String {
    match x {
        Diagram::Acd(a) => serialize_acd(a),
        Diagram::Pre(p) => serialize_pre(p),
    }
}
