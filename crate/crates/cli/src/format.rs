//! Plain-text automaton files.
//!
//! ```text
//! # comment
//! type: nbw
//! alphabet: a b
//! states: 2
//! initial: 0
//! accepting: 1
//! 0 a -> 0 1
//! 1 b -> 0
//! ```
//!
//! ABW files use `type: abw` and a positive boolean formula on the right of
//! each arrow, e.g. `0 a -> (1 & 2) | 0`. Repeated `(state, letter)` lines
//! are merged by union or disjunction.

use std::fmt::Write as _;

use omega_antichain::{Abw, InvalidAutomaton, Letter, Nbw, PosFormula, StateId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Nbw(Nbw),
    Abw(Abw),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: missing `{0}:` section")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] InvalidAutomaton),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Nbw,
    Abw,
}

const SECTIONS: [&str; 5] = ["type", "alphabet", "states", "initial", "accepting"];

/// Header values, filled in section order.
struct Header {
    kind: Kind,
    alphabet: Vec<String>,
    states: usize,
    initial: StateId,
    accepting: Vec<StateId>,
}

pub fn parse(text: &str) -> Result<Automaton, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut values: Vec<(usize, &str)> = Vec::with_capacity(SECTIONS.len());
    for name in SECTIONS {
        let (no, line) = lines.next().ok_or(ParseError::Missing(name))?;
        let rest = line
            .strip_prefix(name)
            .and_then(|r| r.trim_start().strip_prefix(':'))
            .ok_or_else(|| syntax(no, format!("expected `{}:`", name)))?;
        values.push((no, rest.trim()));
    }
    let header = parse_header(&values)?;

    match header.kind {
        Kind::Nbw => {
            let mut transitions = Vec::new();
            for (no, line) in lines {
                let (from, letter, rhs) = split_transition(no, line, &header)?;
                for tok in rhs.split_whitespace() {
                    transitions.push((from, letter, state_id(no, tok, header.states)?));
                }
            }
            let nbw = Nbw::new(
                header.alphabet,
                header.states,
                header.initial,
                header.accepting,
                transitions,
            )?;
            Ok(Automaton::Nbw(nbw))
        }
        Kind::Abw => {
            let mut transitions = Vec::new();
            for (no, line) in lines {
                let (from, letter, rhs) = split_transition(no, line, &header)?;
                let formula = FormulaParser::parse(no, rhs, header.states)?;
                transitions.push((from, letter, formula));
            }
            let abw = Abw::new(
                header.alphabet,
                header.states,
                header.initial,
                header.accepting,
                transitions,
            )?;
            Ok(Automaton::Abw(abw))
        }
    }
}

fn parse_header(values: &[(usize, &str)]) -> Result<Header, ParseError> {
    let (no, kind) = values[0];
    let kind = match kind {
        "nbw" => Kind::Nbw,
        "abw" => Kind::Abw,
        other => return Err(syntax(no, format!("unknown automaton type `{}`", other))),
    };
    let (no, alphabet) = values[1];
    let alphabet: Vec<String> = alphabet.split_whitespace().map(str::to_string).collect();
    if alphabet.is_empty() {
        return Err(syntax(no, "empty alphabet"));
    }
    let (no, states) = values[2];
    let states: usize = states
        .parse()
        .map_err(|_| syntax(no, format!("bad state count `{}`", states)))?;
    let (no, initial) = values[3];
    let initial = state_id(no, initial, states)?;
    let (no, accepting) = values[4];
    let accepting = accepting
        .split_whitespace()
        .map(|t| state_id(no, t, states))
        .collect::<Result<_, _>>()?;
    Ok(Header {
        kind,
        alphabet,
        states,
        initial,
        accepting,
    })
}

fn state_id(line: usize, tok: &str, states: usize) -> Result<StateId, ParseError> {
    match tok.parse::<usize>() {
        Ok(i) if i < states => Ok(StateId(i)),
        Ok(i) => Err(syntax(line, format!("state {} out of range 0..{}", i, states))),
        Err(_) => Err(syntax(line, format!("bad state id `{}`", tok))),
    }
}

fn split_transition<'a>(
    no: usize,
    line: &'a str,
    header: &Header,
) -> Result<(StateId, Letter, &'a str), ParseError> {
    let (lhs, rhs) = line
        .split_once("->")
        .ok_or_else(|| syntax(no, "expected `S L -> ...`"))?;
    let mut toks = lhs.split_whitespace();
    let (Some(s), Some(l), None) = (toks.next(), toks.next(), toks.next()) else {
        return Err(syntax(no, "expected a state and a letter before `->`"));
    };
    let from = state_id(no, s, header.states)?;
    let letter = header
        .alphabet
        .iter()
        .position(|a| a == l)
        .map(Letter)
        .ok_or_else(|| syntax(no, format!("unknown letter `{}`", l)))?;
    Ok((from, letter, rhs.trim()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    State(StateId),
    True,
    False,
    And,
    Or,
    Open,
    Close,
}

fn lex(line: usize, text: &str, states: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        let single = match c {
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if c.is_whitespace() || single.is_some() {
            tokens.extend(single);
            rest = &rest[c.len_utf8()..];
            continue;
        }
        let end = rest
            .find(|d: char| d.is_whitespace() || "&|()".contains(d))
            .unwrap_or(rest.len());
        tokens.push(match &rest[..end] {
            "true" => Token::True,
            "false" => Token::False,
            word => Token::State(state_id(line, word, states)?),
        });
        rest = &rest[end..];
    }
    Ok(tokens)
}

/// Recursive descent over `formula := term ('|' term)*`,
/// `term := factor ('&' factor)*`.
struct FormulaParser {
    line: usize,
    tokens: Vec<Token>,
    pos: usize,
}

impl FormulaParser {
    fn parse(line: usize, text: &str, states: usize) -> Result<PosFormula, ParseError> {
        let mut p = FormulaParser {
            line,
            tokens: lex(line, text, states)?,
            pos: 0,
        };
        let f = p.formula()?;
        match p.peek() {
            None => Ok(f),
            Some(t) => Err(syntax(line, format!("unexpected {:?} in formula", t))),
        }
    }

    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn formula(&mut self) -> Result<PosFormula, ParseError> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(Token::Or) {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(join(parts, PosFormula::Or))
    }

    fn term(&mut self) -> Result<PosFormula, ParseError> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Some(Token::And) {
            self.pos += 1;
            parts.push(self.factor()?);
        }
        Ok(join(parts, PosFormula::And))
    }

    fn factor(&mut self) -> Result<PosFormula, ParseError> {
        let tok = self.peek();
        self.pos += 1;
        match tok {
            Some(Token::State(s)) => Ok(PosFormula::State(s)),
            Some(Token::True) => Ok(PosFormula::True),
            Some(Token::False) => Ok(PosFormula::False),
            Some(Token::Open) => {
                let f = self.formula()?;
                if self.peek() != Some(Token::Close) {
                    return Err(syntax(self.line, "missing `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(t) => Err(syntax(self.line, format!("unexpected {:?} in formula", t))),
            None => Err(syntax(self.line, "formula ends early")),
        }
    }
}

fn join(mut parts: Vec<PosFormula>, op: fn(Vec<PosFormula>) -> PosFormula) -> PosFormula {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        op(parts)
    }
}

fn write_header(
    out: &mut String,
    kind: &str,
    alphabet: &[String],
    states: usize,
    initial: StateId,
    accepting: impl Iterator<Item = usize>,
) {
    writeln!(out, "type: {}", kind).unwrap();
    writeln!(out, "alphabet: {}", alphabet.join(" ")).unwrap();
    writeln!(out, "states: {}", states).unwrap();
    writeln!(out, "initial: {}", initial).unwrap();
    let acc: Vec<String> = accepting.map(|s| s.to_string()).collect();
    writeln!(out, "accepting: {}", acc.join(" ").trim_end()).unwrap();
}

pub fn serialize(automaton: &Automaton) -> String {
    let mut out = String::new();
    match automaton {
        Automaton::Nbw(a) => {
            write_header(&mut out, "nbw", a.alphabet(), a.state_count(), a.initial(), a.accepting().ones());
            for s in a.states() {
                for l in a.letters() {
                    let succ = a.successors(s, l);
                    if !succ.is_empty() {
                        let targets: Vec<String> = succ.iter().map(|t| t.to_string()).collect();
                        writeln!(out, "{} {} -> {}", s, a.alphabet()[l.index()], targets.join(" ")).unwrap();
                    }
                }
            }
        }
        Automaton::Abw(a) => {
            write_header(&mut out, "abw", a.alphabet(), a.state_count(), a.initial(), a.accepting().ones());
            for s in a.states() {
                for l in a.letters() {
                    let f = a.transition(s, l);
                    if *f != PosFormula::False {
                        writeln!(out, "{} {} -> {}", s, a.alphabet()[l.index()], f).unwrap();
                    }
                }
            }
        }
    }
    out
}
