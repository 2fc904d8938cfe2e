//! The object language: atoms, literals, rules and programs, together with
//! the textual program format.
//!
//! ```text
//! program := (rule | comment)*        comment := "%" to end-of-line
//! rule    := head "." | head ":-" body "." | ":-" body "."
//! head    := literal                  body := ext ("," ext)*
//! ext     := "not" literal | literal
//! literal := "-"? atom                atom := [a-z][A-Za-z0-9_]*
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A set of literals in canonical (sorted) order.
pub type LiteralSet = BTreeSet<Literal>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A propositional atom. Compared by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(SyntaxError::InvalidAtom(name.to_owned()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    // `not` is the naf keyword and cannot be rendered back as an atom.
    name != "not" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An atom or its classical negation.
///
/// Ordering places `-a` immediately after `a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    atom: Atom,
    negative: bool,
}

impl Literal {
    pub fn positive(atom: Atom) -> Self {
        Literal {
            atom,
            negative: false,
        }
    }

    pub fn negative(atom: Atom) -> Self {
        Literal {
            atom,
            negative: true,
        }
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn complement(&self) -> Self {
        Literal {
            atom: self.atom.clone(),
            negative: !self.negative,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl std::str::FromStr for Literal {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.strip_prefix('-') {
            Some(rest) => Ok(Literal::negative(Atom::new(rest)?)),
            None => Ok(Literal::positive(Atom::new(s)?)),
        }
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list of literals such as `a, -b`. Surrounding
/// braces are accepted so that printed answer sets can be read back.
pub fn parse_literal_set(text: &str) -> Result<LiteralSet, SyntaxError> {
    let text = text.trim();
    let text = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(text);
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

/// True iff the set contains no complementary pair.
pub fn is_consistent_set(set: &LiteralSet) -> bool {
    set.iter()
        .all(|l| !l.is_negative() || !set.contains(&l.complement()))
}

/// Renders a literal set as `{a, -b, c}`.
pub fn format_literal_set(set: &LiteralSet) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// `head ← pbody, not nbody`; a `None` head is ⊥ (a constraint).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Option<Literal>,
    pub pbody: LiteralSet,
    pub nbody: LiteralSet,
}

impl Rule {
    pub fn new(
        head: Option<Literal>,
        pbody: impl IntoIterator<Item = Literal>,
        nbody: impl IntoIterator<Item = Literal>,
    ) -> Self {
        Rule {
            head,
            pbody: pbody.into_iter().collect(),
            nbody: nbody.into_iter().collect(),
        }
    }

    pub fn fact(head: Literal) -> Self {
        Rule::new(Some(head), [], [])
    }

    pub fn constraint(
        pbody: impl IntoIterator<Item = Literal>,
        nbody: impl IntoIterator<Item = Literal>,
    ) -> Self {
        Rule::new(None, pbody, nbody)
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_positive(&self) -> bool {
        self.nbody.is_empty()
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.pbody.is_empty() && self.nbody.is_empty()
    }

    /// `head(r) ∈ body⁺(r)`: the rule can never contribute anything new.
    pub fn is_tautology(&self) -> bool {
        self.head.as_ref().is_some_and(|h| self.pbody.contains(h))
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head
            .iter()
            .chain(self.pbody.iter())
            .chain(self.nbody.iter())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(head) = &self.head {
            write!(f, "{head}")?;
        }
        if self.pbody.is_empty() && self.nbody.is_empty() {
            return f.write_str(".");
        }
        if self.head.is_some() {
            f.write_str(" ")?;
        }
        f.write_str(":- ")?;
        let body = self
            .pbody
            .iter()
            .map(ToString::to_string)
            .chain(self.nbody.iter().map(|l| format!("not {l}")));
        let body: Vec<String> = body.collect();
        write!(f, "{}.", body.join(", "))
    }
}

/// A finite collection of rules. Order and duplicates only matter for
/// printing; semantic operations treat the program as a set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        Program {
            rules: rules.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Program::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn push(&mut self, rule: Rule) {
        self.rules.push(rule);
    }

    pub fn rule_set(&self) -> BTreeSet<&Rule> {
        self.rules.iter().collect()
    }

    /// Set equality of the rules, ignoring order and duplicates.
    pub fn same_rules(&self, other: &Program) -> bool {
        self.rule_set() == other.rule_set()
    }

    pub fn contains_rules_of(&self, other: &Program) -> bool {
        let mine = self.rule_set();
        other.rules.iter().all(|r| mine.contains(r))
    }

    /// The same rules with duplicates removed, keeping first occurrences.
    pub fn deduplicated(&self) -> Program {
        let mut seen = BTreeSet::new();
        Program::new(self.rules.iter().filter(|r| seen.insert(*r)).cloned())
    }

    /// `self ∪ other`, keeping the rules of `self` first and skipping rules
    /// already present.
    pub fn union(&self, other: &Program) -> Program {
        let mut seen = BTreeSet::new();
        Program::new(
            self.rules
                .iter()
                .chain(other.rules.iter())
                .filter(|r| seen.insert(*r))
                .cloned(),
        )
    }

    /// Every literal occurring in a head or body.
    pub fn literals(&self) -> LiteralSet {
        self.rules
            .iter()
            .flat_map(Rule::literals)
            .cloned()
            .collect()
    }

    /// Literals occurring weakly negated in some body.
    pub fn naf_literals(&self) -> LiteralSet {
        self.rules
            .iter()
            .flat_map(|r| r.nbody.iter())
            .cloned()
            .collect()
    }

    pub fn head_literals(&self) -> LiteralSet {
        self.rules.iter().filter_map(|r| r.head.clone()).collect()
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program::new(iter)
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::slice::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{rule}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Program {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_program(s)
    }
}

/// The atoms occurring anywhere in `p`, signs stripped.
pub fn atoms_of(p: &Program) -> BTreeSet<Atom> {
    p.iter()
        .flat_map(Rule::literals)
        .map(|l| l.atom().clone())
        .collect()
}

/// One rule per line, in program order.
pub fn render_program(p: &Program) -> String {
    p.to_string()
}

pub fn parse_program(text: &str) -> Result<Program, SyntaxError> {
    Parser::new(text).program()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_trivia();
        if self.src[self.pos..].starts_with(token) {
            for _ in token.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(format!("expected `{token}`, found `{c}`")),
                None => self.error(format!("expected `{token}`, found end of input")),
            }
        }
    }

    fn program(mut self) -> Result<Program, SyntaxError> {
        let mut rules = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek().is_none() {
                return Ok(Program::new(rules));
            }
            rules.push(self.rule()?);
        }
    }

    fn rule(&mut self) -> Result<Rule, SyntaxError> {
        if self.eat(":-") {
            let (pbody, nbody) = self.body()?;
            self.expect(".")?;
            return Ok(Rule::constraint(pbody, nbody));
        }
        let head = self.literal()?;
        if self.eat(".") {
            return Ok(Rule::fact(head));
        }
        self.expect(":-")?;
        let (pbody, nbody) = self.body()?;
        self.expect(".")?;
        Ok(Rule::new(Some(head), pbody, nbody))
    }

    fn body(&mut self) -> Result<(Vec<Literal>, Vec<Literal>), SyntaxError> {
        let mut pbody = Vec::new();
        let mut nbody = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek() == Some('.') {
                return self.error("expected a body literal, found `.`");
            }
            if self.naf_keyword() {
                nbody.push(self.literal()?);
            } else {
                pbody.push(self.literal()?);
            }
            if !self.eat(",") {
                return Ok((pbody, nbody));
            }
        }
    }

    /// Consumes `not` when it is followed by whitespace.
    fn naf_keyword(&mut self) -> bool {
        let rest = &self.src[self.pos..];
        let is_keyword = rest.starts_with("not")
            && rest[3..]
                .chars()
                .next()
                .is_some_and(|c| c.is_whitespace() || c == '%');
        if is_keyword {
            for _ in 0..3 {
                self.bump();
            }
        }
        is_keyword
    }

    fn literal(&mut self) -> Result<Literal, SyntaxError> {
        self.skip_trivia();
        let negative = self.peek() == Some('-');
        if negative {
            self.bump();
        }
        let (line, column, start) = (self.line, self.column, self.pos);
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {}
            Some(c) => return self.error(format!("expected an atom, found `{c}`")),
            None => return self.error("expected an atom, found end of input"),
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        let name = &self.src[start..self.pos];
        let atom = Atom::new(name).map_err(|_| SyntaxError::Parse {
            line,
            column,
            message: format!("`{name}` is reserved and cannot be used as an atom"),
        })?;
        Ok(if negative {
            Literal::negative(atom)
        } else {
            Literal::positive(atom)
        })
    }
}
