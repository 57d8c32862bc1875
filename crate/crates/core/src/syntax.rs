//! Ground generalized logic programs: abstract syntax, the text format, and
//! deterministic rendering.
//!
//! The surface syntax is the usual ASP one. `;` separates head literals, `,`
//! body literals, `not` is default negation, `:-` is the rule arrow and an
//! empty head is a constraint. `%` starts a comment. A file may fix its own
//! alphabet with `#alphabet a, b, c.`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of atoms an alphabet may have before exhaustive
/// enumeration refuses to run.
pub const DEFAULT_MAX_ATOMS: usize = 14;
/// Default cap on materialized profile products.
pub const DEFAULT_MAX_TUPLES: u64 = 2_000_000;
/// Interpretations are `u32` bit vectors.
pub const HARD_MAX_ATOMS: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: &str) -> Result<Atom> {
        if is_atom_name(name) {
            Ok(Atom(name.to_string()))
        } else {
            Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("`{name}` is not a valid atom name"),
            })
        }
    }

    pub fn as_str(&self) -> &str {
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
    name != "not" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A rule `H+ ; not H- :- B+, not B-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: u32,
    pub head_pos: BTreeSet<Atom>,
    pub head_neg: BTreeSet<Atom>,
    pub body_pos: BTreeSet<Atom>,
    pub body_neg: BTreeSet<Atom>,
}

impl Rule {
    pub fn new(
        head_pos: impl IntoIterator<Item = Atom>,
        head_neg: impl IntoIterator<Item = Atom>,
        body_pos: impl IntoIterator<Item = Atom>,
        body_neg: impl IntoIterator<Item = Atom>,
    ) -> Rule {
        Rule {
            id: 0,
            head_pos: head_pos.into_iter().collect(),
            head_neg: head_neg.into_iter().collect(),
            body_pos: body_pos.into_iter().collect(),
            body_neg: body_neg.into_iter().collect(),
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head_pos
            .iter()
            .chain(&self.head_neg)
            .chain(&self.body_pos)
            .chain(&self.body_neg)
    }

    pub fn is_constraint(&self) -> bool {
        self.head_pos.is_empty() && self.head_neg.is_empty()
    }

    /// Same four atom sets, ignoring the id.
    pub fn same_parts(&self, other: &Rule) -> bool {
        self.head_pos == other.head_pos
            && self.head_neg == other.head_neg
            && self.body_pos == other.body_pos
            && self.body_neg == other.body_neg
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self
            .head_pos
            .iter()
            .map(|a| a.to_string())
            .chain(self.head_neg.iter().map(|a| format!("not {a}")))
            .collect();
        let body: Vec<String> = self
            .body_pos
            .iter()
            .map(|a| a.to_string())
            .chain(self.body_neg.iter().map(|a| format!("not {a}")))
            .collect();
        match (head.is_empty(), body.is_empty()) {
            (false, true) => write!(f, "{}.", head.join(" ; ")),
            (false, false) => write!(f, "{} :- {}.", head.join(" ; "), body.join(", ")),
            (true, false) => write!(f, ":- {}.", body.join(", ")),
            // the empty constraint, false unconditionally
            (true, true) => write!(f, ":- ."),
        }
    }
}

/// A finite set of rules, optionally with an alphabet fixed by the source.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    declared_alphabet: Option<BTreeSet<Atom>>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    /// Builds a program and numbers its rules 1..n in the given order.
    pub fn from_rules(rules: impl IntoIterator<Item = Rule>) -> Program {
        let mut p = Program::new();
        for r in rules {
            p.push(r);
        }
        p
    }

    /// Appends a rule, assigning it the next free id.
    pub fn push(&mut self, mut rule: Rule) {
        rule.id = self.rules.iter().map(|r| r.id).max().unwrap_or(0) + 1;
        if let Some(declared) = &mut self.declared_alphabet {
            declared.extend(rule.atoms().cloned());
        }
        self.rules.push(rule);
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn declared_alphabet(&self) -> Option<&BTreeSet<Atom>> {
        self.declared_alphabet.as_ref()
    }

    /// Fixes the program's alphabet; it is widened to cover every occurring atom.
    pub fn with_declared_alphabet(mut self, atoms: impl IntoIterator<Item = Atom>) -> Program {
        let mut set: BTreeSet<Atom> = atoms.into_iter().collect();
        set.extend(self.occurring_atoms());
        self.declared_alphabet = Some(set);
        self
    }

    pub fn occurring_atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().flat_map(|r| r.atoms().cloned()).collect()
    }

    /// Occurring atoms together with any declared ones.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut set = self.occurring_atoms();
        if let Some(d) = &self.declared_alphabet {
            set.extend(d.iter().cloned());
        }
        set
    }

    pub fn is_disjunctive(&self) -> bool {
        self.rules.iter().all(|r| r.head_neg.is_empty())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Union of rule sets; rules of `other` get fresh ids.
    pub fn union(&self, other: &Program) -> Program {
        let mut p = self.clone();
        for r in &other.rules {
            p.push(r.clone());
        }
        match (&self.declared_alphabet, &other.declared_alphabet) {
            (None, None) => p,
            _ => {
                let mut atoms = self.atoms();
                atoms.extend(other.atoms());
                p.with_declared_alphabet(atoms)
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(declared) = &self.declared_alphabet {
            if !declared.is_empty() {
                let names: Vec<&str> = declared.iter().map(Atom::as_str).collect();
                writeln!(f, "#alphabet {}.", names.join(", "))?;
            }
        }
        let mut rules: Vec<&Rule> = self.rules.iter().collect();
        rules.sort_by_key(|r| r.id);
        for r in rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn render_program(p: &Program) -> String {
    p.to_string()
}

/// Caps guarding the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: usize,
    pub max_tuples: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: DEFAULT_MAX_ATOMS,
            max_tuples: DEFAULT_MAX_TUPLES,
        }
    }
}

/// A finite, lexicographically ordered set of atoms. Atom `i` in this order
/// is bit `i` of every interpretation over the alphabet.
#[derive(Debug, Clone, Default)]
pub struct Alphabet {
    atoms: Vec<Atom>,
    limits: Limits,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Alphabet {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        Alphabet {
            atoms: set.into_iter().collect(),
            limits: Limits::default(),
        }
    }

    /// Convenience constructor from names; panics on an invalid name.
    pub fn from_names(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| Atom::new(n).expect("valid atom name")))
    }

    pub fn with_limits(mut self, limits: Limits) -> Alphabet {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index_of(atom).is_some()
    }

    /// Mask with every atom of the alphabet set.
    pub fn full_mask(&self) -> u32 {
        if self.atoms.is_empty() {
            0
        } else {
            u32::MAX >> (32 - self.atoms.len())
        }
    }

    /// Fails unless the alphabet is within the enumeration cap.
    pub fn check_capacity(&self) -> Result<()> {
        let max = self.limits.max_atoms.min(HARD_MAX_ATOMS);
        if self.atoms.len() > max {
            return Err(Error::Capacity {
                atoms: self.atoms.len(),
                max,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.atoms.iter().chain(&other.atoms).cloned()).with_limits(self.limits)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.atoms.iter().map(Atom::as_str).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// The default alphabet is the union of the operands' atoms (declared ones
/// included); an override must cover every atom that occurs in an operand.
pub fn effective_alphabet(operands: &[&Program], override_: Option<&Alphabet>) -> Result<Alphabet> {
    match override_ {
        Some(a) => {
            for p in operands {
                if let Some(missing) = p.occurring_atoms().iter().find(|x| !a.contains(x)) {
                    return Err(Error::AtomNotInAlphabet(missing.to_string()));
                }
            }
            Ok(a.clone())
        }
        None => Ok(Alphabet::new(operands.iter().flat_map(|p| p.atoms()))),
    }
}

/// An ordered sequence of programs. When `has_constraints` is set, index 0
/// holds the constraints program of basic merging.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefProfile {
    pub programs: Vec<Program>,
    pub has_constraints: bool,
}

impl BeliefProfile {
    pub fn new(programs: Vec<Program>) -> BeliefProfile {
        BeliefProfile {
            programs,
            has_constraints: false,
        }
    }

    pub fn with_constraints(constraints: Program, members: Vec<Program>) -> BeliefProfile {
        let mut programs = vec![constraints];
        programs.extend(members);
        BeliefProfile {
            programs,
            has_constraints: true,
        }
    }

    pub fn len(&self) -> usize {
        self.programs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.programs.is_empty()
    }

    pub fn alphabet(&self, override_: Option<&Alphabet>) -> Result<Alphabet> {
        let refs: Vec<&Program> = self.programs.iter().collect();
        effective_alphabet(&refs, override_)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Semi,
    Comma,
    Neck,
    Dot,
    Alphabet,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
                continue;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            ';' | ',' | '.' => {
                let tok = match c {
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                };
                tokens.push(Token { tok, line: tl, column: tc });
                i += 1;
                column += 1;
            }
            ':' => {
                if chars.get(i + 1) == Some(&'-') {
                    tokens.push(Token { tok: Tok::Neck, line: tl, column: tc });
                    i += 2;
                    column += 2;
                } else {
                    return parse_error(tl, tc, "expected `:-`");
                }
            }
            '#' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                if word != "alphabet" {
                    return parse_error(tl, tc, format!("unknown directive `#{word}`"));
                }
                tokens.push(Token { tok: Tok::Alphabet, line: tl, column: tc });
                column += j - i;
                i = j;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                column += i - start;
                if word == "not" {
                    tokens.push(Token { tok: Tok::Not, line: tl, column: tc });
                } else if is_atom_name(&word) {
                    tokens.push(Token { tok: Tok::Ident(word), line: tl, column: tc });
                } else {
                    return parse_error(tl, tc, format!("`{word}` is not a valid atom (atoms start with a lowercase letter)"));
                }
            }
            other => return parse_error(tl, tc, format!("unexpected character `{other}`")),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.eof)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let (l, c) = self.here();
        match self.bump() {
            Some(t) if t.tok == want => Ok(()),
            Some(t) => parse_error(l, c, format!("expected {what}, found {}", describe(&t.tok))),
            None => parse_error(l, c, format!("expected {what}, found end of input")),
        }
    }

    fn atom(&mut self) -> Result<(Atom, usize, usize)> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Token { tok: Tok::Ident(name), .. }) => Ok((Atom(name), l, c)),
            Some(t) => parse_error(l, c, format!("expected an atom, found {}", describe(&t.tok))),
            None => parse_error(l, c, "expected an atom, found end of input"),
        }
    }

    /// `lit := atom | "not" atom`; returns (atom, negated, line, column).
    fn literal(&mut self) -> Result<(Atom, bool, usize, usize)> {
        if self.peek() == Some(&Tok::Not) {
            self.bump();
            let (a, l, c) = self.atom()?;
            Ok((a, true, l, c))
        } else {
            let (a, l, c) = self.atom()?;
            Ok((a, false, l, c))
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Not => "`not`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Neck => "`:-`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Alphabet => "`#alphabet`".into(),
    }
}

/// Parses the program text format. Rule ids are 1..n in source order.
pub fn parse_program(text: &str) -> Result<Program> {
    let tokens = lex(text)?;
    let lines = text.split('\n').count();
    let last_col = text.rsplit('\n').next().map(|l| l.chars().count() + 1).unwrap_or(1);
    let mut parser = Parser {
        tokens,
        pos: 0,
        eof: (lines, last_col),
    };
    let mut rules = Vec::new();
    let mut declared: Option<BTreeSet<Atom>> = None;
    // first position of each atom, for error reporting against the directive
    let mut first_seen: Vec<(Atom, usize, usize)> = Vec::new();

    while parser.peek().is_some() {
        if parser.peek() == Some(&Tok::Alphabet) {
            parser.bump();
            let set = declared.get_or_insert_with(BTreeSet::new);
            loop {
                let (a, _, _) = parser.atom()?;
                set.insert(a);
                if parser.peek() == Some(&Tok::Comma) {
                    parser.bump();
                } else {
                    break;
                }
            }
            parser.expect(Tok::Dot, "`,` or `.`")?;
            continue;
        }

        let mut rule = Rule::new([], [], [], []);
        if parser.peek() != Some(&Tok::Neck) {
            loop {
                let (a, neg, l, c) = parser.literal()?;
                first_seen.push((a.clone(), l, c));
                if neg {
                    rule.head_neg.insert(a);
                } else {
                    rule.head_pos.insert(a);
                }
                if parser.peek() == Some(&Tok::Semi) {
                    parser.bump();
                } else {
                    break;
                }
            }
        }
        match parser.peek() {
            Some(Tok::Dot) => {
                parser.bump();
            }
            Some(Tok::Neck) => {
                parser.bump();
                // `:- .` is the empty constraint
                if parser.peek() != Some(&Tok::Dot) {
                    loop {
                        let (a, neg, l, c) = parser.literal()?;
                        first_seen.push((a.clone(), l, c));
                        if neg {
                            rule.body_neg.insert(a);
                        } else {
                            rule.body_pos.insert(a);
                        }
                        if parser.peek() == Some(&Tok::Comma) {
                            parser.bump();
                        } else {
                            break;
                        }
                    }
                }
                parser.expect(Tok::Dot, "`,` or `.`")?;
            }
            _ => {
                let (l, c) = parser.here();
                let found = parser.peek().map(describe).unwrap_or_else(|| "end of input".into());
                return parse_error(l, c, format!("expected `;`, `:-` or `.`, found {found}"));
            }
        }
        rules.push(rule);
    }

    if let Some(d) = &declared {
        if let Some((a, l, c)) = first_seen.iter().find(|(a, _, _)| !d.contains(a)) {
            return parse_error(*l, *c, format!("atom `{a}` is not in the declared alphabet"));
        }
    }
    let mut program = Program::from_rules(rules);
    program.declared_alphabet = declared;
    Ok(program)
}
