//! Quivers with admissible relations, their DSL, and normal forms in
//! A = KQ/I via length-lexicographic rewriting.
//!
//! Paths compose left to right: for arrows `a: x -> y` and `b: y -> z` the
//! path `a*b` runs from `x` to `z`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::linalg::Prime;

pub const DEFAULT_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("`{0}` is not a path: consecutive arrows do not compose")]
    NotAPath(String),
    #[error("relation {index} mixes paths that are not parallel")]
    NonParallelRelation { index: usize },
    #[error("relation {index} contains a path of length {len} (admissible relations need length >= 2)")]
    RelationTooShort { index: usize, len: usize },
    #[error("ideal is not admissible within path length cap {cap}")]
    NotAdmissibleWithinCap { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(PresentationError::DuplicateLabel(v.clone()));
            }
        }
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut out = Vec::with_capacity(arrows.len());
        let mut arrow_seen = HashSet::new();
        for (label, s, t) in arrows {
            if !arrow_seen.insert(label.clone()) || seen.contains(&label) {
                return Err(PresentationError::DuplicateLabel(label));
            }
            let source = *index.get(s.as_str()).ok_or(PresentationError::UnknownVertex(s.clone()))?;
            let target = *index.get(t.as_str()).ok_or(PresentationError::UnknownVertex(t.clone()))?;
            out.push(Arrow { label, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn end(&self, path: &Path) -> usize {
        path.arrows.last().map_or(path.start, |&a| self.arrows[a].target)
    }

    /// Builds a path from arrow indices, checking that they compose.
    pub fn path(&self, arrows: Vec<usize>) -> Option<Path> {
        let start = self.arrows[*arrows.first()?].source;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return None;
            }
        }
        Some(Path { start, arrows })
    }

    pub fn display_path(&self, path: &Path) -> String {
        if path.arrows.is_empty() {
            format!("e{}", self.vertices[path.start])
        } else {
            path.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

/// A path in the quiver; the trivial path at `start` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

// length first, then lexicographic in arrow declaration order
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite F_p-linear combination of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Path, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_path(path: Path) -> Self {
        let mut e = Element::zero();
        e.terms.insert(path, 1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, u32)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn coefficient(&self, path: &Path) -> u32 {
        self.terms.get(path).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, p: Prime, path: Path, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(path) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = p.add(*o.get(), c);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, p: Prime, other: &Element, c: u32) {
        for (path, &d) in &other.terms {
            self.add_term(p, path.clone(), p.mul(c, d));
        }
    }

    pub fn scale(&self, p: Prime, c: u32) -> Element {
        let mut out = Element::zero();
        out.add_scaled(p, self, c);
        out
    }

    pub fn leading(&self) -> Option<(&Path, u32)> {
        self.terms.iter().next_back().map(|(p, &c)| (p, c))
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    fn pop_last(&mut self) -> Option<(Path, u32)> {
        self.terms.pop_last()
    }

    /// Multiplies every term by `prefix` on the left and `suffix` on the right.
    /// The caller guarantees the concatenations are paths.
    fn wrap(&self, prefix: &[usize], suffix: &[usize], start: Option<usize>) -> Element {
        let mut out = Element::zero();
        for (path, &c) in &self.terms {
            let mut arrows = Vec::with_capacity(prefix.len() + path.len() + suffix.len());
            arrows.extend_from_slice(prefix);
            arrows.extend_from_slice(&path.arrows);
            arrows.extend_from_slice(suffix);
            let s = if prefix.is_empty() { path.start } else { start.unwrap_or(path.start) };
            out.terms.insert(Path { start: s, arrows }, c);
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Rule {
    lead: Vec<usize>,
    start: usize,
    /// `lead ≡ tail` modulo the ideal; every tail term is smaller than `lead`.
    tail: Element,
}

/// `A = KQ/I` with a completed rewriting system and its monomial basis.
#[derive(Clone, Debug)]
pub struct Presentation {
    prime: Prime,
    quiver: Quiver,
    relations: Vec<Element>,
    rules: Vec<Rule>,
    leads: HashMap<Vec<usize>, usize>,
    max_lead: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    cap: usize,
}

impl Presentation {
    pub fn new(prime: Prime, quiver: Quiver, relations: Vec<Element>, cap: usize) -> Result<Self, PresentationError> {
        for (index, rel) in relations.iter().enumerate() {
            let mut ends = None;
            for (path, _) in rel.terms() {
                if path.len() < 2 {
                    return Err(PresentationError::RelationTooShort { index, len: path.len() });
                }
                let e = (path.start, quiver.end(path));
                if *ends.get_or_insert(e) != e {
                    return Err(PresentationError::NonParallelRelation { index });
                }
            }
        }
        let mut pres = Presentation {
            prime,
            quiver,
            relations: relations.clone(),
            rules: Vec::new(),
            leads: HashMap::new(),
            max_lead: 0,
            basis: Vec::new(),
            basis_index: HashMap::new(),
            cap,
        };
        pres.complete(relations)?;
        pres.enumerate_basis()?;
        Ok(pres)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Irreducible paths in length-lexicographic order.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_position(&self, path: &Path) -> Option<usize> {
        self.basis_index.get(path).copied()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of rules in the completed rewriting system.
    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// Smallest `m` with `J(A)^m = 0`.
    pub fn loewy_length(&self) -> usize {
        1 + self.basis.iter().map(Path::len).max().unwrap_or(0)
    }

    /// Basis paths starting at `v`, in basis order.
    pub fn paths_from(&self, v: usize) -> impl Iterator<Item = &Path> {
        self.basis.iter().filter(move |p| p.start == v)
    }

    fn find_lead(&self, arrows: &[usize]) -> Option<(usize, usize)> {
        if self.rules.is_empty() {
            return None;
        }
        for pos in 0..arrows.len() {
            for l in 1..=self.max_lead.min(arrows.len() - pos) {
                if let Some(&idx) = self.leads.get(&arrows[pos..pos + l]) {
                    return Some((idx, pos));
                }
            }
        }
        None
    }

    fn reduce_with(&self, mut f: Element) -> Element {
        let p = self.prime;
        let mut out = Element::zero();
        while let Some((path, c)) = f.pop_last() {
            match self.find_lead(&path.arrows) {
                Some((ri, pos)) => {
                    let rule = &self.rules[ri];
                    let prefix = &path.arrows[..pos];
                    let suffix = &path.arrows[pos + rule.lead.len()..];
                    let repl = rule.tail.wrap(prefix, suffix, Some(path.start));
                    f.add_scaled(p, &repl, c);
                }
                None => {
                    out.terms.insert(path, c);
                }
            }
        }
        out
    }

    /// Fully reduced representative of `element` in `A`.
    pub fn normal_form(&self, element: &Element) -> Element {
        self.reduce_with(element.clone())
    }

    /// `x * y` in `A`.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let p = self.prime;
        let mut prod = Element::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                if self.quiver.end(a) != b.start {
                    continue;
                }
                let mut arrows = a.arrows.clone();
                arrows.extend_from_slice(&b.arrows);
                prod.add_term(p, Path { start: a.start, arrows }, p.mul(ca, cb));
            }
        }
        self.normal_form(&prod)
    }

    /// Normal form of `path * arrow` as coordinates in the basis.
    pub fn right_multiply_arrow(&self, path: &Path, arrow: usize) -> Element {
        if self.quiver.end(path) != self.quiver.arrows[arrow].source {
            return Element::zero();
        }
        let mut arrows = path.arrows.clone();
        arrows.push(arrow);
        self.normal_form(&Element::from_path(Path { start: path.start, arrows }))
    }

    fn add_rule(&mut self, g: Element) -> Vec<Element> {
        let p = self.prime;
        let (lead_path, lc) = g.leading().map(|(a, c)| (a.clone(), c)).unwrap();
        let inv = p.inv(lc);
        let mut tail = Element::zero();
        for (path, c) in g.terms() {
            if *path != lead_path {
                tail.add_term(p, path.clone(), p.neg(p.mul(c, inv)));
            }
        }
        let new = Rule { lead: lead_path.arrows.clone(), start: lead_path.start, tail };
        let mut pending = Vec::new();
        // rules whose lead contains the new lead are superseded
        let mut kept = Vec::new();
        for r in std::mem::take(&mut self.rules) {
            if contains_subword(&r.lead, &new.lead) {
                let mut e = r.tail.scale(p, p.neg(1));
                e.add_term(p, Path { start: r.start, arrows: r.lead.clone() }, 1);
                pending.push(e);
            } else {
                kept.push(r);
            }
        }
        self.rules = kept;
        self.rules.push(new);
        self.refresh_leads();
        let last = self.rules.len() - 1;
        for i in 0..self.rules.len() {
            pending.extend(self.overlaps(i, last));
            if i != last {
                pending.extend(self.overlaps(last, i));
            }
        }
        pending
    }

    fn refresh_leads(&mut self) {
        self.leads = self.rules.iter().enumerate().map(|(i, r)| (r.lead.clone(), i)).collect();
        self.max_lead = self.rules.iter().map(|r| r.lead.len()).max().unwrap_or(0);
    }

    /// S-elements for overlaps where a proper suffix of `lead_i` is a proper
    /// prefix of `lead_j`.
    fn overlaps(&self, i: usize, j: usize) -> Vec<Element> {
        let p = self.prime;
        let (u, v) = (&self.rules[i], &self.rules[j]);
        let mut out = Vec::new();
        for k in 1..u.lead.len().min(v.lead.len()) {
            if u.lead[u.lead.len() - k..] != v.lead[..k] {
                continue;
            }
            let v_rest = &v.lead[k..];
            let u_head = &u.lead[..u.lead.len() - k];
            let mut s = u.tail.wrap(&[], v_rest, None);
            let rhs = v.tail.wrap(u_head, &[], Some(u.start));
            s.add_scaled(p, &rhs, p.neg(1));
            out.push(s);
        }
        out
    }

    fn complete(&mut self, relations: Vec<Element>) -> Result<(), PresentationError> {
        let mut queue: VecDeque<Element> = relations.into();
        while let Some(f) = queue.pop_front() {
            let g = self.reduce_with(f);
            if g.is_zero() {
                continue;
            }
            if g.max_len() > self.cap {
                return Err(PresentationError::NotAdmissibleWithinCap { cap: self.cap });
            }
            queue.extend(self.add_rule(g));
        }
        // interreduce tails so the system is canonical
        for i in 0..self.rules.len() {
            let tail = self.rules[i].tail.clone();
            self.rules[i].tail = self.reduce_with(tail);
        }
        Ok(())
    }

    fn enumerate_basis(&mut self) -> Result<(), PresentationError> {
        let mut frontier: Vec<Path> = (0..self.quiver.num_vertices()).map(Path::trivial).collect();
        let mut all = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for path in &frontier {
                let end = self.quiver.end(path);
                for (ai, arrow) in self.quiver.arrows.iter().enumerate() {
                    if arrow.source != end {
                        continue;
                    }
                    let mut arrows = path.arrows.clone();
                    arrows.push(ai);
                    let reducible = (1..=self.max_lead.min(arrows.len()))
                        .any(|l| self.leads.contains_key(&arrows[arrows.len() - l..]));
                    if reducible {
                        continue;
                    }
                    if arrows.len() >= self.cap {
                        return Err(PresentationError::NotAdmissibleWithinCap { cap: self.cap });
                    }
                    next.push(Path { start: path.start, arrows });
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        self.basis_index = all.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        self.basis = all;
        Ok(())
    }

    /// Parses an element written as in relation lines, e.g. `a*b - 2*c*d`.
    pub fn parse_element(&self, text: &str) -> Result<Element, PresentationError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let e = parser.element(&self.quiver, self.prime)?;
        if let Some(t) = parser.peek() {
            return Err(t.error(format!("unexpected `{}`", t.text)));
        }
        Ok(e)
    }

    pub fn display_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (path, c) in e.terms.iter().rev() {
            let s = self.quiver.display_path(path);
            parts.push(if *c == 1 { s } else { format!("{c}*{s}") });
        }
        parts.join(" + ")
    }
}

fn contains_subword(word: &[usize], sub: &[usize]) -> bool {
    sub.len() <= word.len() && word.windows(sub.len()).any(|w| w == sub)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quiver")?;
        writeln!(f, "vertices: {}", self.quiver.vertices.join(" "))?;
        for a in &self.quiver.arrows {
            writeln!(f, "arrow {}: {} -> {}", a.label, self.quiver.vertices[a.source], self.quiver.vertices[a.target])?;
        }
        if !self.relations.is_empty() {
            writeln!(f, "relations")?;
            for r in &self.relations {
                writeln!(f, "rel: {}", self.display_element(r))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word,
    Colon,
    Arrow,
    Plus,
    Minus,
    Star,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    text: String,
    line: usize,
    col: usize,
}

impl Token {
    fn error(&self, msg: String) -> PresentationError {
        PresentationError::Syntax { line: self.line, col: self.col, msg }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

fn tokenize(text: &str) -> Result<Vec<Token>, PresentationError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let mk = |kind, text: &str| Token { kind, text: text.to_string(), line: li + 1, col };
            if c.is_whitespace() {
                i += 1;
            } else if is_word_char(c) {
                let s = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                let w: String = chars[s..i].iter().collect();
                out.push(mk(Tok::Word, &w));
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push(mk(Tok::Arrow, "->"));
                i += 2;
            } else {
                let kind = match c {
                    ':' => Tok::Colon,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    _ => {
                        return Err(PresentationError::Syntax {
                            line: li + 1,
                            col,
                            msg: format!("unexpected character `{c}`"),
                        })
                    }
                };
                out.push(mk(kind, &c.to_string()));
                i += 1;
            }
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 5] = ["quiver", "vertices", "arrow", "relations", "rel"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eof_error(&self, what: &str) -> PresentationError {
        let (line, col) = self.tokens.last().map_or((1, 1), |t| (t.line, t.col + t.text.len()));
        PresentationError::Syntax { line, col, msg: format!("unexpected end of input, expected {what}") }
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<Token, PresentationError> {
        match self.next() {
            Some(t) if t.kind == kind => Ok(t),
            Some(t) => Err(t.error(format!("expected {what}, found `{}`", t.text))),
            None => Err(self.eof_error(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Token, PresentationError> {
        match self.next() {
            Some(t) if t.kind == Tok::Word && t.text == kw => Ok(t),
            Some(t) => Err(t.error(format!("expected `{kw}`, found `{}`", t.text))),
            None => Err(self.eof_error(&format!("`{kw}`"))),
        }
    }

    fn at_keyword(&self) -> bool {
        matches!(self.peek(), Some(t) if t.kind == Tok::Word && KEYWORDS.contains(&t.text.as_str()))
    }

    fn at_keyword_named(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == Tok::Word && t.text == kw)
    }

    fn element(&mut self, quiver: &Quiver, p: Prime) -> Result<Element, PresentationError> {
        let mut e = Element::zero();
        let mut sign;
        let mut first = true;
        loop {
            match self.peek() {
                Some(t) if t.kind == Tok::Minus => {
                    self.pos += 1;
                    sign = p.neg(1);
                }
                Some(t) if t.kind == Tok::Plus && !first => {
                    self.pos += 1;
                    sign = 1;
                }
                _ if first => sign = 1,
                _ => break,
            }
            let (path, c) = self.term(quiver, p)?;
            e.add_term(p, path, p.mul(sign, c));
            first = false;
            match self.peek() {
                Some(t) if matches!(t.kind, Tok::Plus | Tok::Minus) => continue,
                _ => break,
            }
        }
        Ok(e)
    }

    fn term(&mut self, quiver: &Quiver, p: Prime) -> Result<(Path, u32), PresentationError> {
        let first = self.expect(Tok::Word, "a path")?;
        let mut coeff = 1u32;
        let mut labels = Vec::new();
        let is_number = first.text.chars().all(|c| c.is_ascii_digit());
        if is_number && quiver.arrow_index(&first.text).is_none() {
            let n: u64 = first.text.parse().map_err(|_| first.error("bad integer".into()))?;
            coeff = (n % p.get() as u64) as u32;
            self.expect(Tok::Star, "`*` after coefficient")?;
            labels.push(self.expect(Tok::Word, "an arrow label")?);
        } else {
            labels.push(first.clone());
        }
        while matches!(self.peek(), Some(t) if t.kind == Tok::Star) {
            self.pos += 1;
            labels.push(self.expect(Tok::Word, "an arrow label")?);
        }
        let mut arrows = Vec::new();
        for t in &labels {
            if let Some(v) = t.text.strip_prefix('e').and_then(|v| quiver.vertex_index(v)) {
                if labels.len() == 1 && quiver.arrow_index(&t.text).is_none() {
                    return Ok((Path::trivial(v), coeff));
                }
            }
            let a = quiver.arrow_index(&t.text).ok_or_else(|| PresentationError::UnknownArrow(t.text.clone()))?;
            arrows.push(a);
        }
        let text = labels.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join("*");
        let path = quiver.path(arrows).ok_or(PresentationError::NotAPath(text))?;
        Ok((path, coeff))
    }
}

/// Parses the quiver DSL:
///
/// ```text
/// quiver
/// vertices: 1 2
/// arrow alpha: 1 -> 1
/// arrow beta: 1 -> 2
/// relations
/// rel: alpha*beta
/// rel: alpha*alpha*alpha
/// ```
pub fn parse_presentation(text: &str, prime: Prime, cap: usize) -> Result<Presentation, PresentationError> {
    let tokens = tokenize(text)?;
    let mut ps = Parser { tokens, pos: 0 };
    ps.keyword("quiver")?;
    ps.keyword("vertices")?;
    ps.expect(Tok::Colon, "`:`")?;
    let mut vertices = Vec::new();
    while matches!(ps.peek(), Some(t) if t.kind == Tok::Word) && !ps.at_keyword() {
        vertices.push(ps.next().unwrap().text);
    }
    if vertices.is_empty() {
        return Err(match ps.peek() {
            Some(t) => t.error("expected at least one vertex".into()),
            None => ps.eof_error("a vertex label"),
        });
    }
    let mut arrows = Vec::new();
    while ps.at_keyword_named("arrow") {
        ps.pos += 1;
        let label = ps.expect(Tok::Word, "an arrow label")?.text;
        ps.expect(Tok::Colon, "`:`")?;
        let s = ps.expect(Tok::Word, "a source vertex")?.text;
        ps.expect(Tok::Arrow, "`->`")?;
        let t = ps.expect(Tok::Word, "a target vertex")?.text;
        arrows.push((label, s, t));
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    if ps.at_keyword_named("relations") {
        ps.pos += 1;
        while ps.at_keyword_named("rel") {
            ps.pos += 1;
            ps.expect(Tok::Colon, "`:`")?;
            let e = ps.element(&quiver, prime)?;
            if !e.is_zero() {
                relations.push(e);
            }
        }
    }
    if let Some(t) = ps.peek() {
        return Err(t.error(format!("unexpected `{}`", t.text)));
    }
    Presentation::new(prime, quiver, relations, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX22: &str = "quiver\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\n";
    const LOOP: &str = "quiver\nvertices: 1 2\narrow alpha: 1 -> 1\narrow beta: 1 -> 2\nrelations\nrel: alpha*beta\nrel: alpha*alpha*alpha\n";

    fn parse(s: &str) -> Result<Presentation, PresentationError> {
        parse_presentation(s, Prime::DEFAULT, DEFAULT_CAP)
    }

    /// Enumerates all paths of the quiver up to `max_len` (brute-force oracle).
    fn all_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == q.end(p) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { start: p.start, arrows });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn example_tree_quiver_dimension() {
        let pres = parse(EX22).unwrap();
        // oracle: all paths, no relations
        assert_eq!(all_paths(pres.quiver(), 10).len(), 9);
        assert_eq!(pres.dim(), 9);
        assert_eq!(pres.loewy_length(), 3);
    }

    #[test]
    fn loop_example_basis() {
        let pres = parse(LOOP).unwrap();
        let q = pres.quiver();
        // oracle: paths avoiding the subwords alpha*beta and alpha^3
        let a = q.arrow_index("alpha").unwrap();
        let b = q.arrow_index("beta").unwrap();
        let irreducible: Vec<Path> = all_paths(q, 6)
            .into_iter()
            .filter(|p| !contains_subword(&p.arrows, &[a, b]) && !contains_subword(&p.arrows, &[a, a, a]))
            .collect();
        assert_eq!(irreducible.len(), 5);
        let names: Vec<String> = pres.basis().iter().map(|p| q.display_path(p)).collect();
        assert_eq!(names, vec!["e1", "e2", "alpha", "beta", "alpha*alpha"]);
        assert_eq!(pres.loewy_length(), 3);
    }

    #[test]
    fn normal_forms_in_loop_example() {
        let pres = parse(LOOP).unwrap();
        let ab = pres.parse_element("alpha*beta").unwrap();
        assert!(pres.normal_form(&ab).is_zero());
        let a = pres.parse_element("alpha").unwrap();
        let a2 = pres.parse_element("alpha*alpha").unwrap();
        assert!(pres.multiply(&a, &a2).is_zero());
        assert_eq!(pres.normal_form(&a2), a2);
        let nf = pres.normal_form(&a2);
        assert_eq!(pres.normal_form(&nf), nf);
    }

    #[test]
    fn rejects_short_relation() {
        let s = "quiver\nvertices: 1 2\narrow a: 1 -> 2\nrelations\nrel: a\n";
        assert!(matches!(parse(s), Err(PresentationError::RelationTooShort { index: 0, len: 1 })));
    }

    #[test]
    fn rejects_non_parallel_relation() {
        let s = "quiver\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\nrelations\nrel: a*b - a*c\n";
        assert!(matches!(parse(s), Err(PresentationError::NonParallelRelation { index: 0 })));
    }

    #[test]
    fn rejects_non_admissible() {
        let s = "quiver\nvertices: 1\narrow x: 1 -> 1\n";
        assert!(matches!(
            parse_presentation(s, Prime::DEFAULT, 8),
            Err(PresentationError::NotAdmissibleWithinCap { cap: 8 })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("quiver\nvertices: 1 2\narrow a 1 -> 2\n").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 3, col: 9, .. }), "{err:?}");
        let err = parse("quiver\nvertices: 1\narrow a: 1 -> 1\nrelations\nrel: a*a $\n").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 5, col: 10, .. }), "{err:?}");
    }

    #[test]
    fn semisimple_quiver() {
        let pres = parse("quiver\nvertices: 1 2 3\n").unwrap();
        assert_eq!(pres.dim(), 3);
        assert_eq!(pres.loewy_length(), 1);
    }

    #[test]
    fn binomial_relations_complete() {
        // commutative square: a*b = c*d, plus a one-sided zero relation
        let s = "quiver\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelations\nrel: a*b - c*d\n";
        let pres = parse(s).unwrap();
        assert_eq!(pres.dim(), 4 + 4 + 1);
        let ab = pres.parse_element("a*b").unwrap();
        let cd = pres.parse_element("c*d").unwrap();
        assert_eq!(pres.normal_form(&ab), pres.normal_form(&cd));
    }

    #[test]
    fn overlap_resolution_commutative_local() {
        // K<x,y>/(x^2, y^2, xy - yx): dimension 4 with basis 1, x, y, xy
        let s = "quiver\nvertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nrelations\nrel: x*x\nrel: y*y\nrel: x*y - y*x\n";
        let pres = parse(s).unwrap();
        assert_eq!(pres.dim(), 4);
        assert_eq!(pres.loewy_length(), 3);
        let xyx = pres.parse_element("x*y*x").unwrap();
        assert!(pres.normal_form(&xyx).is_zero());
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let s = "quiver\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelations\nrel: 103*a*b + c*d\n";
        let pres = parse(s).unwrap();
        let cd = pres.parse_element("c*d").unwrap();
        let nf = pres.normal_form(&cd);
        // 2*a*b + c*d = 0 with c*d leading, so c*d -> -2*a*b
        let ab = pres.parse_element("a*b").unwrap();
        assert_eq!(nf, ab.scale(Prime::DEFAULT, 99));
    }
}
