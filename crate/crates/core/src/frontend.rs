//! Text grammar for formulas and the JSON document formats for structures,
//! countermodels and derivations.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff     := impl ("<->" iff)?
//! impl    := or ("->" impl)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[]" unary | "<>" unary
//!          | ("forall" | "exists") var "." iff
//!          | primary
//! primary := Pred ("(" var ("," var)* ")")? | var "=" var | "(" iff ")"
//! ```
//!
//! A quantifier's body extends as far to the right as possible.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kripke::{Countermodel, KripkeError, Structure, Valuation, WorldId};
use crate::syntax::{Formula, Pred, PredSym, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("predicate {name} used with arity {first} and {second}")]
    Arity { name: String, first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    Not,
    Box,
    Dia,
    And,
    Or,
    Impl,
    Iff,
    Eq,
    LParen,
    RParen,
    Comma,
    Dot,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::Not => "`~`".into(),
        Tok::Box => "`[]`".into(),
        Tok::Dia => "`<>`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Impl => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::Eq => "`=`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &src[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Impl, 2)
        } else if rest.starts_with("<>") {
            (Tok::Dia, 2)
        } else if rest.starts_with("[]") {
            (Tok::Box, 2)
        } else {
            match c {
                b'~' => (Tok::Not, 1),
                b'&' => (Tok::And, 1),
                b'|' => (Tok::Or, 1),
                b'=' => (Tok::Eq, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                b'.' => (Tok::Dot, 1),
                c if c.is_ascii_alphabetic() => {
                    let len = rest
                        .bytes()
                        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                        .count();
                    let word = &rest[..len];
                    let tok = match word {
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, len)
                }
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
                }
            }
        };
        out.push((tok, i));
        i += len;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    arities: HashMap<String, usize>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(&t), describe(self.peek())))
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if name.as_bytes()[0].is_ascii_lowercase() => {
                self.bump();
                Ok(Var::new(name))
            }
            t => self.error(format!("expected a variable, found {}", describe(&t))),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Impl {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::dia(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let x = self.var()?;
                self.expect(Tok::Dot)?;
                let body = Box::new(self.iff()?);
                Ok(if universal { Formula::Forall(x, body) } else { Formula::Exists(x, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let a = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            Tok::Ident(name) if name.as_bytes()[0].is_ascii_uppercase() => {
                self.bump();
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    if *self.peek() != Tok::RParen {
                        args.push(self.var()?);
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            args.push(self.var()?);
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                match self.arities.get(&name) {
                    Some(&first) if first != args.len() => {
                        return Err(ParseError::Arity { name, first, second: args.len() })
                    }
                    _ => {
                        self.arities.insert(name.clone(), args.len());
                    }
                }
                Ok(Formula::Atom(Pred::new(name), args))
            }
            Tok::Ident(_) => {
                let x = self.var()?;
                self.expect(Tok::Eq)?;
                let y = self.var()?;
                Ok(Formula::Eq(x, y))
            }
            t => self.error(format!("expected a formula, found {}", describe(&t))),
        }
    }
}

/// Parse a formula. Predicate arities are inferred from use and must be
/// consistent within the text.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, arities: HashMap::new() };
    let a = p.iff()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(a)
}

/// Reject formulas that use one predicate name at two arities.
pub fn check_arities<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Result<(), ParseError> {
    let mut seen: HashMap<Pred, usize> = HashMap::new();
    for f in formulas {
        for PredSym { name, arity } in f.predicates() {
            match seen.get(&name) {
                Some(&first) if first != arity => {
                    return Err(ParseError::Arity { name: name.to_string(), first, second: arity })
                }
                _ => {
                    seen.insert(name, arity);
                }
            }
        }
    }
    Ok(())
}

// Binding strength used by the printer; larger binds tighter.
const IFF: u8 = 1;
const IMPL: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const EQ: u8 = 5;
const UNARY: u8 = 6;

/// Print with the fewest parentheses that reparse to the same tree.
pub fn print_formula(a: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, a, 0, true);
    out
}

fn prec(a: &Formula) -> u8 {
    match a {
        Formula::Iff(..) => IFF,
        Formula::Impl(..) => IMPL,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Eq(..) => EQ,
        _ => UNARY,
    }
}

// `rightmost` is false when more text follows in the same parenthesis
// level; a quantifier there would swallow it, so it gets parenthesized.
fn write_formula(out: &mut String, a: &Formula, ctx: u8, rightmost: bool) {
    let binder = matches!(a, Formula::Forall(..) | Formula::Exists(..));
    let parens = prec(a) < ctx || (binder && !rightmost);
    if parens {
        out.push('(');
    }
    let rightmost = rightmost || parens;
    match a {
        Formula::Atom(p, args) => {
            out.push_str(p.name());
            if !args.is_empty() {
                out.push('(');
                for (i, x) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(x.name());
                }
                out.push(')');
            }
        }
        Formula::Eq(x, y) => {
            let _ = write!(out, "{x} = {y}");
        }
        Formula::Not(b) => {
            out.push('~');
            write_formula(out, b, UNARY, rightmost);
        }
        Formula::Box(b) => {
            out.push_str("[]");
            write_formula(out, b, UNARY, rightmost);
        }
        Formula::Dia(b) => {
            out.push_str("<>");
            write_formula(out, b, UNARY, rightmost);
        }
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let kw = if matches!(a, Formula::Forall(..)) { "forall" } else { "exists" };
            let _ = write!(out, "{kw} {x}. ");
            write_formula(out, b, 0, true);
        }
        Formula::Iff(b, c) => binary(out, b, c, " <-> ", IMPL, IFF, rightmost),
        Formula::Impl(b, c) => binary(out, b, c, " -> ", OR, IMPL, rightmost),
        Formula::Or(b, c) => binary(out, b, c, " | ", OR, AND, rightmost),
        Formula::And(b, c) => binary(out, b, c, " & ", AND, EQ, rightmost),
    }
    if parens {
        out.push(')');
    }
}

fn binary(out: &mut String, l: &Formula, r: &Formula, op: &str, lctx: u8, rctx: u8, rightmost: bool) {
    write_formula(out, l, lctx, false);
    out.push_str(op);
    write_formula(out, r, rctx, rightmost);
}

// ---------------------------------------------------------------------------
// Structure documents

/// JSON form of a structure, optionally with a valuation and a
/// distinguished world (the latter makes it a countermodel document).
///
/// ```json
/// {
///   "worlds": ["w0", "w1"],
///   "domains": {"w0": ["a", "b"], "w1": ["a"]},
///   "interpretation": {"P/1": {"w0": [["a"]]}},
///   "valuation": {"w0": {"x": "b"}},
///   "world": "w0"
/// }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub worlds: Vec<String>,
    pub domains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub interpretation: BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("bad name `{0}`")]
    BadName(String),
    #[error("bad predicate key `{0}`; expected Name/arity")]
    BadPredicate(String),
    #[error("world `{0}` has no domain entry")]
    MissingDomain(String),
    #[error("document has no distinguished `world`")]
    MissingWorld,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
}

fn lower_name(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty()
        && b[0].is_ascii_lowercase()
        && b.iter().all(|c| c.is_ascii_alphanumeric() || *c == b'_')
}

fn upper_name(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty()
        && b[0].is_ascii_uppercase()
        && b.iter().all(|c| c.is_ascii_alphanumeric() || *c == b'_')
}

fn parse_pred_key(key: &str) -> Result<PredSym, DocError> {
    let bad = || DocError::BadPredicate(key.to_string());
    let (name, arity) = key.split_once('/').ok_or_else(bad)?;
    if !upper_name(name) {
        return Err(bad());
    }
    let arity: usize = arity.parse().map_err(|_| bad())?;
    Ok(PredSym::new(name, arity))
}

/// Validate a structure document. Returns the structure, the valuation (empty
/// when absent) and the distinguished world, if any.
pub fn parse_structure(
    doc: &StructureDoc,
) -> Result<(Structure, Valuation, Option<WorldId>), DocError> {
    let mut b = Structure::builder();
    for w in &doc.worlds {
        if !lower_name(w) {
            return Err(DocError::BadName(w.clone()));
        }
        let dom = doc.domains.get(w).ok_or_else(|| DocError::MissingDomain(w.clone()))?;
        if let Some(bad) = dom.iter().find(|e| !lower_name(e)) {
            return Err(DocError::BadName(bad.clone()));
        }
        b.add_world(w.clone(), dom.clone());
    }
    if let Some(extra) = doc.domains.keys().find(|k| !doc.worlds.contains(k)) {
        return Err(KripkeError::UnknownWorld(extra.clone()).into());
    }
    for (key, per_world) in &doc.interpretation {
        let sym = parse_pred_key(key)?;
        b.declare(sym.clone());
        for (w, tuples) in per_world {
            for t in tuples {
                b.add_fact(sym.clone(), w.clone(), t.clone());
            }
        }
    }
    let s = b.build()?;
    let mut v = Valuation::new();
    if let Some(val) = &doc.valuation {
        for (w, map) in val {
            let wid = s.world_by_name(w).ok_or_else(|| KripkeError::UnknownWorld(w.clone()))?;
            for (x, e) in map {
                if !lower_name(x) {
                    return Err(DocError::BadName(x.clone()));
                }
                let eid = s
                    .element_by_name(e)
                    .filter(|id| s.domain(wid).contains(id))
                    .ok_or_else(|| KripkeError::DomainError { world: w.clone(), element: e.clone() })?;
                v.set(wid, Var::new(x), eid);
            }
        }
    }
    let world = match &doc.world {
        Some(w) => Some(s.world_by_name(w).ok_or_else(|| KripkeError::UnknownWorld(w.clone()))?),
        None => None,
    };
    Ok((s, v, world))
}

pub fn parse_structure_json(text: &str) -> Result<(Structure, Valuation, Option<WorldId>), DocError> {
    let doc: StructureDoc = serde_json::from_str(text)?;
    parse_structure(&doc)
}

/// Export a structure (and optionally a valuation and distinguished world).
pub fn structure_doc(s: &Structure, v: Option<&Valuation>, world: Option<WorldId>) -> StructureDoc {
    let worlds: Vec<String> = s.worlds().map(|w| s.world_name(w).to_string()).collect();
    let domains = s
        .worlds()
        .map(|w| {
            let names = s.domain(w).iter().map(|e| s.element_name(*e).to_string()).collect();
            (s.world_name(w).to_string(), names)
        })
        .collect();
    let mut interpretation = BTreeMap::new();
    for pred in s.predicates() {
        let mut per_world = BTreeMap::new();
        for w in s.worlds() {
            let tuples: Vec<Vec<String>> = s
                .extension(pred, w)
                .iter()
                .map(|t| t.iter().map(|e| s.element_name(*e).to_string()).collect())
                .collect();
            if !tuples.is_empty() {
                per_world.insert(s.world_name(w).to_string(), tuples);
            }
        }
        interpretation.insert(pred.to_string(), per_world);
    }
    let valuation = v.map(|v| {
        let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (w, x, e) in v.entries() {
            out.entry(s.world_name(w).to_string())
                .or_default()
                .insert(x.to_string(), s.element_name(e).to_string());
        }
        out
    });
    StructureDoc {
        worlds,
        domains,
        interpretation,
        valuation,
        world: world.map(|w| s.world_name(w).to_string()),
    }
}

pub fn countermodel_doc(c: &Countermodel) -> StructureDoc {
    structure_doc(&c.structure, Some(&c.valuation), Some(c.world))
}

pub fn parse_countermodel(doc: &StructureDoc) -> Result<Countermodel, DocError> {
    let (structure, valuation, world) = parse_structure(doc)?;
    let world = world.ok_or(DocError::MissingWorld)?;
    Ok(Countermodel { structure, world, valuation })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Proof documents

/// JSON form of a derivation.
///
/// ```json
/// {"lines": [
///   {"id": 1, "formula": "x = x", "rule": "ID"},
///   {"id": 2, "formula": "[](x = x)", "rule": "RG", "refs": [1]}
/// ]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lines: Vec<LineDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub id: u32,
    pub formula: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refs: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxDoc>,
}

/// Side data for ALL1 (`from`, `to`), EQ (`from`, `to`, `occurrences`) and
/// BANG (`certificate`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub occurrences: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<StructureDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &str) -> Formula {
        Formula::atom("P", &[v])
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_formula("[](x = x)").unwrap(), Formula::boxed(Formula::eq("x", "x")));
        let a = Formula::and(p("x"), Formula::dia(Formula::and(p("x"), Formula::not(p("y")))));
        assert_eq!(parse_formula("P(x) & <>(P(x) & ~P(y))").unwrap(), a);
        assert_eq!(
            parse_formula("forall x. P(x) -> P(x)").unwrap(),
            Formula::forall("x", Formula::implies(p("x"), p("x")))
        );
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~P(x) & Q | R -> S <-> T").unwrap();
        let expect = Formula::iff(
            Formula::implies(
                Formula::or(
                    Formula::and(Formula::not(p("x")), Formula::atom("Q", &[])),
                    Formula::atom("R", &[]),
                ),
                Formula::atom("S", &[]),
            ),
            Formula::atom("T", &[]),
        );
        assert_eq!(f, expect);
        // -> is right associative, | left associative
        assert_eq!(
            parse_formula("A -> B -> C").unwrap(),
            Formula::implies(Formula::atom("A", &[]), Formula::implies(Formula::atom("B", &[]), Formula::atom("C", &[])))
        );
        assert_eq!(parse_formula("~x = y").unwrap(), Formula::not(Formula::eq("x", "y")));
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_formula(&Formula::boxed(Formula::eq("x", "x"))), "[](x = x)");
        let mix = Formula::implies(Formula::boxed(p("x")), Formula::forall("x", p("x")));
        assert_eq!(print_formula(&mix), "[]P(x) -> forall x. P(x)");
        let left = Formula::and(Formula::forall("x", p("x")), p("y"));
        assert_eq!(print_formula(&left), "(forall x. P(x)) & P(y)");
        let nested = Formula::or(Formula::and(p("x"), Formula::exists("y", p("y"))), p("z"));
        assert_eq!(print_formula(&nested), "P(x) & (exists y. P(y)) | P(z)");
        assert_eq!(parse_formula(&print_formula(&nested)).unwrap(), nested);
        let r = Formula::atom("R", &["x", "y"]);
        assert_eq!(print_formula(&r), "R(x, y)");
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_formula("P(x) & & Q(x)") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_formula("P(x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("forall X. P(X)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("P(x) $"), Err(ParseError::Syntax { pos: 5, .. })));
    }

    #[test]
    fn arity_conflicts_rejected() {
        assert!(matches!(
            parse_formula("P(x) & P(x, y)"),
            Err(ParseError::Arity { first: 1, second: 2, .. })
        ));
    }

    #[test]
    fn structure_documents() {
        let ok = r#"{"worlds":["w0"],"domains":{"w0":["a"]},"interpretation":{"P/1":{"w0":[["a"]]}}}"#;
        let (s, _, _) = parse_structure_json(ok).unwrap();
        assert_eq!(s.world_count(), 1);

        let bad = r#"{"worlds":["w0"],"domains":{"w0":["a"]},"interpretation":{"P/1":{"w0":[["b"]]}}}"#;
        assert!(matches!(
            parse_structure_json(bad),
            Err(DocError::Kripke(KripkeError::DomainError { .. }))
        ));

        let var = r#"{"worlds":["w0","w1"],"domains":{"w0":["a","b"],"w1":["a"]}}"#;
        let (s, _, _) = parse_structure_json(var).unwrap();
        assert_eq!(s.domain(WorldId(0)).len(), 2);
        assert_eq!(s.domain(WorldId(1)).len(), 1);

        let bad_val = r#"{"worlds":["w0","w1"],"domains":{"w0":["a","b"],"w1":["a"]},"valuation":{"w1":{"x":"b"}}}"#;
        assert!(matches!(
            parse_structure_json(bad_val),
            Err(DocError::Kripke(KripkeError::DomainError { .. }))
        ));
        let unknown = r#"{"worlds":["w0"],"domains":{"w0":["a"]},"interpretation":{"P/1":{"w9":[["a"]]}}}"#;
        assert!(matches!(
            parse_structure_json(unknown),
            Err(DocError::Kripke(KripkeError::UnknownWorld(_)))
        ));
        let arity = r#"{"worlds":["w0"],"domains":{"w0":["a"]},"interpretation":{"P/2":{"w0":[["a"]]}}}"#;
        assert!(matches!(
            parse_structure_json(arity),
            Err(DocError::Kripke(KripkeError::ArityError { .. }))
        ));
    }

    #[test]
    fn structure_export_roundtrip() {
        let text = r#"{"worlds":["w0","w1"],"domains":{"w0":["a","b"],"w1":["b"]},
            "interpretation":{"R/2":{"w0":[["a","b"],["b","b"]]},"Q/0":{"w1":[[]]}},
            "valuation":{"w0":{"x":"b"}},"world":"w1"}"#;
        let (s, v, w) = parse_structure_json(text).unwrap();
        let doc = structure_doc(&s, Some(&v), w);
        let (s2, v2, w2) = parse_structure(&doc).unwrap();
        assert_eq!(structure_doc(&s2, Some(&v2), w2), doc);
        assert_eq!(w2, Some(WorldId(1)));
    }
}
