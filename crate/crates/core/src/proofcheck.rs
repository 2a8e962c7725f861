//! Line-by-line checking of Hilbert-style derivations.
//!
//! Formulas are compared after [`Formula::lower`], so a line may use `&`,
//! `|`, `<->`, `exists` and `<>` wherever the schema is stated with their
//! primitive definitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::frontend::{parse_formula, parse_structure, print_formula, DocError, ParseError, ProofDoc};
use crate::kripke::{Structure, Valuation, WorldId};
use crate::oracle::{self, Status};
use crate::syntax::{Formula, Var};

/// Largest number of distinct propositional atoms TAUT will tabulate.
pub const TAUT_ATOM_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Taut,
    K,
    T,
    Five,
    All1,
    All2,
    Id,
    Eq,
    Mix,
    Bang,
    Rg,
    Mp,
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::Taut,
        Rule::K,
        Rule::T,
        Rule::Five,
        Rule::All1,
        Rule::All2,
        Rule::Id,
        Rule::Eq,
        Rule::Mix,
        Rule::Bang,
        Rule::Rg,
        Rule::Mp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Taut => "TAUT",
            Rule::K => "K",
            Rule::T => "T",
            Rule::Five => "5",
            Rule::All1 => "ALL1",
            Rule::All2 => "ALL2",
            Rule::Id => "ID",
            Rule::Eq => "EQ",
            Rule::Mix => "MIX",
            Rule::Bang => "BANG",
            Rule::Rg => "RG",
            Rule::Mp => "MP",
        }
    }

    pub fn is_axiom(self) -> bool {
        !matches!(self, Rule::Rg | Rule::Mp)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A structure in which a BANG operand is supposed to fail. Without a
/// distinguished world any falsifying point will do.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub structure: Structure,
    pub valuation: Valuation,
    pub world: Option<WorldId>,
}

#[derive(Clone, Debug, Default)]
pub struct Aux {
    pub from: Option<Var>,
    pub to: Option<Var>,
    pub occurrences: Option<BTreeSet<usize>>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub struct Line {
    pub id: u32,
    pub formula: Formula,
    pub rule: Rule,
    pub refs: Vec<u32>,
    pub aux: Aux,
}

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("derivation has no lines")]
    Empty,
    #[error("line ids must be positive and strictly ascending (line {0})")]
    BadId(u32),
    #[error("line {id} refers to {target}, which is not an earlier line")]
    BadRef { id: u32, target: u32 },
    #[error("line {id}: {source}")]
    Formula { id: u32, source: ParseError },
    #[error("line {id}: {msg}")]
    Line { id: u32, msg: String },
    #[error("line {id}: certificate: {source}")]
    Certificate { id: u32, source: DocError },
    #[error("malformed proof document: {0}")]
    Json(#[from] serde_json::Error),
}

/// Structurally valid derivation: ids positive and ascending, references
/// only to earlier lines.
#[derive(Clone, Debug)]
pub struct Derivation {
    name: Option<String>,
    lines: Vec<Line>,
}

impl Derivation {
    pub fn new(name: Option<String>, lines: Vec<Line>) -> Result<Self, DerivationError> {
        if lines.is_empty() {
            return Err(DerivationError::Empty);
        }
        let mut prev = 0;
        for l in &lines {
            if l.id <= prev {
                return Err(DerivationError::BadId(l.id));
            }
            prev = l.id;
        }
        let ids: BTreeSet<u32> = lines.iter().map(|l| l.id).collect();
        for l in &lines {
            for &r in &l.refs {
                if r >= l.id || !ids.contains(&r) {
                    return Err(DerivationError::BadRef { id: l.id, target: r });
                }
            }
        }
        Ok(Derivation { name, lines })
    }

    pub fn from_doc(doc: &ProofDoc) -> Result<Self, DerivationError> {
        let mut lines = Vec::with_capacity(doc.lines.len());
        for l in &doc.lines {
            let id = l.id;
            let formula = parse_formula(&l.formula).map_err(|source| DerivationError::Formula { id, source })?;
            let rule = l.rule.parse().map_err(|msg| DerivationError::Line { id, msg })?;
            let mut aux = Aux::default();
            if let Some(a) = &l.aux {
                let var = |s: &Option<String>| -> Result<Option<Var>, DerivationError> {
                    match s {
                        None => Ok(None),
                        Some(s) => match parse_formula(&format!("{s} = {s}")) {
                            Ok(Formula::Eq(v, _)) => Ok(Some(v)),
                            _ => Err(DerivationError::Line { id, msg: format!("`{s}` is not a variable") }),
                        },
                    }
                };
                aux.from = var(&a.from)?;
                aux.to = var(&a.to)?;
                aux.occurrences = a.occurrences.as_ref().map(|o| o.iter().copied().collect());
                if let Some(doc) = &a.certificate {
                    let (structure, valuation, world) =
                        parse_structure(doc).map_err(|source| DerivationError::Certificate { id, source })?;
                    aux.certificate = Some(Certificate { structure, valuation, world });
                }
            }
            lines.push(Line { id, formula, rule, refs: l.refs.clone(), aux });
        }
        Derivation::new(doc.name.clone(), lines)
    }

    pub fn from_json(text: &str) -> Result<Self, DerivationError> {
        let doc: ProofDoc = serde_json::from_str(text)?;
        Derivation::from_doc(&doc)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn conclusion(&self) -> &Formula {
        &self.lines.last().expect("derivations are non-empty").formula
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineVerdict {
    pub id: u32,
    pub ok: bool,
    pub reason: String,
}

/// Check `a` against an axiom schema; the error is a human-readable reason.
pub fn match_axiom(a: &Formula, rule: Rule, aux: &Aux) -> Result<(), String> {
    let low = a.lower();
    match rule {
        Rule::Taut => tautology(&low),
        Rule::K => match &low {
            Formula::Impl(l, r) => match (&**l, &**r) {
                (Formula::Box(ab), Formula::Impl(ba, bb)) => match (&**ab, &**ba, &**bb) {
                    (Formula::Impl(a1, b1), Formula::Box(a2), Formula::Box(b2)) if a1 == a2 && b1 == b2 => {
                        Ok(())
                    }
                    _ => Err("not of the form [](A -> B) -> ([]A -> []B)".into()),
                },
                _ => Err("not of the form [](A -> B) -> ([]A -> []B)".into()),
            },
            _ => Err("not of the form [](A -> B) -> ([]A -> []B)".into()),
        },
        Rule::T => match &low {
            Formula::Impl(l, r) if matches!(&**l, Formula::Box(b) if b == r) => Ok(()),
            _ => Err("not of the form []A -> A".into()),
        },
        Rule::Five => {
            let shape = || "not of the form ~[]A -> []~[]A".to_string();
            let Formula::Impl(l, r) = &low else { return Err(shape()) };
            let (Formula::Not(nb), Formula::Box(rb)) = (&**l, &**r) else { return Err(shape()) };
            if matches!(&**nb, Formula::Box(_)) && **rb == **l {
                Ok(())
            } else {
                Err(shape())
            }
        }
        Rule::All1 => {
            let Formula::Impl(l, r) = &low else {
                return Err("not of the form forall x. A -> A(y/x)".into());
            };
            let Formula::Forall(x, body) = &**l else {
                return Err("not of the form forall x. A -> A(y/x)".into());
            };
            let (Some(from), Some(to)) = (&aux.from, &aux.to) else {
                return Err("ALL1 needs aux `from` and `to`".into());
            };
            if from != x {
                return Err(format!("aux `from` is {from} but the quantifier binds {x}"));
            }
            let expected = body.substitute(x, to).map_err(|e| e.to_string())?;
            if expected == **r {
                Ok(())
            } else {
                Err(format!("consequent should be {}", print_formula(&expected)))
            }
        }
        Rule::All2 => {
            let shape = || "not of the form forall x. (A -> B) -> (A -> forall x. B)".to_string();
            let Formula::Impl(l, r) = &low else { return Err(shape()) };
            let (Formula::Forall(x, lb), Formula::Impl(a2, rb)) = (&**l, &**r) else { return Err(shape()) };
            let (Formula::Impl(a1, b1), Formula::Forall(x2, b2)) = (&**lb, &**rb) else { return Err(shape()) };
            if x != x2 || a1 != a2 || b1 != b2 {
                return Err(shape());
            }
            if a1.forallbox_free_vars().contains(x) {
                return Err(format!("{x} is a free variable of the antecedent"));
            }
            Ok(())
        }
        Rule::Id => match &low {
            Formula::Eq(x, y) if x == y => Ok(()),
            _ => Err("not of the form x = x".into()),
        },
        Rule::Eq => match_eq(a, aux),
        Rule::Mix => match &low {
            Formula::Impl(l, r) => match (&**l, &**r) {
                (Formula::Box(a1), Formula::Forall(_, a2)) if a1 == a2 => Ok(()),
                _ => Err("not of the form []A -> forall x. A".into()),
            },
            _ => Err("not of the form []A -> forall x. A".into()),
        },
        Rule::Bang => {
            let Formula::Not(nb) = &low else { return Err("not of the form ~[]A".into()) };
            let Formula::Box(op) = &**nb else { return Err("not of the form ~[]A".into()) };
            if !op.box_free() {
                return Err("BANG applies only to box-free A".into());
            }
            if let Some(c) = &aux.certificate {
                let falsified = match c.world {
                    Some(w) => !c.structure.satisfies(&c.valuation, w, op).map_err(|e| e.to_string())?,
                    None => c.structure.falsifying_point(op).is_some(),
                };
                return if falsified {
                    Ok(())
                } else {
                    Err("certificate does not falsify the operand".into())
                };
            }
            match oracle::is_fol_thesis(op) {
                Ok(v) if v.status == Status::NonThesis => Ok(()),
                Ok(_) => Err("the operand is a first-order thesis".into()),
                Err(e) => Err(format!("no certificate, and the oracle cannot decide: {e}")),
            }
        }
        Rule::Rg | Rule::Mp => Err(format!("{rule} is a rule, not an axiom")),
    }
}

fn tautology(low: &Formula) -> Result<(), String> {
    let sk = low.skeleton();
    let n = sk.atoms.len();
    if n > TAUT_ATOM_LIMIT {
        return Err(format!("{n} propositional atoms exceed the limit of {TAUT_ATOM_LIMIT}"));
    }
    let mut row = vec![false; n];
    for bits in 0u32..(1 << n) {
        for (i, v) in row.iter_mut().enumerate() {
            *v = bits >> i & 1 == 1;
        }
        if !sk.prop.eval(&row) {
            return Err(format!("propositional skeleton `{}` is not a tautology", sk.prop));
        }
    }
    Ok(())
}

// x = y & A -> A', where A' replaces the selected occurrences of x in A.
fn match_eq(a: &Formula, aux: &Aux) -> Result<(), String> {
    let shape = || "not of the form x = y & A -> A(y//x)".to_string();
    // Prefer the formula as written, so occurrence indices refer to it;
    // fall back to the primitive reading of `&`.
    let (x, y, body, result) = match a {
        Formula::Impl(l, r) => match &**l {
            Formula::And(e, body) => match &**e {
                Formula::Eq(x, y) => (x, y, &**body, &**r),
                _ => return Err(shape()),
            },
            Formula::Not(inner) => match &**inner {
                Formula::Impl(e, nb) => match (&**e, &**nb) {
                    (Formula::Eq(x, y), Formula::Not(body)) => (x, y, &**body, &**r),
                    _ => return Err(shape()),
                },
                _ => return Err(shape()),
            },
            _ => return Err(shape()),
        },
        _ => return Err(shape()),
    };
    if !body.box_free() {
        return Err("EQ applies only to box-free A".into());
    }
    if aux.from.as_ref().is_some_and(|f| f != x) || aux.to.as_ref().is_some_and(|t| t != y) {
        return Err(format!("aux substitution does not match {x} = {y}"));
    }
    let expected = match &aux.occurrences {
        Some(occ) => body.substitute_occurrences(x, y, occ),
        None => body.substitute(x, y),
    }
    .map_err(|e| e.to_string())?;
    if expected.lower() == result.lower() {
        Ok(())
    } else {
        Err(format!("consequent should be {}", print_formula(&expected)))
    }
}

fn check_line(line: &Line, by_id: &HashMap<u32, &Line>) -> Result<(), String> {
    if line.rule.is_axiom() {
        if !line.refs.is_empty() {
            return Err(format!("axiom {} takes no references", line.rule));
        }
        return match_axiom(&line.formula, line.rule, &line.aux);
    }
    let cited: Vec<Formula> = line.refs.iter().map(|r| by_id[r].formula.lower()).collect();
    let low = line.formula.lower();
    match line.rule {
        Rule::Rg => {
            let [premise] = cited.as_slice() else {
                return Err("RG needs exactly one reference".into());
            };
            match &low {
                Formula::Box(b) if **b == *premise => Ok(()),
                _ => Err("formula is not [] applied to the cited line".into()),
            }
        }
        Rule::Mp => {
            let [p, q] = cited.as_slice() else {
                return Err("MP needs exactly two references".into());
            };
            let fits = |imp: &Formula, ante: &Formula| {
                matches!(imp, Formula::Impl(a, b) if **a == *ante && **b == low)
            };
            if fits(p, q) || fits(q, p) {
                Ok(())
            } else {
                Err("cited lines are not A -> B and A with B this line".into())
            }
        }
        _ => unreachable!("axioms handled above"),
    }
}

/// One verdict per line. A line citing a rejected line is rejected too.
pub fn check_proof(d: &Derivation) -> Vec<LineVerdict> {
    let by_id: HashMap<u32, &Line> = d.lines.iter().map(|l| (l.id, l)).collect();
    let mut ok_ids = BTreeSet::new();
    let mut out = Vec::with_capacity(d.lines.len());
    for line in &d.lines {
        let result = match line.refs.iter().find(|r| !ok_ids.contains(*r)) {
            Some(bad) => Err(format!("cites rejected line {bad}")),
            None => check_line(line, &by_id),
        };
        let (ok, reason) = match result {
            Ok(()) => (true, format!("{}", line.rule)),
            Err(why) => (false, why),
        };
        if ok {
            ok_ids.insert(line.id);
        }
        out.push(LineVerdict { id: line.id, ok, reason });
    }
    out
}

pub fn accepted(verdicts: &[LineVerdict]) -> bool {
    verdicts.iter().all(|v| v.ok)
}
