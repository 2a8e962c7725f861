//! Decision procedure for the modal fragment whose predicates are all
//! monadic.
//!
//! An elementary disjunction `A | <>B | []C1 | ... | []Cn` is a thesis iff
//! `B` is satisfiable, or `A` or some `Ci` is a first-order thesis. A
//! formula is a thesis iff every elementary disjunction of its conjunctive
//! form is.

use std::fmt::Write as _;

use thiserror::Error;

use crate::frontend::print_formula;
use crate::kripke::{build_relative_universal, seed_point, Countermodel, Seed, Structure, Valuation, WorldId};
use crate::normalform::{to_conjunctive_form, ConjunctiveForm, ElementaryDisjunction};
use crate::oracle::{ClassicalVerdict, Oracle, OracleError, Status};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("outside the decidable fragment: {0}")]
    Fragment(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("neither []A nor ~[]A was decided a thesis for `{0}`")]
    Undetermined(String),
}

/// Which component of an elementary disjunction a verdict is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    A,
    B,
    C(usize),
}

#[derive(Clone, Debug)]
pub struct PartVerdict {
    pub part: Part,
    pub formula: Formula,
    pub verdict: ClassicalVerdict,
}

impl PartVerdict {
    /// Does this component alone make the disjunction a thesis?
    pub fn decisive(&self) -> bool {
        matches!(self.verdict.status, Status::Thesis | Status::Satisfiable)
    }
}

#[derive(Clone, Debug)]
pub struct DisjunctionTrace {
    pub disjunction: ElementaryDisjunction,
    pub parts: Vec<PartVerdict>,
}

impl DisjunctionTrace {
    pub fn thesis(&self) -> bool {
        self.parts.iter().any(PartVerdict::decisive)
    }

    /// Thesis only because `B` is satisfiable.
    pub fn only_by_possibility(&self) -> bool {
        self.thesis() && self.parts.iter().filter(|p| p.decisive()).all(|p| p.part == Part::B)
    }
}

/// Outcome of [`decide`], with the oracle calls that produced it.
#[derive(Clone, Debug)]
pub struct Decision {
    pub formula: Formula,
    pub form: ConjunctiveForm,
    pub disjunctions: Vec<DisjunctionTrace>,
}

impl Decision {
    pub fn is_thesis(&self) -> bool {
        self.disjunctions.iter().all(DisjunctionTrace::thesis)
    }

    /// Some disjunction is a thesis only through its `<>` component, so the
    /// verdict relies on every satisfiable formula being satisfied somewhere.
    pub fn needs_possibility(&self) -> bool {
        self.disjunctions.iter().any(DisjunctionTrace::only_by_possibility)
    }

    /// Seeds for the relative-universal structure: the falsifying
    /// certificates of non-thesis `A`/`Ci`, and a point satisfying each
    /// satisfiable `B` (seeded as a falsifier of `~B`).
    pub fn seeds(&self) -> Vec<Seed> {
        self.seeds_indexed().into_iter().map(|(_, _, s)| s).collect()
    }

    fn seeds_indexed(&self) -> Vec<(usize, Part, Seed)> {
        let mut out = Vec::new();
        for (i, d) in self.disjunctions.iter().enumerate() {
            for p in &d.parts {
                let Some(cert) = &p.verdict.certificate else { continue };
                let formula = match p.verdict.status {
                    Status::NonThesis => p.formula.clone(),
                    Status::Satisfiable => Formula::not(p.formula.clone()),
                    _ => continue,
                };
                out.push((i, p.part, Seed { formula, certificate: cert.clone() }));
            }
        }
        out
    }

    pub fn relative_universal(&self) -> Structure {
        build_relative_universal(&self.seeds()).expect("oracle certificates are sound")
    }

    /// For a non-thesis, a point of the relative-universal structure at
    /// which the formula is false.
    pub fn countermodel(&self) -> Option<Countermodel> {
        let failing = self.disjunctions.iter().position(|d| !d.thesis())?;
        let indexed = self.seeds_indexed();
        let seeds: Vec<Seed> = indexed.iter().map(|(_, _, s)| s.clone()).collect();
        let universal = build_relative_universal(&seeds).expect("oracle certificates are sound");
        let point = match indexed.iter().position(|(i, p, _)| *i == failing && *p == Part::A) {
            Some(k) => seed_point(&universal, k, &seeds[k]),
            None => Countermodel { structure: universal.clone(), world: WorldId(0), valuation: Valuation::new() },
        };
        if point.satisfies(&self.formula) == Ok(false) {
            return Some(point);
        }
        let (world, valuation) = universal.falsifying_point(&self.formula)?;
        Some(Countermodel { structure: universal, world, valuation })
    }

    /// Human-readable account of the decision.
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "conjunctive form: {}", self.form);
        for (i, d) in self.disjunctions.iter().enumerate() {
            let _ = writeln!(out, "disjunction {}: {}", i + 1, d.disjunction);
            for p in &d.parts {
                let label = match p.part {
                    Part::A => "A".to_string(),
                    Part::B => "<>B".to_string(),
                    Part::C(k) => format!("[]C{}", k + 1),
                };
                let status = match p.verdict.status {
                    Status::Thesis => "thesis",
                    Status::NonThesis => "non-thesis",
                    Status::Satisfiable => "satisfiable",
                    Status::Unsatisfiable => "unsatisfiable",
                };
                let _ = writeln!(out, "  {label}: {} : {status}", print_formula(&p.formula));
            }
            let _ = writeln!(out, "  => {}", if d.thesis() { "thesis" } else { "non-thesis" });
        }
        let _ = writeln!(out, "result: {}", if self.is_thesis() { "thesis" } else { "non-thesis" });
        out
    }
}

fn fragment_error(a: &Formula) -> Option<DecideError> {
    a.predicates().into_iter().find(|p| p.arity > 1).map(|p| {
        DecideError::Fragment(format!("predicate {p} has arity greater than 1"))
    })
}

fn trace_disjunction(oracle: &Oracle, d: &ElementaryDisjunction) -> Result<DisjunctionTrace, DecideError> {
    let mut parts = Vec::new();
    if let Some(a) = &d.a {
        parts.push(PartVerdict { part: Part::A, formula: a.clone(), verdict: oracle.is_fol_thesis(a)? });
    }
    if let Some(b) = &d.b {
        parts.push(PartVerdict { part: Part::B, formula: b.clone(), verdict: oracle.is_satisfiable(b)? });
    }
    for (k, c) in d.cs.iter().enumerate() {
        parts.push(PartVerdict { part: Part::C(k), formula: c.clone(), verdict: oracle.is_fol_thesis(c)? });
    }
    Ok(DisjunctionTrace { disjunction: d.clone(), parts })
}

pub fn decide_with(oracle: &Oracle, a: &Formula) -> Result<Decision, DecideError> {
    if let Some(e) = fragment_error(a) {
        return Err(e);
    }
    let form = to_conjunctive_form(a);
    let disjunctions = form
        .disjunctions()
        .iter()
        .map(|d| trace_disjunction(oracle, d))
        .collect::<Result<_, _>>()?;
    Ok(Decision { formula: a.clone(), form, disjunctions })
}

pub fn decide(a: &Formula) -> Result<Decision, DecideError> {
    decide_with(&Oracle::new(), a)
}

pub fn is_thesis(a: &Formula) -> Result<bool, DecideError> {
    Ok(decide(a)?.is_thesis())
}

/// Thesis test for a single elementary disjunction.
pub fn elem_disj_thesis(d: &ElementaryDisjunction) -> Result<bool, DecideError> {
    if let Some(e) = fragment_error(&d.to_formula()) {
        return Err(e);
    }
    Ok(trace_disjunction(&Oracle::new(), d)?.thesis())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxStatus {
    BoxThesis,
    NegBoxThesis,
}

/// Exactly one of `[]A` and `~[]A` is a thesis; report which.
pub fn box_status(a: &Formula) -> Result<BoxStatus, DecideError> {
    let oracle = Oracle::new();
    let pos = decide_with(&oracle, &Formula::boxed(a.clone()))?.is_thesis();
    let neg = decide_with(&oracle, &Formula::not(Formula::boxed(a.clone())))?.is_thesis();
    match (pos, neg) {
        (true, false) => Ok(BoxStatus::BoxThesis),
        (false, true) => Ok(BoxStatus::NegBoxThesis),
        _ => Err(DecideError::Undetermined(print_formula(a))),
    }
}
