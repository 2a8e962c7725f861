//! Satisfiability and validity of box-free formulas in the monadic fragment
//! with identity, by exhaustive search over small models.
//!
//! A monadic structure is determined up to isomorphism by how many elements
//! fall into each of the `2^k` cells (Boolean combinations of the `k`
//! predicates). A formula using `q` distinct variables cannot tell apart two
//! structures whose cell counts agree after truncation at `q` (the
//! duplicator wins the `q`-pebble game), so it suffices to try every count
//! vector with entries in `0..=q`. Their sizes never exceed
//! `B = 2^k * max(q, 1)`.

use std::collections::HashMap;
use std::sync::RwLock;

use thiserror::Error;

use crate::kripke::{Countermodel, ElemId, Structure, Valuation, WorldId};
use crate::syntax::{Formula, Pred, PredSym, Var};

/// Models examined before a query gives up.
pub const MODEL_LIMIT: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("outside the monadic fragment: {0}")]
    Fragment(String),
    #[error("search space too large: more than {limit} candidate models ({cells} cells, cap {cap})")]
    Capacity { limit: u64, cells: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Thesis,
    NonThesis,
    Satisfiable,
    Unsatisfiable,
}

/// Verdict with a single-world certificate for `NonThesis` (falsifying) and
/// `Satisfiable` (satisfying).
#[derive(Clone, Debug)]
pub struct ClassicalVerdict {
    pub status: Status,
    pub certificate: Option<Countermodel>,
}

/// Box-free, and every predicate has arity at most one.
pub fn fragment_check(a: &Formula) -> bool {
    fragment_violation(a).is_none()
}

fn fragment_violation(a: &Formula) -> Option<String> {
    if !a.box_free() {
        return Some("formula contains a modal operator".into());
    }
    a.predicates()
        .into_iter()
        .find(|p| p.arity > 1)
        .map(|p| format!("predicate {p} has arity greater than 1"))
}

/// The model-size bound `2^k * max(q, 1)`.
pub fn model_bound(a: &Formula) -> usize {
    let k = a.predicates().iter().filter(|p| p.arity == 1).count();
    (1usize << k) * a.all_vars().len().max(1)
}

/// Is there a one-world structure and valuation satisfying `A`? Free
/// variables are read existentially.
pub fn is_satisfiable(a: &Formula) -> Result<ClassicalVerdict, OracleError> {
    if let Some(why) = fragment_violation(a) {
        return Err(OracleError::Fragment(why));
    }
    Ok(match search(a)? {
        Some(cert) => ClassicalVerdict { status: Status::Satisfiable, certificate: Some(cert) },
        None => ClassicalVerdict { status: Status::Unsatisfiable, certificate: None },
    })
}

/// Is `A` (read universally) true in every structure? Decided as
/// unsatisfiability of `~A`.
pub fn is_fol_thesis(a: &Formula) -> Result<ClassicalVerdict, OracleError> {
    if let Some(why) = fragment_violation(a) {
        return Err(OracleError::Fragment(why));
    }
    Ok(match search(&Formula::not(a.clone()))? {
        Some(cert) => ClassicalVerdict { status: Status::NonThesis, certificate: Some(cert) },
        None => ClassicalVerdict { status: Status::Thesis, certificate: None },
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Query {
    Sat,
    Thesis,
}

/// Memoizing front end. Safe to share between threads.
#[derive(Default)]
pub struct Oracle {
    cache: RwLock<HashMap<(Query, Formula), ClassicalVerdict>>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_satisfiable(&self, a: &Formula) -> Result<ClassicalVerdict, OracleError> {
        self.cached(Query::Sat, a, is_satisfiable)
    }

    pub fn is_fol_thesis(&self, a: &Formula) -> Result<ClassicalVerdict, OracleError> {
        self.cached(Query::Thesis, a, is_fol_thesis)
    }

    fn cached(
        &self,
        q: Query,
        a: &Formula,
        f: fn(&Formula) -> Result<ClassicalVerdict, OracleError>,
    ) -> Result<ClassicalVerdict, OracleError> {
        let key = (q, a.clone());
        if let Some(v) = self.cache.read().expect("oracle cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = f(a)?;
        self.cache.write().expect("oracle cache poisoned").insert(key, v.clone());
        Ok(v)
    }
}

/// Name of the `i`-th element in generated models: `a`..`z`, then `e26`...
pub fn element_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

/// Formula with variables and predicates replaced by indices.
enum Node {
    Monadic(usize, usize),
    Nullary(usize),
    Eq(usize, usize),
    Not(Box<Node>),
    Impl(Box<Node>, Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

struct Signature {
    monadic: Vec<Pred>,
    nullary: Vec<Pred>,
    vars: Vec<Var>,
}

impl Signature {
    fn of(a: &Formula) -> Self {
        let preds = a.predicates();
        Signature {
            monadic: preds.iter().filter(|p| p.arity == 1).map(|p| p.name.clone()).collect(),
            nullary: preds.iter().filter(|p| p.arity == 0).map(|p| p.name.clone()).collect(),
            vars: a.all_vars().into_iter().collect(),
        }
    }

    fn var(&self, x: &Var) -> usize {
        self.vars.iter().position(|v| v == x).expect("variable in signature")
    }

    fn compile(&self, a: &Formula) -> Node {
        let bx = |b: &Formula| Box::new(self.compile(b));
        match a {
            Formula::Atom(p, args) => match args.as_slice() {
                [] => Node::Nullary(self.nullary.iter().position(|q| q == p).expect("nullary predicate")),
                [x] => Node::Monadic(
                    self.monadic.iter().position(|q| q == p).expect("monadic predicate"),
                    self.var(x),
                ),
                _ => unreachable!("fragment excludes higher arities"),
            },
            Formula::Eq(x, y) => Node::Eq(self.var(x), self.var(y)),
            Formula::Not(b) => Node::Not(bx(b)),
            Formula::Impl(b, c) => Node::Impl(bx(b), bx(c)),
            Formula::And(b, c) => Node::And(bx(b), bx(c)),
            Formula::Or(b, c) => Node::Or(bx(b), bx(c)),
            Formula::Iff(b, c) => Node::Iff(bx(b), bx(c)),
            Formula::Forall(x, b) => Node::Forall(self.var(x), bx(b)),
            Formula::Exists(x, b) => Node::Exists(self.var(x), bx(b)),
            Formula::Box(_) | Formula::Dia(_) => unreachable!("fragment is box-free"),
        }
    }
}

const UNSET: usize = usize::MAX;

struct Model {
    nullary_mask: u32,
    // cell of each element; elements of a cell are contiguous
    cell_of: Vec<u32>,
    // (start, count) per non-empty cell
    ranges: Vec<(usize, usize)>,
}

impl Model {
    /// Elements worth trying for a quantifier: every element currently
    /// assigned, plus one unassigned element per cell. Any other choice is
    /// the image of one of these under an automorphism fixing the assigned
    /// elements.
    fn candidates(&self, vals: &[usize], out: &mut Vec<usize>) {
        out.clear();
        for &e in vals {
            if e != UNSET && !out.contains(&e) {
                out.push(e);
            }
        }
        let taken = out.len();
        for &(start, count) in &self.ranges {
            if let Some(e) = (start..start + count).find(|e| !out[..taken].contains(e)) {
                out.push(e);
            }
        }
    }

    fn eval(&self, a: &Node, vals: &mut [usize], scratch: &mut Vec<Vec<usize>>) -> bool {
        match a {
            Node::Monadic(j, x) => self.cell_of[vals[*x]] & (1 << j) != 0,
            Node::Nullary(i) => self.nullary_mask & (1 << i) != 0,
            Node::Eq(x, y) => vals[*x] == vals[*y],
            Node::Not(b) => !self.eval(b, vals, scratch),
            Node::Impl(b, c) => !self.eval(b, vals, scratch) || self.eval(c, vals, scratch),
            Node::And(b, c) => self.eval(b, vals, scratch) && self.eval(c, vals, scratch),
            Node::Or(b, c) => self.eval(b, vals, scratch) || self.eval(c, vals, scratch),
            Node::Iff(b, c) => self.eval(b, vals, scratch) == self.eval(c, vals, scratch),
            Node::Forall(x, b) => !self.witness(*x, b, false, vals, scratch),
            Node::Exists(x, b) => self.witness(*x, b, true, vals, scratch),
        }
    }

    /// Is there a value of `x` making `b` evaluate to `want`?
    fn witness(&self, x: usize, b: &Node, want: bool, vals: &mut [usize], scratch: &mut Vec<Vec<usize>>) -> bool {
        let mut cands = scratch.pop().unwrap_or_default();
        self.candidates(vals, &mut cands);
        let saved = vals[x];
        let mut found = false;
        for &e in &cands {
            vals[x] = e;
            if self.eval(b, vals, scratch) == want {
                found = true;
                break;
            }
        }
        vals[x] = saved;
        scratch.push(cands);
        found
    }

    /// Try assignments of the `free` slots (up to automorphism) until one
    /// satisfies `a`; on success `vals` holds the assignment.
    fn satisfy(&self, a: &Node, free: &[usize], vals: &mut [usize], scratch: &mut Vec<Vec<usize>>) -> bool {
        match free.split_first() {
            None => self.eval(a, vals, scratch),
            Some((&x, rest)) => {
                let mut cands = Vec::new();
                self.candidates(vals, &mut cands);
                for e in cands {
                    vals[x] = e;
                    if self.satisfy(a, rest, vals, scratch) {
                        return true;
                    }
                }
                vals[x] = UNSET;
                false
            }
        }
    }

    fn certificate(&self, sig: &Signature, free: &[usize], vals: &[usize]) -> Countermodel {
        let n = self.cell_of.len();
        let names: Vec<String> = (0..n).map(element_name).collect();
        let mut b = Structure::builder();
        b.add_world("w0", names.clone());
        for (j, p) in sig.monadic.iter().enumerate() {
            let sym = PredSym { name: p.clone(), arity: 1 };
            b.declare(sym.clone());
            for (e, cell) in self.cell_of.iter().enumerate() {
                if cell & (1 << j) != 0 {
                    b.add_fact(sym.clone(), "w0".into(), vec![names[e].clone()]);
                }
            }
        }
        for (i, p) in sig.nullary.iter().enumerate() {
            let sym = PredSym { name: p.clone(), arity: 0 };
            b.declare(sym.clone());
            if self.nullary_mask & (1 << i) != 0 {
                b.add_fact(sym, "w0".into(), vec![]);
            }
        }
        let structure = b.build().expect("generated model is valid");
        let mut valuation = Valuation::new();
        for &x in free {
            valuation.set(WorldId(0), sig.vars[x].clone(), ElemId(vals[x]));
        }
        Countermodel { structure, world: WorldId(0), valuation }
    }
}

/// Smallest satisfying model of `a`, if any.
fn search(a: &Formula) -> Result<Option<Countermodel>, OracleError> {
    let sig = Signature::of(a);
    let node = sig.compile(a);
    let free: Vec<usize> = a.free_vars().iter().map(|x| sig.var(x)).collect();
    let cells = 1usize << sig.monadic.len();
    let cap = sig.vars.len().max(1);
    let bound = cells * cap;
    let too_big = || OracleError::Capacity { limit: MODEL_LIMIT, cells, cap };
    if sig.monadic.len() >= 24 || sig.nullary.len() >= 24 {
        return Err(too_big());
    }

    let mut tried: u64 = 0;
    let mut counts = vec![0usize; cells];
    let mut vals = vec![UNSET; sig.vars.len()];
    let mut scratch = Vec::new();
    let mut found = None;
    for n in 1..=bound {
        let mut visit = |counts: &[usize]| -> Result<bool, OracleError> {
            let mut cell_of = Vec::with_capacity(n);
            let mut ranges = Vec::with_capacity(cells);
            for (c, &k) in counts.iter().enumerate() {
                if k > 0 {
                    ranges.push((cell_of.len(), k));
                }
                cell_of.extend(std::iter::repeat_n(c as u32, k));
            }
            let mut model = Model { nullary_mask: 0, cell_of, ranges };
            for mask in 0..(1u32 << sig.nullary.len()) {
                tried += 1;
                if tried > MODEL_LIMIT {
                    return Err(too_big());
                }
                model.nullary_mask = mask;
                vals.fill(UNSET);
                if model.satisfy(&node, &free, &mut vals, &mut scratch) {
                    found = Some(model.certificate(&sig, &free, &vals));
                    return Ok(true);
                }
            }
            Ok(false)
        };
        if compositions(n, cap, &mut counts, 0, &mut visit)? {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Enumerate vectors `counts` with entries in `0..=cap` summing to `n`;
/// stops when `f` returns true.
fn compositions(
    n: usize,
    cap: usize,
    counts: &mut [usize],
    i: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool, OracleError>,
) -> Result<bool, OracleError> {
    if i == counts.len() - 1 {
        if n > cap {
            return Ok(false);
        }
        counts[i] = n;
        return f(counts);
    }
    let remaining_cells = counts.len() - i - 1;
    for k in 0..=n.min(cap) {
        if n - k > remaining_cells * cap {
            continue;
        }
        counts[i] = k;
        if compositions(n - k, cap, counts, i + 1, f)? {
            return Ok(true);
        }
    }
    Ok(false)
}
