//! Finite variable-domain Kripke structures and the satisfaction relation.
//!
//! The modal operator quantifies over *every* world and *every* valuation,
//! so `[]A` has the same truth value at all points of a structure. The
//! evaluator exploits this by caching boxed subformulas per call.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::syntax::{Formula, PredSym, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("a structure needs at least one world")]
    NoWorlds,
    #[error("world `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("element `{element}` is not in the domain of world `{world}`")]
    DomainError { world: String, element: String },
    #[error("predicate {pred} expects {expected} arguments, tuple has {found}")]
    ArityError { pred: String, expected: usize, found: usize },
    #[error("certificate for seed {index} does not falsify `{formula}`")]
    CertificateError { index: usize, formula: String },
    #[error("seed {index} is not a box-free formula")]
    SeedNotBoxFree { index: usize },
}

/// Index of a world within its structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldId(pub usize);

/// Index of an element within its structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub usize);

/// A validated structure `<W, {D_w}, I>`.
///
/// Elements are identified by name across worlds. Predicates without an
/// entry have empty extensions everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    worlds: Vec<String>,
    elements: Vec<String>,
    domains: Vec<Vec<ElemId>>,
    interp: BTreeMap<PredSym, Vec<HashSet<Vec<ElemId>>>>,
}

/// Incremental construction of a [`Structure`]; all containment checks run
/// in [`StructureBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct StructureBuilder {
    worlds: Vec<(String, Vec<String>)>,
    facts: Vec<(PredSym, String, Vec<String>)>,
}

impl StructureBuilder {
    pub fn world(mut self, name: impl Into<String>, domain: &[&str]) -> Self {
        self.add_world(name, domain.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn fact(mut self, pred: &str, world: &str, tuple: &[&str]) -> Self {
        self.add_fact(
            PredSym::new(pred, tuple.len()),
            world.to_string(),
            tuple.iter().map(|s| s.to_string()).collect(),
        );
        self
    }

    pub fn add_world(&mut self, name: impl Into<String>, domain: Vec<String>) {
        self.worlds.push((name.into(), domain));
    }

    pub fn add_fact(&mut self, pred: PredSym, world: String, tuple: Vec<String>) {
        self.facts.push((pred, world, tuple));
    }

    /// Declare a predicate so that it appears (possibly empty) in exports.
    pub fn declare(&mut self, pred: PredSym) {
        self.facts.push((pred, String::new(), Vec::new()));
    }

    pub fn build(self) -> Result<Structure, KripkeError> {
        if self.worlds.is_empty() {
            return Err(KripkeError::NoWorlds);
        }
        let mut worlds = Vec::new();
        let mut world_ix = HashMap::new();
        let mut elements: Vec<String> = Vec::new();
        let mut elem_ix: HashMap<String, ElemId> = HashMap::new();
        let mut domains = Vec::new();
        for (name, dom) in self.worlds {
            if world_ix.insert(name.clone(), worlds.len()).is_some() {
                return Err(KripkeError::DuplicateWorld(name));
            }
            if dom.is_empty() {
                return Err(KripkeError::EmptyDomain(name));
            }
            let mut ids = Vec::new();
            for e in dom {
                let id = *elem_ix.entry(e.clone()).or_insert_with(|| {
                    elements.push(e.clone());
                    ElemId(elements.len() - 1)
                });
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
            worlds.push(name);
            domains.push(ids);
        }
        let nworlds = worlds.len();
        let mut interp: BTreeMap<PredSym, Vec<HashSet<Vec<ElemId>>>> = BTreeMap::new();
        for (pred, world, tuple) in self.facts {
            let ext = interp.entry(pred.clone()).or_insert_with(|| vec![HashSet::new(); nworlds]);
            if world.is_empty() && tuple.is_empty() {
                continue;
            }
            let w = *world_ix.get(&world).ok_or_else(|| KripkeError::UnknownWorld(world.clone()))?;
            if tuple.len() != pred.arity {
                return Err(KripkeError::ArityError {
                    pred: pred.to_string(),
                    expected: pred.arity,
                    found: tuple.len(),
                });
            }
            let mut ids = Vec::with_capacity(tuple.len());
            for e in tuple {
                match elem_ix.get(&e) {
                    Some(id) if domains[w].contains(id) => ids.push(*id),
                    _ => return Err(KripkeError::DomainError { world, element: e }),
                }
            }
            ext[w].insert(ids);
        }
        Ok(Structure { worlds, elements, domains, interp })
    }
}

impl Structure {
    pub fn builder() -> StructureBuilder {
        StructureBuilder::default()
    }

    /// One world `w0` whose domain is `{a}`, all predicates empty.
    pub fn trivial() -> Structure {
        Structure::builder().world("w0", &["a"]).build().expect("trivial structure is valid")
    }

    pub fn worlds(&self) -> impl Iterator<Item = WorldId> + '_ {
        (0..self.worlds.len()).map(WorldId)
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w.0]
    }

    pub fn world_by_name(&self, name: &str) -> Option<WorldId> {
        self.worlds.iter().position(|n| n == name).map(WorldId)
    }

    pub fn element_name(&self, e: ElemId) -> &str {
        &self.elements[e.0]
    }

    pub fn element_by_name(&self, name: &str) -> Option<ElemId> {
        self.elements.iter().position(|n| n == name).map(ElemId)
    }

    pub fn domain(&self, w: WorldId) -> &[ElemId] {
        &self.domains[w.0]
    }

    pub fn predicates(&self) -> impl Iterator<Item = &PredSym> {
        self.interp.keys()
    }

    /// Tuples in the extension of `pred` at `w`, sorted by element index.
    pub fn extension(&self, pred: &PredSym, w: WorldId) -> Vec<Vec<ElemId>> {
        let mut out: Vec<Vec<ElemId>> = self
            .interp
            .get(pred)
            .map(|ext| ext[w.0].iter().cloned().collect())
            .unwrap_or_default();
        out.sort();
        out
    }

    pub fn holds(&self, pred: &PredSym, w: WorldId, tuple: &[ElemId]) -> bool {
        self.interp.get(pred).is_some_and(|ext| ext[w.0].contains(tuple))
    }

    fn check_world(&self, w: WorldId) -> Result<(), KripkeError> {
        if w.0 < self.worlds.len() {
            Ok(())
        } else {
            Err(KripkeError::UnknownWorld(format!("#{}", w.0)))
        }
    }

    /// Check that every assigned value lies in the domain of its world.
    pub fn check_valuation(&self, v: &Valuation) -> Result<(), KripkeError> {
        for ((w, _), e) in &v.map {
            self.check_world(*w)?;
            if !self.domains[w.0].contains(e) {
                return Err(KripkeError::DomainError {
                    world: self.worlds[w.0].clone(),
                    element: self.elements.get(e.0).cloned().unwrap_or_else(|| format!("#{}", e.0)),
                });
            }
        }
        Ok(())
    }

    /// `S, v, w |= A`.
    pub fn satisfies(&self, v: &Valuation, w: WorldId, a: &Formula) -> Result<bool, KripkeError> {
        self.check_world(w)?;
        self.check_valuation(v)?;
        let ev = Evaluator::new(self);
        let mut env = Vec::new();
        Ok(ev.eval(w, v, &mut env, a))
    }

    /// True iff `A` is satisfied at every world under every valuation.
    ///
    /// Only the ∀□-free variables of `A` are enumerated; the rest cannot
    /// influence the result.
    pub fn valid_in(&self, a: &Formula) -> bool {
        let vars: Vec<Var> = a.forallbox_free_vars().into_iter().collect();
        let ev = Evaluator::new(self);
        let empty = Valuation::new();
        self.worlds().all(|w| {
            for_each_assignment(&self.domains[w.0], &vars, &mut |env| {
                ev.eval(w, &empty, &mut env.to_vec(), a)
            })
        })
    }

    /// First point (world, valuation) at which `A` fails, if any.
    pub fn falsifying_point(&self, a: &Formula) -> Option<(WorldId, Valuation)> {
        let vars: Vec<Var> = a.forallbox_free_vars().into_iter().collect();
        let ev = Evaluator::new(self);
        let empty = Valuation::new();
        for w in self.worlds() {
            let mut found = None;
            for_each_assignment(&self.domains[w.0], &vars, &mut |env| {
                if ev.eval(w, &empty, &mut env.to_vec(), a) {
                    true
                } else {
                    found = Some(env.to_vec());
                    false
                }
            });
            if let Some(env) = found {
                let mut v = Valuation::new();
                for (x, e) in env {
                    v.set(w, x, e);
                }
                return Some((w, v));
            }
        }
        None
    }

    /// Disjoint union of structures. World and element names of part `i`
    /// are prefixed with `prefixes[i]`.
    pub fn disjoint_union(parts: &[(&Structure, &str)]) -> Structure {
        let mut out = Structure {
            worlds: Vec::new(),
            elements: Vec::new(),
            domains: Vec::new(),
            interp: BTreeMap::new(),
        };
        let mut offsets = Vec::new();
        for (s, prefix) in parts {
            offsets.push((out.worlds.len(), out.elements.len()));
            out.worlds.extend(s.worlds.iter().map(|n| format!("{prefix}{n}")));
            let base = out.elements.len();
            out.elements.extend(s.elements.iter().map(|n| format!("{prefix}{n}")));
            out.domains.extend(
                s.domains.iter().map(|d| d.iter().map(|e| ElemId(e.0 + base)).collect::<Vec<_>>()),
            );
        }
        let total = out.worlds.len();
        for ((s, _), (wbase, ebase)) in parts.iter().zip(offsets) {
            for (pred, ext) in &s.interp {
                let slot = out
                    .interp
                    .entry(pred.clone())
                    .or_insert_with(|| vec![HashSet::new(); total]);
                for (w, tuples) in ext.iter().enumerate() {
                    slot[wbase + w].extend(
                        tuples.iter().map(|t| t.iter().map(|e| ElemId(e.0 + ebase)).collect()),
                    );
                }
            }
        }
        for ext in out.interp.values_mut() {
            ext.resize(total, HashSet::new());
        }
        out
    }

    /// The sub-structure consisting of world `w` alone.
    pub fn restrict_to_world(&self, w: WorldId) -> Structure {
        let mut b = Structure::builder();
        b.add_world(
            self.worlds[w.0].clone(),
            self.domains[w.0].iter().map(|e| self.elements[e.0].clone()).collect(),
        );
        for (pred, ext) in &self.interp {
            b.declare(pred.clone());
            for t in &ext[w.0] {
                b.add_fact(
                    pred.clone(),
                    self.worlds[w.0].clone(),
                    t.iter().map(|e| self.elements[e.0].clone()).collect(),
                );
            }
        }
        b.build().expect("restriction of a valid structure is valid")
    }
}

type AssignmentFn<'a> = dyn FnMut(&[(Var, ElemId)]) -> bool + 'a;

/// Calls `f` on every assignment of `vars` into `domain`; stops early and
/// returns false as soon as `f` does.
fn for_each_assignment(
    domain: &[ElemId],
    vars: &[Var],
    f: &mut AssignmentFn<'_>,
) -> bool {
    fn go(
        domain: &[ElemId],
        vars: &[Var],
        acc: &mut Vec<(Var, ElemId)>,
        f: &mut AssignmentFn<'_>,
    ) -> bool {
        match vars.split_first() {
            None => f(acc),
            Some((x, rest)) => {
                for &e in domain {
                    acc.push((x.clone(), e));
                    let ok = go(domain, rest, acc, f);
                    acc.pop();
                    if !ok {
                        return false;
                    }
                }
                true
            }
        }
    }
    go(domain, vars, &mut Vec::new(), f)
}

/// World-dependent valuation stored as a finite partial map. A variable
/// without an entry at `w` denotes the first element of `D(w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    map: BTreeMap<(WorldId, Var), ElemId>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, w: WorldId, x: Var, e: ElemId) {
        self.map.insert((w, x), e);
    }

    pub fn with(mut self, w: WorldId, x: &str, e: ElemId) -> Self {
        self.set(w, Var::new(x), e);
        self
    }

    pub fn get(&self, w: WorldId, x: &Var) -> Option<ElemId> {
        self.map.get(&(w, x.clone())).copied()
    }

    /// Value under the default rule.
    pub fn value(&self, s: &Structure, w: WorldId, x: &Var) -> ElemId {
        self.get(w, x).unwrap_or(s.domains[w.0][0])
    }

    pub fn entries(&self) -> impl Iterator<Item = (WorldId, &Var, ElemId)> {
        self.map.iter().map(|((w, x), e)| (*w, x, *e))
    }
}

/// A point falsifying (or satisfying) some formula, used as a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub structure: Structure,
    pub world: WorldId,
    pub valuation: Valuation,
}

impl Countermodel {
    pub fn satisfies(&self, a: &Formula) -> Result<bool, KripkeError> {
        self.structure.satisfies(&self.valuation, self.world, a)
    }
}

struct Evaluator<'s> {
    s: &'s Structure,
    // Boxed subformulas are rigid; key is the node address, stable while
    // the formula is borrowed for the evaluation.
    boxes: RefCell<HashMap<*const Formula, bool>>,
}

impl<'s> Evaluator<'s> {
    fn new(s: &'s Structure) -> Self {
        Evaluator { s, boxes: RefCell::new(HashMap::new()) }
    }

    fn lookup(&self, w: WorldId, v: &Valuation, env: &[(Var, ElemId)], x: &Var) -> ElemId {
        env.iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, e)| *e)
            .unwrap_or_else(|| v.value(self.s, w, x))
    }

    fn eval(&self, w: WorldId, v: &Valuation, env: &mut Vec<(Var, ElemId)>, a: &Formula) -> bool {
        match a {
            Formula::Atom(p, args) => {
                let tuple: Vec<ElemId> = args.iter().map(|x| self.lookup(w, v, env, x)).collect();
                let sym = PredSym { name: p.clone(), arity: args.len() };
                self.s.holds(&sym, w, &tuple)
            }
            Formula::Eq(x, y) => self.lookup(w, v, env, x) == self.lookup(w, v, env, y),
            Formula::Not(b) => !self.eval(w, v, env, b),
            Formula::Impl(b, c) => !self.eval(w, v, env, b) || self.eval(w, v, env, c),
            Formula::And(b, c) => self.eval(w, v, env, b) && self.eval(w, v, env, c),
            Formula::Or(b, c) => self.eval(w, v, env, b) || self.eval(w, v, env, c),
            Formula::Iff(b, c) => self.eval(w, v, env, b) == self.eval(w, v, env, c),
            Formula::Forall(x, b) => self.s.domains[w.0].iter().all(|&e| {
                env.push((x.clone(), e));
                let r = self.eval(w, v, env, b);
                env.pop();
                r
            }),
            Formula::Exists(x, b) => self.s.domains[w.0].iter().any(|&e| {
                env.push((x.clone(), e));
                let r = self.eval(w, v, env, b);
                env.pop();
                r
            }),
            Formula::Box(b) => self.rigid(a, b, true),
            Formula::Dia(b) => self.rigid(a, b, false),
        }
    }

    /// `[]B` (universal) or `<>B` (existential) over all worlds and all
    /// valuations of the ∀□-free variables of `B`.
    fn rigid(&self, node: &Formula, body: &Formula, universal: bool) -> bool {
        let key = node as *const Formula;
        if let Some(&r) = self.boxes.borrow().get(&key) {
            return r;
        }
        let vars: Vec<Var> = body.forallbox_free_vars().into_iter().collect();
        let empty = Valuation::new();
        let mut all = true;
        for w in self.s.worlds() {
            let ok = for_each_assignment(&self.s.domains[w.0], &vars, &mut |asg| {
                self.eval(w, &empty, &mut asg.to_vec(), body) == universal
            });
            if !ok {
                all = false;
                break;
            }
        }
        // universal: all points satisfy body; existential: not all points falsify it.
        let r = if universal { all } else { !all };
        self.boxes.borrow_mut().insert(key, r);
        r
    }
}

/// A box-free formula with a certificate that falsifies it.
#[derive(Clone, Debug)]
pub struct Seed {
    pub formula: Formula,
    pub certificate: Countermodel,
}

/// Finite approximation of a universal structure relative to `seeds`: one
/// world per seed, copied from the certificate's distinguished world, so
/// that every seed formula fails somewhere.
pub fn build_relative_universal(seeds: &[Seed]) -> Result<Structure, KripkeError> {
    if seeds.is_empty() {
        return Ok(Structure::trivial());
    }
    let mut parts = Vec::with_capacity(seeds.len());
    for (index, seed) in seeds.iter().enumerate() {
        if !seed.formula.box_free() {
            return Err(KripkeError::SeedNotBoxFree { index });
        }
        if seed.certificate.satisfies(&seed.formula)? {
            return Err(KripkeError::CertificateError {
                index,
                formula: crate::frontend::print_formula(&seed.formula),
            });
        }
        parts.push(seed.certificate.structure.restrict_to_world(seed.certificate.world));
    }
    let prefixes: Vec<String> = (0..parts.len()).map(|i| format!("s{i}_")).collect();
    let refs: Vec<(&Structure, &str)> =
        parts.iter().zip(&prefixes).map(|(s, p)| (s, p.as_str())).collect();
    Ok(Structure::disjoint_union(&refs))
}

/// The certificate point of `seeds[index]` transported into the structure
/// built by [`build_relative_universal`] from `seeds`.
pub fn seed_point(universal: &Structure, index: usize, seed: &Seed) -> Countermodel {
    let cert = &seed.certificate;
    let world = WorldId(index);
    let mut valuation = Valuation::new();
    for (w, x, e) in cert.valuation.entries() {
        if w != cert.world {
            continue;
        }
        let name = format!("s{index}_{}", cert.structure.element_name(e));
        let e = universal.element_by_name(&name).expect("seed elements are copied");
        valuation.set(world, x.clone(), e);
    }
    Countermodel { structure: universal.clone(), world, valuation }
}
