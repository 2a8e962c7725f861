//! Formulas of the first-order modal language with identity, occurrence
//! analysis relative to both quantifiers and modal operators, and
//! substitution restricted to occurrences that are free of both.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// An individual variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        let name = name.as_ref();
        assert!(!name.is_empty(), "variable names must be non-empty");
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

/// A predicate symbol. The arity of an occurrence is the length of its
/// argument list; [`PredSym`] pairs the two.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pred(Arc<str>);

impl Pred {
    pub fn new(name: impl AsRef<str>) -> Self {
        let name = name.as_ref();
        assert!(!name.is_empty(), "predicate names must be non-empty");
        Pred(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Predicate symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredSym {
    pub name: Pred,
    pub arity: usize,
}

impl PredSym {
    pub fn new(name: impl AsRef<str>, arity: usize) -> Self {
        PredSym { name: Pred::new(name), arity }
    }
}

impl fmt::Display for PredSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Formula AST. `And`, `Or`, `Iff`, `Exists` and `Dia` are derived
/// connectives kept in the tree for readability; [`Formula::lower`] rewrites
/// them into the primitives `Not`, `Impl`, `Forall` and `Box`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Pred, Vec<Var>),
    Eq(Var, Var),
    Not(Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
}

/// Whether a variable occurrence is bound by a quantifier or sits inside a
/// modal operator (`ForallBoxBound`), or neither (`ForallBoxFree`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OccurrenceClass {
    ForallBoxBound,
    ForallBoxFree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substituting {by} for {var} is captured by a quantifier binding {by}")]
    Capture { var: Var, by: Var },
    #[error("occurrence index {index} out of range: {var} has {count} replaceable occurrences")]
    NoSuchOccurrence { var: Var, index: usize, count: usize },
}

impl Formula {
    pub fn atom(pred: impl AsRef<str>, args: &[&str]) -> Formula {
        Formula::Atom(Pred::new(pred), args.iter().map(Var::new).collect())
    }

    pub fn eq(x: impl AsRef<str>, y: impl AsRef<str>) -> Formula {
        Formula::Eq(Var::new(x), Var::new(y))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl AsRef<str>, a: Formula) -> Formula {
        Formula::Forall(Var::new(x), Box::new(a))
    }

    pub fn exists(x: impl AsRef<str>, a: Formula) -> Formula {
        Formula::Exists(Var::new(x), Box::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Box::new(a))
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction; `None` for an empty iterator.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    /// A closed formula false at every point of every structure.
    pub fn falsum() -> Formula {
        Formula::exists("v", Formula::not(Formula::eq("v", "v")))
    }

    /// True iff the formula contains no modal operator.
    pub fn box_free(&self) -> bool {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => true,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.box_free(),
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                a.box_free() && b.box_free()
            }
            Formula::Box(_) | Formula::Dia(_) => false,
        }
    }

    /// Maximum nesting of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => 0,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.modal_depth(),
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Box(a) | Formula::Dia(a) => 1 + a.modal_depth(),
        }
    }

    /// Height of the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => 1,
            Formula::Not(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::Box(a)
            | Formula::Dia(a) => 1 + a.depth(),
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => 1,
            Formula::Not(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::Box(a)
            | Formula::Dia(a) => 1 + a.size(),
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => vec![],
            Formula::Not(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::Box(a)
            | Formula::Dia(a) => vec![a],
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Every variable that appears anywhere, bound or free, including
    /// quantifier binders.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => out.extend(args.iter().cloned()),
            Formula::Eq(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.collect_all_vars(out);
            }
            _ => {
                for c in self.children() {
                    c.collect_all_vars(out);
                }
            }
        }
    }

    /// Predicate symbols with their arities.
    pub fn predicates(&self) -> BTreeSet<PredSym> {
        let mut out = BTreeSet::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut BTreeSet<PredSym>) {
        if let Formula::Atom(p, args) = self {
            out.insert(PredSym { name: p.clone(), arity: args.len() });
        }
        for c in self.children() {
            c.collect_predicates(out);
        }
    }

    /// Classical free variables: occurrences not bound by a quantifier,
    /// ignoring modal operators.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), false, &mut out);
        out
    }

    /// Variables with at least one occurrence that is neither bound by a
    /// quantifier nor inside a modal operator.
    pub fn forallbox_free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), true, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, stop_at_modal: bool, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => {
                out.extend(args.iter().filter(|v| !bound.contains(v)).cloned());
            }
            Formula::Eq(x, y) => {
                for v in [x, y] {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, stop_at_modal, out);
                bound.pop();
            }
            Formula::Box(_) | Formula::Dia(_) if stop_at_modal => {}
            _ => {
                for c in self.children() {
                    c.collect_free(bound, stop_at_modal, out);
                }
            }
        }
    }

    /// Classify every variable occurrence (in argument positions, left to
    /// right; quantifier binders are not occurrences).
    pub fn occurrences(&self) -> Vec<(Var, OccurrenceClass)> {
        let mut out = Vec::new();
        self.collect_occurrences(&mut Vec::new(), false, &mut out);
        out
    }

    fn collect_occurrences(
        &self,
        bound: &mut Vec<Var>,
        under_modal: bool,
        out: &mut Vec<(Var, OccurrenceClass)>,
    ) {
        let class = |v: &Var, bound: &Vec<Var>| {
            if under_modal || bound.contains(v) {
                OccurrenceClass::ForallBoxBound
            } else {
                OccurrenceClass::ForallBoxFree
            }
        };
        match self {
            Formula::Atom(_, args) => {
                for v in args {
                    out.push((v.clone(), class(v, bound)));
                }
            }
            Formula::Eq(x, y) => {
                out.push((x.clone(), class(x, bound)));
                out.push((y.clone(), class(y, bound)));
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_occurrences(bound, under_modal, out);
                bound.pop();
            }
            Formula::Box(a) | Formula::Dia(a) => a.collect_occurrences(bound, true, out),
            _ => {
                for c in self.children() {
                    c.collect_occurrences(bound, under_modal, out);
                }
            }
        }
    }

    /// Simultaneously replace every occurrence of `x` that is free of both
    /// quantifiers and modal operators by `y`.
    pub fn substitute(&self, x: &Var, y: &Var) -> Result<Formula, SubstError> {
        if x == y {
            return Ok(self.clone());
        }
        let mut counter = 0;
        self.replace(x, y, &Selection::All, &mut counter, &mut Vec::new())
    }

    /// Replace only the selected ∀□-free occurrences of `x` by `y`.
    /// Occurrences are numbered from 0 in left-to-right order, counting only
    /// those that [`Formula::substitute`] would replace.
    pub fn substitute_occurrences(
        &self,
        x: &Var,
        y: &Var,
        indices: &BTreeSet<usize>,
    ) -> Result<Formula, SubstError> {
        let count = self.replaceable_count(x);
        if let Some(&bad) = indices.iter().find(|&&i| i >= count) {
            return Err(SubstError::NoSuchOccurrence { var: x.clone(), index: bad, count });
        }
        if x == y {
            return Ok(self.clone());
        }
        let mut counter = 0;
        self.replace(x, y, &Selection::Some(indices), &mut counter, &mut Vec::new())
    }

    /// Number of ∀□-free occurrences of `x`.
    pub fn replaceable_count(&self, x: &Var) -> usize {
        self.occurrences()
            .iter()
            .filter(|(v, c)| v == x && *c == OccurrenceClass::ForallBoxFree)
            .count()
    }

    fn replace(
        &self,
        x: &Var,
        y: &Var,
        sel: &Selection<'_>,
        counter: &mut usize,
        bound: &mut Vec<Var>,
    ) -> Result<Formula, SubstError> {
        let mut swap = |v: &Var, bound: &Vec<Var>| -> Result<Var, SubstError> {
            if v != x || bound.contains(x) {
                return Ok(v.clone());
            }
            let idx = *counter;
            *counter += 1;
            if !sel.contains(idx) {
                return Ok(v.clone());
            }
            if bound.contains(y) {
                return Err(SubstError::Capture { var: x.clone(), by: y.clone() });
            }
            Ok(y.clone())
        };
        Ok(match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter().map(|v| swap(v, bound)).collect::<Result<_, _>>()?,
            ),
            Formula::Eq(a, b) => {
                let a = swap(a, bound)?;
                let b = swap(b, bound)?;
                Formula::Eq(a, b)
            }
            Formula::Not(a) => Formula::not(a.replace(x, y, sel, counter, bound)?),
            Formula::Impl(a, b) => Formula::implies(
                a.replace(x, y, sel, counter, bound)?,
                b.replace(x, y, sel, counter, bound)?,
            ),
            Formula::And(a, b) => Formula::and(
                a.replace(x, y, sel, counter, bound)?,
                b.replace(x, y, sel, counter, bound)?,
            ),
            Formula::Or(a, b) => Formula::or(
                a.replace(x, y, sel, counter, bound)?,
                b.replace(x, y, sel, counter, bound)?,
            ),
            Formula::Iff(a, b) => Formula::iff(
                a.replace(x, y, sel, counter, bound)?,
                b.replace(x, y, sel, counter, bound)?,
            ),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                let body = a.replace(x, y, sel, counter, bound);
                bound.pop();
                let body = Box::new(body?);
                if matches!(self, Formula::Forall(..)) {
                    Formula::Forall(v.clone(), body)
                } else {
                    Formula::Exists(v.clone(), body)
                }
            }
            // Everything under a modal operator is ∀□-bound.
            Formula::Box(_) | Formula::Dia(_) => self.clone(),
        })
    }

    /// Rewrite derived connectives into `Not`, `Impl`, `Forall` and `Box`:
    /// `A & B := ~(A -> ~B)`, `A | B := ~A -> B`,
    /// `A <-> B := (A -> B) & (B -> A)`, `exists x. A := ~forall x. ~A`,
    /// `<>A := ~[]~A`.
    pub fn lower(&self) -> Formula {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => self.clone(),
            Formula::Not(a) => Formula::not(a.lower()),
            Formula::Impl(a, b) => Formula::implies(a.lower(), b.lower()),
            Formula::And(a, b) => {
                Formula::not(Formula::implies(a.lower(), Formula::not(b.lower())))
            }
            Formula::Or(a, b) => Formula::implies(Formula::not(a.lower()), b.lower()),
            Formula::Iff(a, b) => {
                let (a, b) = (a.lower(), b.lower());
                let ab = Formula::implies(a.clone(), b.clone());
                let ba = Formula::implies(b, a);
                Formula::not(Formula::implies(ab, Formula::not(ba)))
            }
            Formula::Forall(x, a) => Formula::Forall(x.clone(), Box::new(a.lower())),
            Formula::Exists(x, a) => Formula::not(Formula::Forall(
                x.clone(),
                Box::new(Formula::not(a.lower())),
            )),
            Formula::Box(a) => Formula::boxed(a.lower()),
            Formula::Dia(a) => Formula::not(Formula::boxed(Formula::not(a.lower()))),
        }
    }

    /// Prefix `forall` for each classical free variable, in sorted order.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula::Forall(v, Box::new(acc)))
    }

    /// Decompose into a propositional skeleton over placeholder atoms.
    pub fn skeleton(&self) -> Skeleton {
        let mut index: HashMap<Formula, usize> = HashMap::new();
        let mut atoms = Vec::new();
        let prop = skel(self, &mut index, &mut atoms);
        Skeleton { prop, atoms }
    }
}

enum Selection<'a> {
    All,
    Some(&'a BTreeSet<usize>),
}

impl Selection<'_> {
    fn contains(&self, i: usize) -> bool {
        match self {
            Selection::All => true,
            Selection::Some(set) => set.contains(&i),
        }
    }
}

/// Propositional formula over numbered placeholder atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prop {
    Atom(usize),
    Not(Box<Prop>),
    Impl(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn eval(&self, row: &[bool]) -> bool {
        match self {
            Prop::Atom(i) => row[*i],
            Prop::Not(a) => !a.eval(row),
            Prop::Impl(a, b) => !a.eval(row) || b.eval(row),
            Prop::And(a, b) => a.eval(row) && b.eval(row),
            Prop::Or(a, b) => a.eval(row) || b.eval(row),
            Prop::Iff(a, b) => a.eval(row) == b.eval(row),
        }
    }
}

fn placeholder_name(i: usize) -> String {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("p{i}"))
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Atom(i) => f.write_str(&placeholder_name(*i)),
            Prop::Not(a) => write!(f, "~{a}"),
            Prop::Impl(a, b) => write!(f, "({a} -> {b})"),
            Prop::And(a, b) => write!(f, "({a} & {b})"),
            Prop::Or(a, b) => write!(f, "({a} | {b})"),
            Prop::Iff(a, b) => write!(f, "({a} <-> {b})"),
        }
    }
}

/// Propositional skeleton: `prop` over placeholders `0..atoms.len()`, with
/// `atoms[i]` the subformula placeholder `i` stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub prop: Prop,
    pub atoms: Vec<Formula>,
}

impl Skeleton {
    pub fn recompose(&self) -> Formula {
        fn go(p: &Prop, atoms: &[Formula]) -> Formula {
            match p {
                Prop::Atom(i) => atoms[*i].clone(),
                Prop::Not(a) => Formula::not(go(a, atoms)),
                Prop::Impl(a, b) => Formula::implies(go(a, atoms), go(b, atoms)),
                Prop::And(a, b) => Formula::and(go(a, atoms), go(b, atoms)),
                Prop::Or(a, b) => Formula::or(go(a, atoms), go(b, atoms)),
                Prop::Iff(a, b) => Formula::iff(go(a, atoms), go(b, atoms)),
            }
        }
        go(&self.prop, &self.atoms)
    }

    /// Placeholder names mapped to the subformulas they stand for.
    pub fn mapping(&self) -> BTreeMap<String, &Formula> {
        self.atoms.iter().enumerate().map(|(i, a)| (placeholder_name(i), a)).collect()
    }
}

fn skel(a: &Formula, index: &mut HashMap<Formula, usize>, atoms: &mut Vec<Formula>) -> Prop {
    let bin = |p: &Formula, q: &Formula, index: &mut HashMap<Formula, usize>, atoms: &mut Vec<Formula>| {
        (Box::new(skel(p, index, atoms)), Box::new(skel(q, index, atoms)))
    };
    match a {
        Formula::Not(b) => Prop::Not(Box::new(skel(b, index, atoms))),
        Formula::Impl(p, q) => {
            let (p, q) = bin(p, q, index, atoms);
            Prop::Impl(p, q)
        }
        Formula::And(p, q) => {
            let (p, q) = bin(p, q, index, atoms);
            Prop::And(p, q)
        }
        Formula::Or(p, q) => {
            let (p, q) = bin(p, q, index, atoms);
            Prop::Or(p, q)
        }
        Formula::Iff(p, q) => {
            let (p, q) = bin(p, q, index, atoms);
            Prop::Iff(p, q)
        }
        _ => {
            let next = atoms.len();
            let i = *index.entry(a.clone()).or_insert(next);
            if i == next {
                atoms.push(a.clone());
            }
            Prop::Atom(i)
        }
    }
}
