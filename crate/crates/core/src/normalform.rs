//! Conversion to conjunctive form: a conjunction of elementary disjunctions
//! `A | <>B | []C1 | ... | []Cn` with every component box-free.
//!
//! Modal subformulas are rigid: their truth value does not depend on the
//! world or the valuation. That licenses moving them across quantifiers and
//! out of other modal operators (the equivalences in [`RewriteRule`]). The
//! conversion works bottom-up: each subformula is turned into a tree of
//! `&`/`|` over box-free leaves and modal literals `[]C`/`<>B` with box-free
//! bodies. A quantifier or modal operator over such a tree first brings its
//! body into clausal (for `forall`, `[]`) or cube (for `exists`, `<>`)
//! form, then distributes over the pieces and pulls the modal literals out.

use std::fmt;

use crate::frontend::print_formula;
use crate::syntax::{Formula, Var};

/// `a | <>b | []c1 | ... | []cn`; absent parts contribute nothing to the
/// disjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ElementaryDisjunction {
    pub a: Option<Formula>,
    pub b: Option<Formula>,
    pub cs: Vec<Formula>,
}

impl ElementaryDisjunction {
    pub fn to_formula(&self) -> Formula {
        let parts = self
            .a
            .iter()
            .cloned()
            .chain(self.b.iter().cloned().map(Formula::dia))
            .chain(self.cs.iter().cloned().map(Formula::boxed));
        Formula::or_all(parts).unwrap_or_else(Formula::falsum)
    }

    pub fn is_well_formed(&self) -> bool {
        self.a.iter().chain(&self.b).chain(&self.cs).all(Formula::box_free)
    }

    pub fn components(&self) -> impl Iterator<Item = &Formula> {
        self.a.iter().chain(&self.b).chain(&self.cs)
    }
}

impl fmt::Display for ElementaryDisjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(&self.to_formula()))
    }
}

/// Non-empty conjunction of elementary disjunctions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjunctiveForm(pub Vec<ElementaryDisjunction>);

impl ConjunctiveForm {
    pub fn disjunctions(&self) -> &[ElementaryDisjunction] {
        &self.0
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and_all(self.0.iter().map(ElementaryDisjunction::to_formula))
            .expect("conjunctive forms are non-empty")
    }

    pub fn is_well_formed(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(ElementaryDisjunction::is_well_formed)
    }
}

impl fmt::Display for ConjunctiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(&self.to_formula()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Modal {
    Box(Formula),
    Dia(Formula),
}

/// `&`/`|` tree over box-free leaves and modal literals.
#[derive(Clone, Debug)]
enum Mix {
    Free(Formula),
    Lit(Modal),
    And(Vec<Mix>),
    Or(Vec<Mix>),
}

/// A clause (disjunction) or a cube (conjunction), depending on context.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Bag {
    free: Vec<Formula>,
    lits: Vec<Modal>,
}

impl Bag {
    fn merge(&self, other: &Bag) -> Bag {
        let mut out = self.clone();
        for f in &other.free {
            if !out.free.contains(f) {
                out.free.push(f.clone());
            }
        }
        for l in &other.lits {
            if !out.lits.contains(l) {
                out.lits.push(l.clone());
            }
        }
        out
    }
}

fn mk_and(parts: Vec<Mix>) -> Mix {
    junction(parts, true)
}

fn mk_or(parts: Vec<Mix>) -> Mix {
    junction(parts, false)
}

fn junction(parts: Vec<Mix>, conj: bool) -> Mix {
    let mut flat = Vec::with_capacity(parts.len());
    for p in parts {
        match p {
            Mix::And(inner) if conj => flat.extend(inner),
            Mix::Or(inner) if !conj => flat.extend(inner),
            other => flat.push(other),
        }
    }
    if flat.len() == 1 {
        return flat.pop().expect("one element");
    }
    if flat.iter().all(|m| matches!(m, Mix::Free(_))) {
        let frees = flat.into_iter().map(|m| match m {
            Mix::Free(f) => f,
            _ => unreachable!(),
        });
        let joined = if conj { Formula::and_all(frees) } else { Formula::or_all(frees) };
        return Mix::Free(joined.expect("non-empty junction"));
    }
    if conj {
        Mix::And(flat)
    } else {
        Mix::Or(flat)
    }
}

/// Flatten into bags: with `conj_outer` the result is read as a
/// conjunction of clauses, otherwise as a disjunction of cubes.
fn expand(m: &Mix, conj_outer: bool) -> Vec<Bag> {
    match m {
        Mix::Free(f) => vec![Bag { free: vec![f.clone()], lits: vec![] }],
        Mix::Lit(l) => vec![Bag { free: vec![], lits: vec![l.clone()] }],
        Mix::And(xs) | Mix::Or(xs) => {
            let same = matches!(m, Mix::And(_)) == conj_outer;
            if same {
                let mut out: Vec<Bag> = Vec::new();
                for x in xs {
                    for b in expand(x, conj_outer) {
                        if !out.contains(&b) {
                            out.push(b);
                        }
                    }
                }
                out
            } else {
                // distribution
                let mut acc = vec![Bag::default()];
                for x in xs {
                    let parts = expand(x, conj_outer);
                    let mut next = Vec::with_capacity(acc.len() * parts.len());
                    for a in &acc {
                        for p in &parts {
                            let merged = a.merge(p);
                            if !next.contains(&merged) {
                                next.push(merged);
                            }
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }
}

fn free_disjunction(fs: &[Formula]) -> Option<Formula> {
    Formula::or_all(fs.iter().cloned())
}

fn free_conjunction(fs: &[Formula]) -> Option<Formula> {
    Formula::and_all(fs.iter().cloned())
}

fn lits(ls: &[Modal]) -> impl Iterator<Item = Mix> + '_ {
    ls.iter().cloned().map(Mix::Lit)
}

// forall x (a | M) <-> forall x a | M, and forall distributes over &.
fn forall(x: &Var, m: Mix) -> Mix {
    if let Mix::Free(f) = m {
        return Mix::Free(Formula::Forall(x.clone(), Box::new(f)));
    }
    let clauses = expand(&m, true)
        .into_iter()
        .map(|c| {
            let head = free_disjunction(&c.free).map(|a| Mix::Free(Formula::Forall(x.clone(), Box::new(a))));
            mk_or(head.into_iter().chain(lits(&c.lits)).collect())
        })
        .collect();
    mk_and(clauses)
}

// exists x (a & M) <-> exists x a & M, and exists distributes over |.
fn exists(x: &Var, m: Mix) -> Mix {
    if let Mix::Free(f) = m {
        return Mix::Free(Formula::Exists(x.clone(), Box::new(f)));
    }
    let cubes = expand(&m, false)
        .into_iter()
        .map(|c| {
            let head = free_conjunction(&c.free).map(|a| Mix::Free(Formula::Exists(x.clone(), Box::new(a))));
            mk_and(head.into_iter().chain(lits(&c.lits)).collect())
        })
        .collect();
    mk_or(cubes)
}

// [](a | M) <-> []a | M, and [] distributes over &.
fn boxed(m: Mix) -> Mix {
    if let Mix::Free(f) = m {
        return Mix::Lit(Modal::Box(f));
    }
    let clauses = expand(&m, true)
        .into_iter()
        .map(|c| {
            let head = free_disjunction(&c.free).map(|a| Mix::Lit(Modal::Box(a)));
            mk_or(head.into_iter().chain(lits(&c.lits)).collect())
        })
        .collect();
    mk_and(clauses)
}

// <>(a & M) <-> <>a & M, and <> distributes over |.
fn diamond(m: Mix) -> Mix {
    if let Mix::Free(f) = m {
        return Mix::Lit(Modal::Dia(f));
    }
    let cubes = expand(&m, false)
        .into_iter()
        .map(|c| {
            let head = free_conjunction(&c.free).map(|b| Mix::Lit(Modal::Dia(b)));
            mk_and(head.into_iter().chain(lits(&c.lits)).collect())
        })
        .collect();
    mk_or(cubes)
}

fn negate_free(a: &Formula) -> Formula {
    match a {
        Formula::Not(b) => (**b).clone(),
        _ => Formula::not(a.clone()),
    }
}

/// Negation normal form over modal material, built bottom-up. `pos` is the
/// polarity; `normalize(A, false)` represents `~A`.
fn normalize(a: &Formula, pos: bool) -> Mix {
    if a.box_free() {
        return Mix::Free(if pos { a.clone() } else { negate_free(a) });
    }
    match a {
        Formula::Atom(..) | Formula::Eq(..) => unreachable!("atoms are box-free"),
        Formula::Not(b) => normalize(b, !pos),
        Formula::And(b, c) | Formula::Or(b, c) => {
            let parts = vec![normalize(b, pos), normalize(c, pos)];
            if matches!(a, Formula::And(..)) == pos {
                mk_and(parts)
            } else {
                mk_or(parts)
            }
        }
        Formula::Impl(b, c) => {
            if pos {
                mk_or(vec![normalize(b, false), normalize(c, true)])
            } else {
                mk_and(vec![normalize(b, true), normalize(c, false)])
            }
        }
        Formula::Iff(b, c) => {
            if pos {
                mk_and(vec![
                    mk_or(vec![normalize(b, false), normalize(c, true)]),
                    mk_or(vec![normalize(c, false), normalize(b, true)]),
                ])
            } else {
                mk_or(vec![
                    mk_and(vec![normalize(b, true), normalize(c, false)]),
                    mk_and(vec![normalize(b, false), normalize(c, true)]),
                ])
            }
        }
        Formula::Forall(x, b) => {
            if pos {
                forall(x, normalize(b, true))
            } else {
                exists(x, normalize(b, false))
            }
        }
        Formula::Exists(x, b) => {
            if pos {
                exists(x, normalize(b, true))
            } else {
                forall(x, normalize(b, false))
            }
        }
        Formula::Box(b) => {
            if pos {
                boxed(normalize(b, true))
            } else {
                diamond(normalize(b, false))
            }
        }
        Formula::Dia(b) => {
            if pos {
                diamond(normalize(b, true))
            } else {
                boxed(normalize(b, false))
            }
        }
    }
}

/// Equivalent conjunctive form. Modal depth of the result is at most one
/// and no modal operator lies in the scope of a quantifier.
pub fn to_conjunctive_form(a: &Formula) -> ConjunctiveForm {
    let clauses = expand(&normalize(a, true), true);
    ConjunctiveForm(
        clauses
            .into_iter()
            .map(|c| {
                let mut dias = Vec::new();
                let mut cs = Vec::new();
                for l in c.lits {
                    match l {
                        Modal::Dia(b) if !dias.contains(&b) => dias.push(b),
                        Modal::Box(c) if !cs.contains(&c) => cs.push(c),
                        _ => {}
                    }
                }
                ElementaryDisjunction {
                    a: free_disjunction(&c.free),
                    b: Formula::or_all(dias),
                    cs,
                }
            })
            .collect(),
    )
}

/// `A` is not syntactically a conjunction of elementary disjunctions;
/// `offending` is the first subformula that does not fit.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not a conjunctive form at `{}`: {reason}", print_formula(.offending))]
pub struct RecognitionFailure {
    pub offending: Formula,
    pub reason: &'static str,
}

/// Decompose a formula that already has conjunctive shape. `~[]C` is read
/// as `<>~C` and `~<>B` as `[]~B`; several box-free disjuncts are joined
/// into one.
pub fn recognize(a: &Formula) -> Result<ConjunctiveForm, RecognitionFailure> {
    fn flatten<'a>(a: &'a Formula, conj: bool, out: &mut Vec<&'a Formula>) {
        match a {
            Formula::And(b, c) if conj && !a.box_free() => {
                flatten(b, conj, out);
                flatten(c, conj, out);
            }
            Formula::Or(b, c) if !conj && !a.box_free() => {
                flatten(b, conj, out);
                flatten(c, conj, out);
            }
            _ => out.push(a),
        }
    }
    let mut conjuncts = Vec::new();
    flatten(a, true, &mut conjuncts);
    let mut eds = Vec::new();
    for c in conjuncts {
        let mut disjuncts = Vec::new();
        flatten(c, false, &mut disjuncts);
        let mut frees = Vec::new();
        let mut b = None;
        let mut cs = Vec::new();
        for d in disjuncts {
            let (dia, body) = match d {
                _ if d.box_free() => {
                    frees.push(d.clone());
                    continue;
                }
                Formula::Box(body) => (false, (**body).clone()),
                Formula::Dia(body) => (true, (**body).clone()),
                Formula::Not(inner) => match &**inner {
                    Formula::Box(body) => (true, Formula::not((**body).clone())),
                    Formula::Dia(body) => (false, Formula::not((**body).clone())),
                    _ => {
                        return Err(RecognitionFailure {
                            offending: d.clone(),
                            reason: "negation of a non-modal formula containing modalities",
                        })
                    }
                },
                _ => {
                    return Err(RecognitionFailure {
                        offending: d.clone(),
                        reason: "modal operator below a non-disjunctive connective",
                    })
                }
            };
            if !body.box_free() {
                return Err(RecognitionFailure { offending: d.clone(), reason: "nested modality" });
            }
            if dia {
                if b.is_some() {
                    return Err(RecognitionFailure {
                        offending: d.clone(),
                        reason: "more than one <> disjunct",
                    });
                }
                b = Some(body);
            } else {
                cs.push(body);
            }
        }
        eds.push(ElementaryDisjunction { a: Formula::or_all(frees), b, cs });
    }
    Ok(ConjunctiveForm(eds))
}

/// Equivalences the conversion relies on, each valid in every structure.
/// `A`, `B`, `C` stand for arbitrary formulas and `x` for a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteRule {
    /// `[](A | []B) <-> []A | []B`
    BoxOrBox,
    /// `exists x. []A <-> []A`
    ExistsBox,
    /// `forall x. []A <-> []A`
    ForallBox,
    /// `exists x. <>A <-> <>A`
    ExistsDia,
    /// `forall x. <>A <-> <>A`
    ForallDia,
    /// `forall x. (A | []B) <-> (forall x. A) | []B`
    ForallOrBox,
    /// `[](A | <>B) <-> []A | <>B`
    BoxOrDia,
    /// `<>(A & []B) <-> <>A & []B`
    DiaAndBox,
    /// `<>(A & <>B) <-> <>A & <>B`
    DiaAndDia,
    /// `forall x. (A | <>B) <-> (forall x. A) | <>B`
    ForallOrDia,
    /// `exists x. (A & []B) <-> (exists x. A) & []B`
    ExistsAndBox,
    /// `exists x. (A & <>B) <-> (exists x. A) & <>B`
    ExistsAndDia,
    /// `[][]A <-> []A`
    BoxBox,
    /// `<><>A <-> <>A`
    DiaDia,
    /// `[]<>A <-> <>A`
    BoxDia,
    /// `<>[]A <-> []A`
    DiaBox,
    /// `[](A & B) <-> []A & []B`
    BoxAnd,
    /// `<>(A | B) <-> <>A | <>B`
    DiaOr,
    /// `<>A | <>B <-> <>(A | B)`
    DiaMerge,
    /// `forall x. (A & B) <-> (forall x. A) & (forall x. B)`
    ForallAnd,
    /// `exists x. (A | B) <-> (exists x. A) | (exists x. B)`
    ExistsOr,
    /// `~[]A <-> <>~A`
    NotBox,
    /// `~<>A <-> []~A`
    NotDia,
    /// `~forall x. A <-> exists x. ~A`
    NotForall,
    /// `~exists x. A <-> forall x. ~A`
    NotExists,
    /// `~(A & B) <-> ~A | ~B`
    NotAnd,
    /// `~(A | B) <-> ~A & ~B`
    NotOr,
    /// `~(A -> B) <-> A & ~B`
    NotImpl,
    /// `(A -> B) <-> ~A | B`
    ImplOr,
    /// `(A <-> B) <-> (~A | B) & (~B | A)`
    IffClauses,
    /// `~(A <-> B) <-> (A & ~B) | (~A & B)`
    NotIff,
    /// `~~A <-> A`
    DoubleNegation,
    /// `A | (B & C) <-> (A | B) & (A | C)`
    OrOverAnd,
    /// `A & (B | C) <-> (A & B) | (A & C)`
    AndOverOr,
}

impl RewriteRule {
    pub const ALL: [RewriteRule; 34] = [
        RewriteRule::BoxOrBox,
        RewriteRule::ExistsBox,
        RewriteRule::ForallBox,
        RewriteRule::ExistsDia,
        RewriteRule::ForallDia,
        RewriteRule::ForallOrBox,
        RewriteRule::BoxOrDia,
        RewriteRule::DiaAndBox,
        RewriteRule::DiaAndDia,
        RewriteRule::ForallOrDia,
        RewriteRule::ExistsAndBox,
        RewriteRule::ExistsAndDia,
        RewriteRule::BoxBox,
        RewriteRule::DiaDia,
        RewriteRule::BoxDia,
        RewriteRule::DiaBox,
        RewriteRule::BoxAnd,
        RewriteRule::DiaOr,
        RewriteRule::DiaMerge,
        RewriteRule::ForallAnd,
        RewriteRule::ExistsOr,
        RewriteRule::NotBox,
        RewriteRule::NotDia,
        RewriteRule::NotForall,
        RewriteRule::NotExists,
        RewriteRule::NotAnd,
        RewriteRule::NotOr,
        RewriteRule::NotImpl,
        RewriteRule::ImplOr,
        RewriteRule::IffClauses,
        RewriteRule::NotIff,
        RewriteRule::DoubleNegation,
        RewriteRule::OrOverAnd,
        RewriteRule::AndOverOr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RewriteRule::BoxOrBox => "1a",
            RewriteRule::ExistsBox => "1b-exists",
            RewriteRule::ForallBox => "1b-forall",
            RewriteRule::ExistsDia => "1c-exists",
            RewriteRule::ForallDia => "1c-forall",
            RewriteRule::ForallOrBox => "1d",
            RewriteRule::BoxOrDia => "box-or-dia",
            RewriteRule::DiaAndBox => "dia-and-box",
            RewriteRule::DiaAndDia => "dia-and-dia",
            RewriteRule::ForallOrDia => "forall-or-dia",
            RewriteRule::ExistsAndBox => "exists-and-box",
            RewriteRule::ExistsAndDia => "exists-and-dia",
            RewriteRule::BoxBox => "s5-box-box",
            RewriteRule::DiaDia => "s5-dia-dia",
            RewriteRule::BoxDia => "s5-box-dia",
            RewriteRule::DiaBox => "s5-dia-box",
            RewriteRule::BoxAnd => "box-and",
            RewriteRule::DiaOr => "dia-or",
            RewriteRule::DiaMerge => "dia-merge",
            RewriteRule::ForallAnd => "forall-and",
            RewriteRule::ExistsOr => "exists-or",
            RewriteRule::NotBox => "not-box",
            RewriteRule::NotDia => "not-dia",
            RewriteRule::NotForall => "not-forall",
            RewriteRule::NotExists => "not-exists",
            RewriteRule::NotAnd => "not-and",
            RewriteRule::NotOr => "not-or",
            RewriteRule::NotImpl => "not-impl",
            RewriteRule::ImplOr => "impl-or",
            RewriteRule::IffClauses => "iff-clauses",
            RewriteRule::NotIff => "not-iff",
            RewriteRule::DoubleNegation => "double-negation",
            RewriteRule::OrOverAnd => "or-over-and",
            RewriteRule::AndOverOr => "and-over-or",
        }
    }

    /// The biconditional `lhs <-> rhs` with `A`, `B`, `C` and `x` filled in.
    pub fn instance(self, a: &Formula, b: &Formula, c: &Formula, x: &Var) -> Formula {
        let (lhs, rhs) = self.sides(a, b, c, x);
        Formula::iff(lhs, rhs)
    }

    pub fn sides(self, a: &Formula, b: &Formula, c: &Formula, x: &Var) -> (Formula, Formula) {
        use Formula as F;
        let (a, b, c) = (a.clone(), b.clone(), c.clone());
        let all = |f: Formula| F::Forall(x.clone(), Box::new(f));
        let ex = |f: Formula| F::Exists(x.clone(), Box::new(f));
        let bx = F::boxed;
        let dia = F::dia;
        let not = F::not;
        match self {
            RewriteRule::BoxOrBox => (bx(F::or(a.clone(), bx(b.clone()))), F::or(bx(a), bx(b))),
            RewriteRule::ExistsBox => (ex(bx(a.clone())), bx(a)),
            RewriteRule::ForallBox => (all(bx(a.clone())), bx(a)),
            RewriteRule::ExistsDia => (ex(dia(a.clone())), dia(a)),
            RewriteRule::ForallDia => (all(dia(a.clone())), dia(a)),
            RewriteRule::ForallOrBox => (all(F::or(a.clone(), bx(b.clone()))), F::or(all(a), bx(b))),
            RewriteRule::BoxOrDia => (bx(F::or(a.clone(), dia(b.clone()))), F::or(bx(a), dia(b))),
            RewriteRule::DiaAndBox => (dia(F::and(a.clone(), bx(b.clone()))), F::and(dia(a), bx(b))),
            RewriteRule::DiaAndDia => (dia(F::and(a.clone(), dia(b.clone()))), F::and(dia(a), dia(b))),
            RewriteRule::ForallOrDia => (all(F::or(a.clone(), dia(b.clone()))), F::or(all(a), dia(b))),
            RewriteRule::ExistsAndBox => (ex(F::and(a.clone(), bx(b.clone()))), F::and(ex(a), bx(b))),
            RewriteRule::ExistsAndDia => (ex(F::and(a.clone(), dia(b.clone()))), F::and(ex(a), dia(b))),
            RewriteRule::BoxBox => (bx(bx(a.clone())), bx(a)),
            RewriteRule::DiaDia => (dia(dia(a.clone())), dia(a)),
            RewriteRule::BoxDia => (bx(dia(a.clone())), dia(a)),
            RewriteRule::DiaBox => (dia(bx(a.clone())), bx(a)),
            RewriteRule::BoxAnd => (bx(F::and(a.clone(), b.clone())), F::and(bx(a), bx(b))),
            RewriteRule::DiaOr => (dia(F::or(a.clone(), b.clone())), F::or(dia(a), dia(b))),
            RewriteRule::DiaMerge => (F::or(dia(a.clone()), dia(b.clone())), dia(F::or(a, b))),
            RewriteRule::ForallAnd => (all(F::and(a.clone(), b.clone())), F::and(all(a), all(b))),
            RewriteRule::ExistsOr => (ex(F::or(a.clone(), b.clone())), F::or(ex(a), ex(b))),
            RewriteRule::NotBox => (not(bx(a.clone())), dia(not(a))),
            RewriteRule::NotDia => (not(dia(a.clone())), bx(not(a))),
            RewriteRule::NotForall => (not(all(a.clone())), ex(not(a))),
            RewriteRule::NotExists => (not(ex(a.clone())), all(not(a))),
            RewriteRule::NotAnd => (not(F::and(a.clone(), b.clone())), F::or(not(a), not(b))),
            RewriteRule::NotOr => (not(F::or(a.clone(), b.clone())), F::and(not(a), not(b))),
            RewriteRule::NotImpl => (not(F::implies(a.clone(), b.clone())), F::and(a, not(b))),
            RewriteRule::ImplOr => (F::implies(a.clone(), b.clone()), F::or(not(a), b)),
            RewriteRule::IffClauses => (
                F::iff(a.clone(), b.clone()),
                F::and(F::or(not(a.clone()), b.clone()), F::or(not(b), a)),
            ),
            RewriteRule::NotIff => (
                not(F::iff(a.clone(), b.clone())),
                F::or(F::and(a.clone(), not(b.clone())), F::and(not(a), b)),
            ),
            RewriteRule::DoubleNegation => (not(not(a.clone())), a),
            RewriteRule::OrOverAnd => (
                F::or(a.clone(), F::and(b.clone(), c.clone())),
                F::and(F::or(a.clone(), b.clone()), F::or(a, c)),
            ),
            RewriteRule::AndOverOr => (
                F::and(a.clone(), F::or(b.clone(), c.clone())),
                F::or(F::and(a.clone(), b.clone()), F::and(a, c)),
            ),
        }
    }
}
