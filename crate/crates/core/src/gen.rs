//! Random formulas, structures and axiom instances for property tests and
//! benchmarks. Everything is driven by a caller-supplied RNG so runs are
//! reproducible from a seed.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::kripke::Structure;
use crate::syntax::{Formula, PredSym, Var};

#[derive(Clone, Debug)]
pub struct FormulaConfig {
    pub preds: Vec<PredSym>,
    pub vars: Vec<Var>,
    /// Maximum depth; atoms have depth 1.
    pub max_depth: usize,
    pub modal: bool,
    pub identity: bool,
    /// Also use `&`, `|`, `<->`, `exists`, `<>`.
    pub derived: bool,
}

impl FormulaConfig {
    /// Unary predicates `P`, `Q`, ... and variables `x`, `y`, `z`, ...
    pub fn monadic(preds: usize, vars: usize, max_depth: usize) -> Self {
        FormulaConfig {
            preds: ["P", "Q", "R", "S"].iter().take(preds).map(|p| PredSym::new(p, 1)).collect(),
            vars: ["x", "y", "z", "u", "v"].iter().take(vars).map(Var::new).collect(),
            max_depth,
            modal: true,
            identity: true,
            derived: true,
        }
    }

    pub fn box_free(mut self) -> Self {
        self.modal = false;
        self
    }
}

pub fn atom<R: Rng>(rng: &mut R, cfg: &FormulaConfig) -> Formula {
    let use_eq = cfg.identity && (cfg.preds.is_empty() || rng.random_bool(0.25));
    if use_eq {
        let x = cfg.vars.choose(rng).expect("at least one variable").clone();
        let y = cfg.vars.choose(rng).expect("at least one variable").clone();
        return Formula::Eq(x, y);
    }
    let p = cfg.preds.choose(rng).expect("a predicate or identity").clone();
    let args = (0..p.arity)
        .map(|_| cfg.vars.choose(rng).expect("at least one variable").clone())
        .collect();
    Formula::Atom(p.name, args)
}

pub fn formula<R: Rng>(rng: &mut R, cfg: &FormulaConfig) -> Formula {
    formula_at(rng, cfg, cfg.max_depth)
}

fn formula_at<R: Rng>(rng: &mut R, cfg: &FormulaConfig, depth: usize) -> Formula {
    if depth <= 1 || rng.random_bool(0.2) {
        return atom(rng, cfg);
    }
    let d = depth - 1;
    let var = |rng: &mut R| cfg.vars.choose(rng).expect("at least one variable").clone();
    let kinds: usize = if cfg.derived { 11 } else { 5 };
    loop {
        let k = rng.random_range(0..kinds);
        let modal_kind = matches!(k, 4 | 10);
        if modal_kind && !cfg.modal {
            continue;
        }
        return match k {
            0 => Formula::not(formula_at(rng, cfg, d)),
            1 => Formula::implies(formula_at(rng, cfg, d), formula_at(rng, cfg, d)),
            2 => Formula::Forall(var(rng), Box::new(formula_at(rng, cfg, d))),
            3 => Formula::not(formula_at(rng, cfg, d)),
            4 => Formula::boxed(formula_at(rng, cfg, d)),
            5 => Formula::and(formula_at(rng, cfg, d), formula_at(rng, cfg, d)),
            6 => Formula::or(formula_at(rng, cfg, d), formula_at(rng, cfg, d)),
            7 => Formula::iff(formula_at(rng, cfg, d), formula_at(rng, cfg, d)),
            8 => Formula::Exists(var(rng), Box::new(formula_at(rng, cfg, d))),
            9 => Formula::implies(formula_at(rng, cfg, d), formula_at(rng, cfg, d)),
            _ => Formula::dia(formula_at(rng, cfg, d)),
        };
    }
}

#[derive(Clone, Debug)]
pub struct StructureConfig {
    pub max_worlds: usize,
    pub max_elements: usize,
    pub preds: Vec<PredSym>,
    /// Probability that a given tuple is in a predicate's extension.
    pub density: f64,
}

impl StructureConfig {
    pub fn new(max_worlds: usize, max_elements: usize, preds: Vec<PredSym>) -> Self {
        StructureConfig { max_worlds, max_elements, preds, density: 0.5 }
    }

    /// Covers every predicate occurring in `formulas`.
    pub fn for_formulas<'a>(
        max_worlds: usize,
        max_elements: usize,
        formulas: impl IntoIterator<Item = &'a Formula>,
    ) -> Self {
        let preds: BTreeSet<PredSym> = formulas.into_iter().flat_map(Formula::predicates).collect();
        Self::new(max_worlds, max_elements, preds.into_iter().collect())
    }
}

/// Worlds `w0..`, elements `a`, `b`, ... shared between worlds; each world
/// gets a random non-empty subset as its domain.
pub fn structure<R: Rng>(rng: &mut R, cfg: &StructureConfig) -> Structure {
    const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let worlds = rng.random_range(1..=cfg.max_worlds.max(1));
    let elements = cfg.max_elements.clamp(1, NAMES.len());
    let mut b = Structure::builder();
    for p in &cfg.preds {
        b.declare(p.clone());
    }
    for w in 0..worlds {
        let mut domain: Vec<usize> = (0..elements).filter(|_| rng.random_bool(0.6)).collect();
        if domain.is_empty() {
            domain.push(rng.random_range(0..elements));
        }
        let wname = format!("w{w}");
        b.add_world(wname.clone(), domain.iter().map(|&e| NAMES[e].to_string()).collect());
        for p in &cfg.preds {
            for_each_tuple(&domain, p.arity, &mut |t| {
                if rng.random_bool(cfg.density) {
                    b.add_fact(p.clone(), wname.clone(), t.iter().map(|&e| NAMES[e].to_string()).collect());
                }
            });
        }
    }
    b.build().expect("generated structures are well-formed")
}

fn for_each_tuple(domain: &[usize], arity: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(domain: &[usize], arity: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if acc.len() == arity {
            f(acc);
            return;
        }
        for &e in domain {
            acc.push(e);
            go(domain, arity, acc, f);
            acc.pop();
        }
    }
    go(domain, arity, &mut Vec::new(), f)
}

/// Axiom schemas other than the one that needs a first-order side
/// condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schema {
    K,
    T,
    Five,
    All1,
    All2,
    Id,
    Eq,
    Mix,
}

impl Schema {
    pub const ALL: [Schema; 8] =
        [Schema::K, Schema::T, Schema::Five, Schema::All1, Schema::All2, Schema::Id, Schema::Eq, Schema::Mix];
}

/// A random instance of `schema` whose metavariables are filled with
/// formulas drawn from `cfg`.
pub fn schema_instance<R: Rng>(rng: &mut R, schema: Schema, cfg: &FormulaConfig) -> Formula {
    let var = |rng: &mut R| cfg.vars.choose(rng).expect("at least one variable").clone();
    match schema {
        Schema::K => {
            let (a, b) = (formula(rng, cfg), formula(rng, cfg));
            Formula::implies(
                Formula::boxed(Formula::implies(a.clone(), b.clone())),
                Formula::implies(Formula::boxed(a), Formula::boxed(b)),
            )
        }
        Schema::T => {
            let a = formula(rng, cfg);
            Formula::implies(Formula::boxed(a.clone()), a)
        }
        Schema::Five => {
            let a = formula(rng, cfg);
            let nb = Formula::not(Formula::boxed(a));
            Formula::implies(nb.clone(), Formula::boxed(nb))
        }
        Schema::All1 => loop {
            let (a, x, y) = (formula(rng, cfg), var(rng), var(rng));
            if let Ok(ay) = a.substitute(&x, &y) {
                return Formula::implies(Formula::Forall(x, Box::new(a)), ay);
            }
        },
        Schema::All2 => {
            let mut a = formula(rng, cfg);
            let fv = a.forallbox_free_vars();
            let candidates: Vec<&Var> = cfg.vars.iter().filter(|v| !fv.contains(*v)).collect();
            let x = match candidates.choose(rng) {
                Some(x) => (*x).clone(),
                None => {
                    a = Formula::boxed(a);
                    var(rng)
                }
            };
            let b = formula(rng, cfg);
            Formula::implies(
                Formula::Forall(x.clone(), Box::new(Formula::implies(a.clone(), b.clone()))),
                Formula::implies(a, Formula::Forall(x, Box::new(b))),
            )
        }
        Schema::Id => {
            let x = var(rng);
            Formula::Eq(x.clone(), x)
        }
        Schema::Eq => {
            let free_cfg = cfg.clone().box_free();
            loop {
                let (a, x, y) = (formula(rng, &free_cfg), var(rng), var(rng));
                let n = a.replaceable_count(&x);
                let subset: BTreeSet<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
                if let Ok(ay) = a.substitute_occurrences(&x, &y, &subset) {
                    return Formula::implies(Formula::and(Formula::Eq(x, y), a), ay);
                }
            }
        }
        Schema::Mix => {
            let (a, x) = (formula(rng, cfg), var(rng));
            Formula::implies(Formula::boxed(a.clone()), Formula::Forall(x, Box::new(a)))
        }
    }
}
