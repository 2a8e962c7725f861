//! Helpers shared by the integration tests: seeded RNGs, the proof corpus
//! and single-node formula mutations.

#![allow(dead_code)]

pub mod brute;
pub mod naive;

use std::path::PathBuf;

use folbox::frontend::ProofDoc;
use folbox::syntax::{Formula, Pred, Var};
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/proofs")
}

/// Every proof document of the bundled corpus, sorted by file name.
pub fn corpus() -> Vec<(String, ProofDoc)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable proof");
            let doc: ProofDoc = serde_json::from_str(&text).expect("well-formed proof");
            (p.file_name().unwrap().to_string_lossy().into_owned(), doc)
        })
        .collect()
}

fn nodes(a: &Formula) -> usize {
    1 + a.children().into_iter().map(nodes).sum::<usize>()
}

/// Replace the node with pre-order index `target` using `f`.
fn rewrite_at(a: &Formula, target: usize, counter: &mut usize, f: &mut dyn FnMut(&Formula) -> Formula) -> Formula {
    let here = *counter;
    *counter += 1;
    if here == target {
        return f(a);
    }
    let mut go = |b: &Formula| Box::new(rewrite_at(b, target, counter, f));
    match a {
        Formula::Atom(..) | Formula::Eq(..) => a.clone(),
        Formula::Not(b) => Formula::Not(go(b)),
        Formula::Impl(b, c) => {
            let b = go(b);
            Formula::Impl(b, go(c))
        }
        Formula::And(b, c) => {
            let b = go(b);
            Formula::And(b, go(c))
        }
        Formula::Or(b, c) => {
            let b = go(b);
            Formula::Or(b, go(c))
        }
        Formula::Iff(b, c) => {
            let b = go(b);
            Formula::Iff(b, go(c))
        }
        Formula::Forall(x, b) => Formula::Forall(x.clone(), go(b)),
        Formula::Exists(x, b) => Formula::Exists(x.clone(), go(b)),
        Formula::Box(b) => Formula::Box(go(b)),
        Formula::Dia(b) => Formula::Dia(go(b)),
    }
}

/// Change exactly one node of `a`: rename a variable or predicate to a
/// fresh one, negate a subformula, or swap a quantifier, modality or
/// binary connective for its dual.
pub fn mutate<R: Rng>(rng: &mut R, a: &Formula) -> Formula {
    loop {
        let target = rng.random_range(0..nodes(a));
        let kind = rng.random_range(0..3);
        let mut changed = true;
        let out = rewrite_at(a, target, &mut 0, &mut |n| match (kind, n) {
            (0, _) => Formula::not(n.clone()),
            (_, Formula::Atom(p, args)) if kind == 1 && !args.is_empty() => {
                let mut args = args.clone();
                let i = rng.random_range(0..args.len());
                args[i] = Var::new("fresh");
                Formula::Atom(p.clone(), args)
            }
            (_, Formula::Atom(_, args)) => Formula::Atom(Pred::new("Fresh"), args.clone()),
            (_, Formula::Eq(x, _)) => Formula::Eq(x.clone(), Var::new("fresh")),
            (_, Formula::Forall(x, b)) => Formula::Exists(x.clone(), b.clone()),
            (_, Formula::Exists(x, b)) => Formula::Forall(x.clone(), b.clone()),
            (_, Formula::Box(b)) => Formula::Dia(b.clone()),
            (_, Formula::Dia(b)) => Formula::Box(b.clone()),
            (_, Formula::And(b, c)) => Formula::Or(b.clone(), c.clone()),
            (_, Formula::Or(b, c)) => Formula::And(b.clone(), c.clone()),
            (_, Formula::Impl(b, c)) => Formula::Impl(c.clone(), b.clone()),
            (_, Formula::Iff(b, c)) => Formula::Impl(b.clone(), c.clone()),
            _ => {
                changed = false;
                n.clone()
            }
        });
        if changed && out != *a {
            return out;
        }
    }
}

pub fn pick<'a, T, R: Rng>(rng: &mut R, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty")
}
