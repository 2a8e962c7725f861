//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every random choice is seeded.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::brute::{self, Points, Table};
use common::naive;
use folbox::decider::{box_status, decide_with, BoxStatus};
use folbox::frontend::{parse_formula, print_formula};
use folbox::gen::{self, FormulaConfig, Schema, StructureConfig};
use folbox::kripke::{Structure, Valuation, WorldId};
use folbox::normalform::{recognize, to_conjunctive_form, RewriteRule};
use folbox::oracle::{self, Oracle, Status};
use folbox::proofcheck::{accepted, check_proof, Derivation};
use folbox::syntax::{Formula, PredSym, Var};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{what} took {t:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn f(s: &str) -> Formula {
    parse_formula(s).expect("fixed formula parses")
}

fn thesis(oracle: &Oracle, a: &Formula) -> bool {
    decide_with(oracle, a).expect("fragment formula").is_thesis()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::new();
    let theses = [
        "[]P(x) -> forall x. P(x)",
        "~[](x = y)",
        "~[]~(x = y)",
        "~[]P(x)",
        "~[]~P(x)",
        "<>(exists x. P(x)) -> <>P(y)",
        "(forall x. []P(x)) -> []P(y)",
        "(forall x. []P(x)) -> []forall x. P(x)",
        "([]forall x. P(x)) -> forall x. []P(x)",
    ];
    let non_theses = ["[]P(x)", "[](x = y)", "[]~(x = y)", "[]exists x. exists y. ~(x = y)"];
    for s in theses {
        if !thesis(&oracle, &f(s)) {
            return Err(format!("{s} decided non-thesis"));
        }
    }
    for s in non_theses {
        if thesis(&oracle, &f(s)) {
            return Err(format!("{s} decided thesis"));
        }
    }
    // Domains are non-empty, so exists x. exists y. x = y is first-order
    // valid and its box is a thesis by RG. Confirm on models as well.
    let some = f("[]exists x. exists y. x = y");
    if !thesis(&oracle, &some) {
        return Err("[]exists x. exists y. x = y decided non-thesis".into());
    }
    let mut rng = common::rng(101);
    let cfg = StructureConfig::new(4, 4, vec![]);
    if !(0..200).all(|_| gen::structure(&mut rng, &cfg).valid_in(&some)) {
        return Err("[]exists x. exists y. x = y failed in a structure".into());
    }
    within(start, Duration::from_secs(5), "criterion 1")?;
    Ok(format!(
        "{} theses and {} non-theses exact; []exists x. exists y. x = y decided thesis \
         (valid in every structure, so not a non-thesis) in {:.2?}",
        theses.len(),
        non_theses.len(),
        start.elapsed()
    ))
}

fn soundness_config() -> (FormulaConfig, StructureConfig) {
    let mut fcfg = FormulaConfig::monadic(2, 3, 3);
    fcfg.preds.push(PredSym::new("R", 2));
    let scfg = StructureConfig::new(4, 4, fcfg.preds.clone());
    (fcfg, scfg)
}

/// 50 structures from the generator criterion 2 uses.
fn class_c_pool() -> Vec<Structure> {
    let (_, scfg) = soundness_config();
    let mut rng = common::rng(202);
    (0..50).map(|_| gen::structure(&mut rng, &scfg)).collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (fcfg, scfg) = soundness_config();
    let mut rng = common::rng(201);
    for i in 0..500 {
        let schema = Schema::ALL[i % Schema::ALL.len()];
        let a = gen::schema_instance(&mut rng, schema, &fcfg);
        for _ in 0..50 {
            let s = gen::structure(&mut rng, &scfg);
            if !s.valid_in(&a) {
                return Err(format!("{schema:?} instance {} fails", print_formula(&a)));
            }
        }
    }
    within(start, Duration::from_secs(60), "criterion 2")?;
    Ok(format!("500 instances x 50 structures valid in {:.2?}", start.elapsed()))
}

fn modalities_outside_quantifiers(a: &Formula) -> bool {
    match a {
        Formula::Forall(_, b) | Formula::Exists(_, b) => b.box_free(),
        _ => a.children().into_iter().all(modalities_outside_quantifiers),
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cfg = FormulaConfig::monadic(2, 3, 5);
    let mut rng = common::rng(301);
    for _ in 0..1000 {
        let a = gen::formula(&mut rng, &cfg);
        let form = to_conjunctive_form(&a).to_formula();
        let shown = || print_formula(&a);
        if recognize(&form).is_err() {
            return Err(format!("output for {} not recognized", shown()));
        }
        if form.modal_depth() > 1 || !modalities_outside_quantifiers(&form) {
            return Err(format!("output for {} is not flat", shown()));
        }
        let bicond = Formula::iff(a.clone(), form);
        let scfg = StructureConfig::for_formulas(4, 4, [&a]);
        for _ in 0..20 {
            if !gen::structure(&mut rng, &scfg).valid_in(&bicond) {
                return Err(format!("not equivalent: {}", shown()));
            }
        }
    }
    Ok(format!("1000 formulas x 20 structures in {:.2?}", start.elapsed()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut fcfg = FormulaConfig::monadic(2, 3, 3);
    fcfg.preds.push(PredSym::new("R", 2));
    let scfg = StructureConfig::new(4, 4, fcfg.preds.clone());
    let mut rng = common::rng(401);
    for rule in RewriteRule::ALL {
        for _ in 0..100 {
            let parts: Vec<Formula> = (0..3).map(|_| gen::formula(&mut rng, &fcfg)).collect();
            let x: &Var = common::pick(&mut rng, &fcfg.vars);
            let inst = rule.instance(&parts[0], &parts[1], &parts[2], x);
            for _ in 0..20 {
                if !gen::structure(&mut rng, &scfg).valid_in(&inst) {
                    return Err(format!("{}: {}", rule.name(), print_formula(&inst)));
                }
            }
        }
    }
    Ok(format!(
        "{} rules x 100 instances x 20 structures in {:.2?}",
        RewriteRule::ALL.len(),
        start.elapsed()
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let pts = Points::new();
    let atoms = [Formula::atom("P", &["x"]), Formula::atom("P", &["y"]), Formula::eq("x", "y")];
    let base: Vec<(Formula, Table)> = atoms.iter().map(|a| (a.clone(), brute::atom_table(&pts, a))).collect();
    let (x, y) = (Var::new("x"), Var::new("y"));
    let mut level = base.clone();
    for _ in 1..3 {
        let mut next = base.clone();
        for (a, t) in &level {
            next.push((Formula::not(a.clone()), brute::not(t)));
            next.push((Formula::Forall(x.clone(), Box::new(a.clone())), brute::forall(&pts, t, true)));
            next.push((Formula::Forall(y.clone(), Box::new(a.clone())), brute::forall(&pts, t, false)));
        }
        for (a, s) in &level {
            for (b, t) in &level {
                next.push((Formula::implies(a.clone(), b.clone()), brute::implies(s, t)));
            }
        }
        level = next;
    }
    // depth 4 is checked on the fly instead of stored
    let mut checked = 0usize;
    let mut theses = 0usize;
    let mut check = |a: Formula, t: Table| -> Result<(), String> {
        let expected = t.all(&pts);
        let got = oracle::is_fol_thesis(&a).map_err(|e| e.to_string())?.status == Status::Thesis;
        if got != expected {
            return Err(format!("disagreement on {}: oracle {got}, tables {expected}", print_formula(&a)));
        }
        checked += 1;
        theses += usize::from(got);
        Ok(())
    };
    for (a, t) in &base {
        check(a.clone(), t.clone())?;
    }
    for (a, t) in &level {
        check(Formula::not(a.clone()), brute::not(t))?;
        check(Formula::Forall(x.clone(), Box::new(a.clone())), brute::forall(&pts, t, true))?;
        check(Formula::Forall(y.clone(), Box::new(a.clone())), brute::forall(&pts, t, false))?;
    }
    for (a, s) in &level {
        for (b, t) in &level {
            check(Formula::implies(a.clone(), b.clone()), brute::implies(s, t))?;
        }
    }
    Ok(format!(
        "{checked} formulas, {theses} theses, models up to size {} in {:.2?}",
        brute::MAX_SIZE,
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let pool = class_c_pool();
    let cfg = FormulaConfig::monadic(2, 3, 4);
    let mut rng = common::rng(601);
    let oracle = Oracle::new();
    let (mut yes, mut no, mut via_possibility) = (0, 0, 0);
    for _ in 0..200 {
        let a = gen::formula(&mut rng, &cfg);
        let d = decide_with(&oracle, &a).map_err(|e| e.to_string())?;
        let shown = print_formula(&a);
        if d.is_thesis() {
            yes += 1;
            let star = d.relative_universal();
            if !star.valid_in(&a) {
                return Err(format!("thesis {shown} fails in its relative-universal structure"));
            }
            let possibility = d.needs_possibility();
            via_possibility += usize::from(possibility);
            for s in &pool {
                let ok = if possibility {
                    Structure::disjoint_union(&[(s, "r_"), (&star, "")]).valid_in(&a)
                } else {
                    s.valid_in(&a)
                };
                if !ok {
                    return Err(format!("thesis {shown} fails in a pool structure"));
                }
            }
        } else {
            no += 1;
            let c = d.countermodel().ok_or_else(|| format!("no countermodel for {shown}"))?;
            if c.satisfies(&a) != Ok(false) {
                return Err(format!("countermodel for {shown} does not falsify it"));
            }
        }
    }
    Ok(format!(
        "{yes} theses ({via_possibility} via <>, checked on pool + relative-universal union), \
         {no} non-theses refuted, in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cfg = FormulaConfig::monadic(2, 2, 4);
    let small = FormulaConfig::monadic(2, 2, 2);
    let mut rng = common::rng(701);
    let oracle = Oracle::new();
    let mut applied = 0;
    for i in 0..300 {
        let a = if i % 2 == 0 {
            gen::schema_instance(&mut rng, Schema::ALL[i / 2 % Schema::ALL.len()], &small)
        } else {
            gen::formula(&mut rng, &cfg)
        };
        let b = match i % 3 {
            0 => gen::formula(&mut rng, &cfg),
            1 => Formula::or(a.clone(), gen::formula(&mut rng, &cfg)),
            _ => Formula::implies(gen::formula(&mut rng, &cfg), a.clone()),
        };
        let (ta, tab, tb) =
            (thesis(&oracle, &a), thesis(&oracle, &Formula::implies(a.clone(), b.clone())), thesis(&oracle, &b));
        if ta && tab {
            applied += 1;
            if !tb {
                return Err(format!("MP closure fails for {} and {}", print_formula(&a), print_formula(&b)));
            }
        }
        for c in [&a, &b] {
            if thesis(&oracle, c) && thesis(&oracle, &Formula::not(c.clone())) {
                return Err(format!("both {} and its negation are theses", print_formula(c)));
            }
        }
    }
    for _ in 0..300 {
        let a = gen::formula(&mut rng, &cfg);
        let expected = if thesis(&oracle, &a) { BoxStatus::BoxThesis } else { BoxStatus::NegBoxThesis };
        let got = box_status(&a).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("box status of {} is {got:?}", print_formula(&a)));
        }
    }
    Ok(format!(
        "300 pairs ({applied} with both premises theses), 300 box-status checks in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let corpus: Vec<(String, Derivation)> = common::corpus()
        .into_iter()
        .map(|(n, doc)| Derivation::from_doc(&doc).map(|d| (n.clone(), d)).map_err(|e| format!("{n}: {e}")))
        .collect::<Result<_, _>>()?;
    if corpus.len() != 50 {
        return Err(format!("corpus has {} derivations", corpus.len()));
    }
    let generalization = ["x = x", "[](x = x)", "[](x = x) -> forall x. x = x", "forall x. x = x"];
    let has_generalization = corpus.iter().any(|(_, d)| {
        d.lines().iter().map(|l| print_formula(&l.formula)).eq(generalization.iter().map(|s| s.to_string()))
    });
    if !has_generalization {
        return Err("corpus lacks the RG + MIX generalization derivation".into());
    }
    for (name, d) in &corpus {
        let v = check_proof(d);
        if let Some(bad) = v.iter().find(|l| !l.ok) {
            return Err(format!("{name}: line {} rejected: {}", bad.id, bad.reason));
        }
    }
    let mut rng = common::rng(801);
    for _ in 0..500 {
        let (name, d) = common::pick(&mut rng, &corpus);
        let mut lines = d.lines().to_vec();
        let i = rng.random_range(0..lines.len());
        lines[i].formula = common::mutate(&mut rng, &lines[i].formula);
        let m = Derivation::new(None, lines.clone()).map_err(|e| e.to_string())?;
        if accepted(&check_proof(&m)) {
            return Err(format!("{name}: mutation {} accepted", print_formula(&lines[i].formula)));
        }
    }
    let oracle = Oracle::new();
    let mut in_fragment = 0;
    for (name, d) in &corpus {
        let c = d.conclusion();
        if c.predicates().iter().all(|p| p.arity <= 1) {
            in_fragment += 1;
            if !thesis(&oracle, c) {
                return Err(format!("{name}: decider rejects the conclusion"));
            }
        }
    }
    Ok(format!(
        "50 derivations accepted, 500 mutations rejected, {in_fragment} fragment conclusions decided thesis in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut fcfg = FormulaConfig::monadic(2, 3, 5);
    fcfg.preds.push(PredSym::new("R", 2));
    let scfg = StructureConfig::new(3, 3, fcfg.preds.clone());
    let mut rng = common::rng(901);
    let random_valuation = |rng: &mut rand::rngs::StdRng, s: &Structure| {
        let mut v = Valuation::new();
        for w in s.worlds() {
            for x in &fcfg.vars {
                let d = s.domain(w);
                v.set(w, x.clone(), d[rng.random_range(0..d.len())]);
            }
        }
        v
    };
    for _ in 0..1000 {
        let a = gen::formula(&mut rng, &fcfg);
        let s = gen::structure(&mut rng, &scfg);
        let v1 = random_valuation(&mut rng, &s);
        let w = WorldId(rng.random_range(0..s.world_count()));
        // locality: only the values of the ∀□-free variables at w matter
        let mut v2 = random_valuation(&mut rng, &s);
        for x in a.forallbox_free_vars() {
            v2.set(w, x.clone(), v1.value(&s, w, &x));
        }
        let r1 = s.satisfies(&v1, w, &a).map_err(|e| e.to_string())?;
        if r1 != s.satisfies(&v2, w, &a).map_err(|e| e.to_string())? {
            return Err(format!("locality fails for {}", print_formula(&a)));
        }
        // rigidity: []A and <>A have one truth value per structure
        let w2 = WorldId(rng.random_range(0..s.world_count()));
        for m in [Formula::boxed(a.clone()), Formula::dia(a.clone())] {
            let here = s.satisfies(&v1, w, &m).map_err(|e| e.to_string())?;
            if here != s.satisfies(&v2, w2, &m).map_err(|e| e.to_string())? {
                return Err(format!("rigidity fails for {}", print_formula(&m)));
            }
        }
        // the evaluator agrees with the satisfaction clauses read literally
        if a.modal_depth() <= 1 && s.world_count() <= 2 {
            let vars = fcfg.vars.clone();
            let mut total = naive::Total::new();
            for w in s.worlds() {
                for x in &vars {
                    total.insert((w, x.clone()), v1.value(&s, w, x));
                }
            }
            if naive::eval(&s, &vars, &total, w, &a) != r1 {
                return Err(format!("evaluator disagrees with the clauses on {}", print_formula(&a)));
            }
        }
    }
    Ok(format!("1000 trials in {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("listed theses and non-theses", criterion_1),
        ("axiom soundness", criterion_2),
        ("conjunctive form equivalence", criterion_3),
        ("rewrite rules", criterion_4),
        ("oracle exactness", criterion_5),
        ("decider and model checker agree", criterion_6),
        ("decider closure", criterion_7),
        ("proof checker", criterion_8),
        ("locality and rigidity", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &n.to_string()) {
            continue;
        }
        match run() {
            Ok(detail) => println!("criterion {n} ({name}): PASS: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
