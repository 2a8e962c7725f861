mod common;

use folbox::frontend::{parse_formula, print_formula};
use folbox::gen::{self, FormulaConfig, StructureConfig};
use folbox::syntax::{Formula, Var};
use proptest::prelude::*;

fn random_formula(seed: u64, cfg: &FormulaConfig) -> Formula {
    gen::formula(&mut common::rng(seed), cfg)
}

fn mixed_config() -> FormulaConfig {
    let mut cfg = FormulaConfig::monadic(2, 3, 6);
    cfg.preds.push(folbox::PredSym::new("R", 2));
    cfg.preds.push(folbox::PredSym::new("A", 0));
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let a = random_formula(seed, &mixed_config());
        let text = print_formula(&a);
        let back = parse_formula(&text).unwrap();
        prop_assert_eq!(&back, &a, "{}", text);
        prop_assert_eq!(print_formula(&back), text);
    }

    #[test]
    fn substituting_a_variable_for_itself(seed in any::<u64>()) {
        let a = random_formula(seed, &mixed_config());
        for x in a.all_vars() {
            prop_assert_eq!(a.substitute(&x, &x).unwrap(), a.clone());
        }
    }

    #[test]
    fn boxed_formulas_have_no_free_variables(seed in any::<u64>()) {
        let a = random_formula(seed, &mixed_config());
        prop_assert!(Formula::boxed(a.clone()).forallbox_free_vars().is_empty());
        prop_assert!(Formula::dia(a).forallbox_free_vars().is_empty());
    }

    #[test]
    fn substitution_removes_the_variable(seed in any::<u64>()) {
        let a = random_formula(seed, &mixed_config());
        let (x, y) = (Var::new("x"), Var::new("fresh"));
        let b = a.substitute(&x, &y).unwrap();
        prop_assert!(!b.forallbox_free_vars().contains(&x));
        prop_assert_eq!(b.replaceable_count(&y), a.replaceable_count(&x));
        // a fresh target variable can always be put back
        prop_assert_eq!(b.substitute(&y, &x).unwrap(), a);
    }

    #[test]
    fn lowering_preserves_truth(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let cfg = FormulaConfig::monadic(2, 2, 5);
        let a = gen::formula(&mut rng, &cfg);
        let low = a.lower();
        prop_assert!(primitive(&low));
        let s = gen::structure(&mut rng, &StructureConfig::for_formulas(3, 3, [&a]));
        prop_assert!(s.valid_in(&Formula::iff(a, low)));
    }

    #[test]
    fn skeleton_recomposes(seed in any::<u64>()) {
        let a = random_formula(seed, &mixed_config()).lower();
        prop_assert_eq!(a.skeleton().recompose(), a);
    }
}

fn primitive(a: &Formula) -> bool {
    !matches!(a, Formula::And(..) | Formula::Or(..) | Formula::Iff(..) | Formula::Exists(..) | Formula::Dia(..))
        && a.children().into_iter().all(primitive)
}

#[test]
fn forallbox_free_variables_examples() {
    let f = |s: &str| parse_formula(s).unwrap();
    let names = |a: &Formula| a.forallbox_free_vars().iter().map(|v| v.name().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&f("~[]P(x) & exists x. P(x)")), Vec::<String>::new());
    assert_eq!(names(&f("P(x) & []Q(y)")), ["x"]);
    assert_eq!(names(&f("forall x. R(x, y) | <>(z = z)")), ["y"]);
}

#[test]
fn capture_is_reported() {
    let a = parse_formula("forall y. P(x)").unwrap();
    assert!(a.substitute(&Var::new("x"), &Var::new("y")).is_err());
}
