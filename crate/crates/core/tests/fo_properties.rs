mod common;

use cgauto::fo::Formula;
use cgauto::relation::valid_convolution;
use cgauto::{Dfa, RegularRelation};
use common::fo::*;
use proptest::prelude::*;

fn arb_var() -> impl Strategy<Value = String> {
    prop::sample::select(VARS.to_vec()).prop_map(str::to_string)
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        arb_var().prop_map(|x| Formula::Atom("U".into(), vec![x])),
        (arb_var(), arb_var()).prop_map(|(x, y)| Formula::Atom("R".into(), vec![x, y])),
        (arb_var(), arb_var(), arb_var())
            .prop_map(|(x, y, z)| Formula::Atom("T".into(), vec![x, y, z])),
        (arb_var(), arb_var()).prop_map(|(x, y)| Formula::VarEqual(x, y)),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Formula::Implies(Box::new(a), Box::new(b))),
            (arb_var(), inner.clone()).prop_map(|(x, f)| Formula::Exists(x, Box::new(f))),
            (arb_var(), inner).prop_map(|(x, f)| Formula::Forall(x, Box::new(f))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn compiled_formulas_match_model_checking(seed in 0u64..40, f in arb_formula()) {
        prop_assert!(f.depth() <= 3);
        let m = random_model(seed);
        prop_assert_eq!(mismatches(&m, &f), 0, "formula {:?}", f);
    }
}

fn domain_power(d: &Dfa, n: usize) -> RegularRelation {
    let mut r = RegularRelation::unary(d);
    for _ in 1..n {
        r = r
            .cylindrify(r.arity(), &ab())
            .unwrap()
            .restrict(
                &vec![None; r.arity()]
                    .into_iter()
                    .chain([Some(&RegularRelation::unary(d))])
                    .collect::<Vec<_>>(),
            )
            .unwrap();
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quantifier_duality(seed in 0u64..40, f in arb_formula(), x in arb_var()) {
        let m = random_model(seed);
        let all = Formula::Forall(x.clone(), Box::new(f.clone()));
        let dual = Formula::Not(Box::new(Formula::Exists(x, Box::new(Formula::Not(Box::new(f))))));
        let free: Vec<String> = all.free_vars().into_iter().collect();
        let order: Vec<&str> = free.iter().map(String::as_str).collect();
        if order.is_empty() {
            prop_assert_eq!(m.structure.decide(&all).unwrap(), m.structure.decide(&dual).unwrap());
        } else {
            let a = m.structure.compile(&all, &order).unwrap();
            let b = m.structure.compile(&dual, &order).unwrap();
            prop_assert!(a.equivalent(&b));
        }
    }

    #[test]
    fn double_negation_and_validity(seed in 0u64..40, f in arb_formula()) {
        let m = random_model(seed);
        let nn = Formula::Not(Box::new(Formula::Not(Box::new(f.clone()))));
        let free: Vec<String> = f.free_vars().into_iter().collect();
        if free.is_empty() {
            prop_assert_eq!(m.structure.decide(&f).unwrap(), m.structure.decide(&nn).unwrap());
            return Ok(());
        }
        let order: Vec<&str> = free.iter().map(String::as_str).collect();
        let a = m.structure.compile(&f, &order).unwrap();
        let b = m.structure.compile(&nn, &order).unwrap();
        prop_assert!(a.equivalent(&b));
        let bad = a.dfa().intersect(&valid_convolution(&ab(), a.arity()).unwrap().complement()).unwrap();
        prop_assert!(bad.is_empty());
        prop_assert!(a.is_subset_of(&domain_power(m.structure.domain_dfa(), a.arity())).unwrap());
    }
}
