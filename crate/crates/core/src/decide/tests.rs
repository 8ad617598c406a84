use super::*;
use crate::groups::{bs1n, free_group, heisenberg, zn};
use crate::presburger::{encode_int, presburger_structure};

fn w(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

#[test]
fn shells_do_not_depend_on_mode() {
    let p = heisenberg(3).unwrap();
    let a = ball_shells(&p, 3, Parallelism::Sequential).unwrap();
    let b = ball_shells(&p, 3, Parallelism::Parallel).unwrap();
    assert_eq!(a, b);
    let words: Vec<GroupWord> = ["A B", "C^3 A^-2", "", "B^-1 C A"]
        .iter()
        .map(|s| w(s))
        .collect();
    assert_eq!(
        canonical_reps(&p, &words, Parallelism::Sequential).unwrap(),
        canonical_reps(&p, &words, Parallelism::Parallel).unwrap()
    );
}

#[test]
fn free_group_profile() {
    let f = free_group(2).unwrap();
    let g = growth_profile(&f, 6).unwrap();
    let expected: Vec<usize> = (0..=6u32).map(|n| 2 * 3usize.pow(n) - 1).collect();
    assert_eq!(g.sizes, expected);
    assert!(g.within_bound());
    assert!(g.nondecreasing());
    assert!(cgl_violations(&f, 4).unwrap().is_empty());
}

#[test]
fn constant_growth_on_samples() {
    for p in [zn(2).unwrap(), heisenberg(3).unwrap(), bs1n(2).unwrap()] {
        assert!(cgl_violations(&p, 4).unwrap().is_empty(), "{}", p.meta());
        assert!(growth_profile(&p, 4).unwrap().within_bound());
    }
}

#[test]
fn traces_and_identities() {
    let p = zn(1).unwrap();
    let t = eval_trace(&p, &w("e1 e1 e1^-1")).unwrap();
    assert_eq!(t.steps, vec![encode_int(1), encode_int(2), encode_int(1)]);
    assert!(t.transitions > 0);
    assert!(is_identity(&p, &w("e1 e1^-1")).unwrap());
    assert!(!is_identity(&p, &w("e1")).unwrap());
    assert!(words_equal(&p, &w("e1^3"), &w("e1 e1^2")).unwrap());
    assert!(canonical_rep(&p, &w("x")).is_err());
    assert!(right_multiply(&p, &Word(vec![0, 0]), &w("e1")).is_err());
}

#[test]
fn relator_errors_and_witnesses() {
    let p = heisenberg(3).unwrap();
    assert!(relator_holds(&p, &GroupWord::empty()).is_err());
    let u = relator_counterexample(&p, &w("A C A^-1 C^-1"))
        .unwrap()
        .expect("not a relator");
    assert_ne!(right_multiply(&p, &u, &w("A C A^-1 C^-1")).unwrap(), u);
    assert!(relator_counterexample(&p, &w("B A B^-1 A^-1"))
        .unwrap()
        .is_none());
}

#[test]
fn conjugacy_needs_left_graphs() {
    let p = bs1n(2).unwrap();
    assert!(matches!(
        conjugators(&p, &w("a"), &w("b")),
        Err(Error::NotBiautomatic)
    ));
    let z = zn(2).unwrap();
    assert_eq!(
        conjugate(&z, &w("e1"), &w("e1")).unwrap(),
        Some(z.identity().clone())
    );
    assert_eq!(conjugate(&z, &w("e1"), &w("e2")).unwrap(), None);
}

#[test]
fn monoid_growth_on_addition() {
    let s = presburger_structure();
    let xs: Vec<Word> = (1..=16).map(|k| encode_int(k * 37 - 200)).collect();
    let r = monoid_growth_bound_check(&s, "Add", &xs).unwrap();
    let total: i64 = (1..=16).map(|k| k * 37 - 200).sum();
    assert_eq!(r.value, encode_int(total));
    assert_eq!(r.depth, 4);
    assert!(r.holds());
    assert!(monoid_growth_bound_check(&s, "Add", &[]).is_err());
    assert!(monoid_growth_bound_check(&s, "One", &xs).is_err());
}
