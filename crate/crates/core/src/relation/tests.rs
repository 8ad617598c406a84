use super::*;
use crate::fa::Limit;
use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::plain(&["a", "b"]).unwrap()
}

fn w(s: &str) -> Word {
    ab().parse_word(s).unwrap()
}

fn words(max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max {
        let mut next = Vec::new();
        for u in &layer {
            for s in 0..2 {
                let mut v = u.0.clone();
                v.push(s);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn check_binary(r: &RegularRelation, max: usize, oracle: impl Fn(&Word, &Word) -> bool) {
    let ws = words(max);
    for u in &ws {
        for v in &ws {
            assert_eq!(
                r.contains(&[u.clone(), v.clone()]).unwrap(),
                oracle(u, v),
                "({}, {})",
                ab().render(u),
                ab().render(v)
            );
        }
    }
}

fn is_prefix(u: &Word, v: &Word) -> bool {
    v.0.starts_with(&u.0)
}

#[test]
fn convolution_example() {
    let a = ab();
    let tuple = [w("aabaaab"), w("bbabbabbb"), w("aab")];
    let c = convolve(&a, &tuple).unwrap();
    assert_eq!(c.len(), 9);
    let shape = Shape::new(&[a.clone(), a.clone(), a.clone()]).unwrap();
    assert_eq!(shape.alphabet().name(c.0[0]), "(a,b,a)");
    assert_eq!(shape.alphabet().name(c.0[3]), "(a,b,#)");
    assert_eq!(shape.alphabet().name(c.0[8]), "(#,b,#)");
    assert_eq!(deconvolve(&a, 3, &c).unwrap(), tuple.to_vec());
    assert_eq!(convolve(&a, &[w(""), w("")]).unwrap(), Word::empty());
    let c2 = convolve(&a, &[w("a"), w("bb")]).unwrap();
    assert_eq!(a.power(2).unwrap().render(&c2), "(a,b) (#,b)");
}

#[test]
fn deconvolve_rejects_resumed_track() {
    let a = ab();
    let pa = a.power(2).unwrap();
    let bad = pa.parse_word("(a,#) (a,b)").unwrap();
    assert!(matches!(
        deconvolve(&a, 2, &bad),
        Err(Error::InvalidConvolution(_))
    ));
    assert_eq!(
        deconvolve(&a, 2, &Word::empty()).unwrap(),
        vec![Word::empty(), Word::empty()]
    );
}

#[test]
fn valid_convolution_language() {
    let a = ab();
    let v1 = valid_convolution(&a, 1).unwrap();
    assert!(v1.accepts(&w("abba")).unwrap());
    let v2 = valid_convolution(&a, 2).unwrap();
    let pa = a.power(2).unwrap();
    assert!(v2.accepts(&pa.parse_word("(a,b) (a,#)").unwrap()).unwrap());
    assert!(!v2.accepts(&pa.parse_word("(#,b) (a,#)").unwrap()).unwrap());
}

#[test]
fn orders_match_comparators() {
    let a = ab();
    check_binary(&prefix_order(&a).unwrap(), 4, is_prefix);
    check_binary(&lex_order(&a).unwrap(), 4, |u, v| u.0 <= v.0);
    check_binary(&llex_order(&a).unwrap(), 4, |u, v| {
        crate::alphabet::llex_cmp(&u.0, &v.0).is_le()
    });
    check_binary(&equal_length(&a).unwrap(), 4, |u, v| u.len() == v.len());
}

#[test]
fn boolean_operations_on_relations() {
    let a = ab();
    let lex = lex_order(&a).unwrap();
    let rev = lex.transpose().unwrap();
    let eq = lex.intersect(&rev).unwrap();
    check_binary(&eq, 4, |u, v| u == v);
    let pre = prefix_order(&a).unwrap();
    let eqr = RegularRelation::equality(&Dfa::universal(a.clone())).unwrap();
    check_binary(&pre.difference(&eqr).unwrap(), 4, |u, v| {
        is_prefix(u, v) && u != v
    });
    let c = pre.complement().unwrap();
    check_binary(&c, 4, |u, v| !is_prefix(u, v));
    assert!(c.complement().unwrap().equivalent(&pre));
    assert!(c.is_valid());
    check_binary(&rev, 4, |u, v| is_prefix(v, u) || v.0 <= u.0);
    check_binary(&pre.transpose().unwrap(), 4, |u, v| is_prefix(v, u));
}

#[test]
fn cylindrify_and_project() {
    let a = ab();
    let all1 = RegularRelation::universal(std::slice::from_ref(&a)).unwrap();
    let all2 = all1.cylindrify(0, &a).unwrap();
    assert!(all2.equivalent(&RegularRelation::universal(&[a.clone(), a.clone()]).unwrap()));
    let eq = RegularRelation::equality(&Dfa::universal(a.clone())).unwrap();
    let c = eq.cylindrify(2, &a).unwrap();
    assert!(c.contains(&[w("a"), w("a"), w("bbbb")]).unwrap());
    assert!(c.project(2).unwrap().equivalent(&eq));
    assert!(eq.project(1).unwrap().equivalent(&all1));
    let pre = prefix_order(&a).unwrap();
    assert!(pre.project(1).unwrap().equivalent(&all1));
    // {(w, wa)} projected onto the second track is Σ*a.
    let append_a = machine(
        &[a.clone(), a.clone()],
        0u8,
        |s, c| match (s, c[0], c[1]) {
            (0, Some(x), Some(y)) if x == y => Some(0),
            (0, None, Some(0)) => Some(1),
            _ => None,
        },
        |s, _| *s == 1,
    )
    .unwrap();
    let ends_a = append_a.project(0).unwrap();
    for u in words(5) {
        assert_eq!(
            ends_a.contains(std::slice::from_ref(&u)).unwrap(),
            u.0.last() == Some(&0)
        );
    }
}

#[test]
fn compose_appends() {
    let a = ab();
    let append = |sym: u32| {
        machine(
            &[a.clone(), a.clone()],
            0u8,
            move |s, c| match (s, c[0], c[1]) {
                (0, Some(x), Some(y)) if x == y => Some(0),
                (0, None, Some(y)) if y == sym => Some(1),
                _ => None,
            },
            |s, _| *s == 1,
        )
        .unwrap()
    };
    let ea = append(0);
    let eb = append(1);
    let ab_rel = ea.compose(&eb).unwrap();
    check_binary(&ab_rel, 4, |u, v| {
        let mut x = u.0.clone();
        x.extend([0, 1]);
        x == v.0
    });
    let eq = RegularRelation::equality(&Dfa::universal(a.clone())).unwrap();
    assert!(eq.compose(&ea).unwrap().equivalent(&ea));
    // Functional injective relation: E ∘ E^T is the identity on its domain.
    let back = ea.compose(&ea.transpose().unwrap()).unwrap();
    assert!(back.equivalent(&eq));
}

#[test]
fn join_with_repeated_tracks() {
    let a = ab();
    let pre = prefix_order(&a).unwrap();
    // pre(x, x) holds for every x.
    let r = join(std::slice::from_ref(&a), &[Constraint::pos(&pre, vec![0, 0])]).unwrap();
    assert!(r.equivalent(&RegularRelation::universal(std::slice::from_ref(&a)).unwrap()));
}

#[test]
fn group_and_flatten_round_trip() {
    let b = Alphabet::binary();
    let t = vec![b.clone(); 4];
    let eq01 = RegularRelation::equality(&Dfa::universal(b.clone())).unwrap();
    let r = join(
        &t,
        &[
            Constraint::pos(&eq01, vec![0, 2]),
            Constraint::pos(&eq01, vec![1, 3]),
        ],
    )
    .unwrap();
    let g = r.group_tracks(&[vec![0, 1], vec![2, 3]]).unwrap();
    assert_eq!(g.arity(), 2);
    let v = Alphabet::conv(&[b.clone(), b.clone()]).unwrap();
    let x = v.parse_word("(0,1) (1,#)").unwrap();
    assert!(g.contains(&[x.clone(), x.clone()]).unwrap());
    let f = g.flatten_track(1).unwrap().flatten_track(0).unwrap();
    assert!(f.equivalent(&r));
}

#[test]
fn text_round_trip() {
    let a = ab();
    let r = llex_order(&a).unwrap();
    let t = r.to_text();
    assert!(t.starts_with("relation 2 over conv({a,b},{a,b})"));
    let back = RegularRelation::from_text(&t).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_text(), t);
}

#[test]
fn from_tuples_lists_exactly() {
    let a = ab();
    let r = RegularRelation::from_tuples(
        &[a.clone(), a.clone()],
        &[vec![w("ab"), w("b")], vec![w(""), w("a")]],
    )
    .unwrap();
    assert_eq!(
        r.enumerate(3),
        vec![vec![w(""), w("a")], vec![w("ab"), w("b")]]
    );
    assert_eq!(r.witness(), Some(vec![w(""), w("a")]));
    let _ = Limit::MaxLen(0);
}

fn arb_relation() -> impl Strategy<Value = RegularRelation> {
    let a = ab();
    let ws = words(2);
    proptest::collection::vec((0..ws.len(), 0..ws.len()), 0..10).prop_map(move |pairs| {
        let tuples: Vec<Vec<Word>> = pairs
            .into_iter()
            .map(|(i, j)| vec![ws[i].clone(), ws[j].clone()])
            .collect();
        RegularRelation::from_tuples(&[a.clone(), a.clone()], &tuples).unwrap()
    })
}

fn as_set(r: &RegularRelation, max: usize) -> std::collections::BTreeSet<(Word, Word)> {
    let ws = words(max);
    let mut s = std::collections::BTreeSet::new();
    for u in &ws {
        for v in &ws {
            if r.contains(&[u.clone(), v.clone()]).unwrap() {
                s.insert((u.clone(), v.clone()));
            }
        }
    }
    s
}

fn compose_sets(
    r: &std::collections::BTreeSet<(Word, Word)>,
    s: &std::collections::BTreeSet<(Word, Word)>,
) -> std::collections::BTreeSet<(Word, Word)> {
    let mut out = std::collections::BTreeSet::new();
    for (u, v) in r {
        for (v2, x) in s {
            if v == v2 {
                out.insert((u.clone(), x.clone()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compose_matches_set_semantics(r in arb_relation(), s in arb_relation(), t in arb_relation()) {
        let rs = r.compose(&s).unwrap();
        prop_assert!(rs.is_valid());
        let expect = compose_sets(&as_set(&r, 3), &as_set(&s, 3));
        prop_assert_eq!(as_set(&rs, 3), expect);
        let left = rs.compose(&t).unwrap();
        let right = r.compose(&s.compose(&t).unwrap()).unwrap();
        prop_assert!(left.equivalent(&right));
        let tr = rs.transpose().unwrap();
        let other = s.transpose().unwrap().compose(&r.transpose().unwrap()).unwrap();
        prop_assert!(tr.equivalent(&other));
    }

    #[test]
    fn cylinder_sections(r in arb_relation(), k in 0usize..3) {
        let a = ab();
        let c = r.cylindrify(k, &a).unwrap();
        prop_assert!(c.is_valid());
        prop_assert!(c.project(k).unwrap().equivalent(&r));
        let p0 = r.project(0).unwrap();
        let set = as_set(&r, 2);
        for v in words(2) {
            let expect = set.iter().any(|(_, y)| *y == v);
            prop_assert_eq!(p0.contains(std::slice::from_ref(&v)).unwrap(), expect);
        }
    }
}
