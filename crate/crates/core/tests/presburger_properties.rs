use std::sync::OnceLock;

use cgauto::decide::eval_function;
use cgauto::fo::AutomaticStructure;
use cgauto::presburger::{
    addition_relation, affine_relation, decode_in_base, decode_int, encode_in_base, encode_int,
    int_domain,
};
use cgauto::RegularRelation;
use proptest::prelude::*;

fn add() -> &'static RegularRelation {
    static R: OnceLock<RegularRelation> = OnceLock::new();
    R.get_or_init(addition_relation)
}

fn cat() -> &'static RegularRelation {
    static R: OnceLock<RegularRelation> = OnceLock::new();
    R.get_or_init(|| affine_relation(&[vec![2, 1], vec![1, 1]], &[0, 0]).unwrap())
}

/// Outputs on one convolved track, as a function of the two inputs.
fn grouped_cat() -> &'static RegularRelation {
    static R: OnceLock<RegularRelation> = OnceLock::new();
    R.get_or_init(|| cat().group_tracks(&[vec![0], vec![1], vec![2, 3]]).unwrap())
}

#[test]
fn round_trip_small_integers() {
    for x in -10_000i64..=10_000 {
        assert_eq!(decode_int(&encode_int(x)).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn round_trip_any_base(x in any::<i32>(), p in 2u32..12) {
        let x = x as i64;
        prop_assert_eq!(decode_in_base(&encode_in_base(x, p), p).unwrap(), x);
        prop_assert!(int_domain().accepts(&encode_int(x)).unwrap());
    }

    #[test]
    fn addition_matches_integers(x in -5000i64..5000, y in -5000i64..5000, z in -5000i64..5000) {
        let r = add();
        prop_assert!(r.contains(&[encode_int(x), encode_int(y), encode_int(x + y)]).unwrap());
        prop_assert_eq!(r.contains(&[encode_int(x), encode_int(y), encode_int(z)]).unwrap(), x + y == z);
    }

    #[test]
    fn affine_outputs_grow_by_a_constant(x in -1_000_000i64..1_000_000, y in -1_000_000i64..1_000_000) {
        let r = cat();
        let grouped = grouped_cat();
        let out = eval_function(grouped, &[&encode_int(x), &encode_int(y)]).unwrap();
        let (u, v) = (2 * x + y, x + y);
        let expect = r.shape().convolve(&[encode_int(x), encode_int(y), encode_int(u), encode_int(v)]).unwrap();
        prop_assert!(r.contains(&r.shape().deconvolve(&expect).unwrap()).unwrap());
        let c = r.num_states() * int_domain().num_states();
        let input = encode_int(x).len().max(encode_int(y).len());
        prop_assert!(out.len() <= input + c);
        prop_assert_eq!(out.len(), encode_int(u).len().max(encode_int(v).len()));
    }
}

#[test]
fn affine_relation_is_a_total_function() {
    let s = AutomaticStructure::new("ints", &int_domain())
        .with_relation("F", cat().clone())
        .unwrap();
    let total = s.parse("A x1 A x2 E y1 E y2 F(x1,x2,y1,y2)").unwrap();
    let functional = s
        .parse("A x1 A x2 A y1 A y2 A z1 A z2 ((F(x1,x2,y1,y2) & F(x1,x2,z1,z2)) -> (y1 = z1 & y2 = z2))")
        .unwrap();
    assert!(s.decide(&total).unwrap());
    assert!(s.decide(&functional).unwrap());
}
