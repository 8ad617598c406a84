//! Canonical binary relations on words, with symbols ordered by index.

use std::cmp::Ordering;

use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::relation::{machine, RegularRelation};

fn pair(a: &Alphabet) -> Vec<Alphabet> {
    vec![a.clone(), a.clone()]
}

/// `u ⪯ v`: `u` is a prefix of `v`.
pub fn prefix_order(a: &Alphabet) -> Result<RegularRelation> {
    machine(
        &pair(a),
        (),
        |_, c| match (c[0], c[1]) {
            (Some(x), Some(y)) if x == y => Some(()),
            (None, Some(_)) => Some(()),
            _ => None,
        },
        |_, _| true,
    )
}

/// Lexicographic order, reflexive, with a proper prefix below its extensions.
pub fn lex_order(a: &Alphabet) -> Result<RegularRelation> {
    machine(
        &pair(a),
        Ordering::Equal,
        |s, c| {
            Some(match s {
                Ordering::Equal => match (c[0], c[1]) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    (None, _) => Ordering::Less,
                    (_, None) => Ordering::Greater,
                },
                other => *other,
            })
        },
        |s, _| *s != Ordering::Greater,
    )
}

/// Length-lexicographic order (shorter first, then lexicographic), reflexive.
pub fn llex_order(a: &Alphabet) -> Result<RegularRelation> {
    machine(
        &pair(a),
        Ordering::Equal,
        |s, c| {
            Some(match (s, c[0], c[1]) {
                (Ordering::Equal, Some(x), Some(y)) => x.cmp(&y),
                (other, _, _) => *other,
            })
        },
        |s, ended| match (ended[0], ended[1]) {
            (true, false) => true,
            (false, true) => false,
            _ => *s != Ordering::Greater,
        },
    )
}

/// `|u| = |v|`.
pub fn equal_length(a: &Alphabet) -> Result<RegularRelation> {
    machine(
        &pair(a),
        (),
        |_, c| (c[0].is_some() && c[1].is_some()).then_some(()),
        |_, _| true,
    )
}
