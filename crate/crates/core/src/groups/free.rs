use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::fa::Dfa;
use crate::fo::AutomaticStructure;
use crate::groups::GraphAutomaticPresentation;
use crate::relation::{equal_length, machine, prefix_order, RegularRelation};

/// Letters `a, A, b, B, ...`: symbol `2i` is generator `i`, `2i + 1` its inverse.
fn letters(rank: usize) -> Result<Alphabet> {
    if !(1..=26).contains(&rank) {
        return Err(Error::InvalidParameter(
            "free group rank must be in 1..=26".into(),
        ));
    }
    let mut names = Vec::with_capacity(2 * rank);
    for i in 0..rank as u8 {
        names.push(((b'a' + i) as char).to_string());
        names.push(((b'A' + i) as char).to_string());
    }
    Alphabet::plain(&names)
}

fn inv(s: Sym) -> Sym {
    s ^ 1
}

/// Freely reduced words.
fn reduced_words(a: &Alphabet) -> Dfa {
    let n = a.size();
    // State 0: start; state 1 + s: last letter s.
    let rows = (0..=n)
        .map(|q| {
            (0..n)
                .filter(|&s| q == 0 || s != inv(q - 1))
                .map(|s| (s, s + 1))
                .collect()
        })
        .collect();
    Dfa::from_parts(a.clone(), rows, 0, vec![true; n as usize + 1]).minimize()
}

/// `(u, v)` with `v = u x` after free reduction, `x` a letter.
fn right_edge(a: &Alphabet, dom: &RegularRelation, x: Sym) -> Result<RegularRelation> {
    let raw = machine(
        &[a.clone(), a.clone()],
        false,
        |done: &bool, col| match (done, col[0], col[1]) {
            (false, Some(p), Some(q)) if p == q => Some(false),
            (false, None, Some(q)) if q == x => Some(true),
            (false, Some(p), None) if p == inv(x) => Some(true),
            _ => None,
        },
        |done, _| *done,
    )?;
    raw.restrict(&[Some(dom), Some(dom)])
}

/// `(u, v)` with `v = x u` after free reduction: `v` is `u` shifted by one
/// letter, either way.
fn left_edge(a: &Alphabet, dom: &RegularRelation, x: Sym) -> Result<RegularRelation> {
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum St {
        Start,
        // v runs one letter behind u
        Prepend(Option<Sym>),
        // u runs one letter behind v
        Remove(Option<Sym>),
    }
    let raw = machine(
        &[a.clone(), a.clone()],
        St::Start,
        |s: &St, col| match s {
            St::Start => match (col[0], col[1]) {
                (p, Some(q)) if q == x => Some(St::Prepend(p)),
                (Some(p), q) if p == inv(x) => Some(St::Remove(q)),
                _ => None,
            },
            St::Prepend(buf) => (buf.is_some() && col[1] == *buf).then(|| St::Prepend(col[0])),
            St::Remove(buf) => (buf.is_some() && col[0] == *buf).then(|| St::Remove(col[1])),
        },
        |s, _| matches!(s, St::Prepend(None) | St::Remove(None)),
    )?;
    raw.restrict(&[Some(dom), Some(dom)])
}

/// Free group on `rank` generators `a, b, ...` (inverses written `A, B, ...`
/// in representatives), on freely reduced words.
pub fn free_group(rank: usize) -> Result<GraphAutomaticPresentation> {
    let a = letters(rank)?;
    let dom_dfa = reduced_words(&a);
    let dom = RegularRelation::unary(&dom_dfa);
    let mut p =
        GraphAutomaticPresentation::new(dom_dfa, crate::Word::empty(), &format!("F_{rank}"))?;
    for i in 0..rank {
        let x = 2 * i as Sym;
        p.add_generator(
            &a.name(x),
            right_edge(&a, &dom, x)?,
            Some(left_edge(&a, &dom, x)?),
        )?;
    }
    Ok(p)
}

/// The Cayley graph of the free group expanded by the prefix order and the
/// equal-length relation: relations `E_a, E_b, ...`, `Prefix`, `El`.
pub fn gamma_free(rank: usize) -> Result<AutomaticStructure> {
    let a = letters(rank)?;
    let dom_dfa = reduced_words(&a);
    let dom = RegularRelation::unary(&dom_dfa);
    let mut s = AutomaticStructure::new(&format!("gamma_free({rank})"), &dom_dfa);
    for i in 0..rank {
        let x = 2 * i as Sym;
        s.insert(&format!("E_{}", a.name(x)), right_edge(&a, &dom, x)?)?;
    }
    s.insert(
        "Prefix",
        prefix_order(&a)?.restrict(&[Some(&dom), Some(&dom)])?,
    )?;
    s.insert("El", equal_length(&a)?.restrict(&[Some(&dom), Some(&dom)])?)?;
    Ok(s)
}
