//! `G wr Z` for a finite group `G`.
//!
//! An element is a pair `(i, f)` with `f: Z -> G` of finite support, and
//! `(i, f)(j, h) = (i + j, S^j f . h)` where `(S f)(x) = f(x - 1)`. It is
//! written as the convolution of `i` (two's complement) with the values of
//! `f` on the smallest interval containing `0` and the support, the value
//! at `0` carrying a star.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::groups::{
    pair_of_groups, word::valid_generator_name, FiniteGroupTable, GraphAutomaticPresentation,
};
use crate::presburger::{decode_int, encode_int, int_domain, linear_equation, Term};
use crate::relation::{join, machine, Constraint, RegularRelation, Shape};

fn lamp_alphabet(t: &FiniteGroupTable) -> Result<Alphabet> {
    let mut names = Vec::with_capacity(2 * t.order());
    for n in t.names() {
        names.push(n.clone());
        names.push(format!("{n}*"));
    }
    Alphabet::plain(&names)
}

fn star(s: Sym) -> Sym {
    s | 1
}

fn unstar(s: Sym) -> Sym {
    s & !1
}

fn is_star(s: Sym) -> bool {
    s & 1 == 1
}

fn tracks(t: &FiniteGroupTable) -> Result<Vec<Alphabet>> {
    Ok(vec![Alphabet::binary(), lamp_alphabet(t)?])
}

/// Word of `(i, f)`; `f` maps positions to element indices.
pub fn wreath_encode(t: &FiniteGroupTable, i: i64, f: &BTreeMap<i64, usize>) -> Result<Word> {
    let e = t.identity();
    let support: Vec<i64> = f.iter().filter(|(_, &g)| g != e).map(|(&x, _)| x).collect();
    let lo = support.first().copied().unwrap_or(0).min(0);
    let hi = support.last().copied().unwrap_or(0).max(0);
    let lamps: Vec<Sym> = (lo..=hi)
        .map(|x| {
            let g = f.get(&x).copied().unwrap_or(e) as Sym * 2;
            if x == 0 {
                star(g)
            } else {
                g
            }
        })
        .collect();
    Shape::new(&tracks(t)?)?.convolve(&[encode_int(i), Word(lamps)])
}

/// `(i, f)` of a representative, `f` without identity values.
pub fn wreath_decode(t: &FiniteGroupTable, w: &Word) -> Result<(i64, BTreeMap<i64, usize>)> {
    let parts = Shape::new(&tracks(t)?)?.deconvolve(w)?;
    let i = decode_int(&parts[0])?;
    let lamps = &parts[1].0;
    let s = lamps
        .iter()
        .position(|&c| is_star(c))
        .ok_or_else(|| Error::Encoding("no marked position".into()))?;
    let mut f = BTreeMap::new();
    for (k, &c) in lamps.iter().enumerate() {
        let g = (unstar(c) / 2) as usize;
        if g != t.identity() {
            f.insert(k as i64 - s as i64, g);
        }
    }
    Ok((i, f))
}

fn lamp_domain(t: &FiniteGroupTable, l: &Alphabet) -> Result<RegularRelation> {
    let e = t.identity() as Sym * 2;
    // (star seen, first column, last symbol starred or non-identity)
    machine(
        std::slice::from_ref(l),
        (false, true, false),
        |&(seen, first, _): &(bool, bool, bool), col| {
            let c = col[0]?;
            let starred = is_star(c);
            if (first && !starred && c == e) || (starred && seen) {
                return None;
            }
            Some((seen || starred, false, starred || unstar(c) != e))
        },
        |&(seen, _, last_ok), _| seen && last_ok,
    )
}

/// Multiply the marked value by `g`.
fn lamp_edge(t: &FiniteGroupTable, l: &Alphabet, g: usize) -> Result<RegularRelation> {
    machine(
        &[l.clone(), l.clone()],
        (),
        |_, col| match (col[0], col[1]) {
            (Some(a), Some(b)) if !is_star(a) && a == b => Some(()),
            (Some(a), Some(b)) if is_star(a) => {
                let h = t.mul((unstar(a) / 2) as usize, g);
                (b == star(h as Sym * 2)).then_some(())
            }
            _ => None,
        },
        |_, _| true,
    )
}

/// Move the mark one step towards the start, extending or trimming the
/// interval as needed.
fn shift_edge(t: &FiniteGroupTable, l: &Alphabet) -> Result<RegularRelation> {
    let e = t.identity() as Sym * 2;
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum St {
        Start,
        // Mark was first: output lags input by one symbol.
        Delay(Option<Sym>),
        // Mark not reached yet.
        Before,
        // Output marked the previous symbol; input must be marked now.
        Expect,
        After,
        // Trailing identity dropped; input must end here.
        Trimmed,
    }
    // Before the mark: copy, or mark the symbol just ahead of it.
    let before = |a: Option<Sym>, b: Option<Sym>| match (a, b) {
        (Some(a), Some(b)) if !is_star(a) && b == a => Some(St::Before),
        (Some(a), Some(b)) if !is_star(a) && b == star(a) => Some(St::Expect),
        _ => None,
    };
    machine(
        &[l.clone(), l.clone()],
        St::Start,
        |s: &St, col| {
            let (a, b) = (col[0], col[1]);
            match s {
                St::Start => match (a, b) {
                    (Some(a), Some(b)) if is_star(a) => {
                        (b == star(e)).then_some(St::Delay(Some(unstar(a))))
                    }
                    _ => before(a, b),
                },
                St::Delay(buf) => (buf.is_some() && b == *buf).then_some(St::Delay(a)),
                St::Before => before(a, b),
                St::Expect => match (a, b) {
                    (Some(a), Some(b)) if is_star(a) && b == unstar(a) => Some(St::After),
                    (Some(a), None) if a == star(e) => Some(St::Trimmed),
                    _ => None,
                },
                St::After => match (a, b) {
                    (Some(a), Some(b)) if a == b && !is_star(a) => Some(St::After),
                    _ => None,
                },
                St::Trimmed => None,
            }
        },
        |s, _| matches!(s, St::After | St::Trimmed | St::Delay(None)) || *s == St::Delay(Some(e)),
    )
}

/// `G wr Z`: a lamp generator per non-identity element of `G` (`a` when
/// `|G| = 2`, else `a1, a2, ...` in table order) and the shift `t`.
pub fn wreath_finite_by_z(g: &FiniteGroupTable) -> Result<GraphAutomaticPresentation> {
    let l = lamp_alphabet(g)?;
    let bin = Alphabet::binary();
    let t = vec![bin.clone(), l.clone()];
    let ints = RegularRelation::unary(&int_domain());
    let lamps = lamp_domain(g, &l)?;
    let dom = join(
        &t,
        &[
            Constraint::pos(&ints, vec![0]),
            Constraint::pos(&lamps, vec![1]),
        ],
    )?;
    let four: Vec<Alphabet> = t.iter().chain(&t).cloned().collect();
    let doms = [
        Constraint::pos(&dom, vec![0, 1]),
        Constraint::pos(&dom, vec![2, 3]),
    ];

    let same = RegularRelation::equality(&int_domain())?;
    let succ = linear_equation(2, &[bin.clone(), bin], &[Term::Var(1), Term::Var(-1)], 1)?;
    let mut p = GraphAutomaticPresentation::new(
        dom.dfa().clone(),
        wreath_encode(g, 0, &BTreeMap::new())?,
        &format!("G wr Z, |G| = {}", g.order()),
    )?;
    let mut k = 0;
    for x in 0..g.order() {
        if x == g.identity() {
            continue;
        }
        k += 1;
        let name = if g.order() == 2 {
            "a".to_string()
        } else {
            format!("a{k}")
        };
        debug_assert!(valid_generator_name(&name));
        let e = lamp_edge(g, &l, x)?;
        let mut cons = vec![
            Constraint::pos(&same, vec![0, 2]),
            Constraint::pos(&e, vec![1, 3]),
        ];
        cons.extend(doms.iter().cloned());
        p.add_generator(&name, pair_of_groups(&join(&four, &cons)?, 2)?, None)?;
    }
    let sh = shift_edge(g, &l)?;
    let mut cons = vec![
        Constraint::pos(&succ, vec![0, 2]),
        Constraint::pos(&sh, vec![1, 3]),
    ];
    cons.extend(doms.iter().cloned());
    p.add_generator("t", pair_of_groups(&join(&four, &cons)?, 2)?, None)?;
    Ok(p)
}
