//! `BS(1,p) = <a, b | a^-1 b a = b^p>` acting on the line by
//! `a: x -> p x`, `b: x -> x + 1`, products applied left to right.
//!
//! An element is the map `x -> p^n x + m / p^k`, stored as the convolution
//! of `n` (two's complement), `m` (base-`p` complement, least significant
//! digit first) and `k` in unary. Normal form: `k = 0` or `p` does not
//! divide `m`.

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::groups::{pair_of_groups, GraphAutomaticPresentation};
use crate::presburger::{
    decode_in_base, decode_int, encode_in_base, encode_int, int_domain, int_domain_base,
    linear_equation, Term,
};
use crate::relation::{join, machine, Constraint, RegularRelation, Shape};

fn unary() -> Alphabet {
    Alphabet::plain(&["1"]).expect("valid name")
}

fn tracks(p: u32) -> Vec<Alphabet> {
    vec![Alphabet::binary(), Alphabet::digits(p), unary()]
}

/// Word of the element `x -> p^n x + m / p^k` (which must be in normal form).
pub fn bs1n_encode(p: u32, n: i64, m: i64, k: usize) -> Result<Word> {
    if k > 0 && m.rem_euclid(p as i64) == 0 {
        return Err(Error::Encoding("p divides m while k > 0".into()));
    }
    Shape::new(&tracks(p))?.convolve(&[encode_int(n), encode_in_base(m, p), Word(vec![0; k])])
}

/// `(n, m, k)` of a representative.
pub fn bs1n_decode(p: u32, w: &Word) -> Result<(i64, i64, usize)> {
    let parts = Shape::new(&tracks(p))?.deconvolve(w)?;
    Ok((
        decode_int(&parts[0])?,
        decode_in_base(&parts[1], p)?,
        parts[2].len(),
    ))
}

/// `k = λ` or the lowest digit of `m` is non-zero, over tracks `(m, k)`.
fn normal_form(p: u32) -> Result<RegularRelation> {
    machine(
        &[Alphabet::digits(p), unary()],
        true,
        |first: &bool, col| {
            if *first && col[1].is_some() && matches!(col[0], None | Some(0)) {
                return None;
            }
            Some(false)
        },
        |_, _| true,
    )
}

pub fn bs1n(p: u32) -> Result<GraphAutomaticPresentation> {
    if p < 2 {
        return Err(Error::InvalidParameter("bs1n needs p >= 2".into()));
    }
    let t = tracks(p);
    let bin = Alphabet::binary();
    let dp = Alphabet::digits(p);
    let u = unary();
    let dom_n = RegularRelation::unary(&int_domain());
    let dom_m = RegularRelation::unary(&int_domain_base(p));
    let nf = normal_form(p)?;
    let dom = join(
        &t,
        &[
            Constraint::pos(&dom_n, vec![0]),
            Constraint::pos(&dom_m, vec![1]),
            Constraint::pos(&nf, vec![1, 2]),
        ],
    )?;
    let six: Vec<Alphabet> = t.iter().chain(&t).cloned().collect();
    let doms = [
        Constraint::pos(&dom, vec![0, 1, 2]),
        Constraint::pos(&dom, vec![3, 4, 5]),
    ];

    let n_plus_one = linear_equation(
        2,
        &[bin.clone(), bin.clone()],
        &[Term::Var(1), Term::Var(-1)],
        1,
    )?;
    let n_same = RegularRelation::equality(&int_domain())?;
    let m_same = RegularRelation::equality(&int_domain_base(p))?;
    let k_same = RegularRelation::equality(&crate::Dfa::universal(u.clone()))?;
    let empty_k = RegularRelation::from_tuples(std::slice::from_ref(&u), &[vec![Word::empty()]])?;
    // k' is k with one letter removed.
    let k_dec = machine(
        &[u.clone(), u.clone()],
        false,
        |done: &bool, col| match (done, col[0], col[1]) {
            (false, Some(_), Some(_)) => Some(false),
            (false, Some(_), None) => Some(true),
            _ => None,
        },
        |done, _| *done,
    )?;
    let m_times_p = linear_equation(
        p,
        &[dp.clone(), dp.clone()],
        &[Term::Var(p as i64), Term::Var(-1)],
        0,
    )?;

    let mut shift_down = vec![
        Constraint::pos(&n_plus_one, vec![0, 3]),
        Constraint::pos(&m_same, vec![1, 4]),
        Constraint::pos(&k_dec, vec![2, 5]),
    ];
    shift_down.extend(doms.iter().cloned());
    let mut scale = vec![
        Constraint::pos(&n_plus_one, vec![0, 3]),
        Constraint::pos(&m_times_p, vec![1, 4]),
        Constraint::pos(&empty_k, vec![2]),
        Constraint::pos(&empty_k, vec![5]),
    ];
    scale.extend(doms.iter().cloned());
    let a_flat = join(&six, &shift_down)?.union(&join(&six, &scale)?)?;

    let m_plus_pulse = linear_equation(
        p,
        &[dp.clone(), dp, u],
        &[Term::Var(1), Term::Var(-1), Term::Pulse(1)],
        0,
    )?;
    let mut add = vec![
        Constraint::pos(&n_same, vec![0, 3]),
        Constraint::pos(&m_plus_pulse, vec![1, 4, 2]),
        Constraint::pos(&k_same, vec![2, 5]),
    ];
    add.extend(doms.iter().cloned());
    let b_flat = join(&six, &add)?;

    let identity = bs1n_encode(p, 0, 0, 0)?;
    let mut pres =
        GraphAutomaticPresentation::new(dom.dfa().clone(), identity, &format!("BS(1,{p})"))?;
    pres.add_generator("a", pair_of_groups(&a_flat, 3)?, None)?;
    pres.add_generator("b", pair_of_groups(&b_flat, 3)?, None)?;
    Ok(pres)
}
