//! Integers as words: least significant digit first, base-`p` complement.
//!
//! A word `d_0 .. d_{k-1}` has value `sum_{i<k-1} d_i p^i - [d_{k-1} = p-1] p^{k-1}`.
//! The last digit is the sign digit (`0` or `p-1`); a word is canonical when
//! it has length one or its last two digits differ. For `p = 2` this is
//! two's complement.

use std::sync::OnceLock;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::fa::{Dfa, Nfa, StateId};
use crate::fo::{AutomaticStructure, Formula};
use crate::relation::{join, machine, Constraint, RegularRelation, Shape};

/// Default bound on coefficient magnitudes accepted by [`affine_relation`].
pub const DEFAULT_COEFF_BOUND: i64 = 1 << 6;

pub fn encode_in_base(mut x: i64, p: u32) -> Word {
    assert!(p >= 2);
    let p = p as i64;
    let mut out = Vec::new();
    loop {
        if x == 0 {
            out.push(0);
            break;
        }
        if x == -1 {
            out.push((p - 1) as u32);
            break;
        }
        out.push(x.rem_euclid(p) as u32);
        x = x.div_euclid(p);
    }
    Word(out)
}

pub fn decode_in_base(w: &Word, p: u32) -> Result<i64> {
    let d = &w.0;
    let k = d.len();
    if k == 0 {
        return Err(Error::Encoding("empty word".into()));
    }
    if d.iter().any(|&x| x >= p) {
        return Err(Error::Encoding(format!("digit out of range for base {p}")));
    }
    let last = d[k - 1];
    if last != 0 && last != p - 1 {
        return Err(Error::Encoding("last digit is not a sign digit".into()));
    }
    if k >= 2 && d[k - 2] == last {
        return Err(Error::Encoding(
            "non-canonical: last two digits equal".into(),
        ));
    }
    let mut v: i128 = 0;
    let mut pow: i128 = 1;
    for &x in &d[..k - 1] {
        v += x as i128 * pow;
        pow = pow
            .checked_mul(p as i128)
            .ok_or_else(|| Error::Encoding("value overflows".into()))?;
    }
    if last == p - 1 {
        v -= pow;
    }
    i64::try_from(v).map_err(|_| Error::Encoding("value overflows".into()))
}

/// Two's complement encoding over `{0,1}`.
pub fn encode_int(x: i64) -> Word {
    encode_in_base(x, 2)
}

pub fn decode_int(w: &Word) -> Result<i64> {
    decode_in_base(w, 2)
}

/// Canonical base-`p` integer words.
pub fn int_domain_base(p: u32) -> Dfa {
    // States: 0 start, 1 + d: last digit d and canonical if it is a sign digit
    // following a different digit (or standing alone).
    // Track the last two digits through a small automaton built explicitly.
    let alpha = Alphabet::digits(p);
    // state 0: empty; state 1+d: last digit d, previous digit differs or none;
    // state 1+p+d: last digit d, previous digit equal.
    let n = 1 + 2 * p as usize;
    let mut rows: Vec<Vec<(u32, StateId)>> = vec![Vec::new(); n];
    let mut acc = vec![false; n];
    for d in 0..p {
        rows[0].push((d, 1 + d));
    }
    for last in 0..p {
        for (base, _) in [(1 + last, false), (1 + p + last, true)] {
            for d in 0..p {
                let to = if d == last { 1 + p + d } else { 1 + d };
                rows[base as usize].push((d, to));
            }
        }
        let sign = last == 0 || last == p - 1;
        acc[(1 + last) as usize] = sign;
    }
    Dfa::from_parts(alpha, rows, 0, acc).minimize()
}

pub fn int_domain() -> Dfa {
    int_domain_base(2)
}

fn int_domain_rel(p: u32) -> RegularRelation {
    RegularRelation::unary(&int_domain_base(p))
}

/// Vectors of `d` integers: the convolution of their encodings.
pub fn vector_alphabet(d: usize) -> Alphabet {
    Alphabet::binary().power(d).expect("small dimension")
}

pub fn encode_vector(v: &[i64]) -> Word {
    let words: Vec<Word> = v.iter().map(|&x| encode_int(x)).collect();
    Shape::new(&vec![Alphabet::binary(); v.len()])
        .expect("small dimension")
        .convolve(&words)
        .expect("binary words")
}

pub fn decode_vector(w: &Word, d: usize) -> Result<Vec<i64>> {
    let parts = Shape::new(&vec![Alphabet::binary(); d])?.deconvolve(w)?;
    parts.iter().map(decode_int).collect()
}

/// Canonical vectors of dimension `d`, as a language over [`vector_alphabet`].
pub fn vector_domain(d: usize) -> Dfa {
    let tracks = vec![Alphabet::binary(); d];
    let dom = int_domain_rel(2);
    let cons: Vec<Constraint> = (0..d).map(|i| Constraint::pos(&dom, vec![i])).collect();
    join(&tracks, &cons).expect("valid tracks").dfa().clone()
}

/// One term of a linear equation.
#[derive(Clone, Debug)]
pub enum Term {
    /// `weight * x` for an integer track.
    Var(i64),
    /// `weight * p^len` where `len` is the length of this (unary) track.
    Pulse(i64),
    /// A track that does not take part in the equation.
    Free,
}

/// Relation over `tracks` accepting tuples with `c + sum terms = 0`, where
/// integer tracks hold base-`p` complement words (checked canonical) and pulse
/// tracks are arbitrary words whose length is the exponent.
pub fn linear_equation(
    p: u32,
    tracks: &[Alphabet],
    terms: &[Term],
    c: i64,
) -> Result<RegularRelation> {
    if tracks.len() != terms.len() {
        return Err(Error::ArityMismatch("one term per track".into()));
    }
    let pw = p as i64;
    let n = tracks.len();
    const NONE: u32 = u32::MAX;
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct St {
        r: i64,
        last: Vec<u32>,
        fired: bool,
    }
    let init = St {
        r: c,
        last: vec![NONE; n],
        fired: false,
    };
    let step = |s: &St, col: &[Option<u32>]| -> Option<St> {
        let mut total = s.r;
        let mut last = s.last.clone();
        let mut fired = s.fired;
        for (t, term) in terms.iter().enumerate() {
            match term {
                Term::Var(w) => {
                    let d = match col[t] {
                        Some(d) => {
                            last[t] = d;
                            d
                        }
                        None if s.last[t] == NONE => return None,
                        None => s.last[t],
                    };
                    total += w * d as i64;
                }
                Term::Pulse(w) => {
                    if col[t].is_none() && !fired {
                        total += w;
                        fired = true;
                    }
                }
                Term::Free => {}
            }
        }
        if total.rem_euclid(pw) != 0 {
            return None;
        }
        Some(St {
            r: total.div_euclid(pw),
            last,
            fired,
        })
    };
    let accept = |s: &St, _: &[bool]| {
        let mut v = s.r;
        for (t, term) in terms.iter().enumerate() {
            match term {
                Term::Var(w) => {
                    if s.last[t] == NONE {
                        return false;
                    }
                    if s.last[t] == p - 1 {
                        v -= w;
                    }
                }
                Term::Pulse(w) if !s.fired => v += w,
                _ => {}
            }
        }
        v == 0
    };
    let raw = machine(tracks, init, step, accept)?;
    let dom = int_domain_rel(p);
    let mut cons = vec![Constraint::pos(&raw, (0..n).collect())];
    for (t, term) in terms.iter().enumerate() {
        if matches!(term, Term::Var(_)) {
            cons.push(Constraint::pos(&dom, vec![t]));
        }
    }
    join(tracks, &cons)
}

/// `{(u, v, w) : u + v = w}` over canonical two's complement words.
pub fn addition_relation() -> RegularRelation {
    static ADD: OnceLock<RegularRelation> = OnceLock::new();
    ADD.get_or_init(|| {
        linear_equation(
            2,
            &vec![Alphabet::binary(); 3],
            &[Term::Var(1), Term::Var(1), Term::Var(-1)],
            0,
        )
        .expect("addition automaton")
    })
    .clone()
}

/// `(ℤ; Add, One)` with `One = {1}`. The constant is not definable from
/// addition alone and is needed for affine maps with a translation part.
pub fn presburger_structure() -> AutomaticStructure {
    static S: OnceLock<AutomaticStructure> = OnceLock::new();
    S.get_or_init(|| {
        let one = RegularRelation::from_tuples(&[Alphabet::binary()], &[vec![encode_int(1)]])
            .expect("constant");
        AutomaticStructure::new("presburger", &int_domain())
            .with_relation("Add", addition_relation())
            .and_then(|s| s.with_relation("One", one))
            .expect("fresh structure")
    })
    .clone()
}

/// `(ℕ; Add)`: non-negative canonical words with addition restricted to them.
/// Over this domain `E z Add(x,z,y)` defines `x <= y`.
pub fn presburger_nat_structure() -> AutomaticStructure {
    let nat = Nfa::word(Alphabet::binary(), &Word(vec![0]))
        .concat(&Nfa::universal(Alphabet::binary()))
        .expect("same alphabet");
    let nat = nat
        .determinize()
        .reverse()
        .intersect(&int_domain())
        .expect("same alphabet");
    let dom = RegularRelation::unary(&nat);
    let add = addition_relation()
        .restrict(&[Some(&dom), Some(&dom), Some(&dom)])
        .expect("same alphabet");
    AutomaticStructure::new("presburger-nat", &nat)
        .with_relation("Add", add)
        .expect("fresh structure")
}

struct Fresh(usize);

impl Fresh {
    fn var(&mut self) -> String {
        self.0 += 1;
        format!("_t{}", self.0)
    }
}

/// Formula for `t = m * x` using balanced doubling.
fn mul_formula(m: i64, x: &str, t: &str, fresh: &mut Fresh) -> Formula {
    if m < 0 {
        let u = fresh.var();
        let z = fresh.var();
        return Formula::exists(
            &u,
            Formula::and(
                mul_formula(-m, x, &u, fresh),
                Formula::exists(
                    &z,
                    Formula::and(
                        Formula::atom("Add", &[&z, &z, &z]),
                        Formula::atom("Add", &[&u, t, &z]),
                    ),
                ),
            ),
        );
    }
    match m {
        0 => Formula::atom("Add", &[t, t, t]),
        1 => Formula::eq(t, x),
        _ if m % 2 == 0 => {
            let h = fresh.var();
            Formula::exists(
                &h,
                Formula::and(
                    mul_formula(m / 2, x, &h, fresh),
                    Formula::atom("Add", &[&h, &h, t]),
                ),
            )
        }
        _ => {
            let h = fresh.var();
            let s = fresh.var();
            Formula::exists(
                &h,
                Formula::and(
                    mul_formula(m / 2, x, &h, fresh),
                    Formula::exists(
                        &s,
                        Formula::and(
                            Formula::atom("Add", &[&h, &h, &s]),
                            Formula::atom("Add", &[&s, x, t]),
                        ),
                    ),
                ),
            )
        }
    }
}

/// Formula for `y = sum coeffs[k] * xs[k] + c`.
pub fn affine_row_formula(coeffs: &[i64], xs: &[&str], c: i64, y: &str) -> Formula {
    let mut fresh = Fresh(0);
    let mut terms: Vec<(String, Formula)> = Vec::new();
    for (k, &a) in coeffs.iter().enumerate() {
        if a != 0 {
            let t = fresh.var();
            let f = mul_formula(a, xs[k], &t, &mut fresh);
            terms.push((t, f));
        }
    }
    if c != 0 {
        let o = fresh.var();
        let t = fresh.var();
        let f = Formula::exists(
            &o,
            Formula::and(
                Formula::atom("One", &[&o]),
                mul_formula(c, &o, &t, &mut fresh),
            ),
        );
        terms.push((t, f));
    }
    if terms.is_empty() {
        return Formula::atom("Add", &[y, y, y]);
    }
    // y = t_1 + ... + t_k through running sums s_i.
    let mut body: Vec<Formula> = terms.iter().map(|(_, f)| f.clone()).collect();
    let mut bound: Vec<String> = terms.iter().map(|(t, _)| t.clone()).collect();
    let mut acc = terms[0].0.clone();
    for (i, (t, _)) in terms.iter().enumerate().skip(1) {
        let s = if i + 1 == terms.len() {
            y.to_string()
        } else {
            fresh.var()
        };
        body.push(Formula::atom("Add", &[&acc, t, &s]));
        if s != y {
            bound.push(s.clone());
        }
        acc = s;
    }
    if terms.len() == 1 {
        body.push(Formula::eq(&acc, y));
    }
    let names: Vec<&str> = bound.iter().map(|s| s.as_str()).collect();
    Formula::exists_many(&names, Formula::all(body))
}

fn check_matrix(a: &[Vec<i64>], c: &[i64], bound: i64) -> Result<usize> {
    if a.len() != c.len() {
        return Err(Error::ArityMismatch(format!(
            "{} rows but {} constants",
            a.len(),
            c.len()
        )));
    }
    let d = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != d) {
        return Err(Error::ArityMismatch("ragged matrix".into()));
    }
    if d == 0 || a.is_empty() {
        return Err(Error::ArityMismatch("empty matrix".into()));
    }
    if a.iter().flatten().chain(c).any(|x| x.abs() > bound) {
        return Err(Error::InvalidParameter(format!(
            "coefficient exceeds {bound}"
        )));
    }
    Ok(d)
}

/// `{(x_1..x_d, y_1..y_d') : y = A x + c}` compiled from first-order
/// definitions over [`presburger_structure`].
pub fn affine_relation(a: &[Vec<i64>], c: &[i64]) -> Result<RegularRelation> {
    affine_relation_bounded(a, c, DEFAULT_COEFF_BOUND)
}

pub fn affine_relation_bounded(a: &[Vec<i64>], c: &[i64], bound: i64) -> Result<RegularRelation> {
    let d = check_matrix(a, c, bound)?;
    let mut rows = Vec::new();
    for (j, row) in a.iter().enumerate() {
        let (rel, mut map) = affine_row_relation(row, c[j], bound)?;
        map.push(d + j);
        rows.push((rel, map));
    }
    assemble(d, a.len(), &rows)
}

/// `{(x_k.., y) : y = sum coeffs[k] x_k + c}` over the inputs with a non-zero
/// coefficient, compiled over [`presburger_structure`]. Returns the relation
/// and the indices of the inputs it mentions, in track order.
pub fn affine_row_relation(
    coeffs: &[i64],
    c: i64,
    bound: i64,
) -> Result<(RegularRelation, Vec<usize>)> {
    if coeffs.iter().chain([&c]).any(|x| x.abs() > bound) {
        return Err(Error::InvalidParameter(format!(
            "coefficient exceeds {bound}"
        )));
    }
    let s = presburger_structure();
    let xs: Vec<String> = (0..coeffs.len()).map(|k| format!("x{k}")).collect();
    let xr: Vec<&str> = xs.iter().map(|s| s.as_str()).collect();
    let f = affine_row_formula(coeffs, &xr, c, "y");
    let used: Vec<usize> = (0..coeffs.len()).filter(|&k| coeffs[k] != 0).collect();
    let mut order: Vec<&str> = used.iter().map(|&k| xr[k]).collect();
    order.push("y");
    Ok((s.compile(&f, &order)?, used))
}

/// Same relation as [`affine_relation`], built row by row from linear
/// equation automata without going through the compiler.
pub fn linear_map(a: &[Vec<i64>], c: &[i64]) -> Result<RegularRelation> {
    let d = check_matrix(a, c, i64::MAX / 4)?;
    let mut rows = Vec::new();
    for (j, row) in a.iter().enumerate() {
        let used: Vec<usize> = (0..d).filter(|&k| row[k] != 0).collect();
        let mut terms: Vec<Term> = used.iter().map(|&k| Term::Var(row[k])).collect();
        terms.push(Term::Var(-1));
        let rel = linear_equation(2, &vec![Alphabet::binary(); terms.len()], &terms, c[j])?;
        let mut map = used;
        map.push(d + j);
        rows.push((rel, map));
    }
    assemble(d, a.len(), &rows)
}

fn assemble(d: usize, e: usize, rows: &[(RegularRelation, Vec<usize>)]) -> Result<RegularRelation> {
    let tracks = vec![Alphabet::binary(); d + e];
    let dom = int_domain_rel(2);
    let mut cons: Vec<Constraint> = rows
        .iter()
        .map(|(r, m)| Constraint::pos(r, m.clone()))
        .collect();
    for t in 0..d + e {
        cons.push(Constraint::pos(&dom, vec![t]));
    }
    join(&tracks, &cons)
}
