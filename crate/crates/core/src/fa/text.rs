//! Plain-text automaton format.
//!
//! ```text
//! nfa a b 3
//! initial: 0
//! accepting: 2
//! 0 a 1
//! 1 b 2
//! ```
//!
//! The header lists plain symbol names; structured alphabets are written as a
//! single expression such as `conv({0,1},{0,1})`.

use std::fmt::Write;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fa::{Dfa, Nfa, StateId};

fn alphabet_header(a: &Alphabet) -> String {
    match a.plain_names() {
        Some(names) => names.join(" "),
        None => a.to_expr(),
    }
}

pub fn write_nfa(n: &Nfa) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "nfa {} {}",
        alphabet_header(n.alphabet()),
        n.num_states()
    );
    let init: Vec<String> = n.initial().iter().map(|q| q.to_string()).collect();
    let _ = writeln!(s, "initial: {}", init.join(" "));
    let acc: Vec<String> = (0..n.num_states() as StateId)
        .filter(|&q| n.is_accepting(q))
        .map(|q| q.to_string())
        .collect();
    let _ = writeln!(s, "accepting: {}", acc.join(" "));
    for p in 0..n.num_states() as StateId {
        for &(sym, q) in n.transitions(p) {
            let _ = writeln!(s, "{p} {} {q}", n.alphabet().name(sym));
        }
    }
    s
}

pub fn write_dfa(d: &Dfa) -> String {
    write_nfa(&d.to_nfa())
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: line,
        msg: msg.into(),
    }
}

fn parse_states(rest: &str, n: usize, line: usize) -> Result<Vec<StateId>> {
    rest.split_whitespace()
        .map(|t| {
            let q: StateId = t
                .parse()
                .map_err(|_| perr(line, format!("bad state `{t}`")))?;
            if q as usize >= n {
                return Err(perr(line, format!("state {q} out of range")));
            }
            Ok(q)
        })
        .collect()
}

/// Parse the text format. `pos` in errors is the 1-based line number.
pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with("//"));
    let (ln, header) = lines
        .next()
        .ok_or_else(|| perr(0, "empty automaton text"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 3 || toks[0] != "nfa" {
        return Err(perr(ln, "expected `nfa <symbols> <state count>`"));
    }
    let n: usize = toks[toks.len() - 1]
        .parse()
        .map_err(|_| perr(ln, "bad state count"))?;
    let syms = &toks[1..toks.len() - 1];
    let alphabet = if syms.len() == 1
        && (syms[0].starts_with("conv(") || syms[0].starts_with("sum(") || syms[0].starts_with('{'))
    {
        Alphabet::from_expr(syms[0])?
    } else {
        Alphabet::plain(syms)?
    };
    let mut nfa = Nfa::new(alphabet.clone(), n);
    let (ln, init) = lines
        .next()
        .ok_or_else(|| perr(ln, "missing initial line"))?;
    let rest = init
        .strip_prefix("initial:")
        .ok_or_else(|| perr(ln, "expected `initial:`"))?;
    for q in parse_states(rest, n, ln)? {
        nfa.add_initial(q);
    }
    let (ln, acc) = lines
        .next()
        .ok_or_else(|| perr(ln, "missing accepting line"))?;
    let rest = acc
        .strip_prefix("accepting:")
        .ok_or_else(|| perr(ln, "expected `accepting:`"))?;
    for q in parse_states(rest, n, ln)? {
        nfa.set_accepting(q, true);
    }
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 3 {
            return Err(perr(ln, "expected `q sym q'`"));
        }
        let p = parse_states(t[0], n, ln)?[0];
        let q = parse_states(t[2], n, ln)?[0];
        let sym = alphabet
            .parse_symbol(t[1])
            .ok_or_else(|| perr(ln, format!("unknown symbol `{}`", t[1])))?;
        edges.push((p, sym, q));
    }
    nfa.extend_transitions(edges);
    Ok(nfa)
}

/// Parse a deterministic automaton; fails if the text is not deterministic.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let n = parse_nfa(text)?;
    if n.initial().len() != 1 {
        return Err(Error::Format(
            "deterministic automaton needs one initial state".into(),
        ));
    }
    let mut rows = Vec::with_capacity(n.num_states());
    let mut acc = Vec::with_capacity(n.num_states());
    for q in 0..n.num_states() as StateId {
        let row = n.transitions(q).to_vec();
        if row.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Format(format!("state {q} is nondeterministic")));
        }
        rows.push(row);
        acc.push(n.is_accepting(q));
    }
    Ok(Dfa::from_parts(
        n.alphabet().clone(),
        rows,
        n.initial()[0],
        acc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;

    #[test]
    fn round_trip_plain() {
        let a = Alphabet::plain(&["a", "b"]).unwrap();
        let n = Nfa::word(a, &Word(vec![0, 1])).star();
        let t = write_nfa(&n);
        let back = parse_nfa(&t).unwrap();
        assert_eq!(write_nfa(&back), t);
    }

    #[test]
    fn round_trip_conv() {
        let b = Alphabet::binary();
        let c = Alphabet::conv(&[b.clone(), b]).unwrap();
        let d = Dfa::universal(c).minimize();
        let t = write_dfa(&d);
        assert!(t.starts_with("nfa conv({0,1},{0,1}) 1"));
        assert_eq!(parse_dfa(&t).unwrap(), d);
    }

    #[test]
    fn errors_carry_line() {
        let e = parse_nfa("nfa a 1\ninitial: 0\naccepting: 0\n0 z 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 4, .. }));
    }
}
