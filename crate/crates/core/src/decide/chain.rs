//! Reachability search over a chain of binary relations read in lockstep.

use std::collections::HashMap;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::fa::StateId;
use crate::limits;
use crate::relation::RegularRelation;

/// Both tracks of a link have ended.
const FINISHED: StateId = StateId::MAX;

struct Link {
    /// Per state: input digit -> (output digit, successor).
    index: Vec<HashMap<u32, Vec<(u32, StateId)>>>,
    accepting: Vec<bool>,
    initial: StateId,
}

impl Link {
    fn new(r: &RegularRelation) -> Link {
        let dfa = r.dfa();
        let shape = r.shape();
        let mut digits = Vec::new();
        let index = (0..dfa.num_states() as StateId)
            .map(|q| {
                let mut m: HashMap<u32, Vec<(u32, StateId)>> = HashMap::new();
                for &(s, t) in dfa.transitions(q) {
                    shape.decode_into(s, &mut digits);
                    m.entry(digits[0]).or_default().push((digits[1], t));
                }
                m
            })
            .collect();
        Link {
            index,
            accepting: (0..dfa.num_states() as StateId)
                .map(|q| dfa.is_accepting(q))
                .collect(),
            initial: dfa.initial(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    states: Vec<StateId>,
    differ: bool,
}

/// Find words `u_0, ..., u_L` with `(u_{i-1}, u_i)` in `rels[i-1]` and
/// `u_0 != u_L`. Returns one such tuple of minimal length, or `None`.
pub fn chain_witness(rels: &[&RegularRelation]) -> Result<Option<Vec<Word>>> {
    if rels.is_empty() {
        return Ok(None);
    }
    for r in rels {
        if r.arity() != 2 {
            return Err(Error::ArityMismatch("chain links must be binary".into()));
        }
    }
    for w in rels.windows(2) {
        if w[0].tracks()[1] != w[1].tracks()[0] {
            return Err(Error::AlphabetMismatch(
                "adjacent chain links disagree".into(),
            ));
        }
    }
    let pad = rels[0].shape().pad(0);
    let links: Vec<Link> = rels.iter().map(|r| Link::new(r)).collect();
    let l = links.len();
    let start = Node {
        states: links.iter().map(|k| k.initial).collect(),
        differ: false,
    };
    let mut ids: HashMap<Node, usize> = HashMap::new();
    let mut nodes = vec![start.clone()];
    // (parent, column)
    let mut parent: Vec<Option<(usize, Vec<u32>)>> = vec![None];
    ids.insert(start, 0);
    let mut i = 0;
    let mut col = vec![0u32; l + 1];
    let mut next = vec![0 as StateId; l];
    while i < nodes.len() {
        let node = nodes[i].clone();
        if node.differ
            && node
                .states
                .iter()
                .zip(&links)
                .all(|(&q, k)| q == FINISHED || k.accepting[q as usize])
        {
            return Ok(Some(rebuild(&parent, i, l, pad)));
        }
        let mut found: Vec<(Vec<u32>, Vec<StateId>)> = Vec::new();
        // Choose the first link's column freely, then chain the rest.
        fn go(
            pad: u32,
            links: &[Link],
            states: &[StateId],
            k: usize,
            col: &mut Vec<u32>,
            next: &mut Vec<StateId>,
            out: &mut Vec<(Vec<u32>, Vec<StateId>)>,
        ) {
            if k == links.len() {
                if col.iter().any(|&d| d != pad) {
                    out.push((col.clone(), next.clone()));
                }
                return;
            }
            let q = states[k];
            let mut visit =
                |d_in: u32, d_out: u32, t: StateId, col: &mut Vec<u32>, next: &mut Vec<StateId>| {
                    col[k] = d_in;
                    col[k + 1] = d_out;
                    next[k] = t;
                    go(pad, links, states, k + 1, col, next, out);
                };
            // A link whose words have both ended idles on padding.
            if (q == FINISHED || links[k].accepting[q as usize]) && (k == 0 || col[k] == pad) {
                visit(pad, pad, FINISHED, col, next);
            }
            if q == FINISHED {
                return;
            }
            let idx = &links[k].index[q as usize];
            if k == 0 {
                let mut all: Vec<(u32, u32, StateId)> = idx
                    .iter()
                    .flat_map(|(&a, v)| v.iter().map(move |&(b, t)| (a, b, t)))
                    .collect();
                all.sort_unstable();
                for (a, b, t) in all {
                    visit(a, b, t, col, next);
                }
            } else if let Some(v) = idx.get(&col[k]) {
                for &(b, t) in v {
                    visit(col[k], b, t, col, next);
                }
            }
        }
        go(
            pad,
            &links,
            &node.states,
            0,
            &mut col,
            &mut next,
            &mut found,
        );
        for (c, st) in found {
            let n = Node {
                differ: node.differ || c[0] != c[l],
                states: st,
            };
            if !ids.contains_key(&n) {
                limits::check_states(nodes.len() + 1)?;
                ids.insert(n.clone(), nodes.len());
                nodes.push(n);
                parent.push(Some((i, c)));
            }
        }
        i += 1;
    }
    Ok(None)
}

fn rebuild(parent: &[Option<(usize, Vec<u32>)>], mut i: usize, l: usize, pad: u32) -> Vec<Word> {
    let mut cols = Vec::new();
    while let Some((p, c)) = &parent[i] {
        cols.push(c.clone());
        i = *p;
    }
    cols.reverse();
    (0..=l)
        .map(|t| Word(cols.iter().map(|c| c[t]).filter(|&d| d != pad).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::relation::machine;

    fn succ_mod(n: u32) -> RegularRelation {
        let words: Vec<Vec<Word>> = (0..n)
            .map(|d| vec![Word(vec![d]), Word(vec![(d + 1) % n])])
            .collect();
        RegularRelation::from_tuples(&[Alphabet::digits(n), Alphabet::digits(n)], &words).unwrap()
    }

    #[test]
    fn cycle_closes() {
        let r = succ_mod(3);
        assert!(chain_witness(&[&r, &r, &r]).unwrap().is_none());
        let w = chain_witness(&[&r, &r]).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        assert_ne!(w[0], w[2]);
    }

    #[test]
    fn links_may_finish_early() {
        let a = Alphabet::digits(2);
        let app = machine(
            &[a.clone(), a.clone()],
            false,
            |&done: &bool, c| match (done, c[0], c[1]) {
                (false, Some(x), Some(y)) if x == y => Some(false),
                (false, None, Some(0)) => Some(true),
                _ => None,
            },
            |&d, _| d,
        )
        .unwrap();
        let w = chain_witness(&[&app, &app, &app]).unwrap().unwrap();
        assert_eq!(
            w,
            vec![
                Word(vec![]),
                Word(vec![0]),
                Word(vec![0, 0]),
                Word(vec![0, 0, 0])
            ]
        );
    }

    #[test]
    fn length_changes_count() {
        let a = Alphabet::digits(2);
        // append a letter, then drop the last letter
        let app = machine(
            &[a.clone(), a.clone()],
            false,
            |&done: &bool, c| match (done, c[0], c[1]) {
                (false, Some(x), Some(y)) if x == y => Some(false),
                (false, None, Some(0)) => Some(true),
                _ => None,
            },
            |&d, _| d,
        )
        .unwrap();
        let drop = app.transpose().unwrap();
        assert!(chain_witness(&[&app, &drop]).unwrap().is_none());
        let w = chain_witness(&[&app]).unwrap().unwrap();
        assert_eq!(w, vec![Word(vec![]), Word(vec![0])]);
    }
}
