//! Evaluation of automatic functions in time linear in the input length.

use std::collections::HashMap;

use crate::alphabet::{Sym, Word};
use crate::error::{Error, Result};
use crate::fa::StateId;
use crate::relation::{RegularRelation, Shape};

/// Precomputed index for evaluating a functional relation `(x_1..x_n, y)`.
///
/// For every state the transitions are grouped by the input part of the
/// column, so one step costs a hash lookup plus the output alternatives.
#[derive(Debug)]
pub struct Evaluator {
    shape: Shape,
    inputs: usize,
    out_pad: u32,
    initial: StateId,
    accepting: Vec<bool>,
    index: Vec<HashMap<u32, Vec<(u32, StateId)>>>,
}

#[derive(Clone, Copy)]
struct Node {
    state: StateId,
    ended: bool,
    prev: u32,
    digit: u32,
    ambiguous: bool,
}

impl Evaluator {
    pub fn new(rel: &RegularRelation) -> Result<Self> {
        let n = rel.arity();
        if n < 2 {
            return Err(Error::ArityMismatch(
                "evaluation needs at least one input track".into(),
            ));
        }
        let shape = rel.shape().clone();
        let inputs = n - 1;
        let out_pad = shape.pad(inputs);
        let out_stride = shape.encode_partial_stride(inputs);
        let dfa = rel.dfa();
        let mut index = Vec::with_capacity(dfa.num_states());
        let mut digits = Vec::new();
        for q in 0..dfa.num_states() as StateId {
            let mut m: HashMap<u32, Vec<(u32, StateId)>> = HashMap::new();
            for &(s, t) in dfa.transitions(q) {
                shape.decode_into(s, &mut digits);
                let d = digits[inputs];
                m.entry(s - d * out_stride).or_default().push((d, t));
            }
            index.push(m);
        }
        Ok(Evaluator {
            shape,
            inputs,
            out_pad,
            initial: dfa.initial(),
            accepting: (0..dfa.num_states() as StateId)
                .map(|q| dfa.is_accepting(q))
                .collect(),
            index,
        })
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    pub fn num_states(&self) -> usize {
        self.index.len()
    }

    /// The unique `y` with `(inputs, y)` in the relation.
    pub fn eval(&self, inputs: &[&Word]) -> Result<Word> {
        self.eval_counted(inputs).map(|(w, _)| w)
    }

    /// Like [`Evaluator::eval`], also returning the number of automaton
    /// transitions explored.
    pub fn eval_counted(&self, inputs: &[&Word]) -> Result<(Word, usize)> {
        if inputs.len() != self.inputs {
            return Err(Error::ArityMismatch(format!(
                "expected {} inputs, got {}",
                self.inputs,
                inputs.len()
            )));
        }
        for (i, w) in inputs.iter().enumerate() {
            self.shape.tracks()[i].check_word(w)?;
        }
        let len = inputs.iter().map(|w| w.len()).max().unwrap_or(0);
        let mut steps = 0usize;
        let mut layers: Vec<Vec<Node>> = Vec::with_capacity(len + 1);
        layers.push(vec![Node {
            state: self.initial,
            ended: false,
            prev: u32::MAX,
            digit: 0,
            ambiguous: false,
        }]);
        let mut col = vec![0u32; self.inputs + 1];
        let mut seen: HashMap<(StateId, bool), u32> = HashMap::new();
        for i in 0..len {
            for (t, w) in inputs.iter().enumerate() {
                col[t] = w.0.get(i).copied().unwrap_or(self.shape.pad(t));
            }
            col[self.inputs] = 0;
            let base = self.shape.encode_raw(&col);
            let prev = layers.last().expect("non-empty");
            let mut next: Vec<Node> = Vec::new();
            seen.clear();
            for (pi, node) in prev.iter().enumerate() {
                let Some(alts) = self.index[node.state as usize].get(&base) else {
                    continue;
                };
                for &(d, to) in alts {
                    steps += 1;
                    let is_pad = d == self.out_pad;
                    if node.ended && !is_pad {
                        continue;
                    }
                    let key = (to, is_pad);
                    match seen.get(&key) {
                        Some(&k) => next[k as usize].ambiguous = true,
                        None => {
                            seen.insert(key, next.len() as u32);
                            next.push(Node {
                                state: to,
                                ended: is_pad,
                                prev: pi as u32,
                                digit: d,
                                ambiguous: node.ambiguous,
                            });
                        }
                    }
                }
            }
            if next.is_empty() {
                return Err(Error::NoOutput);
            }
            layers.push(next);
        }
        let last = layers.last().expect("non-empty");
        let accepting: Vec<usize> = (0..last.len())
            .filter(|&k| self.accepting[last[k].state as usize])
            .collect();
        let (end, suffix) = match accepting.as_slice() {
            [k] => (*k, Vec::new()),
            [] => self.extend(last, &mut steps)?,
            _ => return Err(Error::NotFunctional("several outputs".into())),
        };
        let mut out = suffix;
        let mut k = end;
        let mut rev = Vec::with_capacity(len);
        for layer in layers.iter().skip(1).rev() {
            let node = layer[k];
            if node.ambiguous {
                return Err(Error::NotFunctional(
                    "two outputs share a prefix state".into(),
                ));
            }
            if node.digit != self.out_pad {
                rev.push(node.digit as Sym);
            }
            k = node.prev as usize;
        }
        rev.reverse();
        rev.append(&mut out);
        Ok((Word(rev), steps))
    }

    /// Output longer than every input: breadth-first search over columns
    /// whose input part is all padding, shortest and then smallest suffix.
    fn extend(&self, last: &[Node], steps: &mut usize) -> Result<(usize, Vec<Sym>)> {
        let mut col: Vec<u32> = (0..self.inputs).map(|t| self.shape.pad(t)).collect();
        col.push(0);
        let base = self.shape.encode_raw(&col);
        // BFS node: (state, parent index or start node, digit)
        let mut queue: Vec<(StateId, usize, u32, usize)> = Vec::new();
        let mut visited: HashMap<StateId, ()> = HashMap::new();
        for (k, node) in last.iter().enumerate() {
            if !node.ended && visited.insert(node.state, ()).is_none() {
                queue.push((node.state, usize::MAX, 0, k));
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let (q, _, _, start) = queue[head];
            if let Some(alts) = self.index[q as usize].get(&base) {
                for &(d, to) in alts {
                    *steps += 1;
                    if d == self.out_pad || visited.contains_key(&to) {
                        continue;
                    }
                    visited.insert(to, ());
                    queue.push((to, head, d, start));
                    if self.accepting[to as usize] {
                        let mut suffix = Vec::new();
                        let mut i = queue.len() - 1;
                        while queue[i].1 != usize::MAX {
                            suffix.push(queue[i].2 as Sym);
                            i = queue[i].1;
                        }
                        suffix.reverse();
                        return Ok((start, suffix));
                    }
                }
            }
            head += 1;
        }
        Err(Error::NoOutput)
    }
}

/// The unique `y` with `(inputs, y) ∈ r`.
pub fn eval_function(r: &RegularRelation, inputs: &[&Word]) -> Result<Word> {
    Evaluator::new(r)?.eval(inputs)
}
