use std::collections::{HashMap, VecDeque};

use crate::alphabet::{llex_cmp, Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::fa::nfa::{Limit, Nfa};
use crate::fa::StateId;

/// Deterministic automaton with sparse transition rows.
///
/// A symbol missing from a row leads to rejection. Minimized automata keep an
/// explicit non-accepting sink state (last id, empty row) whenever some live
/// state is incomplete, so `num_states` is the size of the minimal complete
/// automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    trans: Vec<Vec<(Sym, StateId)>>,
    initial: StateId,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Rows must be sorted by symbol with no repeated symbols.
    pub fn from_parts(
        alphabet: Alphabet,
        trans: Vec<Vec<(Sym, StateId)>>,
        initial: StateId,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(trans.len(), accepting.len());
        debug_assert!(trans.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        Dfa {
            alphabet,
            trans,
            initial,
            accepting,
        }
    }

    /// One-state automaton for the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Dfa::from_parts(alphabet, vec![Vec::new()], 0, vec![false])
    }

    /// One-state automaton accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let row = (0..alphabet.size()).map(|s| (s, 0)).collect();
        Dfa::from_parts(alphabet, vec![row], 0, vec![true])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(q, _)| q as StateId)
    }

    pub fn transitions(&self, q: StateId) -> &[(Sym, StateId)] {
        &self.trans[q as usize]
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(|r| r.len()).sum()
    }

    #[inline]
    pub fn step(&self, q: StateId, a: Sym) -> Option<StateId> {
        let row = &self.trans[q as usize];
        row.binary_search_by_key(&a, |e| e.0).ok().map(|i| row[i].1)
    }

    /// Run from `q` over `w`; `None` once a transition is missing.
    pub fn run_from(&self, mut q: StateId, w: &[Sym]) -> Option<StateId> {
        for &a in w {
            q = self.step(q, a)?;
        }
        Some(q)
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w)?;
        Ok(self
            .run_from(self.initial, &w.0)
            .is_some_and(|q| self.is_accepting(q)))
    }

    /// True when every state has a transition on every symbol.
    pub fn is_complete(&self) -> bool {
        let n = self.alphabet.size() as usize;
        self.trans.iter().all(|r| r.len() == n)
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet.clone(), self.num_states());
        n.add_initial(self.initial);
        for q in 0..self.num_states() {
            n.set_accepting(q as StateId, self.accepting[q]);
        }
        n.extend_transitions(
            self.trans
                .iter()
                .enumerate()
                .flat_map(|(p, r)| r.iter().map(move |&(s, q)| (p as StateId, s, q))),
        );
        n
    }

    /// Complete transition function with an explicit sink.
    pub fn completed(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let n = self.alphabet.size();
        let sink = self.num_states() as StateId;
        let mut trans: Vec<Vec<(Sym, StateId)>> = self
            .trans
            .iter()
            .map(|row| {
                let mut full = Vec::with_capacity(n as usize);
                let mut it = row.iter().peekable();
                for s in 0..n {
                    match it.peek() {
                        Some(&&(t, q)) if t == s => {
                            full.push((s, q));
                            it.next();
                        }
                        _ => full.push((s, sink)),
                    }
                }
                full
            })
            .collect();
        trans.push((0..n).map(|s| (s, sink)).collect());
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa::from_parts(self.alphabet.clone(), trans, self.initial, accepting)
    }

    /// Complement with respect to all words over the alphabet, minimized.
    pub fn complement(&self) -> Dfa {
        let mut c = self.completed();
        for a in &mut c.accepting {
            *a = !*a;
        }
        c.minimize()
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// Product construction. With `union_like` a missing transition on one
    /// side continues in an implicit dead state instead of cutting the run.
    fn product(&self, other: &Dfa, op: fn(bool, bool) -> bool, union_like: bool) -> Result<Dfa> {
        self.check_alphabet(other)?;
        const DEAD: StateId = StateId::MAX;
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut trans = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let acc = |d: &Dfa, s: StateId| s != DEAD && d.is_accepting(s);
            accepting.push(op(acc(self, p), acc(other, q)));
            let empty: &[(Sym, StateId)] = &[];
            let ra = if p == DEAD {
                empty
            } else {
                &self.trans[p as usize]
            };
            let rb = if q == DEAD {
                empty
            } else {
                &other.trans[q as usize]
            };
            let mut row = Vec::new();
            let (mut x, mut y) = (0, 0);
            loop {
                let sa = ra.get(x).map(|e| e.0);
                let sb = rb.get(y).map(|e| e.0);
                let (sym, tp, tq) = match (sa, sb) {
                    (None, None) => break,
                    (Some(a), Some(b)) if a == b => {
                        x += 1;
                        y += 1;
                        (a, ra[x - 1].1, rb[y - 1].1)
                    }
                    (Some(a), b) if b.is_none_or(|b| a < b) => {
                        x += 1;
                        (a, ra[x - 1].1, DEAD)
                    }
                    (_, Some(b)) => {
                        y += 1;
                        (b, DEAD, rb[y - 1].1)
                    }
                    _ => unreachable!(),
                };
                if !union_like && (tp == DEAD || tq == DEAD) {
                    continue;
                }
                let key = (tp, tq);
                let id = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    (pairs.len() - 1) as StateId
                });
                row.push((sym, id));
            }
            trans.push(row);
            i += 1;
        }
        Ok(Dfa::from_parts(self.alphabet.clone(), trans, 0, accepting).minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b, false)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b, true)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b, true)
    }

    pub fn symmetric_difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a != b, true)
    }

    /// Language equality.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.check_alphabet(other)?;
        Ok(self.minimize() == other.minimize())
    }

    /// Language inclusion `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Reachable states from the initial state.
    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial as usize] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &(_, t) in &self.trans[q as usize] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which an accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (p, row) in self.trans.iter().enumerate() {
            for &(_, q) in row {
                rev[q as usize].push(p as StateId);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<StateId> = (0..n as StateId).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Minimal automaton with canonical state numbering: breadth-first from
    /// the initial state following symbols in increasing order, sink last.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let co = self.coreachable();
        let live: Vec<bool> = reach.iter().zip(&co).map(|(a, b)| *a && *b).collect();
        if !live[self.initial as usize] {
            return Dfa::empty(self.alphabet.clone());
        }
        // Trimmed rows over live states.
        let rows: Vec<Vec<(Sym, StateId)>> = self
            .trans
            .iter()
            .enumerate()
            .map(|(q, r)| {
                if live[q] {
                    r.iter().filter(|e| live[e.1 as usize]).copied().collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let states: Vec<StateId> = (0..self.num_states() as StateId)
            .filter(|&q| live[q as usize])
            .collect();

        // Moore refinement.
        let mut class = vec![u32::MAX; self.num_states()];
        let mut count = 0u32;
        {
            let mut seen: HashMap<bool, u32> = HashMap::new();
            for &q in &states {
                let c = *seen.entry(self.accepting[q as usize]).or_insert_with(|| {
                    count += 1;
                    count - 1
                });
                class[q as usize] = c;
            }
        }
        loop {
            let mut sigs: HashMap<(u32, Vec<(Sym, u32)>), u32> =
                HashMap::with_capacity(states.len());
            let mut next = vec![u32::MAX; self.num_states()];
            let mut n = 0u32;
            for &q in &states {
                let sig: Vec<(Sym, u32)> = rows[q as usize]
                    .iter()
                    .map(|&(s, t)| (s, class[t as usize]))
                    .collect();
                let c = *sigs.entry((class[q as usize], sig)).or_insert_with(|| {
                    n += 1;
                    n - 1
                });
                next[q as usize] = c;
            }
            class = next;
            if n == count {
                break;
            }
            count = n;
        }

        // Canonical renumbering by BFS over class representatives.
        let mut rep = vec![StateId::MAX; count as usize];
        for &q in &states {
            let c = class[q as usize] as usize;
            if rep[c] == StateId::MAX {
                rep[c] = q;
            }
        }
        let mut order = vec![StateId::MAX; count as usize];
        let mut queue = VecDeque::new();
        let mut next_id = 0;
        let c0 = class[self.initial as usize] as usize;
        order[c0] = 0;
        next_id += 1;
        queue.push_back(c0);
        let mut trans: Vec<Vec<(Sym, StateId)>> = Vec::with_capacity(count as usize);
        let mut accepting = Vec::with_capacity(count as usize);
        let full = self.alphabet.size() as usize;
        let mut incomplete = false;
        while let Some(c) = queue.pop_front() {
            let q = rep[c];
            accepting.push(self.accepting[q as usize]);
            let mut row = Vec::with_capacity(rows[q as usize].len());
            for &(s, t) in &rows[q as usize] {
                let tc = class[t as usize] as usize;
                if order[tc] == StateId::MAX {
                    order[tc] = next_id;
                    next_id += 1;
                    queue.push_back(tc);
                }
                row.push((s, order[tc]));
            }
            if row.len() < full {
                incomplete = true;
            }
            trans.push(row);
        }
        if incomplete {
            trans.push(Vec::new());
            accepting.push(false);
        }
        Dfa::from_parts(self.alphabet.clone(), trans, 0, accepting)
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_witness().is_none()
    }

    /// Shortest accepted word, least in llex order among shortest ones.
    pub fn shortest_witness(&self) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(StateId, Sym)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial as usize] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.is_accepting(q) {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    w.push(s);
                    cur = p;
                }
                w.reverse();
                return Some(Word(w));
            }
            for &(s, t) in &self.trans[q as usize] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Accepted words in llex order within the limit.
    pub fn enumerate(&self, limit: Limit) -> Vec<Word> {
        let d = self.minimize();
        let co = d.coreachable();
        let n = d.num_states();
        let (max_len, max_count) = match limit {
            Limit::MaxLen(l) => (l, usize::MAX),
            Limit::Count(c) => (usize::MAX, c),
        };
        let mut out = Vec::new();
        if max_count == 0 || !co[d.initial as usize] {
            return out;
        }
        // can[k][q]: an accepting state is reachable from q in exactly k steps.
        let mut can: Vec<Vec<bool>> = vec![d.accepting.clone()];
        let mut len = 0usize;
        let mut empty_layers = 0usize;
        loop {
            if len > max_len || out.len() >= max_count {
                break;
            }
            while can.len() <= len {
                let prev = can.last().unwrap();
                let layer: Vec<bool> = (0..n)
                    .map(|q| d.trans[q].iter().any(|&(_, t)| prev[t as usize]))
                    .collect();
                can.push(layer);
            }
            if can[len][d.initial as usize] {
                empty_layers = 0;
                let mut stack: Vec<(StateId, usize, Vec<Sym>)> = vec![(d.initial, 0, Vec::new())];
                // Depth-first in reverse symbol order so pops come out lexicographically.
                while let Some((q, depth, w)) = stack.pop() {
                    if depth == len {
                        out.push(Word(w));
                        if out.len() >= max_count {
                            break;
                        }
                        continue;
                    }
                    let rem = len - depth - 1;
                    for &(s, t) in d.trans[q as usize].iter().rev() {
                        if can[rem][t as usize] {
                            let mut w2 = w.clone();
                            w2.push(s);
                            stack.push((t, depth + 1, w2));
                        }
                    }
                }
            } else {
                empty_layers += 1;
                // Pumping: n empty lengths in a row means nothing longer is accepted.
                if empty_layers > n {
                    break;
                }
            }
            len += 1;
        }
        debug_assert!(out.windows(2).all(|p| llex_cmp(&p[0].0, &p[1].0).is_lt()));
        out
    }

    /// Reverse language, as a minimized automaton.
    pub fn reverse(&self) -> Dfa {
        self.to_nfa().reverse().determinize().minimize()
    }
}
