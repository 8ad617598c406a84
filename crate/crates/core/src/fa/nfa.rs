use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::fa::dfa::Dfa;
use crate::fa::StateId;

/// Nondeterministic automaton without epsilon moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    /// Per state: outgoing `(symbol, target)` pairs, kept sorted and deduplicated.
    trans: Vec<Vec<(Sym, StateId)>>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        Nfa {
            alphabet,
            trans: vec![Vec::new(); states],
            initial: Vec::new(),
            accepting: vec![false; states],
        }
    }

    /// Automaton for the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::new(alphabet, 0)
    }

    /// Automaton accepting only `w`.
    pub fn word(alphabet: Alphabet, w: &Word) -> Self {
        let mut n = Nfa::new(alphabet, w.len() + 1);
        n.add_initial(0);
        n.set_accepting(w.len() as StateId, true);
        for (i, &s) in w.0.iter().enumerate() {
            n.add_transition(i as StateId, s, i as StateId + 1);
        }
        n
    }

    /// Automaton accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut n = Nfa::new(alphabet.clone(), 1);
        n.add_initial(0);
        n.set_accepting(0, true);
        n.trans[0] = (0..alphabet.size()).map(|s| (s, 0)).collect();
        n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn add_state(&mut self) -> StateId {
        self.trans.push(Vec::new());
        self.accepting.push(false);
        (self.trans.len() - 1) as StateId
    }

    pub fn add_initial(&mut self, q: StateId) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
            self.initial.sort_unstable();
        }
    }

    pub fn set_accepting(&mut self, q: StateId, acc: bool) {
        self.accepting[q as usize] = acc;
    }

    pub fn add_transition(&mut self, from: StateId, sym: Sym, to: StateId) {
        let row = &mut self.trans[from as usize];
        if let Err(pos) = row.binary_search(&(sym, to)) {
            row.insert(pos, (sym, to));
        }
    }

    /// Bulk insertion; rows are normalized afterwards.
    pub fn extend_transitions(&mut self, edges: impl IntoIterator<Item = (StateId, Sym, StateId)>) {
        for (p, s, q) in edges {
            self.trans[p as usize].push((s, q));
        }
        for row in &mut self.trans {
            row.sort_unstable();
            row.dedup();
        }
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub fn transitions(&self, q: StateId) -> &[(Sym, StateId)] {
        &self.trans[q as usize]
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(|r| r.len()).sum()
    }

    fn check_alphabet(&self, other: &Alphabet) -> Result<()> {
        if &self.alphabet != other {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other
            )));
        }
        Ok(())
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w)?;
        let mut cur = vec![false; self.num_states()];
        for &q in &self.initial {
            cur[q as usize] = true;
        }
        for &a in &w.0 {
            let mut next = vec![false; self.num_states()];
            let mut any = false;
            for (q, &on) in cur.iter().enumerate() {
                if !on {
                    continue;
                }
                let row = &self.trans[q];
                let start = row.partition_point(|&(s, _)| s < a);
                for &(s, t) in &row[start..] {
                    if s != a {
                        break;
                    }
                    next[t as usize] = true;
                    any = true;
                }
            }
            if !any {
                return Ok(false);
            }
            cur = next;
        }
        Ok(cur
            .iter()
            .enumerate()
            .any(|(q, &on)| on && self.accepting[q]))
    }

    /// Subset construction over reachable subsets. The result is not minimized.
    pub fn determinize(&self) -> Dfa {
        let mut init: Vec<StateId> = self.initial.clone();
        init.sort_unstable();
        init.dedup();
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut subsets: Vec<Vec<StateId>> = Vec::new();
        let mut trans: Vec<Vec<(Sym, StateId)>> = Vec::new();
        let mut accepting = Vec::new();
        index.insert(init.clone(), 0);
        subsets.push(init);
        let mut queue = VecDeque::from([0usize]);
        let mut buf: Vec<(Sym, StateId)> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let subset = subsets[i].clone();
            accepting.push(subset.iter().any(|&q| self.accepting[q as usize]));
            buf.clear();
            for &q in &subset {
                buf.extend_from_slice(&self.trans[q as usize]);
            }
            buf.sort_unstable();
            buf.dedup();
            let mut row = Vec::new();
            let mut k = 0;
            while k < buf.len() {
                let sym = buf[k].0;
                let mut target = Vec::new();
                while k < buf.len() && buf[k].0 == sym {
                    target.push(buf[k].1);
                    k += 1;
                }
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len() as StateId;
                        index.insert(target.clone(), id);
                        subsets.push(target);
                        queue.push_back(id as usize);
                        id
                    }
                };
                row.push((sym, id));
            }
            trans.push(row);
        }
        // `accepting` and `trans` were filled in BFS order, which matches ids.
        Dfa::from_parts(self.alphabet.clone(), trans, 0, accepting)
    }

    /// Language `{ reverse(w) : w in L }`.
    pub fn reverse(&self) -> Nfa {
        let mut r = Nfa::new(self.alphabet.clone(), self.num_states());
        let mut edges = Vec::with_capacity(self.num_transitions());
        for (p, row) in self.trans.iter().enumerate() {
            for &(s, q) in row {
                edges.push((q, s, p as StateId));
            }
        }
        r.extend_transitions(edges);
        for (q, &acc) in self.accepting.iter().enumerate() {
            if acc {
                r.add_initial(q as StateId);
            }
        }
        for &q in &self.initial {
            r.set_accepting(q, true);
        }
        r
    }

    /// Disjoint union of two automata over the same alphabet.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(&other.alphabet)?;
        let off = self.num_states() as StateId;
        let mut r = self.clone();
        for row in &other.trans {
            r.trans
                .push(row.iter().map(|&(s, q)| (s, q + off)).collect());
        }
        r.accepting.extend_from_slice(&other.accepting);
        for &q in &other.initial {
            r.add_initial(q + off);
        }
        Ok(r)
    }

    /// Synchronous product accepting the intersection.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(&other.alphabet)?;
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let mut r = Nfa::new(self.alphabet.clone(), 0);
        let mut queue = VecDeque::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = r.add_state();
                index.insert((p, q), id);
                pairs.push((p, q));
                r.add_initial(id);
                queue.push_back(id);
            }
        }
        let mut edges = Vec::new();
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id as usize];
            r.set_accepting(id, self.is_accepting(p) && other.is_accepting(q));
            let (ra, rb) = (&self.trans[p as usize], &other.trans[q as usize]);
            let (mut i, mut j) = (0, 0);
            while i < ra.len() && j < rb.len() {
                let (sa, sb) = (ra[i].0, rb[j].0);
                if sa < sb {
                    i += 1;
                } else if sb < sa {
                    j += 1;
                } else {
                    let je = j + rb[j..].iter().take_while(|e| e.0 == sa).count();
                    while i < ra.len() && ra[i].0 == sa {
                        for &(_, t2) in &rb[j..je] {
                            let key = (ra[i].1, t2);
                            let tid = match index.get(&key) {
                                Some(&t) => t,
                                None => {
                                    let t = r.add_state();
                                    index.insert(key, t);
                                    pairs.push(key);
                                    queue.push_back(t);
                                    t
                                }
                            };
                            edges.push((id, sa, tid));
                        }
                        i += 1;
                    }
                    j = je;
                }
            }
        }
        r.extend_transitions(edges);
        Ok(r)
    }

    /// `L(self) \ L(other)`.
    pub fn difference(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(&other.alphabet)?;
        let comp = other.determinize().complement();
        self.intersect(&comp.to_nfa())
    }

    /// Concatenation `L(self) L(other)`.
    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(&other.alphabet)?;
        let off = self.num_states() as StateId;
        let mut r = self.clone();
        for row in &other.trans {
            r.trans
                .push(row.iter().map(|&(s, q)| (s, q + off)).collect());
        }
        r.accepting.extend_from_slice(&other.accepting);
        let other_init_acc = other.initial.iter().any(|&q| other.is_accepting(q));
        let mut edges = Vec::new();
        for p in 0..self.num_states() {
            if self.accepting[p] {
                for &q0 in &other.initial {
                    for &(s, t) in &other.trans[q0 as usize] {
                        edges.push((p as StateId, s, t + off));
                    }
                }
            }
        }
        for q in 0..self.num_states() {
            if !(self.accepting[q] && other_init_acc) {
                r.accepting[q] = false;
            }
        }
        r.extend_transitions(edges);
        Ok(r)
    }

    /// Kleene star.
    pub fn star(&self) -> Nfa {
        let mut r = self.clone();
        let fresh = r.add_state();
        r.set_accepting(fresh, true);
        let mut edges = Vec::new();
        for &q0 in &self.initial {
            for &(s, t) in &self.trans[q0 as usize] {
                edges.push((fresh, s, t));
                for p in 0..self.num_states() {
                    if self.accepting[p] {
                        edges.push((p as StateId, s, t));
                    }
                }
            }
        }
        r.extend_transitions(edges);
        r.initial = vec![fresh];
        r
    }

    /// Relabel every transition through `f`, which may fan out to several
    /// symbols (or none) of `alphabet`.
    pub fn map_symbols<F>(&self, alphabet: Alphabet, mut f: F) -> Nfa
    where
        F: FnMut(Sym) -> Vec<Sym>,
    {
        let mut cache: HashMap<Sym, Vec<Sym>> = HashMap::new();
        let mut r = Nfa::new(alphabet, self.num_states());
        r.initial = self.initial.clone();
        r.accepting = self.accepting.clone();
        let mut edges = Vec::new();
        for (p, row) in self.trans.iter().enumerate() {
            for &(s, q) in row {
                let img = cache.entry(s).or_insert_with(|| f(s));
                for &t in img.iter() {
                    edges.push((p as StateId, t, q));
                }
            }
        }
        r.extend_transitions(edges);
        r
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_witness().is_none()
    }

    /// Shortest accepted word, least in length-lexicographic order among those.
    pub fn shortest_witness(&self) -> Option<Word> {
        self.determinize().shortest_witness()
    }

    /// Accepted words in length-lexicographic order, within the limit.
    pub fn enumerate(&self, limit: Limit) -> Vec<Word> {
        self.determinize().minimize().enumerate(limit)
    }
}

/// Bound for [`Nfa::enumerate`] and [`Dfa::enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    /// All accepted words of at most this length.
    MaxLen(usize),
    /// The first `n` accepted words.
    Count(usize),
}
