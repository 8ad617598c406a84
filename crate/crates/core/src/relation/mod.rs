//! Regular relations: sets of word tuples recognized over the padded
//! convolution alphabet.

mod join;
mod machine;
mod ops;
mod orders;

pub use join::{join, Constraint};
pub use machine::machine;
pub use orders::{equal_length, lex_order, llex_order, prefix_order};

use std::fmt;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::fa::text::{parse_dfa, write_dfa};
use crate::fa::{Dfa, Nfa, StateId};

/// Column layout of a convolution: track alphabets plus mixed-radix codes.
///
/// Digit `d` on track `i` is a symbol of track `i` when `d < size_i` and the
/// padding symbol when `d == size_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    tracks: Vec<Alphabet>,
    alphabet: Alphabet,
    radix: Vec<u64>,
    stride: Vec<u64>,
}

impl Shape {
    pub fn new(tracks: &[Alphabet]) -> Result<Self> {
        let alphabet = Alphabet::conv(tracks)?;
        let radix: Vec<u64> = tracks.iter().map(|t| t.size() as u64 + 1).collect();
        let mut stride = Vec::with_capacity(tracks.len());
        let mut acc = 1u64;
        for r in &radix {
            stride.push(acc);
            acc *= r;
        }
        Ok(Shape {
            tracks: tracks.to_vec(),
            alphabet,
            radix,
            stride,
        })
    }

    pub fn arity(&self) -> usize {
        self.tracks.len()
    }

    pub fn tracks(&self) -> &[Alphabet] {
        &self.tracks
    }

    /// The convolution alphabet (the track alphabet itself for arity one).
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    #[inline]
    pub fn pad(&self, track: usize) -> u32 {
        (self.radix[track] - 1) as u32
    }

    /// Mixed-radix value of a column without the all-padding check.
    #[inline]
    pub fn encode_raw(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .zip(&self.stride)
            .map(|(d, s)| *d as u64 * s)
            .sum::<u64>() as u32
    }

    /// Weight of one unit on `track` in the mixed-radix code.
    pub fn encode_partial_stride(&self, track: usize) -> u32 {
        self.stride[track] as u32
    }

    /// Symbol of a column, `None` for the all-padding column.
    #[inline]
    pub fn encode(&self, digits: &[u32]) -> Option<Sym> {
        let mut v = 0u64;
        for (d, s) in digits.iter().zip(&self.stride) {
            v += *d as u64 * s;
        }
        if v == self.alphabet.size() as u64 {
            None
        } else {
            Some(v as Sym)
        }
    }

    #[inline]
    pub fn decode_into(&self, sym: Sym, out: &mut Vec<u32>) {
        out.clear();
        let mut v = sym as u64;
        for r in &self.radix {
            out.push((v % r) as u32);
            v /= r;
        }
    }

    pub fn decode(&self, sym: Sym) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.arity());
        self.decode_into(sym, &mut v);
        v
    }

    #[inline]
    pub fn is_pad(&self, track: usize, digit: u32) -> bool {
        digit as u64 == self.radix[track] - 1
    }

    /// Convolution of one word per track.
    pub fn convolve(&self, words: &[Word]) -> Result<Word> {
        if words.len() != self.arity() {
            return Err(Error::ArityMismatch(format!(
                "{} words for {} tracks",
                words.len(),
                self.arity()
            )));
        }
        for (w, t) in words.iter().zip(&self.tracks) {
            t.check_word(w)?;
        }
        let len = words.iter().map(|w| w.len()).max().unwrap_or(0);
        let mut digits = vec![0u32; self.arity()];
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            for (i, w) in words.iter().enumerate() {
                digits[i] = w.0.get(k).copied().unwrap_or(self.pad(i));
            }
            out.push(self.encode(&digits).expect("column has a real symbol"));
        }
        Ok(Word(out))
    }

    /// Inverse of [`Shape::convolve`]; rejects words with a resumed track.
    pub fn deconvolve(&self, w: &Word) -> Result<Vec<Word>> {
        self.alphabet.check_word(w)?;
        let mut words = vec![Vec::new(); self.arity()];
        let mut ended = vec![false; self.arity()];
        let mut digits = Vec::new();
        for (k, &s) in w.0.iter().enumerate() {
            self.decode_into(s, &mut digits);
            for (i, &d) in digits.iter().enumerate() {
                if self.is_pad(i, d) {
                    ended[i] = true;
                } else if ended[i] {
                    return Err(Error::InvalidConvolution(format!(
                        "track {i} resumes after padding at column {k}"
                    )));
                } else {
                    words[i].push(d);
                }
            }
        }
        Ok(words.into_iter().map(Word).collect())
    }
}

/// An n-ary regular relation, kept as a minimized deterministic automaton over
/// the convolution of its track alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRelation {
    shape: Shape,
    dfa: Dfa,
}

impl RegularRelation {
    /// Wrap an automaton; it is minimized, and must accept only valid
    /// convolutions (not checked here, see [`RegularRelation::is_valid`]).
    pub fn from_dfa(tracks: &[Alphabet], dfa: Dfa) -> Result<Self> {
        let shape = Shape::new(tracks)?;
        if dfa.alphabet() != shape.alphabet() {
            return Err(Error::AlphabetMismatch(format!(
                "automaton over {} for tracks {}",
                dfa.alphabet(),
                shape.alphabet()
            )));
        }
        Ok(RegularRelation {
            shape,
            dfa: dfa.minimize(),
        })
    }

    /// Like [`RegularRelation::from_dfa`] but also restricts to valid convolutions.
    pub fn from_dfa_checked(tracks: &[Alphabet], dfa: Dfa) -> Result<Self> {
        let r = Self::from_dfa(tracks, dfa)?;
        if tracks.len() == 1 {
            return Ok(r);
        }
        let map: Vec<usize> = (0..tracks.len()).collect();
        join(tracks, &[Constraint::pos(&r, map)])
    }

    pub(crate) fn from_minimal(shape: Shape, dfa: Dfa) -> Self {
        RegularRelation { shape, dfa }
    }

    /// A unary relation from a language.
    pub fn unary(dfa: &Dfa) -> Self {
        RegularRelation {
            shape: Shape::new(std::slice::from_ref(dfa.alphabet())).expect("one track"),
            dfa: dfa.minimize(),
        }
    }

    /// All valid convolutions over the tracks.
    pub fn universal(tracks: &[Alphabet]) -> Result<Self> {
        if tracks.len() == 1 {
            return Ok(Self::unary(&Dfa::universal(tracks[0].clone())));
        }
        join(tracks, &[])
    }

    pub fn empty(tracks: &[Alphabet]) -> Result<Self> {
        let shape = Shape::new(tracks)?;
        let dfa = Dfa::empty(shape.alphabet().clone());
        Ok(RegularRelation { shape, dfa })
    }

    /// Finite relation listing the given tuples.
    pub fn from_tuples(tracks: &[Alphabet], tuples: &[Vec<Word>]) -> Result<Self> {
        let shape = Shape::new(tracks)?;
        let mut nfa = Nfa::new(shape.alphabet().clone(), 1);
        nfa.add_initial(0);
        let mut edges = Vec::new();
        let mut next = 1;
        for t in tuples {
            let w = shape.convolve(t)?;
            let mut q: StateId = 0;
            for &s in &w.0 {
                nfa.add_state();
                edges.push((q, s, next));
                q = next;
                next += 1;
            }
            nfa.set_accepting(q, true);
        }
        nfa.extend_transitions(edges);
        Ok(RegularRelation {
            dfa: nfa.determinize().minimize(),
            shape,
        })
    }

    pub fn arity(&self) -> usize {
        self.shape.arity()
    }

    pub fn tracks(&self) -> &[Alphabet] {
        self.shape.tracks()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.shape.alphabet()
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    pub fn contains(&self, words: &[Word]) -> Result<bool> {
        let w = self.shape.convolve(words)?;
        self.dfa.accepts(&w)
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    /// The llex-least shortest tuple.
    pub fn witness(&self) -> Option<Vec<Word>> {
        self.dfa.shortest_witness().map(|w| {
            self.shape
                .deconvolve(&w)
                .expect("relations hold valid convolutions")
        })
    }

    /// Tuples whose convolution has length at most `max_len`, in llex order
    /// of their convolutions.
    pub fn enumerate(&self, max_len: usize) -> Vec<Vec<Word>> {
        self.dfa
            .enumerate(crate::fa::Limit::MaxLen(max_len))
            .iter()
            .map(|w| self.shape.deconvolve(w).expect("valid convolution"))
            .collect()
    }

    /// True when every accepted word is a valid convolution.
    pub fn is_valid(&self) -> bool {
        if self.arity() == 1 {
            return true;
        }
        let all = join(self.tracks(), &[]).expect("same tracks");
        self.dfa.is_subset_of(all.dfa()).unwrap_or(false)
    }

    fn check_same(&self, other: &RegularRelation) -> Result<()> {
        if self.tracks() != other.tracks() {
            return Err(Error::ArityMismatch(format!(
                "tracks {} vs {}",
                self.alphabet(),
                other.alphabet()
            )));
        }
        Ok(())
    }

    fn identity_map(&self) -> Vec<usize> {
        (0..self.arity()).collect()
    }

    pub fn intersect(&self, other: &RegularRelation) -> Result<RegularRelation> {
        self.check_same(other)?;
        let dfa = self.dfa.intersect(&other.dfa)?;
        Ok(RegularRelation::from_minimal(self.shape.clone(), dfa))
    }

    pub fn union(&self, other: &RegularRelation) -> Result<RegularRelation> {
        self.check_same(other)?;
        let dfa = self.dfa.union(&other.dfa)?;
        Ok(RegularRelation::from_minimal(self.shape.clone(), dfa))
    }

    pub fn difference(&self, other: &RegularRelation) -> Result<RegularRelation> {
        self.check_same(other)?;
        let dfa = self.dfa.difference(&other.dfa)?;
        Ok(RegularRelation::from_minimal(self.shape.clone(), dfa))
    }

    /// Complement relative to all tuples of words over the tracks.
    pub fn complement(&self) -> Result<RegularRelation> {
        let map = self.identity_map();
        join(self.tracks(), &[Constraint::neg(self, map)])
    }

    /// Language equality.
    pub fn equivalent(&self, other: &RegularRelation) -> bool {
        self.tracks() == other.tracks() && self.dfa == other.dfa
    }

    /// Tuple containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RegularRelation) -> Result<bool> {
        self.check_same(other)?;
        self.dfa.is_subset_of(&other.dfa)
    }

    pub fn to_text(&self) -> String {
        format!(
            "relation {} over {}\n{}",
            self.arity(),
            self.alphabet().to_expr(),
            write_dfa(&self.dfa)
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let text = text.trim_start();
        let (header, rest) = text
            .split_once('\n')
            .ok_or_else(|| Error::Format("missing relation header".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "relation" || toks[2] != "over" {
            return Err(Error::Format(format!("bad relation header `{header}`")));
        }
        let arity: usize = toks[1]
            .parse()
            .map_err(|_| Error::Format("bad arity".into()))?;
        let alphabet = Alphabet::from_expr(toks[3])?;
        let tracks = if arity == 1 {
            vec![alphabet]
        } else {
            match alphabet.tracks() {
                Some(t) if t.len() == arity => t.to_vec(),
                _ => return Err(Error::Format("alphabet does not match arity".into())),
            }
        };
        let dfa = parse_dfa(rest)?;
        Self::from_dfa(&tracks, dfa)
    }
}

impl fmt::Display for RegularRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation/{} over {} ({} states)",
            self.arity(),
            self.alphabet(),
            self.num_states()
        )
    }
}

/// Convolution of words over a common alphabet.
pub fn convolve(alphabet: &Alphabet, words: &[Word]) -> Result<Word> {
    Shape::new(&vec![alphabet.clone(); words.len()])?.convolve(words)
}

/// Split a convolution over `n` copies of `alphabet`.
pub fn deconvolve(alphabet: &Alphabet, n: usize, w: &Word) -> Result<Vec<Word>> {
    Shape::new(&vec![alphabet.clone(); n])?.deconvolve(w)
}

/// Automaton accepting exactly the valid convolutions of `n` words over `alphabet`.
pub fn valid_convolution(alphabet: &Alphabet, n: usize) -> Result<Dfa> {
    Ok(RegularRelation::universal(&vec![alphabet.clone(); n])?.dfa)
}

#[cfg(test)]
mod tests;
