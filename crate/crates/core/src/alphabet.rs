//! Indexed alphabets and words.
//!
//! Symbols are dense `u32` indices. An alphabet is either a plain list of
//! names, the padded convolution of several track alphabets, or a disjoint
//! sum. In a convolution alphabet the padding symbol `#` of track `i` is the
//! digit `size_i`, and the all-padding column is left out, so a convolution
//! of tracks with sizes `s_0..s_k` has `prod(s_i + 1) - 1` symbols.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Sym = u32;

/// Display name of the padding symbol.
pub const PAD_NAME: &str = "#";

/// A word over some alphabet, stored as symbol indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Sym>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<Sym>> for Word {
    fn from(v: Vec<Sym>) -> Self {
        Word(v)
    }
}

/// Length-lexicographic comparison: shorter words first, then lexicographic.
pub fn llex_cmp(a: &[Sym], b: &[Sym]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug)]
enum Kind {
    Plain {
        names: Vec<String>,
        index: HashMap<String, Sym>,
    },
    Conv {
        tracks: Vec<Alphabet>,
        /// `stride[i] = prod_{j<i} (size_j + 1)`
        stride: Vec<u64>,
    },
    Sum {
        parts: Vec<Alphabet>,
        offsets: Vec<Sym>,
    },
}

#[derive(Debug)]
struct Inner {
    kind: Kind,
    size: u32,
}

/// A finite alphabet with dense symbol indices. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Alphabet(Arc<Inner>);

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Plain { names: a, .. }, Kind::Plain { names: b, .. }) => a == b,
            (Kind::Conv { tracks: a, .. }, Kind::Conv { tracks: b, .. }) => a == b,
            (Kind::Sum { parts: a, .. }, Kind::Sum { parts: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Eq for Alphabet {}

impl Hash for Alphabet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0.kind {
            Kind::Plain { names, .. } => {
                0u8.hash(state);
                names.hash(state);
            }
            Kind::Conv { tracks, .. } => {
                1u8.hash(state);
                tracks.hash(state);
            }
            Kind::Sum { parts, .. } => {
                2u8.hash(state);
                parts.hash(state);
            }
        }
    }
}

fn valid_plain_name(s: &str) -> bool {
    !s.is_empty()
        && s != PAD_NAME
        && !s
            .chars()
            .any(|c| c.is_whitespace() || "(){},:#\"".contains(c))
}

impl Alphabet {
    /// A plain alphabet from display names (unique, non-empty, no reserved characters).
    pub fn plain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_plain_name(n) {
                return Err(Error::InvalidAlphabet(format!("bad symbol name `{n}`")));
            }
            if index.insert(n.to_string(), i as Sym).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet(Arc::new(Inner {
            size: out.len() as u32,
            kind: Kind::Plain { names: out, index },
        })))
    }

    /// The binary digit alphabet `{0,1}`.
    pub fn binary() -> Self {
        Self::digits(2)
    }

    /// Digits `0..base` as a plain alphabet.
    pub fn digits(base: u32) -> Self {
        let names: Vec<String> = (0..base).map(|d| d.to_string()).collect();
        Self::plain(&names).expect("digit names are valid")
    }

    /// Padded convolution alphabet of the given tracks. Arity one returns the
    /// track alphabet itself.
    pub fn conv(tracks: &[Alphabet]) -> Result<Self> {
        match tracks.len() {
            0 => Err(Error::InvalidAlphabet("convolution of zero tracks".into())),
            1 => Ok(tracks[0].clone()),
            _ => {
                let mut stride = Vec::with_capacity(tracks.len());
                let mut acc: u64 = 1;
                for t in tracks {
                    stride.push(acc);
                    acc = acc
                        .checked_mul(t.size() as u64 + 1)
                        .filter(|v| *v - 1 < u32::MAX as u64)
                        .ok_or_else(|| {
                            Error::AlphabetTooLarge(format!(
                                "convolution of {} tracks exceeds u32 symbols",
                                tracks.len()
                            ))
                        })?;
                }
                Ok(Alphabet(Arc::new(Inner {
                    size: (acc - 1) as u32,
                    kind: Kind::Conv {
                        tracks: tracks.to_vec(),
                        stride,
                    },
                })))
            }
        }
    }

    /// Convolution of `n` copies of `self`.
    pub fn power(&self, n: usize) -> Result<Self> {
        Self::conv(&vec![self.clone(); n])
    }

    /// Disjoint sum of alphabets; symbol names are prefixed with the part index.
    pub fn sum(parts: &[Alphabet]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidAlphabet("sum of zero alphabets".into()));
        }
        let mut offsets = Vec::new();
        let mut acc: u64 = 0;
        for p in parts {
            offsets.push(acc as Sym);
            acc += p.size() as u64;
        }
        if acc > u32::MAX as u64 {
            return Err(Error::AlphabetTooLarge("sum alphabet".into()));
        }
        Ok(Alphabet(Arc::new(Inner {
            size: acc as u32,
            kind: Kind::Sum {
                parts: parts.to_vec(),
                offsets,
            },
        })))
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Track alphabets when this is a convolution alphabet of arity at least two.
    pub fn tracks(&self) -> Option<&[Alphabet]> {
        match &self.0.kind {
            Kind::Conv { tracks, .. } => Some(tracks),
            _ => None,
        }
    }

    pub fn sum_parts(&self) -> Option<&[Alphabet]> {
        match &self.0.kind {
            Kind::Sum { parts, .. } => Some(parts),
            _ => None,
        }
    }

    /// Plain symbol names, if this is a plain alphabet.
    pub fn plain_names(&self) -> Option<&[String]> {
        match &self.0.kind {
            Kind::Plain { names, .. } => Some(names),
            _ => None,
        }
    }

    /// Embed a symbol of part `part` into this sum alphabet.
    pub fn inject(&self, part: usize, sym: Sym) -> Sym {
        match &self.0.kind {
            Kind::Sum { offsets, .. } => offsets[part] + sym,
            _ => panic!("inject on a non-sum alphabet"),
        }
    }

    /// Split a sum symbol into `(part, local symbol)`.
    pub fn split(&self, sym: Sym) -> (usize, Sym) {
        match &self.0.kind {
            Kind::Sum { offsets, .. } => {
                let part = offsets.partition_point(|&o| o <= sym) - 1;
                (part, sym - offsets[part])
            }
            _ => panic!("split on a non-sum alphabet"),
        }
    }

    /// Encode a column of track digits (`digit == track size` is padding).
    /// Returns `None` for the all-padding column.
    pub fn encode_column(&self, digits: &[u32]) -> Option<Sym> {
        match &self.0.kind {
            Kind::Conv { tracks, stride } => {
                debug_assert_eq!(digits.len(), tracks.len());
                let mut v: u64 = 0;
                for (d, s) in digits.iter().zip(stride) {
                    v += *d as u64 * s;
                }
                if v == self.0.size as u64 {
                    None
                } else {
                    Some(v as Sym)
                }
            }
            _ => {
                debug_assert_eq!(digits.len(), 1);
                if digits[0] == self.0.size {
                    None
                } else {
                    Some(digits[0])
                }
            }
        }
    }

    /// Decode a symbol into track digits, writing into `out`.
    pub fn decode_into(&self, sym: Sym, out: &mut Vec<u32>) {
        out.clear();
        match &self.0.kind {
            Kind::Conv { tracks, .. } => {
                let mut v = sym as u64;
                for t in tracks {
                    let r = t.size() as u64 + 1;
                    out.push((v % r) as u32);
                    v /= r;
                }
            }
            _ => out.push(sym),
        }
    }

    pub fn decode_column(&self, sym: Sym) -> Vec<u32> {
        let mut v = Vec::new();
        self.decode_into(sym, &mut v);
        v
    }

    /// Number of tracks: the convolution arity, or one.
    pub fn arity(&self) -> usize {
        self.tracks().map_or(1, |t| t.len())
    }

    /// Display name of a symbol.
    pub fn name(&self, sym: Sym) -> String {
        let mut s = String::new();
        self.write_name(sym, &mut s);
        s
    }

    fn write_name(&self, sym: Sym, out: &mut String) {
        match &self.0.kind {
            Kind::Plain { names, .. } => out.push_str(&names[sym as usize]),
            Kind::Conv { tracks, .. } => {
                out.push('(');
                let digits = self.decode_column(sym);
                for (i, (d, t)) in digits.iter().zip(tracks).enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    if *d == t.size() {
                        out.push_str(PAD_NAME);
                    } else {
                        t.write_name(*d, out);
                    }
                }
                out.push(')');
            }
            Kind::Sum { parts, .. } => {
                let (p, local) = self.split(sym);
                out.push_str(&p.to_string());
                out.push(':');
                parts[p].write_name(local, out);
            }
        }
    }

    /// Parse a display name back into a symbol.
    pub fn parse_symbol(&self, name: &str) -> Option<Sym> {
        match &self.0.kind {
            Kind::Plain { index, .. } => index.get(name).copied(),
            Kind::Conv { tracks, .. } => {
                let inner = name.strip_prefix('(')?.strip_suffix(')')?;
                let parts = split_top_level(inner, ',');
                if parts.len() != tracks.len() {
                    return None;
                }
                let mut digits = Vec::with_capacity(parts.len());
                for (p, t) in parts.iter().zip(tracks) {
                    if *p == PAD_NAME {
                        digits.push(t.size());
                    } else {
                        digits.push(t.parse_symbol(p)?);
                    }
                }
                self.encode_column(&digits)
            }
            Kind::Sum { parts, .. } => {
                let (idx, rest) = name.split_once(':')?;
                let idx: usize = idx.parse().ok()?;
                let local = parts.get(idx)?.parse_symbol(rest)?;
                Some(self.inject(idx, local))
            }
        }
    }

    /// Render a word as space-separated symbol names.
    pub fn render(&self, w: &Word) -> String {
        let mut s = String::new();
        for (i, &c) in w.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            self.write_name(c, &mut s);
        }
        s
    }

    /// Parse a word. Symbols are whitespace-separated; for a plain alphabet
    /// whose names are all single characters the compact form `aab` is also
    /// accepted.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let single_char = matches!(&self.0.kind, Kind::Plain { names, .. }
            if names.iter().all(|n| n.chars().count() == 1));
        let owned: Vec<String>;
        let tokens: Vec<&str> =
            if tokens.len() == 1 && single_char && self.parse_symbol(text).is_none() {
                owned = text.chars().map(|c| c.to_string()).collect();
                owned.iter().map(|s| s.as_str()).collect()
            } else {
                tokens
            };
        tokens
            .iter()
            .map(|t| {
                self.parse_symbol(t).ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("unknown symbol `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Check that every symbol of `w` belongs to this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| s >= self.size()) {
            Some(&s) => Err(Error::SymbolOutOfRange(s, self.size())),
            None => Ok(()),
        }
    }

    /// Compact textual description: `{a,b}`, `conv(A,B)`, `sum(A,B)`.
    pub fn to_expr(&self) -> String {
        match &self.0.kind {
            Kind::Plain { names, .. } => format!("{{{}}}", names.join(",")),
            Kind::Conv { tracks, .. } => format!(
                "conv({})",
                tracks
                    .iter()
                    .map(|t| t.to_expr())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            Kind::Sum { parts, .. } => format!(
                "sum({})",
                parts
                    .iter()
                    .map(|t| t.to_expr())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    /// Inverse of [`Alphabet::to_expr`].
    pub fn from_expr(expr: &str) -> Result<Self> {
        let expr = expr.trim();
        let bad = || Error::Format(format!("bad alphabet expression `{expr}`"));
        if let Some(inner) = expr.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
            let names: Vec<&str> = inner.split(',').map(|s| s.trim()).collect();
            return Alphabet::plain(&names);
        }
        let (ctor, rest) = if let Some(r) = expr.strip_prefix("conv(") {
            ("conv", r)
        } else if let Some(r) = expr.strip_prefix("sum(") {
            ("sum", r)
        } else {
            return Err(bad());
        };
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let parts = split_top_level(inner, ',')
            .into_iter()
            .map(Alphabet::from_expr)
            .collect::<Result<Vec<_>>>()?;
        if ctor == "conv" {
            if parts.len() < 2 {
                return Err(bad());
            }
            Alphabet::conv(&parts)
        } else {
            Alphabet::sum(&parts)
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

/// Split on `sep` at bracket depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conv_sizes_and_columns() {
        let ab = Alphabet::plain(&["a", "b"]).unwrap();
        let c3 = ab.power(3).unwrap();
        assert_eq!(c3.size(), 26);
        assert_eq!(c3.encode_column(&[2, 2, 2]), None);
        let s = c3.encode_column(&[0, 2, 1]).unwrap();
        assert_eq!(c3.decode_column(s), vec![0, 2, 1]);
        assert_eq!(c3.name(s), "(a,#,b)");
        assert_eq!(c3.parse_symbol("(a,#,b)"), Some(s));
        assert_eq!(c3.parse_symbol("(#,#,#)"), None);
    }

    #[test]
    fn nested_and_sum_names_round_trip() {
        let bin = Alphabet::binary();
        let v = bin.power(2).unwrap();
        let rel = v.power(2).unwrap();
        let u = Alphabet::plain(&["sep"]).unwrap();
        let sum = Alphabet::sum(&[v.clone(), u]).unwrap();
        for a in [&v, &rel, &sum] {
            for s in 0..a.size() {
                assert_eq!(a.parse_symbol(&a.name(s)), Some(s), "{}", a.name(s));
            }
            assert_eq!(&Alphabet::from_expr(&a.to_expr()).unwrap(), a);
        }
        assert_eq!(sum.split(sum.inject(1, 0)), (1, 0));
    }

    #[test]
    fn plain_alphabet_rejects_bad_names() {
        assert!(Alphabet::plain(&["a", "a"]).is_err());
        assert!(Alphabet::plain(&["#"]).is_err());
        assert!(Alphabet::plain::<&str>(&[]).is_err());
    }

    #[test]
    fn compact_words() {
        let ab = Alphabet::plain(&["a", "b"]).unwrap();
        assert_eq!(ab.parse_word("aab").unwrap(), Word(vec![0, 0, 1]));
        assert_eq!(ab.parse_word("a a b").unwrap(), Word(vec![0, 0, 1]));
        assert_eq!(ab.parse_word("").unwrap(), Word::empty());
        assert!(ab.parse_word("c").is_err());
    }
}
