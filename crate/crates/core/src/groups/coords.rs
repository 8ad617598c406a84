//! Groups whose elements are integer coordinate vectors and whose
//! generators act by affine maps. Unbounded coordinates are two's
//! complement words; coordinates of finite order `m` are single digits
//! in base `m`.

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::fa::Dfa;
use crate::groups::{pair_of_groups, GraphAutomaticPresentation};
use crate::presburger::{
    affine_row_relation, decode_int, encode_int, int_domain, DEFAULT_COEFF_BOUND,
};
use crate::relation::{join, machine, Constraint, RegularRelation, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    Int,
    Mod(u32),
}

impl Coord {
    fn alphabet(self) -> Alphabet {
        match self {
            Coord::Int => Alphabet::binary(),
            Coord::Mod(m) => Alphabet::digits(m),
        }
    }
}

/// `y = m x + c`, reduced on finite coordinates.
#[derive(Clone, Debug)]
pub struct Affine {
    pub m: Vec<Vec<i64>>,
    pub c: Vec<i64>,
}

impl Affine {
    pub fn translation(d: usize, i: usize) -> Self {
        let m = (0..d)
            .map(|r| (0..d).map(|k| (r == k) as i64).collect())
            .collect();
        let mut c = vec![0; d];
        c[i] = 1;
        Affine { m, c }
    }
}

#[derive(Clone, Debug)]
pub struct CoordSpace {
    kinds: Vec<Coord>,
    tracks: Vec<Alphabet>,
    shape: Shape,
    domain: Dfa,
}

fn single_digit(m: u32) -> RegularRelation {
    let words: Vec<Vec<Word>> = (0..m).map(|d| vec![Word(vec![d])]).collect();
    RegularRelation::from_tuples(&[Alphabet::digits(m)], &words).expect("digit words")
}

fn coord_domain(kind: Coord) -> RegularRelation {
    match kind {
        Coord::Int => RegularRelation::unary(&int_domain()),
        Coord::Mod(m) => single_digit(m),
    }
}

impl CoordSpace {
    pub fn new(kinds: Vec<Coord>) -> Result<Self> {
        if kinds.is_empty() {
            return Err(Error::InvalidParameter("no coordinates".into()));
        }
        if kinds.iter().any(|k| matches!(k, Coord::Mod(m) if *m < 2)) {
            return Err(Error::InvalidParameter(
                "finite orders must be at least 2".into(),
            ));
        }
        let tracks: Vec<Alphabet> = kinds.iter().map(|k| k.alphabet()).collect();
        let shape = Shape::new(&tracks)?;
        let doms: Vec<RegularRelation> = kinds.iter().map(|&k| coord_domain(k)).collect();
        let cons: Vec<Constraint> = doms
            .iter()
            .enumerate()
            .map(|(i, d)| Constraint::pos(d, vec![i]))
            .collect();
        let domain = join(&tracks, &cons)?.dfa().clone();
        Ok(CoordSpace {
            kinds,
            tracks,
            shape,
            domain,
        })
    }

    pub fn dim(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[Coord] {
        &self.kinds
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.shape.alphabet()
    }

    pub fn domain(&self) -> &Dfa {
        &self.domain
    }

    pub fn encode(&self, v: &[i64]) -> Word {
        let words: Vec<Word> = v
            .iter()
            .zip(&self.kinds)
            .map(|(&x, k)| match k {
                Coord::Int => encode_int(x),
                Coord::Mod(m) => Word(vec![x.rem_euclid(*m as i64) as u32]),
            })
            .collect();
        self.shape.convolve(&words).expect("coordinate words")
    }

    pub fn decode(&self, w: &Word) -> Result<Vec<i64>> {
        let parts = self.shape.deconvolve(w)?;
        parts
            .iter()
            .zip(&self.kinds)
            .map(|(p, k)| match k {
                Coord::Int => decode_int(p),
                Coord::Mod(m) => match p.0.as_slice() {
                    [d] if d < m => Ok(*d as i64),
                    _ => Err(Error::Encoding("finite coordinate is not one digit".into())),
                },
            })
            .collect()
    }

    pub fn identity(&self) -> Word {
        self.encode(&vec![0; self.dim()])
    }

    /// Relation over `2d` flat tracks for `y = m x + c`.
    pub fn affine_flat(&self, a: &Affine) -> Result<RegularRelation> {
        let d = self.dim();
        if a.m.len() != d || a.c.len() != d || a.m.iter().any(|r| r.len() != d) {
            return Err(Error::ArityMismatch(format!("affine map is not {d}x{d}")));
        }
        let mut rows: Vec<(RegularRelation, Vec<usize>)> = Vec::new();
        for (k, row) in a.m.iter().enumerate() {
            match self.kinds[k] {
                Coord::Int => {
                    if let Some(j) = (0..d).find(|&j| row[j] != 0 && self.kinds[j] != Coord::Int) {
                        return Err(Error::InvalidParameter(format!(
                            "unbounded coordinate {k} depends on finite coordinate {j}"
                        )));
                    }
                    let (rel, mut map) = affine_row_relation(row, a.c[k], DEFAULT_COEFF_BOUND)?;
                    map.push(d + k);
                    rows.push((rel, map));
                }
                Coord::Mod(m) => {
                    let used: Vec<usize> = (0..d).filter(|&j| row[j] != 0).collect();
                    let inputs: Vec<(Coord, i64)> =
                        used.iter().map(|&j| (self.kinds[j], row[j])).collect();
                    let rel = mod_row(&inputs, a.c[k], m)?;
                    let mut map = used;
                    map.push(d + k);
                    rows.push((rel, map));
                }
            }
        }
        let doms: Vec<RegularRelation> = self.kinds.iter().map(|&k| coord_domain(k)).collect();
        let mut cons: Vec<Constraint> = rows
            .iter()
            .map(|(r, m)| Constraint::pos(r, m.clone()))
            .collect();
        for t in 0..2 * d {
            cons.push(Constraint::pos(&doms[t % d], vec![t]));
        }
        let tracks: Vec<Alphabet> = self.tracks.iter().chain(&self.tracks).cloned().collect();
        join(&tracks, &cons)
    }

    /// Binary edge relation over the coordinate alphabet.
    pub fn affine_edge(&self, a: &Affine) -> Result<RegularRelation> {
        pair_of_groups(&self.affine_flat(a)?, self.dim())
    }

    pub fn presentation(&self, meta: &str) -> Result<GraphAutomaticPresentation> {
        GraphAutomaticPresentation::new(self.domain.clone(), self.identity(), meta)
    }
}

/// `{(x_1.., y) : y = c + sum w_i x_i mod m}` where each input is an integer
/// word or a digit, and `y` is a base-`m` digit.
pub(crate) fn mod_row(inputs: &[(Coord, i64)], c: i64, m: u32) -> Result<RegularRelation> {
    let mm = m as i64;
    let n = inputs.len();
    let mut tracks: Vec<Alphabet> = inputs.iter().map(|(k, _)| k.alphabet()).collect();
    tracks.push(Alphabet::digits(m));
    const NONE: u32 = u32::MAX;
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct St {
        first: bool,
        pow: i64,
        res: i64,
        last: Vec<u32>,
        ended: Vec<bool>,
        y: i64,
    }
    let init = St {
        first: true,
        pow: 1 % mm,
        res: 0,
        last: vec![NONE; n],
        ended: vec![false; n],
        y: 0,
    };
    let step = |s: &St, col: &[Option<u32>]| -> Option<St> {
        let mut t = s.clone();
        for (i, &(kind, w)) in inputs.iter().enumerate() {
            match kind {
                Coord::Int => match col[i] {
                    Some(d) => {
                        t.res += w * d as i64 * s.pow;
                        t.last[i] = d;
                    }
                    None if !s.ended[i] => {
                        if s.last[i] == NONE {
                            return None;
                        }
                        // Sign digit d at position L-1 weighs -d 2^(L-1) = d 2^(L-1) - d 2^L.
                        t.res -= w * s.last[i] as i64 * s.pow;
                        t.ended[i] = true;
                    }
                    None => {}
                },
                Coord::Mod(_) => match (s.first, col[i]) {
                    (true, Some(d)) => t.res += w * d as i64,
                    (true, None) | (false, Some(_)) => return None,
                    (false, None) => {}
                },
            }
        }
        match (s.first, col[n]) {
            (true, Some(d)) => t.y = d as i64,
            (true, None) | (false, Some(_)) => return None,
            (false, None) => {}
        }
        t.res = t.res.rem_euclid(mm);
        t.pow = (s.pow * 2) % mm;
        t.first = false;
        Some(t)
    };
    let accept = |s: &St, _: &[bool]| {
        if s.first {
            return false;
        }
        let mut res = s.res;
        for (i, &(kind, w)) in inputs.iter().enumerate() {
            if kind == Coord::Int && !s.ended[i] {
                res -= w * s.last[i] as i64 * s.pow;
            }
        }
        (res + c - s.y).rem_euclid(mm) == 0
    };
    machine(&tracks, init, step, accept)
}
