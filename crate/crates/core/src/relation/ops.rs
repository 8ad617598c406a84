use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::fa::{Dfa, Nfa, StateId};
use crate::limits;
use crate::relation::{join, Constraint, RegularRelation, Shape};

impl RegularRelation {
    /// Existential projection removing `track`, with padding saturation: when
    /// the removed track outlives all others the trailing columns are dropped.
    pub fn project(&self, track: usize) -> Result<RegularRelation> {
        let n = self.arity();
        if n < 2 {
            return Err(Error::ArityMismatch(
                "cannot project a unary relation".into(),
            ));
        }
        if track >= n {
            return Err(Error::TrackOutOfRange(track, n));
        }
        let mut rest: Vec<Alphabet> = self.tracks().to_vec();
        rest.remove(track);
        let out = Shape::new(&rest)?;
        let dfa = self.dfa();
        let ns = dfa.num_states();
        let mut nfa = Nfa::new(out.alphabet().clone(), ns);
        nfa.add_initial(dfa.initial());
        let mut edges = Vec::new();
        let mut sat_rev: Vec<Vec<StateId>> = vec![Vec::new(); ns];
        let mut digits = Vec::with_capacity(n);
        for p in 0..ns as StateId {
            for &(s, q) in dfa.transitions(p) {
                self.shape().decode_into(s, &mut digits);
                digits.remove(track);
                match out.encode(&digits) {
                    Some(t) => edges.push((p, t, q)),
                    None => sat_rev[q as usize].push(p),
                }
            }
        }
        let mut acc: Vec<bool> = (0..ns as StateId).map(|q| dfa.is_accepting(q)).collect();
        let mut stack: Vec<StateId> = (0..ns as StateId).filter(|&q| acc[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &sat_rev[q as usize] {
                if !acc[p as usize] {
                    acc[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        for (q, a) in acc.into_iter().enumerate() {
            nfa.set_accepting(q as StateId, a);
        }
        nfa.extend_transitions(edges);
        let det = nfa.determinize();
        limits::check_states(det.num_states())?;
        Ok(RegularRelation::from_minimal(out, det.minimize()))
    }

    /// Insert an unconstrained track over `alphabet` at `position`.
    pub fn cylindrify(&self, position: usize, alphabet: &Alphabet) -> Result<RegularRelation> {
        let n = self.arity();
        if position > n {
            return Err(Error::TrackOutOfRange(position, n + 1));
        }
        let mut tracks = self.tracks().to_vec();
        tracks.insert(position, alphabet.clone());
        let map: Vec<usize> = (0..n)
            .map(|i| if i < position { i } else { i + 1 })
            .collect();
        join(&tracks, &[Constraint::pos(self, map)])
    }

    /// Reorder tracks: track `i` of the result is track `perm[i]` of `self`.
    pub fn permute_tracks(&self, perm: &[usize]) -> Result<RegularRelation> {
        let n = self.arity();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::NotAPermutation(perm.to_vec()));
        }
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let tracks: Vec<Alphabet> = perm.iter().map(|&p| self.tracks()[p].clone()).collect();
        let out = Shape::new(&tracks)?;
        let src = self.shape();
        let mut d = Vec::with_capacity(n);
        let mut e = vec![0u32; n];
        let dfa = relabel(self.dfa(), out.alphabet(), |s| {
            src.decode_into(s, &mut d);
            for (i, &p) in perm.iter().enumerate() {
                e[i] = d[p];
            }
            out.encode(&e).expect("permuted column is not all padding")
        });
        Ok(RegularRelation::from_minimal(out, dfa.minimize()))
    }

    /// Swap the two tracks of a binary relation.
    pub fn transpose(&self) -> Result<RegularRelation> {
        if self.arity() != 2 {
            return Err(Error::ArityMismatch(
                "transpose needs a binary relation".into(),
            ));
        }
        self.permute_tracks(&[1, 0])
    }

    /// Merge tracks into convolution tracks. `groups` must partition the
    /// tracks; a group of one keeps its alphabet, a larger group becomes a
    /// track over the convolution of its members.
    pub fn group_tracks(&self, groups: &[Vec<usize>]) -> Result<RegularRelation> {
        let n = self.arity();
        let mut seen = vec![false; n];
        for g in groups {
            if g.is_empty() {
                return Err(Error::InvalidParameter("empty track group".into()));
            }
            for &t in g {
                if t >= n || std::mem::replace(&mut seen[t], true) {
                    return Err(Error::NotAPermutation(groups.concat()));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotAPermutation(groups.concat()));
        }
        let inner: Vec<Shape> = groups
            .iter()
            .map(|g| {
                Shape::new(
                    &g.iter()
                        .map(|&t| self.tracks()[t].clone())
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<_>>()?;
        let tracks: Vec<Alphabet> = inner.iter().map(|s| s.alphabet().clone()).collect();
        let out = Shape::new(&tracks)?;
        let src = self.shape();
        let mut d = Vec::with_capacity(n);
        let mut sub = Vec::new();
        let mut e = vec![0u32; groups.len()];
        let dfa = relabel(self.dfa(), out.alphabet(), |s| {
            src.decode_into(s, &mut d);
            for (k, g) in groups.iter().enumerate() {
                sub.clear();
                sub.extend(g.iter().map(|&t| d[t]));
                e[k] = inner[k].encode(&sub).unwrap_or(out.pad(k));
            }
            out.encode(&e).expect("grouped column is not all padding")
        });
        Ok(RegularRelation::from_minimal(out, dfa.minimize()))
    }

    /// Replace a convolution track by its component tracks.
    pub fn flatten_track(&self, track: usize) -> Result<RegularRelation> {
        let n = self.arity();
        if track >= n {
            return Err(Error::TrackOutOfRange(track, n));
        }
        let parts = match self.tracks()[track].tracks() {
            Some(p) => p.to_vec(),
            None => return Ok(self.clone()),
        };
        let k = parts.len();
        let inner = Shape::new(&parts)?;
        let mut tracks = self.tracks().to_vec();
        tracks.splice(track..track + 1, parts.iter().cloned());
        let out = Shape::new(&tracks)?;
        let src = self.shape();
        let mut d = Vec::new();
        let mut sub = Vec::new();
        let mut e = Vec::with_capacity(tracks.len());
        let dfa = relabel(self.dfa(), out.alphabet(), |s| {
            src.decode_into(s, &mut d);
            e.clear();
            e.extend_from_slice(&d[..track]);
            if src.is_pad(track, d[track]) {
                e.extend((0..k).map(|i| inner.pad(i)));
            } else {
                inner.decode_into(d[track], &mut sub);
                e.extend_from_slice(&sub);
            }
            e.extend_from_slice(&d[track + 1..]);
            out.encode(&e).expect("flattened column is not all padding")
        });
        // A nested word may pad a component and resume it; cut such words.
        let raw = RegularRelation::from_minimal(out, dfa.minimize());
        let map: Vec<usize> = (0..tracks.len()).collect();
        join(&tracks, &[Constraint::pos(&raw, map)])
    }

    /// `{(u, w) : ∃v (u, v) ∈ self ∧ (v, w) ∈ other}`.
    pub fn compose(&self, other: &RegularRelation) -> Result<RegularRelation> {
        if self.arity() != 2 || other.arity() != 2 {
            return Err(Error::ArityMismatch(
                "compose needs binary relations".into(),
            ));
        }
        if self.tracks()[1] != other.tracks()[0] {
            return Err(Error::AlphabetMismatch("middle tracks differ".into()));
        }
        let tracks = vec![
            self.tracks()[0].clone(),
            self.tracks()[1].clone(),
            other.tracks()[1].clone(),
        ];
        let j = join(
            &tracks,
            &[
                Constraint::pos(self, vec![0, 1]),
                Constraint::pos(other, vec![1, 2]),
            ],
        )?;
        j.project(1)
    }

    /// Restrict every track to a language: track `i` must lie in `domains[i]`
    /// (`None` leaves it free).
    pub fn restrict(&self, domains: &[Option<&RegularRelation>]) -> Result<RegularRelation> {
        let mut cons = vec![Constraint::pos(self, (0..self.arity()).collect())];
        for (i, d) in domains.iter().enumerate() {
            if let Some(d) = d {
                cons.push(Constraint::pos(d, vec![i]));
            }
        }
        join(self.tracks(), &cons)
    }

    /// Identity relation on `L(domain)`.
    pub fn equality(domain: &Dfa) -> Result<RegularRelation> {
        let a = domain.alphabet().clone();
        let shape = Shape::new(&[a.clone(), a.clone()])?;
        let rows: Vec<Vec<(Sym, StateId)>> = (0..domain.num_states() as StateId)
            .map(|q| {
                let mut row: Vec<(Sym, StateId)> = domain
                    .transitions(q)
                    .iter()
                    .map(|&(s, t)| (shape.encode(&[s, s]).expect("real symbol"), t))
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        let acc = (0..domain.num_states() as StateId)
            .map(|q| domain.is_accepting(q))
            .collect();
        let dfa = Dfa::from_parts(shape.alphabet().clone(), rows, domain.initial(), acc);
        Ok(RegularRelation::from_minimal(shape, dfa.minimize()))
    }

    /// First component of a binary relation.
    pub fn first_projection(&self) -> Result<RegularRelation> {
        if self.arity() != 2 {
            return Err(Error::ArityMismatch(
                "first_projection needs a binary relation".into(),
            ));
        }
        self.project(1)
    }
}

/// Relabel symbols through a bijection, keeping the state structure.
fn relabel<F: FnMut(Sym) -> Sym>(d: &Dfa, alphabet: &Alphabet, mut f: F) -> Dfa {
    let rows = (0..d.num_states() as StateId)
        .map(|q| {
            let mut row: Vec<(Sym, StateId)> =
                d.transitions(q).iter().map(|&(s, t)| (f(s), t)).collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect();
    let acc = (0..d.num_states() as StateId)
        .map(|q| d.is_accepting(q))
        .collect();
    Dfa::from_parts(alphabet.clone(), rows, d.initial(), acc)
}
