use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::decide::{check_relation_on, eval_function};
use crate::error::{Error, Result};
use crate::fa::{Dfa, StateId};
use crate::groups::{pair_of_groups, GraphAutomaticPresentation, GroupWord, Side};
use crate::relation::{join, machine, Constraint, RegularRelation, Shape};

/// Generator names of two factors, with `_1` / `_2` appended on collisions.
fn merged_names(
    p: &GraphAutomaticPresentation,
    q: &GraphAutomaticPresentation,
) -> (Vec<String>, Vec<String>) {
    let a: BTreeSet<&str> = p.generator_names().into_iter().collect();
    let b: BTreeSet<&str> = q.generator_names().into_iter().collect();
    let rename = |n: &str, other: &BTreeSet<&str>, sfx: &str| {
        if other.contains(n) {
            format!("{n}{sfx}")
        } else {
            n.to_string()
        }
    };
    (
        p.generator_names()
            .iter()
            .map(|n| rename(n, &b, "_1"))
            .collect(),
        q.generator_names()
            .iter()
            .map(|n| rename(n, &a, "_2"))
            .collect(),
    )
}

fn singleton(a: &Alphabet, w: &Word) -> Result<RegularRelation> {
    RegularRelation::from_tuples(std::slice::from_ref(a), &[vec![w.clone()]])
}

/// `P x Q` on convolutions `(u, v)`; each generator acts on its own track.
pub fn direct_product(
    p: &GraphAutomaticPresentation,
    q: &GraphAutomaticPresentation,
) -> Result<GraphAutomaticPresentation> {
    let (ap, aq) = (p.alphabet().clone(), q.alphabet().clone());
    let t = vec![ap.clone(), aq.clone()];
    let dp = RegularRelation::unary(p.domain());
    let dq = RegularRelation::unary(q.domain());
    let dom = join(
        &t,
        &[Constraint::pos(&dp, vec![0]), Constraint::pos(&dq, vec![1])],
    )?;
    let identity = Shape::new(&t)?.convolve(&[p.identity().clone(), q.identity().clone()])?;
    let mut out = GraphAutomaticPresentation::new(
        dom.dfa().clone(),
        identity,
        &format!("({}) x ({})", p.meta(), q.meta()),
    )?;
    let four: Vec<Alphabet> = t.iter().chain(&t).cloned().collect();
    let eq_p = RegularRelation::equality(p.domain())?;
    let eq_q = RegularRelation::equality(q.domain())?;
    let (np, nq) = merged_names(p, q);
    let lift = |e: &RegularRelation, first: bool| -> Result<RegularRelation> {
        let cons = if first {
            [
                Constraint::pos(e, vec![0, 2]),
                Constraint::pos(&eq_q, vec![1, 3]),
            ]
        } else {
            [
                Constraint::pos(&eq_p, vec![0, 2]),
                Constraint::pos(e, vec![1, 3]),
            ]
        };
        pair_of_groups(&join(&four, &cons)?, 2)
    };
    for (g, name) in p.generators().iter().zip(&np) {
        let left = g.left().map(|l| lift(l, true)).transpose()?;
        out.add_generator(name, lift(g.right(), true)?, left)?;
    }
    for (g, name) in q.generators().iter().zip(&nq) {
        let left = g.left().map(|l| lift(l, false)).transpose()?;
        out.add_generator(name, lift(g.right(), false)?, left)?;
    }
    Ok(out)
}

/// Alphabet of a free product: both factor alphabets and the two block
/// markers.
fn free_product_alphabet(
    p: &GraphAutomaticPresentation,
    q: &GraphAutomaticPresentation,
) -> Result<Alphabet> {
    Alphabet::sum(&[
        p.alphabet().clone(),
        q.alphabet().clone(),
        Alphabet::plain(&["|1", "|2"])?,
    ])
}

/// Word of the alternating product of `blocks`, each a `(factor, rep)` pair
/// with `factor` 0 for `P` and 1 for `Q`. Blocks are not validated.
pub fn free_product_encode(
    p: &GraphAutomaticPresentation,
    q: &GraphAutomaticPresentation,
    blocks: &[(usize, Word)],
) -> Result<Word> {
    let s = free_product_alphabet(p, q)?;
    let mut out = Vec::new();
    for (f, w) in blocks {
        if *f > 1 {
            return Err(Error::InvalidParameter(
                "factor index must be 0 or 1".into(),
            ));
        }
        out.push(s.inject(2, *f as Sym));
        out.extend(w.0.iter().map(|&c| s.inject(*f, c)));
    }
    Ok(Word(out))
}

/// Non-identity representatives of a factor.
fn nontrivial(p: &GraphAutomaticPresentation) -> Result<Dfa> {
    p.domain()
        .difference(singleton(p.alphabet(), p.identity())?.dfa())
}

/// Sequences of marked blocks, alternating between the factors, each block a
/// non-identity representative.
fn free_product_domain(s: &Alphabet, parts: [&Dfa; 2]) -> Result<Dfa> {
    let r = machine(
        std::slice::from_ref(s),
        (None::<usize>, 0 as StateId),
        |&(last, q): &(Option<usize>, StateId), col| {
            let (part, c) = s.split(col[0]?);
            if part == 2 {
                let f = c as usize;
                if let Some(l) = last {
                    if l == f || !parts[l].is_accepting(q) {
                        return None;
                    }
                }
                Some((Some(f), parts[f].initial()))
            } else {
                let l = last?;
                if l != part {
                    return None;
                }
                Some((last, parts[l].step(q, c)?))
            }
        },
        |&(last, q), _| last.is_none_or(|l| parts[l].is_accepting(q)),
    )?;
    Ok(r.dfa().clone())
}

/// Right multiplication by generator `x` of factor `f`, where `e` is its edge
/// relation, `xh` the representative of `x` and `wh` that of `x^-1`.
fn free_product_edge(
    s: &Alphabet,
    f: usize,
    e: &RegularRelation,
    xh: &Word,
    wh: &Word,
) -> Result<RegularRelation> {
    let marker = s.inject(2, f as Sym);
    let shape = e.shape().clone();
    let ed = e.dfa().clone();
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct St {
        // All columns so far were equal.
        diag: bool,
        // Run of `e` on the tails after the last common marker.
        tail: Option<StateId>,
        // Position in `wh` after the removed marker.
        cancel: Option<usize>,
        // Position in `xh` after the appended marker.
        append: Option<usize>,
    }
    let local = |c: Option<Sym>, track: usize| -> Option<u32> {
        match c {
            None => Some(shape.pad(track)),
            Some(c) => {
                let (part, l) = s.split(c);
                (part == f).then_some(l)
            }
        }
    };
    machine(
        &[s.clone(), s.clone()],
        St {
            diag: true,
            tail: None,
            cancel: None,
            append: None,
        },
        |st: &St, col| {
            let (a, b) = (col[0], col[1]);
            let mut n = St {
                diag: st.diag && a.is_some() && a == b,
                tail: None,
                cancel: None,
                append: None,
            };
            if st.diag && a == Some(marker) && b == Some(marker) {
                n.tail = Some(ed.initial());
            } else if let Some(q) = st.tail {
                n.tail = match (local(a, 0), local(b, 1)) {
                    (Some(x), Some(y)) => shape.encode(&[x, y]).and_then(|c| ed.step(q, c)),
                    _ => None,
                };
            }
            if st.diag && a == Some(marker) && b.is_none() {
                n.cancel = Some(0);
            } else if let Some(i) = st.cancel {
                if b.is_none() && i < wh.len() && a == Some(s.inject(f, wh.0[i])) {
                    n.cancel = Some(i + 1);
                }
            }
            if st.diag && a.is_none() && b == Some(marker) {
                n.append = Some(0);
            } else if let Some(i) = st.append {
                if a.is_none() && i < xh.len() && b == Some(s.inject(f, xh.0[i])) {
                    n.append = Some(i + 1);
                }
            }
            (n.diag || n.tail.is_some() || n.cancel.is_some() || n.append.is_some()).then_some(n)
        },
        |st, _| {
            st.tail.is_some_and(|q| ed.is_accepting(q))
                || st.cancel == Some(wh.len())
                || st.append == Some(xh.len())
        },
    )
}

/// `P * Q` on alternating sequences of blocks, each block a non-identity
/// representative of one factor preceded by a marker. The identity is the
/// empty word. Only right multiplication graphs are built.
pub fn free_product(
    p: &GraphAutomaticPresentation,
    q: &GraphAutomaticPresentation,
) -> Result<GraphAutomaticPresentation> {
    let s = free_product_alphabet(p, q)?;
    let (lp, lq) = (nontrivial(p)?, nontrivial(q)?);
    let dom_dfa = free_product_domain(&s, [&lp, &lq])?;
    let dom = RegularRelation::unary(&dom_dfa);
    let mut out = GraphAutomaticPresentation::new(
        dom_dfa.clone(),
        Word::empty(),
        &format!("({}) * ({})", p.meta(), q.meta()),
    )?;
    let (np, nq) = merged_names(p, q);
    for (f, (fac, names)) in [(p, &np), (q, &nq)].into_iter().enumerate() {
        for (g, name) in fac.generators().iter().zip(names) {
            let id = fac.identity();
            let xh = eval_function(g.right(), &[id])?;
            let edge = if &xh == id {
                RegularRelation::equality(&dom_dfa)?
            } else {
                let wh = eval_function(&g.right().transpose()?, &[id])?;
                free_product_edge(&s, f, g.right(), &xh, &wh)?
                    .restrict(&[Some(&dom), Some(&dom)])?
            };
            out.add_generator(name, edge, None)?;
        }
    }
    Ok(out)
}

/// `P ⋊ Q` with elements `s r` (`s` in `Q`, `r` in `P`) stored as `(s, r)`.
/// `action` gives, for each generator `y` of `Q`, the automorphism
/// `r -> y^-1 r y` of `P` as a binary relation; generators of `Q` without an
/// entry act trivially.
pub fn semidirect(
    p: &GraphAutomaticPresentation,
    q: &GraphAutomaticPresentation,
    action: &[(&str, RegularRelation)],
) -> Result<GraphAutomaticPresentation> {
    let (ap, aq) = (p.alphabet().clone(), q.alphabet().clone());
    for (y, tau) in action {
        q.generator(y)?;
        if tau.arity() != 2 || tau.tracks().iter().any(|t| *t != ap) {
            return Err(Error::AlphabetMismatch(format!(
                "action of `{y}` is not a relation over {ap}"
            )));
        }
        if !check_relation_on(p.domain(), y, Side::Right, tau)?.passed() {
            return Err(Error::Inconsistent(format!(
                "action of `{y}` is not a bijection of the domain"
            )));
        }
        if !tau.contains(&[p.identity().clone(), p.identity().clone()])? {
            return Err(Error::Inconsistent(format!(
                "action of `{y}` moves the identity"
            )));
        }
    }
    let t = vec![aq.clone(), ap.clone()];
    let dp = RegularRelation::unary(p.domain());
    let dq = RegularRelation::unary(q.domain());
    let dom = join(
        &t,
        &[Constraint::pos(&dq, vec![0]), Constraint::pos(&dp, vec![1])],
    )?;
    let identity = Shape::new(&t)?.convolve(&[q.identity().clone(), p.identity().clone()])?;
    let mut out = GraphAutomaticPresentation::new(
        dom.dfa().clone(),
        identity,
        &format!("({}) semidirect ({})", p.meta(), q.meta()),
    )?;
    let four: Vec<Alphabet> = t.iter().chain(&t).cloned().collect();
    let eq_p = RegularRelation::equality(p.domain())?;
    let eq_q = RegularRelation::equality(q.domain())?;
    let (np, nq) = merged_names(p, q);
    for (g, name) in p.generators().iter().zip(&np) {
        let r = join(
            &four,
            &[
                Constraint::pos(&eq_q, vec![0, 2]),
                Constraint::pos(g.right(), vec![1, 3]),
            ],
        )?;
        out.add_generator(name, pair_of_groups(&r, 2)?, None)?;
    }
    for (g, name) in q.generators().iter().zip(&nq) {
        let tau = action
            .iter()
            .find(|(y, _)| *y == g.name())
            .map_or(&eq_p, |(_, t)| t);
        let r = join(
            &four,
            &[
                Constraint::pos(g.right(), vec![0, 2]),
                Constraint::pos(tau, vec![1, 3]),
            ],
        )?;
        out.add_generator(name, pair_of_groups(&r, 2)?, None)?;
    }
    Ok(out)
}

/// A group `G` with a finite-index subgroup `H` and transversal
/// `k_0 = 1, k_1, ..., k_{r-1}`, so that every element is `h k_i` uniquely.
///
/// `conjugation[i][j]` is `k_i h_j k_i^-1` as a word over the generators of
/// `H`; `g[i][s]` and `correction[i][s]` describe `k_i k_s = c k_{g(i,s)}`.
#[derive(Clone, Debug)]
pub struct FiniteExtensionData {
    pub base: GraphAutomaticPresentation,
    pub coset_names: Vec<String>,
    pub conjugation: Vec<Vec<GroupWord>>,
    pub g: Vec<Vec<usize>>,
    pub correction: Vec<Vec<GroupWord>>,
}

impl FiniteExtensionData {
    pub fn index(&self) -> usize {
        self.coset_names.len() + 1
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.index();
        let nh = self.base.generators().len();
        let bad = |m: &str| Err(Error::Inconsistent(m.to_string()));
        if self.conjugation.len() != r || self.conjugation.iter().any(|v| v.len() != nh) {
            return bad("conjugation table must be index x generators");
        }
        if self.g.len() != r || self.g.iter().any(|v| v.len() != r) {
            return bad("coset table must be index x index");
        }
        if self.correction.len() != r || self.correction.iter().any(|v| v.len() != r) {
            return bad("correction table must be index x index");
        }
        if self.g.iter().flatten().any(|&x| x >= r) {
            return bad("coset index out of range");
        }
        for s in 0..r {
            let mut seen = vec![false; r];
            for i in 0..r {
                seen[self.g[i][s]] = true;
            }
            if seen.contains(&false) {
                return bad(
                    "right multiplication by a coset representative must permute the cosets",
                );
            }
            if self.g[0][s] != s || self.g[s][0] != s {
                return bad("k_0 must be the identity");
            }
        }
        for w in self.conjugation.iter().chain(&self.correction).flatten() {
            self.base.check_word(w)?;
        }
        Ok(())
    }
}

/// Presentation of `G` on pairs `(h, i)` standing for `h k_i`, with the
/// generators of `H` followed by `coset_names`.
pub fn finite_extension(d: &FiniteExtensionData) -> Result<GraphAutomaticPresentation> {
    d.validate()?;
    let h = &d.base;
    let r = d.index();
    if r > 64 {
        return Err(Error::InvalidParameter("index above 64".into()));
    }
    let ah = h.alphabet().clone();
    let ai = Alphabet::digits(r as u32);
    let t = vec![ah.clone(), ai.clone()];
    let idx: Vec<RegularRelation> = (0..r)
        .map(|i| singleton(&ai, &Word(vec![i as Sym])))
        .collect::<Result<_>>()?;
    let any_idx = idx
        .iter()
        .skip(1)
        .try_fold(idx[0].clone(), |acc, x| acc.union(x))?;
    let dh = RegularRelation::unary(h.domain());
    let dom = join(
        &t,
        &[
            Constraint::pos(&dh, vec![0]),
            Constraint::pos(&any_idx, vec![1]),
        ],
    )?;
    let identity = Shape::new(&t)?.convolve(&[h.identity().clone(), Word(vec![0])])?;
    let mut out = GraphAutomaticPresentation::new(
        dom.dfa().clone(),
        identity,
        &format!("finite extension of ({}), index {r}", h.meta()),
    )?;
    let four: Vec<Alphabet> = t.iter().chain(&t).cloned().collect();
    let edge = |words: &dyn Fn(usize) -> (GroupWord, usize)| -> Result<RegularRelation> {
        let mut acc: Option<RegularRelation> = None;
        for i in 0..r {
            let (w, to) = words(i);
            let wr = h.word_relation(&w, Side::Right)?;
            let part = join(
                &four,
                &[
                    Constraint::pos(&wr, vec![0, 2]),
                    Constraint::pos(&idx[i], vec![1]),
                    Constraint::pos(&idx[to], vec![3]),
                ],
            )?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.union(&part)?,
            });
        }
        pair_of_groups(&acc.expect("index is positive"), 2)
    };
    for (j, g) in h.generators().iter().enumerate() {
        out.add_generator(g.name(), edge(&|i| (d.conjugation[i][j].clone(), i))?, None)?;
    }
    for (s, name) in d.coset_names.iter().enumerate().map(|(k, n)| (k + 1, n)) {
        out.add_generator(
            name,
            edge(&|i| (d.correction[i][s].clone(), d.g[i][s]))?,
            None,
        )?;
    }
    Ok(out)
}

/// The subgroup on the regular set `sub` generated by `gens`. Fails unless
/// `sub` contains the identity, lies in the domain and is closed under the
/// chosen generators and their inverses.
pub fn restrict_to_regular_subgroup(
    p: &GraphAutomaticPresentation,
    sub: &Dfa,
    gens: &[&str],
) -> Result<GraphAutomaticPresentation> {
    if sub.alphabet() != p.alphabet() {
        return Err(Error::AlphabetMismatch(
            "subgroup set is over another alphabet".into(),
        ));
    }
    if !sub.is_subset_of(p.domain())? {
        return Err(Error::ClosureViolated(
            "subgroup set is not contained in the domain".into(),
        ));
    }
    if !sub.accepts(p.identity())? {
        return Err(Error::ClosureViolated(
            "subgroup set misses the identity".into(),
        ));
    }
    let s = RegularRelation::unary(sub);
    let mut out = GraphAutomaticPresentation::new(
        sub.clone(),
        p.identity().clone(),
        &format!("subgroup of {}", p.meta()),
    )?;
    for name in gens {
        let g = p.generator(name)?;
        let e = g.right();
        for (rel, what) in [(e.clone(), ""), (e.transpose()?, " inverse")] {
            let image = rel.restrict(&[Some(&s), None])?.project(0)?;
            if !image.dfa().is_subset_of(sub)? {
                return Err(Error::ClosureViolated(format!(
                    "subgroup set is not closed under{what} `{name}`"
                )));
            }
        }
        let restrict = |r: &RegularRelation| r.restrict(&[Some(&s), Some(&s)]);
        let left = g.left().map(restrict).transpose()?;
        out.add_generator(name, restrict(e)?, left)?;
    }
    Ok(out)
}

/// Add a generator `name` standing for the word `w`.
pub fn extend_generator(
    p: &GraphAutomaticPresentation,
    name: &str,
    w: &GroupWord,
) -> Result<GraphAutomaticPresentation> {
    let right = p.word_relation(w, Side::Right)?;
    let left = if p.is_biautomatic() {
        Some(p.word_relation(w, Side::Left)?)
    } else {
        None
    };
    p.clone().with_generator(name, right, left)
}
