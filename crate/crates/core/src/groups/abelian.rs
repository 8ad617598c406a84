use crate::error::{Error, Result};
use crate::fo::AutomaticStructure;
use crate::groups::coords::{mod_row, Affine, Coord, CoordSpace};
use crate::groups::GraphAutomaticPresentation;
use crate::presburger::{addition_relation, int_domain};
use crate::relation::{join, Constraint, RegularRelation};

fn abelian_space(n: usize, torsion: &[u32]) -> Result<CoordSpace> {
    if n + torsion.len() == 0 {
        return Err(Error::InvalidParameter(
            "need at least one coordinate".into(),
        ));
    }
    if let Some(m) = torsion.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidParameter(format!(
            "torsion order {m} is below 2"
        )));
    }
    let kinds = std::iter::repeat_n(Coord::Int, n)
        .chain(torsion.iter().map(|&m| Coord::Mod(m)))
        .collect();
    CoordSpace::new(kinds)
}

/// `Z^n`: canonical integer vectors, generator `e_i` adds the `i`-th unit
/// vector. Left and right graphs coincide.
pub fn zn(n: usize) -> Result<GraphAutomaticPresentation> {
    if n < 1 {
        return Err(Error::InvalidParameter("zn needs n >= 1".into()));
    }
    fg_abelian(n, &[])
}

/// `Z^n + Z/m_1 + ... + Z/m_k`. Free generators are `e1..en`, torsion
/// generators `f1..fk`; torsion coordinates are single digits.
pub fn fg_abelian(n: usize, torsion: &[u32]) -> Result<GraphAutomaticPresentation> {
    let space = abelian_space(n, torsion)?;
    let d = space.dim();
    let meta = if torsion.is_empty() {
        format!("Z^{n}")
    } else {
        let t: Vec<String> = torsion.iter().map(|m| format!("Z/{m}")).collect();
        if n == 0 {
            t.join(" + ")
        } else {
            format!("Z^{n} + {}", t.join(" + "))
        }
    };
    let mut p = space.presentation(&meta)?;
    for i in 0..d {
        let e = space.affine_edge(&Affine::translation(d, i))?;
        let name = if i < n {
            format!("e{}", i + 1)
        } else {
            format!("f{}", i - n + 1)
        };
        p.add_generator(&name, e.clone(), Some(e))?;
    }
    Ok(p)
}

/// The abelian group of [`fg_abelian`] with its full multiplication graph
/// `Mult = {(u, v, w) : u + v = w}`.
pub fn fa_abelian_multiplication(n: usize, torsion: &[u32]) -> Result<AutomaticStructure> {
    let space = abelian_space(n, torsion)?;
    let d = space.dim();
    let add = addition_relation();
    let int_dom = RegularRelation::unary(&int_domain());
    let mods: Vec<Option<RegularRelation>> = space
        .kinds()
        .iter()
        .map(|k| match k {
            Coord::Int => Ok(None),
            Coord::Mod(m) => mod_row(&[(*k, 1), (*k, 1)], 0, *m).map(Some),
        })
        .collect::<Result<_>>()?;
    let mut cons = Vec::new();
    let mut tracks = Vec::new();
    for _ in 0..3 {
        for k in space.kinds() {
            tracks.push(match k {
                Coord::Int => crate::Alphabet::binary(),
                Coord::Mod(m) => crate::Alphabet::digits(*m),
            });
        }
    }
    for (k, kind) in space.kinds().iter().enumerate() {
        let map = vec![k, d + k, 2 * d + k];
        match kind {
            Coord::Int => {
                cons.push(Constraint::pos(&add, map));
                for t in [k, d + k, 2 * d + k] {
                    cons.push(Constraint::pos(&int_dom, vec![t]));
                }
            }
            Coord::Mod(_) => cons.push(Constraint::pos(mods[k].as_ref().expect("finite"), map)),
        }
    }
    let flat = join(&tracks, &cons)?;
    let mult = if d == 1 {
        flat
    } else {
        flat.group_tracks(&[
            (0..d).collect(),
            (d..2 * d).collect(),
            (2 * d..3 * d).collect(),
        ])?
    };
    AutomaticStructure::new("abelian", space.domain()).with_relation("Mult", mult)
}

/// Encoder matching the presentations above, for callers that need words of
/// specific elements.
pub fn abelian_encode(n: usize, torsion: &[u32], v: &[i64]) -> Result<crate::Word> {
    let space = abelian_space(n, torsion)?;
    if v.len() != space.dim() {
        return Err(Error::ArityMismatch(format!(
            "expected {} coordinates",
            space.dim()
        )));
    }
    Ok(space.encode(v))
}

pub fn abelian_decode(n: usize, torsion: &[u32], w: &crate::Word) -> Result<Vec<i64>> {
    abelian_space(n, torsion)?.decode(w)
}
