//! Unipotent integer matrix groups. An element is stored as the vector of
//! its free entries (row-major order of positions); multiplying by the
//! transvection `I + e_kl` on the right adds column `k` to column `l`, on
//! the left adds row `l` to row `k`.

use crate::error::{Error, Result};
use crate::groups::coords::{Affine, Coord, CoordSpace};
use crate::groups::GraphAutomaticPresentation;

struct MatrixGroup {
    positions: Vec<(usize, usize)>,
}

impl MatrixGroup {
    fn index(&self, p: (usize, usize)) -> Option<usize> {
        self.positions.iter().position(|&q| q == p)
    }

    /// Entry `(i, j)` as a linear form in the coordinates plus a constant.
    fn entry(&self, i: usize, j: usize) -> (Option<usize>, i64) {
        if i == j {
            return (None, 1);
        }
        (self.index((i, j)), 0)
    }

    fn right(&self, k: usize, l: usize) -> Result<Affine> {
        let d = self.positions.len();
        let mut a = Affine::translation(d, 0);
        a.c[0] = 0;
        // Column l gains column k: entry (i, l) += M[i][k].
        for (r, &(i, j)) in self.positions.iter().enumerate() {
            if j != l {
                continue;
            }
            match self.entry(i, k) {
                (Some(src), _) => a.m[r][src] += 1,
                (None, v) => a.c[r] += v,
            }
        }
        self.closed(k, l)?;
        Ok(a)
    }

    fn left(&self, k: usize, l: usize) -> Result<Affine> {
        let d = self.positions.len();
        let mut a = Affine::translation(d, 0);
        a.c[0] = 0;
        // Row k gains row l: entry (k, j) += M[l][j].
        for (r, &(i, j)) in self.positions.iter().enumerate() {
            if i != k {
                continue;
            }
            match self.entry(l, j) {
                (Some(src), _) => a.m[r][src] += 1,
                (None, v) => a.c[r] += v,
            }
        }
        Ok(a)
    }

    /// Products must stay inside the position set.
    fn closed(&self, k: usize, l: usize) -> Result<()> {
        for &(i, j) in &self.positions {
            if j == k && self.index((i, l)).is_none() {
                return Err(Error::InvalidParameter("position set is not closed".into()));
            }
            if i == l && self.index((k, j)).is_none() {
                return Err(Error::InvalidParameter("position set is not closed".into()));
            }
        }
        Ok(())
    }

    fn build(
        &self,
        gens: &[(String, (usize, usize))],
        meta: &str,
    ) -> Result<GraphAutomaticPresentation> {
        let space = CoordSpace::new(vec![Coord::Int; self.positions.len()])?;
        let mut p = space.presentation(meta)?;
        for (name, (k, l)) in gens {
            let right = space.affine_edge(&self.right(*k, *l)?)?;
            let left = space.affine_edge(&self.left(*k, *l)?)?;
            p.add_generator(name, right, Some(left))?;
        }
        Ok(p)
    }
}

/// `H_n(Z)`: unipotent `n x n` matrices whose off-diagonal entries lie in
/// the first row or last column. Coordinates are those entries in row-major
/// order; for `n = 3` they are `(a, b, c)` with `b` the corner, and the
/// generators are `A`, `B`, `C`. For larger `n` the generators are `A1..`
/// (first row), `C1..` (last column) and the corner `B`.
pub fn heisenberg(n: usize) -> Result<GraphAutomaticPresentation> {
    if n < 3 {
        return Err(Error::InvalidParameter("heisenberg needs n >= 3".into()));
    }
    let last = n - 1;
    let mut positions = Vec::new();
    for j in 1..n {
        positions.push((0, j));
    }
    for i in 1..last {
        positions.push((i, last));
    }
    positions.sort();
    let g = MatrixGroup { positions };
    let gens: Vec<(String, (usize, usize))> = if n == 3 {
        vec![
            ("A".into(), (0, 1)),
            ("B".into(), (0, 2)),
            ("C".into(), (1, 2)),
        ]
    } else {
        let mut v: Vec<(String, (usize, usize))> =
            (1..last).map(|j| (format!("A{j}"), (0, j))).collect();
        v.extend((1..last).map(|i| (format!("C{i}"), (i, last))));
        v.push(("B".into(), (0, last)));
        v
    };
    g.build(&gens, &format!("H_{n}(Z)"))
}

/// `UT(n, Z)`, generated by all transvections `t_ij`.
pub fn ut(n: usize) -> Result<GraphAutomaticPresentation> {
    ut_m(n, 1)
}

/// `UT^m(n, Z)`: unipotent matrices with zeros on the first `m - 1`
/// superdiagonals. Generators `t<i><j>` (1-based; `t<i>_<j>` when `n > 9`)
/// for every free position.
pub fn ut_m(n: usize, m: usize) -> Result<GraphAutomaticPresentation> {
    if n < 2 || m < 1 || m >= n {
        return Err(Error::InvalidParameter(format!(
            "ut_m needs n >= 2 and 1 <= m < n, got n={n}, m={m}"
        )));
    }
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + m..n).map(move |j| (i, j)))
        .collect();
    let gens: Vec<(String, (usize, usize))> = positions
        .iter()
        .map(|&(i, j)| {
            let name = if n > 9 {
                format!("t{}_{}", i + 1, j + 1)
            } else {
                format!("t{}{}", i + 1, j + 1)
            };
            (name, (i, j))
        })
        .collect();
    let meta = if m == 1 {
        format!("UT({n},Z)")
    } else {
        format!("UT^{m}({n},Z)")
    };
    MatrixGroup { positions }.build(&gens, &meta)
}
