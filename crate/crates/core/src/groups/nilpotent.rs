use crate::error::{Error, Result};
use crate::groups::coords::{Affine, Coord, CoordSpace};
use crate::groups::GraphAutomaticPresentation;

/// Class-two nilpotent group given by a base `a_1..a_n` (0-based here).
///
/// Every element is `a_1^x_1 ... a_n^x_n`. Generators from `split` on are
/// central. `commutators` lists `(j, i, v)` with `i < j < split`, meaning
/// `[a_j, a_i] = a^v` where `v` is zero outside `split..n`; missing pairs
/// commute. `orders[k]` is `None` for infinite order, else `a_k^m = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotent2Spec {
    pub n: usize,
    pub split: usize,
    pub orders: Vec<Option<u32>>,
    pub commutators: Vec<(usize, usize, Vec<i64>)>,
}

impl Nilpotent2Spec {
    /// The Heisenberg group: `[a_2, a_1] = a_3`.
    pub fn heisenberg() -> Self {
        Nilpotent2Spec {
            n: 3,
            split: 2,
            orders: vec![None; 3],
            commutators: vec![(1, 0, vec![0, 0, 1])],
        }
    }

    /// Coordinates of `[a_j, a_i]`, reduced on finite coordinates.
    pub fn commutator(&self, j: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        for (jj, ii, c) in &self.commutators {
            if (*jj, *ii) == (j, i) {
                v = c.clone();
            }
        }
        for (k, x) in v.iter_mut().enumerate() {
            if let Some(m) = self.orders[k] {
                *x = x.rem_euclid(m as i64);
            }
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Inconsistent(m));
        if self.n == 0 || self.split > self.n || self.orders.len() != self.n {
            return bad("dimension mismatch".into());
        }
        if let Some(m) = self.orders.iter().flatten().find(|&&m| m < 2) {
            return bad(format!("order {m} is below 2"));
        }
        for (j, i, v) in &self.commutators {
            if !(i < j && *j < self.split) {
                return bad(format!("commutator ({j},{i}) must satisfy i < j < split"));
            }
            if v.len() != self.n {
                return bad(format!("commutator ({j},{i}) has wrong length"));
            }
            if v[..self.split].iter().any(|&x| x != 0) {
                return bad(format!("commutator ({j},{i}) leaves the central tail"));
            }
            // a_j^m = 1 forces [a_j, a_i]^m = 1, likewise for a_i.
            for src in [*j, *i] {
                if let Some(m) = self.orders[src] {
                    for (k, &x) in v.iter().enumerate() {
                        let ok = match self.orders[k] {
                            None => x == 0,
                            Some(mk) => (m as i64 * x).rem_euclid(mk as i64) == 0,
                        };
                        if !ok {
                            return bad(format!(
                                "order of a_{src} is incompatible with [a_{j}, a_{i}]"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn kinds(&self) -> Vec<Coord> {
        self.orders
            .iter()
            .map(|o| o.map_or(Coord::Int, Coord::Mod))
            .collect()
    }

    /// `x -> x * a_i`: moving `a_i` left past `a_j^x_j` (j > i) leaves
    /// `[a_j, a_i]^x_j` behind.
    fn right(&self, i: usize) -> Affine {
        let mut a = Affine::translation(self.n, i);
        for j in i + 1..self.n {
            for (k, &x) in self.commutator(j, i).iter().enumerate() {
                a.m[k][j] += x;
            }
        }
        a
    }

    /// `x -> a_i * x`: moving `a_i` right past `a_j^x_j` (j < i) leaves
    /// `[a_i, a_j]^x_j` behind.
    fn left(&self, i: usize) -> Affine {
        let mut a = Affine::translation(self.n, i);
        for j in 0..i {
            for (k, &x) in self.commutator(i, j).iter().enumerate() {
                a.m[k][j] += x;
            }
        }
        a
    }
}

/// Presentation on coordinate vectors; generator `a<k>` (1-based) multiplies
/// by the `k`-th base element, on the right and on the left.
pub fn nilpotent2(spec: &Nilpotent2Spec) -> Result<GraphAutomaticPresentation> {
    spec.validate()?;
    let space = CoordSpace::new(spec.kinds())?;
    let mut p = space.presentation("nilpotent of class 2")?;
    for i in 0..spec.n {
        let right = space.affine_edge(&spec.right(i))?;
        let left = space.affine_edge(&spec.left(i))?;
        p.add_generator(&format!("a{}", i + 1), right, Some(left))?;
    }
    Ok(p)
}

fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `Z^n ⋊_A Z` with elements `t^k x` stored as `(x, k)`. Generators `x<i>`
/// add unit vectors; `t` maps `(x, k)` to `(A x, k + 1)`, since
/// `t^k x t = t^(k+1) (t^-1 x t)` and conjugation by `t` acts as `A`.
pub fn semidirect_zn_z(a: &[Vec<i64>]) -> Result<GraphAutomaticPresentation> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::ArityMismatch(
            "matrix must be square and non-empty".into(),
        ));
    }
    if det(a).abs() != 1 {
        return Err(Error::InvalidParameter(
            "determinant must be 1 or -1".into(),
        ));
    }
    let d = n + 1;
    let space = CoordSpace::new(vec![Coord::Int; d])?;
    let mut p = space.presentation("Z^n semidirect Z")?;
    for i in 0..n {
        p.add_generator(
            &format!("x{}", i + 1),
            space.affine_edge(&Affine::translation(d, i))?,
            None,
        )?;
    }
    let mut t = Affine::translation(d, n);
    for (row, src) in t.m.iter_mut().zip(a) {
        row[..n].copy_from_slice(src);
    }
    p.add_generator("t", space.affine_edge(&t)?, None)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]), 1);
        assert_eq!(det(&[vec![2, 0], vec![0, 2]]), 4);
    }

    #[test]
    fn spec_validation() {
        assert!(Nilpotent2Spec::heisenberg().validate().is_ok());
        let mut s = Nilpotent2Spec::heisenberg();
        s.commutators = vec![(1, 0, vec![1, 0, 0])];
        assert!(s.validate().is_err());
        let mut s = Nilpotent2Spec::heisenberg();
        s.orders[0] = Some(2);
        assert!(s.validate().is_err());
        s.orders[2] = Some(2);
        assert!(s.validate().is_ok());
    }
}
