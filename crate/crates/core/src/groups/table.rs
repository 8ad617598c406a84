use crate::error::{Error, Result};

/// Multiplication table of a finite group, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// `table[x][y]` is the index of `x * y`.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: &str| Err(Error::InvalidParameter(format!("group table: {m}")));
        if n == 0 {
            return bad("empty");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad("not square");
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("entry out of range");
        }
        let identity = match (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        {
            Some(e) => e,
            None => return bad("no identity"),
        };
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverse.push(y),
                None => return bad(&format!("`{}` has no inverse", names[x])),
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// `Z/n` with elements named `0..n-1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        Self::new(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }
}
