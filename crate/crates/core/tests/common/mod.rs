//! Independent models used as oracles by the integration tests.
#![allow(dead_code)]

pub mod fo;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use cgauto::groups::{GroupWord, Letter};
use cgauto::Word;

pub type Mat = Vec<Vec<i64>>;

pub fn ident(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `I + s e_kl`.
pub fn transvection(n: usize, k: usize, l: usize, s: i64) -> Mat {
    let mut m = ident(n);
    m[k][l] = s;
    m
}

pub fn w(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

/// Group word from `(generator index, inverse)` pairs.
pub fn group_word(names: &[&str], letters: &[(usize, bool)]) -> GroupWord {
    GroupWord(
        letters
            .iter()
            .map(|&(i, inverse)| Letter {
                name: names[i % names.len()].to_string(),
                inverse,
            })
            .collect(),
    )
}

/// Fold a word through a right action on a model.
pub fn evaluate<T: Clone>(
    id: &T,
    letters: &[(usize, bool)],
    ngens: usize,
    act: impl Fn(&T, usize, bool) -> T,
) -> T {
    letters
        .iter()
        .fold(id.clone(), |x, &(i, inv)| act(&x, i % ngens, inv))
}

/// Heisenberg model on 3x3 matrices with `A = e_01`, `B = e_02`, `C = e_12`.
pub fn h3_act(m: &Mat, i: usize, inv: bool) -> Mat {
    let pos = [(0, 1), (0, 2), (1, 2)][i];
    mat_mul(m, &transvection(3, pos.0, pos.1, if inv { -1 } else { 1 }))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rat(pub i128, pub i128);

impl Rat {
    pub fn new(n: i128, d: i128) -> Rat {
        let g = gcd(n, d).max(1) * d.signum();
        Rat(n / g, d / g)
    }
    pub fn int(n: i128) -> Rat {
        Rat(n, 1)
    }
    pub fn add(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    pub fn mul(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.0, self.1 * o.1)
    }
}

/// The affine map `x -> s x + t` of the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub s: Rat,
    pub t: Rat,
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap {
            s: Rat::int(1),
            t: Rat::int(0),
        }
    }
    /// Apply `self`, then `h`.
    pub fn then(self, h: AffineMap) -> AffineMap {
        AffineMap {
            s: self.s.mul(h.s),
            t: h.s.mul(self.t).add(h.t),
        }
    }
    /// `x -> p^n x + m / p^k`.
    pub fn from_bs(p: i128, n: i64, m: i64, k: usize) -> AffineMap {
        let pn = if n >= 0 {
            Rat::int(p.pow(n as u32))
        } else {
            Rat::new(1, p.pow((-n) as u32))
        };
        AffineMap {
            s: pn,
            t: Rat::new(m as i128, p.pow(k as u32)),
        }
    }
}

/// `a: x -> p x`, `b: x -> x + 1`, composed left to right.
pub fn bs_act(p: i128) -> impl Fn(&AffineMap, usize, bool) -> AffineMap {
    move |g, i, inv| {
        let h = match (i, inv) {
            (0, false) => AffineMap {
                s: Rat::int(p),
                t: Rat::int(0),
            },
            (0, true) => AffineMap {
                s: Rat::new(1, p),
                t: Rat::int(0),
            },
            (_, false) => AffineMap {
                s: Rat::int(1),
                t: Rat::int(1),
            },
            (_, true) => AffineMap {
                s: Rat::int(1),
                t: Rat::int(-1),
            },
        };
        g.then(h)
    }
}

/// Free reduction of a word given as `(generator, inverse)` letters.
pub fn free_reduce(letters: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::new();
    for &(g, inv) in letters {
        match out.last() {
            Some(&(h, j)) if h == g && j != inv => {
                out.pop();
            }
            _ => out.push((g, inv)),
        }
    }
    out
}

/// Lamplighter-style model `(position, lamps)` for `G wr Z`; lamp values
/// are indices into the multiplication table.
pub type Lamps = (i64, BTreeMap<i64, usize>);

pub fn wreath_act<'a>(
    mul: &'a dyn Fn(usize, usize) -> usize,
    inv: &'a dyn Fn(usize) -> usize,
    e: usize,
    lamps: &'a [usize],
) -> impl Fn(&Lamps, usize, bool) -> Lamps + 'a {
    move |(pos, f), i, inverse| {
        if i < lamps.len() {
            let g = if inverse { inv(lamps[i]) } else { lamps[i] };
            let mut f = f.clone();
            let v = mul(f.get(&0).copied().unwrap_or(e), g);
            if v == e {
                f.remove(&0);
            } else {
                f.insert(0, v);
            }
            (*pos, f)
        } else {
            let d = if inverse { -1 } else { 1 };
            (pos + d, f.iter().map(|(&k, &v)| (k + d, v)).collect())
        }
    }
}

/// Infinite dihedral group as `x -> ±x + n`, stored `(n, flip)`.
pub fn dinf_mul(x: (i64, u8), y: (i64, u8)) -> (i64, u8) {
    let s = if x.1 == 0 { 1 } else { -1 };
    (x.0 + s * y.0, (x.1 + y.1) % 2)
}

pub fn dinf_inv(x: (i64, u8)) -> (i64, u8) {
    if x.1 == 1 {
        x
    } else {
        (-x.0, 0)
    }
}

/// Records representative/model pairs and reports the first pair that breaks
/// a bijection between them.
pub struct Correspondence<T> {
    to_model: HashMap<Word, T>,
    to_word: HashMap<T, Word>,
}

impl<T: Clone + Eq + Hash + Debug> Correspondence<T> {
    pub fn new() -> Self {
        Correspondence {
            to_model: HashMap::new(),
            to_word: HashMap::new(),
        }
    }

    pub fn record(&mut self, rep: &Word, x: &T) -> Result<(), String> {
        if let Some(y) = self.to_model.get(rep) {
            if y != x {
                return Err(format!("representative {rep:?} stands for {y:?} and {x:?}"));
            }
        }
        if let Some(v) = self.to_word.get(x) {
            if v != rep {
                return Err(format!("{x:?} has representatives {v:?} and {rep:?}"));
            }
        }
        self.to_model.insert(rep.clone(), x.clone());
        self.to_word.insert(x.clone(), rep.clone());
        Ok(())
    }
}

use cgauto::groups::{
    bs1n, direct_product, extend_generator, fg_abelian, finite_extension, free_group, free_product,
    heisenberg, nilpotent2, restrict_to_regular_subgroup, semidirect, semidirect_zn_z, ut, ut_m,
    wreath_finite_by_z, zn, FiniteExtensionData, FiniteGroupTable, GraphAutomaticPresentation,
    Nilpotent2Spec,
};
use cgauto::presburger::{encode_int, int_domain, linear_map};
use cgauto::relation::{join, Constraint};
use cgauto::{Alphabet, RegularRelation};

/// Symmetric group on three points; `(x y)(i) = y(x(i))`.
pub fn s3() -> FiniteGroupTable {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|x| {
            perms
                .iter()
                .map(|y| idx([y[x[0]], y[x[1]], y[x[2]]]))
                .collect()
        })
        .collect();
    let names = ["e", "s", "u", "v", "r", "q"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroupTable::new(names, table).unwrap()
}

pub fn dihedral_extension() -> GraphAutomaticPresentation {
    finite_extension(&FiniteExtensionData {
        base: zn(1).unwrap(),
        coset_names: vec!["k1".into()],
        conjugation: vec![vec![w("e1")], vec![w("e1^-1")]],
        g: vec![vec![0, 1], vec![1, 0]],
        correction: vec![vec![w(""), w("")], vec![w(""), w("")]],
    })
    .unwrap()
}

/// The `e1` axis of `Z^2`.
pub fn axis_subgroup() -> GraphAutomaticPresentation {
    let p = zn(2).unwrap();
    let t = [Alphabet::binary(), Alphabet::binary()];
    let ints = RegularRelation::unary(&int_domain());
    let zero = RegularRelation::from_tuples(&[Alphabet::binary()], &[vec![encode_int(0)]]).unwrap();
    let sub = join(
        &t,
        &[
            Constraint::pos(&ints, vec![0]),
            Constraint::pos(&zero, vec![1]),
        ],
    )
    .unwrap();
    restrict_to_regular_subgroup(&p, sub.dfa(), &["e1"]).unwrap()
}

/// One small instance of every builder and combinator.
pub fn catalogue() -> Vec<(&'static str, GraphAutomaticPresentation)> {
    let z = zn(1).unwrap();
    let z2 = fg_abelian(0, &[2]).unwrap();
    vec![
        ("zn(2)", zn(2).unwrap()),
        ("abelian(1; 2, 3)", fg_abelian(1, &[2, 3]).unwrap()),
        ("heisenberg(3)", heisenberg(3).unwrap()),
        ("ut(3)", ut(3).unwrap()),
        ("ut_m(4, 2)", ut_m(4, 2).unwrap()),
        ("bs1n(2)", bs1n(2).unwrap()),
        ("bs1n(3)", bs1n(3).unwrap()),
        ("free(2)", free_group(2).unwrap()),
        (
            "wreath(Z/2)",
            wreath_finite_by_z(&FiniteGroupTable::cyclic(2).unwrap()).unwrap(),
        ),
        (
            "nilpotent2(heisenberg)",
            nilpotent2(&Nilpotent2Spec::heisenberg()).unwrap(),
        ),
        (
            "semidirect_zn_z",
            semidirect_zn_z(&[vec![2, 1], vec![1, 1]]).unwrap(),
        ),
        ("direct_product(Z, Z)", direct_product(&z, &z).unwrap()),
        ("free_product(Z/2, Z/2)", free_product(&z2, &z2).unwrap()),
        (
            "semidirect(Z, Z/2)",
            semidirect(&z, &z2, &[("f1", linear_map(&[vec![-1]], &[0]).unwrap())]).unwrap(),
        ),
        ("finite_extension(Z)", dihedral_extension()),
        ("restrict(zn(2))", axis_subgroup()),
        (
            "extend_gen(zn(2))",
            extend_generator(&zn(2).unwrap(), "d", &w("e1 e2")).unwrap(),
        ),
    ]
}

use cgauto::decide::{left_multiply, right_multiply};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_word(rng: &mut ChaCha8Rng, names: &[&str], max: usize) -> GroupWord {
    let l: Vec<(usize, bool)> = (0..rng.gen_range(0..=max))
        .map(|_| (rng.gen_range(0..names.len()), rng.gen_bool(0.5)))
        .collect();
    group_word(names, &l)
}

/// Some `u` in the ball with `u a = b u`.
pub fn brute_force_conjugator(
    p: &GraphAutomaticPresentation,
    ball: &[Word],
    a: &GroupWord,
    b: &GroupWord,
) -> Option<Word> {
    ball.iter()
        .find(|u| right_multiply(p, u, a).unwrap() == left_multiply(p, b, u).unwrap())
        .cloned()
}

/// Pairs `(a, b)`; every other pair is conjugate by a short word.
pub fn conjugacy_pairs(
    p: &GraphAutomaticPresentation,
    n: usize,
    seed: u64,
) -> Vec<(GroupWord, GroupWord)> {
    let names = p.generator_names();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let a = random_word(&mut rng, &names, 4);
            let b = if i % 2 == 0 {
                let g = random_word(&mut rng, &names, 2);
                g.concat(&a).concat(&g.inverse())
            } else {
                random_word(&mut rng, &names, 4)
            };
            (a, b)
        })
        .collect()
}
