//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pd4_algebra::cli::{parse_presentation, CORPUS};
use pd4_algebra::fox::Presentation;
use pd4_algebra::gamma::GammaElement;
use pd4_algebra::{FreeWord, Group, GroupClass, GroupElement, OrientationCharacter, RingElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus() -> Vec<(&'static str, Presentation)> {
    CORPUS.iter().map(|(n, t)| (*n, parse_presentation(t).unwrap())).collect()
}

pub fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let pairs: Vec<(usize, i32)> =
        (0..len).map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    FreeWord::from_pairs(&pairs)
}

pub fn random_element(rng: &mut ChaCha8Rng, group: &Group, max_len: usize) -> GroupElement {
    group.normalize_word(&random_word(rng, group.num_generators(), max_len)).unwrap()
}

pub fn random_ring(rng: &mut ChaCha8Rng, group: &Group, terms: usize, max_len: usize) -> RingElement {
    let mut r = RingElement::zero(group);
    for _ in 0..rng.gen_range(0..=terms) {
        let g = random_element(rng, group, max_len);
        let c = rng.gen_range(-3i64..=3);
        r = &r + &RingElement::from_element(&g).scale(&BigInt::from(c));
    }
    r
}

pub fn random_vector(rng: &mut ChaCha8Rng, group: &Group, rank: usize) -> Vec<RingElement> {
    (0..rank).map(|_| random_ring(rng, group, 2, 3)).collect()
}

pub fn random_gamma(rng: &mut ChaCha8Rng, group: &Group, w: &OrientationCharacter, rank: usize) -> GammaElement {
    let mut x = GammaElement::zero(group, w, rank);
    for _ in 0..rng.gen_range(0..3) {
        x.push_gamma(rng.gen_range(-2i64..=2), random_vector(rng, group, rank)).unwrap();
    }
    for _ in 0..rng.gen_range(0..3) {
        x.push_odot(rng.gen_range(-2i64..=2), random_vector(rng, group, rank), random_vector(rng, group, rank))
            .unwrap();
    }
    x
}

/// Torsion-free classes with their orientation characters.
pub fn torsion_free_groups() -> Vec<(&'static str, Group, OrientationCharacter)> {
    let f2 = Group::from_class(GroupClass::Free(2)).unwrap();
    let z2 = Group::from_class(GroupClass::FreeAbelian(2)).unwrap();
    let kb = Group::from_class(GroupClass::Klein).unwrap();
    let bs = Group::from_class(GroupClass::Bs(2)).unwrap();
    vec![
        ("free2", f2.clone(), OrientationCharacter::trivial(&f2)),
        ("z2", z2.clone(), OrientationCharacter::trivial(&z2)),
        ("klein", kb.clone(), OrientationCharacter::new(&kb, vec![1, -1]).unwrap()),
        ("bs12", bs.clone(), OrientationCharacter::trivial(&bs)),
    ]
}

// ---------------------------------------------------------------------------
// Naive free group ring: words are lists of nonzero i32, `±(gen + 1)`.

pub type NaiveWord = Vec<i32>;

pub fn naive_reduce(w: &[i32]) -> NaiveWord {
    let mut out: Vec<i32> = Vec::new();
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn naive_of(w: &FreeWord) -> NaiveWord {
    w.letters().iter().map(|l| if l.inv { -(l.gen as i32 + 1) } else { l.gen as i32 + 1 }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NaiveRing(pub BTreeMap<NaiveWord, i64>);

impl NaiveRing {
    pub fn add(&mut self, w: NaiveWord, c: i64) {
        let w = naive_reduce(&w);
        let e = self.0.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    pub fn mul(&self, other: &NaiveRing) -> NaiveRing {
        let mut r = NaiveRing::default();
        for (a, c) in &self.0 {
            for (b, d) in &other.0 {
                r.add([a.as_slice(), b.as_slice()].concat(), c * d);
            }
        }
        r
    }

    pub fn from_library(x: &RingElement) -> NaiveRing {
        let mut r = NaiveRing::default();
        for (g, c) in x.terms() {
            r.add(naive_of(&g.word()), i64::try_from(c).unwrap());
        }
        r
    }
}

/// `∂w/∂x_gen` straight from the definition.
pub fn naive_fox(w: &[i32], gen: usize) -> NaiveRing {
    let x = gen as i32 + 1;
    let mut r = NaiveRing::default();
    for (i, &l) in w.iter().enumerate() {
        if l == x {
            r.add(w[..i].to_vec(), 1);
        } else if l == -x {
            r.add(w[..=i].to_vec(), -1);
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Faithful matrix models used as word-problem oracles.

/// Exact rational with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub BigInt, pub BigInt);

impl Q {
    pub fn int(n: i64) -> Q {
        Q(BigInt::from(n), BigInt::one())
    }
    fn norm(n: BigInt, d: BigInt) -> Q {
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d < BigInt::zero() {
            n = -n;
            d = -d;
        }
        Q(n, d)
    }
    pub fn add(&self, o: &Q) -> Q {
        Q::norm(&self.0 * &o.1 + &o.0 * &self.1, &self.1 * &o.1)
    }
    pub fn mul(&self, o: &Q) -> Q {
        Q::norm(&self.0 * &o.0, &self.1 * &o.1)
    }
}

pub type Mat2 = [[Q; 2]; 2];

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `a ↦ [[1,1],[0,1]]`, `t ↦ [[m,0],[0,1]]`, faithful on BS(1, m).
pub fn bs_matrix(w: &FreeWord, m: i64) -> Mat2 {
    let id = [[Q::int(1), Q::int(0)], [Q::int(0), Q::int(1)]];
    w.letters().iter().fold(id, |acc, l| {
        let g = match (l.gen, l.inv) {
            (0, false) => [[Q::int(1), Q::int(1)], [Q::int(0), Q::int(1)]],
            (0, true) => [[Q::int(1), Q::int(-1)], [Q::int(0), Q::int(1)]],
            (_, false) => [[Q::int(m), Q::int(0)], [Q::int(0), Q::int(1)]],
            (_, true) => [[Q(BigInt::one(), BigInt::from(m)), Q::int(0)], [Q::int(0), Q::int(1)]],
        };
        mat2_mul(&acc, &g)
    })
}

/// Affine action of the Klein bottle group on Z²: `a(x,y) = (x+1, y)`,
/// `b(x,y) = (-x, y+1)`, as 3×3 integer matrices.
pub fn klein_matrix(w: &FreeWord) -> [[i64; 3]; 3] {
    let mul = |a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]| {
        let mut c = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    };
    let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    w.letters().iter().fold(id, |acc, l| {
        let g = match (l.gen, l.inv) {
            (0, false) => [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
            (0, true) => [[1, 0, -1], [0, 1, 0], [0, 0, 1]],
            (_, false) => [[-1, 0, 0], [0, 1, 1], [0, 0, 1]],
            (_, true) => [[-1, 0, 0], [0, 1, -1], [0, 0, 1]],
        };
        mul(&acc, &g)
    })
}

/// Word problem in F(x, y) ⋊ Z with `t x t^-1 = y`, `t y t^-1 = x y`, by
/// moving every `t` to the front with hand-written `α` and `α^-1`.
pub fn fbc_canonical(w: &FreeWord) -> (i64, NaiveWord) {
    // α(x) = y, α(y) = x y;  α^-1(x) = y x^-1, α^-1(y) = x
    let alpha = |u: &[i32]| -> NaiveWord {
        naive_reduce(&u.iter().flat_map(|&l| match l {
            1 => vec![2],
            -1 => vec![-2],
            2 => vec![1, 2],
            _ => vec![-2, -1],
        }).collect::<Vec<_>>())
    };
    let alpha_inv = |u: &[i32]| -> NaiveWord {
        naive_reduce(&u.iter().flat_map(|&l| match l {
            1 => vec![2, -1],
            -1 => vec![1, -2],
            2 => vec![1],
            _ => vec![-1],
        }).collect::<Vec<_>>())
    };
    let mut k = 0i64;
    let mut u: NaiveWord = Vec::new();
    for &l in &naive_of(w) {
        match l {
            3 => {
                // u t = t α^-1(u)
                u = alpha_inv(&u);
                k += 1;
            }
            -3 => {
                u = alpha(&u);
                k -= 1;
            }
            _ => u = naive_reduce(&[u.as_slice(), &[l]].concat()),
        }
    }
    (k, u)
}

/// Exponent-sum vector, the word problem in Z^n.
pub fn abelian_canonical(w: &FreeWord, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for l in w.letters() {
        v[l.gen] += if l.inv { -1 } else { 1 };
    }
    v
}
