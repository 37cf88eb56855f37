//! Normal forms in BS(1, m) = <a, t | t a t^-1 = a^m>.
//!
//! Elements are handled through the isomorphism with Z[1/m] ⋊ Z, where
//! `(x, s)` stands for `a^x t^s` and `(x, s)(y, r) = (x + m^s y, s + r)`.
//! The canonical norm is the triple `(p, k, q)` of `t^-p a^k t^q` with
//! `p, q >= 0` and `m ∤ k` whenever both `p` and `q` are positive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::free::{FreeWord, Letter};

pub const GEN_A: usize = 0;
pub const GEN_T: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BsNorm {
    pub p: u32,
    pub k: BigInt,
    pub q: u32,
}

/// `num / m^den`, kept with the smallest possible `den`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct MAdic {
    num: BigInt,
    den: u32,
}

impl MAdic {
    fn reduce(mut self, m: &BigInt) -> Self {
        while self.den > 0 && self.num.is_multiple_of(m) {
            self.num /= m;
            self.den -= 1;
        }
        self
    }

    fn add(&self, other: &MAdic, m: &BigInt) -> MAdic {
        let den = self.den.max(other.den);
        let a = &self.num * m.pow(den - self.den);
        let b = &other.num * m.pow(den - other.den);
        MAdic { num: a + b, den }.reduce(m)
    }

    /// Multiplies by `m^s` for any integer `s`.
    fn shift(&self, s: i64, m: &BigInt) -> MAdic {
        if s >= 0 {
            MAdic { num: &self.num * m.pow(s as u32), den: self.den }.reduce(m)
        } else {
            MAdic { num: self.num.clone(), den: self.den + (-s) as u32 }.reduce(m)
        }
    }
}

#[derive(Debug, Clone)]
struct Affine {
    x: MAdic,
    s: i64,
}

impl Affine {
    fn identity() -> Self {
        Affine { x: MAdic { num: BigInt::zero(), den: 0 }, s: 0 }
    }

    fn mul(&self, other: &Affine, m: &BigInt) -> Affine {
        Affine { x: self.x.add(&other.x.shift(self.s, m), m), s: self.s + other.s }
    }

    fn from_norm(n: &BsNorm, m: &BigInt) -> Affine {
        Affine { x: MAdic { num: n.k.clone(), den: n.p }.reduce(m), s: n.q as i64 - n.p as i64 }
    }

    fn to_norm(&self, m: &BigInt) -> BsNorm {
        let p0 = self.x.den as i64;
        let p = p0.max(-self.s);
        let k = &self.x.num * m.pow((p - p0) as u32);
        BsNorm { p: p as u32, k, q: (p + self.s) as u32 }
    }
}

fn letter_affine(l: Letter) -> Affine {
    match l.gen {
        GEN_A => Affine { x: MAdic { num: BigInt::from(l.exp()), den: 0 }, s: 0 },
        _ => Affine { x: MAdic { num: BigInt::zero(), den: 0 }, s: l.exp() as i64 },
    }
}

pub fn normalize(word: &FreeWord, m: i64) -> BsNorm {
    let m = BigInt::from(m);
    word.letters()
        .iter()
        .fold(Affine::identity(), |acc, &l| acc.mul(&letter_affine(l), &m))
        .to_norm(&m)
}

pub fn multiply(g: &BsNorm, h: &BsNorm, m: i64) -> BsNorm {
    let m = BigInt::from(m);
    Affine::from_norm(g, &m).mul(&Affine::from_norm(h, &m), &m).to_norm(&m)
}

pub fn invert(g: &BsNorm, m: i64) -> BsNorm {
    let m = BigInt::from(m);
    let a = Affine::from_norm(g, &m);
    let neg = MAdic { num: -a.x.num.clone(), den: a.x.den };
    Affine { x: neg.shift(-a.s, &m), s: -a.s }.to_norm(&m)
}

pub fn identity() -> BsNorm {
    BsNorm { p: 0, k: BigInt::zero(), q: 0 }
}

/// `t^-p a^k t^q` as a free word. `k` is expanded letter by letter.
pub fn to_word(n: &BsNorm) -> FreeWord {
    let k: i64 = (&n.k).try_into().expect("a-exponent too large to spell out as a word");
    FreeWord::power_of(GEN_T, -(n.p as i64))
        .mul(&FreeWord::power_of(GEN_A, k))
        .mul(&FreeWord::power_of(GEN_T, n.q as i64))
}

pub fn is_canonical(n: &BsNorm, m: i64) -> bool {
    let m = BigInt::from(m);
    !(n.p > 0 && n.q > 0 && n.k.is_multiple_of(&m))
}

pub fn k_is_odd(n: &BsNorm) -> bool {
    n.k.is_odd()
}

pub fn abs_k(n: &BsNorm) -> BigInt {
    n.k.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(usize, i32)]) -> FreeWord {
        FreeWord::from_pairs(pairs)
    }

    fn norm(p: u32, k: i64, q: u32) -> BsNorm {
        BsNorm { p, k: BigInt::from(k), q }
    }

    #[test]
    fn conjugation_multiplies_by_m() {
        // t a t^-1 -> a^2 in BS(1,2)
        let n = normalize(&w(&[(GEN_T, 1), (GEN_A, 1), (GEN_T, -1)]), 2);
        assert_eq!(n, norm(0, 2, 0));
    }

    #[test]
    fn t_times_a() {
        // t . a = a^2 t, whose norm is t^0 a^2 t^1
        let t = normalize(&w(&[(GEN_T, 1)]), 2);
        let a = normalize(&w(&[(GEN_A, 1)]), 2);
        assert_eq!(multiply(&t, &a, 2), norm(0, 2, 1));
        assert_eq!(normalize(&w(&[(GEN_A, 1), (GEN_A, 1), (GEN_T, 1)]), 2), norm(0, 2, 1));
    }

    #[test]
    fn root_of_a_stays_reduced() {
        // t^-1 a t is a square root of a and cannot be simplified
        let n = normalize(&w(&[(GEN_T, -1), (GEN_A, 1), (GEN_T, 1)]), 2);
        assert_eq!(n, norm(1, 1, 1));
        assert!(is_canonical(&n, 2));
        // t^-1 a^2 t = a
        let n = normalize(&w(&[(GEN_T, -1), (GEN_A, 1), (GEN_A, 1), (GEN_T, 1)]), 2);
        assert_eq!(n, norm(0, 1, 0));
    }

    #[test]
    fn negative_t_power_moves_left() {
        // a t^-1 = t^-1 a^m
        let n = normalize(&w(&[(GEN_A, 1), (GEN_T, -1)]), 3);
        assert_eq!(n, norm(1, 3, 0));
    }

    #[test]
    fn inverse_roundtrip() {
        let g = norm(2, 5, 1);
        let gi = invert(&g, 2);
        assert_eq!(multiply(&g, &gi, 2), identity());
        assert_eq!(multiply(&gi, &g, 2), identity());
    }

    #[test]
    fn negative_m() {
        // BS(1,-1) is the Klein bottle group: t a t^-1 = a^-1
        let n = normalize(&w(&[(GEN_T, 1), (GEN_A, 1), (GEN_T, -1)]), -1);
        assert_eq!(n, norm(0, -1, 0));
    }

    #[test]
    fn word_roundtrip() {
        let n = norm(1, 3, 2);
        assert_eq!(normalize(&to_word(&n), 2), n);
    }
}
