//! Mapping tori `F(s) ⋊_α Z` with `t u t^-1 = α(u)`.
//!
//! Elements are kept as `t^k u` with `u` a reduced word in the fibre. Moving
//! `t^±1` to the left applies `α^∓1` to the fibre word, so both `α` and its
//! inverse are needed; the inverse is found by Nielsen reduction of the
//! image tuple.

use crate::error::{Error, Result};

use super::free::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusData {
    pub rank: usize,
    pub images: Vec<FreeWord>,
    pub inverse_images: Vec<FreeWord>,
}

impl TorusData {
    pub fn new(rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::InvalidClass(format!("expected {rank} automorphism images, got {}", images.len())));
        }
        if images.iter().any(|w| w.max_generator().is_some_and(|g| g >= rank)) {
            return Err(Error::InvalidClass("automorphism image uses a letter outside the fibre".into()));
        }
        let inverse_images = invert_automorphism(&images)?;
        Ok(TorusData { rank, images, inverse_images })
    }

    pub fn t(&self) -> usize {
        self.rank
    }

    /// `α^n(u)` for any integer `n`.
    pub fn apply_power(&self, u: &FreeWord, n: i64) -> FreeWord {
        let imgs = if n >= 0 { &self.images } else { &self.inverse_images };
        (0..n.unsigned_abs()).fold(u.clone(), |w, _| w.substitute(imgs))
    }

    pub fn normalize(&self, word: &FreeWord) -> (i64, FreeWord) {
        let t = self.t();
        let mut k = 0i64;
        let mut u = FreeWord::identity();
        for &l in word.letters() {
            if l.gen == t {
                // u t = t α^-1(u),  u t^-1 = t^-1 α(u)
                u = self.apply_power(&u, -(l.exp() as i64));
                k += l.exp() as i64;
            } else {
                u.push(l);
            }
        }
        (k, u)
    }

    pub fn multiply(&self, g: &(i64, FreeWord), h: &(i64, FreeWord)) -> (i64, FreeWord) {
        (g.0 + h.0, self.apply_power(&g.1, -h.0).mul(&h.1))
    }

    pub fn invert(&self, g: &(i64, FreeWord)) -> (i64, FreeWord) {
        (-g.0, self.apply_power(&g.1.inverse(), g.0))
    }

    pub fn to_word(&self, g: &(i64, FreeWord)) -> FreeWord {
        FreeWord::power_of(self.t(), g.0).mul(&g.1)
    }

    /// The defining relators `t x_i t^-1 α(x_i)^-1`.
    pub fn relators(&self) -> Vec<FreeWord> {
        let t = self.t();
        (0..self.rank)
            .map(|i| {
                FreeWord::from_pairs(&[(t, 1), (i, 1), (t, -1)]).mul(&self.images[i].inverse())
            })
            .collect()
    }
}

/// Inverts an automorphism of `F(n)` given by the images of the basis.
///
/// Applies length-reducing Nielsen moves `w_i <- w_i w_j^±1` or
/// `w_j^±1 w_i` until the tuple is a signed permutation of the basis,
/// tracking each entry as a word in the original images. Fails if the
/// greedy reduction stalls, which always happens for non-bases.
pub fn invert_automorphism(images: &[FreeWord]) -> Result<Vec<FreeWord>> {
    let n = images.len();
    let mut cur: Vec<FreeWord> = images.to_vec();
    let mut expr: Vec<FreeWord> = (0..n).map(FreeWord::generator).collect();
    let total = |v: &[FreeWord]| v.iter().map(FreeWord::len).sum::<usize>();

    while total(&cur) > n || cur.iter().any(FreeWord::is_empty) {
        if cur.iter().any(FreeWord::is_empty) {
            return Err(Error::NotAutomorphism("an image is trivial".into()));
        }
        // (length saved, index, new word, new expression)
        let mut best: Option<(usize, usize, FreeWord, FreeWord)> = None;
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for e in [1i64, -1] {
                    let wj = cur[j].pow(e);
                    let ej = expr[j].pow(e);
                    for (cand, cexpr) in [
                        (cur[i].mul(&wj), expr[i].mul(&ej)),
                        (wj.mul(&cur[i]), ej.mul(&expr[i])),
                    ] {
                        let saved = cur[i].len().saturating_sub(cand.len());
                        if saved > 0 && best.as_ref().map_or(true, |b| saved > b.0) {
                            best = Some((saved, i, cand, cexpr));
                        }
                    }
                }
            }
        }
        let Some((_, i, w, e)) = best else {
            return Err(Error::NotAutomorphism("Nielsen reduction stalled before reaching a basis".into()));
        };
        cur[i] = w;
        expr[i] = e;
    }

    let mut inverse = vec![None; n];
    for (c, e) in cur.iter().zip(&expr) {
        let l = c.letters()[0];
        if inverse[l.gen].is_some() {
            return Err(Error::NotAutomorphism("images do not generate the free group".into()));
        }
        inverse[l.gen] = Some(if l.inv { e.inverse() } else { e.clone() });
    }
    let inverse: Vec<FreeWord> = inverse.into_iter().map(Option::unwrap).collect();

    for i in 0..n {
        let x = FreeWord::generator(i);
        if x.substitute(&inverse).substitute(images) != x || x.substitute(images).substitute(&inverse) != x {
            return Err(Error::NotAutomorphism("computed inverse fails to compose to the identity".into()));
        }
    }
    Ok(inverse)
}
