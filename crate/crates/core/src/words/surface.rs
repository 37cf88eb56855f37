//! Surface groups.
//!
//! The canonical form splits the surface group as an amalgamated product
//! `A *_C B` along the separating curve of the one-relator presentation:
//! for the orientable genus-g relator `[a1,b1]...[ag,bg]`, `A` is free on
//! the first `2g-2` generators, `B` on the last two, and `C` is infinite
//! cyclic, generated by `c = [a1,b1]...[a(g-1),b(g-1)]` in `A` and by
//! `[ag,bg]^-1` in `B`. The non-orientable relator `x1^2...xg^2` splits the
//! same way with `B = <xg>`. Right coset representatives of `C` are chosen
//! shortlex-minimal, which makes the reduced form `c^n t1 t2 ... tk` unique.
//!
//! Dehn's algorithm over the symmetrized relator set is kept alongside as an
//! independent solution of the word problem (valid when the presentation is
//! C'(1/6): orientable genus >= 2, non-orientable genus >= 4).

use super::free::{FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    pub genus: usize,
    pub orientable: bool,
    pub relator: FreeWord,
    /// Generators with index below `split` lie in factor `A`.
    split: usize,
    c_a: FreeWord,
    c_b: FreeWord,
    symmetrized: Vec<FreeWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    A,
    B,
}

fn commutator(x: usize, y: usize) -> FreeWord {
    FreeWord::from_pairs(&[(x, 1), (y, 1), (x, -1), (y, -1)])
}

impl SurfaceData {
    pub fn new(genus: usize, orientable: bool) -> Self {
        let (relator, split, c_a, c_b) = if orientable {
            let relator = (0..genus).fold(FreeWord::identity(), |w, i| w.mul(&commutator(2 * i, 2 * i + 1)));
            let c_a = (0..genus - 1).fold(FreeWord::identity(), |w, i| w.mul(&commutator(2 * i, 2 * i + 1)));
            let c_b = commutator(2 * genus - 2, 2 * genus - 1).inverse();
            (relator, 2 * genus - 2, c_a, c_b)
        } else {
            let sq = |i: usize| FreeWord::power_of(i, 2);
            let relator = (0..genus).fold(FreeWord::identity(), |w, i| w.mul(&sq(i)));
            let c_a = (0..genus - 1).fold(FreeWord::identity(), |w, i| w.mul(&sq(i)));
            let c_b = sq(genus - 1).inverse();
            (relator, genus - 1, c_a, c_b)
        };
        let symmetrized = symmetrize(&relator);
        SurfaceData { genus, orientable, relator, split, c_a, c_b, symmetrized }
    }

    pub fn num_generators(&self) -> usize {
        if self.orientable { 2 * self.genus } else { self.genus }
    }

    fn factor(&self, l: Letter) -> Factor {
        if l.gen < self.split { Factor::A } else { Factor::B }
    }

    fn edge(&self, f: Factor) -> &FreeWord {
        match f {
            Factor::A => &self.c_a,
            Factor::B => &self.c_b,
        }
    }

    /// Writes `u = c^k t` with `t` the shortlex-least element of the coset `C u`.
    fn coset_rep(&self, u: &FreeWord, f: Factor) -> (i64, FreeWord) {
        let c = self.edge(f);
        // |c^n u| >= |n||c| - |u|, so only small |n| can beat n = 0.
        let bound = (2 * u.len() / c.len() + 2) as i64;
        let c_inv = c.inverse();
        let mut best = (0i64, u.clone());
        let mut up = u.clone();
        let mut down = u.clone();
        for n in 1..=bound {
            up = c.mul(&up);
            down = c_inv.mul(&down);
            if up < best.1 {
                best = (n, up.clone());
            }
            if down < best.1 {
                best = (-n, down.clone());
            }
        }
        (-best.0, best.1)
    }

    pub fn normalize(&self, word: &FreeWord) -> FreeWord {
        // Reduced form c^h t1 ... tk built by left multiplication; `parts`
        // holds t_k ... t_1 so the leftmost syllable is at the end.
        let mut h: i64 = 0;
        let mut parts: Vec<(Factor, FreeWord)> = Vec::new();
        for &l in word.letters().iter().rev() {
            let f = self.factor(l);
            let mut u = FreeWord::from_letters([l]).mul(&self.edge(f).pow(h));
            if matches!(parts.last(), Some((g, _)) if *g == f) {
                let (_, t1) = parts.pop().unwrap();
                u = u.mul(&t1);
            }
            let (k, t) = self.coset_rep(&u, f);
            h = k;
            if !t.is_empty() {
                parts.push((f, t));
            }
        }
        parts.iter().rev().fold(self.c_a.pow(h), |w, (_, t)| w.mul(t))
    }

    /// Dehn's algorithm: repeatedly replaces more than half of a relator by
    /// the inverse of its complement. The result is empty iff the word is
    /// trivial (for C'(1/6) presentations).
    pub fn dehn_reduce(&self, word: &FreeWord) -> FreeWord {
        let mut w: Vec<Letter> = word.letters().to_vec();
        'outer: loop {
            for i in 0..w.len() {
                for r in &self.symmetrized {
                    let rl = r.letters();
                    let k = w[i..].iter().zip(rl).take_while(|(a, b)| a == b).count();
                    if 2 * k > rl.len() {
                        let replacement = FreeWord::from_letters(rl[k..].iter().copied()).inverse();
                        let mut next: Vec<Letter> = w[..i].to_vec();
                        next.extend_from_slice(replacement.letters());
                        next.extend_from_slice(&w[i + k..]);
                        w = FreeWord::from_letters(next).letters().to_vec();
                        continue 'outer;
                    }
                }
            }
            return FreeWord::from_letters(w);
        }
    }

    pub fn dehn_applies(&self) -> bool {
        if self.orientable { self.genus >= 2 } else { self.genus >= 4 }
    }
}

fn symmetrize(r: &FreeWord) -> Vec<FreeWord> {
    let mut out = Vec::new();
    for base in [r.clone(), r.inverse()] {
        let ls = base.letters();
        for i in 0..ls.len() {
            let rot = FreeWord::from_letters(ls[i..].iter().chain(&ls[..i]).copied());
            if !out.contains(&rot) {
                out.push(rot);
            }
        }
    }
    out
}
