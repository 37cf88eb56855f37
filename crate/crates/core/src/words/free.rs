use std::fmt;

/// One generator or its inverse.
///
/// The derived order puts `x_i` before `x_i^-1` before `x_{i+1}`; this is the
/// alphabet order used for every lexicographic tie-break in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, exp: i32) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, inv: exp < 0 }
    }

    pub fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    pub fn exp(self) -> i32 {
        if self.inv { -1 } else { 1 }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// A freely reduced word in a free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    /// Builds a word from arbitrary letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `(generator, exponent)` pairs with exponent `±1`.
    pub fn from_pairs(pairs: &[(usize, i32)]) -> Self {
        FreeWord::from_letters(pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    pub fn generator(gen: usize) -> Self {
        FreeWord { letters: vec![Letter::pos(gen)] }
    }

    /// `x_gen^exp` for any integer exponent.
    pub fn power_of(gen: usize, exp: i64) -> Self {
        let l = if exp < 0 { Letter::neg(gen) } else { Letter::pos(gen) };
        FreeWord { letters: vec![l; exp.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Prefix of the first `n` letters (already reduced, since prefixes of
    /// reduced words are reduced).
    pub fn prefix(&self, n: usize) -> FreeWord {
        FreeWord { letters: self.letters[..n].to_vec() }
    }

    /// Applies a substitution `x_i -> images[i]` and reduces.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut w = FreeWord::identity();
        for l in &self.letters {
            let img = &images[l.gen];
            if l.inv {
                for &x in img.letters.iter().rev() {
                    w.push(x.inverse());
                }
            } else {
                for &x in &img.letters {
                    w.push(x);
                }
            }
        }
        w
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.exp() as i64).sum()
    }

    /// Renders with the given generator names, e.g. `t.a^-2`; `1` for the empty word.
    pub fn render(&self, names: &[String]) -> String {
        render_syllables(self.syllables().into_iter().map(|(g, e)| (names[g].as_str(), e)))
    }

    /// Maximal runs of one generator, as `(generator, exponent)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen => *e += l.exp() as i64,
                _ => out.push((l.gen, l.exp() as i64)),
            }
        }
        out
    }
}

pub(crate) fn render_syllables<'a, I>(syllables: I) -> String
where
    I: IntoIterator<Item = (&'a str, i64)>,
{
    let parts: Vec<String> = syllables
        .into_iter()
        .filter(|&(_, e)| e != 0)
        .map(|(name, e)| if e == 1 { name.to_string() } else { format!("{name}^{e}") })
        .collect();
    if parts.is_empty() { "1".to_string() } else { parts.join(".") }
}

/// Shortlex: shorter words first, then letter by letter.
impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}
