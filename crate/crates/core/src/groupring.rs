//! Exact arithmetic in Z[π] with the w-twisted involution `ḡ = w(g) g^-1`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{parse_word, FreeWord, Group, GroupElement, Norm};

/// A homomorphism `w: π -> {±1}`, stored by its values on the class generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationCharacter {
    signs: Vec<i8>,
}

impl OrientationCharacter {
    pub fn trivial(group: &Group) -> Self {
        OrientationCharacter { signs: vec![1; group.num_generators()] }
    }

    /// Checks that every defining relator of the class evaluates to `+1`.
    pub fn new(group: &Group, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != group.num_generators() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!(
                "orientation character needs {} values in {{1, -1}}",
                group.num_generators()
            )));
        }
        let w = OrientationCharacter { signs };
        for r in group.defining_relators() {
            if w.eval_word(&r) != 1 {
                return Err(Error::NotHomomorphism(r.render(group.names())));
            }
        }
        Ok(w)
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn eval_word(&self, word: &FreeWord) -> i8 {
        word.letters().iter().map(|l| self.signs[l.gen]).product()
    }

    pub(crate) fn eval_norm(&self, group: &Group, g: &Norm) -> i8 {
        (0..self.signs.len())
            .filter(|&i| self.signs[i] == -1 && group.exponent_parity(g, i))
            .fold(1, |acc, _| -acc)
    }

    pub fn eval(&self, g: &GroupElement) -> i8 {
        self.eval_norm(g.group(), g.norm())
    }
}

/// A finite integer combination of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    group: Group,
    terms: BTreeMap<Norm, BigInt>,
}

impl RingElement {
    pub fn zero(group: &Group) -> Self {
        RingElement { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn integer(group: &Group, n: impl Into<BigInt>) -> Self {
        let mut r = RingElement::zero(group);
        r.add_term(group.identity_norm(), n.into());
        r
    }

    pub fn one(group: &Group) -> Self {
        RingElement::integer(group, 1)
    }

    pub fn from_element(g: &GroupElement) -> Self {
        let mut r = RingElement::zero(g.group());
        r.add_term(g.norm().clone(), BigInt::one());
        r
    }

    pub fn from_word(group: &Group, word: &FreeWord) -> Result<Self> {
        Ok(RingElement::from_element(&group.normalize_word(word)?))
    }

    /// `Σ_{i<n} g^i`.
    pub fn geometric_sum(g: &GroupElement, n: usize) -> Self {
        let mut r = RingElement::zero(g.group());
        let mut p = g.group().identity();
        for _ in 0..n {
            r.add_term(p.norm().clone(), BigInt::one());
            p = p.multiply(g).expect("same group");
        }
        r
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn add_term(&mut self, g: Norm, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `(element, coefficient)` pairs in the stable print order.
    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, &BigInt)> + '_ {
        self.terms.iter().map(|(n, c)| (GroupElement::from_norm(&self.group, n.clone()), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single group element if this is `±g` or `g`; used where a
    /// coefficient is known to be a monomial.
    pub fn as_monomial(&self) -> Option<(GroupElement, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn check_group(&self, other: &RingElement) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::ClassMismatch)
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_group(other)?;
        let mut r = self.clone();
        for (g, c) in &other.terms {
            r.add_term(g.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn ring_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_group(other)?;
        let mut r = RingElement::zero(&self.group);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                r.add_term(self.group.mul_norm(g, h), a * b);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &BigInt) -> RingElement {
        let mut r = RingElement::zero(&self.group);
        for (g, a) in &self.terms {
            r.add_term(g.clone(), a * c);
        }
        r
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, g: &GroupElement) -> RingElement {
        let mut r = RingElement::zero(&self.group);
        for (h, a) in &self.terms {
            r.add_term(self.group.mul_norm(g.norm(), h), a.clone());
        }
        r
    }

    /// `Σ c_g g ↦ Σ c_g w(g) g^-1`.
    pub fn involute(&self, w: &OrientationCharacter) -> RingElement {
        let mut r = RingElement::zero(&self.group);
        for (g, c) in &self.terms {
            let s = w.eval_norm(&self.group, g);
            r.add_term(self.group.inv_norm(g), if s < 0 { -c } else { c.clone() });
        }
        r
    }

    /// `ε` (untwisted) or `ε_w` (twisted).
    pub fn augment(&self, twisted: bool, w: &OrientationCharacter) -> BigInt {
        self.terms
            .iter()
            .map(|(g, c)| if twisted && w.eval_norm(&self.group, g) < 0 { -c } else { c.clone() })
            .sum()
    }

    /// Coefficient of a given group element.
    pub fn coefficient(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g.norm()).cloned().unwrap_or_default()
    }

    /// Parses the rendered form, e.g. `1 - t.a^-2 + 3*a`.
    pub fn parse(group: &Group, text: &str) -> Result<RingElement> {
        let bad = |msg: String| Error::InvalidArgument(format!("ring element {text:?}: {msg}"));
        let mut r = RingElement::zero(group);
        let chars: Vec<char> = text.chars().collect();
        let mut start = 0;
        let mut sign = BigInt::one();
        let mut pieces: Vec<(BigInt, String)> = Vec::new();
        for i in 0..=chars.len() {
            let at_sep = i < chars.len()
                && (chars[i] == '+' || chars[i] == '-')
                && !chars[..i].iter().rev().find(|c| !c.is_whitespace()).is_some_and(|&c| c == '^');
            if i == chars.len() || at_sep {
                let body: String = chars[start..i].iter().collect();
                if !body.trim().is_empty() {
                    pieces.push((sign.clone(), body.trim().to_string()));
                } else if i != 0 && i == chars.len() {
                    return Err(bad("dangling sign".into()));
                }
                if i < chars.len() {
                    sign = if chars[i] == '-' { -BigInt::one() } else { BigInt::one() };
                    start = i + 1;
                }
            }
        }
        if pieces.is_empty() {
            return Err(bad("empty".into()));
        }
        for (sign, body) in pieces {
            let (coef, word) = match body.split_once('*') {
                Some((c, w)) => (c.trim().parse::<BigInt>().map_err(|e| bad(e.to_string()))?, w.trim()),
                None => match body.parse::<BigInt>() {
                    Ok(c) => (c, "1"),
                    Err(_) => (BigInt::one(), body.as_str()),
                },
            };
            let word = parse_word(word, group.names()).map_err(bad)?;
            let g = group.normalize_word(&word)?;
            r.add_term(g.norm().clone(), sign * coef);
        }
        Ok(r)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let identity = self.group.identity_norm();
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *g == identity {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&self.group.render_norm(g))?;
            } else {
                write!(f, "{a}*{}", self.group.render_norm(g))?;
            }
        }
        Ok(())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring elements from different groups")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_add(&-rhs).expect("ring elements from different groups")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.ring_mul(rhs).expect("ring elements from different groups")
    }
}

/// A rectangular matrix over Z[π].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    group: Group,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zero(group: &Group, rows: usize, cols: usize) -> Self {
        RingMatrix { group: group.clone(), rows, cols, entries: vec![RingElement::zero(group); rows * cols] }
    }

    pub fn identity(group: &Group, n: usize) -> Self {
        let mut m = RingMatrix::zero(group, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one(group));
        }
        m
    }

    pub fn from_rows(group: &Group, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        if rows.iter().flatten().any(|e| e.group() != group) {
            return Err(Error::ClassMismatch);
        }
        Ok(RingMatrix { group: group.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix with an explicit shape; `from_rows` cannot express `n × 0`.
    pub fn from_fn(group: &Group, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix { group: group.clone(), rows, cols, entries }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mat_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.group != other.group {
            return Err(Error::ClassMismatch);
        }
        Ok(RingMatrix::from_fn(&self.group, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(RingElement::zero(&self.group), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        }))
    }

    pub fn transpose(&self) -> RingMatrix {
        RingMatrix::from_fn(&self.group, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `(A*)_{ij} = conj(A_{ji})`.
    pub fn conjugate_transpose(&self, w: &OrientationCharacter) -> RingMatrix {
        RingMatrix::from_fn(&self.group, self.cols, self.rows, |i, j| self.get(j, i).involute(w))
    }

    pub fn try_sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrices of different shape".into()));
        }
        Ok(RingMatrix::from_fn(&self.group, self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}
