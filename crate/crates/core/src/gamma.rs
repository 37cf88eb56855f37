//! Coinvariants `Z^w ⊗_{Z[π]} Γ_W(M)` for `M = Z[π]^r`.
//!
//! Elements are formal sums of `η(m)` (the image of `γ(m)`) and
//! `ε_w[m, m']` (the image of `m ⊙ m'`). The normal form uses the
//! relations
//!
//! * `η(g m) = w(g) η(m)` and `γ(m + m') = γ(m) + γ(m') + m ⊙ m'`,
//! * `ε_w[g e_i, h e_j] = w(h) ε_w[h^-1 g e_i, e_j]`, symmetric in its arguments,
//! * `2 η(e_i) = ε_w[e_i, e_i]`,
//!
//! so every element becomes `Σ δ_i η(e_i) + Σ_{i≤j} ε_w[r_ij e_i, e_j]`
//! with `δ_i ∈ {0, 1}` and each diagonal `r_ii` supported on one
//! representative of every pair `{g, g^-1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groupring::{OrientationCharacter, RingElement, RingMatrix};
use crate::words::{Group, GroupElement};

pub type Vector = Vec<RingElement>;

/// `F_2 ⊗_{Z[π]} M`, one bit per basis vector.
pub type Mod2Vector = Vec<bool>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaElement {
    group: Group,
    w: OrientationCharacter,
    rank: usize,
    /// `n · η(m)`.
    pub gamma_terms: Vec<(BigInt, Vector)>,
    /// `n · ε_w[m, m']`.
    pub odot_terms: Vec<(BigInt, Vector, Vector)>,
}

fn unit(group: &Group, rank: usize, i: usize, c: RingElement) -> Vector {
    (0..rank).map(|k| if k == i { c.clone() } else { RingElement::zero(group) }).collect()
}

impl GammaElement {
    pub fn zero(group: &Group, w: &OrientationCharacter, rank: usize) -> Self {
        GammaElement { group: group.clone(), w: w.clone(), rank, gamma_terms: vec![], odot_terms: vec![] }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn w(&self) -> &OrientationCharacter {
        &self.w
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The basis vector `c · e_i`.
    pub fn basis(&self, i: usize, c: RingElement) -> Vector {
        unit(&self.group, self.rank, i, c)
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::Shape(format!("vector of extent {} in a module of rank {}", v.len(), self.rank)));
        }
        if v.iter().any(|c| c.group() != &self.group) {
            return Err(Error::ClassMismatch);
        }
        Ok(())
    }

    pub fn push_gamma(&mut self, n: impl Into<BigInt>, m: Vector) -> Result<()> {
        self.check_vector(&m)?;
        self.gamma_terms.push((n.into(), m));
        Ok(())
    }

    pub fn push_odot(&mut self, n: impl Into<BigInt>, m: Vector, m2: Vector) -> Result<()> {
        self.check_vector(&m)?;
        self.check_vector(&m2)?;
        self.odot_terms.push((n.into(), m, m2));
        Ok(())
    }

    pub fn eta(group: &Group, w: &OrientationCharacter, m: Vector) -> Result<Self> {
        let mut x = GammaElement::zero(group, w, m.len());
        x.push_gamma(1, m)?;
        Ok(x)
    }

    pub fn odot(group: &Group, w: &OrientationCharacter, m: Vector, m2: Vector) -> Result<Self> {
        let mut x = GammaElement::zero(group, w, m.len());
        x.push_odot(1, m, m2)?;
        Ok(x)
    }

    pub fn try_add(&self, other: &GammaElement) -> Result<GammaElement> {
        if self.group != other.group || self.w != other.w {
            return Err(Error::ClassMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::Shape("Γ elements over modules of different rank".into()));
        }
        let mut r = self.clone();
        r.gamma_terms.extend(other.gamma_terms.iter().cloned());
        r.odot_terms.extend(other.odot_terms.iter().cloned());
        Ok(r)
    }

    pub fn negate(&self) -> GammaElement {
        let mut r = self.clone();
        r.gamma_terms.iter_mut().for_each(|t| t.0 = -t.0.clone());
        r.odot_terms.iter_mut().for_each(|t| t.0 = -t.0.clone());
        r
    }

    pub fn is_empty(&self) -> bool {
        self.gamma_terms.is_empty() && self.odot_terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let vec = |v: &Vector| Value::from(v.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        let gamma: Vec<Value> = self
            .gamma_terms
            .iter()
            .map(|(n, m)| if n.is_one() { vec(m) } else { json!({"mult": n.to_string(), "vector": vec(m)}) })
            .collect();
        let odot: Vec<Value> = self
            .odot_terms
            .iter()
            .map(|(n, m, m2)| {
                if n.is_one() {
                    json!([vec(m), vec(m2)])
                } else {
                    json!({"mult": n.to_string(), "pair": [vec(m), vec(m2)]})
                }
            })
            .collect();
        json!({"rank": self.rank, "gamma": gamma, "odot": odot})
    }

    /// Inverse of [`GammaElement::to_json`]. `rank` may be omitted when some
    /// term fixes it.
    pub fn from_json(group: &Group, w: &OrientationCharacter, v: &Value) -> Result<GammaElement> {
        let bad = |msg: &str| Error::InvalidArgument(format!("Γ element JSON: {msg}"));
        let vector = |v: &Value| -> Result<Vector> {
            v.as_array()
                .ok_or_else(|| bad("vectors are arrays of ring elements"))?
                .iter()
                .map(|c| match c {
                    Value::String(s) => RingElement::parse(group, s),
                    Value::Number(n) => RingElement::parse(group, &n.to_string()),
                    _ => Err(bad("coordinates are strings")),
                })
                .collect()
        };
        let mult = |v: &Value| -> Result<BigInt> {
            match v.get("mult") {
                None => Ok(BigInt::one()),
                Some(Value::Number(n)) => n.to_string().parse().map_err(|_| bad("bad multiplicity")),
                Some(Value::String(s)) => s.trim().parse().map_err(|_| bad("bad multiplicity")),
                _ => Err(bad("bad multiplicity")),
            }
        };
        let empty = vec![];
        let gamma = v.get("gamma").map_or(Some(&empty), Value::as_array).ok_or_else(|| bad("`gamma` is a list"))?;
        let odot = v.get("odot").map_or(Some(&empty), Value::as_array).ok_or_else(|| bad("`odot` is a list"))?;
        let mut gterms = Vec::new();
        for t in gamma {
            let (n, m) = match t.get("vector") {
                Some(vv) => (mult(t)?, vector(vv)?),
                None => (BigInt::one(), vector(t)?),
            };
            gterms.push((n, m));
        }
        let mut oterms = Vec::new();
        for t in odot {
            let (n, pair) = match t.get("pair") {
                Some(p) => (mult(t)?, p),
                None => (BigInt::one(), t),
            };
            let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("⊙ terms are pairs"))?;
            oterms.push((n, vector(&pair[0])?, vector(&pair[1])?));
        }
        let rank = match v.get("rank") {
            Some(r) => r.as_u64().ok_or_else(|| bad("`rank` is a nonnegative integer"))? as usize,
            None => gterms
                .first()
                .map(|t| t.1.len())
                .or_else(|| oterms.first().map(|t| t.1.len()))
                .ok_or_else(|| bad("`rank` is required for an empty element"))?,
        };
        let mut x = GammaElement::zero(group, w, rank);
        for (n, m) in gterms {
            x.push_gamma(n, m)?;
        }
        for (n, m, m2) in oterms {
            x.push_odot(n, m, m2)?;
        }
        Ok(x)
    }
}

/// Monomials `(basis index, group element, coefficient)` of a vector.
fn monomials(v: &Vector) -> Vec<(usize, GroupElement, BigInt)> {
    v.iter()
        .enumerate()
        .flat_map(|(i, c)| c.terms().map(move |(g, a)| (i, g, a.clone())).collect::<Vec<_>>())
        .collect()
}

/// Accumulates `Σ c_i η(e_i) + Σ_{i≤j} ε_w[r_ij e_i, e_j]` before the final
/// diagonal fold.
struct Accumulator {
    group: Group,
    w: OrientationCharacter,
    eta: Vec<BigInt>,
    r: Vec<Vec<RingElement>>,
}

impl Accumulator {
    fn new(group: &Group, w: &OrientationCharacter, rank: usize) -> Self {
        Accumulator {
            group: group.clone(),
            w: w.clone(),
            eta: vec![BigInt::zero(); rank],
            r: vec![vec![RingElement::zero(group); rank]; rank],
        }
    }

    fn sign(&self, g: &GroupElement, c: &BigInt) -> BigInt {
        if self.w.eval(g) < 0 {
            -c
        } else {
            c.clone()
        }
    }

    /// `c · ε_w[g e_i, h e_j]`.
    fn odot_mono(&mut self, i: usize, g: &GroupElement, j: usize, h: &GroupElement, c: &BigInt) {
        let (i, g, j, h) = if i <= j { (i, g, j, h) } else { (j, h, i, g) };
        let k = h.invert().multiply(g).expect("same group");
        let c = self.sign(h, c);
        self.r[i][j].add_term(k.norm().clone(), c);
    }

    fn odot(&mut self, n: &BigInt, m: &Vector, m2: &Vector) {
        let b = monomials(m2);
        for (i, g, a) in monomials(m) {
            for (j, h, c) in &b {
                self.odot_mono(i, &g, *j, h, &(n * &a * c));
            }
        }
    }

    fn gamma(&mut self, n: &BigInt, m: &Vector) {
        let ms = monomials(m);
        for (a, (i, g, c)) in ms.iter().enumerate() {
            // γ(c g e_i) = c² w(g) η(e_i)
            let s = self.sign(g, &(n * c * c));
            self.eta[*i] += s;
            for (j, h, d) in &ms[a + 1..] {
                self.odot_mono(*i, g, *j, h, &(n * c * d));
            }
        }
    }

    fn finish(mut self) -> (Vec<bool>, Vec<Vec<RingElement>>) {
        let rank = self.eta.len();
        let one = self.group.identity_norm();
        let mut delta = vec![false; rank];
        for i in 0..rank {
            let (q, rem) = self.eta[i].div_mod_floor(&BigInt::from(2));
            delta[i] = !rem.is_zero();
            let mut folded = RingElement::zero(&self.group);
            for (k, c) in self.r[i][i].terms() {
                let ki = k.invert();
                if ki.norm() < k.norm() {
                    folded.add_term(ki.norm().clone(), self.sign(&k, c));
                } else {
                    folded.add_term(k.norm().clone(), c.clone());
                }
            }
            folded.add_term(one.clone(), q);
            self.r[i][i] = folded;
        }
        (delta, self.r)
    }
}

/// Canonical representative; see the module docs.
pub fn gamma_normal_form(x: &GammaElement) -> Result<GammaElement> {
    let (delta, r) = normal_form_data(x)?;
    let mut out = GammaElement::zero(&x.group, &x.w, x.rank);
    let one = RingElement::one(&x.group);
    for (i, &d) in delta.iter().enumerate() {
        if d {
            out.gamma_terms.push((BigInt::one(), x.basis(i, one.clone())));
        }
    }
    for i in 0..x.rank {
        for j in i..x.rank {
            if !r[i][j].is_zero() {
                out.odot_terms.push((BigInt::one(), x.basis(i, r[i][j].clone()), x.basis(j, one.clone())));
            }
        }
    }
    Ok(out)
}

/// The normal form as `(δ, r)` with `r` upper triangular.
pub fn normal_form_data(x: &GammaElement) -> Result<(Vec<bool>, Vec<Vec<RingElement>>)> {
    x.group.require_word_problem("Γ normal form")?;
    let mut acc = Accumulator::new(&x.group, &x.w, x.rank);
    for (n, m) in &x.gamma_terms {
        acc.gamma(n, m);
    }
    for (n, m, m2) in &x.odot_terms {
        acc.odot(n, m, m2);
    }
    Ok(acc.finish())
}

/// `q`: `η(m) ↦ m mod (2, I_w)`, `ε_w[m, m'] ↦ 0`.
pub fn reduce_mod2(x: &GammaElement) -> Mod2Vector {
    let mut out = vec![false; x.rank];
    for (n, m) in &x.gamma_terms {
        if n.is_odd() {
            for (bit, c) in out.iter_mut().zip(m) {
                *bit ^= c.augment(false, &x.w).is_odd();
            }
        }
    }
    out
}

/// Applies `Γ(α_θ)` where `α_θ(m, e) = (m, e + θ(m))` on `M ⊕ E`, with
/// `M` the first `theta.rows()` coordinates and `θ(m) = m · Θ`.
pub fn apply_alpha_theta(x: &GammaElement, theta: &RingMatrix) -> Result<GammaElement> {
    let rm = theta.rows();
    if rm + theta.cols() != x.rank {
        return Err(Error::Shape(format!(
            "θ is {}×{} but the module has rank {}",
            theta.rows(),
            theta.cols(),
            x.rank
        )));
    }
    if theta.group() != &x.group {
        return Err(Error::ClassMismatch);
    }
    let shift = |v: &Vector| -> Result<Vector> {
        let row = RingMatrix::from_rows(&x.group, vec![v[..rm].to_vec()])?;
        let image = row.mat_mul(theta)?;
        let mut out: Vector = vec![RingElement::zero(&x.group); rm];
        out.extend((0..theta.cols()).map(|k| image.get(0, k).clone()));
        Ok(out)
    };
    let add = |a: &Vector, b: &Vector| -> Vector { a.iter().zip(b).map(|(p, q)| p + q).collect() };
    let mut out = GammaElement::zero(&x.group, &x.w, x.rank);
    for (n, v) in &x.gamma_terms {
        let t = shift(v)?;
        out.gamma_terms.push((n.clone(), v.clone()));
        out.gamma_terms.push((n.clone(), t.clone()));
        out.odot_terms.push((n.clone(), v.clone(), t));
    }
    for (n, v, v2) in &x.odot_terms {
        out.odot_terms.push((n.clone(), add(v, &shift(v)?), add(v2, &shift(v2)?)));
    }
    Ok(out)
}

/// Rank of `Γ(Z^r)` for the trivial group.
pub fn gamma_free_rank(group: &Group, r: usize) -> Result<usize> {
    if group.num_generators() != 0 {
        return Err(Error::InvalidArgument("the free rank is only defined for the trivial group".into()));
    }
    Ok(r * (r + 1) / 2)
}
