//! The dual resolution `Q̄` of a normalized presentation, the chain maps
//! `j_*: Q̄ -> P ⊗ Q̄`, and exact verification of the chain-map identities.
//!
//! `P` is the cellular chain complex of the universal cover of the
//! presentation complex: `∂p_x¹ = (x - 1) p⁰`, `∂p_r² = Σ_x r_x p_x¹` with
//! `r_x = φ(∂r/∂x)`. `Q̄` has `∂1* = Σ_x (x^-1 - 1) q_x¹` and
//! `∂q_x¹ = Σ_r conj(r_x) q_r⁰`, using the untwisted involution. Tensor
//! products carry the diagonal action and the Koszul sign.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fox::{fox_derivative, Presentation};
use crate::groupring::{OrientationCharacter, RingElement, RingMatrix};
use crate::words::{FreeWord, Group, GroupElement, Norm};

/// `u·p_{pidx} ⊗ v·q_{qidx}` with `p` in degree `pdeg` and `q` in degree `qdeg`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorKey {
    pub pdeg: u8,
    pub pidx: usize,
    pub u: Norm,
    pub qdeg: u8,
    pub qidx: usize,
    pub v: Norm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    group: Group,
    terms: BTreeMap<TensorKey, BigInt>,
}

impl TensorElement {
    pub fn zero(group: &Group) -> Self {
        TensorElement { group: group.clone(), terms: BTreeMap::new() }
    }

    /// `c · (p ⊗ q)` with both group coefficients trivial.
    pub fn basis(group: &Group, pdeg: u8, pidx: usize, qdeg: u8, qidx: usize, c: impl Into<BigInt>) -> Self {
        let mut t = TensorElement::zero(group);
        let one = group.identity_norm();
        t.add_term(TensorKey { pdeg, pidx, u: one.clone(), qdeg, qidx, v: one }, c.into());
        t
    }

    /// `(a · p) ⊗ (b · q)` for ring elements `a`, `b`.
    pub fn product(pdeg: u8, pidx: usize, a: &RingElement, qdeg: u8, qidx: usize, b: &RingElement) -> Self {
        let mut t = TensorElement::zero(a.group());
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                t.add_term(
                    TensorKey { pdeg, pidx, u: u.norm().clone(), qdeg, qidx, v: v.norm().clone() },
                    c * d,
                );
            }
        }
        t
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn add_term(&mut self, key: TensorKey, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for (k, c) in &other.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, c: &BigInt) -> TensorElement {
        let mut r = TensorElement::zero(&self.group);
        for (k, a) in &self.terms {
            r.add_term(k.clone(), a * c);
        }
        r
    }

    /// Diagonal action `g (a ⊗ b) = g a ⊗ g b`.
    pub fn act(&self, g: &GroupElement) -> TensorElement {
        let mut r = TensorElement::zero(&self.group);
        for (k, c) in &self.terms {
            let u = g.multiply(&GroupElement::from_norm(&self.group, k.u.clone())).expect("same group");
            let v = g.multiply(&GroupElement::from_norm(&self.group, k.v.clone())).expect("same group");
            r.add_term(TensorKey { u: u.norm().clone(), v: v.norm().clone(), ..k.clone() }, c.clone());
        }
        r
    }

    /// Linear extension of the diagonal action.
    pub fn act_ring(&self, x: &RingElement) -> TensorElement {
        let mut r = TensorElement::zero(&self.group);
        for (g, c) in x.terms() {
            r = r.add(&self.act(&g).scale(c));
        }
        r
    }

    pub fn filter(&self, mut keep: impl FnMut(&TensorKey) -> bool) -> TensorElement {
        TensorElement {
            group: self.group.clone(),
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let u = GroupElement::from_norm(&self.group, k.u.clone());
                let v = GroupElement::from_norm(&self.group, k.v.clone());
                format!("({u}·p{}[{}] ⊗ {v}·q{}[{}]) × {c}", k.pdeg, k.pidx, k.qdeg, k.qidx)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Boundary matrices of `P` and `Q̄`, row-vector convention: the boundary
/// of basis element `i` in degree `d` is row `i` of the degree-`d` matrix.
#[derive(Debug, Clone)]
pub struct TensorComplex {
    /// `[P D1 (g×1), P D2 (r×g)]`.
    pub p: [RingMatrix; 2],
    /// `[Q D1 (g×r), Q D2 (1×g)]`.
    pub q: [RingMatrix; 2],
}

fn boundary_of(m: &[RingMatrix; 2], deg: u8, idx: usize) -> Vec<(usize, &RingElement)> {
    if deg == 0 {
        return vec![];
    }
    let d = &m[deg as usize - 1];
    (0..d.cols()).map(|k| (k, d.get(idx, k))).filter(|(_, c)| !c.is_zero()).collect()
}

impl TensorComplex {
    /// `∂(a ⊗ b) = ∂a ⊗ b + (-1)^{|a|} a ⊗ ∂b`.
    pub fn differential(&self, x: &TensorElement) -> TensorElement {
        let group = x.group();
        let mut out = TensorElement::zero(group);
        for (k, c) in x.terms() {
            let u = RingElement::from_element(&GroupElement::from_norm(group, k.u.clone()));
            let v = RingElement::from_element(&GroupElement::from_norm(group, k.v.clone()));
            for (i, d) in boundary_of(&self.p, k.pdeg, k.pidx) {
                out = out.add(&TensorElement::product(k.pdeg - 1, i, &(&u * d), k.qdeg, k.qidx, &v).scale(c));
            }
            let sign = if k.pdeg % 2 == 0 { c.clone() } else { -c };
            for (j, d) in boundary_of(&self.q, k.qdeg, k.qidx) {
                out = out.add(&TensorElement::product(k.pdeg, k.pidx, &u, k.qdeg - 1, j, &(&v * d)).scale(&sign));
            }
        }
        out
    }

    /// Extends a map on the basis of `Q̄_d` Γ-linearly along `∂` of a basis element.
    fn apply_on_boundary(&self, deg: u8, idx: usize, images: &[TensorElement]) -> TensorElement {
        let mut out = TensorElement::zero(images.first().map_or_else(|| self.q[0].group(), |t| t.group()));
        for (k, c) in boundary_of(&self.q, deg, idx) {
            out = out.add(&images[k].act_ring(c));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct DualComplex {
    /// `1 × g`: `∂1* = Σ_x (x^-1 - 1) q_x¹`.
    pub top: RingMatrix,
    /// `g × r`: `∂q_x¹ = Σ_r conj(r_x) q_r⁰`.
    pub mid: RingMatrix,
}

impl DualComplex {
    pub fn composite_is_zero(&self) -> Result<bool> {
        Ok(self.top.mat_mul(&self.mid)?.is_zero())
    }
}

fn check_input(p: &Presentation) -> Result<()> {
    p.group().require_word_problem("the cup-product chain maps")?;
    if !p.aspherical {
        return Err(Error::NotAspherical);
    }
    if !p.is_normalized() {
        return Err(Error::NotNormalized("run `normalize` first".into()));
    }
    Ok(())
}

/// `φ(∂r/∂x)` for every generator `x` (rows) and relator `r` (columns).
fn fox_matrix(p: &Presentation) -> Result<RingMatrix> {
    let g = p.generators().len();
    let r = p.relators().len();
    let mut m = RingMatrix::zero(p.group(), g, r);
    for x in 0..g {
        for (j, rel) in p.relators().iter().enumerate() {
            m.set(x, j, p.phi(&fox_derivative(p.free_group(), rel, x)?));
        }
    }
    Ok(m)
}

pub fn dual_complex(p: &Presentation) -> Result<DualComplex> {
    check_input(p)?;
    let g = p.generators().len();
    let trivial = OrientationCharacter::trivial(p.group());
    let fm = fox_matrix(p)?;
    let mid = RingMatrix::from_fn(p.group(), g, fm.cols(), |x, r| fm.get(x, r).involute(&trivial));
    let one = RingElement::one(p.group());
    let top = RingMatrix::from_fn(p.group(), 1, g, |_, x| &RingElement::from_element(&p.images()[x].invert()) - &one);
    Ok(DualComplex { top, mid })
}

pub fn tensor_complex(p: &Presentation) -> Result<TensorComplex> {
    let dual = dual_complex(p)?;
    let one = RingElement::one(p.group());
    let g = p.generators().len();
    let d1 = RingMatrix::from_fn(p.group(), g, 1, |x, _| &RingElement::from_element(&p.images()[x]) - &one);
    let d2 = fox_matrix(p)?.transpose();
    Ok(TensorComplex { p: [d1, d2], q: [dual.mid, dual.top] })
}

#[derive(Debug, Clone)]
pub struct JMaps {
    /// `j₀(q_r⁰)`, one per relator.
    pub j0: Vec<TensorElement>,
    /// `j₁(q_x¹)`, one per generator.
    pub j1: Vec<TensorElement>,
    pub j2: TensorElement,
}

/// The prefix of `r` before the unique occurrence of `x`, if any.
fn prefix_before(r: &FreeWord, x: usize) -> Option<FreeWord> {
    r.letters().iter().position(|l| l.gen == x).map(|i| r.prefix(i))
}

pub fn build_j(p: &Presentation) -> Result<JMaps> {
    check_input(p)?;
    let group = p.group();
    let g = p.generators().len();
    let nr = p.relators().len();
    let j0 = (0..nr).map(|r| TensorElement::basis(group, 0, 0, 0, r, 1)).collect();

    let trivial = OrientationCharacter::trivial(group);
    let one = RingElement::one(group);
    let mut j1 = Vec::with_capacity(g);
    for x in 0..g {
        let mut t = TensorElement::basis(group, 0, 0, 1, x, 1);
        for (r, rel) in p.relators().iter().enumerate() {
            let Some(rx) = prefix_before(rel, x) else { continue };
            let rx_ring = p.phi(&RingElement::from_word(p.free_group(), &rx)?);
            if rx_ring.as_monomial().map_or(true, |(_, c)| !c.is_one()) {
                return Err(Error::NotNormalized(format!("r_x for relator {r} is not a group element")));
            }
            let conj = rx_ring.involute(&trivial);
            for y in 0..g {
                let d = p.phi(&fox_derivative(p.free_group(), &rx, y)?);
                if d.is_zero() {
                    continue;
                }
                let corr = TensorElement::product(1, y, &d, 0, r, &one).act_ring(&conj);
                t = t.sub(&corr);
            }
        }
        j1.push(t);
    }

    let mut j2 = TensorElement::basis(group, 0, 0, 2, 0, 1);
    for x in 0..g {
        j2 = j2.sub(&TensorElement::basis(group, 1, x, 1, x, 1).act(&p.images()[x].invert()));
    }
    for r in 0..nr {
        j2 = j2.sub(&TensorElement::basis(group, 2, r, 0, r, 1));
    }
    Ok(JMaps { j0, j1, j2 })
}

#[derive(Debug, Clone)]
pub struct ChainMapReport {
    /// `∂j₁(q_x¹) - j₀(∂q_x¹)` per generator.
    pub degree1: Vec<TensorElement>,
    /// `∂j₂(1*) - j₁(∂1*)`.
    pub degree2: TensorElement,
    /// The part of `degree2` carrying `q_r⁰`, per relator.
    pub per_relator: Vec<TensorElement>,
    /// The part of `degree2` in `P_0 ⊗ Q̄_1`.
    pub generator_part: TensorElement,
}

impl ChainMapReport {
    pub fn degree1_ok(&self) -> bool {
        self.degree1.iter().all(TensorElement::is_zero)
    }

    pub fn degree2_ok(&self) -> bool {
        self.degree2.is_zero()
    }

    pub fn ok(&self) -> bool {
        self.degree1_ok() && self.degree2_ok()
    }
}

pub fn verify_chain_map(j: &JMaps, p: &Presentation) -> Result<ChainMapReport> {
    let tc = tensor_complex(p)?;
    let degree1 = (0..p.generators().len())
        .map(|x| tc.differential(&j.j1[x]).sub(&tc.apply_on_boundary(1, x, &j.j0)))
        .collect();
    let degree2 = tc.differential(&j.j2).sub(&tc.apply_on_boundary(2, 0, &j.j1));
    let per_relator =
        (0..p.relators().len()).map(|r| degree2.filter(|k| k.qdeg == 0 && k.qidx == r)).collect();
    let generator_part = degree2.filter(|k| k.qdeg != 0);
    Ok(ChainMapReport { degree1, degree2, per_relator, generator_part })
}

/// Pairs `ξ ⊗ η` with the `(2, 0)` part of `j₂(1*)`, where `ξ(p_r²) = xi[r]`
/// and `η` is read off the `q⁰` index: entry `s` of the result is the
/// coefficient against the dual of `q_s⁰`, computed in `A ⊗_Γ B` via
/// `u a ⊗ v b = v^-1 u a ⊗ b`.
pub fn evaluate_cocycle_pair(j: &JMaps, xi: &[RingElement]) -> Result<Vec<RingElement>> {
    let group = j.j2.group();
    let nr = j.j0.len();
    if xi.len() != nr {
        return Err(Error::Shape(format!("ξ needs {nr} values, got {}", xi.len())));
    }
    let mut out = vec![RingElement::zero(group); nr];
    for (k, c) in j.j2.terms().filter(|(k, _)| k.pdeg == 2 && k.qdeg == 0) {
        let u = GroupElement::from_norm(group, k.u.clone());
        let v = GroupElement::from_norm(group, k.v.clone());
        let shift = v.invert().multiply(&u)?;
        out[k.qidx] = &out[k.qidx] + &xi[k.pidx].left_mul(&shift).scale(c);
    }
    Ok(out)
}
