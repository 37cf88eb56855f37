//! w-hermitean pairings on `M† = Hom(M, Z[π])` and the map `B_M`.
//!
//! Under the evaluation formula, `ε_w[r e_i, e_j]` has entry `conj(r)` at
//! `(i, j)` and `r` at `(j, i)`, so the preimage of an off-diagonal entry
//! `h_ij` uses `conj(h_ij)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gamma::{GammaElement, Vector};
use crate::groupring::{OrientationCharacter, RingElement, RingMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    matrix: RingMatrix,
    w: OrientationCharacter,
}

impl HermitianForm {
    /// Checks squareness and `conj(H)^T = H`.
    pub fn new(matrix: RingMatrix, w: &OrientationCharacter) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Shape(format!("a form needs a square matrix, got {}×{}", matrix.rows(), matrix.cols())));
        }
        let ct = matrix.conjugate_transpose(w);
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if ct.get(i, j) != matrix.get(i, j) {
                    return Err(Error::NotHermitean { row: i, col: j });
                }
            }
        }
        Ok(HermitianForm { matrix, w: w.clone() })
    }

    pub fn zero(group: &crate::words::Group, w: &OrientationCharacter, rank: usize) -> Self {
        HermitianForm { matrix: RingMatrix::zero(group, rank, rank), w: w.clone() }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    pub fn w(&self) -> &OrientationCharacter {
        &self.w
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        self.matrix.get(i, j)
    }
}

fn add_outer(h: &mut RingMatrix, a: &Vector, b: &Vector, n: &BigInt, w: &OrientationCharacter) {
    let ca: Vec<RingElement> = a.iter().map(|c| c.involute(w)).collect();
    for k in 0..a.len() {
        if ca[k].is_zero() {
            continue;
        }
        for l in 0..b.len() {
            if !b[l].is_zero() {
                let v = h.get(k, l) + &(&ca[k] * &b[l]).scale(n);
                h.set(k, l, v);
            }
        }
    }
}

/// `B_M(x)` as the matrix `H_kl = B_M(x)(e_k*, e_l*)`.
pub fn bm_evaluate(x: &GammaElement) -> HermitianForm {
    let w = x.w();
    let mut h = RingMatrix::zero(x.group(), x.rank(), x.rank());
    for (n, m) in &x.gamma_terms {
        add_outer(&mut h, m, m, n, w);
    }
    for (n, m, m2) in &x.odot_terms {
        add_outer(&mut h, m, m2, n, w);
        add_outer(&mut h, m2, m, n, w);
    }
    HermitianForm { matrix: h, w: w.clone() }
}

/// A `GammaElement` with `bm_evaluate(x) = H`.
///
/// Each diagonal entry is written `h = 2b + δ + Σ c_k (k + conj(k))` with
/// `b` an integer, `δ ∈ {0, 1}` and one `k` chosen from every pair
/// `{k, k^-1}`; it contributes `ε_w[(b + Σ c_k k) e_i, e_i] + δ η(e_i)`.
pub fn bm_preimage(h: &HermitianForm) -> Result<GammaElement> {
    let group = h.matrix.group();
    group.require_word_problem("B_M preimage")?;
    let w = &h.w;
    let r = h.rank();
    let mut x = GammaElement::zero(group, w, r);
    let one = RingElement::one(group);
    for i in 0..r {
        let hii = h.get(i, i);
        let mut half = RingElement::zero(group);
        let mut delta = false;
        for (g, c) in hii.terms() {
            if g.is_identity() {
                let (b, d) = c.div_mod_floor(&BigInt::from(2));
                half.add_term(g.norm().clone(), b);
                delta = d.is_one();
                continue;
            }
            let gi = g.invert();
            if gi.norm() == g.norm() {
                return Err(Error::TwoTorsion(g.to_string()));
            }
            if g.norm() < gi.norm() {
                half.add_term(g.norm().clone(), c.clone());
            }
        }
        if !half.is_zero() {
            x.push_odot(1, x.basis(i, half), x.basis(i, one.clone()))?;
        }
        if delta {
            x.push_gamma(1, x.basis(i, one.clone()))?;
        }
        for j in i + 1..r {
            let hij = h.get(i, j);
            if !hij.is_zero() {
                x.push_odot(1, x.basis(i, hij.involute(w)), x.basis(j, one.clone()))?;
            }
        }
    }
    Ok(x)
}

/// `ε(H_ii) ≡ 0 (mod 2)` for every `i`.
pub fn is_even(h: &HermitianForm) -> bool {
    (0..h.rank()).all(|i| h.get(i, i).augment(false, &h.w).is_even())
}

/// `U H conj(U)^T`.
pub fn transform(h: &HermitianForm, u: &RingMatrix) -> Result<HermitianForm> {
    if u.rows() != h.rank() || u.cols() != h.rank() {
        return Err(Error::Shape(format!("U must be {0}×{0}", h.rank())));
    }
    let m = u.mat_mul(&h.matrix)?.mat_mul(&u.conjugate_transpose(&h.w))?;
    HermitianForm::new(m, &h.w)
}
