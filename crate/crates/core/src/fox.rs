//! Fox calculus, presentation normalization and the Fox–Lyndon complex.
//!
//! Derivatives are always taken in Z[F(X)] and only afterwards pushed to
//! Z[π] along the presentation map; simplifying with relators first changes
//! second derivatives.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groupring::{OrientationCharacter, RingElement, RingMatrix};
use crate::words::{FreeWord, Group, GroupClass, GroupElement};

/// A finite presentation `<X | R>` together with the map `φ: F(X) -> π`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    generators: Vec<String>,
    relators: Vec<FreeWord>,
    group: Group,
    images: Vec<GroupElement>,
    w: OrientationCharacter,
    pub aspherical: bool,
    free: Group,
}

impl Presentation {
    /// A presentation on the standard generators of `group`.
    pub fn standard(
        name: impl Into<String>,
        group: &Group,
        relators: Vec<FreeWord>,
        w: OrientationCharacter,
        aspherical: bool,
    ) -> Result<Self> {
        let images = (0..group.num_generators()).map(|i| group.generator(i)).collect::<Result<Vec<_>>>()?;
        Presentation::new(name, group.names().to_vec(), relators, group, images, w, aspherical)
    }

    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<FreeWord>,
        group: &Group,
        images: Vec<GroupElement>,
        w: OrientationCharacter,
        aspherical: bool,
    ) -> Result<Self> {
        if images.len() != generators.len() {
            return Err(Error::Shape("one image per generator is required".into()));
        }
        if images.iter().any(|g| g.group() != group) {
            return Err(Error::ClassMismatch);
        }
        let free = Group::free_on(generators.clone());
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidArgument("relators must be nonempty words".into()));
            }
            if let Some(g) = r.max_generator().filter(|&g| g >= generators.len()) {
                return Err(Error::InvalidGenerator { index: g, count: generators.len() });
            }
        }
        let p = Presentation { name: name.into(), generators, relators, group: group.clone(), images, w, aspherical, free };
        for r in &p.relators {
            if group.class().solves_word_problem() && !p.phi_word(r).is_identity() {
                return Err(Error::InvalidArgument(format!(
                    "relator {} is not trivial in {}",
                    r.render(&p.generators),
                    group.class().tag()
                )));
            }
            if p.w.eval(&p.phi_word(r)) != 1 || (!group.class().solves_word_problem() && p.w.eval_word(r) != 1) {
                return Err(Error::NotHomomorphism(r.render(&p.generators)));
            }
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn free_group(&self) -> &Group {
        &self.free
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn w(&self) -> &OrientationCharacter {
        &self.w
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn phi_word(&self, word: &FreeWord) -> GroupElement {
        word.letters().iter().fold(self.group.identity(), |acc, l| {
            let x = &self.images[l.gen];
            let x = if l.inv { x.invert() } else { x.clone() };
            acc.multiply(&x).expect("images live in the presentation's group")
        })
    }

    /// Pushes an element of Z[F(X)] to Z[π].
    pub fn phi(&self, x: &RingElement) -> RingElement {
        let mut out = RingElement::zero(&self.group);
        for (g, c) in x.terms() {
            out.add_term(self.phi_word(&g.word()).norm().clone(), c.clone());
        }
        out
    }

    /// Every relator is a product of distinct generators with exponent `+1`.
    pub fn is_normalized(&self) -> bool {
        self.relators.iter().all(|r| {
            let mut seen = vec![false; self.generators.len()];
            r.letters().iter().all(|l| !l.inv && !std::mem::replace(&mut seen[l.gen], true))
        })
    }

    pub fn render_relator(&self, j: usize) -> String {
        self.relators[j].render(&self.generators)
    }
}

/// `∂word/∂x_gen` in Z[F(X)].
pub fn fox_derivative(free: &Group, word: &FreeWord, gen: usize) -> Result<RingElement> {
    if !matches!(free.class(), GroupClass::Free(_)) {
        return Err(Error::InvalidArgument("Fox derivatives are taken in a free group ring".into()));
    }
    if gen >= free.num_generators() {
        return Err(Error::InvalidGenerator { index: gen, count: free.num_generators() });
    }
    let mut out = RingElement::zero(free);
    let mut prefix = FreeWord::identity();
    for &l in word.letters() {
        if l.gen == gen {
            if l.inv {
                // ∂(x^-1)/∂x = -x^-1
                let mut p = prefix.clone();
                p.push(l);
                out.add_term(free.normalize_word(&p)?.norm().clone(), -BigInt::one());
            } else {
                out.add_term(free.normalize_word(&prefix)?.norm().clone(), BigInt::one());
            }
        }
        prefix.push(l);
    }
    Ok(out)
}

/// Linear extension of `fox_derivative` to Z[F(X)].
pub fn fox_derivative_of(free: &Group, x: &RingElement, gen: usize) -> Result<RingElement> {
    let mut out = RingElement::zero(free);
    for (g, c) in x.terms() {
        out = &out + &fox_derivative(free, &g.word(), gen)?.scale(c);
    }
    Ok(out)
}

/// Rewrites the presentation so that every relator is a product of
/// distinct generators, all with exponent `+1`.
///
/// A negative occurrence of `x` becomes `x'` (relator `x' x`); a repeated
/// positive occurrence within one relator becomes a fresh `x_k` (relator
/// `x_k x'`); a repeated negative one a fresh `x'_k` (relator `x'_k x`).
/// Each auxiliary relator is itself a product of two distinct positive
/// generators, and each new generator brings one new relator, so the
/// deficiency is unchanged.
pub fn normalize_presentation(p: &Presentation) -> Result<Presentation> {
    if p.is_normalized() {
        return Ok(p.clone());
    }
    let mut gens = p.generators.clone();
    let mut images = p.images.clone();
    let mut aux: Vec<FreeWord> = Vec::new();
    let mut primes: HashMap<usize, usize> = HashMap::new();
    let mut counters: HashMap<(usize, bool), usize> = HashMap::new();

    fn fresh_name(gens: &[String], base: &str) -> String {
        let mut name = base.to_string();
        while gens.contains(&name) {
            name.push('\'');
        }
        name
    }

    let mut prime_of = |x: usize, gens: &mut Vec<String>, images: &mut Vec<GroupElement>, aux: &mut Vec<FreeWord>| {
        *primes.entry(x).or_insert_with(|| {
            let idx = gens.len();
            gens.push(fresh_name(gens, &format!("{}'", p.generators[x])));
            images.push(p.images[x].invert());
            aux.push(FreeWord::from_pairs(&[(idx, 1), (x, 1)]));
            idx
        })
    };

    let mut relators = Vec::with_capacity(p.relators.len());
    for r in &p.relators {
        let mut seen_pos = vec![false; p.generators.len()];
        let mut seen_neg = vec![false; p.generators.len()];
        let mut out: Vec<usize> = Vec::new();
        for l in r.letters() {
            let x = l.gen;
            let seen = if l.inv { &mut seen_neg[x] } else { &mut seen_pos[x] };
            if !*seen {
                *seen = true;
                out.push(if l.inv { prime_of(x, &mut gens, &mut images, &mut aux) } else { x });
                continue;
            }
            let xp = prime_of(x, &mut gens, &mut images, &mut aux);
            let k = counters.entry((x, l.inv)).or_insert(1);
            *k += 1;
            let base = if l.inv { format!("{}'_{k}", p.generators[x]) } else { format!("{}_{k}", p.generators[x]) };
            let idx = gens.len();
            gens.push(fresh_name(&gens, &base));
            if l.inv {
                images.push(p.images[x].invert());
                aux.push(FreeWord::from_pairs(&[(idx, 1), (x, 1)]));
            } else {
                images.push(p.images[x].clone());
                aux.push(FreeWord::from_pairs(&[(idx, 1), (xp, 1)]));
            }
            out.push(idx);
        }
        relators.push(FreeWord::from_pairs(&out.iter().map(|&g| (g, 1)).collect::<Vec<_>>()));
    }
    relators.extend(aux);

    // Formal groups carry one generator per presentation generator.
    let (group, images, w) = if p.group.class().solves_word_problem() {
        (p.group.clone(), images, p.w.clone())
    } else {
        let g = Group::new(GroupClass::Formal(gens.len()), gens.clone())?;
        let imgs = (0..gens.len()).map(|i| g.generator(i)).collect::<Result<Vec<_>>>()?;
        let mut signs = p.w.signs().to_vec();
        for img in &images[p.generators.len()..] {
            signs.push(p.w.eval(img));
        }
        (g.clone(), imgs, OrientationCharacter::new(&g, signs)?)
    };
    Presentation::new(p.name.clone(), gens, relators, &group, images, w, p.aspherical)
}

/// The equivariant cellular chain complex of the presentation 2-complex,
/// in column-vector form: `d1` is `g × 1`, `d2` is `g × r`.
#[derive(Debug, Clone)]
pub struct FoxComplex {
    pub presentation: Presentation,
    pub d1: RingMatrix,
    pub d2: RingMatrix,
    /// False for Formal presentations, whose entries are only freely reduced.
    pub verified: bool,
}

pub fn fox_lyndon_complex(p: &Presentation) -> Result<FoxComplex> {
    let g = p.generators.len();
    let r = p.relators.len();
    let group = &p.group;
    let d1 = RingMatrix::from_fn(group, g, 1, |i, _| &RingElement::from_element(&p.images[i]) - &RingElement::one(group));
    let mut derivs = Vec::with_capacity(g * r);
    for i in 0..g {
        for rel in &p.relators {
            derivs.push(p.phi(&fox_derivative(&p.free, rel, i)?));
        }
    }
    let mut it = derivs.into_iter();
    let d2 = RingMatrix::from_fn(group, g, r, |_, _| it.next().unwrap());
    Ok(FoxComplex { presentation: p.clone(), d1, d2, verified: group.class().solves_word_problem() })
}

#[derive(Debug, Clone)]
pub struct BoundaryReport {
    /// `r × 1`: entry `j` is `Σ_i d2[i][j] d1[i]`, i.e. `∂₁∂₂` on the `j`-th 2-cell.
    pub composite: RingMatrix,
    pub zero: bool,
}

pub fn verify_boundary_squared(c: &FoxComplex) -> Result<BoundaryReport> {
    c.presentation.group.require_word_problem("verifying ∂₁∘∂₂ = 0")?;
    let composite = c.d2.transpose().mat_mul(&c.d1)?;
    let zero = composite.is_zero();
    Ok(BoundaryReport { composite, zero })
}

/// `conj(d2)^T`: rows indexed by relators, columns by generators; a
/// presentation matrix for `E²Z` when the presentation complex is aspherical.
pub fn dualizing_presentation(c: &FoxComplex) -> Result<RingMatrix> {
    if !c.presentation.aspherical {
        return Err(Error::NotAspherical);
    }
    Ok(c.d2.conjugate_transpose(&c.presentation.w))
}
