//! Free words and per-class solutions of the word problem.

pub mod bs;
mod free;
pub mod surface;
pub mod torus;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use bs::BsNorm;
pub use free::{FreeWord, Letter};
use surface::SurfaceData;
use torus::TorusData;

/// Parses `t a t^-1 a^-2` or `t.a.t^-1.a^-2` over the given names; `1` is
/// the empty word. The result is freely reduced.
pub fn parse_word(text: &str, names: &[String]) -> std::result::Result<FreeWord, String> {
    let mut w = FreeWord::identity();
    for tok in text.split(|c: char| c.is_whitespace() || c == '.').filter(|t| !t.is_empty()) {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| format!("bad exponent in token {tok:?}"))?),
            None => (tok, 1),
        };
        let gen = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| format!("undeclared generator {name:?} in token {tok:?}"))?;
        w = w.mul(&FreeWord::power_of(gen, exp));
    }
    Ok(w)
}

/// The supported group classes. Each one except `Formal` comes with a
/// canonical normal form, so equality of norms is equality in the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupClass {
    Free(usize),
    FreeAbelian(usize),
    /// `<a, b | b a b^-1 a>`.
    Klein,
    Surface { genus: usize, orientable: bool },
    /// `BS(1, m) = <a, t | t a t^-1 a^-m>`.
    Bs(i64),
    /// `F(rank) ⋊_α Z`, with `images[i] = α(x_i)` and `t` the last generator.
    FreeByCyclic { rank: usize, images: Vec<FreeWord> },
    /// Free reduction only; the word problem is not solved.
    Formal(usize),
}

impl GroupClass {
    pub fn num_generators(&self) -> usize {
        match self {
            GroupClass::Free(n) | GroupClass::FreeAbelian(n) | GroupClass::Formal(n) => *n,
            GroupClass::Klein | GroupClass::Bs(_) => 2,
            GroupClass::Surface { genus, orientable } => {
                if *orientable { 2 * genus } else { *genus }
            }
            GroupClass::FreeByCyclic { rank, .. } => rank + 1,
        }
    }

    pub fn default_names(&self) -> Vec<String> {
        let seq = |n: usize, letters: &[&str]| -> Vec<String> {
            if n <= letters.len() {
                letters[..n].iter().map(|s| s.to_string()).collect()
            } else {
                (1..=n).map(|i| format!("x{i}")).collect()
            }
        };
        match self {
            GroupClass::Free(n) | GroupClass::FreeAbelian(n) | GroupClass::Formal(n) => {
                seq(*n, &["x", "y", "z", "u", "v"])
            }
            GroupClass::Klein => vec!["a".into(), "b".into()],
            GroupClass::Bs(_) => vec!["a".into(), "t".into()],
            GroupClass::Surface { genus, orientable: true } => {
                (1..=*genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
            }
            GroupClass::Surface { genus, orientable: false } => (1..=*genus).map(|i| format!("x{i}")).collect(),
            GroupClass::FreeByCyclic { rank, .. } => {
                let mut v = seq(*rank, &["x", "y", "z", "u", "v"]);
                v.push("t".into());
                v
            }
        }
    }

    pub fn solves_word_problem(&self) -> bool {
        !matches!(self, GroupClass::Formal(_))
    }

    /// Short tag used in reports, e.g. `bs 1 2`.
    pub fn tag(&self) -> String {
        match self {
            GroupClass::Free(n) => format!("free {n}"),
            GroupClass::FreeAbelian(n) => format!("abelian {n}"),
            GroupClass::Klein => "klein".into(),
            GroupClass::Surface { genus, orientable } => {
                format!("surface {genus} {}", if *orientable { "orientable" } else { "nonorientable" })
            }
            GroupClass::Bs(m) => format!("bs 1 {m}"),
            GroupClass::FreeByCyclic { rank, .. } => format!("freebycyclic {rank}"),
            GroupClass::Formal(n) => format!("formal {n}"),
        }
    }
}

/// Canonical form of a group element. Only meaningful together with the
/// group it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Norm {
    /// Free, Formal and Surface classes.
    Word(FreeWord),
    Abelian(Vec<i64>),
    /// `a^i b^j`.
    Klein(i64, i64),
    Bs(BsNorm),
    /// `t^k u`.
    Torus(i64, FreeWord),
}

impl Norm {
    fn rank(&self) -> u8 {
        match self {
            Norm::Word(_) => 0,
            Norm::Abelian(_) => 1,
            Norm::Klein(..) => 2,
            Norm::Bs(_) => 3,
            Norm::Torus(..) => 4,
        }
    }
}

/// A total order that puts the identity first and otherwise roughly sorts
/// by size; used for stable printing and for the diagonal fold in Γ.
impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Norm::Word(a), Norm::Word(b)) => a.cmp(b),
            (Norm::Abelian(a), Norm::Abelian(b)) => {
                let la: i64 = a.iter().map(|e| e.abs()).sum();
                let lb: i64 = b.iter().map(|e| e.abs()).sum();
                la.cmp(&lb).then_with(|| b.cmp(a))
            }
            (Norm::Klein(i, j), Norm::Klein(k, l)) => {
                (i.abs() + j.abs()).cmp(&(k.abs() + l.abs())).then((k, l).cmp(&(i, j)))
            }
            (Norm::Bs(a), Norm::Bs(b)) => (a.p + a.q)
                .cmp(&(b.p + b.q))
                .then_with(|| bs::abs_k(a).cmp(&bs::abs_k(b)))
                .then_with(|| b.k.cmp(&a.k))
                .then(a.p.cmp(&b.p)),
            (Norm::Torus(k, u), Norm::Torus(l, v)) => (k.unsigned_abs() + u.len() as u64)
                .cmp(&(l.unsigned_abs() + v.len() as u64))
                .then(l.cmp(k))
                .then_with(|| u.cmp(v)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, PartialEq, Eq)]
enum ClassData {
    Plain,
    Surface(SurfaceData),
    Torus(TorusData),
}

#[derive(Debug)]
struct GroupInner {
    class: GroupClass,
    names: Vec<String>,
    data: ClassData,
}

/// A group class together with generator names; cheap to clone.
#[derive(Debug, Clone)]
pub struct Group(Arc<GroupInner>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.class == other.0.class
    }
}

impl Eq for Group {}

impl Group {
    pub fn new(class: GroupClass, names: Vec<String>) -> Result<Group> {
        let data = match &class {
            GroupClass::Bs(0) => return Err(Error::InvalidClass("BS(1, m) requires m != 0".into())),
            GroupClass::Surface { genus, .. } if *genus < 2 => {
                return Err(Error::InvalidClass("surface groups require genus >= 2".into()))
            }
            GroupClass::Surface { genus, orientable } => ClassData::Surface(SurfaceData::new(*genus, *orientable)),
            GroupClass::FreeByCyclic { rank, images } => ClassData::Torus(TorusData::new(*rank, images.clone())?),
            _ => ClassData::Plain,
        };
        if names.len() != class.num_generators() {
            return Err(Error::InvalidClass(format!(
                "class {} has {} generators but {} names were given",
                class.tag(),
                class.num_generators(),
                names.len()
            )));
        }
        Ok(Group(Arc::new(GroupInner { class, names, data })))
    }

    pub fn from_class(class: GroupClass) -> Result<Group> {
        let names = class.default_names();
        Group::new(class, names)
    }

    /// The free group on the given generator names.
    pub fn free_on(names: Vec<String>) -> Group {
        Group::new(GroupClass::Free(names.len()), names).expect("free groups are always valid")
    }

    pub fn class(&self) -> &GroupClass {
        &self.0.class
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn num_generators(&self) -> usize {
        self.0.names.len()
    }

    pub fn surface_data(&self) -> Option<&SurfaceData> {
        match &self.0.data {
            ClassData::Surface(s) => Some(s),
            _ => None,
        }
    }

    pub fn torus_data(&self) -> Option<&TorusData> {
        match &self.0.data {
            ClassData::Torus(t) => Some(t),
            _ => None,
        }
    }

    /// Fails with an undecidable-in-formal-mode error for `Formal` groups.
    pub fn require_word_problem(&self, what: &str) -> Result<()> {
        if self.0.class.solves_word_problem() {
            Ok(())
        } else {
            Err(Error::Undecidable(format!("{what} needs group equality, which Formal mode does not provide")))
        }
    }

    /// The defining relators of the class, in its standard generators.
    pub fn defining_relators(&self) -> Vec<FreeWord> {
        match (&self.0.class, &self.0.data) {
            (GroupClass::FreeAbelian(n), _) => {
                let mut out = Vec::new();
                for i in 0..*n {
                    for j in i + 1..*n {
                        out.push(FreeWord::from_pairs(&[(i, 1), (j, 1), (i, -1), (j, -1)]));
                    }
                }
                out
            }
            (GroupClass::Klein, _) => vec![FreeWord::from_pairs(&[(1, 1), (0, 1), (1, -1), (0, 1)])],
            (GroupClass::Bs(m), _) => {
                vec![FreeWord::from_pairs(&[(bs::GEN_T, 1), (bs::GEN_A, 1), (bs::GEN_T, -1)])
                    .mul(&FreeWord::power_of(bs::GEN_A, -m))]
            }
            (_, ClassData::Surface(s)) => vec![s.relator.clone()],
            (_, ClassData::Torus(t)) => t.relators(),
            _ => Vec::new(),
        }
    }

    pub fn identity_norm(&self) -> Norm {
        match &self.0.class {
            GroupClass::FreeAbelian(n) => Norm::Abelian(vec![0; *n]),
            GroupClass::Klein => Norm::Klein(0, 0),
            GroupClass::Bs(_) => Norm::Bs(bs::identity()),
            GroupClass::FreeByCyclic { .. } => Norm::Torus(0, FreeWord::identity()),
            _ => Norm::Word(FreeWord::identity()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { group: self.clone(), norm: self.identity_norm() }
    }

    fn check_word(&self, word: &FreeWord) -> Result<()> {
        match word.max_generator() {
            Some(g) if g >= self.num_generators() => {
                Err(Error::InvalidGenerator { index: g, count: self.num_generators() })
            }
            _ => Ok(()),
        }
    }

    /// Canonical form of a word. Constant on the classes of the word problem.
    pub fn normalize_word(&self, word: &FreeWord) -> Result<GroupElement> {
        self.check_word(word)?;
        Ok(GroupElement { group: self.clone(), norm: self.norm_of(word) })
    }

    pub fn generator(&self, gen: usize) -> Result<GroupElement> {
        self.normalize_word(&FreeWord::generator(gen))
    }

    pub(crate) fn norm_of(&self, word: &FreeWord) -> Norm {
        match (&self.0.class, &self.0.data) {
            (GroupClass::FreeAbelian(n), _) => {
                Norm::Abelian((0..*n).map(|i| word.exponent_sum(i)).collect())
            }
            (GroupClass::Klein, _) => {
                // a^i b^j . a^e = a^(i + (-1)^j e) b^j ;  a^i b^j . b^e = a^i b^(j+e)
                let (mut i, mut j) = (0i64, 0i64);
                for l in word.letters() {
                    if l.gen == 0 {
                        i += if j.rem_euclid(2) == 0 { l.exp() as i64 } else { -(l.exp() as i64) };
                    } else {
                        j += l.exp() as i64;
                    }
                }
                Norm::Klein(i, j)
            }
            (GroupClass::Bs(m), _) => Norm::Bs(bs::normalize(word, *m)),
            (_, ClassData::Surface(s)) => Norm::Word(s.normalize(word)),
            (_, ClassData::Torus(t)) => {
                let (k, u) = t.normalize(word);
                Norm::Torus(k, u)
            }
            _ => Norm::Word(word.clone()),
        }
    }

    pub(crate) fn mul_norm(&self, g: &Norm, h: &Norm) -> Norm {
        match (g, h, &self.0.data) {
            (Norm::Abelian(a), Norm::Abelian(b), _) => Norm::Abelian(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Norm::Klein(i, j), Norm::Klein(k, l), _) => {
                let k = if j.rem_euclid(2) == 0 { *k } else { -k };
                Norm::Klein(i + k, j + l)
            }
            (Norm::Bs(a), Norm::Bs(b), _) => {
                let GroupClass::Bs(m) = self.0.class else { unreachable!() };
                Norm::Bs(bs::multiply(a, b, m))
            }
            (Norm::Torus(k, u), Norm::Torus(l, v), ClassData::Torus(t)) => {
                let (k, u) = t.multiply(&(*k, u.clone()), &(*l, v.clone()));
                Norm::Torus(k, u)
            }
            (Norm::Word(a), Norm::Word(b), ClassData::Surface(s)) => Norm::Word(s.normalize(&a.mul(b))),
            (Norm::Word(a), Norm::Word(b), _) => Norm::Word(a.mul(b)),
            _ => unreachable!("norm variants of one group always agree"),
        }
    }

    pub(crate) fn inv_norm(&self, g: &Norm) -> Norm {
        match (g, &self.0.data) {
            (Norm::Abelian(a), _) => Norm::Abelian(a.iter().map(|x| -x).collect()),
            // (a^i b^j)^-1 = b^-j a^-i = a^(-(-1)^j i) b^-j
            (Norm::Klein(i, j), _) => Norm::Klein(if j.rem_euclid(2) == 0 { -i } else { *i }, -j),
            (Norm::Bs(a), _) => {
                let GroupClass::Bs(m) = self.0.class else { unreachable!() };
                Norm::Bs(bs::invert(a, m))
            }
            (Norm::Torus(k, u), ClassData::Torus(t)) => {
                let (k, u) = t.invert(&(*k, u.clone()));
                Norm::Torus(k, u)
            }
            (Norm::Word(a), ClassData::Surface(s)) => Norm::Word(s.normalize(&a.inverse())),
            (Norm::Word(a), _) => Norm::Word(a.inverse()),
            _ => unreachable!("norm variants of one group always agree"),
        }
    }

    /// A word spelling the canonical form.
    pub(crate) fn word_of(&self, g: &Norm) -> FreeWord {
        match (g, &self.0.data) {
            (Norm::Word(w), _) => w.clone(),
            (Norm::Abelian(a), _) => a
                .iter()
                .enumerate()
                .fold(FreeWord::identity(), |w, (i, &e)| w.mul(&FreeWord::power_of(i, e))),
            (Norm::Klein(i, j), _) => FreeWord::power_of(0, *i).mul(&FreeWord::power_of(1, *j)),
            (Norm::Bs(n), _) => bs::to_word(n),
            (Norm::Torus(k, u), ClassData::Torus(t)) => t.to_word(&(*k, u.clone())),
            (Norm::Torus(..), _) => unreachable!(),
        }
    }

    /// Exponent-sum parity of generator `gen` in any word for `g`.
    pub(crate) fn exponent_parity(&self, g: &Norm, gen: usize) -> bool {
        match g {
            Norm::Word(w) => w.exponent_sum(gen).rem_euclid(2) == 1,
            Norm::Abelian(a) => a[gen].rem_euclid(2) == 1,
            Norm::Klein(i, j) => [i, j][gen].rem_euclid(2) == 1,
            Norm::Bs(n) => {
                if gen == bs::GEN_A {
                    bs::k_is_odd(n)
                } else {
                    (n.q as i64 - n.p as i64).rem_euclid(2) == 1
                }
            }
            Norm::Torus(k, u) => {
                if Some(gen) == self.torus_data().map(TorusData::t) {
                    k.rem_euclid(2) == 1
                } else {
                    u.exponent_sum(gen).rem_euclid(2) == 1
                }
            }
        }
    }

    pub(crate) fn render_norm(&self, g: &Norm) -> String {
        match g {
            Norm::Bs(n) => {
                let names = self.names();
                free::render_syllables([
                    (names[bs::GEN_T].as_str(), -(n.p as i64)),
                    (names[bs::GEN_A].as_str(), (&n.k).try_into().unwrap_or(i64::MAX)),
                    (names[bs::GEN_T].as_str(), n.q as i64),
                ])
            }
            _ => self.word_of(g).render(self.names()),
        }
    }
}

/// An element of a group in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Group,
    norm: Norm,
}

impl std::hash::Hash for Group {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.class.tag().hash(state);
    }
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn norm(&self) -> &Norm {
        &self.norm
    }

    pub(crate) fn from_norm(group: &Group, norm: Norm) -> Self {
        GroupElement { group: group.clone(), norm }
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::ClassMismatch);
        }
        Ok(GroupElement { group: self.group.clone(), norm: self.group.mul_norm(&self.norm, &other.norm) })
    }

    pub fn invert(&self) -> GroupElement {
        GroupElement { group: self.group.clone(), norm: self.group.inv_norm(&self.norm) }
    }

    pub fn is_identity(&self) -> bool {
        self.norm == self.group.identity_norm()
    }

    /// True group equality; refused in Formal mode.
    pub fn equals(&self, other: &GroupElement) -> Result<bool> {
        self.group.require_word_problem("element comparison")?;
        if self.group != other.group {
            return Err(Error::ClassMismatch);
        }
        Ok(self.norm == other.norm)
    }

    pub fn word(&self) -> FreeWord {
        self.group.word_of(&self.norm)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group.render_norm(&self.norm))
    }
}
