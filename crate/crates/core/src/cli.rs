//! Presentation files, command dispatch and JSON reports for the `pd4` binary.
//!
//! File format, one item per line (`#` starts a comment):
//!
//! ```text
//! name: bs12
//! class: bs 1 2
//! gens: a t
//! rels:
//! t a t^-1 a^-2
//! w: t 1
//! aspherical: true
//! ```
//!
//! The first generators name the class generators. Any further generators
//! need an entry in an `images:` block (`x' = a^-1`, one per line), giving
//! their value as a word in the class generators.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Subcommand;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bstorsion::{relation_matrix, smith_normal_form, torsion_report};
use crate::cup::{build_j, dual_complex, verify_chain_map};
use crate::error::{Error, Result};
use crate::fox::{
    dualizing_presentation, fox_derivative, fox_lyndon_complex, normalize_presentation, verify_boundary_squared,
    Presentation,
};
use crate::gamma::{gamma_normal_form, reduce_mod2, GammaElement};
use crate::groupring::{OrientationCharacter, RingElement, RingMatrix};
use crate::hermitian::{bm_evaluate, bm_preimage, is_even, HermitianForm};
use crate::words::{parse_word, FreeWord, Group, GroupClass};

pub const SCHEMA: u32 = 1;

/// The built-in corpus used by `selftest`.
pub const CORPUS: [(&str, &str); 6] = [
    ("z2", include_str!("../corpus/z2.pres")),
    ("klein", include_str!("../corpus/klein.pres")),
    ("bs12", include_str!("../corpus/bs12.pres")),
    ("bs13", include_str!("../corpus/bs13.pres")),
    ("surface2", include_str!("../corpus/surface2.pres")),
    ("fbc2", include_str!("../corpus/fbc2.pres")),
];

fn parse_class(spec: &str, gens: &[String], line: usize) -> Result<GroupClass> {
    let toks: Vec<&str> = spec.split_whitespace().collect();
    let num = |i: usize| -> Result<i64> {
        toks.get(i)
            .ok_or_else(|| Error::parse(line, format!("class {spec:?} is missing a number")))?
            .parse()
            .map_err(|_| Error::parse(line, format!("bad number in class {spec:?}")))
    };
    let count = |i: usize| -> Result<usize> {
        let n = num(i)?;
        usize::try_from(n).map_err(|_| Error::parse(line, format!("negative count in class {spec:?}")))
    };
    Ok(match toks.first().copied() {
        Some("free") => GroupClass::Free(count(1)?),
        Some("abelian") => GroupClass::FreeAbelian(count(1)?),
        Some("klein") => GroupClass::Klein,
        Some("bs") => {
            if num(1)? != 1 {
                return Err(Error::parse(line, "only BS(1, m) is supported: write `bs 1 m`"));
            }
            GroupClass::Bs(num(2)?)
        }
        Some("surface") => {
            let orientable = match toks.get(2).copied() {
                Some("orientable") | None => true,
                Some("nonorientable") => false,
                Some(o) => return Err(Error::parse(line, format!("unknown surface type {o:?}"))),
            };
            GroupClass::Surface { genus: count(1)?, orientable }
        }
        Some("freebycyclic") => {
            let rank = count(1)?;
            if gens.len() < rank + 1 {
                return Err(Error::parse(line, "freebycyclic needs rank + 1 generators on the gens line"));
            }
            let rest = spec.trim_start().splitn(3, char::is_whitespace).nth(2).unwrap_or("");
            let images = rest
                .split(',')
                .map(|w| parse_word(w.trim(), &gens[..rank]).map_err(|e| Error::parse(line, e)))
                .collect::<Result<Vec<_>>>()?;
            GroupClass::FreeByCyclic { rank, images }
        }
        Some("formal") => GroupClass::Formal(if toks.len() > 1 { count(1)? } else { gens.len() }),
        _ => return Err(Error::parse(line, format!("unknown class {spec:?}"))),
    })
}

/// Parses the line-oriented presentation format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name = String::new();
    let mut class_line: Option<(usize, String)> = None;
    let mut gens: Option<Vec<String>> = None;
    let mut rels: Vec<(usize, String)> = Vec::new();
    let mut images: Vec<(usize, String, String)> = Vec::new();
    let mut w_line: Option<(usize, String)> = None;
    let mut aspherical = false;
    #[derive(PartialEq)]
    enum Block {
        None,
        Rels,
        Images,
    }
    let mut block = Block::None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let value = value.trim();
            block = Block::None;
            match key.trim() {
                "name" => name = value.to_string(),
                "class" => class_line = Some((line, value.to_string())),
                "gens" => gens = Some(value.split_whitespace().map(String::from).collect()),
                "rels" => {
                    block = Block::Rels;
                    if !value.is_empty() {
                        rels.push((line, value.to_string()));
                    }
                }
                "images" => block = Block::Images,
                "w" => w_line = Some((line, value.to_string())),
                "aspherical" => {
                    aspherical = match value {
                        "true" | "yes" => true,
                        "false" | "no" => false,
                        _ => return Err(Error::parse(line, format!("aspherical must be true or false, got {value:?}"))),
                    }
                }
                other => return Err(Error::parse(line, format!("unknown key {other:?}"))),
            }
            continue;
        }
        match block {
            Block::Rels => rels.push((line, content.to_string())),
            Block::Images => {
                let (g, w) = content
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, "image lines look like `x' = a^-1`"))?;
                images.push((line, g.trim().to_string(), w.trim().to_string()));
            }
            Block::None => return Err(Error::parse(line, format!("unexpected line {content:?}"))),
        }
    }

    let gens = gens.ok_or_else(|| Error::parse(0, "missing `gens:` line"))?;
    for (k, g) in gens.iter().enumerate() {
        if g.contains(['.', '^', '=', ',']) || g == "1" || gens[..k].contains(g) {
            return Err(Error::parse(0, format!("invalid or repeated generator name {g:?}")));
        }
    }
    let (cline, cspec) = class_line.ok_or_else(|| Error::parse(0, "missing `class:` line"))?;
    let class = parse_class(&cspec, &gens, cline)?;
    let k = class.num_generators();
    if gens.len() < k {
        return Err(Error::parse(cline, format!("class {} needs {k} generators, `gens:` lists {}", class.tag(), gens.len())));
    }
    let group = Group::new(class, gens[..k].to_vec()).map_err(|e| Error::parse(cline, e.to_string()))?;

    let mut imgs: Vec<Option<crate::words::GroupElement>> = (0..gens.len())
        .map(|i| if i < k { group.generator(i).ok() } else { None })
        .collect();
    for (line, g, w) in images {
        let idx = gens.iter().position(|n| *n == g).ok_or_else(|| Error::parse(line, format!("undeclared generator {g:?}")))?;
        if idx < k {
            return Err(Error::parse(line, format!("{g:?} is a class generator and has no image line")));
        }
        let word = parse_word(&w, group.names()).map_err(|e| Error::parse(line, e))?;
        imgs[idx] = Some(group.normalize_word(&word)?);
    }
    let imgs = imgs
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| Error::parse(0, format!("generator {:?} needs an image", gens[i]))))
        .collect::<Result<Vec<_>>>()?;

    let mut signs = vec![1i8; k];
    if let Some((line, spec)) = w_line {
        let toks: Vec<&str> = spec.split_whitespace().collect();
        if toks.len() % 2 != 0 {
            return Err(Error::parse(line, "w lines are `name sign` pairs"));
        }
        for pair in toks.chunks(2) {
            let idx = group.names().iter().position(|n| n == pair[0]).ok_or_else(|| {
                Error::parse(line, format!("w names {:?}, which is not a class generator", pair[0]))
            })?;
            signs[idx] = match pair[1] {
                "1" | "+1" => 1,
                "-1" => -1,
                s => return Err(Error::parse(line, format!("w values are 1 or -1, got {s:?}"))),
            };
        }
    }
    let w = OrientationCharacter::new(&group, signs)?;

    let relators = rels
        .into_iter()
        .map(|(line, r)| parse_word(&r, &gens).map_err(|e| Error::parse(line, e)))
        .collect::<Result<Vec<FreeWord>>>()?;
    Presentation::new(name, gens, relators, &group, imgs, w, aspherical)
}

/// Prints in the format read by [`parse_presentation`].
pub fn print_presentation(p: &Presentation) -> String {
    let group = p.group();
    let k = group.num_generators();
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", p.name));
    let class = match group.class() {
        GroupClass::FreeByCyclic { rank, images } => format!(
            "freebycyclic {rank} {}",
            images.iter().map(|w| w.render(&group.names()[..*rank]).replace('.', " ")).collect::<Vec<_>>().join(", ")
        ),
        GroupClass::Formal(n) => format!("formal {n}"),
        c => c.tag(),
    };
    out.push_str(&format!("class: {class}\n"));
    out.push_str(&format!("gens: {}\n", p.generators().join(" ")));
    out.push_str("rels:\n");
    for r in p.relators() {
        out.push_str(&r.render(p.generators()).replace('.', " "));
        out.push('\n');
    }
    if p.generators().len() > k {
        out.push_str("images:\n");
        for (g, img) in p.generators()[k..].iter().zip(&p.images()[k..]) {
            out.push_str(&format!("{g} = {}\n", img.word().render(group.names()).replace('.', " ")));
        }
    }
    if !p.w().is_trivial() {
        let pairs: Vec<String> =
            group.names().iter().zip(p.w().signs()).map(|(n, s)| format!("{n} {s}")).collect();
        out.push_str(&format!("w: {}\n", pairs.join(" ")));
    }
    out.push_str(&format!("aspherical: {}\n", p.aspherical));
    out
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Fox derivatives of every relator and the fundamental identity.
    Fox { file: PathBuf },
    /// Rewrite relators as products of distinct positive generators.
    Normalize { file: PathBuf },
    /// The Fox–Lyndon complex and the check ∂₁∂₂ = 0.
    Complex { file: PathBuf },
    /// Presentation matrix of the dualizing module.
    Dualize { file: PathBuf },
    /// Verify the cup-product chain maps on the normalized presentation.
    VerifyCup { file: PathBuf },
    /// Normal form and mod-2 image of a Γ element (JSON) over the file's group.
    GammaNf { file: PathBuf, element: PathBuf },
    /// Evaluate B_M on a Γ element.
    BmEval { file: PathBuf, element: PathBuf },
    /// A Γ element mapping onto a hermitean form (JSON).
    BmPreimage { file: PathBuf, form: PathBuf },
    /// Smith normal form of the truncated BS(1, m) relation matrix.
    BsTorsion {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        depth: u32,
    },
    /// Run the built-in corpus checks.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fox { .. } => "fox",
            Command::Normalize { .. } => "normalize",
            Command::Complex { .. } => "complex",
            Command::Dualize { .. } => "dualize",
            Command::VerifyCup { .. } => "verify-cup",
            Command::GammaNf { .. } => "gamma-nf",
            Command::BmEval { .. } => "bm-eval",
            Command::BmPreimage { .. } => "bm-preimage",
            Command::BsTorsion { .. } => "bs-torsion",
            Command::Selftest => "selftest",
        }
    }
}

/// A finished run: the JSON report and the process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn presentation(&mut self, path: &Path) -> Result<Presentation> {
        parse_presentation(&self.read(path)?)
    }

    fn json(&mut self, path: &Path) -> Result<Value> {
        serde_json::from_str(&self.read(path)?)
            .map_err(|e| Error::InvalidArgument(format!("{} is not valid JSON: {e}", path.display())))
    }
}

fn form_to_json(h: &HermitianForm) -> Value {
    json!({"rank": h.rank(), "entries": h.matrix().render()})
}

fn form_from_json(group: &Group, w: &OrientationCharacter, v: &Value) -> Result<HermitianForm> {
    let bad = || Error::InvalidArgument("forms look like {\"rank\": r, \"entries\": [[text, ...], ...]}".into());
    let rows = v.get("entries").and_then(Value::as_array).ok_or_else(bad)?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|c| match c {
                    Value::String(s) => RingElement::parse(group, s),
                    Value::Number(n) => RingElement::parse(group, &n.to_string()),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(r) = v.get("rank").and_then(Value::as_u64) {
        if r as usize != rows.len() {
            return Err(Error::Shape(format!("rank {r} but {} rows", rows.len())));
        }
    }
    let m = if rows.is_empty() { RingMatrix::zero(group, 0, 0) } else { RingMatrix::from_rows(group, rows)? };
    HermitianForm::new(m, w)
}

fn fox_results(p: &Presentation) -> Result<(Value, bool)> {
    let free = p.free_group();
    let one = RingElement::one(free);
    let mut derivs = Vec::new();
    let mut identity_ok = true;
    for r in p.relators() {
        let mut row = Vec::new();
        let mut sum = RingElement::zero(free);
        for x in 0..p.generators().len() {
            let d = fox_derivative(free, r, x)?;
            let xm1 = &RingElement::from_word(free, &FreeWord::generator(x))? - &one;
            sum = &sum + &(&d * &xm1);
            row.push(d.to_string());
        }
        identity_ok &= sum == &RingElement::from_word(free, r)? - &one;
        derivs.push(row);
    }
    let c = fox_lyndon_complex(p)?;
    Ok((
        json!({
            "generators": p.generators(),
            "relators": (0..p.relators().len()).map(|j| p.render_relator(j)).collect::<Vec<_>>(),
            "free_derivatives": derivs,
            "d2": c.d2.render(),
            "fundamental_identity": identity_ok,
        }),
        identity_ok,
    ))
}

fn normalize_results(p: &Presentation) -> Result<(Value, bool)> {
    let n = normalize_presentation(p)?;
    let trivial = n.relators().iter().all(|r| !n.group().class().solves_word_problem() || n.phi_word(r).is_identity());
    let ok = n.is_normalized() && n.deficiency() == p.deficiency() && trivial;
    Ok((
        json!({
            "generators": n.generators(),
            "relators": (0..n.relators().len()).map(|j| n.render_relator(j)).collect::<Vec<_>>(),
            "deficiency_before": p.deficiency(),
            "deficiency_after": n.deficiency(),
            "normalized": n.is_normalized(),
            "presentation": print_presentation(&n),
        }),
        ok,
    ))
}

fn complex_results(p: &Presentation) -> Result<(Value, bool)> {
    let c = fox_lyndon_complex(p)?;
    let (boundary, ok) = if c.verified {
        let rep = verify_boundary_squared(&c)?;
        (json!({"composite": rep.composite.render(), "zero": rep.zero}), rep.zero)
    } else {
        (Value::Null, true)
    };
    Ok((json!({"d1": c.d1.render(), "d2": c.d2.render(), "verified": c.verified, "boundary_squared": boundary}), ok))
}

fn cup_results(p: &Presentation) -> Result<(Value, bool)> {
    let n = normalize_presentation(p)?;
    let dual = dual_complex(&n)?;
    let j = build_j(&n)?;
    let rep = verify_chain_map(&j, &n)?;
    let strings = |t: &crate::cup::TensorElement| t.terms().count();
    let render = |t: &crate::cup::TensorElement| {
        if t.is_zero() {
            vec![]
        } else {
            t.to_string().split(" + ").map(String::from).collect::<Vec<_>>()
        }
    };
    let dual_zero = dual.composite_is_zero()?;
    let per_relator_zero = rep.per_relator.iter().all(|t| t.is_zero());
    let ok = rep.ok() && dual_zero && per_relator_zero;
    Ok((
        json!({
            "presentation": p.name,
            "normalized_generators": n.generators(),
            "dual_composite_zero": dual_zero,
            "degree1_residual": rep.degree1.iter().flat_map(render).collect::<Vec<_>>(),
            "degree2_residual": render(&rep.degree2),
            "per_relator_zero": per_relator_zero,
            "j2_terms": strings(&j.j2),
        }),
        ok,
    ))
}

fn bs_results(m: u64, depth: u32) -> Result<(Value, bool)> {
    let report = torsion_report(m, depth)?;
    let rel = relation_matrix(m, depth)?;
    let snf = smith_normal_form(&rel.matrix);
    let reconstructs = snf.u.mul(&rel.matrix)?.mul(&snf.v)? == snf.d;
    let mut results = report.to_json();
    results["basis"] = rel.basis.numerators.iter().map(|&j| rel.basis.label(j)).collect::<Vec<_>>().into();
    results["snf_verified"] = reconstructs.into();
    Ok((results, reconstructs))
}

fn selftest_results() -> Result<(Value, bool)> {
    let mut items = BTreeMap::new();
    let mut all = true;
    for (name, text) in CORPUS {
        let p = parse_presentation(text)?;
        let roundtrip = parse_presentation(&print_presentation(&p)).map(|q| print_presentation(&q)) == Ok(print_presentation(&p));
        let (_, fox_ok) = fox_results(&p)?;
        let (_, complex_ok) = complex_results(&p)?;
        let (_, norm_ok) = normalize_results(&p)?;
        let (_, cup_ok) = cup_results(&p)?;
        let ok = roundtrip && fox_ok && complex_ok && norm_ok && cup_ok;
        all &= ok;
        items.insert(
            name.to_string(),
            json!({"roundtrip": roundtrip, "fox": fox_ok, "boundary_squared": complex_ok,
                   "normalize": norm_ok, "cup": cup_ok, "ok": ok}),
        );
    }
    let (bs, bs_ok) = bs_results(2, 1)?;
    let bs_expected = bs["divisors"] == json!([1, 1, 1]) && bs["free_rank"] == json!(1);
    all &= bs_ok && bs_expected;
    items.insert("bs-torsion m=2 depth=1".into(), json!({"ok": bs_ok && bs_expected}));
    Ok((Value::Object(items.into_iter().collect()), all))
}

fn gamma_input(inputs: &mut Inputs, file: &Path, element: &Path) -> Result<GammaElement> {
    let p = inputs.presentation(file)?;
    let v = inputs.json(element)?;
    GammaElement::from_json(p.group(), p.w(), &v)
}

fn dispatch(cmd: &Command, inputs: &mut Inputs) -> Result<(Value, bool)> {
    match cmd {
        Command::Fox { file } => fox_results(&inputs.presentation(file)?),
        Command::Normalize { file } => normalize_results(&inputs.presentation(file)?),
        Command::Complex { file } => complex_results(&inputs.presentation(file)?),
        Command::Dualize { file } => {
            let c = fox_lyndon_complex(&inputs.presentation(file)?)?;
            let m = dualizing_presentation(&c)?;
            Ok((json!({"rows": m.rows(), "cols": m.cols(), "matrix": m.render()}), true))
        }
        Command::VerifyCup { file } => cup_results(&inputs.presentation(file)?),
        Command::GammaNf { file, element } => {
            let x = gamma_input(inputs, file, element)?;
            let nf = gamma_normal_form(&x)?;
            let mod2: Vec<u8> = reduce_mod2(&x).into_iter().map(u8::from).collect();
            let consistent = reduce_mod2(&nf) == reduce_mod2(&x);
            Ok((json!({"normal_form": nf.to_json(), "is_zero": nf.is_empty(), "mod2": mod2}), consistent))
        }
        Command::BmEval { file, element } => {
            let x = gamma_input(inputs, file, element)?;
            let h = bm_evaluate(&x);
            Ok((json!({"form": form_to_json(&h), "even": is_even(&h)}), true))
        }
        Command::BmPreimage { file, form } => {
            let p = inputs.presentation(file)?;
            let h = form_from_json(p.group(), p.w(), &inputs.json(form)?)?;
            let x = bm_preimage(&h)?;
            let roundtrip = bm_evaluate(&x) == h;
            Ok((json!({"element": x.to_json(), "roundtrip": roundtrip}), roundtrip))
        }
        Command::BsTorsion { m, depth } => {
            inputs.hasher.update(format!("bs-torsion {m} {depth}").as_bytes());
            bs_results(*m, *depth)
        }
        Command::Selftest => selftest_results(),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidGenerator { .. } => "invalid-generator",
        Error::ClassMismatch => "class-mismatch",
        Error::Undecidable(_) => "undecidable",
        Error::Shape(_) => "shape",
        Error::InvalidClass(_) => "invalid-class",
        Error::NotHomomorphism(_) => "not-homomorphism",
        Error::NotAutomorphism(_) => "not-automorphism",
        Error::NotHermitean { .. } => "not-hermitean",
        Error::TwoTorsion(_) => "two-torsion",
        Error::NotAspherical => "not-aspherical",
        Error::NotNormalized(_) => "not-normalized",
        Error::Parse { .. } => "parse",
        Error::InvalidArgument(_) => "invalid-argument",
    }
}

/// Runs one command. Exit codes: 0 ok, 1 a check failed, 2 bad input,
/// 3 the computation was refused.
pub fn run(cmd: &Command) -> Outcome {
    let start = Instant::now();
    let mut inputs = Inputs { hasher: Sha256::new() };
    let result = dispatch(cmd, &mut inputs);
    let digest = hex::encode(inputs.hasher.finalize());
    let (results, ok, code, error) = match result {
        Ok((r, ok)) => (r, ok, if ok { 0 } else { 1 }, Value::Null),
        Err(e) => {
            let code = if e.is_refusal() { 3 } else { 2 };
            (Value::Null, false, code, json!({"kind": error_kind(&e), "message": e.to_string()}))
        }
    };
    let mut report = json!({
        "schema": SCHEMA,
        "command": cmd.name(),
        "input_digest": digest,
        "results": results,
        "ok": ok,
        "timing_ms": start.elapsed().as_millis() as u64,
    });
    if !error.is_null() {
        report["error"] = error;
    }
    Outcome { report, code }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses_and_roundtrips() {
        for (name, text) in CORPUS {
            let p = parse_presentation(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let printed = print_presentation(&p);
            let again = parse_presentation(&printed).unwrap();
            assert_eq!(print_presentation(&again), printed, "{name}");
            let n = normalize_presentation(&p).unwrap();
            let printed = print_presentation(&n);
            assert_eq!(print_presentation(&parse_presentation(&printed).unwrap()), printed, "{name} normalized");
        }
    }

    #[test]
    fn bs12_file() {
        let p = parse_presentation(CORPUS[2].1).unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.deficiency(), 1);
    }

    #[test]
    fn parse_errors() {
        let bad = "name: x\nclass: bs 1 2\ngens: a t\nrels:\nt b t^-1 a^-2\n";
        match parse_presentation(bad) {
            Err(Error::Parse { line: 5, msg }) => assert!(msg.contains("\"b\""), "{msg}"),
            other => panic!("{other:?}"),
        }
        let ok = "class: formal\ngens: t\nrels:\nt t\nw: t -1\n";
        assert!(parse_presentation(ok).is_ok());
        let bad = "class: formal\ngens: t\nrels:\nt\nw: t -1\n";
        assert!(matches!(parse_presentation(bad), Err(Error::NotHomomorphism(_))));
        assert!(matches!(parse_presentation("class: lie 2\ngens: x y\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn bs_torsion_command() {
        let out = run(&Command::BsTorsion { m: 2, depth: 1 });
        assert_eq!(out.code, 0);
        assert_eq!(out.report["results"]["divisors"], json!([1, 1, 1]));
        assert_eq!(out.report["schema"], json!(1));
    }

    #[test]
    fn missing_file_is_usage_error() {
        let out = run(&Command::Fox { file: "/nonexistent.pres".into() });
        assert_eq!(out.code, 2);
        assert_eq!(out.report["ok"], json!(false));
    }
}
