//! Presentations built from geometric data: mapping tori, Klein-bottle
//! bundles, twist-spun trefoil groups, and Wirtinger / surgery / Kirby
//! presentations from signed Gauss codes.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset::{enumerate, group_order, Enumeration, EnumerationError, EnumerationLimits, GroupOrder};
use crate::matrix::IntegerMatrix;
use crate::models::{closure_size, Bounded, GroupOps, PermGroup};
use crate::presentation::{Presentation, PresentationError};
use crate::words::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("component {0} has no framing")]
    MissingFraming(usize),
    #[error("component {0} is not a surgery component")]
    NotSurgery(usize),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("diagram file: {0}")]
    Io(String),
}

// ---------------------------------------------------------------------------
// Diagrams

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pass {
    #[serde(rename = "o")]
    Over,
    #[serde(rename = "u")]
    Under,
}

/// One passage through a crossing: `[crossing_id, "o" | "u", +1 | -1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeEntry(pub u32, pub Pass, pub i32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Surgery,
    Dotted,
    Attaching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub code: Vec<CodeEntry>,
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<i64>,
}

/// A link diagram given by one signed Gauss code per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedLinkDiagram {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub comment: String,
    pub components: Vec<Component>,
}

/// Location of a passage: (component, position in its code).
type Site = (usize, usize);

impl FramedLinkDiagram {
    pub fn new(components: Vec<Component>) -> Result<Self, BuilderError> {
        let d = FramedLinkDiagram { comment: String::new(), components };
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self, BuilderError> {
        let d: FramedLinkDiagram = serde_json::from_str(text).map_err(|e| BuilderError::MalformedDiagram(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn load(path: &Path) -> Result<Self, BuilderError> {
        let text = std::fs::read_to_string(path).map_err(|e| BuilderError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn validate(&self) -> Result<(), BuilderError> {
        let bad = |m: String| Err(BuilderError::MalformedDiagram(m));
        let mut seen: BTreeMap<u32, (Option<i32>, Option<i32>)> = BTreeMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            match (c.role, c.framing) {
                (Role::Dotted, Some(_)) => return bad(format!("dotted component {ci} carries a framing")),
                (Role::Surgery | Role::Attaching, None) => return Err(BuilderError::MissingFraming(ci)),
                _ => {}
            }
            for &CodeEntry(id, pass, sign) in &c.code {
                if sign != 1 && sign != -1 {
                    return bad(format!("crossing {id} has sign {sign}, expected +1 or -1"));
                }
                let slot = seen.entry(id).or_default();
                let which = match pass {
                    Pass::Over => &mut slot.0,
                    Pass::Under => &mut slot.1,
                };
                if which.replace(sign).is_some() {
                    return bad(format!("crossing {id} passed {:?} twice", pass));
                }
            }
        }
        for (id, (o, u)) in seen {
            match (o, u) {
                (Some(a), Some(b)) if a == b => {}
                (Some(_), Some(_)) => return bad(format!("crossing {id} has inconsistent signs")),
                _ => return bad(format!("crossing {id} must appear once over and once under")),
            }
        }
        Ok(())
    }

    /// Closure of a braid on `strands` strands. Letters are `+i` for the
    /// positive generator exchanging positions `i` and `i + 1` and `-i` for
    /// its inverse. Components are listed in order of their lowest starting
    /// position and all get `role`, with `framings[k]` on component `k`.
    pub fn braid_closure(strands: usize, word: &[i32], role: Role, framings: &[i64]) -> Result<Self, BuilderError> {
        for &l in word {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(BuilderError::InvalidParameter(format!("braid letter {l} on {strands} strands")));
            }
        }
        let mut visited = vec![false; strands + 1];
        let mut comps = Vec::new();
        for start in 1..=strands {
            if visited[start] {
                continue;
            }
            let mut code = Vec::new();
            let mut p = start;
            loop {
                visited[p] = true;
                for (level, &l) in word.iter().enumerate() {
                    let i = l.unsigned_abs() as usize;
                    if p != i && p != i + 1 {
                        continue;
                    }
                    let sign = l.signum();
                    // Positive letter: the strand coming from the right goes over.
                    let over = (sign > 0) == (p == i + 1);
                    code.push(CodeEntry(level as u32 + 1, if over { Pass::Over } else { Pass::Under }, sign));
                    p = if p == i { i + 1 } else { i };
                }
                if p == start {
                    break;
                }
            }
            comps.push(code);
        }
        if role != Role::Dotted && framings.len() != comps.len() {
            return Err(BuilderError::InvalidParameter(format!(
                "{} framings for {} components",
                framings.len(),
                comps.len()
            )));
        }
        let components = comps
            .into_iter()
            .enumerate()
            .map(|(k, code)| Component { code, role, framing: (role != Role::Dotted).then(|| framings[k]) })
            .collect();
        FramedLinkDiagram::new(components)
    }

    fn locate(&self) -> HashMap<(u32, Pass), Site> {
        let mut m = HashMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            for (pi, e) in c.code.iter().enumerate() {
                m.insert((e.0, e.1), (ci, pi));
            }
        }
        m
    }

    /// `lk(c, d)` off the diagonal (sum of signs of crossings where `c`
    /// passes under `d`), framings on the diagonal.
    pub fn linking_matrix(&self) -> Result<IntegerMatrix, BuilderError> {
        let n = self.components.len();
        let loc = self.locate();
        let mut m = IntegerMatrix::zeros(n, n);
        let mut under = vec![vec![0i64; n]; n];
        for (ci, c) in self.components.iter().enumerate() {
            for e in &c.code {
                if e.1 == Pass::Under {
                    let (oc, _) = loc[&(e.0, Pass::Over)];
                    if oc != ci {
                        under[ci][oc] += i64::from(e.2);
                    }
                }
            }
        }
        for (ci, c) in self.components.iter().enumerate() {
            let f = c.framing.ok_or(BuilderError::MissingFraming(ci))?;
            m.set(ci, ci, BigInt::from(f));
            for (d, row) in under.iter().enumerate() {
                if d != ci {
                    let total = under[ci][d] + row[ci];
                    if total % 2 != 0 {
                        return Err(BuilderError::MalformedDiagram(format!(
                            "components {ci} and {d} have odd crossing sign sum"
                        )));
                    }
                    m.set(ci, d, BigInt::from(total / 2));
                }
            }
        }
        Ok(m)
    }
}

/// Arc bookkeeping shared by the Wirtinger and surgery builders.
struct Arcs {
    generators: Vec<Generator>,
    offset: Vec<usize>,
    unders: Vec<usize>,
}

impl Arcs {
    fn new(d: &FramedLinkDiagram) -> Self {
        let mut offset = Vec::new();
        let mut unders = Vec::new();
        let mut total = 0;
        for c in &d.components {
            let m = c.code.iter().filter(|e| e.1 == Pass::Under).count();
            offset.push(total);
            unders.push(m);
            total += m.max(1);
        }
        let generators = (1..=total).map(|i| Generator::new(&format!("x{i}")).expect("valid name")).collect();
        Arcs { generators, offset, unders }
    }

    /// Arc containing position `pos` of component `c`, where `r` under-passages
    /// precede it. Arc 0 of a component contains the start of its code.
    fn arc(&self, c: usize, r: usize) -> &Generator {
        let m = self.unders[c].max(1);
        &self.generators[self.offset[c] + r % m]
    }

    fn arc_at(&self, d: &FramedLinkDiagram, (c, pos): Site) -> &Generator {
        let r = d.components[c].code[..pos].iter().filter(|e| e.1 == Pass::Under).count();
        self.arc(c, r)
    }
}

/// One generator per arc (`x1, x2, ...`), one conjugation relator per
/// crossing. Component roles are ignored.
pub fn wirtinger(d: &FramedLinkDiagram) -> Result<Presentation, BuilderError> {
    d.validate()?;
    let arcs = Arcs::new(d);
    let loc = d.locate();
    let mut relators = Vec::new();
    for (ci, c) in d.components.iter().enumerate() {
        let mut r = 0;
        for e in &c.code {
            if e.1 != Pass::Under {
                continue;
            }
            let x_in = Word::gen(arcs.arc(ci, r));
            let x_out = Word::gen(arcs.arc(ci, r + 1));
            let over = Word::gen(arcs.arc_at(d, loc[&(e.0, Pass::Over)]));
            let eps = i64::from(e.2);
            // x_out = over^-eps x_in over^eps
            relators.push(x_out.inverse() * over.pow(-eps) * x_in * over.pow(eps));
            r += 1;
        }
    }
    Ok(Presentation::new("wirtinger", arcs.generators, relators)?)
}

/// Longitude of component `c`, based on its arc 0: the over-arc generators
/// met at its under-passages, corrected by the self-writhe.
fn longitude(d: &FramedLinkDiagram, arcs: &Arcs, loc: &HashMap<(u32, Pass), Site>, c: usize) -> Word {
    let mut w = Word::identity();
    let mut writhe = 0i64;
    for e in &d.components[c].code {
        if e.1 != Pass::Under {
            continue;
        }
        let site = loc[&(e.0, Pass::Over)];
        w = w * Word::power(arcs.arc_at(d, site), i64::from(e.2));
        if site.0 == c {
            writhe += i64::from(e.2);
        }
    }
    w * Word::power(arcs.arc(c, 0), -writhe)
}

/// Fundamental group of the 3-manifold obtained by integral surgery: the
/// Wirtinger presentation plus `longitude * meridian^framing` per component.
pub fn surgery_group(d: &FramedLinkDiagram) -> Result<Presentation, BuilderError> {
    for (ci, c) in d.components.iter().enumerate() {
        if c.role != Role::Surgery {
            return Err(BuilderError::NotSurgery(ci));
        }
        if c.framing.is_none() {
            return Err(BuilderError::MissingFraming(ci));
        }
    }
    let base = wirtinger(d)?;
    let arcs = Arcs::new(d);
    let loc = d.locate();
    let extra: Vec<Word> = (0..d.components.len())
        .map(|c| {
            let f = d.components[c].framing.expect("checked above");
            longitude(d, &arcs, &loc, c) * Word::power(arcs.arc(c, 0), f)
        })
        .filter(|w| !w.is_identity())
        .collect();
    Ok(base.add_relators(&extra)?.with_name("surgery"))
}

/// A Kirby diagram reduced to algebra: dotted circles as generators and the
/// words read off where each 2-handle passes through the dotted disks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirbyAlgebraicData {
    pub dotted_names: Vec<Generator>,
    pub attaching_words: Vec<Word>,
}

impl KirbyAlgebraicData {
    pub fn new(dotted_names: Vec<Generator>, attaching_words: Vec<Word>) -> Result<Self, BuilderError> {
        for w in &attaching_words {
            if let Some(g) = w.generators().find(|g| !dotted_names.contains(g)) {
                return Err(BuilderError::UnknownGenerator(g.to_string()));
            }
        }
        Ok(KirbyAlgebraicData { dotted_names, attaching_words })
    }

    pub fn from_strs(names: &[&str], words: &[&str]) -> Result<Self, BuilderError> {
        let gens = names
            .iter()
            .map(|n| Generator::new(n).map_err(|_| BuilderError::InvalidParameter(format!("bad name {n:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let words = words
            .iter()
            .map(|w| crate::parse::parse_word(w, Some(&gens)).map_err(|e| BuilderError::UnknownGenerator(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        KirbyAlgebraicData::new(gens, words)
    }

    pub fn dotted_count(&self) -> usize {
        self.dotted_names.len()
    }
}

pub fn kirby_pi1(k: &KirbyAlgebraicData) -> Result<Presentation, BuilderError> {
    Ok(Presentation::new("kirby", k.dotted_names.clone(), k.attaching_words.clone())?)
}

// ---------------------------------------------------------------------------
// Bundles over the circle

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum AutomorphismStatus {
    Verified,
    Unverified(String),
}

#[derive(Debug, Clone)]
pub struct MappingTorus {
    pub presentation: Presentation,
    pub stable_letter: Generator,
    pub status: AutomorphismStatus,
}

const VERIFY_LIMIT: usize = 100_000;

fn perm_of(word: &Word, rep: &BTreeMap<Generator, Vec<usize>>, pg: &PermGroup) -> Vec<usize> {
    word.letters().iter().fold(pg.identity(), |acc, l: &Letter| {
        let p = &rep[&l.generator];
        let p = if l.inverse { pg.inv(p) } else { p.clone() };
        pg.mul(&acc, &p)
    })
}

/// Decide whether `aut` (given on generators) induces an automorphism of the
/// fiber group. Finite fibers are checked in the regular representation;
/// a letter-permuting map on a free fiber is accepted; anything else is
/// reported unverified.
pub fn check_fiber_automorphism(
    fiber: &Presentation,
    aut: &BTreeMap<Generator, Word>,
) -> Result<AutomorphismStatus, BuilderError> {
    for g in fiber.generators() {
        let img = aut.get(g).ok_or_else(|| BuilderError::UnknownGenerator(format!("no image for {g}")))?;
        fiber.check_word(img)?;
    }
    if let Some(g) = aut.keys().find(|g| fiber.generator_index(g).is_none()) {
        return Err(BuilderError::UnknownGenerator(g.to_string()));
    }
    if fiber.relators().is_empty() {
        let mut hit: Vec<&Generator> = fiber
            .generators()
            .iter()
            .filter_map(|g| match aut[g].letters() {
                [l] => Some(&l.generator),
                _ => None,
            })
            .collect();
        hit.sort();
        hit.dedup();
        return Ok(if hit.len() == fiber.generators().len() {
            AutomorphismStatus::Verified
        } else {
            AutomorphismStatus::Unverified("free fiber: bijectivity not decided".into())
        });
    }
    let limits = EnumerationLimits::default().with_max_cosets(VERIFY_LIMIT);
    let table = match enumerate(fiber, &[], limits)? {
        Enumeration::Complete(t) => t,
        Enumeration::Incomplete(_) => {
            return Ok(AutomorphismStatus::Unverified("fiber enumeration did not complete".into()));
        }
    };
    let n = table.n_cosets();
    let rep = table.permutation_rep()?;
    let pg = PermGroup { degree: n };
    let images: BTreeMap<Generator, Vec<usize>> =
        fiber.generators().iter().map(|g| (g.clone(), perm_of(&aut[g], &rep, &pg))).collect();
    for r in fiber.relators() {
        let img = r.substitute(aut).expect("all generators mapped");
        if perm_of(&img, &rep, &pg) != pg.identity() {
            return Err(BuilderError::NotAnAutomorphism(format!("relator {r} maps to {img}, which is nontrivial")));
        }
    }
    let gens: Vec<Vec<usize>> = images.into_values().collect();
    match closure_size(&pg, &gens, n) {
        Bounded::Within(k) if k == n => Ok(AutomorphismStatus::Verified),
        _ => Err(BuilderError::NotAnAutomorphism("images do not generate the fiber".into())),
    }
}

fn fresh(fiber: &Presentation, base: &str) -> Generator {
    let taken = |name: &str| fiber.generator(name).is_some();
    let name = if !taken(base) {
        base.to_string()
    } else {
        (1..).map(|i| format!("{base}{i}")).find(|n| !taken(n)).expect("some name is free")
    };
    Generator::new(&name).expect("valid name")
}

fn conjugation_relators(fiber: &Presentation, s: &Generator, aut: &BTreeMap<Generator, Word>) -> Vec<Word> {
    let sw = Word::gen(s);
    fiber
        .generators()
        .iter()
        .map(|g| &sw * &Word::gen(g) * sw.inverse() * aut[g].inverse())
        .collect()
}

/// `fiber x|_aut Z`: fiber generators plus a fresh `s`, relators
/// `s g s^-1 aut(g)^-1`.
pub fn mapping_torus(fiber: &Presentation, aut: &BTreeMap<Generator, Word>) -> Result<MappingTorus, BuilderError> {
    let status = check_fiber_automorphism(fiber, aut)?;
    let s = fresh(fiber, "s");
    let mut gens = fiber.generators().to_vec();
    gens.push(s.clone());
    let mut rels = fiber.relators().to_vec();
    rels.extend(conjugation_relators(fiber, &s, aut));
    let name = format!("{} x| Z", if fiber.name().is_empty() { "F" } else { fiber.name() });
    Ok(MappingTorus { presentation: Presentation::new(name, gens, rels)?, stable_letter: s, status })
}

#[derive(Debug, Clone)]
pub struct KleinBundle {
    pub presentation: Presentation,
    pub t_status: AutomorphismStatus,
    pub x_status: AutomorphismStatus,
}

/// Bundle over the Klein bottle `<t, x | t x t^-1 x>`: generators `t, x`
/// then the fiber generators; relators are the fiber relators, the
/// conjugation relators for `t` and for `x`, and the Klein relator.
pub fn klein_bundle(
    fiber: &Presentation,
    aut_t: &BTreeMap<Generator, Word>,
    aut_x: &BTreeMap<Generator, Word>,
) -> Result<KleinBundle, BuilderError> {
    let t_status = check_fiber_automorphism(fiber, aut_t)?;
    let x_status = check_fiber_automorphism(fiber, aut_x)?;
    let t = Generator::new("t").expect("valid");
    let x = Generator::new("x").expect("valid");
    let mut gens = vec![t.clone(), x.clone()];
    gens.extend(fiber.generators().iter().cloned());
    let mut rels = fiber.relators().to_vec();
    rels.extend(conjugation_relators(fiber, &t, aut_t));
    rels.extend(conjugation_relators(fiber, &x, aut_x));
    let (tw, xw) = (Word::gen(&t), Word::gen(&x));
    rels.push(&tw * &xw * tw.inverse() * xw);
    Ok(KleinBundle { presentation: Presentation::new("klein bundle", gens, rels)?, t_status, x_status })
}

/// `G_n = <t, a | t^n = a^n, a t a = t a t>`.
pub fn twist_spun_trefoil(n: i64) -> Result<Presentation, BuilderError> {
    if n < 1 {
        return Err(BuilderError::InvalidParameter(format!("n = {n}, expected n >= 1")));
    }
    let rel = format!("t^{n} = a^{n}");
    Presentation::from_strs(&format!("G_{n}"), &["t", "a"], &[&rel, "a t a = t a t"])
        .map_err(|e| BuilderError::InvalidParameter(e.to_string()))
}

/// `Z_m` actions of the relevant kind exist exactly when `3` does not divide `m`.
pub fn strong_action_admissible(m: i64) -> Result<bool, BuilderError> {
    if m < 1 {
        return Err(BuilderError::InvalidParameter(format!("m = {m}, expected m >= 1")));
    }
    Ok(m % 3 != 0)
}

/// Order of `G_n / <<t^m>>`.
pub fn hatx_quotient_order(n: i64, m: i64, limits: EnumerationLimits) -> Result<GroupOrder, BuilderError> {
    if m < 1 {
        return Err(BuilderError::InvalidParameter(format!("m = {m}, expected m >= 1")));
    }
    let g = twist_spun_trefoil(n)?;
    let t = g.generator("t").expect("t is a generator").clone();
    Ok(group_order(&g.add_relators(&[Word::power(&t, m)])?, limits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{abelian_invariants, surgery_h1, AbelianInvariants};
    use crate::parse::parse_presentation;

    fn limits() -> EnumerationLimits {
        EnumerationLimits::small()
    }

    fn order(p: &Presentation) -> Option<usize> {
        group_order(p, limits()).unwrap().finite()
    }

    fn word(p: &Presentation, s: &str) -> Word {
        crate::parse::parse_word(s, Some(p.generators())).unwrap()
    }

    fn images(p: &Presentation, pairs: &[(&str, &str)]) -> BTreeMap<Generator, Word> {
        pairs.iter().map(|(g, w)| (p.generator(g).unwrap().clone(), word(p, w))).collect()
    }

    fn trefoil(sign: i32, framing: i64) -> FramedLinkDiagram {
        FramedLinkDiagram::braid_closure(2, &[sign, sign, sign], Role::Surgery, &[framing]).unwrap()
    }

    #[test]
    fn diagram_validation() {
        let ok = r#"{"components":[{"code":[[1,"o",1],[2,"u",1],[3,"o",1],[1,"u",1],[2,"o",1],[3,"u",1]],"role":"surgery","framing":-1}]}"#;
        assert!(FramedLinkDiagram::from_json(ok).is_ok());
        let twice = r#"{"components":[{"code":[[1,"o",1],[1,"o",1]],"role":"dotted"}]}"#;
        assert!(matches!(FramedLinkDiagram::from_json(twice), Err(BuilderError::MalformedDiagram(_))));
        let signs = r#"{"components":[{"code":[[1,"o",1],[1,"u",-1]],"role":"dotted"}]}"#;
        assert!(matches!(FramedLinkDiagram::from_json(signs), Err(BuilderError::MalformedDiagram(_))));
        let nofr = r#"{"components":[{"code":[],"role":"surgery"}]}"#;
        assert_eq!(FramedLinkDiagram::from_json(nofr), Err(BuilderError::MissingFraming(0)));
        let dotfr = r#"{"components":[{"code":[],"role":"dotted","framing":0}]}"#;
        assert!(FramedLinkDiagram::from_json(dotfr).is_err());
    }

    #[test]
    fn braid_closures() {
        let t = trefoil(1, 0);
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.components[0].code.len(), 6);
        let hopf3 = FramedLinkDiagram::braid_closure(3, &[1, 2, 1, 2, 1, 2], Role::Surgery, &[-1, -1, -1]).unwrap();
        assert_eq!(hopf3.components.len(), 3);
        assert_eq!(hopf3.linking_matrix().unwrap(), IntegerMatrix::parse("-1 1 1; 1 -1 1; 1 1 -1").unwrap());
        assert!(FramedLinkDiagram::braid_closure(2, &[2], Role::Dotted, &[]).is_err());
    }

    #[test]
    fn trefoil_wirtinger() {
        let w = wirtinger(&trefoil(1, 0)).unwrap();
        assert_eq!(w.generators().len(), 3);
        assert_eq!(w.relators().len(), 3);
        assert_eq!(abelian_invariants(&w), AbelianInvariants::new(1, &[]));
        let s = w.simplify(100).presentation;
        assert_eq!(s.generators().len(), 2);
        assert_eq!(s.relators().len(), 1);
        assert_eq!(s.relators()[0].len(), 6);
        let x1 = w.generators()[0].clone();
        assert_eq!(order(&w.add_relators(&[Word::gen(&x1)]).unwrap()), Some(1));
        // the trefoil group maps onto S3: quotient by the square of a meridian
        assert_eq!(order(&w.add_relators(&[Word::power(&x1, 2)]).unwrap()), Some(6));
    }

    #[test]
    fn unknot_and_unlink() {
        let unknot = FramedLinkDiagram::new(vec![Component { code: vec![], role: Role::Surgery, framing: Some(0) }]).unwrap();
        assert_eq!(wirtinger(&unknot).unwrap().to_string(), "< x1 | >");
        assert_eq!(surgery_group(&unknot).unwrap().to_string(), "< x1 | >");
        let unlink = FramedLinkDiagram::new(vec![
            Component { code: vec![], role: Role::Surgery, framing: Some(0) },
            Component { code: vec![], role: Role::Surgery, framing: Some(0) },
        ])
        .unwrap();
        assert_eq!(abelian_invariants(&surgery_group(&unlink).unwrap()).free_rank, 2);
        let plus1 = FramedLinkDiagram::new(vec![Component { code: vec![], role: Role::Surgery, framing: Some(1) }]).unwrap();
        assert_eq!(order(&surgery_group(&plus1).unwrap()), Some(1));
    }

    #[test]
    fn trefoil_surgeries() {
        // Poincare homology sphere from +1 on the right-handed and -1 on the left-handed trefoil.
        assert_eq!(order(&surgery_group(&trefoil(1, 1)).unwrap()), Some(120));
        assert_eq!(order(&surgery_group(&trefoil(-1, -1)).unwrap()), Some(120));
        assert_eq!(order(&surgery_group(&trefoil(1, -1)).unwrap()), None);
        assert_eq!(abelian_invariants(&surgery_group(&trefoil(1, 0)).unwrap()), AbelianInvariants::new(1, &[]));
    }

    #[test]
    fn hopf_circles() {
        let d = FramedLinkDiagram::braid_closure(3, &[1, 2, 1, 2, 1, 2], Role::Surgery, &[-1, -1, -1]).unwrap();
        let g = surgery_group(&d).unwrap();
        assert_eq!(order(&g), Some(8));
        assert_eq!(abelian_invariants(&g), AbelianInvariants::new(0, &[2, 2]));
        assert_eq!(surgery_h1(&d.linking_matrix().unwrap()).unwrap(), abelian_invariants(&g));
    }

    #[test]
    fn surgery_h1_matches_linking_matrix() {
        for (strands, word, fr) in [
            (2, vec![1, 1, 1, 1], vec![0, 0]),
            (2, vec![1, 1], vec![2, -3]),
            (3, vec![1, -2, 1, -2], vec![5]),
            (3, vec![1, 2, 1, 2, 1, 2], vec![1, 0, 3]),
        ] {
            let d = FramedLinkDiagram::braid_closure(strands, &word, Role::Surgery, &fr).unwrap();
            let g = surgery_group(&d).unwrap();
            assert_eq!(abelian_invariants(&g), surgery_h1(&d.linking_matrix().unwrap()).unwrap(), "{word:?}");
        }
    }

    #[test]
    fn mapping_tori() {
        let free = parse_presentation("< a | >").unwrap();
        let mt = mapping_torus(&free, &images(&free, &[("a", "a")])).unwrap();
        assert_eq!(mt.presentation.to_string(), "< a, s | s a s^-1 a^-1 >");
        assert_eq!(mt.status, AutomorphismStatus::Verified);
        assert_eq!(abelian_invariants(&mt.presentation).free_rank, 2);

        let q8 = parse_presentation("< u, v | u v u = v, v u v = u >").unwrap();
        let mt = mapping_torus(&q8, &images(&q8, &[("u", "v u"), ("v", "u")])).unwrap();
        assert_eq!(mt.status, AutomorphismStatus::Verified);
        let s = mt.stable_letter.clone();
        assert_eq!(order(&mt.presentation.add_relators(&[Word::power(&s, 3)]).unwrap()), Some(24));

        let bad = mapping_torus(&q8, &images(&q8, &[("u", "u"), ("v", "u")]));
        assert!(matches!(bad, Err(BuilderError::NotAnAutomorphism(_))));
        let bad = mapping_torus(&q8, &images(&q8, &[("u", "u u^-1"), ("v", "1")]));
        assert!(matches!(bad, Err(BuilderError::NotAnAutomorphism(_))));

        let f2 = parse_presentation("< tau, xi | >").unwrap();
        let mt = mapping_torus(&f2, &images(&f2, &[("tau", "tau^-1"), ("xi", "xi^-1")])).unwrap();
        assert_eq!(mt.presentation.to_string(), "< tau, xi, s | s tau s^-1 tau, s xi s^-1 xi >");
        let mt = mapping_torus(&f2, &images(&f2, &[("tau", "xi"), ("xi", "tau xi")])).unwrap();
        assert!(matches!(mt.status, AutomorphismStatus::Unverified(_)));
    }

    #[test]
    fn klein_bundles() {
        let f2 = parse_presentation("< tau, xi | >").unwrap();
        let kb = klein_bundle(
            &f2,
            &images(&f2, &[("tau", "xi"), ("xi", "tau xi")]),
            &images(&f2, &[("tau", "tau^-1"), ("xi", "xi^-1")]),
        )
        .unwrap();
        let expected = parse_presentation(
            "< t, x, tau, xi | t tau t^-1 = xi, t xi t^-1 = tau xi, x tau x^-1 = tau^-1, x xi x^-1 = xi^-1, t x t^-1 = x^-1 >",
        )
        .unwrap();
        assert_eq!(kb.presentation.generators(), expected.generators());
        assert_eq!(kb.presentation.relators(), expected.relators());
        let h = kb.presentation.add_relators(&[word(&kb.presentation, "x t x^-1 t")]).unwrap();
        assert_eq!(order(&h), Some(8));
        assert_eq!(abelian_invariants(&h), AbelianInvariants::new(0, &[2, 2]));

        let trivial = Presentation::new("", vec![], vec![]).unwrap();
        let kb = klein_bundle(&trivial, &BTreeMap::new(), &BTreeMap::new()).unwrap();
        assert_eq!(kb.presentation.to_string(), "< t, x | t x t^-1 x >");
        assert_eq!(abelian_invariants(&kb.presentation), AbelianInvariants::new(1, &[2]));
    }

    #[test]
    fn twist_spun_family() {
        let g3 = twist_spun_trefoil(3).unwrap();
        let g = parse_presentation("< t, a | t^3 = a^3, a t a = t a t >").unwrap();
        assert_eq!(g3.relators(), g.relators());
        assert_eq!(twist_spun_trefoil(1).unwrap().simplify(10).presentation.to_string(), "< t | >");
        assert!(twist_spun_trefoil(0).is_err());
        for n in 1..=6 {
            let gn = twist_spun_trefoil(n).unwrap();
            let t = gn.generator("t").unwrap().clone();
            assert_eq!(order(&gn.add_relators(&[Word::gen(&t)]).unwrap()), Some(1), "n = {n}");
        }
        assert_eq!(hatx_quotient_order(3, 3, limits()).unwrap(), GroupOrder::Finite(24));
        assert_eq!(hatx_quotient_order(3, 1, limits()).unwrap(), GroupOrder::Finite(1));
        assert_eq!(hatx_quotient_order(2, 2, limits()).unwrap(), GroupOrder::Finite(6));
    }

    #[test]
    fn strong_action() {
        assert_eq!(strong_action_admissible(3), Ok(false));
        assert_eq!(strong_action_admissible(4), Ok(true));
        assert_eq!(strong_action_admissible(6), Ok(false));
        assert!(strong_action_admissible(0).is_err());
    }

    #[test]
    fn kirby_data() {
        let k = KirbyAlgebraicData::from_strs(
            &["x", "y", "t"],
            &["x^-1 y t^-1 x^-1 t", "x^-1 y x y", "t x t^-1 y^-1"],
        )
        .unwrap();
        let p = kirby_pi1(&k).unwrap();
        assert_eq!(abelian_invariants(&p), AbelianInvariants::new(1, &[]));
        let s = p.simplify(100);
        assert_eq!(s.presentation.generators().len(), 2);
        let t3 = s.transport(&word(&p, "t^3"));
        assert_eq!(order(&s.presentation.add_relators(&[t3]).unwrap()), Some(24));
        let x = KirbyAlgebraicData::from_strs(&["x"], &[]).unwrap();
        assert_eq!(kirby_pi1(&x).unwrap().to_string(), "< x | >");
        let cancel = KirbyAlgebraicData::from_strs(&["x"], &["x"]).unwrap();
        assert_eq!(order(&kirby_pi1(&cancel).unwrap()), Some(1));
        assert!(KirbyAlgebraicData::from_strs(&["x"], &["y"]).is_err());
    }
}
