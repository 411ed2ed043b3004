//! Finitely presented groups.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::IntegerMatrix;
use crate::words::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown generator {0} (not in the alphabet)")]
    UnknownGenerator(String),
    #[error("generator {0} listed twice")]
    DuplicateGenerator(String),
}

/// `< generators | relators >`. Relators are stored cyclically reduced.
/// Equality is literal: same generator list, same relator list.
#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.to_string()));
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| {
                check_alphabet(&seen, &r)?;
                Ok(r.cyclically_reduced())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation { name: name.into(), generators, relators })
    }

    /// Convenience constructor from generator names and relator text.
    pub fn from_strs(name: &str, gens: &[&str], relators: &[&str]) -> Result<Self, crate::parse::ParseError> {
        let generators: Vec<Generator> = gens
            .iter()
            .map(|g| Generator::new(g).map_err(|_| crate::parse::ParseError::bad_name(g)))
            .collect::<Result<_, _>>()?;
        let rels = relators
            .iter()
            .map(|r| crate::parse::parse_relation(r, &generators))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(name, generators, rels)
            .map_err(|e| crate::parse::ParseError::semantic(e.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    /// Check that `w` only uses this presentation's generators.
    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        let set: BTreeSet<Generator> = self.generators.iter().cloned().collect();
        check_alphabet(&set, w)
    }

    /// Quotient by extra relators; `self` is left untouched.
    pub fn add_relators(&self, extra: &[Word]) -> Result<Presentation, PresentationError> {
        let mut rels = self.relators.clone();
        rels.extend(extra.iter().cloned());
        Presentation::new(self.name.clone(), self.generators.clone(), rels)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relator_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for l in r.letters() {
                let j = self.generator_index(&l.generator).expect("relator alphabet checked");
                let v = m.get(i, j) + BigInt::from(l.sign());
                m.set(i, j, v);
            }
        }
        m
    }

    /// Tietze simplification; see [`Simplification`].
    pub fn simplify(&self, budget: usize) -> Simplification {
        simplify(self, budget)
    }
}

fn check_alphabet(set: &BTreeSet<Generator>, w: &Word) -> Result<(), PresentationError> {
    match w.generators().find(|g| !set.contains(*g)) {
        Some(g) => Err(PresentationError::UnknownGenerator(g.to_string())),
        None => Ok(()),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(Generator::name).collect();
        let rels: Vec<String> = self.relators.iter().map(ToString::to_string).collect();
        if rels.is_empty() {
            write!(f, "< {} | >", gens.join(", "))
        } else {
            write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation({:?}: {})", self.name, self)
    }
}

/// Output of Tietze simplification.
#[derive(Debug, Clone)]
pub struct Simplification {
    pub presentation: Presentation,
    /// Each eliminated generator, written in the surviving generators.
    pub eliminations: BTreeMap<Generator, Word>,
    pub steps: usize,
}

impl Simplification {
    /// Rewrite a word over the original generators into the simplified ones.
    pub fn transport(&self, w: &Word) -> Word {
        w.substitute_partial(&self.eliminations)
    }
}

/// Canonical key for relators up to cyclic rotation and inversion.
fn cyclic_key(w: &Word) -> Vec<Letter> {
    let mut best: Option<Vec<Letter>> = None;
    for cand in [w.clone(), w.inverse()] {
        let ls = cand.letters();
        for k in 0..ls.len().max(1) {
            let rot: Vec<Letter> = ls[k..].iter().chain(ls[..k].iter()).cloned().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Cyclically reduce, drop trivial relators and duplicates (up to rotation
/// and inversion), keeping first occurrences in order.
fn tidy_relators(rels: Vec<Word>) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let c = r.cyclically_reduced();
        if !c.is_identity() && seen.insert(cyclic_key(&c)) {
            out.push(c);
        }
    }
    out
}

/// A relator in which `g` appears exactly once lets us solve `g = w`.
fn solve_for(rel: &Word, g: &Generator) -> Word {
    let ls = rel.letters();
    let p = ls.iter().position(|l| &l.generator == g).expect("occurs once");
    // rel = A g^e B  =>  g^e = A^-1 B^-1  (as a cyclic word, g^e = (B A)^-1)
    let after = Word::from_letters(ls[p + 1..].iter().chain(ls[..p].iter()).cloned());
    if ls[p].inverse {
        after
    } else {
        after.inverse()
    }
}

fn simplify(p: &Presentation, budget: usize) -> Simplification {
    let mut gens = p.generators.clone();
    let mut rels = tidy_relators(p.relators.clone());
    let mut elim: BTreeMap<Generator, Word> = BTreeMap::new();
    let mut steps = 0;

    while steps < budget {
        // Candidate: (relator length, later generator first, relator index).
        let mut best: Option<(usize, Reverse<usize>, usize)> = None;
        for (gi, g) in gens.iter().enumerate() {
            for (ri, r) in rels.iter().enumerate() {
                if r.occurrences(g) == 1 {
                    let key = (r.len(), Reverse(gi), ri);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, Reverse(gi), ri)) = best else { break };
        let g = gens.remove(gi);
        let rel = rels.remove(ri);
        let value = solve_for(&rel, &g);
        let sub = BTreeMap::from([(g.clone(), value.clone())]);
        for w in elim.values_mut() {
            *w = w.substitute_partial(&sub);
        }
        elim.insert(g, value);
        let substituted = rels.iter().map(|r| r.substitute_partial(&sub)).collect();
        rels = tidy_relators(substituted);
        steps += 1;
    }

    let presentation = Presentation::new(p.name.clone(), gens, rels).expect("alphabet preserved");
    Simplification { presentation, eliminations: elim, steps }
}
