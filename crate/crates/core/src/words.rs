//! Free-group words over named generators.
//!
//! A [`Word`] is always freely reduced: the constructors run the reduction
//! eagerly, so no code downstream has to re-check for adjacent `g g^-1` pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("no image given for generator {0}")]
    MissingImage(String),
}

/// A generator symbol. Equality and ordering are by name only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    /// Names start with a letter and continue with letters, digits or `_`.
    pub fn new(name: &str) -> Result<Self, WordError> {
        if is_valid_name(name) {
            Ok(Generator(Arc::from(name)))
        } else {
            Err(WordError::InvalidName(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduce an arbitrary sequence of letters.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut letters: Vec<Letter> = Vec::new();
    for l in raw {
        if letters.last().is_some_and(|top| top.cancels(&l)) {
            letters.pop();
        } else {
            letters.push(l);
        }
    }
    Word { letters }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        free_reduce(raw)
    }

    /// The word `g^exp`.
    pub fn power(g: &Generator, exp: i64) -> Self {
        let l = Letter::new(g.clone(), exp < 0);
        Word { letters: vec![l; exp.unsigned_abs() as usize] }
    }

    pub fn gen(g: &Generator) -> Self {
        Word::power(g, 1)
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverted).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        free_reduce((0..n.unsigned_abs()).flat_map(|_| base.letters.iter().cloned()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    /// `self * other * self^-1`
    pub fn conjugate_by(&self, other: &Word) -> Word {
        other.concat(self).concat(&other.inverse())
    }

    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters.iter().filter(|l| &l.generator == g).map(Letter::sign).sum()
    }

    /// Number of letters (either sign) on `g`.
    pub fn occurrences(&self, g: &Generator) -> usize {
        self.letters.iter().filter(|l| &l.generator == g).count()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.letters.iter().map(|l| &l.generator)
    }

    /// Strip matching letters from both ends: the result is a conjugate of
    /// `self` with no cancellation between its last and first letter.
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(&self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word { letters: self.letters[lo..hi].to_vec() }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() >= 2 => !a.cancels(b),
            _ => true,
        }
    }

    /// Replace each generator by its image and reduce.
    pub fn substitute(&self, images: &BTreeMap<Generator, Word>) -> Result<Word, WordError> {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let img = images
                .get(&l.generator)
                .ok_or_else(|| WordError::MissingImage(l.generator.to_string()))?;
            if l.inverse {
                out.extend(img.letters.iter().rev().map(Letter::inverted));
            } else {
                out.extend(img.letters.iter().cloned());
            }
        }
        Ok(free_reduce(out))
    }

    /// Like [`Word::substitute`] but generators without an image are kept.
    pub fn substitute_partial(&self, images: &BTreeMap<Generator, Word>) -> Word {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match images.get(&l.generator) {
                Some(img) if l.inverse => out.extend(img.letters.iter().rev().map(Letter::inverted)),
                Some(img) => out.extend(img.letters.iter().cloned()),
                None => out.push(l.clone()),
            }
        }
        free_reduce(out)
    }

    /// Collapse the word into `(generator, exponent)` runs.
    pub fn syllables(&self) -> Vec<(Generator, i64)> {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.generator => *e += l.sign(),
                _ => out.push((l.generator.clone(), l.sign())),
            }
        }
        out
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.syllables().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl std::str::FromStr for Word {
    type Err = crate::parse::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_word(s, None)
    }
}
