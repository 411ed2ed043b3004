//! Todd–Coxeter coset enumeration.
//!
//! Two engines share the same table and coincidence machinery:
//! HLT (relator-driven definitions, with a lookahead pass when the coset
//! limit is reached) and Felsch (define the first gap, then close every
//! deduction). Cosets are numbered in definition order; dead cosets are
//! compacted away before a table is returned, so output is reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Presentation, PresentationError};
use crate::words::{Generator, Word};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Hasselgrove–Leech–Trotter with lookahead.
    #[default]
    Hlt,
    Felsch,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(format!("unknown strategy {s:?} (expected hlt or felsch)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    /// Maximum number of live cosets at any moment.
    pub max_cosets: usize,
    /// Maximum number of coset definitions over the whole run.
    pub max_definitions: usize,
    pub strategy: Strategy,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_cosets: 1_000_000, max_definitions: 4_000_000, strategy: Strategy::Hlt }
    }
}

impl EnumerationLimits {
    pub fn with_max_cosets(mut self, n: usize) -> Self {
        self.max_cosets = n.max(1);
        self.max_definitions = self.max_definitions.max(self.max_cosets);
        self
    }

    pub fn with_strategy(mut self, s: Strategy) -> Self {
        self.strategy = s;
        self
    }

    /// Limits sized for small quick checks.
    pub fn small() -> Self {
        EnumerationLimits { max_cosets: 50_000, max_definitions: 200_000, strategy: Strategy::Hlt }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("completed table failed verification: {0}")]
    VerificationFailed(String),
    #[error("coset table is incomplete")]
    IncompleteTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitHit {
    MaxCosets,
    MaxDefinitions,
}

/// The action of the generators on the cosets of a subgroup.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<Generator>,
    relators: Vec<Word>,
    subgroup: Vec<Word>,
    n_cosets: usize,
    /// Row-major, `2 * generators.len()` columns: `g, g^-1` per generator.
    action: Vec<u32>,
    complete: bool,
    strategy: Strategy,
    cosets_defined_peak: usize,
}

/// Partial result when a limit was hit.
#[derive(Debug, Clone)]
pub struct Incomplete {
    pub limit: LimitHit,
    pub peak: usize,
    pub definitions: usize,
    pub table: CosetTable,
}

#[derive(Debug, Clone)]
pub enum Enumeration {
    Complete(CosetTable),
    Incomplete(Incomplete),
}

impl Enumeration {
    pub fn complete(self) -> Option<CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Incomplete(_) => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Enumeration::Complete(t) => Some(t.n_cosets()),
            Enumeration::Incomplete(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum GroupOrder {
    Finite(usize),
    Unknown(UnknownOrder),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnknownOrder {
    pub limit: LimitHit,
    pub peak: usize,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<usize> {
        match self {
            GroupOrder::Finite(n) => Some(*n),
            GroupOrder::Unknown(_) => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Unknown(u) => write!(f, "unknown ({:?} reached, peak {} cosets)", u.limit, u.peak),
        }
    }
}

impl CosetTable {
    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn cosets_defined_peak(&self) -> usize {
        self.cosets_defined_peak
    }

    fn ncols(&self) -> usize {
        2 * self.generators.len()
    }

    fn column(&self, g: &Generator, inverse: bool) -> Option<usize> {
        let i = self.generators.iter().position(|h| h == g)?;
        Some(2 * i + usize::from(inverse))
    }

    /// Image of 0-based coset `c` under `g` (or `g^-1`).
    pub fn act(&self, c: usize, g: &Generator, inverse: bool) -> Option<usize> {
        let col = self.column(g, inverse)?;
        let v = self.action[c * self.ncols() + col];
        (v != NONE).then_some(v as usize)
    }

    /// Follow a word from coset `c`; `None` if some entry is undefined.
    pub fn trace(&self, c: usize, w: &Word) -> Option<usize> {
        let mut cur = c;
        for l in w.letters() {
            cur = self.act(cur, &l.generator, l.inverse)?;
        }
        Some(cur)
    }

    /// Each generator as a permutation of `0..n` (0-based images).
    pub fn permutation_rep(&self) -> Result<BTreeMap<Generator, Vec<usize>>, EnumerationError> {
        if !self.complete {
            return Err(EnumerationError::IncompleteTable);
        }
        let nc = self.ncols();
        Ok(self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let perm = (0..self.n_cosets).map(|c| self.action[c * nc + 2 * i] as usize).collect();
                (g.clone(), perm)
            })
            .collect())
    }

    /// Independent consistency check of a table claimed complete: columns
    /// are mutually inverse bijections, every relator closes at every
    /// coset, and every subgroup generator closes at coset 0.
    pub fn verify(&self) -> Result<(), String> {
        let nc = self.ncols();
        let n = self.n_cosets;
        if n == 0 {
            return Err("table has no cosets".into());
        }
        for c in 0..n {
            for gi in 0..self.generators.len() {
                let fwd = self.action[c * nc + 2 * gi];
                if fwd == NONE || fwd as usize >= n {
                    return Err(format!("coset {} has no image under {}", c + 1, self.generators[gi]));
                }
                let back = self.action[fwd as usize * nc + 2 * gi + 1];
                if back as usize != c {
                    return Err(format!(
                        "coset {} -> {} under {} is not undone by its inverse",
                        c + 1,
                        fwd + 1,
                        self.generators[gi]
                    ));
                }
            }
        }
        for r in &self.relators {
            for c in 0..n {
                if self.trace(c, r) != Some(c) {
                    return Err(format!("relator {r} does not close at coset {}", c + 1));
                }
            }
        }
        for s in &self.subgroup {
            if self.trace(0, s) != Some(0) {
                return Err(format!("subgroup generator {s} does not fix coset 1"));
            }
        }
        Ok(())
    }

    /// CSV export with header `coset,g1,g1^-1,...` and 1-based entries;
    /// undefined entries are left empty.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut header = vec!["coset".to_string()];
        for g in &self.generators {
            header.push(g.to_string());
            header.push(format!("{g}^-1"));
        }
        writeln!(out, "{}", header.join(","))?;
        let nc = self.ncols();
        for c in 0..self.n_cosets {
            let mut row = vec![(c + 1).to_string()];
            for j in 0..nc {
                let v = self.action[c * nc + j];
                row.push(if v == NONE { String::new() } else { (v + 1).to_string() });
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("ascii output")
    }
}

impl fmt::Debug for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CosetTable")
            .field("n_cosets", &self.n_cosets)
            .field("complete", &self.complete)
            .field("strategy", &self.strategy)
            .field("peak", &self.cosets_defined_peak)
            .finish()
    }
}

enum Stop {
    Limit(LimitHit),
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    n_alive: usize,
    n_defs: usize,
    peak: usize,
    limits: EnumerationLimits,
    rels: Vec<Vec<usize>>,
    /// Felsch: rotations of relators (and of their inverses) starting with each column.
    rotations: Vec<Vec<Vec<usize>>>,
    queue: Vec<u32>,
    deductions: Vec<(u32, usize)>,
    track: bool,
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(ngens: usize, rels: Vec<Vec<usize>>, limits: EnumerationLimits) -> Self {
        let ncols = 2 * ngens;
        let mut rotations = vec![Vec::new(); ncols];
        if limits.strategy == Strategy::Felsch {
            for r in &rels {
                let inverse: Vec<usize> = r.iter().rev().map(|&c| inv(c)).collect();
                for word in [r, &inverse] {
                    for k in 0..word.len() {
                        let rot: Vec<usize> = word[k..].iter().chain(word[..k].iter()).copied().collect();
                        if !rotations[rot[0]].contains(&rot) {
                            rotations[rot[0]].push(rot);
                        }
                    }
                }
            }
        }
        Enumerator {
            ncols,
            table: vec![NONE; ncols],
            parent: vec![0],
            n_alive: 1,
            n_defs: 1,
            peak: 1,
            limits,
            rels,
            rotations,
            queue: Vec::new(),
            deductions: Vec::new(),
            track: limits.strategy == Strategy::Felsch,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.ncols + x] = d;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn n_rows(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Stop> {
        if self.n_alive >= self.limits.max_cosets {
            return Err(Stop::Limit(LimitHit::MaxCosets));
        }
        if self.n_defs >= self.limits.max_definitions {
            return Err(Stop::Limit(LimitHit::MaxDefinitions));
        }
        let d = self.n_rows() as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.parent.push(d);
        self.set(c, x, d);
        self.set(d, inv(x), c);
        self.n_alive += 1;
        self.n_defs += 1;
        self.peak = self.peak.max(self.n_alive);
        if self.track {
            self.deductions.push((c, x));
        }
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != r {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = r;
            cur = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.n_alive -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, inv(x), NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, inv(x));
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, inv(x), e1);
                        if self.track {
                            self.deductions.push((e1, x));
                        }
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scan `word` at coset `c`, defining new cosets to complete it when `fill`.
    fn scan(&mut self, c: u32, word: &[usize], fill: bool) -> Result<(), Stop> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let nx = self.get(f, word[i]);
                if nx == NONE {
                    break;
                }
                f = nx;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let nx = self.get(b, inv(word[j as usize]));
                if nx == NONE {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, word[i], b);
                self.set(b, inv(word[i]), f);
                if self.track {
                    self.deductions.push((f, word[i]));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn lookahead(&mut self) {
        let mut c = 0u32;
        while (c as usize) < self.n_rows() {
            if self.alive(c) {
                for r in 0..self.rels.len() {
                    if !self.alive(c) {
                        break;
                    }
                    let rel = std::mem::take(&mut self.rels[r]);
                    let _ = self.scan(c, &rel, false);
                    self.rels[r] = rel;
                }
            }
            c += 1;
        }
    }

    fn run_hlt(&mut self, subgroup: &[Vec<usize>]) -> Result<(), Stop> {
        for s in subgroup {
            let c = self.rep(0);
            self.scan_with_lookahead(c, s)?;
        }
        let mut c = 0u32;
        while (c as usize) < self.n_rows() {
            for r in 0..self.rels.len() {
                if !self.alive(c) {
                    break;
                }
                let rel = self.rels[r].clone();
                self.scan_with_lookahead(c, &rel)?;
            }
            if self.alive(c) {
                for x in 0..self.ncols {
                    if self.alive(c) && self.get(c, x) == NONE {
                        self.define_with_lookahead(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn scan_with_lookahead(&mut self, c: u32, word: &[usize]) -> Result<(), Stop> {
        loop {
            match self.scan(c, word, true) {
                Ok(()) => return Ok(()),
                Err(Stop::Limit(LimitHit::MaxCosets)) => {
                    let before = self.n_alive;
                    self.lookahead();
                    if self.n_alive >= before {
                        return Err(Stop::Limit(LimitHit::MaxCosets));
                    }
                    if !self.alive(c) {
                        return Ok(());
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }

    fn define_with_lookahead(&mut self, c: u32, x: usize) -> Result<(), Stop> {
        match self.define(c, x) {
            Err(Stop::Limit(LimitHit::MaxCosets)) => {
                let before = self.n_alive;
                self.lookahead();
                if self.n_alive >= before {
                    return Err(Stop::Limit(LimitHit::MaxCosets));
                }
                if self.alive(c) && self.get(c, x) == NONE {
                    self.define(c, x)?;
                }
                Ok(())
            }
            other => other,
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            let c = self.rep(c);
            let d = self.get(c, x);
            for k in 0..self.rotations[x].len() {
                let rot = std::mem::take(&mut self.rotations[x][k]);
                let at = self.rep(c);
                let _ = self.scan(at, &rot, false);
                self.rotations[x][k] = rot;
            }
            if d != NONE {
                let xi = inv(x);
                for k in 0..self.rotations[xi].len() {
                    let rot = std::mem::take(&mut self.rotations[xi][k]);
                    let at = self.rep(d);
                    let _ = self.scan(at, &rot, false);
                    self.rotations[xi][k] = rot;
                }
            }
        }
    }

    fn run_felsch(&mut self, subgroup: &[Vec<usize>]) -> Result<(), Stop> {
        for s in subgroup {
            let c = self.rep(0);
            self.scan(c, s, true)?;
            self.process_deductions();
        }
        let mut c = 0u32;
        loop {
            self.process_deductions();
            while (c as usize) < self.n_rows() {
                if self.alive(c) && (0..self.ncols).any(|x| self.get(c, x) == NONE) {
                    break;
                }
                c += 1;
            }
            if c as usize >= self.n_rows() {
                return Ok(());
            }
            let x = (0..self.ncols).find(|&x| self.get(c, x) == NONE).expect("gap found above");
            self.define(c, x)?;
        }
    }

    fn compact(&mut self) -> (Vec<u32>, usize) {
        let mut map = vec![NONE; self.n_rows()];
        let mut n = 0u32;
        for c in 0..self.n_rows() as u32 {
            if self.alive(c) {
                map[c as usize] = n;
                n += 1;
            }
        }
        let mut out = Vec::with_capacity(n as usize * self.ncols);
        for c in 0..self.n_rows() as u32 {
            if !self.alive(c) {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                // Entries can still point at dead cosets mid-run; resolve them.
                out.push(if v == NONE { NONE } else { map[self.rep(v) as usize] });
            }
        }
        (out, n as usize)
    }
}

fn columns(p: &Presentation, w: &Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|l| 2 * p.generator_index(&l.generator).expect("alphabet checked") + usize::from(l.inverse))
        .collect()
}

/// Enumerate the cosets of `<subgroup>` in the group presented by `p`.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    limits: EnumerationLimits,
) -> Result<Enumeration, EnumerationError> {
    for w in subgroup {
        p.check_word(w)?;
    }
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_identity())
        .map(|r| columns(p, r))
        .collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(|w| columns(p, w)).collect();
    let mut en = Enumerator::new(p.generators().len(), rels, limits);
    let outcome = match limits.strategy {
        Strategy::Hlt => en.run_hlt(&sub),
        Strategy::Felsch => en.run_felsch(&sub),
    };
    let (action, n) = en.compact();
    let mut table = CosetTable {
        generators: p.generators().to_vec(),
        relators: p.relators().to_vec(),
        subgroup: subgroup.to_vec(),
        n_cosets: n,
        action,
        complete: false,
        strategy: limits.strategy,
        cosets_defined_peak: en.peak,
    };
    match outcome {
        Ok(()) => {
            table.complete = true;
            table.verify().map_err(EnumerationError::VerificationFailed)?;
            Ok(Enumeration::Complete(table))
        }
        Err(Stop::Limit(limit)) => Ok(Enumeration::Incomplete(Incomplete {
            limit,
            peak: en.peak,
            definitions: en.n_defs,
            table,
        })),
    }
}

/// Order of the group: the index of the trivial subgroup.
pub fn group_order(p: &Presentation, limits: EnumerationLimits) -> Result<GroupOrder, EnumerationError> {
    Ok(match enumerate(p, &[], limits)? {
        Enumeration::Complete(t) => GroupOrder::Finite(t.n_cosets()),
        Enumeration::Incomplete(i) => GroupOrder::Unknown(UnknownOrder { limit: i.limit, peak: i.peak }),
    })
}

/// Order of `p / <<extra>>`.
pub fn quotient_order(
    p: &Presentation,
    extra: &[Word],
    limits: EnumerationLimits,
) -> Result<GroupOrder, EnumerationError> {
    group_order(&p.add_relators(extra)?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        crate::parse::parse_presentation(text).unwrap()
    }

    fn order(text: &str, s: Strategy) -> Option<usize> {
        group_order(&pres(text), EnumerationLimits::small().with_strategy(s)).unwrap().finite()
    }

    #[test]
    fn small_orders_both_strategies() {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            assert_eq!(order("< u, v | u v u = v, v u v = u >", s), Some(8));
            assert_eq!(order("< a | a^3 >", s), Some(3));
            assert_eq!(order("< a | a >", s), Some(1));
            assert_eq!(order("< a, b | a^2, b^2, a b a b a b >", s), Some(6));
            assert_eq!(order("< a, b | a^2, b^3, a b a b a b >", s), Some(12));
            assert_eq!(order("< a, b | a^2, b^3, a b a b a b a b a b >", s), Some(60));
            assert_eq!(order("< t, a | t^3 = a^3, a t a = t a t, t^3 >", s), Some(24));
        }
    }

    #[test]
    fn subgroup_index() {
        let p = pres("< a | a^3 >");
        let a = p.generators()[0].clone();
        let e = enumerate(&p, &[Word::gen(&a)], EnumerationLimits::small()).unwrap();
        assert_eq!(e.index(), Some(1));
        let q8 = pres("< u, v | u v u = v, v u v = u >");
        let u = Word::gen(&q8.generators()[0]);
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let e = enumerate(&q8, std::slice::from_ref(&u), EnumerationLimits::small().with_strategy(s)).unwrap();
            assert_eq!(e.index(), Some(2));
        }
    }

    #[test]
    fn infinite_group_is_unknown() {
        let g = pres("< t, a | t^3 = a^3, a t a = t a t >");
        let lim = EnumerationLimits::small().with_max_cosets(2000);
        for s in [Strategy::Hlt, Strategy::Felsch] {
            match group_order(&g, lim.with_strategy(s)).unwrap() {
                GroupOrder::Unknown(u) => assert!(u.peak <= 2000),
                other => panic!("expected unknown, got {other:?}"),
            }
        }
        assert!(group_order(&pres("< a | >"), lim).unwrap().finite().is_none());
    }

    #[test]
    fn permutation_rep_regular() {
        let p = pres("< a | a^3 >");
        let t = enumerate(&p, &[], EnumerationLimits::small()).unwrap().complete().unwrap();
        let rep = t.permutation_rep().unwrap();
        let perm = &rep[&p.generators()[0]];
        assert_eq!(perm.len(), 3);
        assert!(perm.iter().enumerate().all(|(i, &j)| i != j));
        let p = pres("< a | a >");
        let t = enumerate(&p, &[], EnumerationLimits::small()).unwrap().complete().unwrap();
        assert_eq!(t.permutation_rep().unwrap()[&p.generators()[0]], vec![0]);
    }

    #[test]
    fn incomplete_table_has_no_rep() {
        let p = pres("< a, b | >");
        let e = enumerate(&p, &[], EnumerationLimits::small().with_max_cosets(10)).unwrap();
        let Enumeration::Incomplete(inc) = e else { panic!("free group cannot complete") };
        assert_eq!(inc.table.permutation_rep(), Err(EnumerationError::IncompleteTable));
        assert!(!inc.table.is_complete());
    }

    #[test]
    fn unknown_subgroup_generator() {
        let p = pres("< a | a^3 >");
        let w: Word = "b".parse().unwrap();
        assert!(matches!(
            enumerate(&p, &[w], EnumerationLimits::small()),
            Err(EnumerationError::Presentation(PresentationError::UnknownGenerator(_)))
        ));
    }

    #[test]
    fn csv_export() {
        let p = pres("< a | a^3 >");
        let t = enumerate(&p, &[], EnumerationLimits::small()).unwrap().complete().unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("coset,a,a^-1"));
        assert_eq!(csv.lines().count(), 4);
        assert!(lines.all(|l| l.split(',').count() == 3));
    }

    #[test]
    fn deterministic_output() {
        let p = pres("< t, a | t^3 = a^3, a t a = t a t, t^3 >");
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let lim = EnumerationLimits::small().with_strategy(s);
            let a = enumerate(&p, &[], lim).unwrap().complete().unwrap();
            let b = enumerate(&p, &[], lim).unwrap().complete().unwrap();
            assert_eq!(a.to_csv(), b.to_csv());
        }
    }

    #[test]
    fn verify_catches_broken_table() {
        let p = pres("< a | a^3 >");
        let mut t = enumerate(&p, &[], EnumerationLimits::small()).unwrap().complete().unwrap();
        t.relators.push("a".parse().unwrap());
        assert!(t.verify().is_err());
    }
}
