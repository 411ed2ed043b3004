//! Concrete groups used as word-problem oracles.
//!
//! Three kinds of model: an explicit multiplication table, a group of
//! matrices mod a prime, and a semidirect product `F x| Z` of a finite table
//! group by an automorphism, with elements in normal form `(q, n)` and
//! multiplication `(q1, n1)(q2, n2) = (q1 * a^n1(q2), n1 + n2)`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset::{group_order, EnumerationError, EnumerationLimits, GroupOrder};
use crate::presentation::Presentation;
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("element {0} does not belong to the target model")]
    ForeignElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("target must be a semidirect product over a finite fiber")]
    NotSemidirect,
    #[error("bad fixture: {0}")]
    Fixture(String),
    #[error("{0}")]
    Enumeration(#[from] EnumerationError),
}

/// Minimal group interface used by the closure searches.
pub trait GroupOps {
    type Elem: Clone + Eq + Hash + Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// A count that was either found within a bound or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bounded {
    Within(usize),
    ExceedsBound(usize),
}

impl Bounded {
    pub fn value(self) -> Option<usize> {
        match self {
            Bounded::Within(n) => Some(n),
            Bounded::ExceedsBound(_) => None,
        }
    }
}

impl fmt::Display for Bounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounded::Within(n) => write!(f, "{n}"),
            Bounded::ExceedsBound(b) => write!(f, "> {b}"),
        }
    }
}

/// Breadth-first closure of `gens` (and their inverses) under multiplication.
pub fn closure<G: GroupOps>(g: &G, gens: &[G::Elem], bound: usize) -> Result<Vec<G::Elem>, Bounded> {
    let mut steps: Vec<G::Elem> = gens.to_vec();
    steps.extend(gens.iter().map(|x| g.inv(x)));
    let id = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(Bounded::ExceedsBound(bound));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

pub fn closure_size<G: GroupOps>(g: &G, gens: &[G::Elem], bound: usize) -> Bounded {
    match closure(g, gens, bound) {
        Ok(v) => Bounded::Within(v.len()),
        Err(b) => b,
    }
}

pub fn element_order_in<G: GroupOps>(g: &G, e: &G::Elem, bound: usize) -> Bounded {
    let id = g.identity();
    let mut cur = e.clone();
    for k in 1..=bound {
        if cur == id {
            return Bounded::Within(k);
        }
        cur = g.mul(&cur, e);
    }
    Bounded::ExceedsBound(bound)
}

/// Normal closure of `normal_gens` inside the group generated by `group_gens`.
pub fn normal_closure<G: GroupOps>(
    g: &G,
    group_gens: &[G::Elem],
    normal_gens: &[G::Elem],
    bound: usize,
) -> Result<Vec<G::Elem>, Bounded> {
    let mut ngens = normal_gens.to_vec();
    let mut conj: Vec<G::Elem> = group_gens.to_vec();
    conj.extend(group_gens.iter().map(|x| g.inv(x)));
    loop {
        let n = closure(g, &ngens, bound)?;
        let members: HashSet<&G::Elem> = n.iter().collect();
        let mut extra = Vec::new();
        for s in &ngens {
            for h in &conj {
                let c = g.mul(&g.mul(h, s), &g.inv(h));
                if !members.contains(&c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Ok(n);
        }
        ngens.extend(extra);
    }
}

/// Permutations of `0..degree`, composed left to right: `(p q)(c) = q(p(c))`.
#[derive(Debug, Clone, Copy)]
pub struct PermGroup {
    pub degree: usize,
}

impl GroupOps for PermGroup {
    type Elem = Vec<usize>;
    fn identity(&self) -> Vec<usize> {
        (0..self.degree).collect()
    }
    fn mul(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        a.iter().map(|&i| b[i]).collect()
    }
    fn inv(&self, a: &Vec<usize>) -> Vec<usize> {
        let mut out = vec![0; a.len()];
        for (i, &j) in a.iter().enumerate() {
            out[j] = i;
        }
        out
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTable {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

impl FiniteTable {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self, ModelError> {
        let n = labels.len();
        if n == 0 {
            return Err(ModelError::NotAGroup("empty table".into()));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(ModelError::NotAGroup("duplicate element labels".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ModelError::NotAGroup(format!("table must be {n}x{n}")));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        if table.iter().any(|&x| x >= n) {
            return Err(ModelError::NotAGroup("entry out of range".into()));
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| ModelError::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for (a, label) in labels.iter().enumerate() {
            let b = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| ModelError::NotAGroup(format!("{label} has no inverse")))?;
            inverses.push(b);
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(ModelError::NotAGroup(format!(
                                "not associative at ({}, {}, {})",
                                labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic sample of triples.
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..20_000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let (a, b, c) = (
                    (s >> 8) as usize % n,
                    (s >> 24) as usize % n,
                    (s >> 40) as usize % n,
                );
                if !assoc(a, b, c) {
                    return Err(ModelError::NotAGroup("not associative".into()));
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(ModelError::NotAGroup("generator out of range".into()));
        }
        Ok(FiniteTable { labels, table, identity, inverses, generators })
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}` with `i^2 = j^2 = k^2 = -1`,
    /// `ij = k`, built from the multiplication of basis quaternions.
    /// Generators are `i` and `k`.
    pub fn quaternion() -> Self {
        // basis 0..4 = 1, i, j, k; element index = 2 * basis + (negative as usize)
        const BASIS: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let names = ["1", "i", "j", "k"];
        let labels: Vec<String> = (0..8)
            .map(|e| format!("{}{}", if e % 2 == 1 { "-" } else { "" }, names[e / 2]))
            .collect();
        let rows = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (basis, neg) = BASIS[a / 2][b / 2];
                        let sign = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                        2 * basis + usize::from(sign)
                    })
                    .collect()
            })
            .collect();
        FiniteTable::new(labels, rows, vec![2, 6]).expect("quaternion table is a group")
    }

    /// Cyclic group `Z/n` written additively with labels `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteTable::new(labels, rows, gens).expect("cyclic table is a group")
    }

    /// Table of the permutation group generated by `gens`; element labels are
    /// shortest words (in BFS order) over `names`.
    pub fn from_permutations(names: &[String], gens: &[Vec<usize>], bound: usize) -> Result<Self, Bounded> {
        let degree = gens.first().map_or(0, Vec::len);
        let pg = PermGroup { degree };
        let mut elems = vec![pg.identity()];
        let mut labels = vec!["1".to_string()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(pg.identity(), 0)]);
        let mut i = 0;
        while i < elems.len() {
            for (name, g) in names.iter().zip(gens) {
                let y = pg.mul(&elems[i], g);
                if !index.contains_key(&y) {
                    if elems.len() >= bound {
                        return Err(Bounded::ExceedsBound(bound));
                    }
                    index.insert(y.clone(), elems.len());
                    let label = if i == 0 { name.clone() } else { format!("{} {}", labels[i], name) };
                    labels.push(label);
                    elems.push(y);
                }
            }
            i += 1;
        }
        let rows = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&pg.mul(a, b)]).collect())
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteTable::new(labels, rows, generators).expect("permutation group table"))
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|x| self.product(z, x) == self.product(x, z))).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut cur = a;
        let mut k = 1;
        while cur != self.identity {
            cur = self.product(cur, a);
            k += 1;
        }
        k
    }

    /// Number of distinct cyclic subgroups of order `k`.
    pub fn cyclic_subgroups_of_order(&self, k: usize) -> usize {
        let mut subgroups: HashSet<Vec<usize>> = HashSet::new();
        for a in 0..self.order() {
            if self.element_order(a) == k {
                let mut members = Vec::with_capacity(k);
                let mut cur = self.identity;
                for _ in 0..k {
                    members.push(cur);
                    cur = self.product(cur, a);
                }
                members.sort_unstable();
                subgroups.insert(members);
            }
        }
        subgroups.len()
    }

    /// Check that a map on elements is a bijective homomorphism.
    pub fn check_automorphism(&self, map: &[usize]) -> Result<(), ModelError> {
        let n = self.order();
        if map.len() != n {
            return Err(ModelError::NotAnAutomorphism("map is not total".into()));
        }
        let hit: HashSet<usize> = map.iter().copied().collect();
        if hit.len() != n {
            return Err(ModelError::NotAnAutomorphism("map is not bijective".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if map[self.product(a, b)] != self.product(map[a], map[b]) {
                    return Err(ModelError::NotAnAutomorphism(format!(
                        "fails on ({}, {})",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Extend an assignment on the generators to a map on all elements,
    /// verifying that it is a well-defined automorphism.
    pub fn extend_automorphism(&self, images: &BTreeMap<usize, usize>) -> Result<Vec<usize>, ModelError> {
        let n = self.order();
        for g in &self.generators {
            if !images.contains_key(g) {
                return Err(ModelError::MissingImage(self.labels[*g].clone()));
            }
        }
        let mut map = vec![usize::MAX; n];
        map[self.identity] = self.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &self.generators {
                let y = self.product(x, g);
                let img = self.product(map[x], images[&g]);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return Err(ModelError::NotAnAutomorphism(format!(
                        "images do not extend consistently (conflict at {})",
                        self.labels[y]
                    )));
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(ModelError::NotAnAutomorphism("generators do not generate the fiber".into()));
        }
        self.check_automorphism(&map)?;
        Ok(map)
    }
}

impl Debug for FiniteTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteTable(order {})", self.order())
    }
}

impl GroupOps for FiniteTable {
    type Elem = usize;
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.product(*a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverses[*a]
    }
}

/// Invertible `dim x dim` matrices over `Z/p`, `p` prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPMatrix {
    dim: usize,
    modulus: u64,
    generators: Vec<Vec<u64>>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl ModPMatrix {
    pub fn new(dim: usize, modulus: u64, generators: &[Vec<Vec<i64>>]) -> Result<Self, ModelError> {
        if !is_prime(modulus) {
            return Err(ModelError::NotAGroup(format!("modulus {modulus} is not prime")));
        }
        let mut gens = Vec::new();
        for m in generators {
            let e = Self::canonical(dim, modulus, m)?;
            if Self::det_mod(dim, modulus, &e) == 0 {
                return Err(ModelError::NotAGroup("generator is singular".into()));
            }
            gens.push(e);
        }
        Ok(ModPMatrix { dim, modulus, generators: gens })
    }

    fn canonical(dim: usize, p: u64, rows: &[Vec<i64>]) -> Result<Vec<u64>, ModelError> {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(ModelError::NotAGroup(format!("matrix must be {dim}x{dim}")));
        }
        Ok(rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    /// Reduce an integer matrix to a group element.
    pub fn element(&self, rows: &[Vec<i64>]) -> Result<Element, ModelError> {
        let e = Self::canonical(self.dim, self.modulus, rows)?;
        if Self::det_mod(self.dim, self.modulus, &e) == 0 {
            return Err(ModelError::NotAGroup("matrix is singular".into()));
        }
        Ok(Element::Matrix(e))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn det_mod(n: usize, p: u64, m: &[u64]) -> u64 {
        let mut a = m.to_vec();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let piv = a[c * n + c];
            det = det * piv % p;
            let pinv = pow_mod(piv, p - 2, p);
            for r in c + 1..n {
                let f = a[r * n + c] * pinv % p;
                for j in c..n {
                    a[r * n + j] = (a[r * n + j] + p * p - f * a[c * n + j] % p) % p;
                }
            }
        }
        det
    }

    fn mat_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.dim;
        let p = self.modulus;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % p;
                }
            }
        }
        out
    }

    fn mat_inv(&self, m: &[u64]) -> Vec<u64> {
        let n = self.dim;
        let p = self.modulus;
        let mut a = m.to_vec();
        let mut inv: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
        for c in 0..n {
            let r = (c..n).find(|&r| a[r * n + c] != 0).expect("invertible matrix");
            for j in 0..n {
                a.swap(r * n + j, c * n + j);
                inv.swap(r * n + j, c * n + j);
            }
            let pinv = pow_mod(a[c * n + c], p - 2, p);
            for j in 0..n {
                a[c * n + j] = a[c * n + j] * pinv % p;
                inv[c * n + j] = inv[c * n + j] * pinv % p;
            }
            for r in 0..n {
                if r == c || a[r * n + c] == 0 {
                    continue;
                }
                let f = a[r * n + c];
                for j in 0..n {
                    a[r * n + j] = (a[r * n + j] + p - f * a[c * n + j] % p) % p;
                    inv[r * n + j] = (inv[r * n + j] + p - f * inv[c * n + j] % p) % p;
                }
            }
        }
        inv
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `F x| Z` for a finite table group `F` and an automorphism `a` of `F`.
#[derive(Clone, PartialEq, Eq)]
pub struct Semidirect {
    label: String,
    fiber: FiniteTable,
    /// `powers[k][q] = a^k(q)` for `k` in `0..order(a)`.
    powers: Vec<Vec<usize>>,
}

impl Semidirect {
    pub fn fiber(&self) -> &FiniteTable {
        &self.fiber
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Order of the automorphism.
    pub fn action_order(&self) -> usize {
        self.powers.len()
    }

    /// `a^n(q)` for any integer `n`.
    pub fn act(&self, n: i64, q: usize) -> usize {
        let k = n.rem_euclid(self.powers.len() as i64) as usize;
        self.powers[k][q]
    }

    pub fn pair(&self, fiber_label: &str, base: i64) -> Result<Element, ModelError> {
        let q = self.fiber.index_of(fiber_label).ok_or_else(|| ModelError::UnknownElement(fiber_label.into()))?;
        Ok(Element::Pair(q, base))
    }

    fn mul_pairs(&self, (q1, n1): (usize, i64), (q2, n2): (usize, i64)) -> (usize, i64) {
        (self.fiber.product(q1, self.act(n1, q2)), n1 + n2)
    }

    fn inv_pair(&self, (q, n): (usize, i64)) -> (usize, i64) {
        (self.act(-n, self.fiber.inverse(q)), -n)
    }

    /// Order of the quotient by the normal closure of `z`, computed by BFS in
    /// a finite quotient `F x| Z/M` through which the projection factors.
    pub fn quotient_order(&self, z: &Element, bound: usize) -> Result<usize, ModelError> {
        let Element::Pair(q0, n0) = *z else { return Err(ModelError::ForeignElement(format!("{z:?}"))) };
        if n0 == 0 {
            return Err(ModelError::NotAGroup("quotient by a fiber element is not finite-checkable".into()));
        }
        let modulus = n0.unsigned_abs() as usize * self.action_order() * self.fiber.order();
        let h = CyclicBase { sd: self, modulus: modulus as i64 };
        let mut gens: Vec<(usize, i64)> = self.fiber.generators().iter().map(|&g| (g, 0)).collect();
        gens.push((self.fiber.identity_index(), 1));
        let zbar = (q0, n0.rem_euclid(modulus as i64));
        let n = normal_closure(&h, &gens, &[zbar], bound).map_err(|b| {
            ModelError::NotAGroup(format!("normal closure exceeds bound {b}"))
        })?;
        let total = self.fiber.order() * modulus;
        Ok(total / n.len())
    }
}

impl Debug for Semidirect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semidirect({:?}, fiber order {}, action order {})", self.label, self.fiber.order(), self.action_order())
    }
}

/// `F x| Z/M`, valid when `a^M = 1`.
struct CyclicBase<'a> {
    sd: &'a Semidirect,
    modulus: i64,
}

impl GroupOps for CyclicBase<'_> {
    type Elem = (usize, i64);
    fn identity(&self) -> (usize, i64) {
        (self.sd.fiber.identity_index(), 0)
    }
    fn mul(&self, a: &(usize, i64), b: &(usize, i64)) -> (usize, i64) {
        let (q, n) = self.sd.mul_pairs(*a, *b);
        (q, n.rem_euclid(self.modulus))
    }
    fn inv(&self, a: &(usize, i64)) -> (usize, i64) {
        let (q, n) = self.sd.inv_pair(*a);
        (q, n.rem_euclid(self.modulus))
    }
}

/// Build `fiber x| Z` from the images of the fiber's generators.
pub fn semidirect(fiber: FiniteTable, images: &BTreeMap<usize, usize>, label: &str) -> Result<GroupModel, ModelError> {
    let map = fiber.extend_automorphism(images)?;
    let id: Vec<usize> = (0..fiber.order()).collect();
    let mut powers = vec![id.clone()];
    let mut cur = map.clone();
    while cur != id {
        powers.push(cur.clone());
        cur = cur.iter().map(|&q| map[q]).collect();
    }
    Ok(GroupModel::Semidirect(Semidirect { label: label.to_string(), fiber, powers }))
}

/// [`semidirect`] with images given by element labels.
pub fn semidirect_by_labels(fiber: FiniteTable, images: &[(&str, &str)], label: &str) -> Result<GroupModel, ModelError> {
    let mut m = BTreeMap::new();
    for (a, b) in images {
        let ia = fiber.index_of(a).ok_or_else(|| ModelError::UnknownElement(a.to_string()))?;
        let ib = fiber.index_of(b).ok_or_else(|| ModelError::UnknownElement(b.to_string()))?;
        m.insert(ia, ib);
    }
    semidirect(fiber, &m, label)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Table(usize),
    Matrix(Vec<u64>),
    Pair(usize, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupModel {
    FiniteTable(FiniteTable),
    ModPMatrix(ModPMatrix),
    Semidirect(Semidirect),
}

impl GroupModel {
    /// The model's generating set as elements. For a semidirect product these
    /// are the fiber generators `(g, 0)` followed by the base step `(1, 1)`.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            GroupModel::FiniteTable(t) => t.generators().iter().map(|&g| Element::Table(g)).collect(),
            GroupModel::ModPMatrix(m) => m.generators.iter().cloned().map(Element::Matrix).collect(),
            GroupModel::Semidirect(s) => {
                let mut v: Vec<Element> = s.fiber.generators().iter().map(|&g| Element::Pair(g, 0)).collect();
                v.push(Element::Pair(s.fiber.identity_index(), 1));
                v
            }
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (GroupModel::FiniteTable(t), Element::Table(i)) => *i < t.order(),
            (GroupModel::ModPMatrix(m), Element::Matrix(v)) => {
                v.len() == m.dim * m.dim && v.iter().all(|&x| x < m.modulus) && ModPMatrix::det_mod(m.dim, m.modulus, v) != 0
            }
            (GroupModel::Semidirect(s), Element::Pair(q, _)) => *q < s.fiber.order(),
            _ => false,
        }
    }

    pub fn format(&self, e: &Element) -> String {
        match (self, e) {
            (GroupModel::FiniteTable(t), Element::Table(i)) => t.label(*i).to_string(),
            (GroupModel::ModPMatrix(m), Element::Matrix(v)) => {
                let rows: Vec<String> = v
                    .chunks(m.dim)
                    .map(|r| format!("[{}]", r.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                format!("[{}]", rows.join(","))
            }
            (GroupModel::Semidirect(s), Element::Pair(q, n)) => format!("({},{})", s.fiber.label(*q), n),
            _ => format!("{e:?}"),
        }
    }

    /// Parse an element: a label for tables, `[[a,b],[c,d]]` for matrices,
    /// `(label,n)` for semidirect products.
    pub fn parse_element(&self, text: &str) -> Result<Element, ModelError> {
        let text = text.trim();
        let bad = || ModelError::UnknownElement(text.to_string());
        match self {
            GroupModel::FiniteTable(t) => t.index_of(text).map(Element::Table).ok_or_else(bad),
            GroupModel::ModPMatrix(m) => {
                let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|_| bad())?;
                m.element(&rows)
            }
            GroupModel::Semidirect(s) => {
                let inner = text.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let (q, n) = inner.rsplit_once(',').ok_or_else(bad)?;
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                s.pair(q.trim(), n)
            }
        }
    }

    pub fn pow(&self, e: &Element, n: i64) -> Element {
        let base = if n < 0 { self.inv(e) } else { e.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }
}

impl GroupOps for GroupModel {
    type Elem = Element;

    fn identity(&self) -> Element {
        match self {
            GroupModel::FiniteTable(t) => Element::Table(t.identity),
            GroupModel::ModPMatrix(m) => {
                Element::Matrix((0..m.dim * m.dim).map(|k| u64::from(k / m.dim == k % m.dim)).collect())
            }
            GroupModel::Semidirect(s) => Element::Pair(s.fiber.identity_index(), 0),
        }
    }

    /// Panics if an element from a different kind of model is passed.
    fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (GroupModel::FiniteTable(t), Element::Table(x), Element::Table(y)) => Element::Table(t.product(*x, *y)),
            (GroupModel::ModPMatrix(m), Element::Matrix(x), Element::Matrix(y)) => Element::Matrix(m.mat_mul(x, y)),
            (GroupModel::Semidirect(s), Element::Pair(q1, n1), Element::Pair(q2, n2)) => {
                let (q, n) = s.mul_pairs((*q1, *n1), (*q2, *n2));
                Element::Pair(q, n)
            }
            _ => panic!("element kind does not match model"),
        }
    }

    fn inv(&self, a: &Element) -> Element {
        match (self, a) {
            (GroupModel::FiniteTable(t), Element::Table(x)) => Element::Table(t.inverse(*x)),
            (GroupModel::ModPMatrix(m), Element::Matrix(x)) => Element::Matrix(m.mat_inv(x)),
            (GroupModel::Semidirect(s), Element::Pair(q, n)) => {
                let (q, n) = s.inv_pair((*q, *n));
                Element::Pair(q, n)
            }
            _ => panic!("element kind does not match model"),
        }
    }
}

pub fn closure_order(m: &GroupModel, gens: &[Element], bound: usize) -> Bounded {
    closure_size(m, gens, bound)
}

pub fn element_order(m: &GroupModel, e: &Element, bound: usize) -> Bounded {
    element_order_in(m, e, bound)
}

/// A map from a presentation's generators into a model.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub source: Presentation,
    pub target: GroupModel,
    pub images: BTreeMap<Generator, Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomCheck {
    Pass,
    Fail { relator: Word, value: String },
}

impl HomCheck {
    pub fn passed(&self) -> bool {
        matches!(self, HomCheck::Pass)
    }
}

impl Homomorphism {
    pub fn new(source: Presentation, target: GroupModel, images: BTreeMap<Generator, Element>) -> Result<Self, ModelError> {
        for g in source.generators() {
            let e = images.get(g).ok_or_else(|| ModelError::MissingImage(g.to_string()))?;
            if !target.contains(e) {
                return Err(ModelError::ForeignElement(format!("{e:?}")));
            }
        }
        Ok(Homomorphism { source, target, images })
    }

    /// Images given as element text, parsed by the target model.
    pub fn from_text(source: Presentation, target: GroupModel, images: &[(&str, &str)]) -> Result<Self, ModelError> {
        let mut map = BTreeMap::new();
        for (g, e) in images {
            let gen = source.generator(g).ok_or_else(|| ModelError::MissingImage(g.to_string()))?.clone();
            map.insert(gen, target.parse_element(e)?);
        }
        Homomorphism::new(source, target, map)
    }

    pub fn eval(&self, w: &Word) -> Result<Element, ModelError> {
        let mut acc = self.target.identity();
        for l in w.letters() {
            let e = self.images.get(&l.generator).ok_or_else(|| ModelError::MissingImage(l.generator.to_string()))?;
            let e = if l.inverse { self.target.inv(e) } else { e.clone() };
            acc = self.target.mul(&acc, &e);
        }
        Ok(acc)
    }

    pub fn image_label(&self, w: &Word) -> Result<String, ModelError> {
        Ok(self.target.format(&self.eval(w)?))
    }
}

/// Every relator must evaluate to the identity.
pub fn check_hom(h: &Homomorphism) -> Result<HomCheck, ModelError> {
    let id = h.target.identity();
    for r in h.source.relators() {
        let v = h.eval(r)?;
        if v != id {
            return Ok(HomCheck::Fail { relator: r.clone(), value: h.target.format(&v) });
        }
    }
    Ok(HomCheck::Pass)
}

/// Data for certifying that a homomorphism onto `F x| Z` is an isomorphism.
#[derive(Debug, Clone)]
pub struct IsoCertificate {
    pub hom: Homomorphism,
    pub central_word: Word,
    /// For each target generator, a source word mapping onto it.
    pub witnesses: Vec<(Element, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub pass: bool,
    pub detail: String,
}

impl SubCheck {
    fn ok(detail: impl Into<String>) -> Self {
        SubCheck { pass: true, detail: detail.into() }
    }
    fn fail(detail: impl Into<String>) -> Self {
        SubCheck { pass: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub relators: SubCheck,
    pub surjectivity: SubCheck,
    pub infinite_order: SubCheck,
    pub quotient_orders: SubCheck,
    pub source_quotient_order: Option<usize>,
    pub target_quotient_order: Option<usize>,
    pub pass: bool,
}

impl CertificateReport {
    /// Name of the first failing sub-check, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("relators", &self.relators),
            ("surjectivity", &self.surjectivity),
            ("infinite_order", &self.infinite_order),
            ("quotient_orders", &self.quotient_orders),
        ]
        .into_iter()
        .find(|(_, c)| !c.pass)
        .map(|(n, _)| n)
    }
}

/// Run the four finite checks of an [`IsoCertificate`]:
/// (a) relators map to the identity; (b) each target generator is hit by its
/// witness; (c) the central word maps to an element of infinite order;
/// (d) `source / <<z>>` and `target / <<image(z)>>` have the same finite order.
/// See `docs/certificate-argument.md` for why these imply an isomorphism.
pub fn verify_virtually_cyclic_iso(
    cert: &IsoCertificate,
    limits: EnumerationLimits,
    probe_bound: usize,
) -> Result<CertificateReport, ModelError> {
    let GroupModel::Semidirect(sd) = &cert.hom.target else { return Err(ModelError::NotSemidirect) };
    let h = &cert.hom;

    let relators = match check_hom(h)? {
        HomCheck::Pass => SubCheck::ok(format!("{} relators map to the identity", h.source.relators().len())),
        HomCheck::Fail { relator, value } => SubCheck::fail(format!("relator {relator} maps to {value}")),
    };

    let mut missing = Vec::new();
    for g in h.target.generators() {
        match cert.witnesses.iter().find(|(e, _)| *e == g) {
            None => missing.push(format!("no witness for {}", h.target.format(&g))),
            Some((_, w)) => {
                let img = h.eval(w)?;
                if img != g {
                    missing.push(format!(
                        "witness {w} maps to {} not {}",
                        h.target.format(&img),
                        h.target.format(&g)
                    ));
                }
            }
        }
    }
    let surjectivity = if missing.is_empty() {
        SubCheck::ok("every target generator is hit")
    } else {
        SubCheck::fail(missing.join("; "))
    };

    let z = h.eval(&cert.central_word)?;
    let infinite_order = match (&z, element_order(&h.target, &z, probe_bound)) {
        (Element::Pair(_, n), Bounded::ExceedsBound(_)) if *n != 0 => SubCheck::ok(format!(
            "{} has base component {n} and no power up to {probe_bound} is trivial",
            h.target.format(&z)
        )),
        _ => SubCheck::fail(format!("{} has finite order", h.target.format(&z))),
    };

    let source_order = match group_order(&h.source.add_relators(std::slice::from_ref(&cert.central_word)).map_err(EnumerationError::from)?, limits)? {
        GroupOrder::Finite(n) => Some(n),
        GroupOrder::Unknown(_) => None,
    };
    let target_order = if infinite_order.pass { sd.quotient_order(&z, 1_000_000).ok() } else { None };
    let quotient_orders = match (source_order, target_order) {
        (Some(a), Some(b)) if a == b => SubCheck::ok(format!("both quotients by the central word have order {a}")),
        (a, b) => SubCheck::fail(format!(
            "source quotient order {}, target quotient order {}",
            a.map_or("unknown".into(), |n| n.to_string()),
            b.map_or("unknown".into(), |n| n.to_string())
        )),
    };

    let pass = relators.pass && surjectivity.pass && infinite_order.pass && quotient_orders.pass;
    Ok(CertificateReport {
        relators,
        surjectivity,
        infinite_order,
        quotient_orders,
        source_quotient_order: source_order,
        target_quotient_order: target_order,
        pass,
    })
}

/// The quaternion group as a semidirect fiber with the order-3 automorphism
/// `i -> j -> k -> i`.
pub fn quaternion_order3() -> GroupModel {
    semidirect_by_labels(FiniteTable::quaternion(), &[("i", "j"), ("k", "i")], "Q8 x| Z")
        .expect("cyclic permutation of i, j, k is an automorphism")
}

/// `SL(2, Z/3)` generated by the two unipotent matrices.
pub fn sl2_3() -> ModPMatrix {
    ModPMatrix::new(2, 3, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![2, 1]]]).expect("valid generators")
}

// ---------------------------------------------------------------------------
// JSON fixtures

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum ModelFixture {
    FiniteTable {
        labels: Vec<String>,
        /// Rows of element labels: `table[a][b]` is the label of `a * b`.
        table: Vec<Vec<String>>,
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        comment: Option<String>,
    },
    ModPMatrix {
        dimension: usize,
        modulus: u64,
        generators: Vec<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        comment: Option<String>,
    },
    SemidirectNF {
        fiber: FiberRef,
        /// Fiber generator label -> image label.
        action: BTreeMap<String, String>,
        #[serde(default)]
        label: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        comment: Option<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberRef {
    Path(String),
    Inline(Box<ModelFixture>),
}

impl ModelFixture {
    pub fn from_table(t: &FiniteTable, comment: Option<String>) -> Self {
        let n = t.order();
        ModelFixture::FiniteTable {
            labels: t.labels.clone(),
            table: (0..n).map(|a| (0..n).map(|b| t.labels[t.product(a, b)].clone()).collect()).collect(),
            generators: t.generators.iter().map(|&g| t.labels[g].clone()).collect(),
            comment,
        }
    }

    /// Build the model; fiber paths are resolved against `base_dir`.
    pub fn build(&self, base_dir: &Path) -> Result<GroupModel, ModelError> {
        match self {
            ModelFixture::FiniteTable { labels, table, generators, .. } => {
                let idx = |l: &String| {
                    labels.iter().position(|x| x == l).ok_or_else(|| ModelError::Fixture(format!("unknown label {l:?}")))
                };
                let rows = table.iter().map(|r| r.iter().map(idx).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
                let gens = generators.iter().map(idx).collect::<Result<Vec<_>, _>>()?;
                Ok(GroupModel::FiniteTable(FiniteTable::new(labels.clone(), rows, gens)?))
            }
            ModelFixture::ModPMatrix { dimension, modulus, generators, .. } => {
                Ok(GroupModel::ModPMatrix(ModPMatrix::new(*dimension, *modulus, generators)?))
            }
            ModelFixture::SemidirectNF { fiber, action, label, .. } => {
                let fiber_model = match fiber {
                    FiberRef::Path(p) => load_model(&base_dir.join(p))?,
                    FiberRef::Inline(f) => f.build(base_dir)?,
                };
                let GroupModel::FiniteTable(t) = fiber_model else {
                    return Err(ModelError::Fixture("fiber must be a FiniteTable".into()));
                };
                let pairs: Vec<(&str, &str)> = action.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                semidirect_by_labels(t, &pairs, label)
            }
        }
    }
}

pub fn load_model(path: &Path) -> Result<GroupModel, ModelError> {
    let text = std::fs::read_to_string(path).map_err(|e| ModelError::Fixture(format!("{}: {e}", path.display())))?;
    let fx: ModelFixture = serde_json::from_str(&text).map_err(|e| ModelError::Fixture(format!("{}: {e}", path.display())))?;
    fx.build(path.parent().unwrap_or(Path::new(".")))
}
