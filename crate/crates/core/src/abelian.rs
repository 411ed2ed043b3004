//! Smith normal form over the integers and the abelian invariants it yields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntegerMatrix;
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("linking matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("linking matrix is not symmetric")]
    NotSymmetric,
}

/// `left * m * right = diag(diagonal)` (padded with zeros to the shape of `m`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// `d_1 | d_2 | ... | d_k`, `k = min(rows, cols)`, non-negative, zeros last.
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The diagonal laid out as a matrix of the original shape.
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

/// Finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Each entry > 1 and dividing the next.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(n) => seq.serialize_element(&n)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        AbelianInvariants { free_rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn pivot_position(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);
    let k = rows.min(cols);
    let mut rank = 0;

    for t in 0..k {
        let Some((pi, pj)) = pivot_position(&a, t) else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&p);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&p);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if !dirty {
                // Row and column are clear; the pivot must divide the rest.
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        a.add_row_multiple(t, i, &BigInt::one());
                        left.add_row_multiple(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            // Bring the smallest remaining entry of row t / column t to the pivot.
            let mut best = (a.get(t, t).abs(), t, t);
            for i in t + 1..rows {
                let v = a.get(i, t).abs();
                if !v.is_zero() && v < best.0 {
                    best = (v, i, t);
                }
            }
            for j in t + 1..cols {
                let v = a.get(t, j).abs();
                if !v.is_zero() && v < best.0 {
                    best = (v, t, j);
                }
            }
            let (_, bi, bj) = best;
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            a.swap_cols(t, bj);
            right.swap_cols(t, bj);
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        rank += 1;
    }

    let diagonal = (0..k).map(|i| a.get(i, i).clone()).collect();
    SnfResult { diagonal, left, right, rank }
}

fn invariants_from(snf: &SnfResult, ngens: usize) -> AbelianInvariants {
    AbelianInvariants {
        free_rank: ngens - snf.rank,
        torsion: snf.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect(),
    }
}

/// Abelianization of a presentation via its relator matrix.
pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let m = p.relator_matrix();
    invariants_from(&smith_normal_form(&m), p.generators().len())
}

/// First homology of the 3-manifold obtained by integral surgery on a
/// framed link: the cokernel of the linking matrix.
pub fn surgery_h1(linking: &IntegerMatrix) -> Result<AbelianInvariants, AbelianError> {
    if !linking.is_square() {
        return Err(AbelianError::NotSquare(linking.rows(), linking.cols()));
    }
    if !linking.is_symmetric() {
        return Err(AbelianError::NotSymmetric);
    }
    Ok(invariants_from(&smith_normal_form(linking), linking.cols()))
}
