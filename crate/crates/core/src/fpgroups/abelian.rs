use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::word::Presentation;

/// Invariant factors `d1 | d2 | ...` of a finitely generated abelian group,
/// with every `d > 1` listed and one `0` per free summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub factors: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigUint> {
        self.factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// The group order, if finite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.factors.iter().product())
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.factors.len()))?;
        for d in &self.factors {
            match u64::try_from(d) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }
}

/// Abelianization from the exponent-sum matrix of the relators.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let n = p.generators().len();
    let rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for l in &r.0 {
                row[l.generator()] += if l.is_inverse() { -1 } else { 1 };
            }
            row.into_iter().map(BigInt::from).collect()
        })
        .collect();
    smith_invariants(rows, n)
}

/// Invariant factors of `Z^cols / rowspace(m)`.
pub fn smith_invariants(m: Vec<Vec<BigInt>>, cols: usize) -> AbelianInvariants {
    let diag = smith_diagonal(m, cols);
    let rank = diag.len();
    let mut factors: Vec<BigUint> = diag.into_iter().filter(|d| !d.is_one()).collect();
    factors.extend(std::iter::repeat_n(BigUint::zero(), cols - rank));
    AbelianInvariants { factors }
}

/// Nonzero Smith normal form diagonal, each entry dividing the next.
fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigUint> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&m, t, cols) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let pivot_row = m[t].clone();
                for (x, p) in m[i][t..cols].iter_mut().zip(&pivot_row[t..cols]) {
                    *x -= p * &q;
                }
                dirty |= !m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                dirty |= !m[t][j].is_zero();
            }
            if dirty {
                if let Some((pi, pj)) = min_cross(&m, t, cols) {
                    m.swap(t, pi);
                    for row in m.iter_mut() {
                        row.swap(t, pj);
                    }
                }
                continue;
            }
            let pivot = m[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let src = m[i].clone();
                    for (x, s) in m[t][t..cols].iter_mut().zip(&src[t..cols]) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs().to_biguint().expect("absolute value"));
    }
    diag
}

fn min_entry(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.sign() != Sign::NoSign && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` at or past the pivot.
fn min_cross(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let cells = (t..m.len()).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
    cells
        .filter(|&(i, j)| !m[i][j].is_zero())
        .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
}
