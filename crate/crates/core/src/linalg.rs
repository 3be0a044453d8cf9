//! Small dense exact linear algebra over any [`Scalar`] domain.

use num_traits::Signed;
use serde::Serialize;

use crate::rings::{Rational, Scalar};

pub type Mat<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(n: usize, ctx: &S::Context) -> Mat<S> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one_in(ctx) } else { S::zero_in(ctx) }).collect())
        .collect()
}

pub fn mat_mul<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> Mat<S> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].mul_ref(&b[0][j]);
                    for k in 1..inner {
                        acc = acc.add_ref(&row[k].mul_ref(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn conj_transpose<S: Scalar>(a: &Mat<S>) -> Mat<S> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn trace<S: Scalar>(a: &Mat<S>) -> S {
    let mut acc = a[0][0].clone();
    for (i, row) in a.iter().enumerate().skip(1) {
        acc = acc.add_ref(&row[i]);
    }
    acc
}

/// Characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier
/// recurrence, coefficients from the constant term up. Needs a commutative
/// domain of characteristic zero.
pub fn char_poly_leverrier<S: Scalar>(a: &Mat<S>) -> Vec<S> {
    assert!(S::COMMUTATIVE, "Faddeev-LeVerrier needs a commutative domain");
    let n = a.len();
    let ctx = a[0][0].context();
    let mut coeffs = vec![S::zero_in(&ctx); n + 1];
    coeffs[n] = S::one_in(&ctx);
    let id = identity::<S>(n, &ctx);
    let mut m = id.clone();
    for k in 1..=n {
        if k > 1 {
            let am = mat_mul(a, &m);
            m = am
                .into_iter()
                .enumerate()
                .map(|(i, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(j, x)| if i == j { x.add_ref(&coeffs[n - k + 1]) } else { x })
                        .collect()
                })
                .collect();
        }
        let t = trace(&mat_mul(a, &m));
        coeffs[n - k] = t.neg_ref().scale(&Rational::new(1.into(), (k as i64).into()));
    }
    coeffs
}

/// Basis of the right kernel `{v : M v = 0}` over a commutative field.
pub fn kernel<S: Scalar>(m: &Mat<S>, ncols: usize, ctx: &S::Context) -> Vec<Vec<S>> {
    assert!(S::COMMUTATIVE);
    let mut rows: Mat<S> = m.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].vanishes()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        let pivot_row: Vec<S> = rows[r].iter().map(|x| x.mul_ref(&inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].vanishes() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.sub_ref(&f.mul_ref(p));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero_in(ctx); ncols];
            v[f] = S::one_in(ctx);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[i][f].neg_ref();
            }
            v
        })
        .collect()
}

/// Indices of a maximal subset of `vectors` that is independent for right
/// scalar multiplication. Works over non-commutative division rings.
pub fn right_independent<S: Scalar>(vectors: &[Vec<S>]) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<S>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (p, e) in &echelon {
            if v[*p].vanishes() {
                continue;
            }
            let s = v[*p].clone();
            for (x, ei) in v.iter_mut().zip(e) {
                *x = x.sub_ref(&ei.mul_ref(&s));
            }
        }
        if let Some(p) = v.iter().position(|x| !x.vanishes()) {
            let inv = v[p].inverse().expect("nonzero");
            let e = v.iter().map(|x| x.mul_ref(&inv)).collect();
            echelon.push((p, e));
            chosen.push(idx);
        }
    }
    chosen
}

/// Inertia of a Hermitian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

/// Signature of the Hermitian matrix `g` (entry `g[i][j] = ⟨b_j, b_i⟩`) by
/// congruence: pivot on a nonzero diagonal entry, and when every diagonal
/// entry vanishes, create one from a nonzero off-diagonal pair.
pub fn signature<S: Scalar>(g: &Mat<S>) -> Signature {
    let mut g = g.clone();
    let mut sig = Signature { positive: 0, negative: 0, null: 0 };
    while !g.is_empty() {
        let n = g.len();
        let ctx = g[0][0].context();
        let pivot = (0..n).find(|&i| !g[i][i].vanishes());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !g[i][j].vanishes());
                let Some((i, j)) = pair else {
                    sig.null += n;
                    break;
                };
                // column i += column j · conj(g_ij): new g_ii = 2|g_ij|²
                let mut t = identity::<S>(n, &ctx);
                t[j][i] = g[i][j].conj();
                g = mat_mul(&mat_mul(&conj_transpose(&t), &g), &t);
                i
            }
        };
        let d = g[p][p].clone();
        assert!(d.is_real(), "Hermitian diagonal entry is not real");
        let dr = d.real_part();
        if dr.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let dinv = dr.recip();
        let mut t = identity::<S>(n, &ctx);
        for j in 0..n {
            if j != p {
                t[p][j] = g[p][j].scale(&dinv).neg_ref();
            }
        }
        let reduced = mat_mul(&mat_mul(&conj_transpose(&t), &g), &t);
        debug_assert!((0..n).all(|j| j == p || reduced[p][j].vanishes()));
        g = reduced
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != p)
            .map(|(_, row)| row.into_iter().enumerate().filter(|(j, _)| *j != p).map(|(_, x)| x).collect())
            .collect();
    }
    sig
}
