//! Vectors and 3×3 matrices over `Q(√−d)` or the rational quaternions, the
//! Siegel Hermitian form `⟨Z,W⟩ = W*JZ`, isometry and point-type tests and
//! the Bergman distance formula.
//!
//! Quaternionic vectors form a right module: matrices act on the left and
//! scalars multiply on the right. [`HermVector::scale_right`] and
//! [`HermMatrix::scale_right`] follow that convention in both domains.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Mat;
use crate::rings::{rat, QuadElt, QuatElt, Rational, RingError, RingSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HermitianError {
    #[error("coefficient domain mismatch")]
    DomainMismatch,
    #[error("the zero vector has no point type")]
    ZeroVector,
    #[error("expected a negative vector, got a {0:?} one")]
    NotNegative(PointType),
    #[error("matrix literal: {0}")]
    Literal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermVector<S>(pub [S; 3]);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermMatrix<S>(pub [[S; 3]; 3]);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PointType {
    Negative,
    Null,
    Positive,
}

impl<S: Scalar> HermVector<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        HermVector([a, b, c])
    }

    pub fn basis(i: usize, ctx: &S::Context) -> Self {
        HermVector(std::array::from_fn(|k| if k == i { S::one_in(ctx) } else { S::zero_in(ctx) }))
    }

    pub fn context(&self) -> S::Context {
        self.0[0].context()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.vanishes())
    }

    /// `Z·λ`, coordinates multiplied on the right.
    pub fn scale_right(&self, lambda: &S) -> Self {
        HermVector(std::array::from_fn(|i| self.0[i].mul_ref(lambda)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        HermVector(std::array::from_fn(|i| self.0[i].sub_ref(&other.0[i])))
    }

    fn same_domain(&self) -> bool {
        let ctx = self.context();
        self.0.iter().all(|c| c.context() == ctx)
    }
}

impl<S: Scalar> HermMatrix<S> {
    pub fn from_rows(rows: [[S; 3]; 3]) -> Self {
        HermMatrix(rows)
    }

    pub fn identity(ctx: &S::Context) -> Self {
        Self::diagonal([S::one_in(ctx), S::one_in(ctx), S::one_in(ctx)])
    }

    pub fn diagonal(d: [S; 3]) -> Self {
        let ctx = d[0].context();
        let [a, b, c] = d;
        let z = || S::zero_in(&ctx);
        HermMatrix([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    pub fn context(&self) -> S::Context {
        self.0[0][0].context()
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.0[i][j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.0.iter().flat_map(|r| r.iter())
    }

    pub fn mul(&self, other: &Self) -> Self {
        HermMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = self.0[i][0].mul_ref(&other.0[0][j]);
                for k in 1..3 {
                    acc = acc.add_ref(&self.0[i][k].mul_ref(&other.0[k][j]));
                }
                acc
            })
        }))
    }

    pub fn apply(&self, v: &HermVector<S>) -> HermVector<S> {
        HermVector(std::array::from_fn(|i| {
            let mut acc = self.0[i][0].mul_ref(&v.0[0]);
            for k in 1..3 {
                acc = acc.add_ref(&self.0[i][k].mul_ref(&v.0[k]));
            }
            acc
        }))
    }

    pub fn conj_transpose(&self) -> Self {
        HermMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj())))
    }

    /// `A·μ`, every entry multiplied on the right.
    pub fn scale_right(&self, mu: &S) -> Self {
        HermMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].mul_ref(mu))))
    }

    pub fn sub(&self, other: &Self) -> Self {
        HermMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].sub_ref(&other.0[i][j]))))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The scalar `μ` when `A = μI`.
    pub fn as_scalar(&self) -> Option<S> {
        let mu = self.0[0][0].clone();
        let ok = (0..3).all(|i| {
            (0..3).all(|j| if i == j { self.0[i][j] == mu } else { self.0[i][j].vanishes() })
        });
        ok.then_some(mu)
    }

    /// Inverse of an isometry, `J A* J`.
    pub fn isometry_inverse(&self) -> Self {
        let j = SiegelForm::matrix(&self.context());
        j.mul(&self.conj_transpose()).mul(&j)
    }

    pub fn to_mat(&self) -> Mat<S> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }

    fn same_domain(&self) -> bool {
        let ctx = self.context();
        self.entries().all(|c| c.context() == ctx)
    }

    /// Parses `[a,b,c; d,e,f; g,h,i]` with entries in the scalar syntax of
    /// the domain.
    pub fn parse(text: &str, ctx: &S::Context) -> Result<Self, HermitianError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| HermitianError::Literal(format!("`{t}` is not bracketed")))?;
        let rows: Vec<&str> = inner.split(';').collect();
        if rows.len() != 3 {
            return Err(HermitianError::Literal(format!("expected 3 rows, found {}", rows.len())));
        }
        let mut parsed: Vec<[S; 3]> = Vec::with_capacity(3);
        for row in rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 3 {
                return Err(HermitianError::Literal(format!(
                    "expected 3 entries in row `{}`, found {}",
                    row.trim(),
                    cells.len()
                )));
            }
            let mut entries = Vec::with_capacity(3);
            for c in cells {
                entries.push(S::parse_in(c.trim(), ctx)?);
            }
            let arr: [S; 3] = entries.try_into().expect("three entries");
            parsed.push(arr);
        }
        let rows: [[S; 3]; 3] = parsed.try_into().expect("three rows");
        Ok(HermMatrix(rows))
    }
}

impl<S: Scalar> fmt::Display for HermMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

impl<S: Scalar> fmt::Display for HermVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl<S: Scalar> Serialize for HermMatrix<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<S: Scalar> Serialize for HermVector<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(3))?;
        for c in &self.0 {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// The antidiagonal form `J` with `J₁₃ = J₂₂ = J₃₁ = 1`.
pub struct SiegelForm;

impl SiegelForm {
    pub fn matrix<S: Scalar>(ctx: &S::Context) -> HermMatrix<S> {
        let o = || S::one_in(ctx);
        let z = || S::zero_in(ctx);
        HermMatrix([[z(), z(), o()], [z(), o(), z()], [o(), z(), z()]])
    }
}

/// `⟨Z,W⟩ = W*JZ = w̄₃z₁ + w̄₂z₂ + w̄₁z₃`.
pub fn inner<S: Scalar>(z: &HermVector<S>, w: &HermVector<S>) -> Result<S, HermitianError> {
    if !z.same_domain() || !w.same_domain() || z.context() != w.context() {
        return Err(HermitianError::DomainMismatch);
    }
    Ok(inner_unchecked(z, w))
}

pub(crate) fn inner_unchecked<S: Scalar>(z: &HermVector<S>, w: &HermVector<S>) -> S {
    w.0[2]
        .conj()
        .mul_ref(&z.0[0])
        .add_ref(&w.0[1].conj().mul_ref(&z.0[1]))
        .add_ref(&w.0[0].conj().mul_ref(&z.0[2]))
}

/// `⟨Z,Z⟩`, which is always rational; the vanishing of its non-real part is
/// asserted rather than discarded.
pub fn norm_sq<S: Scalar>(z: &HermVector<S>) -> Rational {
    let v = inner_unchecked(z, z);
    assert!(v.is_real(), "non-real Hermitian square {v}");
    v.real_part()
}

pub fn point_type<S: Scalar>(z: &HermVector<S>) -> Result<PointType, HermitianError> {
    if z.is_zero() {
        return Err(HermitianError::ZeroVector);
    }
    let n = norm_sq(z);
    Ok(if n.is_negative() {
        PointType::Negative
    } else if n.is_zero() {
        PointType::Null
    } else {
        PointType::Positive
    })
}

/// `A*JA = J`.
pub fn is_isometry<S: Scalar>(a: &HermMatrix<S>) -> bool {
    if !a.same_domain() {
        return false;
    }
    let j = SiegelForm::matrix(&a.context());
    a.conj_transpose().mul(&j).mul(a) == j
}

/// `cosh²(d/2) = |⟨X,Y⟩|² / (⟨X,X⟩⟨Y,Y⟩)` for negative `X`, `Y`.
pub fn cosh2_half_dist<S: Scalar>(x: &HermVector<S>, y: &HermVector<S>) -> Result<Rational, HermitianError> {
    let xy = inner(x, y)?;
    for v in [x, y] {
        let t = point_type(v)?;
        if t != PointType::Negative {
            return Err(HermitianError::NotNegative(t));
        }
    }
    Ok(xy.norm() / (norm_sq(x) * norm_sq(y)))
}

/// Either coefficient domain, as chosen at run time.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum AnyMatrix {
    Complex(HermMatrix<QuadElt>),
    Quaternionic(HermMatrix<QuatElt>),
}

impl fmt::Display for AnyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyMatrix::Complex(m) => m.fmt(f),
            AnyMatrix::Quaternionic(m) => m.fmt(f),
        }
    }
}

/// Which family of lattice generators to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    Complex(RingSpec),
    Quaternionic,
}

impl Domain {
    pub fn parse_matrix(&self, text: &str) -> Result<AnyMatrix, HermitianError> {
        Ok(match self {
            Domain::Complex(ring) => AnyMatrix::Complex(HermMatrix::parse(text, ring)?),
            Domain::Quaternionic => AnyMatrix::Quaternionic(HermMatrix::parse(text, &())?),
        })
    }
}

impl std::str::FromStr for Domain {
    type Err = HermitianError;

    /// Accepts `quaternion`, `7` or `d=7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("quaternion") || s.eq_ignore_ascii_case("hurwitz") {
            return Ok(Domain::Quaternionic);
        }
        let digits = s.strip_prefix("d=").unwrap_or(s);
        let d: u64 = digits.parse().map_err(|_| HermitianError::Literal(format!("unknown domain `{s}`")))?;
        Ok(Domain::Complex(RingSpec::new(d)?))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Complex(r) => write!(f, "d={}", r.d()),
            Domain::Quaternionic => f.write_str("quaternion"),
        }
    }
}

/// The unit `u` of `R = diag(1, u, 1)`: `i` for `d = 1`, `(−1+√−3)/2` for
/// `d = 3`, and `−1` otherwise.
pub fn reflection_unit(ring: RingSpec) -> QuadElt {
    match ring.d() {
        1 => QuadElt::sqrt_neg_d(ring),
        3 => QuadElt::new(rat(-1, 2), rat(1, 2), ring),
        _ => QuadElt::rational(-Rational::one(), ring),
    }
}

fn i0<S: Scalar>(ctx: &S::Context) -> HermMatrix<S> {
    let o = || S::one_in(ctx);
    let z = || S::zero_in(ctx);
    HermMatrix([[z(), z(), o()], [z(), o().neg_ref(), z()], [o(), z(), z()]])
}

fn middle<S: Scalar>(u: S) -> HermMatrix<S> {
    let ctx = u.context();
    HermMatrix::diagonal([S::one_in(&ctx), u, S::one_in(&ctx)])
}

pub fn complex_generators(ring: RingSpec) -> Vec<(&'static str, HermMatrix<QuadElt>)> {
    vec![("I0", i0(&ring)), ("R", middle(reflection_unit(ring)))]
}

pub fn quaternionic_generators() -> Vec<(&'static str, HermMatrix<QuatElt>)> {
    vec![("I0", i0(&())), ("Ri", middle(QuatElt::i())), ("Rsigma", middle(QuatElt::sigma()))]
}

/// The lattice elements `I₀`, `R` (complex case) or `I₀`, `R_i`, `R_σ`
/// (quaternionic case) with their builtin names.
pub fn paper_generators(domain: Domain) -> Vec<(&'static str, AnyMatrix)> {
    match domain {
        Domain::Complex(ring) => complex_generators(ring)
            .into_iter()
            .map(|(n, m)| (n, AnyMatrix::Complex(m)))
            .collect(),
        Domain::Quaternionic => quaternionic_generators()
            .into_iter()
            .map(|(n, m)| (n, AnyMatrix::Quaternionic(m)))
            .collect(),
    }
}

pub fn builtin(name: &str, domain: Domain) -> Option<AnyMatrix> {
    paper_generators(domain).into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}

/// Heisenberg translation `[[1, −z̄, −|z|²/2 + s], [0, 1, z], [0, 0, 1]]`,
/// an isometry whenever `s` is purely imaginary.
pub fn heisenberg_translation<S: Scalar>(z: &S, s: &S) -> HermMatrix<S> {
    let ctx = z.context();
    let half = Rational::new(1.into(), 2.into());
    let corner = S::from_rational(-(z.norm() * half), &ctx).add_ref(s);
    HermMatrix([
        [S::one_in(&ctx), z.conj().neg_ref(), corner],
        [S::zero_in(&ctx), S::one_in(&ctx), z.clone()],
        [S::zero_in(&ctx), S::zero_in(&ctx), S::one_in(&ctx)],
    ])
}
