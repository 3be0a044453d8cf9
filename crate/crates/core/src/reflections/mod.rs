//! Exact eigen-analysis of isometries of the Siegel form and the complex and
//! quaternionic reflection predicates.
//!
//! An elliptic isometry is a reflection exactly when its negative-type
//! eigenvalue (the one whose eigenspace meets the negative cone) has a
//! two-dimensional eigenspace.

mod complex;
mod quaternion;

pub use complex::{char_poly, classify_isometry, eigen_decompose, eigenvalues, is_complex_reflection};
pub use quaternion::{
    candidate_classes, complex_adjoint, is_quaternionic_reflection, quaternion_eigen_decompose,
    rational_representative, right_eigenspace, RightEigenspace,
};

use serde::Serialize;
use thiserror::Error;

use crate::hermitian::{inner_unchecked, AnyMatrix, HermMatrix, HermVector};
use crate::linalg::{signature, Mat, Signature};
use crate::rings::{QuadElt, RingError, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReflectionError {
    #[error("matrix does not preserve the Siegel form")]
    NotIsometry,
    #[error("characteristic polynomial does not split over the coefficient field: {0}")]
    IrreducibleFactor(String),
    #[error("right-eigenvalue candidate outside Q or an imaginary quadratic field: {0}")]
    CandidateOutsideQuadraticField(String),
    #[error("eigenvalue class {0} has no rational quaternion representative")]
    NoRationalRepresentative(String),
    #[error("eigenvalue representative {0} must have non-negative imaginary part")]
    NonCanonicalEigenvalue(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// One eigenvalue (or right-eigenvalue similarity class) of an isometry.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar + Serialize"))]
pub struct EigRecord<S> {
    /// The eigenvalue, or for quaternionic matrices the representative of its
    /// class with non-negative imaginary part, in `Q(√−field_d)`.
    pub value: QuadElt,
    pub field_d: u64,
    /// Every basis vector satisfies `Av = v·representative`.
    pub representative: S,
    /// Dimension of the eigenspace (quaternionic dimension of its span in the
    /// quaternionic case); equals `basis.len()`.
    pub multiplicity: usize,
    pub algebraic_multiplicity: usize,
    pub basis: Vec<HermVector<S>>,
    pub negative_type: bool,
    pub gram_signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar + Serialize"))]
pub struct ReflectionCertificate<S> {
    pub is_reflection: bool,
    /// The negative-type eigenvalue whose eigenspace projects to the mirror.
    pub mirror: Option<EigRecord<S>>,
    pub eigenvalues: Vec<EigRecord<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryType {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// Gram matrix `G[i][j] = ⟨b_j, b_i⟩` of the form on a list of vectors.
pub fn gram<S: Scalar>(basis: &[HermVector<S>]) -> Mat<S> {
    basis
        .iter()
        .map(|bi| basis.iter().map(|bj| inner_unchecked(bj, bi)).collect())
        .collect()
}

pub(crate) fn form_signature<S: Scalar>(basis: &[HermVector<S>]) -> Signature {
    if basis.is_empty() {
        return Signature { positive: 0, negative: 0, null: 0 };
    }
    signature(&gram(basis))
}

pub(crate) fn build_certificate<S: Scalar>(records: Vec<EigRecord<S>>, scalar: bool) -> ReflectionCertificate<S> {
    let mirror = records.iter().find(|r| r.negative_type && r.multiplicity == 2).cloned();
    ReflectionCertificate { is_reflection: mirror.is_some() && !scalar, mirror, eigenvalues: records }
}

pub(crate) fn sort_records<S>(records: &mut [EigRecord<S>]) {
    records.sort_by(|x, y| {
        y.negative_type
            .cmp(&x.negative_type)
            .then_with(|| x.field_d.cmp(&y.field_d))
            .then_with(|| x.value.re().cmp(y.value.re()))
            .then_with(|| x.value.sqrt_coeff().cmp(y.value.sqrt_coeff()))
    });
}

/// Smallest `k ≤ max` with `A^k` a scalar matrix, i.e. the order of `A` in
/// the projective group.
pub fn order_mod_scalars<S: Scalar>(a: &HermMatrix<S>, max: u32) -> Option<u32> {
    let mut p = a.clone();
    for k in 1..=max {
        if p.as_scalar().is_some() {
            return Some(k);
        }
        p = p.mul(a);
    }
    None
}

/// A certificate for a matrix in either domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AnyCertificate {
    Complex(ReflectionCertificate<QuadElt>),
    Quaternionic(ReflectionCertificate<crate::rings::QuatElt>),
}

impl AnyCertificate {
    pub fn is_reflection(&self) -> bool {
        match self {
            AnyCertificate::Complex(c) => c.is_reflection,
            AnyCertificate::Quaternionic(c) => c.is_reflection,
        }
    }

    pub fn mirror_multiplicity(&self) -> Option<usize> {
        match self {
            AnyCertificate::Complex(c) => c.mirror.as_ref().map(|m| m.multiplicity),
            AnyCertificate::Quaternionic(c) => c.mirror.as_ref().map(|m| m.multiplicity),
        }
    }
}

pub fn certify(matrix: &AnyMatrix) -> Result<AnyCertificate, ReflectionError> {
    Ok(match matrix {
        AnyMatrix::Complex(m) => AnyCertificate::Complex(is_complex_reflection(m)?),
        AnyMatrix::Quaternionic(m) => AnyCertificate::Quaternionic(is_quaternionic_reflection(m)?),
    })
}
