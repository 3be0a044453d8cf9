use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{build_certificate, form_signature, sort_records, EigRecord, ReflectionCertificate, ReflectionError};
use crate::hermitian::{is_isometry, HermMatrix, HermVector};
use crate::linalg::{char_poly_leverrier, kernel, right_independent, Mat};
use crate::poly::{split_rational, Poly, SplitError};
use crate::rings::{square_free_part, QuadElt, QuatElt, Rational, RingError, RingSpec, Scalar, FACTOR_LIMIT};

fn gaussian() -> RingSpec {
    RingSpec::new(1).expect("1 is square-free")
}

/// The 6×6 complex adjoint `[[A₁, A₂], [−Ā₂, Ā₁]]` of `A = A₁ + A₂j`, with
/// entries in `Q(i)`. Its eigenvalues are the right eigenvalues of `A`.
pub fn complex_adjoint(a: &HermMatrix<QuatElt>) -> Mat<QuadElt> {
    let g = gaussian();
    let mut m = vec![vec![QuadElt::from_ints(0, 0, g); 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            let q = a.entry(i, j);
            let z1 = QuadElt::new(q.w.clone(), q.x.clone(), g);
            let z2 = QuadElt::new(q.y.clone(), q.z.clone(), g);
            m[i][j] = z1.clone();
            m[i][j + 3] = z2.clone();
            m[i + 3][j] = -z2.conjugate();
            m[i + 3][j + 3] = z1.conjugate();
        }
    }
    m
}

/// Right-eigenvalue similarity classes of `A` with their (quaternionic)
/// algebraic multiplicities. Each class is represented by the root of the
/// adjoint characteristic polynomial with non-negative imaginary part,
/// written in `Q(√−d)` for the `d` it needs.
pub fn candidate_classes(a: &HermMatrix<QuatElt>) -> Result<Vec<(QuadElt, usize)>, ReflectionError> {
    let coeffs: Vec<Rational> = char_poly_leverrier(&complex_adjoint(a))
        .into_iter()
        .map(|c| {
            assert!(c.is_real(), "complex adjoint characteristic polynomial is not real");
            c.real_part()
        })
        .collect();
    let p = Poly::new(coeffs);
    let split = split_rational(&p).map_err(|e| match e {
        SplitError::Irreducible(_) => ReflectionError::CandidateOutsideQuadraticField(format!("{:?}", p.coeffs())),
        SplitError::Ring(r) => ReflectionError::Ring(r),
    })?;
    let mut out = Vec::new();
    for (r, m) in split.rational {
        if m % 2 != 0 {
            return Err(ReflectionError::Inconsistent(format!("real root {r} with odd multiplicity {m}")));
        }
        out.push((QuadElt::rational(r, gaussian()), m / 2));
    }
    for (pair, m) in split.complex {
        let im = pair.imag_sq();
        let num = im.numer().magnitude() * im.denom().magnitude();
        let (s, f) = square_free_part(&num)?;
        let d = s.to_u64().ok_or_else(|| RingError::TooLarge(s.to_string()))?;
        let ring = RingSpec::new(d)?;
        let coeff = Rational::new(f.into(), im.denom().clone());
        let re = &pair.trace / Rational::from_integer(2.into());
        out.push((QuadElt::new(re, coeff, ring), m));
    }
    Ok(out)
}

/// A rational quaternion similar to `λ = a + b√−d`: real part `a` and pure
/// part of squared norm `b²d`, found as a sum of three rational squares.
pub fn rational_representative(lambda: &QuadElt) -> Result<QuatElt, ReflectionError> {
    if lambda.sqrt_coeff().is_negative() {
        return Err(ReflectionError::NonCanonicalEigenvalue(lambda.to_string()));
    }
    let re = lambda.re().clone();
    if lambda.sqrt_coeff().is_zero() {
        return Ok(QuatElt::real(re));
    }
    let b = lambda.sqrt_coeff();
    let m = b * b * Rational::from_integer(lambda.ring().d().into());
    // m = p/q = (pq)/q²: look for X² + Y² + Z² = pq
    let n: BigUint = m.numer().magnitude() * m.denom().magnitude();
    let n = n
        .to_u64()
        .filter(|&v| v <= FACTOR_LIMIT)
        .ok_or_else(|| ReflectionError::Ring(RingError::TooLarge(n.to_string())))?;
    let q = m.denom().clone();
    let square_root = |v: u64| {
        let r = v.sqrt();
        (r * r == v).then_some(r)
    };
    let mut x = n.sqrt();
    loop {
        let rest = n - x * x;
        let mut y = rest.sqrt().min(x);
        loop {
            if let Some(z) = square_root(rest - y * y) {
                if z <= y {
                    let c = |v: u64| Rational::new(v.into(), q.clone());
                    return Ok(QuatElt::new(re, c(x), c(y), c(z)));
                }
            }
            if y == 0 || y * y * 2 < rest {
                break;
            }
            y -= 1;
        }
        if x == 0 || 3 * x * x < n {
            break;
        }
        x -= 1;
    }
    Err(ReflectionError::NoRationalRepresentative(lambda.to_string()))
}

fn coords_matrix(f: impl Fn(&QuatElt) -> QuatElt) -> [[Rational; 4]; 4] {
    let basis = [QuatElt::from_ints(1, 0, 0, 0), QuatElt::i(), QuatElt::j(), QuatElt::k()];
    let cols: Vec<QuatElt> = basis.iter().map(f).collect();
    std::array::from_fn(|r| std::array::from_fn(|c| cols[c].coords()[r].clone()))
}

/// Solution space of `Av = vλ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RightEigenspace {
    pub representative: QuatElt,
    pub real_dimension: usize,
    /// Quaternionic dimension of the right span of the solutions.
    pub multiplicity: usize,
    pub basis: Vec<HermVector<QuatElt>>,
}

/// Solves `Av = vλ` as a rational linear system in the twelve coordinates
/// of `v`, using a rational quaternion representative of `λ`'s class.
///
/// For real `λ` the solutions form a quaternionic subspace and the
/// multiplicity is the rational dimension over four. For non-real `λ` they
/// are closed only under right multiplication by the centralizer of `λ`, a
/// copy of `C`, and the multiplicity is the dimension over two.
pub fn right_eigenspace(a: &HermMatrix<QuatElt>, lambda: &QuadElt) -> Result<RightEigenspace, ReflectionError> {
    let rep = rational_representative(lambda)?;
    let right = coords_matrix(|p| p * &rep);
    let mut m: Mat<Rational> = vec![vec![Rational::zero(); 12]; 12];
    for i in 0..3 {
        for j in 0..3 {
            let left = coords_matrix(|p| a.entry(i, j) * p);
            for r in 0..4 {
                for c in 0..4 {
                    let mut v = left[r][c].clone();
                    if i == j {
                        v -= &right[r][c];
                    }
                    m[4 * i + r][4 * j + c] = v;
                }
            }
        }
    }
    let ker = kernel(&m, 12, &());
    let dim = ker.len();
    let per = if rep.is_real() { 4 } else { 2 };
    if !dim.is_multiple_of(per) {
        return Err(ReflectionError::Inconsistent(format!("kernel dimension {dim} for {lambda}")));
    }
    let multiplicity = dim / per;
    let vectors: Vec<Vec<QuatElt>> = ker
        .iter()
        .map(|v| (0..3).map(|i| QuatElt::from_coords(std::array::from_fn(|c| v[4 * i + c].clone()))).collect())
        .collect();
    let basis: Vec<HermVector<QuatElt>> = right_independent(&vectors)
        .into_iter()
        .map(|k| HermVector([vectors[k][0].clone(), vectors[k][1].clone(), vectors[k][2].clone()]))
        .collect();
    if basis.len() != multiplicity {
        return Err(ReflectionError::Inconsistent(format!(
            "{} independent eigenvectors for multiplicity {multiplicity}",
            basis.len()
        )));
    }
    Ok(RightEigenspace { representative: rep, real_dimension: dim, multiplicity, basis })
}

/// One record per right-eigenvalue class.
pub fn quaternion_eigen_decompose(a: &HermMatrix<QuatElt>) -> Result<Vec<EigRecord<QuatElt>>, ReflectionError> {
    if !is_isometry(a) {
        return Err(ReflectionError::NotIsometry);
    }
    let mut records = Vec::new();
    for (value, alg) in candidate_classes(a)? {
        let space = right_eigenspace(a, &value)?;
        let sig = form_signature(&space.basis);
        records.push(EigRecord {
            field_d: value.ring().d(),
            value,
            representative: space.representative,
            multiplicity: space.multiplicity,
            algebraic_multiplicity: alg,
            basis: space.basis,
            negative_type: sig.negative > 0,
            gram_signature: sig,
        });
    }
    sort_records(&mut records);
    Ok(records)
}

/// Quaternionic reflection test: some right-eigenvalue class spans a
/// two-dimensional quaternionic subspace containing a negative vector.
pub fn is_quaternionic_reflection(a: &HermMatrix<QuatElt>) -> Result<ReflectionCertificate<QuatElt>, ReflectionError> {
    let records = quaternion_eigen_decompose(a)?;
    let scalar = a.as_scalar().is_some_and(|s| s.is_real());
    Ok(build_certificate(records, scalar))
}
