use num_traits::One;

use super::{build_certificate, form_signature, sort_records, EigRecord, IsometryType, ReflectionCertificate, ReflectionError};
use crate::hermitian::{is_isometry, HermMatrix, HermVector};
use crate::linalg::kernel;
use crate::poly::{split_rational, Poly, SplitError};
use crate::rings::{rational_sqrt, QuadElt, Rational, RingSpec, Scalar};

/// `det(xI − A) = x³ − tr(A)x² + m₂(A)x − det(A)` where `m₂` is the sum of
/// principal 2×2 minors.
pub fn char_poly(a: &HermMatrix<QuadElt>) -> Poly<QuadElt> {
    let e = |i: usize, j: usize| a.entry(i, j);
    let minor = |i: usize, j: usize| e(i, i) * e(j, j) - e(i, j) * e(j, i);
    let trace = &(e(0, 0) + e(1, 1)) + e(2, 2);
    let m2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
    let det = &(&(e(0, 0) * &minor(1, 2)) - &(e(0, 1) * &(e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))))
        + &(e(0, 2) * &(e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0)));
    Poly::new(vec![-det, m2, -trace, a.entry(0, 0).one_like()])
}

fn split_error(e: SplitError, p: &Poly<QuadElt>) -> ReflectionError {
    match e {
        SplitError::Irreducible(_) => ReflectionError::IrreducibleFactor(render(p)),
        SplitError::Ring(r) => ReflectionError::Ring(r),
    }
}

fn render(p: &Poly<QuadElt>) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .map(|(k, c)| format!("({c})*x^{k}"))
        .collect();
    terms.join(" + ")
}

/// Roots of a polynomial over `Q(√−d)` that split it completely, with
/// multiplicities.
///
/// Any root in the field has a rational minimal polynomial of degree at most
/// two dividing `p·p̄ ∈ Q[x]`; the candidates come from splitting that norm
/// polynomial exactly.
pub fn eigenvalues(p: &Poly<QuadElt>, ring: RingSpec) -> Result<Vec<(QuadElt, usize)>, ReflectionError> {
    let degree = p.degree().unwrap_or(0);
    let norm_poly = p.mul(&p.conj());
    let rational: Vec<Rational> = norm_poly
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_real(), "p times its conjugate has non-real coefficient {c}");
            c.real_part()
        })
        .collect();
    let split = split_rational(&Poly::new(rational)).map_err(|e| split_error(e, p))?;

    let mut candidates: Vec<QuadElt> = split.rational.iter().map(|(r, _)| QuadElt::rational(r.clone(), ring)).collect();
    let d = Rational::from_integer(ring.d().into());
    for (pair, _) in &split.complex {
        let Some(c) = rational_sqrt(&(pair.imag_sq() / &d)) else {
            return Err(ReflectionError::IrreducibleFactor(render(p)));
        };
        let re = &pair.trace / Rational::from_integer(2.into());
        candidates.push(QuadElt::new(re.clone(), c.clone(), ring));
        candidates.push(QuadElt::new(re, -c, ring));
    }
    let roots: Vec<(QuadElt, usize)> = candidates
        .into_iter()
        .filter_map(|x| {
            let m = p.root_multiplicity(&x);
            (m > 0).then_some((x, m))
        })
        .collect();
    if roots.iter().map(|(_, m)| m).sum::<usize>() != degree {
        return Err(ReflectionError::IrreducibleFactor(render(p)));
    }
    Ok(roots)
}

/// One record per distinct eigenvalue of an isometry whose characteristic
/// polynomial splits over its coefficient field.
pub fn eigen_decompose(a: &HermMatrix<QuadElt>) -> Result<Vec<EigRecord<QuadElt>>, ReflectionError> {
    if !is_isometry(a) {
        return Err(ReflectionError::NotIsometry);
    }
    let ring = a.context();
    let roots = eigenvalues(&char_poly(a), ring)?;
    let mut records = Vec::with_capacity(roots.len());
    for (value, alg) in roots {
        let shifted = a.sub(&HermMatrix::identity(&ring).scale_right(&value)).to_mat();
        let basis: Vec<HermVector<QuadElt>> = kernel(&shifted, 3, &ring)
            .into_iter()
            .map(|v| HermVector([v[0].clone(), v[1].clone(), v[2].clone()]))
            .collect();
        let sig = form_signature(&basis);
        records.push(EigRecord {
            field_d: ring.d(),
            representative: value.clone(),
            value,
            multiplicity: basis.len(),
            algebraic_multiplicity: alg,
            basis,
            negative_type: sig.negative > 0,
            gram_signature: sig,
        });
    }
    sort_records(&mut records);
    Ok(records)
}

/// Complex reflection test: the negative-type eigenvalue has a
/// two-dimensional eigenspace and `A` is not scalar.
pub fn is_complex_reflection(a: &HermMatrix<QuadElt>) -> Result<ReflectionCertificate<QuadElt>, ReflectionError> {
    let records = eigen_decompose(a)?;
    Ok(build_certificate(records, a.as_scalar().is_some()))
}

/// Elliptic, parabolic or loxodromic, read off the eigenvalues.
///
/// Loxodromic when some eigenvalue has modulus other than one, elliptic when
/// the matrix is diagonalizable with a negative-type eigenvector, parabolic
/// otherwise. Scalar matrices are reported as `Identity`.
pub fn classify_isometry(a: &HermMatrix<QuadElt>) -> Result<IsometryType, ReflectionError> {
    let records = eigen_decompose(a)?;
    if a.as_scalar().is_some() {
        return Ok(IsometryType::Identity);
    }
    if records.iter().any(|r| !r.value.field_norm().is_one()) {
        return Ok(IsometryType::Loxodromic);
    }
    let diagonalizable = records.iter().map(|r| r.multiplicity).sum::<usize>() == 3;
    if diagonalizable && records.iter().any(|r| r.negative_type) {
        Ok(IsometryType::Elliptic)
    } else {
        Ok(IsometryType::Parabolic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{complex_generators, heisenberg_translation};
    use crate::rings::rat;

    fn ring(d: u64) -> RingSpec {
        RingSpec::new(d).unwrap()
    }

    fn gens(d: u64) -> (HermMatrix<QuadElt>, HermMatrix<QuadElt>) {
        let g = complex_generators(ring(d));
        (g[0].1.clone(), g[1].1.clone())
    }

    fn cp(roots: &[QuadElt]) -> Poly<QuadElt> {
        Poly::from_roots(roots, &roots[0].context())
    }

    #[test]
    fn characteristic_polynomials() {
        let r = ring(1);
        let one = QuadElt::from_ints(1, 0, r);
        let m1 = QuadElt::from_ints(-1, 0, r);
        let i = QuadElt::from_ints(0, 1, r);
        assert_eq!(char_poly(&HermMatrix::identity(&r)), cp(&[one.clone(), one.clone(), one.clone()]));
        let (i0, rm) = gens(1);
        assert_eq!(char_poly(&i0), cp(&[one.clone(), m1.clone(), m1]));
        assert_eq!(char_poly(&rm), cp(&[one.clone(), one, i]));
    }

    #[test]
    fn decomposition_of_i0() {
        let r = ring(7);
        let (i0, _) = gens(7);
        let recs = eigen_decompose(&i0).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].value, QuadElt::from_ints(-1, 0, r));
        assert_eq!(recs[0].multiplicity, 2);
        assert!(recs[0].negative_type);
        assert_eq!(recs[1].value, QuadElt::from_ints(1, 0, r));
        assert!(!recs[1].negative_type);
        // eigenspace is span{e₂, e₁ − e₃}
        let e13 = HermVector::new(QuadElt::from_ints(1, 0, r), QuadElt::from_ints(0, 0, r), QuadElt::from_ints(-1, 0, r));
        let e2 = HermVector::<QuadElt>::basis(1, &r);
        let mut m = recs[0].basis.iter().map(|b| b.0.to_vec()).collect::<Vec<_>>();
        m.push(e13.0.to_vec());
        m.push(e2.0.to_vec());
        // the four vectors span a 2-dimensional space
        let t: Vec<Vec<QuadElt>> = (0..3).map(|i| m.iter().map(|v| v[i].clone()).collect()).collect();
        assert_eq!(kernel(&t, 4, &r).len(), 2);
    }

    #[test]
    fn decomposition_of_r_and_identity() {
        let r = ring(1);
        let (_, rm) = gens(1);
        let recs = eigen_decompose(&rm).unwrap();
        assert_eq!(recs[0].value, QuadElt::from_ints(1, 0, r));
        assert_eq!((recs[0].multiplicity, recs[0].negative_type), (2, true));
        assert_eq!(recs[1].value, QuadElt::from_ints(0, 1, r));
        assert_eq!((recs[1].multiplicity, recs[1].negative_type), (1, false));

        let recs = eigen_decompose(&HermMatrix::identity(&r)).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!((recs[0].multiplicity, recs[0].negative_type), (3, true));
    }

    #[test]
    fn reflection_verdicts() {
        for d in [1, 2, 3, 7, 11] {
            let (i0, rm) = gens(d);
            for m in [&i0, &rm] {
                let cert = is_complex_reflection(m).unwrap();
                assert!(cert.is_reflection, "d={d} {m}");
                assert_eq!(cert.mirror.unwrap().multiplicity, 2);
            }
        }
        let (i0, rm) = gens(7);
        let prod = i0.mul(&rm);
        let cert = is_complex_reflection(&prod).unwrap();
        assert!(!cert.is_reflection);
        let neg: Vec<_> = cert.eigenvalues.iter().filter(|r| r.negative_type).collect();
        assert_eq!(neg.len(), 1);
        assert_eq!(neg[0].multiplicity, 1);
        assert!(!is_complex_reflection(&HermMatrix::identity(&ring(2))).unwrap().is_reflection);
    }

    #[test]
    fn not_isometry_and_irreducible() {
        let r = ring(1);
        let bad = HermMatrix::diagonal([QuadElt::from_ints(2, 0, r), QuadElt::from_ints(1, 0, r), QuadElt::from_ints(1, 0, r)]);
        assert_eq!(eigen_decompose(&bad), Err(ReflectionError::NotIsometry));
        // I₀·T(0, i) has the factor x² − ix − 1, irreducible over Q(i)
        let (i0, _) = gens(1);
        let p = i0.mul(&heisenberg_translation(&QuadElt::from_ints(0, 0, r), &QuadElt::from_ints(0, 1, r)));
        assert!(matches!(eigen_decompose(&p), Err(ReflectionError::IrreducibleFactor(_))));
    }

    #[test]
    fn isometry_types() {
        let r = ring(2);
        let (i0, _) = gens(2);
        assert_eq!(classify_isometry(&i0), Ok(IsometryType::Elliptic));
        let t = heisenberg_translation(&QuadElt::from_ints(0, 0, r), &QuadElt::from_ints(0, 1, r));
        assert_eq!(classify_isometry(&t), Ok(IsometryType::Parabolic));
        let t = heisenberg_translation(&QuadElt::from_ints(1, 1, r), &QuadElt::from_ints(0, 0, r));
        assert_eq!(classify_isometry(&t), Ok(IsometryType::Parabolic));
        let lox = HermMatrix::diagonal([QuadElt::from_ints(2, 0, r), QuadElt::from_ints(1, 0, r), QuadElt::rational(rat(1, 2), r)]);
        assert_eq!(classify_isometry(&lox), Ok(IsometryType::Loxodromic));
        assert_eq!(classify_isometry(&HermMatrix::identity(&r)), Ok(IsometryType::Identity));
    }
}
