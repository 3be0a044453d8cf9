#![allow(dead_code)]

pub mod groups;

use hyperrefl::hermitian::{
    complex_generators, heisenberg_translation, is_isometry, point_type, quaternionic_generators, HermMatrix, HermVector,
    PointType,
};
use hyperrefl::rings::{QuadElt, QuatElt, Rational, RingSpec};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RINGS: [u64; 5] = [1, 2, 3, 7, 11];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(d: u64) -> RingSpec {
    RingSpec::new(d).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rand_rational<R: Rng>(r: &mut R) -> Rational {
    q(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn rand_nonzero_rational<R: Rng>(r: &mut R) -> Rational {
    loop {
        let x = rand_rational(r);
        if x != q(0, 1) {
            return x;
        }
    }
}

pub fn rand_quad<R: Rng>(r: &mut R, ring: RingSpec) -> QuadElt {
    QuadElt::new(rand_rational(r), rand_rational(r), ring)
}

pub fn rand_nonzero_quad<R: Rng>(r: &mut R, ring: RingSpec) -> QuadElt {
    QuadElt::new(rand_nonzero_rational(r), rand_rational(r), ring)
}

pub fn rand_quat<R: Rng>(r: &mut R) -> QuatElt {
    QuatElt::new(rand_rational(r), rand_rational(r), rand_rational(r), rand_rational(r))
}

pub fn rand_nonzero_quat<R: Rng>(r: &mut R) -> QuatElt {
    QuatElt::new(rand_nonzero_rational(r), rand_rational(r), rand_rational(r), rand_rational(r))
}

/// An integral element of `O_d`.
pub fn rand_integral_quad<R: Rng>(r: &mut R, ring: RingSpec) -> QuadElt {
    let (a, b) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
    if ring.has_half_integers() && r.gen_bool(0.5) {
        QuadElt::new(q(2 * a + 1, 2), q(2 * b + 1, 2), ring)
    } else {
        QuadElt::from_ints(a, b, ring)
    }
}

pub fn rand_hurwitz<R: Rng>(r: &mut R) -> QuatElt {
    let mut c = [0i64; 4];
    for x in &mut c {
        *x = r.gen_range(-2..=2);
    }
    if r.gen_bool(0.5) {
        QuatElt::new(q(2 * c[0] + 1, 2), q(2 * c[1] + 1, 2), q(2 * c[2] + 1, 2), q(2 * c[3] + 1, 2))
    } else {
        QuatElt::from_ints(c[0], c[1], c[2], c[3])
    }
}

/// Integral Heisenberg translation: the corner `−|z|²/2 + s` lies in the
/// ring once `s` has the right parity.
pub fn rand_complex_translation<R: Rng>(r: &mut R, ring: RingSpec) -> HermMatrix<QuadElt> {
    let t = r.gen_range(-2..=2);
    let z = rand_integral_quad(r, ring);
    let odd = (z.field_norm() * q(1, 2)).denom() != &BigInt::from(1);
    match (odd, ring.has_half_integers()) {
        (false, _) => heisenberg_translation(&z, &QuadElt::from_ints(0, t, ring)),
        (true, true) => heisenberg_translation(&z, &QuadElt::new(q(0, 1), q(2 * t + 1, 2), ring)),
        (true, false) => heisenberg_translation(&QuadElt::from_ints(0, 0, ring), &QuadElt::from_ints(0, t, ring)),
    }
}

pub fn rand_quat_translation<R: Rng>(r: &mut R) -> HermMatrix<QuatElt> {
    let z = rand_hurwitz(r);
    let odd = (z.reduced_norm() * q(1, 2)).denom() != &BigInt::from(1);
    let mut c = [0i64; 3];
    for x in &mut c {
        *x = r.gen_range(-2..=2);
    }
    let s = if odd {
        QuatElt::new(q(0, 1), q(2 * c[0] + 1, 2), q(2 * c[1] + 1, 2), q(2 * c[2] + 1, 2))
    } else {
        QuatElt::from_ints(0, c[0], c[1], c[2])
    };
    heisenberg_translation(&z, &s)
}

/// A random lattice element: a short word in the generators and integral
/// Heisenberg translations.
pub fn rand_complex_isometry<R: Rng>(r: &mut R, ring: RingSpec) -> HermMatrix<QuadElt> {
    let gens: Vec<HermMatrix<QuadElt>> = complex_generators(ring).into_iter().map(|(_, m)| m).collect();
    let mut m = HermMatrix::identity(&ring);
    for _ in 0..r.gen_range(1..=4) {
        let step = if r.gen_bool(0.5) { gens[r.gen_range(0..gens.len())].clone() } else { rand_complex_translation(r, ring) };
        m = m.mul(&step);
    }
    assert!(is_isometry(&m));
    m
}

pub fn rand_quat_isometry<R: Rng>(r: &mut R) -> HermMatrix<QuatElt> {
    let gens: Vec<HermMatrix<QuatElt>> = quaternionic_generators().into_iter().map(|(_, m)| m).collect();
    let mut m = HermMatrix::identity(&());
    for _ in 0..r.gen_range(1..=4) {
        let step = if r.gen_bool(0.5) { gens[r.gen_range(0..gens.len())].clone() } else { rand_quat_translation(r) };
        m = m.mul(&step);
    }
    assert!(is_isometry(&m));
    m
}

pub fn rand_quad_vector<R: Rng>(r: &mut R, ring: RingSpec) -> HermVector<QuadElt> {
    HermVector::new(rand_quad(r, ring), rand_quad(r, ring), rand_quad(r, ring))
}

pub fn rand_quat_vector<R: Rng>(r: &mut R) -> HermVector<QuatElt> {
    HermVector::new(rand_quat(r), rand_quat(r), rand_quat(r))
}

/// Units of `O_d`.
pub fn units(ring: RingSpec) -> Vec<QuadElt> {
    let mut u = vec![QuadElt::from_ints(1, 0, ring), QuadElt::from_ints(-1, 0, ring)];
    match ring.d() {
        1 => u.extend([QuadElt::from_ints(0, 1, ring), QuadElt::from_ints(0, -1, ring)]),
        3 => {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                u.push(QuadElt::new(q(a, 2), q(b, 2), ring));
            }
        }
        _ => {}
    }
    u
}

/// A random vector with `⟨z,z⟩ < 0`.
pub fn rand_negative_quad_vector<R: Rng>(r: &mut R, ring: RingSpec) -> HermVector<QuadElt> {
    loop {
        let v = rand_quad_vector(r, ring);
        if point_type(&v) == Ok(PointType::Negative) {
            return v;
        }
    }
}

pub fn rand_negative_quat_vector<R: Rng>(r: &mut R) -> HermVector<QuatElt> {
    loop {
        let v = rand_quat_vector(r);
        if point_type(&v) == Ok(PointType::Negative) {
            return v;
        }
    }
}
