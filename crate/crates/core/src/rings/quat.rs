use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::scalar::Scalar;
use super::text::{parse_terms, render_terms};
use super::{rat, Rational, RingError};

/// A rational quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuatElt {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl QuatElt {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        QuatElt { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        QuatElt::new(rat(w, 1), rat(x, 1), rat(y, 1), rat(z, 1))
    }

    pub fn real(w: Rational) -> Self {
        QuatElt::new(w, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        QuatElt::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        QuatElt::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        QuatElt::from_ints(0, 0, 0, 1)
    }

    /// `σ = (1 + i + j + k)/2`.
    pub fn sigma() -> Self {
        let h = rat(1, 2);
        QuatElt::new(h.clone(), h.clone(), h.clone(), h)
    }

    pub fn coords(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn from_coords(c: [Rational; 4]) -> Self {
        let [w, x, y, z] = c;
        QuatElt::new(w, x, y, z)
    }

    pub fn conjugate(&self) -> Self {
        QuatElt::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Reduced norm `w² + x² + y² + z²`.
    pub fn reduced_norm(&self) -> Rational {
        self.coords().iter().map(|c| *c * *c).sum()
    }

    /// Squared norm of the pure part `x² + y² + z²`.
    pub fn imag_norm(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    /// Membership in the Hurwitz order: all coordinates integers, or all
    /// coordinates halves of odd integers.
    pub fn is_hurwitz(&self) -> bool {
        let coords = self.coords();
        if coords.iter().all(|c| c.is_integer()) {
            return true;
        }
        let half = rat(1, 2);
        coords.iter().all(|c| (*c - &half).is_integer())
    }

    pub fn parse(text: &str) -> Result<Self, RingError> {
        let (w, [x, y, z]) = parse_terms(text, ['i', 'j', 'k'])?;
        Ok(QuatElt::new(w, x, y, z))
    }
}

/// Hamilton product.
pub fn quat_mul(p: &QuatElt, q: &QuatElt) -> QuatElt {
    let (a1, b1, c1, d1) = (&p.w, &p.x, &p.y, &p.z);
    let (a2, b2, c2, d2) = (&q.w, &q.x, &q.y, &q.z);
    QuatElt::new(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )
}

impl fmt::Display for QuatElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.w, &[(&self.x, 'i'), (&self.y, 'j'), (&self.z, 'k')]))
    }
}

impl Serialize for QuatElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &QuatElt {
    type Output = QuatElt;
    fn add(self, r: &QuatElt) -> QuatElt {
        QuatElt::new(&self.w + &r.w, &self.x + &r.x, &self.y + &r.y, &self.z + &r.z)
    }
}

impl Sub for &QuatElt {
    type Output = QuatElt;
    fn sub(self, r: &QuatElt) -> QuatElt {
        QuatElt::new(&self.w - &r.w, &self.x - &r.x, &self.y - &r.y, &self.z - &r.z)
    }
}

impl Mul for &QuatElt {
    type Output = QuatElt;
    fn mul(self, r: &QuatElt) -> QuatElt {
        quat_mul(self, r)
    }
}

impl Neg for &QuatElt {
    type Output = QuatElt;
    fn neg(self) -> QuatElt {
        QuatElt::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Add for QuatElt {
    type Output = QuatElt;
    fn add(self, r: QuatElt) -> QuatElt {
        &self + &r
    }
}

impl Sub for QuatElt {
    type Output = QuatElt;
    fn sub(self, r: QuatElt) -> QuatElt {
        &self - &r
    }
}

impl Mul for QuatElt {
    type Output = QuatElt;
    fn mul(self, r: QuatElt) -> QuatElt {
        quat_mul(&self, &r)
    }
}

impl Neg for QuatElt {
    type Output = QuatElt;
    fn neg(self) -> QuatElt {
        -&self
    }
}

impl Scalar for QuatElt {
    type Context = ();
    const COMMUTATIVE: bool = false;

    fn context(&self) {}
    fn from_rational(q: Rational, _: &()) -> Self {
        QuatElt::real(q)
    }
    fn parse_in(text: &str, _: &()) -> Result<Self, RingError> {
        QuatElt::parse(text)
    }
    fn vanishes(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        quat_mul(self, other)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn norm(&self) -> Rational {
        self.reduced_norm()
    }
    fn real_part(&self) -> Rational {
        self.w.clone()
    }
    fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
    fn scale(&self, q: &Rational) -> Self {
        QuatElt::new(&self.w * q, &self.x * q, &self.y * q, &self.z * q)
    }
    fn is_unity(&self) -> bool {
        self.is_real() && self.w.is_one()
    }
}
