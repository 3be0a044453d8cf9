use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::scalar::Scalar;
use super::text::{parse_terms, render_terms};
use super::{is_square_free, Rational, RingError};

/// The imaginary quadratic field `Q(√−d)` for a positive square-free `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RingSpec(u64);

impl RingSpec {
    pub fn new(d: u64) -> Result<Self, RingError> {
        if d >= 1 && is_square_free(d) {
            Ok(RingSpec(d))
        } else {
            Err(RingError::NotSquareFree(d))
        }
    }

    pub fn d(self) -> u64 {
        self.0
    }

    /// Whether `O_d` contains the half-integers `(p + q√−d)/2`, `p ≡ q (mod 2)`.
    pub fn has_half_integers(self) -> bool {
        self.0 % 4 == 3
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt(-{}))", self.0)
    }
}

/// `a + b·√−d`.
///
/// Elements carry their field; arithmetic between different fields is an
/// error ([`QuadElt::try_mul`]) and the operator impls panic on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElt {
    a: Rational,
    b: Rational,
    ring: RingSpec,
}

impl QuadElt {
    pub fn new(a: Rational, b: Rational, ring: RingSpec) -> Self {
        QuadElt { a, b, ring }
    }

    pub fn from_ints(a: i64, b: i64, ring: RingSpec) -> Self {
        QuadElt::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()), ring)
    }

    pub fn rational(a: Rational, ring: RingSpec) -> Self {
        QuadElt::new(a, Rational::zero(), ring)
    }

    /// `√−d` itself.
    pub fn sqrt_neg_d(ring: RingSpec) -> Self {
        QuadElt::new(Rational::zero(), Rational::one(), ring)
    }

    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `√−d` (not the imaginary part, which is `b·√d`).
    pub fn sqrt_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::MismatchedRing { left: self.ring.0, right: other.ring.0 })
        }
    }

    fn expect_same(&self, other: &Self) {
        if let Err(e) = self.check(other) {
            panic!("{e}");
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(QuadElt::new(&self.a + &other.a, &self.b + &other.b, self.ring))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let d = Rational::from_integer(BigInt::from(self.ring.0));
        let a = &self.a * &other.a - d * (&self.b * &other.b);
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadElt::new(a, b, self.ring))
    }

    pub fn conjugate(&self) -> Self {
        QuadElt::new(self.a.clone(), -&self.b, self.ring)
    }

    /// `a² + d·b²`.
    pub fn field_norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.ring.0));
        &self.a * &self.a + d * (&self.b * &self.b)
    }

    /// Membership in the ring of integers `O_d`.
    pub fn is_integral(&self) -> bool {
        if self.ring.has_half_integers() {
            let two = Rational::from_integer(BigInt::from(2));
            let p = &self.a * &two;
            let q = &self.b * &two;
            p.is_integer() && q.is_integer() && (p.numer() - q.numer()).is_even()
        } else {
            self.a.is_integer() && self.b.is_integer()
        }
    }

    pub fn parse(text: &str, ring: RingSpec) -> Result<Self, RingError> {
        let (a, [b]) = parse_terms(text, ['r'])?;
        Ok(QuadElt::new(a, b, ring))
    }
}

/// Exact product in `Q(√−d)`.
pub fn quad_mul(x: &QuadElt, y: &QuadElt) -> Result<QuadElt, RingError> {
    x.try_mul(y)
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.a, &[(&self.b, 'r')]))
    }
}

impl Serialize for QuadElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &QuadElt {
    type Output = QuadElt;
    fn add(self, rhs: &QuadElt) -> QuadElt {
        self.expect_same(rhs);
        QuadElt::new(&self.a + &rhs.a, &self.b + &rhs.b, self.ring)
    }
}

impl Sub for &QuadElt {
    type Output = QuadElt;
    fn sub(self, rhs: &QuadElt) -> QuadElt {
        self.expect_same(rhs);
        QuadElt::new(&self.a - &rhs.a, &self.b - &rhs.b, self.ring)
    }
}

impl Mul for &QuadElt {
    type Output = QuadElt;
    fn mul(self, rhs: &QuadElt) -> QuadElt {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt::new(-&self.a, -&self.b, self.ring)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(QuadElt, Add add, Sub sub, Mul mul);

impl Neg for QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        -&self
    }
}

impl Scalar for QuadElt {
    type Context = RingSpec;
    const COMMUTATIVE: bool = true;

    fn context(&self) -> RingSpec {
        self.ring
    }
    fn from_rational(q: Rational, ring: &RingSpec) -> Self {
        QuadElt::rational(q, *ring)
    }
    fn parse_in(text: &str, ring: &RingSpec) -> Result<Self, RingError> {
        QuadElt::parse(text, *ring)
    }
    fn vanishes(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn norm(&self) -> Rational {
        self.field_norm()
    }
    fn real_part(&self) -> Rational {
        self.a.clone()
    }
    fn is_real(&self) -> bool {
        self.b.is_zero()
    }
    fn scale(&self, q: &Rational) -> Self {
        QuadElt::new(&self.a * q, &self.b * q, self.ring)
    }
}
