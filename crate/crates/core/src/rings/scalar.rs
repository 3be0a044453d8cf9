use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, RingError};

/// Common interface of the coefficient domains used by the Hermitian linear
/// algebra: the rationals, `Q(√−d)` and the rational quaternions.
///
/// Multiplication need not commute. Every operation is exact.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Data needed to build constants in the same domain (the `d` of
    /// `Q(√−d)`, nothing for the other domains).
    type Context: Clone + PartialEq + fmt::Debug + Send + Sync;

    const COMMUTATIVE: bool;

    fn context(&self) -> Self::Context;
    fn from_rational(q: Rational, ctx: &Self::Context) -> Self;
    fn parse_in(text: &str, ctx: &Self::Context) -> Result<Self, RingError>;

    fn vanishes(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn conj(&self) -> Self;
    /// `x · conj(x)`, a non-negative rational.
    fn norm(&self) -> Rational;
    fn real_part(&self) -> Rational;
    fn is_real(&self) -> bool;

    fn zero_in(ctx: &Self::Context) -> Self {
        Self::from_rational(Rational::zero(), ctx)
    }

    fn one_in(ctx: &Self::Context) -> Self {
        Self::from_rational(Rational::one(), ctx)
    }

    fn zero_like(&self) -> Self {
        Self::zero_in(&self.context())
    }

    fn one_like(&self) -> Self {
        Self::one_in(&self.context())
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(q.clone(), &self.context()))
    }

    fn inverse(&self) -> Option<Self> {
        if self.vanishes() {
            return None;
        }
        Some(self.conj().scale(&self.norm().recip()))
    }

    fn is_unity(&self) -> bool {
        *self == self.one_like()
    }
}

impl Scalar for Rational {
    type Context = ();
    const COMMUTATIVE: bool = true;

    fn context(&self) {}

    fn from_rational(q: Rational, _: &()) -> Self {
        q
    }

    fn parse_in(text: &str, _: &()) -> Result<Self, RingError> {
        let (re, _) = super::text::parse_terms::<0>(text, [])?;
        Ok(re)
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
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
        self.clone()
    }
    fn norm(&self) -> Rational {
        self * self
    }
    fn real_part(&self) -> Rational {
        self.clone()
    }
    fn is_real(&self) -> bool {
        true
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}
