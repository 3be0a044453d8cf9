//! Univariate polynomials over a [`Scalar`] domain, and exact splitting of
//! rational polynomials into rational roots and irreducible quadratics with
//! complex roots.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rings::{divisors, Rational, RingError, Scalar};

/// Coefficients from the constant term up; never has a trailing zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.vanishes()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `∏ (x − r)`.
    pub fn from_roots(roots: &[S], ctx: &S::Context) -> Self {
        let mut p = Poly::new(vec![S::one_in(ctx)]);
        for r in roots {
            p = p.mul(&Poly::new(vec![r.neg_ref(), S::one_in(ctx)]));
        }
        p
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::new(vec![]);
        }
        let ctx = self.coeffs[0].context();
        let mut out = vec![S::zero_in(&ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }

    pub fn conj(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Synthetic division by `x − r`; returns the quotient when the
    /// remainder vanishes.
    pub fn deflate(&self, r: &S) -> Option<Self> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![r.zero_like(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            q[i] = carry.clone();
            carry = self.coeffs[i].add_ref(&carry.mul_ref(r));
        }
        carry.vanishes().then(|| Poly::new(q))
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &S) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.deflate(r) {
            p = q;
            m += 1;
        }
        m
    }
}

impl Poly<Rational> {
    /// Exact division by a monic divisor; `None` unless it divides evenly.
    pub fn divide_exact(&self, divisor: &Poly<Rational>) -> Option<Self> {
        let dd = divisor.degree()?;
        debug_assert!(divisor.coeffs[dd].is_one());
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rational::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = rem[i + dd].clone();
            if !c.is_zero() {
                for (k, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + k] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Poly::new(q))
    }

    pub fn monic(&self) -> Self {
        let lead = self.coeffs.last().expect("nonzero polynomial").clone();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }
}

/// Irreducible quadratic `x² − trace·x + norm` with non-real roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexPair {
    pub trace: Rational,
    pub norm: Rational,
}

impl ComplexPair {
    /// `norm − trace²/4`, the squared imaginary part of either root.
    pub fn imag_sq(&self) -> Rational {
        &self.norm - &self.trace * &self.trace / Rational::from_integer(4.into())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Splitting {
    pub rational: Vec<(Rational, usize)>,
    pub complex: Vec<(ComplexPair, usize)>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("polynomial has an irreducible factor of degree {0} with no rational or quadratic-imaginary split")]
    Irreducible(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn int(q: &Rational) -> BigInt {
    debug_assert!(q.is_integer());
    q.to_integer()
}

/// Splits a nonzero rational polynomial into rational linear factors and
/// irreducible quadratics with complex roots. Fails when some irreducible
/// factor is of another kind.
///
/// The monic polynomial is rescaled to `D^n·p(y/D)` with integer
/// coefficients, whose rational roots are integer divisors of the constant
/// term and whose monic quadratic factors `y² − ty + n` have `n` dividing it
/// and `t² < 4n`.
pub fn split_rational(p: &Poly<Rational>) -> Result<Splitting, SplitError> {
    let p = p.monic();
    let n = p.degree().expect("nonzero");
    let scale = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale_q = Rational::from_integer(scale.clone());
    let coeffs: Vec<Rational> = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * scale_q.pow((n - k) as i32))
        .collect();
    let mut q = Poly::new(coeffs);
    let mut out = Splitting::default();

    let zero_mult = q.root_multiplicity(&Rational::zero());
    if zero_mult > 0 {
        q = Poly::new(q.coeffs[zero_mult..].to_vec());
        out.rational.push((Rational::zero(), zero_mult));
    }
    if q.degree() == Some(0) {
        return Ok(out);
    }

    let c0: BigUint = int(&q.coeffs[0]).magnitude().clone();
    for d in divisors(&c0)? {
        for s in [BigInt::from(d.clone()), -BigInt::from(d)] {
            let r = Rational::from_integer(s);
            let m = q.root_multiplicity(&r);
            if m > 0 {
                for _ in 0..m {
                    q = q.deflate(&r).unwrap();
                }
                out.rational.push((r / &scale_q, m));
            }
        }
    }

    while q.degree().is_some_and(|d| d >= 2) {
        let c0 = int(&q.coeffs[0]);
        if !c0.is_positive() {
            break;
        }
        let mut found = false;
        'search: for nn in divisors(c0.magnitude())? {
            let nn = BigInt::from(nn);
            let tmax: BigInt = (BigInt::from(4) * &nn).sqrt();
            let mut t = -tmax.clone();
            while t <= tmax {
                if &t * &t < BigInt::from(4) * &nn {
                    let quad = Poly::new(vec![
                        Rational::from_integer(nn.clone()),
                        Rational::from_integer(-t.clone()),
                        Rational::one(),
                    ]);
                    if let Some(rest) = q.divide_exact(&quad) {
                        let mut m = 1;
                        q = rest;
                        while let Some(rest) = q.divide_exact(&quad) {
                            q = rest;
                            m += 1;
                        }
                        let pair = ComplexPair {
                            trace: Rational::from_integer(t.clone()) / &scale_q,
                            norm: Rational::from_integer(nn.clone()) / (&scale_q * &scale_q),
                        };
                        out.complex.push((pair, m));
                        found = true;
                        break 'search;
                    }
                }
                t += 1;
            }
        }
        if !found {
            break;
        }
    }

    match q.degree() {
        Some(0) => Ok(out),
        Some(d) => Err(SplitError::Irreducible(d)),
        None => unreachable!("division of a nonzero polynomial"),
    }
}
