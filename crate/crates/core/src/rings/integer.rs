use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::RingError;

/// Largest integer the trial-division helpers will factor.
pub const FACTOR_LIMIT: u64 = 100_000_000_000_000;

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn small(n: &BigUint) -> Result<u64, RingError> {
    match n.to_u64() {
        Some(v) if v <= FACTOR_LIMIT => Ok(v),
        _ => Err(RingError::TooLarge(n.to_string())),
    }
}

/// All positive divisors of `n > 0`, ascending.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>, RingError> {
    let v = small(n)?;
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(v) {
        let base = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(base.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigUint::from).collect())
}

/// Writes `n = s·f²` with `s` square-free.
pub fn square_free_part(n: &BigUint) -> Result<(BigUint, BigUint), RingError> {
    let v = small(n)?;
    let mut s = BigUint::one();
    let mut f = BigUint::one();
    for (p, e) in factor_u64(v) {
        if e % 2 == 1 {
            s *= p;
        }
        f *= BigUint::from(p).pow(e / 2);
    }
    Ok((s, f))
}
