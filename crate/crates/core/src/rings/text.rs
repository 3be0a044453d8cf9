//! Textual scalar syntax: a signed sum of terms, each a rational coefficient
//! optionally followed by `*unit`, or a bare unit. Examples: `-1/2+1/2*r`,
//! `3-2*i+k`, `7/3`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Rational, RingError};

fn err(text: &str, reason: impl Into<String>) -> RingError {
    RingError::Parse {
        text: text.to_string(),
        reason: reason.into(),
    }
}

/// Parses `text` into its rational part and the coefficients of `units`.
pub(crate) fn parse_terms<const N: usize>(
    text: &str,
    units: [char; N],
) -> Result<(Rational, [Rational; N]), RingError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err(text, "empty scalar"));
    }
    let mut real = Rational::zero();
    let mut coeffs: [Rational; N] = std::array::from_fn(|_| Rational::zero());
    let mut pos = 0;
    while pos < chars.len() {
        let mut negative = false;
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                negative = true;
                pos += 1;
            }
            _ if pos > 0 => return Err(err(text, format!("expected `+` or `-` at offset {pos}"))),
            _ => {}
        }
        let coef = if pos < chars.len() && chars[pos].is_ascii_digit() {
            let num = read_int(&chars, &mut pos);
            let mut q = Rational::from_integer(num);
            if pos < chars.len() && chars[pos] == '/' {
                pos += 1;
                if pos >= chars.len() || !chars[pos].is_ascii_digit() {
                    return Err(err(text, "missing denominator"));
                }
                let den = read_int(&chars, &mut pos);
                if den.is_zero() {
                    return Err(err(text, "zero denominator"));
                }
                q /= Rational::from_integer(den);
            }
            Some(q)
        } else {
            None
        };
        let unit = if pos < chars.len() && chars[pos] == '*' {
            if coef.is_none() {
                return Err(err(text, "`*` without a coefficient"));
            }
            pos += 1;
            match chars.get(pos) {
                Some(c) if units.contains(c) => {
                    pos += 1;
                    Some(*c)
                }
                _ => return Err(err(text, "expected a unit after `*`")),
            }
        } else if pos < chars.len() && units.contains(&chars[pos]) {
            pos += 1;
            Some(chars[pos - 1])
        } else {
            None
        };
        if coef.is_none() && unit.is_none() {
            return Err(err(text, format!("unexpected character at offset {pos}")));
        }
        let mut value = coef.unwrap_or_else(Rational::one);
        if negative {
            value = -value;
        }
        match unit {
            None => real += value,
            Some(u) => {
                let idx = units.iter().position(|c| *c == u).unwrap();
                coeffs[idx] += value;
            }
        }
    }
    Ok((real, coeffs))
}

fn read_int(chars: &[char], pos: &mut usize) -> BigInt {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse().expect("digits")
}

/// Renders a rational part and unit coefficients in the syntax accepted by
/// [`parse_terms`].
pub(crate) fn render_terms(real: &Rational, parts: &[(&Rational, char)]) -> String {
    let mut out = String::new();
    if !real.is_zero() {
        out.push_str(&real.to_string());
    }
    for (c, unit) in parts {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push(*unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
