use num_bigint::BigInt;
use num_traits::Zero;

use super::{FieldError, Rational, Scalar};

/// Parses scalar literal syntax into `Q(zeta_m)`.
///
/// Grammar: `term { ("+" | "-") term }`, where a term is an optional sign,
/// an optional rational `p` or `p/q`, and an optional power `z^k` (or bare
/// `z`). Juxtaposition or `*` separate the rational from the power.
/// Exponents may be negative and are reduced modulo `m`.
pub fn parse_scalar(text: &str, m: u32) -> Result<Scalar, FieldError> {
    if m == 0 {
        return Err(FieldError::ZeroConductor);
    }
    let err = |reason: &str| FieldError::Literal {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = text.chars().collect();
    if text.trim().is_empty() {
        return Err(err("empty literal"));
    }
    let mut pos = 0;
    let mut terms: Vec<(i64, Rational)> = Vec::new();
    let mut first = true;
    skip_ws(&chars, &mut pos);
    while pos < chars.len() {
        let mut sign = 1i64;
        let mut saw_sign = false;
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            saw_sign = true;
            pos += 1;
            skip_ws(&chars, &mut pos);
        }
        if !first && !saw_sign {
            return Err(err("expected '+' or '-' between terms"));
        }
        first = false;

        let coeff = match read_uint(&chars, &mut pos) {
            Some(num) => {
                if pos < chars.len() && chars[pos] == '/' {
                    pos += 1;
                    let den = read_uint(&chars, &mut pos).ok_or_else(|| err("missing denominator"))?;
                    if den.is_zero() {
                        return Err(err("zero denominator"));
                    }
                    Some(Rational::new(num, den))
                } else {
                    Some(Rational::from_integer(num))
                }
            }
            None => None,
        };
        skip_ws(&chars, &mut pos);
        if coeff.is_some() && pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            skip_ws(&chars, &mut pos);
        }
        let exponent = if pos < chars.len() && chars[pos] == 'z' {
            pos += 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let mut esign = 1i64;
                if pos < chars.len() && chars[pos] == '-' {
                    esign = -1;
                    pos += 1;
                }
                let e = read_uint(&chars, &mut pos).ok_or_else(|| err("missing exponent"))?;
                let e: i64 = e.try_into().map_err(|_| err("exponent too large"))?;
                Some(esign * e)
            } else {
                Some(1)
            }
        } else {
            None
        };
        skip_ws(&chars, &mut pos);
        if coeff.is_none() && exponent.is_none() {
            return Err(err(&format!("unexpected character at offset {pos}")));
        }
        let c = coeff.unwrap_or_else(|| Rational::from_integer(BigInt::from(1)));
        terms.push((exponent.unwrap_or(0), c * BigInt::from(sign)));
    }
    Ok(Scalar::from_terms(m, terms))
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn read_uint(chars: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        None
    } else {
        chars[start..*pos].iter().collect::<String>().parse().ok()
    }
}
