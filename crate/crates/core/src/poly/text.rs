//! Plain-text polynomial format.
//!
//! Input: whitespace-separated decimal integers in ascending degree order;
//! lines whose first non-blank character is `#` are comments. Output: one
//! coefficient per line.

use num_bigint::BigInt;

use super::Polynomial;
use crate::error::{Error, Result};

/// Raw coefficient tokens, in file order and without trimming trailing zeros.
pub fn parse_coefficients(text: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut column = 0;
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, ch)) = chars.peek() {
            if ch.is_whitespace() {
                chars.next();
                column += 1;
                continue;
            }
            let token_column = column + 1;
            let mut end = line.len();
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() {
                    end = i;
                    break;
                }
                chars.next();
                column += 1;
            }
            let token = &line[start..end];
            out.push(parse_integer(token).ok_or_else(|| Error::Parse {
                line: line_no + 1,
                column: token_column,
                token: token.to_string(),
            })?);
        }
    }
    Ok(out)
}

pub fn parse_poly(text: &str) -> Result<Polynomial> {
    parse_coefficients(text).map(Polynomial::new)
}

pub fn serialize_poly(p: &Polynomial) -> String {
    p.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_integer(token: &str) -> Option<BigInt> {
    // Typeset minus signs (U+2212) show up in hand-edited files.
    let (negative, digits) = match token.strip_prefix('−') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    if digits.is_empty() || digits.starts_with(['-', '+', '−']) && negative {
        return None;
    }
    let value: BigInt = digits.parse().ok()?;
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poly("1 2 3").unwrap(), Polynomial::from_i64s(&[1, 2, 3]));
        assert_eq!(
            parse_poly("# comment\n-4 0 9").unwrap(),
            Polynomial::from_i64s(&[-4, 0, 9])
        );
        assert_eq!(
            parse_poly("# comment\n−4 0 9").unwrap(),
            Polynomial::from_i64s(&[-4, 0, 9])
        );
        assert_eq!(parse_poly("").unwrap(), Polynomial::zero());
        assert_eq!(parse_poly("  # only\n\n").unwrap(), Polynomial::zero());
        assert_eq!(parse_poly("1\n2\n\t3 0").unwrap(), Polynomial::from_i64s(&[1, 2, 3]));
        assert_eq!(parse_coefficients("1 2 0").unwrap().len(), 3);
    }

    #[test]
    fn parse_error_position() {
        assert_eq!(
            parse_poly("1 x"),
            Err(Error::Parse {
                line: 1,
                column: 3,
                token: "x".into()
            })
        );
        assert_eq!(
            parse_poly("# c\n1 2\n  3 4.5"),
            Err(Error::Parse {
                line: 3,
                column: 5,
                token: "4.5".into()
            })
        );
        assert!(parse_poly("--1").is_err());
        assert!(parse_poly("−-1").is_err());
        assert!(parse_poly("−").is_err());
    }

    #[test]
    fn serialize_format() {
        assert_eq!(serialize_poly(&Polynomial::from_i64s(&[10, 29, 21])), "10\n29\n21");
        assert_eq!(serialize_poly(&Polynomial::zero()), "");
    }

    proptest! {
        #[test]
        fn round_trip(v in proptest::collection::vec(any::<i64>(), 0..20)) {
            let p = Polynomial::from_i64s(&v);
            prop_assert_eq!(parse_poly(&serialize_poly(&p)).unwrap(), p);
        }
    }
}
