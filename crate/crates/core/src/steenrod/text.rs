//! Text syntax: `Sq 4 Sq 1` (or `Sq 4 1`) for a monomial, `+` between
//! monomials, `0` for zero and `Sq 0` for the identity.
//!
//! The printer emits one `Sq` per factor; the parser accepts both spellings
//! and drops `Sq 0` factors inside a composite.

use std::fmt;
use std::str::FromStr;

use super::{SteenrodElement, SteenrodError, SteenrodMonomial};

impl fmt::Display for SteenrodMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "Sq 0");
        }
        for (k, e) in self.exponents().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "Sq {e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, m) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> SteenrodError {
    SteenrodError::Parse { input: input.to_string(), reason: reason.into() }
}

impl FromStr for SteenrodMonomial {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        let mut seen_sq = false;
        let mut pending = false;
        for tok in s.split_whitespace() {
            if tok == "Sq" {
                if pending {
                    return Err(parse_error(s, "`Sq` must be followed by an exponent"));
                }
                seen_sq = true;
                pending = true;
                continue;
            }
            if !seen_sq {
                return Err(parse_error(s, "a monomial must start with `Sq`"));
            }
            let e: u32 = tok.parse().map_err(|_| parse_error(s, format!("`{tok}` is not a nonnegative integer")))?;
            factors.push(e);
            pending = false;
        }
        if !seen_sq {
            return Err(parse_error(s, "empty monomial"));
        }
        if pending {
            return Err(parse_error(s, "`Sq` must be followed by an exponent"));
        }
        SteenrodMonomial::from_factors(factors)
    }
}

impl FromStr for SteenrodElement {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(parse_error(s, "empty input"));
        }
        if trimmed == "0" {
            return Ok(SteenrodElement::zero());
        }
        let mut e = SteenrodElement::zero();
        for part in trimmed.split('+') {
            let part = part.trim();
            if part == "0" {
                continue;
            }
            e.toggle(part.parse()?);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prints_canonical_forms() {
        let m = SteenrodMonomial::new(vec![4, 1]).unwrap();
        assert_eq!(m.to_string(), "Sq 4 Sq 1");
        assert_eq!(SteenrodMonomial::identity().to_string(), "Sq 0");
        assert_eq!(SteenrodElement::zero().to_string(), "0");
        let e: SteenrodElement = "Sq 4 Sq 1 + Sq 5".parse().unwrap();
        assert_eq!(e.to_string(), "Sq 5 + Sq 4 Sq 1");
    }

    #[test]
    fn parses_both_spellings() {
        let a: SteenrodMonomial = "Sq 3 2".parse().unwrap();
        let b: SteenrodMonomial = "Sq 3 Sq 2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.exponents(), &[3, 2]);
        let id: SteenrodMonomial = "Sq 0".parse().unwrap();
        assert!(id.is_identity());
        let dropped: SteenrodMonomial = "Sq 3 Sq 0 Sq 1".parse().unwrap();
        assert_eq!(dropped.exponents(), &[3, 1]);
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "3 2", "Sq", "Sq x", "Sq 1 Sq", "Sq -1", "Sq 2 +", "Sq Sq 1"] {
            assert!(bad.parse::<SteenrodElement>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn repeated_terms_cancel_when_parsed() {
        let e: SteenrodElement = "Sq 2 + Sq 2 + Sq 1".parse().unwrap();
        assert_eq!(e.to_string(), "Sq 1");
        let z: SteenrodElement = "Sq 2 + Sq 2".parse().unwrap();
        assert_eq!(z.to_string(), "0");
    }

    fn arb_element() -> impl Strategy<Value = SteenrodElement> {
        proptest::collection::vec(proptest::collection::vec(1u32..20, 0..5), 0..6)
            .prop_map(|terms| terms.into_iter().map(|t| SteenrodMonomial::new(t).unwrap()).collect())
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_element()) {
            let text = e.to_string();
            let back: SteenrodElement = text.parse().unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
