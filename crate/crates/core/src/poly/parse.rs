//! Exact parser for polynomial expressions in `t`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := '(' expr ')' | 't' | uint
//! ```
//!
//! A rational literal `p/q` is the quotient of two integer bases. Division is
//! only accepted when the divisor is a nonzero constant.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent at position {pos} is not a nonnegative integer")]
    BadExponent { pos: usize },
    #[error("division by a non-constant polynomial at position {pos}")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
}

/// Parse and expand a polynomial expression exactly.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

// Exponents this large would overflow any dense representation long before.
const MAX_EXPONENT: u32 = 4096;

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            if op == b'*' {
                acc = acc * rhs;
            } else {
                if !rhs.is_constant() {
                    return Err(ParseError::NonConstantDivisor { pos: at });
                }
                if rhs.is_zero() {
                    return Err(ParseError::DivisionByZero { pos: at });
                }
                acc = acc.scale(&rhs.coeff(0).recip());
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(ParseError::BadExponent { pos: at }),
        }
        let e = self
            .uint()
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(ParseError::BadExponent { pos: at })?;
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint();
                Ok(Poly::constant(Rat::from_integer(n)))
            }
            Some(_) => Err(self.syntax("expected '(', 't' or a number")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().unwrap_or_else(|_| BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    #[test]
    fn expands_products() {
        assert_eq!(parse_poly("(2*t^2+1)").unwrap(), Poly::from_ints(&[1, 0, 2]));
        assert_eq!(
            parse_poly("(t^2-1)*(t-2)^2").unwrap(),
            Poly::from_ints(&[-4, 4, 3, -4, 1])
        );
    }

    #[test]
    fn degree_ten_example() {
        let d = parse_poly("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2").unwrap();
        assert_eq!(d.degree(), Some(10));
        assert_eq!(d.coeff(10), rat(1, 1));
        assert_eq!(d.coeff(0), rat(-169, 4096));
    }

    #[test]
    fn unary_minus_and_rationals() {
        assert_eq!(parse_poly("-t + 1/2").unwrap(), Poly::from_coeffs(vec![rat(1, 2), rat(-1, 1)]));
        assert_eq!(parse_poly("(t^2 - 1)/4").unwrap(), Poly::from_coeffs(vec![rat(-1, 4), rat(0, 1), rat(1, 4)]));
        assert_eq!(parse_poly("2^10").unwrap(), Poly::from_ints(&[1024]));
        assert_eq!(parse_poly(" t ^ 0 ").unwrap(), Poly::one());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("t^^2"), Err(ParseError::BadExponent { pos: 2 })));
        assert!(matches!(parse_poly("t^-1"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_poly("1/(t+1)"), Err(ParseError::NonConstantDivisor { pos: 2 })));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::DivisionByZero { .. })));
        assert!(matches!(parse_poly("(t+1"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("t t"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-50i64..50, 1i64..9), 0..8).prop_map(|cs| {
            Poly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(p in arb_poly()) {
            let s = p.to_string();
            let back = parse_poly(&s).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
