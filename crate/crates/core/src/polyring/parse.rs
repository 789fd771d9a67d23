//! Text grammar:
//!
//! ```text
//! poly   := ws term (ws '+' ws term)* ws | '0'
//! term   := '1' | factor ('*'? factor)*
//! factor := ('x'|'y') ('^' '-'? digits)?
//! ```

use super::{LaurentPoly, Monomial, PolyError, MAX_EXPONENT};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let digits_at = self.pos;
        let mut value: i64 = 0;
        while let Some(c @ b'0'..=b'9') = self.peek() {
            value = value.saturating_mul(10).saturating_add((c - b'0') as i64);
            self.pos += 1;
        }
        if self.pos == digits_at {
            return Err(self.error("expected digits after '^'"));
        }
        if value > MAX_EXPONENT {
            return Err(PolyError::ExponentOverflow { offset: start });
        }
        Ok(if negative { -value } else { value })
    }

    fn factor(&mut self, acc: &mut (i64, i64)) -> Result<(), PolyError> {
        let var = self.peek();
        let at = self.pos;
        match var {
            Some(b'x' | b'y') => self.pos += 1,
            _ => return Err(self.error("expected 'x' or 'y'")),
        }
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        let slot = if var == Some(b'x') { &mut acc.0 } else { &mut acc.1 };
        *slot += e;
        if slot.abs() > MAX_EXPONENT {
            return Err(PolyError::ExponentOverflow { offset: at });
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Monomial, PolyError> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Monomial::ONE);
        }
        let mut acc = (0i64, 0i64);
        self.factor(&mut acc)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.factor(&mut acc)?;
                }
                Some(b'x' | b'y') => self.factor(&mut acc)?,
                _ => break,
            }
        }
        Ok(Monomial::new(acc.0 as i32, acc.1 as i32))
    }
}

/// Parses a polynomial. Repeated monomials cancel mod 2.
pub fn parse(text: &str) -> Result<LaurentPoly, PolyError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    if cur.peek() == Some(b'0') {
        cur.pos += 1;
        cur.skip_ws();
        return match cur.peek() {
            None => Ok(LaurentPoly::zero()),
            Some(_) => Err(cur.error("unexpected input after '0'")),
        };
    }
    let mut terms = vec![cur.term()?];
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                cur.skip_ws();
                terms.push(cur.term()?);
            }
            Some(_) => return Err(cur.error("expected '+' or end of input")),
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_rule_with_negative_exponents() {
        let f = parse("1 + x^-1*y + y + x*y + y^2 + x^-1*y^2").unwrap();
        let want = [(0, 0), (-1, 1), (0, 1), (1, 1), (0, 2), (-1, 2)];
        assert_eq!(f, LaurentPoly::from_terms(want));
        assert_eq!(f.len(), 6);
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse("0").unwrap().is_zero());
        assert!(parse("  0 ").unwrap().is_zero());
        assert!(parse("x + x").unwrap().is_zero());
    }

    #[test]
    fn implicit_multiplication_and_repeats() {
        assert_eq!(parse("xy").unwrap(), parse("x*y").unwrap());
        assert_eq!(parse("x*x^2*y^-1").unwrap(), LaurentPoly::monomial(3, -1));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(
            parse("1 + z"),
            Err(PolyError::Syntax {
                offset: 4,
                message: "expected 'x' or 'y'".into()
            })
        );
        assert!(matches!(parse("x^"), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("1 x"), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse(""), Err(PolyError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("0 + x"), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn exponent_bounds() {
        assert!(parse("x^1073741824").is_ok());
        assert_eq!(
            parse("1 + x^1073741825"),
            Err(PolyError::ExponentOverflow { offset: 6 })
        );
        assert!(matches!(
            parse("x^1073741824*x"),
            Err(PolyError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn rendering_order_and_format() {
        let f = parse("y^2 + x^-1*y + 1 + x").unwrap();
        assert_eq!(f.to_string(), "1 + x + x^-1*y + y^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(
            pts in proptest::collection::vec((-5i32..=5, -5i32..=5), 0..10)
        ) {
            let p = LaurentPoly::from_terms(pts);
            prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
        }
    }
}
