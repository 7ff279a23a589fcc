use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::MultiPoly;
use super::vars::Ring;
use super::Rational;
use crate::error::{Error, Result};

/// Parses a polynomial expression over `ring`.
///
/// Grammar: integers, `a/b` rational literals, variable names, `+ - * ^` and
/// parentheses. Multiplication must be explicit and exponents are
/// nonnegative integers.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses an integer or `a/b` rational literal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, format!("bad rational literal `{text}`")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(0, format!("bad rational literal `{text}`")))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent(at));
        }
        let digits = self.digits()?;
        let k: u32 = digits
            .parse()
            .map_err(|_| Error::parse(at, "exponent too large"))?;
        Ok(base.pow(k))
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits");
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(Error::parse(
                            at,
                            "`/` only allowed between integer literals",
                        ));
                    }
                    let den: BigInt = self.digits()?.parse().expect("digits");
                    if den.is_zero() {
                        return Err(Error::parse(at, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(MultiPoly::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                MultiPoly::var(self.ring, name)
            }
            Some(_) => Err(Error::parse(self.pos, "unexpected character")),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::VarTable;
    use proptest::prelude::*;

    fn ring() -> Ring {
        VarTable::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn conic_has_six_terms() {
        let f = parse_poly("x^2 - 4*x*y + 6*x - y^2 + 8*y - 7", &ring()).unwrap();
        assert_eq!(f.num_terms(), 6);
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_poly("0", &ring()).unwrap().is_zero());
        assert!(parse_poly("2/3*x*y - 2/3*x*y", &ring()).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("x + z", &ring()), Err(Error::UnknownVariable(v)) if v == "z"));
        assert!(matches!(
            parse_poly("x^-1", &ring()),
            Err(Error::NegativeExponent(_))
        ));
        assert!(matches!(
            parse_poly("x +", &ring()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("2x", &ring()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("(x", &ring()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("x/2", &ring()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn nested_expression() {
        let f = parse_poly("-(x - 2)*(y - 3)^2 + 1/2", &ring()).unwrap();
        let g = parse_poly("-x*y^2 + 6*x*y - 9*x + 2*y^2 - 12*y + 18 + 1/2", &ring()).unwrap();
        assert_eq!(f, g);
    }

    prop_compose! {
        fn arb_poly()(terms in proptest::collection::vec(
            ((0u16..4, 0u16..4), (-20i64..20, 1i64..6)), 0..8)) -> MultiPoly {
            let r = ring();
            let t = terms
                .into_iter()
                .map(|((a, b), (n, d))| {
                    (
                        crate::exactpoly::Monomial::from_exponents(&[a, b]),
                        Rational::new(n.into(), d.into()),
                    )
                })
                .collect();
            MultiPoly::from_terms(&r, t)
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(f in arb_poly()) {
            let back = parse_poly(&f.to_string(), f.ring()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
