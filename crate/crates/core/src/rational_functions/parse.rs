//! Text grammar for bivariate rational functions.
//!
//! ```text
//! function := sum [ "/" sum ]
//! sum      := [ "+" | "-" ] term { ( "+" | "-" ) term }
//! term     := power { "*" power }
//! power    := atom [ "^" integer ]
//! atom     := integer | "x" | "y" | "g" | "(" sum ")"
//! ```
//!
//! `/` may appear once, at the top level, and splits the whole text into
//! numerator and denominator, so `a + b / c + d` reads as `(a + b) / (c + d)`.
//! `g` denotes the field generator, which lets every coefficient of an
//! extension field be written down. Integer literals are reduced mod p.

use super::bivariate::{BiPoly, BivariateRationalFunction};
use super::RationalError;
use crate::finite_field::FieldTable;

/// Largest total degree a parsed polynomial may reach.
pub const MAX_PARSE_DEGREE: u32 = 1024;

pub fn parse(f: &FieldTable, text: &str) -> Result<BivariateRationalFunction, RationalError> {
    let mut p = Parser {
        f,
        s: text.as_bytes(),
        pos: 0,
    };
    let num = p.sum()?;
    let den = if p.eat(b'/') { p.sum()? } else { BiPoly::one(f) };
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(if p.s[p.pos] == b'/' {
            RationalError::NestedDivision { pos: p.pos }
        } else {
            p.err("unexpected character")
        });
    }
    if den.is_zero() {
        return Err(RationalError::ZeroDenominator);
    }
    BivariateRationalFunction::new(num, den)
}

struct Parser<'a> {
    f: &'a FieldTable,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> RationalError {
        RationalError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<BiPoly, RationalError> {
        let f = self.f;
        let mut neg = !self.eat(b'+') && self.eat(b'-');
        let mut acc = BiPoly::zero();
        loop {
            let t = self.term()?;
            acc = if neg { acc.sub(f, &t) } else { acc.add(f, &t) };
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, RationalError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let start = self.pos;
            let rhs = self.power()?;
            if acc.total_degree() + rhs.total_degree() > MAX_PARSE_DEGREE {
                return Err(RationalError::ExponentOverflow { pos: start });
            }
            acc = acc.mul(self.f, &rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<BiPoly, RationalError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let e = self
            .integer_exact()
            .ok_or_else(|| self.err("expected a nonnegative integer exponent"))?;
        let e = e.ok_or(RationalError::ExponentOverflow { pos: start })?;
        let terms: Vec<_> = base.terms().collect();
        if let [((0, 0), c)] = terms[..] {
            return Ok(BiPoly::constant(self.f.pow(c, e)));
        }
        if base.is_zero() {
            return Ok(if e == 0 { BiPoly::one(self.f) } else { base });
        }
        if (base.total_degree() as u64) * e > MAX_PARSE_DEGREE as u64 {
            return Err(RationalError::ExponentOverflow { pos: start });
        }
        Ok(base.pow(self.f, e as u32))
    }

    fn atom(&mut self) -> Result<BiPoly, RationalError> {
        let f = self.f;
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x(f))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::y(f))
            }
            Some(b'g') => {
                self.pos += 1;
                Ok(BiPoly::constant(f.generator()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(b'/') => Err(RationalError::NestedDivision { pos: self.pos }),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let p = f.p();
                let mut v = 0u64;
                while let Some(&c) = self.s.get(self.pos).filter(|c| c.is_ascii_digit()) {
                    v = (v * 10 + (c - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(BiPoly::constant(f.from_int(v as i64)))
            }
            Some(_) => Err(self.err("expected a number, x, y, g or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// `None` if no digits; `Some(None)` if the value overflows `u64`.
    fn integer_exact(&mut self) -> Option<Option<u64>> {
        let start = self.pos;
        let mut v: Option<u64> = Some(0);
        while let Some(&c) = self.s.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = v
                .and_then(|v| v.checked_mul(10))
                .and_then(|v| v.checked_add((c - b'0') as u64));
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = FieldTable::for_order(7).unwrap();
        let s = parse(&f, "1 - x^2 - y^2").unwrap();
        assert_eq!(s, BivariateRationalFunction::sphere(&f));
        assert_eq!(s.degree_sum(), 2);
        assert_eq!(parse(&f, "x*y/(x+y)").unwrap().degree_sum(), 3);
        assert!(matches!(
            parse(&f, "x/(x/y)"),
            Err(RationalError::NestedDivision { .. })
        ));
        assert!(matches!(parse(&f, "x/y/x"), Err(RationalError::NestedDivision { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let f = FieldTable::for_order(7).unwrap();
        assert!(matches!(
            parse(&f, "x + * y"),
            Err(RationalError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(parse(&f, "x^"), Err(RationalError::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse(&f, "x^99999999999999999999"),
            Err(RationalError::ExponentOverflow { .. })
        ));
        assert!(matches!(
            parse(&f, "(x+y)^2000"),
            Err(RationalError::ExponentOverflow { .. })
        ));
        assert!(matches!(parse(&f, "1/(x-x)"), Err(RationalError::ZeroDenominator)));
        assert!(matches!(parse(&f, "x z"), Err(RationalError::Syntax { .. })));
    }

    #[test]
    fn literals_reduce_and_constants_power() {
        let f = FieldTable::for_order(7).unwrap();
        assert_eq!(parse(&f, "15*x").unwrap(), parse(&f, "x").unwrap());
        assert_eq!(parse(&f, "3^6").unwrap(), parse(&f, "1").unwrap());
        assert_eq!(parse(&f, "-(x - y)").unwrap(), parse(&f, "y - x").unwrap());
    }

    #[test]
    fn print_round_trip_in_extension_field() {
        let f = FieldTable::for_order(9).unwrap();
        let a = parse(&f, "g^3*x^2*y + (g + 1)*y - 2 / (x + g^5)").unwrap();
        let text = a.format(&f);
        assert_eq!(parse(&f, &text).unwrap(), a);
    }
}
