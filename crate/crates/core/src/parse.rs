//! Text form of polynomials and ideals.
//!
//! Grammar: integer coefficients (reduced mod p), ring variables, `+ - * ^`
//! and parentheses. Multiplication must be explicit: `2*x^2*y`, not `2x^2y`.
//! Ideals are `;`-separated generator lists.

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::Ring;

pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected input (multiplication must be written with '*')"));
    }
    Ok(f)
}

/// Parses `g1; g2; ...`. Empty entries are ignored, so `""` is the zero ideal.
pub fn parse_ideal(ring: &Ring, src: &str) -> Result<Ideal> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for part in src.split(';') {
        if !part.trim().is_empty() {
            let g = parse_polynomial(ring, part).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + offset,
                    msg,
                },
                other => other,
            })?;
            gens.push(g);
        }
        offset += part.len() + 1;
    }
    Ok(Ideal::new(ring, gens))
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let e: u64 =
                std::str::from_utf8(digits)
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Parse {
                        pos: start,
                        msg: "exponent too large".into(),
                    })?;
            self.skip_ws();
            if self.peek() == Some(b'^') {
                return Err(self.error("chained '^' is ambiguous; use parentheses"));
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.p() as u64;
                let value = self
                    .digits()
                    .iter()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::Parse {
                        pos: start,
                        msg: format!("unknown variable '{name}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring().vars();
        for (i, t) in self.terms().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if t.coeff != 1 || t.mon.is_one() {
                factors.push(t.coeff.to_string());
            }
            for (v, &e) in vars.iter().zip(t.mon.exps()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, RingConfig};
    use proptest::prelude::*;

    fn ring() -> Ring {
        RingConfig::new(5, 1, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn parses_the_documented_example() {
        let r = ring();
        let f = parse_polynomial(&r, "x^2*y + 2*y^3 + 1").unwrap();
        assert_eq!(f.to_string(), "x^2*y + 2*y^3 + 1");
    }

    #[test]
    fn negatives_and_large_integers_reduce() {
        let r = ring();
        let f = parse_polynomial(&r, "-x + 12").unwrap();
        assert_eq!(f.to_string(), "4*x + 2");
        let z = parse_polynomial(&r, "100000000000000000000000005 * x").unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn parentheses_and_powers() {
        let r = ring();
        let f = parse_polynomial(&r, "(x + y)^5").unwrap();
        assert_eq!(f.to_string(), "x^5 + y^5");
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let r = ring();
        assert!(matches!(
            parse_polynomial(&r, "2x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "x y"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn unknown_variable_and_bad_syntax() {
        let r = ring();
        for bad in ["w", "x +", "x^", "(x", "x^2^3", "", "x ** 2"] {
            assert!(
                matches!(parse_polynomial(&r, bad), Err(Error::Parse { .. })),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn ideal_lists() {
        let r = ring();
        let i = parse_ideal(&r, "x^2; x*y ;; y").unwrap();
        assert_eq!(i.gens().len(), 3);
        assert!(parse_ideal(&r, "").unwrap().gens().is_empty());
        match parse_ideal(&r, "x; 2y") {
            Err(Error::Parse { pos, .. }) => assert!(pos >= 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn display_round_trips(terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..6, 3), -20i64..20), 0..8))
        {
            let r = ring();
            let f = Polynomial::from_terms(&r, terms).unwrap();
            let back = parse_polynomial(&r, &f.to_string()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
