//! Text form of elements.
//!
//! ```text
//! element := term (("+"|"-") term)*
//! term    := scalar? symbol ("*" symbol)*  |  scalar
//! symbol  := "U^" nat | "U*^" nat | "U'^" nat | "U" | "U*" | "U'" | "C(" nat "," nat ")" | "E" | "I"
//! scalar  := rationalComplex ("eps^" nat)? | "eps^" nat
//! rationalComplex := rational "i"? | "i" | "(" rational "i"? (("+"|"-") rational "i"?)* ")"
//! ```
//!
//! `E` is `C(0,0)`, `I` is `U^0`, and a bare scalar means a multiple of `I`.
//! The printer emits one term per (symbol, power of eps), band symbols first,
//! corners in decreasing index order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::element::Element;
use super::scalar::{GaussRational, Scalar};
use super::symbol::BasisSymbol;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let token = match self.rest() {
            "" => "end of input".to_string(),
            r => r.split(|c: char| c.is_whitespace()).next().unwrap_or(r).chars().take(12).collect(),
        };
        Error::Parse { pos: self.pos, token, message: message.into() }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let digits: &str = {
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            &r[..end]
        };
        if digits.is_empty() {
            return Err(self.error("expected a natural number"));
        }
        let value = digits.parse::<u64>().map_err(|_| self.error("number too large"))?;
        self.pos += digits.len();
        Ok(value)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let num = self.nat()?;
        if self.eat("/") {
            let den = self.nat()?;
            if den == 0 {
                self.pos = start;
                return Err(self.error("zero denominator"));
            }
            Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
        } else {
            Ok(BigRational::from_integer(BigInt::from(num)))
        }
    }

    /// `rational "i"?` or bare `i`.
    fn complex_atom(&mut self) -> Result<GaussRational> {
        if self.eat("i") {
            return Ok(GaussRational::i());
        }
        let r = self.rational()?;
        if self.eat("i") {
            Ok(GaussRational::new(BigRational::zero(), r))
        } else {
            Ok(GaussRational::real(r))
        }
    }

    fn at_coefficient(&self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some('i') => !self.rest()[1..].starts_with(|c: char| c.is_ascii_alphanumeric()),
            _ => false,
        }
    }

    fn coefficient(&mut self) -> Result<GaussRational> {
        if !self.eat("(") {
            return self.complex_atom();
        }
        self.skip_ws();
        let mut acc = GaussRational::zero();
        let mut negate = self.eat("-");
        loop {
            self.skip_ws();
            let atom = self.complex_atom()?;
            acc = if negate { &acc - &atom } else { &acc + &atom };
            self.skip_ws();
            if self.eat(")") {
                return Ok(acc);
            }
            negate = if self.eat("+") {
                false
            } else if self.eat("-") {
                true
            } else {
                return Err(self.error("expected `+`, `-` or `)` in complex coefficient"));
            };
        }
    }

    fn scalar(&mut self) -> Result<Option<Scalar>> {
        let coeff = if self.at_coefficient() { Some(self.coefficient()?) } else { None };
        self.skip_ws();
        let power = if self.eat("eps") {
            if self.eat("^") {
                Some(u32::try_from(self.nat()?).map_err(|_| self.error("eps power too large"))?)
            } else {
                Some(1)
            }
        } else {
            None
        };
        Ok(match (coeff, power) {
            (None, None) => None,
            (c, k) => Some(Scalar::monomial(c.unwrap_or_else(GaussRational::one), k.unwrap_or(0))),
        })
    }

    fn symbol(&mut self) -> Result<Option<BasisSymbol>> {
        let start = self.pos;
        let sym = if self.eat("U") {
            let adjoint = self.eat("*^") || self.eat("'^") || {
                if self.eat("'") {
                    return Ok(Some(BasisSymbol::Bwd(1)));
                }
                false
            };
            if adjoint {
                let n = self.nat()?;
                BasisSymbol::bwd(n)
            } else if self.eat("^") {
                BasisSymbol::fwd(self.nat()?)
            } else if self.rest().starts_with('*') && !self.rest()[1..].trim_start().starts_with(char::is_alphabetic) {
                // `U*` standing alone is the adjoint; `U*E` is a product.
                self.pos += 1;
                Ok(BasisSymbol::Bwd(1))
            } else {
                Ok(BasisSymbol::Fwd(1))
            }
        } else if self.eat("C(") {
            self.skip_ws();
            let a = self.nat()?;
            self.skip_ws();
            self.expect(",")?;
            self.skip_ws();
            let b = self.nat()?;
            self.skip_ws();
            self.expect(")")?;
            BasisSymbol::corner(a, b)
        } else if self.eat("E") {
            Ok(BasisSymbol::E)
        } else if self.eat("I") {
            Ok(BasisSymbol::IDENTITY)
        } else {
            return Ok(None);
        };
        sym.map(Some).map_err(|e| {
            let mut p = Parser::new(self.src);
            p.pos = start;
            p.error(e.to_string())
        })
    }

    fn term(&mut self) -> Result<Element> {
        let scalar = self.scalar()?;
        self.skip_ws();
        let mut product: Option<Element> = None;
        loop {
            let before = self.pos;
            match self.symbol()? {
                Some(s) => {
                    let e = Element::from(s);
                    product = Some(match product {
                        None => e,
                        Some(acc) => {
                            let mut p = Parser::new(self.src);
                            p.pos = before;
                            acc.try_mul(&e).map_err(|err| p.error(err.to_string()))?
                        }
                    });
                }
                None if product.is_some() => return Err(self.error("expected a symbol after `*`")),
                None => break,
            }
            self.skip_ws();
            if !self.eat("*") {
                break;
            }
            self.skip_ws();
        }
        match (scalar, product) {
            (None, None) => Err(self.error("expected a term")),
            (Some(c), None) => Ok(Element::term(c, BasisSymbol::IDENTITY)),
            (None, Some(p)) => Ok(p),
            (Some(c), Some(p)) => Ok(p.scale(&c)),
        }
    }

    fn element(&mut self) -> Result<Element> {
        self.skip_ws();
        let mut negate = self.eat("-");
        self.skip_ws();
        let mut acc = Element::zero();
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            self.skip_ws();
            if self.rest().is_empty() {
                return Ok(acc);
            }
            negate = if self.eat("+") {
                false
            } else if self.eat("-") {
                true
            } else {
                return Err(self.error("expected `+` or `-`"));
            };
            self.skip_ws();
        }
    }
}

/// Parse an element literal.
pub fn parse_element(src: &str) -> Result<Element> {
    Parser::new(src).element()
}

impl FromStr for Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_element(s)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (corners, bands): (Vec<_>, Vec<_>) = self.terms().partition(|(s, _)| s.is_corner());
        let mut first = true;
        for (sym, scalar) in bands.into_iter().chain(corners.into_iter().rev()) {
            for (k, c) in scalar.terms() {
                let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                if k > 0 {
                    write!(f, "eps^{k} ")?;
                }
                write!(f, "{sym}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::symbol::{Bwd, Corner, Fwd};
    use super::*;

    fn p(s: &str) -> Element {
        parse_element(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn symbols_and_aliases() {
        assert_eq!(p("E"), Element::from(Corner(0, 0)));
        assert_eq!(p("I"), Element::identity());
        assert_eq!(p("U^0"), Element::identity());
        assert_eq!(p("U*^0"), Element::identity());
        assert_eq!(p("U'^1"), Element::from(Bwd(1)));
        assert_eq!(p("U*^3"), Element::from(Bwd(3)));
        assert_eq!(p("U"), Element::from(Fwd(1)));
        assert_eq!(p("U*"), Element::from(Bwd(1)));
        assert_eq!(p("C( 2 , 5 )"), Element::from(Corner(2, 5)));
    }

    #[test]
    fn products_and_scalars() {
        // S^2 E S*^3 = C(2,3)
        assert_eq!(p("U^2*E*U*^3"), Element::from(Corner(2, 3)));
        assert_eq!(p("U*E"), Element::from(Corner(1, 0)));
        let x = p("(1/2+3/4i)eps^2 C(1,0)");
        let c = x.coefficient(&Corner(1, 0));
        assert_eq!(c.degree(), Some(2));
        assert_eq!(c.coefficient(2).to_string(), "(1/2+3/4i)");
        let y = p("U'^1 + 3/10 E");
        assert_eq!(y.coefficient(&Corner(0, 0)), Scalar::constant(GaussRational::ratio(3, 10)));
        assert_eq!(p("U + eps E"), crate::algebra::build_t(crate::algebra::ShiftVariant::Forward));
        assert_eq!(p("-2"), Element::term(Scalar::from_int(-2), Fwd(0)));
        assert_eq!(p("(-i) C(0,1)").coefficient(&Corner(0, 1)), Scalar::constant(-GaussRational::i()));
    }

    #[test]
    fn display_matches_examples() {
        assert_eq!(p("C(1,0)").commutator(&p("C(0,1)")).to_string(), "C(1,1) - C(0,0)");
        assert_eq!(p("U^2").mul(&p("U*^1")).to_string(), "U^1 - C(1,0)");
        assert_eq!(Element::zero().to_string(), "0");
        let t2 = crate::algebra::build_t(crate::algebra::ShiftVariant::Backward).pow(2);
        assert_eq!(t2.to_string(), "U*^2 + eps^1 C(0,1) + eps^2 C(0,0)");
    }

    #[test]
    fn printed_form_reparses() {
        for s in [
            "U^1 - C(1,0)",
            "(1/2-3/4i) eps^2 C(1,0) + 7 U*^4 - i I",
            "1 + eps^1 I - 5/3 eps^3 U^2",
        ] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s}");
        }
    }

    #[test]
    fn errors_name_token_and_position() {
        let err = parse_element("U^2 + Q").unwrap_err();
        assert_eq!(err, Error::Parse { pos: 6, token: "Q".into(), message: "expected a term".into() });
        let err = parse_element("C(1;2)").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 3, .. }), "{err:?}");
        let err = parse_element("1/0 E").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 0, .. }), "{err:?}");
        assert!(parse_element("").is_err());
        assert!(parse_element("U^65").is_err());
        assert!(parse_element("U^2 *").is_err());
    }
}
