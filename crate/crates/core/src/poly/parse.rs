use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use super::{combine_terms, Exponents, Monomial, PolyError, Polynomial, Result, Variable};

/// Linear-or-not polynomial part plus an integer constant. Only produced by
/// [`parse_affine`]; everything else rejects constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePolynomial {
    pub part: Polynomial,
    pub constant: BigInt,
}

impl AffinePolynomial {
    pub fn has_constant(&self) -> bool {
        !self.constant.is_zero()
    }
}

impl std::fmt::Display for AffinePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.constant.sign() {
            Sign::NoSign => write!(f, "{}", self.part),
            Sign::Plus => write!(f, "{} + {}", self.part, self.constant),
            Sign::Minus => write!(f, "{} - {}", self.part, -&self.constant),
        }
    }
}

/// Parse and canonicalize. Constant terms are rejected.
pub fn parse(text: &str) -> Result<Polynomial> {
    let terms = Parser::new(text).terms()?;
    Polynomial::from_terms(terms)
}

/// Parse, allowing a (possibly zero) constant term.
pub fn parse_affine(text: &str) -> Result<AffinePolynomial> {
    let terms = combine_terms(Parser::new(text).terms()?);
    let mut constant = BigInt::zero();
    let mut rest = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exponents.is_empty() {
            constant = t.coefficient;
        } else {
            rest.push(t);
        }
    }
    Ok(AffinePolynomial {
        part: Polynomial::from_terms(rest)?,
        constant,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> PolyError {
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                // report the offending character, not a byte
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("`{}`", rest.chars().next().unwrap_or('?'))
            }
        };
        PolyError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn terms(&mut self) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coefficient = -t.coefficient;
            }
            out.push(t);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.error("`+`, `-`, `*` or end of input")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Monomial> {
        let mut coefficient = BigInt::from(1);
        let mut exponents = Exponents::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coefficient = self.integer()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        self.skip_ws();
                        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphabetic()) {
                            return Err(self.error("variable"));
                        }
                    }
                    Some(c) if c.is_ascii_alphabetic() => {}
                    // bare integer: a constant term
                    _ => return Ok(Monomial::new(coefficient, exponents)),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(self.error("integer or variable")),
        }
        loop {
            let (var, exp) = self.factor()?;
            exponents.add(&var, exp);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(Monomial::new(coefficient, exponents));
            }
        }
    }

    fn factor(&mut self) -> Result<(Variable, u32)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.error("variable")),
        }
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let var = Variable::new(name)?;
        if self.peek() != Some(b'^') {
            return Ok((var, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let exp = self.integer()?;
        match u32::try_from(exp) {
            Ok(e) if e > 0 => Ok((var, e)),
            _ => {
                self.pos = at;
                Err(self.error("positive exponent fitting in 32 bits"))
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }
}
