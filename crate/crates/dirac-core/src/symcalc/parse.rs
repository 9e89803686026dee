//! Parser for the scalar expression grammar used by input documents.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := '-' atom | rational | var | trig | '(' expr ')'
//! trig   := ('sin' | 'cos') '(' ['-'] [rational '*'] var ')'
//! var    := 'x1'..'xn' (aliases 'x', 'y', 'z' for the first three axes)
//! ```
//!
//! Rationals are `int` or `int/int`. Trig frequencies must be half-integers.
//! On affine domains trig atoms are rejected; on torus domains bare
//! coordinates are rejected (they are not periodic functions).

use num_bigint::BigInt;

use super::scalar::{Domain, DomainKind, ScalarField};
use super::CalcError;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(message: impl Into<String>, position: usize) -> CalcError {
    CalcError::Parse {
        message: message.into(),
        position,
    }
}

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>, CalcError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                tokens.push((Token::Number(n), start));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                tokens.push((Token::Ident(input[start..i].to_string()), start));
            }
            _ => return Err(err(format!("unexpected character '{c}'"), i)),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    domain: Domain,
    input_len: usize,
    _input: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), CalcError> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(format!("expected {what}"), at)),
        }
    }

    fn expr(&mut self) -> Result<ScalarField, CalcError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarField, CalcError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ScalarField, CalcError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Token::Number(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err("exponent too large", at))?;
                    Ok(base.pow(e))
                }
                _ => Err(err("expected a nonnegative integer exponent", at)),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ScalarField, CalcError> {
        let at = self.here();
        match self.bump() {
            Some(Token::Minus) => Ok(self.atom()?.neg()),
            Some(Token::Number(n)) => {
                let value = self.finish_rational(n)?;
                Ok(ScalarField::constant(self.domain, value))
            }
            Some(Token::Ident(name)) => {
                if name == "sin" || name == "cos" {
                    self.trig_call(&name, at)
                } else {
                    let axis = self.axis_of(&name, at)?;
                    if self.domain.kind == DomainKind::Torus {
                        return Err(err(
                            format!(
                                "coordinate '{name}' is not periodic; on a torus use sin/cos"
                            ),
                            at,
                        ));
                    }
                    ScalarField::coordinate(self.domain, axis)
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(err("expected a number, coordinate, sin/cos, or '('", at)),
        }
    }

    /// An optional `/ denominator` after an integer numerator.
    fn finish_rational(&mut self, numer: BigInt) -> Result<Rat, CalcError> {
        if self.peek() == Some(&Token::Slash) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Token::Number(d)) if d != BigInt::from(0) => Ok(Rat::new(numer, d)),
                Some(Token::Number(_)) => Err(err("division by zero", at)),
                _ => Err(err("expected a denominator", at)),
            }
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    fn axis_of(&self, name: &str, at: usize) -> Result<usize, CalcError> {
        let axis = match name {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => {
                let digits = name
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| err(format!("unknown identifier '{name}'"), at))?;
                if digits == 0 {
                    return Err(err("coordinates are numbered from x1", at));
                }
                digits - 1
            }
        };
        if axis >= self.domain.dim {
            return Err(err(
                format!(
                    "coordinate '{name}' exceeds the domain dimension {}",
                    self.domain.dim
                ),
                at,
            ));
        }
        Ok(axis)
    }

    fn trig_call(&mut self, name: &str, at: usize) -> Result<ScalarField, CalcError> {
        if self.domain.kind == DomainKind::Affine {
            return Err(err(
                format!("'{name}' is not polynomial; affine domains take polynomials"),
                at,
            ));
        }
        self.expect(Token::LParen, "'(' after sin/cos")?;
        let mut negative = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negative = true;
        }
        let mut freq = Rat::from_integer(BigInt::from(1));
        if let Some(Token::Number(_)) = self.peek() {
            let Some(Token::Number(n)) = self.bump() else {
                unreachable!()
            };
            freq = self.finish_rational(n)?;
            self.expect(Token::Star, "'*' between the frequency and the coordinate")?;
        }
        if negative {
            freq = -freq;
        }
        let at_var = self.here();
        let axis = match self.bump() {
            Some(Token::Ident(v)) => self.axis_of(&v, at_var)?,
            _ => return Err(err("expected a coordinate inside sin/cos", at_var)),
        };
        self.expect(Token::RParen, "')'")?;
        match name {
            "sin" => ScalarField::sine(self.domain, axis, &freq),
            _ => ScalarField::cosine(self.domain, axis, &freq),
        }
    }
}

/// Parses one scalar expression against a domain.
pub fn parse_scalar(input: &str, domain: Domain) -> Result<ScalarField, CalcError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        domain,
        input_len: input.len(),
        _input: input,
    };
    let field = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(err("trailing input", parser.here()));
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_polynomials() {
        let d = Domain::affine(2);
        let f = parse_scalar("3/2*x1^2 - x2 + 1", d).unwrap();
        let x = ScalarField::coordinate(d, 0).unwrap();
        let y = ScalarField::coordinate(d, 1).unwrap();
        let expected = &(&(&x * &x).scale(&rat(3, 2)) - &y) + &ScalarField::one(d);
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_aliases_and_parens() {
        let d = Domain::affine(3);
        let f = parse_scalar("(x + y)*z", d).unwrap();
        let g = parse_scalar("x1*x3 + x2*x3", d).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parses_trig() {
        let d = Domain::torus(2);
        let f = parse_scalar("2*cos(1/2*x1)*sin(x2) - 1", d).unwrap();
        let c = ScalarField::cosine(d, 0, &rat(1, 2)).unwrap();
        let s = ScalarField::sine(d, 1, &rat_int(1)).unwrap();
        let expected = &(&c * &s).scale(&rat_int(2)) - &ScalarField::one(d);
        assert_eq!(f, expected);
        let g = parse_scalar("sin(-x1)", d).unwrap();
        assert_eq!(g, ScalarField::sine(d, 0, &rat_int(1)).unwrap().neg());
    }

    #[test]
    fn domain_guards() {
        assert!(parse_scalar("sin(x1)", Domain::affine(2)).is_err());
        assert!(parse_scalar("x1", Domain::torus(2)).is_err());
        assert!(parse_scalar("cos(1/3*x1)", Domain::torus(2)).is_err());
        assert!(parse_scalar("x5", Domain::affine(2)).is_err());
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let e = parse_scalar("1 + §", Domain::affine(1)).unwrap_err();
        match e {
            CalcError::Parse { position, .. } => assert_eq!(position, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn printing_round_trips_through_the_parser() {
        let d = Domain::torus(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let mut f = ScalarField::constant(d, rat_int(rng.gen_range(-3..=3)));
            for _ in 0..4 {
                let axis = rng.gen_range(0..2);
                let freq = rat(rng.gen_range(-4..=4), 2);
                let wave = if rng.gen_bool(0.5) {
                    ScalarField::cosine(d, axis, &freq).unwrap()
                } else {
                    ScalarField::sine(d, axis, &freq).unwrap()
                };
                let scaled = wave.scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
                f = if rng.gen_bool(0.5) {
                    &f + &scaled
                } else {
                    &f * &scaled
                };
            }
            let printed = f.to_string();
            let parsed = parse_scalar(&printed, d)
                .unwrap_or_else(|e| panic!("failed to parse '{printed}': {e:?}"));
            assert_eq!(parsed, f, "round trip of '{printed}'");
        }

        let d = Domain::affine(3);
        for _ in 0..30 {
            let mut f = ScalarField::constant(d, rat_int(rng.gen_range(-3..=3)));
            for _ in 0..4 {
                let axis = rng.gen_range(0..3);
                let c = ScalarField::coordinate(d, axis).unwrap();
                let scaled = c.scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
                f = if rng.gen_bool(0.5) {
                    &f + &scaled
                } else {
                    &f * &scaled
                };
            }
            let printed = f.to_string();
            let parsed = parse_scalar(&printed, d).unwrap();
            assert_eq!(parsed, f, "round trip of '{printed}'");
        }
    }
}
