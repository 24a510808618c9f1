//! Polynomial targets in `x` and `y` for the interpolation experiment.
//!
//! Grammar: sums and differences of products of rationals (`3`, `-2/5`,
//! `0.25`), `x`, `y` and parenthesized expressions, each optionally raised
//! to a non-negative integer power with `^`.

use feec_weights::forms::cartesian_coordinate;
use feec_weights::rational::{one, zero};
use feec_weights::{parse_rational, BaryPolynomial, Triangle, Q};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Q),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            'x' => out.push(Token::Var(0)),
            'y' => out.push(Token::Var(1)),
            '0'..='9' | '.' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || matches!(chars[i + 1], '.' | '/')) {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Token::Num(number(&text)?));
            }
            _ => return Err(format!("unexpected character {c:?} in {s:?}")),
        }
        i += 1;
    }
    Ok(out)
}

fn number(text: &str) -> Result<Q, String> {
    if let Some((int, frac)) = text.split_once('.') {
        if frac.contains('/') || frac.contains('.') {
            return Err(format!("malformed number {text:?}"));
        }
        let den = format!("1{}", "0".repeat(frac.len()));
        let int = if int.is_empty() { "0" } else { int };
        return parse_rational(&format!("{int}{frac}/{den}")).map_err(|e| e.to_string());
    }
    parse_rational(text).map_err(|e| e.to_string())
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [BaryPolynomial; 2],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<BaryPolynomial, String> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                self.term()?.scale(&-one())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BaryPolynomial, String> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<BaryPolynomial, String> {
        let base = match self.next() {
            Some(Token::Num(c)) => BaryPolynomial::constant(c),
            Some(Token::Var(i)) => self.vars[i].clone(),
            Some(Token::Open) => {
                let e = self.expr()?;
                if self.next() != Some(Token::Close) {
                    return Err("missing ')'".into());
                }
                e
            }
            Some(t) => return Err(format!("unexpected {t:?}")),
            None => return Err("unexpected end of input".into()),
        };
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.next() {
            Some(Token::Num(n)) if n.is_integer() && n >= zero() => {
                let e: u32 = n.to_integer().try_into().map_err(|_| "exponent too large".to_string())?;
                Ok(base.pow(e))
            }
            other => Err(format!("exponent must be a non-negative integer, got {other:?}")),
        }
    }
}

/// Parses a polynomial in the Cartesian coordinates of the plane containing `tri`.
pub fn parse_polynomial(s: &str, tri: &Triangle) -> Result<BaryPolynomial, String> {
    let vars = [cartesian_coordinate(tri, 0), cartesian_coordinate(tri, 1)];
    let mut p = Parser { tokens: tokenize(s)?, pos: 0, vars: &vars };
    if p.tokens.is_empty() {
        return Err("empty polynomial".into());
    }
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in {s:?}"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use feec_weights::rational::q;
    use feec_weights::BaryPoint;

    #[test]
    fn evaluates_like_the_expression() {
        let t = Triangle::unit_right();
        let p = parse_polynomial("1 + 2*x - y^2 + 3/2*(x - y)^2 - 0.5*x*y", &t).unwrap();
        let (x, y) = (q(1, 3), q(1, 5));
        let want = q(1, 1) + q(2, 1) * &x - &y * &y + q(3, 2) * (&x - &y) * (&x - &y) - q(1, 2) * &x * &y;
        assert_eq!(p.evaluate(&BaryPoint::from_tail(x, y)), want);
        assert_eq!(parse_polynomial("-x", &t).unwrap(), BaryPolynomial::lambda(1).scale(&q(-1, 1)));
    }

    #[test]
    fn rejects_malformed_input() {
        let t = Triangle::unit_right();
        for bad in ["", "x +", "z", "x^y", "(x", "x^1/2", "1.2.3", "x y"] {
            assert!(parse_polynomial(bad, &t).is_err(), "{bad}");
        }
    }
}
