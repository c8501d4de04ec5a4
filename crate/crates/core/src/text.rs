//! Series and polynomial literals.
//!
//! ```text
//! series := term (('+'|'-') term)* (('+') 'O(' 't^' exp ')')?
//! term   := coeff ('*')? 't' ('^' exp)? | 't' ('^' exp)? | coeff
//! exp    := '(' rational ')' | rational
//! poly   := pterm (('+'|'-') pterm)*
//! pterm  := ('(' series ')' | coeff) ('*' xpow)? | xpow
//! xpow   := 'X' ('^' integer)?
//! ```
//!
//! A leading `-` negates a term. Coefficients are reduced mod p; a written
//! coefficient that vanishes mod p is rejected, except the literal `0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hahn::{reduce_int, Series};
use crate::ordval::{GroupValue, Q};
use crate::valpoly::ValPoly;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    offset: usize,
}

impl Cursor {
    fn new(src: &str, offset: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, offset }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.offset + self.pos, msg)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digit string"))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat('-');
        let d = self.digits()?;
        Ok(if neg { -d } else { d })
    }

    fn rational(&mut self) -> Result<Q> {
        let n = self.signed_int()?;
        if self.eat('/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::parse(self.offset + at, "zero denominator"));
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::from_integer(n))
        }
    }

    fn exponent(&mut self) -> Result<Q> {
        if self.eat('(') {
            let r = self.rational()?;
            self.expect(')')?;
            Ok(r)
        } else {
            self.rational()
        }
    }

    /// `t` with optional `^exp`; the `t` has already been consumed.
    fn t_power(&mut self) -> Result<Q> {
        if self.eat('^') {
            self.exponent()
        } else {
            Ok(Q::one())
        }
    }

    fn coefficient(&mut self, p: u64, negate: bool) -> Result<(u64, bool)> {
        let at = self.pos;
        let n = self.digits()?;
        let literal_zero = n.is_zero();
        let n = if negate { -n } else { n };
        let c = reduce_int(&n, p);
        if c == 0 && !literal_zero {
            return Err(Error::parse(self.offset + at, format!("coefficient vanishes mod {p}")));
        }
        Ok((c, literal_zero))
    }
}

fn series_from_cursor(cur: &mut Cursor, p: u64) -> Result<Series> {
    let mut terms: Vec<(Q, u64)> = Vec::new();
    let mut precision = GroupValue::Infinity;
    let mut first = true;
    let mut saw_precision = false;
    loop {
        let negate = if first {
            cur.eat('-')
        } else if cur.eat('+') {
            false
        } else if cur.eat('-') {
            true
        } else {
            break;
        };
        first = false;
        if saw_precision {
            return Err(cur.err("O(...) must be the last summand"));
        }
        match cur.peek() {
            Some('O') => {
                if negate {
                    return Err(cur.err("O(...) cannot be negated"));
                }
                cur.pos += 1;
                cur.expect('(')?;
                cur.expect('t')?;
                cur.expect('^')?;
                let e = cur.exponent()?;
                cur.expect(')')?;
                precision = GroupValue::Finite(e);
                saw_precision = true;
            }
            Some('t') => {
                cur.pos += 1;
                let e = cur.t_power()?;
                let c = if negate { p - 1 } else { 1 % p };
                terms.push((e, c));
            }
            Some(ch) if ch.is_ascii_digit() => {
                let (c, literal_zero) = cur.coefficient(p, negate)?;
                let star = cur.eat('*');
                if cur.eat('t') {
                    if literal_zero {
                        return Err(cur.err("zero coefficient on a t-power"));
                    }
                    let e = cur.t_power()?;
                    terms.push((e, c));
                } else if star {
                    return Err(cur.err("expected 't' after '*'"));
                } else if !literal_zero {
                    terms.push((Q::zero(), c));
                }
            }
            _ => return Err(cur.err("expected a term")),
        }
    }
    if first {
        return Err(cur.err("empty series"));
    }
    Ok(Series::from_terms(p, terms, precision))
}

pub fn parse_series(text: &str, p: u64) -> Result<Series> {
    let mut cur = Cursor::new(text, 0);
    let s = series_from_cursor(&mut cur, p)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(s)
}

/// Finds the `)` matching the `(` just consumed.
fn matching_paren(cur: &Cursor) -> Result<usize> {
    let mut depth = 1usize;
    let mut i = cur.pos;
    while i < cur.chars.len() {
        match cur.chars[i] {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
        i += 1;
    }
    Err(cur.err("unbalanced parenthesis"))
}

fn x_power(cur: &mut Cursor) -> Result<usize> {
    if cur.eat('^') {
        let at = cur.pos;
        let d = cur.digits()?;
        usize::try_from(d).map_err(|_| Error::parse(cur.offset + at, "degree too large"))
    } else {
        Ok(1)
    }
}

pub fn parse_poly(text: &str, p: u64) -> Result<ValPoly> {
    let mut cur = Cursor::new(text, 0);
    let mut coeffs: Vec<Series> = Vec::new();
    let add_at = |k: usize, c: Series, coeffs: &mut Vec<Series>| {
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Series::zero(p));
        }
        coeffs[k] = coeffs[k].add_series(&c);
    };
    let mut first = true;
    loop {
        let negate = if first {
            cur.eat('-')
        } else if cur.eat('+') {
            false
        } else if cur.eat('-') {
            true
        } else {
            break;
        };
        first = false;
        let (coeff, explicit) = match cur.peek() {
            Some('(') => {
                cur.pos += 1;
                let close = matching_paren(&cur)?;
                let inner: String = cur.chars[cur.pos..close].iter().collect();
                let mut sub = Cursor::new(&inner, cur.offset + cur.pos);
                let s = series_from_cursor(&mut sub, p)?;
                if !sub.at_end() {
                    return Err(sub.err("trailing input in coefficient"));
                }
                cur.pos = close + 1;
                (s, true)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let (c, _) = cur.coefficient(p, false)?;
                (Series::constant(p, c as i64), true)
            }
            Some('X') => (Series::one(p), false),
            _ => return Err(cur.err("expected a polynomial term")),
        };
        let coeff = if negate { coeff.neg_series() } else { coeff };
        let k = if explicit {
            if cur.eat('*') {
                cur.expect('X')?;
                x_power(&mut cur)?
            } else if cur.eat('X') {
                x_power(&mut cur)?
            } else {
                0
            }
        } else {
            cur.expect('X')?;
            x_power(&mut cur)?
        };
        add_at(k, coeff, &mut coeffs);
    }
    if first {
        return Err(cur.err("empty polynomial"));
    }
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(ValPoly::new(p, coeffs))
}
