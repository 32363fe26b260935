//! Recursive-descent parser for the expression grammar shared by the
//! library and the structure files (see `docs/grammar.md`).
//!
//! Precedence, loosest to tightest: `+ -`, then `* /` (left-associative),
//! unary `-`, then `^` with an integer-literal exponent. Functions are
//! `sin cos tan exp ln sqrt`, applied as `f(expr)`.

use super::{Chart, Expr, Func, SymError};
use num::{BigInt, BigRational};

pub fn parse_expr(text: &str, chart: &Chart) -> Result<Expr, SymError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        chart,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.syntax("end of input or operator"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    chart: &'a Chart,
}

impl<'a> Parser<'a> {
    fn syntax(&self, expected: &str) -> SymError {
        SymError::Syntax {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SymError> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(Expr::neg(self.term()?));
            } else {
                break;
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, SymError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                acc = Expr::mul(acc, self.factor()?);
            } else if self.eat(b'/') {
                acc = Expr::div(acc, self.factor()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, SymError> {
        self.skip_ws();
        if self.eat(b'-') {
            return Ok(Expr::neg(self.factor()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SymError> {
        let base = self.primary()?;
        self.skip_ws();
        if self.eat(b'^') {
            let exponent = self.exponent()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, SymError> {
        self.skip_ws();
        let negative = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("integer exponent"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let magnitude: i32 = digits.parse().map_err(|_| SymError::Syntax {
            offset: start,
            expected: "integer exponent within i32 range".to_string(),
        })?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn primary(&mut self) -> Result<Expr, SymError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.syntax("`)`"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => self.number(),
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => self.symbol(),
            _ => Err(self.syntax("number, symbol or `(`")),
        }
    }

    fn number(&mut self) -> Result<Expr, SymError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_part = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let mut numer: BigInt = int_part.parse().unwrap();
        let mut denom = BigInt::from(1);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == frac_start {
                return Err(self.syntax("digits after decimal point"));
            }
            let frac = std::str::from_utf8(&self.bytes[frac_start..self.pos]).unwrap();
            for d in frac.bytes() {
                numer = numer * 10 + BigInt::from(d - b'0');
                denom *= 10;
            }
        }
        Ok(Expr::rational(BigRational::new(numer, denom)))
    }

    fn symbol(&mut self) -> Result<Expr, SymError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        self.skip_ws();
        if self.peek() == Some(b'(') {
            let func =
                Func::from_name(name).ok_or_else(|| SymError::UnknownSymbol(name.to_string()))?;
            self.pos += 1;
            let arg = self.expr()?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.syntax("`)`"));
            }
            return Ok(Expr::func(func, arg));
        }
        if let Some(i) = self.chart.coord_index(name) {
            Ok(Expr::coord(i))
        } else if let Some(i) = self.chart.param_index(name) {
            Ok(Expr::param(i))
        } else {
            Err(SymError::UnknownSymbol(name.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Chart, Point, SymError};
    use super::parse_expr;

    fn chart() -> Chart {
        Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap()
    }

    #[test]
    fn accepts_schwarzschild_factor() {
        let c = chart();
        let e = parse_expr("1 - 2*M/r", &c).unwrap();
        let v = e
            .evaluate(&Point::new([0.0, 4.0, 0.0, 0.0]).unwrap(), &c)
            .unwrap();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let c = chart();
        match parse_expr("r*(", &c) {
            Err(SymError::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_symbol() {
        let c = chart();
        assert_eq!(
            parse_expr("1 - 2*M/q", &c),
            Err(SymError::UnknownSymbol("q".into()))
        );
    }

    #[test]
    fn decimal_literals_are_exact_rationals() {
        let c = chart();
        let e = parse_expr("0.125", &c).unwrap();
        assert_eq!(e, super::super::Expr::ratio(1, 8));
    }

    #[test]
    fn unknown_function_name() {
        let c = chart();
        assert_eq!(
            parse_expr("q(r)", &c),
            Err(SymError::UnknownSymbol("q".into()))
        );
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let c = chart();
        assert!(matches!(
            parse_expr("r r", &c),
            Err(SymError::Syntax { .. })
        ));
    }

    #[test]
    fn precedence_matches_grammar() {
        let c = chart();
        let a = parse_expr("1 + 2*r^2", &c).unwrap();
        let b = parse_expr("1 + (2*(r^2))", &c).unwrap();
        assert_eq!(a, b);
        let d = parse_expr("-r^2", &c).unwrap();
        let e = parse_expr("-(r^2)", &c).unwrap();
        assert_eq!(d, e);
    }
}
