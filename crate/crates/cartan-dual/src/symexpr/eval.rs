//! Numeric evaluation of expressions at chart points.

use super::{rational_to_f64, Chart, Expr, Func, Node, Point, SymError};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainErrorKind {
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    NonFiniteResult,
}

impl fmt::Display for DomainErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainErrorKind::DivisionByZero => "division by zero",
            DomainErrorKind::LogOfNonPositive => "ln of non-positive value",
            DomainErrorKind::SqrtOfNegative => "sqrt of negative value",
            DomainErrorKind::NonFiniteResult => "non-finite result",
        };
        f.write_str(s)
    }
}

impl Expr {
    /// Evaluates to an IEEE double. Deterministic for fixed input; domain
    /// violations carry the offending subexpression.
    pub fn evaluate(&self, p: &Point, chart: &Chart) -> Result<f64, SymError> {
        let v = self.eval_inner(p, chart)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.domain_error(DomainErrorKind::NonFiniteResult, chart))
        }
    }

    fn domain_error(&self, kind: DomainErrorKind, chart: &Chart) -> SymError {
        SymError::Domain {
            kind,
            expr: self.print(chart),
        }
    }

    fn eval_inner(&self, p: &Point, chart: &Chart) -> Result<f64, SymError> {
        Ok(match self.node() {
            Node::Const(c) => rational_to_f64(c),
            Node::Coord(i) => p.0[*i],
            Node::Param(i) => chart.param_value(*i),
            Node::Add(terms) => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.eval_inner(p, chart)?;
                }
                acc
            }
            Node::Mul(factors) => {
                let mut acc = 1.0;
                for f in factors {
                    acc *= f.eval_inner(p, chart)?;
                }
                acc
            }
            Node::Pow(base, n) => {
                let b = base.eval_inner(p, chart)?;
                if b == 0.0 && *n < 0 {
                    return Err(self.domain_error(DomainErrorKind::DivisionByZero, chart));
                }
                b.powi(*n)
            }
            Node::Div(num, den) => {
                let d = den.eval_inner(p, chart)?;
                if d == 0.0 {
                    return Err(self.domain_error(DomainErrorKind::DivisionByZero, chart));
                }
                num.eval_inner(p, chart)? / d
            }
            Node::Neg(e) => -e.eval_inner(p, chart)?,
            Node::Func(f, arg) => {
                let a = arg.eval_inner(p, chart)?;
                match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Exp => a.exp(),
                    Func::Ln => {
                        if a <= 0.0 {
                            return Err(
                                self.domain_error(DomainErrorKind::LogOfNonPositive, chart)
                            );
                        }
                        a.ln()
                    }
                    Func::Sqrt => {
                        if a < 0.0 {
                            return Err(self.domain_error(DomainErrorKind::SqrtOfNegative, chart));
                        }
                        a.sqrt()
                    }
                }
            }
        })
    }
}

/// Free-function form of [`Expr::evaluate`].
pub fn evaluate(e: &Expr, p: &Point, chart: &Chart) -> Result<f64, SymError> {
    e.evaluate(p, chart)
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    fn chart() -> Chart {
        Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap()
    }

    #[test]
    fn schwarzschild_factor_at_r4() {
        let c = chart();
        let e = parse_expr("1 - 2*M/r", &c).unwrap();
        let v = e
            .evaluate(&Point::new([0.0, 4.0, 0.0, 0.0]).unwrap(), &c)
            .unwrap();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn pole_is_a_domain_error() {
        let c = chart();
        let e = parse_expr("1/r", &c).unwrap();
        let err = e
            .evaluate(&Point::new([0.0, 0.0, 0.0, 0.0]).unwrap(), &c)
            .unwrap_err();
        assert!(matches!(
            err,
            SymError::Domain {
                kind: DomainErrorKind::DivisionByZero,
                ..
            }
        ));
    }

    #[test]
    fn sin_at_zero() {
        let c = chart();
        let e = parse_expr("sin(th)", &c).unwrap();
        let v = e
            .evaluate(&Point::new([0.0, 1.0, 0.0, 0.0]).unwrap(), &c)
            .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn sqrt_and_ln_domains() {
        let c = chart();
        let p = Point::new([0.0, -2.0, 0.0, 0.0]).unwrap();
        let sqrt = parse_expr("sqrt(r)", &c).unwrap();
        assert!(matches!(
            sqrt.evaluate(&p, &c),
            Err(SymError::Domain {
                kind: DomainErrorKind::SqrtOfNegative,
                ..
            })
        ));
        let ln = parse_expr("ln(r)", &c).unwrap();
        assert!(matches!(
            ln.evaluate(&p, &c),
            Err(SymError::Domain {
                kind: DomainErrorKind::LogOfNonPositive,
                ..
            })
        ));
    }
}
