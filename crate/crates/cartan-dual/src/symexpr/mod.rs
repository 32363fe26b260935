//! Symbolic scalar expressions over a four-coordinate chart.
//!
//! Expressions are immutable trees shared through [`Arc`], built through
//! normalizing constructors that apply the cheap rewrites (constant folding
//! over exact rationals, unit/absorber elimination, flattening of nested
//! sums and products). Differentiation is exact and closed over the node
//! set; numeric evaluation produces IEEE doubles and reports domain
//! violations instead of returning NaN/inf.

mod eval;
mod parse;
mod print;

pub use eval::{evaluate, DomainErrorKind};
pub use parse::parse_expr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// A coordinate chart: four ordered coordinate names plus named real
/// parameters (constants under differentiation).
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    coords: [String; 4],
    params: Vec<(String, f64)>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ChartError {
    #[error("chart needs 4 distinct coordinate names, `{0}` repeats")]
    DuplicateCoord(String),
    #[error("`{0}` is declared both as a coordinate and as a parameter")]
    CoordParamClash(String),
    #[error("parameter `{0}` is declared twice")]
    DuplicateParam(String),
    #[error("parameter `{0}` must be finite, got {1}")]
    NonFiniteParam(String, f64),
}

impl Chart {
    pub fn new<S: Into<String>>(
        coords: [S; 4],
        params: Vec<(String, f64)>,
    ) -> Result<Self, ChartError> {
        let coords = coords.map(Into::into);
        for i in 0..4 {
            for j in (i + 1)..4 {
                if coords[i] == coords[j] {
                    return Err(ChartError::DuplicateCoord(coords[i].clone()));
                }
            }
        }
        for (i, (name, value)) in params.iter().enumerate() {
            if coords.contains(name) {
                return Err(ChartError::CoordParamClash(name.clone()));
            }
            if params[..i].iter().any(|(n, _)| n == name) {
                return Err(ChartError::DuplicateParam(name.clone()));
            }
            if !value.is_finite() {
                return Err(ChartError::NonFiniteParam(name.clone(), *value));
            }
        }
        Ok(Chart { coords, params })
    }

    pub fn coords(&self) -> &[String; 4] {
        &self.coords
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|(n, _)| n == name)
    }

    pub fn param_value(&self, index: usize) -> f64 {
        self.params[index].1
    }
}

/// A point of the chart: four finite coordinate values in chart order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub [f64; 4]);

impl Point {
    pub fn new(values: [f64; 4]) -> Result<Self, SymError> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SymError::NonFinitePoint(values));
        }
        Ok(Point(values))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, PartialEq)]
pub(crate) enum Node {
    Const(BigRational),
    Coord(usize),
    Param(usize),
    /// n-ary sum; at least two summands, none a `Const(0)` or nested `Add`.
    Add(Vec<Expr>),
    /// n-ary product; a leading rational coefficient is folded into the
    /// first slot when it is not one.
    Mul(Vec<Expr>),
    /// Integer power; exponent never 0 or 1, base never a constant.
    Pow(Expr, i32),
    Div(Expr, Expr),
    Neg(Expr),
    Func(Func, Expr),
}

/// Immutable symbolic expression. Cloning is cheap (shared `Arc` nodes);
/// values are `Send + Sync` and freely shareable across threads.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

#[derive(Debug, Error, PartialEq)]
pub enum SymError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{kind} in `{expr}`")]
    Domain { kind: DomainErrorKind, expr: String },
    #[error("point has non-finite coordinates {0:?}")]
    NonFinitePoint([f64; 4]),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.debug_string())
    }
}

impl Expr {
    pub(crate) fn node(&self) -> &Node {
        &self.0
    }

    fn raw(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn zero() -> Expr {
        Expr::from_int(0)
    }

    pub fn one() -> Expr {
        Expr::from_int(1)
    }

    pub fn from_int(n: i64) -> Expr {
        Expr::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(r: BigRational) -> Expr {
        Expr::raw(Node::Const(r))
    }

    /// Exact promotion of a finite double to a rational constant (every
    /// finite IEEE double is a dyadic rational).
    pub fn from_f64(v: f64) -> Option<Expr> {
        BigRational::from_float(v).map(Expr::rational)
    }

    pub fn ratio(num: i64, den: i64) -> Expr {
        assert!(den != 0, "rational literal with zero denominator");
        Expr::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn coord(index: usize) -> Expr {
        assert!(index < 4);
        Expr::raw(Node::Coord(index))
    }

    pub fn param(index: usize) -> Expr {
        Expr::raw(Node::Param(index))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), Node::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self.node(), Node::Const(c) if c.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    /// n-ary sum with flattening, zero elimination, constant folding, and
    /// cancellation of structurally opposite terms (x + (−x) → 0).
    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut acc = BigRational::zero();
        let mut out: Vec<Expr> = Vec::with_capacity(terms.len());
        let push = |t: &Expr, out: &mut Vec<Expr>| {
            let opposite = |a: &Expr, b: &Expr| -> bool {
                match (a.node(), b.node()) {
                    (Node::Neg(inner), _) => inner == b,
                    (_, Node::Neg(inner)) => inner == a,
                    _ => false,
                }
            };
            if let Some(pos) = out.iter().position(|prev| opposite(prev, t)) {
                out.remove(pos);
            } else {
                out.push(t.clone());
            }
        };
        for term in terms {
            match term.node() {
                Node::Const(c) => acc += c,
                Node::Add(inner) => {
                    for t in inner {
                        match t.node() {
                            Node::Const(c) => acc += c,
                            _ => push(t, &mut out),
                        }
                    }
                }
                _ => push(&term, &mut out),
            }
        }
        if !acc.is_zero() {
            out.push(Expr::rational(acc));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::raw(Node::Add(out)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::sum(vec![a, b])
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::sum(vec![a, Expr::neg(b)])
    }

    /// n-ary product with flattening, absorber/unit elimination and exact
    /// folding of the rational coefficient. Signs and nested products are
    /// absorbed recursively so the factor list never hides a `Mul` or
    /// `Neg` and the rational coefficient is fully folded.
    pub fn product(factors: Vec<Expr>) -> Expr {
        fn absorb(e: &Expr, coeff: &mut BigRational, out: &mut Vec<Expr>) {
            match e.node() {
                Node::Const(c) => *coeff *= c,
                Node::Neg(inner) => {
                    *coeff = -std::mem::take(coeff);
                    absorb(inner, coeff, out);
                }
                Node::Mul(inner) => {
                    for f in inner {
                        absorb(f, coeff, out);
                    }
                }
                _ => out.push(e.clone()),
            }
        }
        let mut coeff = BigRational::one();
        let mut out: Vec<Expr> = Vec::with_capacity(factors.len());
        for factor in &factors {
            absorb(factor, &mut coeff, &mut out);
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        // Signs live outside products: the kept coefficient is positive and
        // a `Neg` wraps the whole product, so the different ways of writing
        // a negated product all reach the same normal form.
        let negative = coeff.is_negative();
        if negative {
            coeff = -coeff;
        }
        let body = match out.len() {
            0 => Expr::rational(coeff),
            1 => {
                let solo = out.pop().unwrap();
                if coeff.is_one() {
                    solo
                } else {
                    Expr::raw(Node::Mul(vec![Expr::rational(coeff), solo]))
                }
            }
            _ => {
                if coeff.is_one() {
                    Expr::raw(Node::Mul(out))
                } else {
                    let mut with_coeff = vec![Expr::rational(coeff)];
                    with_coeff.extend(out);
                    Expr::raw(Node::Mul(with_coeff))
                }
            }
        };
        if negative {
            Expr::neg(body)
        } else {
            body
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::product(vec![a, b])
    }

    pub fn neg(e: Expr) -> Expr {
        match e.node() {
            Node::Const(c) => Expr::rational(-c.clone()),
            Node::Neg(inner) => inner.clone(),
            _ => Expr::raw(Node::Neg(e)),
        }
    }

    /// Integer power. `x^0 -> 1` and `x^1 -> x`; constant bases fold
    /// exactly except `0^n` with negative `n`, which is kept for the
    /// evaluator to report.
    pub fn pow(base: Expr, exponent: i32) -> Expr {
        match exponent {
            0 => return Expr::one(),
            1 => return base,
            _ => {}
        }
        if let Node::Const(c) = base.node() {
            if !(c.is_zero() && exponent < 0) {
                return Expr::rational(rational_powi(c, exponent));
            }
        }
        if let Node::Pow(inner, n) = base.node() {
            if let Some(combined) = n.checked_mul(exponent) {
                return Expr::pow(inner.clone(), combined);
            }
        }
        Expr::raw(Node::Pow(base, exponent))
    }

    /// Quotient. Constant non-zero divisors fold into a product by the
    /// reciprocal; a zero numerator folds to zero; signs move outward.
    pub fn div(num: Expr, den: Expr) -> Expr {
        if let Node::Const(c) = den.node() {
            if !c.is_zero() {
                return Expr::mul(num, Expr::rational(c.recip()));
            }
            // Division by literal zero: keep the node so evaluation
            // reports the offending subexpression.
            return Expr::raw(Node::Div(num, den));
        }
        if num.is_zero() {
            return Expr::zero();
        }
        if let Node::Neg(inner) = num.node() {
            return Expr::neg(Expr::div(inner.clone(), den));
        }
        if let Node::Neg(inner) = den.node() {
            return Expr::neg(Expr::div(num, inner.clone()));
        }
        Expr::raw(Node::Div(num, den))
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        Expr::raw(Node::Func(f, arg))
    }

    pub fn sqrt(arg: Expr) -> Expr {
        Expr::func(Func::Sqrt, arg)
    }

    /// Rebuilds the tree bottom-up through the normalizing constructors.
    /// The result evaluates identically at every non-singular point.
    pub fn simplify(&self) -> Expr {
        match self.node() {
            Node::Const(_) | Node::Coord(_) | Node::Param(_) => self.clone(),
            Node::Add(terms) => Expr::sum(terms.iter().map(|t| t.simplify()).collect()),
            Node::Mul(factors) => Expr::product(factors.iter().map(|f| f.simplify()).collect()),
            Node::Pow(base, n) => Expr::pow(base.simplify(), *n),
            Node::Div(a, b) => Expr::div(a.simplify(), b.simplify()),
            Node::Neg(e) => Expr::neg(e.simplify()),
            Node::Func(f, e) => Expr::func(*f, e.simplify()),
        }
    }

    /// Exact derivative with respect to the coordinate at `coord`.
    /// Parameters are constants.
    pub fn diff(&self, coord: usize) -> Expr {
        match self.node() {
            Node::Const(_) | Node::Param(_) => Expr::zero(),
            Node::Coord(i) => {
                if *i == coord {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Add(terms) => Expr::sum(terms.iter().map(|t| t.diff(coord)).collect()),
            Node::Mul(factors) => {
                let mut terms = Vec::with_capacity(factors.len());
                for (i, f) in factors.iter().enumerate() {
                    let df = f.diff(coord);
                    if df.is_zero() {
                        continue;
                    }
                    let mut parts = vec![df];
                    for (j, g) in factors.iter().enumerate() {
                        if j != i {
                            parts.push(g.clone());
                        }
                    }
                    terms.push(Expr::product(parts));
                }
                Expr::sum(terms)
            }
            Node::Pow(base, n) => {
                let db = base.diff(coord);
                if db.is_zero() {
                    return Expr::zero();
                }
                Expr::product(vec![
                    Expr::from_int(*n as i64),
                    Expr::pow(base.clone(), n - 1),
                    db,
                ])
            }
            Node::Div(num, den) => {
                // (u/v)' = u'/v - u v'/v^2
                let du = num.diff(coord);
                let dv = den.diff(coord);
                Expr::sub(
                    Expr::div(du, den.clone()),
                    Expr::div(Expr::mul(num.clone(), dv), Expr::pow(den.clone(), 2)),
                )
            }
            Node::Neg(e) => Expr::neg(e.diff(coord)),
            Node::Func(f, arg) => {
                let da = arg.diff(coord);
                if da.is_zero() {
                    return Expr::zero();
                }
                let outer = match f {
                    Func::Sin => Expr::func(Func::Cos, arg.clone()),
                    Func::Cos => Expr::neg(Expr::func(Func::Sin, arg.clone())),
                    Func::Tan => Expr::div(
                        Expr::one(),
                        Expr::pow(Expr::func(Func::Cos, arg.clone()), 2),
                    ),
                    Func::Exp => Expr::func(Func::Exp, arg.clone()),
                    Func::Ln => Expr::div(Expr::one(), arg.clone()),
                    Func::Sqrt => Expr::div(
                        Expr::ratio(1, 2),
                        Expr::func(Func::Sqrt, arg.clone()),
                    ),
                };
                Expr::mul(outer, da)
            }
        }
    }

    /// Derivative taken by coordinate name.
    pub fn differentiate(&self, chart: &Chart, coord: &str) -> Result<Expr, SymError> {
        let index = chart
            .coord_index(coord)
            .ok_or_else(|| SymError::UnknownSymbol(coord.to_string()))?;
        Ok(self.diff(index))
    }

    fn debug_string(&self) -> String {
        self.print_generic()
    }
}

fn rational_powi(base: &BigRational, exponent: i32) -> BigRational {
    if exponent == 0 {
        return BigRational::one();
    }
    let e = exponent.unsigned_abs();
    let positive = BigRational::new(base.numer().pow(e), base.denom().pow(e));
    if exponent < 0 {
        positive.recip()
    } else {
        positive
    }
}

/// Convenience free function mirroring the operation table.
pub fn differentiate(e: &Expr, chart: &Chart, coord: &str) -> Result<Expr, SymError> {
    e.differentiate(chart, coord)
}

pub fn simplify(e: &Expr) -> Expr {
    e.simplify()
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub(crate) fn rational_is_negative(r: &BigRational) -> bool {
    r.is_negative()
}
