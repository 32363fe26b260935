//! The 16-dimensional exterior algebra of a 4-dimensional cotangent fibre.
//!
//! Basis monomials are indexed by 4-bit masks (bit `i` set means the basis
//! 1-form `i` is a factor) and stored in increasing index order, so equality
//! is coefficient-wise. The coefficient ring is generic: `f64` for numeric
//! checks, `BigRational` for the exact identity suites, [`Expr`] for
//! symbolic field components.
//!
//! The scalar product follows the Gram-determinant rule on simple forms and
//! extends by grade orthogonality; the left contraction is computed through
//! the one-form expansion `a ⌟ (b1∧…∧bk) = Σ (−1)^{j+1} (a·b_j) b1∧…b̌_j…∧bk`;
//! the Hodge star of a volume form τ is `⋆A = Ã ⌟ τ`.

use crate::symexpr::Expr;
use num::{BigRational, FromPrimitive, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub const DIM: usize = 4;
pub const BASIS: usize = 16;
/// Mask of the top monomial e0123.
pub const TOP: usize = 0b1111;

#[derive(Debug, Error, PartialEq)]
pub enum ExteriorError {
    #[error("metric is singular (det {0})")]
    SingularMetric(String),
}

/// Field operations needed by the exterior algebra.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_i64(n).unwrap()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn one() -> Self {
        Expr::one()
    }
    fn from_int(n: i64) -> Self {
        Expr::from_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        Expr::add(self.clone(), rhs.clone())
    }
    fn sub(&self, rhs: &Self) -> Self {
        Expr::sub(self.clone(), rhs.clone())
    }
    fn mul(&self, rhs: &Self) -> Self {
        Expr::mul(self.clone(), rhs.clone())
    }
    fn div(&self, rhs: &Self) -> Self {
        Expr::div(self.clone(), rhs.clone())
    }
    fn neg(&self) -> Self {
        Expr::neg(self.clone())
    }
    fn is_zero(&self) -> bool {
        Expr::is_zero(self)
    }
}

pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

pub(crate) fn indices_of(mask: usize) -> impl Iterator<Item = usize> {
    (0..DIM).filter(move |i| mask & (1 << i) != 0)
}

/// Sign of merging ordered monomial `a` in front of ordered monomial `b`
/// (masks must be disjoint): parity of the transpositions needed to sort
/// the concatenation.
fn merge_sign(a: usize, b: usize) -> i64 {
    let mut inversions = 0u32;
    for i in indices_of(b) {
        inversions += (a >> (i + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Graded element of the exterior algebra over a 4-dimensional fibre.
#[derive(Clone, PartialEq)]
pub struct Multivector<R: Scalar> {
    coeffs: Vec<R>,
}

impl<R: Scalar> fmt::Debug for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{c:?}")?;
            } else {
                write!(f, "{c:?}*{}", monomial_name(mask))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Documented monomial naming: `e` followed by the increasing basis
/// indices, e.g. `e013` for θ^0∧θ^1∧θ^3.
pub fn monomial_name(mask: usize) -> String {
    let mut s = String::from("e");
    for i in indices_of(mask) {
        s.push(char::from_digit(i as u32, 10).unwrap());
    }
    s
}

impl<R: Scalar> Multivector<R> {
    pub fn zero() -> Self {
        Multivector {
            coeffs: vec![R::zero(); BASIS],
        }
    }

    pub fn scalar(value: R) -> Self {
        let mut mv = Self::zero();
        mv.coeffs[0] = value;
        mv
    }

    pub fn basis(mask: usize) -> Self {
        let mut mv = Self::zero();
        mv.coeffs[mask] = R::one();
        mv
    }

    pub fn one_form(i: usize) -> Self {
        assert!(i < DIM);
        Self::basis(1 << i)
    }

    pub fn from_fn(mut f: impl FnMut(usize) -> R) -> Self {
        Multivector {
            coeffs: (0..BASIS).map(|m| f(m)).collect(),
        }
    }

    pub fn coeff(&self, mask: usize) -> &R {
        &self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: R) {
        self.coeffs[mask] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<S: Scalar>(&self, mut f: impl FnMut(&R) -> S) -> Multivector<S> {
        Multivector {
            coeffs: self.coeffs.iter().map(|c| f(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|m| self.coeffs[m].add(&rhs.coeffs[m]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|m| self.coeffs[m].sub(&rhs.coeffs[m]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|m| self.coeffs[m].neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        Self::from_fn(|m| self.coeffs[m].mul(s))
    }

    /// Projection onto grade `r`; zero for `r ∉ 0..=4`.
    pub fn grade_project(&self, r: usize) -> Self {
        Self::from_fn(|m| {
            if grade_of(m) == r {
                self.coeffs[m].clone()
            } else {
                R::zero()
            }
        })
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                if cb.is_zero() || a & b != 0 {
                    continue;
                }
                let sign = merge_sign(a, b);
                let mut term = ca.mul(cb);
                if sign < 0 {
                    term = term.neg();
                }
                out.coeffs[a | b] = out.coeffs[a | b].add(&term);
            }
        }
        out
    }

    /// Grade-r part picks up (−1)^{r(r−1)/2}.
    pub fn reverse(&self) -> Self {
        Self::from_fn(|m| {
            let r = grade_of(m);
            if (r * r.saturating_sub(1) / 2) % 2 == 1 {
                self.coeffs[m].neg()
            } else {
                self.coeffs[m].clone()
            }
        })
    }

    /// Grade involution: grade-r part picks up (−1)^r.
    pub fn grade_involution(&self) -> Self {
        Self::from_fn(|m| {
            if grade_of(m) % 2 == 1 {
                self.coeffs[m].neg()
            } else {
                self.coeffs[m].clone()
            }
        })
    }

    /// Scalar product per the Gram-determinant rule, grades pairwise
    /// orthogonal.
    pub fn scalar_product(&self, rhs: &Self, m: &FibreMetric<R>) -> R {
        let mut acc = R::zero();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                if cb.is_zero() || grade_of(a) != grade_of(b) {
                    continue;
                }
                let g = m.monomial_product(a, b);
                if g.is_zero() {
                    continue;
                }
                acc = acc.add(&ca.mul(cb).mul(&g));
            }
        }
        acc
    }

    /// Left contraction `self ⌟ rhs`.
    pub fn left_contract(&self, rhs: &Self, m: &FibreMetric<R>) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let contracted = contract_monomial_into(a, rhs, m);
            for (mask, c) in contracted.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.coeffs[mask] = out.coeffs[mask].add(&ca.mul(c));
            }
        }
        out
    }

    /// Right contraction `self ⌞ rhs`, through the degree rule relating it
    /// to the left contraction: Y_j ⌟ Y_k = (−1)^{j(k−j)} Y_k ⌞ Y_j, j ≤ k.
    pub fn right_contract(&self, rhs: &Self, m: &FibreMetric<R>) -> Self {
        let mut out = Self::zero();
        for k in 0..=DIM {
            let xk = self.grade_project(k);
            if xk.is_zero() {
                continue;
            }
            for j in 0..=k {
                let yj = rhs.grade_project(j);
                if yj.is_zero() {
                    continue;
                }
                let mut part = yj.left_contract(&xk, m);
                if (j * (k - j)) % 2 == 1 {
                    part = part.neg();
                }
                out = out.add(&part);
            }
        }
        out
    }
}

impl Multivector<f64> {
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Multivector<f64> {
    /// Promotion into the symbolic ring (exact dyadic constants), for
    /// mixing numeric data into symbolic computations with one code path.
    pub fn to_symbolic(&self) -> Multivector<Expr> {
        self.map(|c| Expr::from_f64(*c).expect("finite coefficient"))
    }
}

impl Multivector<Expr> {
    pub fn evaluate(
        &self,
        p: &crate::symexpr::Point,
        chart: &crate::symexpr::Chart,
    ) -> Result<Multivector<f64>, crate::symexpr::SymError> {
        let mut out = Multivector::<f64>::zero();
        for m in 0..BASIS {
            out.set_coeff(m, self.coeffs[m].evaluate(p, chart)?);
        }
        Ok(out)
    }

    /// Exterior derivative when the coefficients are fields over the chart
    /// and the basis monomials are the coordinate differentials dx^μ.
    pub fn exterior_derivative(&self) -> Multivector<Expr> {
        let mut out = Multivector::<Expr>::zero();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for mu in 0..DIM {
                if mask & (1 << mu) != 0 {
                    continue;
                }
                let dc = c.diff(mu);
                if dc.is_zero() {
                    continue;
                }
                let sign = merge_sign(1 << mu, mask);
                let term = if sign < 0 { Expr::neg(dc) } else { dc };
                let target = mask | (1 << mu);
                out.coeffs[target] = out.coeffs[target].add(&term);
            }
        }
        out
    }
}

/// `(e_{i1}∧…∧e_{ik}) ⌟ Y = e_{i1} ⌟ (… ⌟ (e_{ik} ⌟ Y))`.
fn contract_monomial_into<R: Scalar>(
    mask: usize,
    target: &Multivector<R>,
    m: &FibreMetric<R>,
) -> Multivector<R> {
    if mask == 0 {
        return target.clone();
    }
    let mut acc = target.clone();
    let idx: Vec<usize> = indices_of(mask).collect();
    for &i in idx.iter().rev() {
        acc = contract_one_form(i, &acc, m);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `e_i ⌟ e_J = Σ_t (−1)^{t+1} g^{i j_t} e_{J ∖ j_t}`.
fn contract_one_form<R: Scalar>(
    i: usize,
    target: &Multivector<R>,
    m: &FibreMetric<R>,
) -> Multivector<R> {
    let mut out: Multivector<R> = Multivector::zero();
    for (mask, c) in target.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (t, j) in indices_of(mask).enumerate() {
            let g = m.upper(i, j);
            if g.is_zero() {
                continue;
            }
            let mut term = c.mul(g);
            if t % 2 == 1 {
                term = term.neg();
            }
            let rest = mask & !(1 << j);
            out.coeffs[rest] = out.coeffs[rest].add(&term);
        }
    }
    out
}

/// Fibre metric: covariant components `g_{μν}` with the cached inverse
/// `g^{μν}`; the scalar product of 1-forms is `θ^μ·θ^ν = g^{μν}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FibreMetric<R: Scalar> {
    lower: [[R; 4]; 4],
    upper: [[R; 4]; 4],
    det: R,
}

impl<R: Scalar> FibreMetric<R> {
    /// Builds the metric from its covariant components, inverting exactly
    /// through the adjugate. Fails when the determinant is zero (for `f64`,
    /// `|det| < 1e-12`).
    pub fn from_lower(lower: [[R; 4]; 4]) -> Result<Self, ExteriorError> {
        let det = det4(&lower);
        if singular(&det) {
            return Err(ExteriorError::SingularMetric(format!("{det:?}")));
        }
        let adj = adjugate4(&lower);
        let upper = std::array::from_fn(|i| std::array::from_fn(|j| adj[i][j].div(&det)));
        Ok(FibreMetric { lower, upper, det })
    }

    /// For symbolic metrics the caller supplies the inverse it already
    /// knows; no zero test is possible before evaluation.
    pub fn from_parts(lower: [[R; 4]; 4], upper: [[R; 4]; 4]) -> Self {
        let det = det4(&lower);
        FibreMetric { lower, upper, det }
    }

    pub fn lower(&self, i: usize, j: usize) -> &R {
        &self.lower[i][j]
    }

    pub fn upper(&self, i: usize, j: usize) -> &R {
        &self.upper[i][j]
    }

    pub fn det(&self) -> &R {
        &self.det
    }

    /// Scalar product of two same-grade basis monomials: the Gram
    /// determinant `det(g^{i_a j_b})`.
    pub fn monomial_product(&self, a: usize, b: usize) -> R {
        let rows: Vec<usize> = indices_of(a).collect();
        let cols: Vec<usize> = indices_of(b).collect();
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => R::one(),
            1 => self.upper[rows[0]][cols[0]].clone(),
            n => {
                let mut acc = R::zero();
                permute(n, &mut |perm, sign| {
                    let mut prod = R::one();
                    for (r, &p) in perm.iter().enumerate() {
                        prod = prod.mul(&self.upper[rows[r]][cols[p]]);
                    }
                    if sign < 0 {
                        prod = prod.neg();
                    }
                    acc = acc.add(&prod);
                });
                acc
            }
        }
    }
}

impl FibreMetric<Expr> {
    pub fn evaluate(
        &self,
        p: &crate::symexpr::Point,
        chart: &crate::symexpr::Chart,
    ) -> Result<FibreMetric<f64>, crate::symexpr::SymError> {
        let mut lower = [[0.0; 4]; 4];
        for (i, row) in lower.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.lower[i][j].evaluate(p, chart)?;
            }
        }
        FibreMetric::from_lower(lower).map_err(|_| crate::symexpr::SymError::Domain {
            kind: crate::symexpr::DomainErrorKind::DivisionByZero,
            expr: "metric determinant vanishes at sample point".to_string(),
        })
    }
}

fn singular<R: Scalar>(det: &R) -> bool {
    if let Some(d) = (det as &dyn std::any::Any).downcast_ref::<f64>() {
        d.abs() < 1e-12
    } else {
        det.is_zero()
    }
}

/// Enumerates permutations of `0..n` with their signs (Heap's algorithm).
fn permute(n: usize, visit: &mut impl FnMut(&[usize], i64)) {
    fn heap(
        k: usize,
        perm: &mut Vec<usize>,
        sign: &mut i64,
        visit: &mut impl FnMut(&[usize], i64),
    ) {
        if k == 1 {
            visit(perm, *sign);
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, sign, visit);
            if i < k - 1 {
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i64;
    heap(n, &mut perm, &mut sign, visit);
}

pub fn det4<R: Scalar>(m: &[[R; 4]; 4]) -> R {
    let mut acc = R::zero();
    permute(4, &mut |perm, sign| {
        let mut prod = R::one();
        for (r, &p) in perm.iter().enumerate() {
            prod = prod.mul(&m[r][p]);
        }
        if sign < 0 {
            prod = prod.neg();
        }
        acc = acc.add(&prod);
    });
    acc
}

/// Adjugate (transpose of cofactors), so that `m · adj = det · I`.
pub fn adjugate4<R: Scalar>(m: &[[R; 4]; 4]) -> [[R; 4]; 4] {
    let minor = |row: usize, col: usize| -> R {
        let rows: Vec<usize> = (0..4).filter(|&r| r != row).collect();
        let cols: Vec<usize> = (0..4).filter(|&c| c != col).collect();
        let mut acc = R::zero();
        permute(3, &mut |perm, sign| {
            let mut prod = R::one();
            for (r, &p) in perm.iter().enumerate() {
                prod = prod.mul(&m[rows[r]][cols[p]]);
            }
            if sign < 0 {
                prod = prod.neg();
            }
            acc = acc.add(&prod);
        });
        acc
    };
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            // adj[i][j] = (−1)^{i+j} · minor(j, i)
            let c = minor(j, i);
            if (i + j) % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
    })
}

/// Orientation data: the volume element τ (grade 4) plus the sign chosen
/// for ε_{0123}.
#[derive(Debug, Clone, PartialEq)]
pub struct Orientation<R: Scalar> {
    tau: Multivector<R>,
    sign: i8,
}

impl<R: Scalar> Orientation<R> {
    /// τ = sign · factor · e0123, with `factor` the value of √|det g| in
    /// the basis being used.
    pub fn from_volume_factor(factor: R, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        let mut tau = Multivector::zero();
        let c = if sign < 0 { factor.neg() } else { factor };
        tau.set_coeff(TOP, c);
        Orientation { tau, sign }
    }

    pub fn tau(&self) -> &Multivector<R> {
        &self.tau
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Wraps an already-assembled volume element.
    pub fn from_tau(tau: Multivector<R>, sign: i8) -> Self {
        Orientation { tau, sign }
    }
}

impl Orientation<f64> {
    pub fn from_metric(m: &FibreMetric<f64>, sign: i8) -> Result<Self, ExteriorError> {
        let det = *m.det();
        if det.abs() < 1e-12 {
            return Err(ExteriorError::SingularMetric(det.to_string()));
        }
        Ok(Self::from_volume_factor(det.abs().sqrt(), sign))
    }
}

impl Orientation<BigRational> {
    /// For the exact suites: metrics of the form PᵀηP have |det g| =
    /// (det P)², so the volume factor |det P| stays rational.
    pub fn from_rational_factor(factor: BigRational, sign: i8) -> Self {
        Self::from_volume_factor(factor.abs(), sign)
    }
}

/// Hodge star ⋆A = Ã ⌟ τ; satisfies A∧⋆B = (A·B)τ for same-grade A, B.
pub fn hodge_star<R: Scalar>(
    a: &Multivector<R>,
    m: &FibreMetric<R>,
    o: &Orientation<R>,
) -> Multivector<R> {
    a.reverse().left_contract(o.tau(), m)
}

/// Inverse Hodge star: on grade r, ⋆⁻¹ = −(−1)^{r(4−r)} ⋆.
pub fn hodge_inverse<R: Scalar>(
    a: &Multivector<R>,
    m: &FibreMetric<R>,
    o: &Orientation<R>,
) -> Multivector<R> {
    let mut out: Multivector<R> = Multivector::zero();
    for r in 0..=DIM {
        let part = a.grade_project(r);
        if part.is_zero() {
            continue;
        }
        let mut starred = hodge_star(&part, m, o);
        if (r * (DIM - r)) % 2 == 0 {
            starred = starred.neg();
        }
        out = out.add(&starred);
    }
    out
}

pub fn minkowski_metric<R: Scalar>() -> FibreMetric<R> {
    let mut lower: [[R; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| R::zero()));
    lower[0][0] = R::one();
    for i in 1..4 {
        lower[i][i] = R::one().neg();
    }
    FibreMetric::from_lower(lower).expect("Minkowski metric is nondegenerate")
}
