//! Small fixed-rank tensor helpers over symbolic or numeric entries.

use crate::symexpr::{Chart, Expr, Point, SymError};
use std::array::from_fn;

pub type E2 = [[Expr; 4]; 4];
pub type E3 = [[[Expr; 4]; 4]; 4];
pub type E4 = [[[[Expr; 4]; 4]; 4]; 4];
pub type N2 = [[f64; 4]; 4];
pub type N3 = [[[f64; 4]; 4]; 4];
pub type N4 = [[[[f64; 4]; 4]; 4]; 4];

pub fn e2(mut f: impl FnMut(usize, usize) -> Expr) -> E2 {
    from_fn(|i| from_fn(|j| f(i, j)))
}

pub fn e3(mut f: impl FnMut(usize, usize, usize) -> Expr) -> E3 {
    from_fn(|i| from_fn(|j| from_fn(|k| f(i, j, k))))
}

pub fn e4(mut f: impl FnMut(usize, usize, usize, usize) -> Expr) -> E4 {
    from_fn(|i| from_fn(|j| from_fn(|k| from_fn(|l| f(i, j, k, l)))))
}

pub fn zero2() -> E2 {
    e2(|_, _| Expr::zero())
}

pub fn zero3() -> E3 {
    e3(|_, _, _| Expr::zero())
}

pub fn sum4(mut f: impl FnMut(usize) -> Expr) -> Expr {
    Expr::sum((0..4).map(|i| f(i)).collect())
}

pub fn sum44(mut f: impl FnMut(usize, usize) -> Expr) -> Expr {
    let mut terms = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            terms.push(f(i, j));
        }
    }
    Expr::sum(terms)
}

pub fn eval2(t: &E2, p: &Point, chart: &Chart) -> Result<N2, SymError> {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = t[i][j].evaluate(p, chart)?;
        }
    }
    Ok(out)
}

pub fn eval3(t: &E3, p: &Point, chart: &Chart) -> Result<N3, SymError> {
    let mut out = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j][k] = t[i][j][k].evaluate(p, chart)?;
            }
        }
    }
    Ok(out)
}

pub fn eval4(t: &E4, p: &Point, chart: &Chart) -> Result<N4, SymError> {
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    out[i][j][k][l] = t[i][j][k][l].evaluate(p, chart)?;
                }
            }
        }
    }
    Ok(out)
}

pub fn max_abs2(t: &N2) -> f64 {
    t.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs3(t: &N3) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs4(t: &N4) -> f64 {
    t.iter()
        .flatten()
        .flatten()
        .flatten()
        .fold(0.0, |m, v| m.max(v.abs()))
}

/// Totally antisymmetric Levi-Civita symbol with ε_{0123} = +1.
pub fn epsilon(i: usize, j: usize, k: usize, l: usize) -> i64 {
    let idx = [i, j, k, l];
    for a in 0..4 {
        for b in (a + 1)..4 {
            if idx[a] == idx[b] {
                return 0;
            }
        }
    }
    let mut sign = 1i64;
    let mut v = idx;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if v[a] > v[b] {
                v.swap(a, b);
                sign = -sign;
            }
        }
    }
    sign
}
