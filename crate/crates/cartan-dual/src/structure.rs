//! Fields over the chart: metric field, coframe field, structure
//! coefficients and the volume form. Everything is declared in one frame
//! (the coframe in which the connection coefficients are also given) and
//! stored symbolically; numeric checks evaluate at sample points.

use crate::exterior::{adjugate4, det4, FibreMetric, Multivector, Orientation};
use crate::symexpr::{Chart, Expr, Point, SymError};
use crate::tensor::{e2, e3, sum4, E2, E3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("metric is singular at point {0:?} (det = {1:e})")]
    SingularMetric([f64; 4], f64),
    #[error("metric signature is not (1,3) at point {0:?} (eigenvalue signs {1:?})")]
    WrongSignature([f64; 4], [i8; 4]),
    #[error("coframe is degenerate at point {0:?} (det = {1:e})")]
    DegenerateCoframe([f64; 4], f64),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Symmetric metric field in the declared coframe, with its exact
/// symbolic inverse.
#[derive(Debug, Clone)]
pub struct MetricField {
    g: E2,
    ginv: E2,
}

impl MetricField {
    pub fn new(g: E2) -> Self {
        let ginv = symbolic_inverse(&g);
        MetricField { g, ginv }
    }

    /// Wraps components together with an inverse the caller already has.
    pub fn from_parts(g: E2, ginv: E2) -> Self {
        MetricField { g, ginv }
    }

    pub fn minkowski() -> Self {
        MetricField::new(e2(|i, j| {
            if i != j {
                Expr::zero()
            } else if i == 0 {
                Expr::one()
            } else {
                Expr::from_int(-1)
            }
        }))
    }

    pub fn lower(&self) -> &E2 {
        &self.g
    }

    pub fn inverse(&self) -> &E2 {
        &self.ginv
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr {
        &self.g[i][j]
    }

    pub fn det(&self) -> Expr {
        det4(&self.g)
    }

    /// √|det g| as a symbolic expression; Lorentzian metrics have
    /// det g < 0, so |det g| = −det g.
    pub fn volume_factor(&self) -> Expr {
        Expr::sqrt(Expr::neg(self.det()))
    }

    /// Fibre metric over the declared frame.
    pub fn fibre(&self) -> FibreMetric<Expr> {
        FibreMetric::from_parts(self.g.clone(), self.ginv.clone())
    }

    /// Checks invertibility and (1,3) signature at a sample point.
    pub fn check_at(&self, p: &Point, chart: &Chart) -> Result<(), StructureError> {
        let mut num = [[0.0; 4]; 4];
        for (i, row) in num.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.g[i][j].evaluate(p, chart)?;
            }
        }
        let det = crate::exterior::det4(&num);
        if det.abs() < 1e-12 {
            return Err(StructureError::SingularMetric(p.0, det));
        }
        let signs = eigenvalue_signs(&num);
        let positives = signs.iter().filter(|&&s| s > 0).count();
        let negatives = signs.iter().filter(|&&s| s < 0).count();
        if positives != 1 || negatives != 3 {
            return Err(StructureError::WrongSignature(p.0, signs));
        }
        Ok(())
    }
}

/// Inverse of the metric, per the defining relation g^{μα} g_{αν} = δ^μ_ν.
pub fn metric_inverse(g: &MetricField) -> &E2 {
    g.inverse()
}

/// Coframe field: θ^ρ = h^ρ_μ dx^μ, with the inverse matrix giving the
/// dual frame e_α = A^μ_α ∂_μ.
#[derive(Debug, Clone)]
pub struct CoFrameField {
    h: E2,
    inv: E2,
    is_coordinate: bool,
}

impl CoFrameField {
    pub fn coordinate() -> Self {
        let id = e2(|i, j| {
            if i == j {
                Expr::one()
            } else {
                Expr::zero()
            }
        });
        CoFrameField {
            h: id.clone(),
            inv: id,
            is_coordinate: true,
        }
    }

    pub fn explicit(h: E2) -> Self {
        let inv = symbolic_inverse(&h);
        CoFrameField {
            h,
            inv,
            is_coordinate: false,
        }
    }

    pub fn is_coordinate(&self) -> bool {
        self.is_coordinate
    }

    /// θ^ρ = h^ρ_μ dx^μ.
    pub fn matrix(&self) -> &E2 {
        &self.h
    }

    /// A^μ_α with e_α = A^μ_α ∂_μ.
    pub fn inverse_matrix(&self) -> &E2 {
        &self.inv
    }

    /// The coframe 1-forms in the coordinate cotangent basis.
    pub fn one_forms(&self) -> [Multivector<Expr>; 4] {
        std::array::from_fn(|rho| {
            let mut mv = Multivector::zero();
            for mu in 0..4 {
                if !self.h[rho][mu].is_zero() {
                    mv.set_coeff(1 << mu, self.h[rho][mu].clone());
                }
            }
            mv
        })
    }

    /// Frame derivative e_α(f) = A^μ_α ∂_μ f, exact.
    pub fn frame_derivative(&self, f: &Expr, alpha: usize) -> Expr {
        if self.is_coordinate {
            return f.diff(alpha);
        }
        sum4(|mu| Expr::mul(self.inv[mu][alpha].clone(), f.diff(mu)))
    }

    /// Frame components F(e_{α1},…,e_{αr}) of an r-form given in the
    /// coordinate basis.
    pub fn form_frame_component(&self, form: &Multivector<Expr>, frame_idx: &[usize]) -> Expr {
        let r = frame_idx.len();
        let mut terms = Vec::new();
        for mask in 0..crate::exterior::BASIS {
            if crate::exterior::grade_of(mask) != r {
                continue;
            }
            let c = form.coeff(mask);
            if c.is_zero() {
                continue;
            }
            let rows: Vec<usize> = crate::exterior::indices_of(mask).collect();
            let mut det_terms = Vec::new();
            permutations(r, &mut |perm, sign| {
                let mut factors = Vec::with_capacity(r);
                for (i, &pi) in perm.iter().enumerate() {
                    factors.push(self.inv[rows[i]][frame_idx[pi]].clone());
                }
                let prod = Expr::product(factors);
                det_terms.push(if sign < 0 { Expr::neg(prod) } else { prod });
            });
            terms.push(Expr::mul(c.clone(), Expr::sum(det_terms)));
        }
        Expr::sum(terms)
    }

    pub fn check_at(&self, p: &Point, chart: &Chart) -> Result<(), StructureError> {
        let mut num = [[0.0; 4]; 4];
        for (i, row) in num.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.h[i][j].evaluate(p, chart)?;
            }
        }
        let det = crate::exterior::det4(&num);
        if det.abs() < 1e-12 {
            return Err(StructureError::DegenerateCoframe(p.0, det));
        }
        Ok(())
    }
}

fn permutations(n: usize, visit: &mut impl FnMut(&[usize], i64)) {
    fn go(perm: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut impl FnMut(&[usize], i64)) {
        let n = used.len();
        if perm.len() == n {
            let mut inv = 0;
            for a in 0..n {
                for b in (a + 1)..n {
                    if perm[a] > perm[b] {
                        inv += 1;
                    }
                }
            }
            visit(perm, if inv % 2 == 0 { 1 } else { -1 });
            return;
        }
        for candidate in 0..n {
            if !used[candidate] {
                used[candidate] = true;
                perm.push(candidate);
                go(perm, used, visit);
                perm.pop();
                used[candidate] = false;
            }
        }
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(&mut perm, &mut used, visit);
}

/// Structure coefficients of the frame: dθ^ρ = −½ c^ρ_{αβ} θ^α∧θ^β.
#[derive(Debug, Clone)]
pub struct StructureCoefficients {
    c: E3,
}

impl StructureCoefficients {
    pub fn entry(&self, rho: usize, alpha: usize, beta: usize) -> &Expr {
        &self.c[rho][alpha][beta]
    }

    pub fn array(&self) -> &E3 {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().flatten().all(|e| e.is_zero())
    }
}

/// Computes c^ρ_{αβ} from the exterior derivatives of the coframe. The
/// array is antisymmetric in (α,β) by construction: entries with α<β come
/// from dθ^ρ(e_α,e_β) and the mirror is the exact negation.
pub fn structure_coefficients(cf: &CoFrameField) -> StructureCoefficients {
    if cf.is_coordinate() {
        return StructureCoefficients {
            c: e3(|_, _, _| Expr::zero()),
        };
    }
    let theta = cf.one_forms();
    let mut c = e3(|_, _, _| Expr::zero());
    for rho in 0..4 {
        let d = theta[rho].exterior_derivative();
        for alpha in 0..4 {
            for beta in (alpha + 1)..4 {
                // c^ρ_{αβ} = −dθ^ρ(e_α, e_β)
                let val = Expr::neg(cf.form_frame_component(&d, &[alpha, beta]));
                c[rho][alpha][beta] = val.clone();
                c[rho][beta][alpha] = Expr::neg(val);
            }
        }
    }
    StructureCoefficients { c }
}

/// The volume form τ = sign · √|det g| θ^0∧θ^1∧θ^2∧θ^3.
#[derive(Debug, Clone)]
pub struct VolumeForm {
    /// τ in the coordinate cotangent basis.
    pub coord_form: Multivector<Expr>,
    /// sign · √|det g_frame|: the coefficient of θ^0∧θ^1∧θ^2∧θ^3, which is
    /// also the factor carried by component-form ε tensors.
    pub frame_factor: Expr,
    pub sign: i8,
}

pub fn volume_form(g: &MetricField, cf: &CoFrameField, sign: i8) -> VolumeForm {
    let factor = g.volume_factor();
    let signed = if sign < 0 {
        Expr::neg(factor)
    } else {
        factor
    };
    let det_h = det4(cf.matrix());
    let mut coord_form = Multivector::zero();
    coord_form.set_coeff(crate::exterior::TOP, Expr::mul(signed.clone(), det_h));
    VolumeForm {
        coord_form,
        frame_factor: signed,
        sign,
    }
}

impl VolumeForm {
    pub fn orientation(&self, p: &Point, chart: &Chart) -> Result<Orientation<f64>, SymError> {
        let coeff = self
            .coord_form
            .coeff(crate::exterior::TOP)
            .evaluate(p, chart)?;
        // The evaluated coefficient already carries the sign.
        Ok(Orientation::from_volume_factor(coeff, 1))
    }
}

/// Metric components in the coordinate cotangent basis:
/// g_{μν} = h^α_μ h^β_ν g_{αβ}, the inverse by congruence with A.
pub fn coordinate_metric(g: &MetricField, cf: &CoFrameField) -> FibreMetric<Expr> {
    if cf.is_coordinate() {
        return g.fibre();
    }
    let h = cf.matrix();
    let a = cf.inverse_matrix();
    let lower = e2(|mu, nu| {
        crate::tensor::sum44(|al, be| {
            Expr::product(vec![
                h[al][mu].clone(),
                h[be][nu].clone(),
                g.lower()[al][be].clone(),
            ])
        })
    });
    let upper = e2(|mu, nu| {
        crate::tensor::sum44(|al, be| {
            Expr::product(vec![
                a[mu][al].clone(),
                a[nu][be].clone(),
                g.inverse()[al][be].clone(),
            ])
        })
    });
    FibreMetric::from_parts(lower, upper)
}

/// Exact symbolic inverse of a 4×4 matrix through the adjugate, with a
/// fast path for diagonal matrices.
pub fn symbolic_inverse(m: &E2) -> E2 {
    let diagonal = (0..4).all(|i| (0..4).all(|j| i == j || m[i][j].is_zero()));
    if diagonal {
        return e2(|i, j| {
            if i == j {
                Expr::div(Expr::one(), m[i][i].clone())
            } else {
                Expr::zero()
            }
        });
    }
    let det = det4(m);
    let adj = adjugate4(m);
    e2(|i, j| Expr::div(adj[i][j].clone(), det.clone()))
}

/// Signs of the eigenvalues of a symmetric 4×4 matrix (Jacobi rotations).
pub fn eigenvalue_signs(m: &[[f64; 4]; 4]) -> [i8; 4] {
    let mut a = *m;
    for _sweep in 0..64 {
        let (mut p, mut q, mut max) = (0, 1, 0.0f64);
        for i in 0..4 {
            for j in (i + 1)..4 {
                if a[i][j].abs() > max {
                    max = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if max < 1e-13 {
            break;
        }
        let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let mut next = a;
        for k in 0..4 {
            next[p][k] = c * a[p][k] - s * a[q][k];
            next[q][k] = s * a[p][k] + c * a[q][k];
        }
        let b = next;
        for k in 0..4 {
            next[k][p] = c * b[k][p] - s * b[k][q];
            next[k][q] = s * b[k][p] + c * b[k][q];
        }
        a = next;
    }
    std::array::from_fn(|i| {
        if a[i][i] > 1e-12 {
            1
        } else if a[i][i] < -1e-12 {
            -1
        } else {
            0
        }
    })
}
