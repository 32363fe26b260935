//! Torsion and curvature by two independent routes, Ricci/Einstein data,
//! the exterior covariant derivative of indexed form fields, Bianchi
//! identity residuals, and the curvature decomposition relative to a
//! reference Levi-Civita connection.
//!
//! Component route (frame derivatives of the connection coefficients):
//!
//! ```text
//! T^ρ_{αβ}     = L^ρ_{αβ} − L^ρ_{βα} − c^ρ_{αβ}
//! R_μ{}^ρ{}_{αβ} = e_α(L^ρ_{βμ}) − e_β(L^ρ_{αμ})
//!                + L^ρ_{ασ}L^σ_{βμ} − L^ρ_{βσ}L^σ_{αμ} − c^σ_{αβ}L^ρ_{σμ}
//! ```
//!
//! Form route (structure equations): T^ρ = dθ^ρ + ω^ρ_β∧θ^β and
//! ℛ^ρ_μ = dω^ρ_μ + ω^ρ_β∧ω^β_μ. Both representations are kept and their
//! agreement at sample points is a loud internal-consistency check.

use crate::connection::{
    connection_one_forms, contorsion, levi_civita_connection, ConnectionError, ConnectionField,
};
use crate::exterior::Multivector;
use crate::structure::{structure_coefficients, CoFrameField, MetricField, StructureCoefficients};
use crate::symexpr::{Chart, Expr, Point, SymError};
use crate::tensor::{e3, e4, sum4, E2, E3, E4};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error("route mismatch in {what} at point {point:?}: relative residual {residual:e} exceeds {tolerance:e}")]
    RouteMismatch {
        what: &'static str,
        point: [f64; 4],
        residual: f64,
        tolerance: f64,
    },
    #[error("exterior covariant derivative of a 4-form would exceed top degree")]
    DegreeOverflow,
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Which contraction defines the Ricci tensor. The default contracts the
/// upper slot with the first 2-form slot (R_{μν} = R_μ{}^ρ{}_{ρν}); the
/// alternative contracts with the last slot (R_{μν} = R_μ{}^ρ{}_{νρ}),
/// which differs by a global sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RicciConvention {
    #[default]
    E4,
    AppendixB,
}

/// Torsion data: components T^ρ_{αβ} and 2-forms T^ρ = ½T^ρ_{αβ}θ^α∧θ^β,
/// the latter also computed independently as dθ^ρ + ω^ρ_β∧θ^β.
#[derive(Debug, Clone)]
pub struct TorsionField {
    pub components: E3,
    pub forms: [Multivector<Expr>; 4],
}

impl TorsionField {
    pub fn is_structurally_zero(&self) -> bool {
        self.components
            .iter()
            .flatten()
            .flatten()
            .all(|e| e.is_zero())
            && self.forms.iter().all(|f| f.is_zero())
    }

    /// Builds a torsion field from component data alone (forms from the
    /// coframe expansion).
    pub fn from_components(components: E3, cf: &CoFrameField) -> Self {
        let forms = forms_from_components3(&components, cf);
        TorsionField { components, forms }
    }
}

/// Curvature data: components R_μ{}^ρ{}_{αβ} (indexed `[μ][ρ][α][β]`),
/// 2-forms ℛ^ρ_μ (indexed `[μ][ρ]`), and the lowered array
/// R_{μναβ} = g_{νρ} R_μ{}^ρ{}_{αβ}.
#[derive(Debug, Clone)]
pub struct CurvatureField {
    pub components: E4,
    pub forms: [[Multivector<Expr>; 4]; 4],
    pub lowered: E4,
}

/// ½X^ρ_{αβ} θ^α∧θ^β for an antisymmetric rank-3 component array.
pub fn forms_from_components3(x: &E3, cf: &CoFrameField) -> [Multivector<Expr>; 4] {
    let theta = cf.one_forms();
    std::array::from_fn(|rho| {
        let mut acc = Multivector::zero();
        for a in 0..4 {
            for b in (a + 1)..4 {
                if x[rho][a][b].is_zero() {
                    continue;
                }
                acc = acc.add(&theta[a].wedge(&theta[b]).scale(&x[rho][a][b]));
            }
        }
        acc
    })
}

/// Torsion by both routes. Components are mirror-built so the
/// antisymmetry is structural, not merely numerical.
pub fn torsion(conn: &ConnectionField, cf: &CoFrameField) -> TorsionField {
    let c = structure_coefficients(cf);
    let mut components = e3(|_, _, _| Expr::zero());
    for rho in 0..4 {
        for a in 0..4 {
            for b in (a + 1)..4 {
                let v = Expr::sum(vec![
                    conn.entry(rho, a, b).clone(),
                    Expr::neg(conn.entry(rho, b, a).clone()),
                    Expr::neg(c.entry(rho, a, b).clone()),
                ]);
                components[rho][a][b] = v.clone();
                components[rho][b][a] = Expr::neg(v);
            }
        }
    }
    let theta = cf.one_forms();
    let omega = connection_one_forms(conn, cf);
    let forms = std::array::from_fn(|rho| {
        let mut acc = theta[rho].exterior_derivative();
        for beta in 0..4 {
            acc = acc.add(&omega[rho][beta].wedge(&theta[beta]));
        }
        acc
    });
    TorsionField { components, forms }
}

/// Curvature by both routes, plus the lowered component array.
pub fn curvature(conn: &ConnectionField, cf: &CoFrameField, g: &MetricField) -> CurvatureField {
    let c = structure_coefficients(cf);
    let components = curvature_components(conn, cf, &c);
    let omega = connection_one_forms(conn, cf);
    let forms = std::array::from_fn(|mu| {
        std::array::from_fn(|rho| {
            let mut acc = omega[rho][mu].exterior_derivative();
            for beta in 0..4 {
                acc = acc.add(&omega[rho][beta].wedge(&omega[beta][mu]));
            }
            acc
        })
    });
    let lowered = e4(|mu, nu, a, b| {
        sum4(|rho| Expr::mul(g.entry(nu, rho).clone(), components[mu][rho][a][b].clone()))
    });
    CurvatureField {
        components,
        forms,
        lowered,
    }
}

fn curvature_components(
    conn: &ConnectionField,
    cf: &CoFrameField,
    c: &StructureCoefficients,
) -> E4 {
    let mut out = e4(|_, _, _, _| Expr::zero());
    for mu in 0..4 {
        for rho in 0..4 {
            for a in 0..4 {
                for b in (a + 1)..4 {
                    let val = Expr::sum(vec![
                        cf.frame_derivative(conn.entry(rho, b, mu), a),
                        Expr::neg(cf.frame_derivative(conn.entry(rho, a, mu), b)),
                        sum4(|s| {
                            Expr::mul(
                                conn.entry(rho, a, s).clone(),
                                conn.entry(s, b, mu).clone(),
                            )
                        }),
                        Expr::neg(sum4(|s| {
                            Expr::mul(
                                conn.entry(rho, b, s).clone(),
                                conn.entry(s, a, mu).clone(),
                            )
                        })),
                        Expr::neg(sum4(|s| {
                            Expr::mul(c.entry(s, a, b).clone(), conn.entry(rho, s, mu).clone())
                        })),
                    ]);
                    out[mu][rho][a][b] = val.clone();
                    out[mu][rho][b][a] = Expr::neg(val);
                }
            }
        }
    }
    out
}

/// Per-point relative disagreement between the component and form routes
/// for the torsion.
pub fn torsion_route_residuals(
    t: &TorsionField,
    cf: &CoFrameField,
    chart: &Chart,
    points: &[Point],
) -> Result<Vec<f64>, SymError> {
    let rebuilt = forms_from_components3(&t.components, cf);
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut worst: f64 = 0.0;
        for rho in 0..4 {
            let a = rebuilt[rho].evaluate(p, chart)?;
            let b = t.forms[rho].evaluate(p, chart)?;
            worst = worst.max(a.sub(&b).max_abs() / (1.0 + a.max_abs().max(b.max_abs())));
        }
        out.push(worst);
    }
    Ok(out)
}

/// Verifies that the component and form routes agree at the given points;
/// returns the worst relative residual or fails loudly.
pub fn verify_torsion_routes(
    t: &TorsionField,
    cf: &CoFrameField,
    chart: &Chart,
    points: &[Point],
    tolerance: f64,
) -> Result<f64, CurvatureError> {
    let residuals = torsion_route_residuals(t, cf, chart, points)?;
    let mut worst: f64 = 0.0;
    for (i, r) in residuals.iter().enumerate() {
        worst = worst.max(*r);
        if *r > tolerance {
            return Err(CurvatureError::RouteMismatch {
                what: "torsion",
                point: points[i].0,
                residual: *r,
                tolerance,
            });
        }
    }
    Ok(worst)
}

/// Per-point relative disagreement between the component and form routes
/// for the curvature.
pub fn curvature_route_residuals(
    r: &CurvatureField,
    cf: &CoFrameField,
    chart: &Chart,
    points: &[Point],
) -> Result<Vec<f64>, SymError> {
    let theta = cf.one_forms();
    let mut rebuilt: Vec<Multivector<Expr>> = Vec::with_capacity(16);
    for mu in 0..4 {
        for rho in 0..4 {
            let mut from_comps = Multivector::zero();
            for a in 0..4 {
                for b in (a + 1)..4 {
                    if r.components[mu][rho][a][b].is_zero() {
                        continue;
                    }
                    from_comps = from_comps
                        .add(&theta[a].wedge(&theta[b]).scale(&r.components[mu][rho][a][b]));
                }
            }
            rebuilt.push(from_comps);
        }
    }
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for rho in 0..4 {
                let x = rebuilt[mu * 4 + rho].evaluate(p, chart)?;
                let y = r.forms[mu][rho].evaluate(p, chart)?;
                worst = worst.max(x.sub(&y).max_abs() / (1.0 + x.max_abs().max(y.max_abs())));
            }
        }
        out.push(worst);
    }
    Ok(out)
}

pub fn verify_curvature_routes(
    r: &CurvatureField,
    cf: &CoFrameField,
    chart: &Chart,
    points: &[Point],
    tolerance: f64,
) -> Result<f64, CurvatureError> {
    let residuals = curvature_route_residuals(r, cf, chart, points)?;
    let mut worst: f64 = 0.0;
    for (i, r) in residuals.iter().enumerate() {
        worst = worst.max(*r);
        if *r > tolerance {
            return Err(CurvatureError::RouteMismatch {
                what: "curvature",
                point: points[i].0,
                residual: *r,
                tolerance,
            });
        }
    }
    Ok(worst)
}

/// Ricci, scalar, Einstein and their 1-form packagings; the
/// energy-momentum 1-forms are defined by T^μ := 𝒢^μ.
#[derive(Debug, Clone)]
pub struct RicciData {
    pub ricci: E2,
    pub scalar: Expr,
    pub einstein: E2,
    /// ℛ^μ = R^μ_ν θ^ν
    pub ricci_one_forms: [Multivector<Expr>; 4],
    /// 𝒢^μ = G^μ_ν θ^ν
    pub einstein_one_forms: [Multivector<Expr>; 4],
    /// T^μ := 𝒢^μ
    pub energy_momentum_one_forms: [Multivector<Expr>; 4],
    pub convention: RicciConvention,
}

pub fn ricci_einstein(
    curv: &CurvatureField,
    g: &MetricField,
    cf: &CoFrameField,
    convention: RicciConvention,
) -> RicciData {
    let ricci = crate::tensor::e2(|mu, nu| match convention {
        RicciConvention::E4 => sum4(|rho| curv.components[mu][rho][rho][nu].clone()),
        RicciConvention::AppendixB => sum4(|rho| curv.components[mu][rho][nu][rho].clone()),
    });
    let scalar = crate::tensor::sum44(|mu, nu| {
        Expr::mul(g.inverse()[mu][nu].clone(), ricci[mu][nu].clone())
    });
    let einstein = crate::tensor::e2(|mu, nu| {
        Expr::sub(
            ricci[mu][nu].clone(),
            Expr::product(vec![
                Expr::ratio(1, 2),
                g.entry(mu, nu).clone(),
                scalar.clone(),
            ]),
        )
    });
    let theta = cf.one_forms();
    let raise_row = |t: &E2, mu: usize| -> Multivector<Expr> {
        let mut acc = Multivector::zero();
        for nu in 0..4 {
            let coeff = sum4(|k| Expr::mul(g.inverse()[mu][k].clone(), t[k][nu].clone()));
            if coeff.is_zero() {
                continue;
            }
            acc = acc.add(&theta[nu].scale(&coeff));
        }
        acc
    };
    let ricci_one_forms = std::array::from_fn(|mu| raise_row(&ricci, mu));
    let einstein_one_forms = std::array::from_fn(|mu| raise_row(&einstein, mu));
    RicciData {
        ricci,
        scalar,
        einstein,
        ricci_one_forms,
        einstein_one_forms: einstein_one_forms.clone(),
        energy_momentum_one_forms: einstein_one_forms,
        convention,
    }
}

/// A (p upper, q lower)-indexed family of grade-r forms.
#[derive(Debug, Clone)]
pub struct IndexedFormField {
    upper: usize,
    lower: usize,
    grade: usize,
    entries: Vec<Multivector<Expr>>,
}

impl IndexedFormField {
    pub fn from_fn(
        upper: usize,
        lower: usize,
        grade: usize,
        mut f: impl FnMut(&[usize], &[usize]) -> Multivector<Expr>,
    ) -> Self {
        assert!(grade <= 4);
        let count = 4usize.pow((upper + lower) as u32);
        let mut entries = Vec::with_capacity(count);
        let mut idx = vec![0usize; upper + lower];
        for flat in 0..count {
            let mut rest = flat;
            for slot in (0..idx.len()).rev() {
                idx[slot] = rest % 4;
                rest /= 4;
            }
            entries.push(f(&idx[..upper], &idx[upper..]));
        }
        IndexedFormField {
            upper,
            lower,
            grade,
            entries,
        }
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    fn flat(&self, up: &[usize], lo: &[usize]) -> usize {
        debug_assert_eq!(up.len(), self.upper);
        debug_assert_eq!(lo.len(), self.lower);
        let mut acc = 0usize;
        for &i in up.iter().chain(lo.iter()) {
            acc = acc * 4 + i;
        }
        acc
    }

    pub fn get(&self, up: &[usize], lo: &[usize]) -> &Multivector<Expr> {
        &self.entries[self.flat(up, lo)]
    }
}

/// Exterior covariant derivative of an indexed form field:
/// DX = dX + ω^{μᵢ}_σ ∧ X^{…σ…} (one term per upper index)
///        − ω^σ_{νⱼ} ∧ X^{…σ…} (one term per lower index).
pub fn ext_cov_derivative(
    x: &IndexedFormField,
    conn: &ConnectionField,
    cf: &CoFrameField,
) -> Result<IndexedFormField, CurvatureError> {
    if x.grade() >= 4 {
        return Err(CurvatureError::DegreeOverflow);
    }
    let omega = connection_one_forms(conn, cf);
    Ok(IndexedFormField::from_fn(
        x.upper,
        x.lower,
        x.grade + 1,
        |up, lo| {
            let mut acc = x.get(up, lo).exterior_derivative();
            for (i, &mu) in up.iter().enumerate() {
                for sigma in 0..4 {
                    if omega[mu][sigma].is_zero() {
                        continue;
                    }
                    let mut up_s = up.to_vec();
                    up_s[i] = sigma;
                    acc = acc.add(&omega[mu][sigma].wedge(x.get(&up_s, lo)));
                }
            }
            for (j, &nu) in lo.iter().enumerate() {
                for sigma in 0..4 {
                    if omega[sigma][nu].is_zero() {
                        continue;
                    }
                    let mut lo_s = lo.to_vec();
                    lo_s[j] = sigma;
                    acc = acc.sub(&omega[sigma][nu].wedge(x.get(up, &lo_s)));
                }
            }
            acc
        },
    ))
}

/// Covariant frame derivative of a (1,2) component array:
/// D_μ X^ρ_{αβ} = e_μ(X^ρ_{αβ}) + L^ρ_{μσ}X^σ_{αβ} − L^σ_{μα}X^ρ_{σβ} − L^σ_{μβ}X^ρ_{ασ}.
pub fn cov_deriv_12(
    x: &E3,
    conn: &ConnectionField,
    cf: &CoFrameField,
    mu: usize,
    rho: usize,
    alpha: usize,
    beta: usize,
) -> Expr {
    Expr::sum(vec![
        cf.frame_derivative(&x[rho][alpha][beta], mu),
        sum4(|s| Expr::mul(conn.entry(rho, mu, s).clone(), x[s][alpha][beta].clone())),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, alpha).clone(), x[rho][s][beta].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, beta).clone(), x[rho][alpha][s].clone())
        })),
    ])
}

/// Covariant frame derivative of a (0,3) component array.
pub fn cov_deriv_03(
    x: &E3,
    conn: &ConnectionField,
    cf: &CoFrameField,
    mu: usize,
    a: usize,
    b: usize,
    c: usize,
) -> Expr {
    Expr::sum(vec![
        cf.frame_derivative(&x[a][b][c], mu),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, a).clone(), x[s][b][c].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, b).clone(), x[a][s][c].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, c).clone(), x[a][b][s].clone())
        })),
    ])
}

/// Covariant frame derivative of a (1,3) component array indexed
/// `[β][α][ν][ρ]` as R_β{}^α{}_{νρ}.
pub fn cov_deriv_13(
    x: &E4,
    conn: &ConnectionField,
    cf: &CoFrameField,
    mu: usize,
    beta: usize,
    alpha: usize,
    nu: usize,
    rho: usize,
) -> Expr {
    Expr::sum(vec![
        cf.frame_derivative(&x[beta][alpha][nu][rho], mu),
        sum4(|s| Expr::mul(conn.entry(alpha, mu, s).clone(), x[beta][s][nu][rho].clone())),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, beta).clone(), x[s][alpha][nu][rho].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, nu).clone(), x[beta][alpha][s][rho].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, rho).clone(), x[beta][alpha][nu][s].clone())
        })),
    ])
}

/// Covariant frame derivative of a (0,4) component array.
pub fn cov_deriv_04(
    x: &E4,
    conn: &ConnectionField,
    cf: &CoFrameField,
    mu: usize,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Expr {
    Expr::sum(vec![
        cf.frame_derivative(&x[a][b][c][d], mu),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, a).clone(), x[s][b][c][d].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, b).clone(), x[a][s][c][d].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, c).clone(), x[a][b][s][d].clone())
        })),
        Expr::neg(sum4(|s| {
            Expr::mul(conn.entry(s, mu, d).clone(), x[a][b][c][s].clone())
        })),
    ])
}

/// First Bianchi identity residuals: the 3-form DT^ρ − ℛ^ρ_β∧θ^β per ρ,
/// and the cyclic component form
/// Σ_{(μαβ)} [R_μ{}^ρ{}_{αβ} − D_μT^ρ_{αβ} + T^κ_{μβ}T^ρ_{κα}].
pub struct BianchiFirst {
    pub form_residuals: [Multivector<Expr>; 4],
    /// indexed `[ρ][μ][α][β]`
    pub component_residuals: E4,
}

pub fn bianchi_first_residual(
    t: &TorsionField,
    r: &CurvatureField,
    conn: &ConnectionField,
    cf: &CoFrameField,
) -> Result<BianchiFirst, CurvatureError> {
    let torsion_forms = IndexedFormField::from_fn(1, 0, 2, |up, _| t.forms[up[0]].clone());
    let dt = ext_cov_derivative(&torsion_forms, conn, cf)?;
    let theta = cf.one_forms();
    let form_residuals = std::array::from_fn(|rho| {
        let mut acc = dt.get(&[rho], &[]).clone();
        for beta in 0..4 {
            acc = acc.sub(&r.forms[beta][rho].wedge(&theta[beta]));
        }
        acc
    });
    let component_residuals = e4(|rho, mu, alpha, beta| {
        let term = |m: usize, a: usize, b: usize| {
            Expr::sum(vec![
                r.components[m][rho][a][b].clone(),
                Expr::neg(cov_deriv_12(&t.components, conn, cf, m, rho, a, b)),
                sum4(|k| {
                    Expr::mul(
                        t.components[k][m][b].clone(),
                        t.components[rho][k][a].clone(),
                    )
                }),
            ])
        };
        Expr::sum(vec![
            term(mu, alpha, beta),
            term(alpha, beta, mu),
            term(beta, mu, alpha),
        ])
    });
    Ok(BianchiFirst {
        form_residuals,
        component_residuals,
    })
}

/// Second Bianchi identity residuals: the 3-forms Dℛ^ρ_μ and the cyclic
/// component form Σ_{(μνρ)} [D_μ R_β{}^α{}_{νρ} − T^κ_{νμ}R_β{}^α{}_{κρ}].
pub struct BianchiSecond {
    pub form_residuals: [[Multivector<Expr>; 4]; 4],
    /// indexed `[β][α][μ][ν][ρ]` collapsed over the cyclic triple: the
    /// value stored at (β,α,μ,ν,ρ) is the full cyclic sum.
    pub component_residual_fn: Box<dyn Fn(usize, usize, usize, usize, usize) -> Expr>,
}

pub fn bianchi_second_residual(
    t: &TorsionField,
    r: &CurvatureField,
    conn: &ConnectionField,
    cf: &CoFrameField,
) -> Result<BianchiSecond, CurvatureError> {
    let curv_forms = IndexedFormField::from_fn(1, 1, 2, |up, lo| r.forms[lo[0]][up[0]].clone());
    let dr = ext_cov_derivative(&curv_forms, conn, cf)?;
    let form_residuals =
        std::array::from_fn(|mu| std::array::from_fn(|rho| dr.get(&[rho], &[mu]).clone()));
    let comps = r.components.clone();
    let tcomps = t.components.clone();
    let conn = conn.clone();
    let cf = cf.clone();
    let component_residual_fn = Box::new(move |beta, alpha, mu, nu, rho| {
        let term = |m: usize, n: usize, p: usize| {
            Expr::sub(
                cov_deriv_13(&comps, &conn, &cf, m, beta, alpha, n, p),
                sum4(|k| {
                    Expr::mul(tcomps[k][n][m].clone(), comps[beta][alpha][k][p].clone())
                }),
            )
        };
        Expr::sum(vec![
            term(mu, nu, rho),
            term(nu, rho, mu),
            term(rho, mu, nu),
        ])
    });
    Ok(BianchiSecond {
        form_residuals,
        component_residual_fn,
    })
}

/// Curvature decomposition relative to the reference metric g̊ (coordinate
/// coframe required): R = R̊ + J_{[αβ]} with
/// J_μ{}^ρ{}_{αβ} = D̊_αK^ρ_{βμ} − K^ρ_{βσ}K^σ_{αμ}
///               = D_αK^ρ_{βμ} − K^ρ_{ασ}K^σ_{βμ} + K^σ_{αβ}K^ρ_{σμ},
/// plus the Ricci split R_{[μα]} = J_{[μα]}, R_{(μα)} = R̊_{(μα)} + J_{(μα)}
/// in the last-slot contraction convention.
pub struct RiemannDecomposition {
    pub contorsion: E3,
    /// J_μ{}^ρ{}_{αβ} via the reference-connection route, indexed `[μ][ρ][α][β]`.
    pub j_ref_route: E4,
    /// J via the full-connection route.
    pub j_full_route: E4,
    /// Curvature of the reference Levi-Civita connection.
    pub reference_curvature: CurvatureField,
    /// Full curvature (of the decomposed connection).
    pub full_curvature: CurvatureField,
    /// Ricci tensors in the AppendixB convention.
    pub ricci_full: E2,
    pub ricci_ref: E2,
    pub j_ricci: E2,
}

pub fn riemann_decomposition(
    conn: &ConnectionField,
    gref: &MetricField,
    cf: &CoFrameField,
    g: &MetricField,
) -> Result<RiemannDecomposition, CurvatureError> {
    if !cf.is_coordinate() {
        return Err(ConnectionError::FrameNotCoordinate.into());
    }
    let k = contorsion(conn, gref, cf)?;
    let k = k.array().clone();
    let lc = levi_civita_connection(gref, cf);
    let d_ref =
        |al: usize, rho: usize, be: usize, mu: usize| cov_deriv_12(&k, &lc, cf, al, rho, be, mu);
    let d_full =
        |al: usize, rho: usize, be: usize, mu: usize| cov_deriv_12(&k, conn, cf, al, rho, be, mu);
    let j_ref = e4(|mu, rho, alpha, beta| {
        Expr::sub(
            d_ref(alpha, rho, beta, mu),
            sum4(|s| Expr::mul(k[rho][beta][s].clone(), k[s][alpha][mu].clone())),
        )
    });
    let j_full = e4(|mu, rho, alpha, beta| {
        Expr::sum(vec![
            d_full(alpha, rho, beta, mu),
            Expr::neg(sum4(|s| {
                Expr::mul(k[rho][alpha][s].clone(), k[s][beta][mu].clone())
            })),
            sum4(|s| Expr::mul(k[s][alpha][beta].clone(), k[rho][s][mu].clone())),
        ])
    });
    let reference_curvature = curvature(&lc, cf, gref);
    let full_curvature = curvature(conn, cf, g);
    let contract_last = |c: &E4| -> E2 {
        crate::tensor::e2(|mu, al| sum4(|rho| c[mu][rho][al][rho].clone()))
    };
    let ricci_full = contract_last(&full_curvature.components);
    let ricci_ref = contract_last(&reference_curvature.components);
    // J_{μα} = J_μ{}^ρ{}_{[αρ]} in the same convention.
    let j_ricci = crate::tensor::e2(|mu, al| {
        sum4(|rho| {
            Expr::sub(
                j_ref[mu][rho][al][rho].clone(),
                j_ref[mu][rho][rho][al].clone(),
            )
        })
    });
    Ok(RiemannDecomposition {
        contorsion: k,
        j_ref_route: j_ref,
        j_full_route: j_full,
        reference_curvature,
        full_curvature,
        ricci_full,
        ricci_ref,
        j_ricci,
    })
}
