//! Everything ⋆: dual Ricci and Einstein identities, the dual form of the
//! Einstein equation, non-duality witnesses for the Bianchi identities,
//! and the three constraint programs asking whether ⋆T and ⋆R can be the
//! torsion and curvature of another connection — for the same metric, in
//! the postulated particular-case system, and for a candidate (g′, D′).
//!
//! Conventions: ε_{0123} = +1 with the declared orientation sign, all
//! component ε tensors carry the signed volume factor √|det g|, and duals
//! of curvature act on the second index pair (the 2-form slots) unless the
//! `DualPair::First` flag is chosen. Ricci contractions inside this module
//! follow the first-slot rule R_{μν} = R_μ{}^ρ{}_{ρν}; the configurable
//! convention only affects reported Ricci data elsewhere.

use crate::connection::{
    contorsion_from_torsion, levi_civita_connection, metric_compatibility_residual,
    ConnectionField,
};
use crate::curvature::{
    cov_deriv_03, cov_deriv_04, curvature, ext_cov_derivative,
    ricci_einstein, torsion, CurvatureError, CurvatureField, IndexedFormField, RicciConvention,
    RicciData, TorsionField,
};
use crate::exterior::{hodge_star, FibreMetric, Multivector, Orientation};
use crate::structure::{coordinate_metric, volume_form, CoFrameField, MetricField, VolumeForm};
use crate::symexpr::{Chart, Expr, Point, SymError};
use crate::tensor::{e2, e3, e4, epsilon, sum4, E2, E3, E4};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("candidate structure must supply both g′ and D′")]
    MissingCandidate,
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Which index pair of the curvature the component dual acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DualPair {
    #[default]
    Second,
    First,
}

/// Candidate primed structure for the general duality question.
#[derive(Clone)]
pub struct CandidatePrime {
    pub metric: Option<MetricField>,
    pub connection: Option<ConnectionField>,
    pub same_metric: bool,
}

/// Relative residual: |difference| / (1 + largest term magnitude).
pub fn rel(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

/// One named residual series over the sample points.
#[derive(Debug, Clone)]
pub struct ResidualSeries {
    pub name: &'static str,
    pub tag: &'static str,
    pub per_point: Vec<f64>,
}

impl ResidualSeries {
    pub fn max(&self) -> f64 {
        self.per_point.iter().fold(0.0, |m, v| m.max(*v))
    }

    pub fn worst_point_index(&self) -> usize {
        let mut idx = 0;
        for (i, v) in self.per_point.iter().enumerate() {
            if *v > self.per_point[idx] {
                idx = i;
            }
        }
        idx
    }
}

/// Report of a duality checker: named residual series plus notes.
#[derive(Debug, Clone, Default)]
pub struct DualityReport {
    pub entries: Vec<ResidualSeries>,
}

impl DualityReport {
    pub fn entry(&self, name: &str) -> Option<&ResidualSeries> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.max()))
    }
}

/// All dual objects of one structure, precomputed symbolically.
pub struct DualCurvature {
    /// ⋆T^ρ as coordinate-basis 2-forms.
    pub star_torsion_forms: [Multivector<Expr>; 4],
    /// ⋆ℛ^ρ_μ (mixed Cartan forms), indexed `[μ][ρ]`.
    pub star_curvature_forms: [[Multivector<Expr>; 4]; 4],
    /// Frame components T*^ρ_{αβ} of ⋆T^ρ.
    pub star_torsion_components: E3,
    /// 𝖱*_{μνλσ}: frame components of ⋆ℛ_{μν} including the volume factor.
    pub rstar_lowered: E4,
    /// R*_{μνλσ} = ½ ε_{κιλσ} R_{μν}{}^{κι}: the bare-ε variant.
    pub rstar_bare: E4,
}

/// The symbolic working set shared by the duality checkers.
pub struct DualityContext<'a> {
    pub chart: &'a Chart,
    pub g: &'a MetricField,
    pub cf: &'a CoFrameField,
    pub conn: &'a ConnectionField,
    pub points: &'a [Point],
    pub dual_pair: DualPair,
    pub coord_metric: FibreMetric<Expr>,
    pub vol: VolumeForm,
    pub orientation: Orientation<Expr>,
    pub torsion: TorsionField,
    pub curvature: CurvatureField,
    pub ricci: RicciData,
    pub theta: [Multivector<Expr>; 4],
    pub dual: DualCurvature,
}

impl<'a> DualityContext<'a> {
    pub fn new(
        chart: &'a Chart,
        g: &'a MetricField,
        cf: &'a CoFrameField,
        conn: &'a ConnectionField,
        points: &'a [Point],
        orientation_sign: i8,
        dual_pair: DualPair,
    ) -> Self {
        let coord_metric = coordinate_metric(g, cf);
        let vol = volume_form(g, cf, orientation_sign);
        let orientation = Orientation::from_tau(vol.coord_form.clone(), orientation_sign);
        let torsion = torsion(conn, cf);
        let curvature = curvature(conn, cf, g);
        let ricci = ricci_einstein(&curvature, g, cf, RicciConvention::E4);
        let theta = cf.one_forms();

        let star = |f: &Multivector<Expr>| hodge_star(f, &coord_metric, &orientation);
        let star_torsion_forms = std::array::from_fn(|rho| star(&torsion.forms[rho]));
        let star_torsion_components = extract_antisym3(&star_torsion_forms, cf);

        // Bare-ε dual on the chosen pair.
        let lowered = &curvature.lowered;
        let raise_pair_last = |mu: usize, nu: usize, k: usize, i: usize| -> Expr {
            crate::tensor::sum44(|a, b| {
                Expr::product(vec![
                    g.inverse()[k][a].clone(),
                    g.inverse()[i][b].clone(),
                    lowered[mu][nu][a][b].clone(),
                ])
            })
        };
        let rstar_bare = match dual_pair {
            DualPair::Second => e4(|mu, nu, lam, sig| {
                let mut terms = Vec::new();
                for k in 0..4 {
                    for i in 0..4 {
                        let sign = epsilon(k, i, lam, sig);
                        if sign == 0 {
                            continue;
                        }
                        terms.push(Expr::mul(
                            Expr::ratio(sign, 2),
                            raise_pair_last(mu, nu, k, i),
                        ));
                    }
                }
                Expr::sum(terms)
            }),
            DualPair::First => e4(|mu, nu, lam, sig| {
                let mut terms = Vec::new();
                for k in 0..4 {
                    for i in 0..4 {
                        let sign = epsilon(mu, nu, k, i);
                        if sign == 0 {
                            continue;
                        }
                        // raise the first pair of R_{κιλσ}
                        let raised = crate::tensor::sum44(|a, b| {
                            Expr::product(vec![
                                g.inverse()[k][a].clone(),
                                g.inverse()[i][b].clone(),
                                lowered[a][b][lam][sig].clone(),
                            ])
                        });
                        terms.push(Expr::mul(Expr::ratio(sign, 2), raised));
                    }
                }
                Expr::sum(terms)
            }),
        };
        let sv = vol.frame_factor.clone();
        let rstar_lowered = e4(|mu, nu, lam, sig| {
            Expr::mul(sv.clone(), rstar_bare[mu][nu][lam][sig].clone())
        });
        let star_curvature_forms: [[Multivector<Expr>; 4]; 4] = match dual_pair {
            DualPair::Second => {
                std::array::from_fn(|mu| std::array::from_fn(|rho| star(&curvature.forms[mu][rho])))
            }
            DualPair::First => {
                // Rebuild the 2-forms from the first-pair dual array, with
                // the first index raised back to the Cartan position.
                let mixed = e4(|mu, rho, lam, sig| {
                    sum4(|nu| {
                        Expr::mul(
                            g.inverse()[rho][nu].clone(),
                            rstar_lowered[mu][nu][lam][sig].clone(),
                        )
                    })
                });
                std::array::from_fn(|mu| {
                    std::array::from_fn(|rho| {
                        let mut acc = Multivector::zero();
                        for a in 0..4 {
                            for b in (a + 1)..4 {
                                acc = acc
                                    .add(&theta[a].wedge(&theta[b]).scale(&mixed[mu][rho][a][b]));
                            }
                        }
                        acc
                    })
                })
            }
        };

        DualityContext {
            chart,
            g,
            cf,
            conn,
            points,
            dual_pair,
            coord_metric,
            vol,
            orientation,
            torsion,
            curvature,
            ricci,
            theta,
            dual: DualCurvature {
                star_torsion_forms,
                star_curvature_forms,
                star_torsion_components,
                rstar_lowered,
                rstar_bare,
            },
        }
    }

    fn star(&self, f: &Multivector<Expr>) -> Multivector<Expr> {
        hodge_star(f, &self.coord_metric, &self.orientation)
    }

    /// Lowered 2-forms ℛ_{μν} = ½R_{μναβ}θ^α∧θ^β.
    fn lowered_curvature_form(&self, mu: usize, nu: usize) -> Multivector<Expr> {
        let mut acc = Multivector::zero();
        for a in 0..4 {
            for b in (a + 1)..4 {
                if self.curvature.lowered[mu][nu][a][b].is_zero() {
                    continue;
                }
                acc = acc.add(
                    &self.theta[a]
                        .wedge(&self.theta[b])
                        .scale(&self.curvature.lowered[mu][nu][a][b]),
                );
            }
        }
        acc
    }

    /// Lowered Ricci 1-forms ℛ_μ = R_{μν} θ^ν.
    fn lowered_ricci_form(&self, mu: usize) -> Multivector<Expr> {
        let mut acc = Multivector::zero();
        for nu in 0..4 {
            if self.ricci.ricci[mu][nu].is_zero() {
                continue;
            }
            acc = acc.add(&self.theta[nu].scale(&self.ricci.ricci[mu][nu]));
        }
        acc
    }

    /// θ_μ = g_{μν} θ^ν.
    fn lowered_coframe_form(&self, mu: usize) -> Multivector<Expr> {
        let mut acc = Multivector::zero();
        for nu in 0..4 {
            if self.g.entry(mu, nu).is_zero() {
                continue;
            }
            acc = acc.add(&self.theta[nu].scale(self.g.entry(mu, nu)));
        }
        acc
    }

    /// (p1) invariant: the ε-array route reproduces the frame components
    /// of the starred lowered curvature forms (second-pair dual only).
    pub fn verify_dual_component_consistency(&self, tolerance: f64) -> Result<f64, DualityError> {
        let mut worst: f64 = 0.0;
        for p in self.points {
            for mu in 0..4 {
                for nu in 0..4 {
                    let form = self.star(&self.lowered_curvature_form(mu, nu));
                    for lam in 0..4 {
                        for sig in (lam + 1)..4 {
                            let extracted = self
                                .cf
                                .form_frame_component(&form, &[lam, sig])
                                .evaluate(p, self.chart)?;
                            let array = self.dual.rstar_lowered[mu][nu][lam][sig]
                                .evaluate(p, self.chart)?;
                            let r = rel((extracted - array).abs(), extracted.abs().max(array.abs()));
                            worst = worst.max(r);
                            if r > tolerance {
                                return Err(CurvatureError::RouteMismatch {
                                    what: "dual curvature components",
                                    point: p.0,
                                    residual: r,
                                    tolerance,
                                }
                                .into());
                            }
                        }
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// Extract antisymmetric frame components X^ρ_{αβ} from 2-forms X^ρ.
fn extract_antisym3(forms: &[Multivector<Expr>; 4], cf: &CoFrameField) -> E3 {
    let mut out = e3(|_, _, _| Expr::zero());
    for rho in 0..4 {
        for a in 0..4 {
            for b in (a + 1)..4 {
                let v = cf.form_frame_component(&forms[rho], &[a, b]);
                out[rho][a][b] = v.clone();
                out[rho][b][a] = Expr::neg(v);
            }
        }
    }
    out
}

fn eval_forms_residual(
    lhs: &Multivector<Expr>,
    rhs: &Multivector<Expr>,
    chart: &Chart,
    p: &Point,
) -> Result<f64, SymError> {
    let a = lhs.evaluate(p, chart)?;
    let b = rhs.evaluate(p, chart)?;
    Ok(rel(a.sub(&b).max_abs(), a.max_abs().max(b.max_abs())))
}

/// Dual Ricci identity: ⋆ℛ_μ computed directly, through
/// −θ^ρ∧⋆ℛ_{μρ} (and the wedge-order variant), and through the cyclic
/// component expansion. All three must agree at the sample points.
pub struct DualRicci {
    pub star_ricci_forms: [Multivector<Expr>; 4],
    pub report: DualityReport,
}

pub fn dual_ricci(ctx: &DualityContext, tolerance: f64) -> Result<DualRicci, DualityError> {
    let star_ricci_forms: [Multivector<Expr>; 4] =
        std::array::from_fn(|mu| ctx.star(&ctx.lowered_ricci_form(mu)));
    // route: −θ^ρ ∧ ⋆ℛ_{μρ} and −⋆ℛ_{μρ} ∧ θ^ρ
    let mut via_contraction: [Multivector<Expr>; 4] = std::array::from_fn(|_| Multivector::zero());
    let mut via_wedge_order: [Multivector<Expr>; 4] = std::array::from_fn(|_| Multivector::zero());
    for mu in 0..4 {
        for rho in 0..4 {
            let starred = ctx.star(&ctx.lowered_curvature_form(mu, rho));
            via_contraction[mu] = via_contraction[mu].sub(&ctx.theta[rho].wedge(&starred));
            via_wedge_order[mu] = via_wedge_order[mu].sub(&starred.wedge(&ctx.theta[rho]));
        }
    }
    // cyclic expansion: ⋆ℛ_μ = −(1/3!) Σ (R*_{μρλσ}+R*_{μλσρ}+R*_{μσρλ}) sv θ^ρ∧θ^λ∧θ^σ
    let sv = ctx.vol.frame_factor.clone();
    let bare = &ctx.dual.rstar_bare;
    let via_cyclic: [Multivector<Expr>; 4] = std::array::from_fn(|mu| {
        let mut acc = Multivector::zero();
        for rho in 0..4 {
            for lam in 0..4 {
                for sig in 0..4 {
                    let cyc = Expr::sum(vec![
                        bare[mu][rho][lam][sig].clone(),
                        bare[mu][lam][sig][rho].clone(),
                        bare[mu][sig][rho][lam].clone(),
                    ]);
                    if cyc.is_zero() {
                        continue;
                    }
                    let coeff = Expr::product(vec![Expr::ratio(-1, 6), sv.clone(), cyc]);
                    let mono = ctx.theta[rho]
                        .wedge(&ctx.theta[lam])
                        .wedge(&ctx.theta[sig]);
                    acc = acc.add(&mono.scale(&coeff));
                }
            }
        }
        acc
    });

    let mut rii = Vec::new();
    let mut rii_order = Vec::new();
    let mut p5 = Vec::new();
    for p in ctx.points {
        let mut worst_rii: f64 = 0.0;
        let mut worst_order: f64 = 0.0;
        let mut worst_p5: f64 = 0.0;
        for mu in 0..4 {
            worst_rii = worst_rii.max(eval_forms_residual(
                &star_ricci_forms[mu],
                &via_contraction[mu],
                ctx.chart,
                p,
            )?);
            worst_order = worst_order.max(eval_forms_residual(
                &via_contraction[mu],
                &via_wedge_order[mu],
                ctx.chart,
                p,
            )?);
            worst_p5 = worst_p5.max(eval_forms_residual(
                &star_ricci_forms[mu],
                &via_cyclic[mu],
                ctx.chart,
                p,
            )?);
        }
        if worst_rii > tolerance || worst_p5 > tolerance {
            return Err(CurvatureError::RouteMismatch {
                what: "dual Ricci",
                point: p.0,
                residual: worst_rii.max(worst_p5),
                tolerance,
            }
            .into());
        }
        rii.push(worst_rii);
        rii_order.push(worst_order);
        p5.push(worst_p5);
    }
    let report = DualityReport {
        entries: vec![
            ResidualSeries {
                name: "dual-ricci",
                tag: "rii",
                per_point: rii,
            },
            ResidualSeries {
                name: "dual-ricci-wedge-order",
                tag: "rii",
                per_point: rii_order,
            },
            ResidualSeries {
                name: "dual-ricci-cyclic",
                tag: "p5",
                per_point: p5,
            },
        ],
    };
    Ok(DualRicci {
        star_ricci_forms,
        report,
    })
}

/// Dual Einstein identity. The contraction route
/// ½ ℛ_{αβ} ∧ ⋆(θ^α∧θ^β∧θ_μ) reproduces ⋆(G_{βμ}θ^β): expanding the
/// double contraction with the adjointness-consistent nesting
/// (A∧B)⌟C = A⌟(B⌟C) pairs the *first* slot of the Ricci tensor with the
/// coframe, so the 1-form under the star is the transposed Einstein form
/// G_{βμ}θ^β. (The two transposes coincide exactly when torsion vanishes;
/// the printed proposition's −½ traces to the opposite contraction
/// nesting, which flips the antisymmetric pair.) The residual reported
/// here is against ⋆(R_{βμ}θ^β − ½Rθ_μ); a second series records the gap
/// to the untransposed ⋆𝒢_μ, which is zero on torsion-free structures.
pub fn dual_einstein(ctx: &DualityContext, tolerance: f64) -> Result<DualityReport, DualityError> {
    let half_r = Expr::mul(Expr::ratio(1, 2), ctx.ricci.scalar.clone());
    let transposed_ricci_form = |mu: usize| -> Multivector<Expr> {
        let mut acc = Multivector::zero();
        for beta in 0..4 {
            if ctx.ricci.ricci[beta][mu].is_zero() {
                continue;
            }
            acc = acc.add(&ctx.theta[beta].scale(&ctx.ricci.ricci[beta][mu]));
        }
        acc
    };
    let direct: [Multivector<Expr>; 4] = std::array::from_fn(|mu| {
        let g_form =
            transposed_ricci_form(mu).sub(&ctx.lowered_coframe_form(mu).scale(&half_r));
        ctx.star(&g_form)
    });
    let direct_untransposed: [Multivector<Expr>; 4] = std::array::from_fn(|mu| {
        let g_form = ctx
            .lowered_ricci_form(mu)
            .sub(&ctx.lowered_coframe_form(mu).scale(&half_r));
        ctx.star(&g_form)
    });
    // ½ ℛ_{αβ} ∧ ⋆(θ^α∧θ^β∧θ_μ): lowered curvature forms paired with the
    // raised coframe monomials (the output index is lowered through θ_μ).
    let via_contraction: [Multivector<Expr>; 4] = std::array::from_fn(|mu| {
        let theta_mu = ctx.lowered_coframe_form(mu);
        let mut acc = Multivector::zero();
        for a in 0..4 {
            for b in 0..4 {
                let r_ab = ctx.lowered_curvature_form(a, b);
                if r_ab.is_zero() {
                    continue;
                }
                let wedge = ctx.theta[a].wedge(&ctx.theta[b]).wedge(&theta_mu);
                let starred = ctx.star(&wedge);
                acc = acc.add(&r_ab.wedge(&starred));
            }
        }
        acc.scale(&Expr::ratio(1, 2))
    });
    let mut series = Vec::new();
    let mut transpose_gap = Vec::new();
    for p in ctx.points {
        let mut worst: f64 = 0.0;
        let mut gap: f64 = 0.0;
        for mu in 0..4 {
            worst = worst.max(eval_forms_residual(
                &direct[mu],
                &via_contraction[mu],
                ctx.chart,
                p,
            )?);
            gap = gap.max(eval_forms_residual(
                &direct[mu],
                &direct_untransposed[mu],
                ctx.chart,
                p,
            )?);
        }
        if worst > tolerance {
            return Err(CurvatureError::RouteMismatch {
                what: "dual Einstein",
                point: p.0,
                residual: worst,
                tolerance,
            }
            .into());
        }
        series.push(worst);
        transpose_gap.push(gap);
    }
    Ok(DualityReport {
        entries: vec![
            ResidualSeries {
                name: "dual-einstein",
                tag: "eii",
                per_point: series,
            },
            ResidualSeries {
                name: "dual-einstein-transpose-gap",
                tag: "eii",
                per_point: transpose_gap,
            },
        ],
    })
}

/// Residual of the component dual field equation
/// (R*_{μρλσ} + R*_{μλσρ} + R*_{μσρλ} + ½R ε_{μρλσ}) − ε_{ρλσκ} T_μ{}^κ
/// with T := G when no energy-momentum input is supplied.
pub fn dual_einstein_equation_residual(
    ctx: &DualityContext,
    energy_momentum: Option<&E2>,
) -> Result<ResidualSeries, DualityError> {
    let bare = &ctx.dual.rstar_bare;
    let t_mixed: E2 = match energy_momentum {
        Some(t) => e2(|mu, k| {
            sum4(|nu| Expr::mul(ctx.g.inverse()[k][nu].clone(), t[mu][nu].clone()))
        }),
        None => e2(|mu, k| {
            sum4(|nu| {
                Expr::mul(
                    ctx.g.inverse()[k][nu].clone(),
                    ctx.ricci.einstein[mu][nu].clone(),
                )
            })
        }),
    };
    let scalar = &ctx.ricci.scalar;
    let mut per_point = Vec::new();
    for p in ctx.points {
        let bare_n = crate::tensor::eval4(bare, p, ctx.chart)?;
        let t_n = crate::tensor::eval2(&t_mixed, p, ctx.chart)?;
        let r_n = scalar.evaluate(p, ctx.chart)?;
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for rho in 0..4 {
                for lam in 0..4 {
                    for sig in 0..4 {
                        let cyc = bare_n[mu][rho][lam][sig]
                            + bare_n[mu][lam][sig][rho]
                            + bare_n[mu][sig][rho][lam];
                        let eps_m = epsilon(mu, rho, lam, sig) as f64;
                        let lhs = cyc + 0.5 * r_n * eps_m;
                        let mut rhs = 0.0;
                        for k in 0..4 {
                            rhs += epsilon(rho, lam, sig, k) as f64 * t_n[mu][k];
                        }
                        let scale = cyc
                            .abs()
                            .max((0.5 * r_n).abs())
                            .max(rhs.abs());
                        worst = worst.max(rel((lhs - rhs).abs(), scale));
                    }
                }
            }
        }
        per_point.push(worst);
    }
    Ok(ResidualSeries {
        name: "dual-field-eq",
        tag: "p9",
        per_point,
    })
}

/// The unique g-compatible connection with the prescribed torsion:
/// Levi-Civita plus the contorsion determined by the torsion.
pub fn reconstruct_connection_from_torsion(
    g: &MetricField,
    cf: &CoFrameField,
    torsion_components: &E3,
) -> ConnectionField {
    let lc = levi_civita_connection(g, cf);
    let k = contorsion_from_torsion(g, torsion_components);
    lc.plus(&k)
}

/// Non-duality witness: the sizes of D⋆T^α − ⋆ℛ^α_β∧θ^β and D⋆ℛ^α_β for
/// the structure's own connection.
pub fn nonduality_witness(ctx: &DualityContext) -> Result<DualityReport, DualityError> {
    let (first, second) = bianchi_pair_residuals(ctx, ctx.conn)?;
    Ok(DualityReport {
        entries: vec![
            ResidualSeries {
                name: "nonduality-torsion",
                tag: "biii",
                per_point: first,
            },
            ResidualSeries {
                name: "nonduality-curvature",
                tag: "biv",
                per_point: second,
            },
        ],
    })
}

/// ‖D′⋆T − ⋆ℛ∧θ‖ and ‖D′⋆ℛ‖ for an arbitrary connection D′.
fn bianchi_pair_residuals(
    ctx: &DualityContext,
    dprime: &ConnectionField,
) -> Result<(Vec<f64>, Vec<f64>), DualityError> {
    let star_t = IndexedFormField::from_fn(1, 0, 2, |up, _| {
        ctx.dual.star_torsion_forms[up[0]].clone()
    });
    let d_star_t = ext_cov_derivative(&star_t, dprime, ctx.cf)?;
    let star_r = IndexedFormField::from_fn(1, 1, 2, |up, lo| {
        ctx.dual.star_curvature_forms[lo[0]][up[0]].clone()
    });
    let d_star_r = ext_cov_derivative(&star_r, dprime, ctx.cf)?;

    let rhs: [Multivector<Expr>; 4] = std::array::from_fn(|alpha| {
        let mut acc = Multivector::zero();
        for beta in 0..4 {
            acc = acc.add(&ctx.dual.star_curvature_forms[beta][alpha].wedge(&ctx.theta[beta]));
        }
        acc
    });

    let mut first = Vec::new();
    let mut second = Vec::new();
    for p in ctx.points {
        let mut worst1: f64 = 0.0;
        for alpha in 0..4 {
            worst1 = worst1.max(eval_forms_residual(
                d_star_t.get(&[alpha], &[]),
                &rhs[alpha],
                ctx.chart,
                p,
            )?);
        }
        first.push(worst1);
        let mut worst2: f64 = 0.0;
        for mu in 0..4 {
            for rho in 0..4 {
                let v = d_star_r.get(&[rho], &[mu]).evaluate(p, ctx.chart)?;
                let scale = ctx.dual.star_curvature_forms[mu][rho]
                    .evaluate(p, ctx.chart)?
                    .max_abs();
                worst2 = worst2.max(rel(v.max_abs(), scale));
            }
        }
        second.push(worst2);
    }
    Ok((first, second))
}

/// Einstein-line residual shared by the same-metric and general checkers:
/// ‖⋆'ℛ*_μ − ½R*⋆'θ_μ − ⋆'T′_μ‖, with the starred Ricci data contracted
/// with the outer metric and T′ the Einstein 1-forms of D′'s own curvature.
#[allow(clippy::too_many_arguments)]
fn einstein_line_residual(
    ctx: &DualityContext,
    outer_g: &MetricField,
    outer_cf_metric: &FibreMetric<Expr>,
    outer_orientation: &Orientation<Expr>,
    dprime: &ConnectionField,
) -> Result<Vec<f64>, DualityError> {
    // Mixed starred components from the starred Cartan forms.
    let rstar_mixed = e4(|mu, rho, lam, sig| {
        if lam < sig {
            ctx.cf
                .form_frame_component(&ctx.dual.star_curvature_forms[mu][rho], &[lam, sig])
        } else if lam > sig {
            Expr::neg(
                ctx.cf
                    .form_frame_component(&ctx.dual.star_curvature_forms[mu][rho], &[sig, lam]),
            )
        } else {
            Expr::zero()
        }
    });
    // R*_{μν} = R*_μ{}^ρ{}_{ρν}; scalar with the outer metric.
    let ricci_star = e2(|mu, nu| sum4(|rho| rstar_mixed[mu][rho][rho][nu].clone()));
    let scalar_star = crate::tensor::sum44(|mu, nu| {
        Expr::mul(outer_g.inverse()[mu][nu].clone(), ricci_star[mu][nu].clone())
    });
    // T′ := Einstein 1-forms of D′'s own curvature, with the outer metric.
    let r_prime = curvature(dprime, ctx.cf, outer_g);
    let ricci_prime = ricci_einstein(&r_prime, outer_g, ctx.cf, RicciConvention::E4);
    let star_outer = |f: &Multivector<Expr>| hodge_star(f, outer_cf_metric, outer_orientation);

    let half = Expr::ratio(1, 2);
    let mut residuals = Vec::new();
    let mut lhs_forms = Vec::new();
    let mut rhs_forms = Vec::new();
    for mu in 0..4 {
        let mut rstar_form = Multivector::zero();
        for nu in 0..4 {
            if ricci_star[mu][nu].is_zero() {
                continue;
            }
            rstar_form = rstar_form.add(&ctx.theta[nu].scale(&ricci_star[mu][nu]));
        }
        let mut theta_mu = Multivector::zero();
        for nu in 0..4 {
            if outer_g.entry(mu, nu).is_zero() {
                continue;
            }
            theta_mu = theta_mu.add(&ctx.theta[nu].scale(outer_g.entry(mu, nu)));
        }
        let lhs = star_outer(
            &rstar_form.sub(&theta_mu.scale(&Expr::mul(half.clone(), scalar_star.clone()))),
        );
        // lowered T′_μ = G′_{μν}θ^ν
        let mut tprime = Multivector::zero();
        for nu in 0..4 {
            if ricci_prime.einstein[mu][nu].is_zero() {
                continue;
            }
            tprime = tprime.add(&ctx.theta[nu].scale(&ricci_prime.einstein[mu][nu]));
        }
        let rhs = star_outer(&tprime);
        lhs_forms.push(lhs);
        rhs_forms.push(rhs);
    }
    for p in ctx.points {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            worst = worst.max(eval_forms_residual(
                &lhs_forms[mu],
                &rhs_forms[mu],
                ctx.chart,
                p,
            )?);
        }
        residuals.push(worst);
    }
    Ok(residuals)
}

/// Constraint (a): the first Bianchi identity of the primed system
/// combined with the dual field equation of the unprimed one.
/// η_{abcκ}T_μ{}^κ − ½R η_{μabc} = Σ_{(abc)} (D′_a T*_{μbc} − T*^κ_{ac} T*_{μκb}),
/// with η the ε tensor carrying the volume factor.
fn constraint_a_residuals(
    ctx: &DualityContext,
    dprime: &ConnectionField,
) -> Result<Vec<f64>, DualityError> {
    let tstar_low = lower_first3(&ctx.dual.star_torsion_components, ctx.g);
    let tstar = &ctx.dual.star_torsion_components;
    let g_mixed_einstein = e2(|mu, k| {
        sum4(|nu| {
            Expr::mul(
                ctx.g.inverse()[k][nu].clone(),
                ctx.ricci.einstein[mu][nu].clone(),
            )
        })
    });
    let sv = &ctx.vol.frame_factor;
    let scalar = &ctx.ricci.scalar;

    let mut residuals = Vec::new();
    for p in ctx.points {
        let sv_n = sv.evaluate(p, ctx.chart)?;
        let r_n = scalar.evaluate(p, ctx.chart)?;
        let t_n = crate::tensor::eval2(&g_mixed_einstein, p, ctx.chart)?;
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        let mut lhs = -0.5 * r_n * sv_n * epsilon(mu, a, b, c) as f64;
                        for k in 0..4 {
                            lhs += sv_n * epsilon(a, b, c, k) as f64 * t_n[mu][k];
                        }
                        let term = |x: usize, y: usize, z: usize| -> Result<f64, SymError> {
                            let d =
                                cov_deriv_03(&tstar_low, dprime, ctx.cf, x, mu, y, z)
                                    .evaluate(p, ctx.chart)?;
                            let mut tt = 0.0;
                            for k in 0..4 {
                                tt += tstar[k][x][z].evaluate(p, ctx.chart)?
                                    * tstar_low[mu][k][y].evaluate(p, ctx.chart)?;
                            }
                            Ok(d - tt)
                        };
                        let rhs = term(a, b, c)? + term(b, c, a)? + term(c, a, b)?;
                        worst = worst.max(rel((lhs - rhs).abs(), lhs.abs().max(rhs.abs())));
                    }
                }
            }
        }
        residuals.push(worst);
    }
    Ok(residuals)
}

/// Constraint (b): the dual field equation of the primed system combined
/// with the first Bianchi identity of the unprimed one.
/// η_{abcκ}T′_μ{}^κ − ½R* η_{μabc} = Σ_{(abc)} (D_a T_{μbc} − T^κ_{ac} T_{μκb}).
fn constraint_b_residuals(ctx: &DualityContext) -> Result<Vec<f64>, DualityError> {
    // Starred Ricci data with g.
    let rstar_mixed = e4(|mu, rho, lam, sig| {
        sum4(|nu| {
            Expr::mul(
                ctx.g.inverse()[rho][nu].clone(),
                ctx.dual.rstar_lowered[mu][nu][lam][sig].clone(),
            )
        })
    });
    let ricci_star = e2(|mu, nu| sum4(|rho| rstar_mixed[mu][rho][rho][nu].clone()));
    let scalar_star = crate::tensor::sum44(|mu, nu| {
        Expr::mul(ctx.g.inverse()[mu][nu].clone(), ricci_star[mu][nu].clone())
    });
    // T′ = G* of the starred curvature, mixed.
    let einstein_star_mixed = e2(|mu, k| {
        sum4(|nu| {
            let gstar = Expr::sub(
                ricci_star[mu][nu].clone(),
                Expr::product(vec![
                    Expr::ratio(1, 2),
                    ctx.g.entry(mu, nu).clone(),
                    scalar_star.clone(),
                ]),
            );
            Expr::mul(ctx.g.inverse()[k][nu].clone(), gstar)
        })
    });
    let t_low = lower_first3(&ctx.torsion.components, ctx.g);
    let t = &ctx.torsion.components;
    let sv = &ctx.vol.frame_factor;

    let mut residuals = Vec::new();
    for p in ctx.points {
        let sv_n = sv.evaluate(p, ctx.chart)?;
        let rstar_n = scalar_star.evaluate(p, ctx.chart)?;
        let tprime_n = crate::tensor::eval2(&einstein_star_mixed, p, ctx.chart)?;
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        let mut lhs = -0.5 * rstar_n * sv_n * epsilon(mu, a, b, c) as f64;
                        for k in 0..4 {
                            lhs += sv_n * epsilon(a, b, c, k) as f64 * tprime_n[mu][k];
                        }
                        let term = |x: usize, y: usize, z: usize| -> Result<f64, SymError> {
                            let d = cov_deriv_03(&t_low, ctx.conn, ctx.cf, x, mu, y, z)
                                .evaluate(p, ctx.chart)?;
                            let mut tt = 0.0;
                            for k in 0..4 {
                                tt += t[k][x][z].evaluate(p, ctx.chart)?
                                    * t_low[mu][k][y].evaluate(p, ctx.chart)?;
                            }
                            Ok(d - tt)
                        };
                        let rhs = term(a, b, c)? + term(b, c, a)? + term(c, a, b)?;
                        worst = worst.max(rel((lhs - rhs).abs(), lhs.abs().max(rhs.abs())));
                    }
                }
            }
        }
        residuals.push(worst);
    }
    Ok(residuals)
}

/// X_{μab} = g_{μρ} X^ρ_{ab}.
fn lower_first3(x: &E3, g: &MetricField) -> E3 {
    e3(|mu, a, b| sum4(|rho| Expr::mul(g.entry(mu, rho).clone(), x[rho][a][b].clone())))
}

/// Same-metric duality checker: is (⋆T, ⋆R) the torsion/curvature pair of
/// a g-compatible connection with an Einstein-like equation?
pub fn same_metric_duality_check(ctx: &DualityContext) -> Result<DualityReport, DualityError> {
    let dprime =
        reconstruct_connection_from_torsion(ctx.g, ctx.cf, &ctx.dual.star_torsion_components);
    let mut entries = Vec::new();

    // Reconstruction posts: D′ is g-compatible and has torsion ⋆T.
    let compat = metric_compatibility_residual(&dprime, ctx.g, ctx.cf);
    let tprime = torsion(&dprime, ctx.cf);
    let mut compat_series = Vec::new();
    let mut torsion_series = Vec::new();
    for p in ctx.points {
        let c = crate::tensor::eval3(&compat, p, ctx.chart)?;
        compat_series.push(rel(crate::tensor::max_abs3(&c), 0.0));
        let mut worst: f64 = 0.0;
        for rho in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let x = tprime.components[rho][a][b].evaluate(p, ctx.chart)?;
                    let y = ctx.dual.star_torsion_components[rho][a][b].evaluate(p, ctx.chart)?;
                    worst = worst.max(rel((x - y).abs(), x.abs().max(y.abs())));
                }
            }
        }
        torsion_series.push(worst);
    }
    entries.push(ResidualSeries {
        name: "dprime-compatibility",
        tag: "s5",
        per_point: compat_series,
    });
    entries.push(ResidualSeries {
        name: "dprime-torsion-match",
        tag: "s5",
        per_point: torsion_series,
    });

    // Curvature match: curvature(D′) vs ⋆R.
    let r_prime = curvature(&dprime, ctx.cf, ctx.g);
    let mut match_series = Vec::new();
    for p in ctx.points {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for rho in 0..4 {
                worst = worst.max(eval_forms_residual(
                    &r_prime.forms[mu][rho],
                    &ctx.dual.star_curvature_forms[mu][rho],
                    ctx.chart,
                    p,
                )?);
            }
        }
        match_series.push(worst);
    }
    entries.push(ResidualSeries {
        name: "curvature-match",
        tag: "f4",
        per_point: match_series,
    });

    // Intrinsic primed system (f4): D′⋆T = ⋆ℛ∧θ, D′⋆ℛ = 0, and the dual
    // Einstein line.
    let (first, second) = bianchi_pair_residuals(ctx, &dprime)?;
    entries.push(ResidualSeries {
        name: "f4-torsion-bianchi",
        tag: "f4",
        per_point: first,
    });
    entries.push(ResidualSeries {
        name: "f4-curvature-bianchi",
        tag: "f4",
        per_point: second,
    });
    let einstein = einstein_line_residual(ctx, ctx.g, &ctx.coord_metric, &ctx.orientation, &dprime)?;
    entries.push(ResidualSeries {
        name: "f4-einstein",
        tag: "f4",
        per_point: einstein,
    });

    // Component constraints (a) and (b).
    entries.push(ResidualSeries {
        name: "constraint-a",
        tag: "f8",
        per_point: constraint_a_residuals(ctx, &dprime)?,
    });
    entries.push(ResidualSeries {
        name: "constraint-b",
        tag: "f9",
        per_point: constraint_b_residuals(ctx)?,
    });

    // Torsion-free case: trace conditions and the second-Bianchi
    // comparison for the starred curvature.
    let torsion_is_zero = {
        let mut zero = true;
        'outer: for p in ctx.points {
            for rho in 0..4 {
                if ctx.torsion.forms[rho].evaluate(p, ctx.chart)?.max_abs() > 1e-12 {
                    zero = false;
                    break 'outer;
                }
            }
        }
        zero
    };
    if torsion_is_zero {
        entries.extend(f20_entries(ctx)?);
    }

    Ok(DualityReport { entries })
}

/// Trace conditions η_{ρλσκ}T_μ{}^κ = −½T η_{μρλσ} for the unprimed and
/// starred energy-momentum tensors, plus the second-Bianchi comparison
/// Σ_{(μνρ)} D̊_μ 𝖱*_{βανρ} = Σ_{(μνρ)} D̊_μ R_{βανρ}.
fn f20_entries(ctx: &DualityContext) -> Result<Vec<ResidualSeries>, DualityError> {
    let lc = levi_civita_connection(ctx.g, ctx.cf);
    let g_mixed_einstein = e2(|mu, k| {
        sum4(|nu| {
            Expr::mul(
                ctx.g.inverse()[k][nu].clone(),
                ctx.ricci.einstein[mu][nu].clone(),
            )
        })
    });
    // starred Einstein (with g)
    let rstar_mixed = e4(|mu, rho, lam, sig| {
        sum4(|nu| {
            Expr::mul(
                ctx.g.inverse()[rho][nu].clone(),
                ctx.dual.rstar_lowered[mu][nu][lam][sig].clone(),
            )
        })
    });
    let ricci_star = e2(|mu, nu| sum4(|rho| rstar_mixed[mu][rho][rho][nu].clone()));
    let scalar_star = crate::tensor::sum44(|mu, nu| {
        Expr::mul(ctx.g.inverse()[mu][nu].clone(), ricci_star[mu][nu].clone())
    });
    let estar_mixed = e2(|mu, k| {
        sum4(|nu| {
            let gstar = Expr::sub(
                ricci_star[mu][nu].clone(),
                Expr::product(vec![
                    Expr::ratio(1, 2),
                    ctx.g.entry(mu, nu).clone(),
                    scalar_star.clone(),
                ]),
            );
            Expr::mul(ctx.g.inverse()[k][nu].clone(), gstar)
        })
    });

    let trace_condition = |t_mixed: &crate::tensor::N2| -> f64 {
        let trace: f64 = (0..4).map(|k| t_mixed[k][k]).sum();
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for r in 0..4 {
                for l in 0..4 {
                    for s in 0..4 {
                        let mut lhs = 0.0;
                        for k in 0..4 {
                            lhs += epsilon(r, l, s, k) as f64 * t_mixed[mu][k];
                        }
                        let rhs = -0.5 * trace * epsilon(mu, r, l, s) as f64;
                        worst = worst.max(rel((lhs - rhs).abs(), lhs.abs().max(rhs.abs())));
                    }
                }
            }
        }
        worst
    };

    let mut trace_t = Vec::new();
    let mut trace_tprime = Vec::new();
    let mut bianchi_cmp = Vec::new();
    for p in ctx.points {
        let t_n = crate::tensor::eval2(&g_mixed_einstein, p, ctx.chart)?;
        trace_t.push(trace_condition(&t_n));
        let tp_n = crate::tensor::eval2(&estar_mixed, p, ctx.chart)?;
        trace_tprime.push(trace_condition(&tp_n));

        let mut worst: f64 = 0.0;
        for beta in 0..4 {
            for alpha in 0..4 {
                for mu in 0..4 {
                    for nu in 0..4 {
                        for rho in 0..4 {
                            let cyc = |x: &E4| -> Result<f64, SymError> {
                                let mut acc = 0.0;
                                for (m, n, r) in [(mu, nu, rho), (nu, rho, mu), (rho, mu, nu)] {
                                    acc += cov_deriv_04(x, &lc, ctx.cf, m, beta, alpha, n, r)
                                        .evaluate(p, ctx.chart)?;
                                }
                                Ok(acc)
                            };
                            let lhs = cyc(&ctx.dual.rstar_lowered)?;
                            let rhs = cyc(&ctx.curvature.lowered)?;
                            worst = worst.max(rel((lhs - rhs).abs(), lhs.abs().max(rhs.abs())));
                        }
                    }
                }
            }
        }
        bianchi_cmp.push(worst);
    }
    Ok(vec![
        ResidualSeries {
            name: "f20-trace",
            tag: "f20",
            per_point: trace_t,
        },
        ResidualSeries {
            name: "f20-trace-prime",
            tag: "f20",
            per_point: trace_tprime,
        },
        ResidualSeries {
            name: "f20-bianchi2-compare",
            tag: "f20",
            per_point: bianchi_cmp,
        },
    ])
}

/// Particular-case checker for the postulated system: scalar conditions
/// R = 0 and R* = 0, the derived Θ with its trace, and the cyclic
/// torsion-curvature contractions.
pub fn particular_case_check(ctx: &DualityContext) -> Result<DualityReport, DualityError> {
    let mut entries = Vec::new();
    let t_low = lower_first3(&ctx.torsion.components, ctx.g);
    let tstar_low = lower_first3(&ctx.dual.star_torsion_components, ctx.g);

    // R = 0 (f31) and R* = 0 (l1).
    let rstar_mixed = e4(|mu, rho, lam, sig| {
        sum4(|nu| {
            Expr::mul(
                ctx.g.inverse()[rho][nu].clone(),
                ctx.dual.rstar_lowered[mu][nu][lam][sig].clone(),
            )
        })
    });
    let ricci_star = e2(|mu, nu| sum4(|rho| rstar_mixed[mu][rho][rho][nu].clone()));
    let scalar_star = crate::tensor::sum44(|mu, nu| {
        Expr::mul(ctx.g.inverse()[mu][nu].clone(), ricci_star[mu][nu].clone())
    });

    let mut r_zero = Vec::new();
    let mut rstar_zero = Vec::new();
    let mut theta_trace = Vec::new();
    let mut t_trace = Vec::new();
    let mut cyclic_plain = Vec::new();
    let mut cyclic_star = Vec::new();
    for p in ctx.points {
        let r_n = ctx.ricci.scalar.evaluate(p, ctx.chart)?;
        r_zero.push(rel(r_n.abs(), r_n.abs()));
        let rs_n = scalar_star.evaluate(p, ctx.chart)?;
        rstar_zero.push(rel(rs_n.abs(), rs_n.abs()));

        // T trace: G^κ_κ must vanish.
        let mut g_trace = 0.0;
        let mut g_scale: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let v = ctx.g.inverse()[mu][nu].evaluate(p, ctx.chart)?
                    * ctx.ricci.einstein[mu][nu].evaluate(p, ctx.chart)?;
                g_trace += v;
                g_scale = g_scale.max(v.abs());
            }
        }
        t_trace.push(rel(g_trace.abs(), g_scale));

        // Θ extracted from η_{abcd}Θ_μ{}^d = Σ_{(abc)}(D_aT_{μbc} − T^κ_{ac}T_{μκb}).
        let sv_n = ctx.vol.frame_factor.evaluate(p, ctx.chart)?;
        let mut theta_mixed = [[0.0; 4]; 4];
        let mut theta_scale: f64 = 0.0;
        for mu in 0..4 {
            for a in 0..4 {
                for b in (a + 1)..4 {
                    for c in (b + 1)..4 {
                        let d = 6 - a - b - c;
                        let term = |x: usize, y: usize, z: usize| -> Result<f64, SymError> {
                            let dv = cov_deriv_03(&t_low, ctx.conn, ctx.cf, x, mu, y, z)
                                .evaluate(p, ctx.chart)?;
                            let mut tt = 0.0;
                            for k in 0..4 {
                                tt += ctx.torsion.components[k][x][z].evaluate(p, ctx.chart)?
                                    * t_low[mu][k][y].evaluate(p, ctx.chart)?;
                            }
                            Ok(dv - tt)
                        };
                        let bsum = term(a, b, c)? + term(b, c, a)? + term(c, a, b)?;
                        let eta = sv_n * epsilon(a, b, c, d) as f64;
                        theta_mixed[mu][d] = bsum / eta;
                        theta_scale = theta_scale.max(theta_mixed[mu][d].abs());
                    }
                }
            }
        }
        let theta_tr: f64 = (0..4).map(|k| theta_mixed[k][k]).sum();
        theta_trace.push(rel(theta_tr.abs(), theta_scale));

        // Cyclic conditions: Σ_{(μνρ)} T^κ_{νμ} R_{βακρ} = 0 and starred.
        let cyclic = |tc: &E3, rc: &E4| -> Result<f64, SymError> {
            let mut worst: f64 = 0.0;
            for beta in 0..4 {
                for alpha in 0..4 {
                    for mu in 0..4 {
                        for nu in 0..4 {
                            for rho in 0..4 {
                                let mut acc = 0.0;
                                let mut scale: f64 = 0.0;
                                for (m, n, r) in [(mu, nu, rho), (nu, rho, mu), (rho, mu, nu)] {
                                    let mut inner = 0.0;
                                    for k in 0..4 {
                                        inner += tc[k][n][m].evaluate(p, ctx.chart)?
                                            * rc[beta][alpha][k][r].evaluate(p, ctx.chart)?;
                                    }
                                    acc += inner;
                                    scale = scale.max(inner.abs());
                                }
                                worst = worst.max(rel(acc.abs(), scale));
                            }
                        }
                    }
                }
            }
            Ok(worst)
        };
        cyclic_plain.push(cyclic(&ctx.torsion.components, &ctx.curvature.lowered)?);
        cyclic_star.push(cyclic(
            &ctx.dual.star_torsion_components,
            &ctx.dual.rstar_lowered,
        )?);
        let _ = &tstar_low;
    }
    entries.push(ResidualSeries {
        name: "scalar-curvature-zero",
        tag: "f31",
        per_point: r_zero,
    });
    entries.push(ResidualSeries {
        name: "star-scalar-curvature-zero",
        tag: "l1",
        per_point: rstar_zero,
    });
    entries.push(ResidualSeries {
        name: "energy-momentum-trace",
        tag: "ff",
        per_point: t_trace,
    });
    entries.push(ResidualSeries {
        name: "theta-trace",
        tag: "ff",
        per_point: theta_trace,
    });
    entries.push(ResidualSeries {
        name: "cyclic-torsion-curvature",
        tag: "ff",
        per_point: cyclic_plain,
    });
    entries.push(ResidualSeries {
        name: "cyclic-torsion-curvature-star",
        tag: "ff",
        per_point: cyclic_star,
    });
    Ok(DualityReport { entries })
}

/// Residuals of the general (g′, D′) system: the outer duals are taken
/// with g′, the starred quantities keep the g-duals, exactly as the
/// system is posed.
pub fn gprime_residual_check(
    ctx: &DualityContext,
    cand: &CandidatePrime,
) -> Result<DualityReport, DualityError> {
    let (gprime, dprime): (MetricField, ConnectionField) = if cand.same_metric {
        let d = match &cand.connection {
            Some(d) => d.clone(),
            None => reconstruct_connection_from_torsion(
                ctx.g,
                ctx.cf,
                &ctx.dual.star_torsion_components,
            ),
        };
        (ctx.g.clone(), d)
    } else {
        match (&cand.metric, &cand.connection) {
            (Some(g), Some(d)) => (g.clone(), d.clone()),
            _ => return Err(DualityError::MissingCandidate),
        }
    };

    let coord_gprime = coordinate_metric(&gprime, ctx.cf);
    let vol_prime = volume_form(&gprime, ctx.cf, ctx.vol.sign);
    let orientation_prime = Orientation::from_tau(vol_prime.coord_form.clone(), ctx.vol.sign);

    let mut entries = Vec::new();
    let einstein = einstein_line_residual(ctx, &gprime, &coord_gprime, &orientation_prime, &dprime)?;
    entries.push(ResidualSeries {
        name: "f22-einstein",
        tag: "f22",
        per_point: einstein,
    });
    let (first, second) = bianchi_pair_residuals(ctx, &dprime)?;
    entries.push(ResidualSeries {
        name: "f22-torsion-bianchi",
        tag: "f22",
        per_point: first,
    });
    entries.push(ResidualSeries {
        name: "f22-curvature-bianchi",
        tag: "f22",
        per_point: second,
    });
    // Candidate self-consistency: D′ should be g′-compatible.
    let compat = metric_compatibility_residual(&dprime, &gprime, ctx.cf);
    let mut compat_series = Vec::new();
    for p in ctx.points {
        let c = crate::tensor::eval3(&compat, p, ctx.chart)?;
        compat_series.push(rel(crate::tensor::max_abs3(&c), 0.0));
    }
    entries.push(ResidualSeries {
        name: "dprime-compatibility",
        tag: "f21",
        per_point: compat_series,
    });
    Ok(DualityReport { entries })
}
