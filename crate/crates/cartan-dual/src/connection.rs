//! Connections in a declared frame: coefficients L^ρ_{αβ} with the
//! convention D_{e_α} e_β = L^ρ_{αβ} e_ρ (so ω^ρ_β = L^ρ_{αβ} θ^α), the
//! Levi-Civita construction through the Koszul formula, metric
//! compatibility, and the decomposition of a general connection into
//! Levi-Civita part, torsion and strain relative to a reference metric.

use crate::exterior::Multivector;
use crate::structure::{structure_coefficients, CoFrameField, MetricField};
use crate::symexpr::Expr;
use crate::tensor::{e3, sum4, E3};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConnectionError {
    #[error("operation requires the coordinate coframe (θ^ρ = dx^ρ)")]
    FrameNotCoordinate,
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
}

/// Connection coefficients L^ρ_{αβ} in the declared frame.
#[derive(Debug, Clone)]
pub struct ConnectionField {
    l: E3,
}

impl ConnectionField {
    pub fn new(l: E3) -> Self {
        ConnectionField { l }
    }

    pub fn zero() -> Self {
        ConnectionField {
            l: e3(|_, _, _| Expr::zero()),
        }
    }

    /// L^ρ_{αβ}.
    pub fn entry(&self, rho: usize, alpha: usize, beta: usize) -> &Expr {
        &self.l[rho][alpha][beta]
    }

    pub fn array(&self) -> &E3 {
        &self.l
    }

    /// Componentwise sum with a correction K: (L + K)^ρ_{αβ}.
    pub fn plus(&self, k: &E3) -> ConnectionField {
        ConnectionField {
            l: e3(|r, a, b| Expr::add(self.l[r][a][b].clone(), k[r][a][b].clone())),
        }
    }
}

/// Connection 1-forms ω^ρ_β = L^ρ_{αβ} θ^α, in the coordinate basis.
pub fn connection_one_forms(
    conn: &ConnectionField,
    cf: &CoFrameField,
) -> [[Multivector<Expr>; 4]; 4] {
    let theta = cf.one_forms();
    std::array::from_fn(|rho| {
        std::array::from_fn(|beta| {
            let mut acc = Multivector::zero();
            for alpha in 0..4 {
                let coeff = conn.entry(rho, alpha, beta);
                if coeff.is_zero() {
                    continue;
                }
                acc = acc.add(&theta[alpha].scale(coeff));
            }
            acc
        })
    })
}

/// The unique torsion-free metric-compatible connection, through the
/// Koszul formula with structure coefficients:
///
/// 2 g_{ρσ} Γ^ρ_{αβ} = e_α(g_{βσ}) + e_β(g_{ασ}) − e_σ(g_{αβ})
///                     + c_{αβ;σ} − c_{ασ;β} − c_{βσ;α}.
pub fn levi_civita_connection(g: &MetricField, cf: &CoFrameField) -> ConnectionField {
    let c = structure_coefficients(cf);
    let lower = |m: usize, a: usize, b: usize| -> Expr {
        // c_{ab;m} = c^κ_{ab} g_{κm}
        sum4(|k| Expr::mul(c.entry(k, a, b).clone(), g.entry(k, m).clone()))
    };
    let l = e3(|rho, alpha, beta| {
        let inner = |sigma: usize| {
            Expr::sum(vec![
                cf.frame_derivative(g.entry(beta, sigma), alpha),
                cf.frame_derivative(g.entry(alpha, sigma), beta),
                Expr::neg(cf.frame_derivative(g.entry(alpha, beta), sigma)),
                lower(sigma, alpha, beta),
                Expr::neg(lower(beta, alpha, sigma)),
                Expr::neg(lower(alpha, beta, sigma)),
            ])
        };
        Expr::mul(
            Expr::ratio(1, 2),
            sum4(|sigma| Expr::mul(g.inverse()[rho][sigma].clone(), inner(sigma))),
        )
    });
    ConnectionField::new(l)
}

/// D_α g_{βσ} = e_α(g_{βσ}) − L^μ_{αβ} g_{μσ} − L^μ_{ασ} g_{βμ};
/// identically zero iff the connection is compatible with g.
pub fn metric_compatibility_residual(
    conn: &ConnectionField,
    g: &MetricField,
    cf: &CoFrameField,
) -> E3 {
    covariant_derivative_of_symmetric2(conn, g.lower(), cf)
}

fn covariant_derivative_of_symmetric2(
    conn: &ConnectionField,
    g: &crate::tensor::E2,
    cf: &CoFrameField,
) -> E3 {
    e3(|alpha, beta, sigma| {
        Expr::sum(vec![
            cf.frame_derivative(&g[beta][sigma], alpha),
            Expr::neg(sum4(|mu| {
                Expr::mul(conn.entry(mu, alpha, beta).clone(), g[mu][sigma].clone())
            })),
            Expr::neg(sum4(|mu| {
                Expr::mul(conn.entry(mu, alpha, sigma).clone(), g[beta][mu].clone())
            })),
        ])
    })
}

/// Nonmetricity of the connection relative to a reference metric:
/// Q_{αβσ} = −D_α g̊_{βσ}, symmetric in (β,σ).
#[derive(Debug, Clone)]
pub struct NonmetricityField {
    q: E3,
}

impl NonmetricityField {
    pub fn entry(&self, alpha: usize, beta: usize, sigma: usize) -> &Expr {
        &self.q[alpha][beta][sigma]
    }

    pub fn array(&self) -> &E3 {
        &self.q
    }
}

pub fn nonmetricity(
    conn: &ConnectionField,
    gref: &MetricField,
    cf: &CoFrameField,
) -> NonmetricityField {
    let d = covariant_derivative_of_symmetric2(conn, gref.lower(), cf);
    NonmetricityField {
        q: e3(|a, b, s| Expr::neg(d[a][b][s].clone())),
    }
}

/// Strain of the connection relative to a reference metric, symmetric in
/// the lower pair:
/// S^ρ_{αβ} = g̊^{ρσ}(Q_{αβσ}+Q_{βσα}−Q_{σαβ}) − g̊^{ρσ}(g̊_{βμ}T^μ_{ασ}+g̊_{αμ}T^μ_{βσ}).
#[derive(Debug, Clone)]
pub struct StrainField {
    s: E3,
}

impl StrainField {
    pub fn entry(&self, rho: usize, alpha: usize, beta: usize) -> &Expr {
        &self.s[rho][alpha][beta]
    }

    pub fn array(&self) -> &E3 {
        &self.s
    }
}

pub fn strain(
    conn: &ConnectionField,
    gref: &MetricField,
    cf: &CoFrameField,
) -> Result<StrainField, ConnectionError> {
    if !cf.is_coordinate() {
        return Err(ConnectionError::FrameNotCoordinate);
    }
    let q = nonmetricity(conn, gref, cf);
    let t = coordinate_torsion(conn);
    Ok(StrainField {
        s: strain_from_q_t(q.array(), &t, gref),
    })
}

pub(crate) fn strain_from_q_t(q: &E3, t: &E3, gref: &MetricField) -> E3 {
    let lower_t = |a: usize, s: usize, b: usize| -> Expr {
        // g̊_{bμ} T^μ_{as}
        sum4(|mu| Expr::mul(gref.entry(b, mu).clone(), t[mu][a][s].clone()))
    };
    let entry = |rho: usize, alpha: usize, beta: usize| {
        sum4(|sigma| {
            let q_cyc = Expr::sum(vec![
                q[alpha][beta][sigma].clone(),
                q[beta][sigma][alpha].clone(),
                Expr::neg(q[sigma][alpha][beta].clone()),
            ]);
            let t_part = Expr::add(lower_t(alpha, sigma, beta), lower_t(beta, sigma, alpha));
            Expr::mul(
                gref.inverse()[rho][sigma].clone(),
                Expr::sub(q_cyc, t_part),
            )
        })
    };
    // Symmetric in the lower pair; share the tree so the symmetry is
    // structural, not just numerical.
    let mut s = crate::tensor::zero3();
    for rho in 0..4 {
        for alpha in 0..4 {
            for beta in alpha..4 {
                let v = entry(rho, alpha, beta);
                s[rho][alpha][beta] = v.clone();
                s[rho][beta][alpha] = v;
            }
        }
    }
    s
}

/// The nonmetricity/torsion → strain inversion, exposed for round-trip
/// verification against the forward relation.
pub fn strain_via_nonmetricity(q: &E3, torsion: &E3, gref: &MetricField) -> E3 {
    strain_from_q_t(q, torsion, gref)
}

/// Torsion components in the coordinate coframe: T^ρ_{αβ} = L^ρ_{αβ} − L^ρ_{βα}.
pub(crate) fn coordinate_torsion(conn: &ConnectionField) -> E3 {
    e3(|r, a, b| {
        Expr::sub(
            conn.entry(r, a, b).clone(),
            conn.entry(r, b, a).clone(),
        )
    })
}

/// Contorsion K^ρ_{αβ} = L^ρ_{αβ} − Γ̊^ρ_{αβ} relative to the Levi-Civita
/// connection of the reference metric; equals ½(T + S).
#[derive(Debug, Clone)]
pub struct ContorsionField {
    k: E3,
}

impl ContorsionField {
    pub fn new(k: E3) -> Self {
        ContorsionField { k }
    }

    pub fn entry(&self, rho: usize, alpha: usize, beta: usize) -> &Expr {
        &self.k[rho][alpha][beta]
    }

    pub fn array(&self) -> &E3 {
        &self.k
    }
}

pub fn contorsion(
    conn: &ConnectionField,
    gref: &MetricField,
    cf: &CoFrameField,
) -> Result<ContorsionField, ConnectionError> {
    if !cf.is_coordinate() {
        return Err(ConnectionError::FrameNotCoordinate);
    }
    let lc = levi_civita_connection(gref, cf);
    Ok(ContorsionField {
        k: e3(|r, a, b| Expr::sub(conn.entry(r, a, b).clone(), lc.entry(r, a, b).clone())),
    })
}

/// L^ρ_{αβ} = Γ̊^ρ_{αβ} + ½T^ρ_{αβ} + ½S^ρ_{αβ}. T must be antisymmetric
/// and S symmetric in the lower pair (checked structurally).
pub fn compose_connection(
    lc: &ConnectionField,
    torsion: &E3,
    strain: &E3,
) -> Result<ConnectionField, ConnectionError> {
    for r in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                if torsion[r][a][b] != Expr::neg(torsion[r][b][a].clone()) {
                    return Err(ConnectionError::SymmetryViolation(format!(
                        "torsion entry ({r},{a},{b}) is not antisymmetric"
                    )));
                }
                if strain[r][a][b] != strain[r][b][a] {
                    return Err(ConnectionError::SymmetryViolation(format!(
                        "strain entry ({r},{a},{b}) is not symmetric"
                    )));
                }
            }
        }
    }
    let half = Expr::ratio(1, 2);
    Ok(ConnectionField::new(e3(|r, a, b| {
        Expr::sum(vec![
            lc.entry(r, a, b).clone(),
            Expr::mul(half.clone(), torsion[r][a][b].clone()),
            Expr::mul(half.clone(), strain[r][a][b].clone()),
        ])
    })))
}

/// The unique g-compatible contorsion with prescribed torsion (the Q = 0
/// inversion of the strain relation):
/// K^ρ_{αβ} = ½T^ρ_{αβ} − ½g^{ρσ}(g_{βμ}T^μ_{ασ} + g_{αμ}T^μ_{βσ}).
pub fn contorsion_from_torsion(g: &MetricField, torsion: &E3) -> E3 {
    let lower_t = |a: usize, s: usize, b: usize| -> Expr {
        sum4(|mu| Expr::mul(g.entry(b, mu).clone(), torsion[mu][a][s].clone()))
    };
    let half = Expr::ratio(1, 2);
    e3(|rho, alpha, beta| {
        let s_part = sum4(|sigma| {
            Expr::mul(
                g.inverse()[rho][sigma].clone(),
                Expr::add(lower_t(alpha, sigma, beta), lower_t(beta, sigma, alpha)),
            )
        });
        Expr::mul(
            half.clone(),
            Expr::sub(torsion[rho][alpha][beta].clone(), s_part),
        )
    })
}

/// Transport of connection coefficients to the coordinate coframe:
/// Λ^ρ_{μν} = A^ρ_c h^a_μ (e_a(h^c_ν) + h^b_ν L^c_{ab}).
pub fn to_coordinate_frame(conn: &ConnectionField, cf: &CoFrameField) -> ConnectionField {
    if cf.is_coordinate() {
        return conn.clone();
    }
    let h = cf.matrix();
    let a_inv = cf.inverse_matrix();
    ConnectionField::new(e3(|rho, mu, nu| {
        let mut terms = Vec::new();
        for a in 0..4 {
            for c in 0..4 {
                let mut bracket = vec![cf.frame_derivative(&h[c][nu], a)];
                for b in 0..4 {
                    bracket.push(Expr::mul(
                        h[b][nu].clone(),
                        conn.entry(c, a, b).clone(),
                    ));
                }
                terms.push(Expr::product(vec![
                    a_inv[rho][c].clone(),
                    h[a][mu].clone(),
                    Expr::sum(bracket),
                ]));
            }
        }
        Expr::sum(terms)
    }))
}
