//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The exact-arithmetic identity batteries run over `BigRational`
//! coefficients with random signature-(1,3) metrics of the form PᵀηP, so
//! the volume factor √|det g| = |det P| stays rational and every equality
//! is checked exactly. The geometric criteria run against the bundled
//! fixtures plus randomly generated metric-compatible torsionful
//! connections, and the vacuum criterion is anchored by an independent
//! finite-difference Christoffel/Riemann oracle that shares no code with
//! the symbolic path.

use cartan_dual::checks::{run_single, CheckName};
use cartan_dual::connection::{
    contorsion_from_torsion, levi_civita_connection, metric_compatibility_residual,
    ConnectionField,
};
use cartan_dual::curvature::{
    bianchi_first_residual, bianchi_second_residual, curvature, ext_cov_derivative,
    ricci_einstein, torsion, IndexedFormField, RicciConvention,
};
use cartan_dual::duality::{
    dual_einstein, dual_einstein_equation_residual, dual_ricci, nonduality_witness,
    same_metric_duality_check, DualityContext,
};
use cartan_dual::exterior::{
    det4, grade_of, hodge_inverse, hodge_star, minkowski_metric, FibreMetric, Multivector,
    Orientation, BASIS, DIM,
};
use cartan_dual::report::Verdict;
use cartan_dual::spec::Structure;
use cartan_dual::structure::{CoFrameField, MetricField};
use cartan_dual::symexpr::{parse_expr, Chart, Expr, Point};
use cartan_dual::tensor::{e2, e3, eval3, max_abs3};
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Rat = BigRational;
type Mv = Multivector<Rat>;

fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn random_mv(rng: &mut ChaCha8Rng) -> Mv {
    Multivector::from_fn(|_| random_rat(rng))
}

/// Random nondegenerate (1,3) metric g = PᵀηP with rational |det g|^{1/2}.
fn random_metric(rng: &mut ChaCha8Rng) -> (FibreMetric<Rat>, Orientation<Rat>) {
    loop {
        let p: [[Rat; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-3..=3), 1)));
        let det_p = det4(&p);
        if det_p.is_zero() {
            continue;
        }
        let eta: [Rat; 4] = [
            BigRational::one(),
            -BigRational::one(),
            -BigRational::one(),
            -BigRational::one(),
        ];
        let lower: [[Rat; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Rat::zero();
                for k in 0..4 {
                    acc += &p[k][i] * &eta[k] * &p[k][j];
                }
                acc
            })
        });
        let metric = FibreMetric::from_lower(lower).expect("PᵀηP is nondegenerate");
        let orientation = Orientation::from_rational_factor(det_p.abs(), 1);
        return (metric, orientation);
    }
}

fn fixture(name: &str) -> Structure {
    cartan_dual::fixtures::load(name)
        .unwrap_or_else(|| panic!("fixture {name} missing"))
        .unwrap_or_else(|e| panic!("fixture {name} invalid: {e}"))
}

fn flat_chart() -> Chart {
    Chart::new(["t", "x", "y", "z"], vec![]).unwrap()
}

fn schwarzschild_chart() -> Chart {
    Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap()
}

fn schwarzschild_metric(chart: &Chart) -> MetricField {
    let entries = [
        "1 - 2*M/r",
        "-1/(1 - 2*M/r)",
        "-r^2",
        "-r^2*sin(th)^2",
    ];
    MetricField::new(e2(|i, j| {
        if i == j {
            parse_expr(entries[i], chart).unwrap()
        } else {
            Expr::zero()
        }
    }))
}

/// Random metric-compatible torsionful connection over the flat metric:
/// lowered contorsion κ_{αβσ} = η_{σρ}K^ρ_{αβ} antisymmetric in (β,σ),
/// entries affine in the coordinates with small rational coefficients.
fn random_torsionful_connection(rng: &mut ChaCha8Rng, chart: &Chart) -> ConnectionField {
    let coeff = |rng: &mut ChaCha8Rng| -> Expr {
        Expr::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3) * 5)
    };
    let affine = |rng: &mut ChaCha8Rng| -> Expr {
        let mut terms = vec![coeff(rng)];
        let coord = rng.gen_range(0..4);
        terms.push(Expr::mul(coeff(rng), Expr::coord(coord)));
        Expr::sum(terms)
    };
    let mut kappa = e3(|_, _, _| Expr::zero());
    for alpha in 0..4 {
        for beta in 0..4 {
            for sigma in (beta + 1)..4 {
                let v = affine(rng);
                kappa[alpha][beta][sigma] = v.clone();
                kappa[alpha][sigma][beta] = Expr::neg(v);
            }
        }
    }
    // raise the last slot with η: K^ρ_{αβ} = η^{ρσ} κ_{αβσ}
    let k = e3(|rho, alpha, beta| {
        let eta = if rho == 0 { 1 } else { -1 };
        Expr::mul(Expr::from_int(eta), kappa[alpha][beta][rho].clone())
    });
    let _ = chart;
    ConnectionField::zero().plus(&k)
}

fn ctx_for(s: &Structure) -> DualityContext<'_> {
    DualityContext::new(
        &s.chart,
        &s.metric,
        &s.coframe,
        &s.connection,
        &s.sample_points,
        s.orientation_sign,
        s.conventions.dual_pair,
    )
}

// ---------------------------------------------------------------------
// 1. Fibre-algebra identity suite, exact rational arithmetic.
// ---------------------------------------------------------------------
#[test]
fn acceptance_01_exterior_identity_suite_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);

    // 500 random multivector/metric draws.
    for draw in 0..500 {
        let (m, o) = random_metric(&mut rng);
        let a = random_mv(&mut rng);
        let b = random_mv(&mut rng);
        let tau = o.tau().clone();

        // scalar product: symmetry and grade orthogonality
        assert_eq!(
            a.scalar_product(&b, &m),
            b.scalar_product(&a, &m),
            "draw {draw}: A·B = B·A"
        );
        for r in 0..=DIM {
            for s in 0..=DIM {
                if r != s {
                    let x = a.grade_project(r).scalar_product(&b.grade_project(s), &m);
                    assert!(x.is_zero(), "draw {draw}: grades {r}≠{s} orthogonal");
                }
            }
        }

        // defining property of ⋆ per grade: A_r ∧ ⋆B_r = (A_r·B_r) τ
        for r in 0..=DIM {
            let ar = a.grade_project(r);
            let br = b.grade_project(r);
            let lhs = ar.wedge(&hodge_star(&br, &m, &o));
            let rhs = tau.scale(&ar.scalar_product(&br, &m));
            assert_eq!(lhs, rhs, "draw {draw}: defining property grade {r}");
        }

        // ⋆A = Ã ⌟ τ and ⋆τ = −1, ⋆1 = τ
        assert_eq!(
            hodge_star(&a, &m, &o),
            a.reverse().left_contract(&tau, &m),
            "draw {draw}: ⋆ = reversed contraction with τ"
        );
        assert_eq!(
            hodge_star(&tau, &m, &o),
            Multivector::scalar(-Rat::one()),
            "draw {draw}: ⋆τ = −1"
        );
        assert_eq!(
            hodge_star(&Multivector::scalar(Rat::one()), &m, &o),
            tau,
            "draw {draw}: ⋆1 = τ"
        );
        // τ·τ = −1
        assert_eq!(tau.scalar_product(&tau, &m), -Rat::one(), "draw {draw}: τ·τ");

        // graded Hodge identities
        for r in 0..=DIM {
            let ar = a.grade_project(r);
            for s in 0..=DIM {
                let bs = b.grade_project(s);
                if r == s {
                    assert_eq!(
                        ar.wedge(&hodge_star(&bs, &m, &o)),
                        bs.wedge(&hodge_star(&ar, &m, &o)),
                        "draw {draw}: A∧⋆B = B∧⋆A at grade {r}"
                    );
                }
                if r + s == DIM {
                    // The complementary-grade pairing carries the sign
                    // (−1)^{r(4−r)} (equal to +1 only for even r), as
                    // forced by the inversion law ⋆⁻¹ = −(−1)^{r(4−r)}⋆
                    // together with the defining property.
                    let mut rhs = bs.scalar_product(&hodge_star(&ar, &m, &o), &m);
                    if (r * (DIM - r)) % 2 == 1 {
                        rhs = -rhs;
                    }
                    assert_eq!(
                        ar.scalar_product(&hodge_star(&bs, &m, &o), &m),
                        rhs,
                        "draw {draw}: A·⋆B = (−1)^(r(4−r)) B·⋆A for r+s=4"
                    );
                }
                if r <= s {
                    let lhs = ar.wedge(&hodge_star(&bs, &m, &o));
                    let mut rhs = hodge_star(&ar.reverse().left_contract(&bs, &m), &m, &o);
                    if (r * (s + 1)) % 2 == 1 {
                        // (−1)^{r(s−1)} with s−1 ≡ s+1 (mod 2)
                        rhs = rhs.neg();
                    }
                    assert_eq!(lhs, rhs, "draw {draw}: wedge/contraction duality r={r},s={s}");
                }
                if r + s <= DIM {
                    let lhs = ar.left_contract(&hodge_star(&bs, &m, &o), &m);
                    let mut rhs = hodge_star(&ar.reverse().wedge(&bs), &m, &o);
                    if (r * s) % 2 == 1 {
                        rhs = rhs.neg();
                    }
                    assert_eq!(lhs, rhs, "draw {draw}: contraction/wedge duality r={r},s={s}");
                }
            }
        }

        // degree rules: j>k left-vanishing, j<k right-vanishing, and the
        // left/right exchange sign
        for aj in 0..=DIM {
            for bk in 0..=DIM {
                let x = a.grade_project(aj);
                let y = b.grade_project(bk);
                if aj > bk {
                    assert!(x.left_contract(&y, &m).is_zero(), "T52 left");
                }
                if aj < bk {
                    assert!(x.right_contract(&y, &m).is_zero(), "T52 right");
                }
                if aj <= bk {
                    let lhs = x.left_contract(&y, &m);
                    let mut rhs = y.right_contract(&x, &m);
                    if (aj * (bk - aj)) % 2 == 1 {
                        rhs = rhs.neg();
                    }
                    assert_eq!(lhs, rhs, "T51 at ({aj},{bk})");
                }
            }
        }

        // (v): X_k ⌟ Y_k = X̃_k · Y_k
        for k in 0..=DIM {
            let x = a.grade_project(k);
            let y = b.grade_project(k);
            let lhs = x.left_contract(&y, &m);
            let rhs = Multivector::scalar(x.reverse().scalar_product(&y, &m));
            assert_eq!(lhs, rhs, "property (v) at grade {k}");
        }

        // (vi): v⌟(X∧Y) = (v⌟X)∧Y + X̂∧(v⌟Y), and (A∧B)⌟C = A⌟(B⌟C)
        let v = random_mv(&mut rng).grade_project(1);
        let lhs = v.left_contract(&a.wedge(&b), &m);
        let rhs = v
            .left_contract(&a, &m)
            .wedge(&b)
            .add(&a.grade_involution().wedge(&v.left_contract(&b, &m)));
        assert_eq!(lhs, rhs, "draw {draw}: contraction antiderivation");
        let c = random_mv(&mut rng);
        assert_eq!(
            a.wedge(&b).left_contract(&c, &m),
            a.left_contract(&b.left_contract(&c, &m), &m),
            "draw {draw}: (A∧B)⌟C = A⌟(B⌟C)"
        );

        // (ii): one-form expansion against simple wedges
        let ones: Vec<Mv> = (0..3).map(|_| random_mv(&mut rng).grade_project(1)).collect();
        let simple = ones[0].wedge(&ones[1]).wedge(&ones[2]);
        let mut expansion = Multivector::zero();
        for (j, bj) in ones.iter().enumerate() {
            let mut rest = Multivector::scalar(Rat::one());
            for (i, bi) in ones.iter().enumerate() {
                if i != j {
                    rest = rest.wedge(bi);
                }
            }
            let mut term = rest.scale(&v.scalar_product(bj, &m));
            if j % 2 == 1 {
                term = term.neg();
            }
            expansion = expansion.add(&term);
        }
        assert_eq!(
            v.left_contract(&simple, &m),
            expansion,
            "draw {draw}: one-form contraction expansion"
        );

        // scalar rules (T50)
        let two = Multivector::scalar(rat(2, 1));
        assert_eq!(two.left_contract(&a, &m), a.scale(&rat(2, 1)));
        assert_eq!(a.right_contract(&two, &m), a.scale(&rat(2, 1)));
    }

    // Exhaustive adjointness over all 16³ basis triples (both
    // contractions) on η plus two random metrics.
    let mut metrics = vec![(
        minkowski_metric::<Rat>(),
        Orientation::from_rational_factor(Rat::one(), 1),
    )];
    for _ in 0..2 {
        metrics.push(random_metric(&mut rng));
    }
    for (mi, (m, _)) in metrics.iter().enumerate() {
        for x in 0..BASIS {
            let mx = Mv::basis(x);
            for y in 0..BASIS {
                let my = Mv::basis(y);
                let lxy = mx.left_contract(&my, m);
                let rxy = mx.right_contract(&my, m);
                for z in 0..BASIS {
                    let mz = Mv::basis(z);
                    assert_eq!(
                        lxy.scalar_product(&mz, m),
                        my.scalar_product(&mx.reverse().wedge(&mz), m),
                        "metric {mi}: left adjointness ({x},{y},{z})"
                    );
                    assert_eq!(
                        rxy.scalar_product(&mz, m),
                        mx.scalar_product(&mz.wedge(&my.reverse()), m),
                        "metric {mi}: right adjointness ({x},{y},{z})"
                    );
                }
            }
        }
    }

    println!("acceptance 01 exterior identity suite (exact rational): PASS");
}

// ---------------------------------------------------------------------
// 2. Hodge inversion law, exact on all basis monomials.
// ---------------------------------------------------------------------
#[test]
fn acceptance_02_hodge_inversion_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    for draw in 0..50 {
        let (m, o) = random_metric(&mut rng);
        for mask in 0..BASIS {
            let a = Mv::basis(mask);
            let round = hodge_inverse(&hodge_star(&a, &m, &o), &m, &o);
            assert_eq!(round, a, "draw {draw}, monomial {mask}");
            // and the law in the stated scalar form on this grade
            let r = grade_of(mask);
            let mut expect = hodge_star(&hodge_star(&a, &m, &o), &m, &o);
            if (r * (DIM - r)) % 2 == 0 {
                expect = expect.neg();
            }
            assert_eq!(expect, a, "draw {draw}: ⋆⁻¹ = −(−1)^(r(4−r))⋆");
        }
    }
    println!("acceptance 02 hodge inversion law (50 random metrics): PASS");
}

// ---------------------------------------------------------------------
// 3. Route agreement on all fixtures.
// ---------------------------------------------------------------------
#[test]
fn acceptance_03_route_agreement_on_fixtures() {
    for name in cartan_dual::fixtures::list() {
        let s = fixture(name);
        assert!(s.sample_points.len() >= 5, "{name}: need ≥5 points");
        let outcome = run_single(&s, CheckName::CartanRoutes).unwrap();
        assert_eq!(outcome.verdict, Verdict::Pass, "{name}");
        assert!(
            outcome.residual_max < 1e-8,
            "{name}: route residual {:e}",
            outcome.residual_max
        );
    }
    println!("acceptance 03 torsion/curvature route agreement (< 1e-8, all fixtures): PASS");
}

// ---------------------------------------------------------------------
// 4. Bianchi identities on fixtures and random torsionful connections.
// ---------------------------------------------------------------------
#[test]
fn acceptance_04_bianchi_identities() {
    for name in cartan_dual::fixtures::list() {
        let s = fixture(name);
        for check in [CheckName::Bianchi1, CheckName::Bianchi2] {
            let outcome = run_single(&s, check).unwrap();
            assert!(
                outcome.residual_max < 1e-8,
                "{name}/{}: {:e}",
                check.as_str(),
                outcome.residual_max
            );
        }
    }

    let chart = flat_chart();
    let g = MetricField::minkowski();
    let cf = CoFrameField::coordinate();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA4);
    let points = [
        Point::new([0.4, -0.7, 1.3, 0.2]).unwrap(),
        Point::new([0.0, 1.0, -1.0, 2.0]).unwrap(),
    ];
    for trial in 0..10 {
        let conn = random_torsionful_connection(&mut rng, &chart);
        let compat = metric_compatibility_residual(&conn, &g, &cf);
        for p in &points {
            assert!(
                max_abs3(&eval3(&compat, p, &chart).unwrap()) < 1e-12,
                "trial {trial}: generated connection must be metric compatible"
            );
        }
        let t = torsion(&conn, &cf);
        let r = curvature(&conn, &cf, &g);
        let first = bianchi_first_residual(&t, &r, &conn, &cf).unwrap();
        let second = bianchi_second_residual(&t, &r, &conn, &cf).unwrap();
        for p in &points {
            let mut scale: f64 = 0.0;
            for mu in 0..4 {
                for rho in 0..4 {
                    scale = scale.max(r.forms[mu][rho].evaluate(p, &chart).unwrap().max_abs());
                }
            }
            for rho in 0..4 {
                let v = first.form_residuals[rho].evaluate(p, &chart).unwrap();
                assert!(
                    v.max_abs() / (1.0 + scale) < 1e-8,
                    "trial {trial}: first Bianchi forms"
                );
            }
            for rho in 0..4 {
                for mu in 0..4 {
                    for a in (mu + 1)..4 {
                        for b in (a + 1)..4 {
                            let v = first.component_residuals[rho][mu][a][b]
                                .evaluate(p, &chart)
                                .unwrap();
                            assert!(
                                v.abs() / (1.0 + scale) < 1e-8,
                                "trial {trial}: first Bianchi components"
                            );
                        }
                    }
                }
            }
            for mu in 0..4 {
                for rho in 0..4 {
                    let v = second.form_residuals[mu][rho].evaluate(p, &chart).unwrap();
                    assert!(
                        v.max_abs() / (1.0 + scale) < 1e-8,
                        "trial {trial}: second Bianchi forms"
                    );
                }
            }
            for beta in 0..4 {
                for alpha in 0..4 {
                    for mu in 0..4 {
                        for nu in (mu + 1)..4 {
                            for rho in (nu + 1)..4 {
                                let v = (second.component_residual_fn)(beta, alpha, mu, nu, rho)
                                    .evaluate(p, &chart)
                                    .unwrap();
                                assert!(
                                    v.abs() / (1.0 + scale) < 1e-8,
                                    "trial {trial}: second Bianchi components"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    println!("acceptance 04 Bianchi identities (fixtures + 10 random torsionful): PASS");
}

// ---------------------------------------------------------------------
// 5. Schwarzschild vacuum with an independent finite-difference oracle.
// ---------------------------------------------------------------------
mod fd_oracle {
    //! Closed-form metric and nested central differences only; no shared
    //! code with the symbolic path.

    pub fn metric(x: &[f64; 4]) -> [[f64; 4]; 4] {
        let (r, th) = (x[1], x[2]);
        let f = 1.0 - 2.0 / r;
        let mut g = [[0.0; 4]; 4];
        g[0][0] = f;
        g[1][1] = -1.0 / f;
        g[2][2] = -r * r;
        g[3][3] = -r * r * th.sin() * th.sin();
        g
    }

    fn inverse(g: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
        // diagonal metric
        let mut inv = [[0.0; 4]; 4];
        for i in 0..4 {
            inv[i][i] = 1.0 / g[i][i];
        }
        inv
    }

    pub fn christoffel(x: &[f64; 4]) -> [[[f64; 4]; 4]; 4] {
        let h = 1e-6;
        let mut dg = [[[0.0; 4]; 4]; 4]; // dg[σ][αβ] = ∂_σ g_{αβ}
        for sigma in 0..4 {
            let mut xp = *x;
            let mut xm = *x;
            xp[sigma] += h;
            xm[sigma] -= h;
            let gp = metric(&xp);
            let gm = metric(&xm);
            for a in 0..4 {
                for b in 0..4 {
                    dg[sigma][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
                }
            }
        }
        let ginv = inverse(&metric(x));
        let mut gamma = [[[0.0; 4]; 4]; 4];
        for rho in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let mut acc = 0.0;
                    for s in 0..4 {
                        acc += 0.5 * ginv[rho][s] * (dg[a][s][b] + dg[b][s][a] - dg[s][a][b]);
                    }
                    gamma[rho][a][b] = acc;
                }
            }
        }
        gamma
    }

    /// R_μ{}^ρ{}_{αβ} by finite differences of the Christoffels.
    pub fn riemann(x: &[f64; 4]) -> [[[[f64; 4]; 4]; 4]; 4] {
        let h = 1e-3;
        let gamma = christoffel(x);
        let mut dgamma = [[[[0.0; 4]; 4]; 4]; 4]; // dγ[σ][ρ][αβ]
        for sigma in 0..4 {
            let mut xp = *x;
            let mut xm = *x;
            xp[sigma] += h;
            xm[sigma] -= h;
            let gp = christoffel(&xp);
            let gm = christoffel(&xm);
            for r in 0..4 {
                for a in 0..4 {
                    for b in 0..4 {
                        dgamma[sigma][r][a][b] = (gp[r][a][b] - gm[r][a][b]) / (2.0 * h);
                    }
                }
            }
        }
        let mut riem = [[[[0.0; 4]; 4]; 4]; 4];
        for mu in 0..4 {
            for rho in 0..4 {
                for a in 0..4 {
                    for b in 0..4 {
                        let mut acc = dgamma[a][rho][b][mu] - dgamma[b][rho][a][mu];
                        for s in 0..4 {
                            acc += gamma[rho][a][s] * gamma[s][b][mu]
                                - gamma[rho][b][s] * gamma[s][a][mu];
                        }
                        riem[mu][rho][a][b] = acc;
                    }
                }
            }
        }
        riem
    }
}

#[test]
fn acceptance_05_schwarzschild_vacuum_with_oracle() {
    let chart = schwarzschild_chart();
    let g = schwarzschild_metric(&chart);
    let cf = CoFrameField::coordinate();
    let lc = levi_civita_connection(&g, &cf);
    let r = curvature(&lc, &cf, &g);
    let ricci = ricci_einstein(&r, &g, &cf, RicciConvention::E4);

    for radius in [3.0, 4.0, 10.0] {
        let p = Point::new([0.0, radius, 1.1, 0.7]).unwrap();

        // oracle agreement: Christoffels and Riemann
        let gamma_fd = fd_oracle::christoffel(&p.0);
        for rho in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let sym = lc.entry(rho, a, b).evaluate(&p, &chart).unwrap();
                    let fd = gamma_fd[rho][a][b];
                    assert!(
                        (sym - fd).abs() / (1.0 + fd.abs()) < 1e-6,
                        "Γ^{rho}_{a}{b} at r={radius}: {sym} vs {fd}"
                    );
                }
            }
        }
        let riem_fd = fd_oracle::riemann(&p.0);
        for mu in 0..4 {
            for rho in 0..4 {
                for a in 0..4 {
                    for b in 0..4 {
                        let sym = r.components[mu][rho][a][b].evaluate(&p, &chart).unwrap();
                        let fd = riem_fd[mu][rho][a][b];
                        assert!(
                            (sym - fd).abs() / (1.0 + fd.abs()) < 1e-4,
                            "R at r={radius} ({mu},{rho},{a},{b}): {sym} vs {fd}"
                        );
                    }
                }
            }
        }

        // the oracle itself sees a vacuum
        let mut ricci_fd = [[0.0f64; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                for rho in 0..4 {
                    ricci_fd[mu][nu] += riem_fd[mu][rho][rho][nu];
                }
            }
        }
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(
                    ricci_fd[mu][nu].abs() < 1e-3,
                    "oracle Ricci at r={radius}: {:e}",
                    ricci_fd[mu][nu]
                );
            }
        }

        // all ten independent Ricci components from the main path
        for mu in 0..4 {
            for nu in mu..4 {
                let v = ricci.ricci[mu][nu].evaluate(&p, &chart).unwrap();
                assert!(v.abs() < 1e-8, "R_{mu}{nu} at r={radius}: {v:e}");
            }
        }
    }
    println!("acceptance 05 Schwarzschild vacuum (oracle-anchored, r in {{3,4,10}}): PASS");
}

// ---------------------------------------------------------------------
// 6. Dual Ricci / dual Einstein identities on all fixtures.
// ---------------------------------------------------------------------
#[test]
fn acceptance_06_dual_ricci_and_einstein_identities() {
    for name in cartan_dual::fixtures::list() {
        let s = fixture(name);
        let ctx = ctx_for(&s);
        let dr = dual_ricci(&ctx, 1e-8).unwrap();
        assert!(
            dr.report.max_residual() < 1e-8,
            "{name}: dual Ricci {:e}",
            dr.report.max_residual()
        );
        let de = dual_einstein(&ctx, 1e-8).unwrap();
        assert!(
            de.entry("dual-einstein").unwrap().max() < 1e-8,
            "{name}: dual Einstein"
        );
        // cyclic expansion agrees with the direct dual
        assert!(
            dr.report.entry("dual-ricci-cyclic").unwrap().max() < 1e-8,
            "{name}: cyclic expansion"
        );
    }
    println!("acceptance 06 dual Ricci/Einstein identities (< 1e-8, all fixtures): PASS");
}

// ---------------------------------------------------------------------
// 7. Dual field equation closes with the Einstein tensor as source.
// ---------------------------------------------------------------------
#[test]
fn acceptance_07_dual_field_equation_identity() {
    for name in cartan_dual::fixtures::list() {
        let s = fixture(name);
        let ctx = ctx_for(&s);
        let series = dual_einstein_equation_residual(&ctx, None).unwrap();
        assert!(series.max() < 1e-8, "{name}: {:e}", series.max());
    }
    println!("acceptance 07 dual field equation with T := G (< 1e-8, all fixtures): PASS");
}

// ---------------------------------------------------------------------
// 8. Curvature decomposition and the exact algebraic round trips.
// ---------------------------------------------------------------------
#[test]
fn acceptance_08_decomposition_and_round_trips() {
    // torsionful fixture through the catalogue check
    let s = fixture("torsionful-minkowski");
    let outcome = run_single(&s, CheckName::Decomposition).unwrap();
    assert!(
        outcome.residual_max < 1e-8,
        "torsionful fixture decomposition: {:e}",
        outcome.residual_max
    );

    // a curved torsionful structure as well
    let chart = schwarzschild_chart();
    let g = schwarzschild_metric(&chart);
    let cf = CoFrameField::coordinate();
    let lc = levi_civita_connection(&g, &cf);
    let mut tc = e3(|_, _, _| Expr::zero());
    tc[1][2][3] = parse_expr("1/6", &chart).unwrap();
    tc[1][3][2] = parse_expr("-1/6", &chart).unwrap();
    tc[0][0][1] = parse_expr("r/20", &chart).unwrap();
    tc[0][1][0] = parse_expr("-r/20", &chart).unwrap();
    let conn = lc.plus(&contorsion_from_torsion(&g, &tc));
    let dec =
        cartan_dual::curvature::riemann_decomposition(&conn, &g, &cf, &g).unwrap();
    let p = Point::new([0.0, 4.0, 1.1, 0.6]).unwrap();
    for mu in 0..4 {
        for rho in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let full = dec.full_curvature.components[mu][rho][a][b]
                        .evaluate(&p, &chart)
                        .unwrap();
                    let refc = dec.reference_curvature.components[mu][rho][a][b]
                        .evaluate(&p, &chart)
                        .unwrap();
                    let j = dec.j_ref_route[mu][rho][a][b].evaluate(&p, &chart).unwrap()
                        - dec.j_ref_route[mu][rho][b][a].evaluate(&p, &chart).unwrap();
                    assert!(
                        (full - refc - j).abs() / (1.0 + full.abs()) < 1e-8,
                        "curved decomposition ({mu},{rho},{a},{b})"
                    );
                }
            }
        }
    }

    // exact round trips on rational inputs: compose then decompose
    let flat = flat_chart();
    let eta = MetricField::minkowski();
    let mut torsion_in = e3(|_, _, _| Expr::zero());
    torsion_in[0][1][2] = Expr::ratio(2, 7);
    torsion_in[0][2][1] = Expr::ratio(-2, 7);
    torsion_in[3][0][1] = Expr::ratio(-1, 3);
    torsion_in[3][1][0] = Expr::ratio(1, 3);
    let mut strain_in = e3(|_, _, _| Expr::zero());
    strain_in[1][2][2] = Expr::ratio(3, 5);
    strain_in[2][0][3] = Expr::ratio(1, 4);
    strain_in[2][3][0] = Expr::ratio(1, 4);
    let lc0 = levi_civita_connection(&eta, &CoFrameField::coordinate());
    let composed =
        cartan_dual::connection::compose_connection(&lc0, &torsion_in, &strain_in).unwrap();
    let t_back = torsion(&composed, &CoFrameField::coordinate());
    let q = cartan_dual::connection::nonmetricity(&composed, &eta, &CoFrameField::coordinate());
    let s_back =
        cartan_dual::connection::strain(&composed, &eta, &CoFrameField::coordinate()).unwrap();
    let p0 = Point::new([0.0, 0.0, 0.0, 0.0]).unwrap();
    for r in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let tv = t_back.components[r][a][b].evaluate(&p0, &flat).unwrap();
                let te = torsion_in[r][a][b].evaluate(&p0, &flat).unwrap();
                assert_eq!(tv, te, "torsion round trip ({r},{a},{b})");
                let sv = s_back.entry(r, a, b).evaluate(&p0, &flat).unwrap();
                let se = strain_in[r][a][b].evaluate(&p0, &flat).unwrap();
                assert_eq!(sv, se, "strain round trip ({r},{a},{b})");
            }
        }
    }
    // nonmetricity forward/inverse consistency: rebuild S from (Q, T)
    let s_rebuilt = cartan_dual::connection::strain_via_nonmetricity(
        q.array(),
        &t_back.components,
        &eta,
    );
    for r in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let x = s_rebuilt[r][a][b].evaluate(&p0, &flat).unwrap();
                let y = strain_in[r][a][b].evaluate(&p0, &flat).unwrap();
                assert_eq!(x, y, "strain/nonmetricity inversion ({r},{a},{b})");
            }
        }
    }
    println!("acceptance 08 decomposition identities and exact round trips: PASS");
}

// ---------------------------------------------------------------------
// 9. Exterior covariant derivative properties.
// ---------------------------------------------------------------------
#[test]
fn acceptance_09_exterior_covariant_derivative() {
    let chart = schwarzschild_chart();
    let g = schwarzschild_metric(&chart);
    let cf = CoFrameField::coordinate();
    let lc = levi_civita_connection(&g, &cf);
    let mut tc = e3(|_, _, _| Expr::zero());
    tc[2][0][1] = parse_expr("1/9", &chart).unwrap();
    tc[2][1][0] = parse_expr("-1/9", &chart).unwrap();
    let conn = lc.plus(&contorsion_from_torsion(&g, &tc));
    let r = curvature(&conn, &cf, &g);
    let p = Point::new([0.2, 4.0, 1.2, 0.7]).unwrap();

    // DD X^μ = ℛ^μ_σ ∧ X^σ on random indexed 1-forms
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9);
    for _ in 0..5 {
        let x = IndexedFormField::from_fn(1, 0, 1, |up, _| {
            let mut mv = Multivector::zero();
            for nu in 0..4 {
                let c = Expr::sum(vec![
                    Expr::ratio(rng.gen_range(-4..=4), 3),
                    Expr::mul(
                        Expr::ratio(rng.gen_range(-4..=4), 5),
                        Expr::coord((up[0] + nu) % 4),
                    ),
                ]);
                mv.set_coeff(1 << nu, c);
            }
            mv
        });
        let ddx = ext_cov_derivative(&ext_cov_derivative(&x, &conn, &cf).unwrap(), &conn, &cf)
            .unwrap();
        for mu in 0..4 {
            let mut want = Multivector::<Expr>::zero();
            for sg in 0..4 {
                want = want.add(&r.forms[sg][mu].wedge(x.get(&[sg], &[])));
            }
            let got = ddx.get(&[mu], &[]).evaluate(&p, &chart).unwrap();
            let want = want.evaluate(&p, &chart).unwrap();
            let resid = got.sub(&want).max_abs() / (1.0 + want.max_abs());
            assert!(resid < 1e-8, "DD X^{mu}: {resid:e}");
        }
    }

    // Dg = 0 for the metric-compatible connection
    let gfield = IndexedFormField::from_fn(0, 2, 0, |_, lo| {
        Multivector::scalar(g.lower()[lo[0]][lo[1]].clone())
    });
    let dg = ext_cov_derivative(&gfield, &conn, &cf).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            let v = dg.get(&[], &[a, b]).evaluate(&p, &chart).unwrap();
            assert!(v.max_abs() < 1e-9, "Dg_{a}{b}: {:e}", v.max_abs());
        }
    }

    // the naive indexed-derivative pattern applied to ω is NOT ℛ
    let lc_only = levi_civita_connection(&g, &cf);
    let omega = cartan_dual::connection::connection_one_forms(&lc_only, &cf);
    let as_indexed = IndexedFormField::from_fn(1, 1, 1, |up, lo| omega[up[0]][lo[0]].clone());
    let naive = ext_cov_derivative(&as_indexed, &lc_only, &cf).unwrap();
    let r_lc = curvature(&lc_only, &cf, &g);
    let mut max_diff: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let a = naive.get(&[mu], &[nu]).evaluate(&p, &chart).unwrap();
            let b = r_lc.forms[nu][mu].evaluate(&p, &chart).unwrap();
            max_diff = max_diff.max(a.sub(&b).max_abs() / (1.0 + b.max_abs()));
        }
    }
    assert!(max_diff > 1e-3, "naive pattern should miss the curvature");
    println!("acceptance 09 exterior covariant derivative (DD, Dg, naive-pattern witness): PASS");
}

// ---------------------------------------------------------------------
// 10. Non-duality witnesses.
// ---------------------------------------------------------------------
#[test]
fn acceptance_10_nonduality_witnesses() {
    // exact zeros on the flat structure
    let s = fixture("minkowski");
    let ctx = ctx_for(&s);
    let nd = nonduality_witness(&ctx).unwrap();
    assert_eq!(nd.entry("nonduality-torsion").unwrap().max(), 0.0);
    assert_eq!(nd.entry("nonduality-curvature").unwrap().max(), 0.0);

    // both witnesses exceed the threshold at the designated (first)
    // sample point of the torsionful fixture
    let s = fixture("torsionful-minkowski");
    let ctx = ctx_for(&s);
    let nd = nonduality_witness(&ctx).unwrap();
    let first = nd.entry("nonduality-torsion").unwrap();
    let second = nd.entry("nonduality-curvature").unwrap();
    assert!(
        first.per_point[0] > 1e-3,
        "designated-point torsion witness: {:e}",
        first.per_point[0]
    );
    assert!(
        second.per_point[0] > 1e-3,
        "designated-point curvature witness: {:e}",
        second.per_point[0]
    );
    println!("acceptance 10 non-duality witnesses (flat exact zero, torsionful > 1e-3): PASS");
}

// ---------------------------------------------------------------------
// 11. Same-metric duality checker.
// ---------------------------------------------------------------------
#[test]
fn acceptance_11_same_metric_checker() {
    let s = fixture("minkowski");
    let outcome = run_single(&s, CheckName::SameMetricDuality).unwrap();
    assert_eq!(outcome.verdict, Verdict::Pass, "flat structure must pass");
    assert_eq!(outcome.residual_max, 0.0, "flat residuals are exactly zero");

    let s = fixture("schwarzschild");
    let ctx = ctx_for(&s);
    let report = same_metric_duality_check(&ctx).unwrap();
    assert!(
        report.entry("curvature-match").unwrap().max() > 1e-3,
        "the starred curvature is not the curvature of the reconstructed connection"
    );
    // torsion-free trace conditions hold as 0 = 0 in vacuum
    assert!(report.entry("f20-trace").unwrap().max() < 1e-10);
    assert!(report.entry("f20-trace-prime").unwrap().max() < 1e-9);
    let outcome = run_single(&s, CheckName::SameMetricDuality).unwrap();
    assert_eq!(outcome.verdict, Verdict::Fail);
    assert!(
        outcome.witnesses.iter().any(|w| w.detail == "curvature-match"),
        "failure witness names the curvature match"
    );
    println!("acceptance 11 same-metric duality checker (flat PASS, vacuum FAIL): PASS");
}

// ---------------------------------------------------------------------
// 12. Particular-case checker.
// ---------------------------------------------------------------------
#[test]
fn acceptance_12_particular_case_checker() {
    let desitter = fixture("desitter");
    let outcome = run_single(&desitter, CheckName::ParticularCase).unwrap();
    assert_eq!(outcome.verdict, Verdict::Fail, "constant curvature violates R = 0");
    let scalar_sub = outcome
        .subchecks
        .iter()
        .find(|s| s.name == "scalar-curvature-zero")
        .unwrap();
    assert!(scalar_sub.residual_max > 1e-3);
    assert_eq!(scalar_sub.verdict, Verdict::Fail);

    // the rendered text marks the violated constraint
    let report = cartan_dual::report::CheckReport {
        spec_version: 1,
        structure: desitter.name.clone(),
        ricci_convention: "e4",
        dual_pair: "second",
        orientation_sign: 1,
        checks: vec![outcome],
    };
    let text = String::from_utf8(cartan_dual::report::emit_report(
        &report,
        cartan_dual::report::Format::Text,
    ))
    .unwrap();
    assert!(text.contains("clearly violated"), "{text}");

    for name in ["minkowski", "schwarzschild"] {
        let s = fixture(name);
        let outcome = run_single(&s, CheckName::ParticularCase).unwrap();
        assert_eq!(outcome.verdict, Verdict::Pass, "{name} satisfies the system");
    }
    println!("acceptance 12 particular-case checker (de Sitter FAIL, flat/vacuum PASS): PASS");
}
