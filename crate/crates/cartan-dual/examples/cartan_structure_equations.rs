//! Torsion and curvature through both routes — component formulas with
//! frame derivatives, and the structure equations dθ + ω∧θ, dω + ω∧ω —
//! for the black-hole metric in an orthonormal (anholonomic) coframe.
//!
//! Run with: cargo run --example cartan_structure_equations

use cartan_dual::connection::{connection_one_forms, levi_civita_connection};
use cartan_dual::curvature::{
    curvature, torsion, verify_curvature_routes, verify_torsion_routes,
};
use cartan_dual::structure::{structure_coefficients, CoFrameField, MetricField};
use cartan_dual::symexpr::{parse_expr, Chart, Expr, Point};
use cartan_dual::tensor::e2;

fn main() {
    let chart = Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap();
    let f = "1 - 2*M/r";

    // orthonormal coframe: the metric components are constant η
    let mut h = e2(|_, _| Expr::zero());
    h[0][0] = parse_expr(&format!("sqrt({f})"), &chart).unwrap();
    h[1][1] = parse_expr(&format!("1/sqrt({f})"), &chart).unwrap();
    h[2][2] = parse_expr("r", &chart).unwrap();
    h[3][3] = parse_expr("r*sin(th)", &chart).unwrap();
    let cf = CoFrameField::explicit(h);
    let g = MetricField::minkowski();

    let c = structure_coefficients(&cf);
    let p = Point::new([0.0, 4.0, 1.2, 0.3]).unwrap();
    println!("structure coefficients at r=4 (nonzero entries):");
    for rho in 0..4 {
        for a in 0..4 {
            for b in (a + 1)..4 {
                let v = c.entry(rho, a, b).evaluate(&p, &chart).unwrap();
                if v.abs() > 1e-14 {
                    println!("  c^{rho}_{a}{b} = {v:+.6}");
                }
            }
        }
    }

    let lc = levi_civita_connection(&g, &cf);
    let omega = connection_one_forms(&lc, &cf);
    let w01 = omega[0][1].evaluate(&p, &chart).unwrap();
    println!("connection 1-form ω^0_1 at r=4: {w01:?}");

    let t = torsion(&lc, &cf);
    let r = curvature(&lc, &cf, &g);
    let points = [p, Point::new([0.0, 3.0, 0.9, 1.5]).unwrap()];
    let tw = verify_torsion_routes(&t, &cf, &chart, &points, 1e-9).unwrap();
    let rw = verify_curvature_routes(&r, &cf, &chart, &points, 1e-8).unwrap();
    println!("torsion route agreement:   worst relative residual {tw:e}");
    println!("curvature route agreement: worst relative residual {rw:e}");

    println!("sample curvature 2-form ℛ^0_1:");
    let r01 = r.forms[1][0].evaluate(&p, &chart).unwrap();
    println!("  {r01:?}");
}
